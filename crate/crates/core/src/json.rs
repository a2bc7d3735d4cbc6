//! Serde helpers: integers travel as decimal strings so no precision is lost
//! in JSON consumers. Input also accepts plain JSON numbers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;

struct BigVisitor;

impl<'de> Visitor<'de> for BigVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<BigInt, E> {
        Err(E::custom(format!("expected an integer, found {v}")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        BigInt::from_str(v.trim()).map_err(|_| E::custom(format!("invalid integer {v:?}")))
    }
}

/// A [`BigInt`] wrapper that (de)serialises through [`big`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigStr(pub BigInt);

impl serde::Serialize for BigStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        big::serialize(&self.0, s)
    }
}

impl<'de> serde::Deserialize<'de> for BigStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        big::deserialize(d).map(BigStr)
    }
}

pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        d.deserialize_any(BigVisitor)
    }
}

pub mod big_vec {
    use super::*;
    use serde::{Deserialize, Serialize};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| BigStr(x.clone())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<BigStr>::deserialize(d)?.into_iter().map(|b| b.0).collect())
    }
}

pub mod big_mat {
    use super::*;
    use serde::{Deserialize, Serialize};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|row| row.iter().map(|x| BigStr(x.clone())).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Ok(Vec::<Vec<BigStr>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(|b| b.0).collect())
            .collect())
    }
}

pub mod big_opt {
    use super::*;
    use serde::{Deserialize, Serialize};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| BigStr(x.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<BigStr>::deserialize(d)?.map(|b| b.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Probe {
        #[serde(with = "big")]
        a: BigInt,
        #[serde(with = "big_vec")]
        v: Vec<BigInt>,
    }

    #[test]
    fn strings_out_numbers_or_strings_in() {
        let p = Probe {
            a: BigInt::from(10).pow(30),
            v: vec![BigInt::from(-3), BigInt::from(5)],
        };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"a":"1000000000000000000000000000000","v":["-3","5"]}"#);
        assert_eq!(serde_json::from_str::<Probe>(&s).unwrap(), p);
        let q: Probe = serde_json::from_str(r#"{"a":7,"v":[1,"-2"]}"#).unwrap();
        assert_eq!(q.a, BigInt::from(7));
        assert_eq!(q.v, vec![BigInt::from(1), BigInt::from(-2)]);
        assert!(serde_json::from_str::<Probe>(r#"{"a":1.5,"v":[]}"#).is_err());
    }
}
