//! Laurent polynomials over the integers, `Z[t, t^-1]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Sparse map from exponent to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds `sum coeffs[k] t^(low + k)`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(low + k as i64, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent span; zero polynomial has span 0.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    /// `f(1/t)`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Unit normalisation: lowest exponent 0 and positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let shifted = self.shift(-lo);
        if shifted.leading_coeff().map_or(false, |c| c.is_negative()) {
            -shifted
        } else {
            shifted
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        assert!(
            !x.is_zero() || self.min_exp().map_or(true, |e| e >= 0),
            "negative power of zero"
        );
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let xe = if *e >= 0 {
                num_traits::pow::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow::pow(x.recip(), (-*e) as usize)
            };
            acc += xe * BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> Rational {
        self.eval(&BigRational::from_integer(x.clone()))
    }

    /// Exact quotient `self / d` in `Z[t, t^-1]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d_hi = d.max_exp().unwrap();
        let d_lo = d.min_exp().unwrap();
        let d_lead = d.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            if rem.span() < d.span() {
                return None;
            }
            let r_hi = rem.max_exp().unwrap();
            let r_lead = rem.leading_coeff().unwrap().clone();
            if !(&r_lead % &d_lead).is_zero() {
                return None;
            }
            let c = &r_lead / &d_lead;
            let e = r_hi - d_hi;
            // Quotient terms must not undershoot the remainder's bottom.
            if e + d_lo < rem.min_exp().unwrap() {
                return None;
            }
            let term = Self::monomial(c, e);
            rem = &rem - &(&term * d);
            quot = &quot + &term;
        }
        Some(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(low, c)
    }

    #[test]
    fn product_and_display() {
        // (3t - 2)(2t - 3) = 6t^2 - 13t + 6
        let p = lp(0, &[-2, 3]) * lp(0, &[-3, 2]);
        assert_eq!(p, lp(0, &[6, -13, 6]));
        assert_eq!(p.to_string(), "6t^2 - 13t + 6");
        assert_eq!(lp(-1, &[1]).to_string(), "t^-1");
    }

    #[test]
    fn exact_division() {
        let a = lp(-2, &[1, 0, -4, 7]);
        let b = lp(1, &[3, -1]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(lp(0, &[1, 1]).div_exact(&lp(0, &[2])), None);
        assert_eq!(lp(0, &[1, 0, 1]).div_exact(&lp(0, &[1, 1])), None);
    }

    #[test]
    fn normalization_and_eval() {
        let p = lp(-3, &[-1, 2, -5]);
        let n = p.normalized();
        assert_eq!(n, lp(0, &[1, -2, 5]));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            lp(-1, &[1]).eval(&half),
            BigRational::from_integer(2.into())
        );
        assert_eq!(lp(0, &[1, 1]).reflect(), lp(-1, &[1, 1]));
    }
}
