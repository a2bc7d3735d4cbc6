//! Linking numbers and triple linking numbers `μ̄(ijk)` from longitude
//! words, through the Magnus expansion truncated at degree 2.
//!
//! Convention: `μ̄(ijk)` is the coefficient of `X_i X_j` in the expansion of
//! the `k`-th longitude. The standard Borromean system
//! `([x2, x3], [x3, x1], [x1, x2])` then has `μ̄(123) = +1`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{IntMatrix, Integer, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("generator index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("exponent {0} is not ±1")]
    BadExponent(i64),
    #[error("expected {expected} longitudes, found {found}")]
    LongitudeCount { expected: usize, found: usize },
    #[error("indices {0:?} must be distinct")]
    RepeatedIndex((usize, usize, usize)),
    #[error("μ̄ not integer-valued for this input: lk({0}, {1}) = {2}")]
    NonzeroLinking(usize, usize, Integer),
}

/// A word in `x_1, ..., x_m`: letters are `(generator, ±1)`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeWord(pub Vec<(usize, i64)>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        FreeWord(vec![(i, 1)])
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, m: usize) -> Result<(), MilnorError> {
        for &(g, e) in &self.0 {
            if g == 0 || g > m {
                return Err(MilnorError::IndexOutOfRange { index: g, count: m });
            }
            if e != 1 && e != -1 {
                return Err(MilnorError::BadExponent(e));
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(u: &Self, v: &Self) -> Self {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// `g w g^-1`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.concat(self).concat(&g.inverse())
    }

    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&(g, e)) if g == l.0 && e == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord(out)
    }

    /// Exponent sum of `x_i`.
    pub fn exponent_sum(&self, i: usize) -> i64 {
        self.0.iter().filter(|l| l.0 == i).map(|l| l.1).sum()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| if e == 1 { format!("x{g}") } else { format!("x{g}^-1") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `c_0 + Σ c_i X_i + Σ c_ij X_i X_j` in non-commuting `X_1..X_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub constant: Integer,
    pub linear: Vec<Integer>,
    /// `quadratic[i][j]` is the coefficient of `X_{i+1} X_{j+1}`.
    pub quadratic: Vec<Vec<Integer>>,
}

impl TruncatedSeries {
    pub fn one(m: usize) -> Self {
        TruncatedSeries {
            constant: BigInt::one(),
            linear: vec![BigInt::zero(); m],
            quadratic: vec![vec![BigInt::zero(); m]; m],
        }
    }

    pub fn generators(&self) -> usize {
        self.linear.len()
    }

    /// Image of `x_i^e`, `e = ±1`, 1-based `i`.
    pub fn letter(m: usize, i: usize, e: i64) -> Self {
        let mut s = Self::one(m);
        s.linear[i - 1] = BigInt::from(e);
        if e == -1 {
            s.quadratic[i - 1][i - 1] = BigInt::one();
        }
        s
    }

    /// Coefficient of `X_i`, 1-based.
    pub fn linear_coeff(&self, i: usize) -> &Integer {
        &self.linear[i - 1]
    }

    /// Coefficient of `X_i X_j`, 1-based.
    pub fn quadratic_coeff(&self, i: usize, j: usize) -> &Integer {
        &self.quadratic[i - 1][j - 1]
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, b: &TruncatedSeries) -> TruncatedSeries {
        let m = self.generators();
        assert_eq!(m, b.generators(), "series over different generator sets");
        let a = self;
        let mut c = TruncatedSeries::one(m);
        c.constant = &a.constant * &b.constant;
        for i in 0..m {
            c.linear[i] = &a.constant * &b.linear[i] + &a.linear[i] * &b.constant;
            for j in 0..m {
                c.quadratic[i][j] = &a.constant * &b.quadratic[i][j]
                    + &a.quadratic[i][j] * &b.constant
                    + &a.linear[i] * &b.linear[j];
            }
        }
        c
    }
}

pub fn magnus(w: &FreeWord, m: usize) -> Result<TruncatedSeries, MilnorError> {
    w.validate(m)?;
    Ok(w
        .0
        .iter()
        .fold(TruncatedSeries::one(m), |acc, &(g, e)| &acc * &TruncatedSeries::letter(m, g, e)))
}

/// `m` longitude words, the `k`-th written in the meridians `x_1..x_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongitudeSystem {
    pub components: usize,
    pub longitudes: Vec<FreeWord>,
}

impl LongitudeSystem {
    pub fn new(components: usize, longitudes: Vec<FreeWord>) -> Result<Self, MilnorError> {
        let ls = LongitudeSystem {
            components,
            longitudes,
        };
        ls.validate()?;
        Ok(ls)
    }

    pub fn validate(&self) -> Result<(), MilnorError> {
        if self.longitudes.len() != self.components {
            return Err(MilnorError::LongitudeCount {
                expected: self.components,
                found: self.longitudes.len(),
            });
        }
        for w in &self.longitudes {
            w.validate(self.components)?;
        }
        Ok(())
    }

    pub fn unlink(m: usize) -> Self {
        LongitudeSystem {
            components: m,
            longitudes: vec![FreeWord::empty(); m],
        }
    }

    /// `([x2, x3], [x3, x1], [x1, x2])`.
    pub fn borromean() -> Self {
        let x = FreeWord::generator;
        LongitudeSystem {
            components: 3,
            longitudes: vec![
                FreeWord::commutator(&x(2), &x(3)),
                FreeWord::commutator(&x(3), &x(1)),
                FreeWord::commutator(&x(1), &x(2)),
            ],
        }
    }

    /// Three components whose longitudes realise `μ̄(123) = k`: the
    /// Borromean pattern with every commutator raised to the power `k`.
    pub fn borromean_power(k: i64) -> Self {
        let b = Self::borromean();
        LongitudeSystem {
            components: 3,
            longitudes: b.longitudes.iter().map(|w| w.pow(k)).collect(),
        }
    }

    fn series(&self) -> Result<Vec<TruncatedSeries>, MilnorError> {
        self.validate()?;
        self.longitudes
            .iter()
            .map(|w| magnus(w, self.components))
            .collect()
    }
}

/// Entry `(i, k)` is `lk(i, k)`, the `X_i` coefficient of longitude `k`.
/// The diagonal is zeroed.
pub fn linking_numbers(ls: &LongitudeSystem) -> Result<IntMatrix, MilnorError> {
    let series = ls.series()?;
    let m = ls.components;
    Ok(Matrix::from_fn(m, m, |i, k| {
        if i == k {
            BigInt::zero()
        } else {
            series[k].linear[i].clone()
        }
    }))
}

/// `μ̄(ijk)`, 1-based distinct indices, gated on vanishing linking numbers.
pub fn mu_triple(ls: &LongitudeSystem, i: usize, j: usize, k: usize) -> Result<Integer, MilnorError> {
    let m = ls.components;
    for idx in [i, j, k] {
        if idx == 0 || idx > m {
            return Err(MilnorError::IndexOutOfRange { index: idx, count: m });
        }
    }
    if i == j || j == k || i == k {
        return Err(MilnorError::RepeatedIndex((i, j, k)));
    }
    let lk = linking_numbers(ls)?;
    for a in [i, j, k] {
        for b in [i, j, k] {
            if a != b && !lk[(a - 1, b - 1)].is_zero() {
                return Err(MilnorError::NonzeroLinking(a, b, lk[(a - 1, b - 1)].clone()));
            }
        }
    }
    Ok(magnus(&ls.longitudes[k - 1], m)?.quadratic_coeff(i, j).clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ScreenResult {
    Pass,
    /// Some `lk(i, k) ≠ 0`.
    LinkingNumber {
        i: usize,
        k: usize,
        #[serde(with = "crate::json::big")]
        value: Integer,
    },
    /// Some `μ̄(ijk) ≠ 0`.
    TripleLinking {
        triple: (usize, usize, usize),
        #[serde(with = "crate::json::big")]
        value: Integer,
    },
}

impl ScreenResult {
    pub fn passes(&self) -> bool {
        matches!(self, ScreenResult::Pass)
    }
}

/// Necessary condition for (0)-solvability: all linking numbers and all
/// `μ̄(ijk)`, `i < j < k`, vanish. The first failure found is returned.
pub fn zero_solvable_screen(ls: &LongitudeSystem) -> Result<ScreenResult, MilnorError> {
    let lk = linking_numbers(ls)?;
    let m = ls.components;
    for i in 0..m {
        for k in 0..m {
            if !lk[(i, k)].is_zero() {
                return Ok(ScreenResult::LinkingNumber {
                    i: i + 1,
                    k: k + 1,
                    value: lk[(i, k)].clone(),
                });
            }
        }
    }
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                let v = mu_triple(ls, i, j, k)?;
                if !v.is_zero() {
                    return Ok(ScreenResult::TripleLinking {
                        triple: (i, j, k),
                        value: v,
                    });
                }
            }
        }
    }
    Ok(ScreenResult::Pass)
}
