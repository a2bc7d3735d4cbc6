//! The quotient `⊕ Λ/⟨(p_i - 1) - p_i t⟩` and its triple tensor `H_3`.
//!
//! Each cyclic factor is identified with `Z[1/p, 1/(p-1)]`, `t` acting as
//! multiplication by `(p-1)/p`. An element of `H_3` is stored through its
//! image under the evaluation `ℓ`, a single rational whose denominator is
//! supported on the primes of `D = ∏ p_i (p_i - 1)`.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::integer::{prime_support, supported_on};
use crate::algebra::{Integer, LaurentPoly, Rational};
use crate::obstruction::{self, ObstructionError, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("degenerate parameter p = {0}: p(p - 1) must be nonzero")]
    DegenerateParameter(Integer),
    #[error("denominator of {value} is not supported on {primes:?}")]
    Unsupported { value: Rational, primes: Vec<Integer> },
    #[error("mismatched parameters for H_3 elements")]
    ParameterMismatch,
    #[error("n is zero; S_{{K,H}} = {{0}}")]
    ZeroN,
    #[error("witness check failed: (t - 1)w = {found}, expected {expected}")]
    WitnessCheck { found: Rational, expected: Rational },
}

impl From<ObstructionError> for QuotientError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::DegenerateParameter(p) => QuotientError::DegenerateParameter(p),
            ObstructionError::ZeroN => QuotientError::ZeroN,
            ObstructionError::BoundExceeded(_) => unreachable!("no search in this module"),
        }
    }
}

/// `Λ/⟨(p - 1) - p t⟩ ≅ Z[1/p, 1/(p - 1)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicQuotient {
    p: Integer,
}

impl CyclicQuotient {
    pub fn new(p: Integer) -> Result<Self, QuotientError> {
        if p.is_zero() || p.is_one() {
            return Err(QuotientError::DegenerateParameter(p));
        }
        Ok(CyclicQuotient { p })
    }

    pub fn p(&self) -> &Integer {
        &self.p
    }

    /// Image of `t`, i.e. `(p - 1)/p`.
    pub fn t_value(&self) -> Rational {
        Rational::new(&self.p - 1, self.p.clone())
    }

    pub fn primes(&self) -> Vec<Integer> {
        let mut v = prime_support(&self.p);
        v.extend(prime_support(&(&self.p - 1)));
        v.sort();
        v.dedup();
        v
    }

    /// Image of `f(t)` in `Z[1/p, 1/(p - 1)]`.
    pub fn evaluate(&self, f: &LaurentPoly) -> LocalizedRational {
        LocalizedRational::new(f.eval(&self.t_value()), self.primes())
            .expect("Laurent polynomials evaluate into the localisation")
    }
}

/// A rational whose reduced denominator only has primes from a fixed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedRational {
    value: Rational,
    allowed_primes: Vec<Integer>,
}

impl LocalizedRational {
    pub fn new(value: Rational, mut allowed_primes: Vec<Integer>) -> Result<Self, QuotientError> {
        allowed_primes.sort();
        allowed_primes.dedup();
        if !supported_on(value.denom(), &allowed_primes) {
            return Err(QuotientError::Unsupported {
                value,
                primes: allowed_primes,
            });
        }
        Ok(LocalizedRational {
            value,
            allowed_primes,
        })
    }

    pub fn integer(v: Integer, allowed_primes: Vec<Integer>) -> Self {
        Self::new(Rational::from_integer(v), allowed_primes).expect("integers are always supported")
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn allowed_primes(&self) -> &[Integer] {
        &self.allowed_primes
    }

    fn merged(&self, other: &Self) -> Vec<Integer> {
        let mut v = self.allowed_primes.clone();
        v.extend(other.allowed_primes.iter().cloned());
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.value + &other.value, self.merged(other)).expect("sums stay localised")
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.value - &other.value, self.merged(other)).expect("differences stay localised")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.value * &other.value, self.merged(other)).expect("products stay localised")
    }

    /// Multiplication by a rational that must itself be a unit or element of
    /// the localisation; checked.
    pub fn scale(&self, r: &Rational) -> Result<Self, QuotientError> {
        Self::new(&self.value * r, self.allowed_primes.clone())
    }
}

impl fmt::Display for LocalizedRational {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Element of `H_3` of the quotient module, stored as its `ℓ`-image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H3Element {
    value: LocalizedRational,
    p: Triple,
}

fn factors(p: &Triple) -> Result<[CyclicQuotient; 3], QuotientError> {
    Ok([
        CyclicQuotient::new(p[0].clone())?,
        CyclicQuotient::new(p[1].clone())?,
        CyclicQuotient::new(p[2].clone())?,
    ])
}

fn d_primes(p: &Triple) -> Vec<Integer> {
    obstruction::localization_primes(p)
}

impl H3Element {
    pub fn from_value(value: Rational, p: &Triple) -> Result<Self, QuotientError> {
        factors(p)?;
        Ok(H3Element {
            value: LocalizedRational::new(value, d_primes(p))?,
            p: p.clone(),
        })
    }

    pub fn zero(p: &Triple) -> Result<Self, QuotientError> {
        Self::from_value(Rational::zero(), p)
    }

    /// `1 ⊗ 1 ⊗ 1`, the generator of the image of `j`.
    pub fn one(p: &Triple) -> Result<Self, QuotientError> {
        Self::from_value(Rational::one(), p)
    }

    pub fn value(&self) -> &Rational {
        self.value.value()
    }

    pub fn parameters(&self) -> &Triple {
        &self.p
    }

    fn with_value(&self, value: Rational) -> Self {
        H3Element {
            value: LocalizedRational::new(value, self.value.allowed_primes().to_vec())
                .expect("t-action preserves the localisation"),
            p: self.p.clone(),
        }
    }

    /// `∏ (p_i - 1)/p_i`, the image of `t ⊗ t ⊗ t`.
    pub fn t_factor(&self) -> Rational {
        self.p
            .iter()
            .map(|x| Rational::new(x - 1, x.clone()))
            .fold(Rational::one(), |a, b| a * b)
    }

    pub fn t_action(&self) -> Self {
        self.with_value(self.value() * self.t_factor())
    }

    pub fn t_inverse_action(&self) -> Self {
        self.with_value(self.value() / self.t_factor())
    }

    pub fn t_minus_id(&self) -> Self {
        self.with_value(self.value() * (self.t_factor() - Rational::one()))
    }

    pub fn add(&self, other: &Self) -> Result<Self, QuotientError> {
        if self.p != other.p {
            return Err(QuotientError::ParameterMismatch);
        }
        Ok(self.with_value(self.value() + other.value()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QuotientError> {
        if self.p != other.p {
            return Err(QuotientError::ParameterMismatch);
        }
        Ok(self.with_value(self.value() - other.value()))
    }

    pub fn scale_int(&self, k: &Integer) -> Self {
        self.with_value(self.value() * Rational::from_integer(k.clone()))
    }
}

impl fmt::Display for H3Element {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `ℓ(f_1 ⊗ f_2 ⊗ f_3) = ∏ f_i((p_i - 1)/p_i)`.
pub fn embed_tensor(
    f1: &LaurentPoly,
    f2: &LaurentPoly,
    f3: &LaurentPoly,
    p: &Triple,
) -> Result<H3Element, QuotientError> {
    let [c1, c2, c3] = factors(p)?;
    let v = c1.evaluate(f1).mul(&c2.evaluate(f2)).mul(&c3.evaluate(f3));
    H3Element::from_value(v.value().clone(), p)
}

/// The element `w` with `(t - 1) w = -(n/m)·(1 ⊗ 1 ⊗ 1)`.
///
/// Built factorwise: slot `i` carries `p_i / (g_{n,p_i} g_{n,p_i - 1})` and
/// the whole tensor is scaled by `s = ∏ g / m`.
pub fn witness_element(p: &Triple) -> Result<H3Element, QuotientError> {
    let cs = factors(p)?;
    let n = obstruction::n_value(p);
    if n.is_zero() {
        return Err(QuotientError::ZeroN);
    }
    let g = obstruction::g_values(&n, p)?;
    let m = obstruction::m_value(&n, p)?;
    let prod_g: Integer = g.iter().product();
    let s = &prod_g / &m;
    debug_assert!((&prod_g % &m).is_zero());

    let mut acc = LocalizedRational::integer(s, d_primes(p));
    for (i, c) in cs.iter().enumerate() {
        let slot = Rational::new(c.p().clone(), &g[i] * &g[i + 3]);
        acc = acc.mul(&LocalizedRational::new(slot, c.primes())?);
    }
    let w = H3Element::from_value(acc.value().clone(), p)?;

    let expected = -Rational::new(n, m);
    let found = w.t_minus_id().value().clone();
    if found != expected {
        return Err(QuotientError::WitnessCheck { found, expected });
    }
    Ok(w)
}
