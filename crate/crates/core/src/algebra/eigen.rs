//! Rational eigenvalues via the rational root theorem.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::integer::divisors;
use super::matrix::{identity_rat, kernel_basis, RatMatrix};
use super::{AlgebraError, Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPair {
    pub value: Rational,
    /// Algebraic multiplicity as a root of the characteristic polynomial.
    pub multiplicity: usize,
    /// Primitive integer basis of the eigenspace.
    pub vectors: Vec<Vec<Integer>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSpectrum {
    /// Sorted by eigenvalue, ascending.
    pub pairs: Vec<EigenPair>,
    /// Primitive integer characteristic polynomial, low to high.
    pub charpoly: Vec<Integer>,
    /// Whether the rational roots exhaust the spectrum (with multiplicity).
    pub complete: bool,
}

impl RationalSpectrum {
    pub fn is_simple(&self) -> bool {
        self.complete && self.pairs.iter().all(|p| p.multiplicity == 1)
    }
}

/// Clears denominators and content; leading coefficient made positive.
pub fn primitive_poly(coeffs: &[Rational]) -> Vec<Integer> {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    while ints.len() > 1 && ints.last().map_or(false, Zero::is_zero) {
        ints.pop();
    }
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    if ints.last().map_or(false, |c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

// Evaluates q^deg * f(a/q) in integers.
fn homogeneous_eval(poly: &[Integer], a: &Integer, q: &Integer) -> Integer {
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in poly.iter().rev() {
        acc = acc * a + c * &qpow;
        qpow *= q;
    }
    acc
}

// Divides poly by (q x - a); the caller guarantees a/q is a root.
fn deflate(poly: &[Integer], a: &Integer, q: &Integer) -> Vec<Integer> {
    // Synthetic division over Q, then rescale back (Gauss's lemma keeps it integral).
    let n = poly.len() - 1;
    let r = BigRational::new(a.clone(), q.clone());
    let mut out = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (0..n).rev() {
        carry = carry * &r + BigRational::from_integer(poly[k + 1].clone());
        out[k] = carry.clone();
    }
    // out is poly / (x - r); divide by q for (q x - a).
    let qr = BigRational::from_integer(q.clone());
    out.iter()
        .map(|c| {
            let v = c / &qr;
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect()
}

/// Rational roots of an integer polynomial (low to high) with multiplicities.
pub fn rational_roots(poly: &[Integer]) -> Vec<(Rational, usize)> {
    let mut p: Vec<Integer> = poly.to_vec();
    while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    let mut roots = Vec::new();
    if p.len() <= 1 {
        return roots;
    }
    let zero_mult = p.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
        p.drain(0..zero_mult);
    }
    if p.len() <= 1 {
        return roots;
    }
    let lead_divs = divisors(p.last().unwrap());
    let trail_divs = divisors(&p[0]);
    let mut candidates = Vec::new();
    for a in &trail_divs {
        for q in &lead_divs {
            if !a.gcd(q).is_one() {
                continue;
            }
            candidates.push((a.clone(), q.clone()));
            candidates.push((-a, q.clone()));
        }
    }
    for (a, q) in candidates {
        if p.len() <= 1 {
            break;
        }
        let mut mult = 0;
        while p.len() > 1 && homogeneous_eval(&p, &a, &q).is_zero() {
            p = deflate(&p, &a, &q);
            mult += 1;
        }
        if mult > 0 {
            roots.push((BigRational::new(a, q), mult));
        }
    }
    roots.sort_by(|x, y| x.0.cmp(&y.0));
    roots
}

/// All rational eigenvalues of `m` with eigenspace bases, sorted ascending.
pub fn rational_eigenpairs(m: &RatMatrix) -> Result<RationalSpectrum, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    let charpoly = primitive_poly(&m.charpoly()?);
    let roots = rational_roots(&charpoly);
    let total: usize = roots.iter().map(|r| r.1).sum();
    let pairs = roots
        .into_iter()
        .map(|(value, multiplicity)| {
            let mut shifted = m.clone();
            let id = identity_rat(n);
            for i in 0..n {
                shifted[(i, i)] -= &value * &id[(i, i)];
            }
            EigenPair {
                vectors: kernel_basis(&shifted),
                value,
                multiplicity,
            }
        })
        .collect();
    Ok(RationalSpectrum {
        pairs,
        charpoly,
        complete: total == n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::Matrix;

    fn q(a: i64, b: i64) -> Rational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn diagonal_spectrum() {
        let m = Matrix::from_rows(vec![vec![q(3, 2), q(0, 1)], vec![q(0, 1), q(2, 3)]]).unwrap();
        let s = rational_eigenpairs(&m).unwrap();
        assert!(s.complete && s.is_simple());
        assert_eq!(s.pairs[0].value, q(2, 3));
        assert_eq!(s.pairs[0].vectors, vec![vec![BigInt::from(0), BigInt::from(1)]]);
        assert_eq!(s.pairs[1].value, q(3, 2));
        assert_eq!(s.pairs[1].vectors, vec![vec![BigInt::from(1), BigInt::from(0)]]);
    }

    #[test]
    fn rotation_has_no_rational_spectrum() {
        let m = Matrix::from_rows(vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
        let s = rational_eigenpairs(&m).unwrap();
        assert!(s.pairs.is_empty());
        assert!(!s.complete);
    }

    #[test]
    fn repeated_and_zero_roots() {
        // x^2 (2x - 3)^2 (x + 1)
        let p: Vec<Integer> = [0, 0, 9, -3, -8, 4].map(BigInt::from).to_vec();
        let r = rational_roots(&p);
        assert_eq!(r, vec![(q(-1, 1), 1), (q(0, 1), 2), (q(3, 2), 2)]);
    }

    #[test]
    fn eigenvectors_satisfy_definition() {
        let m = Matrix::from_rows(vec![
            vec![q(2, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(3, 1), q(1, 2)],
            vec![q(0, 1), q(0, 1), q(-1, 3)],
        ])
        .unwrap();
        let s = rational_eigenpairs(&m).unwrap();
        assert!(s.is_simple());
        for pair in &s.pairs {
            for v in &pair.vectors {
                let vr: Vec<Rational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
                let mv = m.mul_vec(&vr);
                let lv: Vec<Rational> = vr.iter().map(|x| x * &pair.value).collect();
                assert_eq!(mv, lv);
            }
        }
    }
}
