//! Arithmetic of the ψ-residue: `n = det X - det(X - I)` for
//! `X = diag(p_1, p_2, p_3)`, the stabilised gcds, `m`, the residue modulus
//! `n/m`, the bounds `nZ ⊆ S ⊆ (n/m)Z` on triple linking number changes, and
//! a brute-force oracle for the intersection `im(t - 1) ∩ im(j)`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::integer::{prime_support, supported_on, valuation};
use crate::algebra::Integer;
use crate::json::{big, big_vec};

/// Diagonal entries `(p_1, p_2, p_3)` of the linking matrix `X`.
pub type Triple = [Integer; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("degenerate parameter p = {0}: p(p - 1) must be nonzero")]
    DegenerateParameter(Integer),
    #[error("n is zero; S_{{K,H}} = {{0}} and the ψ criterion is inapplicable")]
    ZeroN,
    #[error("no element of im(t - 1) ∩ im(j) found up to the search bound {0}")]
    BoundExceeded(Integer),
}

pub fn triple(a: i64, b: i64, c: i64) -> Triple {
    [a.into(), b.into(), c.into()]
}

pub fn check_admissible(p: &Triple) -> Result<(), ObstructionError> {
    for pi in p {
        if pi.is_zero() || pi.is_one() {
            return Err(ObstructionError::DegenerateParameter(pi.clone()));
        }
    }
    Ok(())
}

/// `∏ p_i - ∏ (p_i - 1)`.
pub fn n_value(p: &Triple) -> Integer {
    let prod: Integer = p.iter().product();
    let prod_minus: Integer = p.iter().map(|x| x - 1).product();
    prod - prod_minus
}

/// Stable value of `gcd(n, d^i)` as `i` grows.
pub fn stabilized_gcd(n: &Integer, d: &Integer) -> Result<Integer, ObstructionError> {
    if n.is_zero() {
        return Err(ObstructionError::ZeroN);
    }
    let n_abs = n.abs();
    if d.is_zero() {
        return Ok(n_abs);
    }
    let d_mod = d.mod_floor(&n_abs);
    let mut g = n_abs.gcd(d);
    let mut power = d_mod.clone();
    let cap = n_abs.bits() + 1;
    for _ in 0..cap {
        power = (&power * &d_mod).mod_floor(&n_abs);
        let next = n_abs.gcd(&power);
        if next == g {
            return Ok(g);
        }
        g = next;
    }
    // The chain divides n and strictly grows until it stops, so it settles
    // within log2|n| steps.
    unreachable!("gcd(n, d^i) failed to stabilise within bit-length steps")
}

/// The six stabilised gcds in the order `p_1, p_2, p_3, p_1-1, p_2-1, p_3-1`.
pub fn g_values(n: &Integer, p: &Triple) -> Result<[Integer; 6], ObstructionError> {
    check_admissible(p)?;
    let one = BigInt::one();
    Ok([
        stabilized_gcd(n, &p[0])?,
        stabilized_gcd(n, &p[1])?,
        stabilized_gcd(n, &p[2])?,
        stabilized_gcd(n, &(&p[0] - &one))?,
        stabilized_gcd(n, &(&p[1] - &one))?,
        stabilized_gcd(n, &(&p[2] - &one))?,
    ])
}

/// `lcm` of the six stabilised gcds.
pub fn m_value(n: &Integer, p: &Triple) -> Result<Integer, ObstructionError> {
    let gs = g_values(n, p)?;
    Ok(gs.iter().fold(BigInt::one(), |acc, g| acc.lcm(g)))
}

/// Distinct primes dividing `D = ∏ p_i (p_i - 1)`.
pub fn localization_primes(p: &Triple) -> Vec<Integer> {
    let mut primes: Vec<Integer> = p
        .iter()
        .flat_map(|x| {
            let mut v = prime_support(x);
            v.extend(prime_support(&(x - 1)));
            v
        })
        .collect();
    primes.sort();
    primes.dedup();
    primes
}

/// `∏_{q | D} q^{v_q(n)}`: the part of `n` supported on the primes of `D`.
pub fn d_supported_part(n: &Integer, p: &Triple) -> Integer {
    localization_primes(p)
        .iter()
        .map(|q| num_traits::pow::pow(q.clone(), valuation(n, q) as usize))
        .product()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionData {
    #[serde(with = "big_vec")]
    pub p: Vec<Integer>,
    #[serde(with = "big")]
    pub n: Integer,
    /// Stabilised gcds for `p_1, p_2, p_3, p_1-1, p_2-1, p_3-1`.
    #[serde(with = "big_vec")]
    pub g_values: Vec<Integer>,
    #[serde(with = "big")]
    pub m: Integer,
    /// `|n/m|`, the ψ-residue modulus.
    #[serde(with = "big")]
    pub modulus: Integer,
}

pub fn obstruction_data(p: &Triple) -> Result<ObstructionData, ObstructionError> {
    check_admissible(p)?;
    let n = n_value(p);
    if n.is_zero() {
        return Err(ObstructionError::ZeroN);
    }
    let gs = g_values(&n, p)?;
    let m = gs.iter().fold(BigInt::one(), |acc, g| acc.lcm(g));
    debug_assert!((&n % &m).is_zero());
    Ok(ObstructionData {
        p: p.to_vec(),
        modulus: (&n / &m).abs(),
        g_values: gs.to_vec(),
        n,
        m,
    })
}

/// ψ-status of a lagrangian, decided from one derivative's `μ̄(123)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiStatus {
    #[serde(with = "big")]
    pub mu123: Integer,
    #[serde(with = "big")]
    pub modulus: Integer,
    /// `mu123 mod modulus`, in `[0, modulus)`.
    #[serde(with = "big")]
    pub residue: Integer,
    pub vanishes: bool,
}

pub fn psi_from_modulus(modulus: &Integer, mu123: &Integer) -> PsiStatus {
    let residue = mu123.mod_floor(modulus);
    let vanishes = residue.is_zero();
    // Reorienting the metaboliser flips the sign of μ̄ only.
    debug_assert_eq!(vanishes, (-mu123).mod_floor(modulus).is_zero());
    PsiStatus {
        mu123: mu123.clone(),
        modulus: modulus.clone(),
        residue,
        vanishes,
    }
}

pub fn psi_vanishes(p: &Triple, mu123: &Integer) -> Result<PsiStatus, ObstructionError> {
    let data = obstruction_data(p)?;
    Ok(psi_from_modulus(&data.modulus, mu123))
}

/// Generators of `nZ ⊆ S_{K,H} ⊆ (n/m)Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivativeSetBounds {
    /// `|n|`.
    #[serde(with = "big")]
    pub lower: Integer,
    /// `|n/m|`.
    #[serde(with = "big")]
    pub upper: Integer,
    #[serde(with = "big")]
    pub m: Integer,
    /// The two bounds agree, so `S_{K,H} = nZ`.
    pub exact: bool,
    /// False when `n = 0`: only `0 ∈ S` is known.
    pub criterion_applicable: bool,
}

pub fn derivative_set_bounds(p: &Triple) -> Result<DerivativeSetBounds, ObstructionError> {
    check_admissible(p)?;
    let n = n_value(p);
    if n.is_zero() {
        return Ok(DerivativeSetBounds {
            lower: BigInt::zero(),
            upper: BigInt::zero(),
            m: BigInt::zero(),
            exact: false,
            criterion_applicable: false,
        });
    }
    let data = obstruction_data(p)?;
    let coprime = p
        .iter()
        .all(|x| x.gcd(&n).is_one() && (x - BigInt::one()).gcd(&n).is_one());
    debug_assert_eq!(coprime, data.m.is_one());
    Ok(DerivativeSetBounds {
        lower: n.abs(),
        upper: data.modulus,
        m: data.m,
        exact: coprime,
        criterion_applicable: true,
    })
}

pub fn default_search_bound(p: &Triple) -> Integer {
    n_value(p).abs() * 4
}

/// Smallest `k > 0` with `k·(1⊗1⊗1) ∈ im(t - 1)`, found by direct search.
///
/// `k` lies in the image iff `k ∏p_i / n` has denominator supported on the
/// primes of `D`. Independent of the gcd formula for `m`.
pub fn intersection_oracle(p: &Triple, search_bound: &Integer) -> Result<Integer, ObstructionError> {
    check_admissible(p)?;
    let n = n_value(p);
    if n.is_zero() {
        return Err(ObstructionError::ZeroN);
    }
    let primes = localization_primes(p);
    let prod: Integer = p.iter().product();
    let mut k = BigInt::one();
    while &k <= search_bound {
        let x = BigRational::new(&k * &prod, n.clone());
        if supported_on(x.denom(), &primes) {
            return Ok(k);
        }
        k += 1;
    }
    Err(ObstructionError::BoundExceeded(search_bound.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub row: usize,
    #[serde(with = "big")]
    pub n: Integer,
    #[serde(with = "big")]
    pub m: Integer,
    /// Signed `n/m`.
    #[serde(with = "big")]
    pub ratio: Integer,
    /// Closed form published for this row of the family.
    #[serde(with = "big")]
    pub closed_form: Integer,
    pub matches_closed_form: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub row: usize,
    #[serde(with = "big")]
    pub computed: Integer,
    #[serde(with = "big")]
    pub closed_form: Integer,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyTable {
    pub e: u32,
    #[serde(with = "big_vec")]
    pub p: Vec<Integer>,
    pub rows: Vec<FamilyRow>,
    /// All four `|n_i/m_i| > 1`.
    pub admissible: bool,
    pub discrepancies: Vec<Discrepancy>,
}

/// `(2^e + 1, 2^2e + 1, 2^4e + 1)`.
pub fn family_parameters(e: u32) -> Triple {
    let one = BigInt::one();
    [
        (&one << e) + 1,
        (&one << (2 * e)) + 1,
        (&one << (4 * e)) + 1,
    ]
}

/// The four signed products `n_1..n_4`, one per class of selection
/// patterns (rows 2-4 swap `p_i` with `p_i - 1` in a single slot).
pub fn signed_products(p: &Triple) -> [Integer; 4] {
    let q: Vec<Integer> = p.iter().map(|x| x - 1).collect();
    [
        &p[0] * &p[1] * &p[2] - &q[0] * &q[1] * &q[2],
        &p[0] * &p[1] * &q[2] - &q[0] * &q[1] * &p[2],
        &p[0] * &q[1] * &p[2] - &q[0] * &p[1] * &q[2],
        &q[0] * &p[1] * &p[2] - &p[0] * &q[1] * &q[2],
    ]
}

fn published_closed_forms(e: u32) -> [Integer; 4] {
    let two = |k: u32| BigInt::one() << (k * e);
    [
        (two(1) + 1) * (two(2) + 1) * (two(4) + 1) - two(7),
        two(3) + two(2) + two(1) - 1,
        two(4) - two(2) + two(1) + 1,
        -two(5) + two(4) + two(2) + 1,
    ]
}

pub fn family_table(e: u32) -> FamilyTable {
    assert!(e >= 1, "family exponent must be positive");
    let p = family_parameters(e);
    let closed = published_closed_forms(e);
    let mut rows = Vec::with_capacity(4);
    let mut discrepancies = Vec::new();
    for (i, n) in signed_products(&p).into_iter().enumerate() {
        // n_i ≠ 0 for every member of the family: n_i is odd.
        let m = m_value(&n, &p).expect("family parameters are admissible and n_i ≠ 0");
        let ratio = &n / &m;
        let matches = ratio == closed[i];
        if !matches {
            discrepancies.push(Discrepancy {
                row: i + 1,
                computed: ratio.clone(),
                closed_form: closed[i].clone(),
                note: format!(
                    "n_{r}/m_{r} computed from the definitions is {ratio}; the published closed form gives {}",
                    closed[i],
                    r = i + 1
                ),
            });
        }
        rows.push(FamilyRow {
            row: i + 1,
            n,
            m,
            ratio,
            closed_form: closed[i].clone(),
            matches_closed_form: matches,
        });
    }
    let admissible = rows.iter().all(|r| r.ratio.abs() > BigInt::one());
    FamilyTable {
        e,
        p: p.to_vec(),
        rows,
        admissible,
        discrepancies,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> Integer {
        BigInt::from(v)
    }

    #[test]
    fn n_examples() {
        assert_eq!(n_value(&triple(3, 5, 17)), z(127));
        assert_eq!(n_value(&triple(2, 3, 7)), z(30));
        for (a, b) in [(4, 9), (-3, 2), (7, 7)] {
            assert_eq!(n_value(&triple(0, a, b)), z((a - 1) * (b - 1)));
        }
    }

    #[test]
    fn stabilized_gcd_examples() {
        assert_eq!(stabilized_gcd(&z(104), &z(2)).unwrap(), z(8));
        assert_eq!(stabilized_gcd(&z(30), &z(6)).unwrap(), z(6));
        assert_eq!(stabilized_gcd(&z(127), &z(16)).unwrap(), z(1));
        assert_eq!(stabilized_gcd(&z(-104), &z(-2)).unwrap(), z(8));
        assert_eq!(stabilized_gcd(&z(12), &z(0)).unwrap(), z(12));
        assert_eq!(stabilized_gcd(&z(0), &z(3)), Err(ObstructionError::ZeroN));
    }

    #[test]
    fn m_examples() {
        assert_eq!(m_value(&z(127), &triple(3, 5, 17)).unwrap(), z(1));
        let p = triple(2, 3, 7);
        assert_eq!(
            g_values(&z(30), &p).unwrap().to_vec(),
            [2, 3, 1, 1, 2, 6].map(z).to_vec()
        );
        assert_eq!(m_value(&z(30), &p).unwrap(), z(6));
        assert_eq!(m_value(&z(104), &triple(3, 5, 17)).unwrap(), z(8));
        assert_eq!(
            m_value(&z(5), &triple(1, 5, 17)),
            Err(ObstructionError::DegenerateParameter(z(1)))
        );
    }

    #[test]
    fn psi_examples() {
        let p = triple(3, 5, 17);
        let s = psi_vanishes(&p, &z(1)).unwrap();
        assert!(!s.vanishes);
        assert_eq!(s.modulus, z(127));
        assert!(psi_vanishes(&p, &z(0)).unwrap().vanishes);
        assert!(psi_vanishes(&p, &z(254)).unwrap().vanishes);
        assert!(psi_vanishes(&p, &z(-127)).unwrap().vanishes);
        let s = psi_vanishes(&triple(2, 3, 7), &z(-7)).unwrap();
        assert_eq!((s.modulus.clone(), s.residue.clone()), (z(5), z(3)));
        assert!(!s.vanishes);
    }

    #[test]
    fn zero_n_is_signalled() {
        let mut found = None;
        'outer: for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in -6i64..=6 {
                    let p = triple(a, b, c);
                    if check_admissible(&p).is_ok() && n_value(&p).is_zero() {
                        found = Some(p);
                        break 'outer;
                    }
                }
            }
        }
        let p = found.expect("some admissible triple has n = 0");
        assert_eq!(psi_vanishes(&p, &z(1)), Err(ObstructionError::ZeroN));
        let b = derivative_set_bounds(&p).unwrap();
        assert!(!b.criterion_applicable);
        assert_eq!(intersection_oracle(&p, &z(10)), Err(ObstructionError::ZeroN));
    }

    #[test]
    fn bounds_examples() {
        let b = derivative_set_bounds(&triple(3, 5, 17)).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone(), b.exact), (z(127), z(127), true));
        let b = derivative_set_bounds(&triple(2, 3, 7)).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone(), b.exact), (z(30), z(5), false));
        // n = 7 for (2, 2, 2): 8 - 1
        let b = derivative_set_bounds(&triple(2, 2, 2)).unwrap();
        assert_eq!(b.lower, z(7));
        assert!(b.exact);
    }

    #[test]
    fn unit_n_realises_everything() {
        let mut hit = None;
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                for c in -5i64..=5 {
                    let p = triple(a, b, c);
                    if check_admissible(&p).is_ok() && n_value(&p).abs().is_one() {
                        hit = Some(p);
                    }
                }
            }
        }
        let p = hit.expect("a unit n exists");
        let b = derivative_set_bounds(&p).unwrap();
        assert_eq!(b.lower, z(1));
        assert_eq!(b.upper, z(1));
        assert!(b.exact);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(intersection_oracle(&triple(3, 5, 17), &z(200)).unwrap(), z(127));
        assert_eq!(intersection_oracle(&triple(2, 3, 7), &z(40)).unwrap(), z(5));
        assert_eq!(intersection_oracle(&triple(2, 2, 2), &z(10)).unwrap(), z(7));
        assert_eq!(
            intersection_oracle(&triple(3, 5, 17), &z(100)),
            Err(ObstructionError::BoundExceeded(z(100)))
        );
    }

    #[test]
    fn family_e1() {
        let t = family_table(1);
        assert_eq!(t.p, [3, 5, 17].map(z).to_vec());
        let got: Vec<(Integer, Integer, Integer)> =
            t.rows.iter().map(|r| (r.n.clone(), r.m.clone(), r.ratio.clone())).collect();
        assert_eq!(
            got,
            vec![
                (z(127), z(1), z(127)),
                (z(104), z(8), z(13)),
                (z(44), z(4), z(11)),
                (z(-22), z(2), z(-11)),
            ]
        );
        assert!(t.admissible);
        assert_eq!(t.discrepancies.len(), 1);
        assert_eq!(t.discrepancies[0].row, 3);
        assert_eq!(t.discrepancies[0].closed_form, z(15));
    }
}
