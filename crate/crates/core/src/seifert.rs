//! Seifert matrices, their block forms, Alexander polynomials and
//! metaboliser enumeration.
//!
//! Metabolisers are found through the isometry `M^-1 M^T`: when it has
//! `2g` distinct rational eigenvalues (none equal to 1), every metaboliser
//! is the integral saturation of `g` eigenvectors that pair symmetrically
//! under the Seifert form. Outside that regime enumeration is refused.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::matrix::{diag_int, identity_int, to_rational};
use crate::algebra::{
    det_int, det_laurent, is_primitive, lattice, rational_eigenpairs, saturate_lattice, AlgebraError,
    IntMatrix, Integer, LaurentPoly, Matrix, RatMatrix, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("Seifert matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("Seifert matrix must have even dimension, got {0}")]
    OddDimension(usize),
    #[error("not a knot Seifert matrix: det(M - M^T) = {0}, expected 1")]
    NotKnotSeifert(Integer),
    #[error("Seifert matrix not rationally invertible; metaboliser enumeration unavailable")]
    Singular,
    #[error("outside the eigenvector enumeration hypotheses: {0}")]
    OutsideHypotheses(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Integer `2g x 2g` matrix whose antisymmetrisation has determinant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    m: IntMatrix,
    genus: usize,
}

impl SeifertMatrix {
    pub fn validate(m: IntMatrix) -> Result<Self, SeifertError> {
        if !m.is_square() {
            return Err(SeifertError::NotSquare(m.nrows(), m.ncols()));
        }
        let n = m.nrows();
        if n % 2 == 1 || n == 0 {
            return Err(SeifertError::OddDimension(n));
        }
        let d = det_int(&m.sub(&m.transpose())?)?;
        if !d.is_one() {
            return Err(SeifertError::NotKnotSeifert(d));
        }
        Ok(Self { m, genus: n / 2 })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    /// The intersection form `M - M^T`.
    pub fn intersection_form(&self) -> IntMatrix {
        self.m.sub(&self.m.transpose()).expect("square")
    }

    /// `u^T M v`.
    pub fn pairing(&self, u: &[Integer], v: &[Integer]) -> Integer {
        let n = self.dim();
        let mut acc = BigInt::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &u[i] * &self.m[(i, j)] * &v[j];
            }
        }
        acc
    }
}

/// `[[A, X], [X - I, 0]]` with `X = diag(p)`, basis `{δ_1..δ_g, J_1..J_g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockForm {
    pub a: IntMatrix,
    pub p: Vec<Integer>,
}

impl BlockForm {
    pub fn new(a: IntMatrix, p: Vec<Integer>) -> Result<Self, SeifertError> {
        if !a.is_square() || a.nrows() != p.len() {
            return Err(SeifertError::Dimension(format!(
                "A block is {}x{} but {} twist parameters were given",
                a.nrows(),
                a.ncols(),
                p.len()
            )));
        }
        Ok(Self { a, p })
    }

    /// Block form with a zero `A` block.
    pub fn with_zero_a(p: Vec<Integer>) -> Self {
        let g = p.len();
        Self {
            a: Matrix::from_fn(g, g, |_, _| BigInt::zero()),
            p,
        }
    }

    pub fn genus(&self) -> usize {
        self.p.len()
    }

    pub fn to_seifert(&self) -> Result<SeifertMatrix, SeifertError> {
        let g = self.genus();
        let x = diag_int(&self.p);
        let x_minus = x.sub(&identity_int(g))?;
        let m = Matrix::from_fn(2 * g, 2 * g, |i, j| match (i < g, j < g) {
            (true, true) => self.a[(i, j)].clone(),
            (true, false) => x[(i, j - g)].clone(),
            (false, true) => x_minus[(i - g, j)].clone(),
            (false, false) => BigInt::zero(),
        });
        SeifertMatrix::validate(m)
    }
}

/// `det(tM - M^T)`, normalised to lowest exponent 0 and positive leading
/// coefficient.
pub fn alexander_poly(s: &SeifertMatrix) -> LaurentPoly {
    let m = s.matrix();
    let tm = Matrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        &LaurentPoly::monomial(m[(i, j)].clone(), 1) - &LaurentPoly::constant(m[(j, i)].clone())
    });
    det_laurent(&tm).expect("square").normalized()
}

/// The isometry `M^-1 M^T`.
pub fn isometry(s: &SeifertMatrix) -> Result<RatMatrix, SeifertError> {
    let m = to_rational(s.matrix());
    let inv = m.inverse().map_err(|e| match e {
        AlgebraError::Singular => SeifertError::Singular,
        other => other.into(),
    })?;
    Ok(inv.mul(&m.transpose())?)
}

/// Which curve class an eigenvector represents inside its `(δ_i, J_i)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveKind {
    Delta,
    J,
    Epsilon,
}

impl CurveKind {
    pub fn symbol(self) -> char {
        match self {
            CurveKind::Delta => 'δ',
            CurveKind::J => 'J',
            CurveKind::Epsilon => 'ε',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'δ' | 'd' | 'D' => Some(CurveKind::Delta),
            'J' | 'j' => Some(CurveKind::J),
            'ε' | 'e' | 'E' => Some(CurveKind::Epsilon),
            _ => None,
        }
    }
}

/// A selection pattern such as `δJJ`: one curve kind per pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SelectionPattern(pub Vec<CurveKind>);

impl SelectionPattern {
    pub fn parse(s: &str) -> Option<Self> {
        s.chars().map(CurveKind::from_symbol).collect::<Option<Vec<_>>>().map(Self)
    }
}

impl fmt::Display for SelectionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.0 {
            write!(f, "{}", k.symbol())?;
        }
        Ok(())
    }
}

/// Rank-`g` primitive sublattice on which the Seifert form vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metaboliser {
    /// `2g x g`, columns a lattice basis.
    pub basis: IntMatrix,
    pub label: Option<SelectionPattern>,
    /// Isometry eigenvalues of the spanning eigenvectors, in column order.
    pub eigenvalues: Vec<Rational>,
    /// Whether `basis` consists of the eigenvectors themselves.
    pub eigenvector_basis: bool,
}

impl Metaboliser {
    pub fn from_basis(basis: IntMatrix) -> Self {
        Self {
            basis,
            label: None,
            eigenvalues: Vec::new(),
            eigenvector_basis: false,
        }
    }

    pub fn label_string(&self) -> Option<String> {
        self.label.as_ref().map(ToString::to_string)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaboliserEnumeration {
    pub metabolisers: Vec<Metaboliser>,
    pub eigenvalues: Vec<Rational>,
    /// The enumeration rule is proved for genus 3; other genera reuse it.
    pub extrapolated: bool,
}

// Pair index and curve kind, if `v` is supported on `{δ_i, J_i}`.
fn classify(v: &[Integer], g: usize) -> Option<(usize, CurveKind)> {
    let support: Vec<usize> = (0..2 * g).filter(|&k| !v[k].is_zero()).collect();
    match support.as_slice() {
        [k] if *k < g => Some((*k, CurveKind::Delta)),
        [k] => Some((*k - g, CurveKind::J)),
        [a, b] if *b == *a + g => Some((*a, CurveKind::Epsilon)),
        _ => None,
    }
}

pub fn enumerate_metabolisers(s: &SeifertMatrix) -> Result<MetaboliserEnumeration, SeifertError> {
    let iso = isometry(s)?;
    let spectrum = rational_eigenpairs(&iso)?;
    let g = s.genus();
    let n = s.dim();
    if !spectrum.complete {
        return Err(SeifertError::OutsideHypotheses(
            "non-rational spectrum: the isometry has irrational or complex eigenvalues".into(),
        ));
    }
    if !spectrum.is_simple() {
        return Err(SeifertError::OutsideHypotheses(
            "repeated eigenvalue of the isometry".into(),
        ));
    }
    if spectrum.pairs.iter().any(|p| p.value.is_one()) {
        return Err(SeifertError::OutsideHypotheses("eigenvalue 1 of the isometry".into()));
    }

    let vectors: Vec<Vec<Integer>> = spectrum.pairs.iter().map(|p| p.vectors[0].clone()).collect();
    let eigenvalues: Vec<Rational> = spectrum.pairs.iter().map(|p| p.value.clone()).collect();
    for v in &vectors {
        assert!(s.pairing(v, v).is_zero(), "eigenvector with λ ≠ 1 must be self-annihilating");
    }

    let compatible = |i: usize, j: usize| s.pairing(&vectors[i], &vectors[j]) == s.pairing(&vectors[j], &vectors[i]);

    let mut metabolisers = Vec::new();
    for subset in combinations(n, g) {
        let ok = subset
            .iter()
            .enumerate()
            .all(|(a, &i)| subset[a + 1..].iter().all(|&j| compatible(i, j)));
        if !ok {
            continue;
        }
        let mut chosen: Vec<usize> = subset.clone();
        let classes: Vec<Option<(usize, CurveKind)>> = chosen.iter().map(|&i| classify(&vectors[i], g)).collect();
        let label = if classes.iter().all(Option::is_some) {
            let mut tagged: Vec<(usize, CurveKind, usize)> = classes
                .iter()
                .zip(&chosen)
                .map(|(c, &i)| {
                    let (pair, kind) = c.unwrap();
                    (pair, kind, i)
                })
                .collect();
            tagged.sort();
            let distinct_pairs = tagged.windows(2).all(|w| w[0].0 != w[1].0);
            if distinct_pairs {
                chosen = tagged.iter().map(|t| t.2).collect();
                Some(SelectionPattern(tagged.iter().map(|t| t.1).collect()))
            } else {
                None
            }
        } else {
            None
        };

        let cols: Vec<Vec<Integer>> = chosen.iter().map(|&i| vectors[i].clone()).collect();
        let raw = Matrix::from_columns(n, &cols);
        let (basis, eigenvector_basis) = if is_primitive(&raw) {
            (raw, true)
        } else {
            (saturate_lattice(&raw)?, false)
        };
        let h = Metaboliser {
            basis,
            label,
            eigenvalues: chosen.iter().map(|&i| eigenvalues[i].clone()).collect(),
            eigenvector_basis,
        };
        debug_assert!(verify_metaboliser(s, &h).unwrap_or(false));
        metabolisers.push(h);
    }

    Ok(MetaboliserEnumeration {
        metabolisers,
        eigenvalues,
        extrapolated: g != 3,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// True iff `basis^T M basis = 0` and the columns span a direct summand of
/// rank `g`.
pub fn verify_metaboliser(s: &SeifertMatrix, h: &Metaboliser) -> Result<bool, SeifertError> {
    let b = &h.basis;
    if b.nrows() != s.dim() || b.ncols() != s.genus() {
        return Err(SeifertError::Dimension(format!(
            "metaboliser basis is {}x{}, expected {}x{}",
            b.nrows(),
            b.ncols(),
            s.dim(),
            s.genus()
        )));
    }
    let form = b.transpose().mul(s.matrix())?.mul(b)?;
    Ok(form.is_zero() && is_primitive(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryPair {
    pub first: usize,
    pub second: usize,
    /// Determinant of the combined `2g x 2g` basis.
    pub determinant: Integer,
    /// Whether the two lattices also split `Z^{2g}` integrally.
    pub unimodular: bool,
}

/// Unordered pairs whose rational spans are complementary.
pub fn complementary_pairs(s: &SeifertMatrix, hs: &[Metaboliser]) -> Vec<ComplementaryPair> {
    let mut out = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let Ok(joint) = hs[i].basis.hstack(&hs[j].basis) else {
                continue;
            };
            if joint.ncols() != s.dim() {
                continue;
            }
            let d = det_int(&joint).expect("square");
            if !d.is_zero() {
                out.push(ComplementaryPair {
                    first: i,
                    second: j,
                    unimodular: d.abs().is_one(),
                    determinant: d,
                });
            }
        }
    }
    out
}

/// Linking matrix `X = (lk(d_i, h_j^+))` between the metaboliser basis and
/// its intersection duals `d_i`, fixed by `H^T (M - M^T) D = -I`.
///
/// In the basis `{d, h}` the Seifert form reads `[[*, X], [X^T - I, 0]]`.
/// `X` does not depend on the choice of duals because `H` is isotropic.
pub fn derivative_linking_matrix(s: &SeifertMatrix, h: &IntMatrix) -> Result<IntMatrix, SeifertError> {
    let g = s.genus();
    let lhs = h.transpose().mul(&s.intersection_form())?;
    let minus_id = Matrix::from_fn(g, g, |i, j| if i == j { -BigInt::one() } else { BigInt::zero() });
    let d = lattice::solve_integral(&lhs, &minus_id).ok_or_else(|| {
        SeifertError::Dimension("metaboliser basis has no integral intersection duals".into())
    })?;
    Ok(d.transpose().mul(s.matrix())?.mul(h)?)
}

/// The rational span of `h` is preserved by the isometry.
pub fn isometry_preserves(iso: &RatMatrix, h: &IntMatrix) -> bool {
    let hq = to_rational(h);
    let image = match iso.mul(&hq) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let joint = hq.hstack(&image).expect("same rows");
    joint.rank() == hq.rank()
}
