//! Exact arithmetic: big integers and rationals, Laurent polynomials,
//! determinants, rational spectra and integer lattices.

pub mod eigen;
pub mod integer;
pub mod laurent;
pub mod lattice;
pub mod matrix;

use thiserror::Error;

pub use eigen::{rational_eigenpairs, EigenPair, RationalSpectrum};
pub use integer::Integer;
pub use laurent::LaurentPoly;
pub use lattice::{hermite_normal_form, is_primitive, saturate_lattice, same_lattice, smith_normal_form};
pub use matrix::{det_int, det_laurent, kernel_basis, IntMatrix, LaurentMatrix, Matrix, RatMatrix};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("rows of unequal length")]
    Ragged,
    #[error("matrix is singular")]
    Singular,
    #[error("columns are dependent: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },
}
