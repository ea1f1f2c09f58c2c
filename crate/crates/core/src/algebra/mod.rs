//! Exact rational arithmetic and sparse homogeneous polynomial algebra.

pub mod field;
pub mod gcd;
pub mod matrix;
pub mod parse;
mod poly;
pub mod roots;
pub mod sparse;
pub mod upoly;

use num_rational::BigRational;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rat = BigRational;

pub use field::{Field, Quad};
pub use poly::{
    apply_change, det_poly_matrix, is_squarefree, parse_poly, resultant, squarefree_part, sylvester_resultant,
    Poly, PolyText, ProjChange,
};
pub use sparse::{Exponent, SparsePoly};
pub use upoly::UPoly;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
