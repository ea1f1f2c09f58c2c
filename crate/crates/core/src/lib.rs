//! Exact torus-level GIT stability analysis for linear systems of
//! hypersurfaces in projective space.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact rationals, sparse homogeneous polynomials,
//!   resultants, determinants and square-free parts.
//! * [`weights`]: one-parameter subgroups and Hilbert–Mumford weights of
//!   hypersurfaces and linear systems (greedy triangularisation and the
//!   brute-force Plücker oracle).
//! * [`polyhedra`]: the exact max-min linear program over normalized
//!   weights, torus destabilizers, certificates and toric lct bounds.
//! * [`geometry`]: plane-curve predicates (multiplicities, intersection
//!   numbers, base points, reducedness, smooth members, flag candidates).
//! * [`nets`]: nets of conics, discriminant cubics and Wall's criterion.
//! * [`applications`]: reports for cubic pencils, Halphen pencils and
//!   sums of hypersurfaces.
//! * [`input`]: the text input format and the shipped example inputs.
//! * [`selftest`]: a deterministic run over the examples and seeded
//!   random comparisons.
//!
//! All arithmetic is over the rationals; verdicts refer to the given
//! rational model of each system.

pub mod algebra;
pub mod applications;
pub mod error;
pub mod geometry;
pub mod input;
pub mod json;
pub mod nets;
pub mod polyhedra;
pub mod random;
pub mod selftest;
pub mod weights;

pub use weights::{LinearSystem, OneParamSubgroup, WeightReport};

pub use algebra::{parse_poly, Poly, ProjChange, Rat, SparsePoly};
pub use error::{Error, Result};

