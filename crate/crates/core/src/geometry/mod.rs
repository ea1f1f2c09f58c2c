//! Plane-curve geometry over ℚ and quadratic extensions: common zeros,
//! local invariants, pencils and the flags used to search for
//! destabilizing subgroups.

pub mod flags;
pub mod lines;
pub mod local;
pub mod pencil;
pub mod point;
pub mod zeros;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{int, matrix, Field, ProjChange, Rat, SparsePoly};

pub use flags::{enumerate_flags, flag_frames, search_with_flags, FlagCandidate, FlagSource};
pub use lines::linear_factors;
pub use local::{intersection_multiplicity_at, is_node_at, multiplicity_at, tangent_cone_lines};
pub use pencil::{base_point_singularities_nodal, members_reduced, pencil_has_smooth_member};
pub use point::ProjPoint;
pub use zeros::{base_points, common_zeros, is_smooth, singular_points, ZeroScan};

/// Answer of a test that may be inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl TriState {
    pub fn from_bool(b: bool) -> TriState {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }
}

pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Invertible integer matrix with small entries.
pub(crate) fn random_frame(n: usize, rng: &mut ChaCha8Rng) -> ProjChange {
    loop {
        let m: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
        if !matrix::det(&m).is_zero() {
            return ProjChange::new(m).expect("nonsingular");
        }
    }
}

/// `p(M x)` for a frame `M`.
pub(crate) fn change_coordinates(p: &SparsePoly, frame: &ProjChange) -> SparsePoly {
    let n = p.nvars();
    let images: Vec<SparsePoly> = frame
        .matrix()
        .iter()
        .map(|row| {
            SparsePoly::from_terms(
                n,
                row.iter().enumerate().map(|(j, c)| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    (e, c.clone())
                }),
            )
        })
        .collect();
    p.compose(&images)
}
