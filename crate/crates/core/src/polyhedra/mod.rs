//! Torus-level destabilization as a max-min linear program.
//!
//! In a fixed frame and for a fixed ordering of the variables, a normalized
//! subgroup is described by its shifted weights `w_0 ≥ … ≥ w_{n−1} ≥ 0`
//! (`w_n = 0`). Scaling so that `Σ w_l = n+1` gives `A_λ = n+1`, and
//! `ω(𝓛, λ) = min_v ⟨w, v⟩` over the support vectors `v` (exponent totals of
//! nonzero Plücker coordinates). The system is unstable along some such
//! `λ` iff the maximum of this minimum exceeds `d(k+1)`, and non-stable iff
//! it reaches it. Running the program for every ordering of the variables
//! covers the whole diagonal torus of the frame.

pub mod lp;

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::field::denominators_lcm;
use crate::algebra::{Poly, ProjChange, Rat};
use crate::error::{Error, Result};
use crate::weights::{self, LinearSystem, OneParamSubgroup, StatusAtLambda};
use lp::LpOutcome;

/// Exponent totals `Σ_j i_{l_j}` of a nonzero Plücker coordinate, for
/// `l = 0..n−1` (the last variable carries shifted weight zero).
pub type SupportVector = Vec<i64>;

/// Exponent totals over all `n+1` variables of the nonzero maximal minors,
/// deduplicated.
pub fn plucker_totals(sys: &LinearSystem) -> Result<BTreeSet<Vec<i64>>> {
    let (cols, minors) = weights::nonzero_minors(sys)?;
    let n1 = sys.num_vars();
    Ok(minors
        .iter()
        .map(|idx| (0..n1).map(|l| idx.iter().map(|&j| cols[j][l] as i64).sum()).collect())
        .collect())
}

/// Support vectors in the given frame, with dominated vectors removed.
pub fn support_vectors(sys: &LinearSystem) -> Result<BTreeSet<SupportVector>> {
    let n = sys.num_vars() - 1;
    Ok(prune(plucker_totals(sys)?.iter().map(|t| t[..n].to_vec()).collect()))
}

/// Drops every vector that is componentwise ≥ another one; such vectors
/// never attain the minimum for nonnegative weights.
pub fn prune(vectors: BTreeSet<SupportVector>) -> BTreeSet<SupportVector> {
    let all: Vec<&SupportVector> = vectors.iter().collect();
    vectors
        .iter()
        .filter(|v| !all.iter().any(|u| *u != *v && u.iter().zip(v.iter()).all(|(a, b)| a <= b)))
        .cloned()
        .collect()
}

/// Optimum of the max-min program for one ordering of the variables.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxMin {
    /// `max min_v ⟨w, v⟩` under `Σ w = n+1`; compare with `d(k+1)`.
    pub value: Rat,
    /// An optimal `w_0 ≥ … ≥ w_{n−1} ≥ 0` with `Σ w = n+1`.
    pub shifted: Vec<Rat>,
    /// The integer subgroup proportional to `shifted`.
    pub lambda: OneParamSubgroup,
}

impl MaxMin {
    /// Best achievable `ω/A_λ`.
    pub fn ratio(&self) -> Rat {
        &self.value / Rat::from_integer((self.shifted.len() as i64 + 1).into())
    }
}

/// Solves `max t` subject to `t ≤ ⟨w, v⟩` for every `v`,
/// `w_0 ≥ … ≥ w_{n−1} ≥ 0`, `Σ w = n+1`, exactly.
///
/// With `u_m = w_m − w_{m+1}` (`u_{n−1} = w_{n−1}`) the monotone cone
/// becomes the orthant and `⟨w, v⟩ = Σ_m u_m V_m` where `V_m = v_0 + … + v_m`.
pub fn maxmin_ratio(vectors: &BTreeSet<SupportVector>, n: usize) -> MaxMin {
    assert!(!vectors.is_empty(), "support vectors must be nonempty");
    assert!(n >= 1);
    let zero = Rat::zero;
    let int = |k: i64| Rat::from_integer(k.into());
    let mut a: Vec<Vec<Rat>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![int(1)];
            let mut acc = 0i64;
            for &x in v.iter().take(n) {
                acc += x;
                row.push(int(-acc));
            }
            row
        })
        .collect();
    let mut b = vec![zero(); a.len()];
    let mut norm = vec![zero()];
    norm.extend((1..=n as i64).map(int));
    a.push(norm);
    b.push(int(n as i64 + 1));
    let mut c = vec![zero(); n + 1];
    c[0] = int(1);
    let LpOutcome::Optimal { x, .. } = lp::maximize(&c, &a, &b) else {
        unreachable!("the normalization bounds the program")
    };
    let mut u: Vec<Rat> = x[1..].to_vec();
    let total: Rat = u.iter().enumerate().map(|(m, um)| um * int(m as i64 + 1)).sum();
    if total.is_zero() {
        u[n - 1] = Rat::new((n as i64 + 1).into(), (n as i64).into());
    } else if total != int(n as i64 + 1) {
        let s = int(n as i64 + 1) / total;
        u.iter_mut().for_each(|um| *um *= &s);
    }
    let mut shifted = vec![zero(); n];
    let mut acc = zero();
    for m in (0..n).rev() {
        acc += &u[m];
        shifted[m] = acc.clone();
    }
    let value = vectors.iter().map(|v| pairing(&shifted, v)).min().expect("nonempty");
    let lambda = lambda_from_shifted(&shifted);
    MaxMin { value, shifted, lambda }
}

fn pairing(w: &[Rat], v: &[i64]) -> Rat {
    w.iter().zip(v).map(|(a, &b)| a * Rat::from_integer(b.into())).sum()
}

/// Integer subgroup with `a_l − a_n ∝ w_l`, given `Σ_{l<n} w_l = n+1`:
/// `a = (w_0 − 1, …, w_{n−1} − 1, −1)`, cleared of denominators.
pub fn lambda_from_shifted(w: &[Rat]) -> OneParamSubgroup {
    let one = Rat::one();
    let mut a: Vec<Rat> = w.iter().map(|x| x - &one).collect();
    a.push(-one);
    let den = Rat::from_integer(denominators_lcm(&a));
    let ints: Vec<i64> = a
        .iter()
        .map(|x| {
            let v = (x * &den).to_integer();
            i64::try_from(v).expect("weights fit in 64 bits")
        })
        .collect();
    OneParamSubgroup::normalize(&ints).expect("w_0 > 1 so the subgroup is nontrivial")
}

/// Number of constraints tight at `shifted` among `t ≤ ⟨w, v⟩`,
/// `w_m ≥ w_{m+1}` and `w_{n−1} ≥ 0`.
pub fn active_constraints(vectors: &BTreeSet<SupportVector>, m: &MaxMin) -> usize {
    let w = &m.shifted;
    let n = w.len();
    let tight_v = vectors.iter().filter(|v| pairing(w, v) == m.value).count();
    let tight_cone = (0..n).filter(|&i| if i + 1 < n { w[i] == w[i + 1] } else { w[i].is_zero() }).count();
    tight_v + tight_cone
}

/// Best ordering of the variables for the max-min program in the current
/// frame.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusOptimum {
    pub best: MaxMin,
    /// New variable `j` is old variable `order[j]`.
    pub order: Vec<usize>,
}

impl TorusOptimum {
    pub fn frame(&self) -> ProjChange {
        ProjChange::permutation(&self.order).expect("valid permutation")
    }
}

/// Maximizes over every ordering of the variables (the full diagonal
/// torus of the frame). Ties keep the lexicographically first ordering.
pub fn torus_optimum(sys: &LinearSystem) -> Result<TorusOptimum> {
    let totals = plucker_totals(sys)?;
    let n1 = sys.num_vars();
    if n1 < 2 {
        return Err(Error::Unsupported("need at least two variables".into()));
    }
    let mut best: Option<TorusOptimum> = None;
    for order in (0..n1).permutations(n1) {
        let vectors: BTreeSet<SupportVector> =
            totals.iter().map(|t| order[..n1 - 1].iter().map(|&o| t[o]).collect()).collect();
        let m = maxmin_ratio(&prune(vectors), n1 - 1);
        if best.as_ref().is_none_or(|b| m.value > b.best.value) {
            best = Some(TorusOptimum { best: m, order });
        }
    }
    Ok(best.expect("at least one ordering"))
}

/// A frame and subgroup at which the system fails (strictly or not) the
/// Hilbert–Mumford inequality, with witness members realizing the weight.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub lambda: OneParamSubgroup,
    /// Frame in which `lambda` acts diagonally: the system analysed is
    /// `f ↦ f(coordinates · x)`.
    pub coordinates: ProjChange,
    pub omega: i64,
    pub a_lambda: i64,
    #[serde(with = "crate::json::rat")]
    pub ratio: Rat,
    #[serde(with = "crate::json::rat")]
    pub threshold: Rat,
    pub strict: bool,
    /// Members of the system, written in the certificate frame.
    pub witnesses: Vec<Poly>,
}

/// The part of a certificate needed to re-check it against a system.
#[derive(Clone, Debug, Deserialize)]
pub struct CertificateFrame {
    pub lambda: OneParamSubgroup,
    pub coordinates: ProjChange,
}

impl Certificate {
    /// Evaluates `sys` in `frame` at `lambda`; `None` if `lambda` does not
    /// destabilize there.
    pub fn at(sys: &LinearSystem, frame: &ProjChange, lambda: &OneParamSubgroup) -> Result<Option<Certificate>> {
        let moved = sys.apply_change(frame)?;
        let (report, witnesses) = weights::omega_system_greedy(&moved, lambda, None)?;
        if !report.status_at_lambda.destabilizes() {
            return Ok(None);
        }
        Ok(Some(Certificate {
            lambda: lambda.clone(),
            coordinates: frame.clone(),
            omega: report.omega,
            a_lambda: report.a_lambda,
            ratio: report.ratio,
            threshold: report.threshold,
            strict: report.status_at_lambda == StatusAtLambda::UnstableAt,
            witnesses,
        }))
    }

    /// Re-evaluates the system in the certificate frame and compares.
    pub fn verify(&self, sys: &LinearSystem) -> Result<bool> {
        let moved = sys.apply_change(&self.coordinates)?;
        let r = weights::verdict_at_lambda(&moved, &self.lambda)?;
        Ok(r.omega == self.omega
            && r.ratio == self.ratio
            && r.threshold == self.threshold
            && (r.status_at_lambda == StatusAtLambda::UnstableAt) == self.strict
            && r.status_at_lambda.destabilizes())
    }

    /// The degree `d(k+1)` form `Π witness_j`.
    pub fn witness_product(&self) -> Poly {
        let mut it = self.witnesses.iter();
        let first = it.next().expect("at least one witness").clone();
        it.fold(first, |acc, w| acc.mul(w))
    }
}

/// Destabilizing subgroup of the diagonal torus of the current frame, if
/// any. The certificate is re-verified before it is returned.
pub fn torus_destabilizer(sys: &LinearSystem) -> Result<Option<Certificate>> {
    let opt = torus_optimum(sys)?;
    let target = Rat::from_integer((sys.degree() as i64 * (sys.k() as i64 + 1)).into());
    if opt.best.value < target {
        return Ok(None);
    }
    let cert = Certificate::at(sys, &opt.frame(), &opt.best.lambda)?
        .ok_or_else(|| Error::Invalid("optimal subgroup failed re-verification".into()))?;
    if cert.ratio != opt.best.ratio() {
        return Err(Error::Invalid("optimal subgroup failed re-verification".into()));
    }
    Ok(Some(cert))
}

/// Upper bound for the log canonical threshold of `{f = 0}` from torus
/// invariant divisors of the current frame: `1 / max_λ (ω(f,λ)/A_λ)`.
/// `None` when every subgroup has weight zero (no finite bound).
pub fn toric_lct_bound(f: &Poly) -> Result<Option<Rat>> {
    if f.degree() == 0 {
        return Err(Error::Invalid("constant polynomial has no zero locus".into()));
    }
    let sys = LinearSystem::new(vec![f.clone()])?;
    let ratio = torus_optimum(&sys)?.best.ratio();
    Ok((!ratio.is_zero()).then(|| ratio.recip()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SearchVerdict {
    Unstable { certificate: Certificate },
    NonStable { certificate: Certificate },
    PresumedStable { flags_examined: usize },
}

impl SearchVerdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchVerdict::Unstable { certificate } | SearchVerdict::NonStable { certificate } => Some(certificate),
            SearchVerdict::PresumedStable { .. } => None,
        }
    }

    pub fn is_destabilized(&self) -> bool {
        self.certificate().is_some()
    }
}

/// Runs [`torus_destabilizer`] in every frame (the identity frame is always
/// examined first) and keeps the strongest result: strict certificates
/// beat non-strict ones, then higher ratio wins, then earlier frame.
pub fn search_destabilizer(sys: &LinearSystem, frames: &[ProjChange]) -> Result<SearchVerdict> {
    let id = ProjChange::identity(sys.num_vars());
    let mut all: Vec<ProjChange> = vec![id.clone()];
    all.extend(frames.iter().filter(|f| **f != id).cloned());
    let found: Vec<Option<Certificate>> = all
        .par_iter()
        .map(|g| {
            let moved = sys.apply_change(g)?;
            Ok(torus_destabilizer(&moved)?.map(|c| {
                let coordinates = g.then(&c.coordinates);
                Certificate { coordinates, ..c }
            }))
        })
        .collect::<Result<_>>()?;
    let mut best: Option<Certificate> = None;
    for c in found.into_iter().flatten() {
        let better = match &best {
            None => true,
            Some(b) => (c.strict, &c.ratio) > (b.strict, &b.ratio),
        };
        if better {
            best = Some(c);
        }
    }
    Ok(match best {
        Some(c) if c.strict => SearchVerdict::Unstable { certificate: c },
        Some(c) => SearchVerdict::NonStable { certificate: c },
        None => SearchVerdict::PresumedStable { flags_examined: all.len() },
    })
}
