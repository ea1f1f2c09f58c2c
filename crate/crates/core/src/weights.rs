//! One-parameter subgroups and Hilbert–Mumford weights.
//!
//! A normalized subgroup acts diagonally with integer weights
//! `a_0 ≥ … ≥ a_n`, `Σ a_i = 0`. Weights of monomials are measured with the
//! shifted weights `w_l = a_l − a_n ≥ 0`, so the weight of `x^I` is
//! `Σ_l w_l i_l` and `A_λ = Σ_l w_l = −(n+1)·a_n`.
//!
//! For a linear system `𝓛 = ⟨f_0, …, f_k⟩` the weight `ω(𝓛, λ)` is the least
//! weight of a nonzero Plücker coordinate, i.e. of a nonzero maximal minor
//! of the coefficient matrix. [`omega_system_oracle`] enumerates the minors;
//! [`omega_system_greedy`] triangularizes the generators instead and also
//! produces witness members whose weights add up to `ω(𝓛, λ)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::matrix::{self, Matrix};
use crate::algebra::{apply_change, Exponent, Poly, ProjChange, Rat, SparsePoly};
use crate::error::{Error, Result};

/// Upper bound on the number of maximal minors the oracle will enumerate.
pub const MINOR_GUARD: u128 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct OneParamSubgroup {
    weights: Vec<i64>,
}

impl OneParamSubgroup {
    /// Sorts descending and divides by the gcd. The sum must already be
    /// zero; it is never adjusted.
    pub fn normalize(raw: &[i64]) -> Result<OneParamSubgroup> {
        if raw.len() < 2 {
            return Err(Error::InvalidSubgroup("need at least two weights".into()));
        }
        if raw.iter().all(|&a| a == 0) {
            return Err(Error::InvalidSubgroup("all weights are zero".into()));
        }
        let sum: i128 = raw.iter().map(|&a| a as i128).sum();
        if sum != 0 {
            return Err(Error::InvalidSubgroup(format!("weights sum to {sum}, not 0")));
        }
        let g = raw.iter().fold(0i64, |g, &a| g.gcd(&a));
        let mut weights: Vec<i64> = raw.iter().map(|&a| a / g).collect();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        Ok(OneParamSubgroup { weights })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    /// `w_l = a_l − a_n`, including the trailing zero.
    pub fn shifted(&self) -> Vec<i64> {
        shifted_weights(&self.weights)
    }

    /// `A_λ = Σ_l (a_l − a_n)`.
    pub fn a_lambda(&self) -> i64 {
        self.shifted().iter().sum()
    }
}

impl TryFrom<Vec<i64>> for OneParamSubgroup {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        let s = OneParamSubgroup::normalize(&v)?;
        if s.weights != v {
            return Err(Error::InvalidSubgroup(format!("{v:?} is not normalized")));
        }
        Ok(s)
    }
}

impl From<OneParamSubgroup> for Vec<i64> {
    fn from(s: OneParamSubgroup) -> Vec<i64> {
        s.weights
    }
}

pub fn normalize_1ps(raw: &[i64]) -> Result<OneParamSubgroup> {
    OneParamSubgroup::normalize(raw)
}

fn shifted_weights(a: &[i64]) -> Vec<i64> {
    let last = *a.last().expect("nonempty weights");
    a.iter().map(|&x| x - last).collect()
}

/// Weight `Σ w_l e_l` of a monomial.
pub fn monomial_weight(e: &[u32], shifted: &[i64]) -> i64 {
    e.iter().zip(shifted).map(|(&k, &w)| k as i64 * w).sum()
}

/// `k+1` linearly independent forms of a common degree in a common number
/// of variables.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct LinearSystem {
    generators: Vec<Poly>,
    #[serde(skip)]
    degree: u32,
    #[serde(skip)]
    num_vars: usize,
}

impl LinearSystem {
    pub fn new(generators: Vec<Poly>) -> Result<LinearSystem> {
        let first = generators.first().ok_or_else(|| Error::Invalid("empty linear system".into()))?;
        let (degree, num_vars) = (first.degree(), first.num_vars());
        for g in &generators {
            if g.num_vars() != num_vars {
                return Err(Error::DimensionMismatch { expected: num_vars, found: g.num_vars() });
            }
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let sys = LinearSystem { generators, degree, num_vars };
        let (_, m) = sys.coefficient_matrix();
        if matrix::rank(&m) != sys.generators.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(sys)
    }

    /// Parses each text as a form in `num_vars` variables.
    pub fn parse(texts: &[&str], num_vars: usize) -> Result<LinearSystem> {
        LinearSystem::new(texts.iter().map(|t| Poly::parse(t, num_vars)).collect::<Result<_>>()?)
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// `k`, one less than the number of generators.
    pub fn k(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// `d(k+1)/(n+1)`.
    pub fn threshold(&self) -> Rat {
        Rat::new(
            (self.degree as i64 * self.generators.len() as i64).into(),
            (self.num_vars as i64).into(),
        )
    }

    /// Columns are the monomials in the union of the supports, in
    /// ascending lexicographic order; rows are the generators.
    pub fn coefficient_matrix(&self) -> (Vec<Exponent>, Matrix<Rat>) {
        let cols: Vec<Exponent> =
            self.generators.iter().flat_map(|g| g.support().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
        let m = self.generators.iter().map(|g| cols.iter().map(|e| g.coeff(e)).collect()).collect();
        (cols, m)
    }

    pub fn apply_change(&self, g: &ProjChange) -> Result<LinearSystem> {
        let generators = self.generators.iter().map(|f| apply_change(f, g)).collect::<Result<Vec<_>>>()?;
        Ok(LinearSystem { generators, degree: self.degree, num_vars: self.num_vars })
    }

    /// Product of the generators, a form of degree `d(k+1)`.
    pub fn product(&self) -> Poly {
        let mut it = self.generators.iter();
        let first = it.next().expect("nonempty").clone();
        it.fold(first, |acc, g| acc.mul(g))
    }

    fn check_dim(&self, lambda: &OneParamSubgroup) -> Result<()> {
        if lambda.num_vars() != self.num_vars {
            return Err(Error::DimensionMismatch { expected: self.num_vars, found: lambda.num_vars() });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatusAtLambda {
    StableAt,
    StrictlySemistableAt,
    UnstableAt,
}

impl StatusAtLambda {
    pub fn from_ratio(ratio: &Rat, threshold: &Rat) -> StatusAtLambda {
        match ratio.cmp(threshold) {
            Ordering::Less => StatusAtLambda::StableAt,
            Ordering::Equal => StatusAtLambda::StrictlySemistableAt,
            Ordering::Greater => StatusAtLambda::UnstableAt,
        }
    }

    /// True when `λ` witnesses non-stability (ratio ≥ threshold).
    pub fn destabilizes(self) -> bool {
        self != StatusAtLambda::StableAt
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct WeightReport {
    pub omega: i64,
    pub a_lambda: i64,
    #[serde(with = "crate::json::rat")]
    pub ratio: Rat,
    #[serde(with = "crate::json::rat")]
    pub threshold: Rat,
    pub status_at_lambda: StatusAtLambda,
    /// Column tuples (as exponent lists) of minimal-weight nonzero minors.
    pub achieving_tuples: Vec<Vec<Exponent>>,
}

impl WeightReport {
    fn new(omega: i64, a_lambda: i64, threshold: Rat, achieving_tuples: Vec<Vec<Exponent>>) -> WeightReport {
        let ratio = Rat::new(omega.into(), a_lambda.into());
        let status_at_lambda = StatusAtLambda::from_ratio(&ratio, &threshold);
        WeightReport { omega, a_lambda, ratio, threshold, status_at_lambda, achieving_tuples }
    }
}

/// `ω(f, λ)`: least weight over the support of `f`.
pub fn omega_hyp(f: &Poly, lambda: &OneParamSubgroup) -> Result<i64> {
    if f.num_vars() != lambda.num_vars() {
        return Err(Error::DimensionMismatch { expected: f.num_vars(), found: lambda.num_vars() });
    }
    Ok(omega_hyp_shifted(f, &lambda.shifted()))
}

/// `ω(f, λ)` for arbitrary nonnegative shifted weights.
pub fn omega_hyp_shifted(f: &Poly, shifted: &[i64]) -> i64 {
    f.support().map(|e| monomial_weight(e, shifted)).min().expect("nonzero polynomial")
}

/// Column index sets of all nonzero maximal minors of the coefficient
/// matrix, together with the column monomials.
pub fn nonzero_minors(sys: &LinearSystem) -> Result<(Vec<Exponent>, Vec<Vec<usize>>)> {
    let (cols, m) = sys.coefficient_matrix();
    let r = sys.generators.len();
    let tuples = binomial(cols.len() as u128, r as u128);
    if tuples > MINOR_GUARD {
        return Err(Error::GuardExceeded { tuples, limit: MINOR_GUARD });
    }
    let nonzero = (0..cols.len())
        .combinations(r)
        .filter(|idx| {
            let sub: Matrix<Rat> = m.iter().map(|row| idx.iter().map(|&j| row[j].clone()).collect()).collect();
            !matrix::det(&sub).is_zero()
        })
        .collect();
    Ok((cols, nonzero))
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// `ω(𝓛, λ)` by enumerating every maximal minor.
pub fn omega_system_oracle(sys: &LinearSystem, lambda: &OneParamSubgroup) -> Result<WeightReport> {
    sys.check_dim(lambda)?;
    let shifted = lambda.shifted();
    let (cols, minors) = nonzero_minors(sys)?;
    let weighted: Vec<(i64, &Vec<usize>)> =
        minors.iter().map(|idx| (idx.iter().map(|&j| monomial_weight(&cols[j], &shifted)).sum(), idx)).collect();
    let omega = weighted.iter().map(|(w, _)| *w).min().expect("independent generators have a nonzero minor");
    let achieving = weighted
        .iter()
        .filter(|(w, _)| *w == omega)
        .map(|(_, idx)| idx.iter().map(|&j| cols[j].clone()).collect())
        .collect();
    Ok(WeightReport::new(omega, lambda.a_lambda(), sys.threshold(), achieving))
}

/// Greedy triangularization with shifted weights: returns `ω`, the pivot
/// monomials and the witness members.
fn greedy(sys: &LinearSystem, shifted: &[i64], first: Option<usize>) -> (i64, Vec<Exponent>, Vec<Poly>) {
    let mut order: Vec<usize> = (0..sys.generators.len()).collect();
    if let Some(f) = first {
        order.retain(|&i| i != f);
        order.insert(0, f);
    }
    let mut current: Vec<SparsePoly> = order.iter().map(|&i| sys.generators[i].as_sparse().clone()).collect();
    let mut pivots = Vec::with_capacity(current.len());
    let mut omega = 0;
    for j in 0..current.len() {
        let g = current[j].clone();
        // BTreeMap order makes the first minimum the lexicographically smallest
        let (pivot, c) = g
            .terms()
            .min_by_key(|(e, _)| monomial_weight(e, shifted))
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("independent generators stay nonzero");
        omega += monomial_weight(&pivot, shifted);
        for later in current.iter_mut().skip(j + 1) {
            let a = later.coeff(&pivot);
            if !a.is_zero() {
                *later = &*later - &g.scale(&(a / &c));
            }
        }
        pivots.push(pivot);
    }
    let witnesses = current.into_iter().map(|p| Poly::new(p).expect("homogeneous and nonzero")).collect();
    (omega, pivots, witnesses)
}

/// `ω(𝓛, λ)` by greedy triangularization. The witnesses are `k+1` distinct
/// members of `𝓛` with `Σ_j ω(witness_j, λ) = ω(𝓛, λ)`; with `first` the
/// first witness is that generator.
pub fn omega_system_greedy(
    sys: &LinearSystem,
    lambda: &OneParamSubgroup,
    first: Option<usize>,
) -> Result<(WeightReport, Vec<Poly>)> {
    sys.check_dim(lambda)?;
    if let Some(f) = first {
        if f >= sys.generators.len() {
            return Err(Error::Invalid(format!("generator index {f} out of range")));
        }
    }
    let (omega, pivots, witnesses) = greedy(sys, &lambda.shifted(), first);
    Ok((WeightReport::new(omega, lambda.a_lambda(), sys.threshold(), vec![pivots]), witnesses))
}

pub fn verdict_at_lambda(sys: &LinearSystem, lambda: &OneParamSubgroup) -> Result<WeightReport> {
    omega_system_greedy(sys, lambda, None).map(|(r, _)| r)
}

/// `(ω(𝓛, a), A_a)` for a descending, sum-zero weight vector that need not
/// be gcd-reduced.
pub fn omega_system_raw(sys: &LinearSystem, raw: &[i64]) -> Result<(i64, i64)> {
    if raw.len() != sys.num_vars {
        return Err(Error::DimensionMismatch { expected: sys.num_vars, found: raw.len() });
    }
    if raw.windows(2).any(|w| w[0] < w[1]) || raw.iter().sum::<i64>() != 0 || raw[0] <= 0 {
        return Err(Error::InvalidSubgroup(format!("{raw:?} is not descending with zero sum")));
    }
    let shifted = shifted_weights(raw);
    Ok((greedy(sys, &shifted, None).0, shifted.iter().sum()))
}
