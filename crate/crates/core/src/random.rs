//! Reproducible random inputs for self-checks and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{int, Exponent, Poly, SparsePoly};
use crate::weights::{LinearSystem, OneParamSubgroup};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// descending lexicographic order.
pub fn monomials(nvars: usize, d: u32) -> Vec<Exponent> {
    fn rec(left: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(left - e, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, nvars, &mut Vec::new(), &mut out);
    out
}

/// A nonzero form whose monomials are each present with probability
/// `density`, with coefficients in `[−5, 5]`.
pub fn random_form(rng: &mut ChaCha8Rng, nvars: usize, d: u32, density: f64) -> Poly {
    let mons = monomials(nvars, d);
    loop {
        let mut terms = Vec::new();
        for e in &mons {
            if rng.gen_bool(density) {
                terms.push((e.clone(), int(rng.gen_range(-5..=5))));
            }
        }
        let p = SparsePoly::from_terms(nvars, terms);
        if let Ok(f) = Poly::new(p) {
            return f;
        }
    }
}

/// `k+1` independent random forms; `k+1` must not exceed the number of
/// monomials of degree `d`.
pub fn random_system(rng: &mut ChaCha8Rng, nvars: usize, d: u32, k: usize) -> LinearSystem {
    assert!(k < monomials(nvars, d).len(), "too many generators for the degree");
    loop {
        let density = rng.gen_range(0.2..=0.8);
        let gens = (0..=k).map(|_| random_form(rng, nvars, d, density)).collect();
        if let Ok(sys) = LinearSystem::new(gens) {
            return sys;
        }
    }
}

/// A nontrivial subgroup with weights in `[−4, 4]` before normalization.
pub fn random_subgroup(rng: &mut ChaCha8Rng, nvars: usize) -> OneParamSubgroup {
    loop {
        let mut raw: Vec<i64> = (1..nvars).map(|_| rng.gen_range(-4..=4)).collect();
        raw.push(-raw.iter().sum::<i64>());
        if let Ok(l) = OneParamSubgroup::normalize(&raw) {
            return l;
        }
    }
}

/// A system in 3 or 4 variables of degree at most 3 with at most three
/// generators, and `subgroups` random subgroups for it.
pub fn random_case(seed: u64, subgroups: usize) -> (LinearSystem, Vec<OneParamSubgroup>) {
    let mut r = rng(seed);
    let nvars = r.gen_range(3..=4);
    let d = r.gen_range(1..=3);
    let k = r.gen_range(0..=2).min(monomials(nvars, d).len() - 1);
    let sys = random_system(&mut r, nvars, d, k);
    let lambdas = (0..subgroups).map(|_| random_subgroup(&mut r, nvars)).collect();
    (sys, lambdas)
}
