//! Deterministic self-check: every shipped fixture plus seeded random
//! comparisons between independent computations. The report contains no
//! timings, so equal seeds give byte-identical JSON.

use serde::Serialize;

use crate::algebra::{Poly, ProjChange};
use crate::applications::{analyze_cubic_pencil, analyze_halphen, FiberType, Verdict};
use crate::error::{Error, Result};
use crate::input::{parse_order, parse_weights, Fixture, FIXTURES};
use crate::json::SCHEMA;
use crate::nets::{classify_cubic, random_net, wall_cross_check, NetOfConics};
use crate::random::{random_case, random_form, rng};
use crate::weights::{omega_hyp, omega_system_greedy, omega_system_oracle, OneParamSubgroup};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub kind: String,
    pub verdict: String,
    pub expected: Option<String>,
    pub notes: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomSummary {
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelfTestReport {
    pub schema: &'static str,
    pub seed: u64,
    pub fixtures: Vec<FixtureOutcome>,
    /// Greedy triangularization against the Plücker-minor oracle.
    pub oracle: RandomSummary,
    /// `ω(fg, λ) = ω(f, λ) + ω(g, λ)`.
    pub additivity: RandomSummary,
    /// Discriminant classification against the direct criterion.
    pub nets: RandomSummary,
    pub passed: bool,
}

fn tag<T: Serialize>(t: &T) -> String {
    match serde_json::to_value(t) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(v) => v.to_string(),
        Err(e) => format!("<{e}>"),
    }
}

pub fn run_fixture(f: &Fixture) -> Result<FixtureOutcome> {
    let input = f.input();
    let kind = input.get("kind").unwrap_or("").to_string();
    let mut notes = Vec::new();
    let mut extra_ok = true;
    let verdict = match kind.as_str() {
        "cubic-pencil" => {
            let r = analyze_cubic_pencil(&input.system(3)?)?;
            extra_ok &= r.consistent();
            r.verdict
        }
        "halphen" => {
            let sys = input.system(3)?;
            let m: u32 = input
                .get("index")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Invalid(format!("{}: missing index", f.name)))?;
            let fibers: Vec<FiberType> = match input.get("fibers") {
                Some(s) => s.split(',').map(str::parse).collect::<Result<_>>()?,
                None => Vec::new(),
            };
            if let (Some(order), Some(lambda)) = (input.get("order"), input.get("lambda")) {
                let frame = ProjChange::permutation(&parse_order(order, 3)?)?;
                let lambda = OneParamSubgroup::normalize(&parse_weights(lambda)?)?;
                let (w, _) = omega_system_greedy(&sys.apply_change(&frame)?, &lambda, None)?;
                notes.push(format!("at {:?} bound to ({order}): omega {} ratio {}", lambda.weights(), w.omega, w.ratio));
            }
            let r = analyze_halphen(&sys, m, &fibers)?;
            extra_ok &= r.consistent();
            if let Some(e) = r.halphen.as_ref().and_then(|h| h.exception.clone()) {
                notes.push(e);
            }
            r.verdict
        }
        "net" => {
            let forms = input.forms(3)?;
            let [a, b, c]: [Poly; 3] =
                forms.try_into().map_err(|_| Error::Invalid(format!("{}: a net needs three conics", f.name)))?;
            let r = wall_cross_check(&NetOfConics::new(a, b, c)?)?;
            extra_ok &= r.consistent() && r.determinate();
            if let Some(expected) = input.get("discriminant") {
                let given = if expected == "0" { None } else { Some(Poly::parse(expected, 3)?) };
                let class = classify_cubic(given.as_ref())?;
                notes.push(format!("discriminant class {}", tag(&r.cubic_class)));
                extra_ok &= class == r.cubic_class;
            }
            Verdict::from_search(&r.search)
        }
        other => return Err(Error::Invalid(format!("{}: unknown fixture kind `{other}`", f.name))),
    };
    let verdict = tag(&verdict);
    let expected = input.get("expect").map(str::to_string);
    let passed = extra_ok && expected.as_ref().is_none_or(|e| *e == verdict);
    Ok(FixtureOutcome { name: f.name.to_string(), kind, verdict, expected, notes, passed })
}

const ORACLE_CASES: u64 = 40;
const ADDITIVITY_CASES: u64 = 40;
const NET_CASES: u64 = 20;

fn oracle_check(seed: u64) -> Result<RandomSummary> {
    let mut failures = Vec::new();
    for i in 0..ORACLE_CASES {
        let (sys, lambdas) = random_case(seed.wrapping_add(i), 3);
        for l in &lambdas {
            let g = omega_system_greedy(&sys, l, None)?.0.omega;
            let o = omega_system_oracle(&sys, l)?.omega;
            if g != o {
                failures.push(format!("case {i}, {:?}: greedy {g}, oracle {o}", l.weights()));
            }
        }
    }
    Ok(RandomSummary { cases: ORACLE_CASES as usize, failures })
}

fn additivity_check(seed: u64) -> Result<RandomSummary> {
    let mut r = rng(seed ^ 0x6164_6469);
    let mut failures = Vec::new();
    for i in 0..ADDITIVITY_CASES {
        let (sys, lambdas) = random_case(seed.wrapping_add(i), 1);
        let n = sys.num_vars();
        let f = random_form(&mut r, n, 2, 0.5);
        let g = random_form(&mut r, n, 3, 0.5);
        let l = &lambdas[0];
        let (a, b, ab) = (omega_hyp(&f, l)?, omega_hyp(&g, l)?, omega_hyp(&f.mul(&g), l)?);
        if a + b != ab {
            failures.push(format!("case {i}: {a} + {b} != {ab}"));
        }
    }
    Ok(RandomSummary { cases: ADDITIVITY_CASES as usize, failures })
}

fn net_check(seed: u64) -> Result<RandomSummary> {
    let mut failures = Vec::new();
    for i in 0..NET_CASES {
        let (family, net) = random_net(seed.wrapping_add(i));
        let r = wall_cross_check(&net)?;
        if !r.consistent() {
            failures.push(format!("net {i} ({family:?}): {}", r.mismatches.join("; ")));
        }
    }
    Ok(RandomSummary { cases: NET_CASES as usize, failures })
}

pub fn run(seed: u64) -> Result<SelfTestReport> {
    let fixtures = FIXTURES.iter().map(run_fixture).collect::<Result<Vec<_>>>()?;
    let oracle = oracle_check(seed)?;
    let additivity = additivity_check(seed)?;
    let nets = net_check(seed)?;
    let passed = fixtures.iter().all(|f| f.passed)
        && oracle.failures.is_empty()
        && additivity.failures.is_empty()
        && nets.failures.is_empty();
    Ok(SelfTestReport { schema: SCHEMA, seed, fixtures, oracle, additivity, nets, passed })
}
