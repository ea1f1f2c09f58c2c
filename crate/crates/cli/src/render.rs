//! Plain-text rendering of reports.

use std::fmt::Write;

use gitstab::algebra::field::rat_string;
use gitstab::applications::{BridgeCheck, PencilReport, SumReport};
use gitstab::nets::WallReport;
use gitstab::polyhedra::{Certificate, CertificateFrame, SearchVerdict};
use gitstab::selftest::SelfTestReport;
use gitstab::weights::{StatusAtLambda, WeightReport};
use gitstab::{LinearSystem, OneParamSubgroup, Poly, ProjChange, Rat};

fn status_line(s: StatusAtLambda) -> &'static str {
    match s {
        StatusAtLambda::StableAt => "stable at this subgroup",
        StatusAtLambda::StrictlySemistableAt => "non-stable (ratio equals the threshold)",
        StatusAtLambda::UnstableAt => "unstable (ratio exceeds the threshold)",
    }
}

fn weights(l: &OneParamSubgroup) -> String {
    l.weights().iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn frame(g: &ProjChange) -> String {
    g.matrix()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn weight_lines(out: &mut String, r: &WeightReport) {
    let _ = writeln!(out, "omega = {}", r.omega);
    let _ = writeln!(out, "A_lambda = {}", r.a_lambda);
    let _ = writeln!(out, "ratio = {}", rat_string(&r.ratio));
    let _ = writeln!(out, "threshold = {}", r.threshold);
    let _ = writeln!(out, "status: {}", status_line(r.status_at_lambda));
}

pub fn omega(l: &OneParamSubgroup, binding: &[String], r: &WeightReport, oracle: Option<i64>, wit: &[Poly]) -> String {
    let mut out = format!("lambda = ({}) on ({})\n", weights(l), binding.join(","));
    weight_lines(&mut out, r);
    match oracle {
        Some(o) => {
            let _ = writeln!(out, "minor oracle agrees: omega = {o}");
        }
        None => out.push_str("minor oracle skipped (too many minors)\n"),
    }
    out.push_str("witnesses (bound coordinates):\n");
    for w in wit {
        let _ = writeln!(out, "  {w}");
    }
    out
}

pub fn status(l: &OneParamSubgroup, binding: &[String], r: &WeightReport) -> String {
    let mut out = format!("lambda = ({}) on ({})\n", weights(l), binding.join(","));
    weight_lines(&mut out, r);
    out
}

pub fn certificate_check(c: &CertificateFrame, r: &WeightReport, valid: bool) -> String {
    let mut out = format!("lambda = ({}) in frame {}\n", weights(&c.lambda), frame(&c.coordinates));
    weight_lines(&mut out, r);
    let _ = writeln!(out, "certificate {}", if valid { "verified" } else { "REJECTED" });
    out
}

fn certificate(out: &mut String, c: &Certificate) {
    let _ = writeln!(out, "  lambda = ({})", weights(&c.lambda));
    let _ = writeln!(out, "  frame = {}", frame(&c.coordinates));
    let _ = writeln!(out, "  omega = {}, A_lambda = {}", c.omega, c.a_lambda);
    let _ = writeln!(out, "  ratio = {} vs threshold {} ({})", rat_string(&c.ratio), c.threshold, if c.strict { "strict" } else { "equal" });
    out.push_str("  witnesses (certificate frame):\n");
    for w in &c.witnesses {
        let _ = writeln!(out, "    {w}");
    }
}

fn bridges(out: &mut String, b: &BridgeCheck) {
    let _ = writeln!(
        out,
        "  witness product: omega = {}, ratio = {} ({})",
        b.product_omega,
        rat_string(&b.product_ratio),
        if b.identity_holds { "matches" } else { "MISMATCH" }
    );
    let bound = b.lct_bound.as_ref().map_or("none".to_string(), Rat::to_string);
    let _ = writeln!(
        out,
        "  toric lct bound of the product: {bound} vs {} ({})",
        b.lct_limit,
        if b.lct_holds { "holds" } else { "FAILS" }
    );
}

fn search_lines(out: &mut String, s: &SearchVerdict, b: Option<&BridgeCheck>) {
    match s {
        SearchVerdict::Unstable { certificate: c } => {
            out.push_str("verdict: unstable\n");
            certificate(out, c);
        }
        SearchVerdict::NonStable { certificate: c } => {
            out.push_str("verdict: non-stable\n");
            certificate(out, c);
        }
        SearchVerdict::PresumedStable { flags_examined } => {
            let _ = writeln!(out, "verdict: presumed stable (no destabilizer in {flags_examined} frames)");
        }
    }
    if let Some(b) = b {
        bridges(out, b);
    }
}

pub fn search(sys: &LinearSystem, s: &SearchVerdict, b: Option<&BridgeCheck>) -> String {
    let mut out = format!(
        "system: k = {}, d = {}, {} variables, threshold {}\n",
        sys.k(),
        sys.degree(),
        sys.num_vars(),
        sys.threshold()
    );
    search_lines(&mut out, s, b);
    out
}

pub fn net(r: &WallReport) -> String {
    let mut out = String::new();
    let disc = r.discriminant.as_ref().map_or("0 (identically zero)".to_string(), Poly::to_string);
    let _ = writeln!(out, "discriminant: {disc}");
    let _ = writeln!(out, "class: {}", tag(&r.cubic_class));
    let _ = writeln!(out, "wall expectation: {}", tag(&r.expectation));
    let _ = writeln!(
        out,
        "direct criterion: {} (double line: {}, base point: {})",
        tag(&r.direct.verdict),
        tag(&r.direct.double_line),
        tag(&r.direct.has_base_point)
    );
    if let Some(c) = &r.torus_certificate {
        let _ = writeln!(out, "given coordinates destabilized: ratio {}", rat_string(&c.ratio));
    }
    search_lines(&mut out, &r.search, None);
    for m in &r.mismatches {
        let _ = writeln!(out, "MISMATCH: {m}");
    }
    out
}

fn tag<T: serde::Serialize>(t: &T) -> String {
    match serde_json::to_value(t) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(serde_json::Value::Object(m)) => m
            .values()
            .map(|v| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))
            .collect::<Vec<_>>()
            .join(": "),
        Ok(v) => v.to_string(),
        Err(e) => e.to_string(),
    }
}

pub fn pencil(r: &PencilReport) -> String {
    let mut out = String::new();
    let gens: Vec<String> = r.generators.iter().map(Poly::to_string).collect();
    let _ = writeln!(out, "pencil <{}>, degree {}, threshold {}", gens.join(", "), r.degree, r.threshold);
    if let Some(h) = &r.halphen {
        let fibers: Vec<&str> = h.fiber_types.iter().map(|f| f.tag()).collect();
        let _ = writeln!(out, "Halphen index {}, fibers [{}]", h.index, fibers.join(", "));
        let _ = writeln!(out, "fiber test: {}", h.reason);
    }
    search_lines(&mut out, &r.search, r.bridges.as_ref());
    let _ = writeln!(out, "overall: {}", tag(&r.verdict));
    if let Some(u) = &r.upgrade {
        let _ = writeln!(out, "backed by: {u}");
    }
    for c in &r.commentary {
        let _ = writeln!(out, "note: {c}");
    }
    for d in &r.disagreements {
        let _ = writeln!(out, "DISAGREEMENT: {d}");
    }
    out
}

pub fn sum(r: &SumReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "product: {}", r.product);
    for f in &r.factors {
        let _ = writeln!(
            out,
            "factor {}: torus ratio {} vs {} ({}), omega at the product optimum {}",
            f.poly,
            rat_string(&f.torus_ratio),
            r.factor_threshold,
            tag(&f.torus_status),
            f.omega_at_product_optimum
        );
    }
    let at = if r.coordinates.is_identity() { String::new() } else { format!(" in frame {}", frame(&r.coordinates)) };
    let _ = writeln!(
        out,
        "product at lambda = ({}){at}: omega {}, ratio {} vs {} ({})",
        weights(&r.lambda),
        r.product_omega,
        rat_string(&r.product_ratio),
        r.product_threshold,
        tag(&r.product_status)
    );
    let _ = writeln!(out, "additivity: {}", if r.additive { "holds" } else { "FAILS" });
    let _ = writeln!(out, "factor bound: {}", if r.factors_bound_product { "holds" } else { "FAILS" });
    if let Some(a) = r.system_agrees {
        let _ = writeln!(out, "spanned system destabilized at the same subgroup: {}", if a { "yes" } else { "NO" });
    }
    out
}

pub fn selftest(r: &SelfTestReport) -> String {
    let mut out = String::new();
    for f in &r.fixtures {
        let _ = writeln!(
            out,
            "{} {}: {} (expected {})",
            if f.passed { "PASS" } else { "FAIL" },
            f.name,
            f.verdict,
            f.expected.as_deref().unwrap_or("-")
        );
    }
    for (name, s) in [("greedy vs oracle", &r.oracle), ("additivity", &r.additivity), ("random nets", &r.nets)] {
        let _ = writeln!(
            out,
            "{} {name}: {} cases, {} failures",
            if s.failures.is_empty() { "PASS" } else { "FAIL" },
            s.cases,
            s.failures.len()
        );
        for f in &s.failures {
            let _ = writeln!(out, "  {f}");
        }
    }
    let _ = writeln!(out, "selftest {}", if r.passed { "passed" } else { "FAILED" });
    out
}
