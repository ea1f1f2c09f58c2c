//! Roots of univariate rational polynomials that lie in ℚ or in a
//! quadratic extension of ℚ.
//!
//! Candidate factors come from floating-point root approximations
//! (Aberth–Ehrlich iteration); every candidate is then verified by exact
//! division, so a reported root is always exact. Whatever cannot be split
//! into linear and quadratic factors is reported through
//! [`RootScan::complete`] = `false`.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use super::field::{rat_sqrt_parts, rat_to_f64, Field, Quad};
use super::upoly::UPoly;
use super::Rat;

#[derive(Clone, Debug)]
pub struct RootScan {
    /// Distinct roots with their multiplicities in the input.
    pub roots: Vec<(Quad, usize)>,
    /// False when a factor of degree ≥ 3 without linear or quadratic
    /// factors remains (or could not be split numerically).
    pub complete: bool,
}

pub fn low_degree_roots(p: &UPoly<Rat>) -> RootScan {
    match p.degree() {
        None | Some(0) => return RootScan { roots: Vec::new(), complete: true },
        _ => {}
    }
    let mut rest = p.squarefree();
    let mut found: Vec<Quad> = Vec::new();
    loop {
        let deg = rest.degree().unwrap_or(0);
        if deg == 0 {
            break;
        }
        if deg <= 2 {
            found.extend(exact_small_roots(&rest));
            rest = UPoly::constant(Rat::from_integer(1.into()));
            break;
        }
        match split_one_factor(&rest) {
            Some((factor, quotient)) => {
                found.extend(exact_small_roots(&factor));
                rest = quotient;
            }
            None => break,
        }
    }
    let complete = rest.degree().unwrap_or(0) == 0;
    let pq: UPoly<Quad> = UPoly::new(p.coeffs().iter().map(Quad::from_rat).collect());
    let roots = found
        .into_iter()
        .map(|r| {
            let m = pq.root_multiplicity(&r).unwrap_or(0);
            (r, m)
        })
        .collect();
    RootScan { roots, complete }
}

/// Roots of a polynomial of degree 1 or 2, exactly.
fn exact_small_roots(p: &UPoly<Rat>) -> Vec<Quad> {
    let c = p.coeffs();
    match c.len() {
        2 => vec![Quad::rational(-&c[0] / &c[1])],
        3 => {
            let (a, b, cc) = (&c[2], &c[1], &c[0]);
            let disc = b * b - Rat::from_integer(4.into()) * a * cc;
            let two_a = a * Rat::from_integer(2.into());
            let re = -b / &two_a;
            if disc.is_zero() {
                return vec![Quad::rational(re)];
            }
            let (s, t) = rat_sqrt_parts(&disc);
            let im = s / &two_a;
            if t == 1.into() {
                vec![Quad::rational(&re + &im), Quad::rational(&re - &im)]
            } else {
                vec![Quad::new(re.clone(), im.clone(), t.clone()), Quad::new(re, -im, t)]
            }
        }
        _ => Vec::new(),
    }
}

/// Finds one verified rational factor of degree 1 or 2.
fn split_one_factor(p: &UPoly<Rat>) -> Option<(UPoly<Rat>, UPoly<Rat>)> {
    let approx = aberth(p)?;
    let lead = lead_scale(p);
    let try_factor = |f: UPoly<Rat>| -> Option<(UPoly<Rat>, UPoly<Rat>)> {
        let (q, r) = p.div_rem(&f);
        r.is_zero().then_some((f, q))
    };
    for z in &approx {
        if z.im.abs() > 1e-6 * (1.0 + z.norm()) {
            continue;
        }
        for c in rational_candidates(z.re, lead) {
            if p.eval(&c).is_zero() {
                return try_factor(UPoly::linear(&c));
            }
        }
    }
    for i in 0..approx.len() {
        for j in i + 1..approx.len() {
            let s = approx[i] + approx[j];
            let pr = approx[i] * approx[j];
            let tol = 1e-6 * (1.0 + s.norm() + pr.norm());
            if s.im.abs() > tol || pr.im.abs() > tol {
                continue;
            }
            for cs in rational_candidates(s.re, lead) {
                for cp in rational_candidates(pr.re, lead) {
                    let f = UPoly::new(vec![cp.clone(), -cs.clone(), Rat::from_integer(1.into())]);
                    if let Some(ok) = try_factor(f) {
                        return Some(ok);
                    }
                }
            }
        }
    }
    None
}

/// Leading coefficient of the integer-primitive form, when it fits a float.
fn lead_scale(p: &UPoly<Rat>) -> Option<f64> {
    let den = super::field::denominators_lcm(p.coeffs());
    let lead = (p.leading()? * Rat::from_integer(den)).abs();
    lead.to_f64().filter(|l| *l < 1e12)
}

fn rational_candidates(x: f64, lead: Option<f64>) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::new();
    if !x.is_finite() {
        return out;
    }
    // by Gauss's lemma the denominator divides the leading coefficient
    if let Some(l) = lead.filter(|l| *l < 1e9) {
        let n = (x * l).round();
        if n.abs() < 9e15 {
            out.push(Rat::new((n as i64).into(), (l as i64).max(1).into()));
        }
        return out;
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai.checked_mul(h1).and_then(|t| t.checked_add(h0));
        let k2 = ai.checked_mul(k1).and_then(|t| t.checked_add(k0));
        let (Some(h2), Some(k2)) = (h2, k2) else { break };
        if k2 > 1_000_000_000_000 {
            break;
        }
        // only convergents that already match the approximation
        let close = ((h2 as f64) / (k2 as f64) - x).abs() <= 1e-7 * (1.0 + x.abs());
        let cand = Rat::new(h2.into(), k2.into());
        if close && !out.contains(&cand) {
            out.push(cand);
            if out.len() == 3 {
                break;
            }
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    out
}

/// Simultaneous approximation of all complex roots.
fn aberth(p: &UPoly<Rat>) -> Option<Vec<Complex64>> {
    let deg = p.degree()?;
    let lead = rat_to_f64(p.leading()?);
    let cs: Vec<f64> = p.coeffs().iter().map(|c| rat_to_f64(c) / lead).collect();
    if cs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let dcs: Vec<f64> = cs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    let eval = |c: &[f64], z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let radius = 1.0 + cs[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let f = eval(&cs, z[i]);
            let df = eval(&dcs, z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        sum += 1.0 / d;
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UPoly<Rat> {
        UPoly::new(cs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    #[test]
    fn rational_and_quadratic_roots() {
        // (2x - 3)(x^2 - 2)(x + 1)^2 = ...
        let f = p(&[-3, 2]).mul(&p(&[-2, 0, 1])).mul(&p(&[1, 1])).mul(&p(&[1, 1]));
        let scan = low_degree_roots(&f);
        assert!(scan.complete);
        assert_eq!(scan.roots.len(), 4);
        let minus_one = scan.roots.iter().find(|(r, _)| *r == Quad::rational(Rat::from_integer((-1).into()))).unwrap();
        assert_eq!(minus_one.1, 2);
        assert!(scan.roots.iter().any(|(r, _)| *r == Quad::rational(Rat::new(3.into(), 2.into()))));
        assert_eq!(scan.roots.iter().filter(|(r, _)| !r.is_rational()).count(), 2);
    }

    #[test]
    fn imaginary_pair() {
        // (x^2 + 1)(x^2 + x + 1)(x - 5)
        let f = p(&[1, 0, 1]).mul(&p(&[1, 1, 1])).mul(&p(&[-5, 1]));
        let scan = low_degree_roots(&f);
        assert!(scan.complete);
        assert_eq!(scan.roots.len(), 5);
        for (r, _) in &scan.roots {
            let fq: UPoly<Quad> = UPoly::new(f.coeffs().iter().map(Quad::from_rat).collect());
            assert!(fq.eval(r).is_zero());
        }
    }

    #[test]
    fn irreducible_cubic_is_incomplete() {
        // x^3 - 2 has no rational or quadratic factor
        let f = p(&[-2, 0, 0, 1]).mul(&p(&[-1, 1]));
        let scan = low_degree_roots(&f);
        assert!(!scan.complete);
        assert_eq!(scan.roots.len(), 1);
    }
}
