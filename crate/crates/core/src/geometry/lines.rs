//! Rational linear factors of ternary forms.

use super::{change_coordinates, random_frame, seeded_rng};
use crate::algebra::roots::low_degree_roots;
use crate::algebra::{int, Field, Poly, Rat, SparsePoly, UPoly};

/// Roots `t` of `p(t, 1)` for a binary form given as a polynomial in the
/// variables `a` and `b` of a ternary form with the third one zero.
fn rational_slopes(p: &SparsePoly, a: usize, b: usize) -> Vec<Rat> {
    let deg = p.degree_in(a) as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (e, c) in p.terms() {
        if e.iter().enumerate().all(|(v, &k)| v == a || v == b || k == 0) {
            coeffs[e[a] as usize] += c;
        }
    }
    low_degree_roots(&UPoly::new(coeffs))
        .roots
        .into_iter()
        .filter(|(r, _)| r.is_rational())
        .map(|(r, _)| r.re)
        .collect()
}

/// Distinct linear factors of `f` defined over ℚ, each with its
/// multiplicity, normalized to a leading coefficient of 1.
///
/// In coordinates where `(1:0:0)` lies off the curve every linear factor
/// reads `x + b y + c z`; `x + b y` divides `f(x, y, 0)` and `x + c z`
/// divides `f(x, 0, z)`, so the candidates are finitely many and each is
/// tested by exact division.
pub fn linear_factors(f: &Poly) -> Vec<(Poly, u32)> {
    if f.num_vars() != 3 {
        return Vec::new();
    }
    let mut rng = seeded_rng(0x6c69_6e65);
    let centre = [Rat::one(), Rat::zero(), Rat::zero()];
    let (frame, g) = loop {
        let frame = random_frame(3, &mut rng);
        let g = change_coordinates(f.as_sparse(), &frame);
        if !g.eval(&centre).is_zero() {
            break (frame, g);
        }
    };
    let back = frame.inverse();
    // x + b y divides g(x, y, 0) iff t = −b is a root of g(t, 1, 0)
    let bs = rational_slopes(&g, 0, 1);
    let cs = rational_slopes(&g, 0, 2);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for b in &bs {
        for c in &cs {
            let line = SparsePoly::from_terms(
                3,
                [(vec![1, 0, 0], int(1)), (vec![0, 1, 0], -b.clone()), (vec![0, 0, 1], -c.clone())],
            );
            let mut rest = g.clone();
            let mut mult = 0;
            while let Some(q) = rest.div_exact(&line) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                let original = change_coordinates(&line, &back).monic();
                out.push((Poly::new(original).expect("linear form"), mult));
            }
        }
    }
    out.sort_by_key(|a| a.0.render());
    out
}
