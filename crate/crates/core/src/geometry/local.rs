//! Local invariants of plane curves at a point: multiplicity, tangent
//! data, node test and intersection multiplicity.

use super::point::ProjPoint;
use super::{change_coordinates, random_frame, seeded_rng};
use crate::algebra::gcd::gcd;
use crate::algebra::matrix::{self, Matrix};
use crate::algebra::{sylvester_resultant, Field, Poly, Quad, Rat, SparsePoly, UPoly};
use crate::error::{Error, Result};

fn check(f: &Poly, p: &ProjPoint) -> Result<()> {
    if f.num_vars() != p.dim() {
        return Err(Error::DimensionMismatch { expected: f.num_vars(), found: p.dim() });
    }
    Ok(())
}

/// All partial derivatives of order `m`, one per multi-index.
fn partials_of_order(f: &SparsePoly, m: u32) -> Vec<SparsePoly> {
    fn rec(g: &SparsePoly, from: usize, left: u32, out: &mut Vec<SparsePoly>) {
        if left == 0 {
            out.push(g.clone());
            return;
        }
        for v in from..g.nvars() {
            let d = g.derivative(v);
            if !d.is_zero() {
                rec(&d, v, left - 1, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(f, 0, m, &mut out);
    out
}

/// Order of vanishing of `f` at `p` (0 when `p` is off the curve).
pub fn multiplicity_at(f: &Poly, p: &ProjPoint) -> Result<u32> {
    check(f, p)?;
    for m in 0..=f.degree() {
        if partials_of_order(f.as_sparse(), m).iter().any(|g| !g.eval(p.coords()).is_zero()) {
            return Ok(m);
        }
    }
    unreachable!("some derivative of order deg f is a nonzero constant")
}

pub fn gradient_at(f: &Poly, p: &ProjPoint) -> Result<Vec<Quad>> {
    check(f, p)?;
    Ok((0..f.num_vars()).map(|i| f.derivative(i).eval(p.coords())).collect())
}

pub fn hessian_at(f: &Poly, p: &ProjPoint) -> Result<Matrix<Quad>> {
    check(f, p)?;
    let n = f.num_vars();
    Ok((0..n)
        .map(|i| {
            let fi = f.derivative(i);
            (0..n).map(|j| fi.derivative(j).eval(p.coords())).collect()
        })
        .collect())
}

/// True when `p` is an ordinary double point of the plane curve `f`: a
/// double point whose tangent cone has two distinct lines, i.e. whose
/// Hessian has rank 2.
pub fn is_node_at(f: &Poly, p: &ProjPoint) -> Result<bool> {
    Ok(multiplicity_at(f, p)? == 2 && matrix::rank(&hessian_at(f, p)?) == 2)
}

/// Intersection multiplicity of two plane curves at `p`.
///
/// After removing a common factor that misses `p`, the resultant in `x`
/// after a random change of coordinates vanishes along the line joining
/// `p` to the projection centre to an order equal to the sum of the
/// intersection multiplicities at the points on that line. The minimum over
/// several random frames is the multiplicity at `p` alone.
pub fn intersection_multiplicity_at(f: &Poly, g: &Poly, p: &ProjPoint) -> Result<u32> {
    check(f, p)?;
    check(g, p)?;
    if f.num_vars() != 3 {
        return Err(Error::Unsupported("intersection multiplicity is computed for plane curves only".into()));
    }
    let (mut a, mut b) = (f.as_sparse().clone(), g.as_sparse().clone());
    let h = gcd(&a, &b);
    if h.total_degree().unwrap_or(0) > 0 {
        if h.eval(p.coords()).is_zero() {
            return Err(Error::CommonComponent);
        }
        a = a.div_exact(&h).expect("gcd divides");
        b = b.div_exact(&h).expect("gcd divides");
    }
    if !a.eval(p.coords()).is_zero() || !b.eval(p.coords()).is_zero() {
        return Ok(0);
    }
    let centre = [Rat::one(), Rat::zero(), Rat::zero()];
    let mut rng = seeded_rng(0x696e_7473);
    let mut best: Option<u32> = None;
    let mut samples = 0;
    for _ in 0..24 {
        if samples == 3 {
            break;
        }
        let frame = random_frame(3, &mut rng);
        let (fa, fb) = (change_coordinates(&a, &frame), change_coordinates(&b, &frame));
        if fa.eval(&centre).is_zero() || fb.eval(&centre).is_zero() {
            continue;
        }
        let r = sylvester_resultant(&fa, fa.total_degree().unwrap(), &fb, fb.total_degree().unwrap(), 0)?;
        let q = frame.inverse().map_point(p.coords());
        let m = line_factor_multiplicity(&r, &q[1], &q[2]);
        best = Some(best.map_or(m, |b: u32| b.min(m)));
        samples += 1;
    }
    best.ok_or_else(|| Error::Unsupported("no generic projection found".into()))
}

/// Multiplicity of the linear factor `z0·y − y0·z` in a binary form.
fn line_factor_multiplicity(r: &SparsePoly, y0: &Quad, z0: &Quad) -> u32 {
    if z0.is_zero() {
        return r.terms().map(|(e, _)| e[2]).min().unwrap_or(0);
    }
    let deg = r.total_degree().unwrap_or(0) as usize;
    let mut dehom = vec![Quad::zero(); deg + 1];
    for (e, c) in r.terms() {
        dehom[e[1] as usize] = dehom[e[1] as usize].add(&Quad::from_rat(c));
    }
    let t0 = y0.div(z0);
    UPoly::new(dehom).root_multiplicity(&t0).unwrap_or(0) as u32
}

/// Rational lines of the tangent cone at a double point, as linear forms
/// `(a, b, c)`; the cone is read off the Hessian restricted to a
/// complementary plane.
pub fn tangent_cone_lines(f: &Poly, p: &ProjPoint) -> Result<Vec<Vec<Rat>>> {
    let Some(pr) = p.to_rational() else { return Ok(Vec::new()) };
    if multiplicity_at(f, p)? != 2 {
        return Ok(Vec::new());
    }
    let h: Vec<Vec<Rat>> = hessian_at(f, p)?.into_iter().map(|r| r.into_iter().map(|q| q.re).collect()).collect();
    // the tangent cone is the quadratic form v ↦ vᵀHv on lines through p;
    // restrict it to two points spanning a complement
    let basis = complement(&pr);
    let form = |u: &[Rat], v: &[Rat]| -> Rat {
        (0..3).map(|i| (0..3).map(|j| &u[i] * &h[i][j] * &v[j]).sum::<Rat>()).sum()
    };
    let (e1, e2) = (&basis[0], &basis[1]);
    // Q(s e1 + t e2) = A s² + 2B s t + C t²
    let a = form(e1, e1);
    let b = form(e1, e2);
    let c = form(e2, e2);
    let quad = UPoly::new(vec![c.clone(), &b * Rat::from_integer(2.into()), a.clone()]);
    let mut dirs: Vec<Vec<Rat>> = Vec::new();
    if a.is_zero() {
        // s = 1, t = 0 is a root
        dirs.push(e1.clone());
    }
    let scan = crate::algebra::roots::low_degree_roots(&quad);
    for (root, _) in scan.roots {
        if root.is_rational() {
            // root of A s² + 2B s + C in s with t = 1
            let s = root.re;
            dirs.push((0..3).map(|i| &s * &e1[i] + &e2[i]).collect());
        }
    }
    Ok(dirs.iter().map(|d| cross(&pr, d)).collect())
}

/// Two coordinate points completing `p` to a basis.
pub(crate) fn complement(p: &[Rat]) -> Vec<Vec<Rat>> {
    let unit = |i: usize| (0..3).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect::<Vec<_>>();
    let pivot = (0..3).find(|&i| !p[i].is_zero()).expect("nonzero point");
    (0..3).filter(|&i| i != pivot).map(unit).collect()
}

pub(crate) fn cross(u: &[Rat], v: &[Rat]) -> Vec<Rat> {
    vec![
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::rational(&c.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap()
    }

    fn poly(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity_at(&poly("x*y"), &pt(&[0, 0, 1])).unwrap(), 2);
        assert_eq!(multiplicity_at(&poly("y^2*z - x^3"), &pt(&[0, 0, 1])).unwrap(), 2);
        assert_eq!(multiplicity_at(&poly("y^2*z - x^3"), &pt(&[1, 0, 0])).unwrap(), 0);
        // (y^2 + x z)^2 y^5 at (1:0:0): y = 0 and the conic both pass
        let f = poly("(y^2+x*z)^2*y^5");
        assert_eq!(multiplicity_at(&f, &pt(&[1, 0, 0])).unwrap(), 7);
        assert_eq!(multiplicity_at(&f, &pt(&[0, 0, 1])).unwrap(), 7);
        assert_eq!(multiplicity_at(&f, &pt(&[0, 1, 0])).unwrap(), 0);
    }

    #[test]
    fn nodes() {
        assert!(is_node_at(&poly("x*y*z"), &pt(&[0, 0, 1])).unwrap());
        assert!(!is_node_at(&poly("y^2*z - x^3"), &pt(&[0, 0, 1])).unwrap());
        assert!(is_node_at(&poly("y^2*z - x^3 - x^2*z"), &pt(&[0, 0, 1])).unwrap());
    }

    #[test]
    fn intersections() {
        let o = pt(&[0, 0, 1]);
        assert_eq!(intersection_multiplicity_at(&poly("x"), &poly("y"), &o).unwrap(), 1);
        assert_eq!(intersection_multiplicity_at(&poly("y*z - x^2"), &poly("y"), &o).unwrap(), 2);
        // conic and cubic meeting to order five at (0:0:1)
        let c = poly("(y^2+x*z)*(y+z) + y*x^2");
        let q = poly("y^2+x*z");
        assert_eq!(intersection_multiplicity_at(&c, &q, &o).unwrap(), 5);
        assert_eq!(intersection_multiplicity_at(&q, &c, &o).unwrap(), 5);
        assert_eq!(intersection_multiplicity_at(&poly("x*z"), &poly("x*y"), &o), Err(Error::CommonComponent));
        assert_eq!(intersection_multiplicity_at(&poly("x*z"), &poly("x*y"), &pt(&[1, 0, 0])).unwrap(), 1);
        assert_eq!(intersection_multiplicity_at(&poly("x*z"), &poly("x*y"), &pt(&[1, 1, 1])).unwrap(), 0);
    }

    #[test]
    fn tangent_cone() {
        let lines = tangent_cone_lines(&poly("x^2*z - y^2*z + x^3"), &pt(&[0, 0, 1])).unwrap();
        assert_eq!(lines.len(), 2);
        for l in lines {
            // lines through the origin with slopes ±1
            assert!(l[2].is_zero());
            assert_eq!(l[0].clone() * &l[0], l[1].clone() * &l[1]);
        }
    }
}
