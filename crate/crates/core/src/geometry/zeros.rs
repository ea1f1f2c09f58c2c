//! Common zeros of ternary forms by elimination.
//!
//! After a random change of coordinates that moves the projection centre
//! `(1:0:0)` off every curve, the resultants in `x` vanish exactly over the
//! projections of the common zeros. Roots of their gcd are found within
//! ℚ and quadratic extensions; each root is lifted back by a univariate gcd
//! in `x`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::point::ProjPoint;
use super::{change_coordinates as change, random_frame, seeded_rng};
use crate::algebra::gcd::{gcd, gcd_many, squarefree_part};
use crate::algebra::roots::low_degree_roots;
use crate::algebra::{int, sylvester_resultant, Field, Poly, ProjChange, Quad, Rat, SparsePoly, UPoly};
use crate::error::{Error, Result};

/// Points found, and whether the list is known to be exhaustive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroScan {
    pub points: Vec<ProjPoint>,
    /// False when an elimination factor of degree ≥ 3 could not be split.
    pub complete: bool,
}

impl ZeroScan {
    fn empty() -> ZeroScan {
        ZeroScan { points: Vec::new(), complete: true }
    }
}

const ATTEMPTS: usize = 12;

/// Common zeros in ℙ² of forms in three variables.
///
/// Errors with [`Error::PositiveDimensional`] when the forms share a
/// nonconstant factor.
pub fn common_zeros(polys: &[SparsePoly]) -> Result<ZeroScan> {
    let polys: Vec<SparsePoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.is_empty() {
        return Err(Error::PositiveDimensional(0));
    }
    if let Some(p) = polys.iter().find(|p| p.nvars() != 3) {
        return Err(Error::DimensionMismatch { expected: 3, found: p.nvars() });
    }
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(ZeroScan::empty());
    }
    let common = gcd_many(&polys).expect("nonempty");
    let common_deg = common.total_degree().unwrap_or(0);
    if common_deg > 0 {
        return Err(Error::PositiveDimensional(common_deg));
    }
    let reduced: Vec<SparsePoly> = polys.iter().map(squarefree_part).collect();
    let same_degree = polys.iter().all(|p| p.total_degree() == polys[0].total_degree());
    let mut rng = seeded_rng(0x7a65_726f);
    for _ in 0..ATTEMPTS {
        let (u, others): (SparsePoly, Vec<SparsePoly>) = if reduced.len() == 2 {
            (reduced[0].clone(), vec![reduced[1].clone()])
        } else if same_degree {
            (squarefree_part(&random_combination(&polys, &mut rng)), reduced.clone())
        } else {
            (reduced[0].clone(), reduced[1..].to_vec())
        };
        let frame = random_frame(3, &mut rng);
        match zeros_in_frame(&u, &others, &frame)? {
            Some(mut scan) => {
                scan.points.retain(|p| polys.iter().all(|f| f.eval(p.coords()).is_zero()));
                return Ok(scan);
            }
            None => continue,
        }
    }
    Err(Error::Unsupported("no generic projection found for elimination".into()))
}

fn random_combination(polys: &[SparsePoly], rng: &mut ChaCha8Rng) -> SparsePoly {
    polys.iter().fold(SparsePoly::zero(3), |acc, p| {
        let c: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        &acc + &p.scale(&int(c))
    })
}

/// Coefficients in `x` of `p(x, y0, z0)`.
pub(crate) fn restrict_to_line(p: &SparsePoly, y0: &Quad, z0: &Quad) -> UPoly<Quad> {
    let deg = p.degree_in(0) as usize;
    let mut coeffs = vec![Quad::zero(); deg + 1];
    for (e, c) in p.terms() {
        let mut v = Quad::from_rat(c);
        for _ in 0..e[1] {
            v = v.mul(y0);
        }
        for _ in 0..e[2] {
            v = v.mul(z0);
        }
        coeffs[e[0] as usize] = coeffs[e[0] as usize].add(&v);
    }
    UPoly::new(coeffs)
}

/// Roots `(y:z)` of a binary form in the variables 1 and 2.
pub(crate) fn binary_form_roots(r: &SparsePoly) -> (Vec<(Quad, Quad)>, bool) {
    let zmult = r.terms().map(|(e, _)| e[2]).min().unwrap_or(0);
    let deg = r.total_degree().unwrap_or(0) as usize;
    let mut dehom = vec![Rat::zero(); deg + 1];
    for (e, c) in r.terms() {
        dehom[e[1] as usize] += c;
    }
    let scan = low_degree_roots(&UPoly::new(dehom));
    let mut roots: Vec<(Quad, Quad)> = scan.roots.into_iter().map(|(t, _)| (t, Quad::one())).collect();
    if zmult > 0 {
        roots.push((Quad::one(), Quad::zero()));
    }
    (roots, scan.complete)
}

/// `None` when the frame is not generic enough and another should be
/// tried.
fn zeros_in_frame(u: &SparsePoly, others: &[SparsePoly], frame: &ProjChange) -> Result<Option<ZeroScan>> {
    let centre = [Rat::from_integer(1.into()), Rat::zero(), Rat::zero()];
    let uu = change(u, frame);
    if uu.eval(&centre).is_zero() {
        return Ok(None);
    }
    let vv: Vec<SparsePoly> = others.iter().map(|p| change(p, frame)).collect();
    if vv.iter().any(|p| p.eval(&centre).is_zero()) {
        return Ok(None);
    }
    let du = uu.total_degree().unwrap_or(0);
    let mut res: Option<SparsePoly> = None;
    for v in &vv {
        let r = sylvester_resultant(&uu, du, v, v.total_degree().unwrap_or(0), 0)?;
        if r.is_zero() {
            continue;
        }
        res = Some(match res {
            None => r,
            Some(acc) => gcd(&acc, &r),
        });
    }
    let Some(r) = res else { return Ok(None) };
    if r.is_constant() {
        return Ok(Some(ZeroScan::empty()));
    }
    let (roots, complete) = binary_form_roots(&r);
    let mut points: Vec<ProjPoint> = Vec::new();
    for (y0, z0) in roots {
        let mut h = restrict_to_line(&uu, &y0, &z0);
        for v in &vv {
            h = h.gcd(&restrict_to_line(v, &y0, &z0));
        }
        // tangency makes the common root repeated
        let h = h.squarefree();
        match h.degree() {
            Some(0) | None => continue,
            Some(1) => {
                let c = h.coeffs();
                let x0 = c[0].neg().div(&c[1]);
                let p = frame.map_point(&[x0, y0, z0]);
                let p = ProjPoint::new(p)?;
                if !points.contains(&p) {
                    points.push(p);
                }
            }
            Some(_) => return Ok(None),
        }
    }
    Ok(Some(ZeroScan { points, complete }))
}

/// Base points of a linear system of plane curves.
pub fn base_points(sys: &crate::weights::LinearSystem) -> Result<ZeroScan> {
    if sys.num_vars() != 3 {
        return Err(Error::Unsupported("base points are computed for plane curves only".into()));
    }
    let gens: Vec<SparsePoly> = sys.generators().iter().map(|g| g.as_sparse().clone()).collect();
    common_zeros(&gens)
}

/// Singular points of a plane curve. A positive-dimensional singular
/// locus (a multiple component) is reported as an error.
pub fn singular_points(f: &Poly) -> Result<ZeroScan> {
    if f.num_vars() != 3 {
        return Err(Error::Unsupported("singular points are computed for plane curves only".into()));
    }
    let partials: Vec<SparsePoly> = (0..3).map(|i| f.derivative(i)).collect();
    common_zeros(&partials)
}

/// True when the curve is proven smooth.
pub fn is_smooth(f: &Poly) -> bool {
    matches!(singular_points(f), Ok(ZeroScan { ref points, complete: true }) if points.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::LinearSystem;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::rational(&c.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn net_with_one_base_point() {
        let net = LinearSystem::parse(&["x^2", "x*y", "y^2"], 3).unwrap();
        let scan = base_points(&net).unwrap();
        assert!(scan.complete);
        assert_eq!(scan.points, vec![pt(&[0, 0, 1])]);
    }

    #[test]
    fn pencil_of_conics_four_points() {
        // x z = y^2 and x^2 = y z meet at (0:0:1), (1:1:1) and the two
        // points with y = ω x, ω a primitive cube root of unity
        let p = LinearSystem::parse(&["x*z - y^2", "x^2 - y*z"], 3).unwrap();
        let scan = base_points(&p).unwrap();
        assert!(scan.complete);
        assert_eq!(scan.points.len(), 4);
        assert!(scan.points.contains(&pt(&[0, 0, 1])));
        assert!(scan.points.contains(&pt(&[1, 1, 1])));
        assert_eq!(scan.points.iter().filter(|p| !p.is_rational()).count(), 2);
    }

    #[test]
    fn positive_dimensional_and_empty() {
        let p = LinearSystem::parse(&["x^2*z", "y^2*z"], 3).unwrap();
        assert_eq!(base_points(&p), Err(Error::PositiveDimensional(1)));
        let free = LinearSystem::parse(&["x^2", "y^2", "z^2"], 3).unwrap();
        assert_eq!(base_points(&free).unwrap(), ZeroScan::empty());
    }

    #[test]
    fn singular_points_of_cubics() {
        let cusp = Poly::parse("y^2*z - x^3", 3).unwrap();
        assert_eq!(singular_points(&cusp).unwrap().points, vec![pt(&[0, 0, 1])]);
        let triangle = Poly::parse("x*y*z", 3).unwrap();
        assert_eq!(singular_points(&triangle).unwrap().points.len(), 3);
        assert!(is_smooth(&Poly::parse("x^3 + y^3 + z^3", 3).unwrap()));
        assert!(is_smooth(&Poly::parse("x^3 + 2*y^3 - 3*z^3 + x*y*z", 3).unwrap()));
        assert!(!is_smooth(&Poly::parse("x^2*y", 3).unwrap()));
    }
}
