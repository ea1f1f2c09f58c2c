//! Predicates on pencils of plane curves: smooth members, reduced members
//! and the singularities of members at base points.

use super::local::{gradient_at, hessian_at, is_node_at};
use super::point::ProjPoint;
use super::zeros::{base_points, common_zeros, is_smooth};
use super::TriState;
use crate::algebra::gcd::{gcd, gcd_many};
use crate::algebra::matrix::{self, Matrix};
use crate::algebra::is_squarefree;
use crate::algebra::{int, Field, Poly, Quad, SparsePoly, UPoly};
use crate::error::{Error, Result};
use crate::weights::LinearSystem;

/// True when `f` has no repeated factor.
pub fn is_reduced(f: &Poly) -> bool {
    is_squarefree(f)
}

fn pencil_generators(p: &LinearSystem) -> Result<(&Poly, &Poly)> {
    if p.k() != 1 {
        return Err(Error::Invalid(format!("expected a pencil, got a system of dimension {}", p.k())));
    }
    if p.num_vars() != 3 {
        return Err(Error::Unsupported("pencils of plane curves only".into()));
    }
    Ok((&p.generators()[0], &p.generators()[1]))
}

/// Members `f + t·g` for `t = 0, 1, −1, 2, −2, …, ±bound`, then `g`.
pub fn sample_members(p: &LinearSystem, bound: i64) -> Result<Vec<Poly>> {
    let (f, g) = pencil_generators(p)?;
    let mut out = vec![f.clone()];
    for t in 1..=bound {
        for s in [t, -t] {
            out.push(f.combine(&int(1), g, &int(s)).expect("independent generators"));
        }
    }
    out.push(g.clone());
    Ok(out)
}

pub const SAMPLE_BOUND: i64 = 4;

/// Whether some member of the pencil is smooth.
///
/// A sampled member proven smooth answers yes. Otherwise the general
/// member is smooth away from the base locus, and at a base point it is
/// singular exactly when both generators are: so the common zeros of all
/// six partial derivatives decide the question.
pub fn pencil_has_smooth_member(p: &LinearSystem) -> Result<TriState> {
    let (f, g) = pencil_generators(p)?;
    if gcd(f.as_sparse(), g.as_sparse()).total_degree().unwrap_or(0) > 0 {
        // every member is reducible
        return Ok(TriState::No);
    }
    if sample_members(p, SAMPLE_BOUND)?.iter().any(is_smooth) {
        return Ok(TriState::Yes);
    }
    let partials: Vec<SparsePoly> = (0..3).flat_map(|i| [f.derivative(i), g.derivative(i)]).collect();
    Ok(match common_zeros(&partials) {
        Ok(scan) if !scan.points.is_empty() => TriState::No,
        Ok(scan) if scan.complete => TriState::Yes,
        Ok(_) => TriState::Unknown,
        Err(Error::PositiveDimensional(_)) => TriState::No,
        Err(e) => return Err(e),
    })
}

/// Whether every member of the pencil is reduced.
///
/// Without a fixed component, a member is non-reduced along a curve `D`
/// exactly when the gradients of the generators are dependent along `D`,
/// i.e. when the 2×2 minors of the Jacobian matrix share the factor `D`.
pub fn members_reduced(p: &LinearSystem) -> Result<TriState> {
    let (f, g) = pencil_generators(p)?;
    let h = gcd(f.as_sparse(), g.as_sparse());
    if h.total_degree().unwrap_or(0) > 0 {
        return Ok(if crate::algebra::gcd::squarefree_part(&h).total_degree() != h.total_degree() {
            TriState::No
        } else {
            TriState::Unknown
        });
    }
    let df: Vec<SparsePoly> = (0..3).map(|i| f.derivative(i)).collect();
    let dg: Vec<SparsePoly> = (0..3).map(|i| g.derivative(i)).collect();
    let minors: Vec<SparsePoly> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]))
        .filter(|m| !m.is_zero())
        .collect();
    let Some(common) = gcd_many(&minors) else { return Ok(TriState::No) };
    Ok(TriState::from_bool(common.total_degree().unwrap_or(0) == 0))
}

/// Whether, at every base point, each member of the pencil is smooth or
/// has an ordinary node there.
pub fn base_point_singularities_nodal(p: &LinearSystem) -> Result<TriState> {
    let (f, g) = pencil_generators(p)?;
    let scan = match base_points(p) {
        Ok(s) => s,
        Err(Error::PositiveDimensional(_)) => return Ok(TriState::Unknown),
        Err(e) => return Err(e),
    };
    for q in &scan.points {
        if !nodal_at(f, g, q)? {
            return Ok(TriState::No);
        }
    }
    Ok(if scan.complete { TriState::Yes } else { TriState::Unknown })
}

fn nodal_at(f: &Poly, g: &Poly, q: &ProjPoint) -> Result<bool> {
    let gf = gradient_at(f, q)?;
    let gg = gradient_at(g, q)?;
    let zf = gf.iter().all(Quad::is_zero);
    let zg = gg.iter().all(Quad::is_zero);
    match (zf, zg) {
        (true, true) => {
            // every member is singular at q; each must have a rank-2 Hessian
            let (hf, hg) = (hessian_at(f, q)?, hessian_at(g, q)?);
            if matrix::rank(&hg) != 2 {
                return Ok(false);
            }
            Ok(pencil_hessian_rank_two(&hf, &hg))
        }
        (true, false) => is_node_at(f, q),
        (false, true) => is_node_at(g, q),
        (false, false) => {
            let dependent = matrix::rank(&vec![gf.clone(), gg.clone()]) < 2;
            if !dependent {
                return Ok(true);
            }
            // the single member f + t0·g with ∇f + t0·∇g = 0
            let i = (0..3).find(|&i| !gg[i].is_zero()).expect("nonzero gradient");
            let t0 = gf[i].neg().div(&gg[i]);
            let (hf, hg) = (hessian_at(f, q)?, hessian_at(g, q)?);
            let h: Matrix<Quad> =
                (0..3).map(|r| (0..3).map(|c| hf[r][c].add(&t0.mul(&hg[r][c]))).collect()).collect();
            Ok(matrix::rank(&h) == 2)
        }
    }
}

/// True when `hf + t·hg` has rank 2 for every finite `t`.
fn pencil_hessian_rank_two(hf: &Matrix<Quad>, hg: &Matrix<Quad>) -> bool {
    let entry = |r: usize, c: usize| UPoly::new(vec![hf[r][c].clone(), hg[r][c].clone()]);
    let mut common: Option<UPoly<Quad>> = None;
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            let m = entry(r1, c1).mul(&entry(r2, c2)).sub(&entry(r1, c2).mul(&entry(r2, c1)));
            if m.is_zero() {
                continue;
            }
            common = Some(match common {
                None => m,
                Some(acc) => acc.gcd(&m),
            });
        }
    }
    matches!(common, Some(c) if c.degree() == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pencil(f: &str, g: &str) -> LinearSystem {
        LinearSystem::parse(&[f, g], 3).unwrap()
    }

    #[test]
    fn reducedness() {
        assert!(!is_reduced(&Poly::parse("x^2*y", 3).unwrap()));
        assert!(is_reduced(&Poly::parse("x^3+y^3+z^3", 3).unwrap()));
        assert!(!is_reduced(&Poly::parse("(y^2+x*z)^2*y^5", 3).unwrap()));
    }

    #[test]
    fn smooth_members() {
        assert_eq!(pencil_has_smooth_member(&pencil("x^3", "y^3")).unwrap(), TriState::No);
        assert_eq!(pencil_has_smooth_member(&pencil("x^2*z", "y^2*z")).unwrap(), TriState::No);
        assert_eq!(pencil_has_smooth_member(&pencil("x^3+y^3+z^3", "x*y*z")).unwrap(), TriState::Yes);
        // every member is singular at (0:0:1), found through the partials
        assert_eq!(pencil_has_smooth_member(&pencil("x^2*z + y^3", "x*y*z + x^3")).unwrap(), TriState::No);
    }

    #[test]
    fn reduced_members() {
        assert_eq!(members_reduced(&pencil("x^3", "y^3")).unwrap(), TriState::No);
        assert_eq!(members_reduced(&pencil("x^3+y^3+z^3", "x*y*z")).unwrap(), TriState::Yes);
        assert_eq!(members_reduced(&pencil("x^3+y^3+z^3", "z^3")).unwrap(), TriState::No);
        assert_eq!(members_reduced(&pencil("x^2*z", "y^2*z")).unwrap(), TriState::Unknown);
        assert_eq!(members_reduced(&pencil("x^2*z^2", "y^2*z^2")).unwrap(), TriState::No);
        // x^2 + t y^2 splits into two lines for t ≠ 0 but is a double line at t = 0
        assert_eq!(members_reduced(&pencil("x^2", "y^2")).unwrap(), TriState::No);
        assert_eq!(members_reduced(&pencil("x^2 - y*z", "y^2 - x*z")).unwrap(), TriState::Yes);
    }

    #[test]
    fn nodes_at_base_points() {
        // transverse conics: all members smooth at the base points
        assert_eq!(base_point_singularities_nodal(&pencil("x*z - y^2", "x^2 - y*z")).unwrap(), TriState::Yes);
        // both generators nodal at (0:0:1), but the tangent cones x y + t (x^2 - y^2)
        // degenerate at t = ±i/2
        assert_eq!(base_point_singularities_nodal(&pencil("x*y*z + x^3", "(x^2 - y^2)*z + y^3")).unwrap(), TriState::No);
        // the triangle x y z has a node at the base point (0:0:1)
        assert_eq!(base_point_singularities_nodal(&pencil("x*y*z", "x^3 + y^3 + z^2*(x + 2*y)")).unwrap(), TriState::Yes);
        assert_eq!(base_point_singularities_nodal(&pencil("x^2*z + y^3", "x^3 + y^3 + z^2*(x + 2*y)")).unwrap(), TriState::No);
    }
}
