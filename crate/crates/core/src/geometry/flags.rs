//! Candidate flags (point ⊂ line) and the coordinate frames adapted to
//! them, used to look for destabilizing subgroups outside the given
//! coordinates.
//!
//! A subgroup diagonal in a frame `(p, q, r)` fixes the coordinate points
//! and the lines joining them; since every ordering of the weights is
//! tried, a frame built from a point `p`, a second point `q` on a line `ℓ`
//! through `p` and a point `r` off `ℓ` covers the flag `(p, ℓ)`.

use serde::Serialize;

use super::lines::linear_factors;
use super::local::{complement, cross, gradient_at, tangent_cone_lines};
use super::point::ProjPoint;
use super::zeros::{base_points, singular_points};
use crate::algebra::{int, matrix, squarefree_part, Field, Poly, ProjChange, Rat, SparsePoly};
use crate::error::Result;
use crate::polyhedra::{search_destabilizer, SearchVerdict};
use crate::weights::{omega_system_greedy, LinearSystem, OneParamSubgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagSource {
    BasePoint,
    SingularPoint,
    LineComponent,
    Manual,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlagCandidate {
    pub point: ProjPoint,
    /// A linear form vanishing at `point`.
    pub line: Option<Poly>,
    pub source: FlagSource,
}

impl FlagCandidate {
    pub fn new(point: ProjPoint, line: Option<Poly>, source: FlagSource) -> Result<FlagCandidate> {
        if let Some(l) = &line {
            if l.degree() != 1 || !l.eval(point.coords()).is_zero() {
                return Err(crate::error::Error::Invalid(format!("{point} does not lie on {l}")));
            }
        }
        Ok(FlagCandidate { point, line, source })
    }
}

/// Upper bound on the number of candidates returned.
pub const MAX_FLAGS: usize = 400;

/// Singular points are located only on reduced curves up to this degree;
/// elimination on higher-degree members dominates the running time.
pub const MAX_SINGULAR_DEGREE: u32 = 6;

const SAMPLE_WEIGHTS: [[i64; 3]; 3] = [[1, 0, -1], [2, -1, -1], [1, 1, -2]];

fn line_form(coeffs: &[Rat]) -> Option<Poly> {
    let s = SparsePoly::from_terms(
        3,
        coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; 3];
            e[i] = 1;
            (e, c.clone())
        }),
    );
    Poly::new(s.monic()).ok()
}

fn line_coeffs(l: &Poly) -> Vec<Rat> {
    (0..3)
        .map(|i| {
            let mut e = vec![0; 3];
            e[i] = 1;
            l.coeff(&e)
        })
        .collect()
}

/// Members of `L` worth inspecting: the generators and the greedy
/// witnesses at a few subgroups in every ordering of the coordinates.
fn special_members(sys: &LinearSystem) -> Result<Vec<Poly>> {
    let mut out: Vec<Poly> = sys.generators().to_vec();
    for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let frame = ProjChange::permutation(&order)?;
        let moved = sys.apply_change(&frame)?;
        let back = frame.inverse();
        for w in SAMPLE_WEIGHTS {
            let lambda = OneParamSubgroup::normalize(&w)?;
            let (_, witnesses) = omega_system_greedy(&moved, &lambda, None)?;
            for wit in witnesses {
                let original = crate::algebra::apply_change(&wit, &back)?;
                if !out.iter().any(|m| m.is_proportional(&original)) {
                    out.push(original);
                }
            }
        }
    }
    Ok(out)
}

/// Flags at the loci where destabilizing subgroups of plane linear systems
/// are centred: base points, singular points of special members, and line
/// components of non-reduced members, each paired with tangent lines,
/// tangent-cone lines, line components and joins to other special points.
pub fn enumerate_flags(sys: &LinearSystem) -> Result<Vec<FlagCandidate>> {
    if sys.num_vars() != 3 {
        return Ok(Vec::new());
    }
    let members = special_members(sys)?;
    let mut points: Vec<(Vec<Rat>, FlagSource)> = Vec::new();
    let add_point = |p: &ProjPoint, src: FlagSource, points: &mut Vec<(Vec<Rat>, FlagSource)>| {
        if let Some(r) = p.to_rational() {
            if !points.iter().any(|(q, _)| *q == r) {
                points.push((r, src));
            }
        }
    };
    if let Ok(scan) = base_points(sys) {
        for p in &scan.points {
            add_point(p, FlagSource::BasePoint, &mut points);
        }
    }
    let mut lines: Vec<Poly> = Vec::new();
    for m in &members {
        // the singular locus of a non-reduced member is a curve; use the
        // reduced curve and its lines instead
        let reduced = squarefree_part(m);
        if reduced.degree() <= MAX_SINGULAR_DEGREE {
            if let Ok(scan) = singular_points(&reduced) {
                for p in &scan.points {
                    add_point(p, FlagSource::SingularPoint, &mut points);
                }
            }
        }
        for (l, _) in linear_factors(m) {
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }

    let mut out: Vec<FlagCandidate> = Vec::new();
    let push = |c: FlagCandidate, out: &mut Vec<FlagCandidate>| {
        if out.len() < MAX_FLAGS && !out.contains(&c) {
            out.push(c);
        }
    };
    // line components with their special points, or two points spanning them
    for l in &lines {
        let on: Vec<&Vec<Rat>> = points.iter().map(|(p, _)| p).filter(|p| l.eval(p).is_zero()).collect();
        let spanning;
        let chosen: Vec<&Vec<Rat>> = if on.is_empty() {
            spanning = points_on_line(&line_coeffs(l));
            spanning.iter().collect()
        } else {
            on
        };
        for p in chosen {
            let pt = ProjPoint::rational(p)?;
            push(FlagCandidate::new(pt, Some(l.clone()), FlagSource::LineComponent)?, &mut out);
        }
    }
    for (i, (p, src)) in points.iter().enumerate() {
        let pt = ProjPoint::rational(p)?;
        push(FlagCandidate::new(pt.clone(), None, *src)?, &mut out);
        let mut through: Vec<Poly> = Vec::new();
        for m in &members {
            if !m.eval(p).is_zero() {
                continue;
            }
            let grad = gradient_at(m, &pt)?;
            if grad.iter().any(|g| !g.is_zero()) {
                through.extend(line_form(&grad.iter().map(|g| g.re.clone()).collect::<Vec<_>>()));
            } else {
                for c in tangent_cone_lines(m, &pt)? {
                    through.extend(line_form(&c));
                }
            }
        }
        through.extend(lines.iter().filter(|l| l.eval(p).is_zero()).cloned());
        for (j, (q, _)) in points.iter().enumerate() {
            if i != j {
                through.extend(line_form(&cross(p, q)));
            }
        }
        for l in through {
            push(FlagCandidate::new(pt.clone(), Some(l), *src)?, &mut out);
        }
    }
    Ok(out)
}

/// Two rational points spanning the line `a·x = 0`.
fn points_on_line(a: &[Rat]) -> Vec<Vec<Rat>> {
    let m: matrix::Matrix<Rat> = vec![a.to_vec()];
    matrix::kernel(&m)
}

/// Coordinate frames adapted to the candidates: columns `p`, a second
/// point of the line (when present) and a completing point.
pub fn flag_frames(flags: &[FlagCandidate]) -> Vec<ProjChange> {
    let mut out: Vec<ProjChange> = Vec::new();
    for c in flags {
        let Some(p) = c.point.to_rational() else { continue };
        let cols: Vec<Vec<Rat>> = match &c.line {
            None => std::iter::once(p.clone()).chain(complement(&p)).collect(),
            Some(l) => {
                let a = line_coeffs(l);
                let q = points_on_line(&a)
                    .into_iter()
                    .find(|q| matrix::rank(&vec![p.clone(), q.clone()]) == 2)
                    .expect("a line has two independent points");
                let r = (0..3)
                    .map(|i| (0..3).map(|j| if i == j { int(1) } else { int(0) }).collect::<Vec<Rat>>())
                    .find(|e| !a.iter().zip(e).fold(Rat::zero(), |s, (x, y)| s + x * y).is_zero())
                    .expect("some coordinate point is off the line");
                vec![p.clone(), q, r]
            }
        };
        if let Ok(frame) = ProjChange::from_columns(&cols) {
            if !out.contains(&frame) {
                out.push(frame);
            }
        }
    }
    out
}

/// Destabilizer search over the given frame and the frames adapted to
/// [`enumerate_flags`]; for systems not in the plane only the given frame
/// is searched.
pub fn search_with_flags(sys: &LinearSystem) -> Result<SearchVerdict> {
    let frames = flag_frames(&enumerate_flags(sys)?);
    search_destabilizer(sys, &frames)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::rational(&c.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn triple_line_flags() {
        let sys = LinearSystem::parse(&["x^3 + y^3 + z^3", "z^3"], 3).unwrap();
        let flags = enumerate_flags(&sys).unwrap();
        let z = Poly::parse("z", 3).unwrap();
        assert!(flags.iter().any(|f| f.line.as_ref() == Some(&z) && f.source == FlagSource::LineComponent));
        for f in &flags {
            if let Some(l) = &f.line {
                assert!(l.eval(f.point.coords()).is_zero());
            }
        }
        assert!(!flag_frames(&flags).is_empty());
    }

    #[test]
    fn base_point_free_net() {
        let free = LinearSystem::parse(&["x^2", "y^2", "z^2"], 3).unwrap();
        assert!(enumerate_flags(&free).unwrap().iter().all(|f| f.source != FlagSource::BasePoint));
        let net = LinearSystem::parse(&["x^2 + y^2", "x*z", "y*z"], 3).unwrap();
        let flags = enumerate_flags(&net).unwrap();
        assert!(flags.iter().any(|f| f.point == pt(&[0, 0, 1]) && f.source == FlagSource::BasePoint));
        // the pair of lines x z is singular at (0:1:0)
        assert!(flags.iter().any(|f| f.point == pt(&[0, 1, 0]) && f.source == FlagSource::SingularPoint));
    }

    #[test]
    fn frames_contain_the_point() {
        let flag = FlagCandidate::new(pt(&[1, 1, 0]), Some(Poly::parse("x - y", 3).unwrap()), FlagSource::Manual).unwrap();
        let frames = flag_frames(&[flag]);
        assert_eq!(frames.len(), 1);
        let m = frames[0].matrix();
        assert_eq!((m[0][0].clone(), m[1][0].clone(), m[2][0].clone()), (int(1), int(1), int(0)));
        assert!(FlagCandidate::new(pt(&[1, 0, 0]), Some(Poly::parse("x", 3).unwrap()), FlagSource::Manual).is_err());
    }
}
