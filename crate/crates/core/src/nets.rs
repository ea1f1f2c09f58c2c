//! Nets of conics: symmetric matrices, the discriminant cubic, Wall's
//! criterion and the direct criterion (no double line, no base point),
//! checked against each other and against the destabilizer search.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::field::rat_string;
use crate::algebra::gcd::squarefree_part;
use crate::algebra::matrix::{self, Matrix};
use crate::algebra::{det_poly_matrix, int, Field, Poly, Quad, Rat, SparsePoly};
use crate::error::{Error, Result};
use crate::geometry::local::cross;
use crate::geometry::{
    base_points, common_zeros, is_node_at, search_with_flags, seeded_rng, singular_points, ProjPoint, TriState,
    ZeroScan,
};
use crate::polyhedra::{torus_destabilizer, Certificate, SearchVerdict};
use crate::weights::LinearSystem;

/// A conic `xᵀ M x` with `M` symmetric; the off-diagonal entries are half
/// the cross coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SymConic {
    m: Matrix<Rat>,
}

impl Serialize for SymConic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        for row in &self.m {
            seq.serialize_element(&row.iter().map(rat_string).collect::<Vec<_>>())?;
        }
        seq.end()
    }
}

impl SymConic {
    pub fn from_poly(f: &Poly) -> Result<SymConic> {
        if f.num_vars() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: f.num_vars() });
        }
        if f.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, found: f.degree() });
        }
        let half = Rat::new(1.into(), 2.into());
        let mut m = vec![vec![Rat::zero(); 3]; 3];
        for (e, c) in f.terms() {
            let vars: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
            let (i, j) = (vars[0], vars[1]);
            if i == j {
                m[i][i] = c.clone();
            } else {
                m[i][j] = c * &half;
                m[j][i] = c * &half;
            }
        }
        Ok(SymConic { m })
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.m
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = SparsePoly::zero(3);
        for i in 0..3 {
            for j in 0..3 {
                let mut e = vec![0; 3];
                e[i] += 1;
                e[j] += 1;
                p.add_term(e, self.m[i][j].clone());
            }
        }
        Poly::new(p).expect("nonzero conic")
    }

    /// 3 for a smooth conic, 2 for a line pair, 1 for a double line.
    pub fn rank(&self) -> usize {
        matrix::rank(&self.m)
    }
}

pub fn conic_matrix(f: &Poly) -> Result<SymConic> {
    SymConic::from_poly(f)
}

/// Three linearly independent conics `f, g, h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetOfConics {
    generators: Vec<Poly>,
    matrices: Vec<SymConic>,
}

impl NetOfConics {
    pub fn new(f: Poly, g: Poly, h: Poly) -> Result<NetOfConics> {
        let matrices = [&f, &g, &h].iter().map(|p| SymConic::from_poly(p)).collect::<Result<Vec<_>>>()?;
        // independence is checked by the linear system
        let sys = LinearSystem::new(vec![f, g, h])?;
        Ok(NetOfConics { generators: sys.generators().to_vec(), matrices })
    }

    pub fn parse(texts: [&str; 3]) -> Result<NetOfConics> {
        let [f, g, h] = texts.map(|t| Poly::parse(t, 3));
        NetOfConics::new(f?, g?, h?)
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn matrices(&self) -> &[SymConic] {
        &self.matrices
    }

    /// The net as a linear system with `k = 2`.
    pub fn system(&self) -> LinearSystem {
        LinearSystem::new(self.generators.clone()).expect("checked on construction")
    }

    /// `λ A_f + μ A_g + ν A_h` with entries linear forms in `(λ, μ, ν)`.
    fn generic_matrix(&self) -> Vec<Vec<SparsePoly>> {
        (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        SparsePoly::from_terms(
                            3,
                            (0..3).map(|v| {
                                let mut e = vec![0; 3];
                                e[v] = 1;
                                (e, self.matrices[v].m[i][j].clone())
                            }),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// Member `λ f + μ g + ν h` for a point `(λ : μ : ν)`.
    pub fn member(&self, coeffs: &[Rat]) -> Option<Poly> {
        let s = self
            .generators
            .iter()
            .zip(coeffs)
            .fold(SparsePoly::zero(3), |acc, (g, c)| &acc + &g.as_sparse().scale(c));
        Poly::new(s).ok()
    }
}

/// `det(λ A_f + μ A_g + ν A_h)`; `None` when it vanishes identically.
pub fn discriminant_cubic(net: &NetOfConics) -> Option<Poly> {
    let d = det_poly_matrix(&net.generic_matrix()).expect("square matrix");
    Poly::new(d).ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "reason", rename_all = "snake_case")]
pub enum CubicClass {
    Smooth,
    NodalOnly,
    WorseThanNodal,
    IdenticallyZero,
    Undetermined(String),
}

impl CubicClass {
    pub fn is_determined(&self) -> bool {
        !matches!(self, CubicClass::Undetermined(_))
    }
}

/// Singularity class of a plane cubic; `None` stands for the zero form.
pub fn classify_cubic(delta: Option<&Poly>) -> Result<CubicClass> {
    let Some(delta) = delta else { return Ok(CubicClass::IdenticallyZero) };
    if delta.num_vars() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: delta.num_vars() });
    }
    if delta.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, found: delta.degree() });
    }
    // a repeated component is a curve of singular points
    if squarefree_part(delta.as_sparse()).total_degree() != Some(3) {
        return Ok(CubicClass::WorseThanNodal);
    }
    let scan = singular_points(delta)?;
    for p in &scan.points {
        if !is_node_at(delta, p)? {
            return Ok(CubicClass::WorseThanNodal);
        }
    }
    Ok(match (scan.complete, scan.points.is_empty()) {
        (true, true) => CubicClass::Smooth,
        (true, false) => CubicClass::NodalOnly,
        (false, _) => CubicClass::Undetermined("singular locus not split over quadratic fields".into()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectVerdict {
    Stable,
    NotStable,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectReport {
    pub verdict: DirectVerdict,
    pub double_line: TriState,
    /// Coefficients `(λ : μ : ν)` of double lines found in the net.
    pub double_lines: Vec<ProjPoint>,
    pub has_base_point: TriState,
    pub base_points: Vec<ProjPoint>,
}

/// Stable exactly when the net contains no double line and has no base
/// point.
pub fn direct_verdict(net: &NetOfConics) -> Result<DirectReport> {
    // double lines are the members of rank ≤ 1: common zeros of the 2×2
    // minors of the generic matrix
    let m = net.generic_matrix();
    let mut minors = Vec::new();
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            minors.push(&(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]));
        }
    }
    let (double_line, double_lines) = match common_zeros(&minors) {
        Ok(ZeroScan { points, complete }) => {
            let state = if !points.is_empty() {
                TriState::Yes
            } else if complete {
                TriState::No
            } else {
                TriState::Unknown
            };
            (state, points)
        }
        Err(Error::PositiveDimensional(_)) => (TriState::Yes, Vec::new()),
        Err(e) => return Err(e),
    };
    let (has_base_point, base) = match base_points(&net.system()) {
        Ok(ZeroScan { points, complete }) => {
            let state = if !points.is_empty() {
                TriState::Yes
            } else if complete {
                TriState::No
            } else {
                TriState::Unknown
            };
            (state, points)
        }
        Err(Error::PositiveDimensional(_)) => (TriState::Yes, Vec::new()),
        Err(e) => return Err(e),
    };
    let verdict = match (double_line, has_base_point) {
        (TriState::Yes, _) | (_, TriState::Yes) => DirectVerdict::NotStable,
        (TriState::No, TriState::No) => DirectVerdict::Stable,
        _ => DirectVerdict::Undetermined,
    };
    Ok(DirectReport { verdict, double_line, double_lines, has_base_point, base_points: base })
}

/// Coefficients `(λ : μ : ν)` of a member singular at the base point `p`:
/// a kernel vector of the transposed gradient matrix at `p`.
pub fn singular_member_at(net: &NetOfConics, p: &ProjPoint) -> Result<Option<Vec<Quad>>> {
    if net.generators.iter().any(|g| !g.eval(p.coords()).is_zero()) {
        return Ok(None);
    }
    // column v holds the gradient of generator v
    let a: Matrix<Quad> = (0..3)
        .map(|i| net.generators.iter().map(|g| g.derivative(i).eval(p.coords())).collect())
        .collect();
    Ok(matrix::kernel(&a).into_iter().next())
}

/// Stability predicted by Wall's theorem from the discriminant class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallExpectation {
    Stable,
    StrictlySemistable,
    Unstable,
    Unknown,
}

impl WallExpectation {
    fn from_class(c: &CubicClass) -> WallExpectation {
        match c {
            CubicClass::Smooth => WallExpectation::Stable,
            CubicClass::NodalOnly => WallExpectation::StrictlySemistable,
            CubicClass::WorseThanNodal | CubicClass::IdenticallyZero => WallExpectation::Unstable,
            CubicClass::Undetermined(_) => WallExpectation::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallReport {
    pub net: NetOfConics,
    pub discriminant: Option<Poly>,
    pub cubic_class: CubicClass,
    pub expectation: WallExpectation,
    pub direct: DirectReport,
    /// Destabilizer of the diagonal torus in the given coordinates.
    pub torus_certificate: Option<Certificate>,
    pub search: SearchVerdict,
    pub mismatches: Vec<String>,
}

impl WallReport {
    pub fn consistent(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Both the discriminant class and the direct criterion are determinate.
    pub fn determinate(&self) -> bool {
        self.cubic_class.is_determined() && self.direct.verdict != DirectVerdict::Undetermined
    }
}

/// Runs both criteria and the destabilizer search and lists every
/// disagreement among the determinate answers.
pub fn wall_cross_check(net: &NetOfConics) -> Result<WallReport> {
    let discriminant = discriminant_cubic(net);
    let cubic_class = classify_cubic(discriminant.as_ref())?;
    let expectation = WallExpectation::from_class(&cubic_class);
    let direct = direct_verdict(net)?;
    let sys = net.system();
    let torus_certificate = torus_destabilizer(&sys)?;
    let search = search_with_flags(&sys)?;
    let mut mismatches = Vec::new();
    match (expectation, direct.verdict) {
        (WallExpectation::Stable, DirectVerdict::NotStable) => {
            mismatches.push("smooth discriminant but the net has a double line or a base point".into())
        }
        (WallExpectation::StrictlySemistable | WallExpectation::Unstable, DirectVerdict::Stable) => {
            mismatches.push("singular discriminant but no double line and no base point".into())
        }
        _ => {}
    }
    match (&search, expectation) {
        (SearchVerdict::Unstable { .. }, WallExpectation::Stable | WallExpectation::StrictlySemistable) => {
            mismatches.push("strict destabilizer found for a nodal or smooth discriminant".into())
        }
        (SearchVerdict::NonStable { .. }, WallExpectation::Stable) => {
            mismatches.push("destabilizer found for a smooth discriminant".into())
        }
        _ => {}
    }
    if search.is_destabilized() && direct.verdict == DirectVerdict::Stable {
        mismatches.push("destabilizer found for a net without double line or base point".into());
    }
    Ok(WallReport {
        net: net.clone(),
        discriminant,
        cubic_class,
        expectation,
        direct,
        torus_certificate,
        search,
        mismatches,
    })
}

/// Kinds of random nets produced by [`random_net`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetFamily {
    /// Three random conics.
    Generic,
    /// All members pass through a random rational point.
    BasePoint,
    /// One generator is the square of a random line.
    DoubleLine,
    /// One generator is a pair of random lines.
    LinePair,
    /// Two generators are line pairs meeting at a common base point.
    SingularBasePoint,
}

const FAMILIES: [NetFamily; 5] = [
    NetFamily::Generic,
    NetFamily::BasePoint,
    NetFamily::DoubleLine,
    NetFamily::LinePair,
    NetFamily::SingularBasePoint,
];

fn random_form(rng: &mut ChaCha8Rng, monomials: &[[u32; 3]]) -> SparsePoly {
    SparsePoly::from_terms(3, monomials.iter().map(|e| (e.to_vec(), int(rng.gen_range(-5..=5)))))
}

const CONIC_MONOMIALS: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
const LINEAR_MONOMIALS: [[u32; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// A reproducible random net with integer coefficients in `[−5, 5]`; the
/// family cycles with the seed.
pub fn random_net(seed: u64) -> (NetFamily, NetOfConics) {
    let family = FAMILIES[(seed % FAMILIES.len() as u64) as usize];
    let mut rng = seeded_rng(seed ^ 0x6e65_7473);
    loop {
        let mut gens: Vec<SparsePoly> = (0..3).map(|_| random_form(&mut rng, &CONIC_MONOMIALS)).collect();
        match family {
            NetFamily::Generic => {}
            NetFamily::BasePoint | NetFamily::SingularBasePoint => {
                let p: Vec<Rat> = (0..3).map(|_| int(rng.gen_range(-3..=3))).collect();
                let Some(pivot) = (0..3).find(|&i| !p[i].is_zero()) else { continue };
                if family == NetFamily::SingularBasePoint {
                    let line_through_p = |rng: &mut ChaCha8Rng| {
                        let q: Vec<Rat> = (0..3).map(|_| int(rng.gen_range(-3..=3))).collect();
                        SparsePoly::from_terms(3, LINEAR_MONOMIALS.iter().zip(cross(&p, &q)).map(|(e, c)| (e.to_vec(), c)))
                    };
                    for g in gens.iter_mut().take(2) {
                        let (l1, l2) = (line_through_p(&mut rng), line_through_p(&mut rng));
                        *g = &l1 * &l2;
                    }
                }
                // subtract the value at p times a square not vanishing at p
                let mut e = vec![0; 3];
                e[pivot] = 2;
                let scale = &p[pivot] * &p[pivot];
                for g in gens.iter_mut() {
                    let v = g.eval(&p);
                    *g = &*g - &SparsePoly::monomial(e.clone(), &v / &scale);
                }
            }
            NetFamily::DoubleLine => {
                let l = random_form(&mut rng, &LINEAR_MONOMIALS);
                gens[0] = &l * &l;
            }
            NetFamily::LinePair => {
                let (l1, l2) = (random_form(&mut rng, &LINEAR_MONOMIALS), random_form(&mut rng, &LINEAR_MONOMIALS));
                gens[0] = &l1 * &l2;
            }
        }
        let Some(polys) = gens.into_iter().map(|g| Poly::new(g).ok()).collect::<Option<Vec<Poly>>>() else {
            continue;
        };
        let [f, g, h]: [Poly; 3] = polys.try_into().expect("three conics");
        if let Ok(net) = NetOfConics::new(f, g, h) {
            return (family, net);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rat {
        Rat::new(p.into(), d.into())
    }

    fn cubic(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn conic_matrices() {
        let m = conic_matrix(&cubic("x0*x1")).unwrap();
        assert_eq!(m.matrix()[0][1], q(1, 2));
        assert_eq!(m.matrix()[1][0], q(1, 2));
        assert_eq!(m.rank(), 2);
        assert_eq!(conic_matrix(&cubic("x2^2")).unwrap().matrix()[2][2], q(1, 1));
        let c = conic_matrix(&cubic("x0^2 + x1*x2")).unwrap();
        assert_eq!((c.matrix()[0][0].clone(), c.matrix()[1][2].clone()), (q(1, 1), q(1, 2)));
        assert_eq!(c.to_poly(), cubic("x0^2 + x1*x2"));
        assert!(conic_matrix(&cubic("x^3")).is_err());
    }

    #[test]
    fn discriminants() {
        let diag = NetOfConics::parse(["x0^2", "x1^2", "x2^2"]).unwrap();
        assert_eq!(discriminant_cubic(&diag), Some(cubic("x*y*z")));
        // hand expansion of det [[ν, λ/2, 0], [λ/2, 0, ν/2], [0, ν/2, μ]]
        let row = NetOfConics::parse(["x0*x1", "x2^2", "x0^2 + x1*x2"]).unwrap();
        assert_eq!(discriminant_cubic(&row), Some(cubic("-1/4*z^3 - 1/4*x^2*y")));
        let zero = NetOfConics::parse(["x0^2", "x0*x1", "x0*x2"]).unwrap();
        assert_eq!(discriminant_cubic(&zero), None);
    }

    #[test]
    fn cubic_classes() {
        assert_eq!(classify_cubic(Some(&cubic("x^3+y^3+z^3"))).unwrap(), CubicClass::Smooth);
        assert_eq!(classify_cubic(Some(&cubic("x*y*z"))).unwrap(), CubicClass::NodalOnly);
        assert_eq!(classify_cubic(Some(&cubic("z^3"))).unwrap(), CubicClass::WorseThanNodal);
        assert_eq!(classify_cubic(Some(&cubic("y^2*z - x^3"))).unwrap(), CubicClass::WorseThanNodal);
        assert_eq!(classify_cubic(Some(&cubic("y^2*z - x^3 - x^2*z"))).unwrap(), CubicClass::NodalOnly);
        // conic with a tangent line: a tacnode
        assert_eq!(classify_cubic(Some(&cubic("z*(z*x + y^2)"))).unwrap(), CubicClass::WorseThanNodal);
        assert_eq!(classify_cubic(None).unwrap(), CubicClass::IdenticallyZero);
        assert!(classify_cubic(Some(&cubic("x^2"))).is_err());
    }

    #[test]
    fn direct_criterion() {
        let diag = NetOfConics::parse(["x0^2", "x1^2", "x2^2"]).unwrap();
        let r = direct_verdict(&diag).unwrap();
        assert_eq!(r.verdict, DirectVerdict::NotStable);
        assert_eq!(r.double_line, TriState::Yes);
        assert_eq!(r.has_base_point, TriState::No);
        let generic = NetOfConics::parse(["x^2 + y*z", "y^2 + x*z + 2*x*y", "z^2 - x*y + 3*y*z"]).unwrap();
        let r = wall_cross_check(&generic).unwrap();
        assert!(r.consistent(), "{:?}", r.mismatches);
    }

    #[test]
    fn singular_member_through_base_point() {
        let net = NetOfConics::parse(["x^2 + y^2", "x*z", "y*z"]).unwrap();
        let p = ProjPoint::parse("0,0,1").unwrap();
        let c = singular_member_at(&net, &p).unwrap().unwrap();
        let coeffs: Vec<Rat> = c.iter().map(|q| q.re.clone()).collect();
        let member = net.member(&coeffs).unwrap();
        for i in 0..3 {
            assert!(member.derivative(i).eval(p.coords()).is_zero());
        }
    }

    #[test]
    fn random_nets_are_reproducible() {
        assert_eq!(random_net(7), random_net(7));
        let (fam, net) = random_net(2);
        assert_eq!(fam, NetFamily::DoubleLine);
        assert_eq!(net.matrices()[0].rank(), 1);
    }
}
