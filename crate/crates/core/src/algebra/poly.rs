use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::Field;
use super::matrix::{self, Matrix};
use super::parse::{parse_sparse, render};
use super::sparse::{Exponent, SparsePoly};
use super::{gcd, Rat};
use crate::error::{Error, Result};

/// A nonzero homogeneous polynomial with rational coefficients.
///
/// Terms are kept in lexicographic order of exponent tuples, so iteration
/// and rendering are deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    inner: SparsePoly,
    degree: u32,
}

impl Poly {
    pub fn new(p: SparsePoly) -> Result<Poly> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let degs: Vec<u32> = p.terms().map(|(e, _)| e.iter().sum::<u32>()).collect();
        let first = degs[0];
        if let Some(&other) = degs.iter().find(|&&d| d != first) {
            return Err(Error::Inhomogeneous(first, other));
        }
        Ok(Poly { inner: p, degree: first })
    }

    pub fn parse(text: &str, num_vars: usize) -> Result<Poly> {
        Poly::new(parse_sparse(text, num_vars)?)
    }

    pub fn monomial(exps: Exponent, c: Rat) -> Result<Poly> {
        Poly::new(SparsePoly::monomial(exps, c))
    }

    pub fn num_vars(&self) -> usize {
        self.inner.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rat)> {
        self.inner.terms()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.inner.terms().map(|(e, _)| e)
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.inner.coeff(e)
    }

    pub fn as_sparse(&self) -> &SparsePoly {
        &self.inner
    }

    pub fn into_sparse(self) -> SparsePoly {
        self.inner
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        Poly { inner: &self.inner * &other.inner, degree: self.degree + other.degree }
    }

    pub fn pow(&self, k: u32) -> Poly {
        Poly { inner: self.inner.pow(k), degree: self.degree * k }
    }

    pub fn scale(&self, c: &Rat) -> Option<Poly> {
        (!c.is_zero()).then(|| Poly { inner: self.inner.scale(c), degree: self.degree })
    }

    /// `a·self + b·other`; `None` when the combination vanishes.
    pub fn combine(&self, a: &Rat, other: &Poly, b: &Rat) -> Option<Poly> {
        assert_eq!(self.degree, other.degree, "combining forms of different degree");
        let s = &self.inner.scale(a) + &other.inner.scale(b);
        (!s.is_zero()).then_some(Poly { inner: s, degree: self.degree })
    }

    pub fn checked_sub(&self, other: &Poly) -> Option<Poly> {
        self.combine(&Rat::one(), other, &-Rat::one())
    }

    pub fn eval<F: Field>(&self, point: &[F]) -> F {
        self.inner.eval(point)
    }

    pub fn derivative(&self, var: usize) -> SparsePoly {
        self.inner.derivative(var)
    }

    /// Scales so the lexicographically greatest coefficient is one.
    pub fn monic(&self) -> Poly {
        Poly { inner: self.inner.monic(), degree: self.degree }
    }

    pub fn is_proportional(&self, other: &Poly) -> bool {
        self.inner.is_proportional(&other.inner)
    }

    pub fn render(&self) -> String {
        render(&self.inner)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Deserialization needs the variable count, so it is carried alongside
/// the text: `{"num_vars": 3, "poly": "x^2 - y*z"}`.
#[derive(Serialize, Deserialize)]
pub struct PolyText {
    pub num_vars: usize,
    pub poly: String,
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = PolyText::deserialize(d)?;
        Poly::parse(&t.poly, t.num_vars).map_err(serde::de::Error::custom)
    }
}

/// An invertible linear change of coordinates `x ↦ M x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjChange {
    matrix: Matrix<Rat>,
}

impl ProjChange {
    pub fn new(matrix: Matrix<Rat>) -> Result<ProjChange> {
        let n = matrix.len();
        if let Some(bad) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        if n == 0 || matrix::det(&matrix).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ProjChange { matrix })
    }

    pub fn identity(n: usize) -> ProjChange {
        ProjChange {
            matrix: (0..n)
                .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
                .collect(),
        }
    }

    /// Renaming frame: new variable `j` stands for old variable `order[j]`.
    pub fn permutation(order: &[usize]) -> Result<ProjChange> {
        let n = order.len();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (j, &old) in order.iter().enumerate() {
            if old >= n {
                return Err(Error::Invalid(format!("permutation entry {old} out of range")));
            }
            m[old][j] = Rat::one();
        }
        ProjChange::new(m).map_err(|_| Error::Invalid("not a permutation".into()))
    }

    /// Frame whose coordinate points `e_0, e_1, …` map to the given points.
    pub fn from_columns(cols: &[Vec<Rat>]) -> Result<ProjChange> {
        let n = cols.len();
        let m = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        ProjChange::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        *self == ProjChange::identity(self.dim())
    }

    /// Frame equivalent to applying `self` then `next`:
    /// `apply(apply(f, self), next) = apply(f, self.then(next))`.
    pub fn then(&self, next: &ProjChange) -> ProjChange {
        ProjChange { matrix: matrix::mat_mul(&self.matrix, &next.matrix) }
    }

    pub fn inverse(&self) -> ProjChange {
        ProjChange { matrix: matrix::inverse(&self.matrix).expect("frame is invertible") }
    }

    /// Image `M p` of a point given in the new coordinates.
    pub fn map_point<F: Field>(&self, p: &[F]) -> Vec<F> {
        let m: Matrix<F> = self.matrix.iter().map(|r| r.iter().map(F::from_rat).collect()).collect();
        matrix::mat_vec(&m, p)
    }
}

impl Serialize for ProjChange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.matrix.iter().map(|r| r.iter().map(super::field::rat_string).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjChange {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let m = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| super::field::parse_rat(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ProjChange::new(m).map_err(serde::de::Error::custom)
    }
}

pub fn parse_poly(text: &str, num_vars: usize) -> Result<Poly> {
    Poly::parse(text, num_vars)
}

/// Substitution `x ↦ g·x`, i.e. the polynomial `x ↦ f(g x)`.
pub fn apply_change(f: &Poly, g: &ProjChange) -> Result<Poly> {
    if f.num_vars() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: f.num_vars() });
    }
    let n = f.num_vars();
    let images: Vec<SparsePoly> = (0..n)
        .map(|i| SparsePoly::from_terms(n, (0..n).map(|j| (unit(n, j), g.matrix[i][j].clone()))))
        .collect();
    Poly::new(f.as_sparse().compose(&images))
}

fn unit(n: usize, j: usize) -> Exponent {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

/// Sylvester resultant eliminating `var`, using the total degrees as the
/// formal degrees in `var` and placing the rows of `f` first. `None` when
/// the resultant vanishes identically (common factor involving `var`).
pub fn resultant(f: &Poly, g: &Poly, var: usize) -> Result<Option<Poly>> {
    if f.num_vars() != g.num_vars() {
        return Err(Error::DimensionMismatch { expected: f.num_vars(), found: g.num_vars() });
    }
    if var >= f.num_vars() {
        return Err(Error::Invalid(format!("variable index {var} out of range")));
    }
    let r = sylvester_resultant(f.as_sparse(), f.degree(), g.as_sparse(), g.degree(), var)?;
    Ok(if r.is_zero() { None } else { Some(Poly::new(r)?) })
}

/// Resultant of two polynomials with explicitly given formal degrees in
/// `var`.
pub fn sylvester_resultant(f: &SparsePoly, m: u32, g: &SparsePoly, n: u32, var: usize) -> Result<SparsePoly> {
    let nvars = f.nvars();
    let (m, n) = (m as usize, n as usize);
    if m == 0 && n == 0 {
        return Ok(SparsePoly::one(nvars));
    }
    let mut fc = f.coeffs_in(var);
    fc.resize(m + 1, SparsePoly::zero(nvars));
    let mut gc = g.coeffs_in(var);
    gc.resize(n + 1, SparsePoly::zero(nvars));
    let size = m + n;
    let zero = SparsePoly::zero(nvars);
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for k in 0..=m {
            row[i + k] = fc[m - k].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for k in 0..=n {
            row[i + k] = gc[n - k].clone();
        }
        rows.push(row);
    }
    if size == 0 {
        return Ok(SparsePoly::one(nvars));
    }
    matrix::det_poly_matrix(&rows)
}

/// Product of the distinct irreducible factors of `f`, up to a scalar.
pub fn squarefree_part(f: &Poly) -> Poly {
    Poly::new(gcd::squarefree_part(f.as_sparse())).expect("square-free part of a nonzero form")
}

/// Reducedness: no repeated factor.
pub fn is_squarefree(f: &Poly) -> bool {
    squarefree_part(f).degree() == f.degree()
}

/// Determinant of a square matrix of polynomials.
pub fn det_poly_matrix(m: &[Vec<SparsePoly>]) -> Result<SparsePoly> {
    matrix::det_poly_matrix(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = p("x^2*y + 3*z^3");
        assert_eq!(f.degree(), 3);
        assert_eq!(f.terms().count(), 2);
        assert_eq!(Poly::parse("0", 3), Err(Error::ZeroPolynomial));
        assert_eq!(Poly::parse("x - x", 3), Err(Error::ZeroPolynomial));
        assert!(matches!(Poly::parse("x^2 + y", 3), Err(Error::Inhomogeneous(..))));
        let h = p("(y^2+x*z)^2 * y^5");
        assert_eq!(h.degree(), 9);
        assert_eq!(h.terms().count(), 3);
        assert_eq!(h.coeff(&[1, 7, 1]), Rat::from_integer(2.into()));
    }

    #[test]
    fn change_identity_and_swap() {
        let f = p("x^2");
        assert_eq!(apply_change(&f, &ProjChange::identity(3)).unwrap(), f);
        let swap = ProjChange::permutation(&[1, 0, 2]).unwrap();
        assert_eq!(apply_change(&f, &swap).unwrap(), p("y^2"));
        let bad = ProjChange::new(vec![vec![Rat::one(), Rat::one()], vec![Rat::one(), Rat::one()]]);
        assert_eq!(bad, Err(Error::SingularMatrix));
        assert!(apply_change(&p("x"), &ProjChange::identity(2)).is_err());
    }

    #[test]
    fn resultant_examples() {
        let r = resultant(&p("x - y"), &p("x + y"), 0).unwrap().unwrap();
        assert_eq!(r, p("2*y"));
        let r = resultant(&p("x^2"), &p("y^2"), 0).unwrap().unwrap();
        assert_eq!(r, p("y^4"));
        assert_eq!(resultant(&p("x*y"), &p("x*z"), 0).unwrap(), None);
    }
}
