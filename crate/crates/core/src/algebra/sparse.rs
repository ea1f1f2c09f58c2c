//! General sparse multivariate polynomials over ℚ.
//!
//! [`SparsePoly`] is the ring workhorse behind the homogeneous [`Poly`]
//! type: it admits the zero polynomial and inhomogeneous intermediates
//! (pseudo-remainders, dehomogenized charts, determinant entries).
//!
//! [`Poly`]: super::Poly

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::field::Field;
use super::Rat;

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn monomial(exps: Exponent, c: Rat) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Lexicographically greatest term (variable 0 most significant).
    pub fn leading_term(&self) -> Option<(&Exponent, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &[u32], c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut f = e.clone();
                f[var] -= 1;
                out.add_term(f, c * Rat::from_integer(BigInt::from(e[var])));
            }
        }
        out
    }

    pub fn eval<F: Field>(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = F::from_rat(c);
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `x_var = value`, keeping the variable count (the
    /// exponent of `var` becomes zero).
    pub fn specialize(&self, var: usize, value: &Rat) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[var];
            f[var] = 0;
            let mut v = c.clone();
            for _ in 0..k {
                v *= value;
            }
            out.add_term(f, v);
        }
        out
    }

    /// Replaces every variable `x_i` by the polynomial `images[i]`.
    pub fn compose(&self, images: &[SparsePoly]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<SparsePoly>> = images.iter().map(|p| vec![Self::one(p.nvars), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficients with respect to `var`: entry `i` is the coefficient of
    /// `x_var^i` (a polynomial not involving `x_var`).
    pub fn coeffs_in(&self, var: usize) -> Vec<SparsePoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[var] as usize;
            f[var] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (le, lc) = divisor.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&le).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exponent = re.iter().zip(&le).map(|(a, b)| a - b).collect();
            let c = rc / &lc;
            rem = &rem - &divisor.mul_monomial(&e, &c);
            quot.add_term(e, c);
        }
        Some(quot)
    }

    /// Content over ℚ: positive rational `c` such that `self / c` has
    /// coprime integer coefficients.
    pub fn rational_content(&self) -> Rat {
        let mut num = BigInt::from(0);
        let mut den = BigInt::from(1);
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num == BigInt::from(0) {
            return Rat::one();
        }
        Rat::new(num, den)
    }

    /// Scales to coprime integer coefficients with positive leading term.
    pub fn integer_primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.leading_term().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// True when `other` is a nonzero rational multiple of `self`.
    pub fn is_proportional(&self, other: &SparsePoly) -> bool {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return false;
        }
        self.monic() == other.monic()
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = SparsePoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn x(i: usize) -> SparsePoly {
        SparsePoly::var(3, i)
    }

    #[test]
    fn exact_division_round_trip() {
        let a = &(&x(0) + &x(1)) * &(&x(1) - &x(2).scale(&int(3)));
        let b = &x(0) + &x(1);
        assert_eq!(a.div_exact(&b).unwrap(), &x(1) - &x(2).scale(&int(3)));
        assert!(a.div_exact(&(&x(0) + &x(2))).is_none());
    }

    #[test]
    fn derivative_and_eval() {
        let f = &x(0).pow(3) + &(&x(1) * &x(2)).scale(&int(2));
        let fx = f.derivative(0);
        assert_eq!(fx, x(0).pow(2).scale(&int(3)));
        let v = f.eval(&[int(1), int(2), int(3)]);
        assert_eq!(v, int(13));
    }

    #[test]
    fn compose_with_linear_forms() {
        // (x + y)^2 with x -> y, y -> z gives (y + z)^2
        let f = (&x(0) + &x(1)).pow(2);
        let g = f.compose(&[x(1), x(2), x(0)]);
        assert_eq!(g, (&x(1) + &x(2)).pow(2));
    }

    #[test]
    fn coefficients_in_variable() {
        let f = &(&x(0).pow(2) * &x(1)) + &x(2).pow(3);
        let cs = f.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], x(1));
        assert!(cs[1].is_zero());
        assert_eq!(cs[0], x(2).pow(3));
    }
}
