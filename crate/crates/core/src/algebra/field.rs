use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;

/// Minimal field interface shared by the rationals and quadratic extensions.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// An element `re + im·√disc` of a quadratic extension of ℚ.
///
/// Elements with `im == 0` are plain rationals and combine with elements of
/// any extension; combining two irrational elements of different extensions
/// is a logic error and panics.
#[derive(Clone, Debug)]
pub struct Quad {
    pub re: Rat,
    pub im: Rat,
    pub disc: BigInt,
}

impl Quad {
    pub fn rational(re: Rat) -> Self {
        Quad { re, im: <Rat as Zero>::zero(), disc: BigInt::one() }
    }

    pub fn new(re: Rat, im: Rat, disc: BigInt) -> Self {
        Quad { re, im, disc }
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn conj(&self) -> Self {
        Quad { re: self.re.clone(), im: -&self.im, disc: self.disc.clone() }
    }

    fn merged_disc(&self, other: &Self) -> BigInt {
        if self.is_rational() {
            other.disc.clone()
        } else {
            if !other.is_rational() {
                assert_eq!(self.disc, other.disc, "mixing different quadratic extensions");
            }
            self.disc.clone()
        }
    }

    /// Exact sign for real extensions (disc > 0); `None` for imaginary
    /// irrational elements.
    pub fn signum(&self) -> Option<i32> {
        if self.is_rational() {
            return Some(rat_sign(&self.re));
        }
        if self.disc.is_negative() {
            return None;
        }
        // re + im√D with D > 0
        let s_re = rat_sign(&self.re);
        let s_im = rat_sign(&self.im);
        if s_re == 0 {
            return Some(s_im);
        }
        if s_re == s_im {
            return Some(s_re);
        }
        // opposite signs: compare re² with im²·D
        let lhs = &self.re * &self.re;
        let rhs = &self.im * &self.im * Rat::from_integer(self.disc.clone());
        Some(if lhs > rhs { s_re } else { s_im })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let re = rat_to_f64(&self.re);
        let im = rat_to_f64(&self.im);
        let d = self.disc.to_string().parse::<f64>().unwrap_or(0.0);
        if d >= 0.0 {
            (re + im * d.sqrt(), 0.0)
        } else {
            (re, im * (-d).sqrt())
        }
    }
}

impl PartialEq for Quad {
    fn eq(&self, other: &Self) -> bool {
        if self.re != other.re || self.im != other.im {
            return false;
        }
        self.is_rational() || self.disc == other.disc
    }
}

impl Field for Quad {
    fn zero() -> Self {
        Quad::rational(<Rat as Zero>::zero())
    }
    fn one() -> Self {
        Quad::rational(<Rat as One>::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, other: &Self) -> Self {
        Quad { re: &self.re + &other.re, im: &self.im + &other.im, disc: self.merged_disc(other) }
    }
    fn sub(&self, other: &Self) -> Self {
        Quad { re: &self.re - &other.re, im: &self.im - &other.im, disc: self.merged_disc(other) }
    }
    fn mul(&self, other: &Self) -> Self {
        let disc = self.merged_disc(other);
        let d = Rat::from_integer(disc.clone());
        Quad {
            re: &self.re * &other.re + &self.im * &other.im * d,
            im: &self.re * &other.im + &self.im * &other.re,
            disc,
        }
    }
    fn neg(&self) -> Self {
        Quad { re: -&self.re, im: -&self.im, disc: self.disc.clone() }
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        let d = Rat::from_integer(self.disc.clone());
        let norm = &self.re * &self.re - &self.im * &self.im * d;
        Quad { re: &self.re / &norm, im: -&self.im / &norm, disc: self.disc.clone() }
    }
    fn from_rat(r: &Rat) -> Self {
        Quad::rational(r.clone())
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}*sqrt({})", self.re, self.im, self.disc)
        }
    }
}

pub fn rat_sign(r: &Rat) -> i32 {
    if Zero::is_zero(r) {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Writes a rational as `p/q` (always with an explicit denominator).
pub fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or an integer.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rat::new(p, q))
    } else {
        Some(Rat::from_integer(s.parse().ok()?))
    }
}

/// Returns the square root of a rational as `s·√t`; `t = 1` for perfect
/// squares. Trial division runs up to a fixed bound, so for very large
/// inputs `t` may retain a square factor.
pub fn rat_sqrt_parts(r: &Rat) -> (Rat, BigInt) {
    // r = p/q = p·q / q²
    let mut m = r.numer() * r.denom();
    let mut outside = BigInt::one();
    let neg = m.is_negative();
    if neg {
        m = -m;
    }
    if m.is_zero() {
        return (<Rat as Zero>::zero(), BigInt::one());
    }
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(100_000u32);
    while &p * &p <= m && p <= bound {
        let sq = &p * &p;
        while (&m % &sq).is_zero() {
            m /= &sq;
            outside *= &p;
        }
        p += 1u32;
    }
    let root = m.sqrt();
    if &root * &root == m {
        outside *= &root;
        m = BigInt::one();
    }
    if neg {
        m = -m;
    }
    (Rat::new(outside, r.denom().clone()), m)
}

/// Least common multiple of the denominators of a list of rationals.
pub fn denominators_lcm<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
