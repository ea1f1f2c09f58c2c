use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::field::rat_string;
use crate::algebra::{Field, Quad, Rat};
use crate::error::{Error, Result};

/// A point of projective space with coordinates in ℚ or in one quadratic
/// extension ℚ(√D), scaled so that the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjPoint {
    coords: Vec<Quad>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Quad>) -> Result<ProjPoint> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Invalid("all coordinates are zero".into()));
        };
        let discs: Vec<&BigInt> = coords.iter().filter(|c| !c.is_rational()).map(|c| &c.disc).collect();
        if discs.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Unsupported("coordinates from different quadratic fields".into()));
        }
        let inv = lead.inv();
        let coords = coords
            .iter()
            .map(|c| {
                let q = c.mul(&inv);
                if q.is_rational() {
                    Quad::rational(q.re)
                } else {
                    q
                }
            })
            .collect();
        Ok(ProjPoint { coords })
    }

    pub fn rational(coords: &[Rat]) -> Result<ProjPoint> {
        ProjPoint::new(coords.iter().map(|c| Quad::rational(c.clone())).collect())
    }

    /// Parses a comma-separated list of integers or `p/q`.
    pub fn parse(text: &str) -> Result<ProjPoint> {
        let coords = text
            .split(',')
            .map(|s| crate::algebra::field::parse_rat(s).ok_or_else(|| Error::Invalid(format!("bad coordinate `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        ProjPoint::rational(&coords)
    }

    pub fn coords(&self) -> &[Quad] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(Quad::is_rational)
    }

    /// Rational coordinates, if the point is rational.
    pub fn to_rational(&self) -> Option<Vec<Rat>> {
        self.is_rational().then(|| self.coords.iter().map(|c| c.re.clone()).collect())
    }

    /// The discriminant `D` of the coordinate field, if irrational.
    pub fn sqrt_disc(&self) -> Option<&BigInt> {
        self.coords.iter().find(|c| !c.is_rational()).map(|c| &c.disc)
    }

    pub fn conj(&self) -> ProjPoint {
        ProjPoint::new(self.coords.iter().map(Quad::conj).collect()).expect("nonzero")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

/// Rational points are written as `{"coords": ["p/q", …]}`; points over
/// ℚ(√D) as `{"coords": [["re", "im"], …], "sqrt_disc": "D"}`.
impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.sqrt_disc() {
            None => {
                let mut st = s.serialize_struct("ProjPoint", 1)?;
                let coords: Vec<String> = self.coords.iter().map(|c| rat_string(&c.re)).collect();
                st.serialize_field("coords", &coords)?;
                st.end()
            }
            Some(d) => {
                let mut st = s.serialize_struct("ProjPoint", 2)?;
                let coords: Vec<[String; 2]> =
                    self.coords.iter().map(|c| [rat_string(&c.re), rat_string(&c.im)]).collect();
                st.serialize_field("coords", &coords)?;
                st.serialize_field("sqrt_disc", &d.to_string())?;
                st.end()
            }
        }
    }
}
