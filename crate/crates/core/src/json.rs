//! Shared JSON conventions: rationals are written as `"p/q"` strings with an
//! explicit denominator, and every top-level document carries a schema tag.

use serde::{Deserialize, Deserializer, Serializer};

use crate::algebra::field::{parse_rat, rat_string};
use crate::algebra::Rat;

pub const SCHEMA: &str = "git-stab/1";

pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        parse_rat(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{text}`")))
    }
}

pub mod opt_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&rat_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(text) => parse_rat(&text)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{text}`"))),
        }
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rat_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|t| parse_rat(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))))
            .collect()
    }
}
