//! Halphen pencils of index `m`: degree `3m` pencils whose fibers, on the
//! associated rational elliptic surface, are given by the user as Kodaira
//! types. A pencil whose fibers all have `lct > 1/(2m)` (resp. `≥`) is
//! stable (resp. semistable); the destabilizer search runs independently.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{bridges_for, PencilReport, Verdict};
use crate::algebra::{squarefree_part, Poly, Rat};
use crate::error::{Error, Result};
use crate::geometry::{linear_factors, search_with_flags};
use crate::nets::SymConic;
use crate::weights::LinearSystem;

/// Singular fiber types of an elliptic fibration that carry an entry in
/// the lct table; `MIn` is the multiple fiber `mI_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberType {
    MIn,
    II,
    III,
    IV,
    InStar,
    IIStar,
    IIIStar,
    IVStar,
}

impl FiberType {
    pub const ALL: [FiberType; 8] = [
        FiberType::MIn,
        FiberType::II,
        FiberType::III,
        FiberType::IV,
        FiberType::InStar,
        FiberType::IIStar,
        FiberType::IIIStar,
        FiberType::IVStar,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FiberType::MIn => "mIn",
            FiberType::II => "II",
            FiberType::III => "III",
            FiberType::IV => "IV",
            FiberType::InStar => "In*",
            FiberType::IIStar => "II*",
            FiberType::IIIStar => "III*",
            FiberType::IVStar => "IV*",
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FiberType {
    type Err = Error;

    fn from_str(s: &str) -> Result<FiberType> {
        let norm: String = s.trim().chars().filter(|c| *c != '_' && *c != '^').collect();
        FiberType::ALL
            .into_iter()
            .find(|t| t.tag() == norm)
            .ok_or_else(|| Error::Invalid(format!("unknown fiber type `{s}` (expected one of mIn, II, III, IV, In*, II*, III*, IV*)")))
    }
}

impl Serialize for FiberType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Log canonical thresholds `lct(Y, F)` of the fibers of a rational
/// elliptic surface with a multiple fiber of multiplicity `m`.
pub struct KodairaLctTable;

impl KodairaLctTable {
    pub fn lct(t: FiberType, m: u32) -> Rat {
        let q = |p: i64, d: i64| Rat::new(p.into(), d.into());
        match t {
            FiberType::MIn => q(1, m as i64),
            FiberType::II => q(5, 6),
            FiberType::III => q(3, 4),
            FiberType::IV => q(2, 3),
            FiberType::InStar => q(1, 2),
            FiberType::IIStar => q(1, 6),
            FiberType::IIIStar => q(1, 4),
            FiberType::IVStar => q(1, 3),
        }
    }

    /// Smallest value any listed fiber can have for index `m`.
    pub fn minimum(m: u32) -> Rat {
        FiberType::ALL.iter().map(|t| KodairaLctTable::lct(*t, m)).min().expect("nonempty table")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalphenImplication {
    Stable,
    Semistable,
    NoConclusion,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalphenAnalysis {
    pub index: u32,
    pub fiber_types: Vec<FiberType>,
    /// Least lct over the given fibers; with no fibers given and `m > 3`,
    /// the least value in the table.
    #[serde(with = "crate::json::opt_rat")]
    pub min_lct: Option<Rat>,
    /// `1/(2m)`.
    #[serde(with = "crate::json::rat")]
    pub bound: Rat,
    pub implication: HalphenImplication,
    pub reason: String,
    /// Set when the pencil has the shape of the known stable exceptions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exception: Option<String>,
}

fn implication(m: u32, fibers: &[FiberType]) -> (Option<Rat>, Rat, HalphenImplication, String) {
    let bound = Rat::new(1.into(), (2 * m as i64).into());
    let given = fibers.iter().map(|t| KodairaLctTable::lct(*t, m)).min();
    let table_min = KodairaLctTable::minimum(m);
    if m > 3 {
        let min = given.unwrap_or(table_min.clone());
        let reason = format!(
            "index {m} > 3: every fiber has lct ≥ {table_min} > 1/{}, so every Halphen pencil of this index is stable",
            2 * m
        );
        return (Some(min), bound, HalphenImplication::Stable, reason);
    }
    let Some(min) = given else {
        return (None, bound, HalphenImplication::NoConclusion, "no fiber types given".into());
    };
    let (imp, reason) = if min > bound {
        (HalphenImplication::Stable, format!("every fiber has lct ≥ {min} > 1/{}: stable", 2 * m))
    } else if min == bound {
        (HalphenImplication::Semistable, format!("every fiber has lct ≥ 1/{}: semistable", 2 * m))
    } else {
        (
            HalphenImplication::NoConclusion,
            format!("a fiber has lct {min} < 1/{}: no conclusion from the fiber test", 2 * m),
        )
    };
    (Some(min), bound, imp, reason)
}

/// Whether `f = Q⁴·L` with `Q` a smooth conic and `L` a line.
fn conic_four_line(f: &Poly) -> bool {
    if f.degree() != 9 {
        return false;
    }
    let lines = linear_factors(f);
    let Some((line, _)) = lines.iter().find(|(_, k)| *k == 1) else { return false };
    if lines.len() != 1 {
        return false;
    }
    let Some(rest) = f.as_sparse().div_exact(line.as_sparse()) else { return false };
    let Ok(rest) = Poly::new(rest) else { return false };
    let q = squarefree_part(&rest);
    q.degree() == 2 && q.pow(4).is_proportional(&rest) && SymConic::from_poly(&q).is_ok_and(|c| c.rank() == 3)
}

pub fn analyze_halphen(p: &LinearSystem, m: u32, fiber_types: &[FiberType]) -> Result<PencilReport> {
    if m == 0 {
        return Err(Error::Invalid("the index must be at least 1".into()));
    }
    if p.k() != 1 || p.num_vars() != 3 {
        return Err(Error::Invalid("expected a pencil of plane curves".into()));
    }
    if p.degree() != 3 * m {
        return Err(Error::Invalid(format!("index {m} needs degree {}, got {}", 3 * m, p.degree())));
    }
    let (min_lct, bound, imp, reason) = implication(m, fiber_types);
    let exception = (m == 3 && p.generators().iter().any(conic_four_line)).then(|| {
        "a generator is 4Q + L with Q a smooth conic: the shape of the stable index-three pencils with a II* \
         fiber, which no toric valuation destabilizes"
            .to_string()
    });
    let search = search_with_flags(p)?;
    let bridges = bridges_for(p, &search)?;

    let mut commentary = vec![
        "the Halphen property (nine base points of multiplicity m, integral general member) is assumed, not checked"
            .to_string(),
    ];
    let mut disagreements = Vec::new();
    let mut upgrade = None;
    let verdict = match (&search, imp) {
        (s, HalphenImplication::Stable | HalphenImplication::Semistable) if s.is_destabilized() => {
            let strict = s.certificate().is_some_and(|c| c.strict);
            if imp == HalphenImplication::Stable || strict {
                disagreements.push(format!(
                    "the fiber test implies {}, yet a {} certificate was found: the input is not a Halphen pencil with these fibers",
                    if imp == HalphenImplication::Stable { "stability" } else { "semistability" },
                    if strict { "strict" } else { "non-strict" }
                ));
                Verdict::from_search(s)
            } else {
                upgrade = Some(reason.clone());
                Verdict::StrictlySemistable
            }
        }
        (s, HalphenImplication::Stable) => {
            debug_assert!(!s.is_destabilized());
            upgrade = Some(reason.clone());
            Verdict::Stable
        }
        (s, HalphenImplication::Semistable) => {
            commentary.push("semistable by the fiber test; stability rests on the search".into());
            Verdict::from_search(s)
        }
        (s, HalphenImplication::NoConclusion) => Verdict::from_search(s),
    };
    if let Some(e) = &exception {
        commentary.push(e.clone());
    } else if m == 3 && fiber_types.contains(&FiberType::IIStar) && verdict == Verdict::PresumedStable {
        commentary.push(
            "index three with a II* fiber is non-stable outside the exceptional shape, but no destabilizing subgroup \
             was found at the examined flags"
                .into(),
        );
    }
    Ok(PencilReport {
        generators: p.generators().to_vec(),
        degree: p.degree(),
        threshold: p.threshold(),
        conditions: None,
        halphen: Some(HalphenAnalysis {
            index: m,
            fiber_types: fiber_types.to_vec(),
            min_lct,
            bound,
            implication: imp,
            reason,
            exception,
        }),
        search,
        bridges,
        verdict,
        upgrade,
        commentary,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rat {
        Rat::new(p.into(), d.into())
    }

    #[test]
    fn table_values() {
        let expected = [(FiberType::II, q(5, 6)), (FiberType::IIStar, q(1, 6)), (FiberType::InStar, q(1, 2))];
        for (t, v) in expected {
            assert_eq!(KodairaLctTable::lct(t, 3), v);
        }
        assert_eq!(KodairaLctTable::lct(FiberType::MIn, 4), q(1, 4));
        assert_eq!(KodairaLctTable::minimum(4), q(1, 6));
        assert_eq!(KodairaLctTable::minimum(9), q(1, 9));
    }

    #[test]
    fn parse_tags() {
        for t in FiberType::ALL {
            assert_eq!(t.tag().parse::<FiberType>().unwrap(), t);
        }
        assert_eq!("I_n^*".parse::<FiberType>().unwrap(), FiberType::InStar);
        assert_eq!("mI_n".parse::<FiberType>().unwrap(), FiberType::MIn);
        assert!("I5".parse::<FiberType>().is_err());
    }

    #[test]
    fn implications() {
        assert_eq!(implication(4, &[FiberType::IIStar]).2, HalphenImplication::Stable);
        assert_eq!(implication(3, &[FiberType::IIStar]).2, HalphenImplication::Semistable);
        assert_eq!(implication(3, &[FiberType::IIIStar]).2, HalphenImplication::Stable);
        assert_eq!(implication(2, &[FiberType::IIStar]).2, HalphenImplication::NoConclusion);
        assert_eq!(implication(2, &[FiberType::IIIStar]).2, HalphenImplication::Semistable);
        assert_eq!(implication(2, &[]).2, HalphenImplication::NoConclusion);
    }

    #[test]
    fn exceptional_shape() {
        assert!(conic_four_line(&Poly::parse("(y^2+x*z)^4*y", 3).unwrap()));
        assert!(!conic_four_line(&Poly::parse("(y^2+x*z)^2*y^5", 3).unwrap()));
        assert!(!conic_four_line(&Poly::parse("(x*y)^4*z", 3).unwrap()));
    }

    #[test]
    fn degree_must_match_index() {
        let p = LinearSystem::parse(&["x^3", "y^3"], 3).unwrap();
        assert!(analyze_halphen(&p, 2, &[]).is_err());
    }
}
