//! Pencils of plane cubics: the three conditions characterizing stability
//! (a smooth member, reduced members, at worst nodes at base points) next
//! to the destabilizer search.

use serde::Serialize;

use super::{bridges_for, PencilReport, Verdict};
use crate::error::{Error, Result};
use crate::geometry::pencil::sample_members;
use crate::geometry::{
    base_point_singularities_nodal, linear_factors, members_reduced, pencil_has_smooth_member, search_with_flags,
    TriState,
};
use crate::weights::LinearSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubicConditions {
    pub smooth_member: TriState,
    pub members_reduced: TriState,
    pub nodal_at_base_points: TriState,
}

/// What the three conditions say on their own: a pencil of cubics is
/// stable exactly when all of them hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Stable,
    NotStable,
    Inconclusive,
}

impl CubicConditions {
    pub fn evaluate(p: &LinearSystem) -> Result<CubicConditions> {
        Ok(CubicConditions {
            smooth_member: pencil_has_smooth_member(p)?,
            members_reduced: members_reduced(p)?,
            nodal_at_base_points: base_point_singularities_nodal(p)?,
        })
    }

    fn all(&self) -> [TriState; 3] {
        [self.smooth_member, self.members_reduced, self.nodal_at_base_points]
    }

    pub fn criterion(&self) -> Criterion {
        let all = self.all();
        if all.contains(&TriState::No) {
            Criterion::NotStable
        } else if all.iter().all(|t| *t == TriState::Yes) {
            Criterion::Stable
        } else {
            Criterion::Inconclusive
        }
    }
}

/// Members that are a triple line, or a double line plus a line; with a
/// smooth member in the pencil every unstable pencil has one.
fn line_configurations(p: &LinearSystem) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for m in sample_members(p, 1)? {
        let lines = linear_factors(&m);
        let mults: Vec<u32> = lines.iter().map(|(_, k)| *k).collect();
        if mults == [3] {
            out.push(format!("member {m} is a triple line"));
        } else if mults.contains(&2) && mults.len() == 2 {
            out.push(format!("member {m} is a double line plus a line"));
        }
    }
    Ok(out)
}

pub fn analyze_cubic_pencil(p: &LinearSystem) -> Result<PencilReport> {
    if p.k() != 1 || p.degree() != 3 || p.num_vars() != 3 {
        return Err(Error::Invalid(format!(
            "expected a pencil of plane cubics, got k={}, d={}, {} variables",
            p.k(),
            p.degree(),
            p.num_vars()
        )));
    }
    let conditions = CubicConditions::evaluate(p)?;
    let search = search_with_flags(p)?;
    let bridges = bridges_for(p, &search)?;
    let verdict = Verdict::from_search(&search);
    let criterion = conditions.criterion();

    let mut commentary = Vec::new();
    let names = ["smooth member", "all members reduced", "at worst nodes at base points"];
    for (name, t) in names.iter().zip(conditions.all()) {
        commentary.push(format!("{name}: {}", tri(t)));
    }
    commentary.extend(line_configurations(p)?);
    let mut disagreements = Vec::new();
    match (criterion, verdict) {
        (Criterion::Stable, Verdict::Unstable | Verdict::NonStable) => {
            disagreements.push("all three conditions hold, yet a destabilizing subgroup was found".into())
        }
        (Criterion::Stable, _) => commentary.push("all three conditions hold: consistent with stability".into()),
        (Criterion::NotStable, Verdict::PresumedStable) => commentary.push(
            "a condition fails, so the pencil is not stable, but no destabilizing subgroup was found at the examined flags"
                .into(),
        ),
        (Criterion::NotStable, _) => commentary.push("a condition fails, matching the certificate".into()),
        (Criterion::Inconclusive, _) => {
            commentary.push("some conditions could not be decided exactly; the verdict rests on the search".into())
        }
    }
    Ok(PencilReport {
        generators: p.generators().to_vec(),
        degree: 3,
        threshold: p.threshold(),
        conditions: Some(conditions),
        halphen: None,
        search,
        bridges,
        verdict,
        upgrade: None,
        commentary,
        disagreements,
    })
}

fn tri(t: TriState) -> &'static str {
    match t {
        TriState::Yes => "yes",
        TriState::No => "no",
        TriState::Unknown => "unknown",
    }
}
