//! Reports tying the engine to three case studies: pencils of plane
//! cubics, Halphen pencils, and products of hypersurfaces.

mod cubics;
mod halphen;
mod sums;

pub use cubics::{analyze_cubic_pencil, CubicConditions, Criterion};
pub use halphen::{analyze_halphen, FiberType, HalphenAnalysis, HalphenImplication, KodairaLctTable};
pub use sums::{analyze_sum, FactorSummary, SumReport};

use serde::Serialize;

use crate::algebra::{Poly, Rat};
use crate::error::Result;
use crate::polyhedra::{toric_lct_bound, Certificate, SearchVerdict};
use crate::weights::{omega_hyp, LinearSystem};

/// Combined outcome of a report. `Stable` and `StrictlySemistable` are only
/// produced when a theorem about the input class backs them; a search that
/// finds nothing gives `PresumedStable`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Unstable,
    NonStable,
    StrictlySemistable,
    Stable,
    PresumedStable,
}

impl Verdict {
    pub fn from_search(s: &SearchVerdict) -> Verdict {
        match s {
            SearchVerdict::Unstable { .. } => Verdict::Unstable,
            SearchVerdict::NonStable { .. } => Verdict::NonStable,
            SearchVerdict::PresumedStable { .. } => Verdict::PresumedStable,
        }
    }

    /// False only for `PresumedStable`, the one outcome no proof backs.
    pub fn is_determinate(self) -> bool {
        self != Verdict::PresumedStable
    }
}

/// Checks relating a system certificate to the hypersurface formed by its
/// witnesses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BridgeCheck {
    /// `ω(Π witnesses, λ)` in the certificate frame.
    pub product_omega: i64,
    #[serde(with = "crate::json::rat")]
    pub product_ratio: Rat,
    /// The product fails the hypersurface inequality at the same subgroup
    /// with the same ratio as the system.
    pub identity_holds: bool,
    /// Toric upper bound for the lct of the witness product.
    #[serde(with = "crate::json::opt_rat")]
    pub lct_bound: Option<Rat>,
    /// `(n+1)/(d(k+1))`.
    #[serde(with = "crate::json::rat")]
    pub lct_limit: Rat,
    /// `lct_bound ≤ lct_limit`, strictly for strict certificates.
    pub lct_holds: bool,
}

impl BridgeCheck {
    pub fn holds(&self) -> bool {
        self.identity_holds && self.lct_holds
    }
}

pub fn certificate_bridges(sys: &LinearSystem, cert: &Certificate) -> Result<BridgeCheck> {
    let product = cert.witness_product();
    let product_omega = omega_hyp(&product, &cert.lambda)?;
    let product_ratio = Rat::new(product_omega.into(), cert.a_lambda.into());
    let witness_sum: i64 = cert.witnesses.iter().map(|w| omega_hyp(w, &cert.lambda)).sum::<Result<i64>>()?;
    let identity_holds = cert.witnesses.len() == sys.k() + 1
        && witness_sum == product_omega
        && product_omega == cert.omega
        && product_ratio == cert.ratio;
    let lct_bound = toric_lct_bound(&product)?;
    let lct_limit = sys.threshold().recip();
    let lct_holds = match &lct_bound {
        Some(b) if cert.strict => *b < lct_limit,
        Some(b) => *b <= lct_limit,
        None => false,
    };
    Ok(BridgeCheck { product_omega, product_ratio, identity_holds, lct_bound, lct_limit, lct_holds })
}

/// Report on a pencil: the search outcome and, depending on the analysis,
/// the cubic-pencil conditions or the Halphen fiber test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PencilReport {
    pub generators: Vec<Poly>,
    pub degree: u32,
    #[serde(with = "crate::json::rat")]
    pub threshold: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<CubicConditions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halphen: Option<HalphenAnalysis>,
    pub search: SearchVerdict,
    /// Present when the search produced a certificate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridges: Option<BridgeCheck>,
    pub verdict: Verdict,
    /// The theorem behind a `Stable` or `StrictlySemistable` verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upgrade: Option<String>,
    pub commentary: Vec<String>,
    /// Disagreements between the search and the theorem-level expectation.
    pub disagreements: Vec<String>,
}

impl PencilReport {
    pub fn consistent(&self) -> bool {
        self.disagreements.is_empty() && self.bridges.as_ref().is_none_or(BridgeCheck::holds)
    }
}

pub(crate) fn bridges_for(sys: &LinearSystem, search: &SearchVerdict) -> Result<Option<BridgeCheck>> {
    search.certificate().map(|c| certificate_bridges(sys, c)).transpose()
}
