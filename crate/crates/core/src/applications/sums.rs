//! Torus-level analysis of a product `f_1 ⋯ f_r` of forms of a common
//! degree, compared with the analyses of its factors and of the linear
//! system they span.

use serde::Serialize;

use crate::algebra::{apply_change, Poly, ProjChange, Rat};
use crate::error::{Error, Result};
use crate::polyhedra::{torus_destabilizer, torus_optimum, Certificate};
use crate::weights::{omega_hyp, LinearSystem, OneParamSubgroup, StatusAtLambda};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorSummary {
    pub poly: Poly,
    /// Best `ω/A` over the diagonal torus of the given frame.
    #[serde(with = "crate::json::rat")]
    pub torus_ratio: Rat,
    pub torus_status: StatusAtLambda,
    /// `ω(f_i, λ)` at the product's optimal subgroup.
    pub omega_at_product_optimum: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumReport {
    pub factors: Vec<FactorSummary>,
    pub product: Poly,
    /// `d/(n+1)`, the threshold of each factor.
    #[serde(with = "crate::json::rat")]
    pub factor_threshold: Rat,
    /// `rd/(n+1)`, the threshold of the product.
    #[serde(with = "crate::json::rat")]
    pub product_threshold: Rat,
    /// Optimal subgroup of the product and the frame where it is diagonal.
    pub lambda: OneParamSubgroup,
    pub coordinates: ProjChange,
    pub product_omega: i64,
    #[serde(with = "crate::json::rat")]
    pub product_ratio: Rat,
    pub product_status: StatusAtLambda,
    pub certificate: Option<Certificate>,
    /// `ω(Π f_i, λ) = Σ ω(f_i, λ)` at the optimal subgroup.
    pub additive: bool,
    /// No factor is torus-unstable, so the product cannot be; if also some
    /// factor is torus-stable, neither can the product be semistable at λ.
    pub factors_bound_product: bool,
    /// When the product has a certificate and the factors are independent:
    /// the system they span is destabilized there too, as it must be.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system_agrees: Option<bool>,
}

impl SumReport {
    pub fn consistent(&self) -> bool {
        self.additive && self.factors_bound_product && self.system_agrees != Some(false)
    }
}

fn single(f: &Poly) -> Result<LinearSystem> {
    LinearSystem::new(vec![f.clone()])
}

pub fn analyze_sum(hypersurfaces: &[Poly]) -> Result<SumReport> {
    let first = hypersurfaces.first().ok_or_else(|| Error::Invalid("no hypersurfaces given".into()))?;
    let (d, n1) = (first.degree(), first.num_vars());
    for h in hypersurfaces {
        if h.num_vars() != n1 {
            return Err(Error::DimensionMismatch { expected: n1, found: h.num_vars() });
        }
        if h.degree() != d {
            return Err(Error::DegreeMismatch { expected: d, found: h.degree() });
        }
    }
    let product = hypersurfaces[1..].iter().fold(first.clone(), |acc, h| acc.mul(h));
    let product_sys = single(&product)?;
    let opt = torus_optimum(&product_sys)?;
    let lambda = opt.best.lambda.clone();
    let coordinates = opt.frame();
    let product_threshold = product_sys.threshold();
    let factor_threshold = Rat::new((d as i64).into(), (n1 as i64).into());

    let moved = apply_change(&product, &coordinates)?;
    let product_omega = omega_hyp(&moved, &lambda)?;
    let product_ratio = Rat::new(product_omega.into(), lambda.a_lambda().into());
    let product_status = StatusAtLambda::from_ratio(&product_ratio, &product_threshold);

    let mut factors = Vec::new();
    for h in hypersurfaces {
        let torus_ratio = torus_optimum(&single(h)?)?.best.ratio();
        factors.push(FactorSummary {
            poly: h.clone(),
            torus_status: StatusAtLambda::from_ratio(&torus_ratio, &factor_threshold),
            torus_ratio,
            omega_at_product_optimum: omega_hyp(&apply_change(h, &coordinates)?, &lambda)?,
        });
    }
    let additive = factors.iter().map(|f| f.omega_at_product_optimum).sum::<i64>() == product_omega;
    let none_unstable = factors.iter().all(|f| f.torus_status != StatusAtLambda::UnstableAt);
    let some_stable = factors.iter().any(|f| f.torus_status == StatusAtLambda::StableAt);
    let factors_bound_product = match (none_unstable, some_stable) {
        (true, true) => product_status == StatusAtLambda::StableAt,
        (true, false) => product_status != StatusAtLambda::UnstableAt,
        _ => true,
    };

    let certificate = torus_destabilizer(&product_sys)?;
    let system_agrees = match (&certificate, LinearSystem::new(hypersurfaces.to_vec())) {
        (None, _) | (Some(_), Err(Error::DependentGenerators)) => None,
        (Some(c), Ok(sys)) => Some(Certificate::at(&sys, &c.coordinates, &c.lambda)?.is_some()),
        (Some(_), Err(e)) => return Err(e),
    };
    Ok(SumReport {
        factors,
        product,
        factor_threshold,
        product_threshold,
        lambda,
        coordinates,
        product_omega,
        product_ratio,
        product_status,
        certificate,
        additive,
        factors_bound_product,
        system_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polys(ts: &[&str]) -> Vec<Poly> {
        ts.iter().map(|t| Poly::parse(t, 3).unwrap()).collect()
    }

    #[test]
    fn two_triple_lines() {
        let r = analyze_sum(&polys(&["x^3", "y^3"])).unwrap();
        assert_eq!(r.product_status, StatusAtLambda::UnstableAt);
        assert!(r.certificate.as_ref().is_some_and(|c| c.strict));
        assert_eq!(r.system_agrees, Some(true));
        assert!(r.consistent());
    }

    #[test]
    fn smooth_conics() {
        let r = analyze_sum(&polys(&["x^2+y*z", "y^2+x*z", "z^2+x*y"])).unwrap();
        // a smooth conic has positive-dimensional stabilizer: semistable, not stable
        assert!(r.factors.iter().all(|f| f.torus_status == StatusAtLambda::StrictlySemistableAt));
        assert_ne!(r.product_status, StatusAtLambda::UnstableAt);
        assert!(r.certificate.as_ref().is_none_or(|c| !c.strict));
        assert!(r.consistent());
    }

    #[test]
    fn repeated_factor_has_no_system() {
        let r = analyze_sum(&polys(&["x^2+y*z", "x^2+y*z"])).unwrap();
        assert_eq!(r.system_agrees, None);
        assert!(analyze_sum(&polys(&["x^2", "y^3"])).is_err());
        assert!(analyze_sum(&[]).is_err());
    }
}
