//! Nonclassicality and entanglement measures computed from a [`MomentTable`].
//!
//! The quadratures are `F₁ = (A + A†)/2^{3/2}` and `F₂ = (A − A†)/(2^{3/2} i)`
//! with `A = a + b`, and `Qᵢ = ΔFᵢ² − 1/4`.

use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::closed_form::moments_final;
use crate::error::{Error, Result};
use crate::fock::run_oracle_adaptive;
use crate::model::{normalization, ModelParams};
use crate::moments::{realize, scaled_discrepancy, MomentTable};

/// Imaginary residue above which a combination of moments is rejected.
pub const OBSERVABLE_RESIDUE_TOL: f64 = 1e-10;

/// Default truncation tolerance for oracle evaluations.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-12;

/// `(Q₁, Q₂)`.
pub fn quadrature_squeezing(m: &MomentTable) -> Result<(f64, f64)> {
    let hopping = m.ex_adb + m.ex_abd();
    let pairs = m.ex_ab + m.ex_adbd();
    let squares = m.ex_a2 + m.ex_ad2() + m.ex_b2 + m.ex_bd2();
    let numbers = C64::new(m.n_a + m.n_b, 0.0);
    let mean = m.ex_a + m.ex_b;
    let mean_d = m.ex_ad() + m.ex_bd();

    let q1 = (numbers + hopping + pairs) / 4.0 + squares / 8.0 - (mean + mean_d).powu(2) / 8.0;
    let q2 = (numbers + hopping - pairs) / 4.0 - squares / 8.0 + (mean - mean_d).powu(2) / 8.0;
    Ok((
        realize("q1", q1, OBSERVABLE_RESIDUE_TOL)?,
        realize("q2", q2, OBSERVABLE_RESIDUE_TOL)?,
    ))
}

/// `ΔF₁² ΔF₂²`, bounded below by `1/16`.
pub fn uncertainty_product(q1: f64, q2: f64) -> f64 {
    (q1 + 0.25) * (q2 + 0.25)
}

/// Intermode second-order correlation `⟨n_a n_b⟩ / (⟨n_a⟩⟨n_b⟩)`.
pub fn socc(m: &MomentTable) -> Result<f64> {
    if m.n_a <= 0.0 || m.n_b <= 0.0 {
        return Err(Error::Undefined {
            quantity: "g2_ab",
            reason: "a mode is empty",
        });
    }
    Ok(m.n_ab / (m.n_a * m.n_b))
}

/// Cauchy–Schwarz index `√(⟨a†²a²⟩⟨b†²b²⟩) / ⟨n_a n_b⟩ − 1`; negative values
/// are nonclassical.
pub fn csi_index(m: &MomentTable) -> Result<f64> {
    if m.n_ab <= 0.0 {
        return Err(Error::Undefined {
            quantity: "i0",
            reason: "no intermode photon pairs",
        });
    }
    Ok((m.aa2 * m.bb2).sqrt() / m.n_ab - 1.0)
}

/// Hillery–Zubairy witness `⟨n_a⟩⟨n_b⟩ − |⟨ab⟩|²`; negative means entangled.
pub fn entanglement_hz(m: &MomentTable) -> f64 {
    m.n_a * m.n_b - m.ex_ab.norm_sqr()
}

/// Total variance of `X_a − X_b` and `P_a + P_b`; below 2 means inseparable.
pub fn epr_variance(m: &MomentTable) -> Result<f64> {
    let pair = C64::new(1.0 + m.n_a + m.n_b, 0.0) - m.ex_adbd() - m.ex_ab;
    let shift = (m.ex_a - m.ex_bd()) * (m.ex_ad() - m.ex_b);
    realize("epr", 2.0 * pair - 2.0 * shift, OBSERVABLE_RESIDUE_TOL)
}

/// `|⟨φ|Ψ⟩|² = κ² exp(−s² cosh 2λ / 4)`.
pub fn fidelity_closed(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    if params.theta != 0.0 {
        return Err(Error::Unsupported(
            "closed-form fidelity requires theta = 0".into(),
        ));
    }
    let norm = normalization(params, &params.weak_value()?);
    Ok(
        norm.kappa
            * norm.kappa
            * (-0.25 * params.s * params.s * (2.0 * params.lambda).cosh()).exp(),
    )
}

/// Which moment source a report is computed from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    #[default]
    Closed,
    Oracle,
    /// Closed form, cross-checked against the oracle.
    Both,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Closed => "closed",
            Backend::Oracle => "oracle",
            Backend::Both => "both",
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" | "closed_form" => Ok(Backend::Closed),
            "oracle" => Ok(Backend::Oracle),
            "both" => Ok(Backend::Both),
            other => Err(Error::Sweep(format!("unknown backend {other:?}"))),
        }
    }
}

/// Every derived quantity at one parameter point.
///
/// `g2_ab` and `i0` are `None` where their denominators vanish. The two
/// discrepancy fields are only set by [`Backend::Both`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableReport {
    pub q1: f64,
    pub q2: f64,
    pub uncertainty_product: f64,
    pub g2_ab: Option<f64>,
    pub i0: Option<f64>,
    pub e_hz: f64,
    pub epr: f64,
    pub fidelity: f64,
    pub p_post: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_discrepancy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_discrepancy_field: Option<String>,
}

/// Report field names, in declaration order.
pub const REPORT_FIELDS: [&str; 9] = [
    "q1",
    "q2",
    "uncertainty_product",
    "g2_ab",
    "i0",
    "e_hz",
    "epr",
    "fidelity",
    "p_post",
];

fn defined(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Undefined { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

impl ObservableReport {
    pub fn from_moments(m: &MomentTable, fidelity: f64, p_post: f64) -> Result<Self> {
        let (q1, q2) = quadrature_squeezing(m)?;
        Ok(Self {
            q1,
            q2,
            uncertainty_product: uncertainty_product(q1, q2),
            g2_ab: defined(socc(m))?,
            i0: defined(csi_index(m))?,
            e_hz: entanglement_hz(m),
            epr: epr_variance(m)?,
            fidelity,
            p_post,
            max_discrepancy: None,
            max_discrepancy_field: None,
        })
    }

    /// Field by name; `None` for unknown names and undefined values.
    pub fn get(&self, field: &str) -> Option<f64> {
        match field {
            "q1" => Some(self.q1),
            "q2" => Some(self.q2),
            "uncertainty_product" => Some(self.uncertainty_product),
            "g2_ab" => self.g2_ab,
            "i0" => self.i0,
            "e_hz" => Some(self.e_hz),
            "epr" => Some(self.epr),
            "fidelity" => Some(self.fidelity),
            "p_post" => Some(self.p_post),
            _ => None,
        }
    }

    /// Scaled discrepancy per report field. A field defined in one report but
    /// not the other counts as infinitely far apart.
    pub fn discrepancies(&self, other: &Self) -> Vec<(&'static str, f64)> {
        REPORT_FIELDS
            .iter()
            .map(|&f| {
                let d = match (self.get(f), other.get(f)) {
                    (Some(x), Some(y)) => scaled_discrepancy(x, y),
                    (None, None) => 0.0,
                    _ => f64::INFINITY,
                };
                (f, d)
            })
            .collect()
    }
}

/// Moments and report from one backend at one point.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub moments: MomentTable,
    pub report: ObservableReport,
}

pub fn evaluate_closed(params: &ModelParams) -> Result<Evaluation> {
    let moments = moments_final(params)?;
    let norm = normalization(params, &params.weak_value()?);
    let report = ObservableReport::from_moments(&moments, fidelity_closed(params)?, norm.p_post)?;
    Ok(Evaluation { moments, report })
}

pub fn evaluate_oracle(params: &ModelParams, tol: f64) -> Result<Evaluation> {
    let run = run_oracle_adaptive(params, tol)?;
    let report = ObservableReport::from_moments(&run.moments, run.fidelity, run.p_post)?;
    Ok(Evaluation {
        moments: run.moments,
        report,
    })
}

/// Closed-form and oracle evaluations with the largest disagreement over all
/// moment and report fields.
pub struct Comparison {
    pub closed: Evaluation,
    pub oracle: Evaluation,
    pub worst_field: &'static str,
    pub worst: f64,
}

pub fn compare_backends(params: &ModelParams, tol: f64) -> Result<Comparison> {
    let closed = evaluate_closed(params)?;
    let oracle = evaluate_oracle(params, tol)?;
    let (mut worst_field, mut worst) = closed.moments.max_discrepancy(&oracle.moments);
    for (field, d) in closed.report.discrepancies(&oracle.report) {
        if d > worst {
            worst_field = field;
            worst = d;
        }
    }
    Ok(Comparison {
        closed,
        oracle,
        worst_field,
        worst,
    })
}

/// Report at `params` from `backend`; `oracle_tol` sets the oracle truncation.
pub fn report(params: &ModelParams, backend: Backend, oracle_tol: f64) -> Result<ObservableReport> {
    match backend {
        Backend::Closed => Ok(evaluate_closed(params)?.report),
        Backend::Oracle => Ok(evaluate_oracle(params, oracle_tol)?.report),
        Backend::Both => {
            let c = compare_backends(params, oracle_tol)?;
            let mut r = c.closed.report;
            r.max_discrepancy = Some(c.worst);
            r.max_discrepancy_field = Some(c.worst_field.to_string());
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::moments_initial;
    use std::f64::consts::PI;

    #[test]
    fn initial_quadratures() {
        let (q1, q2) = quadrature_squeezing(&moments_initial(0.1)).unwrap();
        assert!((q1 - (0.2f64.exp() - 1.0) / 4.0).abs() < 1e-15);
        assert!((q1 - 0.055351).abs() < 1e-6);
        assert!((q2 - ((-0.2f64).exp() - 1.0) / 4.0).abs() < 1e-15);
        assert!((q2 + 0.045317).abs() < 1e-6);
        assert_eq!(
            quadrature_squeezing(&moments_initial(0.0)).unwrap(),
            (0.0, 0.0)
        );
    }

    #[test]
    fn socc_limits() {
        let g = socc(&moments_initial(3.0)).unwrap();
        assert!((g - (1.0 / 3f64.tanh().powi(2) + 1.0)).abs() < 1e-12);
        assert!((g - 2.0100).abs() < 1e-4);
        assert!(socc(&moments_initial(6.0)).unwrap() - 2.0 < 1e-4);
        assert!(matches!(
            socc(&MomentTable::default()),
            Err(Error::Undefined { .. })
        ));
    }

    #[test]
    fn csi_values() {
        let sh2 = 0.5f64.sinh().powi(2);
        let i0 = csi_index(&moments_initial(0.5)).unwrap();
        assert!((i0 - (2.0 * sh2 / (2.0 * sh2 + 1.0) - 1.0)).abs() < 1e-14);
        assert!((i0 + 0.64806).abs() < 1e-5);
        assert!(csi_index(&moments_initial(6.0)).unwrap().abs() < 1e-3);

        let (x, y) = (0.7f64, 1.3f64);
        let coherent = MomentTable {
            n_a: x * x,
            n_b: y * y,
            n_ab: x * x * y * y,
            aa2: x.powi(4),
            bb2: y.powi(4),
            ..Default::default()
        };
        assert!(csi_index(&coherent).unwrap().abs() < 1e-15);
        assert!(csi_index(&MomentTable::default()).is_err());
    }

    #[test]
    fn witness_and_epr_initial() {
        let m = moments_initial(1.5);
        assert!((entanglement_hz(&m) + 1.5f64.sinh().powi(2)).abs() < 1e-12);
        assert!((epr_variance(&m).unwrap() - 2.0 * (-3.0f64).exp()).abs() < 1e-12);
        assert!((epr_variance(&m).unwrap() - 0.099574).abs() < 1e-6);
        assert_eq!(entanglement_hz(&moments_initial(0.0)), 0.0);
        assert_eq!(epr_variance(&moments_initial(0.0)).unwrap(), 2.0);
    }

    #[test]
    fn fidelity_values() {
        let p = ModelParams::new(1.2, 0.0, 1.0, 0.0).unwrap();
        assert!((fidelity_closed(&p).unwrap() - 1.0).abs() < 1e-15);
        let p = ModelParams::new(1.5, 5.0, PI / 3.0, 0.0).unwrap();
        assert!(fidelity_closed(&p).unwrap() < 1e-4);
    }

    #[test]
    fn vacuum_report() {
        let p = ModelParams::new(0.0, 0.0, 0.0, 0.0).unwrap();
        let r = report(&p, Backend::Closed, DEFAULT_ORACLE_TOL).unwrap();
        assert_eq!(
            (r.q1, r.q2, r.epr, r.e_hz, r.fidelity),
            (0.0, 0.0, 2.0, 0.0, 1.0)
        );
        assert_eq!((r.g2_ab, r.i0), (None, None));
    }

    #[test]
    fn dual_backend_report() {
        let p = ModelParams::new(0.1, 0.2, 8.0 * PI / 9.0, 0.0).unwrap();
        let r = report(&p, Backend::Both, DEFAULT_ORACLE_TOL).unwrap();
        assert!(r.max_discrepancy.unwrap() < 1e-8, "{r:?}");
        // No F1 squeezing at this point, despite the large weak value.
        assert!((r.q1 - 0.025368).abs() < 1e-6, "{}", r.q1);
    }

    #[test]
    fn backend_names() {
        for b in [Backend::Closed, Backend::Oracle, Backend::Both] {
            assert_eq!(b.name().parse::<Backend>().unwrap(), b);
        }
        assert!("fast".parse::<Backend>().is_err());
    }
}
