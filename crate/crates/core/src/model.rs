//! Scenario parameters, the weak value of the measured polarization and the
//! normalization constants shared by both backends.
//!
//! The pointer is a two-mode squeezed vacuum; its `a` mode couples to the
//! polarization through `g σ_x ⊗ P`, which after the interaction displaces
//! mode `a` by `±s/2` depending on the `σ_x` eigenvalue. Postselecting the
//! polarization on `|H⟩` leaves the pointer in
//!
//! ```text
//! |Ψ⟩ = (κ/2) [ (1 + w) D(s/2) + (1 − w) D(−s/2) ] |φ⟩
//! ```
//!
//! with `w = e^{iδ} tan(α/2)` the weak value.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The five physical knobs of one measurement scenario.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Two-mode squeezing strength `λ ≥ 0`.
    pub lambda: f64,
    /// Squeezing phase `θ`; only the Fock oracle supports `θ ≠ 0`.
    pub theta: f64,
    /// Measurement strength `s = gt/σ ≥ 0`.
    pub s: f64,
    /// Preselection polar angle, `0 ≤ α < π`.
    pub alpha: f64,
    /// Preselection relative phase, `0 ≤ δ < 2π`.
    pub delta: f64,
}

impl ModelParams {
    /// Parameters with zero squeezing phase, validated.
    pub fn new(lambda: f64, s: f64, alpha: f64, delta: f64) -> Result<Self> {
        let params = Self {
            lambda,
            theta: 0.0,
            s,
            alpha,
            delta,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        self.theta = theta;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_range("lambda", self.lambda, 0.0, f64::INFINITY, "[0, inf)")?;
        check_range("s", self.s, 0.0, f64::INFINITY, "[0, inf)")?;
        check_range("theta", self.theta, 0.0, TAU, "[0, 2pi)")?;
        check_range("alpha", self.alpha, 0.0, PI, "[0, pi)")?;
        check_range("delta", self.delta, 0.0, TAU, "[0, 2pi)")?;
        Ok(())
    }

    pub fn weak_value(&self) -> Result<WeakValue> {
        weak_value(self.alpha, self.delta)
    }
}

fn check_range(
    what: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    domain: &'static str,
) -> Result<()> {
    if value.is_finite() && value >= lo && value < hi {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value,
            domain,
        })
    }
}

/// Weak value `⟨σ_x⟩_w` of the measured polarization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakValue {
    pub re: f64,
    pub im: f64,
    /// `re² + im²`, cached.
    pub modulus_sq: f64,
}

impl WeakValue {
    pub fn from_complex(w: C64) -> Self {
        Self {
            re: w.re,
            im: w.im,
            modulus_sq: w.re * w.re + w.im * w.im,
        }
    }

    pub fn as_complex(&self) -> C64 {
        C64::new(self.re, self.im)
    }
}

/// `e^{iδ} tan(α/2)`, the ratio `⟨H|σ_x|ψ_i⟩ / ⟨H|ψ_i⟩`.
///
/// `α = π` is rejected: the preselected state is then orthogonal to the
/// postselected one and the weak value is unbounded.
pub fn weak_value(alpha: f64, delta: f64) -> Result<WeakValue> {
    check_range("alpha", alpha, 0.0, PI, "[0, pi)")?;
    check_range("delta", delta, 0.0, TAU, "[0, 2pi)")?;
    let t = (alpha / 2.0).tan();
    // δ = 0 must give an exactly real weak value.
    let w = if delta == 0.0 {
        C64::new(t, 0.0)
    } else {
        C64::from_polar(t, delta)
    };
    Ok(WeakValue::from_complex(w))
}

/// Normalization of the postselected pointer state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizationContext {
    /// `⟨φ|D(s)|φ⟩ = exp(−s² cosh(2λ)/2)`, the overlap of the two branches.
    pub beta: f64,
    /// `κ = √2 [1 + |w|² + (1 − |w|²) β]^{−1/2}`.
    pub kappa: f64,
    /// Exact postselection probability `cos²(α/2) / κ²`.
    pub p_post: f64,
}

pub fn normalization(params: &ModelParams, w: &WeakValue) -> NormalizationContext {
    let beta = branch_overlap(params.s, params.lambda);
    let bracket = 1.0 + w.modulus_sq + (1.0 - w.modulus_sq) * beta;
    assert!(
        bracket > 0.0,
        "normalization bracket must be positive for beta in (0, 1], got {bracket}"
    );
    let kappa = (2.0 / bracket).sqrt();
    let c = (params.alpha / 2.0).cos();
    NormalizationContext {
        beta,
        kappa,
        p_post: c * c / (kappa * kappa),
    }
}

/// `exp(−s² cosh(2λ)/2)`.
pub fn branch_overlap(s: f64, lambda: f64) -> f64 {
    (-0.5 * s * s * (2.0 * lambda).cosh()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_value_examples() {
        let w = weak_value(0.0, 0.0).unwrap();
        assert_eq!((w.re, w.im, w.modulus_sq), (0.0, 0.0, 0.0));

        let w = weak_value(PI / 2.0, 0.0).unwrap();
        assert!((w.re - 1.0).abs() < 1e-15);
        assert_eq!(w.im, 0.0);

        let w = weak_value(8.0 * PI / 9.0, 0.0).unwrap();
        assert!((w.re - (4.0 * PI / 9.0).tan()).abs() < 1e-12);
        assert!((w.re - 5.6713).abs() < 1e-4);
        assert_eq!(w.im, 0.0);
    }

    #[test]
    fn weak_value_complex_phase() {
        let w = weak_value(PI / 3.0, PI / 4.0).unwrap();
        let t = (PI / 6.0).tan();
        assert!((w.re - t / 2f64.sqrt()).abs() < 1e-15);
        assert!((w.im - t / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(w.modulus_sq, w.re * w.re + w.im * w.im);
    }

    #[test]
    fn weak_value_rejects_alpha_pi() {
        assert!(matches!(
            weak_value(PI, 0.0),
            Err(Error::Domain { what: "alpha", .. })
        ));
        assert!(weak_value(-0.1, 0.0).is_err());
        assert!(weak_value(0.5, TAU).is_err());
        assert!(weak_value(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn weak_value_diverges_near_pi() {
        let eps = 1e-3;
        let w = weak_value(PI - eps, 0.0).unwrap();
        assert!(w.modulus_sq.sqrt() > 1.0 / eps);
    }

    #[test]
    fn normalization_without_coupling() {
        for lambda in [0.0, 0.4, 1.5] {
            let p = ModelParams::new(lambda, 0.0, PI / 2.0, 0.0).unwrap();
            let n = normalization(&p, &p.weak_value().unwrap());
            assert_eq!(n.beta, 1.0);
            assert!((n.kappa - 1.0).abs() < 1e-15);
            assert!((n.p_post - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn beta_value() {
        let p = ModelParams::new(0.1, 0.5, 0.0, 0.0).unwrap();
        let n = normalization(&p, &p.weak_value().unwrap());
        assert!((n.beta - (-0.125 * 0.2f64.cosh()).exp()).abs() < 1e-15);
        assert!((n.beta - 0.8803).abs() < 1e-4);
        assert!(n.beta < 1.0);
    }

    #[test]
    fn p_post_nonincreasing_in_weak_value() {
        for lambda in [0.1, 0.5, 1.5] {
            for s in [0.1, 0.5, 2.0] {
                let mut last = f64::INFINITY;
                for i in 0..40 {
                    let alpha = i as f64 * 0.95 * PI / 39.0;
                    let p = ModelParams::new(lambda, s, alpha, 0.0).unwrap();
                    let n = normalization(&p, &p.weak_value().unwrap());
                    assert!(
                        n.p_post <= last + 1e-15,
                        "lambda={lambda} s={s} alpha={alpha}"
                    );
                    assert!(n.p_post > 0.0 && n.p_post <= 1.0);
                    last = n.p_post;
                }
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, -0.1, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, 0.1, PI, 0.0).is_err());
        let p = ModelParams::new(1.0, 0.1, 0.2, 0.0).unwrap();
        assert!(p.with_theta(1.0).is_ok());
        assert!(p.with_theta(7.0).is_err());
    }
}
