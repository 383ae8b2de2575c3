//! The uncorrected reference moment expressions, kept for auditing.
//!
//! Several of these disagree with the Fock-space oracle; the corrected
//! expressions used by [`super::moments_final`] are documented entry by
//! entry in `FORMULA_NOTES.md`. Nothing in the library's evaluation path
//! reads from this module.

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::helpers::helpers;
use crate::error::{Error, Result};
use crate::model::{normalization, ModelParams};
use crate::moments::{scaled_discrepancy_c, MomentTable};

/// Every listed expectation value, including the separately printed
/// conjugate partners.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrintedMoments {
    pub a: C64,
    pub ad: C64,
    pub b: C64,
    pub bd: C64,
    pub a2: C64,
    pub ad2: C64,
    pub b2: C64,
    pub bd2: C64,
    pub na: f64,
    pub nb: f64,
    pub adb: C64,
    pub abd: C64,
    pub ab: C64,
    pub adbd: C64,
    pub nab: f64,
    pub aa2: f64,
    pub bb2: f64,
}

pub fn printed_moments(params: &ModelParams) -> Result<PrintedMoments> {
    if params.theta != 0.0 {
        return Err(Error::Unsupported(
            "printed expressions assume theta = 0".into(),
        ));
    }
    let w = params.weak_value()?;
    let norm = normalization(params, &w);
    let h = helpers(params.s, params.lambda);
    let s = params.s;
    let ss = s * s;
    let s4 = ss * ss;
    let beta = norm.beta;
    let k2 = norm.kappa * norm.kappa;
    let plus = 1.0 + w.modulus_sq;
    let minus = 1.0 - w.modulus_sq;
    let i = C64::i();
    let sh2 = params.lambda.sinh().powi(2);
    let s2 = (2.0 * params.lambda).sinh();

    let even = |direct: f64, cross: f64| k2 / 2.0 * (plus * direct + minus * cross * beta);
    let first = |sign: f64, helper: f64| k2 * (s / 2.0 * w.re + sign * i * w.im * helper * beta);

    Ok(PrintedMoments {
        a: first(-1.0, h.h1 - s / 2.0),
        ad: first(-1.0, h.h11 - s / 2.0),
        b: first(-1.0, h.p1 - s / 2.0),
        bd: first(1.0, h.p1 + s / 2.0),
        a2: even(ss / 4.0, h.h2 - s * h.h1 + ss / 4.0).into(),
        ad2: even(ss / 4.0, h.h22 - s * h.h11 + ss / 4.0).into(),
        b2: even(ss / 4.0, h.p2 - s * h.p1 + ss / 4.0).into(),
        bd2: even(ss / 4.0, h.p2 + s * h.p1 + ss / 4.0).into(),
        na: even(sh2 + ss / 4.0, h.h3 - s / 2.0 * (h.h11 + h.h1) + ss / 4.0),
        nb: even(sh2 + ss / 4.0, h.h3 + ss / 4.0),
        adb: even(ss / 4.0, h.m2 - s / 2.0 * (h.h11 + h.p1) + ss / 4.0).into(),
        abd: even(ss / 4.0, h.m1 - s / 2.0 * (h.h1 - h.p1) + ss / 4.0).into(),
        ab: even(
            0.5 * (s2 + ss / 2.0),
            h.f1 - s / 2.0 * (h.h1 + h.p1) + ss / 4.0,
        )
        .into(),
        adbd: even(
            0.5 * (s2 + ss / 2.0),
            h.f11 - s / 2.0 * (h.h11 - h.p1) + ss / 4.0,
        )
        .into(),
        nab: even(
            h.k0,
            h.k1 - s / 2.0 * (h.k2 + h.k3 + h.k4 + h.k5)
                + ss / 4.0 * (2.0 * h.h3 + h.m1 + h.m2 + h.f1 + h.f11)
                - s4 / 16.0,
        ),
        aa2: even(
            h.t0,
            h.t1 - s * (h.t2 + h.t3) + ss / 4.0 * (h.h22 + h.h2 + 4.0 * h.h3) - 3.0 * s4 / 16.0,
        ),
        bb2: even(
            h.t0,
            h.t1 - s * (h.t4 + h.t3) + ss / 2.0 * (h.p2 + 2.0 * h.h3) + s4 / 16.0,
        ),
    })
}

impl PrintedMoments {
    /// Conjugate pairs whose two printed expressions disagree by more than
    /// `tol` (scaled discrepancy).
    pub fn conjugate_violations(&self, tol: f64) -> Vec<(&'static str, f64)> {
        [
            ("a / a_dag", self.a, self.ad),
            ("b / b_dag", self.b, self.bd),
            ("a2 / a_dag2", self.a2, self.ad2),
            ("b2 / b_dag2", self.b2, self.bd2),
            ("a_dag b / a b_dag", self.adb, self.abd),
            ("a b / a_dag b_dag", self.ab, self.adbd),
        ]
        .into_iter()
        .map(|(name, x, y)| (name, scaled_discrepancy_c(x.conj(), y)))
        .filter(|(_, d)| *d > tol)
        .collect()
    }

    /// The primary expression of each pair, as a [`MomentTable`].
    pub fn to_table(&self) -> MomentTable {
        MomentTable {
            ex_a: self.a,
            ex_b: self.b,
            ex_a2: self.a2,
            ex_b2: self.b2,
            n_a: self.na,
            n_b: self.nb,
            ex_ab: self.ab,
            ex_adb: self.adb,
            n_ab: self.nab,
            aa2: self.aa2,
            bb2: self.bb2,
        }
    }
}
