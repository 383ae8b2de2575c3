//! Analytic moments of the postselected pointer state.
//!
//! Every moment splits over the two displaced branches of the state:
//!
//! ```text
//! ⟨O⟩ = (κ²/2) [ (1+|w|²) D + 2 Re(w) R + (1−|w|²) β X − 2i Im(w) β Y ]
//! ```
//!
//! with `A_{εε'} = ⟨φ|D(εs/2)† O D(ε's/2)|φ⟩` and
//! `D = (A₊₊+A₋₋)/2`, `R = (A₊₊−A₋₋)/2`, `X = (A₊₋+A₋₊)/2β`, `Y = (A₊₋−A₋₊)/2β`.
//! [`BranchTerms`] holds those four numbers for one operator.
//!
//! Several of the reference expressions these were checked against contain
//! errors; see `FORMULA_NOTES.md` and [`printed`] for the uncorrected forms.

pub mod helpers;
pub mod printed;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{normalization, ModelParams, NormalizationContext, WeakValue};
use crate::moments::{realize, scaled_discrepancy_c, MomentTable};
pub use helpers::{helpers, HelperSymbols};

/// Largest tolerated disagreement between independently computed conjugate
/// partners, and largest imaginary residue on a Hermitian moment.
pub const PARTNER_TOL: f64 = 1e-12;

/// Branch decomposition of one operator's expectation value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct BranchTerms {
    pub direct: f64,
    pub odd: f64,
    pub cross: f64,
    pub cross_odd: f64,
}

impl BranchTerms {
    fn even(direct: f64, cross: f64) -> Self {
        Self {
            direct,
            cross,
            ..Self::default()
        }
    }

    pub fn combine(&self, norm: &NormalizationContext, w: &WeakValue) -> C64 {
        let k = norm.kappa * norm.kappa / 2.0;
        let re = (1.0 + w.modulus_sq) * self.direct
            + 2.0 * w.re * self.odd
            + (1.0 - w.modulus_sq) * norm.beta * self.cross;
        let im = -2.0 * w.im * norm.beta * self.cross_odd;
        C64::new(k * re, k * im)
    }
}

/// Normally ordered operators with a closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    A,
    Ad,
    B,
    Bd,
    A2,
    Ad2,
    B2,
    Bd2,
    Na,
    Nb,
    Ab,
    Adbd,
    Adb,
    Abd,
    Nab,
    Aa2,
    Bb2,
}

/// Hyperbolic functions of `λ` and powers of `s` for one `(s, λ)` pair,
/// shared by every operator.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClosedFormKernel {
    pub s: f64,
    pub lambda: f64,
    pub helpers: HelperSymbols,
    sh2: f64,
    c2: f64,
    s2: f64,
}

impl ClosedFormKernel {
    pub fn new(s: f64, lambda: f64) -> Self {
        Self {
            s,
            lambda,
            helpers: helpers(s, lambda),
            sh2: lambda.sinh().powi(2),
            c2: (2.0 * lambda).cosh(),
            s2: (2.0 * lambda).sinh(),
        }
    }

    pub fn terms(&self, op: Op) -> BranchTerms {
        let h = &self.helpers;
        let s = self.s;
        let ss = s * s;
        let s4 = ss * ss;
        let (sh2, c2, s2) = (self.sh2, self.c2, self.s2);
        match op {
            Op::A => BranchTerms {
                odd: s / 2.0,
                cross_odd: -(h.h1 - s / 2.0),
                ..Default::default()
            },
            Op::Ad => BranchTerms {
                odd: s / 2.0,
                cross_odd: -(h.h11 - s / 2.0),
                ..Default::default()
            },
            Op::B => BranchTerms {
                cross_odd: -h.p1,
                ..Default::default()
            },
            Op::Bd => BranchTerms {
                cross_odd: h.p1,
                ..Default::default()
            },
            Op::A2 => BranchTerms::even(ss / 4.0, h.h2 - s * h.h1 + ss / 4.0),
            Op::Ad2 => BranchTerms::even(ss / 4.0, h.h22 - s * h.h11 + ss / 4.0),
            Op::B2 | Op::Bd2 => BranchTerms::even(0.0, h.p2),
            Op::Na => BranchTerms::even(sh2 + ss / 4.0, h.h3 - s / 2.0 * (h.h11 + h.h1) + ss / 4.0),
            Op::Nb => BranchTerms::even(sh2, h.h3),
            Op::Ab | Op::Adbd => BranchTerms::even(s2 / 2.0, (h.f1 + h.f11) / 2.0),
            Op::Adb | Op::Abd => BranchTerms::even(0.0, (h.m1 + h.m2) / 2.0),
            Op::Nab => BranchTerms::even(
                sh2 * (c2 + ss / 4.0),
                sh2 * c2 - ss / 4.0 * sh2 * (4.0 * c2 * c2 + 2.0 * c2 - 1.0)
                    + s4 / 16.0 * s2 * s2 * c2 * c2,
            ),
            Op::Aa2 => BranchTerms::even(
                2.0 * sh2 * sh2 + ss * sh2 + s4 / 16.0,
                2.0 * sh2 * sh2 - ss * sh2 * c2 * c2 + s4 / 16.0 * c2.powi(4),
            ),
            Op::Bb2 => BranchTerms::even(
                2.0 * sh2 * sh2,
                2.0 * sh2 * sh2 - ss * sh2 * s2 * s2 + s4 / 16.0 * s2.powi(4),
            ),
        }
    }
}

/// Moments of the postselected state `|Ψ⟩`.
///
/// Conjugate partners are evaluated from their own branch terms and
/// required to agree with the conjugate of the stored field.
pub fn moments_final(params: &ModelParams) -> Result<MomentTable> {
    params.validate()?;
    if params.theta != 0.0 {
        return Err(Error::Unsupported(
            "closed form requires theta = 0; use the Fock oracle".into(),
        ));
    }
    let w = params.weak_value()?;
    let norm = normalization(params, &w);
    let kernel = ClosedFormKernel::new(params.s, params.lambda);
    let ev = |op| kernel.terms(op).combine(&norm, &w);

    let pairs = [
        ("ex_a", Op::A, Op::Ad),
        ("ex_b", Op::B, Op::Bd),
        ("ex_a2", Op::A2, Op::Ad2),
        ("ex_b2", Op::B2, Op::Bd2),
        ("ex_ab", Op::Ab, Op::Adbd),
        ("ex_adb", Op::Adb, Op::Abd),
    ];
    for (field, op, partner) in pairs {
        let difference = scaled_discrepancy_c(ev(op).conj(), ev(partner));
        if difference > PARTNER_TOL {
            return Err(Error::ConjugateMismatch { field, difference });
        }
    }

    Ok(MomentTable {
        ex_a: ev(Op::A),
        ex_b: ev(Op::B),
        ex_a2: ev(Op::A2),
        ex_b2: ev(Op::B2),
        n_a: realize("n_a", ev(Op::Na), PARTNER_TOL)?,
        n_b: realize("n_b", ev(Op::Nb), PARTNER_TOL)?,
        ex_ab: ev(Op::Ab),
        ex_adb: ev(Op::Adb),
        n_ab: realize("n_ab", ev(Op::Nab), PARTNER_TOL)?,
        aa2: realize("aa2", ev(Op::Aa2), PARTNER_TOL)?,
        bb2: realize("bb2", ev(Op::Bb2), PARTNER_TOL)?,
    })
}

/// Moments of the two-mode squeezed vacuum itself.
pub fn moments_initial(lambda: f64) -> MomentTable {
    let sh2 = lambda.sinh().powi(2);
    MomentTable {
        n_a: sh2,
        n_b: sh2,
        ex_ab: C64::new((2.0 * lambda).sinh() / 2.0, 0.0),
        n_ab: sh2 * (2.0 * lambda).cosh(),
        aa2: 2.0 * sh2 * sh2,
        bb2: 2.0 * sh2 * sh2,
        ..Default::default()
    }
}
