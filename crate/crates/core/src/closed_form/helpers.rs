use serde::{Deserialize, Serialize};

/// The dimensionless scalars of `(s, λ)` the reference moment expressions are
/// written in.
///
/// Values follow the reference definitions literally, including the ones
/// whose downstream moment expressions turned out to be wrong (see
/// `FORMULA_NOTES.md`); the corrected backend only consumes the subset it
/// has verified.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HelperSymbols {
    pub k0: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub k5: f64,
    pub t0: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub f1: f64,
    pub f11: f64,
    pub m1: f64,
    pub m2: f64,
    pub h1: f64,
    pub h11: f64,
    pub h2: f64,
    pub h22: f64,
    pub h3: f64,
    pub p1: f64,
    pub p2: f64,
}

pub fn helpers(s: f64, lambda: f64) -> HelperSymbols {
    let sh = lambda.sinh();
    let ch = lambda.cosh();
    let sh2 = sh * sh;
    let ch2 = ch * ch;
    let c2 = (2.0 * lambda).cosh();
    let s2 = (2.0 * lambda).sinh();
    let ss = s * s;
    let s4 = ss * ss;

    HelperSymbols {
        k0: sh2 * c2 + s4 / 16.0 + ss / 2.0 * sh * (sh + ch),
        k1: sh2 * c2 + ss * s2 * s2 / 4.0 * (ss / 4.0 * s2 * s2 - 4.0 * sh2 - 1.0),
        k2: s * s2 / 8.0 * (4.0 * c2 - ss * s2 * s2),
        k3: s * s2 * sh2 / 2.0 * (ss * ch2 - 2.0),
        k4: s * sh2 * (ss * sh2 * ch2 - c2),
        k5: s * s2 * s2 / 4.0 * (2.0 - ss * ch2),
        t0: 2.0 * sh2 * sh2 + ss * sh * ch + s4 / 16.0,
        t1: ss * sh2 * sh2 * ch2 * (ss * ch2 - 4.0) + 2.0 * sh2 * sh2,
        t2: s * sh2 * sh2 * (ss * ch2 - 2.0),
        t3: s / 4.0 * s2 * s2 * (ss * sh2 + 2.0),
        t4: s * ch * sh * sh2 * (2.0 - ss * ch2),
        f1: 0.5 * s2 * (1.0 - ss * ch2),
        f11: 0.5 * s2 * (1.0 - ss * sh2),
        m1: ss * sh * ch2 * ch,
        m2: ss * sh2 * sh * ch,
        h1: s * ch2,
        h11: -s * sh2,
        h2: ss * ch2 * ch2,
        h22: ss * sh2 * sh2,
        h3: sh2 * (1.0 - ss * ch2),
        p1: -s / 2.0 * s2,
        p2: ss / 4.0 * s2 * s2,
    }
}

/// `k0` in its compact form `sinh²λ cosh 2λ + (s²/2) e^λ sinh λ + s⁴/16`.
pub fn k0_compact(s: f64, lambda: f64) -> f64 {
    let sh = lambda.sinh();
    sh * sh * (2.0 * lambda).cosh() + s * s / 2.0 * lambda.exp() * sh + s.powi(4) / 16.0
}

/// `k4` in its compact form `s sinh²λ [(s²/4) sinh² 2λ − cosh 2λ]`.
pub fn k4_compact(s: f64, lambda: f64) -> f64 {
    let sh = lambda.sinh();
    let s2 = (2.0 * lambda).sinh();
    s * sh * sh * (s * s / 4.0 * s2 * s2 - (2.0 * lambda).cosh())
}
