//! The operator moments every observable is built from.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First, second and fourth moments of the two-mode field under one state.
///
/// Conjugate partners (`⟨a†⟩`, `⟨a†b†⟩`, `⟨ab†⟩`, ...) are not stored; they
/// follow from the stored fields by complex conjugation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    /// `⟨a⟩`
    pub ex_a: C64,
    /// `⟨b⟩`
    pub ex_b: C64,
    /// `⟨a²⟩`
    pub ex_a2: C64,
    /// `⟨b²⟩`
    pub ex_b2: C64,
    /// `⟨a†a⟩`
    pub n_a: f64,
    /// `⟨b†b⟩`
    pub n_b: f64,
    /// `⟨ab⟩`
    pub ex_ab: C64,
    /// `⟨a†b⟩`
    pub ex_adb: C64,
    /// `⟨a†a b†b⟩`
    pub n_ab: f64,
    /// `⟨a†² a²⟩`
    pub aa2: f64,
    /// `⟨b†² b²⟩`
    pub bb2: f64,
}

/// Names of the table entries, in [`MomentTable::entries`] order.
pub const MOMENT_FIELDS: [&str; 11] = [
    "ex_a", "ex_b", "ex_a2", "ex_b2", "n_a", "n_b", "ex_ab", "ex_adb", "n_ab", "aa2", "bb2",
];

impl MomentTable {
    pub fn ex_ad(&self) -> C64 {
        self.ex_a.conj()
    }

    pub fn ex_bd(&self) -> C64 {
        self.ex_b.conj()
    }

    pub fn ex_ad2(&self) -> C64 {
        self.ex_a2.conj()
    }

    pub fn ex_bd2(&self) -> C64 {
        self.ex_b2.conj()
    }

    /// `⟨a†b†⟩`
    pub fn ex_adbd(&self) -> C64 {
        self.ex_ab.conj()
    }

    /// `⟨ab†⟩`
    pub fn ex_abd(&self) -> C64 {
        self.ex_adb.conj()
    }

    /// All fields as complex numbers, named.
    pub fn entries(&self) -> [(&'static str, C64); 11] {
        let r = |x: f64| C64::new(x, 0.0);
        [
            ("ex_a", self.ex_a),
            ("ex_b", self.ex_b),
            ("ex_a2", self.ex_a2),
            ("ex_b2", self.ex_b2),
            ("n_a", r(self.n_a)),
            ("n_b", r(self.n_b)),
            ("ex_ab", self.ex_ab),
            ("ex_adb", self.ex_adb),
            ("n_ab", r(self.n_ab)),
            ("aa2", r(self.aa2)),
            ("bb2", r(self.bb2)),
        ]
    }

    /// Largest [`scaled_discrepancy`] over all fields, with the field name.
    pub fn max_discrepancy(&self, other: &MomentTable) -> (&'static str, f64) {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|((name, x), (_, y))| (*name, scaled_discrepancy_c(*x, *y)))
            .fold(("", 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc })
    }
}

/// Magnitudes below this are compared absolutely: a relative tolerance `r`
/// then acts as an absolute tolerance `r * DISCREPANCY_FLOOR`.
pub const DISCREPANCY_FLOOR: f64 = 1e-2;

/// `|x − y| / max(|x|, |y|, DISCREPANCY_FLOOR)`.
///
/// With `DISCREPANCY_FLOOR = 1e-2`, a bound of `1e-8` on this number is a
/// `1e-8` relative tolerance with a `1e-10` absolute floor.
pub fn scaled_discrepancy(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(DISCREPANCY_FLOOR)
}

pub fn scaled_discrepancy_c(x: C64, y: C64) -> f64 {
    (x - y).norm() / x.norm().max(y.norm()).max(DISCREPANCY_FLOOR)
}

/// Stores a numerically real expectation value as `f64`, rejecting
/// imaginary parts above `limit * max(1, |re|)`.
pub fn realize(field: &'static str, z: C64, limit: f64) -> Result<f64> {
    let scale = z.re.abs().max(1.0);
    if z.im.abs() > limit * scale {
        return Err(Error::ImaginaryResidue {
            field,
            residue: z.im.abs(),
            limit: limit * scale,
        });
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrepancy_floor() {
        assert!(scaled_discrepancy(0.0, 1e-10) <= 1e-8);
        assert!(scaled_discrepancy(0.0, 2e-10) > 1e-8);
        assert!(scaled_discrepancy(100.0, 100.0 + 1e-7) < 1e-8 + 1e-18);
    }

    #[test]
    fn realize_rejects_residue() {
        assert_eq!(realize("n_a", C64::new(2.0, 1e-14), 1e-12).unwrap(), 2.0);
        assert!(matches!(
            realize("n_a", C64::new(2.0, 1e-9), 1e-12),
            Err(Error::ImaginaryResidue { field: "n_a", .. })
        ));
    }

    #[test]
    fn max_discrepancy_names_field() {
        let a = MomentTable {
            n_ab: 10.0,
            ..Default::default()
        };
        let mut b = a;
        b.n_ab = 10.5;
        let (field, d) = a.max_discrepancy(&b);
        assert_eq!(field, "n_ab");
        assert!((d - 0.5 / 10.5).abs() < 1e-15);
    }
}
