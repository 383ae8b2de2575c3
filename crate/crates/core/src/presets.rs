//! Frozen sweeps reproducing each plotted panel, one CSV per panel.
//!
//! Panels that vary "the weak value" use the curve set
//! `α ∈ {0, π/3, 2π/3, 8π/9}`; panels that vary the coupling use
//! `s ∈ {0, 0.1, 0.32, 0.5, 1, 2}`. All panels use `δ = 0` and 201 points.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::model::ModelParams;
use crate::observables::{Backend, DEFAULT_ORACLE_TOL};
use crate::sweep::{Axis, Observable, Range, SweepSpec, SweepTable};

pub const PRESET_POINTS: usize = 201;

/// `(label, α)` for the weak-value curve family.
pub const ALPHA_CURVES: [(&str, f64); 4] = [
    ("0", 0.0),
    ("pi/3", PI / 3.0),
    ("2pi/3", 2.0 * PI / 3.0),
    ("8pi/9", 8.0 * PI / 9.0),
];

/// `(label, s)` for the coupling curve family.
pub const S_CURVES: [(&str, f64); 6] = [
    ("0", 0.0),
    ("0.1", 0.1),
    ("0.32", 0.32),
    ("0.5", 0.5),
    ("1", 1.0),
    ("2", 2.0),
];

/// Upper end of α sweeps; the weak value diverges at π.
pub const ALPHA_STOP: f64 = 0.95 * PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFamily {
    Alpha,
    S,
}

/// One plotted panel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FigurePreset {
    pub id: &'static str,
    pub observable: Observable,
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    /// Held values of λ, s and α; the swept and curve parameters are
    /// overwritten per point.
    pub lambda: f64,
    pub s: f64,
    pub alpha: f64,
    pub curves: CurveFamily,
}

const fn preset(
    id: &'static str,
    observable: Observable,
    axis: Axis,
    stop: f64,
    (lambda, s, alpha): (f64, f64, f64),
    curves: CurveFamily,
) -> FigurePreset {
    FigurePreset {
        id,
        observable,
        axis,
        start: 0.0,
        stop,
        lambda,
        s,
        alpha,
        curves,
    }
}

const A89: f64 = 8.0 * PI / 9.0;

pub const PRESETS: [FigurePreset; 18] = {
    use CurveFamily as C;
    use Observable as O;
    [
        preset("fig1a", O::Q1, Axis::S, 2.0, (0.1, 0.0, 0.0), C::Alpha),
        preset("fig1b", O::Q1, Axis::Lambda, 1.0, (0.0, 0.2, 0.0), C::Alpha),
        preset("fig2a", O::Q2, Axis::S, 2.0, (0.1, 0.0, 0.0), C::Alpha),
        preset("fig2b", O::Q2, Axis::Lambda, 1.0, (0.0, 0.5, 0.0), C::Alpha),
        preset("fig3a", O::G2Ab, Axis::Lambda, 3.0, (0.0, 0.0, A89), C::S),
        preset("fig3b", O::G2Ab, Axis::S, 3.0, (3.0, 0.0, 0.0), C::Alpha),
        preset("fig4a", O::I0, Axis::Lambda, 2.0, (0.0, 0.0, A89), C::S),
        preset("fig4b", O::I0, Axis::Lambda, 2.0, (0.0, 0.5, 0.0), C::Alpha),
        preset("fig4c", O::I0, Axis::S, 2.0, (1.5, 0.0, 0.0), C::Alpha),
        preset(
            "fig4d",
            O::I0,
            Axis::Alpha,
            ALPHA_STOP,
            (1.5, 0.0, 0.0),
            C::S,
        ),
        preset("fig5a", O::EHz, Axis::Lambda, 2.0, (0.0, 0.0, A89), C::S),
        preset(
            "fig5b",
            O::EHz,
            Axis::Lambda,
            2.0,
            (0.0, 0.5, 0.0),
            C::Alpha,
        ),
        preset("fig5c", O::EHz, Axis::S, 2.0, (1.5, 0.0, 0.0), C::Alpha),
        preset(
            "fig5d",
            O::EHz,
            Axis::Alpha,
            ALPHA_STOP,
            (1.5, 0.0, 0.0),
            C::S,
        ),
        preset(
            "fig6a",
            O::Epr,
            Axis::Lambda,
            2.0,
            (0.0, 0.5, 0.0),
            C::Alpha,
        ),
        preset("fig6b", O::Epr, Axis::S, 2.0, (1.5, 0.0, 0.0), C::Alpha),
        preset(
            "fig6c",
            O::Epr,
            Axis::Alpha,
            ALPHA_STOP,
            (1.5, 0.0, 0.0),
            C::S,
        ),
        preset("fig7", O::Fidelity, Axis::S, 2.0, (1.5, 0.0, 0.0), C::Alpha),
    ]
};

pub fn find_preset(id: &str) -> Option<&'static FigurePreset> {
    PRESETS.iter().find(|p| p.id == id)
}

/// One curve of a panel: its column name and the sweep producing it.
#[derive(Clone, Debug, Serialize)]
pub struct PresetCurve {
    pub column: String,
    pub sweep: SweepSpec,
}

impl FigurePreset {
    pub fn range(&self) -> Range {
        Range {
            start: self.start,
            stop: self.stop,
            n_points: PRESET_POINTS,
        }
    }

    pub fn curves(&self, backend: Backend) -> Vec<PresetCurve> {
        let labels: Vec<(&str, f64)> = match self.curves {
            CurveFamily::Alpha => ALPHA_CURVES.to_vec(),
            CurveFamily::S => S_CURVES.to_vec(),
        };
        labels
            .into_iter()
            .map(|(label, value)| {
                let mut fixed = ModelParams {
                    lambda: self.lambda,
                    theta: 0.0,
                    s: self.s,
                    alpha: self.alpha,
                    delta: 0.0,
                };
                let key = match self.curves {
                    CurveFamily::Alpha => {
                        fixed.alpha = value;
                        "alpha"
                    }
                    CurveFamily::S => {
                        fixed.s = value;
                        "s"
                    }
                };
                PresetCurve {
                    column: format!("{}[{key}={label}]", self.observable.name()),
                    sweep: SweepSpec {
                        axis: self.axis,
                        range: self.range(),
                        fixed,
                        backend,
                        outputs: vec![self.observable],
                    },
                }
            })
            .collect()
    }

    /// Axis column followed by one column per curve.
    pub fn run(&self, backend: Backend, oracle_tol: f64) -> Result<SweepTable> {
        let curves = self.curves(backend);
        let columns = curves
            .par_iter()
            .map(|c| c.sweep.run(oracle_tol))
            .collect::<Result<Vec<_>>>()?;
        let mut header = vec![self.axis.name().to_string()];
        header.extend(curves.iter().map(|c| c.column.clone()));
        let rows = self
            .range()
            .values()
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let mut row = vec![Some(v)];
                row.extend(columns.iter().map(|t| t.rows[i][1]));
                row
            })
            .collect();
        Ok(SweepTable { header, rows })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifestEntry {
    pub id: &'static str,
    pub file: String,
    pub observable: &'static str,
    pub axis: &'static str,
    pub range: Range,
    pub lambda: Option<f64>,
    pub s: Option<f64>,
    pub alpha: Option<f64>,
    pub delta: f64,
    pub curves: Vec<ManifestCurve>,
    pub backend: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifestCurve {
    pub column: String,
    pub lambda: Option<f64>,
    pub s: Option<f64>,
    pub alpha: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub points_per_curve: usize,
    pub presets: Vec<ManifestEntry>,
}

fn manifest_entry(p: &FigurePreset, backend: Backend) -> ManifestEntry {
    let held = |axis: Axis, value: f64| {
        let curve_axis = match p.curves {
            CurveFamily::Alpha => Axis::Alpha,
            CurveFamily::S => Axis::S,
        };
        (p.axis != axis && curve_axis != axis).then_some(value)
    };
    ManifestEntry {
        id: p.id,
        file: format!("{}.csv", p.id),
        observable: p.observable.name(),
        axis: p.axis.name(),
        range: p.range(),
        lambda: held(Axis::Lambda, p.lambda),
        s: held(Axis::S, p.s),
        alpha: held(Axis::Alpha, p.alpha),
        delta: 0.0,
        curves: p
            .curves(backend)
            .into_iter()
            .map(|c| {
                let f = c.sweep.fixed;
                ManifestCurve {
                    column: c.column,
                    lambda: (p.axis != Axis::Lambda).then_some(f.lambda),
                    s: (p.axis != Axis::S).then_some(f.s),
                    alpha: (p.axis != Axis::Alpha).then_some(f.alpha),
                }
            })
            .collect(),
        backend: backend.name(),
    }
}

/// Writes every preset CSV and `manifest.json` into `dir`.
pub fn write_figures(dir: &Path, backend: Backend, oracle_tol: f64) -> Result<Manifest> {
    fs::create_dir_all(dir)?;
    let tables = PRESETS
        .par_iter()
        .map(|p| p.run(backend, oracle_tol))
        .collect::<Result<Vec<_>>>()?;
    for (p, t) in PRESETS.iter().zip(&tables) {
        t.write_csv(fs::File::create(dir.join(format!("{}.csv", p.id)))?)?;
    }
    let manifest = Manifest {
        points_per_curve: PRESET_POINTS,
        presets: PRESETS.iter().map(|p| manifest_entry(p, backend)).collect(),
    };
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    fs::write(dir.join("manifest.json"), json)?;
    Ok(manifest)
}

/// [`write_figures`] with the closed form.
pub fn write_default_figures(dir: &Path) -> Result<Manifest> {
    write_figures(dir, Backend::Closed, DEFAULT_ORACLE_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Panel table: id, plotted quantity, swept axis, held parameter and
    /// its value, curve family.
    const PANELS: [(&str, &str, &str, &str, f64, &str); 18] = [
        ("fig1a", "q1", "s", "lambda", 0.1, "alpha"),
        ("fig1b", "q1", "lambda", "s", 0.2, "alpha"),
        ("fig2a", "q2", "s", "lambda", 0.1, "alpha"),
        ("fig2b", "q2", "lambda", "s", 0.5, "alpha"),
        ("fig3a", "g2_ab", "lambda", "alpha", 8.0 * PI / 9.0, "s"),
        ("fig3b", "g2_ab", "s", "lambda", 3.0, "alpha"),
        ("fig4a", "i0", "lambda", "alpha", 8.0 * PI / 9.0, "s"),
        ("fig4b", "i0", "lambda", "s", 0.5, "alpha"),
        ("fig4c", "i0", "s", "lambda", 1.5, "alpha"),
        ("fig4d", "i0", "alpha", "lambda", 1.5, "s"),
        ("fig5a", "e_hz", "lambda", "alpha", 8.0 * PI / 9.0, "s"),
        ("fig5b", "e_hz", "lambda", "s", 0.5, "alpha"),
        ("fig5c", "e_hz", "s", "lambda", 1.5, "alpha"),
        ("fig5d", "e_hz", "alpha", "lambda", 1.5, "s"),
        ("fig6a", "epr", "lambda", "s", 0.5, "alpha"),
        ("fig6b", "epr", "s", "lambda", 1.5, "alpha"),
        ("fig6c", "epr", "alpha", "lambda", 1.5, "s"),
        ("fig7", "fidelity", "s", "lambda", 1.5, "alpha"),
    ];

    #[test]
    fn presets_match_panels() {
        for (p, (id, obs, axis, held, value, family)) in PRESETS.iter().zip(PANELS) {
            assert_eq!(p.id, id);
            assert_eq!(p.observable.name(), obs, "{id}");
            assert_eq!(p.axis.name(), axis, "{id}");
            let m = manifest_entry(p, Backend::Closed);
            let got = match held {
                "lambda" => m.lambda,
                "s" => m.s,
                "alpha" => m.alpha,
                _ => unreachable!(),
            };
            assert_eq!(got, Some(value), "{id}");
            let fam = match p.curves {
                CurveFamily::Alpha => "alpha",
                CurveFamily::S => "s",
            };
            assert_eq!(fam, family, "{id}");
            assert_eq!(m.delta, 0.0);
        }
    }

    #[test]
    fn axis_ranges() {
        for p in &PRESETS {
            let stop = match (p.id, p.axis) {
                ("fig1b" | "fig2b", _) => 1.0,
                ("fig3a" | "fig3b", _) => 3.0,
                (_, Axis::Alpha) => ALPHA_STOP,
                _ => 2.0,
            };
            assert_eq!((p.start, p.stop), (0.0, stop), "{}", p.id);
        }
    }

    #[test]
    fn fig7_starts_at_unit_fidelity() {
        let t = find_preset("fig7")
            .unwrap()
            .run(Backend::Closed, DEFAULT_ORACLE_TOL)
            .unwrap();
        assert_eq!(t.header.len(), 5);
        assert_eq!(t.header[4], "fidelity[alpha=8pi/9]");
        for c in &t.rows[0][1..] {
            assert!((c.unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn fig3b_starts_at_initial_correlation() {
        let t = find_preset("fig3b")
            .unwrap()
            .run(Backend::Closed, DEFAULT_ORACLE_TOL)
            .unwrap();
        let expect = 1.0 / 3f64.tanh().powi(2) + 1.0;
        for c in &t.rows[0][1..] {
            assert!((c.unwrap() - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn fig6a_separable_at_zero_squeezing() {
        // Mode b is vacuum, so the total variance is 2 plus twice the excess
        // quadrature variance of mode a, which vanishes only for w = 1.
        let t = find_preset("fig6a")
            .unwrap()
            .run(Backend::Closed, DEFAULT_ORACLE_TOL)
            .unwrap();
        for (c, (_, alpha)) in t.rows[0][1..].iter().zip(ALPHA_CURVES) {
            let p = ModelParams::new(0.0, 0.5, alpha, 0.0).unwrap();
            let m = crate::closed_form::moments_final(&p).unwrap();
            let expect = 2.0 + 2.0 * (m.n_a - m.ex_a.norm_sqr());
            assert!((c.unwrap() - expect).abs() < 1e-15);
            assert!(c.unwrap() > 2.0);
        }
    }
}
