use ndarray::{Array2, Zip};
use num_complex::Complex64 as C64;
use serde::Serialize;

use super::operators::{check_amplitude, for_each_displacement_element, OperatorMatrix};
use super::truncation::{choose_truncation, tmsv_deficit, TruncationSpec, MAX_N_MAX};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::moments::{realize, MomentTable};

/// Postselection probabilities below this are treated as no outcome at all.
pub const MIN_P_POST: f64 = 1e-300;

/// Largest imaginary residue tolerated on a Hermitian contraction.
pub const RESIDUE_TOL: f64 = 1e-12;

/// Rows at the top of each mode that must stay (nearly) empty.
pub const EDGE_ROWS: usize = 5;

/// Pure two-mode state, `coeffs[[m, n]]` being the amplitude on `|m⟩_a|n⟩_b`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeState {
    pub coeffs: Array2<C64>,
    pub norm_sq: f64,
}

impl TwoModeState {
    pub fn from_coeffs(coeffs: Array2<C64>) -> Self {
        let norm_sq = coeffs.iter().map(|z| z.norm_sqr()).sum();
        Self { coeffs, norm_sq }
    }

    pub fn vacuum(spec: &TruncationSpec) -> Self {
        let mut c = Array2::zeros((spec.dim(), spec.dim()));
        c[[0, 0]] = C64::new(1.0, 0.0);
        Self::from_coeffs(c)
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.nrows() - 1
    }

    pub fn normalize(&mut self) -> Result<()> {
        if !self.norm_sq.is_finite() || self.norm_sq <= 0.0 {
            return Err(Error::DegeneratePostselection(self.norm_sq));
        }
        let inv = 1.0 / self.norm_sq.sqrt();
        self.coeffs.mapv_inplace(|z| z * inv);
        self.norm_sq = self.coeffs.iter().map(|z| z.norm_sqr()).sum();
        Ok(())
    }

    /// `(op ⊗ I) |self⟩`.
    pub fn apply_mode_a(&self, op: &OperatorMatrix) -> Result<Self> {
        if op.dim() != self.coeffs.nrows() {
            return Err(Error::ShapeMismatch(op.0.dim(), self.coeffs.dim()));
        }
        Ok(Self::from_coeffs(op.0.dot(&self.coeffs)))
    }

    /// Probability on `|m, n⟩` with `m` or `n` above `n_max − EDGE_ROWS`.
    pub fn edge_mass(&self) -> f64 {
        let n_max = self.n_max();
        let start = n_max.saturating_sub(EDGE_ROWS) + 1;
        let mut mass = 0.0;
        for ((m, n), z) in self.coeffs.indexed_iter() {
            if m >= start || n >= start {
                mass += z.norm_sqr();
            }
        }
        mass / self.norm_sq
    }
}

/// Schmidt coefficients `(e^{iθ} tanh λ)ⁿ / cosh λ` on the diagonal, normalized.
pub fn tmsv_coefficients(lambda: f64, theta: f64, spec: &TruncationSpec) -> Result<TwoModeState> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::Domain {
            what: "lambda",
            value: lambda,
            domain: "[0, inf)",
        });
    }
    let deficit = tmsv_deficit(lambda, spec.n_max);
    if deficit >= spec.tail_tol {
        return Err(Error::Truncation(format!(
            "squeezed vacuum loses {deficit:e} >= {:e} at n_max = {}",
            spec.tail_tol, spec.n_max
        )));
    }
    let mut c = Array2::zeros((spec.dim(), spec.dim()));
    for (n, z) in schmidt_coefficients(lambda, theta, spec.n_max)
        .into_iter()
        .enumerate()
    {
        c[[n, n]] = z;
    }
    let mut state = TwoModeState::from_coeffs(c);
    state.normalize()?;
    Ok(state)
}

fn schmidt_coefficients(lambda: f64, theta: f64, n_max: usize) -> Vec<C64> {
    let t = lambda.tanh();
    let c0 = 1.0 / lambda.cosh();
    (0..=n_max)
        .map(|n| {
            let mag = c0 * t.powi(n as i32);
            if theta == 0.0 {
                C64::new(mag, 0.0)
            } else {
                C64::from_polar(mag, n as f64 * theta)
            }
        })
        .collect()
}

/// Postselected pointer state and its success probability.
///
/// Applies `½[(1+w) D(s/2) + (1−w) D(−s/2)] ⊗ I` to the normalized squeezed
/// vacuum. Since `D(−x)[m,n] = (−1)^{m−n} D(x)[m,n]`, the two branches fold
/// into one matrix weighted by `1` on even and `w` on odd diagonals, and the
/// diagonal input makes the product a column scaling.
pub fn build_final_state(
    params: &ModelParams,
    spec: &TruncationSpec,
) -> Result<(TwoModeState, f64)> {
    params.validate()?;
    let w = params.weak_value()?.as_complex();
    let input = tmsv_coefficients(params.lambda, params.theta, spec)?;
    let diag: Vec<C64> = (0..spec.dim()).map(|n| input.coeffs[[n, n]]).collect();

    let amplitude = C64::new(params.s / 2.0, 0.0);
    check_amplitude(amplitude, spec)?;

    let mut c = Array2::<C64>::zeros((spec.dim(), spec.dim()));
    for_each_displacement_element(amplitude, spec.n_max, |m, n, d| {
        let weight = if (m + n) % 2 == 0 {
            C64::new(1.0, 0.0)
        } else {
            w
        };
        c[[m, n]] = d * weight * diag[n];
    });

    let mut state = TwoModeState::from_coeffs(c);
    let cos_half = (params.alpha / 2.0).cos();
    let p_post = cos_half * cos_half * state.norm_sq;
    if p_post.is_nan() || p_post < MIN_P_POST {
        return Err(Error::DegeneratePostselection(p_post));
    }
    state.normalize()?;
    Ok((state, p_post))
}

/// Every [`MomentTable`] field by direct contraction of the coefficient
/// matrix with ladder operators on each mode.
pub fn moments_numeric(state: &TwoModeState, tail_tol: f64) -> Result<MomentTable> {
    let edge = state.edge_mass();
    if edge >= tail_tol {
        return Err(Error::Truncation(format!(
            "{edge:e} of the probability sits in the top {EDGE_ROWS} rows (limit {tail_tol:e})"
        )));
    }
    let c = &state.coeffs;
    let dim = c.nrows();
    let sq: Vec<f64> = (0..dim + 1).map(|n| (n as f64).sqrt()).collect();
    let z = C64::new(0.0, 0.0);
    let (mut ex_a, mut ex_b, mut ex_a2, mut ex_b2, mut ex_ab, mut ex_adb) = (z, z, z, z, z, z);
    let (mut n_a, mut n_b, mut n_ab, mut aa2, mut bb2) = (z, z, z, z, z);

    for m in 0..dim {
        let mf = m as f64;
        for n in 0..dim {
            let nf = n as f64;
            let v = c[[m, n]];
            if v == z {
                continue;
            }
            let p = v.conj() * v;
            n_a += p * mf;
            n_b += p * nf;
            n_ab += p * (mf * nf);
            aa2 += p * (mf * (mf - 1.0));
            bb2 += p * (nf * (nf - 1.0));
            if m >= 1 {
                ex_a += c[[m - 1, n]].conj() * v * sq[m];
                if n >= 1 {
                    ex_ab += c[[m - 1, n - 1]].conj() * v * (sq[m] * sq[n]);
                }
            }
            if n >= 1 {
                ex_b += c[[m, n - 1]].conj() * v * sq[n];
                if m + 1 < dim {
                    ex_adb += c[[m + 1, n - 1]].conj() * v * (sq[m + 1] * sq[n]);
                }
            }
            if m >= 2 {
                ex_a2 += c[[m - 2, n]].conj() * v * (sq[m] * sq[m - 1]);
            }
            if n >= 2 {
                ex_b2 += c[[m, n - 2]].conj() * v * (sq[n] * sq[n - 1]);
            }
        }
    }

    let k = 1.0 / state.norm_sq;
    Ok(MomentTable {
        ex_a: ex_a * k,
        ex_b: ex_b * k,
        ex_a2: ex_a2 * k,
        ex_b2: ex_b2 * k,
        n_a: realize("n_a", n_a * k, RESIDUE_TOL)?,
        n_b: realize("n_b", n_b * k, RESIDUE_TOL)?,
        ex_ab: ex_ab * k,
        ex_adb: ex_adb * k,
        n_ab: realize("n_ab", n_ab * k, RESIDUE_TOL)?,
        aa2: realize("aa2", aa2 * k, RESIDUE_TOL)?,
        bb2: realize("bb2", bb2 * k, RESIDUE_TOL)?,
    })
}

/// `⟨s1|s2⟩`.
pub fn overlap(s1: &TwoModeState, s2: &TwoModeState) -> Result<C64> {
    if s1.coeffs.dim() != s2.coeffs.dim() {
        return Err(Error::ShapeMismatch(s1.coeffs.dim(), s2.coeffs.dim()));
    }
    let mut acc = C64::new(0.0, 0.0);
    Zip::from(&s1.coeffs)
        .and(&s2.coeffs)
        .for_each(|a, b| acc += a.conj() * b);
    Ok(acc)
}

/// Result of one oracle evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct OracleRun {
    pub moments: MomentTable,
    pub p_post: f64,
    /// `|⟨φ|Ψ⟩|²` against the squeezed vacuum at the same cutoff.
    pub fidelity: f64,
    pub spec: TruncationSpec,
}

/// Builds, contracts and compares against the input state at `spec`.
pub fn run_oracle(params: &ModelParams, spec: &TruncationSpec) -> Result<OracleRun> {
    let (state, p_post) = build_final_state(params, spec)?;
    let moments = moments_numeric(&state, spec.tail_tol)?;
    let input = tmsv_coefficients(params.lambda, params.theta, spec)?;
    let fidelity = overlap(&input, &state)?.norm_sqr();
    Ok(OracleRun {
        moments,
        p_post,
        fidelity,
        spec: *spec,
    })
}

/// [`run_oracle`] starting from [`choose_truncation`], doubling the cutoff
/// on truncation errors up to [`MAX_N_MAX`].
pub fn run_oracle_adaptive(params: &ModelParams, tol: f64) -> Result<OracleRun> {
    let mut spec = choose_truncation(params, tol)?;
    loop {
        match run_oracle(params, &spec) {
            Err(Error::Truncation(msg)) => {
                if spec.n_max >= MAX_N_MAX {
                    return Err(Error::Unsupported(format!(
                        "no cutoff up to {MAX_N_MAX} is large enough: {msg}"
                    )));
                }
                spec = TruncationSpec {
                    n_max: (2 * spec.n_max).min(MAX_N_MAX),
                    ..spec
                };
            }
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::normalization;
    use std::f64::consts::PI;

    fn spec(n_max: usize) -> TruncationSpec {
        TruncationSpec::new(n_max, 1e-10).unwrap()
    }

    #[test]
    fn vacuum_input() {
        let st = tmsv_coefficients(0.0, 0.0, &spec(10)).unwrap();
        assert_eq!(st, TwoModeState::vacuum(&spec(10)));
        let m = moments_numeric(&st, 1e-10).unwrap();
        assert_eq!(m, MomentTable::default());
    }

    #[test]
    fn schmidt_ratio() {
        let st = tmsv_coefficients(0.1, 0.0, &spec(20)).unwrap();
        let r = st.coeffs[[1, 1]] / st.coeffs[[0, 0]];
        assert!((r.re - 0.1f64.tanh()).abs() < 1e-15);
        assert!((r.re - 0.09967).abs() < 1e-5);
        assert_eq!(st.coeffs[[1, 0]], C64::new(0.0, 0.0));
        assert!((st.norm_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn insufficient_cutoff_is_reported() {
        assert!(matches!(
            tmsv_coefficients(1.5, 0.0, &spec(20)),
            Err(Error::Truncation(_))
        ));
    }

    #[test]
    fn bare_tmsv_moments() {
        let st = tmsv_coefficients(1.5, 0.0, &spec(300)).unwrap();
        let m = moments_numeric(&st, 1e-10).unwrap();
        assert!((m.n_a - 1.5f64.sinh().powi(2)).abs() < 1e-10);
        assert!((m.n_a - 4.5339).abs() < 1e-4);

        let st = tmsv_coefficients(1.0, 0.0, &spec(200)).unwrap();
        let m = moments_numeric(&st, 1e-10).unwrap();
        let expect = 1f64.sinh().powi(2) * 2f64.cosh();
        assert!((m.n_ab - expect).abs() < 1e-9);
        assert!((m.n_ab - 5.1959).abs() < 1e-4);
    }

    #[test]
    fn no_coupling_leaves_input() {
        let alpha = 2.0 * PI / 3.0;
        let p = ModelParams::new(0.7, 0.0, alpha, 0.0).unwrap();
        let (st, p_post) = build_final_state(&p, &spec(120)).unwrap();
        let input = tmsv_coefficients(0.7, 0.0, &spec(120)).unwrap();
        assert!((overlap(&input, &st).unwrap().norm_sqr() - 1.0).abs() < 1e-14);
        assert!((p_post - (alpha / 2.0).cos().powi(2)).abs() < 1e-14);
    }

    #[test]
    fn p_post_matches_normalization() {
        let p = ModelParams::new(1.5, 0.5, 8.0 * PI / 9.0, 0.0).unwrap();
        let run = run_oracle_adaptive(&p, 1e-12).unwrap();
        let n = normalization(&p, &p.weak_value().unwrap());
        assert!((run.p_post - n.p_post).abs() < 1e-10);
    }

    #[test]
    fn unit_weak_value_gives_coherent_state() {
        let s = 1.0;
        let p = ModelParams::new(0.0, s, PI / 2.0, 0.0).unwrap();
        let (st, _) = build_final_state(&p, &spec(40)).unwrap();
        let d = OperatorMatrix::displacement(C64::new(s / 2.0, 0.0), &spec(40)).unwrap();
        let coherent = TwoModeState::vacuum(&spec(40)).apply_mode_a(&d).unwrap();
        assert!((overlap(&coherent, &st).unwrap().norm_sqr() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn zero_weak_value_gives_even_cat() {
        let s = 1.0;
        let p = ModelParams::new(0.0, s, 0.0, 0.0).unwrap();
        let (st, _) = build_final_state(&p, &spec(40)).unwrap();
        let plus = OperatorMatrix::displacement(C64::new(s / 2.0, 0.0), &spec(40)).unwrap();
        let minus = OperatorMatrix::displacement(C64::new(-s / 2.0, 0.0), &spec(40)).unwrap();
        let vac = TwoModeState::vacuum(&spec(40));
        let mut sum = TwoModeState::from_coeffs(
            &vac.apply_mode_a(&plus).unwrap().coeffs + &vac.apply_mode_a(&minus).unwrap().coeffs,
        );
        sum.normalize().unwrap();
        assert!((overlap(&sum, &st).unwrap().norm_sqr() - 1.0).abs() < 1e-13);
        for m in (1..40).step_by(2) {
            assert!(st.coeffs[[m, 0]].norm() < 1e-16);
        }
    }

    #[test]
    fn self_overlap_and_shape_check() {
        let st = tmsv_coefficients(0.4, 0.0, &spec(30)).unwrap();
        assert!((overlap(&st, &st).unwrap().re - 1.0).abs() < 1e-14);
        let other = tmsv_coefficients(0.4, 0.0, &spec(31)).unwrap();
        assert!(matches!(
            overlap(&st, &other),
            Err(Error::ShapeMismatch(..))
        ));
    }

    #[test]
    fn edge_mass_check() {
        let p = ModelParams::new(0.5, 1.0, 0.0, 0.0).unwrap();
        let (st, _) = build_final_state(&p, &spec(14)).unwrap();
        assert!(matches!(
            moments_numeric(&st, 1e-10),
            Err(Error::Truncation(_))
        ));
        assert!(run_oracle_adaptive(&p, 1e-10).is_ok());
    }

    #[test]
    fn squeezing_phase_rotates_pair_coherence() {
        let p = ModelParams::new(0.5, 0.0, 1.0, 0.0)
            .unwrap()
            .with_theta(0.7)
            .unwrap();
        let run = run_oracle_adaptive(&p, 1e-12).unwrap();
        let expect = C64::from_polar(0.5 * 1.0f64.sinh(), 0.7);
        assert!((run.moments.ex_ab - expect).norm() < 1e-12);

        let p = ModelParams::new(0.5, 0.3, 1.0, 0.0)
            .unwrap()
            .with_theta(0.7)
            .unwrap();
        assert!(run_oracle_adaptive(&p, 1e-12).is_ok());
    }
}
