use serde::{Deserialize, Serialize};

use super::state::EDGE_ROWS;
use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Largest per-mode cutoff the oracle will attempt.
pub const MAX_N_MAX: usize = 4096;

/// Per-mode Fock cutoff (basis `0..=n_max`) and the tail probability the
/// caller is willing to lose.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub n_max: usize,
    pub tail_tol: f64,
}

impl TruncationSpec {
    pub fn new(n_max: usize, tail_tol: f64) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Truncation(format!(
                "n_max must be at least 1, got {n_max}"
            )));
        }
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::Domain {
                what: "tail_tol",
                value: tail_tol,
                domain: "(0, 1)",
            });
        }
        Ok(Self { n_max, tail_tol })
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// Same tolerance, twice the cutoff.
    pub fn doubled(&self) -> Self {
        Self {
            n_max: 2 * self.n_max,
            tail_tol: self.tail_tol,
        }
    }
}

/// Rows added on top of the squeezing cutoff to hold the displacement
/// spread of mode `a`: the smallest `k` with a Poisson(`s²/4`) tail above `k`
/// below `tol`, plus the rows the edge-mass check inspects.
pub fn displacement_padding(s: f64, tol: f64) -> usize {
    let mu = s * s / 4.0;
    if mu == 0.0 {
        return EDGE_ROWS;
    }
    let mut terms = Vec::new();
    let mut ln_p = -mu;
    for n in 0.. {
        if n > 0 {
            ln_p += mu.ln() - (n as f64).ln();
        }
        let p = ln_p.exp();
        terms.push(p);
        if n as f64 > mu && p < tol * 1e-8 {
            break;
        }
    }
    let mut tail = 0.0;
    let mut k = terms.len() - 1;
    while k > 0 && tail + terms[k] < tol {
        tail += terms[k];
        k -= 1;
    }
    k + EDGE_ROWS
}

/// Smallest cutoff whose fourth-moment tail
/// `Σ_{n>N} n⁴ tanh^{2n}λ / cosh²λ` is below `tol · max(1, sinh⁴λ)`,
/// padded by [`displacement_padding`].
pub fn choose_truncation(params: &ModelParams, tol: f64) -> Result<TruncationSpec> {
    params.validate()?;
    let base = squeezing_cutoff(params.lambda, tol)?;
    let n_max = (base + displacement_padding(params.s, tol)).max(1);
    if n_max > MAX_N_MAX {
        return Err(Error::Unsupported(format!(
            "lambda = {} needs n_max = {n_max} > {MAX_N_MAX} at tol = {tol:e}",
            params.lambda
        )));
    }
    TruncationSpec::new(n_max, tol)
}

fn squeezing_cutoff(lambda: f64, tol: f64) -> Result<usize> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain {
            what: "tol",
            value: tol,
            domain: "(0, 1)",
        });
    }
    let q = lambda.tanh().powi(2);
    if q == 0.0 {
        return Ok(0);
    }
    let target = tol * lambda.sinh().powi(4).max(1.0);
    let ln_q = q.ln();
    let peak = (-4.0 / ln_q).ceil();

    // Terms n⁴ qⁿ (1−q) in log space, until well past the peak and negligible.
    let mut terms = vec![0.0];
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let t = (4.0 * nf.ln() + nf * ln_q).exp() * (1.0 - q);
        terms.push(t);
        if nf > peak && t < target * 1e-8 {
            break;
        }
        if n > 2 * MAX_N_MAX {
            return Err(Error::Unsupported(format!(
                "lambda = {lambda} needs n_max > {MAX_N_MAX} at tol = {tol:e}"
            )));
        }
        n += 1;
    }

    let mut tail = 0.0;
    for cutoff in (0..terms.len()).rev() {
        // tail == Σ_{n > cutoff} terms[n]
        if tail >= target {
            return Ok(cutoff + 1);
        }
        tail += terms[cutoff];
    }
    Ok(0)
}

/// Exact probability `tanh^{2(N+1)}λ` lost by cutting the squeezed vacuum at
/// `N`.
pub fn tmsv_deficit(lambda: f64, n_max: usize) -> f64 {
    lambda.tanh().powi(2).powi(n_max as i32 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tail(lambda: f64, cutoff: usize) -> f64 {
        let q = lambda.tanh().powi(2);
        (cutoff + 1..100_000)
            .map(|n| (n as f64).powi(4) * q.powi(n as i32) * (1.0 - q))
            .sum()
    }

    #[test]
    fn vacuum_gets_minimum_padding() {
        let p = ModelParams::new(0.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(choose_truncation(&p, 1e-8).unwrap().n_max, EDGE_ROWS);
        assert_eq!(choose_truncation(&p, 1e-14).unwrap().n_max, EDGE_ROWS);
    }

    #[test]
    fn weak_squeezing_cutoff_is_frozen() {
        let p = ModelParams::new(0.1, 0.5, 0.0, 0.0).unwrap();
        let spec = choose_truncation(&p, 1e-8).unwrap();
        assert_eq!(spec.n_max, 14);
        assert_eq!(displacement_padding(0.5, 1e-8), 9);
    }

    fn poisson_tail(mu: f64, k: usize) -> f64 {
        let mut ln_p = -mu;
        let mut tail = 0.0;
        for n in 1..400 {
            ln_p += mu.ln() - (n as f64).ln();
            if n > k {
                tail += ln_p.exp();
            }
        }
        tail
    }

    #[test]
    fn padding_is_minimal_poisson_tail() {
        for &s in &[0.1, 0.5, 1.0, 1.634, 2.0, 4.0] {
            for &tol in &[1e-6, 1e-10, 1e-14] {
                let k = displacement_padding(s, tol) - EDGE_ROWS;
                let mu = s * s / 4.0;
                assert!(poisson_tail(mu, k) < tol, "s={s} tol={tol}");
                assert!(k == 0 || poisson_tail(mu, k - 1) >= tol, "s={s} tol={tol}");
            }
        }
    }

    #[test]
    fn displaced_vacuum_fits_first_cutoff() {
        let p = ModelParams::new(0.0, 1.6339810652894755, 0.0, 0.0).unwrap();
        let spec = choose_truncation(&p, 1e-10).unwrap();
        assert!(
            crate::fock::run_oracle(&p, &spec).is_ok(),
            "n_max={}",
            spec.n_max
        );
    }

    #[test]
    fn cutoff_is_minimal() {
        for &lambda in &[0.1, 0.5, 1.0, 1.5, 2.0] {
            for &tol in &[1e-6, 1e-8, 1e-12] {
                let base = squeezing_cutoff(lambda, tol).unwrap();
                let target = tol * lambda.sinh().powi(4).max(1.0);
                assert!(tail(lambda, base) < target, "lambda={lambda} tol={tol}");
                assert!(
                    tail(lambda, base - 1) >= target,
                    "lambda={lambda} tol={tol}"
                );
            }
        }
    }

    #[test]
    fn strong_squeezing_fits_cap() {
        let p = ModelParams::new(1.5, 2.0, 8.0 * PI / 9.0, 0.0).unwrap();
        let spec = choose_truncation(&p, 1e-8).unwrap();
        assert!(spec.n_max <= MAX_N_MAX);
        assert!(tmsv_deficit(1.5, spec.n_max) < 1e-8);
    }

    #[test]
    fn cap_is_enforced() {
        let p = ModelParams::new(4.0, 0.5, 0.0, 0.0).unwrap();
        assert!(matches!(
            choose_truncation(&p, 1e-12),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn deficit_formula() {
        assert!(tmsv_deficit(1.5, 300) < 1e-24);
        assert_eq!(tmsv_deficit(0.0, 5), 0.0);
    }

    #[test]
    fn spec_validation() {
        assert!(TruncationSpec::new(0, 1e-8).is_err());
        assert!(TruncationSpec::new(10, 0.0).is_err());
        assert!(TruncationSpec::new(10, 1.0).is_err());
        assert_eq!(TruncationSpec::new(10, 1e-3).unwrap().doubled().n_max, 20);
    }
}
