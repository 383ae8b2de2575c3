use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::truncation::{displacement_padding, TruncationSpec};
use crate::error::{Error, Result};

/// Largest displacement amplitude the oracle accepts.
pub const MAX_AMPLITUDE: f64 = 10.0;

/// Dense single-mode operator on `0..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix(pub Array2<C64>);

impl OperatorMatrix {
    pub fn identity(spec: &TruncationSpec) -> Self {
        Self(Array2::eye(spec.dim()))
    }

    /// `a`, with `√n` on the first superdiagonal.
    pub fn annihilation(spec: &TruncationSpec) -> Self {
        let mut m = Array2::zeros((spec.dim(), spec.dim()));
        for n in 1..spec.dim() {
            m[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
        }
        Self(m)
    }

    pub fn number(spec: &TruncationSpec) -> Self {
        let mut m = Array2::zeros((spec.dim(), spec.dim()));
        for n in 0..spec.dim() {
            m[[n, n]] = C64::new(n as f64, 0.0);
        }
        Self(m)
    }

    /// Exact matrix elements `⟨m|D(amplitude)|n⟩` for `m, n ≤ n_max`.
    pub fn displacement(amplitude: C64, spec: &TruncationSpec) -> Result<Self> {
        check_amplitude(amplitude, spec)?;
        let mut m = Array2::zeros((spec.dim(), spec.dim()));
        for_each_displacement_element(amplitude, spec.n_max, |row, col, v| m[[row, col]] = v);
        Ok(Self(m))
    }

    /// `exp(amplitude a† − amplitude* a)` of the truncated generator, by
    /// scaling and squaring a Taylor series.
    ///
    /// Only the block well inside the cutoff matches [`Self::displacement`].
    pub fn displacement_by_generator(amplitude: C64, spec: &TruncationSpec) -> Self {
        let dim = spec.dim();
        let mut g = Array2::<C64>::zeros((dim, dim));
        for n in 1..dim {
            let r = (n as f64).sqrt();
            g[[n, n - 1]] = amplitude * r;
            g[[n - 1, n]] = -amplitude.conj() * r;
        }
        let bound = 2.0 * amplitude.norm() * (dim as f64).sqrt();
        let squarings = if bound > 0.25 {
            (bound / 0.25).log2().ceil() as u32
        } else {
            0
        };
        g.mapv_inplace(|z| z / 2f64.powi(squarings as i32));

        let mut result = Array2::<C64>::eye(dim);
        let mut term = Array2::<C64>::eye(dim);
        for k in 1..=30 {
            term = term.dot(&g).mapv(|z| z / k as f64);
            result += &term;
            if term.iter().all(|z| z.norm() < 1e-18) {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.dot(&result);
        }
        Self(result)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.t().mapv(|z| z.conj()))
    }

    pub fn dot(&self, other: &Self) -> Result<Self> {
        if self.0.dim() != other.0.dim() {
            return Err(Error::ShapeMismatch(self.0.dim(), other.0.dim()));
        }
        Ok(Self(self.0.dot(&other.0)))
    }

    /// Largest entry of `A − B` over the block `0..=limit`.
    pub fn max_block_difference(&self, other: &Self, limit: usize) -> f64 {
        let k = (limit + 1).min(self.dim()).min(other.dim());
        let mut worst = 0.0f64;
        for i in 0..k {
            for j in 0..k {
                worst = worst.max((self.0[[i, j]] - other.0[[i, j]]).norm());
            }
        }
        worst
    }

    /// `max |(U†U − I)[m,n]|` over `m, n ≤ n_max/2`.
    pub fn interior_unitarity_defect(&self) -> f64 {
        let n_max = self.dim() - 1;
        let half = n_max / 2;
        let mut worst = 0.0f64;
        for i in 0..=half {
            for j in 0..=half {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..=n_max {
                    acc += self.0[[k, i]].conj() * self.0[[k, j]];
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

pub(crate) fn check_amplitude(amplitude: C64, spec: &TruncationSpec) -> Result<()> {
    let r = amplitude.norm();
    if !r.is_finite() || r > MAX_AMPLITUDE {
        return Err(Error::Truncation(format!(
            "displacement amplitude {r} exceeds {MAX_AMPLITUDE}"
        )));
    }
    let needed = displacement_padding(2.0 * r, spec.tail_tol);
    if r > 0.0 && spec.n_max < needed {
        return Err(Error::Truncation(format!(
            "displacement amplitude {r} needs n_max >= {needed}, got {}",
            spec.n_max
        )));
    }
    Ok(())
}

pub(crate) fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    out.push(0.0);
    for i in 1..=n {
        let y = (i as f64).ln() - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        out.push(sum);
    }
    out
}

/// Calls `f(m, n, ⟨m|D(amplitude)|n⟩)` for every `m, n ≤ n_max`.
///
/// Along each diagonal `m − n = ±k` the elements are
/// `e^{−|α|²/2} |α|^k √(n!/(n+k)!) L_n^{(k)}(|α|²)` times a phase, generated
/// by the three-term Laguerre recurrence with a running log scale so that
/// neither the starting value nor the growth under- or overflows.
pub(crate) fn for_each_displacement_element(
    amplitude: C64,
    n_max: usize,
    mut f: impl FnMut(usize, usize, C64),
) {
    let r = amplitude.norm();
    if r == 0.0 {
        for n in 0..=n_max {
            f(n, n, C64::new(1.0, 0.0));
        }
        return;
    }
    let x = r * r;
    let ln_r = r.ln();
    let phase = amplitude.arg();
    let lf = ln_factorials(n_max);

    for (k, &ln_kf) in lf.iter().enumerate() {
        let kf = k as f64;
        let below = if k == 0 {
            C64::new(1.0, 0.0)
        } else {
            C64::from_polar(1.0, kf * phase)
        };
        // (−α*/|α|)^k
        let above = if k % 2 == 0 {
            below.conj()
        } else {
            -below.conj()
        };

        let mut scale = kf * ln_r - 0.5 * ln_kf - 0.5 * x;
        let (mut prev, mut cur) = (0.0f64, 1.0f64);
        for n in 0..=(n_max - k) {
            if n > 0 {
                let nf = (n - 1) as f64;
                let next = ((2.0 * nf + 1.0 + kf - x) * cur - (nf * (nf + kf)).sqrt() * prev)
                    / ((nf + 1.0) * (nf + kf + 1.0)).sqrt();
                prev = cur;
                cur = next;
                let mag = cur.abs();
                if mag > 1e100 {
                    prev /= mag;
                    cur /= mag;
                    scale += mag.ln();
                }
            }
            let value = if cur == 0.0 {
                0.0
            } else {
                cur.signum() * (cur.abs().ln() + scale).exp()
            };
            f(n + k, n, below * value);
            if k > 0 {
                f(n, n + k, above * value);
            }
        }
    }
}
