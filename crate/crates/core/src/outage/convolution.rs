//! Independent grid-convolution oracle for the CC outage.
//!
//! The accumulated SNR after m rounds has CDF G_m. On a uniform grid that
//! places the threshold T = 2^R − 1 on a node, each round's mass in cell j,
//! p_j = F_1((j+1)h) − F_1(jh), is taken exactly from the closed-form CDF and
//! attached to the cell midpoint:
//!
//! ```text
//! G_m(i h) ≈ Σ_{j<i} p_j · ½ [G_{m−1}((i−j−1) h) + G_{m−1}((i−j) h)]
//! ```
//!
//! Only nodes up to T are ever needed.

use crate::error::{require_positive, Error, Result};
use crate::exec::Executor;
use crate::fading::FadingPointingParams;

use super::{HarqConfig, Scheme};

/// Uniform grid over [0, upper_factor · T] with `nodes` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub upper_factor: f64,
    pub nodes: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            upper_factor: 20.0,
            nodes: 1 << 18,
        }
    }
}

impl GridSpec {
    pub const MIN_NODES: usize = 1 << 14;

    fn cells_below_threshold(&self) -> Result<usize> {
        if !(self.upper_factor.is_finite() && self.upper_factor >= 1.0) {
            return Err(Error::domain(
                "grid",
                format!("threshold beyond grid (upper factor {})", self.upper_factor),
            ));
        }
        if self.nodes < Self::MIN_NODES {
            return Err(Error::domain(
                "grid",
                format!("node count must be >= {}, got {}", Self::MIN_NODES, self.nodes),
            ));
        }
        Ok(((self.nodes as f64 / self.upper_factor).round() as usize).max(1))
    }
}

/// CC outage by repeated discrete convolution of the per-round SNR law.
pub fn outage_cc_convolution(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
    grid: &GridSpec,
) -> Result<f64> {
    outage_cc_convolution_with(fp, h_l, cfg, grid, Executor::default())
}

pub fn outage_cc_convolution_with(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
    grid: &GridSpec,
    exec: Executor,
) -> Result<f64> {
    cfg.require(Scheme::ChaseCombining)?;
    require_positive("h_l", h_l)?;
    let n = grid.cells_below_threshold()?;
    let threshold = cfg.snr_threshold();
    let b = cfg.rho * h_l * h_l;
    let step = threshold / n as f64;
    let round_cdf = |g: f64| -> Result<f64> {
        if g <= 0.0 {
            return Ok(0.0);
        }
        let x = (g / b).sqrt();
        if fp.has_integer_mu() {
            fp.ln_cdf(x).map(f64::exp)
        } else {
            fp.cdf_numeric(x)
        }
    };
    let f1: Vec<f64> = exec
        .map_indexed(n + 1, |i| round_cdf(i as f64 * step))
        .into_iter()
        .collect::<Result<_>>()?;
    if cfg.rounds == 1 {
        return Ok(f1[n]);
    }
    let mass: Vec<f64> = f1.windows(2).map(|w| (w[1] - w[0]).max(0.0)).collect();
    let fold = |prev: &[f64], i: usize| -> f64 {
        let mut acc = 0.0;
        for j in 0..i {
            acc += mass[j] * (prev[i - j - 1] + prev[i - j]);
        }
        0.5 * acc
    };
    let mut g = f1;
    for _ in 2..cfg.rounds {
        g = exec.map_indexed(n + 1, |i| fold(&g, i));
    }
    Ok(fold(&g, n).clamp(0.0, 1.0))
}

