//! Numerical inversion of Laplace transforms of CDF-type functions along a
//! Bromwich line using the Fourier-series method with Euler summation.
//!
//! With abscissa `c_t = A/(2x)` the discretization error is about
//! `e^{−A} F(3x)`, and binomial averaging of the last `m + 1` partial sums
//! of the alternating series accelerates its convergence.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Executor;

/// Working parameters of the inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BromwichConfig {
    /// Damping `A`; the Bromwich abscissa is `A / (2x)`.
    pub damping: f64,
    /// Terms summed before Euler averaging starts.
    pub terms: usize,
    /// Binomial averaging depth.
    pub euler_depth: usize,
    /// Below this value the result is flagged as low-confidence.
    pub low_confidence_below: f64,
}

impl Default for BromwichConfig {
    fn default() -> Self {
        Self {
            damping: 21.0,
            terms: 38,
            euler_depth: 11,
            low_confidence_below: 1e-7,
        }
    }
}

impl BromwichConfig {
    /// Transform evaluation points `t_k = (A + 2πik) / (2x)` for k = 0..=terms+depth+1.
    pub fn nodes(&self, x: f64) -> Vec<Complex64> {
        (0..=self.terms + self.euler_depth + 1)
            .map(|k| Complex64::new(self.damping, 2.0 * std::f64::consts::PI * k as f64) / (2.0 * x))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Inversion {
    /// Estimate clamped to [0, 1].
    pub value: f64,
    /// Unclamped estimate.
    pub raw: f64,
    /// |E(m, n) − E(m, n+1)|.
    pub error_estimate: f64,
    pub low_confidence: bool,
}

/// Recovers F(x) from its Laplace transform `transform(t) = ∫ e^{−tγ} F(γ) dγ`
/// (the transform includes the 1/t factor of a CDF).
pub fn bromwich_invert<T>(transform: T, x: f64) -> Result<f64>
where
    T: Fn(Complex64) -> Result<Complex64> + Sync + Send,
{
    bromwich_invert_with(transform, x, &BromwichConfig::default(), Executor::default())
        .map(|r| r.value)
}

/// Inversion from precomputed transform values at [`BromwichConfig::nodes`].
pub fn bromwich_from_values(values: &[Complex64], x: f64, cfg: &BromwichConfig) -> Result<Inversion> {
    let n = cfg.terms;
    let m = cfg.euler_depth;
    if values.len() != n + m + 2 {
        return Err(Error::domain("values", "length must be terms + euler_depth + 2"));
    }
    let scale = (cfg.damping / 2.0).exp() / x;
    let mut partial = Vec::with_capacity(n + m + 2);
    let mut s = 0.5 * scale * values[0].re;
    partial.push(s);
    for (k, v) in values.iter().enumerate().skip(1) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * scale * v.re;
        partial.push(s);
    }
    let euler = |start: usize| -> f64 {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for k in 0..=m {
            acc += binom * partial[start + k];
            binom *= (m - k) as f64 / (k + 1) as f64;
        }
        acc / 2f64.powi(m as i32)
    };
    let e0 = euler(n);
    let e1 = euler(n + 1);
    let err = (e0 - e1).abs();
    if !e0.is_finite() || err > 1e-4 * e0.abs().max(1e-3) {
        let tail: Vec<String> = partial[n..].iter().map(|p| format!("{p:.6e}")).collect();
        return Err(Error::Numeric {
            what: "Bromwich inversion Euler summation",
            achieved: err,
            diagnostics: format!("; partial sums {}", tail.join(", ")),
        });
    }
    Ok(Inversion {
        value: e0.clamp(0.0, 1.0),
        raw: e0,
        error_estimate: err,
        low_confidence: e0 < cfg.low_confidence_below,
    })
}

/// Full-control variant of [`bromwich_invert`].
pub fn bromwich_invert_with<T>(
    transform: T,
    x: f64,
    cfg: &BromwichConfig,
    exec: Executor,
) -> Result<Inversion>
where
    T: Fn(Complex64) -> Result<Complex64> + Sync + Send,
{
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("gamma_point", format!("must be finite and > 0, got {x}")));
    }
    let nodes = cfg.nodes(x);
    let values: Vec<Complex64> = exec
        .map_slice(&nodes, |t| transform(*t))
        .into_iter()
        .collect::<Result<_>>()?;
    bromwich_from_values(&values, x, cfg)
}
