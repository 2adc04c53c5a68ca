use crate::error::{require_positive, Result};
use crate::fading::{FadingPointingParams, Regime};
use crate::special::ln_gamma;

use super::{HarqConfig, Scheme};

/// ln of the exact Type-I outage: M · ln F_{|h_pf|}(√((2^R−1)/ρ)/h_l).
pub fn ln_outage_exact_type1(fp: &FadingPointingParams, h_l: f64, cfg: &HarqConfig) -> Result<f64> {
    cfg.require(Scheme::TypeI)?;
    require_positive("h_l", h_l)?;
    let x = cfg.envelope_threshold(h_l);
    let ln_f = if fp.has_integer_mu() {
        fp.ln_cdf(x)?
    } else {
        fp.cdf_numeric(x)?.ln()
    };
    Ok(cfg.rounds as f64 * ln_f)
}

/// Exact Type-I outage: i.i.d. rounds make it the per-round CDF to the M-th power.
pub fn outage_exact_type1(fp: &FadingPointingParams, h_l: f64, cfg: &HarqConfig) -> Result<f64> {
    ln_outage_exact_type1(fp, h_l, cfg).map(f64::exp)
}

/// ln of the high-SNR Type-I outage.
pub fn ln_outage_asymptotic_type1(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
) -> Result<f64> {
    cfg.require(Scheme::TypeI)?;
    require_positive("h_l", h_l)?;
    let (a, m, p) = (fp.alpha, fp.mu, fp.phi);
    let ln_scale = (fp.h_f_hat * fp.s0 * h_l).ln();
    let ln_snr = cfg.snr_threshold().ln() - cfg.rho.ln();
    let per_round = match fp.regime() {
        Regime::PointingLimited => {
            ln_gamma((a * m - p) / a) + (p / a) * m.ln() + 0.5 * p * ln_snr
                - ln_gamma(m)
                - p * ln_scale
        }
        Regime::FadingLimited => {
            p.ln() + (m - 1.0) * m.ln() + 0.5 * a * m * ln_snr
                - ln_gamma(m)
                - (p - a * m).ln()
                - a * m * ln_scale
        }
    };
    Ok(cfg.rounds as f64 * per_round)
}

/// High-SNR Type-I outage: per-round power law in ρ raised to the M-th power.
pub fn outage_asymptotic_type1(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
) -> Result<f64> {
    ln_outage_asymptotic_type1(fp, h_l, cfg).map(f64::exp)
}

/// φM/2 when αμ > φ, αμM/2 otherwise.
pub fn diversity_order_type1(fp: &FadingPointingParams, rounds: u32) -> f64 {
    fp.origin_exponent() * rounds as f64 / 2.0
}
