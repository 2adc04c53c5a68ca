//! HARQ-CC outage through the Laplace domain: per-round transforms (direct
//! quadrature or Mellin–Barnes), Bromwich inversion of their product, and
//! the residue-based high-SNR expansions.

use num_complex::Complex64;

use crate::error::{require_positive, Error, Result};
use crate::exec::Executor;
use crate::fading::{FadingPointingParams, Regime};
use crate::special::quad::{integrate, QuadConfig};
use crate::special::{
    bromwich_from_values, foxh, gamma, ln_gamma, BromwichConfig, MellinBarnesSpec,
};

use super::type1::{diversity_order_type1, ln_outage_asymptotic_type1};
use super::{HarqConfig, Scheme};

/// Relative tolerance of the per-round transform quadrature.
const MGF_REL_TOL: f64 = 1e-11;

/// E[e^{−t ρ h_l² |h_pf|²}] for `Re t > 0` by adaptive quadrature of the
/// envelope density against the Gaussian kernel.
pub fn mgf_single_round(
    fp: &FadingPointingParams,
    h_l: f64,
    rho: f64,
    t: Complex64,
) -> Result<Complex64> {
    require_positive("h_l", h_l)?;
    require_positive("rho", rho)?;
    if !(t.re > 0.0 && t.re.is_finite() && t.im.is_finite()) {
        return Err(Error::domain("t", format!("requires finite Re t > 0, got {t}")));
    }
    let b = rho * h_l * h_l;
    // Beyond 8/√(b Re t) the kernel is below e^{−64}; beyond the envelope
    // bound the density carries less than 1e-20 of mass.
    let upper = fp.envelope_bound().min(8.0 / (b * t.re).sqrt());
    let q = 1.0 / fp.origin_exponent();
    let integrand = |w: f64| {
        let x = upper * w.powf(q);
        let jac = upper * q * w.powf(q - 1.0);
        match fp.pdf(x) {
            Ok(d) if d > 0.0 => (-t * (b * x * x)).exp() * (d * jac),
            Ok(_) => Complex64::new(0.0, 0.0),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let cfg = QuadConfig {
        abs_tol: 0.0,
        rel_tol: MGF_REL_TOL,
        max_intervals: 6000,
    };
    let q = integrate(integrand, 0.0, 1.0, cfg)?;
    if !(q.value.re.is_finite() && q.value.im.is_finite()) {
        return Err(Error::numeric("single-round transform quadrature", f64::INFINITY));
    }
    Ok(q.value)
}

/// Same transform through the Mellin–Barnes integral:
/// φ/(2Γ(μ)) · H(z), z = (ρ h_l² t)^{1/2} (μ/(ĥ_f^α S0^α))^{−1/α}.
pub fn mgf_single_round_foxh(
    fp: &FadingPointingParams,
    h_l: f64,
    rho: f64,
    t: Complex64,
    spec: &MellinBarnesSpec,
) -> Result<Complex64> {
    require_positive("h_l", h_l)?;
    require_positive("rho", rho)?;
    if !(t.re > 0.0) {
        return Err(Error::domain("t", format!("requires Re t > 0, got {t}")));
    }
    let z = foxh_argument(fp, h_l, rho, t);
    Ok(foxh(z, spec)? * (fp.phi / (2.0 * gamma(fp.mu))))
}

fn foxh_argument(fp: &FadingPointingParams, h_l: f64, rho: f64, t: Complex64) -> Complex64 {
    let c = fp.mu / (fp.h_f_hat * fp.s0).powf(fp.alpha);
    (t * (rho * h_l * h_l)).sqrt() * c.powf(-1.0 / fp.alpha)
}

/// How the per-round transform is computed inside the inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MgfRoute {
    /// Direct quadrature (production).
    Quadrature,
    /// Mellin–Barnes contour integral (verification).
    FoxH(MellinBarnesSpec),
}

/// Result of the numerical CC pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct CcOutage {
    pub value: f64,
    pub error_estimate: f64,
    /// Set when the inversion result is below the configured confidence floor.
    pub low_confidence: bool,
    /// High-SNR expression reported alongside low-confidence results.
    pub asymptotic: Option<f64>,
}

/// Exact CC outage F_γ(2^R − 1) by Bromwich inversion of
/// t ↦ (1/t) · MGF(t)^M with the direct-quadrature transform.
pub fn outage_exact_cc(fp: &FadingPointingParams, h_l: f64, cfg: &HarqConfig) -> Result<f64> {
    outage_exact_cc_with(
        fp,
        h_l,
        cfg,
        MgfRoute::Quadrature,
        &BromwichConfig::default(),
        Executor::default(),
    )
    .map(|r| r.value)
}

pub fn outage_exact_cc_with(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
    route: MgfRoute,
    inversion: &BromwichConfig,
    exec: Executor,
) -> Result<CcOutage> {
    cfg.require(Scheme::ChaseCombining)?;
    require_positive("h_l", h_l)?;
    let x = cfg.snr_threshold();
    let rounds = cfg.rounds as i32;
    let nodes = inversion.nodes(x);
    let values: Vec<Complex64> = exec
        .map_slice(&nodes, |&t| {
            let m = match route {
                MgfRoute::Quadrature => mgf_single_round(fp, h_l, cfg.rho, t)?,
                MgfRoute::FoxH(spec) => mgf_single_round_foxh(fp, h_l, cfg.rho, t, &spec)?,
            };
            Ok(m.powi(rounds) / t)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let inv = bromwich_from_values(&values, x, inversion)?;
    let asymptotic = if inv.low_confidence {
        Some(outage_asymptotic_cc(fp, h_l, cfg)?)
    } else {
        None
    };
    Ok(CcOutage {
        value: inv.value,
        error_estimate: inv.error_estimate,
        low_confidence: inv.low_confidence,
        asymptotic,
    })
}

/// Coefficients of the two leading right-pole residues of the per-round
/// Mellin–Barnes integral: H ≈ B (ρt)^{−φ/2} + C (ρt)^{−μα/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueTerms {
    pub b_k: f64,
    pub c_k: f64,
}

pub fn residue_terms(fp: &FadingPointingParams, h_l: f64) -> Result<ResidueTerms> {
    require_positive("h_l", h_l)?;
    let (a, m, p) = (fp.alpha, fp.mu, fp.phi);
    let c = m / (fp.h_f_hat * fp.s0).powf(a);
    // ((h_l²)^{1/2} c^{−1/α})
    let base = (h_l * h_l).sqrt() * c.powf(-1.0 / a);
    let b_k = gamma(p / 2.0) * gamma(m - p / a) * base.powf(-p);
    let c_k = a / (p - m * a) * gamma(m * a / 2.0) * base.powf(-m * a);
    if !(b_k.is_finite() && c_k.is_finite()) {
        return Err(Error::UnsupportedRegime {
            alpha_mu: a * m,
            phi: p,
        });
    }
    Ok(ResidueTerms { b_k, c_k })
}

/// Per-round residue coefficients; rounds share parameters, so all entries
/// are equal.
pub fn residue_terms_per_round(
    fp: &FadingPointingParams,
    h_l: f64,
    rounds: u32,
) -> Result<Vec<ResidueTerms>> {
    let r = residue_terms(fp, h_l)?;
    Ok(vec![r; rounds as usize])
}

/// One element of Ω = {0,1}^M: bit k selects B_k (1) or C_k (0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaVector {
    pub bits: Vec<u8>,
}

impl OmegaVector {
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

/// All 2^M selection vectors in lexicographic order.
pub fn omega(rounds: u32) -> Vec<OmegaVector> {
    let m = rounds as usize;
    (0u64..(1u64 << m))
        .map(|mask| OmegaVector {
            bits: (0..m).map(|k| ((mask >> (m - 1 - k)) & 1) as u8).collect(),
        })
        .collect()
}

const MAX_FULLSUM_ROUNDS: u32 = 24;

fn fullsum_term(
    fp: &FadingPointingParams,
    terms: &[ResidueTerms],
    a: &OmegaVector,
    ln_ratio: f64,
) -> f64 {
    let (m, p) = (fp.mu * fp.alpha, fp.phi);
    let rounds = terms.len() as f64;
    let ones = a.ones() as f64;
    let exponent = rounds * m / 2.0 + (p - m) / 2.0 * ones;
    let coeff: f64 = terms
        .iter()
        .zip(&a.bits)
        .map(|(r, &bit)| if bit == 1 { r.b_k } else { r.c_k })
        .product();
    let pref = (fp.phi / (2.0 * gamma(fp.mu))).powf(rounds);
    pref * coeff * (exponent * ln_ratio - ln_gamma(exponent + 1.0)).exp()
}

/// Residue expansion of the CC outage retaining all 2^M terms of Ω.
pub fn cc_asymptotic_fullsum(fp: &FadingPointingParams, h_l: f64, cfg: &HarqConfig) -> Result<f64> {
    cfg.require(Scheme::ChaseCombining)?;
    if cfg.rounds > MAX_FULLSUM_ROUNDS {
        return Err(Error::domain("rounds", format!("full residue sum limited to M <= {MAX_FULLSUM_ROUNDS}")));
    }
    let terms = residue_terms_per_round(fp, h_l, cfg.rounds)?;
    let ln_ratio = (cfg.snr_threshold() / cfg.rho).ln();
    Ok(omega(cfg.rounds)
        .iter()
        .map(|a| fullsum_term(fp, &terms, a, ln_ratio))
        .sum())
}

/// The single minimal-exponent term of the residue expansion.
pub fn cc_asymptotic_dominant(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
) -> Result<f64> {
    cfg.require(Scheme::ChaseCombining)?;
    let terms = residue_terms_per_round(fp, h_l, cfg.rounds)?;
    let bit = match fp.regime() {
        Regime::PointingLimited => 1,
        Regime::FadingLimited => 0,
    };
    let a = OmegaVector {
        bits: vec![bit; cfg.rounds as usize],
    };
    let ln_ratio = (cfg.snr_threshold() / cfg.rho).ln();
    Ok(fullsum_term(fp, &terms, &a, ln_ratio))
}

/// Combining-gain constant: Γ(e/2 + 1)^M / Γ(eM/2 + 1), e = min(φ, αμ).
pub fn eta(fp: &FadingPointingParams, rounds: u32) -> f64 {
    let e = fp.origin_exponent();
    let m = rounds as f64;
    (m * ln_gamma(e / 2.0 + 1.0) - ln_gamma(e * m / 2.0 + 1.0)).exp()
}

/// High-SNR CC outage: η times the Type-I asymptote.
pub fn outage_asymptotic_cc(fp: &FadingPointingParams, h_l: f64, cfg: &HarqConfig) -> Result<f64> {
    cfg.require(Scheme::ChaseCombining)?;
    let ln_t1 = ln_outage_asymptotic_type1(fp, h_l, &cfg.with_scheme(Scheme::TypeI))?;
    Ok(eta(fp, cfg.rounds) * ln_t1.exp())
}

/// Identical to the Type-I diversity order.
pub fn diversity_order_cc(fp: &FadingPointingParams, rounds: u32) -> f64 {
    diversity_order_type1(fp, rounds)
}
