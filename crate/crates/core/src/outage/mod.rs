//! Outage probability of Type-I HARQ and HARQ with chase combining (CC).

mod cc;
mod convolution;
mod type1;

pub use cc::{
    cc_asymptotic_dominant, cc_asymptotic_fullsum, diversity_order_cc, eta, mgf_single_round,
    mgf_single_round_foxh, omega, outage_asymptotic_cc, outage_exact_cc, outage_exact_cc_with,
    residue_terms, residue_terms_per_round, CcOutage, MgfRoute, OmegaVector, ResidueTerms,
};
pub use convolution::{outage_cc_convolution, outage_cc_convolution_with, GridSpec};
pub use type1::{
    diversity_order_type1, ln_outage_asymptotic_type1, ln_outage_exact_type1,
    outage_asymptotic_type1, outage_exact_type1,
};

pub use crate::channel::db_to_linear;
use crate::error::{require_positive, Error, Result};

/// HARQ flavour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scheme {
    /// Each round decoded on its own; failed packets are discarded.
    TypeI,
    /// Rounds are MRC-combined so per-round SNRs add.
    ChaseCombining,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::TypeI => "type1",
            Scheme::ChaseCombining => "cc",
        }
    }
}

/// Scheme, maximum rounds M, rate R (bit/s/Hz) and transmit SNR ρ (linear).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarqConfig {
    pub scheme: Scheme,
    pub rounds: u32,
    pub rate: f64,
    pub rho: f64,
}

impl HarqConfig {
    pub fn new(scheme: Scheme, rounds: u32, rate: f64, rho: f64) -> Result<Self> {
        let c = Self {
            scheme,
            rounds,
            rate,
            rho,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds < 1 {
            return Err(Error::domain("rounds", "M must be >= 1"));
        }
        require_positive("rate", self.rate)?;
        require_positive("rho", self.rho)?;
        if !self.snr_threshold().is_finite() {
            return Err(Error::domain("rate", format!("2^R - 1 overflows at R = {}", self.rate)));
        }
        Ok(())
    }

    pub fn with_scheme(self, scheme: Scheme) -> Self {
        Self { scheme, ..self }
    }

    pub fn with_rho(self, rho: f64) -> Self {
        Self { rho, ..self }
    }

    pub fn with_rate(self, rate: f64) -> Self {
        Self { rate, ..self }
    }

    pub fn with_rounds(self, rounds: u32) -> Self {
        Self { rounds, ..self }
    }

    /// 2^R − 1, the accumulated-SNR outage threshold.
    pub fn snr_threshold(&self) -> f64 {
        (self.rate * std::f64::consts::LN_2).exp_m1()
    }

    /// Envelope threshold √((2^R − 1)/ρ) / h_l of a single round.
    pub fn envelope_threshold(&self, h_l: f64) -> f64 {
        (self.snr_threshold() / self.rho).sqrt() / h_l
    }

    pub(crate) fn require(&self, scheme: Scheme) -> Result<()> {
        self.validate()?;
        if self.scheme != scheme {
            return Err(Error::domain(
                "scheme",
                format!("expected {scheme:?}, got {:?}", self.scheme),
            ));
        }
        Ok(())
    }
}
