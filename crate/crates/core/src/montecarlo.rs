//! Seeded Monte-Carlo outage estimation straight from the mutual-information
//! definitions: Type-I takes the best single round, CC adds per-round SNRs.
//!
//! Streams use ChaCha8 seeded with `seed_from_u64(seed)` and selected with
//! `set_stream(k)`, so stream k's sequence depends only on `(seed, k)` and
//! distinct streams never overlap. Within a trial, round envelopes are drawn
//! in order, each consuming a gamma variate then a uniform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{require_positive, Error, Result};
use crate::exec::Executor;
use crate::fading::FadingPointingParams;
use crate::outage::{HarqConfig, Scheme};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSpec {
    pub trials: u64,
    pub seed: u64,
    pub streams: u32,
    /// Two-sided confidence level of the reported half-width.
    pub confidence: f64,
}

impl Default for McSpec {
    fn default() -> Self {
        Self {
            trials: 1_000_000,
            seed: 0x5eed,
            streams: 64,
            confidence: 0.99,
        }
    }
}

impl McSpec {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            ..Self::default()
        }
    }

    pub fn with_streams(mut self, streams: u32) -> Self {
        self.streams = streams;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::domain("trials", "must be at least 1"));
        }
        if self.streams == 0 {
            return Err(Error::domain("streams", "must be at least 1"));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::domain(
                "confidence",
                format!("must lie in (0, 1), got {}", self.confidence),
            ));
        }
        Ok(())
    }

    /// Trials assigned to stream `k`; the remainder goes to the last stream.
    pub fn stream_trials(&self, k: u32) -> u64 {
        let base = self.trials / self.streams as u64;
        if k + 1 == self.streams {
            base + self.trials % self.streams as u64
        } else {
            base
        }
    }
}

/// Where a reported probability came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Exact,
    Asymptotic,
    MonteCarlo,
    Convolution,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::Asymptotic => "asymptotic",
            Provenance::MonteCarlo => "mc",
            Provenance::Convolution => "convolution",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    pub p_hat: f64,
    /// Zero for non-sampled provenances.
    pub half_width: f64,
    pub trials: u64,
    pub provenance: Provenance,
}

impl OutageEstimate {
    fn from_counts(outages: u64, trials: u64, confidence: f64) -> Self {
        let n = trials as f64;
        let p = outages as f64 / n;
        let z = Normal::standard().inverse_cdf(0.5 + confidence / 2.0);
        let half_width = if outages < 10 {
            // Wilson score interval, reported as half its width.
            let z2n = z * z / n;
            z / (1.0 + z2n) * (p * (1.0 - p) / n + z2n / (4.0 * n)).sqrt()
        } else {
            z * (p * (1.0 - p) / n).sqrt()
        };
        Self {
            p_hat: p,
            half_width,
            trials,
            provenance: Provenance::MonteCarlo,
        }
    }
}

/// Outage counts of one trial batch for (Type-I, CC) on shared draws.
fn run_stream(
    fp: &FadingPointingParams,
    snr_scale: f64,
    rounds: u32,
    rate: f64,
    mc: &McSpec,
    k: u32,
) -> (u64, u64) {
    let sampler = fp.sampler();
    let mut rng = ChaCha8Rng::seed_from_u64(mc.seed);
    rng.set_stream(k as u64);
    let (mut type1, mut cc) = (0u64, 0u64);
    for _ in 0..mc.stream_trials(k) {
        let mut best = 0.0f64;
        let mut total = 0.0f64;
        for _ in 0..rounds {
            let h = sampler.sample(&mut rng);
            let snr = snr_scale * h * h;
            best = best.max((1.0 + snr).log2());
            total += snr;
        }
        type1 += u64::from(best < rate);
        cc += u64::from((1.0 + total).log2() < rate);
    }
    (type1, cc)
}

fn check(h_l: f64, cfg: &HarqConfig, mc: &McSpec) -> Result<()> {
    require_positive("h_l", h_l)?;
    cfg.validate()?;
    mc.validate()
}

/// Type-I and CC outage estimated from the same channel draws; the CC
/// outage indicator never exceeds the Type-I one trial by trial.
pub fn simulate_both(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
    mc: &McSpec,
) -> Result<(OutageEstimate, OutageEstimate)> {
    simulate_both_with(fp, h_l, cfg, mc, Executor::default())
}

pub fn simulate_both_with(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
    mc: &McSpec,
    exec: Executor,
) -> Result<(OutageEstimate, OutageEstimate)> {
    check(h_l, cfg, mc)?;
    let scale = cfg.rho * h_l * h_l;
    let counts = exec.map_indexed(mc.streams as usize, |k| {
        run_stream(fp, scale, cfg.rounds, cfg.rate, mc, k as u32)
    });
    let (t1, cc) = counts
        .iter()
        .fold((0, 0), |(a, b), &(x, y)| (a + x, b + y));
    Ok((
        OutageEstimate::from_counts(t1, mc.trials, mc.confidence),
        OutageEstimate::from_counts(cc, mc.trials, mc.confidence),
    ))
}

/// Outage estimate for the scheme selected in `cfg`.
pub fn simulate_outage(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
    mc: &McSpec,
) -> Result<OutageEstimate> {
    simulate_outage_with(fp, h_l, cfg, mc, Executor::default())
}

pub fn simulate_outage_with(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
    mc: &McSpec,
    exec: Executor,
) -> Result<OutageEstimate> {
    let (t1, cc) = simulate_both_with(fp, h_l, cfg, mc, exec)?;
    Ok(match cfg.scheme {
        Scheme::TypeI => t1,
        Scheme::ChaseCombining => cc,
    })
}

/// Per-trial outage indicators (Type-I, CC) of one stream, in draw order.
pub fn trial_indicators(
    fp: &FadingPointingParams,
    h_l: f64,
    cfg: &HarqConfig,
    mc: &McSpec,
    stream: u32,
) -> Result<Vec<(bool, bool)>> {
    check(h_l, cfg, mc)?;
    let sampler = fp.sampler();
    let scale = cfg.rho * h_l * h_l;
    let mut rng = ChaCha8Rng::seed_from_u64(mc.seed);
    rng.set_stream(stream as u64);
    Ok((0..mc.stream_trials(stream))
        .map(|_| {
            let snrs: Vec<f64> = (0..cfg.rounds)
                .map(|_| {
                    let h = sampler.sample(&mut rng);
                    scale * h * h
                })
                .collect();
            let best = snrs.iter().fold(0.0f64, |m, &s| m.max((1.0 + s).log2()));
            let total: f64 = snrs.iter().sum();
            (best < cfg.rate, (1.0 + total).log2() < cfg.rate)
        })
        .collect())
}
