//! TOML run configuration. Decibel values are accepted only under keys
//! ending in `_db`; everything else is linear SI.

use serde::Deserialize;

use crate::channel::{
    db_to_linear, path_gain, pointing_params, MisalignmentGeometry, PointingParams,
    PointingSource, ThzLinkGeometry,
};
use crate::fading::FadingPointingParams;
use crate::montecarlo::McSpec;
use crate::outage::Scheme;

use super::ConfigError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub link: LinkSection,
    pub fading: FadingSection,
    pub pointing: PointingSection,
    pub harq: HarqSection,
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub montecarlo: MonteCarloSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSection {
    pub frequency_hz: f64,
    pub distance_m: f64,
    pub tx_gain_db: f64,
    pub rx_gain_db: f64,
    #[serde(default)]
    pub kappa_per_m: f64,
    pub temperature_k: Option<f64>,
    pub humidity: Option<f64>,
    pub pressure_pa: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FadingSection {
    pub alpha: f64,
    pub mu: f64,
    #[serde(default = "one")]
    pub h_f_hat: f64,
}

fn one() -> f64 {
    1.0
}

/// Either geometry (`w_d1`, `r1`, `sigma_s`), a beam width (`w_e`,
/// `sigma_s`) or a direct `phi`, each with optional `s0`. A direct `phi`
/// wins over the others; `w_e` wins over geometry.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointingSection {
    pub w_d1: Option<f64>,
    pub r1: Option<f64>,
    pub sigma_s: Option<f64>,
    pub w_e: Option<f64>,
    pub s0: Option<f64>,
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarqSection {
    pub rounds: u32,
    /// Fixed rate when the SNR is swept (bit/s/Hz).
    pub rate: Option<f64>,
    /// Fixed transmit SNR when the rate is swept.
    pub snr_db: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Rate,
    SnrDb,
}

impl SweepVariable {
    pub fn label(self) -> &'static str {
        match self {
            SweepVariable::Rate => "rate",
            SweepVariable::SnrDb => "snr_db",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Asymptotic,
    Mc,
    Convolution,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Asymptotic => "asymptotic",
            Method::Mc => "mc",
            Method::Convolution => "convolution",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SchemeName {
    #[serde(rename = "type1")]
    TypeI,
    #[serde(rename = "cc")]
    Cc,
}

impl From<SchemeName> for Scheme {
    fn from(s: SchemeName) -> Self {
        match s {
            SchemeName::TypeI => Scheme::TypeI,
            SchemeName::Cc => Scheme::ChaseCombining,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub methods: Vec<Method>,
    pub schemes: Vec<SchemeName>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloSection {
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_streams")]
    pub streams: u32,
    #[serde(default = "default_confidence")]
    pub confidence: f64,
}

fn default_trials() -> u64 {
    McSpec::default().trials
}
fn default_seed() -> u64 {
    McSpec::default().seed
}
fn default_streams() -> u32 {
    McSpec::default().streams
}
fn default_confidence() -> f64 {
    McSpec::default().confidence
}

impl Default for MonteCarloSection {
    fn default() -> Self {
        Self {
            trials: default_trials(),
            seed: default_seed(),
            streams: default_streams(),
            confidence: default_confidence(),
        }
    }
}

/// Validated sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    /// The non-swept member of (R, ρ): the rate, or ρ in dB.
    pub fixed: f64,
    pub methods: Vec<Method>,
    pub schemes: Vec<Scheme>,
    pub mc: McSpec,
}

impl SweepSpec {
    /// Grid points start, start+step, … up to stop (inclusive up to rounding).
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

/// Everything derived from a configuration file.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub raw: RunConfig,
    pub link: ThzLinkGeometry,
    pub h_l: f64,
    pub pointing: PointingParams,
    /// Set when a direct value shadowed another pointing specification.
    pub pointing_note: Option<String>,
    pub fading: FadingPointingParams,
    pub rounds: u32,
    pub sweep: Option<SweepSpec>,
    pub mc: McSpec,
}

fn field(path: &str, err: impl std::fmt::Display) -> ConfigError {
    ConfigError::Invalid(format!("{path}: {err}"))
}

pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
    toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
}

pub fn resolve(raw: RunConfig) -> Result<Resolved, ConfigError> {
    let l = &raw.link;
    let mut link = ThzLinkGeometry::new(
        l.frequency_hz,
        l.distance_m,
        db_to_linear(l.tx_gain_db),
        db_to_linear(l.rx_gain_db),
    )
    .with_kappa(l.kappa_per_m);
    if let Some(t) = l.temperature_k {
        link.temperature_k = t;
    }
    if let Some(h) = l.humidity {
        link.humidity = h;
    }
    if let Some(p) = l.pressure_pa {
        link.pressure_pa = p;
    }
    let h_l = path_gain(&link).map_err(|e| field("link", e))?;

    let (pointing, pointing_note) = resolve_pointing(&raw.pointing)?;
    let f = &raw.fading;
    let fading = FadingPointingParams::new(f.alpha, f.mu, f.h_f_hat, pointing.s0, pointing.phi)
        .map_err(|e| field("fading", e))?;

    let rounds = raw.harq.rounds;
    if rounds == 0 {
        return Err(field("harq.rounds", "must be at least 1"));
    }
    let m = &raw.montecarlo;
    let mc = McSpec {
        trials: m.trials,
        seed: m.seed,
        streams: m.streams,
        confidence: m.confidence,
    };
    mc.validate().map_err(|e| field("montecarlo", e))?;
    let sweep = raw
        .sweep
        .as_ref()
        .map(|s| resolve_sweep(s, &raw.harq, mc))
        .transpose()?;
    Ok(Resolved {
        raw,
        link,
        h_l,
        pointing,
        pointing_note,
        fading,
        rounds,
        sweep,
        mc,
    })
}

fn resolve_pointing(p: &PointingSection) -> Result<(PointingParams, Option<String>), ConfigError> {
    let has_geometry = p.w_d1.is_some() || p.r1.is_some();
    if let Some(phi) = p.phi {
        let note = (has_geometry || p.w_e.is_some())
            .then(|| "direct phi/s0 override the pointing geometry".to_string());
        let pp = PointingParams::direct(p.s0, phi).map_err(|e| field("pointing", e))?;
        return Ok((pp, note));
    }
    let sigma_s = p
        .sigma_s
        .ok_or_else(|| field("pointing.sigma_s", "required unless phi is given"))?;
    if let Some(w_e) = p.w_e {
        let note = has_geometry.then(|| "direct w_e overrides the pointing geometry".to_string());
        let pp = PointingParams::from_beam_width(w_e, sigma_s, p.s0)
            .map_err(|e| field("pointing", e))?;
        return Ok((pp, note));
    }
    match (p.w_d1, p.r1) {
        (Some(w_d1), Some(r1)) => {
            let mut pp = pointing_params(&MisalignmentGeometry { w_d1, r1, sigma_s })
                .map_err(|e| field("pointing", e))?;
            let note = p.s0.map(|s0| {
                pp.s0 = s0;
                pp.source = PointingSource::Direct { s0_defaulted: false };
                "direct s0 overrides the geometric value".to_string()
            });
            Ok((pp, note))
        }
        _ => Err(field(
            "pointing",
            "give phi, w_e with sigma_s, or w_d1 and r1 with sigma_s",
        )),
    }
}

fn resolve_sweep(s: &SweepSection, h: &HarqSection, mc: McSpec) -> Result<SweepSpec, ConfigError> {
    if !(s.start.is_finite() && s.stop.is_finite() && s.start < s.stop) {
        return Err(field("sweep", format!("need start < stop, got {} and {}", s.start, s.stop)));
    }
    if !(s.step.is_finite() && s.step > 0.0) {
        return Err(field("sweep.step", format!("must be > 0, got {}", s.step)));
    }
    if s.methods.is_empty() {
        return Err(field("sweep.methods", "must not be empty"));
    }
    if s.schemes.is_empty() {
        return Err(field("sweep.schemes", "must not be empty"));
    }
    let fixed = match s.variable {
        SweepVariable::Rate => h
            .snr_db
            .ok_or_else(|| field("harq.snr_db", "required when sweeping the rate"))?,
        SweepVariable::SnrDb => h
            .rate
            .ok_or_else(|| field("harq.rate", "required when sweeping the SNR"))?,
    };
    if s.variable == SweepVariable::Rate && s.start <= 0.0 {
        return Err(field("sweep.start", "rates must be > 0"));
    }
    if s.variable == SweepVariable::SnrDb && !(fixed > 0.0) {
        return Err(field("harq.rate", "must be > 0"));
    }
    let mut methods = s.methods.clone();
    methods.sort();
    methods.dedup();
    let mut schemes: Vec<Scheme> = s.schemes.iter().map(|&x| x.into()).collect();
    schemes.sort();
    schemes.dedup();
    Ok(SweepSpec {
        variable: s.variable,
        start: s.start,
        stop: s.stop,
        step: s.step,
        fixed,
        methods,
        schemes,
        mc,
    })
}
