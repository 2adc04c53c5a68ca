//! Deterministic THz link budget: the path gain `h_l` and the pointing-error
//! parameters derived from the beam/aperture/jitter geometry.
//!
//! The molecular absorption coefficient is an input; it is not modelled
//! here. Temperature, humidity and pressure are carried as metadata only.

use crate::error::{require_positive, Error, Result};
use crate::special::erf;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Carrier, distance, antenna and absorption parameters of the link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThzLinkGeometry {
    /// Carrier frequency (Hz).
    pub frequency_hz: f64,
    /// Link distance (m).
    pub distance_m: f64,
    /// Transmit antenna gain (linear).
    pub tx_gain: f64,
    /// Receive antenna gain (linear).
    pub rx_gain: f64,
    /// Molecular absorption coefficient (1/m).
    pub kappa_per_m: f64,
    /// Temperature (K), recorded only.
    pub temperature_k: f64,
    /// Relative humidity (fraction), recorded only.
    pub humidity: f64,
    /// Pressure (Pa), recorded only.
    pub pressure_pa: f64,
}

impl ThzLinkGeometry {
    /// Geometry with kappa = 0 and standard-atmosphere metadata.
    pub fn new(frequency_hz: f64, distance_m: f64, tx_gain: f64, rx_gain: f64) -> Self {
        Self {
            frequency_hz,
            distance_m,
            tx_gain,
            rx_gain,
            kappa_per_m: 0.0,
            temperature_k: 296.0,
            humidity: 0.5,
            pressure_pa: 101_325.0,
        }
    }

    pub fn with_kappa(mut self, kappa_per_m: f64) -> Self {
        self.kappa_per_m = kappa_per_m;
        self
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("frequency_hz", self.frequency_hz)?;
        require_positive("distance_m", self.distance_m)?;
        require_positive("tx_gain", self.tx_gain)?;
        require_positive("rx_gain", self.rx_gain)?;
        if !(self.kappa_per_m.is_finite() && self.kappa_per_m >= 0.0) {
            return Err(Error::domain(
                "kappa_per_m",
                format!("must be finite and >= 0, got {}", self.kappa_per_m),
            ));
        }
        Ok(())
    }
}

/// Converts a gain in dB to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// h_l = c √(Gt Gr) / (4π f d) · exp(−κ d / 2).
pub fn path_gain(geom: &ThzLinkGeometry) -> Result<f64> {
    geom.validate()?;
    let free_space = SPEED_OF_LIGHT * (geom.tx_gain * geom.rx_gain).sqrt()
        / (4.0 * std::f64::consts::PI * geom.frequency_hz * geom.distance_m);
    Ok(free_space * (-0.5 * geom.kappa_per_m * geom.distance_m).exp())
}

/// Beam footprint, aperture and jitter geometry at the receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MisalignmentGeometry {
    /// Beam footprint radius at the reference distance (m).
    pub w_d1: f64,
    /// Effective receive-aperture radius (m).
    pub r1: f64,
    /// Doubled spatial jitter standard deviation (m).
    pub sigma_s: f64,
}

/// Where the pointing-error parameters came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointingSource {
    Geometry,
    /// Supplied directly; `s0_defaulted` marks S0 = erf(1)².
    Direct { s0_defaulted: bool },
}

/// Pointing-error parameters feeding the composite fading law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingParams {
    /// √π w_d1 / (√2 r1); `None` when the parameters were supplied directly.
    pub zeta: Option<f64>,
    /// Fraction of the maximum collected power, erf(ζ)².
    pub s0: f64,
    /// Equivalent beam width radius.
    pub w_e: Option<f64>,
    /// w_e² / (4 σ_s²).
    pub phi: f64,
    pub source: PointingSource,
}

/// S0 used when neither geometry nor an explicit value is given.
pub fn default_s0() -> f64 {
    erf(1.0).powi(2)
}

/// Derives (ζ, S0, w_e, φ) from the misalignment geometry.
pub fn pointing_params(geom: &MisalignmentGeometry) -> Result<PointingParams> {
    require_positive("w_d1", geom.w_d1)?;
    require_positive("r1", geom.r1)?;
    require_positive("sigma_s", geom.sigma_s)?;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let zeta = sqrt_pi * geom.w_d1 / (std::f64::consts::SQRT_2 * geom.r1);
    let erf_zeta = erf(zeta);
    let s0 = erf_zeta * erf_zeta;
    if !(s0 > 0.0) {
        return Err(Error::domain("w_d1", "beam footprint too small: S0 underflows"));
    }
    // ln w_e² = 2 ln w_d1 + ½ ln π + ln(erf ζ / ζ) − ln 2 + ζ²
    let ln_we2 = 2.0 * geom.w_d1.ln() + 0.5 * std::f64::consts::PI.ln() + (erf_zeta / zeta).ln()
        - std::f64::consts::LN_2
        + zeta * zeta;
    let ln_phi = ln_we2 - (4.0 * geom.sigma_s * geom.sigma_s).ln();
    let w_e2 = ln_we2.exp();
    let phi = ln_phi.exp();
    if !(w_e2.is_finite() && phi.is_finite() && phi > 0.0) {
        return Err(Error::domain(
            "w_d1",
            format!("equivalent beam width overflows for zeta = {zeta}"),
        ));
    }
    Ok(PointingParams {
        zeta: Some(zeta),
        s0,
        w_e: Some(w_e2.sqrt()),
        phi,
        source: PointingSource::Geometry,
    })
}

impl PointingParams {
    /// Direct (S0, φ) override bypassing geometry. `None` selects erf(1)².
    pub fn direct(s0: Option<f64>, phi: f64) -> Result<Self> {
        require_positive("phi", phi)?;
        let (s0, defaulted) = match s0 {
            Some(v) => (v, false),
            None => (default_s0(), true),
        };
        if !(s0 > 0.0 && s0 <= 1.0) {
            return Err(Error::domain("s0", format!("must lie in (0, 1], got {s0}")));
        }
        Ok(Self {
            zeta: None,
            s0,
            w_e: None,
            phi,
            source: PointingSource::Direct {
                s0_defaulted: defaulted,
            },
        })
    }

    /// Direct override from the equivalent beam width and jitter.
    pub fn from_beam_width(w_e: f64, sigma_s: f64, s0: Option<f64>) -> Result<Self> {
        require_positive("w_e", w_e)?;
        require_positive("sigma_s", sigma_s)?;
        let mut p = Self::direct(s0, w_e * w_e / (4.0 * sigma_s * sigma_s))?;
        p.w_e = Some(w_e);
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_space_gain_at_275_ghz() {
        let g = ThzLinkGeometry::new(275e9, 20.0, 1.0, 1.0);
        let hl = path_gain(&g).unwrap();
        assert!((hl / 4.338e-6 - 1.0).abs() < 1e-3, "{hl}");
        let g55 = ThzLinkGeometry::new(275e9, 20.0, db_to_linear(55.0), db_to_linear(55.0));
        assert!((path_gain(&g55).unwrap() - 1.3717).abs() < 1e-3);
    }

    #[test]
    fn absorption_factorizes() {
        let g = ThzLinkGeometry::new(300e9, 35.0, 12.0, 7.0);
        let k = 0.013;
        let ratio = path_gain(&g.with_kappa(k)).unwrap() / path_gain(&g).unwrap();
        assert!((ratio / (-k * 35.0 / 2.0).exp() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_fields_are_named() {
        let g = ThzLinkGeometry::new(275e9, -1.0, 1.0, 1.0);
        match path_gain(&g) {
            Err(Error::Domain { field, .. }) => assert_eq!(field, "distance_m"),
            other => panic!("{other:?}"),
        }
        let g = ThzLinkGeometry::new(275e9, 1.0, 1.0, 1.0).with_kappa(f64::NAN);
        assert!(matches!(path_gain(&g), Err(Error::Domain { field: "kappa_per_m", .. })));
    }

    #[test]
    fn unit_zeta_gives_erf_one_squared() {
        let r1 = 0.1;
        let w_d1 = r1 * std::f64::consts::SQRT_2 / std::f64::consts::PI.sqrt();
        let p = pointing_params(&MisalignmentGeometry { w_d1, r1, sigma_s: 0.05 }).unwrap();
        assert!((p.zeta.unwrap() - 1.0).abs() < 1e-15);
        assert!((p.s0 - 0.710_144_626_438_078_2).abs() < 1e-12);
    }

    #[test]
    fn doubling_jitter_quarters_phi() {
        let g = MisalignmentGeometry { w_d1: 0.3, r1: 0.1, sigma_s: 0.2 };
        let a = pointing_params(&g).unwrap().phi;
        let b = pointing_params(&MisalignmentGeometry { sigma_s: 0.4, ..g }).unwrap().phi;
        assert!((a / b - 4.0).abs() < 1e-13);
    }

    #[test]
    fn small_footprint_limit() {
        let g = MisalignmentGeometry { w_d1: 1e-9, r1: 1.0, sigma_s: 1.0 };
        let p = pointing_params(&g).unwrap();
        assert!(p.s0 > 0.0 && p.s0 < 1e-17);
        // w_e² → w_d1² as ζ → 0
        assert!((p.w_e.unwrap() / 1e-9 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn large_footprint_saturates_without_nan() {
        let g = MisalignmentGeometry { w_d1: 20.0, r1: 1.0, sigma_s: 1.0 };
        let p = pointing_params(&g).unwrap();
        assert_eq!(p.s0, 1.0);
        assert!(p.phi.is_finite());
        let g = MisalignmentGeometry { w_d1: 1e3, r1: 1.0, sigma_s: 1.0 };
        assert!(pointing_params(&g).is_err());
    }

    #[test]
    fn direct_override_defaults_s0() {
        let p = PointingParams::from_beam_width(3.0, 1.0, None).unwrap();
        assert_eq!(p.phi, 2.25);
        assert_eq!(p.s0, default_s0());
        assert_eq!(p.source, PointingSource::Direct { s0_defaulted: true });
        assert!(PointingParams::direct(Some(1.5), 1.0).is_err());
    }
}
