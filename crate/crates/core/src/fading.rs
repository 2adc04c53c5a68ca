//! Composite α-μ fading and stochastic misalignment envelope |h_pf|.
//!
//! The envelope is the product h_f · h_p of an α-μ fading amplitude with
//! α-root mean ĥ_f and a pointing-error gain h_p = S0 · U^{1/φ}. Its density
//! involves Γ((αμ−φ)/α, ·), whose first argument is negative whenever φ > αμ.

use rand::Rng;
use rand_distr::{Distribution, Gamma, Open01};

use crate::error::{require_positive, Error, Result};
use crate::special::quad::{integrate_real, QuadConfig};
use crate::special::{ln_gamma, ln_upper_gamma, lower_gamma_regularized};

/// Minimum separation |αμ − φ| accepted at construction.
pub const REGIME_GAP: f64 = 1e-9;

/// Which factor dominates the small-envelope tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// αμ − φ > 0: the pointing error dominates, outage ∝ ρ^{−φ/2} per round.
    PointingLimited,
    /// αμ − φ < 0: the fading dominates, outage ∝ ρ^{−αμ/2} per round.
    FadingLimited,
}

impl Regime {
    /// Sign of αμ − φ.
    pub fn sign(self) -> i8 {
        match self {
            Regime::PointingLimited => 1,
            Regime::FadingLimited => -1,
        }
    }
}

/// Full parameterization of the |h_pf| distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingPointingParams {
    pub alpha: f64,
    pub mu: f64,
    pub h_f_hat: f64,
    pub s0: f64,
    pub phi: f64,
}

impl FadingPointingParams {
    pub fn new(alpha: f64, mu: f64, h_f_hat: f64, s0: f64, phi: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        require_positive("mu", mu)?;
        require_positive("h_f_hat", h_f_hat)?;
        require_positive("phi", phi)?;
        if !(s0 > 0.0 && s0 <= 1.0) {
            return Err(Error::domain("s0", format!("must lie in (0, 1], got {s0}")));
        }
        if (alpha * mu - phi).abs() < REGIME_GAP {
            return Err(Error::UnsupportedRegime {
                alpha_mu: alpha * mu,
                phi,
            });
        }
        Ok(Self {
            alpha,
            mu,
            h_f_hat,
            s0,
            phi,
        })
    }

    pub fn regime(&self) -> Regime {
        if self.alpha * self.mu > self.phi {
            Regime::PointingLimited
        } else {
            Regime::FadingLimited
        }
    }

    /// True when μ is integral so the finite-sum CDF applies.
    pub fn has_integer_mu(&self) -> bool {
        self.mu.fract() == 0.0
    }

    /// μ x^α / (S0 ĥ_f)^α.
    pub fn scaled_argument(&self, x: f64) -> f64 {
        self.mu * (x / (self.s0 * self.h_f_hat)).powf(self.alpha)
    }

    /// First argument (αμ − φ)/α of the incomplete gamma in the density.
    fn density_order(&self) -> f64 {
        (self.alpha * self.mu - self.phi) / self.alpha
    }

    /// Exponent e with pdf(x) ~ x^{e−1} as x → 0.
    pub(crate) fn origin_exponent(&self) -> f64 {
        self.phi.min(self.alpha * self.mu)
    }

    fn check_x(x: f64) -> Result<()> {
        if x >= 0.0 && !x.is_nan() {
            Ok(())
        } else {
            Err(Error::domain("x", format!("envelope value must be >= 0, got {x}")))
        }
    }

    /// Density of |h_pf| at `x`. Returns +∞ at exactly x = 0 when the
    /// density diverges there.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if x == 0.0 {
            return Ok(self.pdf_at_origin());
        }
        if x.is_infinite() {
            return Ok(0.0);
        }
        let (a, m, p) = (self.alpha, self.mu, self.phi);
        let y = self.scaled_argument(x);
        if y.is_infinite() {
            return Ok(0.0);
        }
        let ln = p.ln() + (p / a) * m.ln() + (p - 1.0) * x.ln()
            - p * (self.s0 * self.h_f_hat).ln()
            - ln_gamma(m)
            + ln_upper_gamma(self.density_order(), y)?;
        Ok(ln.exp())
    }

    fn pdf_at_origin(&self) -> f64 {
        let e = self.origin_exponent();
        if e < 1.0 {
            return f64::INFINITY;
        }
        if e > 1.0 {
            return 0.0;
        }
        let (a, m, p) = (self.alpha, self.mu, self.phi);
        let sh = self.s0 * self.h_f_hat;
        match self.regime() {
            Regime::PointingLimited => {
                p * m.powf(p / a) * crate::special::gamma(self.density_order())
                    / (sh.powf(p) * crate::special::gamma(m))
            }
            Regime::FadingLimited => {
                p * m.powf(m) / (sh.powf(a * m) * crate::special::gamma(m) * (p / a - m))
            }
        }
    }

    /// Natural log of the CDF, evaluated as
    /// ln[P(μ, y) + y^{φ/α} Γ(μ − φ/α, y) / Γ(μ)], y = μ x^α/(S0 ĥ_f)^α.
    ///
    /// This is an exact rearrangement of the finite-sum closed form with two
    /// positive terms, so it keeps full relative accuracy deep in the lower
    /// tail where `1 − Σ` would cancel. It is valid for any μ > 0.
    pub fn ln_cdf(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if x == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        let y = self.scaled_argument(x);
        if y.is_infinite() {
            return Ok(0.0);
        }
        let (a, m, p) = (self.alpha, self.mu, self.phi);
        let ln_y = y.ln();
        let ln_p = if y < m + 1.0 {
            ln_lower_regularized_small(m, y)?
        } else {
            lower_gamma_regularized(m, y)?.ln()
        };
        let ln_pointing = (p / a) * ln_y + ln_upper_gamma(m - p / a, y)? - ln_gamma(m);
        let hi = ln_p.max(ln_pointing);
        let lo = ln_p.min(ln_pointing);
        Ok((hi + (lo - hi).exp().ln_1p()).min(0.0))
    }

    /// CDF of |h_pf|. Integer μ uses the closed form; any other μ is
    /// dispatched to [`Self::cdf_numeric`].
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if self.has_integer_mu() {
            self.ln_cdf(x).map(f64::exp)
        } else {
            self.cdf_numeric(x)
        }
    }

    /// Literal finite-sum closed form
    /// 1 − φ μ^{φ/α} x^φ / (α S0^φ ĥ_f^φ) Σ_{n<μ} Γ((αn − φ)/α, y) / n!.
    /// Loses relative accuracy when the CDF is small; kept for cross-checks.
    pub fn cdf_series(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if !self.has_integer_mu() {
            return Err(Error::domain("mu", "finite-sum CDF needs an integer mu"));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        let (a, m, p) = (self.alpha, self.mu, self.phi);
        let y = self.scaled_argument(x);
        let ln_pref = p.ln() + (p / a) * y.ln() - a.ln();
        let mut sum = 0.0;
        let mut ln_fact = 0.0;
        for n in 0..(m as usize) {
            if n > 0 {
                ln_fact += (n as f64).ln();
            }
            sum += (ln_pref + ln_upper_gamma((a * n as f64 - p) / a, y)? - ln_fact).exp();
        }
        Ok(1.0 - sum)
    }

    /// CDF by adaptive quadrature of the density over [0, x]. The substitution
    /// x = X w^{1/e} with e = min(φ, αμ) removes the origin singularity.
    pub fn cdf_numeric(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if x == 0.0 {
            return Ok(0.0);
        }
        let cap = self.envelope_bound();
        let upper = x.min(cap);
        let e = self.origin_exponent();
        let q = 1.0 / e;
        let integrand = |w: f64| {
            let u = upper * w.powf(q);
            let jac = upper * q * w.powf(q - 1.0);
            self.pdf(u).map(|v| v * jac).unwrap_or(f64::NAN)
        };
        let cfg = QuadConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_intervals: 4000,
        };
        let v = integrate_real(integrand, 0.0, 1.0, cfg)?;
        if !v.is_finite() {
            return Err(Error::numeric("cdf quadrature", f64::INFINITY));
        }
        Ok(v.clamp(0.0, 1.0))
    }

    /// Envelope level beyond which the survival probability is below 1e-20
    /// (from h_pf ≤ S0 h_f and the gamma tail of h_f^α).
    pub fn envelope_bound(&self) -> f64 {
        let m = self.mu;
        let mut y = m + 10.0;
        while ln_upper_gamma(m, y).map(|l| l - ln_gamma(m)).unwrap_or(f64::NEG_INFINITY)
            > -46.0
        {
            y *= 1.25;
        }
        self.s0 * self.h_f_hat * (y / m).powf(1.0 / self.alpha)
    }

    /// Builds a reusable sampler for envelope draws.
    pub fn sampler(&self) -> EnvelopeSampler {
        EnvelopeSampler::new(self)
    }

    /// One envelope draw; see [`EnvelopeSampler`].
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.sampler().sample(rng)
    }
}

/// ln P(a, y) for y < a + 1, in log form so tiny values do not underflow.
fn ln_lower_regularized_small(a: f64, y: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut ap = a;
    for _ in 0..10_000 {
        ap += 1.0;
        term *= y / ap;
        sum += term;
        if term < sum * 1e-17 {
            return Ok(a * y.ln() - y - ln_gamma(a + 1.0) + sum.ln());
        }
    }
    Err(Error::numeric("lower incomplete gamma series", term / sum))
}

/// Composition sampler: h_f = ĥ_f (G/μ)^{1/α} with G ~ Gamma(μ, 1) and
/// h_p = S0 U^{1/φ} with U ~ Uniform(0, 1); the draw is h_f · h_p.
///
/// Each draw consumes the gamma variate first, then one uniform.
#[derive(Debug, Clone)]
pub struct EnvelopeSampler {
    gamma: Gamma<f64>,
    inv_mu: f64,
    inv_alpha: f64,
    inv_phi: f64,
    h_f_hat: f64,
    s0: f64,
}

impl EnvelopeSampler {
    pub fn new(p: &FadingPointingParams) -> Self {
        Self {
            gamma: Gamma::new(p.mu, 1.0).expect("mu validated positive"),
            inv_mu: 1.0 / p.mu,
            inv_alpha: 1.0 / p.alpha,
            inv_phi: 1.0 / p.phi,
            h_f_hat: p.h_f_hat,
            s0: p.s0,
        }
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let g = self.gamma.sample(rng);
        let u: f64 = Open01.sample(rng);
        let h_f = self.h_f_hat * (g * self.inv_mu).powf(self.inv_alpha);
        let h_p = self.s0 * u.powf(self.inv_phi);
        h_f * h_p
    }
}
