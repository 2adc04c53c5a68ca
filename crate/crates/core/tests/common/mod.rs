//! Oracles shared by the integration and acceptance suites.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thz_harq::channel::default_s0;
use thz_harq::special::quad::{integrate, integrate_to_infinity, QuadConfig};
use thz_harq::special::*;
use thz_harq::FadingPointingParams;

/// Path gain of the 275 GHz, 20 m, 55 dBi link.
pub const H_L: f64 = 1.371_665_291_455_229;

pub fn reference_case(phi: f64) -> FadingPointingParams {
    FadingPointingParams::new(2.0, 1.0, 1.0, default_s0(), phi).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest relative error of
/// ∫₀^∞ x^{s−1} e^{−b t x²} dx = ½ (b t)^{−s/2} Γ(s/2)
/// over random (s, b, t) with Re s ∈ (0, 4), Re t > 0.
pub fn mellin_gaussian_max_error(draws: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let s = c(rng.random_range(0.05..3.95), rng.random_range(-2.0..2.0));
        let b: f64 = rng.random_range(0.1..10.0);
        let t = Complex64::from_polar(rng.random_range(0.1..10.0), rng.random_range(-1.2..1.2));
        let bt = t * b;
        let q = 1.0 / s.re;
        // x = w^q removes the endpoint singularity
        let f = |w: f64| {
            if w == 0.0 {
                return c(0.0, 0.0);
            }
            let x = w.powf(q);
            (x.ln() * (s - 1.0) - bt * (x * x)).exp() * (q * w.powf(q - 1.0))
        };
        let got = integrate_to_infinity(f, 0.0, QuadConfig::rel(1e-12)).unwrap().value;
        let want = 0.5 * (-(s * 0.5) * bt.ln() + log_gamma_complex(s * 0.5).unwrap()).exp();
        worst = worst.max((got - want).norm() / want.norm());
    }
    worst
}

/// Largest relative error of
/// ∫₀^∞ x^{s−1} Γ((αμ−φ)/α, c x^α) dx = (1/s) c^{−s/α} Γ((αμ+s−φ)/α),
/// c = μ/(ĥ_f S0)^α, over random parameters and Re s inside the strip.
pub fn mellin_upper_gamma_max_error(draws: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < draws {
        let alpha: f64 = rng.random_range(0.5..4.0);
        let mu: f64 = rng.random_range(0.5..4.0);
        let phi: f64 = rng.random_range(0.1..6.0);
        let s0: f64 = rng.random_range(0.3..1.0);
        let h: f64 = rng.random_range(0.5..2.0);
        let am = alpha * mu;
        if (am - phi).abs() < 1e-3 {
            continue;
        }
        let lo = (phi - am).max(0.0);
        let re = lo + (phi - lo) * rng.random_range(0.2..0.8);
        let s = c(re, rng.random_range(-2.0..2.0));
        let cc = mu / (h * s0).powf(alpha);
        let a = (am - phi) / alpha;
        // In v = ln x the integrand e^{s v} Γ(a, c e^{α v}) decays like
        // e^{e v} on the left and doubly exponentially on the right.
        let e = re + (am - phi).min(0.0);
        if 40.0 * alpha / e > 650.0 {
            // left tail would need arguments below the f64 range
            continue;
        }
        let v_lo = -40.0 / e - cc.ln() / alpha;
        let v_hi = (800.0 / cc).ln() / alpha;
        let f = |v: f64| {
            let ln_g = ln_upper_gamma(a, cc * (alpha * v).exp()).unwrap();
            (s * v + ln_g).exp()
        };
        let cfg = QuadConfig { abs_tol: 0.0, rel_tol: 1e-12, max_intervals: 20_000 };
        let got = integrate(f, v_lo, v_hi, cfg).unwrap().value;
        let want = (-(s / alpha) * cc.ln()
            + log_gamma_complex((s + am - phi) / alpha).unwrap())
        .exp()
            / s;
        worst = worst.max((got - want).norm() / want.norm());
        done += 1;
    }
    worst
}

/// 1 − e^{−x} Σ_{k<m} x^k/k!
pub fn erlang_cdf(m: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..m {
        term *= x / k as f64;
        sum += term;
    }
    1.0 - (-x).exp() * sum
}

/// Largest absolute error of the inverted Erlang-M transform (1/t)(1+t)^{−M}.
pub fn erlang_inversion_max_error(orders: &[u32]) -> f64 {
    let mut worst = 0.0f64;
    for &m in orders {
        for &x in &[0.05, 0.5, 1.0, 2.5, 7.0, 20.0] {
            let got = bromwich_invert(|t: Complex64| Ok((t + 1.0).powi(-(m as i32)) / t), x).unwrap();
            worst = worst.max((got - erlang_cdf(m, x)).abs());
        }
    }
    worst
}

/// ∫₀^∞ pdf with x = w^{1/e} so the origin behaviour x^{e−1} is flattened.
pub fn total_mass(fp: &FadingPointingParams) -> f64 {
    let e = fp.phi.min(fp.alpha * fp.mu);
    let q = 1.0 / e;
    let f = |w: f64| {
        let x = w.powf(q);
        let v = if x == 0.0 { 0.0 } else { fp.pdf(x).unwrap() * q * w.powf(q - 1.0) };
        c(v, 0.0)
    };
    integrate_to_infinity(f, 0.0, QuadConfig::rel(1e-13)).unwrap().value.re
}

pub fn sorted_draws(fp: &FadingPointingParams, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = fp.sampler();
    let mut v: Vec<f64> = (0..n).map(|_| s.sample(&mut rng)).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// sup_x |F_n(x) − F(x)| over a sorted sample.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.6276 / (n as f64).sqrt()
}

/// Least-squares slope of y on x.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// √(p(1−p)/n)
pub fn binomial_se(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}
