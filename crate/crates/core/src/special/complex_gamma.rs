//! Complex log-gamma on the principal (analytic) branch.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// B_{2k} / (2k (2k − 1)) for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Shift target for the Stirling series.
const STIRLING_RADIUS: f64 = 16.0;

/// Principal-branch log Γ(z): analytic on ℂ minus the non-positive real axis,
/// real on the positive real axis. For `Re z < 0.5` the reflection formula is
/// used with the 2πi branch correction that keeps the result continuous.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("z", format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.im == 0.0 && z.re > 0.0 {
        return Ok(Complex64::new(crate::special::ln_gamma(z.re), 0.0));
    }
    if z.re < 0.5 {
        let reflected = log_gamma_right(Complex64::new(1.0, 0.0) - z);
        let branch = (2.0 * PI).copysign(z.im) * (0.5 * z.re + 0.25).floor();
        return Ok(Complex64::new(LN_PI, branch) - log_sinpi(z) - reflected);
    }
    Ok(log_gamma_right(z))
}

/// Stirling series with upward recurrence; requires `Re z ≥ 0.5`.
fn log_gamma_right(z: Complex64) -> Complex64 {
    // ln of the shift product: moduli multiplied (one rounding in the final
    // log), arguments summed so the branch stays continuous.
    let mut modulus = 1.0;
    let mut arg = 0.0;
    let mut w = z;
    if w.norm() < STIRLING_RADIUS {
        let n = (STIRLING_RADIUS - w.re).ceil().max(0.0) as usize;
        for _ in 0..n {
            modulus *= w.norm();
            arg += w.arg();
            w += 1.0;
        }
    }
    let shift = Complex64::new(modulus.ln(), arg);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series - shift
}

fn sinpi_real(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    (PI * r).sin()
}

fn cospi_real(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.5 || r == 1.5 {
        return 0.0;
    }
    (PI * r).cos()
}

/// Principal log of sin(πz), stable for large |Im z|.
fn log_sinpi(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        let s = Complex64::new(
            sinpi_real(z.re) * (PI * z.im).cosh(),
            cospi_real(z.re) * (PI * z.im).sinh(),
        );
        return s.ln();
    }
    if z.im < 0.0 {
        return log_sinpi(z.conj()).conj();
    }
    // sin(πz) = (i/2) e^{−iπz} (1 − e^{2iπz}),  |e^{2iπz}| = e^{−2π Im z} ≪ 1
    let e2 = Complex64::new(0.0, 2.0 * PI * z.re).exp() * (-2.0 * PI * z.im).exp();
    let tail = (Complex64::new(1.0, 0.0) - e2).ln();
    let re = PI * z.im - std::f64::consts::LN_2 + tail.re;
    let im = wrap_angle(-PI * z.re + 0.5 * PI + tail.im);
    Complex64::new(re, im)
}

fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_and_half() {
        let v = log_gamma_complex(c(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-15);
        let v = log_gamma_complex(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5 * PI.ln()).abs() < 1e-15 && v.im.abs() < 1e-15, "{v}");
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(log_gamma_complex(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(log_gamma_complex(c(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert!(log_gamma_complex(c(-3.0, 1e-3)).is_ok());
    }

    #[test]
    fn matches_real_log_gamma_on_positive_axis() {
        for &x in &[0.6, 1.7, 3.2, 10.5, 33.0, 170.2] {
            let v = log_gamma_complex(c(x, 0.0)).unwrap();
            let want = crate::special::ln_gamma(x);
            assert!((v.re - want).abs() <= 1e-13 * want.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn recurrence_holds_off_axis() {
        // lnΓ(z+1) = lnΓ(z) + ln z for Re z > 0
        for &(re, im) in &[(0.7, 3.0), (2.0, -25.0), (5.5, 180.0), (0.55, 0.01)] {
            let z = c(re, im);
            let lhs = log_gamma_complex(z + 1.0).unwrap();
            let rhs = log_gamma_complex(z).unwrap() + z.ln();
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0), "z={z}");
        }
    }
}
