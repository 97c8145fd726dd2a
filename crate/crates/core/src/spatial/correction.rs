//! Translation edge-correction weights.

use core::f64::consts::PI;

use crate::error::{CcdError, Result};
use crate::math::gamma_half;
use crate::spatial::Window;

/// `∫₀^θ sinᵈ(t) dt` via the reduction
/// `Iₖ = −cos θ · sinᵏ⁻¹θ / k + (k − 1)/k · Iₖ₋₂`, with `I₀ = θ`, `I₁ = 1 − cos θ`.
pub fn sin_power_integral(d: usize, theta: f64) -> f64 {
    let s = libm::sin(theta);
    let c = libm::cos(theta);
    let (mut k, mut acc) = if d % 2 == 0 { (0, theta) } else { (1, 1.0 - c) };
    // sinᵏ⁻¹θ for the next k = k + 2
    let mut s_pow = if k == 0 { s } else { s * s };
    while k < d {
        k += 2;
        let kf = k as f64;
        acc = -c * s_pow / kf + (kf - 1.0) / kf * acc;
        s_pow *= s * s;
    }
    acc
}

/// Weight `∏ side / ∏ (side − |δ|)` for a pair displaced by `delta` inside a box.
pub fn translation_correction_box(delta: &[f64], window: &Window) -> Result<f64> {
    let Window::Box { lower, upper } = window else {
        return Err(CcdError::InvalidWindow("box translation correction needs a box"));
    };
    if delta.len() != lower.len() {
        return Err(CcdError::DimensionMismatch {
            expected: lower.len(),
            found: delta.len(),
        });
    }
    box_weight(delta, lower, upper)
}

pub(crate) fn box_weight(delta: &[f64], lower: &[f64], upper: &[f64]) -> Result<f64> {
    let mut w = 1.0;
    for ((&dx, l), u) in delta.iter().zip(lower).zip(upper) {
        let side = u - l;
        let shift = dx.abs();
        if shift >= side {
            return Err(CcdError::OutOfDomain {
                displacement: shift,
                extent: side,
            });
        }
        w *= side / (side - shift);
    }
    Ok(w)
}

/// Translation correction for a pair at distance `rho` inside a ball of
/// radius `radius` in `d` dimensions: the ball volume over the volume of the
/// lens `B ∩ (B + ρ)`, which is twice the spherical cap of height `R − ρ/2`.
pub fn translation_correction_ball(rho: f64, radius: f64, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(CcdError::UnsupportedDimension(0));
    }
    if !(radius > 0.0) {
        return Err(CcdError::InvalidWindow("ball radius must be positive"));
    }
    if !(rho >= 0.0) || rho >= 2.0 * radius {
        return Err(CcdError::OutOfDomain {
            displacement: rho,
            extent: 2.0 * radius,
        });
    }
    Ok(BallCorrection::new(d).weight(rho / radius))
}

/// Ball correction with the dimension-dependent constant folded in.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BallCorrection {
    d: usize,
    /// `vol(B) / (2 · vol(SC) / ∫ sinᵈ)` with `R` cancelled.
    constant: f64,
}

impl BallCorrection {
    pub(crate) fn new(d: usize) -> Self {
        let dd = d as u32;
        // π^{d/2} / Γ(d/2 + 1)  over  2 π^{(d-1)/2} / Γ((d+1)/2)
        let df = f64::from(dd);
        let ball = libm::pow(PI, df / 2.0) / gamma_half(dd + 2);
        let cap = 2.0 * libm::pow(PI, (df - 1.0) / 2.0) / gamma_half(dd + 1);
        Self {
            d,
            constant: ball / cap,
        }
    }

    /// Weight for a pair whose distance is `s` radii (`0 ≤ s < 2`).
    #[inline]
    pub(crate) fn weight(&self, s: f64) -> f64 {
        let theta = libm::acos(s / 2.0);
        (self.constant / sin_power_integral(self.d, theta)).max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    #[test]
    fn sin_power_examples() {
        assert!((sin_power_integral(1, FRAC_PI_2) - 1.0).abs() < 1e-15);
        let t = PI / 3.0;
        let closed2 = (t - libm::sin(t) * libm::cos(t)) / 2.0;
        assert!((sin_power_integral(2, t) - closed2).abs() < 1e-15);
        assert!((sin_power_integral(2, t) - 0.307092).abs() < 1e-6);
        let c = libm::cos(t);
        let closed3 = -c + c * c * c / 3.0 + 1.0 - 1.0 / 3.0;
        assert!((sin_power_integral(3, t) - closed3).abs() < 1e-15);
        assert!((sin_power_integral(3, t) - 0.208333).abs() < 1e-6);
        assert_eq!(sin_power_integral(0, 0.7), 0.7);
    }

    /// Composite Simpson with many panels; independent of the recurrence.
    fn simpson(d: usize, theta: f64) -> f64 {
        let n = 20_000;
        let h = theta / n as f64;
        let f = |t: f64| libm::pow(libm::sin(t), d as f64);
        let mut acc = f(0.0) + f(theta);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn sin_power_matches_quadrature() {
        for d in 1..=8 {
            for &theta in &[0.1, 0.5, 1.0, FRAC_PI_2, 2.5, PI] {
                let exact = sin_power_integral(d, theta);
                assert!(
                    (exact - simpson(d, theta)).abs() < 1e-12,
                    "d={d} theta={theta}"
                );
            }
        }
    }

    #[test]
    fn box_examples() {
        let sq = Window::unit_cube(2);
        assert_eq!(translation_correction_box(&[0.0, 0.0], &sq).unwrap(), 1.0);
        assert_eq!(translation_correction_box(&[0.5, 0.0], &sq).unwrap(), 2.0);
        let w = translation_correction_box(&[0.05, 0.0], &sq).unwrap();
        assert!((w - 1.0 / 0.95).abs() < 1e-15);
        assert!((w - 1.052632).abs() < 1e-6);
        assert!(translation_correction_box(&[1.0, 0.0], &sq).is_err());
        assert!(translation_correction_box(&[0.1], &sq).is_err());
        assert!(translation_correction_box(&[0.1], &Window::unit_ball(1)).is_err());
    }

    #[test]
    fn ball_examples() {
        assert!((translation_correction_ball(0.0, 1.0, 2).unwrap() - 1.0).abs() < 1e-15);
        let t = PI / 3.0;
        let want = PI / (2.0 * (t - libm::sin(t) * libm::cos(t)));
        let got = translation_correction_ball(1.0, 1.0, 2).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 2.557531).abs() < 1e-6);
        assert!((translation_correction_ball(1.0, 1.0, 3).unwrap() - 3.2).abs() < 1e-12);
        assert!(translation_correction_ball(2.0, 1.0, 2).is_err());
        assert!(translation_correction_ball(0.5, 1.0, 0).is_err());
    }

    #[test]
    fn ball_weight_at_least_one() {
        for d in 1..=6 {
            let c = BallCorrection::new(d);
            let mut prev = 1.0;
            for i in 0..100 {
                let w = c.weight(i as f64 * 0.0199);
                assert!(w >= prev, "weight must grow with distance");
                prev = w;
            }
        }
    }
}
