//! Scalar helpers shared by the spatial statistics. Everything goes through
//! `libm` so results do not depend on whether `std` is linked.

use core::f64::consts::PI;

/// `Γ(k / 2)` for a positive integer `k`, by the half-integer recurrence.
pub(crate) fn gamma_half(k: u32) -> f64 {
    debug_assert!(k > 0);
    let (mut value, mut x) = if k % 2 == 0 { (1.0, 1.0) } else { (libm::sqrt(PI), 0.5) };
    let target = f64::from(k) / 2.0;
    while x < target {
        value *= x;
        x += 1.0;
    }
    value
}

/// Volume of the unit ball in `d` dimensions, `π^{d/2} / Γ(d/2 + 1)`.
pub(crate) fn unit_ball_volume(d: usize) -> f64 {
    let d = d as u32;
    libm::pow(PI, f64::from(d) / 2.0) / gamma_half(d + 2)
}

pub(crate) fn powi(x: f64, n: usize) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_values() {
        assert!((gamma_half(1) - libm::sqrt(PI)).abs() < 1e-15);
        assert_eq!(gamma_half(2), 1.0);
        assert_eq!(gamma_half(8), 6.0);
        assert!((gamma_half(5) - 0.75 * libm::sqrt(PI)).abs() < 1e-14);
    }

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-14);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-14);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(5) - 8.0 * PI * PI / 15.0).abs() < 1e-13);
    }
}
