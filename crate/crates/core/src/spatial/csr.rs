use rand::Rng;
use rand_distr::StandardNormal;

use crate::points::PointSet;
use crate::spatial::Window;

/// `m` independent uniform points in `window`.
///
/// Box windows draw each axis independently. Ball windows use radial
/// inversion: a Gaussian direction scaled by `R · U^{1/d}`, which is exact in
/// every dimension without rejection.
pub fn simulate_csr<R: Rng + ?Sized>(m: usize, window: &Window, rng: &mut R) -> PointSet {
    let d = window.dim();
    let mut out = PointSet::empty(d);
    let mut p = alloc::vec![0.0; d];
    for _ in 0..m {
        sample_into(window, rng, &mut p);
        out.push(&p);
    }
    out
}

pub(crate) fn sample_into<R: Rng + ?Sized>(window: &Window, rng: &mut R, out: &mut [f64]) {
    match window {
        Window::Box { lower, upper } => {
            for ((x, l), u) in out.iter_mut().zip(lower).zip(upper) {
                *x = l + (u - l) * rng.random::<f64>();
            }
        }
        Window::Ball { center, radius } => {
            sample_unit_ball(rng, out);
            for (x, c) in out.iter_mut().zip(center) {
                *x = c + radius * *x;
            }
        }
    }
}

pub(crate) fn sample_unit_ball<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    let d = out.len();
    let mut norm2 = 0.0;
    while norm2 == 0.0 {
        norm2 = 0.0;
        for x in out.iter_mut() {
            *x = rng.sample(StandardNormal);
            norm2 += *x * *x;
        }
    }
    let u: f64 = rng.random();
    let r = libm::pow(u, 1.0 / d as f64);
    let scale = r / libm::sqrt(norm2);
    for x in out.iter_mut() {
        *x *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::euclidean;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(simulate_csr(0, &Window::unit_ball(2), &mut rng).is_empty());
    }

    #[test]
    fn inner_disc_fraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts = simulate_csr(10_000, &Window::unit_ball(2), &mut rng);
        let inside = pts.iter().filter(|p| euclidean(p, &[0.0, 0.0]) < 0.5).count();
        let frac = inside as f64 / 10_000.0;
        assert!((frac - 0.25).abs() < 0.02, "fraction {frac}");
    }

    #[test]
    fn deterministic_per_seed() {
        let w = Window::cuboid(alloc::vec![-1.0, 0.0], alloc::vec![1.0, 3.0]).unwrap();
        let a = simulate_csr(50, &w, &mut ChaCha8Rng::seed_from_u64(3));
        let b = simulate_csr(50, &w, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert!(a.iter().all(|p| w.contains(p)));
        let ball = Window::ball(alloc::vec![2.0, 2.0, 2.0], 0.5).unwrap();
        let c = simulate_csr(200, &ball, &mut ChaCha8Rng::seed_from_u64(3));
        assert!(c.iter().all(|p| ball.contains(p)));
    }
}
