use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{CcdError, Result};
use crate::points::{euclidean, PointSet};
use crate::spatial::correction::{box_weight, BallCorrection};
use crate::spatial::Window;

/// Estimated K function on a distance grid.
#[derive(Debug, Clone, PartialEq)]
pub struct KCurve {
    pub t_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub sample_size: usize,
    pub dim: usize,
}

/// `count` equally spaced distances `t_max/count, 2·t_max/count, …, t_max`.
pub fn uniform_grid(t_max: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|j| t_max * j as f64 / count as f64).collect()
}

pub(crate) fn validate_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(CcdError::InvalidParameter {
            name: "t_grid",
            reason: "must not be empty",
        });
    }
    if !(t_grid[0] > 0.0) || t_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(CcdError::InvalidParameter {
            name: "t_grid",
            reason: "must be positive and strictly increasing",
        });
    }
    Ok(())
}

/// Cumulative pair-weight histogram over a distance grid.
///
/// A pair at distance `ρ` lands in the first bin `j` with `ρ < t_j`, so the
/// prefix sums reproduce `Σ I(ρ < t_j) ϑ` exactly as the estimator counts.
#[derive(Debug, Clone)]
pub(crate) struct PairHistogram<'g> {
    grid: &'g [f64],
    bins: Vec<f64>,
}

impl<'g> PairHistogram<'g> {
    pub(crate) fn new(grid: &'g [f64]) -> Self {
        Self {
            grid,
            bins: alloc::vec![0.0; grid.len()],
        }
    }

    #[inline]
    pub(crate) fn reach(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    /// Bin for a pair at distance `rho`, if it falls below the last grid value.
    #[inline]
    pub(crate) fn bin(&self, rho: f64) -> Option<usize> {
        let j = self.grid.partition_point(|&t| t <= rho);
        (j < self.grid.len()).then_some(j)
    }

    #[inline]
    pub(crate) fn add_to(&mut self, bin: usize, weight: f64) {
        self.bins[bin] += weight;
    }

    /// `scale · Σ_{i ≤ j} bins[i]` for every `j`.
    pub(crate) fn cumulative(&self, scale: f64) -> Vec<f64> {
        let mut acc = 0.0;
        self.bins
            .iter()
            .map(|b| {
                acc += b;
                scale * acc
            })
            .collect()
    }
}

/// `K̂(t) = vol(W)/(n(n−1)) · Σ_{z ≠ z'} I(d(z,z') < t) ϑ(z,z')` with the
/// translation correction appropriate for `window`.
pub fn k_hat(points: &PointSet, window: &Window, t_grid: &[f64]) -> Result<KCurve> {
    validate_grid(t_grid)?;
    let n = points.len();
    if n < 2 {
        return Err(CcdError::TooFewPoints {
            required: 2,
            found: n,
        });
    }
    if points.dim() != window.dim() {
        return Err(CcdError::DimensionMismatch {
            expected: window.dim(),
            found: points.dim(),
        });
    }
    if let Some(i) = points.iter().position(|p| !window.contains(p)) {
        return Err(CcdError::OutsideWindow(i));
    }

    let mut hist = PairHistogram::new(t_grid);
    let reach = hist.reach();
    match window {
        Window::Box { lower, upper } => {
            let mut delta = alloc::vec![0.0; points.dim()];
            for i in 0..n {
                let p = points.point(i);
                for j in (i + 1)..n {
                    let q = points.point(j);
                    let rho = euclidean(p, q);
                    if rho >= reach {
                        continue;
                    }
                    if let Some(bin) = hist.bin(rho) {
                        for (k, dk) in delta.iter_mut().enumerate() {
                            *dk = p[k] - q[k];
                        }
                        hist.add_to(bin, 2.0 * box_weight(&delta, lower, upper)?);
                    }
                }
            }
        }
        Window::Ball { radius, .. } => {
            let corr = BallCorrection::new(points.dim());
            for i in 0..n {
                let p = points.point(i);
                for j in (i + 1)..n {
                    let rho = euclidean(p, points.point(j));
                    if rho >= reach {
                        continue;
                    }
                    if let Some(bin) = hist.bin(rho) {
                        hist.add_to(bin, 2.0 * corr.weight(rho / radius));
                    }
                }
            }
        }
    }
    let scale = window.volume() / (n as f64 * (n - 1) as f64);
    Ok(KCurve {
        t_grid: t_grid.to_vec(),
        values: hist.cumulative(scale),
        sample_size: n,
        dim: points.dim(),
    })
}

/// `L̂(t) − t` with `L̂ = √(K̂/π)`; planar patterns only.
pub fn l_hat_minus_t(curve: &KCurve) -> Result<Vec<f64>> {
    if curve.dim != 2 {
        return Err(CcdError::UnsupportedDimension(curve.dim));
    }
    Ok(curve
        .values
        .iter()
        .zip(&curve.t_grid)
        .map(|(&k, &t)| libm::sqrt(k.max(0.0) / PI) - t)
        .collect())
}
