use alloc::vec::Vec;

use crate::error::{CcdError, Result};
use crate::math::{powi, unit_ball_volume};
use crate::points::{squared_euclidean, PointSet};

/// Relative slack when deciding whether a point sits inside a ball window.
/// Points that generate a covering radius lie on the boundary up to rounding.
const BALL_SLACK: f64 = 1e-9;

/// Observation window for K-function estimation.
#[derive(Debug, Clone, PartialEq)]
pub enum Window {
    /// Axis-aligned box `[lower, upper]`.
    Box { lower: Vec<f64>, upper: Vec<f64> },
    /// Closed ball `B(center, radius)`.
    Ball { center: Vec<f64>, radius: f64 },
}

impl Window {
    pub fn cuboid(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(CcdError::InvalidWindow("box needs at least one axis"));
        }
        if lower.len() != upper.len() {
            return Err(CcdError::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u) || !l.is_finite() || !u.is_finite()) {
            return Err(CcdError::InvalidWindow("box bounds need lower < upper on every axis"));
        }
        Ok(Window::Box { lower, upper })
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(CcdError::InvalidWindow("ball needs at least one axis"));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(CcdError::InvalidWindow("ball radius must be positive"));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(CcdError::InvalidWindow("ball center must be finite"));
        }
        Ok(Window::Ball { center, radius })
    }

    pub fn unit_ball(dim: usize) -> Self {
        assert!(dim > 0);
        Window::Ball {
            center: alloc::vec![0.0; dim],
            radius: 1.0,
        }
    }

    pub fn unit_cube(dim: usize) -> Self {
        assert!(dim > 0);
        Window::Box {
            lower: alloc::vec![0.0; dim],
            upper: alloc::vec![1.0; dim],
        }
    }

    /// Smallest axis-aligned box containing every point.
    pub fn bounding_box(points: &PointSet) -> Result<Self> {
        if points.is_empty() {
            return Err(CcdError::TooFewPoints {
                required: 1,
                found: 0,
            });
        }
        let d = points.dim();
        let mut lower = alloc::vec![f64::INFINITY; d];
        let mut upper = alloc::vec![f64::NEG_INFINITY; d];
        for p in points.iter() {
            for k in 0..d {
                lower[k] = lower[k].min(p[k]);
                upper[k] = upper[k].max(p[k]);
            }
        }
        Self::cuboid(lower, upper)
    }

    pub fn dim(&self) -> usize {
        match self {
            Window::Box { lower, .. } => lower.len(),
            Window::Ball { center, .. } => center.len(),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Window::Box { lower, upper } => lower.iter().zip(upper).map(|(l, u)| u - l).product(),
            Window::Ball { center, radius } => {
                unit_ball_volume(center.len()) * powi(*radius, center.len())
            }
        }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        if p.len() != self.dim() {
            return false;
        }
        match self {
            Window::Box { lower, upper } => {
                p.iter().zip(lower.iter().zip(upper)).all(|(x, (l, u))| l <= x && x <= u)
            }
            Window::Ball { center, radius } => {
                let lim = radius * (1.0 + BALL_SLACK);
                squared_euclidean(p, center) <= lim * lim
            }
        }
    }

    /// Conventional largest distance for K estimation: a quarter of the
    /// shortest side for boxes, half the radius for balls.
    pub fn default_t_max(&self) -> f64 {
        match self {
            Window::Box { lower, upper } => {
                lower.iter().zip(upper).map(|(l, u)| u - l).fold(f64::INFINITY, f64::min) / 4.0
            }
            Window::Ball { radius, .. } => radius / 2.0,
        }
    }
}
