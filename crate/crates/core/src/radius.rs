//! Covering-ball radii.

use alloc::vec::Vec;

use crate::error::{CcdError, Result};
use crate::math::powi;
use crate::points::{DistanceMatrix, PointSet};
use crate::spatial::{BallKernel, EnvelopeTable};

/// How a set of radii was chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusMethod {
    /// Random-walk statistic against the intensity `δ`.
    Ks { delta: f64 },
    /// Ripley envelope test with `replicates` simulations per sample size.
    Rk { replicates: usize, seed: u64 },
}

/// Candidate traversal for [`rk_radii`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RkSearch {
    /// Binary search, assuming rejection is monotone in the radius.
    #[default]
    Binary,
    /// Test candidates in increasing order and stop at the first rejection.
    Linear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusAssignment {
    pub radii: Vec<f64>,
    pub method: RadiusMethod,
    /// Candidate radii evaluated for each point.
    pub candidates_examined: Vec<usize>,
}

/// Distances from `x` to every other point, sorted, with duplicates kept.
fn sorted_others(dm: &DistanceMatrix, x: usize) -> Vec<(f64, usize)> {
    let mut v: Vec<(f64, usize)> = dm
        .row(x)
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != x)
        .map(|(j, &d)| (d, j))
        .collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    v
}

/// Distinct candidate radii together with the ball size each one gives
/// (the center included).
fn candidates(sorted: &[(f64, usize)]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for (k, &(d, _)) in sorted.iter().enumerate() {
        match out.last_mut() {
            Some(last) if last.0 == d => last.1 = k + 2,
            _ => out.push((d, k + 2)),
        }
    }
    out
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(CcdError::TooFewPoints { required: 2, found: n });
    }
    Ok(())
}

/// Per-point maps run either sequentially or on the rayon pool.
fn per_point<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// KS radii: `argmax_r RW(x, r) − δ r^d` over the distances from `x` to the
/// other points, where `RW(x, r)` is the fraction of the sample within
/// distance `r` of `x` (itself included). Ties go to the smaller radius.
pub fn ks_radii(points: &PointSet, delta: f64) -> Result<RadiusAssignment> {
    ks_radii_from_distances(&DistanceMatrix::new(points), points.dim(), delta)
}

pub fn ks_radii_from_distances(dm: &DistanceMatrix, dim: usize, delta: f64) -> Result<RadiusAssignment> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(CcdError::InvalidParameter {
            name: "delta",
            reason: "must be positive and finite",
        });
    }
    let n = dm.len();
    check_size(n)?;
    let nf = n as f64;
    let per: Vec<(f64, usize)> = per_point(n, |x| {
        let cands = candidates(&sorted_others(dm, x));
        let mut best = (f64::NEG_INFINITY, 0.0);
        for &(r, m) in &cands {
            let value = m as f64 / nf - delta * powi(r, dim);
            if value > best.0 {
                best = (value, r);
            }
        }
        (best.1, cands.len())
    });
    let (radii, candidates_examined) = per.into_iter().unzip();
    Ok(RadiusAssignment {
        radii,
        method: RadiusMethod::Ks { delta },
        candidates_examined,
    })
}

/// RK radii: each ball grows along the sorted distances from its center
/// until the points inside it reject complete spatial randomness, and then
/// keeps the last radius that did not reject.
///
/// A ball whose first testable radius already rejects keeps the largest
/// radius too small to test (0 when there is none). If no radius rejects,
/// the ball reaches the farthest point.
pub fn rk_radii(points: &PointSet, table: &EnvelopeTable, search: RkSearch) -> Result<RadiusAssignment> {
    if points.dim() != table.dim() {
        return Err(CcdError::DimensionMismatch {
            expected: table.dim(),
            found: points.dim(),
        });
    }
    check_size(points.len())?;
    rk_radii_from_distances(&DistanceMatrix::new(points), table, search)
}

pub fn rk_radii_from_distances(
    dm: &DistanceMatrix,
    table: &EnvelopeTable,
    search: RkSearch,
) -> Result<RadiusAssignment> {
    let n = dm.len();
    check_size(n)?;
    if !table.covers_up_to(n) {
        return Err(CcdError::MissingEnvelope(n));
    }
    let kernel = BallKernel::new(table);
    let per: Vec<Result<(f64, usize)>> = per_point(n, |x| rk_point(dm, &kernel, x, search));
    let mut radii = Vec::with_capacity(n);
    let mut examined = Vec::with_capacity(n);
    for item in per {
        let (r, k) = item?;
        radii.push(r);
        examined.push(k);
    }
    Ok(RadiusAssignment {
        radii,
        method: RadiusMethod::Rk {
            replicates: table.replicates(),
            seed: table.seed(),
        },
        candidates_examined: examined,
    })
}

fn rk_point(dm: &DistanceMatrix, kernel: &BallKernel<'_>, x: usize, search: RkSearch) -> Result<(f64, usize)> {
    let sorted = sorted_others(dm, x);
    let cands = candidates(&sorted);
    let mut members: Vec<usize> = Vec::with_capacity(sorted.len() + 1);
    members.push(x);
    members.extend(sorted.iter().map(|&(_, j)| j));
    let mut examined = 0;
    let mut rejects = |k: usize| -> Result<bool> {
        let (r, m) = cands[k];
        if m < kernel.min_points() {
            return Ok(false);
        }
        examined += 1;
        kernel.rejects(dm, &members[..m], r)
    };

    let first = match search {
        RkSearch::Binary => {
            let (mut lo, mut hi) = (0, cands.len());
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if rejects(mid)? {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            lo
        }
        RkSearch::Linear => {
            let mut k = 0;
            while k < cands.len() && !rejects(k)? {
                k += 1;
            }
            k
        }
    };
    let radius = match first {
        k if k == cands.len() => cands[k - 1].0,
        0 => 0.0,
        k => cands[k - 1].0,
    };
    Ok((radius, examined))
}
