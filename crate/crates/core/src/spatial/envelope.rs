use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::correction::BallCorrection;
use super::csr::{sample_into, sample_unit_ball};
use super::kfunc::{k_hat, uniform_grid, validate_grid, KCurve, PairHistogram};
use super::{Window, BALL_T_MAX, DEFAULT_GRID_LEN, MIN_POINTS};
use crate::error::{CcdError, Result};
use crate::math::unit_ball_volume;
use crate::points::{euclidean, DistanceMatrix, PointSet};

/// RNG stream for Monte Carlo replicate `rep` under `seed`.
fn replicate_rng(seed: u64, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep as u64);
    rng
}

/// Pointwise maxima of `K̂` over CSR replicates in the unit ball, keyed by
/// sample size.
///
/// Replicate `r` draws one stream of uniform points from `(seed, r)` and the
/// sample of size `m` is its first `m` points, so a single pass over the
/// stream yields every sample size at once. The entry for any `m` depends
/// only on `(dim, replicates, seed, t_grid)`, never on which other sizes were
/// built or in what order.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeTable {
    dim: usize,
    t_grid: Vec<f64>,
    upper: BTreeMap<usize, Vec<f64>>,
    replicates: usize,
    seed: u64,
    min_points: usize,
}

impl EnvelopeTable {
    /// Empty table on the default grid of 64 distances in `(0, 0.5]`.
    pub fn new(dim: usize, replicates: usize, seed: u64) -> Result<Self> {
        Self::with_grid(
            dim,
            replicates,
            seed,
            uniform_grid(BALL_T_MAX, DEFAULT_GRID_LEN),
            MIN_POINTS,
        )
    }

    pub fn with_grid(
        dim: usize,
        replicates: usize,
        seed: u64,
        t_grid: Vec<f64>,
        min_points: usize,
    ) -> Result<Self> {
        Self::from_parts(dim, replicates, seed, t_grid, min_points, BTreeMap::new())
    }

    /// Reassembles a table, e.g. one read back from a cache file.
    pub fn from_parts(
        dim: usize,
        replicates: usize,
        seed: u64,
        t_grid: Vec<f64>,
        min_points: usize,
        upper: BTreeMap<usize, Vec<f64>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(CcdError::UnsupportedDimension(0));
        }
        if replicates == 0 {
            return Err(CcdError::InvalidParameter {
                name: "replicates",
                reason: "need at least one replicate",
            });
        }
        if min_points < 2 {
            return Err(CcdError::InvalidParameter {
                name: "min_points",
                reason: "K estimation needs at least two points",
            });
        }
        validate_grid(&t_grid)?;
        for (&m, v) in &upper {
            if m < min_points {
                return Err(CcdError::InvalidParameter {
                    name: "upper",
                    reason: "envelope stored below the minimum sample size",
                });
            }
            if v.len() != t_grid.len() {
                return Err(CcdError::LengthMismatch {
                    expected: t_grid.len(),
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !(*x >= 0.0)) {
                return Err(CcdError::InvalidParameter {
                    name: "upper",
                    reason: "envelope values must be non-negative",
                });
            }
        }
        Ok(Self {
            dim,
            t_grid,
            upper,
            replicates,
            seed,
            min_points,
        })
    }

    /// Table with envelopes for every `m` in `min_points..=m_max`.
    pub fn build(dim: usize, m_max: usize, replicates: usize, seed: u64) -> Result<Self> {
        let mut t = Self::new(dim, replicates, seed)?;
        t.ensure(m_max);
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t_grid
    }

    pub fn replicates(&self) -> usize {
        self.replicates
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn min_points(&self) -> usize {
        self.min_points
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn upper(&self, m: usize) -> Option<&[f64]> {
        self.upper.get(&m).map(Vec::as_slice)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &[f64])> + '_ {
        self.upper.iter().map(|(&m, v)| (m, v.as_slice()))
    }

    /// `true` when a test on `m` points can be decided from this table.
    pub fn covers(&self, m: usize) -> bool {
        m < self.min_points || self.upper.contains_key(&m)
    }

    /// `true` when every size up to `m_max` is covered.
    pub fn covers_up_to(&self, m_max: usize) -> bool {
        (self.min_points..=m_max).all(|m| self.upper.contains_key(&m))
    }

    /// Builds whatever envelopes are missing for sizes up to `m_max`.
    pub fn ensure(&mut self, m_max: usize) {
        let missing: Vec<usize> = (self.min_points..=m_max)
            .filter(|m| !self.upper.contains_key(m))
            .collect();
        if missing.is_empty() {
            return;
        }
        let built = compute_upper(self.dim, &missing, self.replicates, &self.t_grid, self.seed);
        self.upper.extend(missing.into_iter().zip(built));
    }
}

/// Envelope table for the requested sample sizes.
pub fn build_envelope(
    dim: usize,
    m_values: &[usize],
    replicates: usize,
    t_grid: Vec<f64>,
    seed: u64,
) -> Result<EnvelopeTable> {
    let mut table = EnvelopeTable::with_grid(dim, replicates, seed, t_grid, MIN_POINTS)?;
    if let Some(&m) = m_values.iter().find(|&&m| m < table.min_points) {
        return Err(CcdError::TooFewPoints {
            required: table.min_points,
            found: m,
        });
    }
    let mut sizes = m_values.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let built = compute_upper(dim, &sizes, replicates, &table.t_grid, seed);
    table.upper.extend(sizes.into_iter().zip(built));
    Ok(table)
}

/// Per-size curves of one replicate, for the sorted sizes in `sizes`.
fn replicate_curves(dim: usize, sizes: &[usize], t_grid: &[f64], seed: u64, rep: usize) -> Vec<Vec<f64>> {
    let m_max = *sizes.last().expect("sizes is non-empty");
    let corr = BallCorrection::new(dim);
    let vol = unit_ball_volume(dim);
    let mut rng = replicate_rng(seed, rep);
    let mut pts = PointSet::empty(dim);
    let mut p = alloc::vec![0.0; dim];
    let mut hist = PairHistogram::new(t_grid);
    let reach = hist.reach();
    let mut out = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for k in 0..m_max {
        sample_unit_ball(&mut rng, &mut p);
        for j in 0..k {
            let rho = euclidean(&p, pts.point(j));
            if rho >= reach {
                continue;
            }
            if let Some(bin) = hist.bin(rho) {
                hist.add_to(bin, 2.0 * corr.weight(rho));
            }
        }
        pts.push(&p);
        let m = k + 1;
        while next < sizes.len() && sizes[next] == m {
            out.push(hist.cumulative(vol / (m as f64 * (m - 1) as f64)));
            next += 1;
        }
    }
    out
}

fn merge_max(mut acc: Vec<Vec<f64>>, other: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    for (a, b) in acc.iter_mut().zip(other) {
        for (x, y) in a.iter_mut().zip(b) {
            if y > *x {
                *x = y;
            }
        }
    }
    acc
}

fn compute_upper(dim: usize, sizes: &[usize], replicates: usize, t_grid: &[f64], seed: u64) -> Vec<Vec<f64>> {
    if sizes.is_empty() {
        return Vec::new();
    }
    let zero = || alloc::vec![alloc::vec![0.0; t_grid.len()]; sizes.len()];
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..replicates)
            .into_par_iter()
            .map(|rep| replicate_curves(dim, sizes, t_grid, seed, rep))
            .reduce(zero, merge_max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..replicates)
            .map(|rep| replicate_curves(dim, sizes, t_grid, seed, rep))
            .fold(zero(), merge_max)
    }
}

/// Pointwise lower and upper envelopes of `K̂` over CSR replicates in an
/// arbitrary window, for plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeBand {
    pub t_grid: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

pub fn envelope_band(
    window: &Window,
    m: usize,
    replicates: usize,
    t_grid: &[f64],
    seed: u64,
) -> Result<EnvelopeBand> {
    validate_grid(t_grid)?;
    if m < 2 {
        return Err(CcdError::TooFewPoints {
            required: 2,
            found: m,
        });
    }
    let mut lower = alloc::vec![f64::INFINITY; t_grid.len()];
    let mut upper = alloc::vec![0.0f64; t_grid.len()];
    let mut p = alloc::vec![0.0; window.dim()];
    for rep in 0..replicates {
        let mut rng = replicate_rng(seed, rep);
        let mut pts = PointSet::empty(window.dim());
        for _ in 0..m {
            sample_into(window, &mut rng, &mut p);
            pts.push(&p);
        }
        let curve = k_hat(&pts, window, t_grid)?;
        for (j, v) in curve.values.into_iter().enumerate() {
            lower[j] = lower[j].min(v);
            upper[j] = upper[j].max(v);
        }
    }
    Ok(EnvelopeBand {
        t_grid: t_grid.to_vec(),
        lower,
        upper,
    })
}

/// Outcome of the one-sided envelope test.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrTestResult {
    pub rejected: bool,
    /// Smallest normalized distance where the observed curve exceeds the
    /// upper envelope; `Some` exactly when `rejected`.
    pub first_rejecting_t: Option<f64>,
    /// Observed curve on the normalized grid of the unit ball.
    pub observed: KCurve,
}

/// Tests whether the points of a ball window look completely spatially random.
///
/// Points are mapped into the unit ball by `z ↦ (z − center)/radius` and the
/// observed `K̂` is compared against the stored upper envelope for the same
/// sample size. Only excess clustering rejects; samples below the table's
/// minimum size never reject.
pub fn csr_test(points: &PointSet, ball: &Window, table: &EnvelopeTable) -> Result<CsrTestResult> {
    let Window::Ball { center, radius } = ball else {
        return Err(CcdError::InvalidWindow("CSR test needs a ball window"));
    };
    if points.dim() != table.dim || ball.dim() != table.dim {
        return Err(CcdError::DimensionMismatch {
            expected: table.dim,
            found: points.dim(),
        });
    }
    if let Some(i) = points.iter().position(|p| !ball.contains(p)) {
        return Err(CcdError::OutsideWindow(i));
    }
    let m = points.len();
    let offset: Vec<f64> = center.iter().map(|c| -c / radius).collect();
    let unit = points.affine(1.0 / radius, &offset);
    let unit_ball = Window::unit_ball(table.dim);
    let observed = if m >= 2 {
        // containment was checked on the original coordinates
        unit_k_hat(&unit, &unit_ball, &table.t_grid)?
    } else {
        KCurve {
            t_grid: table.t_grid.clone(),
            values: alloc::vec![0.0; table.t_grid.len()],
            sample_size: m,
            dim: table.dim,
        }
    };
    if m < table.min_points {
        return Ok(CsrTestResult {
            rejected: false,
            first_rejecting_t: None,
            observed,
        });
    }
    let upper = table.upper(m).ok_or(CcdError::MissingEnvelope(m))?;
    let first = observed
        .values
        .iter()
        .zip(upper)
        .position(|(o, u)| o > u)
        .map(|j| table.t_grid[j]);
    Ok(CsrTestResult {
        rejected: first.is_some(),
        first_rejecting_t: first,
        observed,
    })
}

/// `k_hat` on points already scaled into the unit ball, tolerating rounding
/// just past the boundary.
fn unit_k_hat(unit: &PointSet, ball: &Window, t_grid: &[f64]) -> Result<KCurve> {
    let mut clamped = PointSet::empty(unit.dim());
    for p in unit.iter() {
        let r = euclidean(p, &alloc::vec![0.0; p.len()]);
        if r > 1.0 {
            let v: Vec<f64> = p.iter().map(|x| x / r).collect();
            clamped.push(&v);
        } else {
            clamped.push(p);
        }
    }
    k_hat(&clamped, ball, t_grid)
}

/// CSR test evaluated straight from a distance matrix; used by the radius
/// search so that balls never need to be materialised.
pub(crate) struct BallKernel<'t> {
    table: &'t EnvelopeTable,
    corr: BallCorrection,
    vol: f64,
}

impl<'t> BallKernel<'t> {
    pub(crate) fn new(table: &'t EnvelopeTable) -> Self {
        Self {
            table,
            corr: BallCorrection::new(table.dim),
            vol: unit_ball_volume(table.dim),
        }
    }

    pub(crate) fn min_points(&self) -> usize {
        self.table.min_points
    }

    /// Does the ball of `radius` whose members are `members` reject CSR?
    pub(crate) fn rejects(&self, dm: &DistanceMatrix, members: &[usize], radius: f64) -> Result<bool> {
        let m = members.len();
        if m < self.table.min_points || radius <= 0.0 {
            return Ok(false);
        }
        let upper = self.table.upper(m).ok_or(CcdError::MissingEnvelope(m))?;
        let mut hist = PairHistogram::new(&self.table.t_grid);
        let reach = hist.reach() * radius;
        for (a, &i) in members.iter().enumerate() {
            let row = dm.row(i);
            for &j in &members[a + 1..] {
                let rho = row[j];
                if rho > reach {
                    continue;
                }
                let s = rho / radius;
                if let Some(bin) = hist.bin(s) {
                    hist.add_to(bin, 2.0 * self.corr.weight(s.min(1.999_999_999)));
                }
            }
        }
        let observed = hist.cumulative(self.vol / (m as f64 * (m - 1) as f64));
        Ok(observed.iter().zip(upper).any(|(o, u)| o > u))
    }
}
