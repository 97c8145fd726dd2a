//! Seeded synthetic datasets: the three Monte Carlo settings and a few
//! small fixtures.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{CcdError, Result};
use crate::points::{squared_euclidean, PointSet};
use crate::NOISE;

/// Proposal budget of [`strauss_centers`].
pub const STRAUSS_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dist {
    Uniform,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Setting {
    /// Tabulated centers; unit box half-width or identity covariance.
    FixedCenters,
    /// Hard-core random centers in the unit cube, clusters of scale `r`.
    Strauss,
    /// As [`Setting::Strauss`] with normal clusters and uniform background noise.
    StraussNoise,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSpec {
    pub setting: Setting,
    pub k: usize,
    /// Points per cluster.
    pub n: usize,
    pub d: usize,
    pub dist: Dist,
    pub theta: f64,
    pub r: f64,
    pub seed: u64,
}

impl SimSpec {
    pub fn new(setting: Setting, k: usize, n: usize, d: usize, dist: Dist, seed: u64) -> Self {
        Self {
            setting,
            k,
            n,
            d,
            dist,
            theta: 0.3,
            r: 0.15,
            seed,
        }
    }

    /// Minimum center separation `(2 + θ) r`.
    pub fn min_dist(&self) -> f64 {
        (2.0 + self.theta) * self.r
    }

    /// Background noise size, `⌊0.2 K n⌋` in the noisy setting.
    pub fn noise_count(&self) -> usize {
        match self.setting {
            Setting::StraussNoise => (self.k * self.n) / 5,
            _ => 0,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |name, reason| Err(CcdError::InvalidParameter { name, reason });
        if self.k == 0 {
            return bad("k", "must be at least 1");
        }
        if self.n == 0 {
            return bad("n", "must be at least 1");
        }
        if self.d == 0 {
            return bad("d", "must be at least 1");
        }
        if !(self.theta > 0.0) {
            return bad("theta", "must be positive");
        }
        if !(self.r > 0.0) {
            return bad("r", "must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub points: PointSet,
    /// True cluster ids; background noise carries [`NOISE`].
    pub labels: Vec<usize>,
}

impl LabeledDataset {
    pub fn empty(d: usize) -> Self {
        Self {
            points: PointSet::empty(d),
            labels: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn append(&mut self, points: &PointSet, label: usize) {
        self.points.extend(points);
        self.labels.extend(core::iter::repeat(label).take(points.len()));
    }
}

/// Centers of the fixed-center setting for `k ∈ {2, 3, 5}`, `d ∈ {2, 3, 5}`.
pub fn fixed_centers(k: usize, d: usize, dist: Dist) -> Result<Vec<Vec<f64>>> {
    let rows: &[&[f64]] = match (dist, k, d) {
        (Dist::Uniform, 2, 2) => &[&[0.0, 0.0], &[3.0, 0.0]],
        (Dist::Uniform, 3, 2) => &[&[0.0, 0.0], &[3.0, 0.0], &[1.5, 2.0]],
        (Dist::Uniform, 5, 2) => &[&[0.0, 0.0], &[3.0, 0.0], &[0.0, 3.0], &[3.0, 3.0], &[1.5, 6.0]],
        (Dist::Uniform, 2, 3 | 5) => &[&[0.0, 0.0, 0.0], &[3.0, 0.0, 0.0]],
        (Dist::Uniform, 3, 3 | 5) => &[&[0.0, 0.0, 0.0], &[3.0, 0.0, 0.0], &[1.5, 2.0, 2.0]],
        (Dist::Uniform, 5, 3 | 5) => &[
            &[0.0, 0.0, 0.0],
            &[3.0, 0.0, 0.0],
            &[0.0, 3.0, 0.0],
            &[3.0, 3.0, 0.0],
            &[1.5, 1.5, 3.0],
        ],
        (Dist::Normal, 2, 2) => &[&[0.0, 0.0], &[5.0, 0.0]],
        (Dist::Normal, 3, 2) => &[&[0.0, 0.0], &[5.0, 0.0], &[2.0, 4.0]],
        (Dist::Normal, 5, 2) => &[&[0.0, 0.0], &[5.0, 0.0], &[0.0, 5.0], &[5.0, 5.0], &[2.5, 10.0]],
        (Dist::Normal, 2, 3 | 5) => &[&[0.0, 0.0, 0.0], &[5.0, 0.0, 0.0]],
        (Dist::Normal, 3, 3 | 5) => &[&[0.0, 0.0, 0.0], &[5.0, 0.0, 0.0], &[2.0, 3.0, 3.0]],
        (Dist::Normal, 5, 3 | 5) => &[
            &[0.0, 0.0, 0.0],
            &[5.0, 0.0, 0.0],
            &[0.0, 5.0, 0.0],
            &[5.0, 5.0, 0.0],
            &[2.5, 2.5, 5.0],
        ],
        _ => return Err(CcdError::UnsupportedLayout { k, d }),
    };
    // the five-dimensional layouts pad the three-dimensional ones with zeros
    Ok(rows
        .iter()
        .map(|r| {
            let mut v = r.to_vec();
            v.resize(d, 0.0);
            v
        })
        .collect())
}

/// `k` uniform points in `[0, 1]^d`, pairwise at least `min_dist` apart,
/// by dart throwing.
pub fn strauss_centers<R: Rng + ?Sized>(k: usize, d: usize, min_dist: f64, rng: &mut R) -> Result<Vec<Vec<f64>>> {
    let min_sq = min_dist * min_dist;
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut proposals = 0;
    while out.len() < k {
        if proposals == STRAUSS_BUDGET {
            return Err(CcdError::Infeasible(STRAUSS_BUDGET));
        }
        proposals += 1;
        let p: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
        if out.iter().all(|c| squared_euclidean(c, &p) >= min_sq) {
            out.push(p);
        }
    }
    Ok(out)
}

/// `n` points around `center`: uniform in the box of half-width `scale`, or
/// Gaussian with per-axis variance `scale`.
pub fn gen_cluster<R: Rng + ?Sized>(center: &[f64], dist: Dist, scale: f64, n: usize, rng: &mut R) -> PointSet {
    let d = center.len();
    let sd = libm::sqrt(scale);
    let mut coords = Vec::with_capacity(n * d);
    for _ in 0..n {
        for &c in center {
            coords.push(match dist {
                Dist::Uniform => c + scale * (2.0 * rng.random::<f64>() - 1.0),
                Dist::Normal => c + sd * rng.sample::<f64, _>(StandardNormal),
            });
        }
    }
    PointSet::new(d, coords).expect("finite coordinates")
}

/// Appends `count` uniform points in `[−r, 1 + r]^d` labelled [`NOISE`].
pub fn add_noise<R: Rng + ?Sized>(mut data: LabeledDataset, d: usize, r: f64, count: usize, rng: &mut R) -> LabeledDataset {
    let span = 1.0 + 2.0 * r;
    let coords: Vec<f64> = (0..count * d).map(|_| -r + span * rng.random::<f64>()).collect();
    data.append(&PointSet::new(d, coords).expect("finite coordinates"), NOISE);
    data
}

/// Draws one dataset of the simulation `spec`.
pub fn generate(spec: &SimSpec) -> Result<LabeledDataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (centers, dist, scale) = match spec.setting {
        Setting::FixedCenters => {
            let scale = 1.0;
            (fixed_centers(spec.k, spec.d, spec.dist)?, spec.dist, scale)
        }
        Setting::Strauss => {
            let scale = match spec.dist {
                Dist::Uniform => spec.r,
                Dist::Normal => spec.r / 5.0,
            };
            (strauss_centers(spec.k, spec.d, spec.min_dist(), &mut rng)?, spec.dist, scale)
        }
        Setting::StraussNoise => (
            strauss_centers(spec.k, spec.d, spec.min_dist(), &mut rng)?,
            Dist::Normal,
            spec.r / 5.0,
        ),
    };
    let mut data = LabeledDataset::empty(spec.d);
    for (label, c) in centers.iter().enumerate() {
        let cluster = gen_cluster(c, dist, scale, spec.n, &mut rng);
        data.append(&cluster, label);
    }
    Ok(add_noise(data, spec.d, spec.r, spec.noise_count(), &mut rng))
}

/// Two interleaving half circles of `n_per` points each, with Gaussian
/// jitter of standard deviation `noise`.
pub fn two_moons(n_per: usize, noise: f64, seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = LabeledDataset::empty(2);
    for label in 0..2 {
        let mut arc = PointSet::empty(2);
        for i in 0..n_per {
            let a = PI * i as f64 / (n_per.max(2) - 1) as f64;
            let (x, y) = if label == 0 {
                (libm::cos(a), libm::sin(a))
            } else {
                (1.0 - libm::cos(a), 0.5 - libm::sin(a))
            };
            let jx: f64 = rng.sample(StandardNormal);
            let jy: f64 = rng.sample(StandardNormal);
            arc.push(&[x + noise * jx, y + noise * jy]);
        }
        data.append(&arc, label);
    }
    data
}

/// Two concentric circles of radii 1 and `factor`, `n_per` points each.
pub fn two_circles(n_per: usize, factor: f64, noise: f64, seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = LabeledDataset::empty(2);
    for (label, radius) in [1.0, factor].into_iter().enumerate() {
        let mut ring = PointSet::empty(2);
        for i in 0..n_per {
            let a = 2.0 * PI * i as f64 / n_per as f64;
            let jx: f64 = rng.sample(StandardNormal);
            let jy: f64 = rng.sample(StandardNormal);
            ring.push(&[radius * libm::cos(a) + noise * jx, radius * libm::sin(a) + noise * jy]);
        }
        data.append(&ring, label);
    }
    data
}

/// Fifty uniform points in each of `[0,1]²` and `[2.5,3.5]×[0,1]`.
pub fn two_uniform_blobs(seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = LabeledDataset::empty(2);
    for (label, x0) in [0.0, 2.5].into_iter().enumerate() {
        let coords: Vec<f64> = (0..50)
            .flat_map(|_| [x0 + rng.random::<f64>(), rng.random::<f64>()])
            .collect();
        data.append(&PointSet::new(2, coords).expect("finite coordinates"), label);
    }
    data
}
