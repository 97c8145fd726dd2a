//! Clustering pipelines built on the catch digraph.

use alloc::vec::Vec;

use crate::digraph::{connected_components, greedy_mds_scored, intersection_graph, CatchDigraph, IntersectionGraph};
use crate::error::{CcdError, Result};
use crate::metrics::silhouette_from_distances;
use crate::points::{euclidean, DistanceMatrix, PointSet};
use crate::radius::{ks_radii_from_distances, rk_radii_from_distances, RadiusAssignment, RkSearch};
use crate::spatial::EnvelopeTable;
use crate::NOISE;

/// Cluster shape assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Shape {
    /// Clusters are unions around a few dense balls picked by silhouette.
    #[default]
    Convex,
    /// Clusters are connected components of the ball intersection graph.
    Arbitrary,
}

/// Which silhouette peak picks the number of convex clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SilhouetteRule {
    #[default]
    GlobalMax,
    /// Stop at the first prefix whose successor scores lower.
    FirstLocalMax,
}

/// Selected covering balls and how they group into clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringModel {
    /// Ball centers as observation indices.
    pub centers: Vec<usize>,
    pub center_radii: Vec<f64>,
    pub shape: Shape,
    /// Positions into `centers`, one group per cluster. In convex mode every
    /// group holds a single ball.
    pub components: Vec<Vec<usize>>,
    /// Silhouette of each candidate prefix `(k, value)` (convex mode only).
    pub prefix_silhouettes: Vec<(usize, f64)>,
}

impl ClusteringModel {
    /// Estimated number of clusters.
    pub fn k_hat(&self) -> usize {
        self.components.len()
    }

    fn cluster_of_ball(&self) -> Vec<usize> {
        let mut out = alloc::vec![0; self.centers.len()];
        for (c, group) in self.components.iter().enumerate() {
            for &b in group {
                out[b] = c;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Cluster id in `0..k_hat`, or [`NOISE`].
    pub labels: Vec<usize>,
    /// Whether the observation lies inside some selected ball.
    pub covered: Vec<bool>,
}

/// `d(z, center) / radius`. A zero radius gives 0 at the center and +∞
/// everywhere else.
pub fn convex_distance(z: &[f64], center: &[f64], radius: f64) -> f64 {
    ratio(euclidean(z, center), radius)
}

#[inline]
fn ratio(d: f64, radius: f64) -> f64 {
    if radius > 0.0 {
        d / radius
    } else if d == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Index of the ball minimizing the convex distance to `x`, and that
/// distance. When every ratio is infinite (only zero-radius balls), the
/// nearest center wins.
fn nearest_ball(dist: impl Fn(usize) -> f64, radii: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (b, &r) in radii.iter().enumerate() {
        let v = ratio(dist(b), r);
        if v < best.1 {
            best = (b, v);
        }
    }
    if best.1.is_infinite() {
        let mut raw = (0, f64::INFINITY);
        for b in 0..radii.len() {
            let d = dist(b);
            if d < raw.1 {
                raw = (b, d);
            }
        }
        best.0 = raw.0;
    }
    best
}

fn check_model(model: &ClusteringModel, n: usize) -> Result<()> {
    if model.centers.is_empty() || model.components.is_empty() {
        return Err(CcdError::EmptyModel);
    }
    if model.center_radii.len() != model.centers.len() {
        return Err(CcdError::LengthMismatch {
            expected: model.centers.len(),
            found: model.center_radii.len(),
        });
    }
    if let Some(&c) = model.centers.iter().find(|&&c| c >= n) {
        return Err(CcdError::LengthMismatch { expected: n, found: c + 1 });
    }
    Ok(())
}

fn partition_with(
    n: usize,
    model: &ClusteringModel,
    mark_noise: bool,
    dist: impl Fn(usize, usize) -> f64,
) -> Partition {
    let cluster = model.cluster_of_ball();
    let mut labels = Vec::with_capacity(n);
    let mut covered = Vec::with_capacity(n);
    for x in 0..n {
        let (b, v) = nearest_ball(|b| dist(x, model.centers[b]), &model.center_radii);
        let inside = v <= 1.0;
        covered.push(inside);
        labels.push(if mark_noise && !inside { NOISE } else { cluster[b] });
    }
    Partition { labels, covered }
}

/// Labels every observation with the cluster of its convex-distance-nearest
/// ball. With `mark_noise`, observations outside every ball get [`NOISE`].
pub fn assign_points(points: &PointSet, model: &ClusteringModel, mark_noise: bool) -> Result<Partition> {
    check_model(model, points.len())?;
    Ok(partition_with(points.len(), model, mark_noise, |x, c| {
        euclidean(points.point(x), points.point(c))
    }))
}

fn ball_radii(digraph: &CatchDigraph) -> Result<&[f64]> {
    digraph.radii().ok_or(CcdError::InvalidParameter {
        name: "digraph",
        reason: "built without radii",
    })
}

/// Dominating set of `g` ranked by ball cardinality, as positions.
fn ranked_centers(g: &IntersectionGraph) -> Result<Vec<usize>> {
    let scores: Vec<f64> = (0..g.order()).map(|a| g.ball_cardinality(a) as f64).collect();
    let mut s = greedy_mds_scored(g, &scores, None)?;
    s.sort_by(|&a, &b| {
        g.ball_cardinality(b)
            .cmp(&g.ball_cardinality(a))
            .then(g.vertex(a).cmp(&g.vertex(b)))
    });
    Ok(s)
}

/// Convex-mode model: rank the dominating set of `g` by ball cardinality and
/// keep the prefix whose partition has the best average silhouette.
pub fn select_centers_silhouette(
    points: &PointSet,
    digraph: &CatchDigraph,
    g: &IntersectionGraph,
    rule: SilhouetteRule,
) -> Result<ClusteringModel> {
    select_with_distances(&DistanceMatrix::new(points), digraph, g, rule)
}

fn select_with_distances(
    dm: &DistanceMatrix,
    digraph: &CatchDigraph,
    g: &IntersectionGraph,
    rule: SilhouetteRule,
) -> Result<ClusteringModel> {
    let radii = ball_radii(digraph)?;
    let ranked = ranked_centers(g)?;
    if ranked.is_empty() {
        return Err(CcdError::EmptyModel);
    }
    let centers: Vec<usize> = ranked.iter().map(|&a| g.vertex(a)).collect();
    let center_radii: Vec<f64> = centers.iter().map(|&c| radii[c]).collect();
    let model_of = |k: usize, prefix_silhouettes| ClusteringModel {
        centers: centers[..k].to_vec(),
        center_radii: center_radii[..k].to_vec(),
        shape: Shape::Convex,
        components: (0..k).map(|b| alloc::vec![b]).collect(),
        prefix_silhouettes,
    };
    if centers.len() == 1 {
        return Ok(model_of(1, Vec::new()));
    }

    let n = dm.len();
    let mut scores: Vec<(usize, f64)> = Vec::new();
    let mut best = (0, f64::NEG_INFINITY);
    for k in 2..=centers.len() {
        let trial = model_of(k, Vec::new());
        let part = partition_with(n, &trial, false, |x, c| dm.get(x, c));
        let s = silhouette_from_distances(dm, &part.labels)?;
        scores.push((k, s));
        if s > best.1 {
            best = (k, s);
        } else if rule == SilhouetteRule::FirstLocalMax && s < best.1 {
            break;
        }
    }
    Ok(model_of(best.0, scores))
}

/// Arbitrary-shape model: one cluster per connected component of `g`.
pub fn components_model(digraph: &CatchDigraph, g: &IntersectionGraph) -> Result<ClusteringModel> {
    let radii = ball_radii(digraph)?;
    if g.order() == 0 {
        return Err(CcdError::EmptyModel);
    }
    let centers = g.vertices().to_vec();
    Ok(ClusteringModel {
        center_radii: centers.iter().map(|&c| radii[c]).collect(),
        centers,
        shape: Shape::Arbitrary,
        components: connected_components(g),
        prefix_silhouettes: Vec::new(),
    })
}

/// Options shared by [`cluster_ks`] and [`cluster_rk`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClusterOptions {
    pub shape: Shape,
    pub rule: SilhouetteRule,
    pub mark_noise: bool,
    pub search: RkSearch,
}

impl ClusterOptions {
    pub fn new(shape: Shape) -> Self {
        Self {
            shape,
            ..Self::default()
        }
    }
}

/// Everything a clustering run produced.
#[derive(Debug, Clone)]
pub struct ClusterRun {
    pub radii: RadiusAssignment,
    pub digraph: CatchDigraph,
    /// Dominating set of the catch digraph, in selection order.
    pub dominating_set: Vec<usize>,
    pub model: ClusteringModel,
    pub partition: Partition,
    /// Average silhouette of the final assignment, noise marking ignored.
    pub silhouette: f64,
}

impl ClusterRun {
    pub fn k_hat(&self) -> usize {
        self.model.k_hat()
    }
}

/// KS-CCD with intensity `delta`.
pub fn cluster_ks(points: &PointSet, delta: f64, options: &ClusterOptions) -> Result<ClusterRun> {
    let dm = DistanceMatrix::new(points);
    let radii = ks_radii_from_distances(&dm, points.dim(), delta)?;
    finish(&dm, radii, options)
}

/// RK-CCD against a table of CSR envelopes covering every size up to `n`.
pub fn cluster_rk(points: &PointSet, table: &EnvelopeTable, options: &ClusterOptions) -> Result<ClusterRun> {
    if points.dim() != table.dim() {
        return Err(CcdError::DimensionMismatch {
            expected: table.dim(),
            found: points.dim(),
        });
    }
    let dm = DistanceMatrix::new(points);
    let radii = rk_radii_from_distances(&dm, table, options.search)?;
    finish(&dm, radii, options)
}

fn finish(dm: &DistanceMatrix, radii: RadiusAssignment, options: &ClusterOptions) -> Result<ClusterRun> {
    let digraph = CatchDigraph::from_distances(dm, &radii.radii)?;
    let outdegree: Vec<f64> = (0..digraph.order()).map(|v| digraph.outdegree(v) as f64).collect();
    let dominating_set = greedy_mds_scored(&digraph, &outdegree, None)?;
    let g = intersection_graph(&digraph, &dominating_set)?;
    let model = match options.shape {
        Shape::Convex => select_with_distances(dm, &digraph, &g, options.rule)?,
        Shape::Arbitrary => components_model(&digraph, &g)?,
    };
    let n = dm.len();
    let plain = partition_with(n, &model, false, |x, c| dm.get(x, c));
    let silhouette = silhouette_from_distances(dm, &plain.labels)?;
    let partition = if options.mark_noise {
        partition_with(n, &model, true, |x, c| dm.get(x, c))
    } else {
        plain
    };
    Ok(ClusterRun {
        radii,
        digraph,
        dominating_set,
        model,
        partition,
        silhouette,
    })
}
