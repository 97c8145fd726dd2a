//! Cluster catch digraphs (CCDs).
//!
//! Every observation gets a covering ball. With the Kolmogorov-Smirnov
//! flavour (KS-CCD) the radius maximises a random-walk statistic against an
//! assumed intensity `δ`; with the Ripley flavour (RK-CCD) the ball grows
//! until the points inside it stop looking completely spatially random.
//! The balls induce a catch digraph whose approximate minimum dominating set
//! gives candidate cluster centers. A silhouette search over the largest
//! balls (convex clusters) or the connected components of the ball
//! intersection graph (arbitrarily shaped clusters) gives the final partition.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature. The `parallel` feature spreads the per-point radius search and
//! envelope replicates over a rayon pool; results are identical either way.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cluster;
pub mod datagen;
pub mod digraph;
mod error;
mod math;
pub mod metrics;
mod points;
pub mod radius;
pub mod spatial;

pub use cluster::{
    assign_points, cluster_ks, cluster_rk, components_model, convex_distance,
    select_centers_silhouette, ClusterRun, ClusteringModel, Partition, Shape, SilhouetteRule,
};
pub use digraph::{CatchDigraph, IntersectionGraph};
pub use error::{CcdError, Result};
pub use points::{euclidean, DistanceMatrix, PointSet};
pub use radius::{ks_radii, rk_radii, RadiusAssignment, RadiusMethod, RkSearch};
pub use spatial::{CsrTestResult, EnvelopeTable, KCurve, Window};

/// Label used for observations that are not assigned to any cluster.
pub const NOISE: usize = usize::MAX;
