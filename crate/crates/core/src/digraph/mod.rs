//! Catch digraphs, greedy dominating sets and ball intersection graphs.

mod intersection;
mod mds;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

pub use intersection::{connected_components, intersection_graph, IntersectionGraph};
pub use mds::{brute_force_mds, greedy_mds, greedy_mds_scored, is_dominating, BRUTE_FORCE_LIMIT};

use crate::error::{CcdError, Result};
use crate::points::{DistanceMatrix, PointSet};

/// Graph access needed by the domination algorithms.
///
/// `neighbors` is the open out-neighbourhood; every vertex also dominates
/// itself. `cardinality` is the tie-break weight (covering-ball size).
pub trait Dominance {
    fn order(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[usize];
    fn cardinality(&self, v: usize) -> usize;
}

/// Digraph with an arc `u → v` whenever `v ≠ u` lies in the closed ball `B(u, r(u))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatchDigraph {
    radii: Option<Vec<f64>>,
    out: Vec<Vec<usize>>,
}

impl CatchDigraph {
    pub fn build(points: &PointSet, radii: &[f64]) -> Result<Self> {
        Self::from_distances(&DistanceMatrix::new(points), radii)
    }

    pub fn from_distances(dm: &DistanceMatrix, radii: &[f64]) -> Result<Self> {
        let n = dm.len();
        if radii.len() != n {
            return Err(CcdError::LengthMismatch {
                expected: n,
                found: radii.len(),
            });
        }
        if radii.iter().any(|r| !(*r >= 0.0)) {
            return Err(CcdError::InvalidParameter {
                name: "radii",
                reason: "radii must be non-negative",
            });
        }
        let arcs_from = |u: usize| -> Vec<usize> {
            let r = radii[u];
            dm.row(u)
                .iter()
                .enumerate()
                .filter(|&(v, &d)| v != u && d <= r)
                .map(|(v, _)| v)
                .collect()
        };
        #[cfg(feature = "parallel")]
        let out = {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(arcs_from).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let out = (0..n).map(arcs_from).collect();
        Ok(Self {
            radii: Some(radii.to_vec()),
            out,
        })
    }

    /// Abstract digraph from adjacency lists (no covering balls attached).
    /// Lists are sorted and deduplicated; self-loops are dropped.
    pub fn from_adjacency(mut out: Vec<Vec<usize>>) -> Result<Self> {
        let n = out.len();
        for (u, list) in out.iter_mut().enumerate() {
            if let Some(&v) = list.iter().find(|&&v| v >= n) {
                return Err(CcdError::LengthMismatch {
                    expected: n,
                    found: v + 1,
                });
            }
            list.retain(|&v| v != u);
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { radii: None, out })
    }

    pub fn order(&self) -> usize {
        self.out.len()
    }

    pub fn radii(&self) -> Option<&[f64]> {
        self.radii.as_deref()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// `|N̄(v)|`: the vertex itself plus its out-neighbours.
    pub fn ball_cardinality(&self, v: usize) -> usize {
        self.out[v].len() + 1
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn in_neighbors(&self) -> Vec<Vec<usize>> {
        let mut inn = alloc::vec![Vec::new(); self.order()];
        for (u, list) in self.out.iter().enumerate() {
            for &v in list {
                inn[v].push(u);
            }
        }
        inn
    }

    /// One line per vertex: `u: v1 v2 …`.
    pub fn adjacency_text(&self) -> String {
        let mut s = String::new();
        for (u, list) in self.out.iter().enumerate() {
            let _ = write!(s, "{u}:");
            for v in list {
                let _ = write!(s, " {v}");
            }
            s.push('\n');
        }
        s
    }
}

impl Dominance for CatchDigraph {
    fn order(&self) -> usize {
        self.out.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    fn cardinality(&self, v: usize) -> usize {
        self.ball_cardinality(v)
    }
}
