use alloc::vec::Vec;

use super::{CatchDigraph, Dominance};
use crate::error::{CcdError, Result};

/// Undirected graph on dominating-set members, with an edge whenever two
/// covering balls share a point (closed neighbourhoods intersect).
///
/// Vertices are addressed by position `0..order()`; [`vertices`](Self::vertices)
/// maps positions back to observation indices.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionGraph {
    vertices: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
    ball_cardinality: Vec<usize>,
}

pub fn intersection_graph(digraph: &CatchDigraph, mds: &[usize]) -> Result<IntersectionGraph> {
    let n = digraph.order();
    let k = mds.len();
    if let Some(&v) = mds.iter().find(|&&v| v >= n) {
        return Err(CcdError::LengthMismatch {
            expected: n,
            found: v + 1,
        });
    }
    // balls covering each observation, by position
    let mut covering: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (a, &v) in mds.iter().enumerate() {
        covering[v].push(a);
        for &u in digraph.out_neighbors(v) {
            covering[u].push(a);
        }
    }
    let mut linked = alloc::vec![false; k * k];
    for balls in &covering {
        for (i, &a) in balls.iter().enumerate() {
            for &b in &balls[i + 1..] {
                if a != b {
                    linked[a * k + b] = true;
                    linked[b * k + a] = true;
                }
            }
        }
    }
    let adjacency = (0..k)
        .map(|a| (0..k).filter(|&b| linked[a * k + b]).collect())
        .collect();
    Ok(IntersectionGraph {
        vertices: mds.to_vec(),
        adjacency,
        ball_cardinality: mds.iter().map(|&v| digraph.ball_cardinality(v)).collect(),
    })
}

impl IntersectionGraph {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Observation index of the vertex at `pos`.
    pub fn vertex(&self, pos: usize) -> usize {
        self.vertices[pos]
    }

    pub fn ball_cardinality(&self, pos: usize) -> usize {
        self.ball_cardinality[pos]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as position pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }
}

impl Dominance for IntersectionGraph {
    fn order(&self) -> usize {
        self.vertices.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    fn cardinality(&self, v: usize) -> usize {
        self.ball_cardinality[v]
    }
}

/// Connected components as sorted position lists, ordered by their
/// smallest position.
pub fn connected_components(graph: &IntersectionGraph) -> Vec<Vec<usize>> {
    let k = graph.order();
    let mut seen = alloc::vec![false; k];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut comp = Vec::new();
        while let Some(a) = stack.pop() {
            comp.push(a);
            for &b in &graph.adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
