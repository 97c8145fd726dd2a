use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Dominance;
use crate::error::{CcdError, Result};

/// Largest vertex count accepted by [`brute_force_mds`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// `true` if every vertex is in `set` or has an arc from a member of `set`.
pub fn is_dominating<G: Dominance + ?Sized>(g: &G, set: &[usize]) -> bool {
    let mut covered = alloc::vec![false; g.order()];
    for &s in set {
        covered[s] = true;
        for &v in g.neighbors(s) {
            covered[v] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Ranks `a` above `b`: larger score, then larger cardinality, then lower index.
#[inline]
fn better<G: Dominance + ?Sized>(g: &G, key: impl Fn(usize) -> f64, a: usize, b: usize) -> bool {
    match key(a).total_cmp(&key(b)) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match g.cardinality(a).cmp(&g.cardinality(b)) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a < b,
        },
    }
}

/// Classical greedy dominating set.
///
/// Each round picks the uncovered vertex with the most uncovered
/// out-neighbours (outdegree in the subgraph induced by the uncovered
/// vertices) and removes its closed neighbourhood. Returns the selection order.
pub fn greedy_mds<G: Dominance + ?Sized>(g: &G) -> Vec<usize> {
    let n = g.order();
    let mut inn: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for u in 0..n {
        for &v in g.neighbors(u) {
            inn[v].push(u);
        }
    }
    let mut uncovered = alloc::vec![true; n];
    let mut live: Vec<usize> = (0..n).map(|v| g.neighbors(v).len()).collect();
    let mut remaining = n;
    let mut chosen = Vec::new();

    while remaining > 0 {
        let mut best = None;
        for v in (0..n).filter(|&v| uncovered[v]) {
            best = match best {
                Some(b) if !better(g, |x| live[x] as f64, v, b) => Some(b),
                _ => Some(v),
            };
        }
        let v = best.expect("an uncovered vertex exists while remaining > 0");
        chosen.push(v);
        let mut drop = |u: usize, uncovered: &mut [bool], live: &mut [usize]| {
            if uncovered[u] {
                uncovered[u] = false;
                remaining -= 1;
                for &w in &inn[u] {
                    live[w] -= 1;
                }
            }
        };
        drop(v, &mut uncovered, &mut live);
        for &u in g.neighbors(v) {
            drop(u, &mut uncovered, &mut live);
        }
    }
    chosen
}

/// Greedy dominating set driven by fixed vertex scores.
///
/// Each round appends the highest-scoring vertex that is still uncovered and
/// removes its closed neighbourhood. Ties go to larger cardinality, then to
/// the lower index. With `scores` set to the original outdegrees this is the
/// outdegree-driven variant. `stop`, when given, sees the selection after
/// every append and ends the loop early by returning `true`.
pub fn greedy_mds_scored<G: Dominance + ?Sized>(
    g: &G,
    scores: &[f64],
    mut stop: Option<&mut dyn FnMut(&[usize]) -> bool>,
) -> Result<Vec<usize>> {
    let n = g.order();
    if scores.len() != n {
        return Err(CcdError::LengthMismatch {
            expected: n,
            found: scores.len(),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        if a == b {
            Ordering::Equal
        } else if better(g, |x| scores[x], a, b) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    });

    let mut uncovered = alloc::vec![true; n];
    let mut chosen = Vec::new();
    for v in order {
        if !uncovered[v] {
            continue;
        }
        chosen.push(v);
        uncovered[v] = false;
        for &u in g.neighbors(v) {
            uncovered[u] = false;
        }
        if let Some(f) = stop.as_mut() {
            if f(&chosen) {
                break;
            }
        }
    }
    Ok(chosen)
}

/// Exact minimum dominating set by enumeration; the lexicographically first
/// among the minimum-size sets. Refuses graphs above [`BRUTE_FORCE_LIMIT`].
pub fn brute_force_mds<G: Dominance + ?Sized>(g: &G) -> Result<Vec<usize>> {
    let n = g.order();
    if n > BRUTE_FORCE_LIMIT {
        return Err(CcdError::TooLarge {
            limit: BRUTE_FORCE_LIMIT,
            found: n,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let full: u32 = (1u32 << n) - 1;
    let closed: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &u| m | (1 << u)))
        .collect();
    for k in 1..=n {
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            if comb.iter().fold(0u32, |m, &v| m | closed[v]) == full {
                return Ok(comb);
            }
            // next combination in lexicographic order
            let mut i = k;
            while i > 0 && comb[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            comb[i - 1] += 1;
            for j in i..k {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    unreachable!("the full vertex set always dominates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::CatchDigraph;
    use alloc::vec;

    fn star(n: usize) -> CatchDigraph {
        let mut out = vec![Vec::new(); n];
        out[0] = (1..n).collect();
        CatchDigraph::from_adjacency(out).unwrap()
    }

    fn outdegrees(g: &CatchDigraph) -> Vec<f64> {
        (0..g.order()).map(|v| g.outdegree(v) as f64).collect()
    }

    #[test]
    fn star_has_single_dominator() {
        let g = star(6);
        assert_eq!(greedy_mds(&g), vec![0]);
        assert_eq!(brute_force_mds(&g).unwrap(), vec![0]);
        assert_eq!(greedy_mds_scored(&g, &outdegrees(&g), None).unwrap(), vec![0]);
    }

    #[test]
    fn uniform_scores_follow_tie_rule() {
        // uniform scores: the star center still wins through its cardinality
        let g = star(5);
        assert_eq!(greedy_mds_scored(&g, &[1.0; 5], None).unwrap(), vec![0]);
        // scores that ignore outdegree pick a leaf first
        let s = [0.0, 1.0, 0.0, 0.0, 0.0];
        let got = greedy_mds_scored(&g, &s, None).unwrap();
        assert_eq!(got[0], 1);
        assert!(is_dominating(&g, &got));
    }

    #[test]
    fn arcless_needs_everyone() {
        let g = CatchDigraph::from_adjacency(vec![Vec::new(); 4]).unwrap();
        assert_eq!(greedy_mds(&g), vec![0, 1, 2, 3]);
        assert_eq!(brute_force_mds(&g).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn path_trace() {
        let g = CatchDigraph::from_adjacency(vec![vec![1], vec![2], vec![]]).unwrap();
        assert_eq!(greedy_mds_scored(&g, &[1.0, 1.0, 1.0], None).unwrap(), vec![0, 2]);
    }

    #[test]
    fn cycle_domination_number() {
        let g = CatchDigraph::from_adjacency(vec![vec![1], vec![2], vec![0]]).unwrap();
        assert_eq!(brute_force_mds(&g).unwrap(), vec![0, 1]);
    }

    #[test]
    fn stop_predicate_truncates() {
        let g = CatchDigraph::from_adjacency(vec![Vec::new(); 5]).unwrap();
        let mut stop = |s: &[usize]| s.len() == 2;
        let got = greedy_mds_scored(&g, &[0.0; 5], Some(&mut stop)).unwrap();
        assert_eq!(got, vec![0, 1]);
    }

    #[test]
    fn brute_force_refuses_large_graphs() {
        let g = CatchDigraph::from_adjacency(vec![Vec::new(); 21]).unwrap();
        assert!(matches!(brute_force_mds(&g), Err(CcdError::TooLarge { .. })));
        assert!(greedy_mds_scored(&g, &[0.0; 3], None).is_err());
    }
}
