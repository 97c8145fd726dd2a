//! Library results against slow, independent reference computations.

use std::f64::consts::PI;

use ccd_core::digraph::{brute_force_mds, connected_components, greedy_mds, intersection_graph, is_dominating};
use ccd_core::metrics::{rand_index, silhouette_avg};
use ccd_core::spatial::{k_hat, translation_correction_ball, translation_correction_box, uniform_grid};
use ccd_core::{ks_radii, CatchDigraph, PointSet, Window};
use proptest::prelude::*;

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn digraph_strategy(max_n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n), n).prop_map(|m| {
            m.iter()
                .enumerate()
                .map(|(u, row)| (0..row.len()).filter(|&v| v != u && row[v]).collect())
                .collect()
        })
    })
}

fn dominates(adj: &[Vec<usize>], mask: u32) -> bool {
    let n = adj.len();
    let mut covered = 0u32;
    for u in 0..n {
        if mask & (1 << u) != 0 {
            covered |= 1 << u;
            for &v in &adj[u] {
                covered |= 1 << v;
            }
        }
    }
    covered == (1u32 << n) - 1
}

fn min_dominating_size(adj: &[Vec<usize>]) -> usize {
    (0u32..(1 << adj.len()))
        .filter(|&m| dominates(adj, m))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

fn harmonic(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mds_against_exhaustive_search(adj in digraph_strategy(12)) {
        let g = CatchDigraph::from_adjacency(adj.clone()).unwrap();
        let greedy = greedy_mds(&g);
        let exact = brute_force_mds(&g).unwrap();
        prop_assert!(is_dominating(&g, &greedy));
        prop_assert!(is_dominating(&g, &exact));
        let opt = min_dominating_size(&adj);
        prop_assert_eq!(exact.len(), opt);
        prop_assert!(exact.len() <= greedy.len());
        let max_deg = adj.iter().map(Vec::len).max().unwrap_or(0);
        prop_assert!(greedy.len() as f64 <= harmonic(max_deg + 1) * opt as f64 + 1e-12);
        prop_assert!(harmonic(max_deg + 1) <= ((max_deg + 1) as f64).ln() + 1.0);
    }

    #[test]
    fn intersection_graph_against_pairwise_overlap(adj in digraph_strategy(16)) {
        let g = CatchDigraph::from_adjacency(adj.clone()).unwrap();
        let s = greedy_mds(&g);
        let ig = intersection_graph(&g, &s).unwrap();
        let closed = |u: usize| {
            let mut v = adj[u].clone();
            v.push(u);
            v
        };
        let k = s.len();
        let mut reach = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                let overlap = a != b && closed(s[a]).iter().any(|x| closed(s[b]).contains(x));
                prop_assert_eq!(ig.adjacent(a, b), overlap);
                reach[a][b] = a == b || overlap;
            }
        }
        for m in 0..k {
            for a in 0..k {
                for b in 0..k {
                    if reach[a][m] && reach[m][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
        let comps = connected_components(&ig);
        let mut seen = vec![0usize; k];
        for c in &comps {
            for &a in c {
                seen[a] += 1;
                for &b in c {
                    prop_assert!(reach[a][b]);
                }
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert_eq!(comps.len(), (0..k).filter(|&a| (0..a).all(|b| !reach[a][b])).count());
    }
}

fn segment_area(half_angle: f64, r: f64) -> f64 {
    r * r * (half_angle - half_angle.sin() * half_angle.cos())
}

/// Weight from the overlap volume of two balls of radius `r` at distance `rho`.
fn cap_weight(rho: f64, r: f64, d: usize) -> f64 {
    match d {
        2 => PI * r * r / (2.0 * segment_area((rho / (2.0 * r)).acos(), r)),
        3 => {
            let a = r - rho / 2.0;
            (4.0 / 3.0 * PI * r * r * r) / (2.0 * PI * a * a * (3.0 * r - a) / 3.0)
        }
        _ => unreachable!(),
    }
}

fn naive_k(points: &[Vec<f64>], window: &Window, grid: &[f64]) -> Vec<f64> {
    let n = points.len();
    grid.iter()
        .map(|&t| {
            let mut sum = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let rho = dist(&points[i], &points[j]);
                    if rho < t {
                        sum += match window {
                            Window::Box { lower, upper } => {
                                let mut w = 1.0;
                                for k in 0..lower.len() {
                                    let side = upper[k] - lower[k];
                                    w *= side / (side - (points[i][k] - points[j][k]).abs());
                                }
                                w
                            }
                            Window::Ball { radius, center } => cap_weight(rho, *radius, center.len()),
                        };
                    }
                }
            }
            window.volume() * sum / (n * (n - 1)) as f64
        })
        .collect()
}

fn unit_disc_point() -> impl Strategy<Value = Vec<f64>> {
    (0.0..1.0f64, 0.0..(2.0 * PI)).prop_map(|(u, a)| {
        let r = u.sqrt() * 0.999;
        vec![r * a.cos(), r * a.sin()]
    })
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ball_correction_matches_cap_volumes(frac in 0.0..0.999f64, r in 0.05..10.0f64, d in 2usize..=3) {
        let rho = frac * 2.0 * r;
        let w = translation_correction_ball(rho, r, d).unwrap();
        let oracle = cap_weight(rho, r, d);
        prop_assert!((w - oracle).abs() <= 1e-9 * oracle, "{w} vs {oracle}");
        prop_assert!(w >= 1.0 - 1e-12);
    }

    #[test]
    fn box_correction_matches_overlap(dx in -0.99..0.99f64, dy in -1.98..1.98f64) {
        let w = Window::cuboid(vec![0.0, 0.0], vec![1.0, 2.0]).unwrap();
        let got = translation_correction_box(&[dx, dy], &w).unwrap();
        let overlap = (1.0 - dx.abs()) * (2.0 - dy.abs());
        prop_assert!((got - 2.0 / overlap).abs() <= 1e-12 * got);
    }

    #[test]
    fn k_hat_in_a_box_matches_double_loop(coords in prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 2..=50)) {
        let pts: Vec<Vec<f64>> = coords.iter().map(|&(x, y)| vec![x, y]).collect();
        let w = Window::unit_cube(2);
        let grid = uniform_grid(0.25, 16);
        let got = k_hat(&PointSet::from_rows(&pts).unwrap(), &w, &grid).unwrap();
        prop_assert!(close(&got.values, &naive_k(&pts, &w, &grid), 1e-12));
        prop_assert!(got.values.windows(2).all(|v| v[0] <= v[1]));
    }

    #[test]
    fn k_hat_in_a_ball_matches_double_loop(pts in prop::collection::vec(unit_disc_point(), 2..=50)) {
        let w = Window::unit_ball(2);
        let grid = uniform_grid(0.5, 64);
        let got = k_hat(&PointSet::from_rows(&pts).unwrap(), &w, &grid).unwrap();
        prop_assert!(close(&got.values, &naive_k(&pts, &w, &grid), 1e-12));
    }

    #[test]
    fn silhouette_matches_definition(
        rows in prop::collection::vec(((0.0..10.0f64, 0.0..10.0f64), 0usize..4), 2..=200)
    ) {
        let pts: Vec<Vec<f64>> = rows.iter().map(|&((x, y), _)| vec![x, y]).collect();
        let labels: Vec<usize> = rows.iter().map(|&(_, l)| l).collect();
        let got = silhouette_avg(&PointSet::from_rows(&pts).unwrap(), &labels).unwrap();
        let mut ids = labels.clone();
        ids.sort_unstable();
        ids.dedup();
        let expected = if ids.len() < 2 {
            0.0
        } else {
            let n = pts.len();
            let mut total = 0.0;
            for i in 0..n {
                let mean_to = |c: usize| {
                    let others: Vec<usize> = (0..n).filter(|&j| j != i && labels[j] == c).collect();
                    others.iter().map(|&j| dist(&pts[i], &pts[j])).sum::<f64>() / others.len() as f64
                };
                if labels.iter().filter(|&&l| l == labels[i]).count() == 1 {
                    continue;
                }
                let a = mean_to(labels[i]);
                let b = ids.iter().filter(|&&c| c != labels[i]).map(|&c| mean_to(c)).fold(f64::INFINITY, f64::min);
                let m = a.max(b);
                total += if m > 0.0 { (b - a) / m } else { 0.0 };
            }
            total / n as f64
        };
        prop_assert!((got - expected).abs() <= 1e-12, "{got} vs {expected}");
    }

    #[test]
    fn rand_index_matches_pair_count(
        pairs in prop::collection::vec((0usize..5, 0usize..5), 2..=200)
    ) {
        let a: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let b: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        let n = a.len();
        let mut agree = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                if (a[i] == a[j]) == (b[i] == b[j]) {
                    agree += 1;
                }
            }
        }
        let expected = agree as f64 / (n * (n - 1) / 2) as f64;
        prop_assert!((rand_index(&a, &b).unwrap() - expected).abs() <= 1e-15);
    }

    #[test]
    fn ks_radius_maximises_the_statistic(
        coords in prop::collection::vec(0.0..1.0f64, 4..=80),
        delta in 0.05..50.0f64,
    ) {
        let pts: Vec<Vec<f64>> = coords.chunks_exact(2).map(|c| c.to_vec()).collect();
        prop_assume!(pts.len() >= 2);
        let got = ks_radii(&PointSet::from_rows(&pts).unwrap(), delta).unwrap();
        let n = pts.len();
        for x in 0..n {
            let stat = |r: f64| {
                let inside = (0..n).filter(|&j| j != x && dist(&pts[x], &pts[j]) <= r).count();
                (1 + inside) as f64 / n as f64 - delta * r * r
            };
            let cands: Vec<f64> = (0..n).filter(|&j| j != x).map(|j| dist(&pts[x], &pts[j])).collect();
            let best = cands.iter().map(|&r| stat(r)).fold(f64::NEG_INFINITY, f64::max);
            let r = got.radii[x];
            prop_assert!(cands.contains(&r));
            prop_assert!(stat(r) >= best - 1e-12);
            // ties go to the smaller radius, so no smaller candidate does better
            prop_assert!(cands.iter().filter(|&&c| c < r).all(|&c| stat(c) <= stat(r) + 1e-12));
        }
    }
}

#[test]
fn correction_examples() {
    assert_eq!(translation_correction_ball(0.0, 1.0, 2).unwrap(), 1.0);
    assert!((translation_correction_ball(1.0, 1.0, 2).unwrap() - 2.557531).abs() < 1e-6);
    assert!((translation_correction_ball(1.0, 1.0, 3).unwrap() - 3.2).abs() < 1e-12);
    assert!(translation_correction_ball(2.0, 1.0, 2).is_err());
}
