//! Invariants that hold for every input.

use std::sync::OnceLock;

use ccd_core::cluster::{cluster_rk, convex_distance, ClusterOptions};
use ccd_core::datagen::{generate, Dist, Setting, SimSpec, fixed_centers};
use ccd_core::spatial::{csr_test, k_hat, simulate_csr, uniform_grid};
use ccd_core::{rk_radii, CatchDigraph, EnvelopeTable, PointSet, RkSearch, Shape, Window, NOISE};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table() -> &'static EnvelopeTable {
    static T: OnceLock<EnvelopeTable> = OnceLock::new();
    T.get_or_init(|| EnvelopeTable::build(2, 60, 19, 5).unwrap())
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn rows(coords: &[f64]) -> PointSet {
    PointSet::new(2, coords[..coords.len() / 2 * 2].to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn k_hat_scales_with_the_ball(
        seed in any::<u64>(),
        m in 2usize..60,
        a in 0.01..100.0f64,
        b in (-50.0..50.0f64, -50.0..50.0f64),
    ) {
        let unit = Window::unit_ball(2);
        let z = simulate_csr(m, &unit, &mut ChaCha8Rng::seed_from_u64(seed));
        let moved = z.affine(a, &[b.0, b.1]);
        let ball = Window::ball(vec![b.0, b.1], a).unwrap();
        let grid = uniform_grid(0.5, 64);
        let scaled: Vec<f64> = grid.iter().map(|t| a * t).collect();
        let k0 = k_hat(&z, &unit, &grid).unwrap();
        let k1 = k_hat(&moved, &ball, &scaled).unwrap();
        // K̂ carries the window volume a^d; the pair sum itself is invariant
        for (u, v) in k0.values.iter().zip(&k1.values) {
            prop_assert!((u - v / (a * a)).abs() <= 1e-9 * (1.0 + u.abs()), "{u} vs {}", v / (a * a));
        }
        if m >= 3 {
            let t0 = csr_test(&z, &unit, table()).unwrap();
            let t1 = csr_test(&moved, &ball, table()).unwrap();
            prop_assert_eq!(t0.rejected, t1.rejected);
        }
    }

    #[test]
    fn arcs_follow_the_radii(coords in prop::collection::vec(0.0..1.0f64, 4..=60), rs in prop::collection::vec(0.0..0.6f64, 30)) {
        let p = rows(&coords);
        let n = p.len();
        let radii: Vec<f64> = (0..n).map(|i| rs[i % rs.len()]).collect();
        let g = CatchDigraph::build(&p, &radii).unwrap();
        let bigger: Vec<f64> = radii.iter().map(|r| r * 1.5).collect();
        let h = CatchDigraph::build(&p, &bigger).unwrap();
        for u in 0..n {
            for v in 0..n {
                let inside = u != v && dist(p.point(u), p.point(v)) <= radii[u];
                prop_assert_eq!(g.has_arc(u, v), inside);
                if inside {
                    prop_assert!(h.has_arc(u, v));
                }
            }
        }
    }

    #[test]
    fn rk_radii_stop_before_the_first_rejection(coords in prop::collection::vec(0.0..1.0f64, 8..=80), linear in any::<bool>()) {
        let p = rows(&coords);
        let n = p.len();
        let search = if linear { RkSearch::Linear } else { RkSearch::Binary };
        let got = rk_radii(&p, table(), search).unwrap();
        for x in 0..n {
            let mut cands: Vec<f64> = (0..n).filter(|&j| j != x).map(|j| dist(p.point(x), p.point(j))).collect();
            cands.sort_by(f64::total_cmp);
            cands.dedup();
            let rejects = |r: f64| {
                let members: Vec<usize> = (0..n).filter(|&j| dist(p.point(x), p.point(j)) <= r).collect();
                if members.len() < 3 {
                    return false;
                }
                let ball = Window::ball(p.point(x).to_vec(), r).unwrap();
                csr_test(&p.select(&members), &ball, table()).unwrap().rejected
            };
            let r = got.radii[x];
            let k = cands.partition_point(|&c| c <= r);
            if r > 0.0 {
                prop_assert!(cands.contains(&r));
                prop_assert!(!rejects(r));
            }
            if k < cands.len() {
                prop_assert!(rejects(cands[k]), "candidate after r({x}) = {r} should reject");
            }
            if linear {
                prop_assert!(cands[..k].iter().all(|&c| !rejects(c)));
            }
        }
    }
}

#[test]
fn rk_pipeline_ignores_the_unit_of_measurement() {
    for seed in 0..20u64 {
        let spec = SimSpec::new(Setting::FixedCenters, 2, 25, 2, Dist::Uniform, seed);
        let data = generate(&spec).unwrap();
        let a = 0.5 + seed as f64 * 0.37;
        let scaled = data.points.affine(a, &[0.0, 0.0]);
        let opts = ClusterOptions::default();
        let r0 = cluster_rk(&data.points, table(), &opts).unwrap();
        let r1 = cluster_rk(&scaled, table(), &opts).unwrap();
        assert_eq!(r0.k_hat(), r1.k_hat(), "seed {seed}");
        assert_eq!(r0.partition.labels, r1.partition.labels, "seed {seed}");
    }
}

#[test]
fn convex_assignment_picks_the_nearest_ball() {
    let spec = SimSpec::new(Setting::FixedCenters, 3, 20, 2, Dist::Normal, 11);
    let data = generate(&spec).unwrap();
    let run = cluster_rk(&data.points, table(), &ClusterOptions::new(Shape::Convex)).unwrap();
    let m = &run.model;
    for (i, p) in data.points.iter().enumerate() {
        let d: Vec<f64> = m
            .centers
            .iter()
            .zip(&m.center_radii)
            .map(|(&c, &r)| convex_distance(p, data.points.point(c), r))
            .collect();
        let best = d.iter().cloned().fold(f64::INFINITY, f64::min);
        let l = run.partition.labels[i];
        assert_ne!(l, NOISE);
        if best.is_finite() {
            assert!(d[l] <= best + 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn datagen_is_seeded_and_counted(
        seed in any::<u64>(),
        setting in prop_oneof![Just(Setting::FixedCenters), Just(Setting::Strauss), Just(Setting::StraussNoise)],
        k in prop_oneof![Just(2usize), Just(3), Just(5)],
        d in prop_oneof![Just(2usize), Just(3), Just(5)],
        n in 1usize..40,
        normal in any::<bool>(),
    ) {
        let dist_kind = if normal { Dist::Normal } else { Dist::Uniform };
        let spec = SimSpec::new(setting, k, n, d, dist_kind, seed);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        prop_assert_eq!(&a.points, &b.points);
        prop_assert_eq!(a.points.len(), a.labels.len());
        let noise = a.labels.iter().filter(|&&l| l == NOISE).count();
        prop_assert_eq!(noise, spec.noise_count());
        prop_assert_eq!(a.points.len(), k * n + noise);
        for c in 0..k {
            prop_assert_eq!(a.labels.iter().filter(|&&l| l == c).count(), n);
        }
        if setting == Setting::FixedCenters && dist_kind == Dist::Uniform {
            let centers = fixed_centers(k, d, dist_kind).unwrap();
            for (p, &l) in a.points.iter().zip(&a.labels) {
                prop_assert!(p.iter().zip(&centers[l]).all(|(x, c)| (x - c).abs() <= 1.0));
            }
        }
        if setting != Setting::FixedCenters {
            for p in a.points.iter().zip(&a.labels).filter(|(_, &l)| l == NOISE).map(|(p, _)| p) {
                prop_assert!(p.iter().all(|&x| (-spec.r..=1.0 + spec.r).contains(&x)));
            }
        }
    }
}
