//! Silhouette and Rand index.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{CcdError, Result};
use crate::points::{DistanceMatrix, PointSet};

/// Average silhouette `Σ sil(i) / n` with Euclidean distances.
///
/// `sil(i) = (b − a) / max(a, b)`, where `a` is the mean distance to the rest
/// of its own cluster and `b` the smallest mean distance to another cluster.
/// Members of singleton clusters score 0, and a single-cluster labelling
/// averages to 0.
pub fn silhouette_avg(points: &PointSet, labels: &[usize]) -> Result<f64> {
    if labels.len() != points.len() {
        return Err(CcdError::LengthMismatch {
            expected: points.len(),
            found: labels.len(),
        });
    }
    silhouette_from_distances(&DistanceMatrix::new(points), labels)
}

pub fn silhouette_from_distances(dm: &DistanceMatrix, labels: &[usize]) -> Result<f64> {
    let values = silhouette_values(dm, labels)?;
    if values.is_empty() {
        return Ok(0.0);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Per-observation silhouette `sil(i)`.
pub fn silhouette_values(dm: &DistanceMatrix, labels: &[usize]) -> Result<Vec<f64>> {
    let n = dm.len();
    if labels.len() != n {
        return Err(CcdError::LengthMismatch {
            expected: n,
            found: labels.len(),
        });
    }
    // compact label ids
    let mut ids = BTreeMap::new();
    for &l in labels {
        let next = ids.len();
        ids.entry(l).or_insert(next);
    }
    let k = ids.len();
    let mut out = alloc::vec![0.0; n];
    if k < 2 {
        return Ok(out);
    }
    let compact: Vec<usize> = labels.iter().map(|l| ids[l]).collect();
    let mut sizes = alloc::vec![0usize; k];
    for &c in &compact {
        sizes[c] += 1;
    }

    let mut sums = alloc::vec![0.0f64; k];
    for i in 0..n {
        sums.iter_mut().for_each(|s| *s = 0.0);
        for (&c, &d) in compact.iter().zip(dm.row(i)) {
            sums[c] += d;
        }
        let own = compact[i];
        if sizes[own] < 2 {
            continue;
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..k)
            .filter(|&c| c != own)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let denom = a.max(b);
        if denom > 0.0 {
            out[i] = (b - a) / denom;
        }
    }
    Ok(out)
}

/// Fraction of unordered pairs on which the two labellings agree: together
/// in both or apart in both. Noise labels count as an ordinary cluster id.
pub fn rand_index(a: &[usize], b: &[usize]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(CcdError::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let n = a.len();
    if n < 2 {
        return Ok(1.0);
    }
    let pairs = |c: u64| c * c.saturating_sub(1) / 2;
    let mut joint: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut rows: BTreeMap<usize, u64> = BTreeMap::new();
    let mut cols: BTreeMap<usize, u64> = BTreeMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_default() += 1;
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
    }
    let total = pairs(n as u64);
    let both: u64 = joint.values().map(|&c| pairs(c)).sum();
    let in_a: u64 = rows.values().map(|&c| pairs(c)).sum();
    let in_b: u64 = cols.values().map(|&c| pairs(c)).sum();
    // agreements = pairs together in both + pairs apart in both
    let agree = total + 2 * both - in_a - in_b;
    Ok(agree as f64 / total as f64)
}

/// Rand index over the observations whose labels differ from `noise` in
/// both labellings.
pub fn rand_index_excluding(a: &[usize], b: &[usize], noise: usize) -> Result<f64> {
    if a.len() != b.len() {
        return Err(CcdError::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let (fa, fb): (Vec<usize>, Vec<usize>) = a
        .iter()
        .zip(b)
        .filter(|(x, y)| **x != noise && **y != noise)
        .map(|(x, y)| (*x, *y))
        .unzip();
    rand_index(&fa, &fb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_pairs_on_a_line() {
        let p = PointSet::from_rows(&[[0.0], [0.1], [1.0], [1.1]]).unwrap();
        let labels = [0, 0, 1, 1];
        let v = silhouette_values(&DistanceMatrix::new(&p), &labels).unwrap();
        assert!((v[0] - 0.904762).abs() < 1e-6);
        assert!((v[1] - 0.85 / 0.95).abs() < 1e-12);
        assert!((v[0] - v[3]).abs() < 1e-12 && (v[1] - v[2]).abs() < 1e-12);
        let s = silhouette_avg(&p, &labels).unwrap();
        assert!((s - 0.899749).abs() < 1e-6);
    }

    #[test]
    fn one_cluster_is_zero() {
        let p = PointSet::from_rows(&[[0.0], [0.1], [1.0]]).unwrap();
        assert_eq!(silhouette_avg(&p, &[4, 4, 4]).unwrap(), 0.0);
    }

    #[test]
    fn separation_drives_to_one() {
        let mut prev = 0.0;
        for gap in [1.0, 10.0, 100.0, 1000.0] {
            let p = PointSet::from_rows(&[[0.0], [0.1], [gap], [gap + 0.1]]).unwrap();
            let s = silhouette_avg(&p, &[0, 0, 1, 1]).unwrap();
            assert!(s > prev);
            prev = s;
        }
        assert!(prev > 0.999);
    }

    #[test]
    fn singleton_members_score_zero() {
        let p = PointSet::from_rows(&[[0.0], [0.1], [5.0]]).unwrap();
        let s = silhouette_avg(&p, &[0, 0, 1]).unwrap();
        // only the two members of cluster 0 contribute
        let s0 = (5.0 - 0.1) / 5.0;
        let s1 = (4.9 - 0.1) / 4.9;
        assert!((s - (s0 + s1) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rand_examples() {
        assert_eq!(rand_index(&[0, 1, 1, 2], &[0, 1, 1, 2]).unwrap(), 1.0);
        assert!((rand_index(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap() - 2.0 / 6.0).abs() < 1e-15);
        assert_eq!(rand_index(&[0, 0, 1, 1], &[1, 1, 0, 0]).unwrap(), 1.0);
        assert!(rand_index(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn rand_excluding_noise() {
        let n = usize::MAX;
        let r = rand_index_excluding(&[0, 0, 1, n], &[0, 0, 1, 1], n).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn length_mismatch() {
        let p = PointSet::from_rows(&[[0.0], [1.0]]).unwrap();
        assert!(silhouette_avg(&p, &[0]).is_err());
    }
}
