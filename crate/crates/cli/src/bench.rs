//! Simulation benchmark: success rate and mean Rand index per grid cell.

use std::fmt::Write as _;

use ccd_core::cluster::{cluster_ks, cluster_rk, ClusterOptions};
use ccd_core::datagen::{generate, Dist, Setting, SimSpec};
use ccd_core::metrics::rand_index;
use ccd_core::EnvelopeTable;

use rayon::prelude::*;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub setting: Setting,
    pub dist: Dist,
    pub k: usize,
    pub n: usize,
    pub d: usize,
}

impl Cell {
    pub fn spec(&self, seed: u64) -> SimSpec {
        SimSpec::new(self.setting, self.k, self.n, self.d, self.dist, seed)
    }

    /// Observations per dataset, noise included.
    pub fn size(&self) -> usize {
        let s = self.spec(0);
        s.k * s.n + s.noise_count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub cell: Cell,
    pub k_hats: Vec<usize>,
    pub rand_indices: Vec<f64>,
}

impl CellResult {
    pub fn success_rate(&self) -> f64 {
        let hits = self.k_hats.iter().filter(|&&k| k == self.cell.k).count();
        hits as f64 / self.k_hats.len().max(1) as f64
    }

    pub fn mean_rand_index(&self) -> f64 {
        self.rand_indices.iter().sum::<f64>() / self.rand_indices.len().max(1) as f64
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Method<'t> {
    Rk(&'t EnvelopeTable),
    Ks(f64),
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Dataset seed of replicate `rep` in cell number `cell`.
pub fn replicate_seed(seed: u64, cell: usize, rep: usize) -> u64 {
    splitmix(splitmix(seed ^ splitmix(cell as u64)) ^ rep as u64)
}

/// Runs `replicates` simulated datasets of one cell in parallel. Noise
/// points keep their own label id when scoring.
pub fn run_cell(
    cell: Cell,
    cell_index: usize,
    replicates: usize,
    seed: u64,
    method: Method<'_>,
    options: &ClusterOptions,
) -> Result<CellResult> {
    let outcomes = (0..replicates)
        .into_par_iter()
        .map(|rep| {
            let data = generate(&cell.spec(replicate_seed(seed, cell_index, rep)))?;
            let run = match method {
                Method::Rk(table) => cluster_rk(&data.points, table, options)?,
                Method::Ks(delta) => cluster_ks(&data.points, delta, options)?,
            };
            Ok((run.k_hat(), rand_index(&run.partition.labels, &data.labels)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let (k_hats, rand_indices) = outcomes.into_iter().unzip();
    Ok(CellResult {
        cell,
        k_hats,
        rand_indices,
    })
}

fn setting_name(s: Setting) -> &'static str {
    match s {
        Setting::FixedCenters => "fixed",
        Setting::Strauss => "strauss",
        Setting::StraussNoise => "strauss-noise",
    }
}

fn dist_name(d: Dist) -> &'static str {
    match d {
        Dist::Uniform => "uniform",
        Dist::Normal => "normal",
    }
}

/// One CSV row per cell under a commented header line.
pub fn to_csv(rows: &[CellResult], mode: &str) -> String {
    let mut s = String::from("# ccd-bench/1\nsetting,dist,k,n,d,replicates,mode,success_rate,mean_rand_index\n");
    for r in rows {
        let c = r.cell;
        writeln!(
            s,
            "{},{},{},{},{},{},{mode},{:.4},{:.4}",
            setting_name(c.setting),
            dist_name(c.dist),
            c.k,
            c.n,
            c.d,
            r.k_hats.len(),
            r.success_rate(),
            r.mean_rand_index()
        )
        .unwrap();
    }
    s
}
