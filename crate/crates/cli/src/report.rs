//! Clustering result files.
//!
//! The text file has `[section]` blocks of `key: value` lines followed by a
//! `[labels]` block with one `label covered` pair per observation (noise is
//! `-1`). The JSON sibling carries the same fields under schema
//! `ccd-result/1`.

use std::fmt::Write as _;
use std::path::Path;

use ccd_core::cluster::{ClusterRun, Shape};
use serde::Serialize;

use crate::csvio::{format_label, sibling_json, write_file};
use crate::error::Result;

pub const SCHEMA: &str = "ccd-result/1";

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Center {
    pub index: usize,
    pub radius: f64,
    pub cardinality: usize,
    pub cluster: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ClusterReport {
    pub schema: &'static str,
    pub input: String,
    pub mode: &'static str,
    pub shape: &'static str,
    pub delta: Option<f64>,
    pub envelope_reps: Option<usize>,
    pub seed: u64,
    pub n: usize,
    pub dim: usize,
    pub k_hat: usize,
    pub silhouette: f64,
    pub rand_index: Option<f64>,
    pub dominating_set: Vec<usize>,
    pub centers: Vec<Center>,
    /// Cluster ids, `-1` for noise.
    pub labels: Vec<i64>,
    pub covered: Vec<bool>,
}

pub fn shape_name(shape: Shape) -> &'static str {
    match shape {
        Shape::Convex => "convex",
        Shape::Arbitrary => "arbitrary",
    }
}

impl ClusterReport {
    pub fn new(run: &ClusterRun, input: String, dim: usize, seed: u64, rand_index: Option<f64>) -> Self {
        let (mode, delta, envelope_reps) = match run.radii.method {
            ccd_core::RadiusMethod::Ks { delta } => ("ks", Some(delta), None),
            ccd_core::RadiusMethod::Rk { replicates, .. } => ("rk", None, Some(replicates)),
        };
        let mut cluster_of = vec![0; run.model.centers.len()];
        for (c, group) in run.model.components.iter().enumerate() {
            for &b in group {
                cluster_of[b] = c;
            }
        }
        let centers = run
            .model
            .centers
            .iter()
            .zip(&run.model.center_radii)
            .zip(cluster_of)
            .map(|((&index, &radius), cluster)| Center {
                index,
                radius,
                cardinality: run.digraph.ball_cardinality(index),
                cluster,
            })
            .collect();
        Self {
            schema: SCHEMA,
            input,
            mode,
            shape: shape_name(run.model.shape),
            delta,
            envelope_reps,
            seed,
            n: run.partition.labels.len(),
            dim,
            k_hat: run.k_hat(),
            silhouette: run.silhouette,
            rand_index,
            dominating_set: run.dominating_set.clone(),
            centers,
            labels: run
                .partition
                .labels
                .iter()
                .map(|&l| if l == ccd_core::NOISE { -1 } else { l as i64 })
                .collect(),
            covered: run.partition.covered.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        writeln!(s, "# {}", self.schema).unwrap();
        writeln!(s, "[run]").unwrap();
        writeln!(s, "input: {}", self.input).unwrap();
        writeln!(s, "mode: {}", self.mode).unwrap();
        writeln!(s, "shape: {}", self.shape).unwrap();
        writeln!(s, "delta: {}", opt(self.delta.map(|d| d.to_string()))).unwrap();
        writeln!(s, "envelope_reps: {}", opt(self.envelope_reps.map(|d| d.to_string()))).unwrap();
        writeln!(s, "seed: {}", self.seed).unwrap();
        writeln!(s, "n: {}", self.n).unwrap();
        writeln!(s, "dim: {}", self.dim).unwrap();
        writeln!(s, "\n[summary]").unwrap();
        writeln!(s, "k_hat: {}", self.k_hat).unwrap();
        writeln!(s, "silhouette: {:.6}", self.silhouette).unwrap();
        writeln!(s, "rand_index: {}", opt(self.rand_index.map(|r| format!("{r:.6}")))).unwrap();
        writeln!(s, "covered: {}", self.covered.iter().filter(|&&c| c).count()).unwrap();
        let ds: Vec<String> = self.dominating_set.iter().map(|v| v.to_string()).collect();
        writeln!(s, "dominating_set: {}", ds.join(" ")).unwrap();
        writeln!(s, "\n[centers]").unwrap();
        writeln!(s, "# index radius cardinality cluster").unwrap();
        for c in &self.centers {
            writeln!(s, "{} {} {} {}", c.index, c.radius, c.cardinality, c.cluster).unwrap();
        }
        writeln!(s, "\n[labels]").unwrap();
        writeln!(s, "# label covered").unwrap();
        for (&l, &c) in self.labels.iter().zip(&self.covered) {
            let l = if l < 0 { ccd_core::NOISE } else { l as usize };
            writeln!(s, "{} {}", format_label(l), u8::from(c)).unwrap();
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Writes the text report to `path` and the JSON sibling next to it.
    pub fn write(&self, path: &Path) -> Result<()> {
        let json = sibling_json(path)?;
        write_file(path, self.to_text().as_bytes())?;
        write_file(&json, self.to_json().as_bytes())
    }
}
