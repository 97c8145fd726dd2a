//! Command bodies.

use std::path::{Path, PathBuf};

use ccd_core::cluster::{cluster_ks, cluster_rk, ClusterOptions, Shape, SilhouetteRule};
use ccd_core::datagen::{generate, two_circles, two_moons, two_uniform_blobs, Dist, Setting, SimSpec};
use ccd_core::metrics::rand_index;
use ccd_core::spatial::{envelope_band, k_hat, l_hat_minus_t, uniform_grid, KCurve};
use ccd_core::{RkSearch, Window};

use crate::bench::{self, Cell, Method};
use crate::cache::{self, CacheStatus};
use crate::cli::*;
use crate::csvio::{read_dataset, write_dataset, write_file};
use crate::error::{CliError, Result};
use crate::report::ClusterReport;

pub fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cluster(a) => cmd_cluster(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Envelope(a) => cmd_envelope(&a).map(|_| ()),
        Command::Datagen(a) => cmd_datagen(&a),
        Command::Lcurve(a) => cmd_lcurve(&a),
    }
}

/// Checks the mode/delta contract and returns the KS intensity, if any.
pub fn validate_run(run: &RunArgs) -> Result<Option<f64>> {
    match (run.mode, run.delta) {
        (Mode::Ks, None) => Err(CliError::Usage("--mode ks requires --delta".into())),
        (Mode::Ks, Some(d)) if !(d > 0.0 && d.is_finite()) => {
            Err(CliError::Usage(format!("--delta must be positive, got {d}")))
        }
        (Mode::Rk, Some(_)) => Err(CliError::Usage("--delta is only accepted with --mode ks".into())),
        (Mode::Ks, Some(d)) => Ok(Some(d)),
        (Mode::Rk, None) => {
            if run.envelope_reps == 0 {
                return Err(CliError::Usage("--envelope-reps must be at least 1".into()));
            }
            Ok(None)
        }
    }
}

pub fn options(run: &RunArgs) -> ClusterOptions {
    ClusterOptions {
        shape: match run.shape {
            ShapeArg::Convex => Shape::Convex,
            ShapeArg::Arbitrary => Shape::Arbitrary,
        },
        rule: match run.silhouette {
            SilhouetteArg::GlobalMax => SilhouetteRule::GlobalMax,
            SilhouetteArg::FirstLocalMax => SilhouetteRule::FirstLocalMax,
        },
        mark_noise: run.mark_noise,
        search: match run.search {
            SearchArg::Binary => RkSearch::Binary,
            SearchArg::Linear => RkSearch::Linear,
        },
    }
}

fn cache_file(explicit: Option<&Path>, dim: usize, reps: usize, seed: u64) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .unwrap_or_else(|| cache::default_path(&cache::default_dir(), dim, reps, seed))
}

pub fn cmd_cluster(a: &ClusterArgs) -> Result<()> {
    let delta = validate_run(&a.run)?;
    let data = read_dataset(&a.input)?;
    let opts = options(&a.run);
    let run = match delta {
        Some(d) => cluster_ks(&data.points, d, &opts)?,
        None => {
            let dim = data.points.dim();
            let path = cache_file(a.cache.as_deref(), dim, a.run.envelope_reps, a.run.seed);
            let (table, _) = cache::load_or_build(&path, dim, a.run.envelope_reps, a.run.seed, data.points.len())?;
            cluster_rk(&data.points, &table, &opts)?
        }
    };
    let ri = match &data.labels {
        Some(truth) => Some(rand_index(&run.partition.labels, truth)?),
        None => None,
    };
    let report = ClusterReport::new(&run, a.input.display().to_string(), data.points.dim(), a.run.seed, ri);
    match &a.output {
        Some(path) => report.write(path),
        None => {
            print!("{}", report.to_text());
            Ok(())
        }
    }
}

fn sim_setting(s: SettingArg) -> Setting {
    match s {
        SettingArg::Fixed => Setting::FixedCenters,
        SettingArg::Strauss => Setting::Strauss,
        SettingArg::StraussNoise => Setting::StraussNoise,
    }
}

fn sim_dist(d: DistArg) -> Dist {
    match d {
        DistArg::Uniform => Dist::Uniform,
        DistArg::Normal => Dist::Normal,
    }
}

pub fn cmd_bench(a: &BenchArgs) -> Result<()> {
    let delta = validate_run(&a.run)?;
    if a.replicates == 0 {
        return Err(CliError::Usage("--replicates must be at least 1".into()));
    }
    let mut cells = Vec::new();
    for &dist in &a.dist {
        for &k in &a.k {
            for &n in &a.n {
                for &d in &a.dim {
                    cells.push(Cell {
                        setting: sim_setting(a.setting),
                        dist: sim_dist(dist),
                        k,
                        n,
                        d,
                    });
                }
            }
        }
    }
    let opts = options(&a.run);
    let mut rows = Vec::with_capacity(cells.len());
    let mut tables = std::collections::BTreeMap::new();
    for (i, cell) in cells.iter().enumerate() {
        let row = match delta {
            Some(dl) => bench::run_cell(*cell, i, a.replicates, a.run.seed, Method::Ks(dl), &opts)?,
            None => {
                let m_max = cells.iter().filter(|c| c.d == cell.d).map(Cell::size).max().unwrap_or(0);
                if !tables.contains_key(&cell.d) {
                    let dir = a.cache.clone().unwrap_or_else(cache::default_dir);
                    let path = cache::default_path(&dir, cell.d, a.run.envelope_reps, a.run.seed);
                    let (t, _) = cache::load_or_build(&path, cell.d, a.run.envelope_reps, a.run.seed, m_max)?;
                    tables.insert(cell.d, t);
                }
                bench::run_cell(*cell, i, a.replicates, a.run.seed, Method::Rk(&tables[&cell.d]), &opts)?
            }
        };
        rows.push(row);
    }
    let mode = if delta.is_some() { "ks" } else { "rk" };
    let text = bench::to_csv(&rows, mode);
    match &a.output {
        Some(p) => write_file(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_envelope(a: &EnvelopeArgs) -> Result<CacheStatus> {
    if a.m_max < ccd_core::spatial::MIN_POINTS {
        return Err(CliError::Usage(format!(
            "--m-max must be at least {}",
            ccd_core::spatial::MIN_POINTS
        )));
    }
    if a.envelope_reps == 0 || a.dim == 0 {
        return Err(CliError::Usage("--dim and --envelope-reps must be positive".into()));
    }
    let path = cache_file(a.cache.as_deref(), a.dim, a.envelope_reps, a.seed);
    let (table, status) = cache::load_or_build(&path, a.dim, a.envelope_reps, a.seed, a.m_max)?;
    let verb = match status {
        CacheStatus::Reused => "verified",
        CacheStatus::Extended => "extended",
        CacheStatus::Built => "built",
    };
    println!("{verb} {} ({} envelopes, d={}, N={})", path.display(), table.len(), a.dim, a.envelope_reps);
    Ok(status)
}

pub fn cmd_datagen(a: &DatagenArgs) -> Result<()> {
    let data = match a.setting {
        DatasetArg::Moons => two_moons(a.n, a.noise, a.seed),
        DatasetArg::Circles => two_circles(a.n, 0.5, a.noise, a.seed),
        DatasetArg::TwoBlobs => two_uniform_blobs(a.seed),
        s => {
            let setting = match s {
                DatasetArg::Fixed => Setting::FixedCenters,
                DatasetArg::Strauss => Setting::Strauss,
                _ => Setting::StraussNoise,
            };
            let spec = SimSpec {
                theta: a.theta,
                r: a.r,
                ..SimSpec::new(setting, a.k, a.n, a.dim, sim_dist(a.dist), a.seed)
            };
            generate(&spec)?
        }
    };
    write_dataset(&a.output, &data)
}

pub fn cmd_lcurve(a: &LcurveArgs) -> Result<()> {
    let data = read_dataset(&a.input)?;
    if data.points.dim() != 2 {
        return Err(CliError::Usage(format!(
            "L(t) - t is defined for 2-D data; input has {} columns",
            data.points.dim()
        )));
    }
    let window = Window::bounding_box(&data.points)?;
    let grid = uniform_grid(window.default_t_max(), ccd_core::spatial::DEFAULT_GRID_LEN);
    let observed = k_hat(&data.points, &window, &grid)?;
    let band = envelope_band(&window, data.points.len(), a.envelope_reps, &grid, a.seed)?;
    let as_l = |values: Vec<f64>| {
        l_hat_minus_t(&KCurve {
            t_grid: grid.clone(),
            values,
            sample_size: data.points.len(),
            dim: 2,
        })
    };
    let obs = l_hat_minus_t(&observed)?;
    let lower = as_l(band.lower)?;
    let upper = as_l(band.upper)?;
    let mut text = String::from("t,l_minus_t,lower,upper\n");
    for j in 0..grid.len() {
        text.push_str(&format!("{},{},{},{}\n", grid[j], obs[j], lower[j], upper[j]));
    }
    match &a.output {
        Some(p) => write_file(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
