//! Dataset CSV files.
//!
//! Comma separated reals, one observation per row. A first row that does
//! not parse as numbers is a header; a last header column named `label`
//! holds integer ground truth, with `-1` marking background noise.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use ccd_core::datagen::LabeledDataset;
use ccd_core::{PointSet, NOISE};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub header: Option<Vec<String>>,
    pub points: PointSet,
    pub labels: Option<Vec<usize>>,
}

fn parse_label(s: &str) -> Option<usize> {
    match s.trim() {
        "-1" => Some(NOISE),
        t => t.parse().ok(),
    }
}

pub fn format_label(l: usize) -> String {
    if l == NOISE {
        "-1".to_string()
    } else {
        l.to_string()
    }
}

pub fn read_dataset(path: &Path) -> Result<Dataset> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    read_from(file, path)
}

pub fn read_from<R: std::io::Read>(reader: R, path: &Path) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(reader);
    let parse_err = |line: u64, column: usize, message: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message,
    };

    let mut header: Option<Vec<String>> = None;
    let mut has_label = false;
    let mut width = None;
    let mut coords = Vec::new();
    let mut labels = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, 0, e.to_string())
        })?;
        let line = rec.position().map_or(k as u64 + 1, |p| p.line());
        if k == 0 && rec.iter().any(|f| f.parse::<f64>().is_err()) {
            let names: Vec<String> = rec.iter().map(str::to_string).collect();
            has_label = names.last().is_some_and(|n| n.eq_ignore_ascii_case("label"));
            header = Some(names);
            continue;
        }
        let fields = rec.len();
        match width {
            None => width = Some(fields),
            Some(w) if w != fields => {
                return Err(parse_err(line, fields.min(w) + 1, format!("expected {w} fields, found {fields}")));
            }
            _ => {}
        }
        let features = if has_label { fields - 1 } else { fields };
        for (c, f) in rec.iter().take(features).enumerate() {
            let v: f64 = f
                .parse()
                .map_err(|_| parse_err(line, c + 1, format!("not a number: {f:?}")))?;
            if !v.is_finite() {
                return Err(parse_err(line, c + 1, format!("not a finite number: {f:?}")));
            }
            coords.push(v);
        }
        if has_label {
            let f = &rec[features];
            labels.push(parse_label(f).ok_or_else(|| parse_err(line, fields, format!("bad label: {f:?}")))?);
        }
    }
    if let (Some(h), Some(w)) = (&header, width) {
        if h.len() != w {
            return Err(parse_err(1, 0, format!("header has {} columns, rows have {w}", h.len())));
        }
    }
    let dim = match width {
        Some(w) if has_label => w - 1,
        Some(w) => w,
        None => {
            return Err(CliError::Format {
                path: path.to_path_buf(),
                message: "no data rows".into(),
            })
        }
    };
    if dim == 0 {
        return Err(CliError::Format {
            path: path.to_path_buf(),
            message: "no feature columns".into(),
        });
    }
    let points = PointSet::new(dim, coords).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Dataset {
        header,
        points,
        labels: has_label.then_some(labels),
    })
}

/// Writes coordinates and labels under a `x1,…,xd,label` header.
pub fn write_dataset(path: &Path, data: &LabeledDataset) -> Result<()> {
    let mut out = String::new();
    let d = data.points.dim();
    for j in 1..=d {
        out.push_str(&format!("x{j},"));
    }
    out.push_str("label\n");
    for (p, &l) in data.points.iter().zip(&data.labels) {
        for x in p {
            out.push_str(&format!("{x},"));
        }
        out.push_str(&format_label(l));
        out.push('\n');
    }
    write_file(path, out.as_bytes())
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(bytes).map_err(|e| CliError::io(path, e))
}

pub(crate) fn sibling_json(path: &Path) -> Result<PathBuf> {
    if path.extension().is_some_and(|e| e == "json") {
        return Err(CliError::Usage(format!(
            "{}: the text result must not use the .json extension reserved for its sibling",
            path.display()
        )));
    }
    Ok(path.with_extension("json"))
}
