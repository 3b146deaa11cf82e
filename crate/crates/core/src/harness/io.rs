use crate::instance::{Instance, MatrixFile};
use crate::solution::Solution;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("instance has {m} color(s); at least 2 are required")]
    ColorCardinality { m: usize },
}

impl IoError {
    fn parse(location: impl Into<String>, message: impl ToString) -> Self {
        IoError::Parse {
            location: location.into(),
            message: message.to_string(),
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        IoError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    MatrixJson,
}

impl Format {
    /// `.csv` files are feature tables, anything else is read as a matrix.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::MatrixJson,
        }
    }
}

/// Reads a feature table with columns `f0..f{N-1}` and `color`.
///
/// Color labels become indices in order of first appearance; distances are
/// Euclidean over the features.
pub fn parse_csv<R: Read>(reader: R) -> Result<Instance, IoError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| IoError::parse("header", e))?
        .clone();
    let color_col = headers
        .iter()
        .position(|h| h == "color")
        .ok_or_else(|| IoError::parse("header", "no `color` column"))?;
    let mut feature_cols = Vec::new();
    while let Some(c) = headers.iter().position(|h| h == format!("f{}", feature_cols.len())) {
        feature_cols.push(c);
    }
    if feature_cols.is_empty() {
        return Err(IoError::parse("header", "no feature columns f0, f1, ..."));
    }
    let mut labels: Vec<String> = Vec::new();
    let mut colors = Vec::new();
    let mut feats = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let line = row + 2;
        let rec = rec.map_err(|e| IoError::parse(format!("line {line}"), e))?;
        let mut point = Vec::with_capacity(feature_cols.len());
        for (t, &c) in feature_cols.iter().enumerate() {
            let cell = rec
                .get(c)
                .ok_or_else(|| IoError::parse(format!("line {line}, column f{t}"), "missing value"))?;
            let v: f64 = cell.parse().map_err(|_| {
                IoError::parse(format!("line {line}, column f{t}"), format!("`{cell}` is not a number"))
            })?;
            if !v.is_finite() {
                return Err(IoError::parse(format!("line {line}, column f{t}"), "value is not finite"));
            }
            point.push(v);
        }
        let label = rec
            .get(color_col)
            .ok_or_else(|| IoError::parse(format!("line {line}, column color"), "missing value"))?;
        let idx = match labels.iter().position(|l| l == label) {
            Some(i) => i,
            None => {
                labels.push(label.to_string());
                labels.len() - 1
            }
        };
        colors.push(idx);
        feats.push(point);
    }
    if labels.len() < 2 {
        return Err(IoError::ColorCardinality { m: labels.len() });
    }
    Instance::from_features(feats, colors, labels.len()).map_err(|e| IoError::parse("data", e))
}

fn open(path: &Path) -> Result<BufReader<File>, IoError> {
    File::open(path).map(BufReader::new).map_err(|e| IoError::io(path, e))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    serde_json::from_reader(open(path)?).map_err(|e| {
        IoError::parse(
            format!("{} line {}, column {}", path.display(), e.line(), e.column()),
            e,
        )
    })
}

pub(crate) fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    let file = File::create(path).map_err(|e| IoError::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(bytes)
        .and_then(|_| w.flush())
        .map_err(|e| IoError::io(path, e))
}

pub fn load_instance(path: &Path, format: Format) -> Result<Instance, IoError> {
    let inst = match format {
        Format::Csv => parse_csv(open(path)?)?,
        Format::MatrixJson => {
            let file: MatrixFile = read_json(path)?;
            Instance::from_matrix_file(file).map_err(|e| IoError::parse(path.display().to_string(), e))?
        }
    };
    if inst.m() < 2 {
        return Err(IoError::ColorCardinality { m: inst.m() });
    }
    Ok(inst)
}

pub fn save_instance(inst: &Instance, path: &Path) -> Result<(), IoError> {
    let json = serde_json::to_vec(&inst.to_matrix_file()).expect("matrix serializes");
    write_bytes(path, &json)
}

#[derive(Serialize, Deserialize)]
struct SolutionFile {
    centers: Vec<usize>,
    assign: Vec<usize>,
}

pub fn load_solution(path: &Path, n: usize) -> Result<Solution, IoError> {
    let file: SolutionFile = read_json(path)?;
    Solution::new(file.centers, file.assign, n).map_err(|e| IoError::parse(path.display().to_string(), e))
}

pub fn save_solution(sol: &Solution, path: &Path) -> Result<(), IoError> {
    let file = SolutionFile {
        centers: sol.centers().to_vec(),
        assign: sol.assign().to_vec(),
    };
    write_bytes(path, &serde_json::to_vec(&file).expect("solution serializes"))
}
