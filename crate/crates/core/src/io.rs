//! JSON and CSV documents read and written by the command-line tool.
//!
//! Numbers are written with the shortest representation that parses back to
//! the same `f64`, so exported medians re-ingest bit-identically.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::depth::DepthReport;
use crate::distribution::{Breakpoint, FuzzySample, ScalarCdf};
use crate::error::Error;
use crate::fuzzy::{AlphaGrid, FuzzyNumber};
use crate::median::MedianBand;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot parse {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("item {index}: {source}")]
    Item { index: usize, source: Error },

    #[error(transparent)]
    Invalid(#[from] Error),

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl DocumentError {
    /// The underlying library error, if any.
    pub fn library_error(&self) -> Option<&Error> {
        match self {
            DocumentError::Item { source, .. } | DocumentError::Invalid(source) => Some(source),
            _ => None,
        }
    }
}

/// Shape of one dataset item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ItemShape {
    Triangular {
        a: f64,
        b: f64,
        c: f64,
    },
    Trapezoidal {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    },
    CrispPoint {
        x: f64,
    },
    CrispInterval {
        a: f64,
        b: f64,
    },
    /// Raw endpoint arrays; `alphas` defaults to the document grid.
    Grid {
        lower: Vec<f64>,
        upper: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphas: Option<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemRecord {
    #[serde(flatten)]
    pub shape: ItemShape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

impl ItemRecord {
    pub fn to_number(&self, grid: &AlphaGrid) -> crate::Result<FuzzyNumber> {
        match &self.shape {
            ItemShape::Triangular { a, b, c } => FuzzyNumber::triangular(*a, *b, *c, grid),
            ItemShape::Trapezoidal { a, b, c, d } => FuzzyNumber::trapezoidal(*a, *b, *c, *d, grid),
            ItemShape::CrispPoint { x } => FuzzyNumber::crisp_point(*x, grid),
            ItemShape::CrispInterval { a, b } => FuzzyNumber::crisp_interval(*a, *b, grid),
            ItemShape::Grid {
                lower,
                upper,
                alphas,
            } => {
                let grid = match alphas {
                    Some(levels) => AlphaGrid::from_levels(levels.clone())?,
                    None => grid.clone(),
                };
                FuzzyNumber::new(grid, lower.clone(), upper.clone())
            }
        }
    }

    /// A `grid` item holding the exact knots of `a`.
    pub fn from_number(a: &FuzzyNumber) -> Self {
        Self {
            shape: ItemShape::Grid {
                lower: a.lower().to_vec(),
                upper: a.upper().to_vec(),
                alphas: Some(a.grid().levels().to_vec()),
            },
            weight: None,
        }
    }
}

/// A weighted list of fuzzy numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetDocument {
    /// Number of uniform levels `M + 1`.
    pub alpha_levels: usize,
    pub items: Vec<ItemRecord>,
}

impl DatasetDocument {
    pub fn grid(&self) -> crate::Result<AlphaGrid> {
        AlphaGrid::uniform(self.alpha_levels)
    }

    /// Validated items, in document order.
    pub fn numbers(&self) -> Result<Vec<FuzzyNumber>, DocumentError> {
        let grid = self.grid()?;
        self.items
            .iter()
            .enumerate()
            .map(|(index, it)| {
                it.to_number(&grid)
                    .map_err(|source| DocumentError::Item { index, source })
            })
            .collect()
    }

    /// The empirical distribution; missing weights give uniform weights.
    pub fn to_sample(&self) -> Result<FuzzySample, DocumentError> {
        let numbers = self.numbers()?;
        if numbers.is_empty() {
            return Err(Error::Domain("dataset has no items".into()).into());
        }
        let given: Vec<Option<f64>> = self.items.iter().map(|it| it.weight).collect();
        let sample = if given.iter().all(Option::is_none) {
            FuzzySample::uniform(numbers)?
        } else if given.iter().all(Option::is_some) {
            FuzzySample::new(numbers, given.into_iter().flatten().collect())?
        } else {
            return Err(Error::InvalidParameter(
                "weights must be given for all items or none".into(),
            )
            .into());
        };
        Ok(sample)
    }

    pub fn from_numbers(numbers: &[FuzzyNumber]) -> Self {
        Self {
            alpha_levels: numbers
                .first()
                .map_or(crate::fuzzy::DEFAULT_CELLS + 1, |a| a.grid().len()),
            items: numbers.iter().map(ItemRecord::from_number).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CdfKind {
    PiecewiseLinearCdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreakpointRecord {
    pub x: f64,
    #[serde(rename = "F_left")]
    pub f_left: f64,
    #[serde(rename = "F_right")]
    pub f_right: f64,
}

/// Piecewise-linear CDF with optional jumps at breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfDocument {
    pub kind: CdfKind,
    pub breakpoints: Vec<BreakpointRecord>,
}

impl CdfDocument {
    pub fn to_cdf(&self) -> crate::Result<ScalarCdf> {
        ScalarCdf::new(
            self.breakpoints
                .iter()
                .map(|b| Breakpoint {
                    x: b.x,
                    f_left: b.f_left,
                    f_right: b.f_right,
                })
                .collect(),
        )
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, DocumentError> {
    let text = std::fs::read_to_string(path).map_err(|source| DocumentError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| DocumentError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_dataset(path: &Path) -> Result<DatasetDocument, DocumentError> {
    read_json(path)
}

pub fn read_cdf(path: &Path) -> Result<CdfDocument, DocumentError> {
    read_json(path)
}

/// Writes `bytes` to a temporary file next to `path`, then renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), DocumentError> {
    let wrap = |source| DocumentError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(wrap)?;
    tmp.write_all(bytes).map_err(wrap)?;
    tmp.as_file().sync_all().map_err(wrap)?;
    tmp.persist(path).map_err(|e| wrap(e.error))?;
    Ok(())
}

/// One output row of the `depth` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthRecord {
    pub index: usize,
    pub method: String,
    pub depth: f64,
    pub witness_u: Option<i32>,
    pub witness_alpha: Option<f64>,
}

impl DepthRecord {
    pub fn new(index: usize, report: &DepthReport) -> Self {
        Self {
            index,
            method: report.method.name().to_string(),
            depth: report.value,
            witness_u: report.witness.map(|w| w.u.as_i32()),
            witness_alpha: report.witness.and_then(|w| w.alpha),
        }
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

pub fn depth_records_csv(records: &[DepthRecord]) -> String {
    let mut out = String::from("index,method,depth,witness_u,witness_alpha\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.index,
            r.method,
            r.depth,
            opt(r.witness_u),
            opt(r.witness_alpha)
        );
    }
    out
}

pub const BAND_CSV_HEADER: &str = "alpha,u_plus_lo,u_plus_hi,u_minus_lo,u_minus_hi";

/// One band knot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandRow {
    pub alpha: f64,
    pub u_plus_lo: f64,
    pub u_plus_hi: f64,
    pub u_minus_lo: f64,
    pub u_minus_hi: f64,
}

pub fn band_rows(band: &MedianBand) -> Vec<BandRow> {
    band.grid()
        .levels()
        .iter()
        .zip(band.plus().iter().zip(band.minus()))
        .map(|(&alpha, (p, m))| BandRow {
            alpha,
            u_plus_lo: p.lo,
            u_plus_hi: p.hi,
            u_minus_lo: m.lo,
            u_minus_hi: m.hi,
        })
        .collect()
}

pub fn band_csv(band: &MedianBand) -> String {
    let mut out = format!("{BAND_CSV_HEADER}\n");
    for r in band_rows(band) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.alpha, r.u_plus_lo, r.u_plus_hi, r.u_minus_lo, r.u_minus_hi
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_item_kinds() {
        let text = r#"{
            "alpha_levels": 3,
            "items": [
                {"kind": "triangular", "a": 1, "b": 2, "c": 3},
                {"kind": "trapezoidal", "a": 0, "b": 0, "c": 2, "d": 2},
                {"kind": "crisp_point", "x": 4},
                {"kind": "crisp_interval", "a": 4, "b": 5},
                {"kind": "grid", "lower": [1, 1.5, 2], "upper": [3, 2.5, 2]}
            ]
        }"#;
        let doc: DatasetDocument = serde_json::from_str(text).unwrap();
        let numbers = doc.numbers().unwrap();
        assert!(numbers[0].approx_eq(&numbers[4], 0.0));
        let s = doc.to_sample().unwrap();
        assert_eq!(s.weights(), &[0.2; 5]);
    }

    #[test]
    fn item_errors_name_the_item() {
        let text = r#"{"alpha_levels": 2, "items": [
            {"kind": "crisp_point", "x": 0},
            {"kind": "grid", "lower": [1, 2], "upper": [1.5, 1.8]}
        ]}"#;
        let doc: DatasetDocument = serde_json::from_str(text).unwrap();
        let err = doc.to_sample().unwrap_err();
        assert!(
            matches!(
                err,
                DocumentError::Item {
                    index: 1,
                    source: Error::EmptyCut { level: 1 }
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn partial_weights_rejected() {
        let text = r#"{"alpha_levels": 2, "items": [
            {"kind": "crisp_point", "x": 0, "weight": 1.0},
            {"kind": "crisp_point", "x": 1}
        ]}"#;
        let doc: DatasetDocument = serde_json::from_str(text).unwrap();
        assert!(doc.to_sample().is_err());
    }

    #[test]
    fn grid_item_round_trip_is_exact() {
        let grid = AlphaGrid::uniform(7).unwrap().with_points([0.123_456_789]);
        let a = FuzzyNumber::triangular(0.1, 0.7, 1.3, &grid).unwrap();
        let doc = DatasetDocument::from_numbers(std::slice::from_ref(&a));
        let back: DatasetDocument =
            serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        let b = &back.numbers().unwrap()[0];
        assert_eq!(a.lower(), b.lower());
        assert_eq!(a.upper(), b.upper());
        assert_eq!(a.grid().levels(), b.grid().levels());
    }

    #[test]
    fn cdf_document_field_names() {
        let text = r#"{"kind": "piecewise_linear_cdf", "breakpoints": [
            {"x": 0, "F_left": 0, "F_right": 0},
            {"x": 2, "F_left": 0.29, "F_right": 0.49},
            {"x": 53, "F_left": 1, "F_right": 1}
        ]}"#;
        let doc: CdfDocument = serde_json::from_str(text).unwrap();
        assert!(doc.to_cdf().unwrap().has_jumps());
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
