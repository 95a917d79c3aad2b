//! On-disk document formats for series, kernel specs, parameters, and sweep
//! grids, plus the float formatting used for CSV output.
//!
//! All documents are JSON. Complex numbers serialize as `{"re": .., "im": ..}`
//! objects. Reading separates I/O failures from format failures so callers
//! can distinguish a missing file from a malformed one.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::SweepCell;
use crate::classes::KernelSpec;
use crate::operators::ClassParams;
use crate::series::NormalizedSeries;

/// Serde adapter pinning the wire shape of complex vectors to
/// `[{"re": .., "im": ..}, ..]` (the crate's `Complex64` would otherwise
/// serialize as two-element tuples).
pub(crate) mod complex_vec {
    use num_complex::Complex64;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Rect {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for z in v {
            seq.serialize_element(&Rect { re: z.re, im: z.im })?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let raw = Vec::<Rect>::deserialize(d)?;
        Ok(raw.into_iter().map(|r| Complex64::new(r.re, r.im)).collect())
    }
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {detail}")]
    Format { path: String, detail: String },
}

pub type FileResult<T> = std::result::Result<T, FileError>;

fn io_err(path: &Path, source: std::io::Error) -> FileError {
    FileError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn format_err(path: &Path, detail: impl ToString) -> FileError {
    FileError::Format {
        path: path.display().to_string(),
        detail: detail.to_string(),
    }
}

/// Series document: explicit truncation order plus the tail coefficients in
/// ascending index order (the entry at position `i` multiplies `z^(i+1)`).
#[derive(Debug, Serialize, Deserialize)]
pub struct SeriesDoc {
    #[serde(rename = "M")]
    pub order: usize,
    #[serde(with = "complex_vec")]
    pub coeffs: Vec<Complex64>,
}

impl From<&NormalizedSeries> for SeriesDoc {
    fn from(series: &NormalizedSeries) -> Self {
        Self {
            order: series.order(),
            coeffs: series.coeffs().to_vec(),
        }
    }
}

pub fn read_series(path: &Path) -> FileResult<NormalizedSeries> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let doc: SeriesDoc = serde_json::from_str(&text).map_err(|e| format_err(path, e))?;
    NormalizedSeries::new(doc.coeffs, doc.order).map_err(|e| format_err(path, e))
}

pub fn write_series(path: &Path, series: &NormalizedSeries) -> FileResult<()> {
    write_json(path, &SeriesDoc::from(series))
}

/// Kernel document: unit-circle points and matching positive weights.
#[derive(Debug, Serialize, Deserialize)]
pub struct KernelDoc {
    #[serde(with = "complex_vec")]
    pub points: Vec<Complex64>,
    pub weights: Vec<f64>,
}

pub fn read_kernel(path: &Path) -> FileResult<KernelSpec> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let doc: KernelDoc = serde_json::from_str(&text).map_err(|e| format_err(path, e))?;
    KernelSpec::new(doc.points, doc.weights).map_err(|e| format_err(path, e))
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub n: u32,
    pub alpha: f64,
    pub beta: f64,
    pub c: f64,
}

impl ParamsDoc {
    pub fn resolve(&self, path: &Path) -> FileResult<ClassParams> {
        ClassParams::new(self.n, self.alpha, self.beta, self.c).map_err(|e| format_err(path, e))
    }
}

impl From<&ClassParams> for ParamsDoc {
    fn from(p: &ClassParams) -> Self {
        Self {
            n: p.n(),
            alpha: p.alpha(),
            beta: p.beta(),
            c: p.c(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GridCellDoc {
    pub params: ParamsDoc,
    pub m: usize,
}

/// Sweep grid document: the cells to cover, how many members to draw per
/// cell, and the seed the draws derive from.
#[derive(Debug, Serialize, Deserialize)]
pub struct GridDoc {
    pub cells: Vec<GridCellDoc>,
    pub spec_count: usize,
    pub seed: u64,
}

pub fn read_grid(path: &Path) -> FileResult<(Vec<SweepCell>, usize, u64)> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let doc: GridDoc = serde_json::from_str(&text).map_err(|e| format_err(path, e))?;
    let mut cells = Vec::with_capacity(doc.cells.len());
    for cell in &doc.cells {
        cells.push(SweepCell {
            params: cell.params.resolve(path)?,
            m: cell.m,
        });
    }
    Ok((cells, doc.spec_count, doc.seed))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> FileResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| format_err(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Round-trippable float rendering for CSV cells: 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}
