//! JSON documents read and written by the command line.

use std::fs;
use std::io::Read;

use serde::{Deserialize, Serialize};
use tracegeo::geodesy::Geodesic;
use tracegeo::matcore::SpectralProfile;
use tracegeo::{GeoError, SquareMatrix};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Usage(String),
    Geo(GeoError),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Usage(_) => "usage",
            CliError::Geo(e) => e.code(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Parse(m) | CliError::Usage(m) => m.clone(),
            CliError::Geo(e) => e.to_string(),
        }
    }
}

impl From<GeoError> for CliError {
    fn from(e: GeoError) -> Self {
        CliError::Geo(e)
    }
}

/// `{"n": 2, "data": [[1, 0], [0, 2]]}`, rows first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub data: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &SquareMatrix) -> Self {
        MatrixDocument {
            n: m.n(),
            data: m.to_rows(),
            label: None,
        }
    }

    pub fn labelled(m: &SquareMatrix, label: &str) -> Self {
        MatrixDocument {
            label: Some(label.to_string()),
            ..Self::from_matrix(m)
        }
    }

    pub fn to_matrix(&self) -> Result<SquareMatrix, CliError> {
        if self.data.len() != self.n || self.data.iter().any(|row| row.len() != self.n) {
            return Err(GeoError::InvalidMatrix(format!("data is not {0}x{0}", self.n)).into());
        }
        Ok(SquareMatrix::from_rows(&self.data)?)
    }
}

/// Reads a matrix from inline JSON (leading `{`), standard input (`-`) or a file.
pub fn load_matrix(source: &str) -> Result<SquareMatrix, CliError> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(source).map_err(|e| CliError::Parse(format!("{source}: {e}")))?
    };
    let doc: MatrixDocument =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{source}: {e}")))?;
    doc.to_matrix()
}

#[derive(Debug, Serialize)]
pub struct Value {
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct GeodesicDocument {
    pub k: MatrixDocument,
    pub c: MatrixDocument,
}

impl GeodesicDocument {
    pub fn new(g: &Geodesic) -> Self {
        GeodesicDocument {
            k: MatrixDocument::from_matrix(g.base()),
            c: MatrixDocument::from_matrix(g.direction()),
        }
    }
}

/// A sampled point `P(t)` with its determinant.
#[derive(Debug, Serialize)]
pub struct Sample {
    pub t: f64,
    pub det: f64,
    #[serde(flatten)]
    pub point: MatrixDocument,
}

/// `count` evenly spaced samples on `[from, to]`; a single sample sits at `from`.
pub fn sample(g: &Geodesic, from: f64, to: f64, count: usize) -> Vec<Sample> {
    (0..count)
        .map(|i| {
            let t = if count == 1 {
                from
            } else if i + 1 == count {
                to
            } else {
                from + (to - from) * i as f64 / (count - 1) as f64
            };
            let p = g.eval(t);
            Sample {
                t,
                det: p.det(),
                point: MatrixDocument::from_matrix(&p),
            }
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ClusterDocument {
    pub re: f64,
    pub im: f64,
    pub block_sizes: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ProfileDocument {
    pub tolerance: f64,
    pub clusters: Vec<ClusterDocument>,
}

impl ProfileDocument {
    pub fn new(p: &SpectralProfile) -> Self {
        ProfileDocument {
            tolerance: p.tolerance,
            clusters: p
                .clusters
                .iter()
                .map(|c| ClusterDocument {
                    re: c.eigenvalue.re,
                    im: c.eigenvalue.im,
                    block_sizes: c.block_sizes.clone(),
                })
                .collect(),
        }
    }
}
