//! The on-disk problem description: dimension, sparse bracket triples,
//! metric, field coordinates, and tolerance. Indices are 1-based in the file
//! and mapped to 0-based internally; only `i < j` entries are stored, the
//! antisymmetric completion is implicit.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use randers_core::{
    catalog::CatalogEntry, DeformationField, LieAlgebra, Metric, Tensor3, DEFAULT_TOLERANCE,
};

/// One structure constant: `[e_i, e_j]` has coefficient `value` along `e_k`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

/// The metric field: either the keyword `"identity"` or a dense matrix as a
/// row-major list of rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Keyword(String),
    Matrix(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraSpecFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub brackets: Vec<BracketEntry>,
    pub metric: MetricSpec,
    #[serde(rename = "X")]
    pub x: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Everything a command needs after a file passed validation.
#[derive(Debug)]
pub struct LoadedSpec {
    pub file: AlgebraSpecFile,
    pub algebra: LieAlgebra,
    pub metric: Metric,
    pub field: DeformationField,
    pub tolerance: f64,
    /// Largest asymmetry of the metric matrix as written (symmetrized on load).
    pub metric_asymmetry: f64,
}

/// Failure modes with distinct exit codes, documented on the CLI.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or syntactically invalid input file.
    Parse(String),
    /// A named invariant of the loaded data is violated.
    Validation(String),
    /// A Douglas/Berwald precondition of the requested computation fails.
    Precondition(String),
    /// Unknown catalog name or out-of-range parameters.
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Precondition(m) => write!(f, "precondition not met: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Validation(_) => 4,
            CliError::Precondition(_) => 5,
        }
    }
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpecFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn read_spec(path: &std::path::Path) -> Result<AlgebraSpecFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text)
}

/// Validates every invariant in order and builds the core objects. The
/// first violated invariant is the one reported.
pub fn load(file: AlgebraSpecFile, tol_override: Option<f64>) -> Result<LoadedSpec, CliError> {
    let n = file.dim;
    if n == 0 {
        return Err(CliError::Validation("dim must be >= 1".into()));
    }
    let tolerance = tol_override
        .or(file.tolerance)
        .unwrap_or(DEFAULT_TOLERANCE);
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(CliError::Validation(format!(
            "tolerance {tolerance} must be in (0, 1)"
        )));
    }
    let labels = match &file.labels {
        Some(l) => {
            if l.len() != n {
                return Err(CliError::Validation(format!(
                    "labels: {} entries for dim {n}",
                    l.len()
                )));
            }
            l.clone()
        }
        None => (1..=n).map(|i| format!("e{i}")).collect(),
    };

    let mut structure = Tensor3::zeros(n);
    for entry in &file.brackets {
        if entry.i >= entry.j {
            return Err(CliError::Validation(format!(
                "brackets: entry ({}, {}, {}) must have i < j",
                entry.i, entry.j, entry.k
            )));
        }
        if entry.i < 1 || entry.j > n || entry.k < 1 || entry.k > n {
            return Err(CliError::Validation(format!(
                "brackets: indices ({}, {}, {}) outside 1..{n}",
                entry.i, entry.j, entry.k
            )));
        }
        // duplicate triples accumulate
        structure[(entry.i - 1, entry.j - 1, entry.k - 1)] += entry.value;
        structure[(entry.j - 1, entry.i - 1, entry.k - 1)] -= entry.value;
    }

    let algebra = LieAlgebra::new(labels, structure, tolerance)
        .map_err(|e| CliError::Validation(e.to_string()))?;

    let (matrix, metric_asymmetry) = match &file.metric {
        MetricSpec::Keyword(word) => {
            if word != "identity" {
                return Err(CliError::Validation(format!(
                    "metric: unknown keyword \"{word}\" (expected \"identity\" or a matrix)"
                )));
            }
            (DMatrix::identity(n, n), 0.0)
        }
        MetricSpec::Matrix(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::Validation(format!(
                    "metric: matrix is not {n}x{n}"
                )));
            }
            let raw = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
            let mut asym: f64 = 0.0;
            let mut scale: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    scale = scale.max(raw[(i, j)].abs());
                    if i < j {
                        asym = asym.max((raw[(i, j)] - raw[(j, i)]).abs());
                    }
                }
            }
            if asym > tolerance * scale.max(1.0) {
                return Err(CliError::Validation(format!(
                    "metric matrix is not symmetric (asymmetry {asym:.3e})"
                )));
            }
            let sym = DMatrix::from_fn(n, n, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
            (sym, asym)
        }
    };
    let metric =
        Metric::new(matrix, tolerance).map_err(|e| CliError::Validation(e.to_string()))?;

    if file.x.len() != n {
        return Err(CliError::Validation(format!(
            "X: {} coordinates for dim {n}",
            file.x.len()
        )));
    }
    let field = DeformationField::new(DVector::from_column_slice(&file.x), &metric, tolerance)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let bound = field.deformed_validity_bound();
    if bound >= 1.0 {
        return Err(CliError::Validation(format!(
            "deformed-metric validity bound violated: |X|(1+|X|) = {bound} must be < 1"
        )));
    }

    Ok(LoadedSpec {
        file,
        algebra,
        metric,
        field,
        tolerance,
        metric_asymmetry,
    })
}

/// Serializes a catalog entry into the spec-file schema so that emitted
/// files round-trip through `load`.
pub fn from_catalog(entry: &CatalogEntry) -> AlgebraSpecFile {
    let n = entry.algebra.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let v = entry.algebra.structure()[(i, j, k)];
                if v != 0.0 {
                    brackets.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        value: v,
                    });
                }
            }
        }
    }
    let m = entry.metric.matrix();
    let is_identity =
        (0..n).all(|i| (0..n).all(|j| m[(i, j)] == if i == j { 1.0 } else { 0.0 }));
    let metric = if is_identity {
        MetricSpec::Keyword("identity".into())
    } else {
        MetricSpec::Matrix(
            (0..n)
                .map(|i| (0..n).map(|j| m[(i, j)]).collect())
                .collect(),
        )
    };
    AlgebraSpecFile {
        dim: n,
        labels: Some(entry.algebra.labels().to_vec()),
        brackets,
        metric,
        x: entry.field.coords().iter().copied().collect(),
        tolerance: Some(DEFAULT_TOLERANCE),
    }
}
