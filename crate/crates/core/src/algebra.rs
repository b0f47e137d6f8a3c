//! Lie algebras with an inner product: brackets, adjoint maps and their
//! metric transposes, derived-subalgebra spans, and Gram-Schmidt
//! orthonormalization.
//!
//! A [`LieAlgebra`] stores dense structure constants `c[i][j][k]` with
//! `[e_i, e_j] = sum_k c[i][j][k] e_k` in the user's input basis. All indices
//! are 0-based internally; the external file format is 1-based and maps on
//! load.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tensor::Tensor3;

/// A finite-dimensional real Lie algebra given by structure constants.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    labels: Vec<String>,
    structure: Tensor3,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity (both relative to the
    /// largest structure-constant magnitude) and wraps the data.
    pub fn new(labels: Vec<String>, structure: Tensor3, tol: f64) -> Result<Self> {
        if labels.len() != structure.dim() {
            return Err(Error::DimensionMismatch {
                expected: structure.dim(),
                got: labels.len(),
            });
        }
        let alg = Self { labels, structure };
        let scale = alg.structure.max_abs();
        let anti = alg.antisymmetry_residual();
        if anti > tol * scale {
            return Err(Error::NotAntisymmetric { residual: anti });
        }
        let jacobi = alg.jacobi_residual();
        if jacobi > tol * scale * scale {
            return Err(Error::JacobiViolated { residual: jacobi });
        }
        Ok(alg)
    }

    /// Abelian algebra: every bracket vanishes.
    pub fn abelian(dim: usize) -> Self {
        Self {
            labels: (1..=dim).map(|i| format!("e{i}")).collect(),
            structure: Tensor3::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self) -> &Tensor3 {
        &self.structure
    }

    /// `max |c[i][j][k] + c[j][i][k]|` over all index triples.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst
                        .max((self.structure[(i, j, k)] + self.structure[(j, i, k)]).abs());
                }
            }
        }
        worst
    }

    /// Largest violation of the Jacobi identity over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let c = &self.structure;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut sum = 0.0;
                        for l in 0..n {
                            sum += c[(i, j, l)] * c[(l, k, m)]
                                + c[(j, k, l)] * c[(l, i, m)]
                                + c[(k, i, l)] * c[(l, j, m)];
                        }
                        worst = worst.max(sum.abs());
                    }
                }
            }
        }
        worst
    }

    /// Lie bracket `[a, b]` of two coordinate vectors in the input basis.
    pub fn bracket(&self, a: &DVector<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
        let n = self.dim();
        check_dim(n, a)?;
        check_dim(n, b)?;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0.0 {
                    continue;
                }
                let w = a[i] * b[j];
                for k in 0..n {
                    out[k] += w * self.structure[(i, j, k)];
                }
            }
        }
        Ok(out)
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> DVector<f64> {
        let n = self.dim();
        DVector::from_fn(n, |k, _| self.structure[(i, j, k)])
    }

    /// Matrix of `ad_v = [v, .]` in the input basis (column `j` holds `[v, e_j]`).
    pub fn ad(&self, v: &DVector<f64>) -> Result<DMatrix<f64>> {
        let n = self.dim();
        check_dim(n, v)?;
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                if v[i] == 0.0 {
                    continue;
                }
                for k in 0..n {
                    m[(k, j)] += v[i] * self.structure[(i, j, k)];
                }
            }
        }
        Ok(m)
    }

    /// Matrix `M` of the g-transpose of `ad_v`: `g(M y, z) = g(y, [v, z])`
    /// for all `y`, `z`.
    pub fn ad_transpose(&self, v: &DVector<f64>, g: &Metric) -> Result<DMatrix<f64>> {
        let n = self.dim();
        check_dim(n, v)?;
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.dim(),
            });
        }
        // M^T G = G A  =>  M = G^{-1} A^T G
        let a = self.ad(v)?;
        let rhs = a.transpose() * g.matrix();
        let chol = g
            .matrix()
            .clone()
            .cholesky()
            .ok_or(Error::NotPositiveDefinite {
                min_eigenvalue: g.min_eigenvalue(),
            })?;
        Ok(chol.solve(&rhs))
    }

    /// Orthonormal (w.r.t. `g`) spanning set of the derived subalgebra
    /// `[g, g]`. Rank is decided against the largest singular value of the
    /// matrix of all pairwise basis brackets.
    pub fn derived_subalgebra_span(&self, g: &Metric, tol: f64) -> Result<Vec<DVector<f64>>> {
        let n = self.dim();
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.dim(),
            });
        }
        let mut cols = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                cols.push(self.bracket_basis(i, j));
            }
        }
        if cols.is_empty() {
            return Ok(Vec::new());
        }
        let m = DMatrix::from_columns(&cols);
        let svd = m.svd(true, false);
        let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        if sigma_max == 0.0 {
            return Ok(Vec::new());
        }
        let u = svd.u.as_ref().expect("left singular vectors requested");
        let mut spanning = Vec::new();
        for (k, sigma) in svd.singular_values.iter().enumerate() {
            if *sigma > tol * sigma_max {
                spanning.push(DVector::from_column_slice(u.column(k).as_slice()));
            }
        }
        Ok(gram_schmidt(&spanning, g, tol))
    }
}

fn check_dim(expected: usize, v: &DVector<f64>) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

/// A symmetric positive-definite bilinear form in a stated basis.
#[derive(Debug, Clone)]
pub struct Metric {
    m: DMatrix<f64>,
    min_eigenvalue: f64,
}

impl Metric {
    /// Requires the matrix to be symmetric as stored and positive definite
    /// (smallest eigenvalue above `tol` times the largest magnitude).
    pub fn new(m: DMatrix<f64>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        let mut asym: f64 = 0.0;
        for i in 0..m.nrows() {
            for j in (i + 1)..m.ncols() {
                asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
            }
        }
        if asym > 0.0 {
            return Err(Error::NotSymmetric { asymmetry: asym });
        }
        let eigen = m.clone().symmetric_eigen();
        let min = eigen.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        let max_abs = eigen.eigenvalues.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        if min <= tol * max_abs {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min,
            });
        }
        Ok(Self {
            m,
            min_eigenvalue: min,
        })
    }

    /// Construction path for matrices known to be SPD (sums of SPD and PSD
    /// terms); still records the spectrum edge.
    pub(crate) fn new_unchecked(m: DMatrix<f64>) -> Self {
        let eigen = m.clone().symmetric_eigen();
        let min = eigen.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        Self {
            m,
            min_eigenvalue: min,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: DMatrix::identity(dim, dim),
            min_eigenvalue: 1.0,
        }
    }

    pub fn from_diagonal(diag: &[f64], tol: f64) -> Result<Self> {
        Self::new(
            DMatrix::from_diagonal(&DVector::from_column_slice(diag)),
            tol,
        )
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// `g(a, b)`. Panics on a coordinate-count mismatch; dimension agreement
    /// is a caller invariant on this hot path.
    pub fn inner(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        assert_eq!(a.len(), self.dim(), "vector does not match metric dimension");
        assert_eq!(b.len(), self.dim(), "vector does not match metric dimension");
        (a.transpose() * &self.m * b)[(0, 0)]
    }

    pub fn norm(&self, v: &DVector<f64>) -> f64 {
        self.inner(v, v).max(0.0).sqrt()
    }
}

/// Gram-Schmidt orthonormalization w.r.t. `g`, in input order. A vector whose
/// residual after projection falls below `tol` times its original norm is
/// dropped, so linearly dependent inputs shrink the output.
pub fn gram_schmidt(vectors: &[DVector<f64>], g: &Metric, tol: f64) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let original = g.norm(v);
        let mut w = v.clone();
        // two projection passes keep orthogonality near machine precision
        for _ in 0..2 {
            for u in &out {
                let coeff = g.inner(&w, u);
                w -= u * coeff;
            }
        }
        let residual = g.norm(&w);
        if residual > tol * original {
            out.push(w / residual);
        }
    }
    out
}
