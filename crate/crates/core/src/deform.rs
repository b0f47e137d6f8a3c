//! Deformation of a left-invariant metric by a vector field.
//!
//! Given an inner product `h` and a field `X` with `|X| < 1`, the Randers
//! norm is `F(y) = sqrt(h(y,y)) + h(X,y)`. Evaluating its fundamental tensor
//! at `X` yields a second inner product
//!
//! ```text
//! g_X(v, z) = ( h(v, z) + h(X, v) h(X, z) / |X| ) (1 + |X|)
//! ```
//!
//! which in turn defines a second Randers norm `F~` once
//! `sqrt(g_X(X, X)) = |X|(1 + |X|) < 1`. The self-adjoint map `phi` with
//! `g_X(v, z) = <v, phi(z)>` has eigenvalue `(1+|X|)^2` along `X` and
//! `1+|X|` on the orthogonal complement; the frame of its eigenvectors is
//! where every closed form downstream lives.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{gram_schmidt, LieAlgebra, Metric};
use crate::error::{Error, Result};
use crate::tensor::Tensor3;

/// A nonzero left-invariant vector field with `|X| < 1` (norm taken in `h`).
#[derive(Debug, Clone)]
pub struct DeformationField {
    x: DVector<f64>,
    norm_h: f64,
}

impl DeformationField {
    pub fn new(x: DVector<f64>, h: &Metric, tol: f64) -> Result<Self> {
        if x.len() != h.dim() {
            return Err(Error::DimensionMismatch {
                expected: h.dim(),
                got: x.len(),
            });
        }
        let norm_h = h.norm(&x);
        let scale = x.amax().max(1.0);
        if norm_h <= tol * scale {
            return Err(Error::DegenerateField { norm: norm_h });
        }
        if norm_h >= 1.0 {
            return Err(Error::RandersBound { norm: norm_h });
        }
        Ok(Self { x, norm_h })
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.x
    }

    /// `|X|` computed by `h`.
    pub fn norm_h(&self) -> f64 {
        self.norm_h
    }

    /// `sqrt(g_X(X, X)) = |X|(1 + |X|)`; must be `< 1` for the deformed
    /// Randers norm to exist.
    pub fn deformed_validity_bound(&self) -> f64 {
        self.norm_h * (1.0 + self.norm_h)
    }
}

/// Matrix (input basis) of the self-adjoint map
/// `phi(z) = (1+|X|) z + ((1+|X|)/|X|) <X, z> X`.
pub fn phi_map(h: &Metric, field: &DeformationField) -> DMatrix<f64> {
    let n = h.dim();
    let s = field.norm_h();
    let hx = h.matrix() * field.coords(); // row i holds <X, e_i>
    let mut m = DMatrix::identity(n, n) * (1.0 + s);
    for j in 0..n {
        for i in 0..n {
            m[(i, j)] += (1.0 + s) / s * hx[j] * field.coords()[i];
        }
    }
    m
}

/// The deformed inner product `g_X` as a metric in the input basis.
pub fn deformed_metric(h: &Metric, field: &DeformationField) -> Metric {
    let n = h.dim();
    let s = field.norm_h();
    let hx = h.matrix() * field.coords();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = (h.matrix()[(i, j)] + hx[i] * hx[j] / s) * (1.0 + s);
        }
    }
    // SPD: (1+|X|) h plus a positive-semidefinite rank-one term
    Metric::new_unchecked(m)
}

/// `<,>`-orthonormal eigenbasis of `phi`, with `X/|X|` stored last.
///
/// Carries the eigenvalues, the distinguished index `i0`, and the structure
/// constants re-expressed in this frame.
#[derive(Debug, Clone)]
pub struct AdaptedFrame {
    basis: Vec<DVector<f64>>,
    eigenvalues: Vec<f64>,
    i0: usize,
    structure: Tensor3,
    norm_x: f64,
}

impl AdaptedFrame {
    /// Builds the frame by Gram-Schmidt over the projections of the input
    /// basis onto the orthogonal complement of `X`, processed in input order,
    /// with the `X` direction assigned the last index.
    pub fn new(
        alg: &LieAlgebra,
        h: &Metric,
        field: &DeformationField,
        tol: f64,
    ) -> Result<Self> {
        let n = alg.dim();
        if h.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: h.dim(),
            });
        }
        let unit_x = field.coords() / field.norm_h();
        let mut projections = Vec::with_capacity(n);
        for i in 0..n {
            let e = DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 });
            let along = h.inner(&e, &unit_x);
            projections.push(e - &unit_x * along);
        }
        let mut basis = gram_schmidt(&projections, h, tol);
        if basis.len() != n - 1 {
            return Err(Error::InvalidFrame(format!(
                "complement of X has rank {} instead of {}",
                basis.len(),
                n - 1
            )));
        }
        basis.push(unit_x);
        Self::from_basis(alg, h, field, basis, tol)
    }

    /// Wraps an explicitly given frame, validating orthonormality, the
    /// eigenvector property of every member, and the placement of `X/|X|`
    /// at the last index.
    pub fn from_basis(
        alg: &LieAlgebra,
        h: &Metric,
        field: &DeformationField,
        basis: Vec<DVector<f64>>,
        tol: f64,
    ) -> Result<Self> {
        let n = alg.dim();
        if basis.len() != n {
            return Err(Error::InvalidFrame(format!(
                "frame has {} vectors for dimension {}",
                basis.len(),
                n
            )));
        }
        let i0 = n - 1;
        let s = field.norm_h();
        let unit_x = field.coords() / s;
        if (&basis[i0] - &unit_x).amax() > tol {
            return Err(Error::InvalidFrame(
                "last frame vector is not X/|X|".into(),
            ));
        }
        for i in 0..n {
            for j in i..n {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (h.inner(&basis[i], &basis[j]) - expected).abs() > tol {
                    return Err(Error::InvalidFrame(format!(
                        "frame is not <,>-orthonormal at pair ({i}, {j})"
                    )));
                }
            }
        }
        let mut eigenvalues = vec![1.0 + s; n];
        eigenvalues[i0] = (1.0 + s) * (1.0 + s);
        // eigenvector check: phi basis[i] = lambda_i basis[i]
        let phi = phi_map(h, field);
        for (i, v) in basis.iter().enumerate() {
            let residual = (&phi * v - v * eigenvalues[i]).amax();
            if residual > tol * (1.0 + s) * (1.0 + s) {
                return Err(Error::InvalidFrame(format!(
                    "frame vector {i} is not an eigenvector of phi (residual {residual:.3e})"
                )));
            }
        }
        let structure = Tensor3::from_fn(n, |i, j, k| {
            let br = alg
                .bracket(&basis[i], &basis[j])
                .expect("frame vectors share the algebra dimension");
            h.inner(&br, &basis[k])
        });
        Ok(Self {
            basis,
            eigenvalues,
            i0,
            structure,
            norm_x: s,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Frame vectors as coordinate vectors in the input basis.
    pub fn basis(&self) -> &[DVector<f64>] {
        &self.basis
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Index of the `X` direction (always the last frame slot).
    pub fn i0(&self) -> usize {
        self.i0
    }

    /// Structure constants `alpha[i][j][k]` with
    /// `[X_i, X_j] = sum_k alpha[i][j][k] X_k`.
    pub fn structure(&self) -> &Tensor3 {
        &self.structure
    }

    pub fn norm_x(&self) -> f64 {
        self.norm_x
    }

    /// Frame coordinates of `v`: component `k` is `<v, X_k>`.
    pub fn coords(&self, v: &DVector<f64>, h: &Metric) -> DVector<f64> {
        DVector::from_fn(self.dim(), |k, _| h.inner(v, &self.basis[k]))
    }

    /// Input-basis coordinates of `sum_k c[k] X_k`.
    pub fn from_frame_coords(&self, c: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for (k, v) in self.basis.iter().enumerate() {
            out += v * c[k];
        }
        out
    }

    /// Gram matrix of `g` evaluated on the frame vectors.
    pub fn gram(&self, g: &Metric) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| g.inner(&self.basis[i], &self.basis[j]))
    }
}

/// Randers norm `F(y) = sqrt(h(y,y)) + h(X,y)`; positive for `y != 0`
/// because `|X| < 1` is enforced at field construction.
pub fn evaluate_f(h: &Metric, field: &DeformationField, y: &DVector<f64>) -> f64 {
    h.norm(y) + h.inner(field.coords(), y)
}

/// Evaluator for the deformed Randers norm
/// `F~(y) = sqrt(g_X(y,y)) + g_X(X,y)`.
///
/// Construction enforces the validity bound `|X|(1+|X|) < 1`, which is
/// stricter than the `|X| < 1` required for `F` alone.
#[derive(Debug, Clone)]
pub struct FTildeEvaluator {
    h: Metric,
    gx: Metric,
    x: DVector<f64>,
    norm_h: f64,
}

impl FTildeEvaluator {
    pub fn new(h: &Metric, field: &DeformationField) -> Result<Self> {
        let bound = field.deformed_validity_bound();
        if bound >= 1.0 {
            return Err(Error::DeformedBound { bound });
        }
        Ok(Self {
            h: h.clone(),
            gx: deformed_metric(h, field),
            x: field.coords().clone(),
            norm_h: field.norm_h(),
        })
    }

    /// The deformed metric `g_X` backing this norm.
    pub fn deformed(&self) -> &Metric {
        &self.gx
    }

    /// Definition path: `sqrt(g_X(y,y)) + g_X(X,y)`.
    pub fn evaluate(&self, y: &DVector<f64>) -> f64 {
        self.gx.norm(y) + self.gx.inner(&self.x, y)
    }

    /// Closed-form path:
    /// `(|y|^2 + h(X,y)^2/|X|)^(1/2) (1+|X|)^(1/2) + h(X,y)(1+|X|)^2`.
    pub fn evaluate_closed_form(&self, y: &DVector<f64>) -> f64 {
        let s = self.norm_h;
        let hxy = self.h.inner(&self.x, y);
        let yy = self.h.inner(y, y);
        (yy + hxy * hxy / s).max(0.0).sqrt() * (1.0 + s).sqrt() + hxy * (1.0 + s) * (1.0 + s)
    }
}
