//! Levi-Civita connections of left-invariant metrics in an adapted frame.
//!
//! The general route solves the Koszul identity
//!
//! ```text
//! 2 g(nabla_{X_i} X_j, X_k) = g(X_i, [X_k, X_j]) - g(X_j, [X_i, X_k]) - g(X_k, [X_j, X_i])
//! ```
//!
//! for any metric expressed over the frame; the specialized closed form for
//! the deformed metric is kept separate and cross-checked against it rather
//! than substituted.

use nalgebra::DVector;

use crate::algebra::Metric;
use crate::classify::classify_frame;
use crate::deform::{AdaptedFrame, DeformationField};
use crate::error::{Error, Result};
use crate::tensor::Tensor3;

/// Christoffel coefficients `gamma[i][j][k]` with
/// `nabla_{X_i} X_j = sum_k gamma[i][j][k] X_k` in a stated frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionTable {
    gamma: Tensor3,
}

impl ConnectionTable {
    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn gamma(&self) -> &Tensor3 {
        &self.gamma
    }

    /// Frame coordinates of `nabla_{X_i} X_j`.
    pub fn covariant_derivative(&self, i: usize, j: usize) -> DVector<f64> {
        DVector::from_fn(self.dim(), |k, _| self.gamma[(i, j, k)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.gamma.max_abs_diff(&other.gamma)
    }

    /// `max |gamma[i][j][k] - gamma[j][i][k] - alpha[i][j][k]|`; zero for a
    /// torsion-free connection.
    pub fn torsion_residual(&self, frame: &AdaptedFrame) -> f64 {
        let n = self.dim();
        let alpha = frame.structure();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = self.gamma[(i, j, k)] - self.gamma[(j, i, k)] - alpha[(i, j, k)];
                    worst = worst.max(t.abs());
                }
            }
        }
        worst
    }

    /// `max |g(nabla_{X_i} X_j, X_k) + g(X_j, nabla_{X_i} X_k)|`; zero for a
    /// metric connection in a left-invariant frame.
    pub fn compatibility_residual(&self, frame: &AdaptedFrame, g: &Metric) -> f64 {
        let n = self.dim();
        let gram = frame.gram(g);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = 0.0;
                    for l in 0..n {
                        s += self.gamma[(i, j, l)] * gram[(l, k)]
                            + self.gamma[(i, k, l)] * gram[(j, l)];
                    }
                    worst = worst.max(s.abs());
                }
            }
        }
        worst
    }

    /// Re-expresses the table over the input basis:
    /// `nabla_{e_i} e_j = sum_k gamma'[i][j][k] e_k`.
    pub fn to_input_basis(&self, frame: &AdaptedFrame, h: &Metric) -> Tensor3 {
        let n = self.dim();
        // column i holds the frame coordinates of e_i
        let coords: Vec<DVector<f64>> = (0..n)
            .map(|i| {
                let e = DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 });
                frame.coords(&e, h)
            })
            .collect();
        let mut out = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut in_frame = DVector::zeros(n);
                for k in 0..n {
                    if coords[i][k] == 0.0 {
                        continue;
                    }
                    for l in 0..n {
                        let w = coords[i][k] * coords[j][l];
                        if w == 0.0 {
                            continue;
                        }
                        for m in 0..n {
                            in_frame[m] += w * self.gamma[(k, l, m)];
                        }
                    }
                }
                let v = frame.from_frame_coords(&in_frame);
                for k in 0..n {
                    out[(i, j, k)] = v[k];
                }
            }
        }
        out
    }
}

/// Levi-Civita connection of `g` over the frame, via the Koszul identity.
/// `g` need not be diagonal in the frame; the Gram system is solved directly.
pub fn koszul_connection(frame: &AdaptedFrame, g: &Metric) -> Result<ConnectionTable> {
    let n = frame.dim();
    if g.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g.dim(),
        });
    }
    let gram = frame.gram(g);
    let chol = gram
        .clone()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite {
            min_eigenvalue: g.min_eigenvalue(),
        })?;
    let alpha = frame.structure();
    let mut gamma = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let rhs = DVector::from_fn(n, |k, _| {
                let mut s = 0.0;
                for l in 0..n {
                    s += alpha[(k, j, l)] * gram[(i, l)] - alpha[(i, k, l)] * gram[(j, l)]
                        - alpha[(j, i, l)] * gram[(k, l)];
                }
                0.5 * s
            });
            let coeffs = chol.solve(&rhs);
            for k in 0..n {
                gamma[(i, j, k)] = coeffs[k];
            }
        }
    }
    Ok(ConnectionTable { gamma })
}

/// Closed form for the Levi-Civita connection of the deformed metric:
/// `gamma[i][j][k] = ((lam_i/lam_k) a_kji - (lam_j/lam_k) a_ikj - a_jik) / 2`.
pub fn connection_gx_closed_form(frame: &AdaptedFrame) -> ConnectionTable {
    let n = frame.dim();
    let lam = frame.eigenvalues();
    let a = frame.structure();
    let gamma = Tensor3::from_fn(n, |i, j, k| {
        0.5 * (lam[i] / lam[k] * a[(k, j, i)] - lam[j] / lam[k] * a[(i, k, j)] - a[(j, i, k)])
    });
    ConnectionTable { gamma }
}

/// Both Levi-Civita connections of a Douglas-type input together with the
/// largest deviation from the correction-term identity
/// `nabla_{X_i} X_j = nablabar_{X_i} X_j
///   + (<[X_i,X],X_j> + <[X_j,X],X_i>) X / (2 |X| (1 + |X|))`.
#[derive(Debug, Clone)]
pub struct DouglasConnectionRelation {
    /// Connection of the deformed metric `g_X`.
    pub deformed: ConnectionTable,
    /// Connection of the base metric `h`.
    pub base: ConnectionTable,
    /// Max entrywise deviation from the correction-term identity.
    pub residual: f64,
}

/// Computes the `g_X` and `h` connections of a Douglas-type input and
/// verifies the correction-term identity entrywise. Refuses non-Douglas
/// inputs.
pub fn connection_relation_douglas(
    frame: &AdaptedFrame,
    h: &Metric,
    field: &DeformationField,
    tol: f64,
) -> Result<DouglasConnectionRelation> {
    let report = classify_frame(frame, tol);
    if !report.douglas {
        return Err(Error::NotDouglas {
            residual: report.douglas_residual,
        });
    }
    let gx = crate::deform::deformed_metric(h, field);
    let deformed = koszul_connection(frame, &gx)?;
    let base = koszul_connection(frame, h)?;

    let n = frame.dim();
    let s = field.norm_h();
    let alpha = frame.structure();
    let i0 = frame.i0();
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            // <[X_i, X], X_j> = |X| alpha[i][i0][j]
            let pairing = s * (alpha[(i, i0, j)] + alpha[(j, i0, i)]);
            for k in 0..n {
                // X has frame coordinates |X| at i0
                let correction = if k == i0 {
                    pairing / (2.0 * s * (1.0 + s)) * s
                } else {
                    0.0
                };
                let d = deformed.gamma[(i, j, k)] - base.gamma[(i, j, k)] - correction;
                residual = residual.max(d.abs());
            }
        }
    }
    Ok(DouglasConnectionRelation {
        deformed,
        base,
        residual,
    })
}
