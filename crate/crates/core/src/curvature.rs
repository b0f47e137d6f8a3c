//! Riemann tensors, sectional curvature, and Berwald-case flag curvature.
//!
//! The general pipeline (`koszul_connection` -> [`riemann_tensor`] ->
//! [`sectional_curvature`]) is the ground truth; the specialized closed
//! forms are computed independently and compared against it, never
//! substituted for it.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::algebra::Metric;
use crate::classify::classify_frame;
use crate::connection::{koszul_connection, ConnectionTable};
use crate::deform::{AdaptedFrame, DeformationField};
use crate::error::{Error, Result};
use crate::tensor::Tensor4;

/// Curvature components `r[i][j][k][h]` with
/// `R(X_i, X_j) X_k = sum_h r[i][j][k][h] X_h`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor {
    r: Tensor4,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn components(&self) -> &Tensor4 {
        &self.r
    }

    pub fn component(&self, i: usize, j: usize, k: usize, h: usize) -> f64 {
        self.r[(i, j, k, h)]
    }

    /// `max |r[i][j][k][h] + r[j][i][k][h]|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for h in 0..n {
                        worst =
                            worst.max((self.r[(i, j, k, h)] + self.r[(j, i, k, h)]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest violation of the first Bianchi identity
    /// `R(X_i,X_j)X_k + R(X_j,X_k)X_i + R(X_k,X_i)X_j = 0`.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for h in 0..n {
                        let s = self.r[(i, j, k, h)]
                            + self.r[(j, k, i, h)]
                            + self.r[(k, i, j, h)];
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest violation of `g(R(X_i,X_j)X_k, X_l) = g(R(X_k,X_l)X_i, X_j)`
    /// for the lowered tensor, where `gram` is the metric's Gram matrix over
    /// the frame.
    pub fn pair_symmetry_residual(&self, gram: &DMatrix<f64>) -> f64 {
        let n = self.dim();
        let lower = |i: usize, j: usize, k: usize, l: usize| -> f64 {
            let mut s = 0.0;
            for h in 0..n {
                s += self.r[(i, j, k, h)] * gram[(h, l)];
            }
            s
        };
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        worst = worst.max((lower(i, j, k, l) - lower(k, l, i, j)).abs());
                    }
                }
            }
        }
        worst
    }
}

/// Assembles `R(X_i,X_j)X_k = nabla_i nabla_j X_k - nabla_j nabla_i X_k
/// - nabla_{[X_i,X_j]} X_k` from a connection table and the frame brackets.
pub fn riemann_tensor(conn: &ConnectionTable, frame: &AdaptedFrame) -> CurvatureTensor {
    let n = conn.dim();
    let g = conn.gamma();
    let alpha = frame.structure();
    let mut r = Tensor4::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for h in 0..n {
                    let mut s = 0.0;
                    for l in 0..n {
                        s += g[(j, k, l)] * g[(i, l, h)] - g[(i, k, l)] * g[(j, l, h)]
                            - alpha[(i, j, l)] * g[(l, k, h)];
                    }
                    r[(i, j, k, h)] = s;
                }
            }
        }
    }
    CurvatureTensor { r }
}

/// Sectional curvatures of the planes spanned by frame pairs, keyed by
/// `(i, j)` with `i < j` (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct SectionalReport {
    entries: BTreeMap<(usize, usize), f64>,
}

impl SectionalReport {
    fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                entries.insert((i, j), f(i, j));
            }
        }
        Self { entries }
    }

    /// `K(i, j)`; the key order is immaterial.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.entries.get(&key).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &f64)> {
        self.entries.iter()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .map(|(k, v)| (v - other.entries.get(k).copied().unwrap_or(f64::NAN)).abs())
            .fold(0.0, f64::max)
    }
}

/// `K(X_i, X_j) = <R(X_i,X_j)X_j, X_i> / lambda_j` for a metric that is
/// diagonal over the frame (entries `lambda_i`); with all `lambda = 1` this
/// is the standard orthonormal sectional curvature.
pub fn sectional_curvature(
    rt: &CurvatureTensor,
    g: &Metric,
    frame: &AdaptedFrame,
    tol: f64,
) -> Result<SectionalReport> {
    let n = frame.dim();
    let gram = frame.gram(g);
    let mut max_diag: f64 = 0.0;
    let mut max_off: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                max_diag = max_diag.max(gram[(i, i)].abs());
            } else {
                max_off = max_off.max(gram[(i, j)].abs());
            }
        }
    }
    if max_off > tol.max(1e-12) * max_diag {
        return Err(Error::InvalidFrame(
            "metric is not diagonal over the frame".into(),
        ));
    }
    Ok(SectionalReport::from_fn(n, |i, j| {
        rt.component(i, j, j, i) / gram[(j, j)]
    }))
}

/// Single-sum closed form for the sectional curvature of the deformed
/// metric, straight from the frame data.
pub fn sectional_curvature_closed_form(frame: &AdaptedFrame) -> SectionalReport {
    let n = frame.dim();
    let lam = frame.eigenvalues();
    let a = frame.structure();
    SectionalReport::from_fn(n, |i, j| {
        let mut s = 0.0;
        for l in 0..n {
            s += -4.0 / lam[l] * a[(l, j, j)] * a[(l, i, i)]
                - 2.0 / lam[l] * a[(l, j, i)] * a[(i, l, j)]
                + 2.0 / lam[j] * a[(i, j, l)] * a[(j, l, i)]
                + 2.0 / lam[i] * a[(i, l, j)] * a[(j, i, l)]
                - 3.0 * lam[l] / (lam[i] * lam[j]) * a[(i, j, l)] * a[(i, j, l)]
                + lam[j] / (lam[i] * lam[l]) * a[(i, l, j)] * a[(i, l, j)]
                + lam[i] / (lam[j] * lam[l]) * a[(l, j, i)] * a[(l, j, i)];
        }
        0.25 * s
    })
}

/// Sectional curvature of the plane spanned by two arbitrary vectors given
/// in frame coordinates: `g(R(u,v)v, u) / (g(u,u) g(v,v) - g(u,v)^2)`.
pub fn sectional_curvature_plane(
    rt: &CurvatureTensor,
    gram: &DMatrix<f64>,
    u: &DVector<f64>,
    v: &DVector<f64>,
    tol: f64,
) -> Result<f64> {
    let n = rt.dim();
    if u.len() != n || v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if u.len() != n { u.len() } else { v.len() },
        });
    }
    let guu = (u.transpose() * gram * u)[(0, 0)];
    let gvv = (v.transpose() * gram * v)[(0, 0)];
    let guv = (u.transpose() * gram * v)[(0, 0)];
    let denom = guu * gvv - guv * guv;
    if denom <= tol * guu.abs().max(gvv.abs()).powi(2) {
        return Err(Error::DegeneratePlane);
    }
    // R(u, v) v, then lower against u
    let mut rv = DVector::zeros(n);
    for i in 0..n {
        if u[i] == 0.0 {
            continue;
        }
        for j in 0..n {
            if v[j] == 0.0 {
                continue;
            }
            let w = u[i] * v[j];
            for k in 0..n {
                if v[k] == 0.0 {
                    continue;
                }
                for h in 0..n {
                    rv[h] += w * v[k] * rt.component(i, j, k, h);
                }
            }
        }
    }
    let num = (rv.transpose() * gram * u)[(0, 0)];
    Ok(num / denom)
}

/// Full Koszul/Riemann/sectional pipeline for one metric over the frame.
pub fn sectional_pipeline(
    frame: &AdaptedFrame,
    g: &Metric,
    tol: f64,
) -> Result<(ConnectionTable, CurvatureTensor, SectionalReport)> {
    let conn = koszul_connection(frame, g)?;
    let rt = riemann_tensor(&conn, frame);
    let report = sectional_curvature(&rt, g, frame, tol)?;
    Ok((conn, rt, report))
}

/// Sectional tables of `g_X` and `h` on a Berwald-type input, with the
/// residuals of the ratio law `K (1+|X|) = Kbar` and of the flat-pole remark
/// `K(X_{i0}, X_j) = Kbar(X_{i0}, X_j) = 0`.
#[derive(Debug, Clone)]
pub struct BerwaldSectionalRatio {
    pub deformed: SectionalReport,
    pub base: SectionalReport,
    /// `max |K(i,j) (1+|X|) - Kbar(i,j)|` over frame pairs.
    pub ratio_residual: f64,
    /// `max(|K(i0,j)|, |Kbar(i0,j)|)` over `j`.
    pub pole_residual: f64,
}

/// Verifies the Berwald ratio law between the two sectional tables.
/// Refuses non-Berwald input.
pub fn sectional_ratio_berwald(
    frame: &AdaptedFrame,
    h: &Metric,
    field: &DeformationField,
    tol: f64,
) -> Result<BerwaldSectionalRatio> {
    let report = classify_frame(frame, tol);
    if !report.berwald {
        return Err(Error::NotBerwald {
            douglas_residual: report.douglas_residual,
            berwald_residual: report.berwald_residual,
        });
    }
    let gx = crate::deform::deformed_metric(h, field);
    let (_, _, deformed) = sectional_pipeline(frame, &gx, tol)?;
    let (_, _, base) = sectional_pipeline(frame, h, tol)?;
    let s = field.norm_h();
    let mut ratio_residual: f64 = 0.0;
    for (&(i, j), k) in deformed.iter() {
        let kbar = base.get(i, j).expect("same key set");
        ratio_residual = ratio_residual.max((k * (1.0 + s) - kbar).abs());
    }
    let i0 = frame.i0();
    let mut pole_residual: f64 = 0.0;
    for j in 0..frame.dim() {
        if j == i0 {
            continue;
        }
        pole_residual = pole_residual
            .max(deformed.get(i0, j).unwrap().abs())
            .max(base.get(i0, j).unwrap().abs());
    }
    Ok(BerwaldSectionalRatio {
        deformed,
        base,
        ratio_residual,
        pole_residual,
    })
}

/// Douglas-case closed form for the sectional curvature of `g_X`, evaluated
/// exactly as stated:
///
/// ```text
/// K(X_i,X_j) = (Kbar(X_i,X_j) + (<[X_i,X],X_i> <[X_j,X],X_j>
///              - (<[X_i,X],X_j> + <[X_j,X],X_i>)^2 / 4) / (|X|(1+|X|)))
///              / (1+|X|)
/// ```
///
/// The result is reported for comparison against the pipeline, not asserted
/// against it: on planes containing the X direction the stated prefactor
/// disagrees with the pipeline value.
pub fn sectional_douglas_closed_form(
    frame: &AdaptedFrame,
    h: &Metric,
    field: &DeformationField,
    tol: f64,
) -> Result<SectionalReport> {
    let report = classify_frame(frame, tol);
    if !report.douglas {
        return Err(Error::NotDouglas {
            residual: report.douglas_residual,
        });
    }
    let (_, _, base) = sectional_pipeline(frame, h, tol)?;
    let n = frame.dim();
    let s = field.norm_h();
    let alpha = frame.structure();
    let i0 = frame.i0();
    // <[X_i, X], X_j> = |X| alpha[i][i0][j]
    let pairing = |i: usize, j: usize| s * alpha[(i, i0, j)];
    Ok(SectionalReport::from_fn(n, |i, j| {
        let kbar = base.get(i, j).expect("pipeline covers all pairs");
        let prod = pairing(i, i) * pairing(j, j);
        let sym = pairing(i, j) + pairing(j, i);
        (kbar + (prod - 0.25 * sym * sym) / (s * (1.0 + s))) / (1.0 + s)
    }))
}

/// Which of the two Randers norms a flag-curvature table refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finsler {
    /// `F`, built from `h` and `X`.
    Base,
    /// `F~`, built from `g_X` and `X`.
    Deformed,
}

/// Flag curvatures keyed by `(pole index j, plane partner index i)`; defined
/// only for Berwald-type inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagReport {
    entries: BTreeMap<(usize, usize), f64>,
}

impl FlagReport {
    pub fn get(&self, pole: usize, partner: usize) -> Option<f64> {
        self.entries.get(&(pole, partner)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &f64)> {
        self.entries.iter()
    }
}

/// Flag curvature of `F` or `F~` with pole `X_j` and flag plane
/// `span{X_i, X_j}`:
///
/// ```text
/// K^F(X_j, P)  = h(X_j,X_j) Kbar(X_i,X_j) / F(X_j)^2
/// K^F~(X_j, P) = g_X(X_j,X_j) K(X_i,X_j) / F~(X_j)^2
/// ```
///
/// Refuses non-Berwald input.
pub fn flag_curvature(
    frame: &AdaptedFrame,
    h: &Metric,
    field: &DeformationField,
    which: Finsler,
    tol: f64,
) -> Result<FlagReport> {
    let report = classify_frame(frame, tol);
    if !report.berwald {
        return Err(Error::NotBerwald {
            douglas_residual: report.douglas_residual,
            berwald_residual: report.berwald_residual,
        });
    }
    let n = frame.dim();
    let mut entries = BTreeMap::new();
    match which {
        Finsler::Base => {
            let (_, _, base) = sectional_pipeline(frame, h, tol)?;
            for j in 0..n {
                // <X, X_j> vanishes off the distinguished index
                let xj = if j == frame.i0() { field.norm_h() } else { 0.0 };
                let f = 1.0 + xj;
                for i in 0..n {
                    if i == j {
                        continue;
                    }
                    entries.insert((j, i), base.get(i, j).unwrap() / (f * f));
                }
            }
        }
        Finsler::Deformed => {
            let gx = crate::deform::deformed_metric(h, field);
            let (_, _, deformed) = sectional_pipeline(frame, &gx, tol)?;
            let lam = frame.eigenvalues();
            for (j, &lam_j) in lam.iter().enumerate() {
                let xj = if j == frame.i0() { field.norm_h() } else { 0.0 };
                let f = lam_j.sqrt() + lam_j * xj;
                for i in 0..n {
                    if i == j {
                        continue;
                    }
                    entries.insert((j, i), lam_j * deformed.get(i, j).unwrap() / (f * f));
                }
            }
        }
    }
    Ok(FlagReport { entries })
}

/// Largest violation of the flag-curvature ratio law
/// `K^F~(X_j,P) = (1+<X,X_j>)^2 / (lambda_j (1+sqrt(lambda_j) <X,X_j>)^2)
///  K^F(X_j,P)` over all flags.
pub fn flag_ratio_residual(
    frame: &AdaptedFrame,
    h: &Metric,
    field: &DeformationField,
    tol: f64,
) -> Result<f64> {
    let base = flag_curvature(frame, h, field, Finsler::Base, tol)?;
    let deformed = flag_curvature(frame, h, field, Finsler::Deformed, tol)?;
    let lam = frame.eigenvalues();
    let mut worst: f64 = 0.0;
    for (&(j, i), kf) in base.iter() {
        let xj = if j == frame.i0() { field.norm_h() } else { 0.0 };
        let ratio = (1.0 + xj).powi(2) / (lam[j] * (1.0 + lam[j].sqrt() * xj).powi(2));
        let expected = ratio * kf;
        worst = worst.max((deformed.get(j, i).unwrap() - expected).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieAlgebra;
    use crate::deform::{deformed_metric, DeformationField};
    use crate::tensor::Tensor3;
    use approx::assert_relative_eq;

    const TOL: f64 = crate::DEFAULT_TOLERANCE;

    fn heisenberg_frame(lambda: f64, c: f64) -> (AdaptedFrame, Metric, DeformationField) {
        let mut t = Tensor3::zeros(3);
        t[(0, 1, 2)] = 1.0;
        t[(1, 0, 2)] = -1.0;
        let alg =
            LieAlgebra::new(vec!["x".into(), "y".into(), "z".into()], t, TOL).unwrap();
        let h = Metric::from_diagonal(&[lambda, lambda, 1.0], TOL).unwrap();
        let field =
            DeformationField::new(DVector::from_column_slice(&[0.0, 0.0, c]), &h, TOL).unwrap();
        let frame = AdaptedFrame::new(&alg, &h, &field, TOL).unwrap();
        (frame, h, field)
    }

    fn su2_plus_line_frame(c: f64) -> (AdaptedFrame, Metric, DeformationField) {
        let mut t = Tensor3::zeros(4);
        for &(i, j, k) in &[(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
            t[(i, j, k)] = 1.0;
            t[(j, i, k)] = -1.0;
        }
        let alg = LieAlgebra::new(
            vec!["e1".into(), "e2".into(), "e3".into(), "e4".into()],
            t,
            TOL,
        )
        .unwrap();
        let h = Metric::identity(4);
        let field = DeformationField::new(
            DVector::from_column_slice(&[0.0, 0.0, 0.0, c]),
            &h,
            TOL,
        )
        .unwrap();
        let frame = AdaptedFrame::new(&alg, &h, &field, TOL).unwrap();
        (frame, h, field)
    }

    #[test]
    fn abelian_curvature_vanishes() {
        let alg = LieAlgebra::abelian(3);
        let h = Metric::identity(3);
        let field =
            DeformationField::new(DVector::from_column_slice(&[0.2, 0.0, 0.0]), &h, TOL).unwrap();
        let frame = AdaptedFrame::new(&alg, &h, &field, TOL).unwrap();
        let gx = deformed_metric(&h, &field);
        let (_, rt, report) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        assert!(rt.components().max_abs() < 1e-14);
        assert!(report.max_abs() < 1e-14);
        assert!(sectional_curvature_closed_form(&frame).max_abs() < 1e-14);
    }

    #[test]
    fn heisenberg_sectional_values() {
        let (frame, h, field) = heisenberg_frame(1.0, 0.3);
        let gx = deformed_metric(&h, &field);
        let (conn, rt, report) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        // frame order (x, y, z): K(x,y) = -3/4, K(x,z) = K(y,z) = 1/4
        assert_relative_eq!(report.get(0, 1).unwrap(), -0.75, epsilon = 1e-12);
        assert_relative_eq!(report.get(0, 2).unwrap(), 0.25, epsilon = 1e-12);
        assert_relative_eq!(report.get(1, 2).unwrap(), 0.25, epsilon = 1e-12);
        // lowered component consistent with K(x,y)
        let lowered = rt.component(0, 1, 1, 0) * frame.eigenvalues()[0];
        assert_relative_eq!(
            lowered / (frame.eigenvalues()[0] * frame.eigenvalues()[1]),
            -0.75,
            epsilon = 1e-12
        );
        assert!(conn.torsion_residual(&frame) < 1e-12);
        let closed = sectional_curvature_closed_form(&frame);
        assert!(report.max_abs_diff(&closed) < 1e-12);
    }

    #[test]
    fn heisenberg_lambda_two_sectional_values() {
        let (frame, h, field) = heisenberg_frame(2.0, 0.1);
        let gx = deformed_metric(&h, &field);
        let (_, _, report) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        assert_relative_eq!(report.get(0, 1).unwrap(), -3.0 / 16.0, epsilon = 1e-12);
        assert_relative_eq!(report.get(0, 2).unwrap(), 1.0 / 16.0, epsilon = 1e-12);
    }

    #[test]
    fn almost_abelian_sectional_values() {
        let mut t = Tensor3::zeros(3);
        for i in 1..3 {
            t[(0, i, i)] = 1.0;
            t[(i, 0, i)] = -1.0;
        }
        let alg =
            LieAlgebra::new(vec!["b".into(), "u2".into(), "u3".into()], t, TOL).unwrap();
        let h = Metric::identity(3);
        let field =
            DeformationField::new(DVector::from_column_slice(&[0.4, 0.0, 0.0]), &h, TOL).unwrap();
        let frame = AdaptedFrame::new(&alg, &h, &field, TOL).unwrap();
        let gx = deformed_metric(&h, &field);
        let (_, _, report) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        let expected = -1.0 / 1.96;
        for (_, k) in report.iter() {
            assert_relative_eq!(*k, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn plane_sectional_matches_frame_pairs_and_rejects_degenerate() {
        let (frame, h, field) = heisenberg_frame(2.0, 0.3);
        let gx = deformed_metric(&h, &field);
        let (_, rt, report) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        let gram = frame.gram(&gx);
        let u = DVector::from_column_slice(&[1.0, 0.0, 0.0]);
        let v = DVector::from_column_slice(&[0.0, 1.0, 0.0]);
        let k = sectional_curvature_plane(&rt, &gram, &u, &v, TOL).unwrap();
        assert_relative_eq!(k, report.get(0, 1).unwrap(), epsilon = 1e-12);
        // invariance under basis change of the plane
        let w = DVector::from_column_slice(&[0.7, 0.7, 0.0]);
        let k2 = sectional_curvature_plane(&rt, &gram, &u, &w, TOL).unwrap();
        assert_relative_eq!(k2, k, epsilon = 1e-10);
        assert!(matches!(
            sectional_curvature_plane(&rt, &gram, &u, &(&u * 2.0), TOL),
            Err(Error::DegeneratePlane)
        ));
    }

    #[test]
    fn berwald_ratio_on_su2_plus_line() {
        let (frame, h, field) = su2_plus_line_frame(0.3);
        let out = sectional_ratio_berwald(&frame, &h, &field, TOL).unwrap();
        assert_relative_eq!(out.base.get(0, 1).unwrap(), 0.25, epsilon = 1e-12);
        assert_relative_eq!(
            out.deformed.get(0, 1).unwrap(),
            0.25 / 1.3,
            epsilon = 1e-12
        );
        assert!(out.ratio_residual < 1e-12);
        assert!(out.pole_residual < 1e-12);
    }

    #[test]
    fn berwald_ratio_refuses_almost_abelian() {
        let mut t = Tensor3::zeros(3);
        for i in 1..3 {
            t[(0, i, i)] = 1.0;
            t[(i, 0, i)] = -1.0;
        }
        let alg =
            LieAlgebra::new(vec!["b".into(), "u2".into(), "u3".into()], t, TOL).unwrap();
        let h = Metric::identity(3);
        let field =
            DeformationField::new(DVector::from_column_slice(&[0.4, 0.0, 0.0]), &h, TOL).unwrap();
        let frame = AdaptedFrame::new(&alg, &h, &field, TOL).unwrap();
        assert!(matches!(
            sectional_ratio_berwald(&frame, &h, &field, TOL),
            Err(Error::NotBerwald { .. })
        ));
    }

    #[test]
    fn douglas_closed_form_agrees_off_the_pole() {
        let mut t = Tensor3::zeros(3);
        for i in 1..3 {
            t[(0, i, i)] = 1.0;
            t[(i, 0, i)] = -1.0;
        }
        let alg =
            LieAlgebra::new(vec!["b".into(), "u2".into(), "u3".into()], t, TOL).unwrap();
        let h = Metric::identity(3);
        let field =
            DeformationField::new(DVector::from_column_slice(&[0.4, 0.0, 0.0]), &h, TOL).unwrap();
        let frame = AdaptedFrame::new(&alg, &h, &field, TOL).unwrap();
        let stated = sectional_douglas_closed_form(&frame, &h, &field, TOL).unwrap();
        let gx = deformed_metric(&h, &field);
        let (_, _, pipeline) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        // frame order (u2, u3, b); the (u2, u3) plane avoids the pole
        assert_relative_eq!(
            stated.get(0, 1).unwrap(),
            pipeline.get(0, 1).unwrap(),
            epsilon = 1e-12
        );
        assert_relative_eq!(pipeline.get(0, 1).unwrap(), -1.0 / 1.96, epsilon = 1e-12);
    }

    #[test]
    fn douglas_closed_form_deviates_on_pole_pairs() {
        // the stated prefactor 1/(1+|X|) disagrees with the pipeline when the
        // plane contains the X direction; the library reports, not asserts
        let mut t = Tensor3::zeros(3);
        for i in 1..3 {
            t[(0, i, i)] = 1.0;
            t[(i, 0, i)] = -1.0;
        }
        let alg =
            LieAlgebra::new(vec!["b".into(), "u2".into(), "u3".into()], t, TOL).unwrap();
        let h = Metric::identity(3);
        let field =
            DeformationField::new(DVector::from_column_slice(&[0.4, 0.0, 0.0]), &h, TOL).unwrap();
        let frame = AdaptedFrame::new(&alg, &h, &field, TOL).unwrap();
        let stated = sectional_douglas_closed_form(&frame, &h, &field, TOL).unwrap();
        let gx = deformed_metric(&h, &field);
        let (_, _, pipeline) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        let i0 = frame.i0();
        assert_relative_eq!(stated.get(0, i0).unwrap(), -1.0 / 1.4, epsilon = 1e-12);
        assert_relative_eq!(pipeline.get(0, i0).unwrap(), -1.0 / 1.96, epsilon = 1e-12);
        let discrepancy = (stated.get(0, i0).unwrap() - pipeline.get(0, i0).unwrap()).abs();
        assert_relative_eq!(discrepancy, 1.0 / 1.4 - 1.0 / 1.96, epsilon = 1e-12);
    }

    #[test]
    fn douglas_closed_form_reduces_to_ratio_on_berwald_input() {
        let (frame, h, field) = su2_plus_line_frame(0.3);
        let stated = sectional_douglas_closed_form(&frame, &h, &field, TOL).unwrap();
        let gx = deformed_metric(&h, &field);
        let (_, _, pipeline) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        assert!(stated.max_abs_diff(&pipeline) < 1e-12);
    }

    #[test]
    fn flag_curvature_su2_plus_line() {
        let (frame, h, field) = su2_plus_line_frame(0.3);
        let base = flag_curvature(&frame, &h, &field, Finsler::Base, TOL).unwrap();
        let deformed = flag_curvature(&frame, &h, &field, Finsler::Deformed, TOL).unwrap();
        // pole e1, plane {e1, e2}
        assert_relative_eq!(base.get(0, 1).unwrap(), 0.25, epsilon = 1e-12);
        assert_relative_eq!(deformed.get(0, 1).unwrap(), 0.25 / 1.3, epsilon = 1e-12);
        assert_relative_eq!(
            deformed.get(0, 1).unwrap() / base.get(0, 1).unwrap(),
            1.0 / 1.3,
            epsilon = 1e-12
        );
        assert!(flag_ratio_residual(&frame, &h, &field, TOL).unwrap() < 1e-12);
    }

    #[test]
    fn flag_curvature_refuses_non_berwald() {
        let (frame, h, field) = heisenberg_frame(1.0, 0.3);
        assert!(matches!(
            flag_curvature(&frame, &h, &field, Finsler::Base, TOL),
            Err(Error::NotBerwald { .. })
        ));
    }

    #[test]
    fn flag_curvature_vanishes_on_abelian() {
        let alg = LieAlgebra::abelian(3);
        let h = Metric::identity(3);
        let field =
            DeformationField::new(DVector::from_column_slice(&[0.2, 0.0, 0.0]), &h, TOL).unwrap();
        let frame = AdaptedFrame::new(&alg, &h, &field, TOL).unwrap();
        for which in [Finsler::Base, Finsler::Deformed] {
            let flags = flag_curvature(&frame, &h, &field, which, TOL).unwrap();
            for (_, v) in flags.iter() {
                assert!(v.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn curvature_tensor_invariants_hold() {
        let (frame, h, field) = heisenberg_frame(2.0, -0.25);
        let gx = deformed_metric(&h, &field);
        let (_, rt, _) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        assert!(rt.antisymmetry_residual() < 1e-12);
        assert!(rt.bianchi_residual() < 1e-12);
        assert!(rt.pair_symmetry_residual(&frame.gram(&gx)) < 1e-12);
    }
}
