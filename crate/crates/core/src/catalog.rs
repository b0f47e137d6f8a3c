//! Parametric constructors for the worked example spaces, bundling a
//! validated `(algebra, metric, field)` triple with the golden values the
//! computation modules must reproduce.
//!
//! Golden connection tables and sectional values are stored over the input
//! basis (the frame results are converted back for comparison); golden
//! eigenvalues are stored sorted, since frame ordering is a convention.

use std::collections::BTreeMap;

use nalgebra::DVector;

use crate::algebra::{LieAlgebra, Metric};
use crate::deform::DeformationField;
use crate::error::{Error, Result};
use crate::tensor::Tensor3;
use crate::DEFAULT_TOLERANCE;

/// Expected values attached to a catalog entry.
#[derive(Debug, Clone)]
pub struct GoldenValues {
    /// Eigenvalues of the deformation map, ascending.
    pub eigenvalues_sorted: Vec<f64>,
    /// Connection of `g_X` over the input basis, when a closed form is known.
    pub connection_input_basis: Option<Tensor3>,
    /// Sectional curvatures of `g_X` for input-basis planes, when known.
    pub sectional_input_pairs: Option<BTreeMap<(usize, usize), f64>>,
    pub douglas: bool,
    pub berwald: bool,
}

/// A ready-made example: named, parameterized, validated, with goldens.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub parameters: Vec<(String, f64)>,
    pub algebra: LieAlgebra,
    pub metric: Metric,
    pub field: DeformationField,
    pub expected: GoldenValues,
}

/// Heisenberg algebra with `[x, y] = z`, inner product `diag(lambda,
/// lambda, 1)`, and central field `X = c z`. Requires `lambda > 0` and
/// `0 < |c| < 1/2`; `c` may be negative, goldens depend on `|c|` only.
pub fn heisenberg(lambda: f64, c: f64) -> Result<CatalogEntry> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::Parameter(format!("lambda = {lambda} must be > 0")));
    }
    if !(c.abs() > 0.0 && c.abs() < 0.5) {
        return Err(Error::Parameter(format!(
            "c = {c} must satisfy 0 < |c| < 1/2"
        )));
    }
    let mut t = Tensor3::zeros(3);
    t[(0, 1, 2)] = 1.0;
    t[(1, 0, 2)] = -1.0;
    let algebra = LieAlgebra::new(
        vec!["x".into(), "y".into(), "z".into()],
        t,
        DEFAULT_TOLERANCE,
    )?;
    let metric = Metric::from_diagonal(&[lambda, lambda, 1.0], DEFAULT_TOLERANCE)?;
    let field = DeformationField::new(
        DVector::from_column_slice(&[0.0, 0.0, c]),
        &metric,
        DEFAULT_TOLERANCE,
    )?;

    let mu = 1.0 + c.abs();
    let half = mu / (2.0 * lambda);
    let mut conn = Tensor3::zeros(3);
    conn[(0, 1, 2)] = 0.5; // nabla_x y = z/2
    conn[(1, 0, 2)] = -0.5;
    conn[(0, 2, 1)] = -half; // nabla_x z = -(1+|c|)/(2 lambda) y
    conn[(1, 2, 0)] = half;
    conn[(2, 0, 1)] = -half;
    conn[(2, 1, 0)] = half;

    let mut sectional = BTreeMap::new();
    sectional.insert((0, 1), -3.0 / (4.0 * lambda * lambda));
    sectional.insert((0, 2), 1.0 / (4.0 * lambda * lambda));
    sectional.insert((1, 2), 1.0 / (4.0 * lambda * lambda));

    Ok(CatalogEntry {
        name: "heisenberg".into(),
        parameters: vec![("lambda".into(), lambda), ("c".into(), c)],
        algebra,
        metric,
        field,
        expected: GoldenValues {
            eigenvalues_sorted: vec![mu, mu, mu * mu],
            connection_input_basis: Some(conn),
            sectional_input_pairs: Some(sectional),
            douglas: false,
            berwald: false,
        },
    })
}

/// Almost-Abelian algebra `[b, u_i] = u_i` on the orthonormal basis
/// `{b, u_2, ..., u_n}` with `X = xi b`. Requires `n >= 2` and
/// `0 < xi < 1/2`.
pub fn almost_abelian(n: usize, xi: f64) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::Parameter(format!("n = {n} must be >= 2")));
    }
    if !(xi > 0.0 && xi < 0.5) {
        return Err(Error::Parameter(format!(
            "xi = {xi} must satisfy 0 < xi < 1/2"
        )));
    }
    let mut t = Tensor3::zeros(n);
    for i in 1..n {
        t[(0, i, i)] = 1.0;
        t[(i, 0, i)] = -1.0;
    }
    let mut labels = vec!["b".to_string()];
    labels.extend((2..=n).map(|i| format!("u{i}")));
    let algebra = LieAlgebra::new(labels, t, DEFAULT_TOLERANCE)?;
    let metric = Metric::identity(n);
    let mut x = DVector::zeros(n);
    x[0] = xi;
    let field = DeformationField::new(x, &metric, DEFAULT_TOLERANCE)?;

    let mut conn = Tensor3::zeros(n);
    for j in 1..n {
        conn[(j, 0, j)] = -1.0; // nabla_{u_j} b = -u_j
        conn[(j, j, 0)] = 1.0 / (1.0 + xi); // nabla_{u_j} u_j = b/(1+xi)
    }
    let mut sectional = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            sectional.insert((i, j), -1.0 / ((1.0 + xi) * (1.0 + xi)));
        }
    }
    let mut eigenvalues = vec![1.0 + xi; n];
    eigenvalues[n - 1] = (1.0 + xi) * (1.0 + xi);

    Ok(CatalogEntry {
        name: "almost_abelian".into(),
        parameters: vec![("n".into(), n as f64), ("xi".into(), xi)],
        algebra,
        metric,
        field,
        expected: GoldenValues {
            eigenvalues_sorted: eigenvalues,
            connection_input_basis: Some(conn),
            sectional_input_pairs: Some(sectional),
            douglas: true,
            berwald: false,
        },
    })
}

/// Abelian algebra with the identity metric; the trivial-case fixture.
/// Requires `0 < |X| < 1/2`.
pub fn abelian(n: usize, x_coords: &[f64]) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::Parameter("n must be >= 1".into()));
    }
    if x_coords.len() != n {
        return Err(Error::Parameter(format!(
            "X has {} coordinates for dimension {n}",
            x_coords.len()
        )));
    }
    let algebra = LieAlgebra::abelian(n);
    let metric = Metric::identity(n);
    let norm = x_coords.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm < 0.5) {
        return Err(Error::Parameter(format!(
            "|X| = {norm} must satisfy 0 < |X| < 1/2"
        )));
    }
    let field = DeformationField::new(
        DVector::from_column_slice(x_coords),
        &metric,
        DEFAULT_TOLERANCE,
    )?;
    let mut eigenvalues = vec![1.0 + norm; n];
    eigenvalues[n - 1] = (1.0 + norm) * (1.0 + norm);
    let sectional = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| ((i, j), 0.0)))
        .collect();
    Ok(CatalogEntry {
        name: "abelian".into(),
        parameters: vec![("n".into(), n as f64)],
        algebra,
        metric,
        field,
        expected: GoldenValues {
            eigenvalues_sorted: eigenvalues,
            connection_input_basis: Some(Tensor3::zeros(n)),
            sectional_input_pairs: Some(sectional),
            douglas: true,
            berwald: true,
        },
    })
}

/// `su(2)` plus a central line: `[e1,e2] = e3`, `[e2,e3] = e1`,
/// `[e3,e1] = e2`, `e4` central; identity metric, `X = c e4`. The Berwald
/// non-abelian fixture. Requires `0 < c < 1/2`.
pub fn su2_plus_line(c: f64) -> Result<CatalogEntry> {
    if !(c > 0.0 && c < 0.5) {
        return Err(Error::Parameter(format!(
            "c = {c} must satisfy 0 < c < 1/2"
        )));
    }
    let mut t = Tensor3::zeros(4);
    for &(i, j, k) in &[(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        t[(i, j, k)] = 1.0;
        t[(j, i, k)] = -1.0;
    }
    let algebra = LieAlgebra::new(
        vec!["e1".into(), "e2".into(), "e3".into(), "e4".into()],
        t,
        DEFAULT_TOLERANCE,
    )?;
    let metric = Metric::identity(4);
    let field = DeformationField::new(
        DVector::from_column_slice(&[0.0, 0.0, 0.0, c]),
        &metric,
        DEFAULT_TOLERANCE,
    )?;

    // Berwald: nabla = nablabar = [.,.]/2 on the su(2) block
    let mut conn = Tensor3::zeros(4);
    for &(i, j, k) in &[(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        conn[(i, j, k)] = 0.5;
        conn[(j, i, k)] = -0.5;
    }
    let mut sectional = BTreeMap::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            sectional.insert((i, j), 0.25 / (1.0 + c));
        }
        sectional.insert((i, 3), 0.0);
    }
    Ok(CatalogEntry {
        name: "su2_plus_line".into(),
        parameters: vec![("c".into(), c)],
        algebra,
        metric,
        field,
        expected: GoldenValues {
            eigenvalues_sorted: vec![1.0 + c, 1.0 + c, 1.0 + c, (1.0 + c) * (1.0 + c)],
            connection_input_basis: Some(conn),
            sectional_input_pairs: Some(sectional),
            douglas: true,
            berwald: true,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::curvature::{sectional_curvature_plane, sectional_pipeline};
    use crate::deform::{deformed_metric, AdaptedFrame};
    use approx::assert_relative_eq;

    const TOL: f64 = crate::DEFAULT_TOLERANCE;

    fn check_goldens(entry: &CatalogEntry) {
        let frame =
            AdaptedFrame::new(&entry.algebra, &entry.metric, &entry.field, TOL).unwrap();
        let mut eigen = frame.eigenvalues().to_vec();
        eigen.sort_by(f64::total_cmp);
        for (a, b) in eigen.iter().zip(&entry.expected.eigenvalues_sorted) {
            assert_relative_eq!(a, b, epsilon = 1e-9);
        }
        let gx = deformed_metric(&entry.metric, &entry.field);
        let (conn, rt, _) = sectional_pipeline(&frame, &gx, TOL).unwrap();
        if let Some(expected) = &entry.expected.connection_input_basis {
            let input = conn.to_input_basis(&frame, &entry.metric);
            assert!(
                input.max_abs_diff(expected) < 1e-9,
                "{}: connection deviates by {}",
                entry.name,
                input.max_abs_diff(expected)
            );
        }
        if let Some(expected) = &entry.expected.sectional_input_pairs {
            let gram = frame.gram(&gx);
            let n = entry.algebra.dim();
            for (&(i, j), want) in expected {
                let ei = DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 });
                let ej = DVector::from_fn(n, |r, _| if r == j { 1.0 } else { 0.0 });
                let u = frame.coords(&ei, &entry.metric);
                let v = frame.coords(&ej, &entry.metric);
                let got = sectional_curvature_plane(&rt, &gram, &u, &v, TOL).unwrap();
                assert_relative_eq!(got, *want, epsilon = 1e-9);
            }
        }
        let report = classify(&entry.algebra, &entry.metric, &entry.field, TOL);
        assert_eq!(report.douglas, entry.expected.douglas, "{}", entry.name);
        assert_eq!(report.berwald, entry.expected.berwald, "{}", entry.name);
    }

    #[test]
    fn heisenberg_goldens_reproduce() {
        check_goldens(&heisenberg(1.0, 0.3).unwrap());
        check_goldens(&heisenberg(2.0, 0.1).unwrap());
        check_goldens(&heisenberg(1.0, -0.25).unwrap());
    }

    #[test]
    fn almost_abelian_goldens_reproduce() {
        check_goldens(&almost_abelian(3, 0.4).unwrap());
        check_goldens(&almost_abelian(5, 0.2).unwrap());
    }

    #[test]
    fn abelian_goldens_reproduce() {
        check_goldens(&abelian(3, &[0.2, 0.0, 0.0]).unwrap());
        check_goldens(&abelian(2, &[0.1, 0.1]).unwrap());
    }

    #[test]
    fn su2_plus_line_goldens_reproduce() {
        check_goldens(&su2_plus_line(0.3).unwrap());
    }

    #[test]
    fn parameter_bounds_are_enforced() {
        assert!(matches!(heisenberg(0.0, 0.3), Err(Error::Parameter(_))));
        assert!(matches!(heisenberg(1.0, 0.5), Err(Error::Parameter(_))));
        assert!(matches!(heisenberg(1.0, 0.0), Err(Error::Parameter(_))));
        assert!(matches!(almost_abelian(1, 0.4), Err(Error::Parameter(_))));
        assert!(matches!(almost_abelian(3, 0.6), Err(Error::Parameter(_))));
        assert!(matches!(su2_plus_line(0.5), Err(Error::Parameter(_))));
        assert!(matches!(abelian(3, &[0.9, 0.0, 0.0]), Err(Error::Parameter(_))));
        assert!(matches!(abelian(2, &[0.1]), Err(Error::Parameter(_))));
    }
}
