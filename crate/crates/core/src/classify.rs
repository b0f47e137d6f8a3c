//! Douglas/Berwald classification and geodesic/Killing transfer conditions.
//!
//! For a left-invariant Randers metric built from `(h, X)`:
//!
//! * Douglas type  <=>  `<X, [g, g]> = 0`;
//! * Berwald type  <=>  Douglas and `<[y,X],z> + <[z,X],y> = 0` for all
//!   basis pairs.
//!
//! The same structural conditions evaluated with `g_X` in place of `<,>`
//! must produce identical verdicts; [`classify_tilde`] surfaces that theorem
//! as a runtime cross-check.
//!
//! Conditions quantified over the algebra are checked on basis vectors only
//! (bilinearity makes this equivalent). Raw residuals are reported as-is;
//! verdicts compare them against `tol` times a Cauchy-Schwarz bound of the
//! same expression so they are invariant under rescaling of the inputs.

use nalgebra::DVector;

use crate::algebra::{LieAlgebra, Metric};
use crate::deform::{deformed_metric, AdaptedFrame, DeformationField};
use crate::error::{Error, Result};

/// Douglas/Berwald verdicts with the per-condition numeric residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub douglas: bool,
    pub berwald: bool,
    /// `max |<X, [e_i, e_j]>|` over basis pairs (unnormalized).
    pub douglas_residual: f64,
    /// `max |<[e_i,X],e_j> + <[e_j,X],e_i>|` over basis pairs (unnormalized).
    pub berwald_residual: f64,
    pub tolerance: f64,
}

fn holds(residual: f64, scale: f64, tol: f64) -> bool {
    residual <= tol * scale
}

fn classify_with(metric: &Metric, alg: &LieAlgebra, x: &DVector<f64>, tol: f64) -> ClassificationReport {
    let n = alg.dim();
    let basis: Vec<DVector<f64>> = (0..n)
        .map(|i| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }))
        .collect();
    let norm_x = metric.norm(x);
    let basis_norms: Vec<f64> = basis.iter().map(|e| metric.norm(e)).collect();

    let mut douglas_residual: f64 = 0.0;
    let mut douglas_scale: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let br = alg.bracket_basis(i, j);
            douglas_residual = douglas_residual.max(metric.inner(x, &br).abs());
            douglas_scale = douglas_scale.max(norm_x * metric.norm(&br));
        }
    }

    let bracket_with_x: Vec<DVector<f64>> = basis
        .iter()
        .map(|e| alg.bracket(e, x).expect("basis matches algebra dimension"))
        .collect();
    let mut berwald_residual: f64 = 0.0;
    let mut berwald_scale: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let v = metric.inner(&bracket_with_x[i], &basis[j])
                + metric.inner(&bracket_with_x[j], &basis[i]);
            berwald_residual = berwald_residual.max(v.abs());
            berwald_scale = berwald_scale.max(
                metric.norm(&bracket_with_x[i]) * basis_norms[j]
                    + metric.norm(&bracket_with_x[j]) * basis_norms[i],
            );
        }
    }

    let douglas = holds(douglas_residual, douglas_scale, tol);
    let berwald = douglas && holds(berwald_residual, berwald_scale, tol);
    ClassificationReport {
        douglas,
        berwald,
        douglas_residual,
        berwald_residual,
        tolerance: tol,
    }
}

/// Classification of `F` from the base inner product `h`.
pub fn classify(
    alg: &LieAlgebra,
    h: &Metric,
    field: &DeformationField,
    tol: f64,
) -> ClassificationReport {
    classify_with(h, alg, field.coords(), tol)
}

/// Classification of `F~`: the same conditions with `g_X` in place of `h`.
/// Verdicts must match [`classify`]; errors if the deformed-norm validity
/// bound fails.
pub fn classify_tilde(
    alg: &LieAlgebra,
    h: &Metric,
    field: &DeformationField,
    tol: f64,
) -> Result<ClassificationReport> {
    let bound = field.deformed_validity_bound();
    if bound >= 1.0 {
        return Err(Error::DeformedBound { bound });
    }
    let gx = deformed_metric(h, field);
    Ok(classify_with(&gx, alg, field.coords(), tol))
}

/// Classification read off the adapted frame: `<X, [g,g]> = 0` is exactly
/// the vanishing of every frame structure constant with last index `i0`.
/// Used by curvature operations to gate their Douglas/Berwald preconditions.
pub fn classify_frame(frame: &AdaptedFrame, tol: f64) -> ClassificationReport {
    let n = frame.dim();
    let alpha = frame.structure();
    let i0 = frame.i0();
    let s = frame.norm_x();

    let mut douglas_residual: f64 = 0.0;
    let mut douglas_scale: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            douglas_residual = douglas_residual.max(s * alpha[(i, j, i0)].abs());
            let norm_br = (0..n)
                .map(|k| alpha[(i, j, k)] * alpha[(i, j, k)])
                .sum::<f64>()
                .sqrt();
            douglas_scale = douglas_scale.max(s * norm_br);
        }
    }

    let mut berwald_residual: f64 = 0.0;
    let mut berwald_scale: f64 = 0.0;
    for i in 0..n {
        let norm_i = (0..n)
            .map(|k| alpha[(i, i0, k)] * alpha[(i, i0, k)])
            .sum::<f64>()
            .sqrt();
        for j in i..n {
            let norm_j = (0..n)
                .map(|k| alpha[(j, i0, k)] * alpha[(j, i0, k)])
                .sum::<f64>()
                .sqrt();
            let v = s * (alpha[(i, i0, j)] + alpha[(j, i0, i)]);
            berwald_residual = berwald_residual.max(v.abs());
            berwald_scale = berwald_scale.max(s * (norm_i + norm_j));
        }
    }

    let douglas = holds(douglas_residual, douglas_scale, tol);
    let berwald = douglas && holds(berwald_residual, berwald_scale, tol);
    ClassificationReport {
        douglas,
        berwald,
        douglas_residual,
        berwald_residual,
        tolerance: tol,
    }
}

/// Outcome of a zero-condition predicate together with its raw residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredicateCheck {
    pub holds: bool,
    pub residual: f64,
}

/// `v` is a geodesic vector for `g` iff `g(v, [v, y]) = 0` for all `y`.
pub fn is_geodesic_vector(
    v: &DVector<f64>,
    alg: &LieAlgebra,
    g: &Metric,
    tol: f64,
) -> Result<PredicateCheck> {
    let n = alg.dim();
    let mut residual: f64 = 0.0;
    let mut scale: f64 = 0.0;
    let norm_v = g.norm(v);
    for j in 0..n {
        let e = DVector::from_fn(n, |r, _| if r == j { 1.0 } else { 0.0 });
        let br = alg.bracket(v, &e)?;
        residual = residual.max(g.inner(v, &br).abs());
        scale = scale.max(norm_v * g.norm(&br));
    }
    Ok(PredicateCheck {
        holds: holds(residual, scale, tol),
        residual,
    })
}

/// `v` is a Killing vector for `g` iff `g([v,y],z) + g(y,[v,z]) = 0` for all
/// `y`, `z`.
pub fn is_killing_vector(
    v: &DVector<f64>,
    alg: &LieAlgebra,
    g: &Metric,
    tol: f64,
) -> Result<PredicateCheck> {
    let n = alg.dim();
    let basis: Vec<DVector<f64>> = (0..n)
        .map(|i| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }))
        .collect();
    let brackets: Vec<DVector<f64>> = basis
        .iter()
        .map(|e| alg.bracket(v, e))
        .collect::<Result<_>>()?;
    let mut residual: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let val = g.inner(&brackets[i], &basis[j]) + g.inner(&basis[i], &brackets[j]);
            residual = residual.max(val.abs());
            scale = scale.max(
                g.norm(&brackets[i]) * g.norm(&basis[j])
                    + g.norm(&brackets[j]) * g.norm(&basis[i]),
            );
        }
    }
    Ok(PredicateCheck {
        holds: holds(residual, scale, tol),
        residual,
    })
}

/// Transfer conditions for a geodesic/Killing vector `v` of `h` to remain
/// one for `g_X`.
///
/// The stated conditions are `ad*_v X = 0 or <X, v> = 0` (geodesic) and
/// `ad*_v X = 0` (Killing). The weaker combined condition
/// `<X,v> <X,[v,y]> = 0` derived in the proof is computed and reported
/// separately, asserted against neither.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferConditions {
    pub geodesic_transfer: bool,
    pub killing_transfer: bool,
    /// `|ad*_v X|` in the `h` norm.
    pub ad_star_residual: f64,
    /// `|<X, v>|`.
    pub inner_residual: f64,
    /// Whether `<X,v> <X,[v,y]> = 0` holds over the basis.
    pub proof_condition: bool,
    /// `max_y |<X,v> <X,[v,y]>|`.
    pub proof_residual: f64,
}

pub fn transfer_conditions(
    v: &DVector<f64>,
    alg: &LieAlgebra,
    h: &Metric,
    field: &DeformationField,
    tol: f64,
) -> Result<TransferConditions> {
    let n = alg.dim();
    let x = field.coords();
    let ad_t = alg.ad_transpose(v, h)?;
    let ad_star_x = &ad_t * x;
    let ad_star_residual = h.norm(&ad_star_x);
    let norm_v = h.norm(v);
    let norm_x = field.norm_h();

    // scale per the residual-normalization policy: |v| |X| max|c|
    let c_scale = alg.structure().max_abs();
    let ad_scale = norm_v * norm_x * c_scale;

    let inner_residual = h.inner(x, v).abs();
    let inner_scale = norm_v * norm_x;

    let mut proof_residual: f64 = 0.0;
    let mut proof_scale: f64 = 0.0;
    let xv = h.inner(x, v);
    for j in 0..n {
        let e = DVector::from_fn(n, |r, _| if r == j { 1.0 } else { 0.0 });
        let br = alg.bracket(v, &e)?;
        proof_residual = proof_residual.max((xv * h.inner(x, &br)).abs());
        proof_scale = proof_scale.max(norm_x * norm_v * norm_x * h.norm(&br));
    }

    let ad_star_zero = holds(ad_star_residual, ad_scale, tol);
    let inner_zero = holds(inner_residual, inner_scale, tol);
    Ok(TransferConditions {
        geodesic_transfer: ad_star_zero || inner_zero,
        killing_transfer: ad_star_zero,
        ad_star_residual,
        inner_residual,
        proof_condition: holds(proof_residual, proof_scale, tol),
        proof_residual,
    })
}
