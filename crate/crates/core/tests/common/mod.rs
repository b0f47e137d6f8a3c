//! Shared test support: seeded random instance generation from
//! solvable/nilpotent templates, plus oracles that stay independent of the
//! implementation paths they check.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use randers_core::{
    phi_map, DeformationField, LieAlgebra, Metric, Tensor3, Tensor4, DEFAULT_TOLERANCE,
};

pub struct RandomInstance {
    pub algebra: LieAlgebra,
    pub metric: Metric,
    pub field: DeformationField,
}

fn template(rng: &mut ChaCha8Rng, n: usize) -> Tensor3 {
    let mut c = Tensor3::zeros(n);
    match rng.random_range(0..3u8) {
        0 => {} // abelian
        1 if n >= 3 => {
            // two-step nilpotent: [e_i, e_j] = s_ij e_n for i < j < n
            for i in 0..(n - 1) {
                for j in (i + 1)..(n - 1) {
                    let s = rng.random_range(-1.0..1.0);
                    c[(i, j, n - 1)] = s;
                    c[(j, i, n - 1)] = -s;
                }
            }
        }
        _ => {
            // solvable with codimension-one abelian ideal:
            // [e_1, e_j] = sum_k D_kj e_k over the ideal
            for j in 1..n {
                for k in 1..n {
                    let d = rng.random_range(-1.0..1.0);
                    c[(0, j, k)] = d;
                    c[(j, 0, k)] = -d;
                }
            }
        }
    }
    c
}

/// Random invertible basis change with bounded conditioning; Jacobi is
/// preserved exactly up to rounding.
fn basis_change(rng: &mut ChaCha8Rng, n: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    loop {
        let p = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        let svd = p.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin > 0.25 * smax {
            let inv = p.clone().try_inverse().expect("conditioned matrix");
            return (p, inv);
        }
    }
}

fn transform_structure(c: &Tensor3, p: &DMatrix<f64>, p_inv: &DMatrix<f64>) -> Tensor3 {
    let n = c.dim();
    let mut out = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            // [f_i, f_j] in the e-basis
            let mut br = DVector::zeros(n);
            for a in 0..n {
                for b in 0..n {
                    let w = p[(a, i)] * p[(b, j)];
                    if w == 0.0 {
                        continue;
                    }
                    for k in 0..n {
                        br[k] += w * c[(a, b, k)];
                    }
                }
            }
            // re-express over the f-basis
            let coords = p_inv * br;
            for d in 0..n {
                out[(i, j, d)] = coords[d];
            }
        }
    }
    // enforce exact antisymmetry against summation-order noise
    Tensor3::from_fn(n, |i, j, k| 0.5 * (out[(i, j, k)] - out[(j, i, k)]))
}

fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> Metric {
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let m = &a.transpose() * &a + DMatrix::identity(n, n) * 0.5;
    Metric::new(m, DEFAULT_TOLERANCE).expect("A^T A + I/2 is SPD")
}

fn random_field(rng: &mut ChaCha8Rng, h: &Metric, n: usize) -> DeformationField {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let norm = h.norm(&v);
        if norm < 1e-3 {
            continue;
        }
        let t = rng.random_range(0.06..0.44);
        return DeformationField::new(v * (t / norm), h, DEFAULT_TOLERANCE)
            .expect("norm pinned inside (0, 1/2)");
    }
}

/// A random valid instance: solvable/nilpotent template, random basis
/// change, random SPD inner product, random field with `|X|` in
/// `(0.05, 0.45)`.
pub fn random_instance(rng: &mut ChaCha8Rng) -> RandomInstance {
    let n = rng.random_range(2..=5usize);
    let c = template(rng, n);
    let (p, p_inv) = basis_change(rng, n);
    let c = transform_structure(&c, &p, &p_inv);
    let labels = (1..=n).map(|i| format!("e{i}")).collect();
    let algebra = LieAlgebra::new(labels, c, DEFAULT_TOLERANCE).expect("templates satisfy Jacobi");
    let metric = random_spd(rng, n);
    let field = random_field(rng, &metric, n);
    RandomInstance {
        algebra,
        metric,
        field,
    }
}

/// A random instance whose field is orthogonal to the derived subalgebra,
/// so the Randers metric is of Douglas type by construction.
pub fn random_douglas_instance(rng: &mut ChaCha8Rng) -> RandomInstance {
    loop {
        let inst = random_instance(rng);
        let n = inst.algebra.dim();
        let derived = inst
            .algebra
            .derived_subalgebra_span(&inst.metric, DEFAULT_TOLERANCE)
            .expect("valid instance");
        if derived.len() == n {
            continue;
        }
        let mut v = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        for w in &derived {
            let along = inst.metric.inner(&v, w);
            v -= w * along;
        }
        let norm = inst.metric.norm(&v);
        if norm < 1e-3 {
            continue;
        }
        let t = rng.random_range(0.06..0.44);
        let field = DeformationField::new(v * (t / norm), &inst.metric, DEFAULT_TOLERANCE)
            .expect("norm pinned inside (0, 1/2)");
        return RandomInstance {
            algebra: inst.algebra,
            metric: inst.metric,
            field,
        };
    }
}

/// Sorted eigenvalues of the deformation map, obtained by an independent
/// route: conjugate by `H^(1/2)` to a symmetric matrix and run a dense
/// symmetric eigensolver.
pub fn phi_eigenvalues_oracle(h: &Metric, field: &DeformationField) -> Vec<f64> {
    let eig = h.matrix().clone().symmetric_eigen();
    let sqrt = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt))
        * eig.eigenvectors.transpose();
    let inv_sqrt = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(|v| 1.0 / v.sqrt()))
        * eig.eigenvectors.transpose();
    let conj = &sqrt * phi_map(h, field) * &inv_sqrt;
    let sym = (&conj + conj.transpose()) * 0.5;
    let mut vals: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Independent expansion of the curvature tensor as the explicit double sum
/// over `(l, h)` in the eigenvalue ratios, assembled directly from the frame
/// data without going through a connection table.
pub fn riemann_double_sum_oracle(
    lam: &[f64],
    alpha: &Tensor3,
) -> Tensor4 {
    let n = alpha.dim();
    let mut r = Tensor4::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for h in 0..n {
                    let mut s = 0.0;
                    for l in 0..n {
                        let t1 = (lam[j] / lam[l] * alpha[(l, k, j)]
                            - lam[k] / lam[l] * alpha[(j, l, k)]
                            - alpha[(k, j, l)])
                            * (lam[i] / lam[h] * alpha[(h, l, i)]
                                - lam[l] / lam[h] * alpha[(i, h, l)]
                                - alpha[(l, i, h)]);
                        let t2 = (lam[i] / lam[l] * alpha[(l, k, i)]
                            - lam[k] / lam[l] * alpha[(i, l, k)]
                            - alpha[(k, i, l)])
                            * (lam[j] / lam[h] * alpha[(h, l, j)]
                                - lam[l] / lam[h] * alpha[(j, h, l)]
                                - alpha[(l, j, h)]);
                        let t3 = 2.0
                            * alpha[(i, j, l)]
                            * (lam[l] / lam[h] * alpha[(h, k, l)]
                                - lam[k] / lam[h] * alpha[(l, h, k)]
                                - alpha[(k, l, h)]);
                        s += t1 - t2 - t3;
                    }
                    r[(i, j, k, h)] = 0.25 * s;
                }
            }
        }
    }
    r
}
