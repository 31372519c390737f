//! Weighted Laplacians and the spectral-gap premise of Garland's theorem.
//!
//! Cochains carry the inner product `<σ, σ> = c(σ)` with
//! `c(σ) = (k - dim σ)! · #{k-faces containing σ}`. The Laplacian
//! `L_j = d_{j-1} d_{j-1}^* + d_j^* d_j` is self-adjoint for that product; we
//! store its symmetric conjugate `W^{1/2} L_j W^{-1/2}`, which has the same
//! spectrum.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{coface_counts, Complex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::{betti, boundary_matrix};
use crate::simplex::Simplex;

/// Largest cochain space handled by the dense eigensolver.
pub const MAX_DENSE: usize = 5000;

/// Guard band around the premise threshold; comparisons inside it are inconclusive.
pub const GUARD_BAND: f64 = 1e-7;

const JACOBI_TOL: f64 = 1e-9;

fn factorial(m: u64) -> u64 {
    (1..=m).product()
}

/// The weight `c` on every face of a pure complex.
pub fn garland_weights<C: Complex + ?Sized>(x: &C) -> Result<BTreeMap<Simplex, u64>> {
    let k = x.dim();
    let tops = x.faces(k);
    let counts = coface_counts(tops.iter());
    // every face must lie under some top face
    for j in -1..k {
        if let Some(f) = x.faces(j).into_iter().find(|f| !counts.contains_key(f)) {
            return Err(Error::NotPure(f));
        }
    }
    Ok(counts
        .into_iter()
        .map(|(s, c)| {
            let w = factorial((k - s.dim()) as u64) * c;
            (s, w)
        })
        .collect())
}

/// Dense symmetric form of `L_j` over the `j`-faces.
#[derive(Clone, Debug)]
pub struct WeightedLaplacian {
    pub j: isize,
    pub faces: Vec<Simplex>,
    /// Row-major `faces.len() x faces.len()` matrix.
    pub matrix: Vec<f64>,
}

impl WeightedLaplacian {
    pub fn size(&self) -> usize {
        self.faces.len()
    }

    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.matrix[r * self.size() + c]
    }
}

pub fn weighted_laplacian<C: Complex + ?Sized>(x: &C, j: isize) -> Result<WeightedLaplacian> {
    let weights = garland_weights(x)?;
    let faces = x.faces(j);
    let size = faces.len();
    if size > MAX_DENSE {
        return Err(Error::TooLarge { size, limit: MAX_DENSE });
    }
    let w = |s: &Simplex| weights[s] as f64;
    let wj: Vec<f64> = faces.iter().map(w).collect();
    let mut m = vec![0.0; size * size];

    // up part: W_j^{-1/2} ∂_{j+1} W_{j+1} ∂_{j+1}^T W_j^{-1/2}
    let up = boundary_matrix(x, j + 1);
    for (c, col) in up.matrix.cols.iter().enumerate() {
        let wc = w(&up.cols[c]);
        for &(a, va) in col {
            for &(b, vb) in col {
                m[a * size + b] += (va * vb) as f64 * wc / (wj[a] * wj[b]).sqrt();
            }
        }
    }
    // down part: W_j^{1/2} ∂_j^T W_{j-1}^{-1} ∂_j W_j^{1/2}
    let down = boundary_matrix(x, j).matrix.transpose();
    let down_rows = x.faces(j - 1);
    for (r, row) in down.cols.iter().enumerate() {
        let wr = w(&down_rows[r]);
        for &(a, va) in row {
            for &(b, vb) in row {
                m[a * size + b] += (va * vb) as f64 * (wj[a] * wj[b]).sqrt() / wr;
            }
        }
    }
    Ok(WeightedLaplacian { j, faces, matrix: m })
}

/// Eigenvalues of a symmetric row-major matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(matrix: &[f64], size: usize) -> Vec<f64> {
    let mut a = matrix.to_vec();
    let idx = |r: usize, c: usize| r * size + c;
    let scale = a.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1.0);
    for _sweep in 0..100 {
        let off: f64 = (0..size)
            .flat_map(|r| (0..size).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[idx(r, c)] * a[idx(r, c)])
            .sum::<f64>()
            .sqrt();
        if off < JACOBI_TOL * 1e-3 * scale {
            break;
        }
        for p in 0..size {
            for q in p + 1..size {
                let apq = a[idx(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..size {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..size {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..size).map(|i| a[idx(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// `μ_j(X)`, the least eigenvalue of the weighted Laplacian. `None` when `C^j` is zero.
pub fn laplacian_min_eigenvalue<C: Complex + ?Sized>(x: &C, j: isize) -> Result<Option<f64>> {
    let lap = weighted_laplacian(x, j)?;
    Ok(jacobi_eigenvalues(&lap.matrix, lap.size()).first().copied())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Premise {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct GarlandVerdict {
    pub k: isize,
    pub ell: isize,
    /// `(ℓ + 1) / k`.
    pub threshold: f64,
    pub min_mu: Option<f64>,
    pub argmin_face: Option<Simplex>,
    pub premise: Premise,
    /// `tb_{k-1}(X; Q)`.
    pub top_betti: u64,
}

impl GarlandVerdict {
    /// False only when the premise holds yet `tb_{k-1}` is nonzero.
    pub fn consistent(&self) -> bool {
        self.premise != Premise::Holds || self.top_betti == 0
    }
}

/// Evaluates the premise `μ_{k-ℓ-2}(lk(X, τ)) > (ℓ+1)/k` over all `τ ∈ X(ℓ)`
/// and the conclusion `H̃_{k-1}(X; Q) = 0`.
pub fn garland_check<C: Complex + ?Sized>(x: &C, ell: isize) -> Result<GarlandVerdict> {
    let k = x.dim();
    if ell < -1 || ell >= k - 1 {
        return Err(Error::ParameterOutOfRange(format!("need -1 <= l < k - 1, got l = {ell}, k = {k}")));
    }
    garland_weights(x)?;
    let threshold = (ell + 1) as f64 / k as f64;
    let faces = x.faces(ell);
    let mus: Vec<(Simplex, Option<f64>)> = faces
        .par_iter()
        .map(|tau| {
            let lk = x.link(tau)?;
            Ok((tau.clone(), laplacian_min_eigenvalue(&lk, k - ell - 2)?))
        })
        .collect::<Result<_>>()?;
    let (argmin_face, min_mu) = mus
        .into_iter()
        .filter_map(|(t, m)| m.map(|m| (t, m)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map_or((None, None), |(t, m)| (Some(t), Some(m)));
    let premise = match min_mu {
        Some(m) if m > threshold + GUARD_BAND => Premise::Holds,
        Some(m) if m < threshold - GUARD_BAND => Premise::Fails,
        Some(_) => Premise::Inconclusive,
        None => Premise::Fails,
    };
    let top_betti = betti(x, k - 1, FieldSpec::Rational);
    Ok(GarlandVerdict { k, ell, threshold, min_mu, argmin_face, premise, top_betti })
}
