//! Subspace bases, numerical rank, nullspaces and intersection dimensions.
//!
//! Everything is backed by a one-sided Jacobi SVD over complex columns:
//! robust at desk scale, orthonormal output by construction, and the same
//! machinery serves real and complex shifts alike.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Relative tolerance for numerical rank when the caller passes `0`:
/// `1e-10 * max(1, sigma_max)`.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// An orthonormal list of complex vectors spanning a subspace of C^n.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl SubspaceBasis {
    /// Wraps vectors after checking shape and linear independence under
    /// `rank_tol` (`0` = default).
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<Complex64>>, rank_tol: f64) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidMatrix(
                "ambient dimension must be positive".into(),
            ));
        }
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    left: ambient_dim,
                    right: v.len(),
                });
            }
        }
        if !vectors.is_empty() {
            let r = rank_of_columns(&vectors, rank_tol);
            if r != vectors.len() {
                return Err(Error::InvalidMatrix(format!(
                    "vectors are not linearly independent (rank {} of {})",
                    r,
                    vectors.len()
                )));
            }
        }
        Ok(Self {
            ambient_dim,
            vectors,
        })
    }

    /// The zero subspace of C^n.
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    /// Columns of a real matrix as a (not necessarily orthonormal) basis.
    /// Columns must be independent.
    pub fn from_real_columns(m: &DenseMatrix, rank_tol: f64) -> Result<Self> {
        let cols = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .map(|i| Complex64::new(m.get(i, j), 0.0))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        Self::new(m.rows(), cols, rank_tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }
}

/// Orthonormal basis of `ker(m - shift I)` under `rank_tol` (`0` = default).
/// An empty basis is a valid result.
pub fn nullspace(m: &DenseMatrix, shift: Complex64, rank_tol: f64) -> Result<SubspaceBasis> {
    let n = m.require_square()?;
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let mut v = Complex64::new(m.get(i, j), 0.0);
                    if i == j {
                        v -= shift;
                    }
                    v
                })
                .collect()
        })
        .collect();

    let v = jacobi_svd(&mut cols);
    let sigmas: Vec<f64> = cols.iter().map(|c| col_norm(c)).collect();
    let sigma_max = sigmas.iter().cloned().fold(0.0, f64::max);
    let tol = resolve_rank_tol(rank_tol, sigma_max);

    let mut kernel = Vec::new();
    for (j, sigma) in sigmas.iter().enumerate() {
        if *sigma <= tol {
            kernel.push(v[j].clone());
        }
    }
    Ok(SubspaceBasis {
        ambient_dim: n,
        vectors: kernel,
    })
}

/// `dim(U ∩ V) = dim U + dim V - rank([U | V])` under `rank_tol`.
pub fn intersection_dim(u: &SubspaceBasis, v: &SubspaceBasis, rank_tol: f64) -> Result<usize> {
    if u.ambient_dim != v.ambient_dim {
        return Err(Error::DimensionMismatch {
            left: u.ambient_dim,
            right: v.ambient_dim,
        });
    }
    if u.dim() == 0 || v.dim() == 0 {
        return Ok(0);
    }
    let mut stacked: Vec<Vec<Complex64>> = Vec::with_capacity(u.dim() + v.dim());
    stacked.extend(u.vectors.iter().cloned());
    stacked.extend(v.vectors.iter().cloned());
    let r = rank_of_columns(&stacked, rank_tol);
    let d = (u.dim() + v.dim()).saturating_sub(r);
    Ok(d.min(u.dim()).min(v.dim()))
}

/// Numerical rank of a set of complex columns.
pub fn rank_of_columns(cols: &[Vec<Complex64>], rank_tol: f64) -> usize {
    let mut work: Vec<Vec<Complex64>> = cols.to_vec();
    jacobi_svd(&mut work);
    let sigmas: Vec<f64> = work.iter().map(|c| col_norm(c)).collect();
    let sigma_max = sigmas.iter().cloned().fold(0.0, f64::max);
    let tol = resolve_rank_tol(rank_tol, sigma_max);
    sigmas.iter().filter(|s| **s > tol).count()
}

/// Largest singular value of a real matrix.
pub fn largest_singular_value(m: &DenseMatrix) -> f64 {
    let mut cols: Vec<Vec<Complex64>> = (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .map(|i| Complex64::new(m.get(i, j), 0.0))
                .collect()
        })
        .collect();
    jacobi_svd(&mut cols);
    cols.iter().map(|c| col_norm(c)).fold(0.0, f64::max)
}

fn resolve_rank_tol(rank_tol: f64, sigma_max: f64) -> f64 {
    if rank_tol > 0.0 {
        rank_tol
    } else {
        DEFAULT_RANK_TOL * sigma_max.max(1.0)
    }
}

fn col_norm(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// One-sided Jacobi orthogonalization of the columns of `a` (in place).
/// Returns the accumulated right-multiplier V as columns: on exit
/// `a_original * V = a`, the columns of `a` are mutually orthogonal with
/// norms equal to the singular values, and V is unitary.
fn jacobi_svd(a: &mut [Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let ncols = a.len();
    let mut v: Vec<Vec<Complex64>> = (0..ncols)
        .map(|j| {
            (0..ncols)
                .map(|i| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    if ncols < 2 {
        return v;
    }

    let eps = f64::EPSILON * 16.0;
    const MAX_SWEEPS: usize = 64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..ncols - 1 {
            for q in (p + 1)..ncols {
                let app: f64 = a[p].iter().map(|z| z.norm_sqr()).sum();
                let aqq: f64 = a[q].iter().map(|z| z.norm_sqr()).sum();
                if app == 0.0 || aqq == 0.0 {
                    continue;
                }
                let apq: Complex64 = a[p]
                    .iter()
                    .zip(a[q].iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let mag = apq.norm();
                if mag <= eps * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;

                // Phase so the pivot becomes real positive, then a real
                // Jacobi rotation on the 2x2 Gram block.
                let w = apq.conj() / mag;
                for row in a[q].iter_mut() {
                    *row *= w;
                }
                for row in v[q].iter_mut() {
                    *row *= w;
                }

                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;

                for i in 0..a[p].len() {
                    let xp = a[p][i];
                    let xq = a[q][i];
                    a[p][i] = xp * c - xq * s;
                    a[q][i] = xp * s + xq * c;
                }
                #[allow(clippy::needless_range_loop)]
                for i in 0..ncols {
                    let xp = v[p][i];
                    let xq = v[q][i];
                    v[p][i] = xp * c - xq * s;
                    v[q][i] = xp * s + xq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    // Sort columns by descending norm, carrying V along.
    let mut order: Vec<usize> = (0..ncols).collect();
    let norms: Vec<f64> = a.iter().map(|c| col_norm(c)).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    let a_sorted: Vec<Vec<Complex64>> = order.iter().map(|&i| a[i].clone()).collect();
    let v_sorted: Vec<Vec<Complex64>> = order.iter().map(|&i| v[i].clone()).collect();
    a.clone_from_slice(&a_sorted);
    v_sorted
}
