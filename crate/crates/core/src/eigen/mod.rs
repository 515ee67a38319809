//! Eigenvalue computation and spectrum summaries.
//!
//! Symmetric inputs (detected at `1e-12 * max(1, ||M||_inf)`) are routed to
//! a tridiagonal QL solver for guaranteed-real output; everything else goes
//! through balancing, Hessenberg reduction and Francis double-shift QR.

mod general;
mod symmetric;

use num_complex::Complex64;

use crate::error::Result;
use crate::matrix::DenseMatrix;

/// QR sweep budget, per matrix order: `100 * n` iterations before
/// [`crate::Error::NonConvergence`].
pub const SWEEPS_PER_ORDER: usize = 100;

/// Relative tolerance used to cluster nearby computed eigenvalues into one
/// distinct value when the caller does not supply one: `1e-6 * max(1, rho)`.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

/// Distinct eigenvalues of a matrix with algebraic multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    eigenvalues: Vec<(Complex64, usize)>,
    cluster_tolerance: f64,
    spectral_radius: f64,
}

impl SpectrumSummary {
    /// Distinct values with multiplicities, ordered by descending real part,
    /// then descending imaginary part.
    pub fn distinct(&self) -> &[(Complex64, usize)] {
        &self.eigenvalues
    }

    /// Number of distinct values.
    pub fn distinct_count(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Sum of multiplicities (the order of the source matrix).
    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|(_, m)| m).sum()
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        self.spectral_radius
    }

    /// Tolerance that separated the listed distinct values.
    pub fn cluster_tolerance(&self) -> f64 {
        self.cluster_tolerance
    }

    /// Whether `value` matches one of the distinct values within `tol`.
    pub fn contains(&self, value: Complex64, tol: f64) -> bool {
        self.eigenvalues
            .iter()
            .any(|(v, _)| (v - value).norm() <= tol)
    }

    /// The full eigenvalue multiset, each distinct value repeated by its
    /// multiplicity.
    pub fn multiset(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for (v, m) in &self.eigenvalues {
            out.extend(std::iter::repeat_n(*v, *m));
        }
        out
    }

    /// Real parts of the full multiset, descending. Only meaningful when all
    /// values are real (symmetric sources).
    pub fn real_multiset_descending(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = self.multiset().iter().map(|v| v.re).collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals
    }
}

/// Raw eigenvalues (with repetition), ordered by descending real part then
/// descending imaginary part.
pub fn eigen_values(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    let n = m.require_square()?;
    let budget = SWEEPS_PER_ORDER * n;
    let mut vals = if m.is_symmetric() {
        symmetric::eigenvalues(m, budget)?
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect::<Vec<_>>()
    } else {
        general::eigenvalues(m, budget)?
    };
    sort_complex_desc(&mut vals);
    Ok(vals)
}

/// Clusters the eigenvalues of `m` into distinct values with multiplicities.
///
/// `tol = 0` selects the default cluster tolerance
/// `1e-6 * max(1, rho(M))`. Clustered conjugate noise collapses onto the
/// real axis: any cluster mean with `|Im| <= tol` is reported as real.
pub fn eigen_decompose(m: &DenseMatrix, tol: f64) -> Result<SpectrumSummary> {
    let vals = eigen_values(m)?;
    let rho_raw = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let tol = resolve_cluster_tol(tol, rho_raw);
    Ok(cluster_values(&vals, tol))
}

/// Resolves a user cluster tolerance: `0` means `1e-6 * max(1, rho)`.
pub fn resolve_cluster_tol(tol: f64, rho: f64) -> f64 {
    if tol > 0.0 {
        tol
    } else {
        DEFAULT_CLUSTER_TOL * rho.max(1.0)
    }
}

/// Groups an already computed eigenvalue list into distinct values.
pub fn cluster_values(sorted_desc: &[Complex64], tol: f64) -> SpectrumSummary {
    let mut vals = sorted_desc.to_vec();
    sort_complex_desc(&mut vals);

    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for v in vals {
        match clusters.last_mut() {
            Some((mean, count)) if (*mean - v).norm() <= tol => {
                // Running mean keeps the representative centered.
                let c = *count as f64;
                *mean = (*mean * c + v) / (c + 1.0);
                *count += 1;
            }
            _ => clusters.push((v, 1)),
        }
    }
    for (v, _) in clusters.iter_mut() {
        if v.im.abs() <= tol {
            v.im = 0.0;
        }
    }
    sort_clusters_desc(&mut clusters);
    let spectral_radius = clusters.iter().map(|(v, _)| v.norm()).fold(0.0, f64::max);
    SpectrumSummary {
        eigenvalues: clusters,
        cluster_tolerance: tol,
        spectral_radius,
    }
}

/// Deterministic descending order: by real part, then imaginary part.
pub fn sort_complex_desc(vals: &mut [Complex64]) {
    vals.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
}

fn sort_clusters_desc(vals: &mut [(Complex64, usize)]) {
    vals.sort_by(|(a, _), (b, _)| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
}

/// Greedy nearest-neighbor multiset inclusion: every value of `sub` (with
/// multiplicity) must match a distinct remaining value of `sup` within `tol`.
pub fn multiset_contained(sub: &[Complex64], sup: &[Complex64], tol: f64) -> bool {
    let mut used = vec![false; sup.len()];
    'outer: for v in sub {
        let mut best: Option<(usize, f64)> = None;
        for (i, w) in sup.iter().enumerate() {
            if used[i] {
                continue;
            }
            let d = (v - w).norm();
            if d <= tol && best.is_none_or(|(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        if let Some((i, _)) = best {
            used[i] = true;
            continue 'outer;
        }
        return false;
    }
    true
}
