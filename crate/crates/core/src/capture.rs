//! Distinct-eigenvalue capture analysis: does the quotient matrix of a
//! partition contain every distinct eigenvalue of the parent matrix?
//!
//! For equitable partitions the verdict is governed by the
//! eigenspace-intersection criterion: a value `λ` appears in the quotient
//! spectrum exactly when `E_λ ∩ W ≠ {0}`, where `W` is the column space of
//! the partition's characteristic matrix. This module computes both sides,
//! checks eigenvalue interlacing for symmetric parents, and searches for
//! minimal cell-split enlargements that recover missing eigenvalues.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::eigen::{
    self, cluster_values, eigen_values, multiset_contained, resolve_cluster_tol, SpectrumSummary,
};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::partition::{characteristic_matrix, quotient, Partition, QuotientResult};
use crate::subspace::{intersection_dim, nullspace, SubspaceBasis};

/// Tolerance knobs shared by the analysis entry points. A zero in any slot
/// selects that quantity's default:
///
/// * `equitable`: `1e-8 * max(1, ||M||_inf)`
/// * `cluster`:   `1e-6 * max(1, rho(M))`
/// * `rank`:      `1e-10 * max(1, sigma_max)`
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tolerances {
    pub equitable: f64,
    pub cluster: f64,
    pub rank: f64,
}

/// Capture verdict for one distinct parent eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueCapture {
    /// The distinct eigenvalue (cluster representative).
    pub value: Complex64,
    /// Its algebraic multiplicity in the parent.
    pub multiplicity: usize,
    /// Whether the value appears in the quotient spectrum.
    pub in_quotient: bool,
    /// Geometric multiplicity `dim ker(M - value I)`.
    pub eigenspace_dim: usize,
    /// `dim(E_value ∩ W)` against the partition subspace.
    pub intersection_dim_with_w: usize,
}

/// Full capture analysis of a matrix/partition pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CaptureReport {
    pub parent_spectrum: SpectrumSummary,
    pub quotient_spectrum: SpectrumSummary,
    pub per_eigenvalue: Vec<EigenvalueCapture>,
    /// True iff every distinct parent eigenvalue appears in the quotient.
    pub full_capture: bool,
    pub partition: Partition,
    pub equitable: bool,
    /// The quotient computation backing the verdicts.
    pub quotient: QuotientResult,
    /// For equitable partitions: whether the quotient spectrum embeds into
    /// the parent spectrum as a multiset (it must).
    pub quotient_contained_in_parent: bool,
    /// Cluster tolerance shared by both spectra and membership tests.
    pub cluster_tol_used: f64,
    /// Rank tolerance behind eigenspace and intersection dimensions.
    pub rank_tol_used: f64,
}

impl CaptureReport {
    /// Distinct parent eigenvalues missing from the quotient.
    pub fn missing(&self) -> Vec<Complex64> {
        self.per_eigenvalue
            .iter()
            .filter(|e| !e.in_quotient)
            .map(|e| e.value)
            .collect()
    }
}

/// Orthonormal basis of `W = im P`, the vectors constant on each cell.
fn partition_subspace(p: &Partition) -> SubspaceBasis {
    let cm = characteristic_matrix(p);
    let cols: Vec<Vec<Complex64>> = p
        .cells()
        .iter()
        .enumerate()
        .map(|(j, cell)| {
            let scale = 1.0 / (cell.len() as f64).sqrt();
            (0..cm.rows())
                .map(|i| Complex64::new(cm.get(i, j) * scale, 0.0))
                .collect()
        })
        .collect();
    SubspaceBasis::new(p.n(), cols, 0.0).expect("indicator columns are orthonormal")
}

/// Analyzes which distinct eigenvalues of `m` the quotient under `p`
/// captures.
pub fn analyze_capture(m: &DenseMatrix, p: &Partition, tol: Tolerances) -> Result<CaptureReport> {
    let n = m.require_square()?;
    if p.n() != n {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: n,
        });
    }

    let qr = quotient(m, p, tol.equitable)?;

    let parent_raw = eigen_values(m)?;
    let rho = parent_raw.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let cluster_tol = resolve_cluster_tol(tol.cluster, rho);
    let parent_spectrum = cluster_values(&parent_raw, cluster_tol);

    let quotient_raw = eigen_values(&qr.quotient)?;
    let quotient_spectrum = cluster_values(&quotient_raw, cluster_tol);

    let w = partition_subspace(p);
    let mut per_eigenvalue = Vec::with_capacity(parent_spectrum.distinct_count());
    for &(value, multiplicity) in parent_spectrum.distinct() {
        let eigenspace = nullspace(m, value, tol.rank)?;
        let inter = intersection_dim(&eigenspace, &w, tol.rank)?;
        per_eigenvalue.push(EigenvalueCapture {
            value,
            multiplicity,
            in_quotient: quotient_spectrum.contains(value, cluster_tol),
            eigenspace_dim: eigenspace.dim(),
            intersection_dim_with_w: inter,
        });
    }

    let full_capture = per_eigenvalue.iter().all(|e| e.in_quotient);
    let quotient_contained_in_parent = !qr.equitable
        || multiset_contained(
            &quotient_spectrum.multiset(),
            &parent_spectrum.multiset(),
            cluster_tol,
        );

    Ok(CaptureReport {
        parent_spectrum,
        quotient_spectrum,
        per_eigenvalue,
        full_capture,
        partition: p.clone(),
        equitable: qr.equitable,
        quotient: qr,
        quotient_contained_in_parent,
        cluster_tol_used: cluster_tol,
        rank_tol_used: tol.rank,
    })
}

/// Membership of `value` in the quotient spectrum via the
/// eigenspace-intersection criterion. Requires an equitable partition:
/// returns `(value ∈ σ(Q), dim(E_value ∩ W))`.
pub fn criterion_membership(
    m: &DenseMatrix,
    p: &Partition,
    value: Complex64,
    tol: Tolerances,
) -> Result<(bool, usize)> {
    let qr = quotient(m, p, tol.equitable)?;
    if !qr.equitable {
        return Err(Error::NotEquitable {
            deviation: qr.max_row_sum_deviation,
        });
    }
    let eigenspace = nullspace(m, value, tol.rank)?;
    let w = partition_subspace(p);
    let dim = intersection_dim(&eigenspace, &w, tol.rank)?;
    Ok((dim >= 1, dim))
}

/// Interlacing of the quotient spectrum against the parent spectrum, for
/// symmetric parents.
#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingReport {
    /// Parent eigenvalues, descending.
    pub parent_sorted: Vec<f64>,
    /// Quotient eigenvalues, descending.
    pub quotient_sorted: Vec<f64>,
    /// Whether `s_i >= s'_i >= s_(n-m+i)` holds for every `i` within tol.
    pub interlaces: bool,
    /// Whether a split index aligns the top-k and bottom-(m-k) exactly.
    pub tight: bool,
    /// Smallest witnessing split index when `tight`.
    pub tight_split_k: Option<usize>,
    /// Comparison tolerance used.
    pub tolerance_used: f64,
}

/// Checks the interlacing inequalities between `m` and the averaged
/// quotient under `p`. The parent must be symmetric.
///
/// The quotient spectrum is computed from the symmetric normalized quotient
/// `D^(-1/2) Pᵀ M P D^(-1/2)` (similar to the row-sum quotient), which keeps
/// everything real.
pub fn check_interlacing(m: &DenseMatrix, p: &Partition, tol: f64) -> Result<InterlacingReport> {
    let n = m.require_square()?;
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric {
            asymmetry: m.symmetry_gap(),
        });
    }
    if p.n() != n {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: n,
        });
    }
    let tol = if tol > 0.0 {
        tol
    } else {
        1e-8 * m.norm_inf().max(1.0)
    };

    let parent_sorted = eigen::eigen_decompose(m, 0.0)?.real_multiset_descending();

    let k = p.cell_count();
    let mut s = DenseMatrix::zeros(k, k);
    for (bi, rows) in p.cells().iter().enumerate() {
        for (bj, cols) in p.cells().iter().enumerate() {
            let mut sum = 0.0;
            for &r in rows {
                for &c in cols {
                    sum += m.get(r - 1, c - 1);
                }
            }
            s.set(
                bi,
                bj,
                sum / ((rows.len() as f64).sqrt() * (cols.len() as f64).sqrt()),
            );
        }
    }
    let quotient_sorted = eigen::eigen_decompose(&s, 0.0)?.real_multiset_descending();

    let (interlaces, tight, tight_split_k) =
        interlacing_verdict(&parent_sorted, &quotient_sorted, tol);

    Ok(InterlacingReport {
        parent_sorted,
        quotient_sorted,
        interlaces,
        tight,
        tight_split_k,
        tolerance_used: tol,
    })
}

/// The bare inequality check on two descending sequences.
pub fn interlacing_verdict(parent: &[f64], quot: &[f64], tol: f64) -> (bool, bool, Option<usize>) {
    let n = parent.len();
    let m = quot.len();
    if m > n {
        return (false, false, None);
    }
    let interlaces =
        (0..m).all(|i| parent[i] >= quot[i] - tol && quot[i] >= parent[n - m + i] - tol);
    let mut split = None;
    if interlaces {
        'outer: for k in 0..=m {
            for i in 0..k {
                if (parent[i] - quot[i]).abs() > tol {
                    continue 'outer;
                }
            }
            for i in k..m {
                if (quot[i] - parent[n - m + i]).abs() > tol {
                    continue 'outer;
                }
            }
            split = Some(k);
            break;
        }
    }
    (interlaces, split.is_some(), split)
}

/// Whether the spectral radii of `m` and its equitable quotient agree to a
/// relative tolerance (`0` selects `1e-6`).
pub fn spectral_radius_coincides(m: &DenseMatrix, p: &Partition, tol: f64) -> Result<bool> {
    let qr = quotient(m, p, 0.0)?;
    if !qr.equitable {
        return Err(Error::NotEquitable {
            deviation: qr.max_row_sum_deviation,
        });
    }
    let rho_m = eigen_values(m)?
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let rho_q = eigen_values(&qr.quotient)?
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let factor = if tol > 0.0 { tol } else { 1e-6 };
    Ok((rho_m - rho_q).abs() <= factor * rho_m.max(1.0))
}

/// Breadth-first search over singleton cell splits that recovers full
/// capture. Returns every minimal-split equitable partition achieving it
/// (canonically ordered), or an empty list when none exists within
/// `max_splits` (which must be 1, 2 or 3).
///
/// Within a cell, elements whose transposition is a symmetry of `m` give
/// interchangeable splits; only the smallest index per symmetry class is
/// explored.
pub fn search_enlargement(
    m: &DenseMatrix,
    p: &Partition,
    max_splits: usize,
    tol: Tolerances,
) -> Result<Vec<(Partition, CaptureReport)>> {
    let n = m.require_square()?;
    if p.n() != n {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: n,
        });
    }
    if !(1..=3).contains(&max_splits) {
        return Err(Error::InvalidParams(format!(
            "max_splits must be 1, 2 or 3, got {max_splits}"
        )));
    }
    let seed_q = quotient(m, p, tol.equitable)?;
    if !seed_q.equitable {
        return Err(Error::NotEquitable {
            deviation: seed_q.max_row_sum_deviation,
        });
    }

    let seed_report = analyze_capture(m, p, tol)?;
    if seed_report.full_capture {
        return Ok(vec![(p.clone(), seed_report)]);
    }

    let mut visited: BTreeSet<Partition> = BTreeSet::new();
    visited.insert(p.clone());
    let mut frontier: Vec<Partition> = vec![p.clone()];

    for _level in 1..=max_splits {
        let mut next: Vec<Partition> = Vec::new();
        for part in &frontier {
            for (ci, cell) in part.cells().iter().enumerate() {
                if cell.len() < 2 {
                    continue;
                }
                for &e in representative_elements(m, cell).iter() {
                    let child = part.split_cell(ci + 1, e)?;
                    if visited.insert(child.clone()) {
                        next.push(child);
                    }
                }
            }
        }
        next.sort();

        let mut solutions = Vec::new();
        for child in &next {
            let qr = quotient(m, child, tol.equitable)?;
            if !qr.equitable {
                continue;
            }
            let report = analyze_capture(m, child, tol)?;
            if report.full_capture {
                solutions.push((child.clone(), report));
            }
        }
        if !solutions.is_empty() {
            return Ok(solutions);
        }
        frontier = next;
    }
    Ok(Vec::new())
}

/// Smallest representative of each transposition-symmetry class inside a
/// cell: `e ~ f` when swapping indices `e` and `f` leaves `m` unchanged.
fn representative_elements(m: &DenseMatrix, cell: &[usize]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    'next: for &e in cell {
        for &r in &reps {
            if transposition_symmetric(m, r - 1, e - 1) {
                continue 'next;
            }
        }
        reps.push(e);
    }
    reps
}

fn transposition_symmetric(m: &DenseMatrix, a: usize, b: usize) -> bool {
    let n = m.order();
    if m.get(a, a) != m.get(b, b) || m.get(a, b) != m.get(b, a) {
        return false;
    }
    for k in 0..n {
        if k == a || k == b {
            continue;
        }
        if m.get(a, k) != m.get(b, k) || m.get(k, a) != m.get(k, b) {
            return false;
        }
    }
    true
}
