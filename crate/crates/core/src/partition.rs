//! Partitions of the index set `{1, ..., n}`: characteristic matrices,
//! (averaged) quotients with equitability verdicts, coarsest equitable
//! refinement, cell splitting and full enumeration.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Default equitability tolerance factor: `1e-8 * max(1, ||M||_inf)`.
pub const DEFAULT_EQUITABLE_TOL: f64 = 1e-8;

/// Largest `n` accepted by [`enumerate_partitions`] (Bell(10) = 115975).
pub const MAX_ENUMERATION_ORDER: usize = 10;

/// An ordered partition of `{1, ..., n}` into disjoint nonempty cells.
///
/// Cells are kept canonical: indices inside a cell ascend, and cells are
/// ordered by their smallest element. Indices are 1-based throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from cells, validating disjointness and coverage,
    /// then canonicalizing.
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("index set must be nonempty".into()));
        }
        let mut seen = vec![false; n + 1];
        let mut count = 0usize;
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::InvalidPartition("empty cell".into()));
            }
            for &e in cell {
                if e == 0 || e > n {
                    return Err(Error::InvalidPartition(format!(
                        "index {e} outside 1..={n}"
                    )));
                }
                if seen[e] {
                    return Err(Error::InvalidPartition(format!("index {e} repeated")));
                }
                seen[e] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::InvalidPartition(format!(
                "cells cover {count} of {n} indices"
            )));
        }
        let mut cells = cells;
        for cell in cells.iter_mut() {
            cell.sort_unstable();
        }
        cells.sort_by_key(|c| c[0]);
        Ok(Self { n, cells })
    }

    /// The one-cell partition `{{1, ..., n}}`.
    pub fn trivial(n: usize) -> Self {
        Self::new(n, vec![(1..=n).collect()]).expect("trivial partition is valid")
    }

    /// The all-singletons partition.
    pub fn discrete(n: usize) -> Self {
        Self::new(n, (1..=n).map(|i| vec![i]).collect()).expect("discrete partition is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of cells.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// 0-based cell index containing element `e` (1-based).
    fn cell_of(&self, e: usize) -> usize {
        self.cells
            .iter()
            .position(|c| c.binary_search(&e).is_ok())
            .expect("element belongs to some cell")
    }

    /// True iff every cell of `self` is contained in some cell of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        for cell in &self.cells {
            let target = other.cell_of(cell[0]);
            if !cell
                .iter()
                .all(|&e| other.cells[target].binary_search(&e).is_ok())
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Splits cell `cell_index` (1-based) at `element`, producing
    /// `{element}` and the remainder.
    pub fn split_cell(&self, cell_index: usize, element: usize) -> Result<Partition> {
        if cell_index == 0 || cell_index > self.cells.len() {
            return Err(Error::InvalidCellIndex {
                cell_index,
                cells: self.cells.len(),
            });
        }
        let cell = &self.cells[cell_index - 1];
        if cell.binary_search(&element).is_err() {
            return Err(Error::ElementNotInCell {
                element,
                cell_index,
            });
        }
        if cell.len() < 2 {
            return Err(Error::CellTooSmall { cell_index });
        }
        let mut cells: Vec<Vec<usize>> = Vec::with_capacity(self.cells.len() + 1);
        for (i, c) in self.cells.iter().enumerate() {
            if i == cell_index - 1 {
                cells.push(vec![element]);
                cells.push(c.iter().copied().filter(|&e| e != element).collect());
            } else {
                cells.push(c.clone());
            }
        }
        Partition::new(self.n, cells)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, cell) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (k, e) in cell.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// The n x k 0/1 characteristic matrix of a partition; column `j` indicates
/// cell `j`.
pub fn characteristic_matrix(p: &Partition) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(p.n(), p.cell_count());
    for (j, cell) in p.cells().iter().enumerate() {
        for &e in cell {
            m.set(e - 1, j, 1.0);
        }
    }
    m
}

/// Averaged quotient matrix together with the equitability verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientResult {
    /// `k x k` quotient; entry `(i, j)` is the mean over rows of cell `i`
    /// of the row sums into cell `j`.
    pub quotient: DenseMatrix,
    /// Whether every block had constant row sums within the tolerance used.
    pub equitable: bool,
    /// Worst observed `|row sum - block mean|` over all blocks.
    pub max_row_sum_deviation: f64,
    /// Per-block row sums for diagnostics: `row_sum_table[i][j]` lists the
    /// sums into cell `j` for each row of cell `i`.
    pub row_sum_table: Vec<Vec<Vec<f64>>>,
    /// Tolerance that produced the verdict.
    pub tolerance_used: f64,
}

/// Resolves an equitability tolerance: `0` means
/// `1e-8 * max(1, ||M||_inf)`.
pub fn resolve_equitable_tol(tol: f64, m: &DenseMatrix) -> f64 {
    if tol > 0.0 {
        tol
    } else {
        DEFAULT_EQUITABLE_TOL * m.norm_inf().max(1.0)
    }
}

/// Computes the averaged quotient of `m` under `p` and tests equitability.
pub fn quotient(m: &DenseMatrix, p: &Partition, tol: f64) -> Result<QuotientResult> {
    let n = m.require_square()?;
    if p.n() != n {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: n,
        });
    }
    let tol = resolve_equitable_tol(tol, m);
    let k = p.cell_count();
    let mut q = DenseMatrix::zeros(k, k);
    let mut table: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); k]; k];
    let mut max_dev = 0.0f64;

    for (bi, rows) in p.cells().iter().enumerate() {
        for (bj, cols) in p.cells().iter().enumerate() {
            let sums: Vec<f64> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| m.get(r - 1, c - 1)).sum())
                .collect();
            let mean = sums.iter().sum::<f64>() / sums.len() as f64;
            for s in &sums {
                max_dev = max_dev.max((s - mean).abs());
            }
            q.set(bi, bj, mean);
            table[bi][bj] = sums;
        }
    }

    Ok(QuotientResult {
        quotient: q,
        equitable: max_dev <= tol,
        max_row_sum_deviation: max_dev,
        row_sum_table: table,
        tolerance_used: tol,
    })
}

/// Coarsest equitable partition refining `seed`, by iterated row-sum
/// signature refinement. Deterministic; the discrete partition is the
/// worst-case fixed point.
pub fn coarsest_equitable_refinement(
    m: &DenseMatrix,
    seed: &Partition,
    tol: f64,
) -> Result<Partition> {
    let n = m.require_square()?;
    if seed.n() != n {
        return Err(Error::SizeMismatch {
            left: seed.n(),
            right: n,
        });
    }
    let tol = resolve_equitable_tol(tol, m);
    // Rows whose signatures differ by more than tol/2 from their group
    // representative split; pairwise spread inside a group stays <= tol, so
    // the fixed point passes the quotient equitability test at tol.
    let group_tol = tol / 2.0;

    let mut current = seed.clone();
    loop {
        let next = refine_once(m, &current, group_tol)?;
        if next == current {
            return Ok(next);
        }
        current = next;
    }
}

/// One refinement sweep: split every cell by the signature of row sums into
/// the current cells. Exposed for the fixed-point property tests.
pub fn refine_once(m: &DenseMatrix, p: &Partition, group_tol: f64) -> Result<Partition> {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for cell in p.cells() {
        // Group rows of this cell by signature; first match wins, so the
        // outcome does not depend on float ordering beyond the tolerance.
        let mut groups: Vec<(Vec<f64>, Vec<usize>)> = Vec::new();
        for &r in cell {
            let sig: Vec<f64> = p
                .cells()
                .iter()
                .map(|cols| cols.iter().map(|&c| m.get(r - 1, c - 1)).sum())
                .collect();
            match groups
                .iter_mut()
                .find(|(rep, _)| sig_close(rep, &sig, group_tol))
            {
                Some((_, members)) => members.push(r),
                None => groups.push((sig, vec![r])),
            }
        }
        for (_, members) in groups {
            cells.push(members);
        }
    }
    Partition::new(p.n(), cells)
}

fn sig_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Iterator over all set partitions of `{1, ..., n}` in canonical
/// (restricted-growth-string) order.
pub struct PartitionIter {
    n: usize,
    rgs: Vec<usize>,
    done: bool,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let item = partition_from_rgs(self.n, &self.rgs);

        // Advance the restricted growth string in lexicographic order.
        let mut i = self.n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let max_prefix = self.rgs[..i].iter().copied().max().unwrap();
            if self.rgs[i] <= max_prefix {
                self.rgs[i] += 1;
                for j in (i + 1)..self.n {
                    self.rgs[j] = 0;
                }
                break;
            }
        }
        Some(item)
    }
}

fn partition_from_rgs(n: usize, rgs: &[usize]) -> Partition {
    let blocks = rgs.iter().copied().max().unwrap() + 1;
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); blocks];
    for (i, &b) in rgs.iter().enumerate() {
        cells[b].push(i + 1);
    }
    Partition::new(n, cells).expect("growth string encodes a valid partition")
}

/// Streams every partition of `{1, ..., n}` exactly once; `n` is capped at
/// [`MAX_ENUMERATION_ORDER`].
pub fn enumerate_partitions(n: usize) -> Result<PartitionIter> {
    if n == 0 {
        return Err(Error::InvalidPartition("index set must be nonempty".into()));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(PartitionIter {
        n,
        rgs: vec![0; n],
        done: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<f64>]) -> DenseMatrix {
        DenseMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn canonicalization_sorts_cells_and_elements() {
        let p = Partition::new(4, vec![vec![4, 3], vec![2, 1]]).unwrap();
        assert_eq!(p.cells(), &[vec![1, 2], vec![3, 4]]);
        assert_eq!(p.to_string(), "{1 2} {3 4}");
    }

    #[test]
    fn validation_rejects_bad_cells() {
        assert!(Partition::new(3, vec![vec![1, 2]]).is_err()); // missing 3
        assert!(Partition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err()); // overlap
        assert!(Partition::new(3, vec![vec![1, 2, 3], vec![]]).is_err()); // empty
        assert!(Partition::new(3, vec![vec![1, 2, 4]]).is_err()); // out of range
    }

    #[test]
    fn characteristic_matrix_examples() {
        let p = Partition::new(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let cm = characteristic_matrix(&p);
        assert_eq!(cm.entries(), &[1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);

        let discrete = Partition::discrete(3);
        assert_eq!(characteristic_matrix(&discrete), DenseMatrix::identity(3));

        let p = Partition::new(4, vec![vec![1], vec![2], vec![3, 4]]).unwrap();
        let cm = characteristic_matrix(&p);
        assert_eq!(cm.cols(), 3);
        assert_eq!(
            (0..4).map(|i| cm.get(i, 2)).collect::<Vec<_>>(),
            vec![0.0, 0.0, 1.0, 1.0]
        );
    }

    #[test]
    fn quotient_of_counterexample() {
        let mat = m(&[
            vec![10.0, -1.0, -1.0, -4.0],
            vec![-1.0, 10.0, -1.0, -4.0],
            vec![6.0, 6.0, -14.0, 1.0],
            vec![6.0, 6.0, 1.0, -14.0],
        ]);
        let p = Partition::new(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let q = quotient(&mat, &p, 0.0).unwrap();
        assert!(q.equitable);
        assert_eq!(q.quotient.entries(), &[9.0, -5.0, 12.0, -13.0]);
        assert_eq!(q.max_row_sum_deviation, 0.0);
    }

    #[test]
    fn averaged_quotient_of_unequal_rows() {
        let mat = m(&[vec![1.0, 0.0], vec![0.0, 3.0]]);
        let q = quotient(&mat, &Partition::trivial(2), 0.0).unwrap();
        assert!(!q.equitable);
        assert_eq!(q.quotient.entries(), &[2.0]);
        assert_eq!(q.max_row_sum_deviation, 1.0);
    }

    #[test]
    fn discrete_quotient_is_the_matrix() {
        let mat = m(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let q = quotient(&mat, &Partition::discrete(2), 0.0).unwrap();
        assert!(q.equitable);
        assert_eq!(q.quotient, mat);
    }

    #[test]
    fn equitable_quotient_satisfies_mp_eq_pq() {
        let mat = m(&[
            vec![10.0, -1.0, -1.0, -4.0],
            vec![-1.0, 10.0, -1.0, -4.0],
            vec![6.0, 6.0, -14.0, 1.0],
            vec![6.0, 6.0, 1.0, -14.0],
        ]);
        let p = Partition::new(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let qr = quotient(&mat, &p, 0.0).unwrap();
        let cm = characteristic_matrix(&p);
        let mp = mat.matmul(&cm);
        let pq = cm.matmul(&qr.quotient);
        assert!(mp.max_abs_diff(&pq) <= qr.tolerance_used);
    }

    #[test]
    fn refinement_of_identity_is_trivial() {
        let r =
            coarsest_equitable_refinement(&DenseMatrix::identity(4), &Partition::trivial(4), 0.0)
                .unwrap();
        assert_eq!(r, Partition::trivial(4));
    }

    #[test]
    fn refinement_reaches_fixed_point() {
        let mat = m(&[
            vec![0.0, 1.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
        ]);
        let r = coarsest_equitable_refinement(&mat, &Partition::trivial(4), 0.0).unwrap();
        let q = quotient(&mat, &r, 0.0).unwrap();
        assert!(q.equitable);
        let again = refine_once(&mat, &r, q.tolerance_used / 2.0).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn split_cell_examples() {
        let p = Partition::new(4, vec![vec![1], vec![2, 3, 4]]).unwrap();
        let s = p.split_cell(2, 2).unwrap();
        assert_eq!(s.cells(), &[vec![1], vec![2], vec![3, 4]]);

        let p = Partition::new(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let s = p.split_cell(1, 1).unwrap();
        assert_eq!(s.cells(), &[vec![1], vec![2], vec![3, 4]]);

        assert!(matches!(
            p.split_cell(1, 3),
            Err(Error::ElementNotInCell {
                element: 3,
                cell_index: 1
            })
        ));
        let singleton = Partition::new(2, vec![vec![1], vec![2]]).unwrap();
        assert!(matches!(
            singleton.split_cell(1, 1),
            Err(Error::CellTooSmall { cell_index: 1 })
        ));
    }

    #[test]
    fn split_cell_refines_and_adds_one_cell() {
        let p = Partition::new(5, vec![vec![1, 2, 3], vec![4, 5]]).unwrap();
        let s = p.split_cell(1, 2).unwrap();
        assert!(s.refines(&p).unwrap());
        assert_eq!(s.cell_count(), p.cell_count() + 1);
    }

    #[test]
    fn enumeration_counts_match_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877];
        for (n, want) in bell.iter().enumerate().skip(1) {
            let count = enumerate_partitions(n).unwrap().count();
            assert_eq!(count, *want, "Bell({n})");
        }
        assert!(matches!(
            enumerate_partitions(11),
            Err(Error::OrderTooLarge { n: 11, max: 10 })
        ));
        let only: Vec<Partition> = enumerate_partitions(1).unwrap().collect();
        assert_eq!(only, vec![Partition::trivial(1)]);
    }

    #[test]
    fn refines_is_reflexive_and_detects_crossing() {
        let fine = Partition::discrete(3);
        let coarse = Partition::new(3, vec![vec![1, 2], vec![3]]).unwrap();
        assert!(fine.refines(&coarse).unwrap());
        assert!(!coarse.refines(&fine).unwrap());
        assert!(coarse.refines(&coarse).unwrap());
        let crossing = Partition::new(3, vec![vec![1], vec![2, 3]]).unwrap();
        assert!(!coarse.refines(&crossing).unwrap());
        let other = Partition::discrete(4);
        assert!(fine.refines(&other).is_err());
    }
}
