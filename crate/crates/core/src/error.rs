//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by matrix kernels, partition operations, capture
/// analysis, constructions and graph builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix failed basic validation (shape, finiteness).
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// A partition failed basic validation (empty cell, overlap, coverage).
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// The QR iteration did not converge within the sweep budget.
    #[error("eigenvalue iteration did not converge within {budget} sweeps")]
    NonConvergence {
        /// Sweep budget that was exhausted.
        budget: usize,
    },

    /// The requested operation only supports small orders.
    #[error("order {n} exceeds the supported maximum {max}")]
    OrderTooLarge {
        /// Order of the offending input.
        n: usize,
        /// Maximum supported order.
        max: usize,
    },

    /// Two subspaces live in different ambient dimensions.
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch {
        /// Ambient dimension of the first operand.
        left: usize,
        /// Ambient dimension of the second operand.
        right: usize,
    },

    /// Two partitions (or a matrix and a partition) disagree on the index-set size.
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch {
        /// Size of the first operand.
        left: usize,
        /// Size of the second operand.
        right: usize,
    },

    /// `split_cell` was asked to split at an element outside the named cell.
    #[error("element {element} is not in cell {cell_index}")]
    ElementNotInCell {
        /// The element that was requested.
        element: usize,
        /// The 1-based cell index.
        cell_index: usize,
    },

    /// `split_cell` was asked to split a singleton cell.
    #[error("cell {cell_index} has fewer than 2 elements")]
    CellTooSmall {
        /// The 1-based cell index.
        cell_index: usize,
    },

    /// A cell index was out of range.
    #[error("cell index {cell_index} out of range (partition has {cells} cells)")]
    InvalidCellIndex {
        /// The offending 1-based index.
        cell_index: usize,
        /// Number of cells in the partition.
        cells: usize,
    },

    /// An operation that requires an equitable partition received one that is not.
    #[error("partition is not equitable (max row-sum deviation {deviation:e})")]
    NotEquitable {
        /// Worst block row-sum deviation observed.
        deviation: f64,
    },

    /// An operation that requires a symmetric matrix received one that is not.
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric {
        /// `max |m_ij - m_ji|` observed.
        asymmetry: f64,
    },

    /// The supplied repeated eigenvalue is not an eigenvalue of the seed quotient.
    #[error("alpha = {alpha} is not an eigenvalue of the quotient (residual {residual:e})")]
    AlphaNotEigenvalue {
        /// The rejected value.
        alpha: f64,
        /// Distance to the nearest quotient eigenvalue.
        residual: f64,
    },

    /// The supplied eigenvalue pair does not match the quotient spectrum.
    #[error("supplied eigenvalues do not match the quotient spectrum")]
    EigenvalueMismatch,

    /// The seed quotient has a repeated (or non-real) spectrum where distinct
    /// real eigenvalues are required.
    #[error("quotient spectrum is degenerate: {0}")]
    DegenerateQuotient(String),

    /// The block-scaling parameter must be nonzero.
    #[error("alpha must be nonzero")]
    AlphaZero,

    /// A family was given out-of-range or malformed parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Distance-based matrices require a connected graph.
    #[error("graph is disconnected; distance-based matrices are undefined")]
    Disconnected,

    /// A weighted adjacency matrix was requested without a weight function.
    #[error("weighted adjacency requires a weight function")]
    MissingPhi,

    /// Custom graphs carry no designated partition.
    #[error("graph has no designated partition; run equitable refinement instead")]
    NoDesignatedPartition,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
