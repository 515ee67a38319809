//! Equitable partitions, quotient matrices and distinct-eigenvalue capture
//! analysis for dense real matrices.
//!
//! The crate answers one recurring question: given a square matrix `M` and a
//! partition of its index set, does the (much smaller) quotient matrix `Q`
//! already carry every distinct eigenvalue of `M`? Around that sit:
//!
//! * a small dense kernel — eigenvalues, characteristic polynomials,
//!   nullspaces and subspace intersections ([`matrix`], [`eigen`], [`poly`],
//!   [`subspace`]);
//! * partitions of the index set with equitability tests, quotient
//!   computation, coarsest equitable refinement and enumeration
//!   ([`partition`]);
//! * capture reports, the eigenspace-intersection membership criterion,
//!   interlacing checks and minimal-enlargement search ([`capture`]);
//! * parameterized matrix families with prescribed spectra ([`construct`]);
//! * graph families and their associated matrices, from adjacency to the
//!   distance signless Laplacian ([`graph`]).
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything is safe to call concurrently.

pub mod capture;
pub mod construct;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod partition;
pub mod poly;
pub mod subspace;

pub use num_complex::Complex64;

pub use capture::{
    analyze_capture, check_interlacing, criterion_membership, search_enlargement,
    spectral_radius_coincides, CaptureReport, InterlacingReport, Tolerances,
};
pub use construct::ConstructedMatrix;
pub use eigen::{eigen_decompose, eigen_values, SpectrumSummary};
pub use error::{Error, Result};
pub use graph::{
    build_graph, graph_matrix, paper_partition, weight_presets, Graph, GraphFamily, MatrixKind,
    WeightFunction,
};
pub use matrix::DenseMatrix;
pub use partition::{
    characteristic_matrix, coarsest_equitable_refinement, enumerate_partitions, quotient,
    Partition, QuotientResult,
};
pub use poly::char_poly;
pub use subspace::{intersection_dim, nullspace, SubspaceBasis};
