//! Exact computation of Jordan-type invariants of matrices over the
//! rationals and prime fields, explicit degeneration families between the
//! semisimple, fixed-Jordan-type and equipotent matrix varieties, and
//! brute-force verification of their shared centralizer and fixed-space
//! dimensions by finite-field point counting.
//!
//! Everything is exact: arbitrary-precision rationals or residues mod p,
//! no floating point anywhere.

pub mod checkers;
pub mod error;
pub mod grassmann;
pub mod jordan;
pub mod matrix;
pub mod partition;
pub mod poly;
pub mod scalar;
pub mod variety;
pub mod witness;

pub use checkers::{
    check_sandwich_full, check_sum_theorem, exhaustive_sum_scan, Branch, CheckReport,
    SandwichOptions, SandwichVerification, ScanReport, SumTheoremInstance,
};
pub use error::Error;
pub use grassmann::{
    count_fixed_subspaces, count_fixed_subspaces_with, dimension_by_interpolation,
    gaussian_binomial, gaussian_binomial_poly, semisimple_count_polynomial, CountOptions,
    FixedCountSample, InterpolationOutcome,
};
pub use jordan::{jordan_block, jordan_type_of, ConcreteJordanData, JordanData};
pub use matrix::Matrix;
pub use partition::Partition;
pub use poly::Poly;
pub use scalar::{FieldSpec, Scalar};
pub use variety::{fixed_dim_formula, membership, sandwich, SandwichReport, VarietyDescriptor};
pub use witness::{
    regular_block, verify_witness, verify_witness_curve, WitnessFamily, WitnessKind, WitnessReport,
};
