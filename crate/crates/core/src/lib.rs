//! Annular refinement of the transverse element in Khovanov homology.
//!
//! Given a braid word, this crate builds the Khovanov complex of its closure
//! over GF(2) one graded slice at a time, filters it by the annular k-grading,
//! and measures the lowest filtration level at which the transverse element ψ
//! becomes a boundary (κ). Reduced variants at a basepoint, annular Khovanov
//! homology, spectral-sequence page dimensions and a κ-based solution to the
//! word problem are built on the same machinery.

pub mod braid;
pub mod complex;
pub mod diagram;
pub mod f2linalg;
pub mod invariants;

pub use braid::{
    conjugate, exponent_sum, flype_pair, mirror, parse_braid, self_linking, stabilize, BasepointAddress, BraidError,
    BraidWord,
};
pub use complex::{build_slice, differential, DifferentialMatrix, GradedSlice, KhovanovComplex, Variant};
pub use diagram::{circles, gradings, oriented_resolution, CircleSet, Generator, Gradings, Resolution};
pub use f2linalg::{rank, rank_of_span_union, solve, ChainF2, Eliminator, LinAlgError, SparseMatrixF2};
pub use invariants::{
    certify_right_veering, kappa, kappa_is_two, negative_crossing_witness, negative_destab_obstruction, psi,
    psi_death_page, psi_gradings, skh_dims, ss_page_dim, ss_page_dim_variant, verify_kappa, word_problem,
    Destabilization, Kappa, KappaResult, SkhTable, Veering, Witness, WordProblem,
};
