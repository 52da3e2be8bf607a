//! Independent reference machinery: exact elimination null spaces, span
//! comparison, a classical eigensolver built on them, and a generator of
//! matrices with prescribed Jordan structure. Exact arithmetic only.

mod generate;
mod nullspace;
mod reference;

pub use generate::{conjugate, generate_case, generate_matrix, JordanSpec};
pub use nullspace::{matrix_rank, null_space, rank, spans_equal, NullSpaceBasis};
pub use reference::eigensolve_reference;
