//! Exact exterior algebra over ℚ(√2): forms, wedge and interior products,
//! subspaces of `Λ^k` and decomposability of two-forms.

mod basis_change;
mod form;
mod linalg;
mod parse;
mod scalar;
mod simple;

pub use basis_change::BasisChange;
pub use form::{basis, binomial, e, IndexSet, KForm, MAX_DIM};
pub use linalg::{nullspace, rank, rref, Matrix, Subspace};
pub use parse::{parse_form, parse_form_list, split_top_level};
pub use scalar::Scalar;
pub use simple::{alternating_rank, factor_simple, is_simple};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected a form of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("cannot contract a 0-form")]
    ContractDegreeZero,
    #[error("the one-forms are not linearly independent")]
    Degenerate,
    #[error("span of an empty list has no ambient type")]
    EmptySpan,
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}
