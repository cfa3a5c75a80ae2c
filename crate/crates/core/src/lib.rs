//! Strictly sign regular matrices: construction, border and interior
//! extension, and exact verification.
//!
//! All arithmetic is exact over the rationals. Indices in the public API are
//! 1-based.

pub mod construct;
pub mod error;
pub mod insert;
pub mod matrix;
pub mod numeric;
pub mod verify;

pub use construct::{
    add_col_left, column_relation, extend_border, extend_border_ssr_p, perturb_first_column,
    ssr_construction, ssr_p_construction, ConstructionTrace, DeltaChoice, PatternExtension, Side,
};
pub use error::{Result, SsrError};
pub use insert::{
    insert_line, insert_line_ssr_p, insert_middle_even_square, insertion_windows, Axis,
    InsertionContext, WindowCase,
};
pub use matrix::{exchange_matrix, transform_sign_pattern, ContiguousSet, Mat, Sign, SignPattern};
pub use numeric::{det_exact, Scalar};
pub use verify::{
    infer_sign_pattern, verify_contiguous, verify_full, CheckMethod, SsrReport, Verdict, Witness,
};
