//! Rewriting moves that hold as functions: shuffles, marker changes, the
//! marker swap, leading-run collapse, Chen splitting, reversal, antipode.

pub mod collapse;
pub mod marker;
pub mod paths;
pub mod shuffle;

pub use collapse::{collapse_closed, leading_run, pull_repeat_exact};
pub use marker::{build_a, build_b, build_b_terms, marker_change, marker_swap, swap_marker};
pub use paths::{
    antipode_identity, chen_expansion, path_split_chen, path_step_exact, path_step_identity, path_two_term,
    reverse_path, weight1_value,
};
pub use shuffle::{shuffle_identity, shuffle_sum, shuffle_words};
