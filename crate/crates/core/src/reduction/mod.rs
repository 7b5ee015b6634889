//! Reduction of a weight-`n` symbol to symbols in at most `n - 2` variables.

pub mod driver;
pub mod relations;
pub mod scheme;

pub use driver::{generic_points, reduce_odd, reduce_symbol, ReductionOutput};
pub use relations::{lowered_marker_swap, lowered_swap_identity, split_shuffle, swap_letters, transposition};
pub use scheme::{cancellation_check, cancellation_check_odd, coeff_scheme, formal_sum, PairLabel};
