//! Numerical evaluation of symbols and numerical verification of identities.

pub mod eval;
pub mod integrate;
pub mod path;
pub mod quadrature;
pub mod sample;
pub mod series;
pub mod verify;

pub use eval::{
    default_panels, eval_lincomb, eval_symbol, eval_symbol_on, ConfigSummary, EvalConfig, Evaluator, Geometry, Pt,
    Skeleton,
};
pub use path::Segment;
pub use sample::{complete_config, sample_config, sample_for};
pub use series::{series_eval, series_value, SeriesKind, SeriesValue};
pub use verify::{verify_identity, EpsFit, TrialReport, VerifyOptions, VerifyReport};
