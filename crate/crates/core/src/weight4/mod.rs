//! Weight four: depth-two shapes, conversions towards `[x,y]_{3,1}`, series
//! descriptions, and the `φ` report.

pub mod classify;
pub mod conversions;
pub mod linalg;
pub mod phi;
pub mod series_dict;
pub mod words;

pub use classify::{classify_w4, CanonicalW4, W4Kind};
pub use conversions::{derive_conversions, derive_conversions_with, Conversion, ConversionSet, Conversions, InsufficientReport, Template};
pub use words::{cross_ratio_words, phi_table, word_value, TableEntry, PHI_TABLE_TEXT};
pub use series_dict::{series_dictionary, SeriesDescription};
pub use phi::{phi_report, phi_report_with, Comparison, MatchStatus, PhiReport, PhiTerm};
