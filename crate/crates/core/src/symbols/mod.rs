//! Marker-form symbols, products, formal linear combinations, identities,
//! and their text and JSON forms.

pub mod doc;
pub mod identity;
pub mod lincomb;
pub mod symbol;
pub mod text;

pub use identity::{Identity, Layer};
pub use lincomb::{LinComb, Term};
pub use symbol::Symbol;
pub use text::{parse_lincomb, parse_symbol};
