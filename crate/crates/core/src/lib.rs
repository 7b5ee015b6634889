pub mod error;
pub mod exactfield;
pub mod calculus;
pub mod numeval;
pub mod reduction;
pub mod symbols;
pub mod weight4;

pub use error::{Error, Result};
