use std::fmt;

use serde::{Deserialize, Serialize};

use super::lincomb::LinComb;
use super::symbol::Symbol;
use crate::error::{Error, Result};
use crate::exactfield::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    /// Holds as multivalued functions; numerically checkable.
    Exact,
    /// Holds modulo products.
    Quotient,
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Layer::Exact => "exact",
            Layer::Quotient => "quotient",
        })
    }
}

impl std::str::FromStr for Layer {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Layer::Exact),
            "quotient" => Ok(Layer::Quotient),
            _ => Err(Error::Format(format!("unknown layer {s:?}"))),
        }
    }
}

/// A linear combination asserted to vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub expr: LinComb,
    pub layer: Layer,
    pub derivation: Vec<String>,
}

impl Identity {
    pub fn exact(expr: LinComb, step: impl Into<String>) -> Self {
        Self {
            expr,
            layer: Layer::Exact,
            derivation: vec![step.into()],
        }
    }

    pub fn quotient(expr: LinComb, step: impl Into<String>) -> Self {
        Self {
            expr,
            layer: Layer::Quotient,
            derivation: vec![step.into()],
        }
    }

    /// The shadow modulo products; the log keeps the exact steps.
    pub fn to_quotient(&self) -> Identity {
        let mut derivation = self.derivation.clone();
        derivation.push("drop-products".into());
        Identity {
            expr: self.expr.drop_products(),
            layer: Layer::Quotient,
            derivation,
        }
    }

    pub fn with_step(mut self, step: impl Into<String>) -> Self {
        self.derivation.push(step.into());
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.expr.is_zero()
    }

    /// `self + k * other`, concatenating the logs.
    pub fn combine(&self, k: &Rational, other: &Identity) -> Identity {
        let layer = if self.layer == Layer::Exact && other.layer == Layer::Exact {
            Layer::Exact
        } else {
            Layer::Quotient
        };
        let mut expr = self.expr.clone();
        expr.add_assign_scaled(k, &other.expr);
        let mut derivation = self.derivation.clone();
        derivation.extend(other.derivation.iter().cloned());
        Identity {
            expr,
            layer,
            derivation,
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.expr.symbols()
    }
}
