//! JSON documents. Every file carries `version` and `kind`; terms are sorted
//! and coefficients written as reduced fractions so output is byte-stable.

use serde::{Deserialize, Serialize};

use super::identity::{Identity, Layer};
use super::lincomb::LinComb;
use super::text::parse_symbol;
use crate::error::{Error, Result};
use crate::exactfield::rational::parse_rational;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    pub factors: Vec<String>,
}

pub fn terms_to_docs(l: &LinComb) -> Vec<TermDoc> {
    l.sorted_terms()
        .into_iter()
        .map(|(factors, c)| TermDoc {
            coeff: c.to_string(),
            factors,
        })
        .collect()
}

pub fn docs_to_terms(docs: &[TermDoc]) -> Result<LinComb> {
    let mut l = LinComb::new();
    for d in docs {
        let c = parse_rational(&d.coeff).map_err(|_| Error::Format(format!("bad coefficient {:?}", d.coeff)))?;
        let factors = d.factors.iter().map(|f| parse_symbol(f)).collect::<Result<Vec<_>>>()?;
        l.add_term(c, factors);
    }
    Ok(l)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinCombDoc {
    pub version: u32,
    pub kind: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityDoc {
    pub version: u32,
    pub kind: String,
    pub layer: Layer,
    pub derivation: Vec<String>,
    pub terms: Vec<TermDoc>,
}

impl IdentityDoc {
    pub fn from_identity(id: &Identity) -> Self {
        Self {
            version: FORMAT_VERSION,
            kind: "identity".into(),
            layer: id.layer,
            derivation: id.derivation.clone(),
            terms: terms_to_docs(&id.expr),
        }
    }

    pub fn to_identity(&self) -> Result<Identity> {
        Ok(Identity {
            expr: docs_to_terms(&self.terms)?,
            layer: self.layer,
            derivation: self.derivation.clone(),
        })
    }
}

pub fn lincomb_to_json(l: &LinComb) -> String {
    let doc = LinCombDoc {
        version: FORMAT_VERSION,
        kind: "lincomb".into(),
        terms: terms_to_docs(l),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn lincomb_from_json(text: &str) -> Result<LinComb> {
    let doc: LinCombDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    docs_to_terms(&doc.terms)
}

pub fn identity_to_json(id: &Identity) -> String {
    serde_json::to_string_pretty(&IdentityDoc::from_identity(id)).expect("serializable") + "\n"
}

pub fn identity_from_json(text: &str) -> Result<Identity> {
    let doc: IdentityDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if doc.kind != "identity" {
        return Err(Error::Format(format!("expected kind \"identity\", found {:?}", doc.kind)));
    }
    doc.to_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::text::parse_lincomb;

    #[test]
    fn identity_json_roundtrip() {
        let l = parse_lincomb("H(a|b|c)*H(a|d|c) - H(a|b,d|c) - H(a|d,b|c)").unwrap();
        let id = Identity::exact(l, "shuffle");
        let text = identity_to_json(&id);
        assert!(text.contains("\"layer\": \"exact\""));
        assert!(text.contains("\"version\": 1"));
        let back = identity_from_json(&text).unwrap();
        assert_eq!(back, id);
        assert_eq!(identity_to_json(&back), text);
    }

    #[test]
    fn rejects_wrong_kind_and_bad_coefficients() {
        let l = parse_lincomb("H(a|b|c)").unwrap();
        let text = lincomb_to_json(&l);
        assert!(identity_from_json(&text).is_err());
        assert_eq!(lincomb_from_json(&text).unwrap(), l);
        let bad = text.replace("\"1\"", "\"x\"");
        assert!(lincomb_from_json(&bad).is_err());
    }
}
