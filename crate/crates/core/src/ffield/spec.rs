use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serialized form of F_q: `{"p":3,"r":2,"modulus":[1,0,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    pub p: u64,
    pub r: u32,
    pub modulus: Vec<u32>,
}

/// Serialized form of F_{q^n} over F_q:
/// `{"base":{...},"n":5,"relModulus":[...]}`, the relative modulus given as
/// F_q codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelativeSpec {
    pub base: BaseSpec,
    pub n: u32,
    #[serde(rename = "relModulus")]
    pub rel_modulus: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Relative(RelativeSpec),
    Base(BaseSpec),
}

impl FieldSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidField(format!("bad field spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("field specs always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_shapes() {
        let b = FieldSpec::from_json(r#"{"p":3,"r":2,"modulus":[1,0,1]}"#).unwrap();
        assert_eq!(
            b,
            FieldSpec::Base(BaseSpec {
                p: 3,
                r: 2,
                modulus: vec![1, 0, 1]
            })
        );
        let rel = r#"{"base":{"p":3,"r":1,"modulus":[0,1]},"n":2,"relModulus":[1,0,1]}"#;
        let s = FieldSpec::from_json(rel).unwrap();
        assert!(matches!(s, FieldSpec::Relative(ref r) if r.n == 2));
        assert_eq!(s.to_json(), rel);
        assert!(FieldSpec::from_json(r#"{"p":3}"#).is_err());
    }
}
