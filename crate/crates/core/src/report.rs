//! Tagged results shared by the counting, curve and quadratic-form modules.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{CaseTag, PrimePower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Closed,
    Corollary,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Closed => "closed",
            Method::Corollary => "corollary",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "closed" => Ok(Method::Closed),
            "corollary" => Ok(Method::Corollary),
            _ => Err(crate::Error::InvalidInput(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// affine points of a curve
    Affine,
    /// projective points of a curve
    Projective,
    /// zeros of the quadratic form
    #[serde(rename = "N")]
    N,
    /// #C - (q^n + 1)
    Excess,
    /// |{x : Q(x) = c}|
    Value,
    /// F_q(n, t1, t2)
    #[serde(rename = "F")]
    F,
    /// I_q(n, t1, t2)
    #[serde(rename = "I")]
    I,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub n: u32,
    pub quantity: Quantity,
    #[serde(serialize_with = "bigint_number")]
    pub value: BigInt,
    pub method: Method,
    #[serde(rename = "case")]
    pub case_tag: CaseTag,
}

impl CountReport {
    pub fn new(pp: PrimePower, n: u32, quantity: Quantity, value: BigInt, method: Method) -> Self {
        CountReport {
            q: pp.q,
            n,
            quantity,
            value,
            method,
            case_tag: pp.case_tag(n as u64),
        }
    }
}

/// Serialize an arbitrary-precision integer as a bare JSON number.
pub fn bigint_number<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    let num: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
    num.serialize(s)
}

pub fn bigint_numbers<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        let num: serde_json::Number = x.to_string().parse().map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&num)?;
    }
    seq.end()
}
