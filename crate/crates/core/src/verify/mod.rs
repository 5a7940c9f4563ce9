//! The oracle-versus-closed-form grid, the property suites, and the errata
//! collected wherever a printed formula differs from the computed value of
//! record.

mod curves;
mod grid;
mod props;
mod three;

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::arith::PrimePower;
use crate::error::{Error, Result};
use crate::ffield::Budget;

pub const SCHEMA: &str = "ffcount/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sections {
    pub counts: bool,
    pub irreducible: bool,
    pub curves: bool,
    pub properties: bool,
    pub three: bool,
}

impl Sections {
    pub const ALL: Sections = Sections {
        counts: true,
        irreducible: true,
        curves: true,
        properties: true,
        three: true,
    };
    pub const NONE: Sections = Sections {
        counts: false,
        irreducible: false,
        curves: false,
        properties: false,
        three: false,
    };
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub grid: Vec<u64>,
    pub budget: Budget,
    pub seed: u64,
    pub samples: usize,
    pub timing: bool,
    pub sections: Sections,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid: vec![3, 5, 7, 9],
            budget: Budget::default(),
            seed: 0x5eed_f1e1d,
            samples: 10_000,
            timing: false,
            sections: Sections::ALL,
        }
    }
}

/// Parse a grid description such as "q=3,5,7,9" (the "q=" prefix is optional).
pub fn parse_grid(s: &str) -> Result<Vec<u64>> {
    let body = s.trim().strip_prefix("q=").unwrap_or(s.trim());
    let qs = body
        .split(',')
        .map(|t| {
            let q: u64 = t
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad grid entry {t:?}")))?;
            PrimePower::new(q)?;
            Ok(q)
        })
        .collect::<Result<Vec<_>>>()?;
    if qs.is_empty() {
        return Err(Error::InvalidInput("empty grid".into()));
    }
    Ok(qs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Oracle,
    Paper,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub inputs: Value,
    pub source: Source,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Erratum {
    pub formula: String,
    pub inputs: Value,
    pub printed: Value,
    pub of_record: Value,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridInfo {
    pub q: Vec<u64>,
    pub budget: u64,
    pub poly_budget: u64,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub failed: usize,
    pub errata: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionTime {
    pub section: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub grid: GridInfo,
    pub checks: Vec<CheckRecord>,
    pub errata: Vec<Erratum>,
    pub summary: Summary,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<SectionTime>>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn checks_named<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.checks.iter().filter(move |c| c.check.starts_with(prefix))
    }

    pub fn errata_named<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Erratum> + 'a {
        self.errata.iter().filter(move |e| e.formula.starts_with(prefix))
    }
}

/// A big integer as a JSON number.
pub(crate) fn num(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

pub(crate) fn nums(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

#[derive(Default)]
pub(crate) struct Recorder {
    checks: Vec<CheckRecord>,
    errata: Vec<Erratum>,
}

impl Recorder {
    pub(crate) fn check(&mut self, name: &str, inputs: Value, source: Source, expected: Value, got: Value) -> bool {
        let pass = expected == got;
        self.checks.push(CheckRecord {
            check: name.to_string(),
            inputs,
            source,
            expected,
            got,
            pass,
        });
        pass
    }

    /// A check whose outcome is a predicate; `detail` is reported as `got`.
    pub(crate) fn holds(&mut self, name: &str, inputs: Value, pass: bool, detail: Value) -> bool {
        self.checks.push(CheckRecord {
            check: name.to_string(),
            inputs,
            source: Source::Oracle,
            expected: Value::Bool(true),
            got: detail,
            pass,
        });
        pass
    }

    /// Record a failed check for a computation that returned an error.
    pub(crate) fn error(&mut self, name: &str, inputs: Value, e: &Error) {
        self.checks.push(CheckRecord {
            check: name.to_string(),
            inputs,
            source: Source::Oracle,
            expected: Value::String("success".into()),
            got: Value::String(e.to_string()),
            pass: false,
        });
    }

    pub(crate) fn erratum(&mut self, formula: &str, inputs: Value, printed: Value, of_record: Value, note: &str) {
        self.errata.push(Erratum {
            formula: formula.to_string(),
            inputs,
            printed,
            of_record,
            note: note.to_string(),
        });
    }
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let pps = cfg
        .grid
        .iter()
        .map(|&q| PrimePower::new(q))
        .collect::<Result<Vec<_>>>()?;
    let mut rec = Recorder::default();
    let mut times = Vec::new();
    let mut timed = |name: &str, rec: &mut Recorder, f: &mut dyn FnMut(&mut Recorder)| {
        let t = Instant::now();
        f(rec);
        times.push(SectionTime {
            section: name.to_string(),
            seconds: t.elapsed().as_secs_f64(),
        });
    };
    let s = cfg.sections;
    if s.counts {
        timed("counts", &mut rec, &mut |r| {
            for &pp in &pps {
                grid::counts(r, pp, &cfg.budget);
            }
            grid::modulus_independence(r, &pps, &cfg.budget);
        });
    }
    if s.irreducible {
        timed("irreducible", &mut rec, &mut |r| {
            for &pp in &pps {
                grid::irreducible(r, pp, &cfg.budget);
            }
        });
    }
    if s.curves {
        timed("curves", &mut rec, &mut |r| {
            for &pp in &pps {
                curves::corollary(r, pp);
            }
            // the printed corollary has a separate square case; sweep it even
            // when the grid has no square q
            if !pps.iter().any(|pp| pp.is_square()) {
                curves::corollary(r, PrimePower::new(9).expect("9 is a prime power"));
            }
            if pps.iter().any(|pp| pp.q == 3) {
                curves::golden(r, &cfg.budget);
            }
        });
    }
    if s.properties {
        timed("properties", &mut rec, &mut |r| {
            props::run(r, &pps, cfg.seed, cfg.samples, &cfg.budget);
        });
    }
    if s.three && pps.iter().any(|pp| pp.q == 3) {
        timed("three", &mut rec, &mut |r| three::run(r, &cfg.budget));
    }
    let failed = rec.checks.iter().filter(|c| !c.pass).count();
    Ok(VerifyReport {
        schema: SCHEMA,
        grid: GridInfo {
            q: cfg.grid.clone(),
            budget: cfg.budget.elements,
            poly_budget: cfg.budget.polys,
            seed: cfg.seed,
            samples: cfg.samples,
        },
        summary: Summary {
            checks: rec.checks.len(),
            failed,
            errata: rec.errata.len(),
        },
        pass: failed == 0,
        checks: rec.checks,
        errata: rec.errata,
        timing: cfg.timing.then_some(times),
    })
}
