//! The `ffcount` command line: field construction, traces, quadratic-form
//! and curve counts, L-polynomials, F/I counts and the verification grid.
//! Every command prints one JSON document carrying `"schema":"ffcount/1"`.

mod table;

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use ffcount_core::arith::PrimePower;
use ffcount_core::census::census;
use ffcount_core::counting::{
    brute_f, brute_f3, brute_i, closed_f_general, closed_i, corrected_formula_f3_q3, paper_formula_f3_q3,
    CoeffTarget,
};
use ffcount_core::curves::{
    classify, closed_count, closed_lpoly, corollary_table, count_points, count_points_in, counts_from_lpoly,
    golden_l2, golden_l3, lpoly_from_counts, weil_check, CurveModel, LPolynomial, NamedCurve,
};
use ffcount_core::ffield::{BaseField, Budget, ExtField, FieldElement, FieldSpec};
use ffcount_core::qforms::{self, field_for, radical_dim_kernel};
use ffcount_core::report::Method;
use ffcount_core::traces::{char_poly, min_poly, trace_pair};
use ffcount_core::verify::{self, VerifyConfig, SCHEMA};
use ffcount_core::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ffcount", version, about = "Counts over odd-characteristic finite fields")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Enumeration budget in field elements (overrides FFCOUNT_BUDGET)
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Field spec JSON (inline or a path) replacing the default modulus
    #[arg(long, global = true)]
    field_spec: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Brute,
    Closed,
    Corollary,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Closed => Method::Closed,
            MethodArg::Corollary => Method::Corollary,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CurveArg {
    C1,
    C2,
    C3,
}

impl From<CurveArg> for NamedCurve {
    fn from(c: CurveArg) -> Self {
        match c {
            CurveArg::C1 => NamedCurve::C1,
            CurveArg::C2 => NamedCurve::C2,
            CurveArg::C3 => NamedCurve::C3,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct F_{q^n} and print its deterministic spec
    Field {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Trace, subtrace, characteristic and minimal polynomial of an element
    Trace {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        /// Element index 0..q^n-1 (base-q digits of the coordinates), or
        /// comma-separated coordinates c0,c1,...
        #[arg(long)]
        elem: String,
    },
    /// Radical, rank and zero count of Q(x) = Tr(x^(q+1) - x^2)
    Qform {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        /// Count |{Q = C}| instead of the zeros only
        #[arg(long)]
        value: Option<u32>,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// Projective points of a named curve over F_{q^n}
    Curve {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = CurveArg::C1)]
        curve: CurveArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// L-polynomial of a named curve
    Lpoly(LpolyArgs),
    /// Supersingular / maximal / minimal classification of an L-polynomial
    Classify {
        #[command(flatten)]
        lp: LpolyArgs,
        /// Classify these coefficients c0,...,c2g instead of a named curve
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<i64>>,
    },
    /// F_q(n, t1, t2[, t3]): elements with prescribed trace coefficients
    CountF {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        t1: u32,
        #[arg(long, default_value_t = 0)]
        t2: u32,
        #[arg(long)]
        t3: Option<u32>,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// I_q(n, t1, t2): monic irreducibles with prescribed leading coefficients
    CountI {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        t1: u32,
        #[arg(long, default_value_t = 0)]
        t2: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// Run the oracle-versus-closed-form grid and the property suites
    Verify {
        /// e.g. "q=3,5,7,9"
        #[arg(long, default_value = "q=3,5,7,9")]
        grid: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Random samples per identity on fields past the exhaustive range
        #[arg(long)]
        samples: Option<usize>,
        /// Include per-section wall-clock times (makes output non-reproducible)
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args, Debug)]
struct LpolyArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value_t = CurveArg::C1)]
    curve: CurveArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    method: MethodArg,
}

/// Parse `args` (program name first), run the command and write its output.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let budget = match cli.global.budget {
        Some(b) => Budget::with_elements(b),
        None => Budget::from_env(),
    };
    let result = execute(&cli, &budget);
    match result {
        Ok((doc, code)) => {
            let text = match cli.global.format {
                Format::Json => serde_json::to_string(&doc).expect("JSON values serialize") + "\n",
                Format::Table => table::render(&doc),
            };
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "ffcount: cannot write output: {e}");
                    EXIT_ERROR
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "ffcount: {e}");
            EXIT_ERROR
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn big(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

/// Put the schema tag on a JSON object.
fn tagged(v: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    match v {
        Value::Object(o) => m.extend(o),
        other => {
            m.insert("result".into(), other);
        }
    }
    Value::Object(m)
}

fn pp_of(q: u64) -> Result<PrimePower> {
    PrimePower::new(q)
}

fn read_field_spec(raw: &str) -> Result<FieldSpec> {
    let text = if raw.trim_start().starts_with('{') {
        raw.to_string()
    } else {
        std::fs::read_to_string(raw).map_err(|e| Error::InvalidInput(format!("cannot read {raw}: {e}")))?
    };
    FieldSpec::from_json(&text)
}

/// The extension field for a command: the --field-spec override if given,
/// otherwise the deterministic F_{q^n}.
fn resolve_field(global: &Global, q: Option<u64>, n: Option<u32>) -> Result<ExtField> {
    let field = match &global.field_spec {
        Some(raw) => match read_field_spec(raw)? {
            FieldSpec::Relative(r) => ExtField::from_spec(&r)?,
            FieldSpec::Base(b) => {
                let base = Arc::new(BaseField::from_spec(&b)?);
                let n = n.ok_or_else(|| Error::InvalidInput("--n is required with a base field spec".into()))?;
                ExtField::new(base, n as usize)?
            }
        },
        None => {
            let q = q.ok_or_else(|| Error::InvalidInput("--q is required".into()))?;
            let n = n.ok_or_else(|| Error::InvalidInput("--n is required".into()))?;
            field_for(pp_of(q)?, n)?
        }
    };
    if q.is_some_and(|q| q != field.q()) || n.is_some_and(|n| n as usize != field.degree()) {
        return Err(Error::InvalidInput(format!(
            "--field-spec describes F_{}^{}, which disagrees with --q/--n",
            field.q(),
            field.degree()
        )));
    }
    Ok(field)
}

fn parse_element(field: &ExtField, s: &str) -> Result<FieldElement> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.contains(',') {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad coordinate {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        field.element(coeffs)
    } else {
        let idx: u64 = s.parse().map_err(|_| Error::InvalidInput(format!("bad element {s:?}")))?;
        if idx >= field.cardinality() {
            return Err(Error::InvalidInput(format!(
                "element index {idx} is outside 0..{}",
                field.cardinality()
            )));
        }
        Ok(field.element_at(idx))
    }
}

fn execute(cli: &Cli, budget: &Budget) -> Result<(Value, i32)> {
    let g = &cli.global;
    let doc = match &cli.command {
        Command::Field { q, n } => {
            let f = resolve_field(g, *q, *n)?;
            json!({
                "q": f.q(),
                "n": f.degree(),
                "p": f.p(),
                "cardinality": f.cardinality(),
                "spec": to_value(&f.spec()),
            })
        }
        Command::Trace { q, n, elem } => {
            let f = resolve_field(g, *q, *n)?;
            let a = parse_element(&f, elem)?;
            let t = trace_pair(&f, &a)?;
            json!({
                "q": f.q(),
                "n": f.degree(),
                "elem": a.coeffs(),
                "index": f.index_of(&a),
                "t1": t.t1,
                "t2": t.t2,
                "char_poly": char_poly(&f, &a)?.coeffs(),
                "min_poly": min_poly(&f, &a)?.coeffs(),
            })
        }
        Command::Qform { q, n, value, method } => qform(g, *q, *n, *value, (*method).into(), budget)?,
        Command::Curve { q, n, curve, method } => curve_count(g, *q, *n, (*curve).into(), (*method).into(), budget)?,
        Command::Lpoly(a) => lpoly_doc(a, budget)?,
        Command::Classify { lp, coeffs } => classify_doc(lp, coeffs.as_deref(), budget)?,
        Command::CountF { q, n, t1, t2, t3, method } => {
            count_f(g, *q, *n, CoeffTarget { t1: *t1, t2: *t2, t3: *t3 }, (*method).into(), budget)?
        }
        Command::CountI { q, n, t1, t2, method } => {
            let pp = pp_of(*q)?;
            let t = CoeffTarget::new(*t1, *t2);
            let r = match Method::from(*method) {
                Method::Brute => brute_i(pp, *n, t, budget)?,
                Method::Closed => closed_i(pp, *n, t)?,
                Method::Corollary => return Err(Error::Unsupported("count-i has no corollary method".into())),
            };
            to_value(&r)
        }
        Command::Verify { grid, seed, samples, timing } => {
            let defaults = VerifyConfig::default();
            let cfg = VerifyConfig {
                grid: verify::parse_grid(grid)?,
                budget: *budget,
                seed: seed.unwrap_or(defaults.seed),
                samples: samples.unwrap_or(defaults.samples),
                timing: *timing,
                ..defaults
            };
            let report = verify::run(&cfg)?;
            let code = if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
            return Ok((to_value(&report), code));
        }
    };
    Ok((tagged(doc), EXIT_OK))
}

fn qform(g: &Global, q: u64, n: u32, value: Option<u32>, method: Method, budget: &Budget) -> Result<Value> {
    let pp = pp_of(q)?;
    if method == Method::Corollary {
        return Err(Error::Unsupported("qform has no corollary method".into()));
    }
    let mut doc = if g.field_spec.is_some() {
        if method != Method::Brute {
            return Err(Error::InvalidInput("--field-spec only applies to --method brute".into()));
        }
        let f = resolve_field(g, Some(q), Some(n))?;
        let w = radical_dim_kernel(&f);
        let cz = census(&f, budget)?;
        json!({
            "q": q, "n": n, "w": w, "rank": n - w, "N": cz.zero_count(),
            "case": pp.case_tag(n as u64).as_str(),
        })
    } else {
        to_value(&qforms::profile(pp, n, method, budget)?)
    };
    if let Some(c) = value {
        let count = match (&g.field_spec, method) {
            (Some(_), _) => BigInt::from(census(&resolve_field(g, Some(q), Some(n))?, budget)?.value_count(c)),
            (None, m) => qforms::qf_value_count(pp, n, c, m, budget)?,
        };
        doc["value"] = json!(c);
        doc["count"] = big(&count);
    }
    doc["method"] = json!(method.as_str());
    Ok(doc)
}

/// L-polynomial of a named curve at q = 3 read from the listed factorisations.
fn listed_lpoly(pp: PrimePower, name: NamedCurve) -> Result<LPolynomial> {
    match (pp.q, name) {
        (_, NamedCurve::C1) => closed_lpoly(pp),
        (3, NamedCurve::C2) => Ok(golden_l2()),
        (3, NamedCurve::C3) => Ok(golden_l3()),
        _ => Err(Error::Unsupported(format!(
            "no closed form for curve {name} over F_{}; use --method brute",
            pp.q
        ))),
    }
}

fn curve_count(g: &Global, q: u64, n: u32, name: NamedCurve, method: Method, budget: &Budget) -> Result<Value> {
    let pp = pp_of(q)?;
    let curve = CurveModel::named(pp, name)?;
    let count = match method {
        Method::Brute => {
            let r = if g.field_spec.is_some() {
                count_points_in(&curve, &resolve_field(g, Some(q), Some(n))?, budget)?
            } else {
                count_points(&curve, n, budget)?
            };
            r.value
        }
        Method::Closed => match name {
            NamedCurve::C1 => closed_count(pp, n as u64)?,
            _ => counts_from_lpoly(&listed_lpoly(pp, name)?, n as u64),
        },
        Method::Corollary => {
            if name != NamedCurve::C1 {
                return Err(Error::Unsupported("the corollary table covers c1 only".into()));
            }
            counts_from_lpoly(&corollary_table(pp)?.lpoly, n as u64)
        }
    };
    let excess = &count - (ffcount_core::curves::big_pow(q, n as u64) + 1);
    Ok(json!({
        "q": q,
        "n": n,
        "curve": name.as_str(),
        "genus": curve.genus,
        "count": big(&count),
        "excess": big(&excess),
        "method": method.as_str(),
        "case": pp.case_tag(n as u64).as_str(),
    }))
}

fn curve_lpoly(a: &LpolyArgs, budget: &Budget) -> Result<(LPolynomial, Option<Value>)> {
    let pp = pp_of(a.q)?;
    let name: NamedCurve = a.curve.into();
    match Method::from(a.method) {
        Method::Brute => {
            let curve = CurveModel::named(pp, name)?;
            let counts = (1..=curve.genus as u32)
                .map(|n| Ok(count_points(&curve, n, budget)?.value))
                .collect::<Result<Vec<_>>>()?;
            Ok((lpoly_from_counts(pp, curve.genus, &counts)?, None))
        }
        Method::Closed => Ok((listed_lpoly(pp, name)?, None)),
        Method::Corollary => {
            if name != NamedCurve::C1 {
                return Err(Error::Unsupported("the corollary table covers c1 only".into()));
            }
            let t = corollary_table(pp)?;
            let entries = to_value(&t.entries);
            Ok((t.lpoly, Some(entries)))
        }
    }
}

fn lpoly_doc(a: &LpolyArgs, budget: &Budget) -> Result<Value> {
    let (l, table) = curve_lpoly(a, budget)?;
    let c = classify(&l);
    let mut doc = json!({
        "q": a.q,
        "curve": NamedCurve::from(a.curve).as_str(),
        "genus": l.genus,
        "lpoly": l.coeffs.iter().map(big).collect::<Vec<_>>(),
        "class": c.class.as_str(),
        "method": Method::from(a.method).as_str(),
    });
    if let Some(t) = table {
        doc["roots"] = t;
    }
    Ok(doc)
}

fn classify_doc(a: &LpolyArgs, coeffs: Option<&[i64]>, budget: &Budget) -> Result<Value> {
    let (l, label) = match coeffs {
        Some(c) => {
            let l = LPolynomial::new(pp_of(a.q)?, c.iter().map(|&x| BigInt::from(x)).collect())?;
            (l, Value::Null)
        }
        None => (curve_lpoly(a, budget)?.0, json!(NamedCurve::from(a.curve).as_str())),
    };
    let c = classify(&l);
    let w = weil_check(&l);
    Ok(json!({
        "q": a.q,
        "curve": label,
        "genus": l.genus,
        "lpoly": l.coeffs.iter().map(big).collect::<Vec<_>>(),
        "class": c.class.as_str(),
        "maximal": c.maximal,
        "minimal": c.minimal,
        "supersingular": c.supersingular,
        "weil": to_value(&w),
    }))
}

fn count_f(g: &Global, q: u64, n: u32, t: CoeffTarget, method: Method, budget: &Budget) -> Result<Value> {
    let pp = pp_of(q)?;
    if let Some(t3) = t.t3 {
        if q != 3 || t.t1 != 0 || t.t2 != 0 || t3 != 0 {
            return Err(Error::Unsupported(
                "three prescribed coefficients are supported for q = 3, target (0,0,0) only".into(),
            ));
        }
        let value = match method {
            Method::Brute => brute_f3(pp, n, budget)?,
            Method::Closed => corrected_formula_f3_q3(n)?,
            Method::Corollary => return Err(Error::Unsupported("count-f has no corollary method".into())),
        };
        return Ok(json!({
            "q": q,
            "n": n,
            "quantity": "F",
            "target": to_value(&t),
            "value": big(&value),
            "method": method.as_str(),
            "printed_formula": to_value(&paper_formula_f3_q3(n)),
        }));
    }
    let r = match method {
        Method::Brute if g.field_spec.is_some() => {
            let f = resolve_field(g, Some(q), Some(n))?;
            let cz = census(&f, budget)?;
            ffcount_core::counting::brute_f_from(pp, &cz, t)?
        }
        Method::Brute => brute_f(pp, n, t, budget)?,
        Method::Closed => closed_f_general(pp, n, t)?,
        Method::Corollary => return Err(Error::Unsupported("count-f has no corollary method".into())),
    };
    Ok(to_value(&r))
}
