//! Command-line front end: reads JSON documents, runs one library operation
//! and prints a JSON report.
//!
//! Exit codes: `0` success, `1` input or precondition error, `2` a result that
//! failed its own verification.

pub mod doc;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;
use tropdec::decompose::verify;
use tropdec::{
    build_example_pair, commutes, commuting_witness, complete_decomposability, decompose_algebraic_polynomial,
    decompose_algebraic_rational, decompose_complete, decompose_integer_rational, decompose_monotone_algebraic,
    decompose_monotone_integer, parametrize_laurent, parametrize_polynomial, parametrize_rational,
    verify_parametrization, CommutationWitness, FunctionTag, Rational, SideWitness, WitnessOutcome,
};

use doc::{
    decomposition_doc, function_doc, number, numbers, parametrization_doc, parse_decomposition, parse_function,
    parse_number_str, parse_parametrization, parse_polyline, polyline_doc,
};

type Q = Rational;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Library(#[from] tropdec::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) | CliError::Library(tropdec::Error::Verification(_)) => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Library(tropdec::Error::Precondition(_)) => "precondition",
            CliError::Library(tropdec::Error::Verification(_)) | CliError::Verification(_) => "verification",
            CliError::Library(_) => "invalid-input",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tropdec", version, about = "Exact min-plus piecewise-linear function toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    AlgebraicPoly,
    MonotoneAlgebraic,
    AlgebraicRational,
    MonotoneInteger,
    IntegerRational,
    Complete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Rational,
    Laurent,
    Polynomial,
}

/// Input paths may be `-` for standard input.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value of a function at one point.
    Eval {
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Tropical roots (breakpoints).
    Roots { function: String },
    /// Function class, slope sign blocks and edge counts.
    Classify { function: String },
    /// `outer . inner`.
    Compose { outer: String, inner: String },
    /// k-fold composition.
    Iterate {
        function: String,
        #[arg(long)]
        k: usize,
    },
    /// Inverse of a strictly increasing function.
    Invert { function: String },
    /// Decomposition into binomials and trinomials.
    Decompose {
        function: String,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Complete decomposability test, with the binomials when it holds.
    Complete { function: String },
    /// Whether `f . g = g . f`.
    Commute { f: String, g: String },
    /// Commutation certificate for two tropical polynomials without free term.
    Witness { f: String, g: String },
    /// Tropical parametrization of a polygonal line.
    Parametrize {
        polyline: String,
        #[arg(long, value_enum, default_value = "rational")]
        kind: Kind,
    },
    /// Checks a decomposition against a function, or a parametrization
    /// against a polygonal line.
    Verify { target: String, candidate: String },
    /// Commuting pair with slopes `(alpha, b alpha / a, alpha)` and `(a, b, a)`.
    ExamplePair {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Plain-text table of `x f(x)` at the breakpoints and one point past each end.
    Plot { function: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Roots { .. } => "roots",
            Command::Classify { .. } => "classify",
            Command::Compose { .. } => "compose",
            Command::Iterate { .. } => "iterate",
            Command::Invert { .. } => "invert",
            Command::Decompose { .. } => "decompose",
            Command::Complete { .. } => "complete",
            Command::Commute { .. } => "commute",
            Command::Witness { .. } => "witness",
            Command::Parametrize { .. } => "parametrize",
            Command::Verify { .. } => "verify",
            Command::ExamplePair { .. } => "example-pair",
            Command::Plot { .. } => "plot",
        }
    }

    fn inputs(&self) -> Vec<&str> {
        match self {
            Command::Eval { function, .. }
            | Command::Roots { function }
            | Command::Classify { function }
            | Command::Iterate { function, .. }
            | Command::Invert { function }
            | Command::Decompose { function, .. }
            | Command::Complete { function }
            | Command::Plot { function } => vec![function],
            Command::Compose { outer, inner } => vec![outer, inner],
            Command::Commute { f, g } | Command::Witness { f, g } => vec![f, g],
            Command::Parametrize { polyline, .. } => vec![polyline],
            Command::Verify { target, candidate } => vec![target, candidate],
            Command::ExamplePair { .. } => vec![],
        }
    }

    fn args(&self) -> Value {
        match self {
            Command::Eval { at, .. } => json!({ "at": at }),
            Command::Iterate { k, .. } => json!({ "k": k }),
            Command::Decompose { mode, .. } => json!({ "mode": mode_name(*mode) }),
            Command::Parametrize { kind, .. } => json!({ "kind": kind_name(*kind) }),
            Command::ExamplePair { t, alpha, a, b } => json!({ "t": t, "alpha": alpha, "a": a, "b": b }),
            _ => json!({}),
        }
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::AlgebraicPoly => "algebraic-poly",
        Mode::MonotoneAlgebraic => "monotone-algebraic",
        Mode::AlgebraicRational => "algebraic-rational",
        Mode::MonotoneInteger => "monotone-integer",
        Mode::IntegerRational => "integer-rational",
        Mode::Complete => "complete",
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Rational => "rational",
        Kind::Laurent => "laurent",
        Kind::Polynomial => "polynomial",
    }
}

fn tag_name(t: FunctionTag) -> &'static str {
    match t {
        FunctionTag::TropicalPolynomial => "tropical-polynomial",
        FunctionTag::TropicalLaurentPolynomial => "tropical-laurent-polynomial",
        FunctionTag::MonotoneIncreasing => "monotone-increasing",
        FunctionTag::MonotoneDecreasing => "monotone-decreasing",
        FunctionTag::NonDecreasing => "non-decreasing",
        FunctionTag::AlgebraicRational => "algebraic-rational",
        FunctionTag::IntegerRational => "integer-rational",
        FunctionTag::General => "general",
    }
}

/// What one run produced: a JSON report or, for `plot`, a plain table.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result payload plus the verification status when the command has one.
struct Payload {
    result: Value,
    verified: Option<bool>,
}

fn plain(result: Value) -> Payload {
    Payload { result, verified: None }
}

fn checked(result: Value, ok: bool) -> Payload {
    Payload {
        result,
        verified: Some(ok),
    }
}

fn read_input(path: &str) -> Result<Vec<u8>, CliError> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Input(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| CliError::Input(format!("reading {path}: {e}")))
    }
}

fn parse_json(bytes: &[u8], path: &str) -> Result<Value, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// SHA-256 over the inputs in order, each prefixed by its byte length.
fn digest(inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_be_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cmd: &Command) -> Outcome {
    let inputs: Result<Vec<Vec<u8>>, CliError> = cmd.inputs().into_iter().map(read_input).collect();
    let (payload, digest_hex) = match inputs {
        Ok(bytes) => {
            let d = digest(&bytes);
            if let Command::Plot { function } = cmd {
                return plot(&bytes[0], function);
            }
            (execute(cmd, &bytes), d)
        }
        Err(e) => (Err(e), digest(&[])),
    };

    let mut report = Map::new();
    report.insert("format_version".into(), json!(doc::FORMAT_VERSION));
    report.insert("command".into(), json!(cmd.name()));
    report.insert("args".into(), cmd.args());
    report.insert("input_digest".into(), json!(digest_hex));
    let (code, stderr) = match payload {
        Ok(p) => {
            report.insert("result".into(), p.result);
            let code = match p.verified {
                Some(v) => {
                    report.insert("verified".into(), json!(v));
                    if v {
                        0
                    } else {
                        2
                    }
                }
                None => 0,
            };
            let stderr = if code == 2 {
                "verification failed\n".to_string()
            } else {
                String::new()
            };
            (code, stderr)
        }
        Err(e) => {
            report.insert("error".into(), json!({ "kind": e.kind(), "message": e.to_string() }));
            (e.exit_code(), format!("error: {e}\n"))
        }
    };
    let mut stdout = serde_json::to_string_pretty(&Value::Object(report)).expect("report serializes");
    stdout.push('\n');
    Outcome { code, stdout, stderr }
}

fn plot(bytes: &[u8], path: &str) -> Outcome {
    let f = match parse_json(bytes, path).and_then(|v| parse_function(&v)) {
        Ok(f) => f,
        Err(e) => {
            return Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let mut out = String::from("# x\tf(x)\n");
    for (x, y) in f.sample_points() {
        out.push_str(&format!("{x}\t{y}\n"));
    }
    Outcome {
        code: 0,
        stdout: out,
        stderr: String::new(),
    }
}

fn execute(cmd: &Command, bytes: &[Vec<u8>]) -> Result<Payload, CliError> {
    let paths = cmd.inputs();
    let json_at = |i: usize| parse_json(&bytes[i], paths[i]);
    let function_at = |i: usize| json_at(i).and_then(|v| parse_function(&v));
    match cmd {
        Command::Eval { at, .. } => {
            let f = function_at(0)?;
            let x = parse_number_str(at)?;
            Ok(plain(json!({ "x": number(&x), "value": number(&f.eval(&x)) })))
        }
        Command::Roots { .. } => {
            let f = function_at(0)?;
            Ok(plain(json!({ "count": f.num_roots(), "roots": numbers(f.roots()) })))
        }
        Command::Classify { .. } => {
            let f = function_at(0)?;
            let class = f.classify();
            Ok(plain(json!({
                "class": tag_name(class.tag),
                "integer_slopes": class.slopes_integer,
                "tropical_algebraic": class.is_tropical_algebraic(),
                "edges": f.num_edges(),
                "zero_slope_edges": f.zero_slope_edges(),
                "blocks": f.blocks().len(),
            })))
        }
        Command::Compose { .. } => {
            let (g, h) = (function_at(0)?, function_at(1)?);
            Ok(plain(json!({ "function": function_doc(&g.compose(&h)) })))
        }
        Command::Iterate { k, .. } => {
            let f = function_at(0)?;
            Ok(plain(json!({ "function": function_doc(&f.iterate(*k)) })))
        }
        Command::Invert { .. } => {
            let f = function_at(0)?;
            let inv = f.inverse()?;
            let ok = f.compose(&inv).is_identity();
            Ok(checked(json!({ "function": function_doc(&inv) }), ok))
        }
        Command::Decompose { mode, .. } => {
            let f = function_at(0)?;
            let d = match mode {
                Mode::AlgebraicPoly => decompose_algebraic_polynomial(&f)?,
                Mode::MonotoneAlgebraic => decompose_monotone_algebraic(&f)?,
                Mode::AlgebraicRational => decompose_algebraic_rational(&f)?,
                Mode::MonotoneInteger => decompose_monotone_integer(&f)?,
                Mode::IntegerRational => decompose_integer_rational(&f)?,
                Mode::Complete => decompose_complete(&f)?,
            };
            let ok = verify(&d, &f);
            let mut result = decomposition_doc(&d);
            result["mode"] = json!(mode_name(*mode));
            Ok(checked(result, ok))
        }
        Command::Complete { .. } => {
            let f = function_at(0)?;
            let crit = complete_decomposability(f.slopes())?;
            if crit.decomposable {
                let d = decompose_complete(&f)?;
                let ok = verify(&d, &f);
                Ok(checked(
                    json!({ "decomposable": true, "q": numbers(&crit.q), "decomposition": decomposition_doc(&d) }),
                    ok,
                ))
            } else {
                Ok(plain(json!({ "decomposable": false, "q": numbers(&crit.q) })))
            }
        }
        Command::Commute { .. } => {
            let (f, g) = (function_at(0)?, function_at(1)?);
            let fg = f.compose(&g);
            let gf = g.compose(&f);
            let verdict = commutes(&f, &g);
            Ok(plain(json!({
                "commutes": verdict,
                "first_disagreement": fg.first_difference(&gf).as_ref().map(number),
            })))
        }
        Command::Witness { .. } => {
            let (f, g) = (function_at(0)?, function_at(1)?);
            match commuting_witness(&f, &g)? {
                WitnessOutcome::Witness(w) => {
                    let ok = w.verify(&f, &g);
                    Ok(checked(json!({ "witness": witness_doc(&w) }), ok))
                }
                WitnessOutcome::NoWitness {
                    first_disagreement,
                    reason,
                } => Ok(plain(json!({
                    "witness": Value::Null,
                    "reason": reason,
                    "first_disagreement": first_disagreement.as_ref().map(number),
                }))),
            }
        }
        Command::Parametrize { kind, .. } => {
            let line = json_at(0).and_then(|v| parse_polyline(&v))?;
            let p = match kind {
                Kind::Rational => parametrize_rational(&line),
                Kind::Laurent => parametrize_laurent(&line)?,
                Kind::Polynomial => parametrize_polynomial(&line)?,
            };
            let ok = verify_parametrization(&line, &p);
            let mut result = parametrization_doc(&p);
            result["polyline"] = polyline_doc(&line)["polyline"].clone();
            Ok(checked(result, ok))
        }
        Command::Verify { .. } => {
            let target = json_at(0)?;
            let candidate = json_at(1)?;
            if target.get("polyline").is_some() {
                let line = parse_polyline(&target)?;
                let p = parse_parametrization(&candidate)?;
                let ok = verify_parametrization(&line, &p);
                Ok(checked(json!({ "checked": "parametrization", "holds": ok }), ok))
            } else {
                let f = parse_function(&target)?;
                let d = parse_decomposition(&candidate)?;
                let ok = verify(&d, &f);
                Ok(checked(json!({ "checked": "decomposition", "holds": ok }), ok))
            }
        }
        Command::ExamplePair { t, alpha, a, b } => {
            let t: Q = parse_number_str(t)?;
            let (f, g) = build_example_pair(&t, *alpha, *a, *b)?;
            let ok = commutes(&f, &g);
            Ok(checked(json!({ "f": function_doc(&f), "g": function_doc(&g), "commutes": ok }), ok))
        }
        Command::Plot { .. } => unreachable!("plot is handled before execute"),
    }
}

fn side_doc(s: &SideWitness<Q>) -> Value {
    match s {
        SideWitness::SharedRoot { h, k, m } => {
            json!({ "type": "shared-root", "h": function_doc(h), "k": k, "m": m })
        }
        SideWitness::LinearPair { a, b } => json!({ "type": "linear-pair", "a": number(a), "b": number(b) }),
        SideWitness::IdentitySide => json!({ "type": "identity" }),
    }
}

fn witness_doc(w: &CommutationWitness<Q>) -> Value {
    match w {
        CommutationWitness::Translation { c1, c2 } => {
            json!({ "type": "translation", "c1": number(c1), "c2": number(c2) })
        }
        CommutationWitness::Sides { x0, left, right } => json!({
            "type": "sides",
            "x0": number(x0),
            "left": side_doc(left),
            "right": side_doc(right),
        }),
    }
}
