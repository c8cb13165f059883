//! JSON documents for functions, polygonal lines, decompositions and
//! parametrizations. Every number travels as a string `"p"` or `"p/q"` in
//! lowest terms; JSON integers are accepted on input, floats never are.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use tropdec::{
    Composant, ComposantKind, Decomposition, Monomial, MonomialMode, Parametrization, ParametrizationKind,
    PolygonalLine, Pwl, Rational, Stage,
};

use crate::CliError;

pub const FORMAT_VERSION: u64 = 1;

type Q = Rational;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn canonical_digits(s: &str, allow_zero: bool) -> bool {
    !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" && allow_zero || !s.starts_with('0'))
}

/// Parses `"p"` or `"p/q"`, insisting on the form `number_to_string` produces.
pub fn parse_number_str(s: &str) -> Result<Q, CliError> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !canonical_digits(num, den.is_none()) {
        return Err(bad(format!("not a canonical rational: {s:?}")));
    }
    let mut value: Q = num.parse().map_err(|_| bad(format!("not a rational: {s:?}")))?;
    if let Some(d) = den {
        if !canonical_digits(d, false) || d == "1" {
            return Err(bad(format!("not a canonical rational: {s:?}")));
        }
        let d: Q = d.parse().map_err(|_| bad(format!("not a rational: {s:?}")))?;
        let r = value.clone() / d.clone();
        if *r.denom() != d.to_integer() {
            return Err(bad(format!("fraction not in lowest terms: {s:?}")));
        }
        value = r;
    }
    if neg {
        if value.is_zero() {
            return Err(bad("negative zero is not canonical"));
        }
        value = -value;
    }
    Ok(value)
}

pub fn parse_number(v: &Value) -> Result<Q, CliError> {
    match v {
        Value::String(s) => parse_number_str(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Q::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Q::from_integer(u.into()))
            } else {
                Err(bad(format!("floating-point literal {n} is not allowed")))
            }
        }
        other => Err(bad(format!("expected a number, got {other}"))),
    }
}

pub fn number(x: &Q) -> Value {
    Value::String(x.to_string())
}

pub fn numbers(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(number).collect())
}

fn parse_numbers(v: &Value, what: &str) -> Result<Vec<Q>, CliError> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))?
        .iter()
        .map(parse_number)
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| bad(format!("{what} must be an object")))
}

fn check_version(obj: &Map<String, Value>) -> Result<(), CliError> {
    match obj.get("format_version") {
        None => Ok(()),
        Some(v) if v.as_u64() == Some(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(bad(format!("unsupported format_version {v}"))),
    }
}

/// Reads a function from either a `pwl` or a `monomials` representation.
pub fn parse_function(v: &Value) -> Result<Pwl, CliError> {
    let obj = object(v, "function document")?;
    check_version(obj)?;
    match (obj.get("pwl"), obj.get("monomials")) {
        (Some(p), None) => {
            let p = object(p, "pwl")?;
            let breaks = parse_numbers(field(p, "breakpoints")?, "breakpoints")?;
            let slopes = parse_numbers(field(p, "slopes")?, "slopes")?;
            let anchor = parse_numbers(field(p, "anchor")?, "anchor")?;
            if anchor.len() != 2 {
                return Err(bad("anchor must be [x, f(x)]"));
            }
            let [x, y]: [Q; 2] = anchor.try_into().unwrap();
            Ok(Pwl::new(breaks, slopes, (x, y))?)
        }
        (None, Some(m)) => {
            let m = object(m, "monomials")?;
            let mode = match field(m, "mode")?.as_str() {
                Some("min") => MonomialMode::Min,
                Some("max") => MonomialMode::Max,
                _ => return Err(bad("monomial mode must be \"min\" or \"max\"")),
            };
            let terms = field(m, "terms")?
                .as_array()
                .ok_or_else(|| bad("terms must be an array"))?
                .iter()
                .map(|t| {
                    let pair = parse_numbers(t, "term")?;
                    match pair.as_slice() {
                        [s, c] => Ok(Monomial {
                            slope: s.clone(),
                            constant: Some(c.clone()),
                        }),
                        _ => Err(bad("each term is [slope, constant]")),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Pwl::from_monomials(terms, mode)?)
        }
        _ => Err(bad("function document needs exactly one of \"pwl\" or \"monomials\"")),
    }
}

pub fn function_doc(f: &Pwl) -> Value {
    let (x, y) = f.anchor();
    json!({
        "format_version": FORMAT_VERSION,
        "pwl": {
            "breakpoints": numbers(f.breakpoints()),
            "slopes": numbers(f.slopes()),
            "anchor": [number(&x), number(&y)],
        }
    })
}

pub fn parse_polyline(v: &Value) -> Result<PolygonalLine<Q>, CliError> {
    let obj = object(v, "polyline document")?;
    check_version(obj)?;
    let p = object(field(obj, "polyline")?, "polyline")?;
    let vertices = field(p, "vertices")?
        .as_array()
        .ok_or_else(|| bad("vertices must be an array"))?
        .iter()
        .map(|v| parse_numbers(v, "vertex"))
        .collect::<Result<Vec<_>, _>>()?;
    let ray_in = parse_numbers(field(p, "ray_in")?, "ray_in")?;
    let ray_out = parse_numbers(field(p, "ray_out")?, "ray_out")?;
    Ok(PolygonalLine::new(vertices, ray_in, ray_out)?)
}

pub fn polyline_doc(line: &PolygonalLine<Q>) -> Value {
    json!({
        "format_version": FORMAT_VERSION,
        "polyline": {
            "vertices": line.vertices().iter().map(|v| numbers(v)).collect::<Vec<_>>(),
            "ray_in": numbers(line.ray_in()),
            "ray_out": numbers(line.ray_out()),
        }
    })
}

pub fn decomposition_doc(d: &Decomposition<Q>) -> Value {
    let c = d.counts();
    json!({
        "composants": d.composants().iter().map(|c| json!({
            "kind": c.kind.name(),
            "stage": c.stage.name(),
            "function": function_doc(&c.function),
        })).collect::<Vec<_>>(),
        "counts": {
            "k": c.k2 + c.k3,
            "k0": c.k0,
            "k1": c.k1,
            "k2": c.k2,
            "k3": c.k3,
        },
        "negated": d.negated(),
        "steps": d.steps(),
    })
}

/// Accepts a decomposition object or a report whose `result` holds one
/// (possibly nested under `decomposition`).
pub fn parse_decomposition(v: &Value) -> Result<Decomposition<Q>, CliError> {
    let mut cur = v;
    loop {
        let obj = object(cur, "decomposition document")?;
        if obj.contains_key("composants") {
            break;
        }
        cur = obj
            .get("result")
            .or_else(|| obj.get("decomposition"))
            .ok_or_else(|| bad("no \"composants\" list found"))?;
    }
    let obj = object(cur, "decomposition")?;
    let comps = field(obj, "composants")?
        .as_array()
        .ok_or_else(|| bad("composants must be an array"))?
        .iter()
        .map(|c| {
            let c = object(c, "composant")?;
            let kind = field(c, "kind")?
                .as_str()
                .and_then(ComposantKind::from_name)
                .ok_or_else(|| bad("unknown composant kind"))?;
            let stage = match c.get("stage") {
                Some(s) => s.as_str().and_then(Stage::from_name).ok_or_else(|| bad("unknown stage"))?,
                None => Stage::Monotone,
            };
            Ok(Composant::new(parse_function(field(c, "function")?)?, kind, stage))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Decomposition::new(comps))
}

pub fn parametrization_doc(p: &Parametrization<Q>) -> Value {
    json!({
        "kind": p.kind.name(),
        "chain": numbers(&p.chain),
        "m": number(&p.m),
        "functions": p.functions.iter().map(function_doc).collect::<Vec<_>>(),
    })
}

pub fn parse_kind(name: &str) -> Option<ParametrizationKind> {
    [
        ParametrizationKind::Rational,
        ParametrizationKind::LaurentPolynomial,
        ParametrizationKind::Polynomial,
    ]
    .into_iter()
    .find(|k| k.name() == name)
}

/// Accepts a parametrization object or a report whose `result` holds one.
pub fn parse_parametrization(v: &Value) -> Result<Parametrization<Q>, CliError> {
    let mut cur = v;
    while !object(cur, "parametrization document")?.contains_key("functions") {
        cur = object(cur, "parametrization document")?
            .get("result")
            .ok_or_else(|| bad("no \"functions\" list found"))?;
    }
    let obj = object(cur, "parametrization")?;
    let functions = field(obj, "functions")?
        .as_array()
        .ok_or_else(|| bad("functions must be an array"))?
        .iter()
        .map(parse_function)
        .collect::<Result<Vec<_>, _>>()?;
    let kind = match obj.get("kind") {
        Some(k) => k.as_str().and_then(parse_kind).ok_or_else(|| bad("unknown parametrization kind"))?,
        None => ParametrizationKind::Rational,
    };
    let chain = match obj.get("chain") {
        Some(c) => parse_numbers(c, "chain")?,
        None => Vec::new(),
    };
    let m = match obj.get("m") {
        Some(m) => parse_number(m)?,
        None => Q::one(),
    };
    if chain.iter().any(|c| !c.is_positive()) {
        return Err(bad("chain factors must be positive"));
    }
    Ok(Parametrization { functions, kind, chain, m })
}
