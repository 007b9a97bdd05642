//! Text rendering and the `kmalg/1` JSON interchange format.
//!
//! Scalars travel as `["p/q", "p/q"]` string pairs so that values stay exact.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::findim::{
    make_abelian, make_sl, make_so, make_su, BaseField, FiniteAutomorphism, FiniteLieAlgebra,
    MatrixOp,
};
use crate::involution::{involution_from_invariants, InvolutionDescriptor, RealFormDescriptor};
use crate::kmext::{ExtendedElement, KmAlgebra};
use crate::linalg::CMatrix;
use crate::loops::{LoopAlgebra, LoopElement};
use crate::osaka::{
    build_catalog_a1, complex_counterexample, euclidean_example, first_kind_example,
    product_example, OsakaClass, OsakaRecord, OsakaReport,
};
use crate::scalar::{parse_rational, rat, rat_to_string, Scalar};

pub const SCHEMA: &str = "kmalg/1";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InputError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid parameter: {0}")]
    Param(String),
}

fn schema_err(msg: impl Into<String>) -> InputError {
    InputError::Schema(msg.into())
}

fn text_err(text: &str, msg: impl Into<String>) -> InputError {
    InputError::Parse {
        location: format!("{text:?}"),
        message: msg.into(),
    }
}

// ---------------------------------------------------------------------------
// Text

fn scaled(s: &Scalar, sym: &str) -> String {
    if *s == Scalar::from_int(1) {
        sym.to_string()
    } else if *s == Scalar::from_int(-1) {
        format!("\u{2212}{sym}")
    } else {
        format!("{s}·{sym}")
    }
}

fn signed_join(pieces: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in pieces.iter().enumerate() {
        match p.strip_prefix('\u{2212}') {
            Some(rest) if i > 0 => {
                out.push_str(" \u{2212} ");
                out.push_str(rest);
            }
            _ => {
                if i > 0 {
                    out.push_str(" + ");
                }
                out.push_str(p);
            }
        }
    }
    out
}

fn unit_name(i: usize, j: usize, size: usize) -> String {
    if size > 9 {
        format!("E({},{})", i + 1, j + 1)
    } else {
        format!("E{}{}", i + 1, j + 1)
    }
}

fn exponent(k: i64, m: u32) -> String {
    let e = rat(k, i64::from(m));
    let s = rat_to_string(&e).replace('-', "\u{2212}");
    if e.is_integer() {
        s
    } else {
        format!("({s})")
    }
}

/// Matrix form of every nonzero coefficient, ordered by exponent, followed by
/// the `c` and `d` parts. The zero element renders as `0`.
pub fn render_element(g: &FiniteLieAlgebra, x: &ExtendedElement) -> String {
    let mut pieces = Vec::new();
    let m = x.loop_part.twist_order();
    for (k, a) in x.loop_part.terms() {
        let mat = g.element(a);
        let n = mat.rows();
        let entries: Vec<String> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !mat[(i, j)].is_zero())
            .map(|(i, j)| scaled(&mat[(i, j)], &unit_name(i, j, n)))
            .collect();
        if !entries.is_empty() {
            pieces.push(format!("({})·z^{}", signed_join(&entries), exponent(*k, m)));
        }
    }
    for (s, sym) in [(&x.c, "c"), (&x.d, "d")] {
        if !s.is_zero() {
            pieces.push(scaled(s, sym));
        }
    }
    if pieces.is_empty() {
        "0".to_string()
    } else {
        signed_join(&pieces)
    }
}

/// Splits at top-level ` + ` and ` − `, returning `(negated, piece)` pairs.
fn split_signed(s: &str) -> Vec<(bool, String)> {
    let chars: Vec<char> = s.trim().chars().collect();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut neg = false;
    let mut cur = String::new();
    let mut i = 0;
    if chars.first() == Some(&'\u{2212}') || chars.first() == Some(&'-') {
        neg = true;
        i = 1;
    }
    while i < chars.len() {
        let c = chars[i];
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0
            && c == ' '
            && i + 2 < chars.len()
            && matches!(chars[i + 1], '+' | '\u{2212}' | '-')
            && chars[i + 2] == ' '
        {
            out.push((neg, cur.trim().to_string()));
            cur.clear();
            neg = chars[i + 1] != '+';
            i += 3;
            continue;
        }
        cur.push(c);
        i += 1;
    }
    out.push((neg, cur.trim().to_string()));
    out
}

fn parse_prefix(text: &str, prefix: &str) -> Result<Scalar, InputError> {
    if prefix.is_empty() {
        return Ok(Scalar::from_int(1));
    }
    let p = prefix
        .strip_suffix('·')
        .ok_or_else(|| text_err(text, "expected '·' before symbol"))?;
    p.parse::<Scalar>()
        .map_err(|e| text_err(text, e.to_string()))
}

fn parse_unit(text: &str, u: &str, size: usize) -> Result<(usize, usize), InputError> {
    let bad = || text_err(text, format!("bad matrix unit {u:?}"));
    let body = u.strip_prefix('E').ok_or_else(bad)?;
    let (i, j) = if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        (
            a.trim().parse::<usize>().map_err(|_| bad())?,
            b.trim().parse::<usize>().map_err(|_| bad())?,
        )
    } else {
        let d: Vec<usize> = body
            .chars()
            .map(|c| c.to_digit(10).map(|x| x as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        if d.len() != 2 {
            return Err(bad());
        }
        (d[0], d[1])
    };
    if i == 0 || j == 0 || i > size || j > size {
        return Err(bad());
    }
    Ok((i - 1, j - 1))
}

/// Inverse of [`render_element`]. Accepts ASCII `-` for U+2212.
pub fn parse_element(
    g: &FiniteLieAlgebra,
    twist_order: u32,
    text: &str,
) -> Result<ExtendedElement, InputError> {
    let size = g.matrix_size();
    let mut lp = LoopElement::zero(g.dim(), twist_order);
    let mut c = Scalar::from_int(0);
    let mut d = Scalar::from_int(0);
    if text.trim() == "0" {
        return Ok(ExtendedElement::new(lp, c, d));
    }
    for (neg, piece) in split_signed(text) {
        let sign = Scalar::from_int(if neg { -1 } else { 1 });
        if let Some(pre) = piece
            .strip_suffix('c')
            .filter(|p| p.is_empty() || p.ends_with('·'))
        {
            c = &c + &(&sign * &parse_prefix(text, pre)?);
        } else if let Some(pre) = piece
            .strip_suffix('d')
            .filter(|p| p.is_empty() || p.ends_with('·'))
        {
            d = &d + &(&sign * &parse_prefix(text, pre)?);
        } else {
            let (mat_s, exp_s) = piece
                .rsplit_once("·z^")
                .ok_or_else(|| text_err(text, format!("bad term {piece:?}")))?;
            let exp_s = exp_s.trim();
            let exp_s = exp_s
                .strip_prefix('(')
                .and_then(|e| e.strip_suffix(')'))
                .unwrap_or(exp_s);
            let e = parse_rational(exp_s).map_err(|e| text_err(text, e.to_string()))?;
            let k = &e * &rat(i64::from(twist_order), 1);
            if !k.is_integer() {
                return Err(text_err(
                    text,
                    format!("exponent {exp_s} is not a multiple of 1/{twist_order}"),
                ));
            }
            let k: i64 = k
                .to_integer()
                .try_into()
                .map_err(|_| text_err(text, "exponent out of range"))?;
            let inner = mat_s
                .strip_prefix('(')
                .and_then(|m| m.strip_suffix(')'))
                .ok_or_else(|| text_err(text, "matrix part must be parenthesized"))?;
            let mut mat = CMatrix::zeros(size, size);
            for (eneg, entry) in split_signed(inner) {
                let (pre, unit) = match entry.rfind('E') {
                    Some(p) => entry.split_at(p),
                    None => return Err(text_err(text, format!("bad entry {entry:?}"))),
                };
                let (i, j) = parse_unit(text, unit, size)?;
                let mut s = parse_prefix(text, pre)?;
                if eneg {
                    s = -s;
                }
                mat[(i, j)] = &mat[(i, j)] + &s;
            }
            let a = g.coords(&mat).map_err(|e| text_err(text, e.to_string()))?;
            lp.add_term(k, &a, &sign);
        }
    }
    Ok(ExtendedElement::new(lp, c, d))
}

// ---------------------------------------------------------------------------
// JSON

pub type ScalarJson = (String, String);

pub fn scalar_json(s: &Scalar) -> ScalarJson {
    (rat_to_string(&s.re), rat_to_string(&s.im))
}

pub fn scalar_from_json(p: &ScalarJson) -> Result<Scalar, InputError> {
    let re = parse_rational(&p.0).map_err(|e| schema_err(e.to_string()))?;
    let im = parse_rational(&p.1).map_err(|e| schema_err(e.to_string()))?;
    Ok(Scalar::new(re, im))
}

fn zero_pair() -> ScalarJson {
    ("0".into(), "0".into())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub k: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<ScalarJson>>,
    /// Alternative to `coords`: the coefficient as a matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<ScalarJson>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LoopJson {
    pub twist_order: u32,
    #[serde(default)]
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    pub schema: String,
    pub algebra: String,
    #[serde(rename = "loop")]
    pub loop_part: LoopJson,
    #[serde(default = "zero_pair")]
    pub c: ScalarJson,
    #[serde(default = "zero_pair")]
    pub d: ScalarJson,
}

/// Names accepted wherever an algebra is expected.
pub const ALGEBRA_NAMES: [&str; 8] = [
    "su2", "sl2", "su2xsu2", "sl2xsl2", "abelian1", "so4", "sl3", "sl2r",
];

pub fn named_algebra(name: &str) -> Result<FiniteLieAlgebra, InputError> {
    let pair = |a: FiniteLieAlgebra| FiniteLieAlgebra::direct_sum(&a, &a).expect("direct sum");
    let g = match name {
        "su2" => make_su(2),
        "sl2" => make_sl(2, BaseField::Complex),
        "sl2r" => make_sl(2, BaseField::Real),
        "su2xsu2" => make_su(2).map(pair),
        "sl2xsl2" => make_sl(2, BaseField::Complex).map(pair),
        "abelian1" => Ok(make_abelian(1, BaseField::Real)),
        "so4" => make_so(4, BaseField::Real),
        "sl3" => make_sl(3, BaseField::Complex),
        _ => {
            return Err(schema_err(format!(
                "unknown algebra {name:?}; expected one of {ALGEBRA_NAMES:?}"
            )))
        }
    };
    g.map_err(|e| schema_err(e.to_string()))
}

/// `L̂(g)` or, for twist order 2, `L̂(g, X ↦ −Xᵀ)`.
pub fn named_km(name: &str, twist_order: u32) -> Result<KmAlgebra, InputError> {
    let g = named_algebra(name)?;
    let loops = match twist_order {
        1 => LoopAlgebra::untwisted(&g),
        2 => {
            let sigma = FiniteAutomorphism::from_word(&g.complexified(), &[MatrixOp::NegT], 2)
                .map_err(|e| InputError::Param(e.to_string()))?;
            if sigma.actual_order(2) != Some(2) {
                return Err(InputError::Param(format!(
                    "X ↦ −Xᵀ does not have order 2 on {name}"
                )));
            }
            LoopAlgebra::twisted(&g, sigma).map_err(|e| InputError::Param(e.to_string()))?
        }
        m => {
            return Err(InputError::Param(format!(
                "twist order {m} is not supported (use 1 or 2)"
            )))
        }
    };
    Ok(KmAlgebra::new(loops))
}

pub fn element_json(algebra: &str, km: &KmAlgebra, x: &ExtendedElement) -> ElementJson {
    ElementJson {
        schema: SCHEMA.into(),
        algebra: algebra.into(),
        loop_part: LoopJson {
            twist_order: km.twist_order(),
            terms: x
                .loop_part
                .terms()
                .iter()
                .map(|(k, a)| TermJson {
                    k: *k,
                    coords: Some(a.iter().map(scalar_json).collect()),
                    matrix: None,
                })
                .collect(),
        },
        c: scalar_json(&x.c),
        d: scalar_json(&x.d),
    }
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str, origin: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse {
        location: format!("{origin}:{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn check_schema(v: &Value) -> Result<(), InputError> {
    match v.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => Ok(()),
        Some(other) => Err(schema_err(format!(
            "unsupported schema {other:?}, expected {SCHEMA:?}"
        ))),
        None => Err(schema_err(format!("missing \"schema\": {SCHEMA:?}"))),
    }
}

fn matrix_from_json(rows: &[Vec<ScalarJson>]) -> Result<CMatrix, InputError> {
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(scalar_from_json).collect())
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(schema_err("matrix must be square"));
    }
    Ok(CMatrix::from_rows(rows))
}

/// An element document together with its algebra.
pub fn element_from_json(v: &Value) -> Result<(String, KmAlgebra, ExtendedElement), InputError> {
    check_schema(v)?;
    let doc: ElementJson =
        serde_json::from_value(v.clone()).map_err(|e| schema_err(e.to_string()))?;
    let km = named_km(&doc.algebra, doc.loop_part.twist_order)?;
    let g = km.finite();
    let mut lp = LoopElement::zero(km.dim(), km.twist_order());
    for t in &doc.loop_part.terms {
        let a = match (&t.coords, &t.matrix) {
            (Some(c), None) => {
                if c.len() != km.dim() {
                    return Err(schema_err(format!(
                        "term k={} has {} coords, algebra has dimension {}",
                        t.k,
                        c.len(),
                        km.dim()
                    )));
                }
                c.iter()
                    .map(scalar_from_json)
                    .collect::<Result<Vec<_>, _>>()?
            }
            (None, Some(m)) => {
                let m = matrix_from_json(m)?;
                if m.rows() != g.matrix_size() {
                    return Err(schema_err(format!(
                        "term k={} matrix has the wrong size",
                        t.k
                    )));
                }
                g.coords(&m)
                    .map_err(|e| schema_err(format!("term k={}: {e}", t.k)))?
            }
            _ => {
                return Err(schema_err(format!(
                    "term k={} needs exactly one of \"coords\" or \"matrix\"",
                    t.k
                )))
            }
        };
        if km.loops().project_grade(t.k, &a) != a {
            return Err(schema_err(format!(
                "term k={} is not in the matching twist eigenspace",
                t.k
            )));
        }
        lp.add_term(t.k, &a, &Scalar::from_int(1));
    }
    let x = ExtendedElement::new(lp, scalar_from_json(&doc.c)?, scalar_from_json(&doc.d)?);
    Ok((doc.algebra, km, x))
}

fn op_from_json(v: &Value, size: usize) -> Result<MatrixOp, InputError> {
    if let Some(name) = v.as_str() {
        return Ok(match name {
            "Id" | "Identity" => MatrixOp::Identity,
            "Conj" => MatrixOp::Conj,
            "Transpose" => MatrixOp::Transpose,
            "Negate" => MatrixOp::Negate,
            "CStar" => MatrixOp::CStar,
            "NegT" | "mu" | "μ" => MatrixOp::NegT,
            "Swap" if size % 2 == 0 => MatrixOp::swap(size / 2),
            _ => return Err(schema_err(format!("unknown matrix operation {name:?}"))),
        });
    }
    if let Some(m) = v.get("ad") {
        let rows: Vec<Vec<ScalarJson>> =
            serde_json::from_value(m.clone()).map_err(|e| schema_err(e.to_string()))?;
        let m = matrix_from_json(&rows)?;
        if m.rows() != size || m.inverse().is_none() {
            return Err(schema_err(
                "\"ad\" needs an invertible matrix of the algebra's size",
            ));
        }
        return Ok(MatrixOp::Ad(m));
    }
    Err(schema_err(format!("bad matrix operation {v}")))
}

/// A finite automorphism given as an operation name, a word of operations
/// (last applied first), `{"word": [...]}` or `{"linear": matrix, "conjugate_linear": bool}`.
pub fn automorphism_from_json(
    g: &FiniteLieAlgebra,
    v: &Value,
) -> Result<FiniteAutomorphism, InputError> {
    let size = g.matrix_size();
    let word: Vec<MatrixOp> = if let Some(arr) = v
        .as_array()
        .or_else(|| v.get("word").and_then(Value::as_array))
    {
        arr.iter()
            .map(|o| op_from_json(o, size))
            .collect::<Result<_, _>>()?
    } else if let Some(lin) = v.get("linear") {
        let rows: Vec<Vec<ScalarJson>> =
            serde_json::from_value(lin.clone()).map_err(|e| schema_err(e.to_string()))?;
        let m = matrix_from_json(&rows)?;
        if m.rows() != g.dim() {
            return Err(schema_err("\"linear\" must act on coordinates"));
        }
        let conj = v
            .get("conjugate_linear")
            .and_then(Value::as_bool)
            .unwrap_or(false);
        return Ok(FiniteAutomorphism {
            linear_part: m,
            conjugate_linear: conj,
            order: 0,
        });
    } else {
        vec![op_from_json(v, size)?]
    };
    FiniteAutomorphism::from_word(g, &word, 0).map_err(|e| schema_err(e.to_string()))
}

/// Either `{"invariants": [ρ₊, ρ₋]}` or
/// `{"rho_plus", "reflect_time", "conjugate_linear"?, "epsilon", "gamma"?}`.
pub fn involution_from_json(km: &KmAlgebra, v: &Value) -> Result<InvolutionDescriptor, InputError> {
    let g = km.finite();
    let label = v.get("label").and_then(Value::as_str).unwrap_or("ρ");
    if let Some(pair) = v.get("invariants") {
        let arr = pair
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| schema_err("\"invariants\" needs two entries"))?;
        let plus = automorphism_from_json(g, &arr[0])?;
        let minus = automorphism_from_json(g, &arr[1])?;
        let (mut d, sigma) =
            involution_from_invariants(&plus, &minus).map_err(|e| schema_err(e.to_string()))?;
        if sigma.linear_part != km.loops().sigma().linear_part {
            return Err(InputError::Param(
                "ρ₋ρ₊ does not match the twist of the algebra".into(),
            ));
        }
        d.label = label.to_string();
        return Ok(d);
    }
    let rho = v
        .get("rho_plus")
        .ok_or_else(|| schema_err("missing \"rho_plus\""))?;
    let mut rho = automorphism_from_json(g, rho)?;
    let reflect = v
        .get("reflect_time")
        .and_then(Value::as_bool)
        .ok_or_else(|| schema_err("missing boolean \"reflect_time\""))?;
    let eps = match v.get("epsilon").and_then(Value::as_i64) {
        Some(1) => 1,
        Some(-1) => -1,
        _ => return Err(schema_err("\"epsilon\" must be 1 or -1")),
    };
    if let Some(cl) = v.get("conjugate_linear") {
        let cl = cl
            .as_bool()
            .ok_or_else(|| schema_err("\"conjugate_linear\" must be boolean"))?;
        if cl != rho.conjugate_linear && v.get("rho_plus").and_then(|r| r.get("linear")).is_some() {
            rho.conjugate_linear = cl;
        } else if cl != rho.conjugate_linear {
            return Err(schema_err(
                "\"conjugate_linear\" disagrees with \"rho_plus\"",
            ));
        }
    }
    let mut d = InvolutionDescriptor::standard(label, rho, reflect).with_epsilon(eps);
    if let Some(gm) = v.get("gamma") {
        let p: ScalarJson =
            serde_json::from_value(gm.clone()).map_err(|e| schema_err(e.to_string()))?;
        d.gamma = scalar_from_json(&p)?;
    }
    Ok(d)
}

/// Real forms addressable by name: the catalog forms plus aliases.
pub const FORM_NAMES: [&str; 8] = [
    "compact",
    "compact-twisted",
    "compact-pair",
    "a1[Id,Id]",
    "a1[Id,mu]",
    "a1[mu,mu]",
    "G_phi",
    "complex",
];

pub fn named_real_form(name: &str) -> Result<(KmAlgebra, RealFormDescriptor), InputError> {
    let record = match name {
        "compact" => "I-[Id,Id]",
        "compact-twisted" => "I-[Id,μ]",
        "compact-pair" => "II",
        "a1[Id,Id]" => "III-[Id,Id]",
        "a1[Id,mu]" | "a1[Id,μ]" => "III-[Id,μ]",
        "a1[mu,mu]" | "a1[μ,μ]" => "III-[μ,μ]",
        "G_phi" => "IV",
        "complex" => {
            let r = complex_counterexample();
            return Ok((r.km, r.real_form));
        }
        _ => {
            return Err(InputError::Param(format!(
                "unknown real form {name:?}; expected one of {FORM_NAMES:?}"
            )))
        }
    };
    let r = named_record(record)?;
    Ok((r.km, r.real_form))
}

/// Catalog records and the auxiliary examples, by name. ASCII `mu` is
/// accepted for `μ`.
pub fn named_record(name: &str) -> Result<OsakaRecord, InputError> {
    let name = name.replace("mu", "μ");
    match name.as_str() {
        "counterexample" => return Ok(complex_counterexample()),
        "euclidean" => return Ok(euclidean_example(1)),
        "product" => return Ok(product_example()),
        "first-kind" => return Ok(first_kind_example()),
        _ => {}
    }
    build_catalog_a1()
        .into_iter()
        .find(|r| r.name == name)
        .ok_or_else(|| InputError::Param(format!("unknown record {name:?}")))
}

fn class_from_str(s: &str) -> Result<OsakaClass, InputError> {
    Ok(match s {
        "I" => OsakaClass::I,
        "II" => OsakaClass::II,
        "III" => OsakaClass::III,
        "IV" => OsakaClass::IV,
        "Euclidean" => OsakaClass::Euclidean,
        _ => return Err(schema_err(format!("unknown type {s:?}"))),
    })
}

/// `{"schema", "catalog": NAME}` or `{"schema", "name"?, "form", "involution", "claimed_type"?}`.
pub fn record_from_json(v: &Value) -> Result<OsakaRecord, InputError> {
    check_schema(v)?;
    if let Some(name) = v.get("catalog") {
        let name = name
            .as_str()
            .ok_or_else(|| schema_err("\"catalog\" must be a string"))?;
        return named_record(name);
    }
    let form = v
        .get("form")
        .and_then(Value::as_str)
        .ok_or_else(|| schema_err("missing \"form\" or \"catalog\""))?;
    let (km, real_form) = named_real_form(form)?;
    let inv = v
        .get("involution")
        .ok_or_else(|| schema_err("missing \"involution\""))?;
    let involution = involution_from_json(&km, inv)?;
    let claimed_type = v
        .get("claimed_type")
        .and_then(Value::as_str)
        .map(class_from_str)
        .transpose()?;
    Ok(OsakaRecord {
        name: v
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or(form)
            .to_string(),
        km,
        real_form,
        involution,
        claimed_type,
        expected_k: None,
        expected_p: None,
        dual_name: None,
    })
}

pub fn osaka_report_json(r: &OsakaReport) -> Value {
    let irreducible = r.irreducible.as_ref().map(|i| match i {
        crate::osaka::Irreducibility::Irreducible => json!("Irreducible"),
        crate::osaka::Irreducibility::Reducible(w) => json!({ "Reducible": w }),
    });
    json!({
        "name": r.name,
        "degree": r.degree,
        "passed": r.passed(),
        "claimed_type": r.claimed_type.map(OsakaClass::as_str),
        "type_consistent": r.type_consistent,
        "checks": {
            "closure": r.checks.closure,
            "involutive": r.checks.involutive,
            "fix_compact": r.checks.fix_compact,
            "fix_abelian_zero": r.checks.fix_abelian_zero,
            "KP_match": r.checks.kp_match,
            "type": r.osaka_type.map(|t| t.as_str()),
            "effective": r.effective.map(|e| format!("{e:?}")),
            "irreducible": irreducible,
        },
        "notes": r.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_extended, trial_rng, Reality};
    use proptest::prelude::*;

    fn idiag(km: &KmAlgebra) -> Vec<Scalar> {
        let m = CMatrix::from_rows(vec![
            vec![Scalar::i(), Scalar::from_int(0)],
            vec![Scalar::from_int(0), -Scalar::i()],
        ]);
        km.finite().coords(&m).unwrap()
    }

    #[test]
    fn render_examples() {
        let km = named_km("su2", 1).unwrap();
        let g = km.finite();
        assert_eq!(render_element(g, &km.zero()), "0");
        assert_eq!(render_element(g, &km.c()), "c");
        let x = ExtendedElement::from_loop(LoopElement::monomial(1, idiag(&km), 1));
        assert_eq!(render_element(g, &x), "(i·E11 \u{2212} i·E22)·z^1");
        let y = x.add(&km.d().scale(&Scalar::from_int(-2)));
        assert_eq!(
            render_element(g, &y),
            "(i·E11 \u{2212} i·E22)·z^1 \u{2212} 2·d"
        );
        assert_eq!(parse_element(g, 1, "(i·E11 - i·E22)·z^1 - 2·d").unwrap(), y);
    }

    #[test]
    fn twisted_exponents() {
        let km = named_km("su2", 2).unwrap();
        let sym = km
            .finite()
            .coords(&CMatrix::from_int_rows(&[&[0, 1], &[1, 0]]))
            .unwrap();
        let x = ExtendedElement::from_loop(LoopElement::monomial(-1, sym, 2));
        let s = render_element(km.finite(), &x);
        assert_eq!(s, "(E12 + E21)·z^(\u{2212}1/2)");
        assert_eq!(parse_element(km.finite(), 2, &s).unwrap(), x);
    }

    #[test]
    fn parse_errors() {
        let km = named_km("sl2", 1).unwrap();
        assert!(parse_element(km.finite(), 1, "(E13)·z^1").is_err());
        assert!(parse_element(km.finite(), 1, "E12·z^1").is_err());
        assert!(parse_element(km.finite(), 1, "(E12)·z^1/2").is_err());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let km = named_km("sl2", 2).unwrap();
        let x = random_extended(km.loops(), &mut trial_rng(4, 0), 3, Reality::Complex);
        let doc = serde_json::to_value(element_json("sl2", &km, &x)).unwrap();
        let (name, km2, y) = element_from_json(&doc).unwrap();
        assert_eq!(name, "sl2");
        assert_eq!(km2.twist_order(), 2);
        assert_eq!(x, y);
        assert!(matches!(
            parse_json("{\"schema\": ", "x.json"),
            Err(InputError::Parse { .. })
        ));
        let mut bad = doc.clone();
        bad["schema"] = json!("kmalg/0");
        assert!(matches!(
            element_from_json(&bad),
            Err(InputError::Schema(_))
        ));
        let mut bad = doc;
        bad["loop"]["terms"] = json!([{"k": 1, "coords": [["1","0"],["0","0"],["0","0"]]}]);
        assert!(matches!(
            element_from_json(&bad),
            Err(InputError::Schema(_))
        ));
        assert!(matches!(named_km("su2", 3), Err(InputError::Param(_))));
    }

    #[test]
    fn matrix_terms() {
        let doc = json!({
            "schema": "kmalg/1", "algebra": "su2",
            "loop": {"twist_order": 1, "terms": [{"k": 1, "matrix": [[["0","1"],["0","0"]],[["0","0"],["0","-1"]]]}]}
        });
        let (_, km, x) = element_from_json(&doc).unwrap();
        assert_eq!(x.loop_part.coefficient(1), idiag(&km));
    }

    #[test]
    fn involution_documents() {
        let km = named_km("su2", 1).unwrap();
        let a = involution_from_json(&km, &json!({"invariants": ["Id", "Id"]})).unwrap();
        let b = involution_from_json(
            &km,
            &json!({"rho_plus": "Id", "reflect_time": true, "epsilon": -1}),
        )
        .unwrap();
        assert_eq!(a.to_map(), b.to_map());
        assert!(involution_from_json(&km, &json!({"invariants": ["Id", "mu"]})).is_err());
        assert!(involution_from_json(
            &km,
            &json!({"rho_plus": "Id", "reflect_time": true, "epsilon": 2})
        )
        .is_err());
        let rec =
            record_from_json(&json!({"schema": "kmalg/1", "catalog": "III-[mu,mu]"})).unwrap();
        assert_eq!(rec.name, "III-[μ,μ]");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn render_parse_round_trip(seed in any::<u64>(), alg in 0usize..4, twist in 1u32..=2) {
            let name = ["su2", "sl2", "su2xsu2", "sl3"][alg];
            let km = named_km(name, twist).unwrap();
            let x = random_extended(km.loops(), &mut trial_rng(seed, 0), 3, Reality::Complex);
            let s = render_element(km.finite(), &x);
            prop_assert_eq!(parse_element(km.finite(), twist, &s).unwrap(), x);
        }
    }
}
