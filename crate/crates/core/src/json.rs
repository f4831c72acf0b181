//! Canonical JSON forms of tensors, solutions and reports.
//!
//! Objects use `serde_json`'s default sorted map, and every term list is
//! emitted in key order, so equal values serialize to identical bytes.
//! Rationals are always strings (`"p/q"` or `"p"`).

use serde_json::{json, Map, Value};

use crate::builders::{EnlargementSolution, Kind};
use crate::dual::Analysis;
use crate::error::{Error, Result};
use crate::lie::{LieElement, MatrixUnit, RootVector};
use crate::rational::{self, Rational};
use crate::roots::{Classification, Series, ThetaFiltration};
use crate::tensor::{schouten, BiTensor, TriTensor};

pub fn rational(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(x) if x.is_i64() => Ok(rational::int(x.as_i64().expect("checked"))),
        other => Err(Error::Parse(format!(
            "expected a rational string, got {other}"
        ))),
    }
}

fn parse_rationals(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rationals".into()))?
        .iter()
        .map(parse_rational)
        .collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn index(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("field `{key}` must be a non-negative integer")))
}

fn unit(u: MatrixUnit) -> Value {
    json!({"i": u.i, "j": u.j})
}

fn parse_unit(v: &Value) -> Result<MatrixUnit> {
    Ok(MatrixUnit::new(index(v, "i")?, index(v, "j")?))
}

/// `[{"i", "j", "c"}]` sorted by `(i, j)`.
pub fn lie_element(x: &LieElement) -> Value {
    Value::Array(
        x.iter()
            .map(|(u, c)| json!({"i": u.i, "j": u.j, "c": rational(c)}))
            .collect(),
    )
}

pub fn parse_lie_element(n: usize, v: &Value) -> Result<LieElement> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse("a Lie element is an array of entries".into()))?;
    let entries = items
        .iter()
        .map(|e| Ok((parse_unit(e)?, parse_rational(field(e, "c")?)?)))
        .collect::<Result<Vec<_>>>()?;
    LieElement::from_entries(n, entries)
}

/// `{"n", "terms": [{"left", "right", "c"}]}`, both orientations of every wedge.
pub fn bitensor(r: &BiTensor) -> Value {
    let terms = r
        .terms()
        .iter()
        .map(|((a, b), c)| json!({"left": unit(*a), "right": unit(*b), "c": rational(c)}))
        .collect();
    json!({"n": r.n(), "terms": Value::Array(terms)})
}

pub fn parse_bitensor(v: &Value) -> Result<BiTensor> {
    let n = index(v, "n")?;
    if n < 2 {
        return Err(Error::Parse(format!("n = {n} is too small")));
    }
    let terms = field(v, "terms")?
        .as_array()
        .ok_or_else(|| Error::Parse("`terms` must be an array".into()))?
        .iter()
        .map(|t| {
            Ok((
                (
                    parse_unit(field(t, "left")?)?,
                    parse_unit(field(t, "right")?)?,
                ),
                parse_rational(field(t, "c")?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    BiTensor::from_terms(n, terms)
}

/// Where a tensor file came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub kind: Kind,
    pub n: usize,
    pub xi: Vec<Rational>,
    pub zeta: Option<Vec<Rational>>,
    pub normalization_c: Option<Rational>,
}

impl Provenance {
    fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "n": self.n,
            "xi": rationals(&self.xi),
            "zeta": self.zeta.as_deref().map_or(Value::Null, rationals),
            "normalization_c": self.normalization_c.as_ref().map_or(Value::Null, rational),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let kind = field(v, "kind")?
            .as_str()
            .ok_or_else(|| Error::Parse("`kind` must be a string".into()))?
            .parse()?;
        let opt = |key: &str| v.get(key).filter(|x| !x.is_null());
        Ok(Self {
            kind,
            n: index(v, "n")?,
            xi: opt("xi")
                .map(parse_rationals)
                .transpose()?
                .unwrap_or_default(),
            zeta: opt("zeta").map(parse_rationals).transpose()?,
            normalization_c: opt("normalization_c").map(parse_rational).transpose()?,
        })
    }
}

/// A tensor file: the tensor object with an optional `"provenance"` header.
pub fn tensor_file(r: &BiTensor, provenance: Option<&Provenance>) -> Value {
    let mut v = bitensor(r);
    if let Some(p) = provenance {
        v["provenance"] = p.to_json();
    }
    v
}

pub fn read_tensor_file(text: &str) -> Result<(BiTensor, Option<Provenance>)> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let r = parse_bitensor(&v)?;
    let p = v
        .get("provenance")
        .filter(|p| !p.is_null())
        .map(Provenance::from_json)
        .transpose()?;
    if let Some(p) = &p {
        if p.n != r.n() {
            return Err(Error::DimensionMismatch {
                left: p.n,
                right: r.n(),
            });
        }
    }
    Ok((r, p))
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// CYBE report: verdict, residual size and the first ten residual terms.
pub fn verify_report(r: &BiTensor) -> Result<Value> {
    let s = schouten(r)?;
    Ok(json!({
        "holds": s.is_zero(),
        "n": r.n(),
        "residual_term_count": s.term_count(),
        "residual_terms": first_terms(&s, 10),
    }))
}

fn first_terms(s: &TriTensor, k: usize) -> Value {
    Value::Array(
        s.terms()
            .iter()
            .take(k)
            .map(|(key, c)| Value::String(TriTensor::term_label(key, c)))
            .collect(),
    )
}

fn matrix(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| rationals(r)).collect())
}

pub fn solution(sol: &EnlargementSolution) -> Value {
    let closed = sol.closed_form.as_ref().map_or(Value::Null, |c| {
        json!({
            "agrees": c.agrees,
            "scale": c.scale.as_ref().map_or(Value::Null, rational),
            "mismatched": c.mismatched,
        })
    });
    let tried: Vec<Value> = sol
        .normalizations_tried
        .iter()
        .map(|(c, ok)| json!({"c": rational(c), "consistent": ok}))
        .collect();
    let elements = |xs: &[LieElement]| Value::Array(xs.iter().map(lie_element).collect());
    let mut out = json!({
        "n": sol.n,
        "exploratory": sol.exploratory,
        "normalization_c": rational(&sol.normalization_c),
        "normalizations_tried": tried,
        "unique": sol.unique,
        "solution_space_dim": sol.solution_space_dim,
        "cybe_holds": sol.cybe_holds,
        "gamma": sol.gamma.as_deref().map_or(Value::Null, matrix),
        "hat_h": elements(&sol.hat_h),
        "h_perp": elements(&sol.h_perp),
        "e_hat": elements(&sol.e_hat),
        "closed_form": closed,
    });
    if sol.exploratory {
        out["note"] = json!("exploratory even-n solve; not a normative result");
    }
    out
}

pub fn analysis(a: &Analysis) -> Value {
    let violations = a.grading_violations.as_ref().map_or(Value::Null, |vs| {
        Value::Array(
            vs.iter()
                .map(|v| json!({"left": v.left, "right": v.right, "target": v.target}))
                .collect(),
        )
    });
    let labels = |xs: &Option<Vec<String>>| xs.as_ref().map_or(Value::Null, |x| json!(x));
    json!({
        "carrier_dim": a.carrier.dim,
        "contains_borel": a.carrier.contains_borel,
        "contains_cartan": a.carrier.contains_cartan,
        "contains_nplus": a.carrier.contains_nplus,
        "neg_dim": a.carrier.negative_intersection_dim,
        "abelian_ideal_ok": a.abelian_ideal_ok,
        "graded": a.graded,
        "grading_violations": violations,
        "primitive": a.primitive,
        "quasiprimitive": labels(&a.quasiprimitive),
        "diagram_quasiprimitive": labels(&a.diagram_quasiprimitive),
        "criteria_agree": a.criteria_agree().map_or(Value::Null, Value::Bool),
    })
}

fn root(v: &RootVector) -> Value {
    json!(v.coords)
}

pub fn classification(
    series: Series,
    rank: usize,
    filtration: &ThetaFiltration,
    class: &Classification,
) -> Value {
    let mut m = Map::new();
    m.insert("series".into(), json!(series.letter().to_string()));
    m.insert("rank".into(), json!(rank));
    m.insert("type".into(), json!(class.type_tag.to_string()));
    m.insert("f".into(), json!(class.f));
    m.insert(
        "thetas".into(),
        Value::Array(filtration.thetas.iter().map(root).collect()),
    );
    m.insert("dims".into(), json!(filtration.subspace_dims));
    m.insert("dim_last".into(), json!(class.dim_last));
    m.insert("dim_prev".into(), json!(class.dim_prev));
    Value::Object(m)
}
