//! JSON encodings of values and reports.
//!
//! Rationals are strings (`"3/4"`), residues are integers, elements of a
//! quadratic algebra are `[x, y]` pairs, and every matrix or quaternion
//! carries its field or algebra next to the coordinates.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::clifford::{
    blade_key, parse_blade_key, Classification, ClassificationReport, CliffordSignature, Membership, Multivector,
};
use crate::crank::BoundReport;
use crate::exactfields::{BaseField, Elem, FieldSpec, QuadExt, Scalar};
use crate::matalg::{CompMatrix, FieldMatrix};
use crate::poincare::bigint_json;
use crate::quatalg::{QuatAlgebra, QuatKind, Quaternion};
use crate::weylinv::{GenFlavor, GenerationReport, LaurentPoly, SignedPermGroup};
use crate::zmod::{IntMatrix, LocalizationModel, SequenceReport, Smith};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("{0}")]
    Invalid(String),
}

fn bad(msg: impl Into<String>) -> CodecError {
    CodecError::Invalid(msg.into())
}

type Result<T> = std::result::Result<T, CodecError>;

pub fn field_to_json(f: BaseField) -> Value {
    Value::String(f.to_string())
}

/// `"Q"` or `"Fp:<p>"`.
pub fn parse_field(s: &str) -> Result<BaseField> {
    let s = s.trim();
    if s == "Q" {
        return Ok(BaseField::Rationals);
    }
    let p = s
        .strip_prefix("Fp:")
        .ok_or_else(|| bad(format!("unknown field {s:?}; use Q or Fp:<p>")))?;
    let p: u64 = p.parse().map_err(|_| bad(format!("bad prime in {s:?}")))?;
    BaseField::prime(p).map_err(|e| bad(e.to_string()))
}

pub fn field_from_json(v: &Value) -> Result<BaseField> {
    match v {
        Value::String(s) => parse_field(s),
        _ => Err(bad("field must be a string such as \"Q\" or \"Fp:5\"")),
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
            let b: BigInt = b.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
            if b.is_zero() {
                return Err(bad(format!("zero denominator in {s:?}")));
            }
            BigRational::new(a, b)
        }
        None => BigRational::from_integer(s.parse().map_err(|_| bad(format!("bad number {s:?}")))?),
    };
    Ok(r)
}

pub fn rational_to_json(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| bad(format!("non-integer number {n}; write rationals as strings"))),
        _ => Err(bad(format!("expected a number, got {v}"))),
    }
}

pub fn elem_to_json(e: &Elem) -> Value {
    match e {
        Elem::Rat(r) => rational_to_json(r),
        Elem::Mod { value, .. } => Value::from(*value),
    }
}

/// Reads an element of `field`; integers and `"a/b"` strings are accepted for both kinds.
pub fn elem_from_json(field: BaseField, v: &Value) -> Result<Elem> {
    let r = rational_from_json(v)?;
    match field {
        BaseField::Rationals => Ok(Elem::Rat(r)),
        BaseField::Prime(_) => {
            let num = field.from_bigint(r.numer());
            let den = field
                .from_bigint(r.denom())
                .inverse()
                .ok_or_else(|| bad(format!("denominator of {r} vanishes in {field}")))?;
            Ok(&num * &den)
        }
    }
}

pub fn spec_to_json(s: &FieldSpec) -> Value {
    match s {
        FieldSpec::Base(b) => field_to_json(*b),
        FieldSpec::Quad(q) => json!({"base": field_to_json(q.base()), "a": elem_to_json(q.param())}),
    }
}

pub fn spec_from_json(v: &Value) -> Result<FieldSpec> {
    match v {
        Value::Object(o) => {
            let base = field_from_json(get(o, "base")?)?;
            let a = elem_from_json(base, get(o, "a")?)?;
            Ok(FieldSpec::Quad(QuadExt::new(a).map_err(|e| bad(e.to_string()))?))
        }
        _ => Ok(FieldSpec::Base(field_from_json(v)?)),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Base(e) => elem_to_json(e),
        Scalar::Quad { re, im, .. } => json!([elem_to_json(re), elem_to_json(im)]),
    }
}

pub fn scalar_from_json(spec: &FieldSpec, v: &Value) -> Result<Scalar> {
    match spec {
        FieldSpec::Base(b) => Ok(Scalar::Base(elem_from_json(*b, v)?)),
        FieldSpec::Quad(q) => {
            let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("expected an [x, y] pair"))?;
            Ok(Scalar::quad(
                q,
                elem_from_json(q.base(), &pair[0])?,
                elem_from_json(q.base(), &pair[1])?,
            ))
        }
    }
}

fn get<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn obj(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("expected an object, got {v}")))
}

fn usize_field(o: &Map<String, Value>, key: &str) -> Result<usize> {
    get(o, key)?
        .as_u64()
        .and_then(|x| x.to_usize())
        .ok_or_else(|| bad(format!("{key:?} must be a nonnegative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

/// `{"field": "Q", "a": "-1", "b": "-1"}` or `{"field": "Q", "kind": "mat2"}`.
pub fn algebra_to_json(alg: &QuatAlgebra) -> Value {
    match alg.kind() {
        QuatKind::Standard { a, b } => {
            json!({"field": field_to_json(alg.base()), "a": elem_to_json(a), "b": elem_to_json(b)})
        }
        QuatKind::Matrix2 => json!({"field": field_to_json(alg.base()), "kind": "mat2"}),
    }
}

pub fn algebra_from_json(v: &Value) -> Result<Arc<QuatAlgebra>> {
    let o = obj(v)?;
    let field = field_from_json(get(o, "field")?)?;
    if o.get("kind").and_then(Value::as_str) == Some("mat2") {
        return Ok(QuatAlgebra::mat2(field));
    }
    let a = elem_from_json(field, get(o, "a")?)?;
    let b = elem_from_json(field, get(o, "b")?)?;
    QuatAlgebra::new(a, b).map_err(|e| bad(e.to_string()))
}

fn coeffs_to_json(z: &Quaternion) -> Value {
    Value::Array(z.coeffs().iter().map(elem_to_json).collect())
}

fn coeffs_from_json(alg: &Arc<QuatAlgebra>, v: &Value) -> Result<Quaternion> {
    let c = array(v, "coeffs")?;
    if c.len() != 4 {
        return Err(bad(format!("a quaternion has 4 coefficients, got {}", c.len())));
    }
    let base = alg.base();
    let e = [
        elem_from_json(base, &c[0])?,
        elem_from_json(base, &c[1])?,
        elem_from_json(base, &c[2])?,
        elem_from_json(base, &c[3])?,
    ];
    alg.element(e).map_err(|e| bad(e.to_string()))
}

pub fn quaternion_to_json(z: &Quaternion) -> Value {
    json!({"algebra": algebra_to_json(z.algebra()), "coeffs": coeffs_to_json(z)})
}

pub fn quaternion_from_json(v: &Value) -> Result<Quaternion> {
    let o = obj(v)?;
    let alg = algebra_from_json(get(o, "algebra")?)?;
    coeffs_from_json(&alg, get(o, "coeffs")?)
}

pub fn comp_matrix_to_json(z: &CompMatrix) -> Value {
    json!({
        "algebra": algebra_to_json(z.algebra()),
        "m": z.rows(),
        "n": z.cols(),
        "entries": z.entries().iter().map(coeffs_to_json).collect::<Vec<_>>(),
    })
}

/// Accepts row-major `"entries"` (coefficient 4-vectors) or, for algebras
/// with a matrix form, `"blocks"`: the `2m` rows of the `2m×2n` matrix over `k`.
pub fn comp_matrix_from_json(v: &Value) -> Result<CompMatrix> {
    let o = obj(v)?;
    let alg = algebra_from_json(get(o, "algebra")?)?;
    let (m, n) = (usize_field(o, "m")?, usize_field(o, "n")?);
    if m == 0 || n == 0 {
        return Err(bad("matrix dimensions must be positive"));
    }
    if let Some(blocks) = o.get("blocks") {
        let rows = array(blocks, "blocks")?;
        if rows.len() != 2 * m {
            return Err(bad(format!("blocks need {} rows, got {}", 2 * m, rows.len())));
        }
        let base = alg.base();
        let mut flat = Vec::with_capacity(4 * m * n);
        for r in rows {
            let r = array(r, "block row")?;
            if r.len() != 2 * n {
                return Err(bad(format!("block rows need {} entries, got {}", 2 * n, r.len())));
            }
            for x in r {
                flat.push(Scalar::Base(elem_from_json(base, x)?));
            }
        }
        let fm = FieldMatrix::new(FieldSpec::Base(base), 2 * m, 2 * n, flat).map_err(|e| bad(e.to_string()))?;
        return crate::matalg::unflatten_split(&alg, &fm).map_err(|e| bad(e.to_string()));
    }
    let entries = array(get(o, "entries")?, "entries")?;
    if entries.len() != m * n {
        return Err(bad(format!("{} entries for a {m}x{n} matrix", entries.len())));
    }
    let entries = entries
        .iter()
        .map(|e| coeffs_from_json(&alg, e))
        .collect::<Result<Vec<_>>>()?;
    CompMatrix::new(alg, m, n, entries).map_err(|e| bad(e.to_string()))
}

pub fn field_matrix_to_json(m: &FieldMatrix) -> Value {
    let rows: Vec<Value> = m
        .row_vecs()
        .iter()
        .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
        .collect();
    json!({"field": spec_to_json(m.spec()), "m": m.rows(), "n": m.cols(), "rows": rows})
}

pub fn field_matrix_from_json(v: &Value) -> Result<FieldMatrix> {
    let o = obj(v)?;
    let spec = spec_from_json(get(o, "field")?)?;
    let (m, n) = (usize_field(o, "m")?, usize_field(o, "n")?);
    let rows = array(get(o, "rows")?, "rows")?;
    if rows.len() != m {
        return Err(bad(format!("{} rows for m = {m}", rows.len())));
    }
    let mut entries = Vec::with_capacity(m * n);
    for r in rows {
        let r = array(r, "row")?;
        if r.len() != n {
            return Err(bad(format!("row of length {} for n = {n}", r.len())));
        }
        for x in r {
            entries.push(scalar_from_json(&spec, x)?);
        }
    }
    FieldMatrix::new(spec, m, n, entries).map_err(|e| bad(e.to_string()))
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.row_vecs()
            .iter()
            .map(|r| Value::Array(r.iter().map(bigint_json).collect()))
            .collect(),
    )
}

/// A list of equal-length integer rows; `cols` fixes the width of an empty list.
pub fn int_matrix_from_json(v: &Value, cols: Option<usize>) -> Result<IntMatrix> {
    let rows = array(v, "matrix")?;
    let width = rows.first().and_then(Value::as_array).map(Vec::len).or(cols).unwrap_or(0);
    let mut entries = Vec::new();
    for r in rows {
        let r = array(r, "row")?;
        if r.len() != width {
            return Err(bad("ragged integer matrix"));
        }
        for x in r {
            let b: BigInt = match x {
                Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("integers only"))?,
                Value::String(s) => s.parse().map_err(|_| bad(format!("bad integer {s:?}")))?,
                _ => return Err(bad("integers only")),
            };
            entries.push(b);
        }
    }
    IntMatrix::new(rows.len(), width, entries).map_err(|e| bad(e.to_string()))
}

pub fn smith_to_json(s: &Smith) -> Value {
    json!({
        "U": int_matrix_to_json(&s.u),
        "D": int_matrix_to_json(&s.d),
        "V": int_matrix_to_json(&s.v),
        "invariant_factors": s.invariant_factors().iter().map(bigint_json).collect::<Vec<_>>(),
        "rank": s.rank(),
    })
}

pub fn sequence_report_to_json(r: &SequenceReport) -> Value {
    json!({
        "injective_f": r.injective_f,
        "composite_zero": r.composite_zero,
        "exact_middle": r.exact_middle,
        "surjective_g": r.surjective_g,
        "splits": r.splits,
    })
}

pub fn localization_to_json(l: &LocalizationModel) -> Value {
    let signs: String = l.signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
    json!({
        "n": l.n,
        "s_max": l.s_max,
        "signs": signs,
        "delta_injective": l.checks.injective_f,
        "exact": l.checks.exact_middle && l.checks.surjective_g,
        "splits": l.checks.splits,
        "middle_rank": l.middle_rank,
        "invariant_factors": l.invariant_factors.iter().map(bigint_json).collect::<Vec<_>>(),
        "checks": sequence_report_to_json(&l.checks),
    })
}

pub fn multivector_to_json(x: &Multivector) -> Value {
    let map: Map<String, Value> = x
        .terms_grlex()
        .into_iter()
        .map(|(m, c)| (blade_key(m), rational_to_json(c)))
        .collect();
    Value::Object(map)
}

pub fn multivector_from_json(sig: CliffordSignature, v: &Value) -> Result<Multivector> {
    let o = obj(v)?;
    let mut x = Multivector::zero(sig);
    for (k, c) in o {
        let mask = parse_blade_key(k, sig.n()).ok_or_else(|| bad(format!("bad blade key {k:?} for {sig}")))?;
        let c = rational_from_json(c)?;
        x = x
            .try_add(&Multivector::blade(sig, mask, c))
            .map_err(|e| bad(e.to_string()))?;
    }
    Ok(x)
}

pub fn signature_to_json(sig: CliffordSignature) -> Value {
    json!([sig.p(), sig.q()])
}

/// Multivector with its signature: `{"signature": [p, q], "coeffs": {...}}`.
pub fn signed_multivector_to_json(x: &Multivector) -> Value {
    json!({"signature": signature_to_json(x.signature()), "coeffs": multivector_to_json(x)})
}

pub fn signed_multivector_from_json(v: &Value) -> Result<Multivector> {
    let o = obj(v)?;
    let s = array(get(o, "signature")?, "signature")?;
    let pq: Vec<usize> = s.iter().filter_map(|x| x.as_u64().and_then(|y| y.to_usize())).collect();
    if pq.len() != 2 || s.len() != 2 {
        return Err(bad("signature must be [p, q]"));
    }
    let sig = CliffordSignature::new(pq[0], pq[1]).map_err(|e| bad(e.to_string()))?;
    multivector_from_json(sig, get(o, "coeffs")?)
}

pub fn classification_to_json(c: &Classification) -> Value {
    json!({"base": c.base.label(), "matrix_size": c.matrix_size, "direct_sum": c.direct_sum})
}

pub fn classification_report_to_json(r: &ClassificationReport) -> Value {
    json!({
        "p": r.p,
        "q": r.q,
        "classification": classification_to_json(&r.classification),
        "dimension": r.dimension,
        "dimension_agrees": r.dimension_agrees,
        "center_dim": r.center_dim,
        "predicted_center_dim": r.predicted_center_dim,
        "center_square": r.center_square.as_ref().map(rational_to_json),
        "transport": r.transport.as_ref().map(|t| json!({"target": t.target, "ok": t.ok})),
        "printed_table_agrees": r.printed_table_agrees,
        "agrees": r.agrees,
    })
}

pub fn membership_to_json(m: &Membership) -> Value {
    json!({
        "in_gamma": m.in_gamma,
        "in_even_part": m.in_even_part,
        "induced_matrix": m.induced.as_ref().map(field_matrix_to_json),
        "induced_det": m.induced_det.as_ref().map(rational_to_json),
        "spin_witness": m
            .spin_witness
            .as_ref()
            .map(|fs| fs.iter().map(multivector_to_json).collect::<Vec<_>>()),
    })
}

pub fn bound_report_to_json(r: &BoundReport) -> Value {
    let counterexample = r.counterexample.as_ref().map(|c| {
        json!({
            "trial": c.trial,
            "reason": c.reason,
            "matrices": c.matrices.iter().map(comp_matrix_to_json).collect::<Vec<_>>(),
            "coefficients": c
                .coefficients
                .as_ref()
                .map(|cs| cs.iter().map(coeffs_to_json).collect::<Vec<_>>()),
        })
    });
    json!({
        "params": {
            "algebra": algebra_to_json(&r.algebra),
            "m": r.params.m,
            "n": r.params.n,
            "d": r.params.d,
            "seed": r.params.seed,
            "entry_bound": r.params.entry_bound,
            "m_zero": r.m_zero,
            "family_size": r.family_size,
        },
        "trials": r.trials,
        "successes": r.successes,
        "counterexample": counterexample,
    })
}

pub fn laurent_to_json(f: &LaurentPoly) -> Value {
    json!({"n": f.nvars(), "poly": f.to_string()})
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentPoly> {
    let o = obj(v)?;
    let n = usize_field(o, "n")?;
    let s = get(o, "poly")?.as_str().ok_or_else(|| bad("poly must be a string"))?;
    LaurentPoly::parse(s, Some(n)).map_err(|e| bad(e.to_string()))
}

/// `{"flavor": "BC", "n": 3}`; products as `{"flavor": "Product", "factors": [...]}`.
pub fn group_to_json(g: &SignedPermGroup) -> Value {
    let simple = |f: &str, n: &usize| json!({"flavor": f, "n": n});
    match g {
        SignedPermGroup::Sym(n) => simple("A", n),
        SignedPermGroup::Hyperoctahedral(n) => simple("BC", n),
        SignedPermGroup::EvenSigned(n) => simple("D", n),
        SignedPermGroup::Trivial(n) => simple("Trivial", n),
        SignedPermGroup::Signs(n) => simple("Signs", n),
        SignedPermGroup::Product(fs) => json!({"flavor": "Product", "factors": fs.iter().map(group_to_json).collect::<Vec<_>>()}),
    }
}

pub fn group_from_json(v: &Value) -> Result<SignedPermGroup> {
    let o = obj(v)?;
    let flavor = get(o, "flavor")?.as_str().ok_or_else(|| bad("flavor must be a string"))?;
    if flavor == "Product" {
        let fs = array(get(o, "factors")?, "factors")?;
        return Ok(SignedPermGroup::Product(fs.iter().map(group_from_json).collect::<Result<_>>()?));
    }
    let n = usize_field(o, "n")?;
    match flavor {
        "A" | "Sym" | "S" => Ok(SignedPermGroup::Sym(n)),
        "BC" | "B" | "C" | "W" | "Hyperoctahedral" => Ok(SignedPermGroup::Hyperoctahedral(n)),
        "D" | "EvenSigned" => Ok(SignedPermGroup::EvenSigned(n)),
        "Trivial" => Ok(SignedPermGroup::Trivial(n)),
        "Signs" => Ok(SignedPermGroup::Signs(n)),
        other => Err(bad(format!("unknown group flavor {other:?}"))),
    }
}

pub fn flavor_label(f: GenFlavor) -> &'static str {
    match f {
        GenFlavor::Sym => "A",
        GenFlavor::Hyperoctahedral => "BC",
    }
}

pub fn generation_report_to_json(r: &GenerationReport) -> Value {
    json!({
        "flavor": flavor_label(r.flavor),
        "n": r.n,
        "degree_bound": r.degree_bound,
        "checked": r.checked,
        "expressible": r.expressible,
        "inconclusive": r.inconclusive.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

/// Structured error object written to stderr by the command-line tool.
pub fn error_to_json(kind: &str, message: &str) -> Value {
    json!({"error": {"kind": kind, "message": message}})
}
