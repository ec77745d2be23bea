//! Canonical JSON encodings. Object keys come out sorted and every list is
//! in a canonical order, so equal values always serialize to equal bytes.
//! Rationals are always `"num/den"` strings.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::identity::IdentityReport;
use crate::poly::{Monomial, MultiPoly, VarId};
use crate::rational::Rational;
use crate::series::TruncatedSeries;
use crate::sheffer::{ShefferSpec, ShefferSystem};
use crate::sierpinski::{MatrixCheck, MultiplicativeReport, SierpinskiMatrix, SparseMatrix};
use crate::umbral::LinearFunctional;

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_fraction_string())
}

/// Accepts `"n/d"`, `"n"` or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => {
            n.as_i64().map(Rational::from_integer).ok_or_else(|| parse_err("an integer or a \"num/den\" string", v))
        }
        _ => Err(parse_err("a rational", v)),
    }
}

pub fn monomial_to_json(m: &Monomial) -> Value {
    Value::Array(m.factors().iter().map(|(v, e)| json!([v.to_string(), e])).collect())
}

pub fn monomial_from_json(v: &Value) -> Result<Monomial> {
    let items = v.as_array().ok_or_else(|| parse_err("a monomial array", v))?;
    let pairs = items
        .iter()
        .map(|item| match item.as_array().map(Vec::as_slice) {
            Some([name, e]) => {
                let var: VarId = name.as_str().ok_or_else(|| parse_err("a variable name", name))?.parse()?;
                let e = e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| parse_err("an exponent", e))?;
                Ok((var, e))
            }
            _ => Err(parse_err("a [variable, exponent] pair", item)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Monomial::from_pairs(pairs))
}

/// Terms leading first.
pub fn poly_to_json(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms().map(|(m, c)| json!({"coeff": rational_to_json(c), "monomial": monomial_to_json(m)})).collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<MultiPoly> {
    let items = v.as_array().ok_or_else(|| parse_err("a polynomial array", v))?;
    let mut p = MultiPoly::zero();
    for item in items {
        let (Some(c), Some(m)) = (item.get("coeff"), item.get("monomial")) else {
            return Err(parse_err("a {coeff, monomial} term", item));
        };
        p.add_term(monomial_from_json(m)?, rational_from_json(c)?);
    }
    Ok(p)
}

fn polys_to_json(ps: &[MultiPoly]) -> Value {
    Value::Array(ps.iter().map(poly_to_json).collect())
}

pub fn series_to_json(s: &TruncatedSeries) -> Value {
    json!({"order": s.order(), "coeffs": polys_to_json(s.coeffs())})
}

pub fn series_from_json(v: &Value) -> Result<TruncatedSeries> {
    let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| parse_err("an order", v))?;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("a coeffs array", v))?
        .iter()
        .map(poly_from_json)
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() as u64 != order + 1 {
        return Err(Error::Parse(format!("order {order} needs {} coefficients", order + 1)));
    }
    Ok(TruncatedSeries::new(coeffs, order as usize))
}

pub fn system_to_json(s: &ShefferSystem) -> Value {
    json!({
        "family": s.family(),
        "degree_bound": s.degree_bound(),
        "s": polys_to_json(s.s()),
        "p": polys_to_json(s.p()),
    })
}

/// Reads a custom family description:
///
/// ```json
/// {"form": "pair", "g": ["1", "1/2"], "f": [0, 1]}
/// {"form": "inverse", "h": [1, 0, "-1/2"], "fbar": [0, 1], "order": 8}
/// ```
///
/// Coefficient lists start at `t^0`. Without `"order"` the series are
/// truncated where the shorter list ends; with it they are zero-padded to
/// that order, which makes finite (polynomial) data usable at any degree.
pub fn spec_from_json(v: &Value) -> Result<ShefferSpec> {
    let bad = |msg: &str| Error::InvalidSpec(msg.to_string());
    let form = v.get("form").and_then(Value::as_str).ok_or_else(|| bad("missing \"form\""))?;
    let (a, b) = match form {
        "pair" => ("g", "f"),
        "inverse" => ("h", "fbar"),
        other => return Err(bad(&format!("unknown form {other:?}"))),
    };
    let list = |key: &str| -> Result<Vec<Rational>> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(&format!("missing coefficient list {key:?}")))?
            .iter()
            .map(rational_from_json)
            .collect()
    };
    let (ca, cb) = (list(a)?, list(b)?);
    if ca.is_empty() || cb.is_empty() {
        return Err(bad("empty coefficient list"));
    }
    let order = match v.get("order") {
        None => ca.len().min(cb.len()) - 1,
        Some(o) => o.as_u64().ok_or_else(|| bad("\"order\" must be a nonnegative integer"))? as usize,
    };
    let (sa, sb) = (TruncatedSeries::from_rationals(ca, order), TruncatedSeries::from_rationals(cb, order));
    Ok(match form {
        "pair" => ShefferSpec::PairGF { g: sa, f: sb },
        _ => ShefferSpec::InverseGF { h: sa, fbar: sb },
    })
}

pub fn spec_from_str(text: &str) -> Result<ShefferSpec> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    spec_from_json(&v)
}

pub fn sparse_entries_to_json(m: &SparseMatrix) -> Value {
    Value::Array(
        m.entries()
            .iter()
            .map(|(&(row, col), value)| json!({"row": row, "col": col, "value": poly_to_json(value)}))
            .collect(),
    )
}

pub fn matrix_to_json(m: &SierpinskiMatrix) -> Value {
    json!({
        "base": m.base(),
        "levels": m.levels(),
        "kind": m.kind().label(),
        "vars": polys_to_json(m.vars()),
        "entries": sparse_entries_to_json(m.matrix()),
    })
}

pub fn report_to_json(r: &IdentityReport) -> Value {
    let mut out = Map::new();
    out.insert("identity".into(), json!(r.identity));
    out.insert("params".into(), Value::Object(r.params.clone()));
    out.insert("pass".into(), json!(r.pass));
    out.insert("lhs".into(), poly_to_json(&r.lhs));
    out.insert("rhs".into(), poly_to_json(&r.rhs));
    out.insert("witness".into(), r.witness.as_ref().map_or(Value::Null, monomial_to_json));
    out.insert("mode".into(), json!(r.mode.label()));
    if !r.forms.is_empty() {
        out.insert("forms".into(), Value::Array(r.forms.iter().map(report_to_json).collect()));
    }
    Value::Object(out)
}

fn check_to_json(c: &MatrixCheck) -> Value {
    let failure = c.failure.as_ref().map_or(
        Value::Null,
        |f| json!({"row": f.row, "col": f.col, "lhs": poly_to_json(&f.lhs), "rhs": poly_to_json(&f.rhs)}),
    );
    json!({"identity": c.identity, "pass": c.pass(), "failure": failure})
}

/// The witness is the first failing entry, as `{"identity", "row", "col"}`.
pub fn multiplicative_to_json(r: &MultiplicativeReport) -> Value {
    let witness = r
        .checks
        .iter()
        .find_map(|c| c.failure.as_ref().map(|f| json!({"identity": c.identity, "row": f.row, "col": f.col})))
        .unwrap_or(Value::Null);
    json!({
        "identity": "multiplicative",
        "params": {"family": r.family, "base": r.base, "levels": r.levels},
        "pass": r.pass(),
        "checks": Value::Array(r.checks.iter().map(check_to_json).collect()),
        "witness": witness,
        "mode": r.mode.label(),
    })
}

pub fn functional_to_json(l: &LinearFunctional) -> Value {
    Value::Array(l.moments().iter().map(rational_to_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::arb_poly;
    use crate::sheffer::{expand_system, FamilyId};
    use proptest::prelude::*;

    #[test]
    fn poly_encoding_is_canonical() {
        let x = MultiPoly::var(VarId::x(0));
        let p = &(&x.pow(2) - &x) + &MultiPoly::constant(Rational::new(1, 6).unwrap());
        let v = poly_to_json(&p);
        assert_eq!(
            v.to_string(),
            r#"[{"coeff":"1/1","monomial":[["x0",2]]},{"coeff":"-1/1","monomial":[["x0",1]]},{"coeff":"1/6","monomial":[]}]"#
        );
        assert_eq!(poly_to_json(&MultiPoly::zero()).to_string(), "[]");
    }

    #[test]
    fn system_and_matrix_encodings() {
        let sys = expand_system(&FamilyId::Monomial, 2).unwrap();
        let v = system_to_json(&sys);
        assert_eq!(v["family"], "monomial");
        assert_eq!(v["degree_bound"], 2);
        assert_eq!(v["s"], v["p"]);
        let vars = crate::sierpinski::symbolic_vars(crate::poly::Axis::X, 1);
        let m = crate::sierpinski::build_direct(crate::sierpinski::MatrixKind::P, &sys, 2, 1, &vars).unwrap();
        let j = matrix_to_json(&m);
        assert_eq!(j["kind"], "P");
        let cells: Vec<(u64, u64)> = j["entries"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e["row"].as_u64().unwrap(), e["col"].as_u64().unwrap()))
            .collect();
        assert_eq!(cells, vec![(0, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn custom_specs_parse() {
        let spec = spec_from_str(r#"{"form": "inverse", "h": [1], "fbar": [0, 1], "order": 4}"#).unwrap();
        let sys = expand_system(&FamilyId::Custom(Box::new(spec)), 4).unwrap();
        let mono = expand_system(&FamilyId::Monomial, 4).unwrap();
        assert_eq!((sys.s(), sys.p(), sys.family()), (mono.s(), mono.p(), "custom"));
        let pair = spec_from_str(r#"{"form": "pair", "g": ["1", 0, 0], "f": [0, 1, "1/2"]}"#).unwrap();
        assert!(matches!(pair, ShefferSpec::PairGF { ref g, .. } if g.order() == 2));
        for bad in [
            r#"{"form": "weird"}"#,
            r#"{"form": "pair", "g": [1]}"#,
            "not json",
            r#"{"form": "pair", "g": [], "f": [0, 1]}"#,
        ] {
            assert!(matches!(spec_from_str(bad), Err(Error::InvalidSpec(_))), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn poly_round_trips(p in arb_poly()) {
            let v = poly_to_json(&p);
            prop_assert_eq!(poly_from_json(&v).unwrap(), p);
            let text = v.to_string();
            prop_assert_eq!(poly_from_json(&serde_json::from_str(&text).unwrap()).unwrap(), poly_from_json(&v).unwrap());
        }

        #[test]
        fn series_round_trips(cs in proptest::collection::vec(arb_poly(), 1..6)) {
            let s = TruncatedSeries::new(cs.clone(), cs.len() - 1);
            prop_assert_eq!(series_from_json(&series_to_json(&s)).unwrap(), s);
        }
    }
}
