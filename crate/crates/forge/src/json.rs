//! JSON encodings.
//!
//! A series is `{"exp_denom": M, "prec": P, "coeffs": [[e, [re_num, re_den,
//! im_num, im_den]], …]}` with nonzero terms only, sorted by `e`; numerators
//! and denominators are exact JSON integers of any size. A law report is
//! `{"law", "inputs", "residual", "tol", "pass"}`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use theta_forge_core::arith::{GaussianRational, Rational};
use theta_forge_core::qseries::FracQSeries;
use theta_forge_core::verify::LawReport;

use crate::ForgeError;

fn int(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

fn float(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn series_to_json(s: &FracQSeries) -> Value {
    let coeffs: Vec<Value> = s
        .terms()
        .map(|(e, c)| json!([e, [int(c.re.numer()), int(c.re.denom()), int(c.im.numer()), int(c.im.denom())]]))
        .collect();
    json!({ "exp_denom": s.exp_denom(), "prec": s.prec(), "coeffs": coeffs })
}

fn bad(msg: &'static str) -> ForgeError {
    ForgeError::Parse { input: "series JSON".into(), msg }
}

fn big(v: &Value) -> Result<BigInt, ForgeError> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| bad("non-integer coefficient part")),
        _ => Err(bad("coefficient parts must be integers")),
    }
}

fn ratio(n: &Value, d: &Value) -> Result<Rational, ForgeError> {
    let d = big(d)?;
    if d == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(big(n)?, d))
}

pub fn series_from_json(v: &Value) -> Result<FracQSeries, ForgeError> {
    let field = |k: &str| v.get(k).and_then(Value::as_u64).ok_or(bad("missing exp_denom or prec"));
    let (m, p) = (field("exp_denom")?, field("prec")?);
    let terms = v.get("coeffs").and_then(Value::as_array).ok_or(bad("missing coeffs"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let (e, c) = match t.as_array().map(Vec::as_slice) {
            Some([e, Value::Array(c)]) if c.len() == 4 => (e.as_u64().filter(|&e| e < p).ok_or(bad("bad exponent"))?, c),
            _ => return Err(bad("terms are [e, [re_num, re_den, im_num, im_den]]")),
        };
        out.push((e, GaussianRational::new(ratio(&c[0], &c[1])?, ratio(&c[2], &c[3])?)));
    }
    Ok(FracQSeries::from_terms(m, p, out)?)
}

pub fn report_to_json(r: &LawReport) -> Value {
    let inputs: Map<String, Value> = r.inputs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "law": r.law.id(),
        "inputs": inputs,
        "residual": float(r.residual),
        "tol": float(r.tol),
        "pass": r.pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use theta_forge_core::arith::rat;

    #[test]
    fn series_schema() {
        let s = FracQSeries::from_terms(
            4,
            8,
            [
                (5, GaussianRational::new(rat(-1, 3), rat(2, 1))),
                (0, GaussianRational::from_integer(1)),
                (2, GaussianRational::from_integer(0)),
            ],
        )
        .unwrap();
        let v = series_to_json(&s);
        assert_eq!(
            v.to_string(),
            r#"{"exp_denom":4,"prec":8,"coeffs":[[0,[1,1,0,1]],[5,[-1,3,2,1]]]}"#
        );
        assert_eq!(series_from_json(&v).unwrap(), s);
    }

    #[test]
    fn huge_integers_stay_exact() {
        let n: BigInt = num_traits::pow(BigInt::from(10), 40) + BigInt::from(7);
        let c = GaussianRational::from_real(Rational::new(n.clone(), BigInt::from(3)));
        let s = FracQSeries::from_terms(1, 1, [(0, c)]).unwrap();
        let text = series_to_json(&s).to_string();
        assert!(text.contains(&n.to_string()));
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(series_from_json(&back).unwrap(), s);
    }

    #[test]
    fn malformed_series_rejected() {
        for text in [
            r#"{"prec":1,"coeffs":[]}"#,
            r#"{"exp_denom":1,"prec":2,"coeffs":[[0,[1,0,0,1]]]}"#,
            r#"{"exp_denom":1,"prec":2,"coeffs":[[0,[1,1,0]]]}"#,
            r#"{"exp_denom":1,"prec":2,"coeffs":[[0,[1.5,1,0,1]]]}"#,
            r#"{"exp_denom":1,"prec":2,"coeffs":[[2,[1,1,0,1]]]}"#,
        ] {
            assert!(series_from_json(&serde_json::from_str(text).unwrap()).is_err(), "{text}");
        }
    }
}
