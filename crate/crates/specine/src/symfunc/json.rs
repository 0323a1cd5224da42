//! JSON dump format for series.
//!
//! Cycle index series:
//! `{"basis":"powersum","slices":[{"degree":n,"terms":[{"monomial":{"1":e1,...},"num":...,"den":...}]}]}`
//!
//! Power series: a JSON array of `{"num":...,"den":...}` by degree.
//! Numerators and denominators are emitted as arbitrary-precision JSON
//! numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use super::monomial::{PMonomial, Slice};
use super::power::PowerSeries;
use super::series::CycleIndexSeries;
use super::Rational;

fn bigint_number(x: &BigInt) -> Number {
    Number::from_str(&x.to_string()).expect("integer literal is a valid JSON number")
}

fn term_value(mono: &PMonomial, coeff: &Rational) -> Value {
    let mut m = Map::new();
    for &(k, e) in mono.exponents() {
        m.insert(k.to_string(), Value::Number(e.into()));
    }
    json!({
        "monomial": Value::Object(m),
        "num": Value::Number(bigint_number(coeff.numer())),
        "den": Value::Number(bigint_number(coeff.denom())),
    })
}

/// Dumps slices `0..=max_degree`.
pub fn cycle_index_to_json(f: &CycleIndexSeries, max_degree: usize) -> Value {
    let slices: Vec<Value> = (0..=max_degree)
        .map(|n| {
            let slice = f.slice(n);
            let terms: Vec<Value> = slice.iter().map(|(m, c)| term_value(m, c)).collect();
            json!({ "degree": n, "terms": terms })
        })
        .collect();
    json!({ "basis": "powersum", "slices": slices })
}

/// Parses a dump back into slices; the inverse of [`cycle_index_to_json`].
pub fn cycle_index_from_json(v: &Value) -> Result<Vec<Slice>, String> {
    if v.get("basis").and_then(Value::as_str) != Some("powersum") {
        return Err("expected powersum basis".into());
    }
    let slices = v
        .get("slices")
        .and_then(Value::as_array)
        .ok_or("missing slices array")?;
    let mut out = Vec::with_capacity(slices.len());
    for (i, sv) in slices.iter().enumerate() {
        let degree = sv
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or("missing degree")? as usize;
        if degree != i {
            return Err(format!("slice {i} labeled degree {degree}"));
        }
        let mut slice = Slice::zero(degree);
        for term in sv
            .get("terms")
            .and_then(Value::as_array)
            .ok_or("missing terms")?
        {
            let mono_obj = term
                .get("monomial")
                .and_then(Value::as_object)
                .ok_or("missing monomial")?;
            let mut exps = Vec::new();
            for (k, e) in mono_obj {
                let k: u32 = k.parse().map_err(|_| "bad power-sum index")?;
                let e = e.as_u64().ok_or("bad exponent")? as u32;
                exps.push((k, e));
            }
            let num = parse_bigint(term.get("num").ok_or("missing num")?)?;
            let den = parse_bigint(term.get("den").ok_or("missing den")?)?;
            slice.add_term(PMonomial::from_exponents(exps), Rational::new(num, den));
        }
        out.push(slice);
    }
    Ok(out)
}

fn parse_bigint(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|e| e.to_string()),
        _ => Err("expected a number".into()),
    }
}

/// Dumps coefficients `0..=max_degree` as `[{"num":..,"den":..}, ...]`.
pub fn power_series_to_json(f: &PowerSeries, max_degree: usize) -> Value {
    let coeffs: Vec<Value> = (0..=max_degree)
        .map(|n| {
            let c = f.coeff(n);
            json!({
                "num": Value::Number(bigint_number(c.numer())),
                "den": Value::Number(bigint_number(c.denom())),
            })
        })
        .collect();
    Value::Array(coeffs)
}
