//! Browser bindings. Each operation takes text inputs and returns a JSON string.

use std::str::FromStr;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sqorbit::bounds::{choose_l, envelope_check, orbit_bound_check};
use sqorbit::classify::{chebyshev_conjugacy, classify_2_ordinary, classify_ordinary, Verdict};
use sqorbit::dynamics::{forward_orbit, longest_run, sign_sequence, RunInfo};
use sqorbit::fpoly::DEFAULT_DEGREE_BUDGET;
use sqorbit::{Error, FieldElement, FieldSpec, Poly};

fn parse(field: &str, poly: &str) -> Result<(FieldSpec, Poly), String> {
    let field = FieldSpec::from_str(field.trim()).map_err(|e| e.to_string())?;
    let f = Poly::parse(&field, poly.trim()).map_err(|e| e.to_string())?;
    match f.degree() {
        Some(d) if d >= 1 => Ok((field, f)),
        _ => Err("polynomial must be nonconstant".into()),
    }
}

fn point(field: &FieldSpec, text: &str) -> Result<FieldElement, String> {
    field.parse_element(text.trim()).map_err(|e| e.to_string())
}

fn run_json(r: &RunInfo) -> Value {
    json!({"length": r.length, "start": r.start, "cycle_constant": r.cycle_constant})
}

pub fn orbit_json(field: &str, poly: &str, start: &str) -> Result<String, String> {
    let (field, f) = parse(field, poly)?;
    let a = point(&field, start)?;
    Ok(json!({
        "field": field.to_string(),
        "f": f.pretty(),
        "orbit": forward_orbit(&f, a).to_json(&field),
        "signs": sign_sequence(&f, a).to_json(),
        "square_run": run_json(&longest_run(&f, a, 1)),
        "nonsquare_run": run_json(&longest_run(&f, a, -1)),
    })
    .to_string())
}

pub fn classify_json(field: &str, poly: &str) -> Result<String, String> {
    let (field, f) = parse(field, poly)?;
    let mut out = classify_2_ordinary(&f).map_err(|e| e.to_string())?.to_json();
    out["ordinary"] = classify_ordinary(&f).map_err(|e| e.to_string())?.to_json(&field);
    let d = f.degree().unwrap_or(0);
    out["chebyshev"] = if d >= 2 && field.p() >= d as u64 {
        chebyshev_conjugacy(&f).map_err(|e| e.to_string())?.to_json(&field)
    } else {
        Value::Null
    };
    Ok(out.to_string())
}

/// Orbit bound for one window, plus the envelope on each `B_i` when `f` is
/// 2-ordinary. `window = 0` picks the default.
pub fn bounds_json(field: &str, poly: &str, start: &str, window: usize) -> Result<String, String> {
    let (field, f) = parse(field, poly)?;
    let a = point(&field, start)?;
    let d = f.degree().unwrap_or(0);
    let window = if window == 0 { choose_l(field.q(), d) } else { window };
    let budget = DEFAULT_DEGREE_BUDGET;
    let report = match orbit_bound_check(&f, a, window, budget) {
        Ok(r) => r,
        Err(Error::NotPurelyPeriodic) => {
            return Ok(json!({
                "L": window,
                "skipped": "sign sequence of this orbit is not purely periodic",
                "signs": sign_sequence(&f, a).to_json(),
            })
            .to_string())
        }
        Err(e) => return Err(e.to_string()),
    };
    let mut out = report.to_json();
    let two_ordinary = classify_2_ordinary(&f).map_err(|e| e.to_string())?.verdict == Verdict::TwoOrdinary;
    out["two_ordinary"] = json!(two_ordinary);
    if two_ordinary {
        let envelopes = (0..report.sign_period)
            .map(|i| envelope_check(&f, a, i, window, budget).map(|c| c.to_json()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        out["envelope"] = json!(envelopes);
    }
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn orbit(field: &str, poly: &str, start: &str) -> Result<String, JsValue> {
    orbit_json(field, poly, start).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(field: &str, poly: &str) -> Result<String, JsValue> {
    classify_json(field, poly).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bounds(field: &str, poly: &str, start: &str, window: usize) -> Result<String, JsValue> {
    bounds_json(field, poly, start, window).map_err(|e| JsValue::from_str(&e))
}
