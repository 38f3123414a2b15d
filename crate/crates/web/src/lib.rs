//! WebAssembly bindings for the demo page in `www/`. Every entry point takes
//! and returns JSON text; errors come back as thrown strings.

use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use milnor_core::blowup::{check_invariance, load_center};
use milnor_core::logspace::{
    monodromy, point_from_json, sign_f, simplex_representative, xi, LogChart,
};
use milnor_core::motivic_ring::{KeyedClass, LefschetzPoly};
use milnor_core::nc_model::{builtin_example, census, load_model, save_model, PieceTag};

fn c(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn class(p: &LefschetzPoly) -> Value {
    Value::String(p.to_string())
}

fn keyed(k: &KeyedClass) -> Value {
    k.entries()
        .iter()
        .map(|(n, p)| (n.to_string(), class(p)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

pub fn builtin_model_json(name: &str) -> Result<String, String> {
    builtin_example(name)
        .map(|m| save_model(&m))
        .map_err(|e| e.to_string())
}

pub fn census_json(model: &str, stratum: &str) -> Result<String, String> {
    let m = load_model(model).map_err(|e| e.to_string())?;
    let ids: Vec<&str> = stratum
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let cs = census(&m, &ids).map_err(|e| e.to_string())?;
    let pieces: Vec<Value> = cs
        .pieces
        .iter()
        .map(|p| json!({"tag": p.tag.as_str(), "label": p.label, "finite": p.finite}))
        .collect();
    Ok(json!({
        "stratum": cs.subset,
        "pieces": pieces,
        "mixed": cs.count(PieceTag::Mixed),
    })
    .to_string())
}

pub fn invariance_json(model: &str, center: &str) -> Result<String, String> {
    let m = load_model(model).map_err(|e| e.to_string())?;
    let ctr = load_center(center).map_err(|e| e.to_string())?;
    let r = check_invariance(&m, &ctr).map_err(|e| e.to_string())?;
    let side = |x: &milnor_core::blowup::Realizations| {
        json!({
            "zeta": x.zeta.to_string(),
            "euler": x.euler.to_string(),
            "naive": class(&x.naive_class),
            "keyed": keyed(&x.keyed),
        })
    };
    Ok(json!({
        "before": side(&r.before),
        "after": side(&r.after),
        "zeta_equal": r.zeta_equal,
        "euler_equal": r.euler_equal,
        "naive_equal": r.naive_equal,
        "keyed_delta": keyed(&r.keyed_delta),
        "warnings": r.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "invariant": r.all_equal(),
        "blown_up": save_model(&r.blown_up),
    })
    .to_string())
}

/// `sign f` along `h_λ`, `λ = 0, 1/steps, ..., 1`, starting from the simplex
/// representative of the given point.
pub fn monodromy_json(
    model: &str,
    chart: usize,
    point: &str,
    steps: usize,
) -> Result<String, String> {
    let m = load_model(model).map_err(|e| e.to_string())?;
    let chart = LogChart::from_model(&m, chart).map_err(|e| e.to_string())?;
    let p = point_from_json(&chart, point).map_err(|e| e.to_string())?;
    let start = simplex_representative(&p).map_err(|e| e.to_string())?;
    let s0 = sign_f(&start).map_err(|e| e.to_string())?;
    let steps = steps.max(1);
    let mut trace = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let lambda = k as f64 / steps as f64;
        let h = monodromy(&start, lambda);
        let s = sign_f(&h).map_err(|e| e.to_string())?;
        let expected = Complex64::from_polar(1.0, std::f64::consts::TAU * lambda) * s0;
        trace.push(json!({
            "lambda": lambda,
            "sign": c(s),
            "thetas": h.polar.values().map(|pc| c(pc.theta)).collect::<Vec<_>>(),
            "deviation": (s - expected).norm(),
        }));
    }
    Ok(json!({
        "xi": xi(&start).values().collect::<Vec<_>>(),
        "multiplicities": start.polar.keys().map(|&i| chart.multiplicity(i)).collect::<Vec<_>>(),
        "trace": trace,
    })
    .to_string())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn builtin_model(name: &str) -> Result<String, JsValue> {
    js(builtin_model_json(name))
}

#[wasm_bindgen(js_name = census)]
pub fn census_js(model: &str, stratum: &str) -> Result<String, JsValue> {
    js(census_json(model, stratum))
}

#[wasm_bindgen]
pub fn invariance(model: &str, center: &str) -> Result<String, JsValue> {
    js(invariance_json(model, center))
}

#[wasm_bindgen]
pub fn monodromy_trace(
    model: &str,
    chart: usize,
    point: &str,
    steps: usize,
) -> Result<String, JsValue> {
    js(monodromy_json(model, chart, point, steps))
}
