use serde_json::Value;

use milnor_web::{builtin_model_json, census_json, invariance_json, monodromy_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn invariance_of_the_cusp() {
    let cusp = builtin_model_json("cusp_resolved").unwrap();
    let center = r#"{"K": ["E3"], "codim": 2, "new_component_id": "F", "center_strata": [{"R": [], "class": [1]}]}"#;
    let v = parse(&invariance_json(&cusp, center).unwrap());
    assert_eq!(v["invariant"], true);
    assert_eq!(v["after"]["zeta"], "(1-t^2)^1 (1-t^3)^1 (1-t^6)^-1");
    assert!(invariance_json(&cusp, "{}").is_err());
}

#[test]
fn census_of_xy() {
    let xy = builtin_model_json("xy").unwrap();
    let v = parse(&census_json(&xy, "1, 2").unwrap());
    assert_eq!(v["pieces"].as_array().unwrap().len(), 4);
    assert_eq!(v["mixed"], 2);
    assert!(census_json(&xy, "").is_err());
}

#[test]
fn monodromy_closes_up() {
    let m = builtin_model_json("x2_y3").unwrap();
    let p = r#"{"base": [[0, 0], [0, 0]], "polar": [{"i": 0, "r": 1, "theta": [1, 0]}, {"i": 1, "r": "inf", "theta": [0, 1]}]}"#;
    let v = parse(&monodromy_json(&m, 0, p, 16).unwrap());
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 17);
    assert!(trace
        .iter()
        .all(|r| r["deviation"].as_f64().unwrap() < 1e-9));
    assert_eq!(v["xi"][0], 1.0);
    assert!(builtin_model_json("nope").is_err());
}
