//! Point documents: `{"base": [[re, im], ...], "polar": [{"i": 0, "r": 1.5 | "inf", "theta": [re, im]}]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use num_complex::Complex64;

use super::{CplPoint, LogChart, LogError, Polar, Radius};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolarDoc {
    i: usize,
    r: Value,
    theta: [f64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    base: Vec<[f64; 2]>,
    #[serde(default)]
    polar: Vec<PolarDoc>,
}

fn invalid(m: impl Into<String>) -> LogError {
    LogError::InvalidPoint(m.into())
}

fn radius_from(v: &Value) -> Result<Radius, LogError> {
    match v {
        Value::String(s) if s == "inf" => Ok(Radius::Infinite),
        Value::Number(n) => n
            .as_f64()
            .map(Radius::Finite)
            .ok_or_else(|| invalid(format!("radius {n} is not a float"))),
        other => Err(invalid(format!(
            "radius must be a number or \"inf\", got {other}"
        ))),
    }
}

fn radius_to(r: Radius) -> Value {
    match r {
        Radius::Finite(x) => serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number),
        Radius::Infinite => Value::String("inf".into()),
    }
}

fn complex(z: [f64; 2]) -> Complex64 {
    Complex64::new(z[0], z[1])
}

/// Base coordinates from either a point document or a bare `[[re, im], ...]`
/// array.
pub fn base_from_json(text: &str) -> Result<Vec<Complex64>, LogError> {
    let value: Value = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
    let base: Vec<[f64; 2]> = match value {
        Value::Array(_) => serde_json::from_value(value),
        _ => serde_json::from_value::<PointDoc>(value).map(|d| d.base),
    }
    .map_err(|e| invalid(e.to_string()))?;
    Ok(base.into_iter().map(complex).collect())
}

pub fn point_from_json<'a>(chart: &'a LogChart, text: &str) -> Result<CplPoint<'a>, LogError> {
    let doc: PointDoc = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
    let mut polar = std::collections::BTreeMap::new();
    for p in &doc.polar {
        let pc = Polar::new(radius_from(&p.r)?, complex(p.theta));
        if polar.insert(p.i, pc).is_some() {
            return Err(invalid(format!("coordinate {} listed twice in polar", p.i)));
        }
    }
    CplPoint::new(chart, doc.base.into_iter().map(complex).collect(), polar)
}

pub fn point_to_json(p: &CplPoint) -> Value {
    let doc = PointDoc {
        base: p.base.iter().map(|z| [z.re, z.im]).collect(),
        polar: p
            .polar
            .iter()
            .map(|(&i, pc)| PolarDoc {
                i,
                r: radius_to(pc.r),
                theta: [pc.theta.re, pc.theta.im],
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("point serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = LogChart::monomial(&[2, 3]);
        let text = r#"{"base": [[0, 0], [0, 0]],
                       "polar": [{"i": 0, "r": 0.5, "theta": [0, 1]}, {"i": 1, "r": "inf", "theta": [1, 0]}]}"#;
        let p = point_from_json(&c, text).unwrap();
        assert_eq!(p.polar[&0].r, Radius::Finite(0.5));
        assert_eq!(p.polar[&1].r, Radius::Infinite);
        let again = point_from_json(&c, &point_to_json(&p).to_string()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn rejects_bad_documents() {
        let c = LogChart::monomial(&[1]);
        for text in [
            r#"{"base": [[0, 0]], "polar": [{"i": 0, "r": "infinity", "theta": [1, 0]}]}"#,
            r#"{"base": [[0, 0]], "polar": [{"i": 0, "r": 1, "theta": [1, 0]}, {"i": 0, "r": 1, "theta": [1, 0]}]}"#,
            r#"{"base": [[0, 0]], "polar": []}"#,
            r#"{"base": [[0, 0]], "extra": 1}"#,
            "[",
        ] {
            assert!(point_from_json(&c, text).is_err(), "{text}");
        }
    }

    #[test]
    fn bare_base() {
        assert_eq!(
            base_from_json("[[0, 0], [1, 2]]").unwrap()[1],
            Complex64::new(1.0, 2.0)
        );
        assert_eq!(
            base_from_json(r#"{"base": [[3, 0]]}"#).unwrap(),
            [Complex64::new(3.0, 0.0)]
        );
    }
}
