//! JSON model documents.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::chart::{format_rational, parse_rational};
use super::{
    Chart, Component, GaussianRational, Mode, ModelError, NCModel, Stratum, UnitPoly, UnitTerm,
};
use crate::motivic_ring::LefschetzPoly;

/// Exact integer carried through JSON as a number of any size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n =
            serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(deserializer)?;
        BigInt::from_str(&n.to_string())
            .map(JsonInt)
            .map_err(|_| serde::de::Error::custom(format!("expected an integer, found {n}")))
    }
}

pub(crate) fn class_to_json(p: &LefschetzPoly) -> Vec<JsonInt> {
    p.coeffs().iter().cloned().map(JsonInt).collect()
}

pub(crate) fn class_from_json(v: Vec<JsonInt>) -> LefschetzPoly {
    LefschetzPoly::from_coeffs(v.into_iter().map(|j| j.0).collect())
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeDoc {
    Global,
    Local,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    id: String,
    multiplicity: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumDoc {
    components: Vec<String>,
    class: Vec<JsonInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitTermDoc {
    re: String,
    im: String,
    exponents: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartDoc {
    dim: usize,
    divisor_coords: BTreeMap<usize, String>,
    unit: Vec<UnitTermDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    ambient_dim: usize,
    mode: ModeDoc,
    components: Vec<ComponentDoc>,
    strata: Vec<StratumDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    charts: Vec<ChartDoc>,
}

pub(crate) fn parse_error(e: &serde_json::Error) -> ModelError {
    ModelError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn rational_field(s: &str) -> Result<num_rational::BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational of the form p/q"))
}

/// Parses a model document. Structural problems are parse errors; semantic
/// invariants are left to [`super::validate`].
pub fn load_model(text: &str) -> Result<NCModel, ModelError> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
    let mut charts = Vec::with_capacity(doc.charts.len());
    for (k, c) in doc.charts.into_iter().enumerate() {
        let mut terms = Vec::with_capacity(c.unit.len());
        for (t, term) in c.unit.into_iter().enumerate() {
            let field = |s: &str| {
                rational_field(s).map_err(|message| ModelError::Parse {
                    line: 0,
                    column: 0,
                    message: format!("charts[{k}].unit[{t}]: {message}"),
                })
            };
            terms.push(UnitTerm {
                coeff: GaussianRational::new(field(&term.re)?, field(&term.im)?),
                exponents: term.exponents,
            });
        }
        charts.push(Chart {
            dim: c.dim,
            divisor_coords: c.divisor_coords,
            unit: UnitPoly { terms },
        });
    }
    Ok(NCModel {
        ambient_dim: doc.ambient_dim,
        mode: match doc.mode {
            ModeDoc::Global => Mode::Global,
            ModeDoc::Local => Mode::Local,
        },
        components: doc
            .components
            .into_iter()
            .map(|c| Component {
                id: c.id,
                multiplicity: c.multiplicity,
            })
            .collect(),
        strata: doc
            .strata
            .into_iter()
            .map(|s| Stratum {
                components: s.components,
                class: class_from_json(s.class),
            })
            .collect(),
        charts,
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn save_model(model: &NCModel) -> String {
    let doc = ModelDoc {
        ambient_dim: model.ambient_dim,
        mode: match model.mode {
            Mode::Global => ModeDoc::Global,
            Mode::Local => ModeDoc::Local,
        },
        components: model
            .components
            .iter()
            .map(|c| ComponentDoc {
                id: c.id.clone(),
                multiplicity: c.multiplicity,
            })
            .collect(),
        strata: model
            .strata
            .iter()
            .map(|s| StratumDoc {
                components: s.components.clone(),
                class: class_to_json(&s.class),
            })
            .collect(),
        charts: model
            .charts
            .iter()
            .map(|c| ChartDoc {
                dim: c.dim,
                divisor_coords: c.divisor_coords.clone(),
                unit: c
                    .unit
                    .terms
                    .iter()
                    .map(|t| UnitTermDoc {
                        re: format_rational(&t.coeff.re),
                        im: format_rational(&t.coeff.im),
                        exponents: t.exponents.clone(),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("model serializes");
    out.push('\n');
    out
}
