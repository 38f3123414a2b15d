use std::collections::BTreeMap;

use super::{Chart, Component, Mode, ModelError, NCModel, Stratum, UnitPoly};
use crate::motivic_ring::LefschetzPoly;

/// Names accepted by [`builtin_example`]; `power_<N>` and `x<a>_y<b>` are
/// parametrized.
pub const BUILTIN_NAMES: &[&str] = &["smooth", "power_<N>", "xy", "x<a>_y<b>", "cusp_resolved"];

fn component(id: &str, multiplicity: u64) -> Component {
    Component {
        id: id.into(),
        multiplicity,
    }
}

fn stratum(ids: &[&str], class: LefschetzPoly) -> Stratum {
    Stratum {
        components: ids.iter().map(|s| s.to_string()).collect(),
        class,
    }
}

fn chart(dim: usize, coords: &[(usize, &str)], unit: UnitPoly) -> Chart {
    Chart {
        dim,
        divisor_coords: coords
            .iter()
            .map(|(i, id)| (*i, id.to_string()))
            .collect::<BTreeMap<_, _>>(),
        unit,
    }
}

/// `f = x^a y^b` at the origin of `C^2`, local mode.
fn monomial_curve(a: u64, b: u64) -> NCModel {
    NCModel {
        ambient_dim: 2,
        mode: Mode::Local,
        components: vec![component("1", a), component("2", b)],
        strata: vec![stratum(&["1", "2"], LefschetzPoly::one())],
        charts: vec![chart(2, &[(0, "1"), (1, "2")], UnitPoly::one(2))],
    }
}

/// The minimal embedded resolution of the cusp `x^2 + y^3` at the origin,
/// in local mode (classes of the strata meeting the exceptional fibre).
///
/// Exceptional curves are named by multiplicity: `E2`, `E3` from the first
/// two blow-ups, `E6` from the third; `S` is the strict transform. `E6` meets
/// the other three curves once each, so `E6°` is `P^1` minus three points.
/// In the corner charts
///   `f = x^6 y^2 (1 + y)`     (x: E6, y: E2)
///   `f = x^3 y^6 (1 + x)`     (x: E3, y: E6)
///   `f = x^6 (y - 1)^2 y`     (x: E6, y: S)
fn cusp_resolved() -> NCModel {
    let l = LefschetzPoly::lefschetz;
    NCModel {
        ambient_dim: 2,
        mode: Mode::Local,
        components: vec![
            component("E2", 2),
            component("E3", 3),
            component("E6", 6),
            component("S", 1),
        ],
        strata: vec![
            stratum(&["E2"], l()),
            stratum(&["E3"], l()),
            stratum(&["E6"], LefschetzPoly::from_i64s(&[-2, 1])),
            stratum(&["E2", "E6"], LefschetzPoly::one()),
            stratum(&["E3", "E6"], LefschetzPoly::one()),
            stratum(&["E6", "S"], LefschetzPoly::one()),
        ],
        charts: vec![
            chart(
                2,
                &[(0, "E6"), (1, "E2")],
                UnitPoly::from_integer_terms(&[(1, 0, &[0, 0]), (1, 0, &[0, 1])]),
            ),
            chart(
                2,
                &[(0, "E3"), (1, "E6")],
                UnitPoly::from_integer_terms(&[(1, 0, &[0, 0]), (1, 0, &[1, 0])]),
            ),
            chart(
                2,
                &[(0, "E6"), (1, "S")],
                UnitPoly::from_integer_terms(&[(1, 0, &[0, 0]), (-2, 0, &[0, 1]), (1, 0, &[0, 2])]),
            ),
        ],
    }
}

fn parse_positive(s: &str) -> Option<u64> {
    s.parse::<u64>().ok().filter(|&n| n >= 1)
}

/// Returns one of the bundled example models.
///
/// * `smooth`: `f = x` at the origin of `C^2` (local)
/// * `power_<N>`: `f = x^N` at the origin of `C` (local)
/// * `xy`: `f = xy` at the origin of `C^2` (local)
/// * `x<a>_y<b>`: `f = x^a y^b` at the origin of `C^2` (local)
/// * `cusp_resolved`: resolution of `x^2 + y^3` (local)
pub fn builtin_example(name: &str) -> Result<NCModel, ModelError> {
    let unknown = || ModelError::UnknownExample(name.to_string());
    match name {
        "smooth" => Ok(NCModel {
            ambient_dim: 2,
            mode: Mode::Local,
            components: vec![component("1", 1)],
            strata: vec![stratum(&["1"], LefschetzPoly::one())],
            charts: vec![chart(2, &[(0, "1")], UnitPoly::one(2))],
        }),
        "xy" => Ok(monomial_curve(1, 1)),
        "cusp_resolved" => Ok(cusp_resolved()),
        _ => {
            if let Some(n) = name.strip_prefix("power_") {
                let n = parse_positive(n).ok_or_else(unknown)?;
                return Ok(NCModel {
                    ambient_dim: 1,
                    mode: Mode::Local,
                    components: vec![component("1", n)],
                    strata: vec![stratum(&["1"], LefschetzPoly::one())],
                    charts: vec![chart(1, &[(0, "1")], UnitPoly::one(1))],
                });
            }
            let (a, b) = name
                .strip_prefix('x')
                .and_then(|rest| rest.split_once("_y"))
                .ok_or_else(unknown)?;
            let a = parse_positive(a).ok_or_else(unknown)?;
            let b = parse_positive(b).ok_or_else(unknown)?;
            Ok(monomial_curve(a, b))
        }
    }
}
