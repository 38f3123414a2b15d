//! The corner charts of the resolved cusp are pullbacks of `x^2 + y^3`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use milnor_core::logspace::LogChart;
use milnor_core::nc_model::builtin_example;

fn cusp(x: Complex64, y: Complex64) -> Complex64 {
    x * x + y * y * y
}

type Map = fn(Complex64, Complex64) -> (Complex64, Complex64);

// composite of the three point blow-ups, one map per corner chart
const MAPS: [Map; 3] = [
    |x, y| (x.powu(3) * y, x.powu(2) * y),
    |x, y| (x.powu(2) * y.powu(3), x * y.powu(2)),
    |x, y| (x.powu(3) * (y - 1.0), x.powu(2) * (y - 1.0)),
];

#[test]
fn charts_are_pullbacks() {
    let model = builtin_example("cusp_resolved").unwrap();
    assert_eq!(model.charts.len(), MAPS.len());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (k, map) in MAPS.iter().enumerate() {
        let chart = LogChart::from_model(&model, k).unwrap();
        for _ in 0..200 {
            // small integers keep both sides exact in f64
            let x = Complex64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64);
            let y = Complex64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64);
            let (xo, yo) = map(x, y);
            assert_eq!(
                chart.eval_f(&[x, y]),
                cusp(xo, yo),
                "chart {k} at ({x}, {y})"
            );
        }
    }
}

#[test]
fn charts_meet_the_listed_components() {
    let model = builtin_example("cusp_resolved").unwrap();
    let pairs: Vec<Vec<&str>> = model
        .charts
        .iter()
        .map(|c| c.divisor_coords.values().map(String::as_str).collect())
        .collect();
    assert_eq!(pairs, [vec!["E6", "E2"], vec!["E3", "E6"], vec!["E6", "S"]]);
    for c in &model.charts {
        let ids: Vec<&str> = c.divisor_coords.values().map(String::as_str).collect();
        let subset = model.subset_of(&ids).unwrap();
        assert!(!model.stratum_class(&subset).is_zero(), "{ids:?}");
    }
}
