//! Reading the multiplicities and the unit phase back off `sign f`.
//!
//! For an oracle of the form `θ ↦ c * prod θ_i^{N_i}`, looping `θ_i` once
//! around the circle winds the value `N_i` times. Windings are counted by
//! phase unwrapping; the count is repeated with one more sample per loop, and
//! the two counts must agree. Aliasing with `m` samples replaces `N` by its
//! residue mod `m`, so agreement at `m` and `m + 1` rules out aliasing for
//! `|N| < m(m+1)/2`.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{sign_f, CplPoint, LogChart, LogError, Polar, VANISHING_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct Recovery {
    pub windings: BTreeMap<usize, i64>,
    /// oracle value at all `θ = 1`
    pub phase: Complex64,
}

type Phases = BTreeMap<usize, Complex64>;

fn winding<F>(oracle: &F, j: &[usize], coord: usize, m: usize) -> Result<i64, LogError>
where
    F: Fn(&Phases) -> Result<Complex64, LogError>,
{
    let mut thetas: Phases = j.iter().map(|&i| (i, Complex64::new(1.0, 0.0))).collect();
    let mut prev = oracle(&thetas)?;
    let mut total = 0.0;
    for k in 1..=m {
        thetas.insert(coord, Complex64::from_polar(1.0, TAU * k as f64 / m as f64));
        let z = oracle(&thetas)?;
        if z.norm() <= VANISHING_TOL {
            return Err(LogError::UnitVanishing(z.norm()));
        }
        let step = (z / prev).arg();
        if step.abs() >= PI * (1.0 - 1e-9) {
            return Err(LogError::CoarseSampling { coord, step });
        }
        total += step;
        prev = z;
    }
    Ok((total / TAU).round() as i64)
}

/// Winding numbers of `oracle` in each `θ_i`, `i ∈ j`, and its value at
/// `θ = 1`.
pub fn recover_multiplicities<F>(
    oracle: F,
    j: &[usize],
    samples_per_loop: usize,
) -> Result<Recovery, LogError>
where
    F: Fn(&Phases) -> Result<Complex64, LogError>,
{
    if samples_per_loop < 8 {
        return Err(LogError::SampleCount(samples_per_loop));
    }
    let mut windings = BTreeMap::new();
    for &coord in j {
        let w = winding(&oracle, j, coord, samples_per_loop)?;
        let check = winding(&oracle, j, coord, samples_per_loop + 1)?;
        if w != check {
            return Err(LogError::CoarseSampling {
                coord,
                step: TAU * w.abs().max(check.abs()) as f64 / samples_per_loop as f64,
            });
        }
        windings.insert(coord, w);
    }
    let ones = j.iter().map(|&i| (i, Complex64::new(1.0, 0.0))).collect();
    let phase = oracle(&ones)?;
    Ok(Recovery { windings, phase })
}

/// Recovery for the `sign f` oracle of `chart` over `base`.
pub fn recover_at(
    chart: &LogChart,
    base: &[Complex64],
    samples_per_loop: usize,
) -> Result<Recovery, LogError> {
    let j: Vec<usize> = chart.vanishing_set(base).into_iter().collect();
    let probe = CplPoint::new(
        chart,
        base.to_vec(),
        j.iter()
            .map(|&i| (i, Polar::top(Complex64::new(1.0, 0.0))))
            .collect(),
    )?;
    let oracle = |thetas: &Phases| {
        let mut p = probe.clone();
        for (i, t) in thetas {
            p.polar.insert(*i, Polar::top(*t));
        }
        sign_f(&p)
    };
    recover_multiplicities(oracle, &j, samples_per_loop)
}
