//! The blow-up `σ` of the coordinate subspace `{x_0 = ... = x_{c-1} = 0}`,
//! on log points.
//!
//! The divisor coordinates among the first `c` form `K`. An upstairs point
//! on the exceptional divisor `E` is a direction `[a_0 : ... : a_{c-1}]`
//! (normalized so that `a_pivot = 1`) over a base point with `x_i = 0` for
//! `i < c`. In the chart `x_i = t a_i` (`i < c`) the function becomes
//! `u(σ) * t^{N_E} * prod_{k in K} a_k^{N_k}` with `N_E = sum_K N_k`, so the
//! strict transforms meeting the point are `Q = {k in K : a_k = 0}`.
//! Log coordinates `ṽ` along `E` and `ṽ_q` along `q in Q` map to
//! `v_k = a_k ṽ` (`k ∉ Q`) and `v_q = ṽ ṽ_q`.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use super::{phase, CplPoint, LogChart, LogError, Polar};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// An upstairs point on `E` in the exceptional chart with the given pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaPoint {
    pub pivot: usize,
    /// homogeneous coordinates of the direction, length `c`
    pub fibre: Vec<Complex64>,
    /// base coordinates `x_c, ..., x_{n-1}`
    pub rest: Vec<Complex64>,
    /// log coordinate along `E`
    pub v_e: Polar,
    /// log coordinates along the strict transforms through the point
    pub v_q: BTreeMap<usize, Polar>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaImage<'a> {
    pub downstairs: CplPoint<'a>,
    /// `u_{E∪Q}` of `f∘σ` at the upstairs point
    pub upstairs_unit: Complex64,
    /// `u_{E∪Q} * ṽ^{N_E} * prod ṽ_q^{N_q}`
    pub upstairs_value: Complex64,
    pub n_e: u32,
    pub q: BTreeSet<usize>,
}

struct Layout {
    a: Vec<Complex64>,
    k: BTreeSet<usize>,
    q: BTreeSet<usize>,
    base: Vec<Complex64>,
}

fn finite(z: Complex64, what: &str) -> Result<(), LogError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(LogError::NonFinite(what.to_string()))
    }
}

fn layout(chart: &LogChart, c: usize, point: &SigmaPoint) -> Result<Layout, LogError> {
    let bad = |m: String| Err(LogError::InvalidPoint(m));
    let n = chart.dim;
    if c == 0 || c > n {
        return bad(format!("center codimension {c} out of range 1..={n}"));
    }
    if point.fibre.len() != c || point.rest.len() != n - c {
        return bad(format!(
            "expected {c} fibre and {} base coordinates, got {} and {}",
            n - c,
            point.fibre.len(),
            point.rest.len()
        ));
    }
    if point.pivot >= c {
        return bad(format!("pivot {} is not a center coordinate", point.pivot));
    }
    for (i, z) in point.fibre.iter().chain(&point.rest).enumerate() {
        finite(*z, &format!("coordinate {i}"))?;
    }
    let pivot = point.fibre[point.pivot];
    if pivot == ZERO {
        return Err(LogError::PivotZero(point.pivot));
    }
    let a: Vec<Complex64> = point.fibre.iter().map(|z| z / pivot).collect();
    let k: BTreeSet<usize> = chart
        .multiplicities
        .keys()
        .copied()
        .filter(|&i| i < c)
        .collect();
    if k.is_empty() {
        return bad("the center lies in no divisor component".into());
    }
    let q: BTreeSet<usize> = k.iter().copied().filter(|&i| a[i] == ZERO).collect();
    let given: BTreeSet<usize> = point.v_q.keys().copied().collect();
    if given != q {
        return bad(format!(
            "log coordinates given for {given:?}, but the point lies on the strict transforms {q:?}"
        ));
    }
    let mut base = vec![ZERO; c];
    base.extend_from_slice(&point.rest);
    if let Some(i) = chart
        .multiplicities
        .keys()
        .find(|&&i| i >= c && base[i] == ZERO)
    {
        return bad(format!(
            "divisor coordinate {i} vanishes off the center; only points over the open part are supported"
        ));
    }
    Ok(Layout { a, k, q, base })
}

/// Image of an upstairs motivic point, with the upstairs value of `f∘σ`.
pub fn sigma_alog_chart<'a>(
    chart: &'a LogChart,
    c: usize,
    point: &SigmaPoint,
) -> Result<SigmaImage<'a>, LogError> {
    let Layout { a, k, q, base } = layout(chart, c, point)?;
    let v_e = point
        .v_e
        .value()
        .ok_or(LogError::NonFinite("ṽ has infinite radius".into()))?;
    let mut polar = BTreeMap::new();
    let mut upstairs_unit = chart.unit_j(&base);
    let mut upstairs_value = ZERO;
    let mut n_e = 0u32;
    for &i in &k {
        let n = chart.multiplicity(i);
        n_e += n;
        let v = if q.contains(&i) {
            let vq = point.v_q[&i]
                .value()
                .ok_or_else(|| LogError::NonFinite(format!("ṽ_{i} has infinite radius")))?;
            vq * v_e
        } else {
            upstairs_unit *= a[i].powu(n);
            a[i] * v_e
        };
        polar.insert(i, Polar::from_value(v));
    }
    if upstairs_unit != ZERO {
        upstairs_value = upstairs_unit * v_e.powu(n_e);
        for &i in &q {
            upstairs_value *= point.v_q[&i]
                .value()
                .expect("checked above")
                .powu(chart.multiplicity(i));
        }
    }
    Ok(SigmaImage {
        downstairs: CplPoint::new(chart, base, polar)?,
        upstairs_unit,
        upstairs_value,
        n_e,
        q,
    })
}

/// Image of an upstairs point of the topological part: phases only.
pub fn sigma_top_chart<'a>(
    chart: &'a LogChart,
    c: usize,
    point: &SigmaPoint,
) -> Result<CplPoint<'a>, LogError> {
    let Layout { a, k, q, base } = layout(chart, c, point)?;
    let polar = k
        .iter()
        .map(|&i| {
            let theta = if q.contains(&i) {
                point.v_e.theta * point.v_q[&i].theta
            } else {
                point.v_e.theta * phase(a[i])
            };
            (i, Polar::top(theta))
        })
        .collect();
    CplPoint::new(chart, base, polar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logspace::{f_mot, sign_f, Radius};

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn xy_on_open_exceptional_curve() {
        let chart = LogChart::monomial(&[1, 1]);
        let a = c(0.5, -2.0);
        let vt = c(0.3, 0.4);
        let p = SigmaPoint {
            pivot: 0,
            fibre: vec![ONE, a],
            rest: vec![],
            v_e: Polar::from_value(vt),
            v_q: BTreeMap::new(),
        };
        let img = sigma_alog_chart(&chart, 2, &p).unwrap();
        assert_eq!(img.n_e, 2);
        assert!(img.q.is_empty());
        let v0 = img.downstairs.polar[&0].value().unwrap();
        let v1 = img.downstairs.polar[&1].value().unwrap();
        assert!((v0 - vt).norm() < 1e-15 && (v1 - a * vt).norm() < 1e-15);
        let down = f_mot(&img.downstairs).unwrap();
        assert!((down - a * vt * vt).norm() < 1e-15);
        assert!((img.upstairs_value - down).norm() < 1e-15);
    }

    #[test]
    fn x_at_the_corner() {
        // f = x, center the origin of C^2; in the chart y = t, x = t a the
        // strict transform of {x = 0} is {a = 0}
        let chart = LogChart {
            dim: 2,
            multiplicities: BTreeMap::from([(0, 1)]),
            unit: crate::nc_model::UnitPoly::one(2),
        };
        let vt = c(0.0, 2.0);
        let v0 = c(-1.5, 0.5);
        let p = SigmaPoint {
            pivot: 1,
            fibre: vec![Complex64::new(0.0, 0.0), c(3.0, 1.0)],
            rest: vec![],
            v_e: Polar::from_value(vt),
            v_q: BTreeMap::from([(0, Polar::from_value(v0))]),
        };
        let img = sigma_alog_chart(&chart, 2, &p).unwrap();
        assert_eq!(img.q, BTreeSet::from([0]));
        assert_eq!(img.n_e, 1);
        assert!((img.downstairs.polar[&0].value().unwrap() - vt * v0).norm() < 1e-15);

        let unit = SigmaPoint {
            v_e: Polar::from_value(Complex64::from_polar(1.0, 0.7)),
            v_q: BTreeMap::from([(0, Polar::from_value(ONE))]),
            ..p.clone()
        };
        let img = sigma_alog_chart(&chart, 2, &unit).unwrap();
        assert_eq!(img.downstairs.polar[&0].r, Radius::Finite(1.0));
    }

    #[test]
    fn errors() {
        let chart = LogChart::monomial(&[1, 1]);
        let p = SigmaPoint {
            pivot: 0,
            fibre: vec![Complex64::new(0.0, 0.0), ONE],
            rest: vec![],
            v_e: Polar::from_value(ONE),
            v_q: BTreeMap::new(),
        };
        assert_eq!(sigma_alog_chart(&chart, 2, &p), Err(LogError::PivotZero(0)));
        let p = SigmaPoint { pivot: 1, ..p };
        // a_0 = 0 needs a log coordinate along the strict transform
        assert!(matches!(
            sigma_alog_chart(&chart, 2, &p),
            Err(LogError::InvalidPoint(_))
        ));
        let p = SigmaPoint {
            v_q: BTreeMap::from([(0, Polar::top(ONE))]),
            ..p
        };
        assert!(matches!(
            sigma_alog_chart(&chart, 2, &p),
            Err(LogError::NonFinite(_))
        ));
        assert!(sigma_top_chart(&chart, 2, &p).is_ok());
        assert!(sigma_alog_chart(&chart, 3, &p).is_err());
    }

    #[test]
    fn top_phases_multiply() {
        let chart = LogChart::monomial(&[2, 3]);
        let te = Complex64::from_polar(1.0, 0.4);
        let a = c(-1.0, 1.0);
        let p = SigmaPoint {
            pivot: 0,
            fibre: vec![ONE, a],
            rest: vec![],
            v_e: Polar::top(te),
            v_q: BTreeMap::new(),
        };
        let down = sigma_top_chart(&chart, 2, &p).unwrap();
        // sign f downstairs = θ_E^{5} * phase(a)^3
        let expected = te.powu(5) * phase(a).powu(3);
        assert!((sign_f(&down).unwrap() - expected).norm() < 1e-12);
    }
}
