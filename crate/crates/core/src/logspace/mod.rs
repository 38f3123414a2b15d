//! Points of the complete log space in a chart, in double precision.
//!
//! Near a point `x` with `J = {i : x_i = 0}` among the divisor coordinates,
//! each `i in J` carries a polar pair `(r_i, θ_i)` with `r_i ∈ (0, ∞]` and
//! `|θ_i| = 1`; `v_i = r_i θ_i` when `r_i` is finite. All-infinite radii give
//! the Kato-Nakayama (topological) part, all-finite the motivic part.

mod json;
mod psi;
mod recover;
mod sigma;

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::nc_model::{Chart, ModelError, NCModel, PieceTag, UnitPoly};

pub use json::{base_from_json, point_from_json, point_to_json};
pub use psi::{psi_inverse, psi_map, PsiCoords};
pub use recover::{recover_at, recover_multiplicities, Recovery};
pub use sigma::{sigma_alog_chart, sigma_top_chart, SigmaImage, SigmaPoint};

/// Unit modulus tolerance for phases.
pub const UNIT_TOL: f64 = 1e-12;
/// Below this modulus the unit is treated as vanishing.
pub const VANISHING_TOL: f64 = 1e-12;
/// Tolerance for identities between phases.
pub const PHASE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LogError {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("unit vanishes at the base point (|u_J| = {0:e})")]
    UnitVanishing(f64),
    #[error("operation needs a point of the motivic part (all radii finite)")]
    NotMot,
    #[error("point lies in the topological part; its orbit misses the simplex")]
    TopPoint,
    #[error("phase unwrapping step {step:.3} rad at coordinate {coord} is too large; raise samples_per_loop")]
    CoarseSampling { coord: usize, step: f64 },
    #[error("samples_per_loop must be at least 8, got {0}")]
    SampleCount(usize),
    #[error("pivot coordinate {0} of the exceptional chart is zero")]
    PivotZero(usize),
    #[error("non-finite input: {0}")]
    NonFinite(String),
    #[error("exponent {0} does not fit the floating-point evaluator")]
    ExponentRange(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A chart `f = u * prod x_i^{N_i}` with multiplicities attached.
#[derive(Clone, Debug, PartialEq)]
pub struct LogChart {
    pub dim: usize,
    /// divisor coordinate -> multiplicity
    pub multiplicities: BTreeMap<usize, u32>,
    pub unit: UnitPoly,
}

impl LogChart {
    /// `f = prod x_i^{N_i}` on `C^n`, `n = mults.len()`.
    pub fn monomial(mults: &[u32]) -> Self {
        Self {
            dim: mults.len(),
            multiplicities: mults.iter().copied().enumerate().collect(),
            unit: UnitPoly::one(mults.len()),
        }
    }

    pub fn with_unit(mut self, unit: UnitPoly) -> Self {
        self.unit = unit;
        self
    }

    /// The `index`-th chart of `model`, with multiplicities from its components.
    pub fn from_model(model: &NCModel, index: usize) -> Result<Self, LogError> {
        let chart: &Chart = model.charts.get(index).ok_or_else(|| {
            LogError::InvalidPoint(format!(
                "model has {} chart(s); no chart {index}",
                model.charts.len()
            ))
        })?;
        let mut multiplicities = BTreeMap::new();
        for (&coord, id) in &chart.divisor_coords {
            let n = model.multiplicity(id)?;
            let n = u32::try_from(n).map_err(|_| LogError::ExponentRange(n.to_string()))?;
            multiplicities.insert(coord, n);
        }
        Ok(Self {
            dim: chart.dim,
            multiplicities,
            unit: chart.unit.clone(),
        })
    }

    pub fn multiplicity(&self, coord: usize) -> u32 {
        self.multiplicities.get(&coord).copied().unwrap_or(0)
    }

    /// `u_J(x) = u(x) * prod_{i divisor, x_i != 0} x_i^{N_i}`: the unit left
    /// after factoring out the coordinates that vanish at `x`.
    pub fn unit_j(&self, base: &[Complex64]) -> Complex64 {
        let mut u = self.unit.eval(base);
        for (&i, &n) in &self.multiplicities {
            if base[i] != Complex64::new(0.0, 0.0) {
                u *= base[i].powu(n);
            }
        }
        u
    }

    /// `f` itself at an ordinary point.
    pub fn eval_f(&self, x: &[Complex64]) -> Complex64 {
        let mut u = self.unit.eval(x);
        for (&i, &n) in &self.multiplicities {
            u *= x[i].powu(n);
        }
        u
    }

    /// `J(x)`: divisor coordinates vanishing at `x`.
    pub fn vanishing_set(&self, base: &[Complex64]) -> BTreeSet<usize> {
        self.multiplicities
            .keys()
            .copied()
            .filter(|&i| base.get(i).is_some_and(|z| *z == Complex64::new(0.0, 0.0)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Radius {
    Finite(f64),
    Infinite,
}

impl Radius {
    pub fn is_finite(self) -> bool {
        matches!(self, Radius::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Radius::Finite(r) => Some(r),
            Radius::Infinite => None,
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Polar {
    pub r: Radius,
    pub theta: Complex64,
}

impl Polar {
    pub fn new(r: Radius, theta: Complex64) -> Self {
        Self { r, theta }
    }

    pub fn top(theta: Complex64) -> Self {
        Self::new(Radius::Infinite, theta)
    }

    /// `v = r θ` for a finite nonzero `v`.
    pub fn from_value(v: Complex64) -> Self {
        let r = v.norm();
        Self::new(Radius::Finite(r), v / r)
    }

    pub fn value(&self) -> Option<Complex64> {
        self.r.finite().map(|r| self.theta * r)
    }
}

/// A point of the complete log space over `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct CplPoint<'a> {
    pub chart: &'a LogChart,
    pub base: Vec<Complex64>,
    /// keyed by the divisor coordinates in `J`
    pub polar: BTreeMap<usize, Polar>,
}

impl<'a> CplPoint<'a> {
    /// Builds and validates a point.
    pub fn new(
        chart: &'a LogChart,
        base: Vec<Complex64>,
        polar: BTreeMap<usize, Polar>,
    ) -> Result<Self, LogError> {
        let p = Self { chart, base, polar };
        p.check()?;
        Ok(p)
    }

    /// `J` must be exactly the vanishing divisor coordinates of `base`.
    pub fn check(&self) -> Result<(), LogError> {
        let bad = |m: String| Err(LogError::InvalidPoint(m));
        if self.base.len() != self.chart.dim {
            return bad(format!(
                "base has {} coordinates, chart has {}",
                self.base.len(),
                self.chart.dim
            ));
        }
        if let Some(z) = self
            .base
            .iter()
            .find(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(LogError::NonFinite(format!("base coordinate {z}")));
        }
        let j = self.chart.vanishing_set(&self.base);
        if j.is_empty() {
            return bad("base lies off the divisor".into());
        }
        let keys: BTreeSet<usize> = self.polar.keys().copied().collect();
        if keys != j {
            return bad(format!(
                "polar coordinates {keys:?} do not match the vanishing divisor coordinates {j:?}"
            ));
        }
        for (i, pc) in &self.polar {
            if !pc.theta.re.is_finite() || !pc.theta.im.is_finite() {
                return Err(LogError::NonFinite(format!("θ_{i}")));
            }
            if (pc.theta.norm() - 1.0).abs() > UNIT_TOL {
                return bad(format!("|θ_{i}| = {} is not 1", pc.theta.norm()));
            }
            if let Radius::Finite(r) = pc.r {
                if !r.is_finite() {
                    return Err(LogError::NonFinite(format!("r_{i} = {r}")));
                }
                if r <= 0.0 {
                    return bad(format!("r_{i} = {r} is not positive"));
                }
            }
        }
        Ok(())
    }

    pub fn j(&self) -> BTreeSet<usize> {
        self.polar.keys().copied().collect()
    }

    fn with_polar(&self, polar: BTreeMap<usize, Polar>) -> Self {
        Self {
            chart: self.chart,
            base: self.base.clone(),
            polar,
        }
    }
}

/// Which piece of `((0,∞] × S¹)^J` a point lies in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub tag: PieceTag,
    /// coordinates with finite radius
    pub finite: BTreeSet<usize>,
}

pub fn classify(p: &CplPoint) -> Classification {
    let finite: BTreeSet<usize> = p
        .polar
        .iter()
        .filter(|(_, pc)| pc.r.is_finite())
        .map(|(&i, _)| i)
        .collect();
    Classification {
        tag: PieceTag::from_finite(finite.len(), p.polar.len()),
        finite,
    }
}

fn unit_j_checked(p: &CplPoint) -> Result<Complex64, LogError> {
    let u = p.chart.unit_j(&p.base);
    if u.norm() <= VANISHING_TOL {
        return Err(LogError::UnitVanishing(u.norm()));
    }
    Ok(u)
}

/// `sign f = (u_J / |u_J|) * prod θ_i^{N_i}`.
pub fn sign_f(p: &CplPoint) -> Result<Complex64, LogError> {
    let u = unit_j_checked(p)?;
    let mut s = u / u.norm();
    for (i, pc) in &p.polar {
        s *= pc.theta.powu(p.chart.multiplicity(*i));
    }
    Ok(s)
}

/// `f_J = u_J * prod v_i^{N_i}` on the motivic part.
pub fn f_mot(p: &CplPoint) -> Result<Complex64, LogError> {
    let mut acc = unit_j_checked(p)?;
    for (i, pc) in &p.polar {
        let v = pc.value().ok_or(LogError::NotMot)?;
        acc *= v.powu(p.chart.multiplicity(*i));
    }
    Ok(acc)
}

/// Sends every radius to infinity, keeping the phases.
pub fn quotient_to_top<'a>(p: &CplPoint<'a>) -> CplPoint<'a> {
    p.with_polar(
        p.polar
            .iter()
            .map(|(&i, pc)| (i, Polar::top(pc.theta)))
            .collect(),
    )
}

/// `ξ_i = 1 / (r_i N_i)`, zero at `r_i = ∞`.
pub fn xi(p: &CplPoint) -> BTreeMap<usize, f64> {
    p.polar
        .iter()
        .map(|(&i, pc)| {
            let x = match pc.r {
                Radius::Finite(r) => 1.0 / (r * f64::from(p.chart.multiplicity(i))),
                Radius::Infinite => 0.0,
            };
            (i, x)
        })
        .collect()
}

pub fn in_simplex(p: &CplPoint, tol: f64) -> bool {
    (xi(p).values().sum::<f64>() - 1.0).abs() <= tol
}

/// The point of `ξ^{-1}(Δ)` on the `R_{>0}`-orbit of `p`.
pub fn simplex_representative<'a>(p: &CplPoint<'a>) -> Result<CplPoint<'a>, LogError> {
    let lambda: f64 = xi(p).values().sum();
    if lambda == 0.0 {
        return Err(LogError::TopPoint);
    }
    Ok(p.with_polar(
        p.polar
            .iter()
            .map(|(&i, pc)| {
                let r = match pc.r {
                    Radius::Finite(r) => Radius::Finite(lambda * r),
                    Radius::Infinite => Radius::Infinite,
                };
                (i, Polar::new(r, pc.theta))
            })
            .collect(),
    ))
}

/// The A'Campo flow `h_λ`: `θ_i ↦ exp(2πi λ ξ_i / N_i) θ_i`, radii untouched.
/// On `ξ^{-1}(Δ)` this multiplies `sign f` by `exp(2πiλ)`.
pub fn monodromy<'a>(p: &CplPoint<'a>, lambda: f64) -> CplPoint<'a> {
    let xs = xi(p);
    p.with_polar(
        p.polar
            .iter()
            .map(|(&i, pc)| {
                let n = f64::from(p.chart.multiplicity(i));
                let turn = Complex64::from_polar(1.0, TAU * lambda * xs[&i] / n);
                (i, Polar::new(pc.r, pc.theta * turn))
            })
            .collect(),
    )
}

/// Phase of `z` as a unit complex number.
pub fn phase(z: Complex64) -> Complex64 {
    z / z.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc_model::builtin_example;

    const I: Complex64 = Complex64::new(0.0, 1.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    fn point<'a>(chart: &'a LogChart, polar: &[(usize, Radius, Complex64)]) -> CplPoint<'a> {
        CplPoint::new(
            chart,
            vec![ZERO; chart.dim],
            polar
                .iter()
                .map(|&(i, r, t)| (i, Polar::new(r, t)))
                .collect(),
        )
        .unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn classification() {
        let c = LogChart::monomial(&[1, 1]);
        let f = Radius::Finite(1.0);
        let inf = Radius::Infinite;
        assert_eq!(
            classify(&point(&c, &[(0, f, ONE), (1, f, ONE)])).tag,
            PieceTag::Mot
        );
        assert_eq!(
            classify(&point(&c, &[(0, inf, ONE), (1, inf, ONE)])).tag,
            PieceTag::Top
        );
        let mixed = classify(&point(&c, &[(0, f, ONE), (1, inf, ONE)]));
        assert_eq!(mixed.tag, PieceTag::Mixed);
        assert_eq!(mixed.finite, BTreeSet::from([0]));
    }

    #[test]
    fn point_validation() {
        let c = LogChart::monomial(&[1, 1]);
        let polar = |i: usize| BTreeMap::from([(i, Polar::top(ONE))]);
        // y != 0, so J = {x}
        assert!(CplPoint::new(&c, vec![ZERO, ONE], polar(0)).is_ok());
        assert!(CplPoint::new(&c, vec![ZERO, ONE], polar(1)).is_err());
        assert!(CplPoint::new(&c, vec![ONE, ONE], BTreeMap::new()).is_err());
        assert!(CplPoint::new(&c, vec![ZERO], polar(0)).is_err());
        let skew = BTreeMap::from([(0, Polar::top(Complex64::new(1.0, 1e-5)))]);
        assert!(CplPoint::new(&c, vec![ZERO, ONE], skew).is_err());
        let neg = BTreeMap::from([(0, Polar::new(Radius::Finite(-1.0), ONE))]);
        assert!(CplPoint::new(&c, vec![ZERO, ONE], neg).is_err());
        let nan = BTreeMap::from([(0, Polar::new(Radius::Finite(f64::NAN), ONE))]);
        assert!(matches!(
            CplPoint::new(&c, vec![ZERO, ONE], nan),
            Err(LogError::NonFinite(_))
        ));
    }

    #[test]
    fn sign_examples() {
        let c = LogChart::monomial(&[2, 3]);
        let p = point(&c, &[(0, Radius::Infinite, I), (1, Radius::Infinite, ONE)]);
        assert!(close(sign_f(&p).unwrap(), -ONE));
        let p = point(
            &c,
            &[(0, Radius::Finite(3.0), ONE), (1, Radius::Infinite, ONE)],
        );
        assert!(close(sign_f(&p).unwrap(), ONE));
        let c = LogChart::monomial(&[1]).with_unit(UnitPoly::from_integer_terms(&[(-1, 0, &[0])]));
        let p = point(&c, &[(0, Radius::Infinite, ONE)]);
        assert!(close(sign_f(&p).unwrap(), -ONE));
        let c = LogChart::monomial(&[1]).with_unit(UnitPoly::from_integer_terms(&[(1, 0, &[1])]));
        let p = point(&c, &[(0, Radius::Infinite, ONE)]);
        assert_eq!(sign_f(&p), Err(LogError::UnitVanishing(0.0)));
    }

    #[test]
    fn sign_uses_the_nonvanishing_coordinates() {
        // f = x y^2 at (0, i): sign f = θ * i^2
        let c = LogChart::monomial(&[1, 2]);
        let p = CplPoint::new(&c, vec![ZERO, I], BTreeMap::from([(0, Polar::top(I))])).unwrap();
        assert!(close(sign_f(&p).unwrap(), -I));
    }

    #[test]
    fn f_mot_examples() {
        let c = LogChart::monomial(&[1, 1]);
        let p = point(
            &c,
            &[(0, Radius::Finite(2.0), ONE), (1, Radius::Finite(3.0), ONE)],
        );
        assert!(close(f_mot(&p).unwrap(), Complex64::new(6.0, 0.0)));
        let c2 = LogChart::monomial(&[2]);
        let p = point(&c2, &[(0, Radius::Finite(1.0), I)]);
        assert!(close(f_mot(&p).unwrap(), -ONE));
        let p = point(
            &c,
            &[(0, Radius::Finite(2.0), ONE), (1, Radius::Infinite, ONE)],
        );
        assert_eq!(f_mot(&p), Err(LogError::NotMot));
    }

    #[test]
    fn quotient_keeps_phases() {
        let c = LogChart::monomial(&[2, 3]);
        let t = Complex64::from_polar(1.0, 0.3);
        let p = point(
            &c,
            &[(0, Radius::Finite(0.7), t), (1, Radius::Finite(2.0), I)],
        );
        let q = quotient_to_top(&p);
        assert_eq!(classify(&q).tag, PieceTag::Top);
        assert_eq!(sign_f(&q).unwrap(), sign_f(&p).unwrap());
        assert_eq!(quotient_to_top(&q), q);
    }

    #[test]
    fn xi_and_simplex() {
        let c = LogChart::monomial(&[2, 3]);
        let p = point(
            &c,
            &[(0, Radius::Finite(1.0), ONE), (1, Radius::Infinite, ONE)],
        );
        assert_eq!(xi(&p), BTreeMap::from([(0, 0.5), (1, 0.0)]));
        assert!(!in_simplex(&p, PHASE_TOL));
        let top = quotient_to_top(&p);
        assert!(xi(&top).values().all(|&x| x == 0.0));
        assert_eq!(simplex_representative(&top), Err(LogError::TopPoint));
        let p = point(
            &c,
            &[
                (0, Radius::Finite(0.5), ONE),
                (1, Radius::Finite(1.0 / 3.0), ONE),
            ],
        );
        assert!(xi(&p).values().all(|&x| (x - 1.0).abs() < 1e-15));

        let c = LogChart::monomial(&[1]);
        let p = point(&c, &[(0, Radius::Finite(1.0), ONE)]);
        assert!(in_simplex(&p, PHASE_TOL));
        assert_eq!(simplex_representative(&p).unwrap(), p);
        let p = point(&c, &[(0, Radius::Finite(2.0), ONE)]);
        let s = simplex_representative(&p).unwrap();
        assert_eq!(s.polar[&0].r, Radius::Finite(1.0));

        let c = LogChart::monomial(&[1, 1]);
        let p = point(
            &c,
            &[(0, Radius::Finite(1.0), ONE), (1, Radius::Finite(1.0), ONE)],
        );
        let s = simplex_representative(&p).unwrap();
        assert_eq!(xi(&s), BTreeMap::from([(0, 0.5), (1, 0.5)]));
        assert!(in_simplex(&s, PHASE_TOL));
    }

    #[test]
    fn monodromy_examples() {
        let c = LogChart::monomial(&[1]);
        let p = point(&c, &[(0, Radius::Finite(1.0), I)]);
        assert_eq!(monodromy(&p, 0.0), p);
        let h = monodromy(&p, 0.5);
        assert!(close(h.polar[&0].theta, -I));
        assert!(close(sign_f(&h).unwrap(), -sign_f(&p).unwrap()));

        let c = LogChart::monomial(&[1, 2]);
        let t = Complex64::from_polar(1.0, 1.1);
        let p = point(
            &c,
            &[(0, Radius::Finite(2.0), t), (1, Radius::Finite(1.0), I)],
        );
        assert!(in_simplex(&p, PHASE_TOL));
        let h = monodromy(&p, 1.0);
        assert!((sign_f(&h).unwrap() - sign_f(&p).unwrap()).norm() < 1e-12);
        // the individual phases did move
        assert!(!close(h.polar[&0].theta, t));
    }

    #[test]
    fn builtin_chart() {
        let m = builtin_example("cusp_resolved").unwrap();
        let c = LogChart::from_model(&m, 0).unwrap();
        assert_eq!(
            c.multiplicities.values().copied().collect::<Vec<_>>(),
            [6, 2]
        );
        assert!(LogChart::from_model(&m, 9).is_err());
    }
}
