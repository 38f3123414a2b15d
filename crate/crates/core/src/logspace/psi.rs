//! The Bézout trivialization `Ψ_J(x, v) = (x, r, w)` of the motivic torus
//! bundle: `r = prod v_i^{N_i/N_J}` carries `f`, and `w_i = r^{-α_i} v_i`
//! lies on the torus `prod w_i^{N_i/N_J} = 1`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{classify, CplPoint, LogChart, LogError, Polar};
use crate::milnor::bezout;
use crate::nc_model::PieceTag;

#[derive(Clone, Debug, PartialEq)]
pub struct PsiCoords {
    pub base: Vec<Complex64>,
    pub r: Complex64,
    pub w: BTreeMap<usize, Complex64>,
    /// `N_J`
    pub gcd: u32,
    pub alphas: BTreeMap<usize, i32>,
}

impl PsiCoords {
    /// `prod w_i^{N_i/N_J}`, which is 1 on the image of [`psi_map`].
    pub fn constraint(&self, chart: &LogChart) -> Complex64 {
        self.w
            .iter()
            .map(|(&i, w)| w.powu(chart.multiplicity(i) / self.gcd))
            .product()
    }
}

fn bezout_for(chart: &LogChart, j: &[usize]) -> Result<(u32, BTreeMap<usize, i32>), LogError> {
    let mults: Vec<u64> = j
        .iter()
        .map(|&i| u64::from(chart.multiplicity(i)))
        .collect();
    let (g, alphas) = bezout(&mults);
    let mut out = BTreeMap::new();
    for (&i, a) in j.iter().zip(&alphas) {
        let a = a
            .to_i32()
            .ok_or_else(|| LogError::ExponentRange(a.to_string()))?;
        out.insert(i, a);
    }
    Ok((g as u32, out))
}

pub fn psi_map(p: &CplPoint) -> Result<PsiCoords, LogError> {
    if classify(p).tag != PieceTag::Mot {
        return Err(LogError::NotMot);
    }
    let j: Vec<usize> = p.polar.keys().copied().collect();
    let (gcd, alphas) = bezout_for(p.chart, &j)?;
    let v: BTreeMap<usize, Complex64> = p
        .polar
        .iter()
        .map(|(&i, pc)| (i, pc.value().expect("motivic point")))
        .collect();
    let r: Complex64 = v
        .iter()
        .map(|(&i, vi)| vi.powu(p.chart.multiplicity(i) / gcd))
        .product();
    let w = v
        .iter()
        .map(|(&i, vi)| (i, r.powi(-alphas[&i]) * vi))
        .collect();
    Ok(PsiCoords {
        base: p.base.clone(),
        r,
        w,
        gcd,
        alphas,
    })
}

/// `v_i = r^{α_i} w_i`.
pub fn psi_inverse<'a>(chart: &'a LogChart, coords: &PsiCoords) -> Result<CplPoint<'a>, LogError> {
    let j: Vec<usize> = coords.w.keys().copied().collect();
    let (_, alphas) = bezout_for(chart, &j)?;
    let polar = coords
        .w
        .iter()
        .map(|(&i, w)| (i, Polar::from_value(coords.r.powi(alphas[&i]) * w)))
        .collect();
    CplPoint::new(chart, coords.base.clone(), polar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logspace::{f_mot, Radius};

    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn identity_inputs() {
        let c = LogChart::monomial(&[2, 3]);
        let p = CplPoint::new(
            &c,
            vec![ZERO; 2],
            BTreeMap::from([(0, Polar::from_value(ONE)), (1, Polar::from_value(ONE))]),
        )
        .unwrap();
        let psi = psi_map(&p).unwrap();
        assert_eq!(psi.gcd, 1);
        assert_eq!(psi.alphas, BTreeMap::from([(0, -1), (1, 1)]));
        assert_eq!(psi.r, ONE);
        assert!(psi.w.values().all(|&w| w == ONE));
        assert_eq!(psi_inverse(&c, &psi).unwrap(), p);
    }

    #[test]
    fn singleton() {
        let c = LogChart::monomial(&[2]);
        let v = Complex64::new(0.0, 2.0);
        let p = CplPoint::new(&c, vec![ZERO], BTreeMap::from([(0, Polar::from_value(v))])).unwrap();
        let psi = psi_map(&p).unwrap();
        assert_eq!((psi.gcd, psi.r), (2, v));
        assert_eq!(psi.w[&0], ONE);
        // f = u_J r^{N_J}
        assert!((f_mot(&p).unwrap() - v.powu(2)).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_mot() {
        let c = LogChart::monomial(&[1, 1]);
        let p = CplPoint::new(
            &c,
            vec![ZERO; 2],
            BTreeMap::from([
                (0, Polar::top(ONE)),
                (1, Polar::new(Radius::Finite(1.0), ONE)),
            ]),
        )
        .unwrap();
        assert_eq!(psi_map(&p), Err(LogError::NotMot));
    }
}
