//! The motivic Milnor fibre as a signed sum over strata, and its realizations.
//!
//! Over each nonempty stratum `D°_J` the motivic fibre contributes the torus
//! bundle `L*_J` (fibre `(C*)^|J|`) with sign `(-1)^(|J|+1)`; the monodromy
//! order of that piece is `N_J = gcd(N_i : i in J)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::motivic_ring::{KeyedClass, LefschetzPoly, ZetaFactorization};
use crate::nc_model::{ModelError, NCModel, Subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicTerm {
    pub subset: Vec<String>,
    /// `(-1)^(|J|+1)`
    pub sign: i8,
    pub gcd_key: u64,
    pub stratum_class: LefschetzPoly,
    /// `|J| - 1`, the dimension of the fibre torus after splitting off `C*`
    pub torus_exponent: usize,
}

impl MotivicTerm {
    fn signed_class(&self) -> LefschetzPoly {
        if self.sign < 0 {
            -&self.stratum_class
        } else {
            self.stratum_class.clone()
        }
    }
}

/// Bézout data for the trivialization of `L*_J`:
/// `sum_i alpha_i N_i = N_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiData {
    pub subset: Vec<String>,
    pub gcd: u64,
    pub multiplicities: Vec<u64>,
    pub bezout: BTreeMap<String, BigInt>,
}

impl PsiData {
    /// Coefficients in the order of `subset`.
    pub fn alphas(&self) -> Vec<BigInt> {
        self.subset
            .iter()
            .map(|id| self.bezout[id].clone())
            .collect()
    }

    pub fn identity_holds(&self) -> bool {
        let lhs: BigInt = self
            .subset
            .iter()
            .zip(&self.multiplicities)
            .map(|(id, &n)| &self.bezout[id] * BigInt::from(n))
            .sum();
        lhs == BigInt::from(self.gcd)
    }
}

fn gcd_of(model: &NCModel, subset: &Subset) -> Result<u64, ModelError> {
    subset
        .iter()
        .map(|id| model.multiplicity(id))
        .try_fold(0u64, |acc, n| Ok(acc.gcd(&n?)))
}

/// One term per present stratum, ordered by (size, ids).
pub fn motivic_terms(model: &NCModel) -> Result<Vec<MotivicTerm>, ModelError> {
    model.ensure_valid()?;
    model
        .sorted_strata()
        .into_iter()
        .map(|(subset, class)| {
            let size = subset.len();
            Ok(MotivicTerm {
                gcd_key: gcd_of(model, &subset)?,
                sign: if size % 2 == 1 { 1 } else { -1 },
                stratum_class: class.clone(),
                torus_exponent: size - 1,
                subset: subset.into_iter().collect(),
            })
        })
        .collect()
}

/// Class of the motivic Milnor fibre with the `C*`-action and the map to
/// `D x C*` forgotten: `sum_J (-1)^(|J|+1) [D°_J] (L-1)^|J|`.
pub fn naive_absolute_class(model: &NCModel) -> Result<LefschetzPoly, ModelError> {
    let l1 = LefschetzPoly::punctured_line();
    Ok(motivic_terms(model)?
        .iter()
        .fold(LefschetzPoly::zero(), |acc, t| {
            acc + t.signed_class() * l1.pow(t.subset.len())
        }))
}

/// Groups the terms by monodromy order `N_J`, each contributing
/// `(-1)^(|J|+1) [D°_J] (L-1)^(|J|-1)`.
///
/// Not invariant under blowing up: the Grothendieck-ring relations that
/// identify pieces with different orders are not applied here. Blowing up
/// the origin for `xy` turns `{1: -(L-1)}` into `{1: -2(L-1), 2: (L-1)}`.
pub fn keyed_class(model: &NCModel) -> Result<KeyedClass, ModelError> {
    let l1 = LefschetzPoly::punctured_line();
    let mut out = KeyedClass::new();
    for t in motivic_terms(model)? {
        let piece = t.signed_class() * l1.pow(t.torus_exponent);
        out.accumulate(t.gcd_key, &piece)
            .expect("gcd of positive multiplicities is positive");
    }
    Ok(out)
}

/// Euler characteristic of each open component `D°_{i}` (zero when absent),
/// in component order.
fn component_eulers(model: &NCModel) -> Result<Vec<(u64, BigInt)>, ModelError> {
    model.ensure_valid()?;
    Ok(model
        .components
        .iter()
        .map(|c| {
            let single: Subset = [c.id.clone()].into_iter().collect();
            (
                c.multiplicity,
                model.stratum_class(&single).euler_realization(),
            )
        })
        .collect())
}

/// Monodromy zeta function `prod_i (1 - t^N_i)^chi_i` with `chi_i` the Euler
/// characteristic of `D°_{i}`. Meaningful in local mode.
pub fn acampo_zeta(model: &NCModel) -> Result<ZetaFactorization, ModelError> {
    let factors = component_eulers(model)?
        .into_iter()
        .map(|(n, chi)| {
            chi.to_i64().map(|e| (n, e)).ok_or_else(|| {
                ModelError::Invalid(vec![crate::nc_model::Violation::new(
                    "strata",
                    "Euler characteristic does not fit a zeta exponent",
                )])
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ZetaFactorization::new(factors).expect("multiplicities are positive"))
}

/// Euler characteristic of the Milnor fibre, `sum_i N_i chi(D°_{i})`.
/// Meaningful in local mode.
pub fn milnor_fibre_euler(model: &NCModel) -> Result<BigInt, ModelError> {
    Ok(component_eulers(model)?
        .into_iter()
        .map(|(n, chi)| BigInt::from(n) * chi)
        .sum())
}

/// Extended Euclid for `a, b > 0`, with the first coefficient reduced to the
/// symmetric range `(-p/2, p/2]`, `p = b / gcd`.
fn canonical_egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    let (g, s) = (e.gcd, e.x);
    let period = b / &g;
    let two = BigInt::from(2);
    let mut s = s.mod_floor(&period);
    if &s * &two > period {
        s -= &period;
    }
    let t = (&g - &s * a) / b;
    (g, s, t)
}

/// Bézout coefficients for the multiplicities of a present stratum `J`,
/// obtained by folding the canonical extended Euclid left to right over the
/// sorted ids.
pub fn psi_data(model: &NCModel, subset: &[&str]) -> Result<PsiData, ModelError> {
    let j = model.subset_of(subset)?;
    if model.stratum_class(&j).is_zero() {
        return Err(ModelError::UnknownStratum(j.into_iter().collect()));
    }
    let ids: Vec<String> = j.into_iter().collect();
    let mults = ids
        .iter()
        .map(|id| model.multiplicity(id))
        .collect::<Result<Vec<_>, _>>()?;
    let (gcd, alphas) = bezout(&mults);
    Ok(PsiData {
        bezout: ids.iter().cloned().zip(alphas).collect(),
        subset: ids,
        gcd,
        multiplicities: mults,
    })
}

/// `(gcd, alphas)` with `sum alphas[i] * mults[i] = gcd`.
pub fn bezout(mults: &[u64]) -> (u64, Vec<BigInt>) {
    let Some((&first, rest)) = mults.split_first() else {
        return (0, Vec::new());
    };
    let mut g = BigInt::from(first);
    let mut alphas = vec![BigInt::one()];
    for &n in rest {
        let (g2, s, t) = canonical_egcd(&g, &BigInt::from(n));
        for a in alphas.iter_mut() {
            *a *= &s;
        }
        alphas.push(t);
        g = g2;
    }
    debug_assert!(g.is_positive() || g.is_zero());
    (g.to_u64().expect("gcd bounded by inputs"), alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{apply_blowup, CenterSpec};
    use crate::nc_model::builtin_example;

    fn p(c: &[i64]) -> LefschetzPoly {
        LefschetzPoly::from_i64s(c)
    }

    fn keyed(entries: &[(u64, &[i64])]) -> KeyedClass {
        KeyedClass::from_entries(entries.iter().map(|(k, c)| (*k, p(c)))).unwrap()
    }

    fn xy_blown_up() -> NCModel {
        let xy = builtin_example("xy").unwrap();
        apply_blowup(&xy, &CenterSpec::point(&["1", "2"], 2, "E")).unwrap()
    }

    #[test]
    fn terms_examples() {
        let t = motivic_terms(&builtin_example("xy").unwrap()).unwrap();
        assert_eq!(
            t,
            vec![MotivicTerm {
                subset: vec!["1".into(), "2".into()],
                sign: -1,
                gcd_key: 1,
                stratum_class: LefschetzPoly::one(),
                torus_exponent: 1,
            }]
        );
        let t = motivic_terms(&builtin_example("power_3").unwrap()).unwrap();
        assert_eq!(
            (t.len(), t[0].sign, t[0].gcd_key, t[0].torus_exponent),
            (1, 1, 3, 0)
        );
        let t = motivic_terms(&builtin_example("cusp_resolved").unwrap()).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.iter().filter(|t| t.subset.len() == 1).count(), 3);
    }

    #[test]
    fn naive_class_examples() {
        let xy = builtin_example("xy").unwrap();
        assert_eq!(naive_absolute_class(&xy).unwrap(), p(&[-1, 2, -1]));
        for n in [1, 2, 7] {
            let m = builtin_example(&format!("power_{n}")).unwrap();
            assert_eq!(naive_absolute_class(&m).unwrap(), p(&[-1, 1]));
        }
        assert_eq!(
            naive_absolute_class(&xy_blown_up()).unwrap(),
            p(&[-1, 2, -1])
        );
    }

    #[test]
    fn keyed_examples() {
        let xy = builtin_example("xy").unwrap();
        assert_eq!(keyed_class(&xy).unwrap(), keyed(&[(1, &[1, -1])]));
        assert_eq!(
            keyed_class(&xy_blown_up()).unwrap(),
            keyed(&[(1, &[2, -2]), (2, &[-1, 1])])
        );
        assert_eq!(
            keyed_class(&builtin_example("power_4").unwrap()).unwrap(),
            keyed(&[(4, &[1])])
        );
    }

    #[test]
    fn zeta_examples() {
        let cusp = builtin_example("cusp_resolved").unwrap();
        assert_eq!(
            acampo_zeta(&cusp).unwrap().factors(),
            &[(2, 1), (3, 1), (6, -1)]
        );
        assert!(acampo_zeta(&builtin_example("xy").unwrap())
            .unwrap()
            .factors()
            .is_empty());
        assert_eq!(
            acampo_zeta(&builtin_example("power_5").unwrap())
                .unwrap()
                .factors(),
            &[(5, 1)]
        );
    }

    #[test]
    fn euler_examples() {
        // 1 - mu for the cusp, mu = 2
        let cusp = builtin_example("cusp_resolved").unwrap();
        assert_eq!(milnor_fibre_euler(&cusp).unwrap(), BigInt::from(-1));
        // x^N = t has N roots
        for n in 1..=6u64 {
            let m = builtin_example(&format!("power_{n}")).unwrap();
            assert_eq!(milnor_fibre_euler(&m).unwrap(), BigInt::from(n));
        }
        assert_eq!(
            milnor_fibre_euler(&builtin_example("xy").unwrap()).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn psi_examples() {
        let m = builtin_example("x2_y3").unwrap();
        let d = psi_data(&m, &["1", "2"]).unwrap();
        assert_eq!(
            (d.gcd, d.alphas()),
            (1, vec![BigInt::from(-1), BigInt::from(1)])
        );
        let m = builtin_example("x4_y6").unwrap();
        let d = psi_data(&m, &["2", "1"]).unwrap();
        assert_eq!(d.gcd, 2);
        assert!(d.identity_holds());
        let m = builtin_example("power_5").unwrap();
        let d = psi_data(&m, &["1"]).unwrap();
        assert_eq!((d.gcd, d.alphas()), (5, vec![BigInt::from(1)]));
        assert!(matches!(
            psi_data(&builtin_example("xy").unwrap(), &["1"]),
            Err(ModelError::UnknownStratum(_))
        ));
    }

    #[test]
    fn bezout_is_deterministic_and_exact() {
        for mults in [
            vec![2u64, 4],
            vec![6, 10, 15],
            vec![12, 18, 8, 5],
            vec![7, 7],
        ] {
            let (g, a) = bezout(&mults);
            let lhs: BigInt = a
                .iter()
                .zip(&mults)
                .map(|(x, &n)| x * BigInt::from(n))
                .sum();
            assert_eq!(lhs, BigInt::from(g));
            assert_eq!(bezout(&mults), (g, a));
        }
        assert_eq!(bezout(&[2, 4]).1, vec![BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn invalid_model_rejected() {
        let mut m = builtin_example("xy").unwrap();
        m.components[0].multiplicity = 0;
        assert!(matches!(motivic_terms(&m), Err(ModelError::Invalid(_))));
        assert!(matches!(acampo_zeta(&m), Err(ModelError::Invalid(_))));
    }
}
