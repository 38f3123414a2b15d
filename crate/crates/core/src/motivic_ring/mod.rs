//! Exact bookkeeping in the Grothendieck ring: polynomials in the Lefschetz
//! class `L`, order-keyed families of such polynomials, and monodromy zeta
//! factorizations.
//!
//! Everything here is integer-exact. Equality in the equivariant Grothendieck
//! ring itself is not decidable in general, so the only comparisons offered are
//! at the level of these representations and their realizations.

mod bivariate;
mod keyed;
mod lefschetz;
mod zeta;

pub use bivariate::BivariatePoly;
pub use keyed::{keyed_combine, KeyedClass, KeyedOp};
pub use lefschetz::{lefschetz_arith, LefschetzPoly, RingOp};
pub use zeta::{zeta_equal, zeta_normalize, ZetaFactorization};

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("negative power L^{0} is not allowed in the non-localized ring")]
    NegativeExponent(i64),
    #[error("keyed class keys must be >= 1")]
    ZeroKey,
    #[error("zeta factor order must be >= 1")]
    ZeroOrder,
    #[error("cannot parse `{0}`")]
    Parse(String),
}

pub fn euler_realization(p: &LefschetzPoly) -> BigInt {
    p.euler_realization()
}

pub fn e_polynomial(p: &LefschetzPoly) -> BivariatePoly {
    p.e_polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = LefschetzPoly> {
        prop::collection::vec(-1000i64..1000, 0..=9).prop_map(|c| LefschetzPoly::from_i64s(&c))
    }

    fn zeta() -> impl Strategy<Value = ZetaFactorization> {
        prop::collection::vec((1u64..7, -3i64..4), 0..6)
            .prop_map(|f| ZetaFactorization::raw(f).unwrap())
    }

    proptest! {
        #[test]
        fn commutative_ring(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!(&a * &LefschetzPoly::one(), a.clone());
        }

        #[test]
        fn realizations_are_homomorphisms(a in poly(), b in poly()) {
            prop_assert_eq!(euler_realization(&(&a + &b)), euler_realization(&a) + euler_realization(&b));
            prop_assert_eq!(euler_realization(&(&a * &b)), euler_realization(&a) * euler_realization(&b));
            prop_assert_eq!(e_polynomial(&(&a + &b)), &e_polynomial(&a) + &e_polynomial(&b));
            prop_assert_eq!(e_polynomial(&(&a * &b)), &e_polynomial(&a) * &e_polynomial(&b));
            let one = BigInt::one();
            prop_assert_eq!(e_polynomial(&a).eval(&one, &one), euler_realization(&a));
            prop_assert_eq!(e_polynomial(&a).transpose(), e_polynomial(&a));
        }

        #[test]
        fn text_round_trip(a in poly()) {
            prop_assert_eq!(a.to_string().parse::<LefschetzPoly>().unwrap(), a);
        }

        #[test]
        fn zeta_equal_is_equivalence(a in zeta(), b in zeta(), c in zeta()) {
            prop_assert!(zeta_equal(&a, &a));
            prop_assert!(zeta_equal(&a, &zeta_normalize(&a)));
            prop_assert_eq!(zeta_equal(&a, &b), zeta_equal(&b, &a));
            if zeta_equal(&a, &b) && zeta_equal(&b, &c) {
                prop_assert!(zeta_equal(&a, &c));
            }
            // distinct normal forms are distinct rational functions
            prop_assert_eq!(zeta_equal(&a, &b), zeta_normalize(&a) == zeta_normalize(&b));
        }
    }
}
