use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::RingError;

/// A finite product `prod_N (1 - t^N)^e` stored as `(N, e)` pairs.
///
/// Values built through [`ZetaFactorization::new`] are in normal form: orders
/// strictly increasing and exponents nonzero. [`ZetaFactorization::raw`] keeps
/// an arbitrary factor multiset for later normalization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZetaFactorization {
    factors: Vec<(u64, i64)>,
}

impl ZetaFactorization {
    pub fn new<I: IntoIterator<Item = (u64, i64)>>(factors: I) -> Result<Self, RingError> {
        Ok(zeta_normalize(&Self::raw(factors)?))
    }

    pub fn raw<I: IntoIterator<Item = (u64, i64)>>(factors: I) -> Result<Self, RingError> {
        let factors: Vec<_> = factors.into_iter().collect();
        if factors.iter().any(|&(n, _)| n == 0) {
            return Err(RingError::ZeroOrder);
        }
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 0)
    }

    /// Coefficients (low degree first) of the product of the factors whose
    /// exponent has the requested sign, each raised to `|e|`.
    fn expand_side(&self, positive: bool) -> Vec<BigInt> {
        let mut poly = vec![BigInt::from(1)];
        for &(order, exp) in &self.factors {
            if exp == 0 || (exp > 0) != positive {
                continue;
            }
            let order = order as usize;
            for _ in 0..exp.unsigned_abs() {
                // multiply in place by (1 - t^order)
                poly.resize(poly.len() + order, BigInt::zero());
                for k in (order..poly.len()).rev() {
                    let lower = poly[k - order].clone();
                    poly[k] -= lower;
                }
            }
        }
        while poly.last().is_some_and(Zero::is_zero) {
            poly.pop();
        }
        poly
    }
}

pub fn zeta_normalize(z: &ZetaFactorization) -> ZetaFactorization {
    let mut merged: BTreeMap<u64, i64> = BTreeMap::new();
    for &(order, exp) in &z.factors {
        *merged.entry(order).or_insert(0) += exp;
    }
    ZetaFactorization {
        factors: merged.into_iter().filter(|&(_, e)| e != 0).collect(),
    }
}

/// Decides `a == b` as rational functions of `t`: writing each side as P/Q
/// with P the positive-exponent part and Q the negative part, checks the
/// polynomial identity `P_a * Q_b == P_b * Q_a` coefficientwise.
pub fn zeta_equal(a: &ZetaFactorization, b: &ZetaFactorization) -> bool {
    let lhs = mul_polys(&a.expand_side(true), &b.expand_side(false));
    let rhs = mul_polys(&b.expand_side(true), &a.expand_side(false));
    lhs == rhs
}

fn mul_polys(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

impl fmt::Display for ZetaFactorization {
    /// `(1-t^2)^1 (1-t^3)^1 (1-t^6)^-1`; the empty product renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (order, exp)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "(1-t^{order})^{exp}")?;
        }
        Ok(())
    }
}

impl FromStr for ZetaFactorization {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RingError::Parse(s.to_string());
        let trimmed = s.trim();
        if trimmed == "1" {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for token in trimmed.split_whitespace() {
            let rest = token.strip_prefix("(1-t^").ok_or_else(bad)?;
            let (order, exp) = rest.split_once(")^").ok_or_else(bad)?;
            factors.push((
                order.parse::<u64>().map_err(|_| bad())?,
                exp.parse::<i64>().map_err(|_| bad())?,
            ));
        }
        Self::raw(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(f: &[(u64, i64)]) -> ZetaFactorization {
        ZetaFactorization::raw(f.iter().copied()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(zeta_normalize(&z(&[(2, 1), (2, 1)])).factors(), &[(2, 2)]);
        assert!(zeta_normalize(&z(&[(3, 1), (3, -1)])).factors().is_empty());
        assert_eq!(
            zeta_normalize(&z(&[(6, -1), (2, 1)])).factors(),
            &[(2, 1), (6, -1)]
        );
    }

    #[test]
    fn equal_examples() {
        // (1 - t^2) = 1 - t^2 versus (1 - t)^2 = 1 - 2t + t^2
        assert!(!zeta_equal(&z(&[(2, 1)]), &z(&[(1, 1), (1, 1)])));
        assert!(zeta_equal(
            &z(&[(2, 1)]),
            &zeta_normalize(&z(&[(2, 1), (5, 0)]))
        ));
        assert!(zeta_equal(&z(&[(1, 1), (2, 1)]), &z(&[(2, 1), (1, 1)])));
    }

    #[test]
    fn rational_function_identities() {
        // (1-t^2)/(1-t) = 1+t, which is not a product of (1-t^N) factors alone,
        // but (1-t^2)(1-t)^-1 compared against itself rearranged must agree.
        assert!(zeta_equal(&z(&[(2, 1), (1, -1)]), &z(&[(1, -1), (2, 1)])));
        assert!(!zeta_equal(&z(&[(2, 1), (1, -1)]), &z(&[(1, 1)])));
        assert!(zeta_equal(&z(&[]), &z(&[(4, 3), (4, -3)])));
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(ZetaFactorization::raw([(0, 1)]), Err(RingError::ZeroOrder));
    }

    #[test]
    fn text_form() {
        let cusp = ZetaFactorization::new([(6, -1), (3, 1), (2, 1)]).unwrap();
        assert_eq!(cusp.to_string(), "(1-t^2)^1 (1-t^3)^1 (1-t^6)^-1");
        assert_eq!(cusp.to_string().parse::<ZetaFactorization>().unwrap(), cusp);
        assert_eq!(ZetaFactorization::trivial().to_string(), "1");
        assert!("(1-t^2".parse::<ZetaFactorization>().is_err());
    }
}
