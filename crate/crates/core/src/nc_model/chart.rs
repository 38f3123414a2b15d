use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Formats a rational as `p/q` (denominator always written).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let r = BigRational::from_str(s).ok()?;
    Some(r)
}

/// One monomial `coeff * x_0^e_0 * ... * x_{d-1}^e_{d-1}` of a chart unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitTerm {
    pub coeff: GaussianRational,
    pub exponents: Vec<u32>,
}

/// Polynomial with Gaussian-rational coefficients, evaluated in floating point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnitPoly {
    pub terms: Vec<UnitTerm>,
}

impl UnitPoly {
    pub fn constant(c: GaussianRational, dim: usize) -> Self {
        Self {
            terms: vec![UnitTerm {
                coeff: c,
                exponents: vec![0; dim],
            }],
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(GaussianRational::from_integers(1, 0), dim)
    }

    /// Builds from `(re, im, exponents)` with integer coefficients.
    pub fn from_integer_terms(terms: &[(i64, i64, &[u32])]) -> Self {
        Self {
            terms: terms
                .iter()
                .map(|(re, im, e)| UnitTerm {
                    coeff: GaussianRational::from_integers(*re, *im),
                    exponents: e.to_vec(),
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                t.exponents
                    .iter()
                    .zip(x)
                    .fold(t.coeff.to_complex(), |acc, (&e, xi)| acc * xi.powu(e))
            })
            .sum()
    }
}

/// A local coordinate chart in which `f = u * prod_{i} x_i^{N_i}` over the
/// divisor coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub dim: usize,
    /// coordinate index -> component id
    pub divisor_coords: BTreeMap<usize, String>,
    pub unit: UnitPoly,
}

impl Chart {
    pub fn coordinate_of(&self, component: &str) -> Option<usize> {
        self.divisor_coords
            .iter()
            .find(|(_, id)| id.as_str() == component)
            .map(|(&i, _)| i)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({})i",
            format_rational(&self.re),
            format_rational(&self.im)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_eval() {
        // 1 + y on a 2-dimensional chart
        let u = UnitPoly::from_integer_terms(&[(1, 0, &[0, 0]), (1, 0, &[0, 1])]);
        let v = u.eval(&[Complex64::new(5.0, 0.0), Complex64::new(0.5, 1.0)]);
        assert!((v - Complex64::new(1.5, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn rationals() {
        let r = parse_rational("-3/6").unwrap();
        assert_eq!(format_rational(&r), "-1/2");
        assert_eq!(format_rational(&parse_rational("4").unwrap()), "4/1");
        assert!(parse_rational("x/2").is_none());
    }
}
