use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sparse integer polynomial in `u` and `v`, keyed by `(deg_u, deg_v)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (key, c) in terms {
            *out.entry(key).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, c: &mut BigInt| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, u: &BigInt, v: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * pow(u, a) * pow(v, b))
            .sum()
    }

    /// Swaps the roles of `u` and `v`.
    pub fn transpose(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())))
    }
}

fn pow(x: &BigInt, e: u32) -> BigInt {
    (0..e).fold(BigInt::one(), |acc, _| acc * x)
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        BivariatePoly::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        BivariatePoly::from_terms(self.terms.iter().flat_map(|(&(a, b), c)| {
            rhs.terms
                .iter()
                .map(move |(&(x, y), d)| ((a + x, b + y), c * d))
        }))
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (name, e) in [("u", a), ("v", b)] {
                match e {
                    0 => {}
                    1 => mono.push_str(name),
                    _ => mono.push_str(&format!("{name}^{e}")),
                }
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_eval() {
        let p = BivariatePoly::from_terms([((1, 1), BigInt::from(1)), ((0, 0), BigInt::from(-1))]);
        assert_eq!(p.to_string(), "uv - 1");
        assert_eq!(p.eval(&BigInt::from(2), &BigInt::from(3)), BigInt::from(5));
        assert_eq!(p.transpose(), p);
    }
}
