use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BivariatePoly, RingError};

/// An exact polynomial in the Lefschetz symbol `L` with integer coefficients.
///
/// Index `k` of the coefficient vector holds the coefficient of `L^k`. The
/// representation is kept in normal form: no trailing zero coefficients, so the
/// zero polynomial has an empty coefficient vector. Negative powers of `L` are
/// not representable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LefschetzPoly {
    coeffs: Vec<BigInt>,
}

impl LefschetzPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The class `L` of the affine line.
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial<T: Into<BigInt>>(coeff: T, exponent: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exponent + 1];
        coeffs[exponent] = coeff.into();
        Self::from_coeffs(coeffs)
    }

    /// `L - 1`, the class of the punctured line.
    pub fn punctured_line() -> Self {
        Self::from_i64s(&[-1, 1])
    }

    /// `1 + L + ... + L^(d-1)`, the class of projective space of dimension `d - 1`.
    /// Zero for `d = 0`.
    pub fn projective_space(points: usize) -> Self {
        Self::from_coeffs(vec![BigInt::one(); points])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs. Repeated exponents
    /// are summed; a negative exponent is rejected since the ring is not localized.
    pub fn from_terms<T: Into<BigInt> + Clone>(terms: &[(i64, T)]) -> Result<Self, RingError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (exp, c) in terms {
            if *exp < 0 {
                return Err(RingError::NegativeExponent(*exp));
            }
            let e = *exp as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c.clone().into();
        }
        Ok(Self::from_coeffs(coeffs))
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `L`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Compactly supported Euler characteristic: evaluation at `L = 1`.
    pub fn euler_realization(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Hodge-Deligne realization `L -> uv`.
    pub fn e_polynomial(&self) -> BivariatePoly {
        BivariatePoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, k as u32), c.clone())),
        )
    }

    /// Evaluation at an integer value of `L`.
    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }
}

/// Arithmetic selector mirroring the binary ring operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

pub fn lefschetz_arith(a: &LefschetzPoly, b: &LefschetzPoly, op: RingOp) -> LefschetzPoly {
    match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], negate_b: bool) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_default();
            match b.get(k) {
                Some(y) if negate_b => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

impl Add for &LefschetzPoly {
    type Output = LefschetzPoly;
    fn add(self, rhs: &LefschetzPoly) -> LefschetzPoly {
        LefschetzPoly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl Sub for &LefschetzPoly {
    type Output = LefschetzPoly;
    fn sub(self, rhs: &LefschetzPoly) -> LefschetzPoly {
        LefschetzPoly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl Mul for &LefschetzPoly {
    type Output = LefschetzPoly;
    fn mul(self, rhs: &LefschetzPoly) -> LefschetzPoly {
        if self.is_zero() || rhs.is_zero() {
            return LefschetzPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LefschetzPoly::from_coeffs(out)
    }
}

impl Neg for &LefschetzPoly {
    type Output = LefschetzPoly;
    fn neg(self) -> LefschetzPoly {
        LefschetzPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LefschetzPoly {
            type Output = LefschetzPoly;
            fn $f(self, rhs: LefschetzPoly) -> LefschetzPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LefschetzPoly> for LefschetzPoly {
            type Output = LefschetzPoly;
            fn $f(self, rhs: &LefschetzPoly) -> LefschetzPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LefschetzPoly {
    type Output = LefschetzPoly;
    fn neg(self) -> LefschetzPoly {
        -&self
    }
}

impl AddAssign<&LefschetzPoly> for LefschetzPoly {
    fn add_assign(&mut self, rhs: &LefschetzPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LefschetzPoly> for LefschetzPoly {
    fn sub_assign(&mut self, rhs: &LefschetzPoly) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for LefschetzPoly {
    /// Renders `c0 + c1*L + c2*L^2 ...`, skipping zero terms; negative
    /// coefficients after the first term are written with a binary minus.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => c.abs().to_string(),
                1 => format!("{}*L", c.abs()),
                _ => format!("{}*L^{}", c.abs(), k),
            };
            match (first, c.is_negative()) {
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

impl FromStr for LefschetzPoly {
    type Err = RingError;

    /// Parses the textual form produced by `Display`. Terms are `c`, `c*L` or
    /// `c*L^k` (a bare `L`/`L^k` means coefficient one), joined by `+` or `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(RingError::Parse(s.to_string()));
        }
        let bad = || RingError::Parse(s.to_string());
        let mut terms: Vec<(i64, BigInt)> = Vec::new();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut i = 0;
        let mut pieces = Vec::new();
        while i <= bytes.len() {
            let at_split = i == bytes.len()
                || (i > start
                    && (bytes[i] == b'+' || bytes[i] == b'-')
                    && !matches!(bytes[i - 1], b'^' | b'+' | b'-'));
            if at_split {
                pieces.push(&compact[start..i]);
                start = i;
            }
            i += 1;
        }
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'+') => (1, &piece[1..]),
                Some(b'-') => (-1, &piece[1..]),
                _ => (1, piece),
            };
            // "+-3" style input collapses the leading sign into the coefficient.
            let (sign, body) = match body.as_bytes().first() {
                Some(b'-') => (-sign, &body[1..]),
                Some(b'+') => (sign, &body[1..]),
                _ => (sign, body),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff_str, power) = match body.find('L') {
                None => (body, 0i64),
                Some(pos) => {
                    let coeff = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    let rest = &body[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i64>()
                            .map_err(|_| bad())?
                    };
                    (if coeff.is_empty() { "1" } else { coeff }, power)
                }
            };
            let coeff: BigInt = coeff_str.parse().map_err(|_| bad())?;
            terms.push((power, coeff * sign));
        }
        Self::from_terms(&terms)
    }
}
