use std::collections::BTreeMap;
use std::fmt;

use super::{LefschetzPoly, RingError};

/// A family of `L`-polynomials indexed by a monodromy order `n >= 1`.
///
/// This is a bookkeeping device: equality is keywise, which is strictly finer
/// than equality in the equivariant Grothendieck ring. Two keyed classes that
/// differ here may still represent the same motive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeyedClass {
    entries: BTreeMap<u64, LefschetzPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyedOp {
    Add,
    Sub,
}

impl KeyedClass {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (u64, LefschetzPoly)>>(
        entries: I,
    ) -> Result<Self, RingError> {
        let mut out = Self::new();
        for (key, poly) in entries {
            out.accumulate(key, &poly)?;
        }
        Ok(out)
    }

    pub fn accumulate(&mut self, key: u64, poly: &LefschetzPoly) -> Result<(), RingError> {
        if key == 0 {
            return Err(RingError::ZeroKey);
        }
        let entry = self.entries.entry(key).or_default();
        *entry += poly;
        if entry.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    pub fn entries(&self) -> &BTreeMap<u64, LefschetzPoly> {
        &self.entries
    }

    pub fn get(&self, key: u64) -> Option<&LefschetzPoly> {
        self.entries.get(&key)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all entries, forgetting the keys.
    pub fn total(&self) -> LefschetzPoly {
        self.entries
            .values()
            .fold(LefschetzPoly::zero(), |acc, p| acc + p)
    }
}

pub fn keyed_combine(a: &KeyedClass, b: &KeyedClass, op: KeyedOp) -> KeyedClass {
    let mut out = a.clone();
    for (&key, poly) in &b.entries {
        let term = match op {
            KeyedOp::Add => poly.clone(),
            KeyedOp::Sub => -poly,
        };
        // keys of a valid KeyedClass are never zero
        out.accumulate(key, &term).expect("nonzero key");
    }
    out
}

impl fmt::Display for KeyedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (key, poly)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{key}: {poly}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kc(entries: &[(u64, &[i64])]) -> KeyedClass {
        KeyedClass::from_entries(
            entries
                .iter()
                .map(|(k, c)| (*k, LefschetzPoly::from_i64s(c))),
        )
        .unwrap()
    }

    #[test]
    fn combine_examples() {
        let l = kc(&[(1, &[0, 1])]);
        assert_eq!(
            keyed_combine(&l, &kc(&[(2, &[1])]), KeyedOp::Add),
            kc(&[(1, &[0, 1]), (2, &[1])])
        );
        assert!(keyed_combine(&l, &l, KeyedOp::Sub).is_empty());
        let b = kc(&[(3, &[-1, 1])]);
        assert_eq!(keyed_combine(&KeyedClass::new(), &b, KeyedOp::Add), b);
    }

    #[test]
    fn zero_entries_and_keys() {
        assert!(kc(&[(4, &[])]).is_empty());
        assert_eq!(
            KeyedClass::from_entries([(0, LefschetzPoly::one())]),
            Err(RingError::ZeroKey)
        );
    }

    #[test]
    fn display() {
        assert_eq!(
            kc(&[(1, &[2, -2]), (2, &[-1, 1])]).to_string(),
            "{1: 2 - 2*L, 2: -1 + 1*L}"
        );
    }
}
