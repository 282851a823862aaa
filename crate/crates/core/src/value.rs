//! Extended objective values: finite integers or positive infinity.

use std::fmt;
use std::ops::Add;

/// An objective value in the extended integers. `Infinite` compares greater
/// than every finite value, and `Infinite >= Infinite` holds, so exchange
/// inequalities can be evaluated directly in the extended order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtValue {
    Finite(i64),
    Infinite,
}

impl ExtValue {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::Infinite => None,
        }
    }

    /// # Panics
    /// Panics when the value is infinite.
    pub fn expect_finite(self) -> i64 {
        match self {
            ExtValue::Finite(v) => v,
            ExtValue::Infinite => panic!("expected a finite value"),
        }
    }
}

impl From<i64> for ExtValue {
    fn from(v: i64) -> Self {
        ExtValue::Finite(v)
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinite,
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(v) => write!(f, "{v}"),
            ExtValue::Infinite => write!(f, "+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_greatest() {
        assert!(ExtValue::Finite(i64::MAX) < ExtValue::Infinite);
        assert!(ExtValue::Infinite >= ExtValue::Infinite);
        assert!(ExtValue::Finite(3) < ExtValue::Finite(4));
    }

    #[test]
    fn addition_absorbs_infinity() {
        assert_eq!(ExtValue::Finite(2) + ExtValue::Finite(3), ExtValue::Finite(5));
        assert_eq!(ExtValue::Finite(2) + ExtValue::Infinite, ExtValue::Infinite);
        assert_eq!(ExtValue::Infinite + ExtValue::Infinite, ExtValue::Infinite);
    }
}
