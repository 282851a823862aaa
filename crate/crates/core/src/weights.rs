//! Binary weight vectors and exchange transitions.

use std::fmt;

use crate::ground::IntPoint;

/// Binary coefficients `b(e)` of the second objective, with the induced
/// split of the ground set into `E1 = {e | b(e) = 1}` and `E0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryWeights {
    ones: Vec<bool>,
}

impl BinaryWeights {
    pub fn new(ones: Vec<bool>) -> Self {
        BinaryWeights { ones }
    }

    /// # Panics
    /// Panics when a bit is neither 0 nor 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        BinaryWeights {
            ones: bits
                .iter()
                .map(|&b| match b {
                    0 => false,
                    1 => true,
                    other => panic!("binary weight must be 0 or 1, got {other}"),
                })
                .collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        BinaryWeights { ones: vec![false; n] }
    }

    pub fn len(&self) -> usize {
        self.ones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ones.is_empty()
    }

    pub fn is_one(&self, e: usize) -> bool {
        self.ones[e]
    }

    /// Indices with `b(e) = 1`, ascending.
    pub fn e1(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.ones[e]).collect()
    }

    /// Indices with `b(e) = 0`, ascending.
    pub fn e0(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| !self.ones[e]).collect()
    }

    /// `<b, x>`.
    ///
    /// # Panics
    /// Panics on length mismatch.
    pub fn inner(&self, x: &IntPoint) -> i64 {
        assert_eq!(self.len(), x.len(), "inner: length mismatch");
        (0..self.len()).filter(|&e| self.ones[e]).map(|e| x.coord(e)).sum()
    }
}

/// Destination of a transition: an element of `E0`, or the dummy that drops
/// a unit without adding one elsewhere. The derived order puts the dummy
/// after every element, which is the tie-breaking order used by the solvers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Dest {
    Elem(usize),
    Dummy,
}

impl fmt::Display for Dest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dest::Elem(v) => write!(f, "{v}"),
            Dest::Dummy => write!(f, "z"),
        }
    }
}

/// An exchange step: remove one unit at `u` (an `E1` element) and add one
/// unit at `v` (an `E0` element, or nowhere when `v` is the dummy).
/// Transitions order lexicographically by `(u, v)` with the dummy last.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Transition {
    pub u: usize,
    pub v: Dest,
}

impl Transition {
    /// # Panics
    /// Panics when `v` names the same element as `u`.
    pub fn new(u: usize, v: Dest) -> Self {
        if let Dest::Elem(e) = v {
            assert_ne!(u, e, "transition endpoints must differ");
        }
        Transition { u, v }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {})", self.u, self.v)
    }
}

impl IntPoint {
    /// `x - chi_u + chi_v`; the dummy destination contributes nothing.
    pub fn shift(&self, t: Transition) -> IntPoint {
        match t.v {
            Dest::Elem(v) => self.adjusted(Some(t.u), Some(v)),
            Dest::Dummy => self.adjusted(Some(t.u), None),
        }
    }
}
