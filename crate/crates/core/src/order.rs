//! Dominance predicates and the lexicographic order.

use std::fmt;

/// Recorded objective pair for the lattice problems: `(g(x), <b, x>)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ParetoValue2 {
    pub g: i64,
    pub k: i64,
}

impl ParetoValue2 {
    pub fn new(g: i64, k: i64) -> Self {
        ParetoValue2 { g, k }
    }
}

impl fmt::Display for ParetoValue2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g, self.k)
    }
}

/// Recorded objective pair for the mixed-order problem: `(g(X), eta(X))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LexValue {
    pub g: i64,
    pub eta: Vec<i64>,
}

impl LexValue {
    pub fn new(g: i64, eta: Vec<i64>) -> Self {
        LexValue { g, eta }
    }
}

impl fmt::Display for LexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g, format_eta(&self.eta))
    }
}

/// Renders an eta vector as a single cell, e.g. `(2;0)`.
pub fn format_eta(eta: &[i64]) -> String {
    let parts: Vec<String> = eta.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(";"))
}

/// Componentwise dominance: `p <= q` in both coordinates and `p != q`.
pub fn dominates2(p: ParetoValue2, q: ParetoValue2) -> bool {
    p.g <= q.g && p.k <= q.k && p != q
}

/// `a <=_lex b`: equal, or the first differing coordinate is smaller in `a`.
///
/// # Panics
/// Panics on length mismatch.
pub fn lex_leq(a: &[i64], b: &[i64]) -> bool {
    assert_eq!(a.len(), b.len(), "lex_leq: length mismatch");
    for e in 0..a.len() {
        if a[e] != b[e] {
            return a[e] < b[e];
        }
    }
    true
}

/// Strict lexicographic order.
pub fn lex_lt(a: &[i64], b: &[i64]) -> bool {
    a != b && lex_leq(a, b)
}

/// Mixed-order dominance: `g` by the usual order, `eta` lexicographically,
/// and the pairs differ.
pub fn dominates_mixed(p: &LexValue, q: &LexValue) -> bool {
    p.g <= q.g && lex_leq(&p.eta, &q.eta) && p != q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance_examples() {
        let v = ParetoValue2::new;
        assert!(dominates2(v(1, 1), v(3, 1)));
        assert!(!dominates2(v(1, 1), v(1, 1)));
        assert!(!dominates2(v(1, 1), v(3, 0)));
    }

    #[test]
    fn lex_examples() {
        assert!(lex_leq(&[1, 1], &[2, 0]));
        assert!(lex_leq(&[0, 5], &[0, 5]));
        assert!(!lex_leq(&[2, 0], &[1, 9]));
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn lex_rejects_length_mismatch() {
        lex_leq(&[1], &[1, 2]);
    }

    #[test]
    fn mixed_dominance_examples() {
        let p = LexValue::new(1, vec![1, 1]);
        assert!(dominates_mixed(&p, &LexValue::new(2, vec![1, 1])));
        assert!(!dominates_mixed(&p, &LexValue::new(0, vec![2, 0])));
        let q = LexValue::new(3, vec![0, 2]);
        assert!(!dominates_mixed(&q, &q));
    }

    #[test]
    fn eta_rendering() {
        assert_eq!(format_eta(&[2, 0]), "(2;0)");
        assert_eq!(format_eta(&[5]), "(5)");
    }

    #[test]
    fn dominates2_is_a_strict_partial_order_on_a_grid() {
        let grid: Vec<ParetoValue2> = (-2..=2)
            .flat_map(|g| (-2..=2).map(move |k| ParetoValue2::new(g, k)))
            .collect();
        for &p in &grid {
            assert!(!dominates2(p, p));
            for &q in &grid {
                for &r in &grid {
                    if dominates2(p, q) && dominates2(q, r) {
                        assert!(dominates2(p, r));
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn vec3() -> impl Strategy<Value = Vec<i64>> {
            proptest::collection::vec(-3i64..4, 3)
        }

        proptest! {
            /// The lexicographic order is total and antisymmetric.
            #[test]
            fn lex_total_and_antisymmetric(a in vec3(), b in vec3()) {
                prop_assert!(lex_leq(&a, &b) || lex_leq(&b, &a));
                if lex_leq(&a, &b) && lex_leq(&b, &a) {
                    prop_assert_eq!(a, b);
                }
            }

            #[test]
            fn lex_transitive(a in vec3(), b in vec3(), c in vec3()) {
                if lex_leq(&a, &b) && lex_leq(&b, &c) {
                    prop_assert!(lex_leq(&a, &c));
                }
            }

            /// Mixed dominance is never mutual.
            #[test]
            fn mixed_dominance_asymmetric(g1 in -3i64..4, g2 in -3i64..4, e1 in vec3(), e2 in vec3()) {
                let p = LexValue::new(g1, e1);
                let q = LexValue::new(g2, e2);
                prop_assert!(!(dominates_mixed(&p, &q) && dominates_mixed(&q, &p)));
            }
        }
    }
}
