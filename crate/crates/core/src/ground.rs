//! Ground sets, integer lattice points, and box bounds.

use std::fmt;

/// A finite ground set. Elements are dense indices `0..size`; labels, when
/// present, are presentation-only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    /// # Panics
    /// Panics if `size == 0`.
    pub fn new(size: usize) -> Self {
        assert!(size >= 1, "ground set must be nonempty");
        GroundSet { size, labels: None }
    }

    /// Ground set whose elements carry display labels.
    ///
    /// # Panics
    /// Panics if the label list is empty or contains duplicates.
    pub fn with_labels(labels: Vec<String>) -> Self {
        assert!(!labels.is_empty(), "ground set must be nonempty");
        for i in 0..labels.len() {
            for j in (i + 1)..labels.len() {
                assert!(labels[i] != labels[j], "ground set labels must be distinct");
            }
        }
        GroundSet { size: labels.len(), labels: Some(labels) }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of element `e`: its label when labels exist, otherwise
    /// the index itself.
    pub fn label(&self, e: usize) -> String {
        match &self.labels {
            Some(ls) => ls[e].clone(),
            None => e.to_string(),
        }
    }
}

/// An integer vector indexed by the ground set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntPoint(Vec<i64>);

impl IntPoint {
    pub fn new(coords: Vec<i64>) -> Self {
        IntPoint(coords)
    }

    pub fn zeros(n: usize) -> Self {
        IntPoint(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Component `x(e)`.
    pub fn coord(&self, e: usize) -> i64 {
        self.0[e]
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    /// `x(E)`, the sum of all components.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `x(S)` for an index set `S`.
    pub fn sum_over(&self, s: &[usize]) -> i64 {
        s.iter().map(|&e| self.0[e]).sum()
    }

    /// Indices with strictly positive components.
    pub fn supp(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.0[e] > 0).collect()
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn linf_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Copy of the point with one unit removed at `dec` and one unit added
    /// at `inc`, either of which may be absent.
    pub fn adjusted(&self, dec: Option<usize>, inc: Option<usize>) -> IntPoint {
        let mut c = self.0.clone();
        if let Some(u) = dec {
            c[u] -= 1;
        }
        if let Some(v) = inc {
            c[v] += 1;
        }
        IntPoint(c)
    }
}

impl fmt::Display for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(supp(x - y), supp(y - x))`.
///
/// # Panics
/// Panics when the points have different lengths.
pub fn supp_diff(x: &IntPoint, y: &IntPoint) -> (Vec<usize>, Vec<usize>) {
    assert_eq!(x.len(), y.len(), "supp_diff: length mismatch");
    let mut xy = Vec::new();
    let mut yx = Vec::new();
    for e in 0..x.len() {
        match x.coord(e) - y.coord(e) {
            d if d > 0 => xy.push(e),
            d if d < 0 => yx.push(e),
            _ => {}
        }
    }
    (xy, yx)
}

/// Componentwise integer box `lower <= x <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntBox {
    lower: IntPoint,
    upper: IntPoint,
}

impl IntBox {
    /// # Panics
    /// Panics unless `lower <= upper` componentwise with equal lengths.
    pub fn new(lower: IntPoint, upper: IntPoint) -> Self {
        assert_eq!(lower.len(), upper.len(), "box bounds must have equal length");
        for e in 0..lower.len() {
            assert!(
                lower.coord(e) <= upper.coord(e),
                "box lower bound exceeds upper bound at element {e}"
            );
        }
        IntBox { lower, upper }
    }

    /// The 0-1 box over `n` elements.
    pub fn unit_cube(n: usize) -> Self {
        IntBox::new(IntPoint::zeros(n), IntPoint::new(vec![1; n]))
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &IntPoint {
        &self.lower
    }

    pub fn upper(&self) -> &IntPoint {
        &self.upper
    }

    pub fn contains(&self, x: &IntPoint) -> bool {
        x.len() == self.dim()
            && (0..self.dim())
                .all(|e| self.lower.coord(e) <= x.coord(e) && x.coord(e) <= self.upper.coord(e))
    }

    /// Number of lattice points in the box.
    pub fn point_count(&self) -> u128 {
        let mut count: u128 = 1;
        for e in 0..self.dim() {
            let width = (self.upper.coord(e) - self.lower.coord(e) + 1) as u128;
            count = count.saturating_mul(width);
        }
        count
    }

    /// Largest `linf` distance between two box points.
    pub fn diameter(&self) -> i64 {
        (0..self.dim())
            .map(|e| self.upper.coord(e) - self.lower.coord(e))
            .max()
            .unwrap_or(0)
    }

    /// Lattice points in lexicographic coordinate order.
    pub fn points(&self) -> BoxPoints {
        BoxPoints { bounds: self.clone(), next: Some(self.lower.clone()) }
    }
}

/// Iterator over the lattice points of a box, lexicographically by
/// coordinates (last coordinate varies fastest).
pub struct BoxPoints {
    bounds: IntBox,
    next: Option<IntPoint>,
}

impl Iterator for BoxPoints {
    type Item = IntPoint;

    fn next(&mut self) -> Option<IntPoint> {
        let current = self.next.take()?;
        let mut coords = current.coords().to_vec();
        let mut e = coords.len();
        loop {
            if e == 0 {
                break; // exhausted
            }
            e -= 1;
            if coords[e] < self.bounds.upper.coord(e) {
                coords[e] += 1;
                for (c, l) in coords.iter_mut().zip(self.bounds.lower.coords()).skip(e + 1) {
                    *c = *l;
                }
                self.next = Some(IntPoint::new(coords));
                break;
            }
        }
        Some(current)
    }
}
