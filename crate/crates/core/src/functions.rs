//! Objective oracles, constructive M/M-natural-convex families, and
//! brute-force verifiers for the exchange axioms.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering::Relaxed};
use std::sync::Arc;

use thiserror::Error;

use crate::ground::{supp_diff, IntBox, IntPoint};
use crate::subsets::{SetFamily, Subset};
use crate::value::ExtValue;

/// Default ceiling on explicit domain enumeration.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

/// Convexity class an oracle claims for itself. Claims are verified by
/// [`verify_m`] / [`verify_mnat`] before solvers rely on them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConvexClass {
    M,
    MNat,
    Unclaimed,
}

impl fmt::Display for ConvexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexClass::M => write!(f, "M-convex"),
            ConvexClass::MNat => write!(f, "M-natural-convex"),
            ConvexClass::Unclaimed => write!(f, "unclaimed"),
        }
    }
}

type EvalFn = Arc<dyn Fn(&IntPoint) -> ExtValue + Send + Sync>;

/// Evaluation handle for an extended-valued objective with a bounding box,
/// an optional feasible start point, and a claimed convexity class.
///
/// Evaluation outside the box is `+inf` by construction, so the effective
/// domain is always contained in the box. Evaluations are counted; the
/// counter is shared between clones.
#[derive(Clone)]
pub struct Objective {
    eval_fn: EvalFn,
    bounds: IntBox,
    start: Option<IntPoint>,
    claimed: ConvexClass,
    calls: Arc<AtomicU64>,
}

impl Objective {
    pub fn from_fn<F>(f: F, bounds: IntBox, start: Option<IntPoint>, claimed: ConvexClass) -> Self
    where
        F: Fn(&IntPoint) -> ExtValue + Send + Sync + 'static,
    {
        Objective {
            eval_fn: Arc::new(f),
            bounds,
            start,
            claimed,
            calls: Arc::new(AtomicU64::new(0)),
        }
    }

    /// # Panics
    /// Panics when `x` does not match the ground-set dimension.
    pub fn eval(&self, x: &IntPoint) -> ExtValue {
        assert_eq!(x.len(), self.bounds.dim(), "eval: point does not match the ground set");
        self.calls.fetch_add(1, Relaxed);
        if !self.bounds.contains(x) {
            return ExtValue::Infinite;
        }
        (self.eval_fn)(x)
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &IntBox {
        &self.bounds
    }

    pub fn start(&self) -> Option<&IntPoint> {
        self.start.as_ref()
    }

    pub fn with_start(mut self, start: IntPoint) -> Self {
        self.start = Some(start);
        self
    }

    pub fn claimed(&self) -> ConvexClass {
        self.claimed
    }

    /// Total evaluations so far, shared across clones.
    pub fn calls(&self) -> u64 {
        self.calls.load(Relaxed)
    }

    /// All box points with finite value, in lexicographic coordinate order.
    pub fn enumerate_dom(&self, cap: usize) -> Result<Vec<IntPoint>, EnumError> {
        let points = self.bounds.point_count();
        if points > cap as u128 {
            return Err(EnumError::CapExceeded { points, cap });
        }
        Ok(self.bounds.points().filter(|x| self.eval(x).is_finite()).collect())
    }

    /// Sum of this oracle and a linear function; the claimed class is
    /// preserved (adding a linear term keeps M/M-natural-convexity).
    pub fn add_linear(&self, extra: &[i64]) -> Objective {
        assert_eq!(extra.len(), self.dim(), "add_linear: length mismatch");
        let inner = self.eval_fn.clone();
        let extra = extra.to_vec();
        Objective::from_fn(
            move |x| {
                let lin: i64 = (0..x.len()).map(|e| extra[e] * x.coord(e)).sum();
                inner(x) + ExtValue::Finite(lin)
            },
            self.bounds.clone(),
            self.start.clone(),
            self.claimed,
        )
    }
}

impl fmt::Debug for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Objective")
            .field("bounds", &self.bounds)
            .field("start", &self.start)
            .field("claimed", &self.claimed)
            .finish()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration cap exceeded: the box holds {points} points, cap is {cap}; use a smaller instance or raise the cap")]
    CapExceeded { points: u128, cap: usize },
}

/// Linear objective over an explicit matroid base family.
#[derive(Clone, Debug)]
pub struct BaseFamilyLinear {
    family: SetFamily,
    cost: Vec<i64>,
    rank: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("base family must be nonempty")]
    Empty,
    #[error("cost vector has length {found}, expected {expected}")]
    CostLength { expected: usize, found: usize },
    #[error("base family members must share one cardinality")]
    UnequalCardinality,
    #[error("family violates the simultaneous exchange axiom at B1={b1}, B2={b2}, u={u}")]
    ExchangeFailure { b1: Subset, b2: Subset, u: usize },
}

impl BaseFamilyLinear {
    /// Builds the family after checking the simultaneous exchange axiom.
    pub fn new(family: SetFamily, cost: Vec<i64>) -> Result<Self, FamilyError> {
        let this = Self::new_unchecked(family, cost)?;
        if this.family.equal_cardinality().is_none() {
            return Err(FamilyError::UnequalCardinality);
        }
        let report = verify_base_axiom(&this.family);
        if let Some(AxiomWitness::SetPair { a, b, elem }) = report.witness {
            return Err(FamilyError::ExchangeFailure { b1: a, b2: b, u: elem });
        }
        Ok(this)
    }

    /// Structural checks only; the exchange axiom is left to the verifier.
    pub fn new_unchecked(family: SetFamily, cost: Vec<i64>) -> Result<Self, FamilyError> {
        if family.is_empty() {
            return Err(FamilyError::Empty);
        }
        if cost.len() != family.n() {
            return Err(FamilyError::CostLength { expected: family.n(), found: cost.len() });
        }
        let rank = family.max_card();
        Ok(BaseFamilyLinear { family, cost, rank })
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn cost(&self) -> &[i64] {
        &self.cost
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Oracle with domain the characteristic vectors of the family and
    /// value `<cost, x>` there.
    pub fn oracle(&self) -> Objective {
        subset_linear_oracle(&self.family, &self.cost, ConvexClass::M)
    }
}

/// Oracle for a linear function restricted to an explicit subset family.
pub fn subset_linear_oracle(family: &SetFamily, weights: &[i64], claimed: ConvexClass) -> Objective {
    assert_eq!(weights.len(), family.n(), "weights must cover the ground set");
    let n = family.n();
    let table: HashMap<u32, i64> = family
        .sets()
        .iter()
        .map(|s| (s.mask(), s.iter().map(|e| weights[e]).sum()))
        .collect();
    let start = family.sets().first().map(|s| s.char_point(n));
    Objective::from_fn(
        move |x| match Subset::from_point(x) {
            Some(s) => table.get(&s.mask()).copied().map_or(ExtValue::Infinite, ExtValue::Finite),
            None => ExtValue::Infinite,
        },
        IntBox::unit_cube(n),
        start,
        claimed,
    )
}

/// Convenience constructor: verified base family plus linear costs.
pub fn make_base_linear(family: SetFamily, cost: Vec<i64>) -> Result<Objective, FamilyError> {
    Ok(BaseFamilyLinear::new(family, cost)?.oracle())
}

/// Sum constraint of a separable quadratic instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumConstraint {
    /// `x(E) = r`; yields an M-convex oracle.
    Equal(i64),
    /// `r1 <= x(E) <= r2`; yields an M-natural-convex oracle.
    Range(i64, i64),
}

/// Separable quadratic-plus-linear objective `sum_e a_e x(e)^2 + c_e x(e)`
/// over a box, under a sum constraint.
#[derive(Clone, Debug)]
pub struct SeparableSpec {
    quad: Vec<i64>,
    lin: Vec<i64>,
    bounds: IntBox,
    sum: SumConstraint,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("quadratic coefficient a[{e}] is negative")]
    NegativeQuad { e: usize },
    #[error("coefficient vectors must match the box dimension")]
    LengthMismatch,
    #[error("sum constraint is infeasible within the box")]
    InfeasibleSum,
}

impl SeparableSpec {
    pub fn new(
        quad: Vec<i64>,
        lin: Vec<i64>,
        bounds: IntBox,
        sum: SumConstraint,
    ) -> Result<Self, SpecError> {
        if quad.len() != bounds.dim() || lin.len() != bounds.dim() {
            return Err(SpecError::LengthMismatch);
        }
        if let Some(e) = (0..quad.len()).find(|&e| quad[e] < 0) {
            return Err(SpecError::NegativeQuad { e });
        }
        let lo = bounds.lower().total();
        let hi = bounds.upper().total();
        let feasible = match sum {
            SumConstraint::Equal(r) => lo <= r && r <= hi,
            SumConstraint::Range(r1, r2) => r1 <= r2 && r1 <= hi && lo <= r2,
        };
        if !feasible {
            return Err(SpecError::InfeasibleSum);
        }
        Ok(SeparableSpec { quad, lin, bounds, sum })
    }

    /// A feasible point: the box lower corner filled greedily up to the
    /// smallest admissible total.
    pub fn start_point(&self) -> IntPoint {
        let lo = self.bounds.lower().total();
        let target = match self.sum {
            SumConstraint::Equal(r) => r,
            SumConstraint::Range(r1, _) => lo.max(r1),
        };
        let mut coords = self.bounds.lower().coords().to_vec();
        let mut need = target - lo;
        for (c, upper) in coords.iter_mut().zip(self.bounds.upper().coords()) {
            if need == 0 {
                break;
            }
            let add = (upper - *c).min(need);
            *c += add;
            need -= add;
        }
        IntPoint::new(coords)
    }

    pub fn oracle(&self) -> Objective {
        let quad = self.quad.clone();
        let lin = self.lin.clone();
        let sum = self.sum;
        let claimed = match sum {
            SumConstraint::Equal(_) => ConvexClass::M,
            SumConstraint::Range(..) => ConvexClass::MNat,
        };
        let start = self.start_point();
        Objective::from_fn(
            move |x| {
                let total = x.total();
                let ok = match sum {
                    SumConstraint::Equal(r) => total == r,
                    SumConstraint::Range(r1, r2) => r1 <= total && total <= r2,
                };
                if !ok {
                    return ExtValue::Infinite;
                }
                let v: i64 = (0..x.len())
                    .map(|e| {
                        let c = x.coord(e);
                        quad[e] * c * c + lin[e] * c
                    })
                    .sum();
                ExtValue::Finite(v)
            },
            self.bounds.clone(),
            Some(start),
            claimed,
        )
    }
}

/// Convenience constructor mirroring [`make_base_linear`].
pub fn make_separable(spec: &SeparableSpec) -> Objective {
    spec.oracle()
}

/// Which exchange axiom a report concerns.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxiomKind {
    MExchange,
    MNatExchange,
    BaseExchange,
    GMatroidExchange,
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomKind::MExchange => write!(f, "m-exchange"),
            AxiomKind::MNatExchange => write!(f, "m-natural-exchange"),
            AxiomKind::BaseExchange => write!(f, "base-exchange"),
            AxiomKind::GMatroidExchange => write!(f, "g-matroid-exchange"),
        }
    }
}

/// Counterexample carried by a failing report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AxiomWitness {
    /// Function axioms: a pair of domain points and the unmatched `u`.
    PointPair { x: IntPoint, y: IntPoint, u: usize },
    /// Set-family axioms: the pair of members and the unmatched element.
    SetPair { a: Subset, b: Subset, elem: usize },
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomWitness::PointPair { x, y, u } => write!(f, "x={x}, y={y}, u={u}"),
            AxiomWitness::SetPair { a, b, elem } => write!(f, "A={a}, B={b}, element={elem}"),
        }
    }
}

/// Note included in every report header: exchange inequalities are decided
/// in the extended reals, where `+inf >= +inf` holds.
pub const EXT_ORDER_CONVENTION: &str =
    "inequalities evaluated in the extended reals (+inf >= +inf holds)";

/// Outcome of one exhaustive axiom check. The first failing triple in the
/// deterministic scan order is reported, so witnesses are reproducible.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub axiom: AxiomKind,
    pub passed: bool,
    pub witness: Option<AxiomWitness>,
    pub triples_checked: u64,
    pub convention: &'static str,
}

impl AxiomReport {
    fn pass(axiom: AxiomKind, triples_checked: u64) -> Self {
        AxiomReport { axiom, passed: true, witness: None, triples_checked, convention: EXT_ORDER_CONVENTION }
    }

    fn fail(axiom: AxiomKind, witness: AxiomWitness, triples_checked: u64) -> Self {
        AxiomReport {
            axiom,
            passed: false,
            witness: Some(witness),
            triples_checked,
            convention: EXT_ORDER_CONVENTION,
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "PASS {}: {} triples checked; {}", self.axiom, self.triples_checked, self.convention)
        } else {
            write!(
                f,
                "FAIL {}: witness {}; {}",
                self.axiom,
                self.witness.as_ref().expect("failing report carries a witness"),
                self.convention
            )
        }
    }
}

/// Exhaustive check of the M-convex exchange axiom over the enumerable
/// domain: for all `x, y` in the domain and `u` in `supp(x-y)` some
/// `v` in `supp(y-x)` satisfies
/// `f(x) + f(y) >= f(x - chi_u + chi_v) + f(y + chi_u - chi_v)`.
pub fn verify_m(o: &Objective, cap: usize) -> Result<AxiomReport, EnumError> {
    let dom = o.enumerate_dom(cap)?;
    let vals: Vec<i64> = dom.iter().map(|x| o.eval(x).expect_finite()).collect();
    let mut checked = 0u64;
    for (i, x) in dom.iter().enumerate() {
        for (j, y) in dom.iter().enumerate() {
            if i == j {
                continue;
            }
            let (dx, dy) = supp_diff(x, y);
            let lhs = ExtValue::Finite(vals[i] + vals[j]);
            for &u in &dx {
                checked += 1;
                let ok = dy.iter().any(|&v| {
                    lhs >= o.eval(&x.adjusted(Some(u), Some(v)))
                        + o.eval(&y.adjusted(Some(v), Some(u)))
                });
                if !ok {
                    return Ok(AxiomReport::fail(
                        AxiomKind::MExchange,
                        AxiomWitness::PointPair { x: x.clone(), y: y.clone(), u },
                        checked,
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::pass(AxiomKind::MExchange, checked))
}

/// Exhaustive check of the M-natural-convex exchange axiom: for each
/// `x, y, u` either the one-sided move
/// `f(x) + f(y) >= f(x - chi_u) + f(y + chi_u)` holds or some `v` in
/// `supp(y-x)` completes the exchange.
pub fn verify_mnat(o: &Objective, cap: usize) -> Result<AxiomReport, EnumError> {
    let dom = o.enumerate_dom(cap)?;
    let vals: Vec<i64> = dom.iter().map(|x| o.eval(x).expect_finite()).collect();
    let mut checked = 0u64;
    for (i, x) in dom.iter().enumerate() {
        for (j, y) in dom.iter().enumerate() {
            if i == j {
                continue;
            }
            let (dx, dy) = supp_diff(x, y);
            let lhs = ExtValue::Finite(vals[i] + vals[j]);
            for &u in &dx {
                checked += 1;
                let one_sided = lhs
                    >= o.eval(&x.adjusted(Some(u), None)) + o.eval(&y.adjusted(None, Some(u)));
                let ok = one_sided
                    || dy.iter().any(|&v| {
                        lhs >= o.eval(&x.adjusted(Some(u), Some(v)))
                            + o.eval(&y.adjusted(Some(v), Some(u)))
                    });
                if !ok {
                    return Ok(AxiomReport::fail(
                        AxiomKind::MNatExchange,
                        AxiomWitness::PointPair { x: x.clone(), y: y.clone(), u },
                        checked,
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::pass(AxiomKind::MNatExchange, checked))
}

/// Simultaneous exchange axiom for base families: for all `B1, B2` and
/// `u` in `B1 \ B2` there is `v` in `B2 \ B1` with both
/// `B1 - u + v` and `B2 + u - v` in the family.
pub fn verify_base_axiom(family: &SetFamily) -> AxiomReport {
    let mut checked = 0u64;
    for &b1 in family.sets() {
        for &b2 in family.sets() {
            for u in b1.difference(b2).iter() {
                checked += 1;
                let ok = b2.difference(b1).iter().any(|v| {
                    family.contains(b1.without(u).with(v)) && family.contains(b2.with(u).without(v))
                });
                if !ok {
                    return AxiomReport::fail(
                        AxiomKind::BaseExchange,
                        AxiomWitness::SetPair { a: b1, b: b2, elem: u },
                        checked,
                    );
                }
            }
        }
    }
    AxiomReport::pass(AxiomKind::BaseExchange, checked)
}

/// Exchange axiom for g-matroids: for all `P1, P2` and `v` in `P1 \ P2`,
/// either `P1 - v` and `P2 + v` are both members, or some `u` in `P2 \ P1`
/// makes `P1 - v + u` and `P2 + v - u` both members.
pub fn verify_gmatroid(family: &SetFamily) -> AxiomReport {
    let mut checked = 0u64;
    for &p1 in family.sets() {
        for &p2 in family.sets() {
            for v in p1.difference(p2).iter() {
                checked += 1;
                let removal = family.contains(p1.without(v)) && family.contains(p2.with(v));
                let ok = removal
                    || p2.difference(p1).iter().any(|u| {
                        family.contains(p1.without(v).with(u))
                            && family.contains(p2.with(v).without(u))
                    });
                if !ok {
                    return AxiomReport::fail(
                        AxiomKind::GMatroidExchange,
                        AxiomWitness::SetPair { a: p1, b: p2, elem: v },
                        checked,
                    );
                }
            }
        }
    }
    AxiomReport::pass(AxiomKind::GMatroidExchange, checked)
}
