//! Steepest-descent minimization over the single-exchange neighborhood,
//! and the two-stage level minimization used by the M-convex solver.
//!
//! For a certified M-natural-convex oracle a local minimum over
//! `{x - chi_u + chi_v, x - chi_u, x + chi_v}` is global, so descent with a
//! deterministic tie-break returns a global minimizer.

use thiserror::Error;

use crate::functions::{EnumError, Objective};
use crate::ground::IntPoint;
use crate::value::ExtValue;
use crate::weights::BinaryWeights;

/// Points visited by a descent, with their values; values strictly decrease.
#[derive(Clone, Debug)]
pub struct DescentTrace {
    pub visited: Vec<(IntPoint, i64)>,
    pub oracle_calls: u64,
    /// Set when no start point was available and the box was scanned for a
    /// feasible seed.
    pub used_box_scan: bool,
}

#[derive(Clone, Debug)]
pub struct MinimizeResult {
    pub point: IntPoint,
    pub value: i64,
    pub trace: DescentTrace,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimizeError {
    #[error("no start point given and the box scan is capped: {0}")]
    StartScanCapped(EnumError),
    #[error("effective domain is empty")]
    EmptyDomain,
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// Candidate moves in tie-break order: pairs `(u, v)` over elements plus the
/// dummy on either side, dummy ordered last, identity excluded.
fn descent_moves(n: usize) -> impl Iterator<Item = (Option<usize>, Option<usize>)> {
    let slots = move || (0..n).map(Some).chain(std::iter::once(None));
    slots().flat_map(move |u| slots().map(move |v| (u, v))).filter(|(u, v)| u != v)
}

fn find_seed(o: &Objective, cap: usize) -> Result<(IntPoint, i64, bool), MinimizeError> {
    if let Some(s) = o.start() {
        if let ExtValue::Finite(v) = o.eval(s) {
            return Ok((s.clone(), v, false));
        }
    }
    // No usable start: scan the box in lexicographic order.
    let points = o.bounds().point_count();
    if points > cap as u128 {
        return Err(MinimizeError::StartScanCapped(EnumError::CapExceeded {
            points,
            cap,
        }));
    }
    for x in o.bounds().points() {
        if let ExtValue::Finite(v) = o.eval(&x) {
            return Ok((x, v, true));
        }
    }
    Err(MinimizeError::EmptyDomain)
}

/// Global minimization of a certified M-natural-convex oracle by steepest
/// descent. Ties between equally good neighbors break toward the smallest
/// `(u, v)` pair with the dummy last, so results are reproducible.
pub fn minimize(o: &Objective, cap: usize) -> Result<MinimizeResult, MinimizeError> {
    let calls_before = o.calls();
    let (mut x, mut fx, used_box_scan) = find_seed(o, cap)?;
    let mut visited = vec![(x.clone(), fx)];
    loop {
        let mut best: Option<(i64, IntPoint)> = None;
        for (u, v) in descent_moves(x.len()) {
            let cand = x.adjusted(u, v);
            if let ExtValue::Finite(val) = o.eval(&cand) {
                if val < fx && best.as_ref().is_none_or(|(b, _)| val < *b) {
                    best = Some((val, cand));
                }
            }
        }
        match best {
            Some((val, cand)) => {
                x = cand;
                fx = val;
                visited.push((x.clone(), fx));
            }
            None => break,
        }
    }
    Ok(MinimizeResult {
        point: x,
        value: fx,
        trace: DescentTrace {
            visited,
            oracle_calls: o.calls() - calls_before,
            used_box_scan,
        },
    })
}

/// Backend choice for [`min_b_then_min_h`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LevelMinBackend {
    /// Enumerate when the box fits under the cap, otherwise descend.
    #[default]
    Auto,
    /// Exhaustive enumeration of the domain; the reference backend.
    Enumeration,
    /// Two descents: first `<b, .>` over the domain, then the objective
    /// inside the minimal level set via weight-preserving exchanges.
    TwoPhase,
}

/// Minimizer of the objective restricted to the minimal `<b, .>` level.
#[derive(Clone, Debug)]
pub struct LevelMin {
    pub point: IntPoint,
    pub value: i64,
    /// The minimal level `<b, point>`.
    pub level: i64,
}

/// Finds a point minimizing `h` among the minimizers of `<b, .>` over the
/// domain of `h`.
pub fn min_b_then_min_h(
    h: &Objective,
    b: &BinaryWeights,
    backend: LevelMinBackend,
    cap: usize,
) -> Result<LevelMin, MinimizeError> {
    match backend {
        LevelMinBackend::Enumeration => level_min_by_enumeration(h, b, cap),
        LevelMinBackend::TwoPhase => level_min_by_descent(h, b, cap),
        LevelMinBackend::Auto => {
            if h.bounds().point_count() <= cap as u128 {
                level_min_by_enumeration(h, b, cap)
            } else {
                level_min_by_descent(h, b, cap)
            }
        }
    }
}

fn level_min_by_enumeration(
    h: &Objective,
    b: &BinaryWeights,
    cap: usize,
) -> Result<LevelMin, MinimizeError> {
    let dom = h.enumerate_dom(cap)?;
    if dom.is_empty() {
        return Err(MinimizeError::EmptyDomain);
    }
    let level = dom.iter().map(|x| b.inner(x)).min().expect("domain is nonempty");
    let mut best: Option<(i64, IntPoint)> = None;
    for x in dom {
        if b.inner(&x) != level {
            continue;
        }
        let v = h.eval(&x).expect_finite();
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, x));
        }
    }
    let (value, point) = best.expect("minimal level is realized");
    Ok(LevelMin { point, value, level })
}

fn level_min_by_descent(
    h: &Objective,
    b: &BinaryWeights,
    cap: usize,
) -> Result<LevelMin, MinimizeError> {
    // Phase 1: minimize <b, .> plus the domain indicator, an M-convex
    // function when h is.
    let h1 = h.clone();
    let b1 = b.clone();
    let weight_obj = Objective::from_fn(
        move |x| {
            if h1.eval(x).is_finite() {
                ExtValue::Finite(b1.inner(x))
            } else {
                ExtValue::Infinite
            }
        },
        h.bounds().clone(),
        h.start().cloned(),
        h.claimed(),
    );
    let phase1 = minimize(&weight_obj, cap)?;
    let level = phase1.value;

    // Phase 2: within the minimal level set, descend on h using exchanges
    // with b(u) = b(v); these are exactly the moves that preserve <b, .>.
    let mut x = phase1.point;
    let mut fx = h.eval(&x).expect_finite();
    loop {
        let n = x.len();
        let mut best: Option<(i64, IntPoint)> = None;
        for u in 0..n {
            for v in 0..n {
                if u == v || b.is_one(u) != b.is_one(v) {
                    continue;
                }
                let cand = x.adjusted(Some(u), Some(v));
                if let ExtValue::Finite(val) = h.eval(&cand) {
                    if val < fx && best.as_ref().is_none_or(|(bv, _)| val < *bv) {
                        best = Some((val, cand));
                    }
                }
            }
        }
        match best {
            Some((val, cand)) => {
                x = cand;
                fx = val;
            }
            None => break,
        }
    }
    Ok(LevelMin { point: x, value: fx, level })
}
