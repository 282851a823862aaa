//! The M-convex specialization of the transition walk: candidate
//! transitions are restricted to the support difference against a fixed
//! anchor point taken from the minimal weight level, which shrinks the
//! search without changing the minimum transition cost.

use crate::functions::Objective;
use crate::ground::{supp_diff, IntPoint};
use crate::minimize::{min_b_then_min_h, minimize};
use crate::mnatbb::{certification_gate, MnatbbRun, PathStep, SolveError, SolveOptions};
use crate::mnatbb::min_transition;
use crate::order::ParetoValue2;
use crate::value::ExtValue;
use crate::weights::{BinaryWeights, Dest, Transition};

/// Result of the restricted walk: the shared run shape plus the anchor and
/// the per-step candidate-set sizes `(|Delta1|, |Delta0|)`.
#[derive(Clone, Debug)]
pub struct MbbRun {
    pub base: MnatbbRun,
    /// The anchor `x'` minimizing the objective on the minimal weight level.
    pub target: IntPoint,
    pub candidate_sizes: Vec<(usize, usize)>,
}

fn deltas(b: &BinaryWeights, x: &IntPoint, target: &IntPoint) -> (Vec<usize>, Vec<usize>) {
    let (fwd, bwd) = supp_diff(x, target);
    let delta1: Vec<usize> = fwd.into_iter().filter(|&e| b.is_one(e)).collect();
    let delta0: Vec<usize> = bwd.into_iter().filter(|&e| !b.is_one(e)).collect();
    (delta1, delta0)
}

fn min_transition_over(
    h: &Objective,
    x: &IntPoint,
    fx: i64,
    delta1: &[usize],
    delta0: &[usize],
) -> Option<(Transition, i64)> {
    let mut best: Option<(Transition, i64)> = None;
    for &u in delta1 {
        for &v in delta0 {
            let t = Transition::new(u, Dest::Elem(v));
            if let ExtValue::Finite(val) = h.eval(&x.shift(t)) {
                let cost = val - fx;
                if best.as_ref().is_none_or(|&(_, c)| cost < c) {
                    best = Some((t, cost));
                }
            }
        }
    }
    best
}

/// Minimum transition from `x` searched only over
/// `Delta1 x Delta0 = (E1 ∩ supp(x - x')) x (E0 ∩ supp(x' - x))`.
/// For a certified M-convex objective this cost equals the unrestricted
/// minimum transition cost; an empty candidate set above the minimal level
/// signals a class violation.
pub fn restricted_min_transition(
    h: &Objective,
    b: &BinaryWeights,
    x: &IntPoint,
    target: &IntPoint,
) -> Result<(Transition, i64), SolveError> {
    let fx = match h.eval(x) {
        ExtValue::Finite(v) => v,
        ExtValue::Infinite => return Err(SolveError::OutsideDomain(x.clone())),
    };
    let (delta1, delta0) = deltas(b, x, target);
    min_transition_over(h, x, fx, &delta1, &delta0).ok_or_else(|| {
        SolveError::InvariantViolation(format!(
            "restricted transition set is empty at {x} (anchor {target}); \
             the objective is not M-convex"
        ))
    })
}

/// Complete Pareto optimal value set of `min (h(x), <b, x>)` for a
/// certified M-convex `h`, via the anchor-restricted transition walk.
pub fn solve_mbb(
    h: &Objective,
    b: &BinaryWeights,
    opts: &SolveOptions,
) -> Result<MbbRun, SolveError> {
    let warned_unchecked = certification_gate(h, true, opts)?;

    let calls_before = h.calls();
    let seed = minimize(h, opts.enum_cap)?;
    let anchor = min_b_then_min_h(h, b, opts.level_min_backend, opts.enum_cap)?;
    let seed_oracle_calls = h.calls() - calls_before;

    let mut x = seed.point;
    let mut g = seed.value;
    let mut k = b.inner(&x);
    let k_low = anchor.level;

    let mut run = MbbRun {
        base: MnatbbRun {
            values: Vec::new(),
            transitions_taken: Vec::new(),
            iterations: 0,
            path: vec![PathStep { point: x.clone(), k, g }],
            seed_oracle_calls,
            loop_oracle_calls: 0,
            warned_unchecked,
        },
        target: anchor.point.clone(),
        candidate_sizes: Vec::new(),
    };

    let loop_before = h.calls();
    while k > k_low {
        let (delta1, delta0) = deltas(b, &x, &anchor.point);
        run.candidate_sizes.push((delta1.len(), delta0.len()));
        let restricted = min_transition_over(h, &x, g, &delta1, &delta0);
        let (t, cost) = match restricted {
            Some(tc) => tc,
            None if opts.fallback_unrestricted => min_transition(h, b, &x)?.ok_or_else(|| {
                SolveError::InvariantViolation(format!("no transition at all from {x}"))
            })?,
            None => {
                return Err(SolveError::InvariantViolation(format!(
                    "restricted transition set is empty at {x} (anchor {}); \
                     the objective is not M-convex",
                    anchor.point
                )))
            }
        };
        if cost > 0 {
            run.base.values.push(ParetoValue2::new(g, k));
        }
        run.base.transitions_taken.push((t, cost));
        x = x.shift(t);
        g += cost;
        k -= 1;
        run.base.iterations += 1;
        run.base.path.push(PathStep { point: x.clone(), k, g });
    }
    run.base.values.push(ParetoValue2::new(g, k));
    run.base.loop_oracle_calls = h.calls() - loop_before;
    Ok(run)
}
