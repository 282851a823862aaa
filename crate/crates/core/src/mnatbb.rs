//! Pareto value set enumeration for an M-natural-convex objective against a
//! binary linear objective, by walking minimum transitions.
//!
//! The solver seeds at a global minimizer of the objective and repeatedly
//! applies a minimum-cost transition, which moves to an optimal point of the
//! next lower `<b, .>` level. A value is recorded whenever the next
//! transition strictly increases the objective (a zero-cost transition means
//! the current point is dominated), plus the final point once no transition
//! remains. The recorded values are exactly the Pareto optimal values.

use thiserror::Error;

use crate::functions::{verify_m, verify_mnat, AxiomReport, ConvexClass, EnumError, Objective};
use crate::ground::IntPoint;
use crate::minimize::{minimize, LevelMinBackend, MinimizeError};
use crate::order::ParetoValue2;
use crate::value::ExtValue;
use crate::weights::{BinaryWeights, Dest, Transition};

/// Options shared by the transition-walk solvers.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Skip certification; results then carry a warning marker.
    pub unchecked: bool,
    /// In the M-convex solver, fall back to the unrestricted transition
    /// search instead of erroring when the restricted candidate set is
    /// unexpectedly empty.
    pub fallback_unrestricted: bool,
    /// Ceiling for domain enumeration (certification, level minimization).
    pub enum_cap: usize,
    /// Backend for the anchor computation of the M-convex solver.
    pub level_min_backend: LevelMinBackend,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            unchecked: false,
            fallback_unrestricted: false,
            enum_cap: crate::functions::DEFAULT_ENUM_CAP,
            level_min_backend: LevelMinBackend::Auto,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("objective carries no usable convexity claim ({0}); pass unchecked to override")]
    UnusableClaim(ConvexClass),
    #[error("certification failed: {0}")]
    CertificationFailed(Box<AxiomReport>),
    #[error(transparent)]
    Minimize(#[from] MinimizeError),
    #[error("point lies outside the effective domain: {0}")]
    OutsideDomain(IntPoint),
    #[error("solver invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// Gate shared by the solvers: verify the axiom the algorithm relies on,
/// unless the caller explicitly opted out. Returns the warning marker.
pub(crate) fn certification_gate(
    o: &Objective,
    needs_m: bool,
    opts: &SolveOptions,
) -> Result<bool, SolveError> {
    if opts.unchecked {
        return Ok(true);
    }
    if o.claimed() == ConvexClass::Unclaimed {
        return Err(SolveError::UnusableClaim(o.claimed()));
    }
    let report = if needs_m {
        verify_m(o, opts.enum_cap)?
    } else {
        verify_mnat(o, opts.enum_cap)?
    };
    if report.passed {
        Ok(false)
    } else {
        Err(SolveError::CertificationFailed(Box::new(report)))
    }
}

/// One visited point of a transition walk.
#[derive(Clone, Debug)]
pub struct PathStep {
    pub point: IntPoint,
    pub k: i64,
    pub g: i64,
}

/// Result of a transition walk. `values` are in walk order: `k` strictly
/// decreasing, objective strictly increasing.
#[derive(Clone, Debug)]
pub struct MnatbbRun {
    pub values: Vec<ParetoValue2>,
    pub transitions_taken: Vec<(Transition, i64)>,
    pub iterations: u64,
    /// Every point visited, starting at the seed minimizer.
    pub path: Vec<PathStep>,
    pub seed_oracle_calls: u64,
    pub loop_oracle_calls: u64,
    /// Set when the certification gate was skipped.
    pub warned_unchecked: bool,
}

impl MnatbbRun {
    pub fn oracle_calls(&self) -> u64 {
        self.seed_oracle_calls + self.loop_oracle_calls
    }

    pub fn initial_k(&self) -> i64 {
        self.path.first().expect("walk visits at least the seed").k
    }

    pub fn final_k(&self) -> i64 {
        self.path.last().expect("walk visits at least the seed").k
    }
}

/// All transitions available from `x`: pairs `(u, v)` with `u` in `E1`,
/// `v` in `E0` or the dummy, whose shifted point stays in the domain.
/// Returned in ascending `(u, v)` order with the dummy last per `u`.
pub fn transitions(
    o: &Objective,
    b: &BinaryWeights,
    x: &IntPoint,
) -> Result<Vec<Transition>, SolveError> {
    if !o.eval(x).is_finite() {
        return Err(SolveError::OutsideDomain(x.clone()));
    }
    let e0 = b.e0();
    let mut out = Vec::new();
    for u in b.e1() {
        for &v in &e0 {
            let t = Transition::new(u, Dest::Elem(v));
            if o.eval(&x.shift(t)).is_finite() {
                out.push(t);
            }
        }
        let t = Transition::new(u, Dest::Dummy);
        if o.eval(&x.shift(t)).is_finite() {
            out.push(t);
        }
    }
    Ok(out)
}

/// A transition from `x` of minimum cost `g(x; u, v)`, ties broken toward
/// the smallest `(u, v)` with the dummy last; `None` when no transition
/// exists.
pub fn min_transition(
    o: &Objective,
    b: &BinaryWeights,
    x: &IntPoint,
) -> Result<Option<(Transition, i64)>, SolveError> {
    let fx = match o.eval(x) {
        ExtValue::Finite(v) => v,
        ExtValue::Infinite => return Err(SolveError::OutsideDomain(x.clone())),
    };
    let mut best: Option<(Transition, i64)> = None;
    for t in transitions(o, b, x)? {
        let cost = o.eval(&x.shift(t)).expect_finite() - fx;
        if best.as_ref().is_none_or(|&(_, c)| cost < c) {
            best = Some((t, cost));
        }
    }
    Ok(best)
}

/// Complete Pareto optimal value set of the problem
/// `min (g(x), <b, x>)` over the domain of a certified
/// M-natural-convex `g`.
pub fn solve_mnatbb(
    o: &Objective,
    b: &BinaryWeights,
    opts: &SolveOptions,
) -> Result<MnatbbRun, SolveError> {
    let warned_unchecked = certification_gate(o, false, opts)?;

    let calls_before = o.calls();
    let seed = minimize(o, opts.enum_cap)?;
    let seed_oracle_calls = o.calls() - calls_before;

    let mut x = seed.point;
    let mut g = seed.value;
    let mut k = b.inner(&x);

    let mut run = MnatbbRun {
        values: Vec::new(),
        transitions_taken: Vec::new(),
        iterations: 0,
        path: vec![PathStep { point: x.clone(), k, g }],
        seed_oracle_calls,
        loop_oracle_calls: 0,
        warned_unchecked,
    };

    let loop_before = o.calls();
    while let Some((t, cost)) = min_transition(o, b, &x)? {
        if cost > 0 {
            run.values.push(ParetoValue2::new(g, k));
        }
        run.transitions_taken.push((t, cost));
        x = x.shift(t);
        g += cost;
        k -= 1;
        run.iterations += 1;
        run.path.push(PathStep { point: x.clone(), k, g });
    }
    run.values.push(ParetoValue2::new(g, k));
    run.loop_oracle_calls = o.calls() - loop_before;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{make_base_linear, SeparableSpec, SumConstraint};
    use crate::ground::IntBox;
    use crate::subsets::{SetFamily, Subset};

    fn inst_a() -> (Objective, BinaryWeights) {
        let fam = SetFamily::new(
            3,
            vec![
                Subset::from_indices([0, 1]),
                Subset::from_indices([0, 2]),
                Subset::from_indices([1, 2]),
            ],
        );
        let o = make_base_linear(fam, vec![0, 1, 2]).unwrap();
        (o, BinaryWeights::from_bits(&[1, 0, 0]))
    }

    fn inst_b() -> (Objective, BinaryWeights) {
        let o = SeparableSpec::new(
            vec![1, 1],
            vec![0, 0],
            IntBox::new(IntPoint::zeros(2), IntPoint::new(vec![2, 2])),
            SumConstraint::Equal(2),
        )
        .unwrap()
        .oracle();
        (o, BinaryWeights::from_bits(&[1, 0]))
    }

    #[test]
    fn transitions_examples() {
        let (o, b) = inst_a();
        let x = IntPoint::new(vec![1, 1, 0]);
        assert_eq!(transitions(&o, &b, &x).unwrap(), vec![Transition::new(0, Dest::Elem(2))]);

        let (o, b) = inst_b();
        let x = IntPoint::new(vec![1, 1]);
        assert_eq!(transitions(&o, &b, &x).unwrap(), vec![Transition::new(0, Dest::Elem(1))]);

        // nothing to remove when x vanishes on E1
        let x = IntPoint::new(vec![0, 2]);
        assert_eq!(transitions(&o, &b, &x).unwrap(), vec![]);
    }

    #[test]
    fn transitions_reject_points_outside_the_domain() {
        let (o, b) = inst_a();
        let err = transitions(&o, &b, &IntPoint::new(vec![1, 0, 0])).unwrap_err();
        assert!(matches!(err, SolveError::OutsideDomain(_)));
    }

    #[test]
    fn min_transition_examples() {
        let (o, b) = inst_a();
        let x = IntPoint::new(vec![1, 1, 0]);
        let (t, cost) = min_transition(&o, &b, &x).unwrap().unwrap();
        assert_eq!((t, cost), (Transition::new(0, Dest::Elem(2)), 2));

        let (o, b) = inst_b();
        let x = IntPoint::new(vec![1, 1]);
        let (t, cost) = min_transition(&o, &b, &x).unwrap().unwrap();
        assert_eq!((t, cost), (Transition::new(0, Dest::Elem(1)), 2));

        let x = IntPoint::new(vec![0, 2]);
        assert!(min_transition(&o, &b, &x).unwrap().is_none());
    }

    #[test]
    fn solve_micro_instances() {
        let (o, b) = inst_a();
        let run = solve_mnatbb(&o, &b, &SolveOptions::default()).unwrap();
        assert_eq!(run.values, vec![ParetoValue2::new(1, 1), ParetoValue2::new(3, 0)]);
        assert_eq!(run.iterations, 1);

        let (o, b) = inst_b();
        let run = solve_mnatbb(&o, &b, &SolveOptions::default()).unwrap();
        assert_eq!(run.values, vec![ParetoValue2::new(2, 1), ParetoValue2::new(4, 0)]);
    }

    #[test]
    fn zero_weights_collapse_to_plain_minimization() {
        let (o, _) = inst_a();
        let b = BinaryWeights::zeros(3);
        let run = solve_mnatbb(&o, &b, &SolveOptions::default()).unwrap();
        assert_eq!(run.values, vec![ParetoValue2::new(1, 0)]);
        assert_eq!(run.iterations, 0);
    }

    #[test]
    fn run_shape_invariants() {
        let (o, b) = inst_b();
        let run = solve_mnatbb(&o, &b, &SolveOptions::default()).unwrap();
        for w in run.values.windows(2) {
            assert!(w[1].k < w[0].k);
            assert!(w[1].g > w[0].g);
        }
        for w in run.transitions_taken.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
        assert_eq!(run.iterations as i64, run.initial_k() - run.final_k());
    }

    #[test]
    fn gate_refuses_unclaimed_oracles() {
        let o = Objective::from_fn(
            |_| ExtValue::Finite(0),
            IntBox::unit_cube(2),
            Some(IntPoint::zeros(2)),
            ConvexClass::Unclaimed,
        );
        let b = BinaryWeights::from_bits(&[1, 0]);
        assert!(matches!(
            solve_mnatbb(&o, &b, &SolveOptions::default()),
            Err(SolveError::UnusableClaim(_))
        ));
        let run = solve_mnatbb(&o, &b, &SolveOptions { unchecked: true, ..Default::default() })
            .unwrap();
        assert!(run.warned_unchecked);
    }

    #[test]
    fn gate_refuses_false_claims() {
        // two diagonal points violate the exchange axiom
        let o = Objective::from_fn(
            |x| {
                if x.coords() == [0, 0] || x.coords() == [1, 1] {
                    ExtValue::Finite(0)
                } else {
                    ExtValue::Infinite
                }
            },
            IntBox::unit_cube(2),
            Some(IntPoint::zeros(2)),
            ConvexClass::MNat,
        );
        let b = BinaryWeights::from_bits(&[1, 0]);
        match solve_mnatbb(&o, &b, &SolveOptions::default()) {
            Err(SolveError::CertificationFailed(report)) => assert!(!report.passed),
            other => panic!("expected certification failure, got {other:?}"),
        }
    }

    #[test]
    fn dummy_transitions_are_taken_when_cheapest() {
        // free total: dropping a unit is cheaper than moving it
        let o = SeparableSpec::new(
            vec![1, 1],
            vec![-4, 0],
            IntBox::new(IntPoint::zeros(2), IntPoint::new(vec![2, 2])),
            SumConstraint::Range(0, 4),
        )
        .unwrap()
        .oracle();
        let b = BinaryWeights::from_bits(&[1, 0]);
        let run = solve_mnatbb(&o, &b, &SolveOptions::default()).unwrap();
        assert!(run
            .transitions_taken
            .iter()
            .any(|(t, _)| matches!(t.v, Dest::Dummy)));
        // k walks all the way down to zero
        assert_eq!(run.final_k(), 0);
    }
}
