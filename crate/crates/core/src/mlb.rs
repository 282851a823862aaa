//! Pareto enumeration for an M-natural-convex objective against a
//! lexicographic (per-category count) objective on an explicit g-matroid.
//!
//! Each outer step fixes the current eta vector `mu` and splits the region
//! strictly lex-below `mu` into per-index windows, each an interval family
//! `I(lambda, xi)` and itself a g-matroid. Solving every window and taking
//! the eta-lex-minimal optimum of the best one yields the next Pareto value
//! directly, with no dominance filtering afterwards.

use thiserror::Error;

use crate::functions::{verify_gmatroid, verify_mnat, AxiomReport, ConvexClass, Objective};
use crate::ground::GroundSet;
use crate::mnatbb::{SolveError, SolveOptions};
use crate::order::{lex_lt, LexValue};
use crate::subsets::{SetFamily, Subset};
use crate::value::ExtValue;

/// An ordered partition of the ground set into `m` categories `0..m`,
/// with lower category indices preferred away (eta compares
/// lexicographically from category 0 upward).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryPartition {
    m: usize,
    category_of: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("a partition needs at least one category")]
    NoCategories,
    #[error("element {e} is assigned to category {found}, but m = {m}")]
    CategoryOutOfRange { e: usize, found: usize, m: usize },
}

impl CategoryPartition {
    pub fn new(m: usize, category_of: Vec<usize>) -> Result<Self, PartitionError> {
        if m == 0 {
            return Err(PartitionError::NoCategories);
        }
        for (e, &c) in category_of.iter().enumerate() {
            if c >= m {
                return Err(PartitionError::CategoryOutOfRange { e, found: c, m });
            }
        }
        Ok(CategoryPartition { m, category_of })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.category_of.len()
    }

    pub fn category(&self, e: usize) -> usize {
        self.category_of[e]
    }

    pub fn category_of(&self) -> &[usize] {
        &self.category_of
    }

    /// `eta(X)`: per-category element counts of `X`.
    pub fn eta(&self, x: Subset) -> Vec<i64> {
        let mut counts = vec![0i64; self.m];
        for e in x.iter() {
            counts[self.category_of[e]] += 1;
        }
        counts
    }
}

/// An explicit subset family certified to satisfy the g-matroid exchange
/// axiom.
#[derive(Clone, Debug)]
pub struct GMatroidFamily {
    ground: GroundSet,
    family: SetFamily,
}

impl GMatroidFamily {
    /// Verifies the exchange axiom on construction.
    pub fn new(ground: GroundSet, family: SetFamily) -> Result<Self, Box<AxiomReport>> {
        assert!(!family.is_empty(), "g-matroid family must be nonempty");
        assert_eq!(ground.size(), family.n(), "family and ground set sizes differ");
        let report = verify_gmatroid(&family);
        if !report.passed {
            return Err(Box::new(report));
        }
        Ok(GMatroidFamily { ground, family })
    }

    /// Skips the axiom check; results on unverified families are unreliable.
    pub fn new_unchecked(ground: GroundSet, family: SetFamily) -> Self {
        assert!(!family.is_empty(), "g-matroid family must be nonempty");
        assert_eq!(ground.size(), family.n(), "family and ground set sizes differ");
        GMatroidFamily { ground, family }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    /// Largest member cardinality.
    pub fn rank(&self) -> usize {
        self.family.max_card()
    }
}

/// An eta window `I(lambda, xi)`: subsets whose eta lies componentwise
/// between `lambda` and `xi`. Windows generated by [`windows_for`] may be
/// empty (some `xi` component below `lambda`), which `is_empty` flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lambda: Vec<i64>,
    pub xi: Vec<i64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WindowError {
    #[error("window bounds must satisfy 0 <= lambda <= xi componentwise")]
    Invalid,
}

impl Window {
    /// A user-constructed window with `0 <= lambda <= xi`.
    pub fn new(lambda: Vec<i64>, xi: Vec<i64>) -> Result<Self, WindowError> {
        if lambda.len() != xi.len()
            || lambda.iter().any(|&l| l < 0)
            || lambda.iter().zip(&xi).any(|(&l, &x)| x < l)
        {
            return Err(WindowError::Invalid);
        }
        Ok(Window { lambda, xi })
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.iter().zip(&self.xi).any(|(&l, &x)| x < l)
    }

    pub fn contains_eta(&self, eta: &[i64]) -> bool {
        eta.len() == self.lambda.len()
            && eta
                .iter()
                .zip(self.lambda.iter().zip(&self.xi))
                .all(|(&c, (&l, &x))| l <= c && c <= x)
    }
}

/// The `m` windows decomposing `{X : eta(X) <_lex mu}`: window `k`
/// (0-based) pins categories below `k` to `mu`, caps category `k` at
/// `mu_k - 1`, and leaves later categories free up to `n`. Together with
/// `I(mu, mu)` these partition `{X : eta(X) <=_lex mu}`.
pub fn windows_for(mu: &[i64], n: i64) -> Vec<Window> {
    let m = mu.len();
    (0..m)
        .map(|k| {
            let mut lambda = vec![0i64; m];
            let mut xi = vec![n; m];
            lambda[..k].copy_from_slice(&mu[..k]);
            xi[..k].copy_from_slice(&mu[..k]);
            xi[k] = mu[k] - 1;
            Window { lambda, xi }
        })
        .collect()
}

/// Minimum of the objective over the family members whose eta falls in the
/// window, together with all minimizers in canonical order. `None` when the
/// window is empty or no member qualifies.
pub fn solve_window(
    g: &Objective,
    fam: &SetFamily,
    w: &Window,
    part: &CategoryPartition,
) -> Option<(i64, Vec<Subset>)> {
    if w.is_empty() {
        return None;
    }
    let n = fam.n();
    let mut best: Option<(i64, Vec<Subset>)> = None;
    for &s in fam.sets() {
        if !w.contains_eta(&part.eta(s)) {
            continue;
        }
        let val = match g.eval(&s.char_point(n)) {
            ExtValue::Finite(v) => v,
            ExtValue::Infinite => continue,
        };
        match &mut best {
            None => best = Some((val, vec![s])),
            Some((b, argmins)) => {
                if val < *b {
                    *b = val;
                    argmins.clear();
                    argmins.push(s);
                } else if val == *b {
                    argmins.push(s);
                }
            }
        }
    }
    best
}

/// The member with lexicographically minimal eta; ties break toward the
/// canonically smallest subset. `None` on an empty slice.
pub fn lexmin_eta(sets: &[Subset], part: &CategoryPartition) -> Option<Subset> {
    let mut best: Option<(Vec<i64>, Subset)> = None;
    for &s in sets {
        let eta = part.eta(s);
        let better = match &best {
            None => true,
            Some((be, bs)) => lex_lt(&eta, be) || (eta == *be && s < *bs),
        };
        if better {
            best = Some((eta, s));
        }
    }
    best.map(|(_, s)| s)
}

/// Per-outer-iteration record: the window optima and the index taken.
#[derive(Clone, Debug)]
pub struct OuterStep {
    pub zetas: Vec<Option<i64>>,
    pub chosen: Option<usize>,
}

/// Result of the mixed-order enumeration. `values` are in discovery order:
/// eta strictly lex-decreasing, objective non-decreasing.
#[derive(Clone, Debug)]
pub struct MlbRun {
    pub values: Vec<LexValue>,
    /// One witness subset per recorded value.
    pub witnesses: Vec<Subset>,
    /// The mu vector after each recording.
    pub mus: Vec<Vec<i64>>,
    pub subproblem_log: Vec<OuterStep>,
    pub outer_iterations: u64,
    pub oracle_calls: u64,
    pub warned_unchecked: bool,
}

/// Backend for the per-window subproblems. The default enumerates the
/// explicit family; a faster valuated-intersection backend can implement
/// this trait without touching the outer loop.
pub trait WindowBackend {
    fn solve(
        &self,
        g: &Objective,
        fam: &SetFamily,
        w: &Window,
        part: &CategoryPartition,
    ) -> Option<(i64, Vec<Subset>)>;
}

/// Exhaustive scan of the explicit family.
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerationBackend;

impl WindowBackend for EnumerationBackend {
    fn solve(
        &self,
        g: &Objective,
        fam: &SetFamily,
        w: &Window,
        part: &CategoryPartition,
    ) -> Option<(i64, Vec<Subset>)> {
        solve_window(g, fam, w, part)
    }
}

/// Complete Pareto optimal value set of `min (g(X), eta(X))` over a
/// certified g-matroid family, eta ordered lexicographically.
pub fn solve_mlb(
    g: &Objective,
    fam: &GMatroidFamily,
    part: &CategoryPartition,
    opts: &SolveOptions,
) -> Result<MlbRun, SolveError> {
    solve_mlb_with(&EnumerationBackend, g, fam, part, opts)
}

/// [`solve_mlb`] with an explicit window backend.
pub fn solve_mlb_with(
    backend: &dyn WindowBackend,
    g: &Objective,
    fam: &GMatroidFamily,
    part: &CategoryPartition,
    opts: &SolveOptions,
) -> Result<MlbRun, SolveError> {
    assert_eq!(part.n(), fam.family().n(), "partition and family sizes differ");
    let warned_unchecked = gate(g, opts)?;
    let calls_before = g.calls();
    let sets = fam.family();
    let n = sets.n();

    // Seed: the eta-lex-minimal global minimizer.
    let mut global_best: Option<(i64, Vec<Subset>)> = None;
    for &s in sets.sets() {
        let val = match g.eval(&s.char_point(n)) {
            ExtValue::Finite(v) => v,
            ExtValue::Infinite => {
                return Err(SolveError::InvariantViolation(format!(
                    "family member {s} lies outside the objective domain"
                )))
            }
        };
        match &mut global_best {
            None => global_best = Some((val, vec![s])),
            Some((b, argmins)) => {
                if val < *b {
                    *b = val;
                    argmins.clear();
                    argmins.push(s);
                } else if val == *b {
                    argmins.push(s);
                }
            }
        }
    }
    let (seed_value, seed_argmins) = global_best.expect("family is nonempty");
    let seed = lexmin_eta(&seed_argmins, part).expect("argmin set is nonempty");
    let mut mu = part.eta(seed);

    let mut run = MlbRun {
        values: vec![LexValue::new(seed_value, mu.clone())],
        witnesses: vec![seed],
        mus: vec![mu.clone()],
        subproblem_log: Vec::new(),
        outer_iterations: 0,
        oracle_calls: 0,
        warned_unchecked,
    };

    loop {
        let windows = windows_for(&mu, n as i64);
        let solutions: Vec<Option<(i64, Vec<Subset>)>> =
            windows.iter().map(|w| backend.solve(g, sets, w, part)).collect();
        let zetas: Vec<Option<i64>> = solutions.iter().map(|s| s.as_ref().map(|(z, _)| *z)).collect();

        let chosen = zetas
            .iter()
            .enumerate()
            .filter_map(|(k, z)| z.map(|v| (k, v)))
            .min_by_key(|&(k, v)| (v, k))
            .map(|(k, _)| k);
        run.subproblem_log.push(OuterStep { zetas, chosen });

        let Some(ell) = chosen else { break };
        let (zeta, argmins) = solutions[ell].as_ref().expect("chosen window is feasible");
        let x = lexmin_eta(argmins, part).expect("argmin set is nonempty");
        mu = part.eta(x);
        run.values.push(LexValue::new(*zeta, mu.clone()));
        run.witnesses.push(x);
        run.mus.push(mu.clone());
        run.outer_iterations += 1;
    }

    run.oracle_calls = g.calls() - calls_before;
    Ok(run)
}

fn gate(g: &Objective, opts: &SolveOptions) -> Result<bool, SolveError> {
    if opts.unchecked {
        return Ok(true);
    }
    if g.claimed() == ConvexClass::Unclaimed {
        return Err(SolveError::UnusableClaim(g.claimed()));
    }
    let report = verify_mnat(g, opts.enum_cap)?;
    if report.passed {
        Ok(false)
    } else {
        Err(SolveError::CertificationFailed(Box::new(report)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::subset_linear_oracle;
    use crate::order::lex_leq;

    /// All 2-subsets of a 4-set, costs (0, 0, 1, 2), two categories
    /// {0, 1} before {2, 3}.
    fn inst_c() -> (Objective, GMatroidFamily, CategoryPartition) {
        let sets: Vec<Subset> = (0..4)
            .flat_map(|i| ((i + 1)..4).map(move |j| Subset::from_indices([i, j])))
            .collect();
        let fam = SetFamily::new(4, sets);
        let oracle = subset_linear_oracle(&fam, &[0, 0, 1, 2], ConvexClass::MNat);
        let gm = GMatroidFamily::new(GroundSet::new(4), fam).unwrap();
        let part = CategoryPartition::new(2, vec![0, 0, 1, 1]).unwrap();
        (oracle, gm, part)
    }

    #[test]
    fn eta_examples() {
        let (_, _, part) = inst_c();
        assert_eq!(part.eta(Subset::from_indices([0, 2])), vec![1, 1]);
        assert_eq!(part.eta(Subset::EMPTY), vec![0, 0]);
        assert_eq!(part.eta(Subset::from_indices([0, 1, 2, 3])), vec![2, 2]);
    }

    #[test]
    fn windows_for_examples() {
        let ws = windows_for(&[2, 0], 4);
        assert_eq!(ws[0], Window { lambda: vec![0, 0], xi: vec![1, 4] });
        assert_eq!(ws[1], Window { lambda: vec![2, 0], xi: vec![2, -1] });
        assert!(!ws[0].is_empty());
        assert!(ws[1].is_empty());

        let ws = windows_for(&[1, 1], 4);
        assert_eq!(ws[0], Window { lambda: vec![0, 0], xi: vec![0, 4] });
        assert_eq!(ws[1], Window { lambda: vec![1, 0], xi: vec![1, 0] });

        // nothing lies lexicographically below zero
        assert!(windows_for(&[0, 0], 4).iter().all(|w| w.is_empty()));
    }

    #[test]
    fn solve_window_examples() {
        let (g, gm, part) = inst_c();
        let ws = windows_for(&[2, 0], 4);
        let (zeta, argmins) = solve_window(&g, gm.family(), &ws[0], &part).unwrap();
        assert_eq!(zeta, 1);
        assert_eq!(argmins, vec![Subset::from_indices([0, 2]), Subset::from_indices([1, 2])]);

        // eta = (1, 0) is impossible for 2-subsets
        let ws = windows_for(&[1, 1], 4);
        assert!(solve_window(&g, gm.family(), &ws[1], &part).is_none());

        // empty-flagged windows yield nothing
        let empty = Window { lambda: vec![2, 0], xi: vec![2, -1] };
        assert!(solve_window(&g, gm.family(), &empty, &part).is_none());
    }

    #[test]
    fn lexmin_eta_examples() {
        let (_, _, part) = inst_c();
        let tied = [Subset::from_indices([0, 2]), Subset::from_indices([1, 2])];
        assert_eq!(lexmin_eta(&tied, &part), Some(Subset::from_indices([0, 2])));

        let single = [Subset::from_indices([1, 3])];
        assert_eq!(lexmin_eta(&single, &part), Some(single[0]));

        let mixed = [Subset::from_indices([0, 1]), Subset::from_indices([2, 3])];
        assert_eq!(lexmin_eta(&mixed, &part), Some(Subset::from_indices([2, 3])));

        assert_eq!(lexmin_eta(&[], &part), None);
    }

    #[test]
    fn solve_micro_instance() {
        let (g, gm, part) = inst_c();
        let run = solve_mlb(&g, &gm, &part, &SolveOptions::default()).unwrap();
        assert_eq!(
            run.values,
            vec![
                LexValue::new(0, vec![2, 0]),
                LexValue::new(1, vec![1, 1]),
                LexValue::new(3, vec![0, 2]),
            ]
        );
        assert_eq!(run.witnesses[1], Subset::from_indices([0, 2]));
        // mu strictly lex-decreases and the outer loop is family-bounded
        for w in run.mus.windows(2) {
            assert!(lex_lt(&w[1], &w[0]));
        }
        assert!(run.outer_iterations <= gm.len() as u64);
    }

    #[test]
    fn singleton_family_records_one_value() {
        let fam = SetFamily::new(3, vec![Subset::from_indices([0, 2])]);
        let oracle = subset_linear_oracle(&fam, &[1, 1, 1], ConvexClass::MNat);
        let gm = GMatroidFamily::new(GroundSet::new(3), fam).unwrap();
        let part = CategoryPartition::new(2, vec![0, 1, 1]).unwrap();
        let run = solve_mlb(&oracle, &gm, &part, &SolveOptions::default()).unwrap();
        assert_eq!(run.values, vec![LexValue::new(2, vec![1, 1])]);
    }

    #[test]
    fn single_category_matches_the_binary_solver() {
        use crate::mnatbb::solve_mnatbb;
        use crate::weights::BinaryWeights;

        let (g, gm, _) = inst_c();
        let part = CategoryPartition::new(1, vec![0; 4]).unwrap();
        let run = solve_mlb(&g, &gm, &part, &SolveOptions::default()).unwrap();

        // with one category eta is the cardinality, i.e. b = all-ones
        let b = BinaryWeights::from_bits(&[1, 1, 1, 1]);
        let lattice = solve_mnatbb(&g, &b, &SolveOptions::default()).unwrap();

        let from_mlb: Vec<(i64, i64)> = run.values.iter().map(|v| (v.g, v.eta[0])).collect();
        let from_lattice: Vec<(i64, i64)> = lattice.values.iter().map(|v| (v.g, v.k)).collect();
        assert_eq!(from_mlb, from_lattice);
    }

    #[test]
    fn generated_windows_are_g_matroids() {
        // interval families over the full power set satisfy the exchange axiom
        let part = CategoryPartition::new(2, vec![0, 1, 0, 1]).unwrap();
        for (lambda, xi) in [
            (vec![0, 0], vec![1, 2]),
            (vec![1, 0], vec![2, 1]),
            (vec![0, 1], vec![0, 2]),
            (vec![2, 2], vec![2, 2]),
        ] {
            let w = Window::new(lambda, xi).unwrap();
            let members: Vec<Subset> = (0u32..16)
                .map(Subset::from_mask)
                .filter(|&s| w.contains_eta(&part.eta(s)))
                .collect();
            if members.is_empty() {
                continue;
            }
            let fam = SetFamily::new(4, members);
            assert!(verify_gmatroid(&fam).passed, "window {w:?} failed the axiom");
        }
    }

    #[test]
    fn window_partition_law_small() {
        // the m windows plus I(mu, mu) split {X : eta(X) <=_lex mu}
        let part = CategoryPartition::new(2, vec![0, 1, 0, 1]).unwrap();
        for mu in [vec![1, 1], vec![2, 0], vec![0, 2], vec![2, 2]] {
            let windows = windows_for(&mu, 4);
            for mask in 0u32..16 {
                let s = Subset::from_mask(mask);
                let eta = part.eta(s);
                let mut hits =
                    windows.iter().filter(|w| w.contains_eta(&eta)).count();
                if eta == mu {
                    hits += 1;
                }
                let expected = usize::from(lex_leq(&eta, &mu));
                assert_eq!(hits, expected, "mu={mu:?} X={s}");
            }
        }
    }
}
