//! Exhaustive ground truth: brute-force Pareto sets, level tables, hull
//! checks, and run audits.
//!
//! Everything here is quadratic pairwise work over explicit enumerations
//! with its own box scan; it shares no code path with the solvers it
//! checks.

use std::collections::BTreeSet;

use crate::functions::{EnumError, Objective};
use crate::ground::IntPoint;
use crate::mnatbb::MnatbbRun;
use crate::mlb::CategoryPartition;
use crate::order::{dominates2, dominates_mixed, LexValue, ParetoValue2};
use crate::subsets::SetFamily;
use crate::value::ExtValue;
use crate::weights::BinaryWeights;

/// Scans the oracle box directly (nested odometer, last coordinate fastest)
/// and returns every finite point with its value.
fn scan_domain(o: &Objective, cap: usize) -> Result<Vec<(IntPoint, i64)>, EnumError> {
    let bounds = o.bounds();
    let points = bounds.point_count();
    if points > cap as u128 {
        return Err(EnumError::CapExceeded { points, cap });
    }
    let n = bounds.dim();
    let mut coords: Vec<i64> = bounds.lower().coords().to_vec();
    let mut out = Vec::new();
    loop {
        let x = IntPoint::new(coords.clone());
        if let ExtValue::Finite(v) = o.eval(&x) {
            out.push((x, v));
        }
        let mut e = n;
        loop {
            if e == 0 {
                return Ok(out);
            }
            e -= 1;
            if coords[e] < bounds.upper().coord(e) {
                coords[e] += 1;
                for (c, l) in coords.iter_mut().zip(bounds.lower().coords()).skip(e + 1) {
                    *c = *l;
                }
                break;
            }
        }
    }
}

/// All value pairs `(g(x), <b, x>)` over the domain with dominated pairs
/// removed; duplicates collapse.
pub fn brute_pareto_2d(
    o: &Objective,
    b: &BinaryWeights,
    cap: usize,
) -> Result<BTreeSet<ParetoValue2>, EnumError> {
    let all = full_value_set(o, b, cap)?;
    Ok(all
        .iter()
        .filter(|&&v| !all.iter().any(|&w| dominates2(w, v)))
        .copied()
        .collect())
}

/// Every distinct value pair over the domain, dominated or not.
pub fn full_value_set(
    o: &Objective,
    b: &BinaryWeights,
    cap: usize,
) -> Result<BTreeSet<ParetoValue2>, EnumError> {
    let dom = scan_domain(o, cap)?;
    Ok(dom.into_iter().map(|(x, g)| ParetoValue2::new(g, b.inner(&x))).collect())
}

/// All mixed-order value pairs `(g(X), eta(X))` over the family with
/// dominated pairs removed.
pub fn brute_pareto_lex(
    g: &Objective,
    fam: &SetFamily,
    part: &CategoryPartition,
) -> BTreeSet<LexValue> {
    let all = full_lex_value_set(g, fam, part);
    all.iter()
        .filter(|v| !all.iter().any(|w| dominates_mixed(w, v)))
        .cloned()
        .collect()
}

/// Every distinct mixed-order value pair over the family.
pub fn full_lex_value_set(
    g: &Objective,
    fam: &SetFamily,
    part: &CategoryPartition,
) -> BTreeSet<LexValue> {
    let n = fam.n();
    fam.sets()
        .iter()
        .filter_map(|&s| {
            g.eval(&s.char_point(n)).finite().map(|v| LexValue::new(v, part.eta(s)))
        })
        .collect()
}

/// Exact optimum of the objective on one weight level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelEntry {
    pub min_g: i64,
    pub witness: IntPoint,
}

/// Per-level optima `k -> min {g(x) : <b, x> = k}` over the realized levels.
#[derive(Clone, Debug, Default)]
pub struct LevelTable {
    levels: std::collections::BTreeMap<i64, LevelEntry>,
}

impl LevelTable {
    pub fn get(&self, k: i64) -> Option<&LevelEntry> {
        self.levels.get(&k)
    }

    pub fn k_min(&self) -> Option<i64> {
        self.levels.keys().next().copied()
    }

    pub fn k_max(&self) -> Option<i64> {
        self.levels.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &LevelEntry)> {
        self.levels.iter()
    }

    /// Whether the realized levels form one contiguous integer interval.
    pub fn is_contiguous(&self) -> bool {
        match (self.k_min(), self.k_max()) {
            (Some(lo), Some(hi)) => self.levels.len() as i64 == hi - lo + 1,
            _ => true,
        }
    }
}

/// Builds the level table by direct enumeration. The witness per level is
/// the lexicographically first point attaining the optimum.
pub fn level_table(o: &Objective, b: &BinaryWeights, cap: usize) -> Result<LevelTable, EnumError> {
    let mut table = LevelTable::default();
    for (x, g) in scan_domain(o, cap)? {
        let k = b.inner(&x);
        match table.levels.get_mut(&k) {
            None => {
                table.levels.insert(k, LevelEntry { min_g: g, witness: x });
            }
            Some(entry) if g < entry.min_g => *entry = LevelEntry { min_g: g, witness: x },
            _ => {}
        }
    }
    Ok(table)
}

/// Outcome of a single yes/no audit with an optional counterexample note.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clause {
    Pass,
    Fail(String),
}

impl Clause {
    pub fn passed(&self) -> bool {
        matches!(self, Clause::Pass)
    }

    fn fail(msg: String) -> Clause {
        Clause::Fail(msg)
    }
}

/// Report of the supported-value check.
#[derive(Clone, Debug)]
pub struct SupportReport {
    pub result: Clause,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.result.passed()
    }
}

/// Checks that every claimed value sits on the lower-left convex hull of
/// the full value set: it is non-dominated, and it does not lie strictly
/// above any segment between two other non-dominated values. Exact integer
/// arithmetic throughout.
pub fn supportedness_check(
    values: &BTreeSet<ParetoValue2>,
    full: &BTreeSet<ParetoValue2>,
) -> SupportReport {
    let pareto: Vec<ParetoValue2> = full
        .iter()
        .filter(|&&v| !full.iter().any(|&w| dominates2(w, v)))
        .copied()
        .collect();
    for &v in values {
        if !full.contains(&v) {
            return SupportReport {
                result: Clause::fail(format!("value {v} does not occur in the full value set")),
            };
        }
        if full.iter().any(|&w| dominates2(w, v)) {
            return SupportReport { result: Clause::fail(format!("value {v} is dominated")) };
        }
        for &p in &pareto {
            for &q in &pareto {
                if !(p.k > v.k && v.k > q.k) {
                    continue;
                }
                // v strictly above the chord p-q at abscissa k = v.k
                let lhs = (v.g - p.g) as i128 * (p.k - q.k) as i128;
                let rhs = (q.g - p.g) as i128 * (p.k - v.k) as i128;
                if lhs > rhs {
                    return SupportReport {
                        result: Clause::fail(format!(
                            "value {v} lies above the hull chord from {p} to {q}"
                        )),
                    };
                }
            }
        }
    }
    SupportReport { result: Clause::Pass }
}

/// Audit of one transition-walk run against the independent level table.
#[derive(Clone, Debug)]
pub struct AuditReport {
    /// Every visited point attains its level optimum.
    pub level_optimality: Clause,
    /// Taken transition costs never decrease.
    pub cost_monotonicity: Clause,
    /// The walk stops exactly at the lowest realized level.
    pub terminal_level: Clause,
    /// Once the objective strictly increases along the walk it keeps
    /// strictly increasing.
    pub monotone_emergence: Clause,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.level_optimality.passed()
            && self.cost_monotonicity.passed()
            && self.terminal_level.passed()
            && self.monotone_emergence.passed()
    }

    pub fn clauses(&self) -> [(&'static str, &Clause); 4] {
        [
            ("level-optimality", &self.level_optimality),
            ("cost-monotonicity", &self.cost_monotonicity),
            ("terminal-level", &self.terminal_level),
            ("monotone-emergence", &self.monotone_emergence),
        ]
    }
}

/// Audits a run (the general walk or the restricted one; both expose the
/// same shape) against a level table for the same instance.
pub fn audit_run(run: &MnatbbRun, table: &LevelTable) -> AuditReport {
    let level_optimality = run
        .path
        .iter()
        .find_map(|step| match table.get(step.k) {
            Some(entry) if entry.min_g == step.g => None,
            Some(entry) => Some(Clause::fail(format!(
                "point {} has g = {} but level {} optimum is {}",
                step.point, step.g, step.k, entry.min_g
            ))),
            None => Some(Clause::fail(format!(
                "visited level {} does not exist in the table",
                step.k
            ))),
        })
        .unwrap_or(Clause::Pass);

    let cost_monotonicity = run
        .transitions_taken
        .windows(2)
        .find(|w| w[1].1 < w[0].1)
        .map(|w| {
            Clause::fail(format!(
                "cost decreased from {} ({}) to {} ({})",
                w[0].1, w[0].0, w[1].1, w[1].0
            ))
        })
        .unwrap_or(Clause::Pass);

    let terminal_level = match table.k_min() {
        Some(k_low) if run.final_k() == k_low => Clause::Pass,
        Some(k_low) => {
            Clause::fail(format!("walk ended at level {} but k_min is {k_low}", run.final_k()))
        }
        None => Clause::fail("level table is empty".to_string()),
    };

    let mut monotone_emergence = Clause::Pass;
    let mut increasing = false;
    for w in run.path.windows(2) {
        let diff = w[1].g - w[0].g;
        if increasing && diff <= 0 {
            monotone_emergence = Clause::fail(format!(
                "objective stalled at level {} after it had started increasing",
                w[1].k
            ));
            break;
        }
        if diff > 0 {
            increasing = true;
        }
    }

    AuditReport { level_optimality, cost_monotonicity, terminal_level, monotone_emergence }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{make_base_linear, subset_linear_oracle, ConvexClass, SeparableSpec, SumConstraint, DEFAULT_ENUM_CAP};
    use crate::ground::IntBox;
    use crate::mnatbb::{solve_mnatbb, SolveOptions};
    use crate::subsets::Subset;

    fn inst_a() -> (Objective, BinaryWeights) {
        let fam = SetFamily::new(
            3,
            vec![
                Subset::from_indices([0, 1]),
                Subset::from_indices([0, 2]),
                Subset::from_indices([1, 2]),
            ],
        );
        (make_base_linear(fam, vec![0, 1, 2]).unwrap(), BinaryWeights::from_bits(&[1, 0, 0]))
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

    fn inst_c() -> (Objective, SetFamily, CategoryPartition) {
        let sets: Vec<Subset> = (0..4)
            .flat_map(|i| ((i + 1)..4).map(move |j| Subset::from_indices([i, j])))
            .collect();
        let fam = SetFamily::new(4, sets);
        let oracle = subset_linear_oracle(&fam, &[0, 0, 1, 2], ConvexClass::MNat);
        let part = CategoryPartition::new(2, vec![0, 0, 1, 1]).unwrap();
        (oracle, fam, part)
    }

    fn set2(pairs: &[(i64, i64)]) -> BTreeSet<ParetoValue2> {
        pairs.iter().map(|&(g, k)| ParetoValue2::new(g, k)).collect()
    }

    #[test]
    fn brute_pareto_2d_examples() {
        let (o, b) = inst_a();
        assert_eq!(brute_pareto_2d(&o, &b, DEFAULT_ENUM_CAP).unwrap(), set2(&[(1, 1), (3, 0)]));

        let (o, b) = inst_b();
        assert_eq!(brute_pareto_2d(&o, &b, DEFAULT_ENUM_CAP).unwrap(), set2(&[(2, 1), (4, 0)]));

        let single = SetFamily::new(2, vec![Subset::from_indices([0])]);
        let o = make_base_linear(single, vec![3, 0]).unwrap();
        let b = BinaryWeights::from_bits(&[1, 0]);
        assert_eq!(brute_pareto_2d(&o, &b, DEFAULT_ENUM_CAP).unwrap(), set2(&[(3, 1)]));
    }

    #[test]
    fn brute_pareto_lex_examples() {
        let (g, fam, part) = inst_c();
        let expected: BTreeSet<LexValue> = [
            LexValue::new(0, vec![2, 0]),
            LexValue::new(1, vec![1, 1]),
            LexValue::new(3, vec![0, 2]),
        ]
        .into_iter()
        .collect();
        assert_eq!(brute_pareto_lex(&g, &fam, &part), expected);

        // a constant objective keeps only the lex-minimal eta
        let flat = subset_linear_oracle(&fam, &[0, 0, 0, 0], ConvexClass::MNat);
        let only: BTreeSet<LexValue> = [LexValue::new(0, vec![0, 2])].into_iter().collect();
        assert_eq!(brute_pareto_lex(&flat, &fam, &part), only);

        // one category reduces to the plain biobjective oracle
        let part1 = CategoryPartition::new(1, vec![0; 4]).unwrap();
        let b = BinaryWeights::from_bits(&[1, 1, 1, 1]);
        let lex: BTreeSet<(i64, i64)> = brute_pareto_lex(&g, &fam, &part1)
            .into_iter()
            .map(|v| (v.g, v.eta[0]))
            .collect();
        let flat: BTreeSet<(i64, i64)> = brute_pareto_2d(&g, &b, DEFAULT_ENUM_CAP)
            .unwrap()
            .into_iter()
            .map(|v| (v.g, v.k))
            .collect();
        assert_eq!(lex, flat);
    }

    #[test]
    fn level_table_examples() {
        let (o, b) = inst_a();
        let t = level_table(&o, &b, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(t.get(0).unwrap().min_g, 3);
        assert_eq!(t.get(1).unwrap().min_g, 1);
        assert_eq!(t.len(), 2);
        assert!(t.is_contiguous());

        let (o, b) = inst_b();
        let t = level_table(&o, &b, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(
            (t.get(0).unwrap().min_g, t.get(1).unwrap().min_g, t.get(2).unwrap().min_g),
            (4, 2, 4)
        );

        let (o, _) = inst_a();
        let t = level_table(&o, &BinaryWeights::zeros(3), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(0).unwrap().min_g, 1);
    }

    #[test]
    fn pareto_outputs_are_antichains() {
        let (o, b) = inst_b();
        let pareto = brute_pareto_2d(&o, &b, DEFAULT_ENUM_CAP).unwrap();
        for &p in &pareto {
            for &q in &pareto {
                assert!(!dominates2(p, q));
            }
        }

        let (g, fam, part) = inst_c();
        let pareto = brute_pareto_lex(&g, &fam, &part);
        for p in &pareto {
            for q in &pareto {
                assert!(!dominates_mixed(p, q));
            }
        }
    }

    #[test]
    fn supportedness_examples() {
        let (o, b) = inst_a();
        let full = full_value_set(&o, &b, DEFAULT_ENUM_CAP).unwrap();
        let pareto = brute_pareto_2d(&o, &b, DEFAULT_ENUM_CAP).unwrap();
        assert!(supportedness_check(&pareto, &full).passed());

        // injecting the dominated pair fails
        let mut doctored = pareto.clone();
        doctored.insert(ParetoValue2::new(2, 1));
        assert!(!supportedness_check(&doctored, &full).passed());

        let singleton = set2(&[(1, 1)]);
        assert!(supportedness_check(&singleton, &set2(&[(1, 1)])).passed());
    }

    #[test]
    fn supportedness_rejects_points_above_the_hull() {
        // levels 2, 1, 0 with optima 0, 3, 4: (3, 1) is Pareto but not on
        // the chord from (0, 2) to (4, 0)
        let full = set2(&[(0, 2), (3, 1), (4, 0)]);
        let claimed = set2(&[(3, 1)]);
        assert!(!supportedness_check(&claimed, &full).passed());
        let fine = set2(&[(0, 2), (4, 0)]);
        assert!(supportedness_check(&fine, &full).passed());
    }

    #[test]
    fn audit_run_examples() {
        let (o, b) = inst_a();
        let run = solve_mnatbb(&o, &b, &SolveOptions::default()).unwrap();
        let table = level_table(&o, &b, DEFAULT_ENUM_CAP).unwrap();
        let report = audit_run(&run, &table);
        assert!(report.passed(), "{report:?}");

        // a run doctored to skip a level fails level optimality
        let mut doctored = run.clone();
        doctored.path[0].g += 1;
        assert!(!audit_run(&doctored, &table).level_optimality.passed());

        // a zero-iteration run still has its terminal level checked
        let b0 = BinaryWeights::zeros(3);
        let run0 = solve_mnatbb(&o, &b0, &SolveOptions::default()).unwrap();
        let table0 = level_table(&o, &b0, DEFAULT_ENUM_CAP).unwrap();
        let report0 = audit_run(&run0, &table0);
        assert!(report0.passed());
        assert_eq!(run0.iterations, 0);
    }

    #[test]
    fn audit_catches_terminal_level_mismatch() {
        let (o, b) = inst_a();
        let run = solve_mnatbb(&o, &b, &SolveOptions::default()).unwrap();
        let table = level_table(&o, &b, DEFAULT_ENUM_CAP).unwrap();
        let mut truncated = run;
        truncated.path.truncate(1);
        truncated.transitions_taken.clear();
        assert!(!audit_run(&truncated, &table).terminal_level.passed());
    }
}
