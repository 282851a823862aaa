//! Seeded cross-checks between the solvers, the descent backends, and the
//! exhaustive oracle, at a scale that keeps this crate's test run fast.

use std::collections::BTreeSet;

use dcbo_core::*;

fn built_lattice(file: &InstanceFile) -> (Objective, BinaryWeights) {
    match file.build().unwrap() {
        BuiltInstance::Lattice { oracle, weights, .. } => (oracle, weights),
        _ => panic!("expected a lattice instance"),
    }
}

fn built_mixed(file: &InstanceFile) -> (Objective, SetFamily, CategoryPartition) {
    match file.build().unwrap() {
        BuiltInstance::Mixed { oracle, family, partition, .. } => (oracle, family, partition),
        _ => panic!("expected a mixed-order instance"),
    }
}

#[test]
fn lattice_solvers_match_the_oracle_on_seeded_instances() {
    let opts = SolveOptions::default();
    for seed in 0..12u64 {
        let matroid = gen_matroid_linear(
            Kind::Mbb,
            seed,
            &MatroidLinearParams {
                n: 5 + (seed % 2) as usize,
                r: 2 + (seed % 3) as usize,
                matroid: if seed % 2 == 0 { MatroidKind::Uniform } else { MatroidKind::Partition },
                b_density_pct: (seed % 5) as u8 * 25,
                ..Default::default()
            },
        )
        .unwrap();
        let separable = gen_separable(
            Kind::Mbb,
            seed,
            &SeparableParams {
                n: 2 + (seed % 3) as usize,
                radius: 1 + (seed % 2) as i64,
                ..Default::default()
            },
        )
        .unwrap();

        for file in [matroid, separable] {
            let (oracle, weights) = built_lattice(&file);
            let brute = brute_pareto_2d(&oracle, &weights, DEFAULT_ENUM_CAP).unwrap();

            let general = solve_mnatbb(&oracle, &weights, &opts).unwrap();
            let general_set: BTreeSet<ParetoValue2> = general.values.iter().copied().collect();
            assert_eq!(general_set, brute, "general walk vs oracle, seed {seed}");

            let restricted = solve_mbb(&oracle, &weights, &opts).unwrap();
            let restricted_set: BTreeSet<ParetoValue2> =
                restricted.base.values.iter().copied().collect();
            assert_eq!(restricted_set, brute, "restricted walk vs oracle, seed {seed}");

            let table = level_table(&oracle, &weights, DEFAULT_ENUM_CAP).unwrap();
            assert!(table.is_contiguous(), "levels not contiguous, seed {seed}");
            assert!(audit_run(&general, &table).passed());
            assert!(audit_run(&restricted.base, &table).passed());

            let full = full_value_set(&oracle, &weights, DEFAULT_ENUM_CAP).unwrap();
            assert!(supportedness_check(&general_set, &full).passed());
        }
    }
}

#[test]
fn negative_box_bounds_are_supported() {
    // hand-built instance on [-1, 1]^2: weight levels can be negative
    let spec = SeparableSpec::new(
        vec![1, 2],
        vec![1, -1],
        IntBox::new(IntPoint::new(vec![-1, -1]), IntPoint::new(vec![1, 1])),
        SumConstraint::Range(-2, 2),
    )
    .unwrap();
    let oracle = spec.oracle();
    let weights = BinaryWeights::from_bits(&[1, 0]);
    let opts = SolveOptions::default();

    let run = solve_mnatbb(&oracle, &weights, &opts).unwrap();
    let brute = brute_pareto_2d(&oracle, &weights, DEFAULT_ENUM_CAP).unwrap();
    assert_eq!(run.values.iter().copied().collect::<std::collections::BTreeSet<_>>(), brute);
    assert!(run.final_k() < 0, "the walk reaches a negative level");

    let table = level_table(&oracle, &weights, DEFAULT_ENUM_CAP).unwrap();
    assert_eq!(table.k_min(), Some(-1));
    assert!(audit_run(&run, &table).passed());
}

#[test]
fn level_min_backends_agree_on_seeded_instances() {
    for seed in 0..10u64 {
        let file = gen_separable(
            Kind::Mbb,
            100 + seed,
            &SeparableParams { n: 3, radius: 2, ..Default::default() },
        )
        .unwrap();
        let (oracle, weights) = built_lattice(&file);
        let by_enum =
            min_b_then_min_h(&oracle, &weights, LevelMinBackend::Enumeration, DEFAULT_ENUM_CAP)
                .unwrap();
        let by_descent =
            min_b_then_min_h(&oracle, &weights, LevelMinBackend::TwoPhase, DEFAULT_ENUM_CAP)
                .unwrap();
        assert_eq!(by_enum.level, by_descent.level, "seed {seed}");
        assert_eq!(by_enum.value, by_descent.value, "seed {seed}");
    }
}

#[test]
fn mixed_solver_matches_the_oracle_on_seeded_instances() {
    let opts = SolveOptions::default();
    for seed in 0..9u64 {
        let source = match seed % 3 {
            0 => FamilySource::Bases,
            1 => FamilySource::IndependentSets,
            _ => FamilySource::Window,
        };
        let file = gen_gmatroid(
            200 + seed,
            &GMatroidParams {
                n: 4 + (seed % 3) as usize,
                m: 1 + (seed % 3) as usize,
                source,
                ..Default::default()
            },
        )
        .unwrap();
        let (oracle, family, partition) = built_mixed(&file);
        let gm = GMatroidFamily::new(GroundSet::new(family.n()), family.clone()).unwrap();

        let run = solve_mlb(&oracle, &gm, &partition, &opts).unwrap();
        let solver_set: BTreeSet<LexValue> = run.values.iter().cloned().collect();
        let brute = brute_pareto_lex(&oracle, &family, &partition);
        assert_eq!(solver_set, brute, "seed {seed}");

        // no-filter property: each recorded value is already Pareto optimal
        let full = full_lex_value_set(&oracle, &family, &partition);
        for v in &run.values {
            assert!(!full.iter().any(|w| dominates_mixed(w, v)), "seed {seed}, value {v}");
        }

        assert!(run.outer_iterations <= family.len() as u64);
    }
}

#[test]
fn window_partition_law_on_seeded_shapes() {
    let mut rng = SplitMix64::new(77);
    for _ in 0..10 {
        let n = 3 + rng.below(4) as usize;
        let m = 1 + rng.below(3) as usize;
        let category_of: Vec<usize> = (0..n)
            .map(|e| if e < m { e } else { rng.below(m as u64) as usize })
            .collect();
        let part = CategoryPartition::new(m, category_of).unwrap();
        let mu: Vec<i64> = (0..m).map(|_| rng.pick(0, n as i64)).collect();

        let windows = windows_for(&mu, n as i64);
        for mask in 0u32..(1 << n) {
            let s = Subset::from_mask(mask);
            let eta = part.eta(s);
            let mut hits = windows.iter().filter(|w| w.contains_eta(&eta)).count();
            if eta == mu {
                hits += 1;
            }
            assert_eq!(hits, usize::from(lex_leq(&eta, &mu)), "mu {mu:?}, X {s}");
        }
    }
}
