//! Fixture builders shared by the criterion benchmarks.

use dcbo_core::*;

/// A solver-ready lattice instance built from a seeded generator.
pub fn lattice_fixture(kind: Kind, seed: u64, n: usize, r: usize) -> (Objective, BinaryWeights) {
    let file = gen_matroid_linear(
        kind,
        seed,
        &MatroidLinearParams { n, r, ..Default::default() },
    )
    .expect("benchmark parameters are valid");
    match file.build().expect("generated instances build") {
        BuiltInstance::Lattice { oracle, weights, .. } => (oracle, weights),
        _ => unreachable!("matroid-linear instances are lattice instances"),
    }
}

/// A solver-ready separable lattice instance.
pub fn separable_fixture(seed: u64, n: usize, radius: i64) -> (Objective, BinaryWeights) {
    let file = gen_separable(
        Kind::Mnatbb,
        seed,
        &SeparableParams { n, radius, mode: SumMode::Range, ..Default::default() },
    )
    .expect("benchmark parameters are valid");
    match file.build().expect("generated instances build") {
        BuiltInstance::Lattice { oracle, weights, .. } => (oracle, weights),
        _ => unreachable!("separable instances are lattice instances"),
    }
}

/// A solver-ready mixed-order instance.
pub fn mixed_fixture(
    seed: u64,
    n: usize,
    m: usize,
    source: FamilySource,
) -> (Objective, GMatroidFamily, CategoryPartition) {
    let file = gen_gmatroid(seed, &GMatroidParams { n, m, source, ..Default::default() })
        .expect("benchmark parameters are valid");
    match file.build().expect("generated instances build") {
        BuiltInstance::Mixed { oracle, family, partition, ground } => {
            let gm = GMatroidFamily::new(ground, family).expect("generated families verify");
            (oracle, gm, partition)
        }
        _ => unreachable!("g-matroid instances are mixed instances"),
    }
}
