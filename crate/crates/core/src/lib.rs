//! Exact Pareto optimal value set enumeration for three classes of
//! biobjective discrete optimization problems:
//!
//! - an M-natural-convex objective against a binary linear objective over
//!   integer lattice points ([`mnatbb`]),
//! - the M-convex specialization with a support-restricted transition
//!   search ([`mbb`]),
//! - an M-natural-convex objective against a lexicographic per-category
//!   objective on an explicit g-matroid family ([`mlb`]).
//!
//! All three solvers enumerate the complete Pareto optimal value set
//! exactly, with integer arithmetic throughout. The [`brute`] module holds
//! an independent exhaustive oracle for every solver, [`functions`] holds
//! evaluation oracles and exchange-axiom verifiers, and [`instances`] holds
//! seeded generators plus the on-disk JSON format.
//!
//! Determinism is a design requirement: every tie in a solver breaks by a
//! documented rule, so identical inputs produce identical runs, files, and
//! reports.

pub mod brute;
pub mod functions;
pub mod ground;
pub mod instances;
pub mod mbb;
pub mod minimize;
pub mod mlb;
pub mod mnatbb;
pub mod order;
pub mod rng;
pub mod subsets;
pub mod value;
pub mod weights;

pub use brute::{
    audit_run, brute_pareto_2d, brute_pareto_lex, full_lex_value_set, full_value_set, level_table,
    supportedness_check, AuditReport, Clause, LevelEntry, LevelTable, SupportReport,
};
pub use functions::{
    make_base_linear, make_separable, subset_linear_oracle, verify_base_axiom, verify_gmatroid,
    verify_m, verify_mnat, AxiomKind, AxiomReport, AxiomWitness, BaseFamilyLinear, ConvexClass,
    EnumError, FamilyError, Objective, SeparableSpec, SpecError, SumConstraint, DEFAULT_ENUM_CAP,
};
pub use ground::{supp_diff, GroundSet, IntBox, IntPoint};
pub use instances::{
    gen_gmatroid, gen_matroid_linear, gen_separable, parse_instance, read_instance,
    write_instance, BuiltInstance, FamilySource, GMatroidParams, GenError, InstanceFile, Kind,
    MatroidKind, MatroidLinearParams, ReadError, SeparableParams, SumMode, ValidationError,
};
pub use mbb::{restricted_min_transition, solve_mbb, MbbRun};
pub use minimize::{
    min_b_then_min_h, minimize, DescentTrace, LevelMin, LevelMinBackend, MinimizeError,
    MinimizeResult,
};
pub use mlb::{
    lexmin_eta, solve_mlb, solve_mlb_with, solve_window, windows_for, CategoryPartition,
    EnumerationBackend, GMatroidFamily, MlbRun, OuterStep, Window, WindowBackend,
};
pub use mnatbb::{
    min_transition, solve_mnatbb, transitions, MnatbbRun, PathStep, SolveError, SolveOptions,
};
pub use order::{dominates2, dominates_mixed, format_eta, lex_leq, lex_lt, LexValue, ParetoValue2};
pub use rng::SplitMix64;
pub use subsets::{SetFamily, Subset};
pub use value::ExtValue;
pub use weights::{BinaryWeights, Dest, Transition};
