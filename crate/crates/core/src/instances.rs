//! Deterministic instance generators and the versioned on-disk instance
//! format.
//!
//! Instances are single JSON documents. Canonical serialization sorts keys
//! and uses no insignificant whitespace, so regenerating a fixture from its
//! seed reproduces the file byte for byte. See the README for the field
//! reference.

use std::fmt;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::functions::{
    subset_linear_oracle, verify_gmatroid, verify_m, verify_mnat, ConvexClass, Objective,
    SeparableSpec, SumConstraint, DEFAULT_ENUM_CAP,
};
use crate::ground::{GroundSet, IntBox, IntPoint};
use crate::mlb::CategoryPartition;
use crate::rng::SplitMix64;
use crate::subsets::{SetFamily, Subset};
use crate::weights::BinaryWeights;

pub const SCHEMA_VERSION: &str = "1";
pub const RNG_ALGORITHM: &str = "splitmix64";

/// Problem kind an instance file encodes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Mnatbb,
    Mbb,
    Mlb,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Mnatbb => write!(f, "mnatbb"),
            Kind::Mbb => write!(f, "mbb"),
            Kind::Mlb => write!(f, "mlb"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundSchema {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSchema {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SumSchema {
    Eq { value: i64 },
    Range { lo: i64, hi: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectiveSchema {
    /// Linear costs over an explicit base family (0-1 domain).
    BaseLinear { bases: Vec<Vec<usize>>, cost: Vec<i64> },
    /// Separable quadratic-plus-linear. The sum constraint is required for
    /// the lattice kinds and must be absent for `mlb`, where the explicit
    /// family is the domain.
    Separable {
        quad: Vec<i64>,
        lin: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sum: Option<SumSchema>,
    },
    /// Separable objective with an extra linear term added on top.
    SeparablePlusLinear {
        quad: Vec<i64>,
        lin: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sum: Option<SumSchema>,
        extra: Vec<i64>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionSchema {
    pub m: usize,
    /// Category of each element, 0-based, values in `0..m`.
    pub category_of: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSchema {
    pub algorithm: String,
    pub value: u64,
}

/// One instance document. Exactly the fields its kind requires are present.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: String,
    pub kind: Kind,
    pub ground: GroundSchema,
    pub objective: ObjectiveSchema,
    #[serde(rename = "box")]
    pub bounds: BoxSchema,
    /// Binary weights, for the lattice kinds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<u8>>,
    /// Category partition, for `mlb`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSchema>,
    /// Explicit family as sorted index arrays, for `mlb`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<SeedSchema>,
}

/// Semantic validation failure, addressed by field path.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {message}")]
pub struct ValidationError {
    pub path: String,
    pub message: String,
}

fn invalid(path: &str, message: impl Into<String>) -> ValidationError {
    ValidationError { path: path.to_string(), message: message.into() }
}

/// A built, solver-ready instance.
pub enum BuiltInstance {
    Lattice { kind: Kind, oracle: Objective, weights: BinaryWeights, ground: GroundSet },
    Mixed { oracle: Objective, family: SetFamily, partition: CategoryPartition, ground: GroundSet },
}

fn check_index_arrays(path: &str, n: usize, arrays: &[Vec<usize>]) -> Result<(), ValidationError> {
    if arrays.is_empty() {
        return Err(invalid(path, "must be nonempty"));
    }
    for (i, set) in arrays.iter().enumerate() {
        for w in set.windows(2) {
            if w[0] >= w[1] {
                return Err(invalid(
                    &format!("{path}[{i}]"),
                    "indices must be strictly ascending",
                ));
            }
        }
        if let Some(&bad) = set.iter().find(|&&e| e >= n) {
            return Err(invalid(&format!("{path}[{i}]"), format!("index {bad} is out of range")));
        }
    }
    Ok(())
}

impl InstanceFile {
    /// Structural and semantic checks; reports the first violation with its
    /// field path.
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(invalid(
                "schema_version",
                format!("unsupported version {:?}, expected {SCHEMA_VERSION:?}", self.schema_version),
            ));
        }
        let n = self.ground.size;
        if n == 0 {
            return Err(invalid("ground.size", "must be at least 1"));
        }
        if let Some(labels) = &self.ground.labels {
            if labels.len() != n {
                return Err(invalid("ground.labels", format!("expected {n} labels")));
            }
            for i in 0..labels.len() {
                for j in (i + 1)..labels.len() {
                    if labels[i] == labels[j] {
                        return Err(invalid("ground.labels", "labels must be distinct"));
                    }
                }
            }
        }

        if self.bounds.lower.len() != n || self.bounds.upper.len() != n {
            return Err(invalid("box", format!("bounds must have length {n}")));
        }
        if (0..n).any(|e| self.bounds.lower[e] > self.bounds.upper[e]) {
            return Err(invalid("box", "lower bound exceeds upper bound"));
        }

        let is_01_box = self.bounds.lower.iter().all(|&l| l == 0)
            && self.bounds.upper.iter().all(|&u| u == 1);

        match &self.objective {
            ObjectiveSchema::BaseLinear { bases, cost } => {
                if self.kind == Kind::Mlb {
                    return Err(invalid("objective.type", "base_linear is not allowed for kind mlb"));
                }
                check_index_arrays("objective.bases", n, bases)?;
                if cost.len() != n {
                    return Err(invalid("objective.cost", format!("expected length {n}")));
                }
                if !is_01_box {
                    return Err(invalid("box", "base_linear objectives require the 0-1 box"));
                }
            }
            ObjectiveSchema::Separable { quad, lin, sum }
            | ObjectiveSchema::SeparablePlusLinear { quad, lin, sum, .. } => {
                if quad.len() != n {
                    return Err(invalid("objective.quad", format!("expected length {n}")));
                }
                if lin.len() != n {
                    return Err(invalid("objective.lin", format!("expected length {n}")));
                }
                if let Some(&bad) = quad.iter().find(|&&a| a < 0) {
                    return Err(invalid("objective.quad", format!("coefficient {bad} is negative")));
                }
                match (self.kind, sum) {
                    (Kind::Mlb, Some(_)) => {
                        return Err(invalid(
                            "objective.sum",
                            "must be absent for kind mlb (the family is the domain)",
                        ));
                    }
                    (Kind::Mlb, None) => {}
                    (_, None) => {
                        return Err(invalid("objective.sum", "required for the lattice kinds"));
                    }
                    (_, Some(SumSchema::Eq { value })) => {
                        let lo: i64 = self.bounds.lower.iter().sum();
                        let hi: i64 = self.bounds.upper.iter().sum();
                        if *value < lo || *value > hi {
                            return Err(invalid("objective.sum", "equality target is infeasible"));
                        }
                    }
                    (_, Some(SumSchema::Range { lo: r1, hi: r2 })) => {
                        let lo: i64 = self.bounds.lower.iter().sum();
                        let hi: i64 = self.bounds.upper.iter().sum();
                        if r1 > r2 || *r2 < lo || *r1 > hi {
                            return Err(invalid("objective.sum", "range does not meet the box"));
                        }
                    }
                }
                if let ObjectiveSchema::SeparablePlusLinear { extra, .. } = &self.objective {
                    if extra.len() != n {
                        return Err(invalid("objective.extra", format!("expected length {n}")));
                    }
                }
            }
        }

        match self.kind {
            Kind::Mnatbb | Kind::Mbb => {
                match &self.b {
                    None => return Err(invalid("b", "required for the lattice kinds")),
                    Some(bits) => {
                        if bits.len() != n {
                            return Err(invalid("b", format!("expected length {n}")));
                        }
                        if let Some(pos) = bits.iter().position(|&x| x > 1) {
                            return Err(invalid(&format!("b[{pos}]"), "weights must be 0 or 1"));
                        }
                    }
                }
                if self.partition.is_some() {
                    return Err(invalid("partition", "not allowed for the lattice kinds"));
                }
                if self.family.is_some() {
                    return Err(invalid("family", "not allowed for the lattice kinds"));
                }
            }
            Kind::Mlb => {
                if self.b.is_some() {
                    return Err(invalid("b", "not allowed for kind mlb"));
                }
                let part = self
                    .partition
                    .as_ref()
                    .ok_or_else(|| invalid("partition", "required for kind mlb"))?;
                if part.m == 0 {
                    return Err(invalid("partition.m", "must be at least 1"));
                }
                if part.category_of.len() != n {
                    return Err(invalid("partition.category_of", format!("expected length {n}")));
                }
                if let Some(pos) = part.category_of.iter().position(|&c| c >= part.m) {
                    return Err(invalid(
                        &format!("partition.category_of[{pos}]"),
                        format!("category {} is out of range (m = {})", part.category_of[pos], part.m),
                    ));
                }
                let family =
                    self.family.as_ref().ok_or_else(|| invalid("family", "required for kind mlb"))?;
                check_index_arrays("family", n, family)?;
                if !is_01_box {
                    return Err(invalid("box", "kind mlb requires the 0-1 box"));
                }
            }
        }

        if let Some(start) = &self.start {
            if start.len() != n {
                return Err(invalid("start", format!("expected length {n}")));
            }
            if (0..n).any(|e| start[e] < self.bounds.lower[e] || start[e] > self.bounds.upper[e]) {
                return Err(invalid("start", "start point lies outside the box"));
            }
        }

        if let Some(seed) = &self.seed {
            if seed.algorithm != RNG_ALGORITHM {
                return Err(invalid(
                    "seed.algorithm",
                    format!("unknown generator {:?}", seed.algorithm),
                ));
            }
        }
        Ok(())
    }

    /// Validates and constructs the oracle and companion structures. The
    /// convexity claim is taken from the objective shape; certification is
    /// the solvers' (or the verify command's) business.
    pub fn build(&self) -> Result<BuiltInstance, ValidationError> {
        self.validate()?;
        let n = self.ground.size;
        let ground = match &self.ground.labels {
            Some(labels) => GroundSet::with_labels(labels.clone()),
            None => GroundSet::new(n),
        };
        let bounds = IntBox::new(
            IntPoint::new(self.bounds.lower.clone()),
            IntPoint::new(self.bounds.upper.clone()),
        );

        let mut oracle = match (self.kind, &self.objective) {
            (_, ObjectiveSchema::BaseLinear { bases, cost }) => {
                let family = SetFamily::new(n, bases.iter().map(|s| Subset::from_indices(s.iter().copied())).collect());
                subset_linear_oracle(&family, cost, ConvexClass::M)
            }
            (Kind::Mlb, ObjectiveSchema::Separable { quad, lin, .. }) => {
                let family = self.mlb_family(n);
                let weights: Vec<i64> = (0..n).map(|e| quad[e] + lin[e]).collect();
                subset_linear_oracle(&family, &weights, ConvexClass::MNat)
            }
            (Kind::Mlb, ObjectiveSchema::SeparablePlusLinear { quad, lin, extra, .. }) => {
                let family = self.mlb_family(n);
                let weights: Vec<i64> = (0..n).map(|e| quad[e] + lin[e] + extra[e]).collect();
                subset_linear_oracle(&family, &weights, ConvexClass::MNat)
            }
            (_, ObjectiveSchema::Separable { quad, lin, sum }) => {
                let sum = to_sum_constraint(sum.as_ref().expect("validated"));
                let spec = SeparableSpec::new(quad.clone(), lin.clone(), bounds.clone(), sum)
                    .map_err(|e| invalid("objective", e.to_string()))?;
                spec.oracle()
            }
            (_, ObjectiveSchema::SeparablePlusLinear { quad, lin, sum, extra }) => {
                let sum = to_sum_constraint(sum.as_ref().expect("validated"));
                let spec = SeparableSpec::new(quad.clone(), lin.clone(), bounds.clone(), sum)
                    .map_err(|e| invalid("objective", e.to_string()))?;
                spec.oracle().add_linear(extra)
            }
        };

        if let Some(start) = &self.start {
            let point = IntPoint::new(start.clone());
            if !oracle.eval(&point).is_finite() {
                return Err(invalid("start", "start point is not in the effective domain"));
            }
            oracle = oracle.with_start(point);
        }

        match self.kind {
            Kind::Mnatbb | Kind::Mbb => Ok(BuiltInstance::Lattice {
                kind: self.kind,
                oracle,
                weights: BinaryWeights::from_bits(self.b.as_ref().expect("validated")),
                ground,
            }),
            Kind::Mlb => {
                let family = self.mlb_family(n);
                let part = self.partition.as_ref().expect("validated");
                let partition = CategoryPartition::new(part.m, part.category_of.clone())
                    .expect("validated");
                Ok(BuiltInstance::Mixed { oracle, family, partition, ground })
            }
        }
    }

    fn mlb_family(&self, n: usize) -> SetFamily {
        let arrays = self.family.as_ref().expect("validated");
        SetFamily::new(n, arrays.iter().map(|s| Subset::from_indices(s.iter().copied())).collect())
    }

    /// Canonical serialization: sorted keys, compact separators, trailing
    /// newline.
    pub fn canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("instance files serialize");
        let mut s = serde_json::to_string(&value).expect("JSON values render");
        s.push('\n');
        s
    }
}

fn to_sum_constraint(s: &SumSchema) -> SumConstraint {
    match s {
        SumSchema::Eq { value } => SumConstraint::Equal(*value),
        SumSchema::Range { lo, hi } => SumConstraint::Range(*lo, *hi),
    }
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid instance in {path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: ValidationError,
    },
}

/// Parses and validates an instance document from a string.
pub fn parse_instance(text: &str) -> Result<InstanceFile, ReadError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| ReadError::Parse {
        path: "<string>".to_string(),
        message: e.to_string(),
    })?;
    file.validate().map_err(|e| ReadError::Invalid { path: "<string>".to_string(), source: e })?;
    Ok(file)
}

pub fn read_instance(path: &Path) -> Result<InstanceFile, ReadError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ReadError::Io { path: display.clone(), source: e })?;
    let file: InstanceFile = serde_json::from_str(&text)
        .map_err(|e| ReadError::Parse { path: display.clone(), message: e.to_string() })?;
    file.validate().map_err(|e| ReadError::Invalid { path: display, source: e })?;
    Ok(file)
}

pub fn write_instance(file: &InstanceFile, path: &Path) -> io::Result<()> {
    std::fs::write(path, file.canonical_json())
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    Params(String),
    #[error("generated instance failed its own certification ({0}); this is a generator bug")]
    Internal(String),
}

fn params_err<T>(msg: impl Into<String>) -> Result<T, GenError> {
    Err(GenError::Params(msg.into()))
}

/// Which matroid the base-family generator enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatroidKind {
    Uniform,
    Partition,
}

#[derive(Clone, Debug)]
pub struct MatroidLinearParams {
    pub n: usize,
    pub r: usize,
    pub matroid: MatroidKind,
    pub cost_lo: i64,
    pub cost_hi: i64,
    /// Probability, in percent, that `b(e) = 1`.
    pub b_density_pct: u8,
}

impl Default for MatroidLinearParams {
    fn default() -> Self {
        MatroidLinearParams {
            n: 6,
            r: 3,
            matroid: MatroidKind::Uniform,
            cost_lo: -5,
            cost_hi: 9,
            b_density_pct: 50,
        }
    }
}

/// Matroid bases with random integer costs and random binary weights.
/// Deterministic in the seed; the emitted oracle is certified M-convex
/// before the file is returned.
pub fn gen_matroid_linear(
    kind: Kind,
    seed: u64,
    p: &MatroidLinearParams,
) -> Result<InstanceFile, GenError> {
    if kind == Kind::Mlb {
        return params_err("matroid-linear instances are lattice instances (mnatbb or mbb)");
    }
    if p.n == 0 || p.n > 12 {
        return params_err(format!("n must be in 1..=12, got {}", p.n));
    }
    if p.r == 0 || p.r > p.n {
        return params_err(format!("r must be in 1..={}, got {}", p.n, p.r));
    }
    if p.cost_lo > p.cost_hi {
        return params_err("empty cost range");
    }
    let mut rng = SplitMix64::new(seed);

    let bases: Vec<Subset> = match p.matroid {
        MatroidKind::Uniform => all_masks(p.n).filter(|s| s.card() == p.r).collect(),
        MatroidKind::Partition => {
            if p.n < 2 {
                return params_err("partition matroids need at least 2 elements");
            }
            // two blocks split at a random point, quotas summing to r
            let cut = 1 + rng.below((p.n - 1) as u64) as usize;
            let (size_a, size_b) = (cut, p.n - cut);
            let qa_lo = p.r.saturating_sub(size_b);
            let qa_hi = p.r.min(size_a);
            if qa_lo > qa_hi {
                return params_err("partition quotas cannot reach r");
            }
            let qa = qa_lo + rng.below((qa_hi - qa_lo + 1) as u64) as usize;
            let qb = p.r - qa;
            all_masks(p.n)
                .filter(|s| {
                    let in_a = s.iter().filter(|&e| e < cut).count();
                    in_a == qa && s.card() - in_a == qb
                })
                .collect()
        }
    };
    if bases.is_empty() {
        return params_err("no bases exist for these parameters");
    }
    let family = SetFamily::new(p.n, bases);

    let cost: Vec<i64> = (0..p.n).map(|_| rng.pick(p.cost_lo, p.cost_hi)).collect();
    let b: Vec<u8> = (0..p.n).map(|_| u8::from(rng.chance_pct(p.b_density_pct))).collect();
    let start = family.sets()[0].indices();

    let file = InstanceFile {
        schema_version: SCHEMA_VERSION.to_string(),
        kind,
        ground: GroundSchema { size: p.n, labels: None },
        objective: ObjectiveSchema::BaseLinear {
            bases: family.sets().iter().map(|s| s.indices()).collect(),
            cost,
        },
        bounds: BoxSchema { lower: vec![0; p.n], upper: vec![1; p.n] },
        b: Some(b),
        partition: None,
        family: None,
        start: Some({
            let mut v = vec![0i64; p.n];
            for e in start {
                v[e] = 1;
            }
            v
        }),
        seed: Some(SeedSchema { algorithm: RNG_ALGORITHM.to_string(), value: seed }),
    };
    certify(&file)?;
    Ok(file)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMode {
    /// `x(E) = r`; M-convex, usable by every solver.
    Eq,
    /// `r1 <= x(E) <= r2`; M-natural-convex, for `mnatbb` only.
    Range,
}

#[derive(Clone, Debug)]
pub struct SeparableParams {
    pub n: usize,
    pub radius: i64,
    pub mode: SumMode,
    /// Also emit an extra linear term (exercises the sum-with-linear path).
    pub extra_linear: bool,
    pub b_density_pct: u8,
}

impl Default for SeparableParams {
    fn default() -> Self {
        SeparableParams { n: 3, radius: 2, mode: SumMode::Eq, extra_linear: false, b_density_pct: 50 }
    }
}

/// Separable quadratic instances over the box `[0, radius]^n` under a
/// random sum constraint. Certified against the claimed class before the
/// file is returned.
pub fn gen_separable(kind: Kind, seed: u64, p: &SeparableParams) -> Result<InstanceFile, GenError> {
    if kind == Kind::Mlb {
        return params_err("separable lattice instances are mnatbb or mbb");
    }
    if p.n == 0 || p.n > 6 {
        return params_err(format!("n must be in 1..=6, got {}", p.n));
    }
    if !(0..=3).contains(&p.radius) {
        return params_err(format!("radius must be in 0..=3, got {}", p.radius));
    }
    if kind == Kind::Mbb && p.mode == SumMode::Range {
        return params_err("mbb requires the equality sum mode (M-convexity)");
    }
    let mut rng = SplitMix64::new(seed);
    let n = p.n;
    let total = n as i64 * p.radius;

    let quad: Vec<i64> = (0..n).map(|_| rng.pick(0, 3)).collect();
    let lin: Vec<i64> = (0..n).map(|_| rng.pick(-5, 5)).collect();
    let sum = match p.mode {
        SumMode::Eq => SumSchema::Eq { value: rng.pick(0, total) },
        SumMode::Range => {
            let lo = rng.pick(0, total);
            let hi = rng.pick(lo, total);
            SumSchema::Range { lo, hi }
        }
    };
    let objective = if p.extra_linear {
        let extra: Vec<i64> = (0..n).map(|_| rng.pick(-3, 3)).collect();
        ObjectiveSchema::SeparablePlusLinear { quad, lin, sum: Some(sum.clone()), extra }
    } else {
        ObjectiveSchema::Separable { quad, lin, sum: Some(sum.clone()) }
    };
    let b: Vec<u8> = (0..n).map(|_| u8::from(rng.chance_pct(p.b_density_pct))).collect();

    // greedy feasible start: fill left to right up to the smallest target
    let target = match sum {
        SumSchema::Eq { value } => value,
        SumSchema::Range { lo, .. } => lo,
    };
    let mut start = vec![0i64; n];
    let mut need = target;
    for s in start.iter_mut() {
        let add = p.radius.min(need);
        *s = add;
        need -= add;
        if need == 0 {
            break;
        }
    }

    let file = InstanceFile {
        schema_version: SCHEMA_VERSION.to_string(),
        kind,
        ground: GroundSchema { size: n, labels: None },
        objective,
        bounds: BoxSchema { lower: vec![0; n], upper: vec![p.radius; n] },
        b: Some(b),
        partition: None,
        family: None,
        start: Some(start),
        seed: Some(SeedSchema { algorithm: RNG_ALGORITHM.to_string(), value: seed }),
    };
    certify(&file)?;
    Ok(file)
}

/// Where the g-matroid generator takes its family from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySource {
    /// Bases of a uniform matroid.
    Bases,
    /// Independent sets of a uniform matroid (includes the empty set).
    IndependentSets,
    /// An eta-interval family over the full power set.
    Window,
}

#[derive(Clone, Debug)]
pub struct GMatroidParams {
    pub n: usize,
    pub m: usize,
    pub source: FamilySource,
    pub cost_lo: i64,
    pub cost_hi: i64,
}

impl Default for GMatroidParams {
    fn default() -> Self {
        GMatroidParams { n: 6, m: 2, source: FamilySource::Bases, cost_lo: -4, cost_hi: 6 }
    }
}

/// Mixed-order instances over an explicit g-matroid family with random
/// linear costs and a random category partition. The family is certified
/// against the exchange axiom before the file is returned.
pub fn gen_gmatroid(seed: u64, p: &GMatroidParams) -> Result<InstanceFile, GenError> {
    if p.n == 0 || p.n > 12 {
        return params_err(format!("n must be in 1..=12, got {}", p.n));
    }
    if p.m == 0 || p.m > 4 || p.m > p.n {
        return params_err(format!("m must be in 1..=min(4, n), got {}", p.m));
    }
    if p.cost_lo > p.cost_hi {
        return params_err("empty cost range");
    }
    let mut rng = SplitMix64::new(seed);
    let n = p.n;

    // categories: the first m elements pin one category each, the rest draw
    let mut category_of: Vec<usize> = (0..n).map(|e| if e < p.m { e } else { 0 }).collect();
    for c in category_of.iter_mut().skip(p.m) {
        *c = rng.below(p.m as u64) as usize;
    }
    let partition = CategoryPartition::new(p.m, category_of.clone()).expect("categories in range");

    let family: Vec<Subset> = match p.source {
        FamilySource::Bases => {
            let r = 1 + rng.below(n as u64) as usize;
            all_masks(n).filter(|s| s.card() == r).collect()
        }
        FamilySource::IndependentSets => {
            let r = 1 + rng.below(n.min(4) as u64) as usize;
            all_masks(n).filter(|s| s.card() <= r).collect()
        }
        FamilySource::Window => {
            let sizes: Vec<i64> = (0..p.m)
                .map(|c| category_of.iter().filter(|&&x| x == c).count() as i64)
                .collect();
            let lambda: Vec<i64> = sizes.iter().map(|&s| rng.pick(0, s)).collect();
            let xi: Vec<i64> = sizes.iter().zip(&lambda).map(|(&s, &l)| rng.pick(l, s)).collect();
            all_masks(n)
                .filter(|&s| {
                    let eta = partition.eta(s);
                    eta.iter().zip(lambda.iter().zip(&xi)).all(|(&c, (&l, &x))| l <= c && c <= x)
                })
                .collect()
        }
    };
    if family.is_empty() {
        return params_err("family source produced no sets");
    }
    let family = SetFamily::new(n, family);

    let quad: Vec<i64> = (0..n).map(|_| rng.pick(0, 2)).collect();
    let lin: Vec<i64> = (0..n).map(|_| rng.pick(p.cost_lo, p.cost_hi)).collect();
    let start = family.sets()[0].char_point(n).into_vec();

    let file = InstanceFile {
        schema_version: SCHEMA_VERSION.to_string(),
        kind: Kind::Mlb,
        ground: GroundSchema { size: n, labels: None },
        objective: ObjectiveSchema::Separable { quad, lin, sum: None },
        bounds: BoxSchema { lower: vec![0; n], upper: vec![1; n] },
        b: None,
        partition: Some(PartitionSchema { m: p.m, category_of }),
        family: Some(family.sets().iter().map(|s| s.indices()).collect()),
        start: Some(start),
        seed: Some(SeedSchema { algorithm: RNG_ALGORITHM.to_string(), value: seed }),
    };
    certify(&file)?;
    Ok(file)
}

fn all_masks(n: usize) -> impl Iterator<Item = Subset> {
    (0u32..(1 << n)).map(Subset::from_mask)
}

/// Generator postcondition: the emitted oracle (and family, for mlb) passes
/// the verifier for its claimed class.
fn certify(file: &InstanceFile) -> Result<(), GenError> {
    let built = file.build().map_err(|e| GenError::Internal(e.to_string()))?;
    match built {
        BuiltInstance::Lattice { oracle, .. } => {
            let report = match oracle.claimed() {
                ConvexClass::M => verify_m(&oracle, DEFAULT_ENUM_CAP),
                _ => verify_mnat(&oracle, DEFAULT_ENUM_CAP),
            }
            .map_err(|e| GenError::Internal(e.to_string()))?;
            if !report.passed {
                return Err(GenError::Internal(report.to_string()));
            }
        }
        BuiltInstance::Mixed { oracle, family, .. } => {
            let fam_report = verify_gmatroid(&family);
            if !fam_report.passed {
                return Err(GenError::Internal(fam_report.to_string()));
            }
            let report =
                verify_mnat(&oracle, DEFAULT_ENUM_CAP).map_err(|e| GenError::Internal(e.to_string()))?;
            if !report.passed {
                return Err(GenError::Internal(report.to_string()));
            }
        }
    }
    Ok(())
}

/// Small fixed instances used in documentation and tests.
pub mod samples {
    use super::*;

    /// Three bases of the rank-2 uniform matroid on 3 elements, costs
    /// (0, 1, 2), weight on element 0. Pareto values {(1, 1), (3, 0)}.
    pub fn matroid_linear(kind: Kind) -> InstanceFile {
        assert_ne!(kind, Kind::Mlb, "this sample is a lattice instance");
        InstanceFile {
            schema_version: SCHEMA_VERSION.to_string(),
            kind,
            ground: GroundSchema { size: 3, labels: None },
            objective: ObjectiveSchema::BaseLinear {
                bases: vec![vec![0, 1], vec![0, 2], vec![1, 2]],
                cost: vec![0, 1, 2],
            },
            bounds: BoxSchema { lower: vec![0; 3], upper: vec![1; 3] },
            b: Some(vec![1, 0, 0]),
            partition: None,
            family: None,
            start: Some(vec![1, 1, 0]),
            seed: None,
        }
    }

    /// Separable squares on `[0, 2]^2` with `x(E) = 2`, weight on element
    /// 0. Pareto values {(2, 1), (4, 0)}.
    pub fn separable(kind: Kind) -> InstanceFile {
        assert_ne!(kind, Kind::Mlb, "this sample is a lattice instance");
        InstanceFile {
            schema_version: SCHEMA_VERSION.to_string(),
            kind,
            ground: GroundSchema { size: 2, labels: None },
            objective: ObjectiveSchema::Separable {
                quad: vec![1, 1],
                lin: vec![0, 0],
                sum: Some(SumSchema::Eq { value: 2 }),
            },
            bounds: BoxSchema { lower: vec![0; 2], upper: vec![2; 2] },
            b: Some(vec![1, 0]),
            partition: None,
            family: None,
            start: Some(vec![1, 1]),
            seed: None,
        }
    }

    /// All 2-subsets of {a, b, c, d}, costs (0, 0, 1, 2), categories
    /// {a, b} before {c, d}. Pareto values
    /// {(0, (2;0)), (1, (1;1)), (3, (0;2))}.
    pub fn gmatroid() -> InstanceFile {
        InstanceFile {
            schema_version: SCHEMA_VERSION.to_string(),
            kind: Kind::Mlb,
            ground: GroundSchema {
                size: 4,
                labels: Some(vec!["a".into(), "b".into(), "c".into(), "d".into()]),
            },
            objective: ObjectiveSchema::Separable {
                quad: vec![0; 4],
                lin: vec![0, 0, 1, 2],
                sum: None,
            },
            bounds: BoxSchema { lower: vec![0; 4], upper: vec![1; 4] },
            b: None,
            partition: Some(PartitionSchema { m: 2, category_of: vec![0, 0, 1, 1] }),
            family: Some(vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
            ]),
            start: Some(vec![1, 1, 0, 0]),
            seed: None,
        }
    }
}
