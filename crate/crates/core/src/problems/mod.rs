//! Objective functions, penalty functions and objective statistics for the
//! five supported problem classes.
//!
//! Every kernel is a pure function of a [`Solution`]; the engine consumes
//! them through flat per-index tables built by [`build_objective_table`].

mod cflp;
mod kmeans;
mod maxcut;
mod mis;
mod qap;

pub use cflp::{CflpInstance, CflpObjective};
pub use kmeans::{ClusterMeans, KMeansInstance};
pub use maxcut::MaxcutInstance;
pub use mis::MisInstance;
pub use qap::QapInstance;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Solution, SpaceSpec};

/// Optimisation direction of an objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    /// Sign applied inside the phase-separation unitary.
    pub fn phase_sign(self) -> f64 {
        match self {
            Sense::Maximize => 1.0,
            Sense::Minimize => -1.0,
        }
    }

    /// True when `a` is strictly preferable to `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Maximize => a > b,
            Sense::Minimize => a < b,
        }
    }
}

/// Coefficients of the constraint-violation terms added to an objective,
/// with the optional reference solution used by the distribution-correcting
/// term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenaltyVector {
    pub lambda: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference: Option<Solution>,
}

impl PenaltyVector {
    pub fn new(lambda: Vec<f64>) -> Self {
        PenaltyVector { lambda, reference: None }
    }

    pub fn with_reference(lambda: Vec<f64>, reference: Solution) -> Self {
        PenaltyVector { lambda, reference: Some(reference) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda.iter().any(|&l| l < 0.0 || !l.is_finite()) {
            return Err(Error::Config("penalty coefficients must be >= 0".into()));
        }
        Ok(())
    }

    pub fn get(&self, i: usize) -> f64 {
        self.lambda.get(i).copied().unwrap_or(0.0)
    }
}

/// One of the five problem payloads.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemInstance {
    Maxcut(MaxcutInstance),
    KMeans(KMeansInstance),
    Qap(QapInstance),
    Mis(MisInstance),
    Cflp(CflpInstance),
}

impl ProblemInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            ProblemInstance::Maxcut(_) => "maxcut",
            ProblemInstance::KMeans(_) => "kmeans",
            ProblemInstance::Qap(_) => "qap",
            ProblemInstance::Mis(_) => "mis",
            ProblemInstance::Cflp(_) => "cflp",
        }
    }

    pub fn space(&self) -> SpaceSpec {
        match self {
            ProblemInstance::Maxcut(m) => m.space(),
            ProblemInstance::KMeans(m) => m.space(),
            ProblemInstance::Qap(m) => m.space(),
            ProblemInstance::Mis(m) => m.space(),
            ProblemInstance::Cflp(m) => m.space(),
        }
    }

    pub fn sense(&self) -> Sense {
        match self {
            ProblemInstance::Maxcut(_) | ProblemInstance::Mis(_) => Sense::Maximize,
            _ => Sense::Minimize,
        }
    }

    /// Serialises to the instance interchange schema:
    /// `{"kind", "n", "k"?, "data": {...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let (n, k, data) = match self {
            ProblemInstance::Maxcut(m) => (m.n(), None, serde_json::to_value(m).unwrap()),
            ProblemInstance::KMeans(m) => (m.n(), Some(m.k()), serde_json::to_value(m).unwrap()),
            ProblemInstance::Qap(m) => (m.n(), None, serde_json::to_value(m).unwrap()),
            ProblemInstance::Mis(m) => (m.n(), None, serde_json::to_value(m).unwrap()),
            ProblemInstance::Cflp(m) => (m.n(), Some(m.k()), serde_json::to_value(m).unwrap()),
        };
        let mut obj = serde_json::Map::new();
        obj.insert("kind".into(), self.kind().into());
        obj.insert("n".into(), n.into());
        if let Some(k) = k {
            obj.insert("k".into(), k.into());
        }
        obj.insert("data".into(), data);
        serde_json::Value::Object(obj)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let kind = value
            .get("kind")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::Config("instance JSON lacks a \"kind\" field".into()))?;
        let data = value
            .get("data")
            .ok_or_else(|| Error::Config("instance JSON lacks a \"data\" field".into()))?;
        let parse_err = |e: serde_json::Error| Error::Config(format!("bad instance data: {e}"));
        let inst = match kind {
            "maxcut" => ProblemInstance::Maxcut(serde_json::from_value(data.clone()).map_err(parse_err)?),
            "kmeans" => ProblemInstance::KMeans(serde_json::from_value(data.clone()).map_err(parse_err)?),
            "qap" => ProblemInstance::Qap(serde_json::from_value(data.clone()).map_err(parse_err)?),
            "mis" => ProblemInstance::Mis(serde_json::from_value(data.clone()).map_err(parse_err)?),
            "cflp" => ProblemInstance::Cflp(serde_json::from_value(data.clone()).map_err(parse_err)?),
            other => {
                return Err(Error::Config(format!("unknown instance kind `{other}`")));
            }
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ProblemInstance::Maxcut(m) => m.validate(),
            ProblemInstance::KMeans(m) => m.validate(),
            ProblemInstance::Qap(m) => m.validate(),
            ProblemInstance::Mis(m) => m.validate(),
            ProblemInstance::Cflp(m) => m.validate(),
        }
    }
}

/// How a statistic over the solution space was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "method")]
pub enum StatsMode {
    Exact,
    Sampled { count: usize, seed: u64 },
}

/// Mean and standard deviation of objective values over the solution space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveStats {
    pub mean: f64,
    pub stddev: f64,
    #[serde(flatten)]
    pub method: StatsMode,
}

/// Exact enumeration is used at or below this space size.
pub const EXACT_STATS_LIMIT: usize = 1 << 22;

/// Default sample count for sampled statistics.
pub const DEFAULT_STATS_SAMPLES: usize = 10_000;

/// Population mean and standard deviation of `f` over the space, by exact
/// enumeration (spaces up to [`EXACT_STATS_LIMIT`]) or uniform sampling.
pub fn objective_stats<F>(space: &SpaceSpec, f: F, mode: StatsMode) -> Result<ObjectiveStats>
where
    F: Fn(&Solution) -> f64 + Sync,
{
    match mode {
        StatsMode::Exact => {
            let n = space.cardinality();
            if n > EXACT_STATS_LIMIT {
                return Err(Error::Unsupported(format!(
                    "exact statistics require N <= {EXACT_STATS_LIMIT}, got {n}"
                )));
            }
            let (sum, sum_sq) = block_sums(n, |range| {
                let mut s = 0.0;
                let mut s2 = 0.0;
                for_each_solution_in_range(space, range, |_, sol| {
                    let v = f(sol);
                    s += v;
                    s2 += v * v;
                });
                (s, s2)
            });
            let mean = sum / n as f64;
            let var = (sum_sq / n as f64 - mean * mean).max(0.0);
            Ok(ObjectiveStats { mean, stddev: var.sqrt(), method: StatsMode::Exact })
        }
        StatsMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = 0.0;
            let mut s2 = 0.0;
            for _ in 0..count {
                let v = f(&space.sample_uniform(&mut rng));
                s += v;
                s2 += v * v;
            }
            let mean = s / count as f64;
            let var = (s2 / count as f64 - mean * mean).max(0.0);
            Ok(ObjectiveStats { mean, stddev: var.sqrt(), method: mode })
        }
    }
}

/// Mean and population standard deviation of a precomputed value table.
pub fn stats_of_table(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let (sum, sum_sq) = block_sums(n, |range| {
        let mut s = 0.0;
        let mut s2 = 0.0;
        for &v in &values[range] {
            s += v;
            s2 += v * v;
        }
        (s, s2)
    });
    let mean = sum / n as f64;
    let var = (sum_sq / n as f64 - mean * mean).max(0.0);
    (mean, var.sqrt())
}

/// Evaluates `f` on every solution, indexed by the space codec.
pub fn build_objective_table<F>(space: &SpaceSpec, f: F) -> Vec<f64>
where
    F: Fn(&Solution) -> f64 + Sync,
{
    let n = space.cardinality();
    let mut out = vec![0.0f64; n];
    out.par_chunks_mut(STATS_BLOCK)
        .enumerate()
        .for_each(|(chunk, slot)| {
            let start = chunk * STATS_BLOCK;
            for_each_solution_in_range(space, start..start + slot.len(), |idx, sol| {
                slot[idx - start] = f(sol);
            });
        });
    out
}

const STATS_BLOCK: usize = 1 << 16;

/// Splits `0..n` into fixed-size blocks, maps each block to a pair of partial
/// sums in parallel, and folds the partials in block order. The block
/// structure is independent of the thread count, so results are bit-stable.
fn block_sums<F>(n: usize, f: F) -> (f64, f64)
where
    F: Fn(std::ops::Range<usize>) -> (f64, f64) + Sync,
{
    let blocks: Vec<(f64, f64)> = (0..n.div_ceil(STATS_BLOCK))
        .into_par_iter()
        .map(|b| {
            let start = b * STATS_BLOCK;
            f(start..(start + STATS_BLOCK).min(n))
        })
        .collect();
    blocks
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d))
}

/// Walks solutions for a contiguous index range, decoding once and stepping
/// the positional code in place for binary/integer spaces.
pub(crate) fn for_each_solution_in_range<F>(space: &SpaceSpec, range: std::ops::Range<usize>, mut f: F)
where
    F: FnMut(usize, &Solution),
{
    if range.is_empty() {
        return;
    }
    match space {
        SpaceSpec::Binary { .. } | SpaceSpec::Integer { .. } => {
            let k = space.radix();
            let mut sol = space.decode_unchecked(range.start);
            for idx in range.clone() {
                f(idx, &sol);
                if idx + 1 == range.end {
                    break;
                }
                // Odometer step of the little-endian positional code.
                for v in sol.vars.iter_mut() {
                    *v += 1;
                    if *v < k {
                        break;
                    }
                    *v = 0;
                }
            }
        }
        SpaceSpec::Permutation { .. } => {
            for idx in range {
                f(idx, &space.decode_unchecked(idx));
            }
        }
    }
}
