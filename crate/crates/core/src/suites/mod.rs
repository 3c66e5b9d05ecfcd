//! Seeded property suites. Each instance draws from its own generator
//! seeded by `(seed, id)`, so results do not depend on scheduling; reports
//! list failures sorted by instance id, each with a shrunk counterexample.

pub mod banach;
pub mod boolean;
pub mod gen;
pub mod stone;
pub mod tower;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::io::json::SCHEMA;

/// Sizes and counts for a suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instances: usize,
    pub max_atoms: usize,
    pub max_dim: usize,
    pub max_gens: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            instances: 100,
            max_atoms: 8,
            max_dim: 3,
            max_gens: 12,
        }
    }
}

/// One failing instance.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub id: usize,
    pub law: String,
    pub message: String,
    /// The shrunk case, replayable with the suite's checker.
    pub counterexample: serde_json::Value,
    pub shrink_steps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub config: SuiteConfig,
    pub violations: usize,
    /// How often each law was exercised with its hypothesis satisfied.
    pub stats: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Outcome of checking one case.
#[derive(Clone, Debug, Default)]
pub struct Checked {
    /// Laws exercised non-vacuously.
    pub exercised: Vec<&'static str>,
    /// `(law, message)` of the first violated law.
    pub violation: Option<(String, String)>,
}

impl Checked {
    pub(crate) fn law(&mut self, name: &'static str, ok: bool, message: impl FnOnce() -> String) {
        self.exercised.push(name);
        if !ok && self.violation.is_none() {
            self.violation = Some((name.to_string(), message()));
        }
    }
}

/// A generated instance that can be shrunk.
pub trait Case: Serialize + Clone + Send + Sync {
    /// Strictly smaller variants, tried in order.
    fn shrink(&self) -> Vec<Self>;
}

fn check_or_error<C: Case>(check: &(impl Fn(&C) -> Result<Checked> + Sync), c: &C) -> Checked {
    match check(c) {
        Ok(ch) => ch,
        Err(e) => Checked {
            exercised: Vec::new(),
            violation: Some(("error".into(), e.to_string())),
        },
    }
}

/// Runs `instances` cases in parallel and aggregates them in id order.
pub fn run_cases<C: Case>(
    suite: &str,
    cfg: &SuiteConfig,
    generate: impl Fn(&mut ChaCha8Rng, &SuiteConfig) -> C + Sync,
    check: impl Fn(&C) -> Result<Checked> + Sync,
) -> SuiteReport {
    run_indexed(suite, cfg, cfg.instances, |id| generate(&mut instance_rng(cfg.seed, id), cfg), check)
}

/// As [`run_cases`] with case `id` produced by `case_at(id)`, for `0 ≤ id < count`.
pub fn run_indexed<C: Case>(
    suite: &str,
    cfg: &SuiteConfig,
    count: usize,
    case_at: impl Fn(usize) -> C + Sync,
    check: impl Fn(&C) -> Result<Checked> + Sync,
) -> SuiteReport {
    let results: Vec<(usize, Checked, C)> = (0..count)
        .into_par_iter()
        .map(|id| {
            let case = case_at(id);
            (id, check_or_error(&check, &case), case)
        })
        .collect();
    let mut stats = BTreeMap::new();
    let mut failures = Vec::new();
    for (id, checked, case) in results {
        for law in &checked.exercised {
            *stats.entry(law.to_string()).or_insert(0) += 1;
        }
        if let Some((law, message)) = checked.violation {
            let (small, steps, law, message) = shrink(&check, case, law, message);
            failures.push(Failure {
                id,
                law,
                message,
                counterexample: serde_json::to_value(&small).expect("cases serialize"),
                shrink_steps: steps,
            });
        }
    }
    SuiteReport {
        schema: SCHEMA,
        suite: suite.to_string(),
        config: cfg.clone(),
        violations: failures.len(),
        stats,
        failures,
    }
}

/// Greedy shrinking: take the first smaller case that still fails.
fn shrink<C: Case>(
    check: &(impl Fn(&C) -> Result<Checked> + Sync),
    mut case: C,
    mut law: String,
    mut message: String,
) -> (C, usize, String, String) {
    let mut steps = 0;
    'outer: loop {
        for cand in case.shrink() {
            if let Some((l, m)) = check_or_error(check, &cand).violation {
                case = cand;
                law = l;
                message = m;
                steps += 1;
                continue 'outer;
            }
        }
        return (case, steps, law, message);
    }
}

/// Generator for instance `id` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, id: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}

pub const SUITES: &[&str] = &[
    "boolean", "posex", "stone", "quotient", "banach", "sup", "tower", "skeleton",
];

/// Runs a suite by name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    Ok(match name {
        "boolean" => boolean::pushout_laws(cfg),
        "posex" => boolean::posex_laws(cfg),
        "stone" => stone::duality_laws(cfg),
        "quotient" => banach::quotient_laws(cfg),
        "banach" => banach::pushout_laws(cfg),
        "sup" => banach::sup_laws(cfg),
        "tower" => tower::back_and_forth_laws(cfg),
        "skeleton" => tower::skeleton_laws(cfg),
        other => return Err(domain(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    })
}
