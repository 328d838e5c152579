//! Sweep plans.
//!
//! A plan is a flat `key = value` file. Harness keys pick the mesh and the
//! repetition scheme; every other key is a config key whose value is either
//! a single value, a comma-separated list, or an inclusive `start:stop:step`
//! range. The variants are the cartesian product of all listed values, the
//! first key varying slowest.
//!
//! ```text
//! grid = 10x10
//! repetitions = 3
//! base_seed = 42
//! scheme = ga
//! xover = breadth_first
//! pc = 0:1:0.5
//! pm = 0.2, 0.8
//! ```

use std::path::PathBuf;

use bandmin::engine::parse_key_values;
use bandmin::rng::derive_seed;
use bandmin::{EvolutionConfig, MeshFormat};

use crate::error::{CliError, Result};
use crate::source::{parse_grid, parse_random, MeshSource};

const HARNESS_KEYS: [&str; 6] = ["mesh", "grid", "random", "repetitions", "base_seed", "out"];

/// One point of the sweep: the swept `(key, value)` choices.
#[derive(Debug, Clone, PartialEq)]
pub struct Variant {
    pub index: usize,
    pub pairs: Vec<(String, String)>,
}

impl Variant {
    /// `key=value` pairs of the swept keys joined by `;`, or `base`.
    pub fn descriptor(&self, swept: &[String]) -> String {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .filter(|(k, _)| swept.contains(k))
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if parts.is_empty() {
            "base".to_string()
        } else {
            parts.join(";")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub mesh: Option<MeshSource>,
    pub repetitions: usize,
    pub base_seed: u64,
    pub out: Option<PathBuf>,
    /// Config keys in file order, with their value lists.
    pub axes: Vec<(String, Vec<String>)>,
}

impl ExperimentPlan {
    pub fn parse(text: &str) -> Result<Self> {
        let mut plan = ExperimentPlan {
            mesh: None,
            repetitions: 1,
            base_seed: 0,
            out: None,
            axes: Vec::new(),
        };
        for (key, value) in parse_key_values(text)? {
            let bad = |what: &str| CliError::Usage(format!("plan key `{key}`: {what}"));
            match key.as_str() {
                "mesh" => {
                    plan.mesh = Some(MeshSource::File {
                        path: PathBuf::from(&value),
                        format: None::<MeshFormat>,
                    })
                }
                "grid" => plan.mesh = Some(MeshSource::Generated(parse_grid(&value)?)),
                "random" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    plan.mesh = Some(MeshSource::Generated(parse_random(&parts)?));
                }
                "repetitions" => {
                    plan.repetitions = value.parse().map_err(|_| bad("expected an integer"))?;
                    if plan.repetitions == 0 {
                        return Err(bad("must be at least 1"));
                    }
                }
                "base_seed" => {
                    plan.base_seed = value.parse().map_err(|_| bad("expected an integer"))?
                }
                "out" => plan.out = Some(PathBuf::from(&value)),
                "seed" => return Err(bad("per-run seeds derive from `base_seed`")),
                k if EvolutionConfig::KEYS.contains(&k) => {
                    if plan.axes.iter().any(|(existing, _)| existing == k) {
                        return Err(bad("given twice"));
                    }
                    plan.axes.push((key.clone(), expand_values(&key, &value)?));
                }
                _ => {
                    return Err(CliError::Usage(format!(
                        "unknown plan key `{key}` (config keys: {}; harness keys: {})",
                        EvolutionConfig::KEYS.join(", "),
                        HARNESS_KEYS.join(", ")
                    )))
                }
            }
        }
        Ok(plan)
    }

    /// Keys with more than one value.
    pub fn swept_keys(&self) -> Vec<String> {
        self.axes
            .iter()
            .filter(|(_, values)| values.len() > 1)
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn variants(&self) -> Vec<Variant> {
        let mut combos: Vec<Vec<(String, String)>> = vec![Vec::new()];
        for (key, values) in &self.axes {
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push((key.clone(), v.clone()));
                        next
                    })
                })
                .collect();
        }
        combos
            .into_iter()
            .enumerate()
            .map(|(index, pairs)| Variant { index, pairs })
            .collect()
    }

    /// Seed of one run, derived from the base seed and its coordinates.
    pub fn run_seed(&self, variant: usize, repetition: usize) -> u64 {
        derive_seed(
            derive_seed(self.base_seed, variant as u64),
            repetition as u64,
        )
    }

    /// Config of one run; validation errors surface here.
    pub fn config(&self, variant: &Variant, repetition: usize) -> bandmin::Result<EvolutionConfig> {
        let seed = self.run_seed(variant.index, repetition).to_string();
        let pairs = variant
            .pairs
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .chain([("seed", seed.as_str())]);
        EvolutionConfig::from_pairs(pairs)
    }
}

/// Expands `a, b, c` lists and inclusive `start:stop:step` ranges.
fn expand_values(key: &str, value: &str) -> Result<Vec<String>> {
    let bad = |what: String| CliError::Usage(format!("plan key `{key}`: {what}"));
    let parts: Vec<&str> = value.split(':').map(str::trim).collect();
    let values: Vec<String> = match parts.as_slice() {
        [single] => single
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect(),
        [start, stop, step] => {
            if let (Ok(a), Ok(b), Ok(s)) = (
                start.parse::<u64>(),
                stop.parse::<u64>(),
                step.parse::<u64>(),
            ) {
                if s == 0 || b < a {
                    return Err(bad(format!("empty range `{value}`")));
                }
                (a..=b).step_by(s as usize).map(|x| x.to_string()).collect()
            } else {
                let num = |t: &str| {
                    t.parse::<f64>()
                        .map_err(|_| bad(format!("bad range bound `{t}`")))
                };
                let (a, b, s) = (num(start)?, num(stop)?, num(step)?);
                if s.is_nan() || s <= 0.0 || b < a {
                    return Err(bad(format!("empty range `{value}`")));
                }
                let steps = ((b - a) / s + 1e-9).floor() as u64;
                (0..=steps)
                    .map(|i| {
                        let x = a + i as f64 * s;
                        ((x * 1e10).round() / 1e10).to_string()
                    })
                    .collect()
            }
        }
        _ => return Err(bad(format!("cannot read `{value}`"))),
    };
    if values.is_empty() {
        return Err(bad("no values".to_string()));
    }
    Ok(values)
}
