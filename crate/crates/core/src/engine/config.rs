use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operators::{Crossover, Initializer, MutationKind, MutationWeights};

/// Evolution scheme. Config tokens: `ga`, `es`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Generational GA with linear ranking and elitist replacement.
    Ga,
    /// (μ+λ) evolution strategy.
    Es,
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ga" => Ok(Scheme::Ga),
            "es" => Ok(Scheme::Es),
            other => Err(Error::Config(format!("unknown scheme `{other}`"))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Ga => "ga",
            Scheme::Es => "es",
        })
    }
}

/// Everything that determines a run. Two runs on the same mesh with equal
/// configs produce identical traces.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub scheme: Scheme,
    /// GA population size.
    pub population_size: usize,
    /// ES parent count.
    pub mu: usize,
    /// ES offspring count.
    pub lambda: usize,
    pub pc: f64,
    pub pm: f64,
    pub crossover: Crossover,
    pub mutation_weights: MutationWeights,
    /// Transpositions per random-transposition mutation.
    pub mutation_strength: usize,
    pub init: Initializer,
    pub gibbs_init_max_swaps: usize,
    pub max_evaluations: u64,
    pub seed: u64,
    pub snapshot_every: u64,
    /// Score single-swap offspring from their parent's fitness plus a swap
    /// delta. Never changes any reported value.
    pub incremental: bool,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            scheme: Scheme::Es,
            population_size: 50,
            mu: 7,
            lambda: 50,
            pc: 0.0,
            pm: 1.0,
            crossover: Crossover::None,
            mutation_weights: MutationWeights::default(),
            mutation_strength: 1,
            init: Initializer::Gibbs,
            gibbs_init_max_swaps: 10,
            max_evaluations: 150_000,
            seed: 0,
            snapshot_every: 1000,
            incremental: true,
        }
    }
}

impl EvolutionConfig {
    /// Keys accepted in `key = value` config files.
    pub const KEYS: [&'static str; 17] = [
        "scheme",
        "mu",
        "lambda",
        "population_size",
        "pc",
        "pm",
        "xover",
        "init",
        "gibbs_init_max_swaps",
        "pm_rand",
        "pm_neighbor",
        "pm_around",
        "pm_inversion",
        "pm_origin",
        "max_evaluations",
        "seed",
        "snapshot_every",
    ];

    /// (μ+λ)-ES with pure random-transposition mutation at rate 1.
    pub fn es(mu: usize, lambda: usize) -> Self {
        EvolutionConfig {
            scheme: Scheme::Es,
            mu,
            lambda,
            pc: 0.0,
            pm: 1.0,
            mutation_weights: MutationWeights::random_only(),
            ..Default::default()
        }
    }

    /// Generational GA with the given population size.
    pub fn ga(population_size: usize) -> Self {
        EvolutionConfig {
            scheme: Scheme::Ga,
            population_size,
            ..Default::default()
        }
    }

    /// Individuals created before the first generation.
    pub fn initial_population_size(&self) -> usize {
        match self.scheme {
            Scheme::Ga => self.population_size,
            Scheme::Es => self.mu,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        match self.scheme {
            Scheme::Ga if self.population_size < 2 => {
                return fail(format!(
                    "population_size must be at least 2, got {}",
                    self.population_size
                ))
            }
            Scheme::Es if self.mu < 1 || self.lambda < 1 => {
                return fail(format!(
                    "mu and lambda must be at least 1, got ({}, {})",
                    self.mu, self.lambda
                ))
            }
            _ => {}
        }
        for (name, p) in [("pc", self.pc), ("pm", self.pm)] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if self.gibbs_init_max_swaps == 0 {
            return fail("gibbs_init_max_swaps must be positive".into());
        }
        if self.mutation_strength == 0 {
            return fail("mutation strength must be positive".into());
        }
        if self.snapshot_every == 0 {
            return fail("snapshot_every must be positive".into());
        }
        if self.max_evaluations < self.initial_population_size() as u64 {
            return fail(format!(
                "max_evaluations ({}) cannot cover the initial population ({})",
                self.max_evaluations,
                self.initial_population_size()
            ));
        }
        Ok(())
    }

    /// Builds a config from `(key, value)` pairs over the defaults.
    ///
    /// If any mutation weight key is present, the weight keys that are
    /// absent count as 0, so `pm_rand = 1` alone means pure random
    /// transposition.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut config = EvolutionConfig::default();
        let mut weights: Option<[f64; 5]> = None;
        for (key, value) in pairs {
            let bad = |e: String| Error::Config(format!("key `{key}`: {e}"));
            let int = || value.parse::<u64>().map_err(|e| bad(e.to_string()));
            let real = || value.parse::<f64>().map_err(|e| bad(e.to_string()));
            match key {
                "scheme" => config.scheme = value.parse()?,
                "mu" => config.mu = int()? as usize,
                "lambda" => config.lambda = int()? as usize,
                "population_size" => config.population_size = int()? as usize,
                "pc" => config.pc = real()?,
                "pm" => config.pm = real()?,
                "xover" => config.crossover = value.parse()?,
                "init" => config.init = value.parse()?,
                "gibbs_init_max_swaps" => config.gibbs_init_max_swaps = int()? as usize,
                "max_evaluations" => config.max_evaluations = int()?,
                "seed" => config.seed = int()?,
                "snapshot_every" => config.snapshot_every = int()?,
                _ => {
                    let kind = MutationKind::ALL
                        .into_iter()
                        .find(|k| k.weight_key() == key)
                        .ok_or_else(|| Error::Config(format!("unknown config key `{key}`")))?;
                    weights.get_or_insert([0.0; 5])[kind as usize] = real()?;
                }
            }
        }
        if let Some(raw) = weights {
            config.mutation_weights = MutationWeights::from_array(raw)?;
        }
        config.validate()?;
        Ok(config)
    }

    /// Parses a `key = value` file; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let pairs = parse_key_values(text)?;
        Self::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))
    }

    /// Serializes every key; `parse(to_text())` reproduces the config.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = self.mutation_weights;
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("scheme", self.scheme.to_string());
        put("mu", self.mu.to_string());
        put("lambda", self.lambda.to_string());
        put("population_size", self.population_size.to_string());
        put("pc", self.pc.to_string());
        put("pm", self.pm.to_string());
        put("xover", self.crossover.to_string());
        put("init", self.init.to_string());
        put(
            "gibbs_init_max_swaps",
            self.gibbs_init_max_swaps.to_string(),
        );
        for kind in MutationKind::ALL {
            put(kind.weight_key(), w.weight(kind).to_string());
        }
        put("max_evaluations", self.max_evaluations.to_string());
        put("seed", self.seed.to_string());
        put("snapshot_every", self.snapshot_every.to_string());
        out
    }
}

/// Splits a flat `key = value` text into pairs, in file order.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no + 1,
            offset: 0,
            message: format!("expected `key = value`, found `{line}`"),
        })?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}
