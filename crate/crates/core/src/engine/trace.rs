use std::fmt::Write as _;

use crate::bandwidth::Bandwidth;
use crate::engine::config::EvolutionConfig;
use crate::engine::individual::Individual;

/// Population statistics at one point of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapshot {
    pub evaluations: u64,
    pub best: Bandwidth,
    pub mean: f64,
}

/// Record of one evolutionary run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub config: EvolutionConfig,
    pub snapshots: Vec<Snapshot>,
    pub final_best: Individual,
    pub gibbs_baseline: Bandwidth,
    pub evaluations_used: u64,
}

/// Percentage by which `best` improves on `baseline`.
pub fn improvement_pct(baseline: Bandwidth, best: Bandwidth) -> f64 {
    if baseline.0 == 0 {
        return 0.0;
    }
    100.0 * (baseline.0 as f64 - best.0 as f64) / baseline.0 as f64
}

impl RunTrace {
    pub fn best(&self) -> Bandwidth {
        self.final_best
            .fitness()
            .expect("final individual is evaluated")
    }

    pub fn improvement_pct(&self) -> f64 {
        improvement_pct(self.gibbs_baseline, self.best())
    }

    /// True when best-so-far never increases and evaluation counts strictly
    /// increase.
    pub fn is_monotone(&self) -> bool {
        self.snapshots
            .windows(2)
            .all(|w| w[1].best <= w[0].best && w[1].evaluations > w[0].evaluations)
    }

    /// `evaluations,best,mean` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("evaluations,best,mean\n");
        for s in &self.snapshots {
            let _ = writeln!(out, "{},{},{:.4}", s.evaluations, s.best, s.mean);
        }
        out
    }

    /// `gibbs=<b> best=<b> improvement_pct=<x>`.
    pub fn summary_line(&self) -> String {
        format!(
            "gibbs={} best={} improvement_pct={}",
            self.gibbs_baseline,
            self.best(),
            self.improvement_pct()
        )
    }
}
