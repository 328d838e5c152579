use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use bandmin::{evolve, MeshGraph, RunTrace};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::io::write_atomic;
use crate::plan::ExperimentPlan;

/// Outcome of one (variant, repetition) run.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub variant: usize,
    pub descriptor: String,
    pub repetition: usize,
    pub seed: u64,
    pub outcome: Result<RunSummary, String>,
    pub seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub gibbs: u64,
    pub best: u64,
    pub improvement_pct: f64,
    pub evaluations: u64,
}

impl RunSummary {
    fn of(trace: &RunTrace) -> Self {
        RunSummary {
            gibbs: trace.gibbs_baseline.value(),
            best: trace.best().value(),
            improvement_pct: trace.improvement_pct(),
            evaluations: trace.evaluations_used,
        }
    }
}

/// Per-variant statistics of final best bandwidth over successful runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub variant: usize,
    pub descriptor: String,
    pub runs: usize,
    pub failures: usize,
    pub mean: f64,
    pub min: u64,
    pub max: u64,
    pub stddev: f64,
    pub mean_improvement_pct: f64,
}

pub fn trace_file_name(variant: usize, repetition: usize) -> String {
    format!("variant{variant:03}_rep{repetition:03}.csv")
}

/// Runs every (variant, repetition) of the plan on `threads` workers and
/// writes traces, `runs.csv`, `aggregate.csv` and `timings.csv` into `out`.
pub fn run_sweep(
    plan: &ExperimentPlan,
    mesh: &MeshGraph,
    out: &Path,
    threads: usize,
) -> Result<Vec<ReportRow>> {
    let swept = plan.swept_keys();
    let jobs: Vec<_> = plan
        .variants()
        .into_iter()
        .flat_map(|v| (0..plan.repetitions).map(move |r| (v.clone(), r)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;

    let rows: Vec<Result<ReportRow>> = pool.install(|| {
        jobs.par_iter()
            .map(|(variant, repetition)| {
                let started = Instant::now();
                let seed = plan.run_seed(variant.index, *repetition);
                let result = plan
                    .config(variant, *repetition)
                    .and_then(|config| evolve(mesh, &config));
                let outcome = match result {
                    Ok(trace) => {
                        let path = out
                            .join("traces")
                            .join(trace_file_name(variant.index, *repetition));
                        write_atomic(&path, &trace.to_csv())?;
                        Ok(RunSummary::of(&trace))
                    }
                    Err(e) => Err(e.to_string()),
                };
                Ok(ReportRow {
                    variant: variant.index,
                    descriptor: variant.descriptor(&swept),
                    repetition: *repetition,
                    seed,
                    outcome,
                    seconds: started.elapsed().as_secs_f64(),
                })
            })
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;

    write_atomic(&out.join("runs.csv"), &runs_csv(&rows))?;
    write_atomic(
        &out.join("aggregate.csv"),
        &aggregate_csv(&aggregate(&rows)),
    )?;
    write_atomic(&out.join("timings.csv"), &timings_csv(&rows))?;
    Ok(rows)
}

pub fn aggregate(rows: &[ReportRow]) -> Vec<Aggregate> {
    let mut out: Vec<Aggregate> = Vec::new();
    for row in rows {
        if out.last().is_none_or(|a| a.variant != row.variant) {
            out.push(Aggregate {
                variant: row.variant,
                descriptor: row.descriptor.clone(),
                runs: 0,
                failures: 0,
                mean: 0.0,
                min: 0,
                max: 0,
                stddev: 0.0,
                mean_improvement_pct: 0.0,
            });
        }
    }
    for agg in &mut out {
        let ok: Vec<&RunSummary> = rows
            .iter()
            .filter(|r| r.variant == agg.variant)
            .filter_map(|r| r.outcome.as_ref().ok())
            .collect();
        agg.failures = rows.iter().filter(|r| r.variant == agg.variant).count() - ok.len();
        agg.runs = ok.len();
        if ok.is_empty() {
            continue;
        }
        let bests: Vec<f64> = ok.iter().map(|s| s.best as f64).collect();
        let n = bests.len() as f64;
        agg.mean = bests.iter().sum::<f64>() / n;
        agg.min = ok.iter().map(|s| s.best).min().unwrap_or(0);
        agg.max = ok.iter().map(|s| s.best).max().unwrap_or(0);
        agg.stddev = if ok.len() > 1 {
            (bests.iter().map(|b| (b - agg.mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        agg.mean_improvement_pct = ok.iter().map(|s| s.improvement_pct).sum::<f64>() / n;
    }
    out
}

/// `variant,descriptor,repetition,seed,status,gibbs,best,improvement_pct,evaluations`.
pub fn runs_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(
        "variant,descriptor,repetition,seed,status,gibbs,best,improvement_pct,evaluations\n",
    );
    for row in rows {
        let _ = match &row.outcome {
            Ok(s) => writeln!(
                out,
                "{},{},{},{},ok,{},{},{},{}",
                row.variant,
                row.descriptor,
                row.repetition,
                row.seed,
                s.gibbs,
                s.best,
                s.improvement_pct,
                s.evaluations
            ),
            Err(message) => writeln!(
                out,
                "{},{},{},{},\"error: {}\",,,,",
                row.variant,
                row.descriptor,
                row.repetition,
                row.seed,
                message.replace('"', "'")
            ),
        };
    }
    out
}

/// `variant,descriptor,runs,failures,mean_best,min_best,max_best,stddev_best,mean_improvement_pct`.
pub fn aggregate_csv(aggregates: &[Aggregate]) -> String {
    let mut out = String::from(
        "variant,descriptor,runs,failures,mean_best,min_best,max_best,stddev_best,mean_improvement_pct\n",
    );
    for a in aggregates {
        if a.runs == 0 {
            let _ = writeln!(out, "{},{},0,{},,,,,", a.variant, a.descriptor, a.failures);
        } else {
            let _ = writeln!(
                out,
                "{},{},{},{},{:.6},{},{},{:.6},{:.6}",
                a.variant,
                a.descriptor,
                a.runs,
                a.failures,
                a.mean,
                a.min,
                a.max,
                a.stddev,
                a.mean_improvement_pct
            );
        }
    }
    out
}

/// `variant,repetition,seconds`; kept apart so the other files stay
/// byte-identical across repeats.
pub fn timings_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("variant,repetition,seconds\n");
    for row in rows {
        let _ = writeln!(out, "{},{},{:.3}", row.variant, row.repetition, row.seconds);
    }
    out
}
