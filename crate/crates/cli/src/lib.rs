//! Command-line harness around the `bandmin` library.
//!
//! Subcommands: `gibbs`, `eval`, `evolve`, `sweep`, `genmesh`. Node indices
//! and numbers in every file are 1-based. Exit codes are 0 on success, 2 on
//! invalid input or usage, 1 on internal failure.

pub mod error;
pub mod io;
pub mod plan;
pub mod source;
pub mod sweep;

use std::io::Write;
use std::path::PathBuf;

use bandmin::{
    checked_bandwidth, evolve_with_threads, generate_mesh, gibbs_number, EvolutionConfig,
    MeshFormat, Numbering,
};
use clap::{Args, Parser, Subcommand};

pub use error::{CliError, Result};
use io::{read_text, write_atomic};
use plan::ExperimentPlan;
use source::{parse_grid, parse_random, MeshSource};

/// Environment variable capping worker threads; unset means one.
pub const THREADS_VAR: &str = "BANDMIN_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "bandmin",
    version,
    about = "Mesh bandwidth minimization harness"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Breadth-first baseline numbering and its bandwidth.
    Gibbs {
        #[command(flatten)]
        mesh: MeshArgs,
        /// Directory for `numbering.txt`; printed to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bandwidth of a given numbering.
    Eval {
        #[command(flatten)]
        mesh: MeshArgs,
        /// Numbering file: N lines, line k holds the number of node k.
        #[arg(long)]
        numbering: PathBuf,
    },
    /// One evolutionary run: CSV trace plus a summary line.
    Evolve {
        #[command(flatten)]
        mesh: MeshArgs,
        /// `key = value` config file; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for `trace.csv` and `summary.txt`; the trace goes to
        /// stdout and the summary to stderr otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cartesian sweep over config values with repetitions.
    Sweep {
        #[arg(long)]
        plan: PathBuf,
        /// Overrides the plan's mesh.
        #[command(flatten)]
        mesh: MeshArgs,
        /// Output directory; overrides the plan's `out`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes a generated mesh.
    Genmesh {
        #[command(flatten)]
        mesh: MeshArgs,
        /// Output file; stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Default)]
pub struct MeshArgs {
    /// Mesh file.
    #[arg(long, conflicts_with_all = ["grid", "random"])]
    pub mesh: Option<PathBuf>,
    /// Triangulated grid `RxC`.
    #[arg(long, conflicts_with = "random")]
    pub grid: Option<String>,
    /// Grid seed; grids are fixed, so it only labels the run.
    #[arg(long, requires = "grid")]
    pub seed: Option<u64>,
    /// Random connected mesh: node count, edge probability, seed.
    #[arg(long, num_args = 3, value_names = ["N", "P", "S"])]
    pub random: Option<Vec<String>>,
    /// Mesh text format: `canonical` or `inline`; detected when reading if
    /// omitted, canonical when writing.
    #[arg(long)]
    pub format: Option<String>,
}

impl MeshArgs {
    fn format(&self) -> Result<Option<MeshFormat>> {
        self.format
            .as_deref()
            .map(|f| f.parse().map_err(CliError::from))
            .transpose()
    }

    fn source(&self) -> Result<Option<MeshSource>> {
        let format = self.format()?;
        Ok(if let Some(path) = &self.mesh {
            Some(MeshSource::File {
                path: path.clone(),
                format,
            })
        } else if let Some(grid) = &self.grid {
            Some(MeshSource::Generated(parse_grid(grid)?))
        } else if let Some(values) = &self.random {
            Some(MeshSource::Generated(parse_random(values)?))
        } else {
            None
        })
    }

    fn require(&self) -> Result<MeshSource> {
        self.source()?.ok_or_else(|| {
            CliError::Usage("a mesh is required: --mesh PATH, --grid RxC or --random N P S".into())
        })
    }
}

/// Worker count from [`THREADS_VAR`].
pub fn threads_from_env() -> Result<usize> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(1),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "{THREADS_VAR} must be a positive integer, got `{v}`"
                ))
            }),
    }
}

/// Runs one parsed command, writing reports to `stdout` and `stderr`.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let emit = |w: &mut dyn Write, text: &str| {
        w.write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(format!("cannot write output: {e}")))
    };
    match cli.command {
        Command::Gibbs { mesh, out } => {
            let mesh = mesh.require()?.load()?;
            let numbering = gibbs_number(&mesh)?;
            let b = checked_bandwidth(&mesh, &numbering)?;
            match out {
                Some(dir) => write_atomic(&dir.join("numbering.txt"), &numbering.write())?,
                None => emit(stdout, &numbering.write())?,
            }
            emit(stdout, &format!("bandwidth={b}\n"))
        }
        Command::Eval { mesh, numbering } => {
            let mesh = mesh.require()?.load()?;
            let numbering = Numbering::parse(&read_text(&numbering)?)?;
            let b = checked_bandwidth(&mesh, &numbering)?;
            emit(stdout, &format!("bandwidth={b}\n"))
        }
        Command::Evolve { mesh, config, out } => {
            let mesh = mesh.require()?.load()?;
            let config = match config {
                Some(path) => EvolutionConfig::parse(&read_text(&path)?)?,
                None => EvolutionConfig::default(),
            };
            let trace = evolve_with_threads(&mesh, &config, threads_from_env()?)?;
            let summary = format!("{}\n", trace.summary_line());
            match out {
                Some(dir) => {
                    write_atomic(&dir.join("trace.csv"), &trace.to_csv())?;
                    write_atomic(&dir.join("summary.txt"), &summary)?;
                    emit(stdout, &summary)
                }
                None => {
                    emit(stdout, &trace.to_csv())?;
                    emit(stderr, &summary)
                }
            }
        }
        Command::Sweep { plan, mesh, out } => {
            let plan_path = plan;
            let plan = ExperimentPlan::parse(&read_text(&plan_path)?)?;
            let source = match mesh.source()? {
                Some(source) => source,
                None => plan
                    .mesh
                    .clone()
                    .map(|s| relative_to(s, &plan_path))
                    .ok_or_else(|| {
                        CliError::Usage(
                            "sweep needs a mesh: in the plan or via --mesh/--grid/--random".into(),
                        )
                    })?,
            };
            let out = out.or_else(|| plan.out.clone()).ok_or_else(|| {
                CliError::Usage(
                    "sweep needs an output directory: --out DIR or `out` in the plan".into(),
                )
            })?;
            let mesh = source.load()?;
            let rows = sweep::run_sweep(&plan, &mesh, &out, threads_from_env()?)?;
            let failures = rows.iter().filter(|r| r.outcome.is_err()).count();
            emit(
                stdout,
                &format!(
                    "runs={} failures={} out={}\n",
                    rows.len(),
                    failures,
                    out.display()
                ),
            )
        }
        Command::Genmesh { mesh, out } => {
            let format = mesh.format()?.unwrap_or_default();
            let spec = match mesh.require()? {
                MeshSource::Generated(spec) => spec,
                MeshSource::File { .. } => {
                    return Err(CliError::Usage("genmesh needs --grid or --random".into()))
                }
            };
            let text = generate_mesh(&spec)?.write(format);
            match out {
                Some(path) => write_atomic(&path, &text),
                None => emit(stdout, &text),
            }
        }
    }
}

/// Mesh paths inside a plan are relative to the plan file.
fn relative_to(source: MeshSource, plan_path: &std::path::Path) -> MeshSource {
    match source {
        MeshSource::File { path, format } if path.is_relative() => MeshSource::File {
            path: plan_path
                .parent()
                .map_or(path.clone(), |dir| dir.join(&path)),
            format,
        },
        other => other,
    }
}
