use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use radialwave_cli::output::write_json;
use radialwave_cli::sweep::DEFAULT_CAP;
use radialwave_cli::{run_simulate, run_sweep, run_verify, CliError, RunConfig, Suite, SweepAxes};

#[derive(Parser)]
#[command(name = "radialwave", version, about = "Radial defocusing wave experiments")]
struct Cli {
    /// Output directory; overrides `output.directory` in the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Reserved. Every generator is deterministic, so the value is ignored.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration and write its CSV series and summary.json.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a property suite and print its JSON verdict.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Run the cartesian product of the axes over a base configuration.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// `p=3,3.5,4`, `epsilon=0.25,0.5` or `family=gaussian,tail`; repeatable.
        #[arg(long, required = true)]
        axis: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Simulate { config } => {
            let cfg = RunConfig::load(&config)?;
            let dir = cli.out.unwrap_or_else(|| cfg.output.directory.clone());
            let out = run_simulate(&cfg, &dir)?;
            let s = &out.summary;
            for b in &s.budgets {
                println!(
                    "{} {}: {} <= {}",
                    if b.pass { "PASS" } else { "FAIL" },
                    b.name,
                    b.value,
                    b.bound
                );
            }
            if let Some(d) = &s.decay {
                println!(
                    "{} decay: es1 {}, plus {}, minus {}",
                    if d.pass { "PASS" } else { "FAIL" },
                    d.max_es1,
                    d.max_plus,
                    d.max_minus
                );
            }
            println!("wrote {}", dir.display());
            Ok(s.pass)
        }
        Command::Verify { suite } => {
            let verdict = run_verify(suite.parse::<Suite>()?)?;
            for c in &verdict.checks {
                eprintln!(
                    "{} [{}] {}: {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.suite,
                    c.name,
                    c.detail
                );
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&verdict).expect("verdicts serialize")
            );
            if let Some(dir) = cli.out {
                radialwave_cli::output::ensure_dir(&dir)?;
                write_json(&dir.join("verdict.json"), &verdict)?;
            }
            Ok(verdict.pass)
        }
        Command::Sweep { config, axis, cap } => {
            let base = RunConfig::load(&config)?;
            let mut axes = SweepAxes::default();
            for a in &axis {
                axes.add(a)?;
            }
            let dir = cli.out.unwrap_or_else(|| base.output.directory.clone());
            let rows = run_sweep(&base, &axes, cap, &dir)?;
            let mut pass = true;
            let mut worst = None;
            for row in &rows {
                match &row.outcome {
                    Ok(s) => pass &= s.pass,
                    Err(e) => {
                        eprintln!("run {}: {e}", row.index);
                        worst = worst.max(Some(e.exit_code()));
                    }
                }
            }
            println!("wrote {} ({} runs)", dir.join("sweep.csv").display(), rows.len());
            match worst {
                Some(code) => Err(CliError::RunsFailed {
                    failed: rows.iter().filter(|r| r.outcome.is_err()).count(),
                    code,
                }),
                None => Ok(pass),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
