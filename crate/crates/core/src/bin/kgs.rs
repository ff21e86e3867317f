use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgs::jacobi::{ClosureOptions, FactorizeOptions, SlicePolicy};
use kgs::pipeline::{self, GraphKind, PipelineError};
use kgs::Mode;

#[derive(Parser)]
#[command(
    name = "kgs",
    version,
    about = "Star-product associators and their Leibniz-graph factorizations"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// More log output (repeat for debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Kontsevich,
    Leibniz,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "full")]
    mode: Mode,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a canonical graph set and print the counts.
    Generate {
        kind: Kind,
        #[arg(long)]
        sinks: usize,
        #[arg(long)]
        aerial: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Associator of a star-product file through a given order.
    Associator {
        star: PathBuf,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Factorize every component of an associator file.
    Factorize {
        input: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        max_layers: usize,
        /// `merged`, or a power of z.
        #[arg(long, default_value = "merged")]
        slice: SlicePolicy,
        #[command(flatten)]
        common: Common,
    },
    /// Check a certificate against its component.
    Verify {
        cert: PathBuf,
        target: PathBuf,
        /// Poisson structures to test on (default: so(3) and the plane).
        #[arg(long)]
        poisson: Vec<PathBuf>,
        #[arg(long, default_value = "full")]
        mode: Mode,
    },
    /// Remove a factorable z-slice from a star product.
    Reduce {
        star: PathBuf,
        #[arg(long, default_value_t = 1)]
        slice: usize,
        #[arg(long, default_value_t = 3)]
        max_layers: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a series file on a bivector.
    Eval {
        input: PathBuf,
        #[arg(long)]
        poisson: PathBuf,
        /// One per sink: a polynomial in x1..xd, or `symbol`.
        #[arg(long = "arg")]
        args: Vec<String>,
        /// Substitute a rational value for z.
        #[arg(long)]
        z: Option<String>,
    },
    /// Build an associative star product order by order.
    Solve {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(out: &Option<PathBuf>, name: &str, text: &str) -> Result<(), PipelineError> {
    match out {
        Some(dir) => pipeline::write_file(&dir.join(name), text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, PipelineError> {
    match cli.command {
        Command::Generate {
            kind,
            sinks,
            aerial,
            common,
        } => {
            if sinks == 0 || (matches!(kind, Kind::Leibniz) && aerial == 0) {
                return Err(PipelineError::Usage(
                    "need at least one sink (and one aerial vertex for Leibniz graphs)".into(),
                ));
            }
            let kind = match kind {
                Kind::Kontsevich => GraphKind::Kontsevich,
                Kind::Leibniz => GraphKind::Leibniz,
            };
            let g = pipeline::cmd_generate(kind, sinks, aerial, common.mode);
            println!("{}", g.summary);
            if let Some(dir) = &common.out {
                let name = match kind {
                    GraphKind::Kontsevich => format!("kontsevich-m{sinks}-n{aerial}.txt"),
                    GraphKind::Leibniz => format!("leibniz-m{sinks}-n{aerial}.txt"),
                };
                pipeline::write_file(&dir.join(name), &g.to_text())?;
            }
            Ok(true)
        }
        Command::Associator {
            star,
            order,
            common,
        } => {
            let (assoc, summary) =
                pipeline::cmd_associator(&pipeline::read_file(&star)?, order, common.mode)?;
            eprint!("{summary}");
            emit(
                &common.out,
                "associator.txt",
                &pipeline::series_text(&assoc),
            )?;
            Ok(true)
        }
        Command::Factorize {
            input,
            order,
            max_layers,
            slice,
            common,
        } => {
            let opts = FactorizeOptions {
                closure: ClosureOptions {
                    max_layers,
                    mode: common.mode,
                },
                slice,
            };
            let report = pipeline::cmd_factorize(&pipeline::read_file(&input)?, order, &opts)?;
            print!("{}", report.log_text());
            if let Some(dir) = &common.out {
                pipeline::write_certificates(dir, &report)?;
            }
            Ok(report.success())
        }
        Command::Verify {
            cert,
            target,
            poisson,
            mode,
        } => {
            let poisson: Vec<String> = poisson
                .iter()
                .map(|p| pipeline::read_file(p))
                .collect::<Result<_, _>>()?;
            let report = pipeline::cmd_verify(
                &pipeline::read_file(&cert)?,
                &pipeline::read_file(&target)?,
                mode,
                &poisson,
            )?;
            print!("{}", report.text);
            Ok(report.check.passed())
        }
        Command::Reduce {
            star,
            slice,
            max_layers,
            common,
        } => {
            let opts = ClosureOptions {
                max_layers,
                mode: common.mode,
            };
            let r = pipeline::cmd_reduce(&pipeline::read_file(&star)?, slice, &opts)?;
            eprint!("{}", pipeline::reduction_summary(&r));
            match &common.out {
                Some(dir) => {
                    pipeline::write_file(
                        &dir.join("reduced.txt"),
                        &pipeline::star_text(&r.reduced),
                    )?;
                    pipeline::write_file(
                        &dir.join("leibniz.txt"),
                        &pipeline::series_text(&r.leibniz),
                    )?;
                    if !r.status {
                        pipeline::write_file(
                            &dir.join("residual.txt"),
                            &pipeline::series_text(&r.residual),
                        )?;
                    }
                }
                None => print!("{}", pipeline::star_text(&r.reduced)),
            }
            Ok(r.status)
        }
        Command::Eval {
            input,
            poisson,
            args,
            z,
        } => {
            let text = pipeline::cmd_eval(
                &pipeline::read_file(&input)?,
                &pipeline::read_file(&poisson)?,
                &args,
                z.as_deref(),
            )?;
            print!("{text}");
            Ok(true)
        }
        Command::Solve { order, common } => {
            let star = pipeline::cmd_solve(order, common.mode)?;
            emit(&common.out, "star.txt", &pipeline::star_text(&star))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
