use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use dffv_cli::accept::{run_suite, ReportEntry};
use dffv_cli::output::write_json;
use dffv_cli::{execute, OutputFormat, Overrides, RunConfig, THREADS_VAR};
use dffv_core::bench::{case_registry, convergence_study};
use dffv_core::TimeIntegrator;

#[derive(Parser)]
#[command(name = "dffv", version, about = "Dual-formulation finite-volume solver for the Euler equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one case and write its solution files.
    Run(RunArgs),
    /// Error table and observed rates over successively refined meshes.
    Convergence {
        #[command(flatten)]
        run: RunArgs,
        /// Number of resolutions, each twice the previous one.
        #[arg(long, default_value_t = 3)]
        levels: u32,
    },
    /// Run the acceptance suite.
    Accept {
        /// Also write the outcomes as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List the available cases.
    Cases,
}

#[derive(Args)]
struct RunArgs {
    /// Case name; see `dffv cases`.
    case: Option<String>,
    /// TOML file with defaults for any of the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Cells in x; y follows the aspect ratio of the case.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    no_post_processing: bool,
    #[arg(long)]
    no_anti_diffusion: bool,
    #[arg(long, value_parser = parse_integrator)]
    integrator: Option<TimeIntegrator>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Write the fields every this many steps as well.
    #[arg(long)]
    snapshot_interval: Option<usize>,
    /// Write a schlieren raster of the final density (2-D cases).
    #[arg(long)]
    schlieren: bool,
}

fn parse_integrator(s: &str) -> Result<TimeIntegrator, String> {
    match s {
        "ssprk3" => Ok(TimeIntegrator::Ssprk3),
        "forward_euler" => Ok(TimeIntegrator::ForwardEuler),
        _ => Err(format!("unknown integrator `{s}` (ssprk3 | forward_euler)")),
    }
}

impl RunArgs {
    fn resolve(self) -> anyhow::Result<RunConfig> {
        let file = match &self.config {
            Some(path) => Overrides::from_file(path)?,
            None => Overrides::default(),
        };
        let flags = Overrides {
            case: self.case,
            n: self.n,
            nx: self.nx,
            ny: self.ny,
            t_final: self.t_final,
            theta: self.theta,
            cfl: self.cfl,
            post_processing: self.no_post_processing.then_some(false),
            anti_diffusion: self.no_anti_diffusion.then_some(false),
            integrator: self.integrator,
            out: self.out,
            format: self.format,
            snapshot_interval: self.snapshot_interval,
            schlieren: self.schlieren.then_some(true),
        };
        Ok(RunConfig::resolve(flags.over(file))?)
    }
}

fn init_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = value.parse().with_context(|| format!("{THREADS_VAR}={value} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let config = args.resolve()?;
    let summary = execute(&config)?;
    println!(
        "{}: {} steps to t = {}; wrote {} files to {}",
        config.case,
        summary.log.step_count(),
        summary.solution.time(),
        summary.files.len() + 1,
        config.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn convergence(args: RunArgs, levels: u32) -> anyhow::Result<ExitCode> {
    let base_n = args.n;
    let config = args.resolve()?;
    let spec = config.spec()?;
    let base = base_n.unwrap_or(spec.nx / 2);
    let resolutions: Vec<usize> = (0..levels).map(|k| base << k).collect();
    let mut spec = spec;
    spec.t_final = config.t_final;
    let report = convergence_study(&spec, &resolutions, config.params)?;
    print!("{}", report.table());

    std::fs::create_dir_all(&config.out)?;
    let path = config.out.join(format!("{}_convergence.csv", config.case));
    let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
    let header: Vec<String> = report.columns.iter().flat_map(|c| [c.clone(), format!("{c} rate")]).collect();
    writeln!(w, "N,{}", header.join(","))?;
    for ((n, errors), rates) in report.resolutions.iter().zip(&report.errors).zip(report.rates()) {
        let cells: Vec<String> = errors
            .iter()
            .zip(rates)
            .map(|(e, r)| format!("{e:.16e},{}", r.map(|r| format!("{r:.16e}")).unwrap_or_default()))
            .collect();
        writeln!(w, "{n},{}", cells.join(","))?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn accept(report: Option<PathBuf>) -> anyhow::Result<ExitCode> {
    let outcomes = run_suite(|o| println!("{}", o.line()));
    if let Some(path) = report {
        let entries: Vec<ReportEntry> = outcomes.iter().map(ReportEntry::from).collect();
        write_json(&path, &entries)?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match cli.command {
        Command::Run(args) => run(args),
        Command::Convergence { run, levels } => convergence(run, levels),
        Command::Accept { report } => accept(report),
        Command::Cases => {
            for c in case_registry() {
                println!("{:<20} {}", c.name, c.description);
            }
            Ok(ExitCode::SUCCESS)
        }
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
