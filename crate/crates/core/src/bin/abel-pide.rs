use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abel_pide::config::{parse_experiment, ConfigError};
use abel_pide::csvio::write_columns;
use abel_pide::experiments::{
    converge_space, converge_time, crossover, crossover_exponent, kernel_compare, kernel_family_compare,
    parameter_study, write_convergence_csv, write_probe_runs, ConvergenceRow, ExperimentConfig, ExperimentKind,
};
use abel_pide::kernel::{kernel_table, write_kernel_table, KernelFamily, Spacing};
use abel_pide::stepper::{simulate, write_probe_csv};
use abel_pide::{Error, Execution};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "abel-pide",
    version,
    about = "Variable-exponent Abel kernel PIDE experiments"
)]
struct Cli {
    /// Experiment config (dotted `key = value` TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV files.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Absolute tolerance of the memory-weight quadrature.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Tabulate the configured kernel and the comparison curves.
    Kernel,
    /// Run one simulation and write the trajectory and a midpoint probe.
    Solve,
    /// Temporal convergence table `N,E2,rate`.
    ConvergeTime,
    /// Spatial convergence table `M,F2,rate`.
    ConvergeSpace,
    /// Probe histories for the exponent and viscosity sweeps.
    Params,
    /// Probe histories under k, k0 and kinf with their gaps.
    Crossover,
}

impl Command {
    fn kind(self) -> ExperimentKind {
        match self {
            Command::Kernel => ExperimentKind::KernelCompare,
            Command::Solve => ExperimentKind::Solve,
            Command::ConvergeTime => ExperimentKind::ConvergeTime,
            Command::ConvergeSpace => ExperimentKind::ConvergeSpace,
            Command::Params => ExperimentKind::ParameterStudy,
            Command::Crossover => ExperimentKind::Crossover,
        }
    }
}

enum Failure {
    Config(ConfigError),
    Solver(Error),
    Output(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Output(e)
    }
}

fn load(cli: &Cli) -> Result<ExperimentConfig, ConfigError> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path)?,
        None => String::new(),
    };
    let mut cfg = parse_experiment(&text, cli.command.kind())?;
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol <= 1e-8) {
            return Err(ConfigError::BadValue {
                key: "--tol".into(),
                msg: format!("{tol} not in (0, 1e-8]"),
            });
        }
        cfg.tol = tol;
    }
    Ok(cfg)
}

fn create(dir: &Path, name: &str) -> std::io::Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn print_table(level: &str, error: &str, rows: &[ConvergenceRow]) {
    println!("{level:>6}  {error:>12}  rate");
    for r in rows {
        let rate = r.rate.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
        println!("{:>6}  {:>12.4e}  {rate}", r.level, r.error);
    }
}

fn run(cli: &Cli, cfg: &ExperimentConfig, exec: Execution) -> Result<(), Failure> {
    let out = cli.out.as_path();
    std::fs::create_dir_all(out)?;
    let base = &cfg.base;
    match cli.command {
        Command::Kernel => {
            let kernel = base.kernel.validated()?;
            let t_max = match kernel {
                KernelFamily::Multiscale(s) | KernelFamily::ShortAsymptote(s) | KernelFamily::LongAsymptote(s) => {
                    s.horizon().min(1e6)
                }
                _ => 1e6,
            };
            let table = kernel_table(&kernel, 1e-6, t_max, 241, Spacing::Log)?;
            write_kernel_table(create(out, "kernel_table.csv")?, &table)?;
            let (header, cols) = kernel_compare(crossover_exponent(), 0.3, 1e-6, 1e6, 241)?;
            write_columns(create(out, "kernel_compare.csv")?, &header, &cols)?;
            let (header, cols) = kernel_family_compare(&[0.1, 1.0, 10.0], 1e-6, 1e6, 241)?;
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            write_columns(create(out, "kernel_family.csv")?, &header, &cols)?;
            println!("wrote kernel_table.csv, kernel_compare.csv, kernel_family.csv");
        }
        Command::Solve => {
            let traj = simulate(base, cfg.tol, exec)?;
            traj.write_csv(create(out, "trajectory.csv")?)?;
            let x = cfg.probe_point();
            write_probe_csv(create(out, "probe.csv")?, &traj.probe_series(x)?)?;
            println!("final-time norm {:.6e}; probe at x = {x}", traj.norm(base.steps));
        }
        Command::ConvergeTime => {
            let rows = converge_time(base, &cfg.levels, cfg.tol, exec)?;
            write_convergence_csv(create(out, "converge_time.csv")?, "N", "E2", &rows)?;
            print_table("N", "E2", &rows);
        }
        Command::ConvergeSpace => {
            let rows = converge_space(base, &cfg.levels, cfg.tol, exec)?;
            write_convergence_csv(create(out, "converge_space.csv")?, "M", "F2", &rows)?;
            print_table("M", "F2", &rows);
        }
        Command::Params => {
            let runs = parameter_study(cfg, exec)?;
            write_probe_runs(out, "params_", &runs)?;
            for r in &runs {
                println!("{:>12}  max|u| = {:.6e}", r.label, r.max_abs());
            }
        }
        Command::Crossover => {
            let spec = match base.kernel {
                KernelFamily::Multiscale(s) | KernelFamily::ShortAsymptote(s) | KernelFamily::LongAsymptote(s) => s,
                _ => return Err(Error::InvalidParameter("crossover needs a variable-exponent kernel".into()).into()),
            };
            let x = cfg.probe_point();
            let rep = crossover(base, spec, x, cfg.tol, exec)?;
            for (name, u) in [
                ("crossover_k.csv", &rep.u_k),
                ("crossover_k0.csv", &rep.u_k0),
                ("crossover_kinf.csv", &rep.u_kinf),
            ] {
                let series: Vec<(f64, f64)> = rep.t.iter().copied().zip(u.iter().copied()).collect();
                write_probe_csv(create(out, name)?, &series)?;
            }
            write_columns(
                create(out, "crossover_gap.csv")?,
                &["t", "gap_k0", "gap_kinf"],
                &[rep.t.clone(), rep.gap_short(), rep.gap_long()],
            )?;
            println!("wrote crossover_k.csv, crossover_k0.csv, crossover_kinf.csv, crossover_gap.csv (x = {x})");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let result = load(&cli)
        .map_err(Failure::Config)
        .and_then(|cfg| run(&cli, &cfg, exec));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Solver(e)) => {
            eprintln!("solver error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Output(e)) => {
            eprintln!("output error: {e}");
            ExitCode::from(1)
        }
    }
}
