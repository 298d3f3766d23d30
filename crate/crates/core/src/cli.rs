//! Command-line front end.
//!
//! Exit status: 0 success, 1 usage, config, I/O or internal error, 2 failed
//! corona or separation hypothesis.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::RunConfig;
use crate::dbar::DiscCauchySolver;
use crate::demos::Demo;
use crate::error::{CliError, IoError};
use crate::grid::PolarGrid;
use crate::io::{read_field, write_field, write_report};
use crate::pipeline::{solve_corona, verify_solution, CoronaSolution};
use crate::spec::format_real;

pub const SWEEP_HEADER: &str = "resolution,residual_sup,max_holo_defect,solver_sup_ratio";

#[derive(Debug, Parser)]
#[command(name = "corona", version, about = "Numerical corona solver on the unit disc")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a corona problem and write report.txt.
    Solve {
        #[arg(long, conflicts_with = "demo", required_unless_present = "demo")]
        config: Option<PathBuf>,
        #[arg(long)]
        demo: Option<Demo>,
        /// Output directory, overriding `output_dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write h_<j>.csv, rho_<j>.csv and g_<j>.csv.
        #[arg(long)]
        dump_fields: bool,
    },
    /// Re-verify h_<j>.csv dumps against a config.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        fields: PathBuf,
    },
    /// Solve at several resolutions and write sweep.csv.
    Sweep {
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        demo: Option<Demo>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated `n_rxn_theta` list, e.g. 64x128,128x256.
        #[arg(long)]
        resolutions: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(config: Option<&Path>, demo: Option<Demo>) -> Result<RunConfig, CliError> {
    match (config, demo) {
        (Some(path), _) => Ok(RunConfig::load(path)?),
        (None, Some(d)) => Ok(RunConfig::for_demo(d)),
        (None, None) => Err(CliError::Usage("need --config or --demo".into())),
    }
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| {
        CliError::Io(IoError::Io {
            path: dir.to_path_buf(),
            source,
        })
    })
}

fn dump_solution(dir: &Path, sol: &CoronaSolution) -> Result<(), CliError> {
    for (j, ((h, rho), g)) in sol.h.iter().zip(&sol.pou.rho).zip(&sol.smooth.g).enumerate() {
        let i = j + 1;
        write_field(&dir.join(format!("h_{i}.csv")), h)?;
        write_field(&dir.join(format!("rho_{i}.csv")), rho)?;
        write_field(&dir.join(format!("g_{i}.csv")), g)?;
    }
    Ok(())
}

pub fn cmd_solve(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let p = cfg.problem()?;
    let sol = solve_corona(&p, &DiscCauchySolver::default(), &cfg.solve_config())?;
    create_dir(&cfg.output_dir)?;
    write_report(&cfg.output_dir.join("report.txt"), &sol.report)?;
    if cfg.dump_fields {
        dump_solution(&cfg.output_dir, &sol)?;
    }
    let _ = stdout.write_all(sol.report.to_text().as_bytes());
    Ok(())
}

pub fn cmd_verify(cfg: &RunConfig, fields: &Path, stdout: &mut dyn Write) -> Result<(), CliError> {
    let p = cfg.problem()?;
    let h = (1..=p.m())
        .map(|j| read_field(&fields.join(format!("h_{j}.csv")), p.grid()))
        .collect::<Result<Vec<_>, _>>()?;
    let v = verify_solution(&p, &h, cfg.r_int)?;
    let _ = write!(stdout, "m = {}\nn_r = {}\nn_theta = {}\n{}", p.m(), cfg.n_r, cfg.n_theta, v.to_text());
    Ok(())
}

/// Parses `64x128,128x256,...`; at least two entries.
pub fn parse_resolutions(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let list = text
        .split(',')
        .map(|item| {
            let item = item.trim();
            let parsed = item
                .split_once('x')
                .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)));
            parsed.ok_or_else(|| CliError::Usage(format!("bad resolution `{item}`, expected NRxNTHETA")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if list.len() < 2 {
        return Err(CliError::Usage("a sweep needs at least two resolutions".into()));
    }
    Ok(list)
}

/// One CSV row per resolution; a failing row records its error and the sweep
/// continues.
pub fn sweep_table(cfg: &RunConfig, resolutions: &[(usize, usize)]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for &(n_r, n_theta) in resolutions {
        let row = cfg
            .problem_at(n_r, n_theta)
            .and_then(|p| solve_corona(&p, &DiscCauchySolver::default(), &cfg.solve_config()));
        match row {
            Ok(sol) => {
                let r = &sol.report;
                let _ = writeln!(
                    out,
                    "{n_r}x{n_theta},{},{},{}",
                    format_real(r.verification.residual_sup),
                    format_real(r.verification.max_holo_defect()),
                    format_real(r.correction.solver.operator_ratio())
                );
            }
            Err(e) => {
                let msg = e.to_string().replace([',', '\n'], ";");
                let _ = writeln!(out, "{n_r}x{n_theta},error: {msg},,");
            }
        }
    }
    out
}

pub fn cmd_sweep(
    cfg: &RunConfig,
    resolutions: &[(usize, usize)],
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let table = sweep_table(cfg, resolutions);
    create_dir(&cfg.output_dir)?;
    let path = cfg.output_dir.join("sweep.csv");
    fs::write(&path, &table).map_err(|source| CliError::Io(IoError::Io { path, source }))?;
    let _ = stdout.write_all(table.as_bytes());
    Ok(())
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            config,
            demo,
            out,
            dump_fields,
        } => {
            let mut cfg = load_config(config.as_deref(), demo)?;
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            cfg.dump_fields |= dump_fields;
            cmd_solve(&cfg, stdout)
        }
        Command::Verify { config, fields } => cmd_verify(&RunConfig::load(&config)?, &fields, stdout),
        Command::Sweep {
            demo,
            config,
            resolutions,
            out,
        } => {
            let list = parse_resolutions(&resolutions)?;
            for &(n_r, n_theta) in &list {
                PolarGrid::new(n_r, n_theta)
                    .map_err(|e| CliError::Usage(format!("resolution {n_r}x{n_theta}: {e}")))?;
            }
            let mut cfg = load_config(config.as_deref(), demo)?;
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            cmd_sweep(&cfg, &list, stdout)
        }
    }
}

/// Runs the CLI and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let code = e.exit_code();
            if code == 2 {
                let _ = writeln!(stderr, "hypothesis failure: {e}");
            } else {
                let _ = writeln!(stderr, "error: {e}");
            }
            code
        }
    }
}
