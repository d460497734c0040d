//! Command-line driver for the de Sitter Klein-Gordon solver.
//!
//! Subcommands: `solve` (sample Φ over a grid), `huygens` (tail mass sweep),
//! `asympt` (large-time expansion residual fit), `compare` (representation
//! vs finite-difference oracle). Deterministic: identical configuration
//! gives byte-identical output. Exit codes: 0 success, 2 configuration
//! error, 3 numerical failure.

mod config;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dskg::desitter::{sample_grid, solve_at_radius};
use dskg::fdref::{fd_solve, FdConfig};
use dskg::huygens::{mass_sweep, DatumMode};
use dskg::kernels::MassParams;
use dskg::{CauchyProblem, Error};

use config::{Format, RunConfig};

#[derive(Parser)]
#[command(name = "dskg", version, about = "Klein-Gordon field on an expanding background")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample the solution over an (r, t) grid.
    Solve(CommonArgs),
    /// Tail measurements across a list of masses.
    Huygens(CommonArgs),
    /// Fit the residual decay of the large-time expansion at the knot mass.
    Asympt(CommonArgs),
    /// Compare the representation solver against the finite-difference oracle.
    Compare(CommonArgs),
}

/// Flags mirror the config-file keys; flags win.
#[derive(Args)]
struct CommonArgs {
    /// Key=value config file applied before the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Spatial dimension.
    #[arg(long)]
    n: Option<u32>,
    /// Physical mass.
    #[arg(long)]
    mass: Option<f64>,
    /// Comma-separated masses for the sweep (huygens).
    #[arg(long)]
    masses: Option<String>,
    /// Datum shape: bump | gaussian_trunc.
    #[arg(long)]
    profile: Option<String>,
    /// Support radius (must be < 1).
    #[arg(long)]
    radius: Option<f64>,
    /// Bump power.
    #[arg(long)]
    power: Option<u32>,
    /// Gaussian width parameter.
    #[arg(long)]
    alpha: Option<f64>,
    /// Largest sampled radius (solve/compare).
    #[arg(long)]
    rmax: Option<f64>,
    /// Number of radial samples.
    #[arg(long)]
    rsteps: Option<usize>,
    /// Smallest sampled time.
    #[arg(long)]
    tmin: Option<f64>,
    /// Largest sampled time.
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of time samples.
    #[arg(long)]
    tsteps: Option<usize>,
    /// Output format: csv | json.
    #[arg(long)]
    format: Option<String>,
    /// Zero the second datum (incomplete-Huygens mode).
    #[arg(long)]
    first_datum_only: bool,
    /// Cone-exit margin for tail measurements.
    #[arg(long)]
    margin: Option<f64>,
    /// Expansion truncation order N.
    #[arg(long)]
    order: Option<usize>,
    /// Sample radius for the expansion experiment.
    #[arg(long)]
    xoff: Option<f64>,
    /// Oracle grid spacing (compare).
    #[arg(long)]
    dr: Option<f64>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the resolved configuration (config file + flags) and exit.
    #[arg(long)]
    print_config: bool,
}

impl CommonArgs {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)?;
            cfg.apply_kv(&text)?;
        }
        macro_rules! flag {
            ($field:ident) => {
                if let Some(v) = &self.$field {
                    cfg.set(stringify!($field), &v.to_string())?;
                }
            };
        }
        flag!(n);
        flag!(mass);
        flag!(masses);
        flag!(profile);
        flag!(radius);
        flag!(power);
        flag!(alpha);
        flag!(rmax);
        flag!(rsteps);
        flag!(tmin);
        flag!(tmax);
        flag!(tsteps);
        flag!(format);
        flag!(margin);
        flag!(order);
        flag!(xoff);
        flag!(dr);
        if self.first_datum_only {
            cfg.first_datum_only = true;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn emit(&self, content: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => std::fs::write(path, content)?,
            None => print!("{content}"),
        }
        Ok(())
    }
}

fn build_problem(cfg: &RunConfig) -> Result<CauchyProblem, Error> {
    let mp = MassParams::new(cfg.n, cfg.mass)?;
    let datum = cfg.build_profile()?;
    let phi1 = if cfg.first_datum_only { None } else { Some(datum.clone()) };
    CauchyProblem::new(mp, Some(datum), phi1)
}

fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| from + (to - from) * i as f64 / steps as f64).collect()
}

fn cmd_solve(args: &CommonArgs) -> Result<(), Error> {
    let cfg = args.resolve()?;
    let pb = build_problem(&cfg)?;
    let rs = linspace(0.0, cfg.rmax, cfg.rsteps);
    let ts = linspace(cfg.tmin, cfg.tmax, cfg.tsteps);
    let field = sample_grid(&pb, &rs, &ts)?;
    let content = match cfg.format {
        Format::Csv => {
            let mut s = String::from("x_or_r,t,phi,method\n");
            for sample in &field.samples {
                let _ = writeln!(
                    s,
                    "{:.16e},{:.16e},{:.16e},{}",
                    sample.r, sample.t, sample.phi, field.method
                );
            }
            s
        }
        Format::Json => {
            serde_json::to_string_pretty(&field).map_err(|e| Error::Config(e.to_string()))? + "\n"
        }
    };
    args.emit(&content)
}

fn cmd_huygens(args: &CommonArgs) -> Result<(), Error> {
    let cfg = args.resolve()?;
    let masses = if cfg.masses.is_empty() {
        vec![0.0, 1.0, MassParams::top_knot_mass(cfg.n), 2.0, 3.0]
    } else {
        cfg.masses.clone()
    };
    let mode = if cfg.first_datum_only { DatumMode::FirstDatumOnly } else { DatumMode::Full };
    let exit = -(1.0 - cfg.radius - cfg.margin).ln();
    let grid = linspace(exit + 0.2, cfg.tmax.max(exit + 1.0), cfg.tsteps);
    let reports = mass_sweep(cfg.n, &masses, cfg.radius, cfg.power, mode, &grid, cfg.margin)?;
    let content = match cfg.format {
        Format::Json => dskg::huygens::reports_to_json(&reports)? + "\n",
        Format::Csv => {
            let mut s = String::from("mass,t,tail_abs,tail_rel\n");
            for report in &reports {
                for &(t, a) in &report.tail_samples {
                    let _ = writeln!(
                        s,
                        "{:.16e},{:.16e},{:.16e},{:.16e}",
                        report.mp.m, t, a, a / report.data_norm
                    );
                }
            }
            s
        }
    };
    args.emit(&content)
}

fn cmd_asympt(args: &CommonArgs) -> Result<(), Error> {
    let cfg = args.resolve()?;
    let mp = MassParams::new(cfg.n, MassParams::top_knot_mass(cfg.n))?;
    let datum = cfg.build_profile()?;
    let pb = CauchyProblem::new(mp, Some(datum.clone()), Some(datum))?;
    let t_list = linspace(cfg.tmin.max(3.0), cfg.tmax.max(6.0), cfg.tsteps);
    let fit = dskg::asymptotics::decay_fit(&pb, cfg.xoff, cfg.order, &t_list)?;
    let expected = -(cfg.order as f64 + 0.5 * (cfg.n as f64 - 1.0));
    let content = match cfg.format {
        Format::Csv => {
            let mut s = dskg::asymptotics::fit_to_csv(&fit);
            let _ = writeln!(
                s,
                "# fitted_rate = {:.6}, expected = {:.6}, amplitude = {:.6e}, excluded = {}",
                fit.rate, expected, fit.c, fit.excluded
            );
            s
        }
        Format::Json => {
            format!(
                "{{\n  \"order\": {},\n  \"fitted_rate\": {:.12},\n  \"expected_rate\": {:.12},\n  \"amplitude\": {:.12e},\n  \"excluded\": {}\n}}\n",
                cfg.order, fit.rate, expected, fit.c, fit.excluded
            )
        }
    };
    args.emit(&content)
}

fn cmd_compare(args: &CommonArgs) -> Result<(), Error> {
    let cfg = args.resolve()?;
    let pb = build_problem(&cfg)?;
    let datum = cfg.build_profile()?;
    let fd_cfg = FdConfig {
        n: cfg.n,
        m: cfg.mass,
        r_max: cfg.radius + 1.0 + 0.3,
        dr: cfg.dr,
        dt: 0.8 * cfg.dr,
        t_max: cfg.tmax + 0.1,
    };
    let ev0 = |r: f64| datum.eval(r);
    let field = if cfg.first_datum_only {
        fd_solve(&fd_cfg, &ev0, &|_| 0.0, None)?
    } else {
        fd_solve(&fd_cfg, &ev0, &ev0, None)?
    };
    let rs = linspace(0.0, cfg.rmax, cfg.rsteps);
    let ts = linspace(cfg.tmin, cfg.tmax, cfg.tsteps);
    let mut rows = String::from("r,t,phi_rep,phi_fd,abs_err\n");
    let mut max_err: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &t in &ts {
        for &r in &rs {
            let rep = solve_at_radius(&pb, r, t)?.0;
            let fd = field.probe(r, t)?;
            max_err = max_err.max((rep - fd).abs());
            scale = scale.max(fd.abs());
            let _ = writeln!(
                rows,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r,
                t,
                rep,
                fd,
                (rep - fd).abs()
            );
        }
    }
    let rel = max_err / scale.max(1e-300);
    let content = match cfg.format {
        Format::Csv => {
            let _ = writeln!(rows, "# linf_abs = {max_err:.6e}, linf_rel = {rel:.6e}");
            rows
        }
        Format::Json => format!(
            "{{\n  \"n\": {},\n  \"mass\": {},\n  \"linf_abs\": {:.12e},\n  \"linf_rel\": {:.12e}\n}}\n",
            cfg.n, cfg.mass, max_err, rel
        ),
    };
    args.emit(&content)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.cmd {
        Cmd::Solve(a) | Cmd::Huygens(a) | Cmd::Asympt(a) | Cmd::Compare(a) => a,
    };
    if common.print_config {
        return match common.resolve() {
            Ok(cfg) => {
                print!("{}", cfg.to_kv());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let result = match &cli.cmd {
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Huygens(args) => cmd_huygens(args),
        Cmd::Asympt(args) => cmd_asympt(args),
        Cmd::Compare(args) => cmd_compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Config(_) | Error::SupportTooLarge(_) | Error::Io(_) => 2,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}
