//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success, 1 numerical blow-up, 2 usage or configuration
//! error, 3 I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::error::Error;
use crate::experiments::{
    emit_csv, emit_svg_plot, gen_rough_data, halving, run_convergence, run_mass_drift,
    run_trajectory, step_plan, ConvergenceTable, RoughDataSpec, Study,
};
use crate::schemes::{Nonlinearity, Scheme, SchemeConfig};
use crate::spectral::SpectralField;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BLOW_UP: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error(transparent)]
    Run(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Clap(e) => e.exit_code(),
            CliError::Run(e) if e.is_blow_up() => EXIT_BLOW_UP,
            CliError::Run(e) if e.is_io() => EXIT_IO,
            CliError::Run(_) => EXIT_USAGE,
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

#[derive(Debug, Parser)]
#[command(name = "nls-lri", version, about = "Low-regularity integrators for the cubic NLS on the torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate rough initial data and write it as JSON.
    GenData {
        #[command(flatten)]
        data: DataArgs,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve one initial datum with one scheme.
    Solve {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Time step.
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value = "lri")]
        scheme: String,
        /// Read the initial datum from a JSON field file instead of generating it.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Final field as JSON (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Error-versus-step-size sweep against the RK4 reference.
    Converge {
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Mass-drift-versus-step-size sweep.
    MassDrift {
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Grid size, a power of two.
    #[arg(long, default_value_t = 256)]
    n: usize,
    /// Regularity of the generated data.
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long = "t-final", default_value_t = 1.0)]
    t_final: f64,
    /// Sign of the cubic term, -1 or 1.
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    lambda: i64,
    /// Error norm exponent; defaults to --gamma.
    #[arg(long = "norm-gamma")]
    norm_gamma: Option<f64>,
    /// Evaluate nonlinear terms on a zero-padded grid (default).
    #[arg(long, overrides_with = "no_dealias")]
    dealias: bool,
    /// Evaluate nonlinear terms on the computational grid.
    #[arg(long = "no-dealias", overrides_with = "dealias")]
    no_dealias: bool,
    /// Report zero wall times so outputs are byte-reproducible.
    #[arg(long = "no-timing")]
    no_timing: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// Step sizes as start:stop:half, e.g. 2^-6:2^-12:half or 1e-2:1e-3:half.
    #[arg(long)]
    taus: String,
    /// Comma-separated scheme list.
    #[arg(long, default_value = "lri,nlri")]
    schemes: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Log-log plot of the sweep.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    GenData,
    Solve,
    Converge,
    MassDrift,
}

/// Validated invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub action: Action,
    pub n: usize,
    pub tau: Option<f64>,
    pub taus: Vec<f64>,
    pub t_final: f64,
    pub gamma: f64,
    pub norm_gamma: f64,
    pub lambda: Nonlinearity,
    pub schemes: Vec<Scheme>,
    pub seed: u64,
    pub dealias: bool,
    pub timing: bool,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

impl CliConfig {
    fn defaults(action: Action, data: DataArgs) -> Self {
        CliConfig {
            action,
            n: data.n,
            tau: None,
            taus: Vec::new(),
            t_final: 1.0,
            gamma: data.gamma,
            norm_gamma: data.gamma,
            lambda: Nonlinearity::Defocusing,
            schemes: vec![Scheme::Lri, Scheme::Nlri],
            seed: data.seed,
            dealias: true,
            timing: true,
            input: None,
            out: None,
            plot: None,
        }
    }

    fn apply_model(&mut self, model: ModelArgs) -> Result<(), CliError> {
        if !(model.t_final >= 0.0 && model.t_final.is_finite()) {
            return Err(usage(format!("--t-final must be non-negative, got {}", model.t_final)));
        }
        self.t_final = model.t_final;
        self.lambda = Nonlinearity::try_from(model.lambda)
            .map_err(|_| usage(format!("--lambda must be -1 or 1, got {}", model.lambda)))?;
        self.norm_gamma = model.norm_gamma.unwrap_or(self.gamma);
        if self.norm_gamma.is_nan() || self.norm_gamma < 0.0 {
            return Err(usage(format!("--norm-gamma must be non-negative, got {}", self.norm_gamma)));
        }
        self.dealias = model.dealias || !model.no_dealias;
        self.timing = !model.no_timing;
        Ok(())
    }
}

/// Parses a number, also accepting `base^exponent` such as `2^-6`.
pub fn parse_real(text: &str) -> Option<f64> {
    let text = text.trim();
    match text.split_once('^') {
        Some((base, exp)) => Some(base.trim().parse::<f64>().ok()?.powf(exp.trim().parse().ok()?)),
        None => text.parse().ok(),
    }
}

/// Expands `start:stop:half` into `start, start/2, …` down to `≥ stop`.
pub fn parse_range(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || usage(format!("--taus: expected start:stop:half (e.g. 2^-6:2^-12:half), got '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, rule] = parts.as_slice() else {
        return Err(bad());
    };
    if rule.trim() != "half" {
        return Err(bad());
    }
    let (start, stop) = (parse_real(start).ok_or_else(bad)?, parse_real(stop).ok_or_else(bad)?);
    if !(start > 0.0 && stop > 0.0 && start.is_finite()) {
        return Err(usage(format!("--taus: step sizes must be positive, got '{spec}'")));
    }
    let taus = halving(start, stop);
    if taus.len() < 3 {
        return Err(usage(format!(
            "--taus: '{spec}' gives {} step sizes; an order fit needs at least 3",
            taus.len()
        )));
    }
    Ok(taus)
}

fn parse_schemes(list: &str) -> Result<Vec<Scheme>, CliError> {
    let schemes = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Scheme>().map_err(|e| usage(format!("--schemes: {}", e))))
        .collect::<Result<Vec<_>, _>>()?;
    if schemes.is_empty() {
        return Err(usage("--schemes: list is empty"));
    }
    Ok(schemes)
}

fn check_data(data: &DataArgs) -> Result<(), CliError> {
    if data.n < 4 || !data.n.is_multiple_of(2) {
        return Err(usage(format!("--n must be an even number of at least 4, got {}", data.n)));
    }
    if !(data.gamma >= 0.0 && data.gamma.is_finite()) {
        return Err(usage(format!("--gamma must be non-negative, got {}", data.gamma)));
    }
    Ok(())
}

/// Parses `argv` (including the program name) into a validated config.
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    match cli.command {
        Command::GenData { data, out } => {
            check_data(&data)?;
            let mut cfg = CliConfig::defaults(Action::GenData, data);
            cfg.out = out;
            Ok(cfg)
        }
        Command::Solve {
            data,
            model,
            tau,
            scheme,
            input,
            out,
        } => {
            check_data(&data)?;
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(usage(format!("--tau must be positive, got {tau}")));
            }
            let mut cfg = CliConfig::defaults(Action::Solve, data);
            cfg.apply_model(model)?;
            cfg.tau = Some(tau);
            cfg.schemes = vec![scheme
                .parse::<Scheme>()
                .map_err(|e| usage(format!("--scheme: {e}")))?];
            cfg.input = input;
            cfg.out = out;
            Ok(cfg)
        }
        Command::Converge { sweep } => sweep_config(Action::Converge, sweep),
        Command::MassDrift { sweep } => sweep_config(Action::MassDrift, sweep),
    }
}

fn sweep_config(action: Action, sweep: SweepArgs) -> Result<CliConfig, CliError> {
    check_data(&sweep.data)?;
    let mut cfg = CliConfig::defaults(action, sweep.data);
    cfg.apply_model(sweep.model)?;
    if cfg.t_final == 0.0 {
        return Err(usage("--t-final must be positive for a sweep"));
    }
    cfg.taus = parse_range(&sweep.taus)?;
    cfg.schemes = parse_schemes(&sweep.schemes)?;
    cfg.out = sweep.out;
    cfg.plot = sweep.plot;
    Ok(cfg)
}

fn initial_data(cfg: &CliConfig) -> Result<SpectralField, Error> {
    match &cfg.input {
        Some(path) => SpectralField::read_json(path),
        None => gen_rough_data(&RoughDataSpec::new(cfg.n, cfg.gamma, cfg.seed)?),
    }
}

fn base_config(cfg: &CliConfig, u0: &SpectralField, tau: f64) -> Result<SchemeConfig, Error> {
    Ok(SchemeConfig::for_initial_data(cfg.schemes[0], tau, cfg.lambda, u0)?.with_dealias(cfg.dealias))
}

fn write_field(field: &SpectralField, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => field.write_json(path),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{}", field.to_json()).map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn describe_fits(tables: &[ConvergenceTable], what: &str) -> String {
    let mut line = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            line.push_str(", ");
        }
        match t.fit {
            Some(fit) => {
                let _ = write!(line, "{} {what} {:.3} (residual {:.2e})", t.scheme, fit.order, fit.residual);
            }
            None => {
                let _ = write!(line, "{} {what} n/a", t.scheme);
            }
        }
    }
    line
}

/// Executes a parsed config and returns the one-line summary.
pub fn run(cfg: &CliConfig) -> Result<String, Error> {
    match cfg.action {
        Action::GenData => {
            let u = gen_rough_data(&RoughDataSpec::new(cfg.n, cfg.gamma, cfg.seed)?)?;
            write_field(&u, cfg.out.as_ref())?;
            Ok(format!(
                "gen-data n={} gamma={} seed={}: mass {:.6e}, H^{} norm {:.6e}",
                cfg.n,
                cfg.gamma,
                cfg.seed,
                u.mass(),
                cfg.gamma,
                u.sobolev_norm(cfg.gamma)
            ))
        }
        Action::Solve => {
            let tau = cfg.tau.expect("solve always carries a step");
            let u0 = initial_data(cfg)?;
            let scheme_cfg = base_config(cfg, &u0, tau)?;
            let (u, record) = run_trajectory(&u0, &scheme_cfg, cfg.t_final, true)?;
            let study = Study::new(u0, cfg.seed, cfg.t_final, scheme_cfg);
            let reference = study.reference(record.tau)?;
            let error = (&u - &reference).sobolev_norm(cfg.norm_gamma);
            write_field(&u, cfg.out.as_ref())?;
            let (steps, _) = step_plan(cfg.t_final, tau);
            Ok(format!(
                "solve {} tau={:e} steps={} T={}: H^{} error {:.6e}, mass drift {:.3e}",
                record.scheme, record.tau, steps, cfg.t_final, cfg.norm_gamma, error, record.mass_drift
            ))
        }
        Action::Converge | Action::MassDrift => {
            let u0 = initial_data(cfg)?;
            let base = base_config(cfg, &u0, cfg.taus[0])?;
            let study = Study::new(u0, cfg.seed, cfg.t_final, base);
            let mut tables = if cfg.action == Action::Converge {
                run_convergence(&study, &cfg.schemes, &cfg.taus, cfg.norm_gamma)?
            } else {
                run_mass_drift(&study, &cfg.schemes, &cfg.taus)?
            };
            if !cfg.timing {
                for record in tables.iter_mut().flat_map(|t| t.records.iter_mut()) {
                    record.wall_time = 0.0;
                }
            }
            if let Some(path) = &cfg.out {
                emit_csv(&tables, path)?;
            }
            let (name, what, slopes) = if cfg.action == Action::Converge {
                ("converge", "order", vec![1.0, 2.0])
            } else {
                ("mass-drift", "drift slope", vec![5.0])
            };
            if let Some(path) = &cfg.plot {
                emit_svg_plot(&tables, path, &slopes)?;
            }
            Ok(format!(
                "{name} n={} seed={} T={} taus={:e}..{:e}: {}",
                cfg.n,
                cfg.seed,
                cfg.t_final,
                cfg.taus[0],
                cfg.taus[cfg.taus.len() - 1],
                describe_fits(&tables, what)
            ))
        }
    }
}

/// Parses, runs and reports; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = parse_args(argv).and_then(|cfg| {
        let summary = run(&cfg)?;
        // With the field on stdout the summary moves to stderr.
        let field_on_stdout = matches!(cfg.action, Action::GenData | Action::Solve) && cfg.out.is_none();
        if field_on_stdout {
            eprintln!("{summary}");
        } else {
            println!("{summary}");
        }
        Ok(())
    });
    match outcome {
        Ok(()) => EXIT_OK,
        Err(CliError::Clap(e)) if e.exit_code() == 0 => {
            let _ = e.print();
            EXIT_OK
        }
        Err(CliError::Clap(e)) => {
            let rendered = e.render().to_string();
            let line = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
            eprintln!("{line} (see --help)");
            e.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
