use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use mhd_blowup::algebra::Q;
use mhd_blowup::ansatz::{self, AnsatzParams, RadialAnsatz, ThetaAnsatz};
use mhd_blowup::catalog::{self, parse_rational, Family, FamilyParams, Form};
use mhd_blowup::mhd::SolutionBundle;
use mhd_blowup::numeric::{
    blowup_series, default_times, energy_on_ball, grid_convergence, log_log_rows, sample_fields,
    write_csv, BlowupSeries, SampleDomain,
};
use mhd_blowup::report::to_json;
use mhd_blowup::verify::verify;
use mhd_blowup::{Error, Result};

/// Environment variable naming the default output directory.
const OUT_DIR_ENV: &str = "MHD_BLOWUP_OUT_DIR";

/// Grid orders accepted by `converge`.
const ORDER_RANGE: (f64, f64) = (1.8, 2.2);

#[derive(Parser)]
#[command(
    name = "mhd-blowup",
    version,
    about = "Verify and diagnose explicit blowup solutions of 3D incompressible MHD"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symbolic residuals in both frames plus frame conversion; exit 1 on failure.
    Verify(Common),
    /// Derive the magnetic field from the velocity by exponent matching.
    Ansatz(Common),
    /// Sup-norm blowup rates and energy growth near T*.
    Diagnose(Common),
    /// Discrete residual orders on nested grids.
    Converge(Common),
    /// Field samples as CSV.
    Export(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Pretty JSON.
    Report,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "one")]
    family: Family,
    /// Navier-Stokes reduction (H = 0); requires abar = 0.
    #[arg(long)]
    nse: bool,
    /// Exact rationals as `num/den`; decimals are also accepted.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    abar: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tstar: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sample points.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Comma-separated cells per side, each double the previous.
    #[arg(long, default_value = "16,32,64")]
    grids: String,
    /// Cube `lo,hi` (default -2,2; 0.5,1.5 for converge).
    #[arg(long, allow_hyphen_values = true)]
    r#box: Option<String>,
    /// Radius of the ball used by diagnose.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Samples closer than this to the axis are skipped.
    #[arg(long, default_value_t = mhd_blowup::numeric::DEFAULT_R_MIN)]
    rmin: f64,
    /// Time for converge and export.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t: f64,
    /// Output file; otherwise a file in $MHD_BLOWUP_OUT_DIR, otherwise stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Command failure mapped to the exit-code contract.
enum Failure {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoSolution(_) => Failure::Verification(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Verify(c) => cmd_verify(c),
        Command::Ansatz(c) => cmd_ansatz(c),
        Command::Diagnose(c) => cmd_diagnose(c),
        Command::Converge(c) => cmd_converge(c),
        Command::Export(c) => cmd_export(c),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

impl Common {
    fn exact(&self, v: &Option<String>, default: i64) -> Result<Q> {
        match v {
            Some(s) => parse_rational(s),
            None => Ok(Q::from_integer(default.into())),
        }
    }

    /// Exact parameters; `abar` defaults to 0 for the Navier-Stokes reduction.
    fn params(&self) -> Result<FamilyParams> {
        Ok(FamilyParams::new(
            self.family,
            self.exact(&self.a, 1)?,
            self.exact(&self.abar, if self.nse { 0 } else { 1 })?,
            self.exact(&self.k, 1)?,
            self.exact(&self.tstar, 1)?,
        ))
    }

    /// The selected bundle, validated against its exclusions.
    fn bundle(&self, form: Form) -> Result<SolutionBundle> {
        let p = self.params()?.with_form(form);
        if self.nse {
            catalog::nse_family(self.family, &p)
        } else {
            catalog::family(&p)
        }
    }

    fn cube(&self, default: (f64, f64)) -> Result<(f64, f64)> {
        let Some(s) = &self.r#box else {
            return Ok(default);
        };
        let parts: Vec<&str> = s.split(',').collect();
        let bad = || Error::Param(format!("--box expects 'lo,hi', got '{s}'"));
        if parts.len() != 2 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        Ok((lo, hi))
    }

    fn grid_list(&self) -> Result<Vec<usize>> {
        self.grids
            .split(',')
            .map(|g| {
                g.trim()
                    .parse()
                    .map_err(|_| Error::Param(format!("bad grid size '{g}'")))
            })
            .collect()
    }

    fn stem(&self, command: &str) -> String {
        let nse = if self.nse { "_nse" } else { "" };
        format!("{command}_{}{nse}", self.family)
    }

    /// Where the main output goes; `None` means stdout.
    fn target(&self, command: &str, ext: &str) -> Option<PathBuf> {
        if let Some(p) = &self.out {
            return Some(p.clone());
        }
        std::env::var_os(OUT_DIR_ENV)
            .map(|dir| Path::new(&dir).join(format!("{}.{ext}", self.stem(command))))
    }
}

fn emit(target: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match target {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, bytes)?;
            eprintln!("wrote {}", p.display());
        }
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn cmd_verify(c: &Common) -> CmdResult {
    // Exclusions are checked before any symbolic work.
    c.bundle(Form::Cartesian)?;
    let report = verify(c.family, c.nse)?;
    emit(
        c.target("verify", "json").as_deref(),
        report.to_json().as_bytes(),
    )?;
    let failed: Vec<&str> = report
        .entries
        .iter()
        .filter(|e| !e.symbolic_zero)
        .map(|e| e.id.as_str())
        .collect();
    eprintln!(
        "{}: {}/{} residuals symbolically zero",
        report.family,
        report.entries.len() - failed.len(),
        report.entries.len()
    );
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "nonzero: {}",
            failed.join(", ")
        )))
    }
}

#[derive(Serialize)]
struct AnsatzOutput {
    family: String,
    radial: Option<RadialAnsatz>,
    theta: Option<ThetaAnsatz>,
    error: Option<String>,
}

fn cmd_ansatz(c: &Common) -> CmdResult {
    let parse = |v: &Option<String>| v.as_deref().map(parse_rational).transpose();
    let params = AnsatzParams {
        a: parse(&c.a)?,
        abar: parse(&c.abar)?,
        k: parse(&c.k)?,
    };
    let radial = ansatz::solve_radial_at(c.family, &params)?;
    // A formal failure is a derivation failure (exit 1); a failure only
    // after binding values means the values are degenerate (exit 2).
    let (theta, failure) = match ansatz::solve_theta(c.family) {
        Err(e) => (None, Some(Failure::from(e))),
        Ok(_) => match ansatz::solve_theta_at(c.family, &params) {
            Ok(t) => (Some(t), None),
            Err(e) => (None, Some(Failure::Config(e.to_string()))),
        },
    };
    let out = AnsatzOutput {
        family: c.family.to_string(),
        radial: Some(radial),
        error: failure.as_ref().map(|f| match f {
            Failure::Verification(m) | Failure::Config(m) => m.clone(),
        }),
        theta,
    };
    emit(
        c.target("ansatz", "json").as_deref(),
        to_json(&out).as_bytes(),
    )?;
    match failure {
        None => Ok(()),
        Some(f) => Err(f),
    }
}

#[derive(Serialize)]
struct DiagnoseOutput {
    family: String,
    radius: f64,
    r_min: f64,
    seed: u64,
    n: usize,
    series: BlowupSeries,
    /// `(ln s, ln sup|v|, ln sup|grad v|, ln sup|H|)`.
    log_log: Vec<[f64; 4]>,
    /// `(t, energy on the ball)`.
    energy: Vec<[f64; 2]>,
}

fn cmd_diagnose(c: &Common) -> CmdResult {
    let b = c.bundle(Form::Cartesian)?;
    let params = b.values(c.nu)?;
    let d = SampleDomain::default()
        .with_ball(c.radius)
        .with_r_min(c.rmin)
        .with_n(c.n)
        .with_seed(c.seed);
    let tstar = b.tstar_value(&params)?;
    let times = default_times(tstar);
    let series = blowup_series(&b, &d, &params, &times)?;
    let mut energy = Vec::new();
    for &t in std::iter::once(&0.0).chain(&times) {
        let e = energy_on_ball(&b, c.radius, t, &params, c.n, c.seed, c.rmin)?;
        energy.push([t, e]);
    }
    let out = DiagnoseOutput {
        family: b.family.to_string(),
        radius: c.radius,
        r_min: c.rmin,
        seed: c.seed,
        n: c.n,
        log_log: log_log_rows(&series),
        series,
        energy,
    };
    let target = c.target("diagnose", "json");
    emit(target.as_deref(), to_json(&out).as_bytes())?;
    if let Some(p) = &target {
        emit(
            Some(&p.with_extension("loglog.csv")),
            &table(
                &["ln_s", "ln_sup_v", "ln_sup_gradv", "ln_sup_h"],
                &out.log_log,
            )?,
        )?;
        emit(
            Some(&p.with_extension("energy.csv")),
            &table(&["t", "energy"], &out.energy)?,
        )?;
    }
    let f = &out.series.fitted_exponents;
    eprintln!(
        "fitted exponents in s: |v| {:.4}, |grad v| {:.4}, |H| {:.4}",
        f.v, f.gradv, f.h
    );
    Ok(())
}

fn table<const N: usize>(header: &[&str; N], rows: &[[f64; N]]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r.iter().map(|v| format!("{v:e}")))
            .map_err(io)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

fn cmd_converge(c: &Common) -> CmdResult {
    let b = c.bundle(Form::Cartesian)?;
    let params = b.values(c.nu)?;
    let (lo, hi) = c.cube((0.5, 1.5))?;
    let report = grid_convergence(&b, &c.grid_list()?, [lo; 3], [hi; 3], c.t, &params)?;
    emit(
        c.target("converge", "json").as_deref(),
        to_json(&report).as_bytes(),
    )?;
    for e in &report.entries {
        let orders: Vec<String> = e.orders.iter().map(|o| format!("{o:.3}")).collect();
        let tag = if e.exact { " (exact)" } else { "" };
        eprintln!("{:<12} orders [{}]{tag}", e.id, orders.join(", "));
    }
    let (lo, hi) = ORDER_RANGE;
    if report.orders_within(lo, hi) {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "some orders fall outside [{lo}, {hi}]"
        )))
    }
}

fn cmd_export(c: &Common) -> CmdResult {
    let b = c.bundle(Form::Cartesian)?;
    let params = b.values(c.nu)?;
    let (lo, hi) = c.cube((-2.0, 2.0))?;
    let tstar = b
        .binding
        .as_ref()
        .and_then(|bd| bd.tstar.to_f64())
        .ok_or_else(|| Error::Param("T* is not representable".into()))?;
    let d = SampleDomain::default()
        .with_box(lo, hi)
        .with_r_min(c.rmin)
        .with_n(c.n)
        .with_seed(c.seed)
        .at_time(c.t / tstar);
    let rows = sample_fields(&b, &d, &params)?;
    let bytes = match c.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&mut buf, &rows)?;
            buf
        }
        Format::Report => to_json(&rows).into_bytes(),
    };
    let ext = match c.format.unwrap_or(Format::Csv) {
        Format::Csv => "csv",
        Format::Report => "json",
    };
    emit(c.target("export", ext).as_deref(), &bytes)?;
    Ok(())
}
