//! The `wedge-cot` command line.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 for numeric or i/o
//! failures. Every error is reported as a single `error[<code>]: <message>`
//! line on stderr.

pub mod serialize;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::angle::{AngleInput, PiFraction};
use crate::error::{Error, Result};
use crate::geometry::{IonPosition, WedgeGeometry, DEFAULT_BETA_GUARD};
use crate::oracle;
use crate::orbits::{enumerate_exact, ClosedOrbit, ExactOrbit};
use crate::spectrum::{
    closed_orbits, OrbitSource, PhysicalConstants, Polarization, ReflectionModel, SpectrumSettings,
};
use crate::sweeps::{self, Dataset, SweepGrid, SweepVariable};

pub use serialize::{serialize, Format, PROGRAM, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "wedge-cot",
    version,
    about = "Closed-orbit photodetachment of H- inside a wedge"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the closed orbits of the ion.
    Orbits(OrbitsArgs),
    /// Cross section over a photon-energy window.
    Spectrum(EnergyArgs),
    /// Oscillatory term of every closed orbit over a photon-energy window.
    Decompose(EnergyArgs),
    /// Cross section against the ion's distance from the apex.
    SweepRho(RhoArgs),
    /// Cross section against the ion's angle from the left surface.
    SweepBeta(BetaArgs),
    /// Oscillatory cross section over polarization directions.
    Polmap(PolmapArgs),
    /// Run the numerical oracle checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
struct WedgeArgs {
    /// Wedge index: opening angle pi/N.
    #[arg(long, conflicts_with = "alpha")]
    n: Option<u32>,
    /// Opening angle in radians or as a fraction such as "2pi/5".
    #[arg(long)]
    alpha: Option<AngleInput>,
    /// Distance of the ion from the wedge axis, a0.
    #[arg(long, default_value_t = 200.0)]
    rho: f64,
    /// Angle of the ion from the left surface, radians or "pi/15".
    #[arg(long, default_value = "pi/15", allow_hyphen_values = true)]
    beta: AngleInput,
    /// Closest angular approach to either surface, radians.
    #[arg(long, default_value_t = DEFAULT_BETA_GUARD)]
    beta_guard: f64,
}

#[derive(Debug, Clone, Args)]
struct PhysicsArgs {
    /// Polarization: x, y, z or "theta,phi".
    #[arg(long, default_value = "x")]
    pol: String,
    /// Phase loss per reflection: hard, soft or radians.
    #[arg(long, default_value = "hard")]
    delta: String,
    #[arg(long, value_enum, default_value_t = SourceArg::Analytic)]
    orbit_source: SourceArg,
    /// Speed of light override, a.u.
    #[arg(long = "c")]
    speed_of_light: Option<f64>,
    /// Binding energy override, eV.
    #[arg(long)]
    eb_ev: Option<f64>,
    /// Wave-function normalization override.
    #[arg(long = "b")]
    normalization: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SourceArg {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TableFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
struct OrbitsArgs {
    #[command(flatten)]
    wedge: WedgeArgs,
    #[arg(long, value_enum, default_value_t = SourceArg::Analytic)]
    orbit_source: SourceArg,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TableFormat::Table)]
    format: TableFormat,
}

#[derive(Debug, Clone, Args)]
struct EnergyArgs {
    #[command(flatten)]
    wedge: WedgeArgs,
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Lowest photon energy, eV.
    #[arg(long, default_value_t = 0.76)]
    e_min: f64,
    /// Highest photon energy, eV.
    #[arg(long, default_value_t = 1.4)]
    e_max: f64,
    #[arg(long, default_value_t = 2048)]
    steps: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct RhoArgs {
    #[command(flatten)]
    wedge: WedgeArgs,
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Photon energy, eV.
    #[arg(long, default_value_t = 1.0)]
    energy: f64,
    #[arg(long, default_value_t = 50.0)]
    rho_min: f64,
    #[arg(long, default_value_t = 800.0)]
    rho_max: f64,
    #[arg(long, default_value_t = 1024)]
    steps: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct BetaArgs {
    #[command(flatten)]
    wedge: WedgeArgs,
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Photon energy, eV.
    #[arg(long, default_value_t = 1.0)]
    energy: f64,
    /// Defaults to the guard, beta_guard.
    #[arg(long)]
    beta_min: Option<AngleInput>,
    /// Defaults to alpha - beta_guard.
    #[arg(long)]
    beta_max: Option<AngleInput>,
    #[arg(long, default_value_t = 1024)]
    steps: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct PolmapArgs {
    #[command(flatten)]
    wedge: WedgeArgs,
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Photon energy, eV.
    #[arg(long, default_value_t = 1.0)]
    energy: f64,
    /// Points along theta_L in [0, pi] and along phi_L in [0, 2pi].
    #[arg(long, default_value_t = 37)]
    steps: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct VerifyArgs {
    /// Random (k, polarization, direction) triples for the overlap check.
    #[arg(long, default_value_t = 8)]
    overlap_samples: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Every input of a run, resolved and recorded in output headers as `arg.*`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub n: Option<u32>,
    pub alpha: Option<String>,
    pub alpha_rad: Option<f64>,
    pub rho: Option<f64>,
    pub beta: Option<String>,
    pub beta_rad: Option<f64>,
    pub beta_guard: Option<f64>,
    pub pol: Option<String>,
    pub delta: Option<String>,
    pub delta_rad: Option<f64>,
    pub orbit_source: Option<String>,
    pub e_min: Option<f64>,
    pub e_max: Option<f64>,
    pub energy: Option<f64>,
    pub rho_min: Option<f64>,
    pub rho_max: Option<f64>,
    pub beta_min: Option<String>,
    pub beta_max: Option<String>,
    pub steps: Option<usize>,
    pub overlap_samples: Option<usize>,
    pub c: Option<f64>,
    pub eb_ev: Option<f64>,
    pub b: Option<f64>,
    pub output: Option<String>,
    pub format: Option<String>,
}

impl RunConfig {
    /// `(key, value)` pairs in field order; absent values read `none`.
    pub fn entries(&self) -> Vec<(String, String)> {
        let value = serde_json::to_value(self).expect("plain struct serializes");
        let map = value.as_object().expect("struct serializes to an object");
        map.iter()
            .map(|(k, v)| {
                let text = match v {
                    serde_json::Value::Null => "none".to_string(),
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                (k.clone(), text)
            })
            .collect()
    }
}

fn parse_pol(text: &str) -> Result<Polarization> {
    match text.trim() {
        "x" => Ok(Polarization::x()),
        "y" => Ok(Polarization::y()),
        "z" => Ok(Polarization::z()),
        other => {
            let (t, p) = other.split_once(',').ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "polarization '{other}' is not x, y, z or theta,phi"
                ))
            })?;
            let t: AngleInput = t.parse()?;
            let p: AngleInput = p.parse()?;
            Polarization::new(t.radians(), p.radians())
        }
    }
}

fn parse_delta(text: &str) -> Result<ReflectionModel> {
    match text.trim() {
        "hard" => Ok(ReflectionModel::hard()),
        "soft" => Ok(ReflectionModel::soft()),
        other => ReflectionModel::new(other.parse::<AngleInput>()?.radians()),
    }
}

struct Setup {
    wedge: WedgeGeometry,
    ion: IonPosition,
    beta_exact: Option<PiFraction>,
}

fn resolve_wedge(a: &WedgeArgs, cfg: &mut RunConfig) -> Result<Setup> {
    let wedge = match (a.n, a.alpha) {
        (Some(n), _) => WedgeGeometry::from_n(n)?,
        (None, Some(alpha)) => WedgeGeometry::new(alpha.radians())?,
        (None, None) => WedgeGeometry::from_n(5)?,
    };
    let ion = IonPosition::new(a.rho, a.beta.radians())?;
    // the guard is named first so that e.g. beta=0 reports it
    ion.check_guard(&wedge, a.beta_guard)?;
    ion.validate_for(&wedge)?;
    cfg.n = wedge.n_integer();
    cfg.alpha = Some(match (a.n, a.alpha) {
        (_, Some(alpha)) => alpha.to_string(),
        _ => format!(
            "{}",
            PiFraction::new(1, wedge.n_integer().unwrap_or(5) as i64)?
        ),
    });
    cfg.alpha_rad = Some(wedge.opening_angle());
    cfg.rho = Some(a.rho);
    cfg.beta = Some(a.beta.to_string());
    cfg.beta_rad = Some(a.beta.radians());
    cfg.beta_guard = Some(a.beta_guard);
    Ok(Setup {
        wedge,
        ion,
        beta_exact: a.beta.exact(),
    })
}

fn resolve_physics(
    p: &PhysicsArgs,
    beta_guard: f64,
    cfg: &mut RunConfig,
) -> Result<SpectrumSettings> {
    let settings = SpectrumSettings {
        polarization: parse_pol(&p.pol)?,
        reflection: parse_delta(&p.delta)?,
        constants: PhysicalConstants::with_overrides(p.speed_of_light, p.eb_ev, p.normalization)?,
        beta_guard,
        orbit_source: match p.orbit_source {
            SourceArg::Analytic => OrbitSource::Analytic,
            SourceArg::Numeric => OrbitSource::Numeric(None),
        },
    };
    cfg.pol = Some(p.pol.clone());
    cfg.delta = Some(p.delta.clone());
    cfg.delta_rad = Some(settings.reflection.delta);
    cfg.orbit_source = Some(source_name(p.orbit_source).into());
    cfg.c = Some(settings.constants.speed_of_light);
    cfg.eb_ev = Some(settings.constants.binding_energy_ev());
    cfg.b = Some(settings.constants.normalization);
    Ok(settings)
}

fn source_name(s: SourceArg) -> &'static str {
    match s {
        SourceArg::Analytic => "analytic",
        SourceArg::Numeric => "numeric",
    }
}

fn record_output(o: &OutputArgs, cfg: &mut RunConfig) {
    cfg.output = Some(
        o.output
            .as_ref()
            .map_or("stdout".into(), |p| p.display().to_string()),
    );
    cfg.format = Some(match o.format {
        Format::Csv => "csv".into(),
        Format::Json => "json".into(),
    });
}

fn attach(mut d: Dataset, cfg: &RunConfig) -> Dataset {
    for (k, v) in cfg.entries() {
        d.push_provenance(format!("arg.{k}"), v);
    }
    d
}

fn emit(d: Dataset, cfg: &RunConfig, out: &OutputArgs, stdout: &mut dyn Write) -> Result<()> {
    serialize(&attach(d, cfg), out.format, out.output.as_deref(), stdout)
}

fn energy_dataset(a: &EnergyArgs, decompose: bool, cfg: &mut RunConfig) -> Result<Dataset> {
    let s = resolve_wedge(&a.wedge, cfg)?;
    let settings = resolve_physics(&a.physics, a.wedge.beta_guard, cfg)?;
    cfg.e_min = Some(a.e_min);
    cfg.e_max = Some(a.e_max);
    cfg.steps = Some(a.steps);
    record_output(&a.output, cfg);
    let grid = SweepGrid::new(SweepVariable::PhotonEnergy, a.e_min, a.e_max, a.steps)?;
    if decompose {
        sweeps::orbit_decomposition(&grid, &s.wedge, &s.ion, &settings)
    } else {
        sweeps::energy_sweep(&grid, &s.wedge, &s.ion, &settings)
    }
}

fn rho_dataset(a: &RhoArgs, cfg: &mut RunConfig) -> Result<Dataset> {
    let s = resolve_wedge(&a.wedge, cfg)?;
    let settings = resolve_physics(&a.physics, a.wedge.beta_guard, cfg)?;
    cfg.energy = Some(a.energy);
    cfg.rho_min = Some(a.rho_min);
    cfg.rho_max = Some(a.rho_max);
    cfg.steps = Some(a.steps);
    record_output(&a.output, cfg);
    let grid = SweepGrid::new(SweepVariable::Rho, a.rho_min, a.rho_max, a.steps)?;
    sweeps::position_sweep(&grid, a.energy, &s.wedge, &s.ion, &settings)
}

fn beta_dataset(a: &BetaArgs, cfg: &mut RunConfig) -> Result<Dataset> {
    let s = resolve_wedge(&a.wedge, cfg)?;
    let settings = resolve_physics(&a.physics, a.wedge.beta_guard, cfg)?;
    let lo = a.beta_min.map_or(a.wedge.beta_guard, |b| b.radians());
    let hi = a
        .beta_max
        .map_or(s.wedge.opening_angle() - a.wedge.beta_guard, |b| {
            b.radians()
        });
    cfg.energy = Some(a.energy);
    cfg.beta_min = Some(a.beta_min.map_or(lo.to_string(), |b| b.to_string()));
    cfg.beta_max = Some(a.beta_max.map_or(hi.to_string(), |b| b.to_string()));
    cfg.steps = Some(a.steps);
    record_output(&a.output, cfg);
    let grid = SweepGrid::new(SweepVariable::Beta, lo, hi, a.steps)?;
    sweeps::position_sweep(&grid, a.energy, &s.wedge, &s.ion, &settings)
}

fn polmap_dataset(a: &PolmapArgs, cfg: &mut RunConfig) -> Result<Dataset> {
    let s = resolve_wedge(&a.wedge, cfg)?;
    let settings = resolve_physics(&a.physics, a.wedge.beta_guard, cfg)?;
    cfg.energy = Some(a.energy);
    cfg.steps = Some(a.steps);
    record_output(&a.output, cfg);
    let pi = std::f64::consts::PI;
    let theta = SweepGrid::new(SweepVariable::PolarizationGrid, 0.0, pi, a.steps)?;
    let phi = SweepGrid::new(SweepVariable::PolarizationGrid, 0.0, 2.0 * pi, a.steps)?;
    sweeps::polarization_map(&theta, &phi, a.energy, &s.wedge, &s.ion, &settings)
}

/// One row of the orbit table, with exact angles when they are known.
struct OrbitRow {
    orbit: ClosedOrbit,
    exact: Option<ExactOrbit>,
}

fn orbit_rows(a: &OrbitsArgs, cfg: &mut RunConfig) -> Result<(Vec<OrbitRow>, f64)> {
    let s = resolve_wedge(&a.wedge, cfg)?;
    cfg.orbit_source = Some(source_name(a.orbit_source).into());
    cfg.output = Some(
        a.output
            .as_ref()
            .map_or("stdout".into(), |p| p.display().to_string()),
    );
    cfg.format = Some(
        match a.format {
            TableFormat::Table => "table",
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
        }
        .into(),
    );
    let rho = s.ion.rho;
    let exact = match (a.orbit_source, s.wedge.n_integer(), s.beta_exact) {
        (SourceArg::Analytic, Some(n), Some(beta)) => Some(enumerate_exact(n, beta)?),
        _ => None,
    };
    let rows = match exact {
        Some(list) => list
            .into_iter()
            .map(|e| OrbitRow {
                orbit: e.to_orbit(rho),
                exact: Some(e),
            })
            .collect(),
        None => {
            let source = match a.orbit_source {
                SourceArg::Analytic => OrbitSource::Analytic,
                SourceArg::Numeric => OrbitSource::Numeric(None),
            };
            closed_orbits(&s.wedge, &s.ion, source)?
                .into_iter()
                .map(|o| OrbitRow {
                    orbit: o,
                    exact: None,
                })
                .collect()
        }
    };
    Ok((rows, rho))
}

fn length_symbol(e: &ExactOrbit) -> String {
    format!("2rho|sin({})|", e.half_chord)
}

fn render_orbits(
    rows: &[OrbitRow],
    rho: f64,
    format: TableFormat,
    cfg: &RunConfig,
) -> Result<String> {
    let mut out = String::new();
    match format {
        TableFormat::Table => {
            let _ = writeln!(out, "# {PROGRAM} v{VERSION}");
            for (k, v) in cfg.entries() {
                let _ = writeln!(out, "# arg.{k}={v}");
            }
            let cells: Vec<[String; 7]> = rows
                .iter()
                .map(|r| {
                    let o = &r.orbit;
                    let (out_s, ret_s, len_s) = match &r.exact {
                        Some(e) => (
                            e.phi_out.to_string(),
                            e.phi_ret.to_string(),
                            length_symbol(e),
                        ),
                        None => (
                            format!("{:.12}", o.phi_out),
                            format!("{:.12}", o.phi_ret),
                            "-".to_string(),
                        ),
                    };
                    [
                        o.index.to_string(),
                        out_s,
                        ret_s,
                        o.reflections.to_string(),
                        len_s,
                        format!("{:.15}", o.length / rho),
                        format!("{:.12}", o.length),
                    ]
                })
                .collect();
            let head = ["j", "phi_out", "phi_ret", "m", "L", "L/rho", "L_a0"];
            let mut widths: Vec<usize> = head.iter().map(|h| h.len()).collect();
            for c in &cells {
                for (w, s) in widths.iter_mut().zip(c.iter()) {
                    *w = (*w).max(s.len());
                }
            }
            let line = |fields: Vec<&str>| -> String {
                fields
                    .iter()
                    .zip(&widths)
                    .map(|(f, w)| format!("{f:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let _ = writeln!(out, "{}", line(head.to_vec()));
            for c in &cells {
                let _ = writeln!(out, "{}", line(c.iter().map(String::as_str).collect()));
            }
        }
        TableFormat::Csv => {
            let _ = writeln!(out, "# {PROGRAM} v{VERSION}");
            for (k, v) in cfg.entries() {
                let _ = writeln!(out, "# arg.{k}={v}");
            }
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record([
                "j",
                "phi_out_rad",
                "phi_ret_rad",
                "m",
                "L_a0",
                "L_over_rho",
                "phi_out_exact",
                "phi_ret_exact",
                "L_exact",
            ])
            .map_err(io)?;
            for r in rows {
                let o = &r.orbit;
                let (a, b, c) = match &r.exact {
                    Some(e) => (
                        e.phi_out.to_string(),
                        e.phi_ret.to_string(),
                        length_symbol(e),
                    ),
                    None => (String::new(), String::new(), String::new()),
                };
                w.write_record([
                    o.index.to_string(),
                    serialize::format_value(o.phi_out),
                    serialize::format_value(o.phi_ret),
                    o.reflections.to_string(),
                    serialize::format_value(o.length),
                    serialize::format_value(o.length / rho),
                    a,
                    b,
                    c,
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            out.push_str(&String::from_utf8_lossy(&bytes));
        }
        TableFormat::Json => {
            let mut meta = serde_json::Map::new();
            meta.insert("program".into(), PROGRAM.into());
            meta.insert("version".into(), VERSION.into());
            for (k, v) in cfg.entries() {
                meta.insert(format!("arg.{k}"), v.into());
            }
            let orbits: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let o = &r.orbit;
                    serde_json::json!({
                        "j": o.index,
                        "phi_out_rad": o.phi_out,
                        "phi_ret_rad": o.phi_ret,
                        "m": o.reflections,
                        "L_a0": o.length,
                        "L_over_rho": o.length / rho,
                        "phi_out_exact": r.exact.map(|e| e.phi_out.to_string()),
                        "phi_ret_exact": r.exact.map(|e| e.phi_ret.to_string()),
                        "L_exact": r.exact.as_ref().map(length_symbol),
                    })
                })
                .collect();
            out = serde_json::to_string_pretty(
                &serde_json::json!({ "meta": meta, "orbits": orbits }),
            )
            .map_err(|e| Error::Io(e.to_string()))?;
            out.push('\n');
        }
    }
    Ok(out)
}

fn write_text(text: &str, path: Option<&std::path::Path>, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
    }
}

fn render_checks(checks: &[oracle::Check]) -> String {
    let mut out = String::new();
    let name_w = checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let _ = writeln!(
        out,
        "{:<name_w$}  {:<9}  {:<9}  status  note",
        "check", "achieved", "tolerance"
    );
    for c in checks {
        let _ = writeln!(
            out,
            "{:<name_w$}  {:<9.2e}  {:<9.2e}  {:<6}  {}",
            c.name,
            c.achieved,
            c.tolerance,
            if c.passed { "PASS" } else { "FAIL" },
            c.note
        );
    }
    out
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    let mut cfg = RunConfig::default();
    match cli.command {
        Command::Orbits(a) => {
            cfg.subcommand = "orbits".into();
            let (rows, rho) = orbit_rows(&a, &mut cfg)?;
            let text = render_orbits(&rows, rho, a.format, &cfg)?;
            write_text(&text, a.output.as_deref(), stdout)?;
        }
        Command::Spectrum(a) => {
            cfg.subcommand = "spectrum".into();
            let d = energy_dataset(&a, false, &mut cfg)?;
            emit(d, &cfg, &a.output, stdout)?;
        }
        Command::Decompose(a) => {
            cfg.subcommand = "decompose".into();
            let d = energy_dataset(&a, true, &mut cfg)?;
            emit(d, &cfg, &a.output, stdout)?;
        }
        Command::SweepRho(a) => {
            cfg.subcommand = "sweep-rho".into();
            let d = rho_dataset(&a, &mut cfg)?;
            emit(d, &cfg, &a.output, stdout)?;
        }
        Command::SweepBeta(a) => {
            cfg.subcommand = "sweep-beta".into();
            let d = beta_dataset(&a, &mut cfg)?;
            emit(d, &cfg, &a.output, stdout)?;
        }
        Command::Polmap(a) => {
            cfg.subcommand = "polmap".into();
            let d = polmap_dataset(&a, &mut cfg)?;
            emit(d, &cfg, &a.output, stdout)?;
        }
        Command::Verify(a) => {
            cfg.subcommand = "verify".into();
            cfg.overlap_samples = Some(a.overlap_samples);
            let checks = oracle::run_checks(&PhysicalConstants::default(), a.overlap_samples)?;
            let text = render_checks(&checks);
            write_text(&text, a.output.as_deref(), stdout)?;
            if checks.iter().any(|c| !c.passed) {
                return Ok(EXIT_NUMERIC);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Exit code for a domain error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numeric() {
        EXIT_NUMERIC
    } else {
        EXIT_INPUT
    }
}

/// Runs the command line with explicit output streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = writeln!(stderr, "error[usage]: a subcommand is required");
                    let _ = write!(stderr, "{}", Cli::command().render_help());
                    EXIT_INPUT
                }
                _ => {
                    let rendered = e.render().to_string();
                    let mut lines = rendered.lines();
                    let first = lines.next().unwrap_or("invalid arguments");
                    let first = first.strip_prefix("error: ").unwrap_or(first);
                    let _ = writeln!(stderr, "error[usage]: {first}");
                    for l in lines {
                        let _ = writeln!(stderr, "{l}");
                    }
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "error[{}]: {msg}", e.code());
            exit_code(&e)
        }
    }
}

/// Runs the command line against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run_with(argv, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}
