//! Command-line front end.
//!
//! Exit codes: 0 on success (flagged discrepancies included), 2 on usage
//! errors, 1 when a computation fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{bound_from_accuracy, bound_table, format_table, AccuracyRecord, BoundResult, Model, System, SystemState};
use crate::config::{Constants, OutputFormat, RunConfig};
use crate::error::Error;
use crate::fields::{consistency_report, field_sample, potential_from_source, ConsistencyReport, DiscretizedSource, PointCharge, Vec3};
use crate::helium::{helium_ground_shift, HeliumConfig};
use crate::hydrogenic::{HydrogenicState, QuantumNumbers};
use crate::perturbation::{
    degenerate_manifold_shifts, hydrogen_shift_diagonal, permanent_stark_shift, spin_orbit_shift, ManifoldSpectrum,
    ShiftResult,
};
use crate::tensor::{KfTensor, TensorFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "livshift", version, about = "Atomic energy shifts and coefficient bounds for a rank-4 photon-sector tensor")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Uniform coefficient K: every (K_F)_{0j0k} equals K.
    #[arg(long, global = true, allow_negative_numbers = true, conflicts_with = "kf_file")]
    uniform_k: Option<f64>,
    /// JSON tensor file with one of the keys "uniform", "kappa" or "components".
    #[arg(long, global = true)]
    kf_file: Option<PathBuf>,
    /// Nuclear charge (default 1, or 2 for helium).
    #[arg(long, global = true)]
    z: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    mc_samples: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// First-order shift of one level.
    Shift {
        #[arg(value_enum)]
        kind: ShiftKind,
        #[command(flatten)]
        level: Level,
    },
    /// Splitting of a degenerate shell.
    Manifold {
        #[arg(long)]
        n: u32,
        /// Double every level for the two spin states.
        #[arg(long)]
        spin: bool,
    },
    /// Potentials and field of a point charge at the origin, or of a source file.
    Field {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        charge: f64,
        /// Field point as x,y,z in bohr.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        at: Vec3,
        /// JSON list of samples {"pos": [x,y,z], "j": [j0,j1,j2,j3], "w": weight}.
        #[arg(long)]
        source: Option<PathBuf>,
    },
    /// Coefficient bounds from a measurement accuracy.
    Bound {
        #[command(subcommand)]
        which: BoundCommand,
    },
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShiftKind {
    Hydrogen,
    Stark,
    SpinOrbit,
    Helium,
}

#[derive(Debug, Subcommand)]
enum BoundCommand {
    Single {
        #[arg(long, value_enum, default_value = "hydrogen")]
        system: System,
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        accuracy_ev: Option<f64>,
        #[arg(long, value_enum, default_value = "computed")]
        model: Model,
    },
    Table {
        #[arg(long)]
        accuracy_ev: Option<f64>,
        #[arg(long, value_enum, default_value = "computed")]
        model: Model,
    },
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Whether the Green-function potential matches the modified Coulomb potential.
    Consistency,
}

#[derive(Debug, Args, Default)]
struct Level {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i32>,
    /// Total angular momentum, e.g. 3/2 or 1.5.
    #[arg(long)]
    j: Option<String>,
}

fn parse_point(s: &str) -> Result<Vec3, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got {s:?}"));
    }
    let mut p = [0.0_f64; 3];
    for (slot, part) in p.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|e| format!("bad coordinate {part:?}: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("coordinate {part:?} is not finite"));
        }
    }
    Ok(p)
}

fn parse_twice_j(s: &str) -> Result<u32, String> {
    let value = match s.split_once('/') {
        Some((num, "2")) => num.trim().parse::<u32>().map(|v| v as f64).map_err(|e| e.to_string())? / 2.0,
        Some(_) => return Err(format!("j must be a half-integer such as 3/2, got {s:?}")),
        None => s.trim().parse::<f64>().map_err(|e| e.to_string())?,
    };
    let twice = 2.0 * value;
    if !(twice >= 0.0 && twice.fract() == 0.0 && twice < u32::MAX as f64) {
        return Err(format!("j must be a non-negative half-integer, got {s:?}"));
    }
    Ok(twice as u32)
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

/// Parses `argv` (program name first), runs the command and writes the report
/// to standard output. Returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], with explicit output streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => match out.write_all(report.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                EXIT_COMPUTE
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_COMPUTE
        }
    }
}

struct Context {
    config: RunConfig,
    format: OutputFormat,
    tensor: KfTensor,
}

fn load_context(c: &Common) -> Result<Context, Failure> {
    let mut config = match &c.config {
        Some(path) => RunConfig::from_file(path).map_err(Failure::Usage)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = c.seed {
        config.seed = seed;
    }
    if let Some(samples) = c.mc_samples {
        config.mc_samples = samples;
    }
    config.validate().map_err(Failure::Usage)?;
    let format = c.format.unwrap_or(config.output_format);
    let tensor = match (&c.uniform_k, &c.kf_file) {
        (Some(k), _) => KfTensor::uniform(*k).map_err(|e| Failure::Usage(format!("--uniform-k {k}: {e}")))?,
        (None, Some(path)) => load_tensor_file(path)?,
        (None, None) => KfTensor::zero(),
    };
    Ok(Context { config, format, tensor })
}

fn load_tensor_file(path: &Path) -> Result<KfTensor, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read tensor file {}: {e}", path.display())))?;
    let file = TensorFile::from_json(&text)
        .map_err(|e| Failure::Usage(format!("malformed tensor file {}: {e}", path.display())))?;
    file.build()
        .map_err(|e| Failure::Usage(format!("invalid tensor file {}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let ctx = load_context(&cli.common)?;
    let z = cli.common.z;
    match &cli.command {
        Command::Shift { kind, level } => shift_command(&ctx, *kind, level, z),
        Command::Manifold { n, spin } => {
            let spectrum = degenerate_manifold_shifts(*n, z.unwrap_or(1.0), &ctx.tensor, *spin)?;
            Ok(render_manifold(&ctx, &spectrum))
        }
        Command::Field { charge, at, source } => field_command(&ctx, *charge, at, source.as_deref()),
        Command::Bound { which } => bound_command(&ctx, which, z),
        Command::Check {
            which: CheckCommand::Consistency,
        } => Ok(render_consistency(&ctx, &consistency_report(&ctx.tensor))),
    }
}

fn helium_config(ctx: &Context, z: Option<f64>) -> HeliumConfig {
    HeliumConfig {
        z: z.unwrap_or(2.0),
        mc_samples: ctx.config.mc_samples,
        seed: ctx.config.seed,
        ..Default::default()
    }
}

/// Builds the level, falling back to `(n, l)` defaults and `j = l + 1/2` when
/// `default_j` is set.
fn hydrogenic_level(level: &Level, z: f64, n: u32, l: u32, default_j: bool) -> Result<HydrogenicState, Failure> {
    let n = level.n.unwrap_or(n);
    let l = level.l.unwrap_or(if level.n.is_some() { l.min(n.saturating_sub(1)) } else { l });
    let mut qn = QuantumNumbers::new(n, l, level.m.unwrap_or(0)).map_err(|e| Failure::Usage(e.to_string()))?;
    let twice_j = match &level.j {
        Some(j) => Some(parse_twice_j(j).map_err(|e| Failure::Usage(format!("--j: {e}")))?),
        None if default_j && l > 0 => Some(2 * l + 1),
        None => None,
    };
    if let Some(tj) = twice_j {
        qn = qn.with_twice_j(tj).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    HydrogenicState::new(z, qn).map_err(|e| Failure::Usage(e.to_string()))
}

#[derive(Serialize)]
struct LevelReport {
    z: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    twice_j: Option<u32>,
}

impl LevelReport {
    fn of(s: &HydrogenicState) -> Self {
        Self {
            z: s.z,
            n: Some(s.qn.n),
            l: Some(s.qn.l),
            m: Some(s.qn.m),
            twice_j: s.qn.twice_j,
        }
    }
}

#[derive(Serialize)]
struct ShiftReport<'a> {
    command: String,
    level: LevelReport,
    constants: Constants,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_samples: Option<u64>,
    #[serde(flatten)]
    result: &'a ShiftResult,
    paper_formula_value_ev: Option<f64>,
}

fn shift_command(ctx: &Context, kind: ShiftKind, level: &Level, z: Option<f64>) -> Result<String, Failure> {
    let constants = ctx.config.constants;
    let (name, level_report, result, mc) = match kind {
        ShiftKind::Helium => {
            let cfg = helium_config(ctx, z);
            let r = helium_ground_shift(&cfg, &ctx.tensor)?;
            let lr = LevelReport {
                z: cfg.z,
                n: None,
                l: None,
                m: None,
                twice_j: None,
            };
            ("helium", lr, r, Some((cfg.seed, cfg.mc_samples)))
        }
        _ => {
            let z = z.unwrap_or(1.0);
            let (name, s, r) = match kind {
                ShiftKind::Hydrogen => {
                    let s = hydrogenic_level(level, z, 1, 0, false)?;
                    ("hydrogen", s, hydrogen_shift_diagonal(&s, &ctx.tensor)?)
                }
                ShiftKind::Stark => {
                    let s = hydrogenic_level(level, z, 1, 0, false)?;
                    ("stark", s, permanent_stark_shift(&s, &ctx.tensor)?)
                }
                _ => {
                    let s = hydrogenic_level(level, z, 2, 1, true)?;
                    ("spin-orbit", s, spin_orbit_shift(&s, &ctx.tensor)?)
                }
            };
            (name, LevelReport::of(&s), r, None)
        }
    };
    let result = result.with_constants(&constants);
    let report = ShiftReport {
        command: format!("shift {name}"),
        level: level_report,
        constants,
        seed: mc.map(|m| m.0),
        mc_samples: mc.map(|m| m.1),
        paper_formula_value_ev: result.paper_formula_value_ev(&constants),
        result: &result,
    };
    Ok(match ctx.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut rows = vec![
                row("value", result.value_hartree, "hartree"),
                row("value", result.value_ev, "eV"),
            ];
            for t in &result.terms {
                rows.push(row(&format!("term.{}", t.name), t.value_hartree, "hartree"));
                rows.push(row(&format!("term.{}", t.name), t.value_hartree * constants.hartree_ev, "eV"));
            }
            if let Some(p) = result.paper_formula_value_hartree {
                rows.push(row("paper_formula", p, "hartree"));
                rows.push(row("paper_formula", p * constants.hartree_ev, "eV"));
            }
            rows.push(row("error_estimate", result.error_estimate, "hartree"));
            rows.push([
                "discrepancy_flag".into(),
                result.discrepancy_flag.to_string(),
                String::new(),
            ]);
            rows.extend(constant_rows(&constants));
            long_csv(&rows)
        }
        OutputFormat::Text => {
            let mut s = format!("{} shift, {}\n", name, describe_level(&report.level));
            s.push_str(&energy_line("value", result.value_hartree, &constants));
            for t in &result.terms {
                s.push_str(&energy_line(&format!("  {}", t.name), t.value_hartree, &constants));
            }
            if let Some(p) = result.paper_formula_value_hartree {
                s.push_str(&energy_line("reference closed form", p, &constants));
                s.push_str(&format!(
                    "discrepancy: {}\n",
                    if result.discrepancy_flag { "yes" } else { "no" }
                ));
            }
            s.push_str(&format!(
                "method: {}, error estimate {:e} Ha\n",
                enum_name(&result.method),
                result.error_estimate
            ));
            for note in &result.notes {
                s.push_str(&format!("note: {note}\n"));
            }
            s.push_str(&constants_line(&constants));
            s
        }
    })
}

fn describe_level(l: &LevelReport) -> String {
    let mut s = format!("Z={}", l.z);
    if let (Some(n), Some(ll), Some(m)) = (l.n, l.l, l.m) {
        s.push_str(&format!(" n={n} l={ll} m={m}"));
    } else {
        s.push_str(" 1s^2");
    }
    if let Some(tj) = l.twice_j {
        s.push_str(&format!(" j={tj}/2"));
    }
    s
}

#[derive(Serialize)]
struct ManifoldReport<'a> {
    command: &'static str,
    constants: Constants,
    #[serde(flatten)]
    spectrum: &'a ManifoldSpectrum,
    eigenvalues_ev: Vec<f64>,
}

fn render_manifold(ctx: &Context, spectrum: &ManifoldSpectrum) -> String {
    let c = ctx.config.constants;
    let ev: Vec<f64> = spectrum.eigenvalues_hartree.iter().map(|e| e * c.hartree_ev).collect();
    match ctx.format {
        OutputFormat::Json => to_json(&ManifoldReport {
            command: "manifold",
            constants: c,
            spectrum,
            eigenvalues_ev: ev,
        }),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["index", "eigenvalue_hartree", "eigenvalue_ev", "hartree_ev"]).expect("in-memory write");
            for (i, (h, e)) in spectrum.eigenvalues_hartree.iter().zip(&ev).enumerate() {
                w.write_record([i.to_string(), fmt(*h), fmt(*e), fmt(c.hartree_ev)]).expect("in-memory write");
            }
            csv_string(w)
        }
        OutputFormat::Text => {
            let mut s = format!(
                "shell n={} Z={} ({} states{})\n",
                spectrum.n,
                spectrum.z,
                spectrum.eigenvalues_hartree.len(),
                if spectrum.include_spin { ", spin doubled" } else { "" }
            );
            for (i, h) in spectrum.eigenvalues_hartree.iter().enumerate() {
                s.push_str(&energy_line(&format!("level {i}"), *h, &c));
            }
            s.push_str(&constants_line(&c));
            s
        }
    }
}

#[derive(Serialize)]
struct FieldReport {
    command: &'static str,
    at: Vec3,
    charge: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_samples: Option<usize>,
    /// `(A₀, A₁, A₂, A₃)`
    potential: [f64; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    electric_field: Option<Vec3>,
    consistency: ConsistencyReport,
    constants: Constants,
}

fn field_command(ctx: &Context, charge: f64, at: &Vec3, source: Option<&Path>) -> Result<String, Failure> {
    let report = match source {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read source file {}: {e}", path.display())))?;
            let src = DiscretizedSource::from_json(&text)
                .map_err(|e| Failure::Usage(format!("malformed source file {}: {e}", path.display())))?;
            FieldReport {
                command: "field",
                at: *at,
                charge: None,
                source_samples: Some(src.samples.len()),
                potential: potential_from_source(at, &src, &ctx.tensor)?,
                electric_field: None,
                consistency: consistency_report(&ctx.tensor),
                constants: ctx.config.constants,
            }
        }
        None => {
            if !charge.is_finite() {
                return Err(Failure::Usage(format!("--charge {charge} is not finite")));
            }
            let f = field_sample(at, &PointCharge::at_origin(charge), &ctx.tensor)?;
            FieldReport {
                command: "field",
                at: *at,
                charge: Some(charge),
                source_samples: None,
                potential: [f.a0, f.a[0], f.a[1], f.a[2]],
                electric_field: Some(f.e),
                consistency: consistency_report(&ctx.tensor),
                constants: ctx.config.constants,
            }
        }
    };
    Ok(match ctx.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            for (i, v) in report.potential.iter().enumerate() {
                rows.push(row(&format!("A{i}"), *v, "atomic"));
            }
            if let Some(e) = report.electric_field {
                for (axis, v) in ["x", "y", "z"].iter().zip(e) {
                    rows.push(row(&format!("E_{axis}"), v, "atomic"));
                }
            }
            rows.push(row("kappa_trace", report.consistency.kappa_trace, ""));
            rows.extend(constant_rows(&report.constants));
            long_csv(&rows)
        }
        OutputFormat::Text => {
            let mut s = format!("point ({}, {}, {})\n", at[0], at[1], at[2]);
            s.push_str(&format!(
                "A = ({:e}, {:e}, {:e}, {:e})\n",
                report.potential[0], report.potential[1], report.potential[2], report.potential[3]
            ));
            if let Some(e) = report.electric_field {
                s.push_str(&format!("E = ({:e}, {:e}, {:e})\n", e[0], e[1], e[2]));
            }
            s.push_str(&consistency_text(&report.consistency));
            s.push_str(&constants_line(&report.constants));
            s
        }
    })
}

#[derive(Serialize)]
struct BoundReport<'a> {
    command: &'static str,
    accuracy: &'a AccuracyRecord,
    constants: Constants,
    #[serde(skip_serializing_if = "Option::is_none")]
    helium_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    helium_mc_samples: Option<u64>,
    rows: &'a [BoundResult],
}

fn accuracy(ctx: &Context, value: Option<f64>) -> Result<AccuracyRecord, Failure> {
    let v = value.unwrap_or(ctx.config.default_accuracy_ev);
    AccuracyRecord::hydrogen_maser(v).map_err(|e| Failure::Usage(format!("--accuracy-ev: {e}")))
}

fn bound_command(ctx: &Context, which: &BoundCommand, z: Option<f64>) -> Result<String, Failure> {
    let constants = ctx.config.constants;
    let (name, acc, rows, helium) = match which {
        BoundCommand::Single {
            system,
            level,
            accuracy_ev,
            model,
        } => {
            let acc = accuracy(ctx, *accuracy_ev)?;
            let zz = z.unwrap_or(1.0);
            let state = match system {
                System::Hydrogen => SystemState::Hydrogen(hydrogenic_level(level, zz, 1, 0, false)?),
                System::PermanentStark => SystemState::PermanentStark(hydrogenic_level(level, zz, 1, 0, false)?),
                System::SpinOrbit => SystemState::SpinOrbit(hydrogenic_level(level, zz, 2, 1, true)?),
                System::Helium => SystemState::Helium(helium_config(ctx, z)),
            };
            let he = matches!(system, System::Helium).then(|| helium_config(ctx, z));
            let row = bound_from_accuracy(&state, &acc, *model, &constants)?;
            ("bound single", acc, vec![row], he)
        }
        BoundCommand::Table { accuracy_ev, model } => {
            let acc = accuracy(ctx, *accuracy_ev)?;
            let he = helium_config(ctx, z);
            let rows = bound_table(&acc, *model, &constants, he)?;
            ("bound table", acc, rows, Some(he))
        }
    };
    Ok(match ctx.format {
        OutputFormat::Json => to_json(&BoundReport {
            command: name,
            accuracy: &acc,
            constants,
            helium_seed: helium.map(|h| h.seed),
            helium_mc_samples: helium.map(|h| h.mc_samples),
            rows: &rows,
        }),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "system",
                "label",
                "state",
                "model",
                "slope_ev_per_k",
                "accuracy_ev",
                "bound",
                "paper_bound",
                "ratio",
                "hartree_ev",
            ])
            .expect("in-memory write");
            for r in &rows {
                w.write_record([
                    enum_name(&r.system),
                    r.label.clone(),
                    r.state.clone(),
                    enum_name(&r.model),
                    fmt(r.slope_ev_per_k),
                    fmt(r.accuracy_ev),
                    fmt(r.bound),
                    fmt(r.paper_bound),
                    fmt(r.ratio),
                    fmt(constants.hartree_ev),
                ])
                .expect("in-memory write");
            }
            csv_string(w)
        }
        OutputFormat::Text => {
            let mut s = format!("accuracy {:e} eV ({})\n", acc.value_ev, acc.source);
            s.push_str(&format_table(&rows));
            s.push_str(&constants_line(&constants));
            s
        }
    })
}

fn render_consistency(ctx: &Context, r: &ConsistencyReport) -> String {
    #[derive(Serialize)]
    struct Report<'a> {
        command: &'static str,
        #[serde(flatten)]
        report: &'a ConsistencyReport,
        constants: Constants,
    }
    match ctx.format {
        OutputFormat::Json => to_json(&Report {
            command: "check consistency",
            report: r,
            constants: ctx.config.constants,
        }),
        OutputFormat::Csv => {
            let mut rows = vec![
                row("kappa_trace", r.kappa_trace, ""),
                ["consistent".into(), r.consistent.to_string(), String::new()],
                row("potential_offset_coefficient", r.potential_offset_coefficient, "q/(4pi|X|)"),
            ];
            rows.extend(constant_rows(&ctx.config.constants));
            long_csv(&rows)
        }
        OutputFormat::Text => consistency_text(r) + &constants_line(&ctx.config.constants),
    }
}

fn consistency_text(r: &ConsistencyReport) -> String {
    if r.consistent {
        format!("consistent: trace of kappa is {:e}\n", r.kappa_trace)
    } else {
        format!(
            "inconsistent: trace of kappa is {:e}; Green-function A0 exceeds the Coulomb form by {:e} q/(4pi|X|)\n",
            r.kappa_trace, r.potential_offset_coefficient
        )
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// Shortest round-trip representation.
fn fmt(v: f64) -> String {
    format!("{v:e}")
}

fn enum_name<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn row(name: &str, v: f64, unit: &str) -> [String; 3] {
    [name.to_owned(), fmt(v), unit.to_owned()]
}

fn constant_rows(c: &Constants) -> [[String; 3]; 2] {
    [
        row("constants.hartree_ev", c.hartree_ev, "eV/hartree"),
        row("constants.bohr_m", c.bohr_m, "m"),
    ]
}

fn long_csv(rows: &[[String; 3]]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "value", "unit"]).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("csv output is UTF-8")
}

fn energy_line(label: &str, hartree: f64, c: &Constants) -> String {
    format!("{label}: {:e} Ha = {:e} eV\n", hartree, hartree * c.hartree_ev)
}

fn constants_line(c: &Constants) -> String {
    format!("constants: hartree_ev = {}, bohr_m = {:e}\n", c.hartree_ev, c.bohr_m)
}
