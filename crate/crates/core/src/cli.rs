//! Command-line front end: argument parsing, grid expansion, parallel row
//! evaluation and CSV or human-readable rendering.
//!
//! Exit codes: 0 when every row converged, 2 for configuration errors,
//! 3 when at least one row failed to converge.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::casimir::{self, ResultValue};
use crate::impedance::ImpedanceModel;
use crate::physcore::{classify_regime, Geometry, MaterialParams, Regime, ThermalState, ToleranceConfig};
use crate::reflection::{zero_freq_coefficients, DielectricModel, Formulation, Model};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;

/// Columns of every compute command, in order. Columns a command does not
/// produce stay empty.
pub const CSV_HEADER: [&str; 13] = [
    "a_m",
    "T_K",
    "model",
    "energy_J_per_m2",
    "free_energy_J_per_m2",
    "correction_factor",
    "rel_thermal_correction",
    "terms_used",
    "err_estimate",
    "pressure_N_per_m2",
    "force_N",
    "entropy_J_per_K_m2",
    "diagnostics",
];

const KNOWN_MATERIALS: [&str; 1] = ["gold"];

#[derive(Debug, Parser)]
#[command(
    name = "casimir",
    version,
    about = "Casimir energy, free energy, pressure and entropy between real-metal plates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Zero-temperature energy per unit area and correction factor.
    Energy,
    /// Free energy per unit area and relative thermal correction.
    FreeEnergy,
    /// Pressure between the plates.
    Pressure,
    /// Sphere-plate force in the proximity-force approximation.
    SpherePlate,
    /// Entropy per unit area, S = -dF/dT.
    Entropy,
    /// Grid over separations, temperatures and models as CSV.
    Sweep,
    /// Which impedance regime applies, with the defining inequalities.
    Regime,
    /// Reflection coefficients at zero frequency in every formulation.
    ZeroFreq,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// `gold` or the path of a key=value material file.
    #[arg(long, global = true, default_value = "gold")]
    pub material: String,

    /// Comma-separated list of reflection models.
    #[arg(long, global = true, value_delimiter = ',', default_value = "infrared-optics")]
    pub model: Vec<ModelName>,

    /// Metres: a value, a comma list, or start:stop:count (log-spaced).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub separation: Option<String>,

    /// Kelvin: a value, a comma list, or start:stop:count (linear). 0 means the T = 0 energy.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub temperature: Option<String>,

    /// Sphere radius in metres (sphere-plate).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub radius: Option<f64>,

    /// Conductivity in Gaussian units, s^-1 (normal-skin).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma: Option<f64>,

    /// Drude relaxation frequency, rad/s (lifshitz-drude).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<f64>,

    /// Relative tolerance for quadratures and Matsubara sums.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rel_tol: Option<f64>,

    /// Transverse wavenumbers in rad/m for zero-freq, same syntax as --separation.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k_perp: Option<String>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Defaults to csv for sweep and human otherwise.
    #[arg(long, global = true)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Ideal,
    NormalSkin,
    AnomalousSkin,
    InfraredOptics,
    LifshitzPlasma,
    LifshitzDrude,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Human,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] crate::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_non_convergence() => EXIT_NON_CONVERGENCE,
            CliError::Config(_) | CliError::Library(_) => EXIT_CONFIG,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Rendered output plus the exit status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub exit_code: i32,
    /// Distinct `warning: ...` and `error: ...` lines, for echoing on stderr.
    pub warnings: Vec<String>,
}

/// One computed (a, T, model) point. `None` renders as an empty field.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Record {
    pub separation: f64,
    pub temperature: f64,
    pub model: String,
    pub energy: Option<f64>,
    pub free_energy: Option<f64>,
    pub correction_factor: Option<f64>,
    pub rel_thermal_correction: Option<f64>,
    pub terms_used: Option<usize>,
    pub err_estimate: Option<f64>,
    pub pressure: Option<f64>,
    pub force: Option<f64>,
    pub entropy: Option<f64>,
    pub diagnostics: Vec<String>,
    pub failure: Option<crate::Error>,
}

impl Record {
    fn note(&mut self, warnings: &[String]) {
        for w in warnings {
            if !self.diagnostics.contains(w) {
                self.diagnostics.push(w.clone());
            }
        }
    }

    fn csv_fields(&self) -> Vec<String> {
        let num = |v: Option<f64>| v.map(sci).unwrap_or_default();
        vec![
            sci(self.separation),
            sci(self.temperature),
            self.model.clone(),
            num(self.energy),
            num(self.free_energy),
            num(self.correction_factor),
            num(self.rel_thermal_correction),
            self.terms_used.map(|n| n.to_string()).unwrap_or_default(),
            num(self.err_estimate),
            num(self.pressure),
            num(self.force),
            num(self.entropy),
            self.diagnostics.join("; "),
        ]
    }
}

/// 17 significant digits, the CSV reproducibility contract.
fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parses `args` (program name first), runs, writes output and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.options.output {
        Some(path) => std::fs::write(path, &report.text),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(report.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {}", CliError::Io(e));
        return 1;
    }
    if cli.options.format.unwrap_or(default_format(cli.command)) == Format::Csv {
        for line in &report.warnings {
            eprintln!("{line}");
        }
    }
    report.exit_code
}

fn default_format(command: Command) -> Format {
    match command {
        Command::Sweep => Format::Csv,
        _ => Format::Human,
    }
}

/// Runs a parsed command without touching stdout or the file system.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let opts = &cli.options;
    let format = opts.format.unwrap_or(default_format(cli.command));
    let material = resolve_material(&opts.material, opts.sigma)?;
    let tol = match opts.rel_tol {
        Some(r) => ToleranceConfig::with_rel_tol(r)?,
        None => ToleranceConfig::default(),
    };

    match cli.command {
        Command::ZeroFreq => {
            let k = parse_grid("--k-perp", opts.k_perp.as_deref().unwrap_or("1e4:1e9:6"), Spacing::Log)?;
            return zero_freq_report(&material, &k, format);
        }
        Command::Regime => {
            let a = parse_grid("--separation", required(opts.separation.as_deref(), "--separation")?, Spacing::Log)?;
            let t = temperatures(opts.temperature.as_deref())?;
            return regime_report(&material, &a, &t, format);
        }
        _ => {}
    }

    // Model parameters are checked before anything else so that a missing
    // --gamma or --sigma is the error reported.
    let models = opts
        .model
        .iter()
        .map(|&name| build_model(name, &material, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let separations = parse_grid("--separation", required(opts.separation.as_deref(), "--separation")?, Spacing::Log)?;
    let temps = match cli.command {
        Command::Energy => vec![0.0],
        Command::FreeEnergy | Command::Entropy => {
            temperatures(Some(required(opts.temperature.as_deref(), "--temperature")?))?
        }
        _ => temperatures(opts.temperature.as_deref())?,
    };
    if cli.command == Command::Entropy && temps.contains(&0.0) {
        return Err(config("entropy needs --temperature above 0 K"));
    }
    let radius = match (cli.command, opts.radius) {
        (Command::SpherePlate, None) => return Err(config("sphere-plate needs --radius <m>")),
        (Command::SpherePlate, Some(r)) => Some(r),
        _ => None,
    };

    let mut jobs = Vec::with_capacity(separations.len() * temps.len() * models.len());
    for &a in &separations {
        for &t in &temps {
            for model in &models {
                jobs.push((a, t, *model));
            }
        }
    }
    let records: Vec<Record> = jobs
        .par_iter()
        .map(|&(a, t, model)| compute_record(cli.command, &model, &material, a, t, radius, &tol))
        .collect();

    let exit_code = if records.iter().any(|r| r.failure.as_ref().is_some_and(|e| e.is_non_convergence())) {
        EXIT_NON_CONVERGENCE
    } else if records.iter().any(|r| r.failure.is_some()) {
        EXIT_CONFIG
    } else {
        EXIT_OK
    };
    let mut warnings: Vec<String> = Vec::new();
    for r in &records {
        let prefix = if r.failure.is_some() { "error" } else { "warning" };
        for d in &r.diagnostics {
            let line = format!("{prefix}: {d}");
            if !warnings.contains(&line) {
                warnings.push(line);
            }
        }
    }
    let text = match format {
        Format::Csv => render_csv(&records)?,
        Format::Human => render_human(&records),
    };
    Ok(Report {
        text,
        exit_code,
        warnings,
    })
}

fn required<'a>(value: Option<&'a str>, flag: &str) -> Result<&'a str, CliError> {
    value.ok_or_else(|| config(format!("missing {flag}")))
}

fn temperatures(text: Option<&str>) -> Result<Vec<f64>, CliError> {
    match text {
        Some(t) => parse_grid("--temperature", t, Spacing::Linear),
        None => Ok(vec![0.0]),
    }
}

fn unknown_name(kind: &str, given: &str, known: &[&str]) -> String {
    let lower = given.to_ascii_lowercase();
    let mut msg = format!("unknown {kind} `{given}`");
    if let Some(best) = known
        .iter()
        .filter(|k| strsim::levenshtein(k, &lower) <= 3)
        .min_by_key(|k| strsim::levenshtein(k, &lower))
    {
        let _ = write!(msg, "; did you mean `{best}`?");
    }
    let _ = write!(msg, " (known: {})", known.join(", "));
    msg
}

/// A built-in name or a material file.
pub fn resolve_material(name_or_path: &str, sigma: Option<f64>) -> Result<MaterialParams, CliError> {
    let material = if name_or_path.eq_ignore_ascii_case("gold") {
        MaterialParams::gold()
    } else if Path::new(name_or_path).is_file() {
        MaterialParams::load(Path::new(name_or_path))?
    } else {
        return Err(config(format!(
            "{}, or the path of a material file",
            unknown_name("material", name_or_path, &KNOWN_MATERIALS)
        )));
    };
    Ok(match sigma {
        Some(s) => material.with_conductivity(s)?,
        None => material,
    })
}

pub fn build_model(name: ModelName, material: &MaterialParams, opts: &Options) -> Result<Model, CliError> {
    Ok(match name {
        ModelName::Ideal => Model::Impedance(ImpedanceModel::IdealMetal),
        ModelName::NormalSkin => {
            let sigma = material.conductivity().ok_or_else(|| {
                config("model normal-skin needs the conductivity: pass --sigma <s^-1> or set sigma in the material file")
            })?;
            Model::Impedance(ImpedanceModel::normal_skin(sigma)?)
        }
        ModelName::AnomalousSkin => Model::Impedance(ImpedanceModel::anomalous_for(material)),
        ModelName::InfraredOptics => Model::Impedance(ImpedanceModel::infrared_for(material)),
        ModelName::LifshitzPlasma => Model::Lifshitz(DielectricModel::plasma(material.plasma_frequency())?),
        ModelName::LifshitzDrude => {
            let gamma = opts
                .gamma
                .ok_or_else(|| config("model lifshitz-drude needs the relaxation frequency: pass --gamma <rad/s>"))?;
            Model::Lifshitz(DielectricModel::drude(material.plasma_frequency(), gamma)?)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

/// `x`, `x1,x2,...` or `start:stop:count`; sorted ascending, duplicates removed.
pub fn parse_grid(flag: &str, text: &str, spacing: Spacing) -> Result<Vec<f64>, CliError> {
    let number = |s: &str| -> Result<f64, CliError> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| config(format!("{flag}: `{}` is not a number", s.trim())))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(config(format!("{flag}: `{}` is not finite", s.trim())))
        }
    };
    let mut values = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(config(format!("{flag}: expected start:stop:count, got `{text}`")));
        };
        let (start, stop) = (number(start)?, number(stop)?);
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| config(format!("{flag}: count `{}` is not a whole number", count.trim())))?;
        if count < 2 {
            return Err(config(format!("{flag}: a grid needs count >= 2, got {count}")));
        }
        if start >= stop {
            return Err(config(format!("{flag}: a grid needs start < stop, got {start} and {stop}")));
        }
        if spacing == Spacing::Log && start <= 0.0 {
            return Err(config(format!("{flag}: a log grid needs a positive start, got {start}")));
        }
        let last = (count - 1) as f64;
        (0..count)
            .map(|i| match (i, spacing) {
                (0, _) => start,
                (i, _) if i == count - 1 => stop,
                (i, Spacing::Log) => (start.ln() + (stop.ln() - start.ln()) * i as f64 / last).exp(),
                (i, Spacing::Linear) => start + (stop - start) * i as f64 / last,
            })
            .collect::<Vec<_>>()
    } else {
        text.split(',').map(number).collect::<Result<Vec<_>, _>>()?
    };
    values.sort_by(f64::total_cmp);
    values.dedup();
    Ok(values)
}

fn compute_record(
    command: Command,
    model: &Model,
    material: &MaterialParams,
    a: f64,
    t: f64,
    radius: Option<f64>,
    tol: &ToleranceConfig,
) -> Record {
    let mut rec = Record {
        separation: a,
        temperature: t,
        model: model.to_string(),
        ..Record::default()
    };
    if let Err(e) = fill_record(&mut rec, command, model, material, radius, tol) {
        rec = Record {
            diagnostics: vec![e.to_string()],
            failure: Some(e),
            ..Record {
                separation: a,
                temperature: t,
                model: model.to_string(),
                ..Record::default()
            }
        };
    }
    rec
}

fn fill_record(
    rec: &mut Record,
    command: Command,
    model: &Model,
    material: &MaterialParams,
    radius: Option<f64>,
    tol: &ToleranceConfig,
) -> crate::Result<()> {
    let geometry = match radius {
        Some(r) => Geometry::sphere_plate(rec.separation, r)?,
        None => Geometry::plates(rec.separation)?,
    };
    let state = if rec.temperature == 0.0 {
        ThermalState::zero()
    } else {
        ThermalState::new(rec.temperature)?
    };
    if let Some(w) = regime_mismatch(model, material, &geometry, &state) {
        rec.diagnostics.push(w);
    }

    let zero = casimir::energy_zero_temperature(model, &geometry, tol)?;
    rec.energy = Some(zero.energy.value);
    rec.correction_factor = Some(zero.correction_factor.value);
    rec.note(&zero.energy.warnings);
    let mut headline: &ResultValue = &zero.energy;

    let thermal;
    if !state.is_zero() {
        let f = casimir::free_energy(model, &geometry, &state, tol)?;
        let rtc = casimir::relative_thermal_correction(model, &geometry, &state, tol)?;
        rec.free_energy = Some(f.value);
        rec.rel_thermal_correction = Some(rtc.value);
        rec.terms_used = f.diagnostics.terms_used;
        rec.note(&f.warnings);
        thermal = f;
        headline = &thermal;
    }

    let extra = match command {
        Command::Pressure => Some(casimir::pressure(model, &geometry, &state, tol)?),
        Command::SpherePlate => Some(casimir::sphere_plate_force(model, &geometry, &state, tol)?),
        Command::Entropy => Some(casimir::entropy(model, &geometry, &state, tol)?),
        _ => None,
    };
    if let Some(x) = &extra {
        match command {
            Command::Pressure => rec.pressure = Some(x.value),
            Command::SpherePlate => rec.force = Some(x.value),
            _ => rec.entropy = Some(x.value),
        }
        rec.note(&x.warnings);
        headline = x;
    }
    rec.err_estimate = Some(headline.numeric_error);
    Ok(())
}

/// Warns when an impedance model is used outside the regime it describes.
fn regime_mismatch(model: &Model, material: &MaterialParams, geometry: &Geometry, state: &ThermalState) -> Option<String> {
    let intended = match model {
        Model::Impedance(ImpedanceModel::NormalSkin { .. }) => Regime::NormalSkin,
        Model::Impedance(ImpedanceModel::AnomalousSkin { .. }) => Regime::AnomalousSkin,
        Model::Impedance(ImpedanceModel::InfraredOptics { .. }) => Regime::InfraredOptics,
        _ => return None,
    };
    let actual = classify_regime(material, geometry, state).regime;
    (actual != intended && actual != Regime::Transition)
        .then(|| format!("{model} impedance used where the {actual} regime applies"))
}

fn render_csv(records: &[Record]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.csv_fields())?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is built from UTF-8 strings"))
}

fn render_human(records: &[Record]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "a = {:e} m, T = {} K, model {}", r.separation, r.temperature, r.model);
        let rows: [(&str, Option<f64>, &str); 9] = [
            ("energy", r.energy, "J/m^2"),
            ("free energy", r.free_energy, "J/m^2"),
            ("correction factor", r.correction_factor, ""),
            ("relative thermal correction", r.rel_thermal_correction, ""),
            ("pressure", r.pressure, "N/m^2"),
            ("sphere-plate force", r.force, "N"),
            ("entropy", r.entropy, "J/(K m^2)"),
            ("numerical error estimate", r.err_estimate, ""),
            ("Matsubara terms", r.terms_used.map(|n| n as f64), ""),
        ];
        for (label, value, unit) in rows {
            if let Some(v) = value {
                let shown = if label == "Matsubara terms" {
                    format!("{v}")
                } else {
                    format!("{v:.6e}")
                };
                let _ = writeln!(out, "  {label:<29}{shown} {unit}");
            }
        }
        let prefix = if r.failure.is_some() { "error" } else { "warning" };
        for d in &r.diagnostics {
            let _ = writeln!(out, "  {prefix}: {d}");
        }
    }
    out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n"
}

fn regime_report(material: &MaterialParams, separations: &[f64], temps: &[f64], format: Format) -> Result<Report, CliError> {
    let mut warnings = Vec::new();
    let mut out = String::new();
    let mut csv_rows = Vec::new();
    for &a in separations {
        for &t in temps {
            let geometry = Geometry::plates(a)?;
            let state = if t == 0.0 { ThermalState::zero() } else { ThermalState::new(t)? };
            let rep = classify_regime(material, &geometry, &state);
            for w in &rep.warnings {
                let line = format!("warning: {w}");
                if !warnings.contains(&line) {
                    warnings.push(line);
                }
            }
            match format {
                Format::Human => {
                    if !out.is_empty() {
                        out.push('\n');
                    }
                    let _ = writeln!(out, "a = {a:e} m, T = {t} K");
                    let _ = writeln!(out, "  characteristic frequency  {:.4e} rad/s", rep.characteristic_frequency);
                    let _ = writeln!(out, "  transition frequency      {:.4e} rad/s", rep.transition_frequency);
                    let _ = writeln!(out, "  transition separation     {:.4e} m", rep.transition_separation);
                    let _ = writeln!(out, "  plasma wavelength         {:.4e} m", rep.plasma_wavelength);
                    let _ = writeln!(out, "  regime                    {}", rep.regime);
                    let _ = writeln!(out, "  conditions at the characteristic frequency (margin = large/small):");
                    for d in &rep.diagnostics {
                        let verdict = match d.margin() {
                            Some(m) if m > 1.0 => format!("margin {m:.3e}, holds"),
                            Some(m) => format!("margin {m:.3e}, violated"),
                            None => "not available without the conductivity".into(),
                        };
                        let _ = writeln!(out, "    [{}] {}: {verdict}", d.regime, d.description);
                    }
                    for w in &rep.warnings {
                        let _ = writeln!(out, "  warning: {w}");
                    }
                }
                Format::Csv => {
                    for d in &rep.diagnostics {
                        let opt = |v: Option<f64>| v.map(sci).unwrap_or_default();
                        csv_rows.push(vec![
                            sci(a),
                            sci(t),
                            sci(rep.characteristic_frequency),
                            sci(rep.transition_frequency),
                            sci(rep.transition_separation),
                            sci(rep.plasma_wavelength),
                            rep.regime.to_string(),
                            d.regime.to_string(),
                            d.description.to_string(),
                            opt(d.small),
                            opt(d.large),
                            opt(d.margin()),
                            rep.warnings.join("; "),
                        ]);
                    }
                }
            }
        }
    }
    let text = match format {
        Format::Human => out,
        Format::Csv => write_table(
            &[
                "a_m",
                "T_K",
                "omega_c_rad_per_s",
                "omega_transition_rad_per_s",
                "a_transition_m",
                "lambda_p_m",
                "regime",
                "condition_regime",
                "condition",
                "small_m",
                "large_m",
                "margin",
                "warnings",
            ],
            &csv_rows,
        )?,
    };
    Ok(Report {
        text,
        exit_code: EXIT_OK,
        warnings,
    })
}

fn zero_freq_report(material: &MaterialParams, k_perp: &[f64], format: Format) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    for f in Formulation::ALL {
        for &k in k_perp {
            let r = zero_freq_coefficients(f, k, material)?;
            rows.push((f, k, r.r_par_sq, r.r_perp_sq));
        }
    }
    let text = match format {
        Format::Csv => write_table(
            &["formulation", "k_perp_rad_per_m", "r_par_sq", "r_perp_sq"],
            &rows
                .iter()
                .map(|&(f, k, p, s)| vec![f.to_string(), sci(k), sci(p), sci(s)])
                .collect::<Vec<_>>(),
        )?,
        Format::Human => {
            let mut out = format!("{:<22}{:>14}{:>14}{:>14}\n", "formulation", "k_perp rad/m", "r_par^2", "r_perp^2");
            for (f, k, p, s) in rows {
                let _ = writeln!(out, "{:<22}{k:>14.4e}{p:>14.6}{s:>14.6}", f.to_string());
            }
            out
        }
    };
    Ok(Report {
        text,
        exit_code: EXIT_OK,
        warnings: Vec::new(),
    })
}

fn write_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is built from UTF-8 strings"))
}
