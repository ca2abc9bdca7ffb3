//! Command-line front end: compile maps, evaluate manifests, batch reports
//! and navigator bundles.

use std::fs;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use mapverba::describe::DescribeOptions;
use mapverba::eval::{batch_table, chart_csv, evaluate, render_report, EvalError, EvaluationReport, ReportFormat};
use mapverba::model::{parse_map, MapDocument};
use mapverba::repr::{compile, export_bundle, BuildError, ReprOptions, RepresentationKind, RepresentationManifest};
use mapverba::spatial::ClockResolution;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONCONFORMING: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mapverba",
    version,
    about = "Compile maps into text maps and score them for equivalency"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render a map as a text representation plus its manifest.
    Compile(CompileArgs),
    /// Score a manifest against its baseline map.
    Evaluate(EvaluateArgs),
    /// Score every manifest in a directory and tabulate the results.
    Report(ReportArgs),
    /// Write the self-contained bundle the navigator loads.
    ExportViewer(ExportArgs),
}

#[derive(Debug, Args)]
struct Tuning {
    /// Alt-grid cells along the extent diagonal.
    #[arg(long, default_value_t = mapverba::repr::DEFAULT_GRID_DIVISIONS,
          value_parser = clap::value_parser!(u32).range(1..=4096))]
    grid_divisions: u32,
    /// Clock-face resolution for directions between features.
    #[arg(long, value_enum, default_value_t = ClockArg::Hour)]
    clock_resolution: ClockArg,
    /// Half-width in meters of the corridor along routes.
    #[arg(long, default_value_t = mapverba::describe::DEFAULT_CORRIDOR_M, value_parser = positive_meters)]
    corridor_width: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClockArg {
    Hour,
    HalfHour,
}

impl Tuning {
    fn options(&self) -> ReprOptions {
        ReprOptions {
            describe: DescribeOptions {
                pair_clock: match self.clock_resolution {
                    ClockArg::Hour => ClockResolution::Hour,
                    ClockArg::HalfHour => ClockResolution::HalfHour,
                },
                corridor_m: self.corridor_width,
            },
            grid_divisions: self.grid_divisions,
            ..ReprOptions::default()
        }
    }
}

fn positive_meters(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("{s:?} is not a positive number of meters")),
    }
}

fn kind_arg(s: &str) -> Result<RepresentationKind, String> {
    s.parse::<RepresentationKind>().map_err(|_| {
        let known: Vec<&str> = RepresentationKind::ALL.iter().map(|k| k.keyword()).collect();
        format!("unknown kind {s:?}; expected one of {}", known.join(", "))
    })
}

fn format_arg(s: &str) -> Result<ReportFormat, String> {
    s.parse()
}

#[derive(Debug, Args)]
struct CompileArgs {
    /// Map file (GeoJSON); the `.geojson` extension may be omitted.
    #[arg(long)]
    input: PathBuf,
    /// Representation to build: audio-description, mud-map, alt-grid, table,
    /// turn-by-turn, short-alt or nearby-search.
    #[arg(long, value_parser = kind_arg)]
    kind: RepresentationKind,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Baseline map.
    #[arg(long)]
    input: PathBuf,
    /// Manifest JSON written by `compile`, or encoded by hand.
    #[arg(long)]
    manifest: PathBuf,
    /// md, json-like or csv.
    #[arg(long, default_value = "md", value_parser = format_arg)]
    format: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Directory of `*.manifest.json` files whose `baseline_ref` names the map.
    #[arg(long)]
    dir: PathBuf,
    /// Also write bar-chart data (label, purpose %, equivalency %) as CSV.
    #[arg(long)]
    chart: Option<PathBuf>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long)]
    input: PathBuf,
    /// Bundle file, or a directory to write `<stem>.bundle.json` into.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    tuning: Tuning,
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    lines: Vec<String>,
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAILURE,
            lines: vec![message.into()],
        }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Invalid(vs) => Failure {
                code: EXIT_FAILURE,
                lines: std::iter::once("map is invalid:".to_string())
                    .chain(vs.iter().map(|v| format!("  {} [{}]: {}", v.path, v.code, v.message)))
                    .collect(),
            },
            other => Failure::new(other.to_string()),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::new(e.to_string())
    }
}

/// Parses arguments, runs the command and returns the exit status.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Compile(a) => cmd_compile(&a),
        Command::Evaluate(a) => cmd_evaluate(&a),
        Command::Report(a) => cmd_report(&a),
        Command::ExportViewer(a) => cmd_export_viewer(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let mut err = std::io::stderr().lock();
            for line in &f.lines {
                let _ = writeln!(err, "mapverba: {line}");
            }
            f.code
        }
    }
}

/// Accepts the path as given, or with `.geojson` appended.
fn resolve_input(path: &Path) -> PathBuf {
    if !path.exists() {
        let mut with_ext = path.as_os_str().to_owned();
        with_ext.push(".geojson");
        let candidate = PathBuf::from(with_ext);
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}

fn load_map(path: &Path) -> Result<(PathBuf, MapDocument), Failure> {
    let path = resolve_input(path);
    let bytes = fs::read(&path).map_err(|e| Failure::new(format!("cannot read {}: {e}", path.display())))?;
    let doc = parse_map(&bytes).map_err(|e| Failure::new(format!("{}: {e}", path.display())))?;
    Ok((path, doc))
}

fn load_manifest(path: &Path) -> Result<RepresentationManifest, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(format!("cannot read {}: {e}", path.display())))?;
    RepresentationManifest::from_json(&text).map_err(|e| Failure::new(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    match name.strip_suffix(".geojson").or_else(|| name.strip_suffix(".json")) {
        Some(s) => s.to_string(),
        None => path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or(name),
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let fail = |e: &dyn std::fmt::Display| Failure::new(format!("cannot write {}: {e}", path.display()));
    fs::create_dir_all(&dir).map_err(|e| fail(&e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| fail(&e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| fail(&e))?;
    tmp.persist(path).map_err(|e| fail(&e.error))?;
    Ok(())
}

fn cmd_compile(a: &CompileArgs) -> Result<i32, Failure> {
    let (input, doc) = load_map(&a.input)?;
    let compiled = compile(&doc, a.kind, &a.tuning.options())?;
    let base = format!("{}.{}", stem(&input), a.kind.keyword());
    let text_path = a.out.join(format!("{base}.txt"));
    let manifest_path = a.out.join(format!("{base}.manifest.json"));

    let mut manifest = compiled.manifest;
    let absolute = fs::canonicalize(&input).unwrap_or(input);
    manifest.baseline_ref = Some(absolute.to_string_lossy().into_owned());
    manifest.source_text_ref = Some(format!("{base}.txt"));

    write_atomic(&text_path, &compiled.text)?;
    write_atomic(&manifest_path, &manifest.to_json())?;
    println!("{}", text_path.display());
    println!("{}", manifest_path.display());
    Ok(EXIT_OK)
}

fn color_enabled() -> bool {
    std::env::var_os("MAPVERBA_NO_COLOR").is_none()
        && std::env::var_os("NO_COLOR").is_none()
        && std::io::stdout().is_terminal()
}

fn colorize(report: &str) -> String {
    report
        .lines()
        .map(|line| {
            line.replace("| pass |", "| \x1b[32mpass\x1b[0m |")
                .replace("| fail |", "| \x1b[31mfail\x1b[0m |")
                .replace("| n/a |", "| \x1b[2mn/a\x1b[0m |")
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Evidence that the rendered artifact beside the manifest does not contain.
fn evidence_warnings(manifest_path: &Path, m: &RepresentationManifest) {
    let Some(source) = &m.source_text_ref else { return };
    let dir = manifest_path.parent().unwrap_or(Path::new("."));
    let Ok(text) = fs::read_to_string(dir.join(source)) else {
        return;
    };
    for e in m.unsupported_evidence(&text) {
        eprintln!("mapverba: warning: evidence not found in {source}: {e:?}");
    }
}

fn cmd_evaluate(a: &EvaluateArgs) -> Result<i32, Failure> {
    let (_, doc) = load_map(&a.input)?;
    let manifest = load_manifest(&a.manifest)?;
    evidence_warnings(&a.manifest, &manifest);
    let report = evaluate(&doc, &manifest)?;
    let rendered = render_report(&report, a.format);
    match &a.out {
        Some(path) => write_atomic(path, &rendered)?,
        None if a.format == ReportFormat::Md && color_enabled() => print!("{}", colorize(&rendered)),
        None => print!("{rendered}"),
    }
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_NONCONFORMING })
}

fn evaluate_pair(manifest_path: &Path) -> Result<EvaluationReport, String> {
    let manifest = load_manifest(manifest_path).map_err(|f| f.lines.join("; "))?;
    let Some(baseline) = &manifest.baseline_ref else {
        return Err("manifest has no baseline_ref".into());
    };
    let dir = manifest_path.parent().unwrap_or(Path::new("."));
    let (_, doc) = load_map(&dir.join(baseline)).map_err(|f| f.lines.join("; "))?;
    evaluate(&doc, &manifest).map_err(|e| e.to_string())
}

fn cmd_report(a: &ReportArgs) -> Result<i32, Failure> {
    let entries = fs::read_dir(&a.dir).map_err(|e| Failure::new(format!("cannot read {}: {e}", a.dir.display())))?;
    let mut manifests: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with(".manifest.json"))
        .collect();
    manifests.sort();
    if manifests.is_empty() {
        return Err(Failure::new(format!(
            "{} contains no *.manifest.json files",
            a.dir.display()
        )));
    }

    let mut rows: Vec<(String, EvaluationReport)> = Vec::new();
    let mut errors: Vec<(String, String)> = Vec::new();
    for path in &manifests {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let label = name.trim_end_matches(".manifest.json").to_string();
        match evaluate_pair(path) {
            Ok(r) => rows.push((label, r)),
            Err(e) => errors.push((name, e)),
        }
    }

    let mut out = match batch_table(&rows) {
        Ok(t) => t,
        Err(_) => String::from("No valid text maps.\n"),
    };
    if !errors.is_empty() {
        out.push_str("\n## Errors\n\n");
        for (name, e) in &errors {
            out.push_str(&format!("- {name}: {e}\n"));
        }
    }
    match &a.out {
        Some(path) => write_atomic(path, &out)?,
        None => print!("{out}"),
    }
    if let Some(chart) = &a.chart {
        write_atomic(chart, &chart_csv(&rows))?;
    }
    Ok(if rows.is_empty() { EXIT_FAILURE } else { EXIT_OK })
}

fn cmd_export_viewer(a: &ExportArgs) -> Result<i32, Failure> {
    let (input, doc) = load_map(&a.input)?;
    let bundle = export_bundle(&doc, &a.tuning.options())?;
    let target = if a.out.is_dir() || a.out.to_string_lossy().ends_with(std::path::MAIN_SEPARATOR) {
        a.out.join(format!("{}.bundle.json", stem(&input)))
    } else {
        a.out.clone()
    };
    write_atomic(&target, &bundle)?;
    println!("{}", target.display());
    Ok(EXIT_OK)
}
