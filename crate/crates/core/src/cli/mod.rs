//! Argument parsing and report assembly for the `qhomology` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a computation is rejected,
//! 2 for usage and configuration errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hochschild::{verify_hochschild, verify_theorem1};
use crate::linalg::{nilpotent_profile, MatrixFile, NilpotentProfile};
use crate::ndiff::{feasibility, homology_dims_from_multiplicities, homology_report, restrict_to, verify_section3, Feasibility, HDiffSpace};
use crate::report::{Check, SuiteReport, SCHEMA};
use crate::wznw::ZeroModeModel;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Heights verified when `--height` is omitted.
pub const DEFAULT_HEIGHTS: [usize; 2] = [2, 3];

/// Largest height the Hochschild suite runs at without `--force`.
pub const HOCHSCHILD_CAP: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "qhomology", version, about = "Exact generalized homology of nilpotent operators and the zero-mode model")]
pub struct Cli {
  #[command(subcommand)]
  pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
  /// Build the zero-mode model and run verification suites.
  Verify(VerifyArgs),
  /// Generalized homology of a nilpotent matrix read from a JSON file.
  Homology(HomologyArgs),
  /// Whether a nilpotent operator on a space of the given dimension can have all homologies one-dimensional.
  Feasibility(FeasibilityArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
  Relations,
  Theorem0,
  Section3,
  Theorem1,
  Hochschild,
  All,
}

impl Suite {
  const ORDERED: [Suite; 5] = [Suite::Relations, Suite::Theorem0, Suite::Section3, Suite::Theorem1, Suite::Hochschild];

  /// Case-insensitive lookup by suite name.
  pub fn parse(name: &str) -> Option<Suite> { <Suite as ValueEnum>::from_str(name, true).ok() }

  /// Random trials used when none are requested.
  pub fn default_trials(self) -> usize {
    match self {
      Suite::Section3 => 200,
      Suite::Theorem1 => 50,
      _ => 100,
    }
  }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
  #[default]
  Text,
  Json,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
  /// Height h >= 2; defaults to 2 and 3.
  #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
  pub height:    Option<u64>,
  /// Suites to run, comma separated.
  #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
  pub suite:     Vec<Suite>,
  #[arg(long, default_value_t = 1)]
  pub seed:      u64,
  /// Random trials per suite; each suite has its own default.
  #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
  pub trials:    Option<u64>,
  /// Write the report here instead of stdout.
  #[arg(long)]
  pub out:       Option<PathBuf>,
  #[arg(long, value_enum, default_value_t)]
  pub format:    Format,
  #[arg(long, env = "QHOMOLOGY_CACHE_DIR")]
  pub cache_dir: Option<PathBuf>,
  /// Run the Hochschild suite above the default height cap.
  #[arg(long)]
  pub force:     bool,
  /// Rebuild models instead of reading the cache.
  #[arg(long)]
  pub no_cache:  bool,
}

#[derive(Debug, clap::Args)]
pub struct HomologyArgs {
  /// Matrix file: {"h", "rows", "cols", "entries": [[row, col, scalar], ...]}.
  pub matrix:  PathBuf,
  /// Nilpotency order; defaults to the field height in the file.
  #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
  pub height:  Option<u64>,
  /// Only this homology index.
  #[arg(long)]
  pub k:       Option<usize>,
  #[arg(long)]
  pub out:     Option<PathBuf>,
  #[arg(long, value_enum, default_value_t)]
  pub format:  Format,
}

#[derive(Debug, clap::Args)]
pub struct FeasibilityArgs {
  #[arg(long)]
  pub dim:    usize,
  #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
  pub height: u64,
  #[arg(long)]
  pub out:    Option<PathBuf>,
  #[arg(long, value_enum, default_value_t)]
  pub format: Format,
}

/// Validated `verify` configuration, echoed into the report.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
  pub heights:   Vec<usize>,
  pub suites:    Vec<Suite>,
  pub seed:      u64,
  #[serde(skip_serializing_if = "Option::is_none")]
  pub trials:    Option<usize>,
  pub format:    Format,
  #[serde(skip_serializing_if = "Option::is_none")]
  pub cache_dir: Option<PathBuf>,
  pub force:     bool,
  pub no_cache:  bool,
}

impl SuiteConfig {
  pub fn from_args(args: &VerifyArgs) -> std::result::Result<Self, String> {
    let heights = match args.height {
      Some(h) => vec![h as usize],
      None => DEFAULT_HEIGHTS.to_vec(),
    };
    let suites = if args.suite.contains(&Suite::All) {
      Suite::ORDERED.to_vec()
    } else {
      Suite::ORDERED.iter().copied().filter(|s| args.suite.contains(s)).collect()
    };
    let config = SuiteConfig {
      heights,
      suites,
      seed: args.seed,
      trials: args.trials.map(|t| t as usize),
      format: args.format,
      cache_dir: args.cache_dir.clone(),
      force: args.force,
      no_cache: args.no_cache,
    };
    if let Some(h) = config.heights.iter().find(|&&h| h > HOCHSCHILD_CAP) {
      if config.suites.contains(&Suite::Hochschild) && !config.force {
        return Err(hochschild_refusal(*h));
      }
    }
    Ok(config)
  }

  fn trials(&self, suite: Suite) -> usize { self.trials.unwrap_or_else(|| suite.default_trials()) }
}

fn hochschild_refusal(h: usize) -> String {
  let bound = (h as u128).pow(8);
  let points = bound.checked_pow(h as u32 - 1).map_or_else(|| "more than 2^128".to_string(), |p| p.to_string());
  format!(
    "the hochschild suite is capped at h <= {HOCHSCHILD_CAP}; at h = {h} the image algebra may reach dimension h^8 = {bound} \
     and kernels of d^{} would visit up to {points} evaluation points; pass --force to run it anyway",
    h - 1
  )
}

/// Full `verify` output.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
  pub schema:  &'static str,
  pub version: &'static str,
  pub command: &'static str,
  pub config:  SuiteConfig,
  pub suites:  Vec<SuiteReport>,
  /// `dim H_(k)` per height from each suite that computes one.
  pub dims:    Vec<DimsRow>,
  pub checks:  usize,
  pub failed:  usize,
  pub passed:  bool,
  #[serde(skip)]
  pub timings: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsRow {
  pub h:      usize,
  pub source: String,
  pub dims:   Vec<usize>,
}

fn error_report(suite: &str, h: usize, e: &Error) -> SuiteReport {
  let mut r = SuiteReport::new(suite, h);
  r.push(Check::fail("completed", e.to_string()));
  r
}

pub fn suite_name(s: Suite) -> &'static str {
  match s {
    Suite::Relations => "relations",
    Suite::Theorem0 => "theorem0",
    Suite::Section3 => "section3",
    Suite::Theorem1 => "theorem1",
    Suite::Hochschild => "hochschild",
    Suite::All => "all",
  }
}

/// One suite on a built model; `Suite::All` is rejected.
pub fn run_suite(model: &ZeroModeModel, suite: Suite, trials: usize, seed: u64) -> Result<SuiteReport> {
  match suite {
    Suite::Relations => Ok(model.verify_relations()),
    Suite::Theorem0 => model.verify_theorem0(),
    Suite::Section3 => {
      let a_on_h_i = restrict_to(&model.field, &model.bilinears.a, &model.h_i)?;
      verify_section3(&model.field, trials, seed, Some(&a_on_h_i))
    }
    Suite::Theorem1 => verify_theorem1(model, trials, seed),
    Suite::Hochschild => verify_hochschild(model, trials, seed),
    Suite::All => Err(Error::OutOfRange("run_suite takes a single suite".into())),
  }
}

/// Runs the configured suites in dependency order, one model per height.
pub fn cmd_verify(config: &SuiteConfig) -> Report {
  let mut suites = Vec::new();
  let mut timings = Vec::new();
  let mut dims = Vec::new();
  for &h in &config.heights {
    let start = Instant::now();
    let cache = if config.no_cache { None } else { config.cache_dir.as_deref() };
    let model = match ZeroModeModel::build_cached(h, cache, false) {
      Ok(m) => m,
      Err(e) => {
        suites.push(error_report("model", h, &e));
        timings.push(start.elapsed().as_secs_f64());
        continue;
      }
    };
    let build_time = start.elapsed().as_secs_f64();
    for (i, &suite) in config.suites.iter().enumerate() {
      let start = Instant::now();
      let r = run_suite(&model, suite, config.trials(suite), config.seed).unwrap_or_else(|e| error_report(suite_name(suite), h, &e));
      for (key, source) in [("dims", suite_name(suite)), ("filtered_dims", "filtered")] {
        if let Some(d) = r.data.get(key).and_then(|v| serde_json::from_value::<Vec<usize>>(v.clone()).ok()) {
          dims.push(DimsRow { h, source: source.into(), dims: d });
        }
      }
      suites.push(r);
      timings.push(start.elapsed().as_secs_f64() + if i == 0 { build_time } else { 0.0 });
    }
  }
  let checks = suites.iter().map(|s| s.checks.len()).sum();
  let failed = suites.iter().map(|s| s.failures().count()).sum();
  Report {
    schema: SCHEMA,
    version: env!("CARGO_PKG_VERSION"),
    command: "verify",
    config: config.clone(),
    suites,
    dims,
    checks,
    failed,
    passed: failed == 0,
    timings,
  }
}

fn render_verify(report: &Report, format: Format) -> String {
  if format == Format::Json {
    return serde_json::to_string_pretty(report).expect("serializable") + "\n";
  }
  let mut s = String::new();
  for (r, t) in report.suites.iter().zip(&report.timings) {
    let pass = r.checks.iter().filter(|c| c.passed()).count();
    let verdict = if r.passed() { "ok" } else { "FAILED" };
    s += &format!("h={} {:<11} {:>4}/{:<4} {:<6} {:.2}s\n", r.h, r.suite, pass, r.checks.len(), verdict, t);
    for c in r.failures() {
      s += &format!("    fail {}: {}\n", c.id, c.witness.as_deref().unwrap_or(""));
    }
  }
  if !report.dims.is_empty() {
    s += "\ndim H_(k), k = 1..h-1\n";
    for row in &report.dims {
      s += &format!("  h={} {:<10} {:?}\n", row.h, row.source, row.dims);
    }
  }
  s += &if report.passed {
    format!("\nall {} checks passed\n", report.checks)
  } else {
    format!("\n{} of {} checks failed\n", report.failed, report.checks)
  };
  s
}

/// Homology of a user matrix together with its Jordan type and the multiplicity-formula prediction.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyOutput {
  pub schema:         &'static str,
  pub version:        &'static str,
  pub command:        &'static str,
  pub h:              usize,
  pub dim:            usize,
  #[serde(skip_serializing_if = "Option::is_none")]
  pub k:              Option<usize>,
  pub dims:           Vec<usize>,
  pub profile:        NilpotentProfile,
  pub formula_dims:   Vec<usize>,
  pub formula_agrees: bool,
}

/// Generalized homology of the matrix in `path`, nilpotent of order `h` (or the file's height).
pub fn cmd_homology(path: &Path, h: Option<usize>, k: Option<usize>) -> Result<HomologyOutput> {
  let file = MatrixFile::read(path)?;
  let (field, m) = file.to_matrix()?;
  let h = h.unwrap_or(field.h());
  let profile = nilpotent_profile(&field, &m, h)?;
  if let Some(k) = k {
    if k == 0 || k >= h {
      return Err(Error::OutOfRange(format!("homology index k = {k} outside 1..={}", h - 1)));
    }
  }
  let space = HDiffSpace::new(&field, h, m)?;
  let all = homology_report(&field, &space).dims;
  let m_i: Vec<i64> = profile.multiplicities.iter().map(|&x| x as i64).collect();
  let formula_dims = homology_dims_from_multiplicities(&m_i, h)?;
  let formula_agrees = formula_dims == all;
  let dims = match k {
    Some(k) => vec![all[k - 1]],
    None => all,
  };
  Ok(HomologyOutput {
    schema: SCHEMA,
    version: env!("CARGO_PKG_VERSION"),
    command: "homology",
    h,
    dim: space.dim(),
    k,
    dims,
    profile,
    formula_dims,
    formula_agrees,
  })
}

fn render_homology(out: &HomologyOutput, format: Format) -> String {
  if format == Format::Json {
    return serde_json::to_string_pretty(out).expect("serializable") + "\n";
  }
  let label = match out.k {
    Some(k) => format!("dim H_({k})"),
    None => format!("dim H_(k), k = 1..{}", out.h - 1),
  };
  format!(
    "h = {}, dim = {}\n{label}: {:?}\nranks of powers: {:?}\nJordan multiplicities: {:?}\nmultiplicity formula: {:?} ({})\n",
    out.h,
    out.dim,
    out.dims,
    out.profile.ranks,
    out.profile.multiplicities,
    out.formula_dims,
    if out.formula_agrees { "agrees" } else { "DISAGREES" }
  )
}

#[derive(Clone, Debug, Serialize)]
struct FeasibilityOutput {
  schema:  &'static str,
  version: &'static str,
  command: &'static str,
  #[serde(flatten)]
  result:  Feasibility,
}

pub fn cmd_feasibility(dim: usize, h: usize) -> Result<Feasibility> { feasibility(dim, h) }

fn render_feasibility(f: Feasibility, format: Format) -> String {
  if format == Format::Json {
    let out = FeasibilityOutput { schema: SCHEMA, version: env!("CARGO_PKG_VERSION"), command: "feasibility", result: f };
    return serde_json::to_string_pretty(&out).expect("serializable") + "\n";
  }
  let mut s = format!("dim = {}, h = {}: {}\n", f.dim, f.h, if f.feasible { "feasible" } else { "infeasible" });
  for w in &f.witnesses {
    s += &format!("  m = {w:?}\n");
  }
  s
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> bool {
  let result = match out {
    Some(p) => std::fs::write(p, text),
    None => stdout.write_all(text.as_bytes()),
  };
  match result {
    Ok(()) => true,
    Err(e) => {
      let _ = writeln!(stderr, "error: cannot write report: {e}");
      false
    }
  }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
  I: IntoIterator<Item = T>,
  T: Into<OsString> + Clone,
{
  let cli = match Cli::try_parse_from(args) {
    Ok(c) => c,
    Err(e) => {
      let code = e.exit_code();
      let rendered = e.render().to_string();
      let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
      return code;
    }
  };
  match cli.command {
    Command::Verify(args) => {
      let config = match SuiteConfig::from_args(&args) {
        Ok(c) => c,
        Err(msg) => {
          let _ = writeln!(stderr, "error: {msg}");
          return EXIT_USAGE;
        }
      };
      let report = cmd_verify(&config);
      if !emit(&render_verify(&report, config.format), args.out.as_deref(), stdout, stderr) {
        return EXIT_USAGE;
      }
      if report.passed { EXIT_PASS } else { EXIT_FAIL }
    }
    Command::Homology(args) => match cmd_homology(&args.matrix, args.height.map(|h| h as usize), args.k) {
      Ok(out) => {
        if !emit(&render_homology(&out, args.format), args.out.as_deref(), stdout, stderr) {
          return EXIT_USAGE;
        }
        if out.formula_agrees { EXIT_PASS } else { EXIT_FAIL }
      }
      Err(e) => {
        let _ = writeln!(stderr, "error: {e}");
        match e {
          Error::Io(_) | Error::Json(_) | Error::Parse(_) | Error::OutOfRange(_) | Error::InvalidHeight(_) | Error::Dimension(_) => {
            EXIT_USAGE
          }
          _ => EXIT_FAIL,
        }
      }
    },
    Command::Feasibility(args) => match cmd_feasibility(args.dim, args.height as usize) {
      Ok(f) => {
        if !emit(&render_feasibility(f, args.format), args.out.as_deref(), stdout, stderr) {
          return EXIT_USAGE;
        }
        EXIT_PASS
      }
      Err(e) => {
        let _ = writeln!(stderr, "error: {e}");
        EXIT_USAGE
      }
    },
  }
}
