//! Command-line front end for the jetchern engine.

pub mod config;
pub mod report;
pub mod run;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{CommandKind, ConfigError, Format, Preset, RunConfig, Settings};
use report::Report;

pub use run::{run, RunError};

/// Exit status for malformed configuration or rejected input.
pub const EXIT_CONFIG: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "jetchern", version, about = "Top Chern classes of first jet bundles: verification suites and scenario reports")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest dimension n in sweeps (default 8).
    #[arg(long, global = true)]
    pub n_max: Option<i64>,
    /// Treat warnings as failures.
    #[arg(long, global = true)]
    pub strict: bool,
    /// JSON file with default settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Sub>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Run every identity, oracle, fibration and classification check.
    VerifyIdentities(VerifyArgs),
    /// c_n(J_1(L)) and defect of one scroll.
    Scroll(ScrollArgs),
    /// c_n(J_1(L)) of one hyperquadric fibration over a curve.
    Hqf(HqfArgs),
    /// Classification from dimension and defect.
    Classify(ClassifyArgs),
    /// Invariants of the conormal variety of Y^m in P^N.
    Conormal(ConormalArgs),
    /// Codegree split for a smooth plane curve.
    Plucker(PluckerArgs),
    /// Compare closed form and expansion for one pair or the whole grid.
    OracleCompare(PairArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest base dimension for ring identities and presets (default 6).
    #[arg(long)]
    pub m_max: Option<i64>,
    /// |e|, |b| bound of the fibration grid (default 10).
    #[arg(long)]
    pub hqf_bound: Option<i64>,
    /// Largest genus in the fibration grid (default 3).
    #[arg(long)]
    pub hqf_g_max: Option<i64>,
    /// |e|, |b| bound of the obstruction search (default 10000).
    #[arg(long)]
    pub search_bound: Option<i64>,
}

#[derive(Debug, Args)]
pub struct ScrollArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<i64>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
}

#[derive(Debug, Args)]
pub struct HqfArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub e: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<i64>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub defect: Option<i64>,
    #[arg(long)]
    pub picard_rank_one: bool,
}

#[derive(Debug, Args)]
pub struct ConormalArgs {
    /// N, the dimension of the ambient projective space.
    #[arg(long, allow_negative_numbers = true)]
    pub ambient: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<i64>,
}

#[derive(Debug, Args)]
pub struct PluckerArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub degree: Option<i64>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<i64>,
}

impl Cli {
    /// Settings given on the command line; unset flags stay `None`.
    pub fn flag_settings(&self) -> Settings {
        let mut s = Settings {
            output: self.output.clone(),
            format: self.format,
            n_max: self.n_max,
            strict: self.strict.then_some(true),
            ..Settings::default()
        };
        match &self.command {
            None => {}
            Some(Sub::VerifyIdentities(a)) => {
                s.command = Some(CommandKind::VerifyIdentities);
                s.m_max = a.m_max;
                s.hqf_bound = a.hqf_bound;
                s.hqf_g_max = a.hqf_g_max;
                s.search_bound = a.search_bound;
            }
            Some(Sub::Scroll(a)) => {
                s.command = Some(CommandKind::Scroll);
                (s.m, s.r, s.preset) = (a.m, a.r, a.preset);
            }
            Some(Sub::Hqf(a)) => {
                s.command = Some(CommandKind::Hqf);
                (s.n, s.g, s.e, s.b) = (a.n, a.g, a.e, a.b);
            }
            Some(Sub::Classify(a)) => {
                s.command = Some(CommandKind::Classify);
                (s.n, s.defect) = (a.n, a.defect);
                s.picard_rank_one = a.picard_rank_one.then_some(true);
            }
            Some(Sub::Conormal(a)) => {
                s.command = Some(CommandKind::Conormal);
                (s.ambient, s.m) = (a.ambient, a.m);
            }
            Some(Sub::Plucker(a)) => {
                s.command = Some(CommandKind::Plucker);
                s.degree = a.degree;
            }
            Some(Sub::OracleCompare(a)) => {
                s.command = Some(CommandKind::OracleCompare);
                (s.m, s.r) = (a.m, a.r);
            }
        }
        s
    }

    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let base = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        RunConfig::resolve(base.overlay(self.flag_settings()))
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

/// Runs a parsed command line, writing to `out` / `err`; returns the exit status.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let config = match cli.resolve() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let text = render(&report, config.format);
    match &config.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return EXIT_CONFIG;
            }
            let s = report.summary;
            let _ = writeln!(err, "{} pass, {} fail, {} info; report written to {}", s.pass, s.fail, s.info, path.display());
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    for f in report.failures() {
        let values = serde_json::to_string(&f.values).unwrap_or_default();
        let _ = writeln!(err, "failed: {} {values}", f.name);
    }
    report.exit_code()
}
