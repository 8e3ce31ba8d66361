//! Command-line front end: expression parsing, subcommands, reports.
//!
//! Exit codes: `0` success, `1` usage or domain error, `2` a checked
//! identity failed.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod parser;
pub mod report;

pub use commands::{execute, InputSpec, Source};
pub use parser::{parse_expression, ParseError};
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] crinv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            // two exact computations of the same quantity disagreed
            CliError::Core(crinv::Error::Inconsistent(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    /// Hermitian metric h on a line bundle; e^{2φ} = −∂∂̄ log h.
    #[value(name = "line_bundle_metric_h")]
    LineBundleMetricH,
    /// The conformal factor e^{2φ} directly.
    #[value(name = "conformal_factor_e2phi")]
    ConformalFactorE2phi,
    /// F in Im w = F(z, z̄).
    #[value(name = "rigid_defining_F")]
    RigidDefiningF,
    /// ψ(u) in e^{2φ} = (1+zz̄)^{−2} exp(2ψ(u)), u = zz̄/(1+zz̄).
    #[value(name = "compact_profile_psi")]
    CompactProfilePsi,
}

impl InputKind {
    pub fn name(self) -> &'static str {
        match self {
            InputKind::LineBundleMetricH => "line_bundle_metric_h",
            InputKind::ConformalFactorE2phi => "conformal_factor_e2phi",
            InputKind::RigidDefiningF => "rigid_defining_F",
            InputKind::CompactProfilePsi => "compact_profile_psi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// K, R and b of the chart.
    Curvature,
    /// r, s, Q and Q;11 with the full residual table.
    Invariants,
    /// Whether r vanishes through the available order.
    Sphericity,
    /// Calibrate Q;11(0) = c·A⁰₄₄ on z z̄ + ε z⁴z̄⁴.
    CalibrateC,
    /// Quadrature checks on a compact profile ψ(u).
    QuadratureCheck,
    /// Exact identity residuals only.
    VerifyIdentities,
}

#[derive(Clone, Debug, Default, clap::Args)]
pub struct Options {
    #[arg(long, global = true, value_enum)]
    pub input_kind: Option<InputKind>,
    /// Expression in z, zb (or u for compact_profile_psi).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub expr: Option<String>,
    #[arg(long, global = true)]
    pub coeff_file: Option<PathBuf>,
    /// Truncation order [default: 16].
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Fiber coordinate λ as `re,im` or a real rational.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Comma-separated rationals [default: 1/10,1/16,1/25].
    #[arg(long, global = true)]
    pub probes: Option<String>,
    /// Relative tolerance for numeric identity checks [default: 1e-6].
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "crinv", version, about = "Exact CR invariants of circle bundles and rigid hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

/// Renders the report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}

/// Runs `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let text = render(&report, cli.opts.format);
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{text}"),
    }
    report.exit_code()
}
