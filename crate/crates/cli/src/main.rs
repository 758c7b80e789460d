use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use semislant::catalog::CHECKS;
use semislant::contact::StructureVariant;
use semislant::report::{
    run_suite, CheckSelection, CodomainMetric, Format, RunConfig, SampleMode, EXAMPLES,
};

#[derive(Parser)]
#[command(
    name = "semislant",
    version,
    about = "Verify semi-slant submersions from Sasakian manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite on a registry example or a config file.
    Verify(VerifyArgs),
    /// List the built-in example maps.
    ListExamples,
    /// List every check id with the formula it verifies.
    ListChecks,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(alias = "as_printed")]
    AsPrinted,
    Corrected,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleArg {
    #[value(alias = "slice_y0")]
    SliceY0,
    Box,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    #[value(alias = "quarter_identity")]
    QuarterIdentity,
    Euclidean,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Registry example id (see list-examples).
    #[arg(long, conflicts_with = "config")]
    example: Option<String>,
    /// JSON run configuration; other flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long, value_enum)]
    codomain_metric: Option<MetricArg>,
    /// Number of sample points.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    sample: Option<SampleArg>,
    #[arg(long)]
    box_halfwidth: Option<f64>,
    /// "all" or a comma-separated list of ids or id prefixes.
    #[arg(long)]
    checks: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_config(args: &VerifyArgs) -> Result<RunConfig, String> {
    let mut cfg = match (&args.config, &args.example) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            RunConfig::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, Some(id)) => RunConfig::for_example(id),
        (None, None) => return Err("one of --example or --config is required".into()),
    };
    if let Some(a) = args.alpha {
        cfg.alpha = Some(a);
    }
    if let Some(v) = args.variant {
        cfg.variant = match v {
            VariantArg::AsPrinted => StructureVariant::AsPrinted,
            VariantArg::Corrected => StructureVariant::Corrected,
        };
    }
    if let Some(m) = args.codomain_metric {
        cfg.codomain_metric = match m {
            MetricArg::QuarterIdentity => CodomainMetric::QuarterIdentity,
            MetricArg::Euclidean => CodomainMetric::Euclidean,
        };
    }
    if let Some(n) = args.points {
        cfg.sample.count = n;
    }
    if let Some(s) = args.seed {
        cfg.sample.seed = s;
    }
    if let Some(s) = args.sample {
        cfg.sample.mode = match s {
            SampleArg::SliceY0 => SampleMode::SliceY0,
            SampleArg::Box => SampleMode::Box,
        };
    }
    if let Some(h) = args.box_halfwidth {
        cfg.sample.box_halfwidth = h;
    }
    if let Some(c) = &args.checks {
        cfg.checks = CheckSelection::parse(c);
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn verify(args: VerifyArgs) -> ExitCode {
    let cfg = match build_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let body = report.emit(format);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            if let Err(code) = write_stdout(&body) {
                return code;
            }
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

/// A closed pipe (`| head`) ends output quietly; other errors exit 2.
fn write_stdout(text: &str) -> Result<(), ExitCode> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            Err(ExitCode::from(2))
        }
    }
}

fn list_examples() -> String {
    let mut out = String::new();
    for e in EXAMPLES {
        let theta = match e.expected_theta {
            Some(t) => format!("{t:.6}"),
            None => "alpha".into(),
        };
        out.push_str(&format!(
            "{}  R^{} -> R^{}  {}  alpha {}  theta {}  dim D1 {}  dim D2 {}\n",
            e.id,
            2 * e.n + 1,
            e.m2,
            e.formula,
            if e.needs_alpha { "required" } else { "unused" },
            theta,
            e.dim_d1,
            e.dim_d2
        ));
    }
    out
}

fn list_checks() -> String {
    let width = CHECKS.iter().map(|c| c.id.len()).max().unwrap_or(0);
    CHECKS
        .iter()
        .map(|c| format!("{:<width$}  {}\n", c.id, c.anchor))
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::ListExamples => write_stdout(&list_examples())
            .err()
            .unwrap_or(ExitCode::SUCCESS),
        Command::ListChecks => write_stdout(&list_checks())
            .err()
            .unwrap_or(ExitCode::SUCCESS),
    }
}
