use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use torsion_tower_cli::{
    cmd_classify, cmd_factor, cmd_generate, cmd_torsion, cmd_verify_tables, parse_coeffs, parse_family, CliError,
    CurveSpec, FixtureSource, GenerateMode, ReportBody, ReportJson, FIXTURES_ENV,
};
use torsion_tower_core::classifier::ClassifyOptions;
use torsion_tower_core::tower::DEFAULT_SAMPLE_SIZE;

/// Torsion of elliptic curves over Q and its growth in the cyclotomic
/// Z_p-extensions of Q. Reports go to stdout as JSON, logs to stderr.
#[derive(Parser)]
#[command(name = "torsion-tower", version)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    json_pretty: bool,
    /// Fixture file (JSON lines); the built-in copy is used when absent.
    #[arg(long, global = true, env = FIXTURES_ENV)]
    fixtures: Option<PathBuf>,
    /// Primes sampled per tower-membership test.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLE_SIZE)]
    sample_size: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CurveArgs {
    /// a-invariants `a1,a2,a3,a4,a6`.
    #[arg(long, allow_hyphen_values = true, value_name = "A1,A2,A3,A4,A6")]
    a: Option<String>,
    /// Fixture label, e.g. 14a2.
    #[arg(long)]
    label: Option<String>,
}

impl CurveArgs {
    fn spec(&self) -> Result<CurveSpec, CliError> {
        match (&self.a, &self.label) {
            (Some(a), _) => CurveSpec::parse_a(a),
            (None, Some(l)) => Ok(CurveSpec::Label(l.clone())),
            (None, None) => Err(CliError::Usage("give --a or --label".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rational torsion subgroup with generators.
    Torsion(CurveArgs),
    /// Torsion over the Z_p-extension of Q.
    Classify {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
    },
    /// Curves from a parametrised family, each verified by the classifier.
    Generate {
        /// triv-to-z7, z3-to-z9, z2xz2-over3, z3-to-z2xz6, z2xz2-over2 or
        /// twist2 (with --n, or inline as twist2:N).
        #[arg(long)]
        family: String,
        /// Prime p = 1 mod 3 for the 3-tower families.
        #[arg(long, conflicts_with_all = ["t", "count"])]
        p: Option<u64>,
        /// Rational torsion order for twist2.
        #[arg(long)]
        n: Option<u64>,
        /// Parameter for the 2-tower families.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "count")]
        t: Option<String>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Classify every fixture row and compare with its expectations.
    VerifyTables,
    /// Factor an integer polynomial over Q.
    Factor {
        /// Coefficients, constant term first.
        #[arg(long, allow_hyphen_values = true, value_name = "C0,C1,...")]
        coeffs: String,
    },
}

fn run(cli: &Cli) -> Result<Vec<ReportJson>, CliError> {
    let fixtures = FixtureSource { path: cli.fixtures.clone() };
    let opts = ClassifyOptions { sample_size: cli.sample_size };
    Ok(match &cli.command {
        Command::Torsion(c) => vec![cmd_torsion(&c.spec()?, &fixtures)?],
        Command::Classify { curve, p } => vec![cmd_classify(&curve.spec()?, *p, &opts, &fixtures)?],
        Command::Generate { family, p, n, t, count } => {
            let family = parse_family(family, *n)?;
            let mode = match (p, t) {
                (Some(p), _) => GenerateMode::Prime(*p),
                (None, Some(t)) => GenerateMode::Param(t.clone()),
                (None, None) => GenerateMode::Count(count.unwrap_or(1)),
            };
            cmd_generate(family, &mode, &opts)?
        }
        Command::VerifyTables => {
            let report = cmd_verify_tables(&fixtures, &opts)?;
            if let ReportBody::VerifyTables(s) = &report.result {
                for row in s.rows.iter().filter(|r| !r.matches) {
                    eprintln!("mismatch: {row}");
                }
                eprintln!("verify-tables: {}/{} rows match", s.matched, s.total);
            }
            vec![report]
        }
        Command::Factor { coeffs } => vec![cmd_factor(&parse_coeffs(coeffs)?)?],
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(reports) => {
            let mut out = std::io::stdout().lock();
            for r in &reports {
                // A closed pipe (e.g. `| head`) is not an error worth reporting.
                if writeln!(out, "{}", r.to_json(cli.json_pretty)).is_err() {
                    break;
                }
            }
            if reports.iter().all(ReportJson::ok) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
