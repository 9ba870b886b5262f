use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spinorlab::flat::{CircleSpinStructure, Model};
use spinorlab_cli::report::{self, BoundRequest, CompareModel, Format, Operator, Structure};
use spinorlab_cli::{certify, default_range, suite_ids, NRange, SuiteConfig};

#[derive(Parser)]
#[command(name = "spinorlab", version, about = "Spinors on Lagrangian submanifolds: certification suites, spectra and eigenvalue bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpectrumModel {
    Circle,
    Torus,
    Sphere,
}

#[derive(Subcommand)]
enum Command {
    /// Run one certification suite and print its JSON result.
    Certify {
        /// Suite id; `list` prints the known ids.
        suite: String,
        /// Dimensions, `a..b` or a single `n`.
        #[arg(long = "n")]
        range: Option<NRange>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "SPINORLAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Fourier cutoff for the flat-model suites.
        #[arg(long = "K")]
        cutoff: Option<i64>,
    },
    /// Spectrum of a flat-model operator or of closed forms on a sphere.
    Spectrum {
        model: SpectrumModel,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        kmax: Option<u64>,
        #[arg(long = "K", default_value_t = 2)]
        cutoff: i64,
        #[arg(long, value_enum, default_value_t = Structure::Nontrivial)]
        structure: Structure,
        /// Defaults to the circle's own Dirac operator, and to the twisted
        /// Dirac operator on the torus.
        #[arg(long, value_enum)]
        operator: Option<Operator>,
        #[arg(long)]
        squared: bool,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Upper bound for λ_N, optionally compared with a model spectrum.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        alpha2: String,
        #[arg(long)]
        h_mean_sq: Option<String>,
        #[arg(long)]
        h_sup_sq: Option<String>,
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long, value_enum)]
        compare: Option<CompareModel>,
        #[arg(long = "K", default_value_t = 1)]
        cutoff: i64,
        #[arg(long, value_enum, default_value_t = Structure::Nontrivial)]
        structure: Structure,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Certify { suite, range, trials, seed, tolerance, cutoff } => {
            if suite == "list" {
                emit(&(suite_ids().join("\n") + "\n"));
                return ExitCode::SUCCESS;
            }
            let Some(range) = range.or_else(|| default_range(&suite)) else {
                return usage(&format!("unknown suite {suite:?}; known suites: {}", suite_ids().join(", ")));
            };
            let config = SuiteConfig::new(range, trials, seed, tolerance).with_cutoff(cutoff);
            match certify(&suite, &config) {
                Ok(result) => {
                    emit(&(serde_json::to_string_pretty(&result).expect("results serialize") + "\n"));
                    if result.pass {
                        ExitCode::SUCCESS
                    } else {
                        eprintln!("FAIL {}: {}", result.suite, result.failing_checks().join(", "));
                        ExitCode::from(1)
                    }
                }
                Err(e) => usage(&e),
            }
        }
        Command::Spectrum { model, n, p, kmax, cutoff, structure, operator, squared, tolerance, format } => {
            let text = match model {
                SpectrumModel::Sphere => match (n, p, kmax) {
                    (Some(n), Some(p), Some(kmax)) => report::sphere_spectrum(n, p, kmax, format),
                    _ => return usage("the sphere spectrum needs --n, --p and --kmax"),
                },
                SpectrumModel::Circle | SpectrumModel::Torus => {
                    let m = match model {
                        SpectrumModel::Circle => Model::Circle(CircleSpinStructure::new(structure.into())),
                        _ => match n {
                            Some(n) => Model::Torus(n as usize),
                            None => return usage("the torus spectrum needs --n"),
                        },
                    };
                    let default_op = if matches!(model, SpectrumModel::Circle) {
                        Operator::Fundamental
                    } else {
                        Operator::TwistedDirac
                    };
                    report::flat_spectrum(m, operator.unwrap_or(default_op), cutoff, squared, tolerance)
                        .map(|r| report::render_flat(&r, format))
                }
            };
            match text {
                Ok(t) => {
                    emit(&t);
                    ExitCode::SUCCESS
                }
                Err(e) => usage(&e.0),
            }
        }
        Command::Bound { n, alpha2, h_mean_sq, h_sup_sq, big_n, compare, cutoff, structure, tolerance, format } => {
            let req = BoundRequest { n, alpha2, h_mean_sq, h_sup_sq, big_n, compare, cutoff, structure, tolerance };
            match report::bound(&req, format) {
                Ok(r) => {
                    emit(&r.text);
                    ExitCode::from(r.exit_code as u8)
                }
                Err(e) => usage(&e.0),
            }
        }
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            ExitCode::from(code)
        }
    }
}
