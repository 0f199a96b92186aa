use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stirling_core::expectation::{mc_estimate_degenerate_moment, mc_estimate_moment_sum};
use stirling_core::{build_triangle, Family, McConfig};
use stirtool::checks::{run_check, CheckName};
use stirtool::render::{render, Format};
use stirtool::{format_mc_report, DEFAULT_MAX_N_CAP};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "stirtool",
    version,
    about = "Tables, identity checks and Monte Carlo runs for degenerate Stirling numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a triangle of one number family.
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Largest accepted --max-n.
        #[arg(long, default_value_t = DEFAULT_MAX_N_CAP)]
        max_n_cap: usize,
    },
    /// Run a named identity check; exits 1 on the first counterexample.
    Check {
        #[arg(long, value_enum)]
        name: CheckArg,
        #[arg(long)]
        max_n: usize,
    },
    /// Monte Carlo estimate of a degenerate moment E[(S_k)_{n,λ}].
    Mc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// Worker partitions; never changes the result.
        #[arg(long, default_value_t = 8)]
        chunks: usize,
        /// `moment` estimates E[(S_k)_{n,λ}]; `moment-sum` estimates the
        /// moment sum that equals the unsigned first-kind number (n,k) at −λ.
        #[arg(long, value_enum, default_value = "moment")]
        target: TargetArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    S1,
    S1u,
    S2,
    Ds1,
    Ds2,
    Ns1,
    Ns1u,
    Ns2,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::S1 => Family::S1,
            FamilyArg::S1u => Family::S1U,
            FamilyArg::S2 => Family::S2,
            FamilyArg::Ds1 => Family::DS1,
            FamilyArg::Ds2 => Family::DS2,
            FamilyArg::Ns1 => Family::NS1,
            FamilyArg::Ns1u => Family::NS1U,
            FamilyArg::Ns2 => Family::NS2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Tsv,
    Json,
    Latex,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Tsv => Format::Tsv,
            FormatArg::Json => Format::Json,
            FormatArg::Latex => Format::Latex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    #[value(name = "theorem-2-1")]
    FirstKindConvolution,
    #[value(name = "theorem-3-1")]
    SecondKindConvolution,
    #[value(name = "theorem-2-2")]
    MomentSum,
    Inversion,
    GfVsConv,
    #[value(name = "limit-lambda0")]
    LimitLambda0,
    #[value(name = "adell-lekuona")]
    PowerMoment,
}

impl From<CheckArg> for CheckName {
    fn from(c: CheckArg) -> CheckName {
        match c {
            CheckArg::FirstKindConvolution => CheckName::FirstKindConvolution,
            CheckArg::SecondKindConvolution => CheckName::SecondKindConvolution,
            CheckArg::MomentSum => CheckName::MomentSum,
            CheckArg::Inversion => CheckName::Inversion,
            CheckArg::GfVsConv => CheckName::GfVsConv,
            CheckArg::LimitLambda0 => CheckName::LimitLambda0,
            CheckArg::PowerMoment => CheckName::PowerMoment,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Moment,
    #[value(name = "moment-sum")]
    MomentSum,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Table {
            family,
            max_n,
            format,
            max_n_cap,
        } => {
            if max_n > max_n_cap {
                return usage_error(format!("--max-n {max_n} exceeds the cap {max_n_cap}"));
            }
            emit(&render(
                &build_triangle(family.into(), max_n),
                format.into(),
            ));
            ExitCode::SUCCESS
        }
        Command::Check { name, max_n } => {
            if max_n < 1 {
                return usage_error("--max-n must be at least 1");
            }
            let result = run_check(name.into(), max_n);
            emit(&format!("{}\n{}\n", result.summary(), result.to_json()));
            if result.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Command::Mc {
            k,
            n,
            lambda,
            samples,
            seed,
            chunks,
            target,
        } => {
            let cfg = McConfig {
                k,
                n,
                lambda,
                samples,
                seed,
                chunks,
            };
            let (label, report) = match target {
                TargetArg::Moment => ("moment", mc_estimate_degenerate_moment(&cfg)),
                TargetArg::MomentSum => ("moment-sum", mc_estimate_moment_sum(&cfg)),
            };
            match report {
                Err(e) => usage_error(e),
                Ok(report) => {
                    emit(&format_mc_report(label, &cfg, &report));
                    if report.passes() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_FAIL)
                    }
                }
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
