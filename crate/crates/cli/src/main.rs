use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use balanced_words::asymptotics::{error_b11_scan, exponential_sum_scan, gcd_box_sum, FranelRow};
use balanced_words::calibration::Constants;
use balanced_words::counting::count_b_classic;
use balanced_words::geometry::{parameter_system_with, Convention};
use balanced_words::{
    count_b_fast, count_b_oracle, count_b_theorem, farey_sequence, parse_rational, partition_svg, scan, ParamRegion,
    Rational, Threshold, Word,
};
use rayon::prelude::*;

mod output;
mod verify;

use output::{write_csv, write_text, Format};

#[derive(Parser, Debug)]
#[command(
    name = "balanced",
    version,
    about = "Exact counts of balanced words by slope and intercept"
)]
struct Cli {
    /// Worker threads for parallel computations (defaults to all cores).
    #[arg(long, global = true, env = "BALANCED_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print B(n, t, u).
    Count {
        #[arg(long)]
        n: u64,
        /// Slope threshold, as an integer, fraction `p/q` or exact decimal.
        #[arg(long, default_value = "1")]
        t: String,
        /// Intercept threshold, same syntax as `--t`.
        #[arg(long, default_value = "1")]
        u: String,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
    },
    /// Table of A(m), B(m) and the main-term deviation for m = 1..=n-max.
    Scan {
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long, default_value = "1")]
        u: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check the counting identities for all sizes up to n-max.
    Verify {
        #[arg(long)]
        n_max: u64,
    },
    /// The Farey sequence of order m.
    Farey {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact Franel integrals for m = 1..=m-max.
    Franel {
        #[arg(long)]
        m_max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Farey exponential sums beside the Mertens function.
    Expsum {
        #[arg(long)]
        m_max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// gcd sums over the boxes (H, 2H]^2 with H = 2^k, k = 1..=k-max.
    Gcdsum {
        #[arg(long)]
        k_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Deviation of B(n, 1, 1) from (n^3 + 3n^2) / pi^2.
    Errors {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG of the order-m segment arrangement over the region.
    Partition {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long, default_value = "1")]
        u: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linear constraints describing the parameters that code a word.
    System {
        #[arg(long)]
        word: String,
        #[arg(long)]
        branch: u8,
        #[arg(long, value_enum, default_value_t = ConventionArg::Lower)]
        convention: ConventionArg,
    },
    /// Measure the constants of the finite-range bounds and print them as JSON.
    Calibrate {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Theorem,
    Fast,
    Oracle,
    Classic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Lower,
    Upper,
}

fn parse_arg(name: &str, value: &str) -> Result<Rational> {
    parse_rational(value).with_context(|| format!("--{name}"))
}

fn threshold(t: &str, u: &str) -> Result<Threshold> {
    Ok(Threshold::new(&parse_arg("t", t)?, &parse_arg("u", u)?)?)
}

fn positive(name: &str, value: u64) -> Result<()> {
    if value == 0 {
        bail!("--{name} must be positive");
    }
    Ok(())
}

fn count(n: u64, t: &str, u: &str, method: Method) -> Result<String> {
    positive("n", n)?;
    let value = match method {
        Method::Theorem => count_b_theorem(n, &threshold(t, u)?)?,
        Method::Fast => count_b_fast(n, &threshold(t, u)?)?,
        Method::Oracle => {
            let region = ParamRegion::new(parse_arg("u", u)?, parse_arg("t", t)?)?;
            count_b_oracle(usize::try_from(n)?, &region)?
        }
        Method::Classic => {
            if !threshold(t, u)?.is_full() {
                bail!("the classic formula counts the full square only (t = u = 1)");
            }
            count_b_classic(n)?
        }
    };
    Ok(format!("{value}\n"))
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Count { n, t, u, method } => print!("{}", count(n, &t, &u, method)?),
        Command::Scan {
            n_max,
            t,
            u,
            out,
            format,
        } => {
            positive("n-max", n_max)?;
            let table = scan(n_max, &threshold(&t, &u)?)?;
            match format {
                Format::Csv => write_csv(out.as_deref(), &table.rows)?,
                Format::Json => write_text(out.as_deref(), &(serde_json::to_string_pretty(&table)? + "\n"))?,
            }
        }
        Command::Verify { n_max } => {
            positive("n-max", n_max)?;
            let results = verify::run_suite(n_max)?;
            for check in &results {
                println!("{check}");
            }
            if results.iter().any(|c| !c.passed()) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Farey { m, out } => {
            positive("m", m)?;
            let farey = farey_sequence(m)?;
            let rows: Vec<output::FareyRow> = farey
                .fractions()
                .iter()
                .zip(1..)
                .map(|(f, index)| output::FareyRow {
                    index,
                    numerator: f.numer,
                    denominator: f.denom,
                })
                .collect();
            write_csv(out.as_deref(), &rows)?;
        }
        Command::Franel { m_max, out } => {
            positive("m-max", m_max)?;
            let rows = (1..=m_max)
                .into_par_iter()
                .map(FranelRow::new)
                .collect::<balanced_words::Result<Vec<_>>>()?;
            write_csv(out.as_deref(), &rows)?;
        }
        Command::Expsum { m_max, out } => {
            positive("m-max", m_max)?;
            write_csv(out.as_deref(), &exponential_sum_scan(m_max)?)?;
        }
        Command::Gcdsum { k_max, out } => {
            if !(1..=16).contains(&k_max) {
                bail!("--k-max must lie in 1..=16");
            }
            let rows = (1..=k_max)
                .into_par_iter()
                .map(|k| gcd_box_sum(1 << k, 1 << k).map(|(_, report)| report))
                .collect::<balanced_words::Result<Vec<_>>>()?;
            write_csv(out.as_deref(), &rows)?;
        }
        Command::Errors { n_max, out } => {
            positive("n-max", n_max)?;
            write_csv(out.as_deref(), &error_b11_scan(n_max)?)?;
        }
        Command::Partition { m, t, u, out } => {
            let region = ParamRegion::new(parse_arg("u", &u)?, parse_arg("t", &t)?)?;
            write_text(out.as_deref(), &partition_svg(m, &region)?)?;
        }
        Command::System {
            word,
            branch,
            convention,
        } => {
            let word: Word = word.parse()?;
            let convention = match convention {
                ConventionArg::Lower => Convention::Lower,
                ConventionArg::Upper => Convention::Upper,
            };
            let sys = parameter_system_with(&word, branch, convention)?;
            println!("{}", serde_json::to_string_pretty(&sys.to_json(&word, branch))?);
        }
        Command::Calibrate { out } => {
            let constants = Constants::measure()?;
            write_text(out.as_deref(), &(serde_json::to_string_pretty(&constants)? + "\n"))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(workers);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::FAILURE;
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
