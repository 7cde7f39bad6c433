use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use isogeny_alpha::exactnum::RationalPolynomial;
use isogeny_alpha::formalgroup::{default_order, formal_expansion, isogeny_series, multiplication_series};
use isogeny_alpha::isogeny::{find_kernels, velu, KernelPolynomial};
use isogeny_alpha::localdata::minimal_model;
use isogeny_alpha::verify::{analyze, builtin_corpus, load_corpus, run_verification, CorpusEntry, SeriesOrders, VerifyOptions};
use isogeny_alpha::weierstrass::WeierstrassModel;
use isogeny_alpha::{Error, Result};

#[derive(Parser)]
#[command(name = "isogeny-alpha", version, about = "Local data of elliptic curves and the p-isogeny invariant alpha")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Local data for E and E', alpha, and every applicable check, as JSON.
    Analyze {
        #[arg(long, allow_hyphen_values = true)]
        curve: WeierstrassModel,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        /// Kernel polynomial coefficients, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        kernel: Option<RationalPolynomial>,
        /// Truncation order of the series checks.
        #[arg(long)]
        precision: Option<i64>,
    },
    /// Runs a corpus; exit code 0 iff every check passes.
    Verify {
        /// Line-delimited JSON corpus; the built-in corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        fail_fast: bool,
    },
    /// Prints a formal series.
    Series {
        #[arg(long, allow_hyphen_values = true)]
        curve: WeierstrassModel,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        op: SeriesOp,
        #[arg(long, allow_hyphen_values = true)]
        kernel: Option<RationalPolynomial>,
        /// Truncation order; p² + 4 when omitted.
        #[arg(long)]
        precision: Option<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesOp {
    /// w, x, y and ω of the minimal model
    Formal,
    /// [p](z) on the minimal model
    Mulp,
    /// Φ(z) of the p-isogeny between minimal models
    Phi,
}

fn orders(p: u64, precision: Option<i64>) -> SeriesOrders {
    match precision {
        None => SeriesOrders::default(),
        Some(n) => SeriesOrders { leading: Some(n), composition: Some(n), height: Some(n.max((p * p + 1) as i64)) },
    }
}

fn kernel(k: Option<RationalPolynomial>) -> Result<Option<KernelPolynomial>> {
    k.map(KernelPolynomial::new).transpose()
}

fn series(curve: &WeierstrassModel, p: u64, op: SeriesOp, k: Option<KernelPolynomial>, n: i64) -> Result<String> {
    let (min, _) = minimal_model(curve, p)?;
    Ok(match op {
        SeriesOp::Formal => {
            let ex = formal_expansion(&min, n)?;
            format!("model {min}\nw(z) = {}\nx(z) = {}\ny(z) = {}\nω(z) = {}", ex.w, ex.x, ex.y, ex.omega)
        }
        SeriesOp::Mulp => format!("[{p}](z) = {}", multiplication_series(&min, p as i64, n)?),
        SeriesOp::Phi => {
            let k = match k {
                Some(k) => k,
                None => {
                    let mut ks = find_kernels(curve, p)?;
                    if ks.len() != 1 {
                        return Err(Error::Inconsistent(format!("{} rational {p}-isogenies; pass --kernel", ks.len())));
                    }
                    ks.remove(0)
                }
            };
            let iso = velu(curve, &k)?;
            let phi = isogeny_series(&iso, n)?;
            format!(
                "{} -> {}\na1 = {} (valuation {})\nΦ(z) = {phi}",
                phi.domain,
                phi.codomain,
                phi.a1,
                phi.a1_valuation(p)
            )
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { curve, p, f, kernel: k, precision } => {
            let mut entry = CorpusEntry::new("cli", curve, p);
            entry.f = f;
            entry.kernel = kernel(k)?;
            let report = analyze(&entry, &orders(p, precision));
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(if report.failed() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Command::Verify { corpus, out, fail_fast } => {
            let entries = match corpus {
                Some(path) => load_corpus(path)?,
                None => builtin_corpus(),
            };
            let opts = VerifyOptions { fail_fast, ..VerifyOptions::default() };
            let report = run_verification(&entries, &opts);
            let json = report.to_json();
            match out {
                Some(path) => fs::write(&path, json + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
                None => println!("{json}"),
            }
            let s = &report.summary;
            eprintln!(
                "{} entries, {} failed; checks: {} passed, {} failed, {} skipped",
                s.entries, s.entries_failed, s.checks_passed, s.checks_failed, s.checks_skipped
            );
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Series { curve, p, op, kernel: k, precision } => {
            let n = precision.unwrap_or_else(|| default_order(p));
            println!("{}", series(&curve, p, op, kernel(k)?, n)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
