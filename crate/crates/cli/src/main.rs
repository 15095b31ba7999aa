//! Command-line verifier for preference aggregation at small scale.
//!
//! Exit codes: 0 every requested check passed; 1 a check failed (the
//! witness is printed); 2 usage or I/O error; 3 a checker's standing
//! hypotheses were not met.

mod files;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use arrovian::decisive::{
    check_ultrafilter, decisive_family, is_decisive, is_strongly_decisive,
};
use arrovian::factorization::{check_factorization, FactorError};
use arrovian::naturality::{
    check_naturality_inclusions, check_naturality_injections, enumerate_natural_transformations,
    extend_from_top, NaturalityError,
};
use arrovian::orders::{enumerate_linear_orders, enumerate_weak_orders, AlternativeSet};
use arrovian::profiles::{check_ud_within_kind, Coalition, DomainFamily, DomainKind};
use arrovian::search::{verify_arrow, SearchConfig, SearchError};
use arrovian::swf::Swf;

#[derive(Parser)]
#[command(
    name = "arrovian",
    version,
    about = "Exhaustive verification of preference-aggregation axioms at small scale"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderKindArg {
    Weak,
    Linear,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DomainArg {
    Linear,
    Weak,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and optionally list) the preference orders on n alternatives
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: OrderKindArg,
        /// Print one chain per line after the count
        #[arg(long)]
        list: bool,
    },
    /// Report UD, IIA, P, WP and dictatorship on a welfare-function file
    Check {
        #[arg(long)]
        swf: PathBuf,
    },
    /// Decisiveness tables, ultrafilter axioms and the principal generator
    Decisive {
        #[arg(long)]
        swf: PathBuf,
    },
    /// Boolean factorization: h, homomorphism laws, projection, square
    Factorize {
        #[arg(long)]
        swf: PathBuf,
    },
    /// Naturality of the subset family under inclusions (and injections)
    Naturality {
        #[arg(long)]
        swf: PathBuf,
        /// Also check naturality under arbitrary injective relabelings
        #[arg(long)]
        injections: bool,
    },
    /// Search all IIA+Pareto welfare functions and verify the dictatorship pipeline
    VerifyArrow {
        #[arg(long)]
        alternatives: usize,
        #[arg(long)]
        voters: usize,
        #[arg(long, value_enum, default_value_t = DomainArg::Linear)]
        domain: DomainArg,
        /// Worker threads for the scan (the report is identical for any value)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write each survivor to DIR/survivor_<i>.swf
        #[arg(long, value_name = "DIR")]
        emit_survivors: Option<PathBuf>,
    },
    /// Natural transformations X^k -> X over small finite sets
    NatTrans {
        #[arg(long)]
        arity: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

enum CliError {
    /// Bad input: malformed file, infeasible size, I/O failure.
    Usage(String),
    /// A checker refused to run because its standing hypotheses fail.
    Hypotheses(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Hypotheses(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Hypotheses(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Enumerate { n, kind, list } => enumerate(n, kind, list),
        Command::Check { swf } => check(&swf),
        Command::Decisive { swf } => decisive(&swf),
        Command::Factorize { swf } => factorize(&swf),
        Command::Naturality { swf, injections } => naturality(&swf, injections),
        Command::VerifyArrow { alternatives, voters, domain, jobs, emit_survivors } => {
            run_verify_arrow(alternatives, voters, domain, jobs, emit_survivors.as_deref())
        }
        Command::NatTrans { arity, max_size } => nat_trans(arity, max_size),
    }
}

fn enumerate(n: usize, kind: OrderKindArg, list: bool) -> Result<bool, CliError> {
    if n == 0 || n > 6 {
        return Err(CliError::Usage(format!("n must be between 1 and 6, got {n}")));
    }
    let carrier = AlternativeSet::canonical(n);
    let orders = match kind {
        OrderKindArg::Weak => enumerate_weak_orders(&carrier).map_err(usage)?,
        OrderKindArg::Linear => enumerate_linear_orders(&carrier).map_err(usage)?,
    };
    println!("{}", orders.len());
    if list {
        for r in &orders {
            println!("{}", r.to_chain().expect("enumerated orders are weak"));
        }
    }
    Ok(true)
}

fn load(path: &Path) -> Result<Swf, CliError> {
    files::load_swf(path).map_err(usage)
}

fn check(path: &Path) -> Result<bool, CliError> {
    let s = load(path)?;
    let mut pass = true;
    if s.carrier().len() < 3 {
        println!("UD: not-applicable (fewer than 3 alternatives)");
    } else {
        match check_ud_within_kind(s.domain()).map_err(usage)? {
            None => println!("UD: ok"),
            Some(w) => {
                println!("UD: FAIL {w}");
                pass = false;
            }
        }
    }
    match s.check_iia() {
        None => println!("IIA: ok"),
        Some(w) => {
            println!("IIA: FAIL {w}");
            pass = false;
        }
    }
    match s.check_pareto() {
        None => println!("P: ok"),
        Some(w) => {
            println!("P: FAIL {w}");
            pass = false;
        }
    }
    match s.check_weak_pareto() {
        None => println!("WP: ok"),
        Some(w) => {
            println!("WP: FAIL {w}");
            pass = false;
        }
    }
    match s.find_dictator() {
        Some(i) => println!("D: dictator={i}"),
        None => {
            println!("D: none");
            pass = false;
        }
    }
    Ok(pass)
}

fn format_pairs(pairs: &[(usize, usize)], carrier: &AlternativeSet) -> String {
    let parts: Vec<String> = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", carrier.label(a), carrier.label(b)))
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn decisive(path: &Path) -> Result<bool, CliError> {
    let s = load(path)?;
    let n = s.carrier().len();
    let fam = decisive_family(&s);
    println!("family: {fam}");
    for u in Coalition::all(s.voters()) {
        let mut d_pairs = Vec::new();
        let mut e_pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                if is_decisive(&s, u, a, b).map_err(usage)?.decisive {
                    d_pairs.push((a, b));
                }
                if is_strongly_decisive(&s, u, a, b).map_err(usage)? {
                    e_pairs.push((a, b));
                }
            }
        }
        println!(
            "coalition {u}: D={} E={}",
            format_pairs(&d_pairs, s.carrier()),
            format_pairs(&e_pairs, s.carrier())
        );
    }
    let report = check_ultrafilter(&fam);
    println!("{report}");
    Ok(report.all_pass())
}

fn factorize(path: &Path) -> Result<bool, CliError> {
    let s = load(path)?;
    let report = match check_factorization(&s) {
        Ok(r) => r,
        Err(FactorError::HypothesesNotMet { missing }) => {
            return Err(CliError::Hypotheses(format!(
                "factorization requires {}",
                missing.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
            )))
        }
        Err(e) => return Err(usage(e)),
    };
    println!("h={}", report.h);
    match &report.homomorphism {
        None => println!("homomorphism: yes"),
        Some(w) => println!("homomorphism: no ({w})"),
    }
    match report.projection {
        Some(i) => println!("projection: {i}"),
        None => println!("projection: none"),
    }
    match &report.square {
        None => println!("square: OK"),
        Some(w) => println!("square: FAIL({w})"),
    }
    Ok(report.ok())
}

fn naturality(path: &Path, injections: bool) -> Result<bool, CliError> {
    let s = load(path)?;
    let family = DomainFamily::from_top(s.domain()).map_err(usage)?;
    let extended = match extend_from_top(&s, &family) {
        Ok(f) => f,
        Err(e @ NaturalityError::IllDefined(_))
        | Err(e @ NaturalityError::NoLift { .. })
        | Err(e @ NaturalityError::RestrictionEscapes { .. }) => {
            println!("extension: FAIL {e}");
            return Ok(false);
        }
        Err(e) => return Err(usage(e)),
    };
    println!("extension: OK");
    let mut pass = true;
    match check_naturality_inclusions(&extended) {
        None => println!("inclusions: OK"),
        Some(w) => {
            println!("inclusions: FAIL {w}");
            pass = false;
        }
    }
    if injections {
        match check_naturality_injections(&extended) {
            Ok(None) => println!("injections: OK"),
            Ok(Some(w)) => {
                println!("injections: FAIL {w}");
                pass = false;
            }
            Err(NaturalityError::HypothesesNotMet { missing }) => {
                return Err(CliError::Hypotheses(format!(
                    "injection naturality requires {}",
                    missing.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
                )))
            }
            Err(e) => return Err(usage(e)),
        }
    }
    Ok(pass)
}

fn run_verify_arrow(
    alternatives: usize,
    voters: usize,
    domain: DomainArg,
    jobs: usize,
    emit: Option<&Path>,
) -> Result<bool, CliError> {
    let kind = match domain {
        DomainArg::Linear => DomainKind::FullLinear,
        DomainArg::Weak => DomainKind::FullWeak,
    };
    let cfg = SearchConfig { alternatives, voters, kind, jobs };
    let report = match verify_arrow(&cfg) {
        Ok(r) => r,
        Err(SearchError::AssertionFailed(msg)) => {
            println!("assertion failed: {msg}");
            return Ok(false);
        }
        Err(e) => return Err(usage(e)),
    };
    print!("{report}");
    eprintln!("elapsed: {:?}", report.duration);
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir).map_err(usage)?;
        for (i, survivor) in report.survivors.iter().enumerate() {
            let path = dir.join(format!("survivor_{i}.swf"));
            std::fs::write(&path, files::render_swf(&survivor.swf)).map_err(usage)?;
        }
    }
    Ok(true)
}

fn nat_trans(arity: usize, max_size: usize) -> Result<bool, CliError> {
    let survivors = enumerate_natural_transformations(arity, max_size).map_err(usage)?;
    println!("survivors={}", survivors.len());
    let mut all_projections = true;
    for (i, c) in survivors.iter().enumerate() {
        match c.as_projection() {
            Some(p) => println!("survivor {i}: projection={p}"),
            None => {
                println!("survivor {i}: projection=none");
                all_projections = false;
            }
        }
    }
    Ok(all_projections && survivors.len() == arity)
}
