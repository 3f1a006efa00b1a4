//! Command-line front end.
//!
//! Standard output carries only data. Exit codes: 0 success, 1 domain or
//! validation error, 2 usage error, 3 verification found mismatches.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use derangekit_core::catalog::{builtin_table, lookup, Param, ParameterBinding, TableEntry, TableId};
use derangekit_core::oracle::DEFAULT_BUDGET;
use derangekit_core::{count, BigInteger, ConstraintSystem, EnumerationBudget, Family};

use crate::export::catalog_json;
use crate::oeis::{FetchMode, OeisClient, Verdict};
use crate::parallel;
use crate::system_file::parse_constraint_file;
use crate::verify::{has_mismatch, verify_table, VerifyOptions};

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "derangekit", version, about = "Count functions avoiding block constraints")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print an exact count from the formulas.
    Count(Target),
    /// Print an exact count by exhaustive enumeration.
    Oracle {
        #[command(flatten)]
        target: Target,
        /// Largest number of candidate functions to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Worker threads (defaults to available parallelism).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print terms of a catalog row or an explicit binding as "index value".
    Seq(SeqArgs),
    /// Compare catalog rows with OEIS b-files.
    Verify(VerifyArgs),
    /// Print the catalog as JSON.
    Catalog,
    /// Download a b-file into the cache (or read it back with --offline).
    Fetch {
        a_number: String,
        #[arg(long)]
        offline: bool,
    },
}

#[derive(Debug, Args)]
struct Target {
    /// d11, d12, d21, d22, s22, i1 or blockderange.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// JSON constraint file.
    #[arg(long, conflicts_with = "family")]
    system: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SeqArgs {
    /// 1-5, s22 or note2.
    #[arg(long, requires = "row", conflicts_with = "family")]
    table: Option<TableId>,
    #[arg(long)]
    row: Option<u32>,
    #[arg(long)]
    family: Option<Family>,
    /// Parameter expressions: n, 2n, n+c, n-c or a constant.
    #[arg(long)]
    m: Option<Param>,
    #[arg(long)]
    n: Option<Param>,
    #[arg(long)]
    k: Option<Param>,
    /// First index (defaults to the first valid one).
    #[arg(long)]
    from: Option<u32>,
    #[arg(long, default_value_t = 10)]
    count: u32,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated: all, 1-5, s22, note2.
    #[arg(long, default_value = "all")]
    tables: String,
    #[arg(long, default_value_t = 12)]
    terms: u32,
    /// Read only cached and bundled b-files.
    #[arg(long)]
    offline: bool,
    #[arg(long, default_value_t = crate::oeis::DEFAULT_MAX_SHIFT)]
    max_shift: u32,
    #[arg(long, default_value_t = crate::oeis::DEFAULT_MIN_OVERLAP)]
    min_overlap: usize,
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Usage(String),
}

fn domain(e: impl ToString) -> Failure {
    Failure::Domain(e.to_string())
}

/// Parses arguments, runs the command and maps the outcome to an exit code.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Count(target) => {
            println!("{}", count_target(&target)?);
            Ok(0)
        }
        Command::Oracle {
            target,
            budget,
            workers,
        } => {
            let workers = workers.unwrap_or_else(parallel::default_workers);
            println!("{}", oracle_target(&target, EnumerationBudget::new(budget), workers)?);
            Ok(0)
        }
        Command::Seq(args) => seq(&args),
        Command::Verify(args) => verify(&args),
        Command::Catalog => {
            println!("{}", catalog_json(&builtin_table()));
            Ok(0)
        }
        Command::Fetch { a_number, offline } => {
            let mode = if offline {
                FetchMode::Offline
            } else {
                FetchMode::Network
            };
            let bfile = OeisClient::from_env().fetch(&a_number, mode).map_err(domain)?;
            for (index, value) in &bfile.terms {
                println!("{index} {value}");
            }
            Ok(0)
        }
    }
}

enum Resolved {
    Family(Family, u32, u32, u32),
    System(ConstraintSystem),
}

fn resolve(target: &Target) -> Result<Resolved, Failure> {
    match (&target.family, &target.system) {
        (Some(family), None) => {
            let need = |v: Option<u32>, name: &str| {
                v.ok_or_else(|| Failure::Usage(format!("--{name} is required for --family {family}")))
            };
            let m = if family.ignores_m() {
                target.m.unwrap_or(0)
            } else {
                need(target.m, "m")?
            };
            Ok(Resolved::Family(*family, m, need(target.n, "n")?, need(target.k, "k")?))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| domain(format!("cannot read {}: {e}", path.display())))?;
            Ok(Resolved::System(parse_constraint_file(&text).map_err(domain)?))
        }
        _ => Err(Failure::Usage("give either --family or --system".into())),
    }
}

fn count_target(target: &Target) -> Result<BigInteger, Failure> {
    match resolve(target)? {
        Resolved::Family(family, m, n, k) => family.evaluate(m, n, k).map_err(domain),
        Resolved::System(system) => count(&system).map(|r| r.value).map_err(domain),
    }
}

fn oracle_target(
    target: &Target,
    budget: EnumerationBudget,
    workers: usize,
) -> Result<BigInteger, Failure> {
    let system = match resolve(target)? {
        Resolved::Family(family, m, n, k) => family.canonical_system(m, n, k).map_err(domain)?,
        Resolved::System(system) => system,
    };
    parallel::enumerate_count(&system, budget, workers).map_err(domain)
}

fn seq_binding(args: &SeqArgs) -> Result<ParameterBinding, Failure> {
    if let Some(table) = args.table {
        let row = args.row.expect("clap enforces --row with --table");
        let entry: TableEntry = lookup(table, row)
            .ok_or_else(|| Failure::Usage(format!("table {table} has no row {row}")))?;
        if entry.a_number.is_malformed() {
            return Err(Failure::Usage(
                "malformed A-number; term generation available via --family".into(),
            ));
        }
        if !entry.binding.is_bound() {
            return Err(Failure::Usage(
                "row has no parameter binding; term generation available via --family".into(),
            ));
        }
        return Ok(entry.binding);
    }
    let Some(family) = args.family else {
        return Err(Failure::Usage("give --table/--row or --family".into()));
    };
    let need = |p: Option<Param>, name: &str| {
        p.ok_or_else(|| Failure::Usage(format!("--{name} is required for --family {family}")))
    };
    if family.ignores_m() {
        Ok(ParameterBinding::nk(need(args.n, "n")?, need(args.k, "k")?))
    } else {
        Ok(ParameterBinding::mnk(
            family,
            need(args.m, "m")?,
            need(args.n, "n")?,
            need(args.k, "k")?,
        ))
    }
}

fn seq(args: &SeqArgs) -> Result<u8, Failure> {
    let binding = seq_binding(args)?;
    let from = args.from.unwrap_or(binding.start_index);
    let terms = binding.generate_terms(from, args.count).map_err(domain)?;
    for (i, t) in terms.iter().enumerate() {
        println!("{} {t}", from as usize + i);
    }
    Ok(0)
}

fn parse_tables(spec: &str) -> Result<Vec<TableId>, Failure> {
    let mut tables = Vec::new();
    for part in spec.split(',').map(str::trim) {
        if part.eq_ignore_ascii_case("all") {
            return Ok(TableId::ALL.to_vec());
        }
        tables.push(part.parse::<TableId>().map_err(Failure::Usage)?);
    }
    Ok(tables)
}

fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let tables = parse_tables(&args.tables)?;
    if (args.terms as usize) < args.min_overlap {
        return Err(Failure::Usage(format!(
            "--terms must be at least the minimum overlap ({})",
            args.min_overlap
        )));
    }
    let entries: Vec<TableEntry> = builtin_table()
        .into_iter()
        .filter(|e| tables.contains(&e.table))
        .collect();
    let options = VerifyOptions {
        mode: if args.offline {
            FetchMode::Offline
        } else {
            FetchMode::Network
        },
        terms: args.terms,
        max_shift: args.max_shift,
        min_overlap: args.min_overlap,
    };
    let reports = verify_table(&entries, &OeisClient::from_env(), &options);
    for r in &reports {
        println!("{}", r.line());
    }
    let tally = |v: Verdict| reports.iter().filter(|r| r.report.verdict == v).count();
    eprintln!(
        "{} entries: {} match, {} mismatch, {} unverifiable",
        reports.len(),
        tally(Verdict::Match),
        tally(Verdict::Mismatch),
        tally(Verdict::Unverifiable)
    );
    Ok(if has_mismatch(&reports) { EXIT_MISMATCH } else { 0 })
}
