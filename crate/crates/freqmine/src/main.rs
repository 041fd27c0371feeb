use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use freqmine::apriori::{mine_classic_with, FrequentLevel, MineOptions, ScanStats};
use freqmine::bench::{self, Algorithm, GeneratorConfig};
use freqmine::fpgrowth::{build_fptree, mine_fpgrowth};
use freqmine::fraction::Fraction;
use freqmine::report;
use freqmine::rules::generate_rules;
use freqmine::tid_index::mine_improved_with;
use freqmine::transactions::{PartitionPlan, TransactionDB};

#[derive(Parser)]
#[command(
    name = "freqmine",
    version,
    about = "Frequent-itemset mining and association rules over basket files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine frequent itemsets from a basket file
    Mine(MineArgs),
    /// Mine frequent itemsets and derive association rules
    Rules(RulesArgs),
    /// Compare full-scan and TID-indexed mining on one input
    Compare(CompareArgs),
    /// Run the seeded synthetic benchmark grid
    Bench(BenchArgs),
    /// Print the frequent-pattern tree for an input
    DumpTree(DumpTreeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Basket file: one transaction per line, items separated by commas
    /// and/or whitespace, `#` starts a comment line
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Error on blank data lines instead of skipping them
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Absolute count (e.g. 3) or fraction of the database (e.g. 0.3,
    /// converted by exact ceiling)
    #[arg(long, value_parser = parse_min_sup)]
    min_sup: MinSup,
    /// classic, improved, or fpgrowth
    #[arg(long, default_value = "improved", value_parser = Algorithm::from_str)]
    algorithm: Algorithm,
    /// Split counting scans into this many contiguous partitions
    /// (identical output, partition-by-partition work)
    #[arg(long)]
    partitions: Option<usize>,
    /// Mine only this partition (0-based; requires --partitions); output
    /// is watermarked as partial
    #[arg(long)]
    only_partition: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    output: OutputFormat,
}

#[derive(Args)]
struct RulesArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = parse_min_sup)]
    min_sup: MinSup,
    /// Minimum confidence in (0, 1]
    #[arg(long, default_value = "0.5", value_parser = parse_min_conf)]
    min_conf: Fraction,
    #[arg(long, default_value = "improved", value_parser = Algorithm::from_str)]
    algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    output: OutputFormat,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = parse_min_sup)]
    min_sup: MinSup,
    /// Also run FP-growth (csv/json rows only)
    #[arg(long)]
    fpgrowth: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    output: OutputFormat,
}

#[derive(Args)]
struct BenchArgs {
    /// Transaction counts of the synthetic groups
    #[arg(long, default_value = "500,1000,1500,2000,2500", value_delimiter = ',')]
    groups: Vec<usize>,
    /// Fractional support thresholds to sweep
    #[arg(
        long = "min-sups",
        default_value = "0.02,0.04,0.06,0.08,0.10",
        value_delimiter = ','
    )]
    min_sups: Vec<String>,
    #[arg(long, default_value_t = 32)]
    items: usize,
    #[arg(long, default_value_t = 6.0)]
    mean_len: f64,
    #[arg(long, default_value_t = 0.9)]
    skew: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Include FP-growth rows
    #[arg(long)]
    fpgrowth: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    output: OutputFormat,
}

#[derive(Args)]
struct DumpTreeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = parse_min_sup)]
    min_sup: MinSup,
}

#[derive(Debug, Clone, Copy)]
enum MinSup {
    Absolute(u64),
    Fractional(Fraction),
}

impl MinSup {
    fn resolve(&self, m: usize) -> u64 {
        match self {
            MinSup::Absolute(v) => *v,
            MinSup::Fractional(f) => f.ceil_mul(m as u64).max(1),
        }
    }
}

fn parse_min_sup(s: &str) -> Result<MinSup, String> {
    if s.contains('.') {
        let f = Fraction::parse_decimal(s).map_err(|e| e.to_string())?;
        if f.num() == 0 || f >= Fraction::new(1, 1) {
            return Err(format!("fractional min-sup must be in (0, 1), got {s}"));
        }
        Ok(MinSup::Fractional(f))
    } else {
        let v: u64 = s.parse().map_err(|_| format!("invalid min-sup `{s}`"))?;
        if v == 0 {
            return Err("min-sup must be at least 1".to_string());
        }
        Ok(MinSup::Absolute(v))
    }
}

fn parse_min_conf(s: &str) -> Result<Fraction, String> {
    let f = Fraction::parse_decimal(s).map_err(|e| e.to_string())?;
    if f.num() == 0 || f > Fraction::new(1, 1) {
        return Err(format!("min-conf must be in (0, 1], got {s}"));
    }
    Ok(f)
}

enum CliError {
    /// Bad flag combinations or values: exit 2, like clap's own errors.
    Usage(String),
    /// Unreadable or malformed input data: exit 1.
    Data(String),
}

impl From<freqmine::Error> for CliError {
    fn from(e: freqmine::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Mine(args) => cmd_mine(args),
        Command::Rules(args) => cmd_rules(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Bench(args) => cmd_bench(args),
        Command::DumpTree(args) => cmd_dump_tree(args),
    }
}

fn read_input(args: &InputArgs) -> Result<TransactionDB, CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.input.display())))?;
    let parsed = TransactionDB::parse_basket(&text, args.strict)?;
    if parsed.skipped_lines > 0 {
        eprintln!("warning: skipped {} blank line(s)", parsed.skipped_lines);
    }
    Ok(parsed.db)
}

/// Writes a subcommand's whole output at once. A broken pipe means the
/// consumer closed early (`freqmine ... | head`); that is a clean stop,
/// not an error.
fn emit(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::Data(format!("cannot write output: {e}"))),
    }
}

fn mine_with(
    db: &TransactionDB,
    min_sup: u64,
    algorithm: Algorithm,
    plan: Option<PartitionPlan>,
) -> Result<(Vec<FrequentLevel>, Option<ScanStats>), CliError> {
    let opts = MineOptions {
        plan,
        threads: freqmine::threads_from_env(),
    };
    Ok(match algorithm {
        Algorithm::Classic => {
            let r = mine_classic_with(db, min_sup, &opts)?;
            (r.levels, Some(r.stats))
        }
        Algorithm::Improved => {
            let r = mine_improved_with(db, min_sup, &opts)?;
            (r.levels, Some(r.stats))
        }
        Algorithm::FpGrowth => (mine_fpgrowth(db, min_sup), None),
    })
}

fn cmd_mine(args: MineArgs) -> Result<(), CliError> {
    if args.only_partition.is_some() && args.partitions.is_none() {
        return Err(CliError::Usage(
            "--only-partition requires --partitions".to_string(),
        ));
    }
    if args.algorithm == Algorithm::FpGrowth && args.partitions.is_some() {
        return Err(CliError::Usage(
            "--partitions is not supported with fpgrowth".to_string(),
        ));
    }
    let db = read_input(&args.input)?;

    let (db, plan, partial) = match (args.partitions, args.only_partition) {
        (Some(parts), Some(idx)) => {
            let mut slices = db.partition(parts)?;
            if idx >= slices.len() {
                return Err(CliError::Usage(format!(
                    "--only-partition {idx} is out of range for {parts} partitions"
                )));
            }
            let slice = slices.swap_remove(idx);
            let note = format!(
                "PARTIAL (single-cluster): partition {idx} of {parts}, T{}..T{}",
                slice.first_tid().unwrap(),
                slice.last_tid().unwrap()
            );
            (slice, None, Some(note))
        }
        (Some(parts), None) => {
            let plan = PartitionPlan::with_parts(&db, parts)?;
            (db, Some(plan), None)
        }
        (None, _) => (db, None, None),
    };

    let min_sup = args.min_sup.resolve(db.num_transactions());
    let (levels, stats) = mine_with(&db, min_sup, args.algorithm, plan)?;

    let mut out = String::new();
    match args.output {
        OutputFormat::Table => {
            if let Some(note) = &partial {
                let _ = writeln!(out, "# {note}");
            }
            let _ = writeln!(
                out,
                "# m={} min_sup={} algorithm={}",
                db.num_transactions(),
                min_sup,
                args.algorithm.name()
            );
            if let Some(stats) = &stats {
                let _ = writeln!(
                    out,
                    "# records_read={} passes={} candidates={}",
                    stats.total_records_read(),
                    stats.passes(),
                    stats.total_candidates()
                );
            }
            out.push_str(&report::levels_table(&levels, db.dictionary()));
        }
        OutputFormat::Csv => {
            if let Some(note) = &partial {
                let _ = writeln!(out, "# {note}");
            }
            out.push_str(&report::levels_csv(&levels, db.dictionary()));
        }
        OutputFormat::Json => {
            let value = json!({
                "m": db.num_transactions(),
                "min_sup": min_sup,
                "algorithm": args.algorithm.name(),
                "partial": partial,
                "levels": report::levels_json_value(&levels, db.dictionary()),
                "stats": stats.as_ref().map(report::stats_json_value),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    emit(&out)
}

fn cmd_rules(args: RulesArgs) -> Result<(), CliError> {
    let db = read_input(&args.input)?;
    let min_sup = args.min_sup.resolve(db.num_transactions());
    let (levels, _) = mine_with(&db, min_sup, args.algorithm, None)?;
    let rules = generate_rules(&levels, args.min_conf, db.dictionary())?;
    let mut out = String::new();
    match args.output {
        OutputFormat::Table => {
            let _ = writeln!(
                out,
                "# m={} min_sup={} min_conf={} rules={}",
                db.num_transactions(),
                min_sup,
                args.min_conf.to_decimal_4dp(),
                rules.len()
            );
            out.push_str(&report::rules_table(&rules, db.dictionary()));
        }
        OutputFormat::Csv => out.push_str(&report::rules_csv(&rules, db.dictionary())),
        OutputFormat::Json => {
            let value = json!({
                "m": db.num_transactions(),
                "min_sup": min_sup,
                "min_conf": args.min_conf.as_f64(),
                "rules": report::rules_json_value(&rules, db.dictionary()),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
        }
    }
    emit(&out)
}

fn cmd_compare(args: CompareArgs) -> Result<(), CliError> {
    let db = read_input(&args.input)?;
    let m = db.num_transactions();
    let min_sup = args.min_sup.resolve(m);
    let mut out = String::new();
    match args.output {
        OutputFormat::Table => {
            let classic = mine_classic_with(&db, min_sup, &MineOptions::default())?;
            let improved = mine_improved_with(&db, min_sup, &MineOptions::default())?;
            let _ = writeln!(out, "# m={m} min_sup={min_sup}");
            out.push_str(&report::compare_table(&classic, &improved));
        }
        OutputFormat::Csv | OutputFormat::Json => {
            let label = args
                .input
                .input
                .file_stem()
                .map(|s| s.to_string_lossy().replace([',', ' '], "_"))
                .unwrap_or_else(|| "input".to_string());
            let frac = Fraction::new(min_sup, m as u64);
            let rows = bench::run_comparison(&[(label, db)], &[frac], args.fpgrowth);
            if args.output == OutputFormat::Csv {
                out.push_str(&bench::rows_to_csv(&rows));
            } else {
                let _ = writeln!(out, "{}", bench::rows_to_json(&rows));
            }
        }
    }
    emit(&out)
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    if args.groups.is_empty() {
        return Err(CliError::Usage("--groups must not be empty".to_string()));
    }
    let mut sweep = Vec::new();
    for s in &args.min_sups {
        match parse_min_sup(s)? {
            MinSup::Fractional(f) => sweep.push(f),
            MinSup::Absolute(_) => {
                return Err(CliError::Usage(format!(
                    "--min-sups takes fractions in (0, 1), got `{s}`"
                )))
            }
        }
    }
    let mut datasets = Vec::new();
    for (i, &n) in args.groups.iter().enumerate() {
        let cfg = GeneratorConfig {
            n_transactions: n,
            n_items: args.items,
            mean_len: args.mean_len,
            skew: args.skew,
            seed: args.seed.wrapping_add(i as u64),
        };
        datasets.push((format!("t{n}"), bench::generate_synthetic(&cfg)?));
    }
    let rows = bench::run_comparison(&datasets, &sweep, args.fpgrowth);
    let mut out = String::new();
    match args.output {
        OutputFormat::Csv => out.push_str(&bench::rows_to_csv(&rows)),
        OutputFormat::Json => {
            let _ = writeln!(out, "{}", bench::rows_to_json(&rows));
        }
        OutputFormat::Table => {
            let _ = writeln!(
                out,
                "{:<8} {:<9} {:>7} {:>11} {:>13} {:>11} {:>9} {:>10}",
                "dataset",
                "algorithm",
                "min_sup",
                "elapsed_ms",
                "records_read",
                "candidates",
                "frequent",
                "reduction"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:<8} {:<9} {:>7} {:>11.3} {:>13} {:>11} {:>9} {:>10}",
                    r.dataset,
                    r.algorithm,
                    r.min_sup,
                    r.elapsed_ms,
                    r.records_read,
                    r.candidates,
                    r.frequent_count,
                    r.reduction_pct
                        .map(|v| format!("{v:.2}%"))
                        .unwrap_or_else(|| "-".to_string())
                );
            }
        }
    }
    emit(&out)
}

fn cmd_dump_tree(args: DumpTreeArgs) -> Result<(), CliError> {
    let db = read_input(&args.input)?;
    let min_sup = args.min_sup.resolve(db.num_transactions());
    let tree = build_fptree(&db, min_sup);
    emit(&tree.dump())
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError::Usage(msg)
    }
}
