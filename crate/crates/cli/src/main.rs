//! `genus1`: command-line front end for the genus-one library.

use std::fmt::Write as _;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use genus_one::count::{BackPoints, CountTable, Kind};
use genus_one::fourcolor::{all_separating, find_separating, induced_representation};
use genus_one::oracle::{
    brute_table, enumerate_permutations, series_table, verify_suite, OracleConfig, VerifyOptions,
};
use genus_one::reduce::{canonical_separating, is_reduced, reduce_fully};
use genus_one::series::{expand_named, SERIES_NAMES};
use genus_one::setpart::enumerate_set_partitions;
use genus_one::{parse_permutation, Permutation};
use serde_json::{json, Number, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "genus1",
    version,
    about = "Genus-one permutations and partitions"
)]
struct Cli {
    /// Cap on worker threads for parallel sweeps.
    #[arg(long, global = true, value_name = "J")]
    jobs: Option<usize>,

    /// Directory for cached brute-force tables (overrides GENUS1_CACHE_DIR).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, cycle count, back points and genus-one type of a permutation.
    Genus {
        perm: String,
        #[arg(long)]
        n: usize,
    },
    /// Separating points, coloring points and noncrossing partition.
    Represent {
        perm: String,
        #[arg(long)]
        n: usize,
        /// List every sequence of separating points.
        #[arg(long)]
        all: bool,
    },
    /// Remove trivial cycles until the permutation is reduced.
    Reduce {
        perm: String,
        #[arg(long)]
        n: usize,
        /// Print each removed cycle in the original labels.
        #[arg(long)]
        trace: bool,
    },
    /// Tabulate genus-one counts by size and number of cycles.
    Count {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value = "any")]
        backpoints: BackPointsArg,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long, value_enum, default_value = "formula")]
        provenance: ProvenanceArg,
    },
    /// Coefficients of a named generating function.
    Series {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SERIES_NAMES))]
        name: String,
        #[arg(long)]
        trunc: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: SeriesFormat,
    },
    /// Run the exhaustive verification suite.
    Verify {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// List permutations or partitions of size n.
    Enumerate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        genus: Option<usize>,
        /// Number of cycles (blocks, for partitions).
        #[arg(long)]
        cycles: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Partition,
    Permutation,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Partition => Kind::Partition,
            KindArg::Permutation => Kind::Permutation,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BackPointsArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Any,
}

impl From<BackPointsArg> for BackPoints {
    fn from(b: BackPointsArg) -> BackPoints {
        match b {
            BackPointsArg::Zero => BackPoints::Zero,
            BackPointsArg::One => BackPoints::One,
            BackPointsArg::Two => BackPoints::Two,
            BackPointsArg::Any => BackPoints::Any,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProvenanceArg {
    Formula,
    Bruteforce,
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Csv,
    Json,
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Verification,
}

impl From<genus_one::Error> for Failure {
    fn from(e: genus_one::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("output: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli);
    if let Err(Failure::Domain(msg)) = &outcome {
        eprintln!("error: {msg}");
    }
    ExitCode::from(exit_code(&outcome))
}

fn exit_code(outcome: &Outcome) -> u8 {
    match outcome {
        Ok(()) => 0,
        Err(Failure::Domain(_)) => 1,
        Err(Failure::Verification) => 3,
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Domain(e.to_string()))?;
    }
    let mut config = OracleConfig::from_env();
    if cli.cache_dir.is_some() {
        config.cache_dir = cli.cache_dir;
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Genus { perm, n } => genus(&mut out, &perm, n)?,
        Command::Represent { perm, n, all } => represent(&mut out, &perm, n, all)?,
        Command::Reduce { perm, n, trace } => reduce(&mut out, &perm, n, trace)?,
        Command::Count {
            kind,
            reduced,
            backpoints,
            n_max,
            k,
            format,
            provenance,
        } => {
            let table = count_table(
                kind.into(),
                reduced,
                backpoints.into(),
                n_max,
                provenance,
                &config,
            )?;
            write_count(&mut out, &table, k, format)?;
        }
        Command::Series {
            name,
            trunc,
            format,
        } => series(&mut out, &name, trunc, format)?,
        Command::Verify { n_max, json } => {
            out.flush()?;
            return verify(&mut out, VerifyOptions::new(n_max), json, &config);
        }
        Command::Enumerate {
            kind,
            n,
            genus,
            cycles,
        } => enumerate(&mut out, kind.into(), n, genus, cycles, &config)?,
    }
    out.flush()?;
    Ok(())
}

fn genus(out: &mut impl Write, text: &str, n: usize) -> Outcome {
    let alpha = parse_permutation(text, n)?;
    let g = alpha.genus();
    let kind = if g == 1 {
        alpha.classify_genus1()?.to_string()
    } else {
        "none".to_string()
    };
    writeln!(
        out,
        "genus={g} cycles={} backpoints={} type={kind}",
        alpha.cycle_count(),
        alpha.back_point_count()
    )?;
    Ok(())
}

fn represent(out: &mut impl Write, text: &str, n: usize, all: bool) -> Outcome {
    let alpha = parse_permutation(text, n)?;
    let sequences = if all {
        all_separating(&alpha)?
    } else if is_reduced(&alpha) {
        vec![canonical_separating(&alpha)?]
    } else {
        vec![find_separating(&alpha)?]
    };
    for sp in sequences {
        let colored = induced_representation(&alpha, &sp)?;
        writeln!(
            out,
            "separating={sp} coloring={} partition={}",
            colored.coloring(),
            colored.partition()
        )?;
    }
    Ok(())
}

fn reduce(out: &mut impl Write, text: &str, n: usize, trace: bool) -> Outcome {
    let alpha = parse_permutation(text, n)?;
    let reduction = reduce_fully(&alpha);
    if trace {
        for step in &reduction.steps {
            writeln!(out, "removed {step}")?;
        }
    }
    writeln!(
        out,
        "reduced={} n={}",
        reduction.result,
        reduction.result.n()
    )?;
    Ok(())
}

fn count_table(
    kind: Kind,
    reduced: bool,
    backpoints: BackPoints,
    n_max: usize,
    provenance: ProvenanceArg,
    config: &OracleConfig,
) -> Result<CountTable, Failure> {
    if kind == Kind::Partition && !matches!(backpoints, BackPoints::Zero | BackPoints::Any) {
        return Err(Failure::Domain(
            "partitions have no back points; use --backpoints 0 or any".into(),
        ));
    }
    let table = match provenance {
        ProvenanceArg::Formula => CountTable::from_formula(kind, reduced, backpoints, n_max),
        ProvenanceArg::Bruteforce => brute_table(kind, n_max, reduced, backpoints, config)?,
        ProvenanceArg::Series => series_table(kind, n_max, reduced, backpoints)?,
    };
    Ok(table)
}

fn exact(value: &impl ToString) -> Value {
    Value::Number(
        value
            .to_string()
            .parse::<Number>()
            .expect("integer literal"),
    )
}

fn write_count(
    out: &mut impl Write,
    table: &CountTable,
    k_filter: Option<usize>,
    format: TableFormat,
) -> Outcome {
    let rows = table
        .entries()
        .filter(|&(_, k, _)| k_filter.is_none_or(|want| want == k));
    match format {
        TableFormat::Csv => {
            writeln!(out, "n,k,count")?;
            for (n, k, c) in rows {
                writeln!(out, "{n},{k},{c}")?;
            }
        }
        TableFormat::Plain => {
            for (n, k, c) in rows {
                writeln!(out, "n={n} k={k} count={c}")?;
            }
        }
        TableFormat::Json => {
            let entries: Vec<Value> = rows
                .map(|(n, k, c)| json!({ "n": n, "k": k, "count": exact(c) }))
                .collect();
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "kind": table.kind,
                "reduced": table.reduced,
                "backpoints": table.backpoints.to_string(),
                "provenance": table.provenance,
                "entries": entries,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        }
    }
    Ok(())
}

fn series(out: &mut impl Write, name: &str, trunc: usize, format: SeriesFormat) -> Outcome {
    let rows = expand_named(name, trunc)?.to_integer_table()?;
    match format {
        SeriesFormat::Csv => {
            let mut text = String::from("n,k,coefficient\n");
            for (n, k, c) in &rows {
                writeln!(text, "{n},{k},{c}").expect("string write");
            }
            out.write_all(text.as_bytes())?;
        }
        SeriesFormat::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(n, k, c)| json!({ "n": n, "k": k, "coefficient": exact(c) }))
                .collect();
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "name": name,
                "trunc": trunc,
                "entries": entries,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        }
    }
    Ok(())
}

fn verify(
    out: &mut impl Write,
    options: VerifyOptions,
    json: bool,
    config: &OracleConfig,
) -> Outcome {
    let n_max = options.n_max;
    let report = verify_suite(options, config)?;
    if json {
        let mut doc = serde_json::to_value(&report).expect("json");
        doc["schema_version"] = json!(SCHEMA_VERSION);
        doc["passed"] = json!(report.passed());
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else {
        for check in &report.checks {
            let status = if check.passed { "PASS" } else { "FAIL" };
            write!(out, "{status} {} ({} checked)", check.name, check.checked)?;
            if let Some(cx) = &check.counterexample {
                write!(out, " counterexample {cx}")?;
            }
            writeln!(out)?;
        }
        let passed = report.checks.iter().filter(|c| c.passed).count();
        writeln!(
            out,
            "{passed} of {} checks passed for n <= {n_max}",
            report.checks.len()
        )?;
    }
    out.flush()?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn enumerate(
    out: &mut impl Write,
    kind: Kind,
    n: usize,
    genus: Option<usize>,
    cycles: Option<usize>,
    config: &OracleConfig,
) -> Outcome {
    match kind {
        Kind::Permutation => {
            let keep = |alpha: &Permutation| {
                genus.is_none_or(|g| alpha.genus() == g)
                    && cycles.is_none_or(|k| alpha.cycle_count() == k)
            };
            for alpha in enumerate_permutations(n, config)?.filter(keep) {
                writeln!(out, "{alpha}")?;
            }
        }
        Kind::Partition => {
            let limit = config.limit(Kind::Partition);
            if n > limit {
                return Err(genus_one::Error::LimitExceeded { n, limit }.into());
            }
            for p in enumerate_set_partitions(n, None) {
                if genus.is_none_or(|g| p.genus() == g)
                    && cycles.is_none_or(|k| p.block_count() == k)
                {
                    writeln!(out, "{p}")?;
                }
            }
        }
    }
    Ok(())
}
