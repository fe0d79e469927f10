mod verify;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use shuffle_lab::analysis::{cycle_distribution, expected_fixed_points, tv_distance, TABLE_M_VALUES};
use shuffle_lab::model::{exact_distribution, Shuffler};
use shuffle_lab::numeric::round_half_even;
use shuffle_lab::{Model, ShuffleSpec};

#[derive(Parser)]
#[command(name = "shuffle-lab", version, about = "Exact and simulated analysis of shelf and riffle shuffles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Draw seeded shuffles and print the resulting deck orders.
    Simulate {
        #[arg(long, value_parser = parse_model)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Also print the model's statistic for each deck order.
        #[arg(long)]
        annotate: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Total variation distance to uniform for each model and shelf count.
    TvTable {
        #[arg(long, default_value_t = 52)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = TABLE_M_VALUES)]
        m: Vec<u64>,
        /// Models to tabulate (default: the three shelf shufflers).
        #[arg(long, value_delimiter = ',', value_parser = parse_model)]
        model: Vec<Model>,
        /// Print exact rationals instead of rounded decimals.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 4)]
        digits: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Exact class probabilities of one shuffle.
    Distribution {
        #[arg(long, value_parser = parse_model)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Run the exhaustive identity checks; exit status 1 if any fails.
    Verify {
        /// Run a single suite.
        #[arg(long, value_enum)]
        only: Option<verify::Suite>,
        /// Largest deck size for the selected suites.
        #[arg(long)]
        n: Option<usize>,
        /// Largest shelf count for the selected suites.
        #[arg(long)]
        m: Option<u64>,
        /// Replace the lazy chain formula by one with a wrong constant.
        #[arg(long)]
        corrupt: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Cycle-type distribution after one lazy shelf shuffle.
    Cycles {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Expected number of fixed points after one lazy shelf shuffle.
    FixedPoints {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: shuffle_lab::Error| e.to_string())
}

const DECIMALS: usize = 12;

fn decimal(x: &BigRational) -> String {
    round_half_even(x, DECIMALS)
}

fn emit(out: &Output, text: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn simulate(spec: ShuffleSpec, seed: u64, count: usize, annotate: bool, format: Format) -> String {
    let stat = spec.model.statistic();
    let rows: Vec<(String, Vec<usize>, Option<usize>)> = Shuffler::new(spec, ChaCha8Rng::seed_from_u64(seed))
        .take(count)
        .map(|(outcome, deck)| {
            let k = annotate.then(|| {
                if spec.model.is_riffle() { deck.inverse().statistic(stat) } else { deck.statistic(stat) }
            });
            (deck.to_string(), outcome.composition.parts().to_vec(), k)
        })
        .collect();
    let mut s = String::new();
    match format {
        Format::Text => {
            for (deck, _, k) in &rows {
                match k {
                    Some(k) => writeln!(s, "{deck}\t{stat}={k}"),
                    None => writeln!(s, "{deck}"),
                }
                .unwrap();
            }
        }
        Format::Csv => {
            s.push_str("index,permutation,composition");
            s.push_str(if annotate { ",statistic\n" } else { "\n" });
            for (i, (deck, comp, k)) in rows.iter().enumerate() {
                let comp: Vec<String> = comp.iter().map(|a| a.to_string()).collect();
                write!(s, "{i},{deck},{}", comp.join(" ")).unwrap();
                if let Some(k) = k {
                    write!(s, ",{k}").unwrap();
                }
                s.push('\n');
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(deck, comp, k)| {
                    let mut v = json!({"permutation": deck, "composition": comp});
                    if let Some(k) = k {
                        v[stat.name()] = json!(k);
                    }
                    v
                })
                .collect();
            s = json_text(&json!({"model": spec.model, "n": spec.n, "m": spec.m, "seed": seed, "shuffles": items}));
        }
    }
    s
}

fn tv_table(n: usize, ms: &[u64], models: &[Model], exact: bool, digits: usize, format: Format) -> anyhow::Result<String> {
    let specs: Vec<ShuffleSpec> = models
        .iter()
        .flat_map(|&model| ms.iter().map(move |&m| ShuffleSpec::new(n, m, model)))
        .collect::<Result<_, _>>()?;
    let values: Vec<BigRational> = specs.par_iter().map(tv_distance).collect();
    let cell = |x: &BigRational| if exact { x.to_string() } else { round_half_even(x, digits) };
    let mut s = String::new();
    match format {
        Format::Json => {
            let cells: Vec<_> = specs
                .iter()
                .zip(&values)
                .map(|(spec, tv)| json!({"model": spec.model, "n": n, "m": spec.m, "tv": tv.to_string(), "tv_decimal": round_half_even(tv, digits)}))
                .collect();
            s = json_text(&json!(cells));
        }
        Format::Csv | Format::Text => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let header: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
            writeln!(s, "m{sep}{}", header.join(sep)).unwrap();
            for (row, model) in values.chunks(ms.len()).zip(models) {
                let cells: Vec<String> = row.iter().map(cell).collect();
                writeln!(s, "{}{sep}{}", model.label(), cells.join(sep)).unwrap();
            }
        }
    }
    Ok(s)
}

fn distribution(spec: ShuffleSpec, format: Format) -> String {
    let d = exact_distribution(&spec);
    match format {
        Format::Json => json_text(&d.to_json()),
        Format::Csv | Format::Text => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let mut s = format!("{}{sep}count{sep}probability{sep}decimal\n", d.statistic);
            for c in &d.classes {
                writeln!(s, "{}{sep}{}{sep}{}{sep}{}", c.k, c.count, c.prob, decimal(&c.prob)).unwrap();
            }
            s
        }
    }
}

fn cycles(spec: ShuffleSpec, format: Format) -> anyhow::Result<String> {
    let dist = cycle_distribution(&spec)?;
    // Largest parts first, the way cycle types are usually listed.
    let mut rows: Vec<_> = dist.iter().collect();
    rows.sort_by_key(|(t, _)| std::cmp::Reverse(t.parts()));
    Ok(match format {
        Format::Json => {
            let types: Vec<_> = rows
                .iter()
                .map(|(t, p)| json!({"parts": t, "probability": p.to_string(), "decimal": decimal(p)}))
                .collect();
            json_text(&json!({"n": spec.n, "m": spec.m, "types": types}))
        }
        Format::Csv | Format::Text => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let mut s = format!("cycle_type{sep}probability{sep}decimal\n");
            for (t, p) in rows {
                let parts: Vec<String> = t.parts().iter().map(|x| x.to_string()).collect();
                writeln!(s, "{}{sep}{p}{sep}{}", parts.join(" "), decimal(p)).unwrap();
            }
            s
        }
    })
}

fn fixed_points(n: usize, m: u64, format: Format) -> String {
    let e = expected_fixed_points(n, m);
    match format {
        Format::Json => json_text(&json!({"n": n, "m": m, "expected": e.to_string(), "decimal": decimal(&e)})),
        Format::Csv => format!("n,m,expected,decimal\n{n},{m},{e},{}\n", decimal(&e)),
        Format::Text => format!("{e}\t{}\n", decimal(&e)),
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("SHUFFLE_LAB_THREADS") {
        let threads: usize = v
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| shuffle_lab::Error::InvalidParameter(format!("SHUFFLE_LAB_THREADS={v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    configure_threads()?;
    match cli.command {
        Command::Simulate { model, n, m, seed, count, annotate, out } => {
            let spec = ShuffleSpec::new(n, m, model)?;
            emit(&out, &simulate(spec, seed, count, annotate, out.format))?;
        }
        Command::TvTable { n, m, model, exact, digits, out } => {
            let models = if model.is_empty() { Model::SHELF.to_vec() } else { model };
            emit(&out, &tv_table(n, &m, &models, exact, digits, out.format)?)?;
        }
        Command::Distribution { model, n, m, out } => {
            emit(&out, &distribution(ShuffleSpec::new(n, m, model)?, out.format))?;
        }
        Command::Verify { only, n, m, corrupt, out } => {
            let reports = verify::run(only, n, m, corrupt)?;
            emit(&out, &verify::render(&reports, out.format))?;
            if reports.iter().any(|r| !r.passed()) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Cycles { n, m, out } => {
            emit(&out, &cycles(ShuffleSpec::new(n, m, Model::ShelfLazy)?, out.format)?)?;
        }
        Command::FixedPoints { n, m, out } => {
            ShuffleSpec::new(n, m, Model::ShelfLazy)?;
            emit(&out, &fixed_points(n, m, out.format))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<shuffle_lab::Error>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
