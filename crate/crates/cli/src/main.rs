use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use subsquare::catalog::{self, Catalog, CatalogRecord, Fingerprint};
use subsquare::construct::{
    construct_doubly_even, construct_odd, kochanski_order4_fixtures, pre_matrix, skew_wrap,
};
use subsquare::format::{parse_any, to_json, to_text};
use subsquare::search::{enumerate_exhaustive, search_randomized, SearchConfig};
use subsquare::transform::{
    canonical_form, d4_apply, fig8_transform, variant_squares_order5, D4Element,
};
use subsquare::{fixtures, verify, Square};

#[derive(Parser)]
#[command(name = "subsquare", version, about = "Magic squares of subtraction")]
struct Cli {
    /// Write structured JSON records instead of the text format.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Odd,
    DoublyEven,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Rot90,
    Rot180,
    Rot270,
    FlipH,
    FlipV,
    Transpose,
    FlipAnti,
    Fig8,
}

#[derive(Subcommand)]
enum Command {
    /// Build a square from a closed-form construction.
    Construct {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Order-4 base square for the doubly-even method.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Block count per side for the doubly-even method.
        #[arg(long)]
        k: Option<usize>,
        /// Named example: a-d at order 4, e-h at order 5.
        #[arg(long, value_enum)]
        variant: Option<Variant>,
    },
    /// Check whether a square is magic and report its residua.
    Verify {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Apply a symmetry or the order-4 block rearrangement.
    Transform {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print the canonical representative under the eight symmetries.
    Canon {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Enumerate every magic square of an order, one per symmetry class.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        residuum: Option<i64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        count_only: bool,
        /// Disable residuum-bound pruning (results must not change).
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded randomized search.
    Search {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        residuum: Option<i64>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also append every found square to this catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Summarize a catalog file.
    CatalogStats { file: PathBuf },
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(msg.into())
}

fn read_input(input: &str) -> anyhow::Result<String> {
    let mut text = String::new();
    if input == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
    } else {
        text = std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
    }
    Ok(text)
}

fn read_square(input: &str) -> anyhow::Result<Square> {
    let text = read_input(input).map_err(|e| usage(format!("{e:#}")))?;
    parse_any(&text).map_err(|e| usage(format!("{input}: {e}")))
}

fn render(square: &Square, json: bool) -> String {
    if json {
        let mut s = to_json(square);
        s.push('\n');
        s
    } else {
        to_text(square)
    }
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn construct(
    order: usize,
    method: Option<Method>,
    base: Option<&Path>,
    k: Option<usize>,
    variant: Option<Variant>,
) -> anyhow::Result<Square> {
    if let Some(v) = variant {
        if method.is_some() || base.is_some() || k.is_some() {
            return Err(usage(
                "--variant cannot be combined with --method, --base or --k",
            ));
        }
        let (idx, want) = match v {
            Variant::A => (0, 4),
            Variant::B => (1, 4),
            Variant::C => (2, 4),
            Variant::D => (3, 4),
            Variant::E => (0, 5),
            Variant::F => (1, 5),
            Variant::G => (2, 5),
            Variant::H => (3, 5),
        };
        if order != want {
            return Err(usage(format!("that variant has order {want}")));
        }
        let all = if want == 4 {
            kochanski_order4_fixtures()
        } else {
            variant_squares_order5()
        };
        return Ok(all[idx].clone());
    }
    let method = match method {
        Some(m) => m,
        None if order % 2 == 1 => Method::Odd,
        None if order.is_multiple_of(4) => Method::DoublyEven,
        None => {
            return Err(usage(format!(
                "no construction for order {order} (orders 2 mod 4 are not covered)"
            )))
        }
    };
    match method {
        Method::Odd => {
            if base.is_some() || k.is_some() {
                return Err(usage("--base and --k apply to the doubly-even method"));
            }
            if order.is_multiple_of(2) {
                return Err(usage(format!(
                    "the odd method needs an odd order, got {order}"
                )));
            }
            if order == 1 {
                return Ok(skew_wrap(&pre_matrix(1)?));
            }
            Ok(construct_odd(order)?)
        }
        Method::DoublyEven => {
            if order == 0 || !order.is_multiple_of(4) {
                return Err(usage(format!(
                    "the doubly-even method needs an order divisible by 4, got {order}"
                )));
            }
            if let Some(k) = k {
                if 4 * k != order {
                    return Err(usage(format!("--k {k} does not give order {order}")));
                }
            }
            let base = match base {
                Some(p) => read_square(&p.to_string_lossy())?,
                None => fixtures::order4_a(),
            };
            construct_doubly_even(&base, order / 4).map_err(|e| usage(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Construct {
            order,
            method,
            base,
            k,
            variant,
        } => {
            let sq = construct(order, method, base.as_deref(), k, variant)?;
            print!("{}", render(&sq, json));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input } => {
            let sq = read_square(&input)?;
            let report = verify(&sq);
            if json {
                let lines: Vec<_> = report
                    .per_line
                    .iter()
                    .map(|(origin, r)| json!({"line": origin.to_string(), "residuum": r}))
                    .collect();
                let value = json!({
                    "magic": report.is_magic,
                    "residuum": report.residuum,
                    "normal": report.is_normal,
                    "lines": lines,
                });
                println!("{value}");
            } else if let Some(r) = report.residuum {
                let normal = if report.is_normal {
                    "normal"
                } else {
                    "not normal"
                };
                println!("magic, residuum {r}, {normal}");
            } else {
                println!("not magic");
                for (origin, r) in &report.per_line {
                    println!("{origin}: {r}");
                }
            }
            Ok(if report.is_magic {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Transform { op, input } => {
            let sq = read_square(&input)?;
            let out = match op {
                Op::Fig8 => fig8_transform(&sq).map_err(|e| usage(e.to_string()))?,
                Op::Rot90 => d4_apply(&sq, D4Element::Rot90),
                Op::Rot180 => d4_apply(&sq, D4Element::Rot180),
                Op::Rot270 => d4_apply(&sq, D4Element::Rot270),
                Op::FlipH => d4_apply(&sq, D4Element::FlipH),
                Op::FlipV => d4_apply(&sq, D4Element::FlipV),
                Op::Transpose => d4_apply(&sq, D4Element::FlipMainDiag),
                Op::FlipAnti => d4_apply(&sq, D4Element::FlipAntiDiag),
            };
            print!("{}", render(&out, json));
            Ok(ExitCode::SUCCESS)
        }
        Command::Canon { input } => {
            let sq = read_square(&input)?;
            print!("{}", render(&canonical_form(&sq), json));
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            order,
            residuum,
            threads,
            count_only,
            no_prune,
            out,
        } => {
            let mut cfg = SearchConfig::exhaustive(order);
            cfg.target_residuum = residuum;
            cfg.worker_count = threads;
            cfg.count_only = count_only;
            cfg.prune = !no_prune;
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            let mut sink = output(out.as_deref())?;
            let mut write_err = None;
            let start = Instant::now();
            let res = enumerate_exhaustive(&cfg, |sq| {
                if write_err.is_none() {
                    if let Err(e) = sink.write_all(render(sq, json).as_bytes()) {
                        write_err = Some(e);
                    }
                }
            })?;
            if let Some(e) = write_err {
                return Err(e).context("writing output");
            }
            if json {
                writeln!(sink, "{}", json!({ "summary": res }))?;
            } else {
                let raw = res
                    .raw_count
                    .map_or_else(|| "n/a".to_string(), |r| r.to_string());
                let summary = format!("raw {raw}\ndistinct {}\n", res.distinct_count);
                if count_only {
                    sink.write_all(summary.as_bytes())?;
                } else {
                    eprint!("{summary}");
                }
                for (r, c) in &res.residuum_histogram {
                    eprintln!("residuum {r}: {c}");
                }
            }
            sink.flush()?;
            eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
            Ok(if res.distinct_count > 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Search {
            order,
            residuum,
            seed,
            threads,
            limit,
            out,
            catalog: catalog_path,
        } => {
            let mut cfg = SearchConfig::randomized(order, seed);
            cfg.target_residuum = residuum;
            cfg.worker_count = threads;
            cfg.limit = limit;
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            let mut cat = catalog_path.as_deref().map(Catalog::open).transpose()?;
            let mut sink = output(out.as_deref())?;
            let mut failure: Option<anyhow::Error> = None;
            let mut inserted = 0u64;
            let start = Instant::now();
            let stats = search_randomized(&cfg, |sq| {
                if failure.is_some() {
                    return;
                }
                let step = (|| -> anyhow::Result<()> {
                    sink.write_all(render(sq, json).as_bytes())?;
                    sink.flush()?;
                    if let Some(cat) = cat.as_mut() {
                        let fp = Fingerprint {
                            mode: "randomized".into(),
                            seed: Some(seed),
                            worker: None,
                        };
                        inserted += u64::from(cat.append(&CatalogRecord::new(sq.clone(), fp)?)?);
                    }
                    Ok(())
                })();
                failure = step.err();
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            sink.flush()?;
            eprintln!(
                "found {} in {} restarts ({} nodes), elapsed {:.3}s",
                stats.emitted,
                stats.restarts,
                stats.nodes,
                start.elapsed().as_secs_f64()
            );
            if let Some(cat) = &cat {
                eprintln!("catalog: {inserted} new, {} total", cat.len());
            }
            Ok(if stats.emitted > 0 || limit == Some(0) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::CatalogStats { file } => {
            let loaded = catalog::load(&file).map_err(|e| usage(e.to_string()))?;
            if loaded.warnings > 0 {
                eprintln!("warning: skipped a truncated final record");
            }
            let stats = &loaded.stats;
            if json {
                println!("{}", json!({ "stats": stats, "warnings": loaded.warnings }));
            } else {
                println!("total {}", stats.total);
                for (n, count) in &stats.per_order {
                    println!("order {n}: {count}");
                    for (r, c) in stats.per_residuum.get(n).into_iter().flatten() {
                        println!("  residuum {r}: {c}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Exit codes: 0 success, 1 not magic or nothing found, 2 usage or input
/// error.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
