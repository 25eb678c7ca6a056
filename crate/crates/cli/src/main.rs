use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use chaincov::cover::{max_antichain, min_chain_cover};
use chaincov::format::{parse_ideals, parse_poset, to_dot, write_ideals, write_poset, PosetDoc};
use chaincov::generators::{
    antichain, canonical_ideal_chain, chain, grid_upper, lex_sum, random_poset,
};
use chaincov::ideal_embed::{
    embed_from_ideal_chain_with_budget, IdealChain, IdealEmbedOutcome, DEFAULT_NODE_BUDGET,
};
use chaincov::incgraph::{check_metric_lemma, inc_components, inc_distance_path};
use chaincov::patterns::{embeds_grid, Embedding, SearchResult};
use chaincov::reduction::reduce;
use chaincov::selftest::run_selftest;
use chaincov::symbolic::{
    cov_symbolic, obstruction_list, parse_cardinal, parse_family, parse_term,
};
use chaincov::{Error, Poset};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "chaincov",
    version,
    about = "Chain covers and antichains of finite posets"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum number of chains covering the poset.
    Cov {
        file: String,
        /// Also print the chains and a maximum antichain.
        #[arg(long)]
        witness: bool,
    },
    /// A maximum antichain.
    Antichain { file: String },
    /// Inc-components, bottom to top.
    Decompose { file: String },
    /// Distance and shortest path between two elements in Inc(P).
    Dist { file: String, x: usize, y: usize },
    /// Checks both items of the path lemma for x < y.
    CheckMetric { file: String, x: usize, y: usize },
    /// Searches for a copy of [k]² (or its dual).
    FindGrid {
        file: String,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        dual: bool,
        /// Node budget; the search reports Unknown when it runs out.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Reduces to a subposet of width at least T with narrow Inc-sets.
    Reduce {
        file: String,
        #[arg(short)]
        t: usize,
    },
    /// Embeds [m]² along an ideal chain.
    IdealEmbed {
        file: String,
        #[arg(long)]
        ideals: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Chain covering number of a symbolic term.
    SymCov { term: String },
    /// Minimal posets forcing a given covering number.
    Obstructions {
        cardinal: String,
        /// Family spec such as `aleph(succ_n)`.
        #[arg(long)]
        family: Option<String>,
    },
    /// Writes a generated poset.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Hasse diagram in DOT.
    Dot {
        file: String,
        /// Draw incomparable pairs as dashed edges.
        #[arg(long)]
        inc: bool,
    },
    /// Runs the invariant suite on seeded random instances.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        instances: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The upper half [n]² of the n×n grid.
    Grid {
        #[arg(short)]
        n: usize,
    },
    /// Random order from the index-ordered coin flips, closed transitively.
    Random {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lexicographic sum of parts such as `grid:4 antichain:2 chain:3`.
    Lexsum {
        #[arg(required = true)]
        parts: Vec<String>,
    },
    Chain {
        #[arg(short)]
        n: usize,
    },
    Antichain {
        #[arg(short)]
        n: usize,
    },
    /// The canonical ideal chain of [n]² for embedding [m]²; pair with `gen grid -n N`.
    Ideals {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
    },
}

/// What a verb produced, before rendering.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output {
            text,
            json,
            code: 0,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                let mut json = out.json;
                if let Value::Object(map) = &mut json {
                    map.insert("schema".into(), json!(1));
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json).expect("values serialize")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Precondition(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Precondition(format!("reading {path}: {e}")))
    }
}

fn load(path: &str) -> Result<PosetDoc, Error> {
    parse_poset(&read_input(path)?)
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn lines_of(rows: &[Vec<usize>]) -> String {
    rows.iter().map(|r| join(r) + "\n").collect()
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Cov { file, witness } => {
            let doc = load(&file)?;
            let cover = min_chain_cover(&doc.poset);
            let mut text = format!("{}\n", cover.width());
            let mut json = json!({ "width": cover.width() });
            if witness {
                text += &lines_of(&cover.chains);
                text += &format!("antichain: {}\n", join(&cover.certificate));
                json["chains"] = json!(cover.chains);
                json["antichain"] = json!(cover.certificate);
            }
            Ok(Output::ok(text, json))
        }
        Command::Antichain { file } => {
            let doc = load(&file)?;
            let a = max_antichain(&doc.poset);
            Ok(Output::ok(
                format!("{}\n", join(&a)),
                json!({ "antichain": a }),
            ))
        }
        Command::Decompose { file } => {
            let doc = load(&file)?;
            let d = inc_components(&doc.poset);
            Ok(Output::ok(lines_of(&d.parts), json!({ "parts": d.parts })))
        }
        Command::Dist { file, x, y } => {
            let doc = load(&file)?;
            match inc_distance_path(&doc.poset, x, y)? {
                Some(r) => Ok(Output::ok(
                    format!("{}\npath: {}\n", r.distance, join(&r.path)),
                    json!({ "reachable": true, "distance": r.distance, "path": r.path }),
                )),
                None => Ok(Output {
                    text: "unreachable\n".into(),
                    json: json!({ "reachable": false }),
                    code: 1,
                }),
            }
        }
        Command::CheckMetric { file, x, y } => {
            let doc = load(&file)?;
            let r = check_metric_lemma(&doc.poset, x, y)?;
            let verdict = |ok: bool| if ok { "holds" } else { "fails" };
            let mut text = format!(
                "distance {}\npath: {}\nitem 1 {}\nitem 2 {}\n",
                r.distance,
                join(&r.path),
                verdict(r.item1_ok),
                verdict(r.item2_ok)
            );
            for v in &r.violations {
                text += &format!("violation: {v}\n");
            }
            let code = if r.holds() { 0 } else { 1 };
            Ok(Output {
                text,
                json: serde_json::to_value(&r).expect("report serializes"),
                code,
            })
        }
        Command::FindGrid {
            file,
            k,
            dual,
            budget,
        } => {
            let doc = load(&file)?;
            let labels = grid_upper(k)?.label_strings();
            Ok(match embeds_grid(&doc.poset, k, dual, budget)? {
                SearchResult::Found(e) => {
                    let (text, map) = render_map(&e, &labels, &doc);
                    Output::ok(text, json!({ "result": "found", "map": map }))
                }
                SearchResult::NotFound => Output {
                    text: "not found\n".into(),
                    json: json!({ "result": "not_found" }),
                    code: 1,
                },
                SearchResult::Unknown => Output {
                    text: "unknown: budget exhausted\n".into(),
                    json: json!({ "result": "unknown" }),
                    code: 3,
                },
            })
        }
        Command::Reduce { file, t } => {
            let doc = load(&file)?;
            let r = reduce(&doc.poset, t)?;
            let mut text = format!(
                "case: {}\n",
                serde_json::to_value(r.case).unwrap().as_str().unwrap()
            );
            text += &format!("antichain L: {}\n", join(&r.claim1.antichain));
            text += &format!("Q: {}\n", join(&r.claim1.members));
            text += &format!("Cov(Q): {}\n", r.claim1.width);
            text += &format!("component widths: {}\n", join(&r.component_widths));
            if let Some(x0) = r.x0 {
                text += &format!("x0: {x0}\n");
            }
            text += &format!("result: {}\n", join(&r.members));
            Ok(Output::ok(
                text,
                serde_json::to_value(&r).expect("outcome serializes"),
            ))
        }
        Command::IdealEmbed {
            file,
            ideals,
            budget,
        } => {
            let doc = load(&file)?;
            let sets = parse_ideals(&read_input(&ideals)?)?;
            let c = IdealChain::new(doc.poset.clone(), &sets)?;
            let labels = grid_upper(sets.len())?.label_strings();
            Ok(match embed_from_ideal_chain_with_budget(&c, budget)? {
                IdealEmbedOutcome::Found(e) => {
                    let (text, map) = render_map(&e, &labels, &doc);
                    Output::ok(text, json!({ "result": "found", "map": map }))
                }
                IdealEmbedOutcome::Failed(w) => Output {
                    text: format!(
                        "failed at {}: above [{}], not below [{}]\n",
                        w.position,
                        join(&w.must_exceed),
                        join(&w.must_not_precede)
                    ),
                    json: json!({ "result": "failed", "witness": w }),
                    code: 1,
                },
                IdealEmbedOutcome::BudgetExhausted(w) => Output {
                    text: format!("unknown: budget exhausted after {} nodes\n", w.nodes),
                    json: json!({ "result": "unknown", "witness": w }),
                    code: 3,
                },
            })
        }
        Command::SymCov { term } => {
            let t = parse_term(&term)?;
            let c = cov_symbolic(&t);
            Ok(Output::ok(format!("{c}\n"), json!({ "term": t, "cov": c })))
        }
        Command::Obstructions { cardinal, family } => {
            let nu = parse_cardinal(&cardinal)?;
            let family = family.as_deref().map(parse_family).transpose()?;
            let list = obstruction_list(&nu, family.as_ref())?;
            let text = list.iter().map(|t| format!("{t}\n")).collect();
            Ok(Output::ok(
                text,
                json!({ "cardinal": nu, "obstructions": list }),
            ))
        }
        Command::Gen { kind } => generate(kind),
        Command::Dot { file, inc } => {
            let doc = load(&file)?;
            let dot = to_dot(&doc.poset, doc.labels.as_deref(), inc);
            Ok(Output::ok(dot.clone(), json!({ "dot": dot })))
        }
        Command::Selftest { seed, instances } => {
            let r = run_selftest(seed, instances);
            let mut text = String::new();
            for c in &r.checks {
                text += &format!(
                    "{:<24} {:>5} passed {:>5} failed\n",
                    c.name, c.passed, c.failed
                );
                if let Some(f) = &c.first_failure {
                    text += &format!("  first failure: {f}\n");
                }
            }
            text += &format!("total: {} passed, {} failed\n", r.passed(), r.failed());
            let code = if r.ok() { 0 } else { 1 };
            Ok(Output {
                text,
                json: serde_json::to_value(&r).expect("report serializes"),
                code,
            })
        }
    }
}

/// `alpha beta -> element` lines for a grid embedding.
fn render_map(e: &Embedding, grid_labels: &[String], doc: &PosetDoc) -> (String, Value) {
    let mut text = String::new();
    let mut rows = Vec::new();
    for (i, &x) in e.map.iter().enumerate() {
        let pair = grid_labels[i]
            .trim_matches(|c| c == '(' || c == ')')
            .replace(',', " ");
        text += &format!("{pair} -> {x}\n");
        rows.push(json!({ "source": grid_labels[i], "element": x, "label": doc.label(x) }));
    }
    (text, Value::Array(rows))
}

fn emit(p: &Poset, labels: Option<Vec<String>>) -> Output {
    let relations: Vec<(usize, usize)> = p.cover_pairs();
    Output::ok(
        write_poset(p, labels.as_deref()),
        json!({ "n": p.len(), "covers": relations, "labels": labels }),
    )
}

fn generate(kind: GenKind) -> Result<Output, Error> {
    Ok(match kind {
        GenKind::Grid { n } => {
            let g = grid_upper(n)?;
            let labels = g.label_strings();
            emit(&g.poset, Some(labels))
        }
        GenKind::Random { n, p, seed } => emit(&random_poset(n, p, seed)?, None),
        GenKind::Lexsum { parts } => {
            let posets = parts
                .iter()
                .map(|s| part(s))
                .collect::<Result<Vec<_>, _>>()?;
            emit(&lex_sum(&posets), None)
        }
        GenKind::Chain { n } => emit(&chain(n), None),
        GenKind::Antichain { n } => emit(&antichain(n), None),
        GenKind::Ideals { n, m } => {
            let (_, ideals) = canonical_ideal_chain(n, m)?;
            Output::ok(
                write_ideals(&ideals),
                json!({ "n": n, "m": m, "ideals": ideals }),
            )
        }
    })
}

fn part(spec: &str) -> Result<Poset, Error> {
    let bad = || Error::Precondition(format!("part `{spec}` is not of the form kind:size"));
    let (kind, size) = spec.split_once(':').ok_or_else(bad)?;
    let size: usize = size.parse().map_err(|_| bad())?;
    match kind {
        "grid" => Ok(grid_upper(size)?.poset),
        "chain" => Ok(chain(size)),
        "antichain" => Ok(antichain(size)),
        _ => Err(Error::Precondition(format!(
            "unknown part kind `{kind}`; use grid, chain or antichain"
        ))),
    }
}
