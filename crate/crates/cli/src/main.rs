use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hkmonoid::endo::{count_endomorphisms, enumerate_endomorphisms, DEFAULT_BUDGET};
use hkmonoid::idempotent::enumerate_idempotents;
use hkmonoid::kiselman::kiselman_graph;
use hkmonoid::rewrite::{hk_equal, normalize, trace_canonical};
use hkmonoid::word::DEFAULT_MAX_WORD_LEN;
use hkmonoid::{OrientedGraph, VertexSet, Word};

mod bench;
mod verify;

#[derive(Parser, Debug)]
#[command(name = "hk", version, about = "Word problem, idempotents and endomorphisms of Hecke-Kiselman monoids")]
struct Cli {
    /// Graph file: `n <count>` then one `u v` line per arrow.
    #[arg(short = 'g', long = "graph", global = true, value_name = "FILE")]
    graph: Option<PathBuf>,

    /// Use the complete acyclic graph with i -> j exactly when i > j.
    #[arg(long, global = true, value_name = "N")]
    kiselman: Option<usize>,

    /// One JSON object per output line.
    #[arg(long, global = true)]
    machine: bool,

    /// Cap on candidate tuples scanned by endomorphism enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,

    /// Reject input words longer than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WORD_LEN)]
    max_word_len: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a word to normal form and print its commutation-canonical form.
    Normalize { word: String },
    /// Decide equality of two words; exit 0 if equal, 1 if not, 2 on error.
    Equal { left: String, right: String },
    /// Print the set of letters of a word.
    Content { word: String },
    /// List one idempotent per acyclic vertex subset.
    Idempotents,
    /// Evaluate the predicate p(X, Y), or tabulate it over all acyclic pairs.
    P {
        x: Option<String>,
        y: Option<String>,
    },
    /// Enumerate endomorphisms as pure set sequences.
    Endos {
        #[arg(long, value_enum, default_value_t = EndoMode::Count)]
        mode: EndoMode,
    },
    /// List graph automorphisms as image tuples.
    Aut,
    /// Run a verification suite.
    Verify(verify::VerifyArgs),
    /// Print throughput figures as CSV.
    Bench(bench::BenchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EndoMode {
    Count,
    List,
    Matrices,
}

/// Shared options after validation.
pub struct Options {
    pub graph: Option<PathBuf>,
    pub kiselman: Option<usize>,
    pub machine: bool,
    pub budget: u128,
    max_word_len: usize,
}

impl Options {
    pub fn has_graph_source(&self) -> bool {
        self.graph.is_some() || self.kiselman.is_some()
    }

    pub fn load_graph(&self) -> Result<OrientedGraph> {
        match (&self.graph, self.kiselman) {
            (Some(_), Some(_)) => bail!("give exactly one of -g <file> and --kiselman <n>"),
            (None, None) => bail!("a graph is required: -g <file> or --kiselman <n>"),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                text.parse()
                    .with_context(|| format!("parsing {}", path.display()))
            }
            (None, Some(n)) => Ok(kiselman_graph(n)?),
        }
    }

    fn parse_word(&self, g: &OrientedGraph, text: &str) -> Result<Word> {
        let w: Word = text.parse().with_context(|| format!("word `{text}`"))?;
        w.check_len(self.max_word_len)?;
        w.check_alphabet(g.n())?;
        Ok(w)
    }
}

fn parse_set(g: &OrientedGraph, text: &str) -> Result<VertexSet> {
    let x: VertexSet = text.parse().with_context(|| format!("set `{text}`"))?;
    if !x.is_subset(g.vertices()) {
        bail!("set {x} is not contained in {}", g.vertices());
    }
    Ok(x)
}

fn letters(w: &Word) -> Vec<usize> {
    w.letters().collect()
}

fn members(x: VertexSet) -> Vec<usize> {
    x.iter().collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let ctx = Options {
        graph: cli.graph,
        kiselman: cli.kiselman,
        machine: cli.machine,
        budget: cli.budget,
        max_word_len: cli.max_word_len,
    };
    if ctx.graph.is_some() && ctx.kiselman.is_some() {
        bail!("give exactly one of -g <file> and --kiselman <n>");
    }
    match cli.command {
        Command::Normalize { word } => {
            let g = ctx.load_graph()?;
            let w = ctx.parse_word(&g, &word)?;
            let nf = normalize(&g, &w).into_word();
            let tc = trace_canonical(&g, &nf);
            if ctx.machine {
                println!(
                    "{}",
                    json!({
                        "normal_form": letters(&nf),
                        "trace_canonical": letters(&tc),
                        "content": members(w.content()),
                    })
                );
            } else {
                println!("normal form: {nf}");
                println!("trace canonical: {tc}");
                println!("content: {}", w.content());
            }
        }
        Command::Equal { left, right } => {
            let g = ctx.load_graph()?;
            let a = ctx.parse_word(&g, &left)?;
            let b = ctx.parse_word(&g, &right)?;
            let equal = hk_equal(&g, &a, &b);
            if ctx.machine {
                println!("{}", json!({ "equal": equal }));
            } else {
                println!("{}", if equal { "equal" } else { "unequal" });
            }
            return Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Content { word } => {
            let g = ctx.load_graph()?;
            let w = ctx.parse_word(&g, &word)?;
            if ctx.machine {
                println!("{}", json!({ "content": members(w.content()) }));
            } else {
                println!("{}", w.content());
            }
        }
        Command::Idempotents => {
            let g = ctx.load_graph()?;
            for h in enumerate_idempotents(&g)? {
                if ctx.machine {
                    println!("{}", json!({ "support": members(h.support), "word": letters(&h.word) }));
                } else {
                    println!("{h}");
                }
            }
        }
        Command::P { x, y } => {
            let g = ctx.load_graph()?;
            let tabulate = x.is_none();
            let pairs = match (x, y) {
                (Some(x), Some(y)) => vec![(parse_set(&g, &x)?, parse_set(&g, &y)?)],
                (None, None) => {
                    let sets = g.acyclic_subsets()?;
                    sets.iter()
                        .flat_map(|&x| sets.iter().map(move |&y| (x, y)))
                        .collect()
                }
                _ => bail!("give both X and Y, or neither to tabulate all acyclic pairs"),
            };
            for (x, y) in pairs {
                let p = g.predicate_p(x, y);
                if ctx.machine {
                    println!("{}", json!({ "x": members(x), "y": members(y), "p": p }));
                } else if tabulate {
                    println!("{x} {y} {p}");
                } else {
                    println!("{p}");
                }
            }
        }
        Command::Endos { mode } => {
            let g = ctx.load_graph()?;
            if mode == EndoMode::Count {
                let count = count_endomorphisms(&g, ctx.budget)?;
                if ctx.machine {
                    println!("{}", json!({ "count": count }));
                } else {
                    println!("{count}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let all = enumerate_endomorphisms(&g, ctx.budget)?;
            for (k, s) in all.iter().enumerate() {
                if ctx.machine {
                    let sets: Vec<Vec<usize>> = s.sets().iter().map(|&x| members(x)).collect();
                    let matrix: Vec<Vec<u8>> = s
                        .psi()
                        .rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(u8::from).collect())
                        .collect();
                    println!("{}", json!({ "sets": sets, "matrix": matrix }));
                } else if mode == EndoMode::List {
                    println!("{s}");
                } else {
                    if k > 0 {
                        println!();
                    }
                    print!("{}", s.psi());
                }
            }
        }
        Command::Aut => {
            let g = ctx.load_graph()?;
            for perm in g.automorphisms()? {
                if ctx.machine {
                    println!("{}", json!({ "images": perm }));
                } else {
                    let line: Vec<String> = perm.iter().map(usize::to_string).collect();
                    println!("{}", line.join(" "));
                }
            }
        }
        Command::Verify(args) => return verify::run(&ctx, &args),
        Command::Bench(args) => bench::run(&args)?,
    }
    Ok(ExitCode::SUCCESS)
}

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
