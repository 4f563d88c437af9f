use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use serde_json::json;

use hkmonoid::graph::{all_graphs, MAX_ALL_GRAPHS};
use hkmonoid::verify::{self as suites, over_graphs, Counterexample, SuiteResult};
use hkmonoid::OrientedGraph;

use crate::Options;

/// All `4^n` pairs of subsets are checked by rewriting.
const MAX_PROP14_N: usize = 8;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// p(X, Y) against rewriting, the product law and the braid identities.
    TheoremP,
    /// Order condition, p and rewriting on complete acyclic graphs.
    Prop14,
    /// Endomorphism composition against star and the Boolean matrix product.
    PhiPsi,
    /// Star-closure of pure sequences and unit membership.
    Closure,
    /// Invertible endomorphisms against graph automorphisms.
    Units,
    /// Randomized against deterministic normalization.
    Confluence,
    /// Idempotents among short elements against one per acyclic subset.
    Idempotents,
    /// Partition identities and no arrow from M to N when p holds.
    Mnrs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,

    /// Run over every labeled simple oriented graph with 1..=max-n vertices.
    #[arg(long)]
    all_graphs: bool,

    #[arg(long, default_value_t = 3)]
    max_n: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Random pairs per graph for the endomorphism suites when n > 2.
    #[arg(long, default_value_t = 200)]
    samples: usize,

    /// Random words per graph for the confluence suite.
    #[arg(long, default_value_t = 1000)]
    words: usize,

    /// Longest word used by the confluence and idempotent suites.
    #[arg(long, default_value_t = 6)]
    word_len: usize,
}

struct Outcome {
    label: String,
    graphs: usize,
    result: SuiteResult,
    note: Option<String>,
}

fn per_graph(args: &VerifyArgs, g: &OrientedGraph) -> SuiteResult {
    match args.suite {
        Suite::TheoremP => suites::theorem_p(g),
        Suite::PhiPsi => suites::phi_psi(g, args.samples, args.seed),
        Suite::Closure => suites::closure(g, args.samples, args.seed),
        Suite::Units => suites::units(g).map(|_| 1),
        Suite::Confluence => suites::confluence(g, args.words, args.word_len, args.seed),
        Suite::Idempotents => suites::idempotents(g, args.word_len),
        Suite::Mnrs => suites::mnrs(g),
        Suite::Prop14 => unreachable!("prop14 runs on complete acyclic graphs only"),
    }
}

fn name(suite: Suite) -> String {
    suite.to_possible_value().expect("no skipped variants").get_name().to_string()
}

pub fn run(opts: &Options, args: &VerifyArgs) -> Result<ExitCode> {
    let suite = name(args.suite);
    let mut outcomes = Vec::new();
    if args.suite == Suite::Prop14 {
        if args.all_graphs || opts.graph.is_some() {
            bail!("prop14 runs on complete acyclic graphs: use --max-n or --kiselman <n>");
        }
        let sizes = match opts.kiselman {
            Some(n) => n..=n,
            None => 1..=args.max_n,
        };
        if *sizes.end() > MAX_PROP14_N {
            bail!("prop14 is limited to n <= {MAX_PROP14_N}");
        }
        for n in sizes {
            outcomes.push(Outcome {
                label: format!("{suite} n={n}"),
                graphs: 1,
                result: suites::prop14(n),
                note: None,
            });
        }
    } else if args.all_graphs {
        if opts.has_graph_source() {
            bail!("--all-graphs cannot be combined with a graph source");
        }
        if !(1..=MAX_ALL_GRAPHS).contains(&args.max_n) {
            bail!("--max-n must be between 1 and {MAX_ALL_GRAPHS}");
        }
        for n in 1..=args.max_n {
            let graphs = all_graphs(n)?;
            outcomes.push(Outcome {
                label: format!("{suite} n={n}"),
                graphs: graphs.len(),
                result: over_graphs(&graphs, |g| per_graph(args, g)),
                note: None,
            });
        }
    } else {
        let g = opts.load_graph()?;
        let (result, note) = if args.suite == Suite::Units {
            match suites::units(&g) {
                Ok((u, a)) => (Ok(1), Some(format!("{u} = {a}: invertible endomorphisms = automorphisms"))),
                Err(c) => (Err(c), None),
            }
        } else {
            (per_graph(args, &g), None)
        };
        outcomes.push(Outcome {
            label: suite.clone(),
            graphs: 1,
            result,
            note,
        });
    }

    let mut failed = false;
    for o in &outcomes {
        report(opts, o);
        failed |= o.result.is_err();
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn report(opts: &Options, o: &Outcome) {
    if opts.machine {
        let record = match &o.result {
            Ok(checked) => json!({
                "suite": o.label,
                "graphs": o.graphs,
                "pass": true,
                "checked": checked,
                "note": o.note,
            }),
            Err(c) => json!({
                "suite": o.label,
                "graphs": o.graphs,
                "pass": false,
                "detail": c.detail,
                "graph": c.graph.as_ref().map(ToString::to_string),
            }),
        };
        println!("{record}");
        return;
    }
    match &o.result {
        Ok(_) if o.note.is_some() => println!("{}: PASS ({})", o.label, o.note.as_deref().unwrap_or_default()),
        Ok(checked) => println!(
            "{}: PASS ({} graph{}, {checked} cases)",
            o.label,
            o.graphs,
            if o.graphs == 1 { "" } else { "s" }
        ),
        Err(c) => print_failure(&o.label, c),
    }
}

fn print_failure(label: &str, c: &Counterexample) {
    println!("{label}: FAIL");
    print!("{c}");
}
