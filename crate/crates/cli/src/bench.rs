use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hkmonoid::endo::sample_enumeration;
use hkmonoid::kiselman::kiselman_graph;
use hkmonoid::rewrite::normalize;
use hkmonoid::{OrientedGraph, VertexSet, Word};

const P_PAIRS: usize = 200_000;
const WORDS: usize = 2_000;
const ENUM_NODES: u64 = 200_000;
const RANDOM_DENSITY: f64 = 0.5;
/// Enumeration precomputes p over all pairs of acyclic subsets.
const MAX_ENUM_N: usize = 10;

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Family {
    Kiselman,
    RandomDag,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Family::Kiselman)]
    family: Family,

    /// Comma-separated sizes; `a..b` denotes an inclusive range.
    #[arg(long, default_value = "4..10")]
    sizes: String,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
            out.extend(a..=b);
        } else {
            out.push(item.parse()?);
        }
    }
    if let Some(&bad) = out.iter().find(|&&n| !(1..=64).contains(&n)) {
        bail!("size {bad} is outside 1..=64");
    }
    Ok(out)
}

fn per_sec(count: u64, start: Instant) -> f64 {
    count as f64 / start.elapsed().as_secs_f64().max(1e-9)
}

fn row(g: &OrientedGraph, rng: &mut ChaCha8Rng) -> Result<(f64, f64, Option<f64>)> {
    let full = g.vertices().mask();
    let pairs: Vec<(VertexSet, VertexSet)> = (0..P_PAIRS)
        .map(|_| {
            (
                VertexSet::from_mask(rng.gen::<u64>() & full),
                VertexSet::from_mask(rng.gen::<u64>() & full),
            )
        })
        .collect();
    let start = Instant::now();
    let holding = pairs.iter().filter(|&&(x, y)| g.predicate_p(x, y)).count();
    std::hint::black_box(holding);
    let p_rate = per_sec(P_PAIRS as u64, start);

    let words: Vec<Word> = (0..WORDS)
        .map(|_| (0..4 * g.n()).map(|_| rng.gen_range(1..=g.n())).collect())
        .collect();
    let start = Instant::now();
    let reductions: usize = words.iter().map(|w| w.len() - normalize(g, w).word().len()).sum();
    let reduce_rate = per_sec(reductions as u64, start);

    let enum_rate = if g.n() <= MAX_ENUM_N {
        let start = Instant::now();
        let (nodes, _) = sample_enumeration(g, ENUM_NODES)?;
        Some(per_sec(nodes, start))
    } else {
        None
    };
    Ok((p_rate, reduce_rate, enum_rate))
}

pub fn run(args: &BenchArgs) -> Result<()> {
    let sizes = parse_sizes(&args.sizes)?;
    println!("family,n,p_pairs_per_sec,normalize_reductions_per_sec,enum_tuples_per_sec");
    let family = match args.family {
        Family::Kiselman => "kiselman",
        Family::RandomDag => "random-dag",
    };
    for n in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ n as u64);
        let g = match args.family {
            Family::Kiselman => kiselman_graph(n)?,
            Family::RandomDag => OrientedGraph::random_acyclic(n, RANDOM_DENSITY, &mut rng)?,
        };
        let (p, r, e) = row(&g, &mut rng)?;
        let e = e.map_or_else(String::new, |e| format!("{e:.0}"));
        println!("{family},{n},{p:.0},{r:.0},{e}");
    }
    Ok(())
}
