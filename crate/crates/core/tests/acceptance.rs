//! Acceptance gate. Run with `cargo test -p hkmonoid --test acceptance`;
//! prints one PASS/FAIL line per criterion and exits non-zero on failure.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use hkmonoid::endo::{
    apply_endomorphism, enumerate_endomorphisms, phi_from_images, unit_group_size, verify_extends,
    DEFAULT_BUDGET,
};
use hkmonoid::graph::all_graphs;
use hkmonoid::idempotent::{
    braid_law, enumerate_idempotents, idempotent_word, mnrs_partition, product_is_idempotent,
};
use hkmonoid::kiselman::{combine_law, epsilon_word, kiselman_graph, prop14_condition};
use hkmonoid::rewrite::{
    bounded_elements, canonical_form, hk_equal, is_idempotent_word, normalize,
    normalize_randomized, trace_canonical,
};
use hkmonoid::{OrientedGraph, PureSequence, SetSequence, VertexSet, Word};

type Outcome = Result<String, String>;

fn graphs_up_to(max_n: usize) -> Vec<OrientedGraph> {
    (1..=max_n).flat_map(|n| all_graphs(n).unwrap()).collect()
}

fn first_failure(results: Vec<Result<u64, String>>) -> Result<u64, String> {
    results.into_iter().sum()
}

/// Criterion 1: `p(X, Y)` matches rewriting for every pair on every graph
/// with n <= 3, with `e_X e_Y = e_{X∪Y}` and the braid identities on agreement.
fn theorem_p() -> Outcome {
    let graphs = graphs_up_to(3);
    let n3 = graphs.iter().filter(|g| g.n() == 3).count();
    if n3 != 27 {
        return Err(format!("expected 27 graphs on 3 vertices, found {n3}"));
    }
    let results: Vec<Result<u64, String>> = graphs
        .par_iter()
        .map(|g| {
            let sets = g.acyclic_subsets().map_err(|e| e.to_string())?;
            let mut pairs = 0;
            for &x in &sets {
                for &y in &sets {
                    let check = product_is_idempotent(g, x, y).map_err(|e| e.to_string())?;
                    if check.via_p != check.via_oracle {
                        return Err(format!("{g:?} X={x} Y={y}: {check:?}"));
                    }
                    let braid = braid_law(g, x, y).map_err(|e| e.to_string())?;
                    if check.via_p {
                        let union = x.union(y);
                        let ex = idempotent_word(g, x).unwrap().word;
                        let ey = idempotent_word(g, y).unwrap().word;
                        let exy = idempotent_word(g, union)
                            .map_err(|_| format!("{g:?} X={x} Y={y}: X∪Y cyclic"))?
                            .word;
                        if !hk_equal(g, &ex.concat(&ey), &exy) {
                            return Err(format!("{g:?} X={x} Y={y}: e_X e_Y != e_(X∪Y)"));
                        }
                        if !braid {
                            return Err(format!("{g:?} X={x} Y={y}: braid identities fail"));
                        }
                    } else if braid {
                        return Err(format!("{g:?} X={x} Y={y}: braid holds without p"));
                    }
                    pairs += 1;
                }
            }
            Ok(pairs)
        })
        .collect();
    let pairs = first_failure(results)?;
    Ok(format!("{} graphs ({n3} on 3 vertices), {pairs} pairs", graphs.len()))
}

/// Criterion 2: order condition, `p` on `K_n`, and rewriting agree for all
/// pairs with n <= 5; the combined products are idempotent for n <= 4.
fn kiselman_cross_check() -> Outcome {
    let mut summary = Vec::new();
    for n in 1..=5 {
        let g = kiselman_graph(n).map_err(|e| e.to_string())?;
        let subsets: Vec<VertexSet> = VertexSet::full(n).subsets().collect();
        let results: Vec<Result<u64, String>> = subsets
            .par_iter()
            .map(|&x| {
                let mut pairs = 0;
                for &y in &subsets {
                    let order = prop14_condition(x, y);
                    let p = g.predicate_p(x, y);
                    let product = epsilon_word(x).concat(&epsilon_word(y));
                    let oracle = is_idempotent_word(&g, &product).map_err(|e| e.to_string())?;
                    if order != p || p != oracle {
                        return Err(format!("n={n} X={x} Y={y}: order {order}, p {p}, oracle {oracle}"));
                    }
                    if order && !hk_equal(&g, &product, &epsilon_word(x.union(y))) {
                        return Err(format!("n={n} X={x} Y={y}: ε_X ε_Y != ε_(X∪Y)"));
                    }
                    if n <= 4 && !combine_law(n, x, y).map_err(|e| e.to_string())? {
                        return Err(format!("n={n} X={x} Y={y}: combined products not idempotent"));
                    }
                    pairs += 1;
                }
                Ok(pairs)
            })
            .collect();
        summary.push(format!("n={n}: {} pairs", first_failure(results)?));
    }
    Ok(summary.join(", "))
}

/// Criterion 3: |End| = 16 for the edgeless 2-graph and 15 for K_2, matching
/// a brute force over all 16 generator-image assignments.
fn endomorphism_counts() -> Outcome {
    let cases = [
        ("edgeless 2-graph", OrientedGraph::edgeless(2).unwrap(), 16usize),
        ("K_2", kiselman_graph(2).unwrap(), 15),
    ];
    let mut summary = Vec::new();
    for (name, g, expected) in cases {
        let listed: HashSet<SetSequence> = enumerate_endomorphisms(&g, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(PureSequence::into_sequence)
            .collect();
        let sets = g.acyclic_subsets().unwrap();
        if sets.len() != 4 {
            return Err(format!("{name}: expected 4 acyclic sets"));
        }
        let mut brute = HashSet::new();
        for &a in &sets {
            for &b in &sets {
                let seq = SetSequence::new(vec![a, b]);
                if verify_extends(&g, &seq).map_err(|e| e.to_string())? {
                    brute.insert(seq);
                }
            }
        }
        if listed.len() != expected || brute != listed {
            return Err(format!(
                "{name}: enumerated {}, brute force {}, expected {expected}",
                listed.len(),
                brute.len()
            ));
        }
        summary.push(format!("{name}: {expected}"));
    }
    Ok(summary.join(", "))
}

fn composition_laws(g: &OrientedGraph, s: &PureSequence, t: &PureSequence, members: &HashSet<&PureSequence>) -> Result<(), String> {
    let star = s.star(t).map_err(|e| e.to_string())?;
    let composed = (1..=g.n())
        .map(|i| {
            let inner = apply_endomorphism(g, t, &Word::letter(i))?;
            apply_endomorphism(g, s, &inner)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let phi = phi_from_images(g, &composed).map_err(|e| format!("{g:?} s={s} t={t}: {e}"))?;
    if phi != star {
        return Err(format!("{g:?} s={s} t={t}: Φ(s∘t)={phi} but s∗t={star}"));
    }
    if star.psi() != s.psi().multiply(&t.psi()).unwrap() {
        return Err(format!("{g:?} s={s} t={t}: Ψ not multiplicative"));
    }
    if !members.contains(&star) {
        return Err(format!("{g:?} s={s} t={t}: s∗t={star} not pure"));
    }
    Ok(())
}

/// Criterion 4: Φ turns composition into `∗`, Ψ turns `∗` into the Boolean
/// product, and pure sequences are closed under `∗` and contain the unit.
fn isomorphism_chain() -> Outcome {
    let graphs = graphs_up_to(3);
    let results: Vec<Result<u64, String>> = graphs
        .par_iter()
        .enumerate()
        .map(|(k, g)| {
            let all = enumerate_endomorphisms(g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let members: HashSet<&PureSequence> = all.iter().collect();
            if !members.contains(&PureSequence::unit(g.n())) {
                return Err(format!("{g:?}: unit missing"));
            }
            let mut pairs = 0;
            if g.n() <= 2 {
                for s in &all {
                    for t in &all {
                        composition_laws(g, s, t, &members)?;
                        pairs += 1;
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(4_000 + k as u64);
                for _ in 0..200 {
                    let s = all.choose(&mut rng).unwrap();
                    let t = all.choose(&mut rng).unwrap();
                    composition_laws(g, s, t, &members)?;
                    pairs += 1;
                }
            }
            Ok(pairs)
        })
        .collect();
    let pairs = first_failure(results)?;
    Ok(format!("{} graphs, {pairs} pairs", graphs.len()))
}

/// Criterion 5: invertible endomorphisms correspond to graph automorphisms.
fn unit_group() -> Outcome {
    let cases = [
        ("edgeless 2-graph", OrientedGraph::edgeless(2).unwrap(), 2usize),
        ("3-cycle", OrientedGraph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap(), 3),
        ("path 1->2->3", OrientedGraph::new(3, [(1, 2), (2, 3)]).unwrap(), 1),
        ("K_3", kiselman_graph(3).unwrap(), 1),
    ];
    let mut summary = Vec::new();
    for (name, g, expected) in cases {
        let units = unit_group_size(&g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let auts = g.automorphisms().map_err(|e| e.to_string())?.len();
        if units != expected || auts != expected {
            return Err(format!("{name}: units {units}, automorphisms {auts}, expected {expected}"));
        }
        summary.push(format!("{name}: {units}"));
    }
    Ok(summary.join(", "))
}

/// Criterion 6: randomized and deterministic reduction agree up to
/// commutation on 1000 random words per graph.
fn confluence() -> Outcome {
    let graphs = graphs_up_to(3);
    let results: Vec<Result<u64, String>> = graphs
        .par_iter()
        .enumerate()
        .map(|(k, g)| {
            let mut rng = ChaCha8Rng::seed_from_u64(6_000 + k as u64);
            for _ in 0..1000 {
                let len = rng.gen_range(0..=6);
                let w: Word = (0..len).map(|_| rng.gen_range(1..=g.n())).collect();
                let seed = rng.gen::<u64>();
                let det = trace_canonical(g, normalize(g, &w).word());
                let ran = trace_canonical(g, normalize_randomized(g, &w, seed).word());
                if det != ran {
                    return Err(format!("{g:?} word `{w}` seed {seed}: `{det}` vs `{ran}`"));
                }
            }
            Ok(1000)
        })
        .collect();
    let words = first_failure(results)?;
    Ok(format!("{} graphs, {words} words", graphs.len()))
}

/// Criterion 7: idempotents among all elements of length <= 6 are exactly the
/// `e_X`.
fn idempotent_completeness() -> Outcome {
    let graphs = graphs_up_to(3);
    let results: Vec<Result<u64, String>> = graphs
        .par_iter()
        .map(|g| {
            let elements = bounded_elements(g, 6).map_err(|e| e.to_string())?;
            let found: HashSet<Word> = elements
                .iter()
                .filter(|w| is_idempotent_word(g, w).unwrap())
                .cloned()
                .collect();
            let expected: HashSet<Word> = enumerate_idempotents(g)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|h| h.support.len() <= 6)
                .map(|h| canonical_form(g, &h.word))
                .collect();
            if found != expected {
                return Err(format!("{g:?}: found {found:?}, expected {expected:?}"));
            }
            Ok(elements.len() as u64)
        })
        .collect();
    let elements = first_failure(results)?;
    Ok(format!("{} graphs, {elements} elements scanned", graphs.len()))
}

/// Criterion 8: partition identities and no arrow from M to N whenever
/// `p(X, Y)` holds.
fn mnrs_structure() -> Outcome {
    let graphs = graphs_up_to(3);
    let mut pairs = 0u64;
    for g in &graphs {
        let sets = g.acyclic_subsets().map_err(|e| e.to_string())?;
        for &x in &sets {
            for &y in &sets {
                if !g.predicate_p(x, y) {
                    continue;
                }
                let part = mnrs_partition(g, x, y);
                if !part.invariants_hold(x, y) {
                    return Err(format!("{g:?} X={x} Y={y}: {part:?}"));
                }
                let bad = part.arrows_m_to_n(g);
                if !bad.is_empty() {
                    return Err(format!("{g:?} X={x} Y={y}: M->N arrows {bad:?}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{} graphs, {pairs} pairs with p", graphs.len()))
}

/// Label, check, time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 theorem p, all graphs n <= 3", theorem_p, 60),
        ("2 Kiselman cross-check, n <= 5", kiselman_cross_check, 60),
        ("3 endomorphism counts 16 / 15", endomorphism_counts, 5),
        ("4 Φ / Ψ / ∗-closure chain", isomorphism_chain, 120),
        ("5 unit group = graph automorphisms", unit_group, 30),
        ("6 confluence up to commutation", confluence, 60),
        ("7 idempotent completeness, L = 6", idempotent_completeness, 60),
        ("8 M/N/R/S structure", mnrs_structure, 30),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over_time = elapsed > Duration::from_secs(limit);
        match outcome {
            Ok(summary) if !over_time => {
                println!("PASS  criterion {name}: {summary} [{elapsed:.2?} < {limit}s]");
            }
            Ok(summary) => {
                failed += 1;
                println!("FAIL  criterion {name}: {summary} but took {elapsed:.2?} (limit {limit}s)");
            }
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
