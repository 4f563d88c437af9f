//! Exhaustive and sampled checks of the structural laws, one suite per
//! family of statements. Each suite returns the number of cases checked or
//! the first counterexample, printed in replayable text formats.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::endo::{
    apply_endomorphism, enumerate_endomorphisms, phi_from_images, unit_group_size, PureSequence,
    DEFAULT_BUDGET,
};
use crate::graph::OrientedGraph;
use crate::idempotent::{
    braid_law, enumerate_idempotents, mnrs_partition, product_is_idempotent,
    product_support_law,
};
use crate::kiselman::{combine_law, epsilon_word, kiselman_graph, prop14_condition};
use crate::rewrite::{
    bounded_elements, canonical_form, is_idempotent_word, normalize, normalize_randomized,
    trace_canonical,
};
use crate::set::VertexSet;
use crate::word::Word;

/// A failing case: the detail line plus the graph in file format.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub graph: Option<OrientedGraph>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "counterexample: {}", self.detail)?;
        if let Some(g) = &self.graph {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn fail(g: &OrientedGraph, detail: String) -> Counterexample {
    Counterexample {
        graph: Some(g.clone()),
        detail,
    }
}

fn lib_err(g: &OrientedGraph, e: impl fmt::Display) -> Counterexample {
    fail(g, format!("error: {e}"))
}

/// Number of individual cases checked by a passing suite.
pub type Checked = u64;
pub type SuiteResult = Result<Checked, Counterexample>;

/// `p(X, Y)` against rewriting for every pair of acyclic sets; on agreement
/// `true`, also `e_X e_Y = e_{X ∪ Y}` and the braid identities; on `false`,
/// the braid identities must fail.
pub fn theorem_p(g: &OrientedGraph) -> SuiteResult {
    let sets = g.acyclic_subsets().map_err(|e| lib_err(g, e))?;
    let mut checked = 0;
    for &x in &sets {
        for &y in &sets {
            let check = product_is_idempotent(g, x, y).map_err(|e| lib_err(g, e))?;
            if !check.agrees() {
                return Err(fail(
                    g,
                    format!(
                        "X = {x}, Y = {y}: p = {} but rewriting says idempotent = {}",
                        check.via_p, check.via_oracle
                    ),
                ));
            }
            let braid = braid_law(g, x, y).map_err(|e| lib_err(g, e))?;
            if braid != check.via_p {
                return Err(fail(g, format!("X = {x}, Y = {y}: braid identities = {braid}, p = {}", check.via_p)));
            }
            if check.via_p {
                product_support_law(g, x, y).map_err(|e| lib_err(g, e))?;
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// On `K_n`: the order condition, `p`, and rewriting agree for all pairs of
/// subsets, with `ε_X ε_Y = ε_{X ∪ Y}` when they hold; for `n <= 4` the
/// combined products `ε_{X∪Y} ε_X` and `ε_Y ε_{X∪Y}` are idempotent.
pub fn prop14(n: usize) -> SuiteResult {
    let g = kiselman_graph(n).map_err(|e| Counterexample {
        graph: None,
        detail: format!("error: {e}"),
    })?;
    let subsets: Vec<VertexSet> = VertexSet::full(n).subsets().collect();
    let results: Vec<SuiteResult> = subsets
        .par_iter()
        .map(|&x| {
            let mut checked = 0;
            for &y in &subsets {
                let order = prop14_condition(x, y);
                let p = g.predicate_p(x, y);
                let product = epsilon_word(x).concat(&epsilon_word(y));
                let oracle = is_idempotent_word(&g, &product).map_err(|e| lib_err(&g, e))?;
                if order != p || p != oracle {
                    return Err(fail(
                        &g,
                        format!("X = {x}, Y = {y}: order condition {order}, p {p}, rewriting {oracle}"),
                    ));
                }
                if order && canonical_form(&g, &product) != canonical_form(&g, &epsilon_word(x.union(y))) {
                    return Err(fail(&g, format!("X = {x}, Y = {y}: ε_X ε_Y differs from ε_(X∪Y)")));
                }
                if n <= 4 && !combine_law(n, x, y).map_err(|e| lib_err(&g, e))? {
                    return Err(fail(&g, format!("X = {x}, Y = {y}: combined products not idempotent")));
                }
                checked += 1;
            }
            Ok(checked)
        })
        .collect();
    results.into_iter().sum()
}

fn pure_sequences(g: &OrientedGraph) -> Result<Vec<PureSequence>, Counterexample> {
    enumerate_endomorphisms(g, DEFAULT_BUDGET).map_err(|e| lib_err(g, e))
}

/// All pairs when `n <= 2`, otherwise `samples` seeded random pairs.
fn pairs<'a>(
    g: &OrientedGraph,
    all: &'a [PureSequence],
    samples: usize,
    seed: u64,
) -> Vec<(&'a PureSequence, &'a PureSequence)> {
    if g.n() <= 2 {
        all.iter().flat_map(|s| all.iter().map(move |t| (s, t))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                (
                    all.choose(&mut rng).expect("unit is always pure"),
                    all.choose(&mut rng).expect("unit is always pure"),
                )
            })
            .collect()
    }
}

/// Composition of endomorphisms against `star`, and `star` against the
/// Boolean matrix product.
pub fn phi_psi(g: &OrientedGraph, samples: usize, seed: u64) -> SuiteResult {
    let all = pure_sequences(g)?;
    let mut checked = 0;
    for (s, t) in pairs(g, &all, samples, seed) {
        let star = s.star(t).map_err(|e| lib_err(g, e))?;
        // images of s ∘ t on the generators
        let composed = (1..=g.n())
            .map(|i| {
                let inner = apply_endomorphism(g, t, &Word::letter(i))?;
                apply_endomorphism(g, s, &inner)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| lib_err(g, e))?;
        for (i, img) in composed.iter().enumerate() {
            let expected = t
                .sets()[i]
                .iter()
                .fold(VertexSet::EMPTY, |acc, j| acc.union(s.sets()[j - 1]));
            if img.content() != expected {
                return Err(fail(g, format!("s = {s}, t = {t}: content of (s∘t)(x_{}) is {}, expected {expected}", i + 1, img.content())));
            }
        }
        let phi = phi_from_images(g, &composed).map_err(|e| lib_err(g, e))?;
        if phi != star {
            return Err(fail(g, format!("s = {s}, t = {t}: Φ(s∘t) = {phi}, s ∗ t = {star}")));
        }
        let product = s.psi().multiply(&t.psi()).map_err(|e| lib_err(g, e))?;
        if star.psi() != product {
            return Err(fail(g, format!("s = {s}, t = {t}: Ψ(s ∗ t) differs from Ψ(s)·Ψ(t)")));
        }
        checked += 1;
    }
    Ok(checked)
}

/// The unit is pure and `star` never leaves the set of pure sequences.
pub fn closure(g: &OrientedGraph, samples: usize, seed: u64) -> SuiteResult {
    let all = pure_sequences(g)?;
    let members: HashSet<&PureSequence> = all.iter().collect();
    if !members.contains(&PureSequence::unit(g.n())) {
        return Err(fail(g, "unit sequence missing from enumeration".to_string()));
    }
    let mut checked = 1;
    for (s, t) in pairs(g, &all, samples, seed) {
        let st = s.star(t).map_err(|e| lib_err(g, e))?;
        if !members.contains(&st) {
            return Err(fail(g, format!("s = {s}, t = {t}: s ∗ t = {st} is not pure")));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Invertible endomorphisms against graph automorphisms.
pub fn units(g: &OrientedGraph) -> Result<(usize, usize), Counterexample> {
    let units = unit_group_size(g, DEFAULT_BUDGET).map_err(|e| lib_err(g, e))?;
    let auts = g.automorphisms().map_err(|e| lib_err(g, e))?.len();
    if units != auts {
        return Err(fail(g, format!("{units} invertible endomorphisms but {auts} automorphisms")));
    }
    Ok((units, auts))
}

/// Randomized reduction against the deterministic one, compared up to
/// commutation; also the reduced word is a quasi-subword of the input and
/// keeps its content.
pub fn confluence(g: &OrientedGraph, words: usize, max_len: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    for k in 0..words {
        let len = rng.gen_range(0..=max_len);
        let w: Word = (0..len).map(|_| rng.gen_range(1..=n)).collect();
        let det = normalize(g, &w);
        let run_seed = rng.gen::<u64>();
        let rand = normalize_randomized(g, &w, run_seed);
        if trace_canonical(g, det.word()) != trace_canonical(g, rand.word()) {
            return Err(fail(
                g,
                format!(
                    "word #{k} `{w}` (seed {run_seed}): deterministic `{}` vs randomized `{}`",
                    det.word(),
                    rand.word()
                ),
            ));
        }
        if !det.word().is_quasi_subword_of(&w) || det.word().content() != w.content() {
            return Err(fail(g, format!("word `{w}`: normal form `{}` not a content-preserving quasi-subword", det.word())));
        }
    }
    Ok(words as u64)
}

/// Idempotents among all elements of length at most `max_len` are exactly the
/// `e_X` with `|X| <= max_len`.
pub fn idempotents(g: &OrientedGraph, max_len: usize) -> SuiteResult {
    let elements = bounded_elements(g, max_len).map_err(|e| lib_err(g, e))?;
    let mut found = HashSet::new();
    for w in &elements {
        if is_idempotent_word(g, w).map_err(|e| lib_err(g, e))? {
            found.insert(w.clone());
        }
    }
    let expected: HashSet<Word> = enumerate_idempotents(g)
        .map_err(|e| lib_err(g, e))?
        .into_iter()
        .filter(|h| h.support.len() <= max_len)
        .map(|h| canonical_form(g, &h.word))
        .collect();
    if found != expected {
        let mut extra: Vec<_> = found.difference(&expected).map(|w| format!("`{w}`")).collect();
        let mut missing: Vec<_> = expected.difference(&found).map(|w| format!("`{w}`")).collect();
        extra.sort();
        missing.sort();
        return Err(fail(g, format!("unexpected idempotents [{}], missing [{}]", extra.join(", "), missing.join(", "))));
    }
    Ok(elements.len() as u64)
}

/// Partition identities for every pair, and no arrow from `M` to `N`
/// whenever `p(X, Y)` holds.
pub fn mnrs(g: &OrientedGraph) -> SuiteResult {
    let sets = g.acyclic_subsets().map_err(|e| lib_err(g, e))?;
    let mut checked = 0;
    for &x in &sets {
        for &y in &sets {
            let part = mnrs_partition(g, x, y);
            if !part.invariants_hold(x, y) {
                return Err(fail(g, format!("X = {x}, Y = {y}: partition identities fail for {part:?}")));
            }
            if g.predicate_p(x, y) {
                let bad = part.arrows_m_to_n(g);
                if !bad.is_empty() {
                    return Err(fail(g, format!("X = {x}, Y = {y}: arrows {bad:?} go from M to N")));
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Runs `suite` over `graphs` in parallel; reports in input order, so the
/// first counterexample is deterministic.
pub fn over_graphs<F>(graphs: &[OrientedGraph], suite: F) -> SuiteResult
where
    F: Fn(&OrientedGraph) -> SuiteResult + Sync,
{
    let results: Vec<SuiteResult> = graphs.par_iter().map(&suite).collect();
    results.into_iter().sum()
}
