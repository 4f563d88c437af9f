//! Cross-checks against brute-force oracles that share no code path with the
//! implementation: chain enumeration for `p`, union-find over the defining
//! relations for equality, breadth-first search over commutation classes,
//! Floyd-Warshall for reachability, and relation checking for endomorphisms.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use hkmonoid::endo::{enumerate_endomorphisms, unit_group_size, verify_extends, DEFAULT_BUDGET};
use hkmonoid::graph::all_graphs;
use hkmonoid::idempotent::idempotent_word;
use hkmonoid::kiselman::{epsilon_word, kiselman_graph};
use hkmonoid::rewrite::{
    bounded_elements, hk_equal, normalize, normalize_randomized, trace_canonical,
};
use hkmonoid::{OrientedGraph, PureSequence, SetSequence, VertexSet, Word};

fn graphs_up_to(max_n: usize) -> Vec<OrientedGraph> {
    (1..=max_n).flat_map(|n| all_graphs(n).unwrap()).collect()
}

fn words_up_to(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (1..=n).map(move |v| {
                    let mut w = w.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

// ---------------------------------------------------------------- p as chains

/// A chain `b -> i_1 -> ... -> i_r -> a` with `b ∈ Y \ X`, `a ∈ X \ Y`,
/// and every `i_t ∈ X ∩ Y`.
fn chain_exists(g: &OrientedGraph, x: VertexSet, y: VertexSet) -> bool {
    let inner: Vec<usize> = x.intersection(y).iter().collect();
    let targets: Vec<usize> = x.difference(y).iter().collect();
    fn extend(g: &OrientedGraph, at: usize, inner: &[usize], targets: &[usize], used: &mut Vec<usize>) -> bool {
        if targets.iter().any(|&a| g.has_arrow(at, a)) {
            return true;
        }
        for &i in inner {
            if !used.contains(&i) && g.has_arrow(at, i) {
                used.push(i);
                if extend(g, i, inner, targets, used) {
                    return true;
                }
                used.pop();
            }
        }
        false
    }
    y.difference(x)
        .iter()
        .any(|b| extend(g, b, &inner, &targets, &mut Vec::new()))
}

#[test]
fn predicate_p_matches_chain_definition() {
    let mut pairs = 0;
    for g in graphs_up_to(4) {
        let all: Vec<VertexSet> = g.vertices().subsets().collect();
        for &x in &all {
            for &y in &all {
                assert_eq!(g.predicate_p(x, y), !chain_exists(&g, x, y), "{g:?} X={x} Y={y}");
                pairs += 1;
            }
        }
    }
    assert!(pairs > 180_000);
}

#[test]
fn predicate_p_on_complete_acyclic_graph_is_the_order_condition() {
    for n in 1..=5 {
        let g = kiselman_graph(n).unwrap();
        for x in g.vertices().subsets() {
            for y in g.vertices().subsets() {
                let order = x
                    .difference(y)
                    .iter()
                    .all(|a| y.difference(x).iter().all(|b| a > b));
                assert_eq!(g.predicate_p(x, y), order);
            }
        }
    }
}

// ------------------------------------------------------- acyclicity, reachability

fn has_cycle_dfs(g: &OrientedGraph, x: VertexSet) -> bool {
    // 0 white, 1 grey, 2 black
    fn visit(g: &OrientedGraph, x: VertexSet, v: usize, color: &mut HashMap<usize, u8>) -> bool {
        color.insert(v, 1);
        for u in x.iter().filter(|&u| g.has_arrow(v, u)) {
            match color.get(&u).copied().unwrap_or(0) {
                1 => return true,
                0 if visit(g, x, u, color) => return true,
                _ => {}
            }
        }
        color.insert(v, 2);
        false
    }
    let mut color = HashMap::new();
    x.iter()
        .any(|v| color.get(&v).copied().unwrap_or(0) == 0 && visit(g, x, v, &mut color))
}

#[test]
fn acyclicity_and_topological_order_match_dfs() {
    for g in graphs_up_to(4) {
        let listed: HashSet<VertexSet> = g.acyclic_subsets().unwrap().into_iter().collect();
        for x in g.vertices().subsets() {
            let acyclic = !has_cycle_dfs(&g, x);
            assert_eq!(g.is_acyclic(x), acyclic, "{g:?} {x}");
            assert_eq!(listed.contains(&x), acyclic);
            match g.topological_order(x) {
                Ok(order) => {
                    assert!(acyclic);
                    assert_eq!(order.iter().copied().collect::<VertexSet>(), x);
                    assert_eq!(order.len(), x.len());
                    for (j, &u) in order.iter().enumerate() {
                        for (k, &v) in order.iter().enumerate() {
                            if g.has_arrow(u, v) {
                                assert!(j > k, "{g:?} order {order:?}");
                            }
                        }
                    }
                }
                Err(_) => assert!(!acyclic),
            }
        }
    }
}

#[test]
fn reachable_matches_floyd_warshall() {
    for g in graphs_up_to(4) {
        let n = g.n();
        for within in g.vertices().subsets() {
            let mut reach = vec![vec![false; n + 1]; n + 1];
            for u in within.iter() {
                reach[u][u] = true;
                for v in within.iter() {
                    if g.has_arrow(u, v) {
                        reach[u][v] = true;
                    }
                }
            }
            for k in within.iter() {
                for i in within.iter() {
                    for j in within.iter() {
                        if reach[i][k] && reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
            for sources in within.subsets() {
                let expected: VertexSet = within
                    .iter()
                    .filter(|&v| sources.iter().any(|s| reach[s][v]))
                    .collect();
                assert_eq!(g.reachable(sources, within), expected);
            }
        }
    }
}

// ------------------------------------------------------------ word equality

/// Union-find over all words of length <= `cap`, joined along every
/// application of a defining relation that stays within the cap.
struct RelationClasses {
    index: HashMap<Vec<usize>, usize>,
    parent: Vec<usize>,
}

impl RelationClasses {
    fn new(g: &OrientedGraph, cap: usize) -> Self {
        let words = words_up_to(g.n(), cap);
        let index: HashMap<Vec<usize>, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut classes = RelationClasses {
            parent: (0..words.len()).collect(),
            index,
        };
        let mut rules: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for i in 1..=g.n() {
            rules.push((vec![i, i], vec![i]));
            for j in 1..=g.n() {
                if g.disconnected(i, j) {
                    rules.push((vec![i, j], vec![j, i]));
                }
                if g.has_arrow(i, j) {
                    rules.push((vec![i, j, i], vec![i, j]));
                    rules.push((vec![j, i, j], vec![i, j]));
                }
            }
        }
        for w in &words {
            for (lhs, rhs) in &rules {
                if w.len() < lhs.len() {
                    continue;
                }
                for at in 0..=(w.len() - lhs.len()) {
                    if &w[at..at + lhs.len()] == lhs.as_slice() {
                        let mut v = w[..at].to_vec();
                        v.extend_from_slice(rhs);
                        v.extend_from_slice(&w[at + lhs.len()..]);
                        if let Some(&b) = classes.index.get(&v) {
                            let a = classes.index[w];
                            classes.union(a, b);
                        }
                    }
                }
            }
        }
        classes
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }

    fn class_of(&mut self, w: &[usize]) -> usize {
        let i = self.index[w];
        self.find(i)
    }
}

#[test]
fn hk_equal_matches_relation_closure() {
    for g in graphs_up_to(3) {
        let mut classes = RelationClasses::new(&g, 6);
        let short = words_up_to(g.n(), 4);
        let class: Vec<usize> = short.iter().map(|w| classes.class_of(w)).collect();
        let as_word: Vec<Word> = short.iter().map(|w| Word::from(w.clone())).collect();
        for a in 0..short.len() {
            for b in 0..short.len() {
                assert_eq!(
                    hk_equal(&g, &as_word[a], &as_word[b]),
                    class[a] == class[b],
                    "{g:?} {:?} vs {:?}",
                    short[a],
                    short[b]
                );
            }
        }
    }
}

#[test]
fn bounded_element_counts_match_relation_closure() {
    let cases = [
        (OrientedGraph::edgeless(2).unwrap(), 2, 4),
        (OrientedGraph::edgeless(1).unwrap(), 3, 2),
        (OrientedGraph::new(2, [(1, 2)]).unwrap(), 2, 5),
    ];
    for (g, len, expected) in cases {
        let mut classes = RelationClasses::new(&g, len + 2);
        let distinct: HashSet<usize> = words_up_to(g.n(), len)
            .iter()
            .map(|w| classes.class_of(w))
            .collect();
        assert_eq!(distinct.len(), expected);
        assert_eq!(bounded_elements(&g, len).unwrap().len(), expected);
    }
    for g in graphs_up_to(3) {
        let mut classes = RelationClasses::new(&g, 6);
        let distinct: HashSet<usize> = words_up_to(g.n(), 4)
            .iter()
            .map(|w| classes.class_of(w))
            .collect();
        assert_eq!(bounded_elements(&g, 4).unwrap().len(), distinct.len(), "{g:?}");
    }
}

/// Least word of the commutation class by exhaustive search.
fn least_commutation_variant(g: &OrientedGraph, w: &[usize]) -> Vec<usize> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::from([w.to_vec()]);
    seen.insert(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            if g.disconnected(cur[i], cur[i + 1]) {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().next().unwrap()
}

#[test]
fn trace_canonical_matches_class_search() {
    for g in graphs_up_to(3) {
        for w in words_up_to(g.n(), 5) {
            let expected = least_commutation_variant(&g, &w);
            assert_eq!(trace_canonical(&g, &Word::from(w.clone())), Word::from(expected));
        }
    }
    let g = OrientedGraph::new(4, [(1, 2), (3, 4)]).unwrap();
    for w in words_up_to(4, 5) {
        let expected = least_commutation_variant(&g, &w);
        assert_eq!(trace_canonical(&g, &Word::from(w.clone())), Word::from(expected));
    }
}

#[test]
fn reduction_strategy_does_not_matter() {
    for g in graphs_up_to(3) {
        for w in words_up_to(g.n(), 6) {
            let w = Word::from(w);
            let det = trace_canonical(&g, normalize(&g, &w).word());
            for seed in 0..10 {
                let ran = normalize_randomized(&g, &w, seed);
                assert_eq!(trace_canonical(&g, ran.word()), det, "{g:?} `{w}` seed {seed}");
            }
        }
    }
}

// ------------------------------------------------------------ endomorphisms

#[test]
fn pure_sequences_are_exactly_the_relation_preserving_tuples() {
    for g in graphs_up_to(3) {
        let sets = g.acyclic_subsets().unwrap();
        let listed: HashSet<SetSequence> = enumerate_endomorphisms(&g, DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .map(PureSequence::into_sequence)
            .collect();
        let mut tuple = vec![0usize; g.n()];
        let mut brute = HashSet::new();
        loop {
            let seq = SetSequence::new(tuple.iter().map(|&k| sets[k]).collect());
            if verify_extends(&g, &seq).unwrap() {
                brute.insert(seq);
            }
            // odometer
            let mut pos = 0;
            while pos < tuple.len() {
                tuple[pos] += 1;
                if tuple[pos] < sets.len() {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
            if pos == tuple.len() {
                break;
            }
        }
        assert_eq!(listed, brute, "{g:?}");
    }
}

#[test]
fn unit_group_matches_inverse_search_and_automorphisms() {
    for g in graphs_up_to(3) {
        let all = enumerate_endomorphisms(&g, DEFAULT_BUDGET).unwrap();
        let unit = PureSequence::unit(g.n());
        let invertible = all
            .iter()
            .filter(|s| {
                all.iter().any(|t| s.star(t).unwrap() == unit && t.star(s).unwrap() == unit)
            })
            .count();
        assert_eq!(unit_group_size(&g, DEFAULT_BUDGET).unwrap(), invertible, "{g:?}");
        assert_eq!(g.automorphisms().unwrap().len(), invertible, "{g:?}");
    }
}

#[test]
fn epsilon_words_are_the_idempotent_words_of_the_kiselman_graph() {
    for n in 1..=5 {
        let g = kiselman_graph(n).unwrap();
        for x in g.vertices().subsets() {
            assert_eq!(epsilon_word(x), idempotent_word(&g, x).unwrap().word);
        }
    }
}
