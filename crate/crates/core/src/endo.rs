//! Endomorphisms of the monoid in sequence form.
//!
//! An endomorphism is determined by the contents `(X_1, ..., X_n)` of the
//! images of the generators, each image being the idempotent `e_{X_i}`.
//! Composition becomes the `star` operation on sequences, and encoding a
//! sequence as the Boolean matrix whose column `i` is the indicator of `X_i`
//! turns `star` into the Boolean matrix product.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{GraphError, OrientedGraph};
use crate::idempotent::idempotent_word;
use crate::rewrite::{canonical_form, hk_equal, is_idempotent_word_within, RewriteError};
use crate::set::{SetParseError, VertexSet};
use crate::word::{Word, WordError, DEFAULT_MAX_WORD_LEN};

/// Default cap on `|A|^n` candidate tuples for enumeration.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndoError {
    #[error("sequence has {found} entries, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sequence {0} is not pure")]
    Impure(SetSequence),
    #[error("image of generator {generator} is not idempotent")]
    NotIdempotent { generator: usize },
    #[error("enumeration would scan {candidates} candidate tuples, budget is {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("sequence entry {0} is not a subset of the vertex set")]
    OutOfRange(VertexSet),
    #[error("malformed sequence: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

impl From<WordError> for EndoError {
    fn from(e: WordError) -> Self {
        EndoError::Rewrite(e.into())
    }
}

/// An element `(X_1, ..., X_n)` of the set of all `n`-tuples of subsets of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetSequence(Vec<VertexSet>);

impl SetSequence {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        SetSequence(sets)
    }

    /// `({1}, {2}, ..., {n})`.
    pub fn unit(n: usize) -> Self {
        SetSequence((1..=n).map(VertexSet::singleton).collect())
    }

    /// `(∅, ..., ∅)`.
    pub fn empty(n: usize) -> Self {
        SetSequence(vec![VertexSet::EMPTY; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.0
    }

    /// `X_i`, 1-based.
    pub fn get(&self, i: usize) -> VertexSet {
        self.0[i - 1]
    }

    /// `(self ∗ other)_i = ⋃_{j ∈ other_i} self_j`: the sequence of
    /// `self ∘ other` when both are read as endomorphisms.
    pub fn star(&self, other: &SetSequence) -> Result<SetSequence, EndoError> {
        if self.n() != other.n() {
            return Err(EndoError::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(SetSequence(
            other
                .0
                .iter()
                .map(|yi| {
                    yi.iter()
                        .fold(VertexSet::EMPTY, |acc, j| acc.union(self.get(j)))
                })
                .collect(),
        ))
    }

    /// Entry `(x, i)` is 1 iff `x ∈ X_i`.
    pub fn psi(&self) -> BoolMatrix {
        let n = self.n();
        let mut m = BoolMatrix::zero(n);
        for (col, set) in self.0.iter().enumerate() {
            for x in set.iter() {
                m.set(x, col + 1, true);
            }
        }
        m
    }

    /// Reads column `i` of `m` as `X_i`.
    pub fn from_matrix(m: &BoolMatrix) -> SetSequence {
        let n = m.n();
        SetSequence(
            (1..=n)
                .map(|i| (1..=n).filter(|&x| m.get(x, i)).collect())
                .collect(),
        )
    }
}

/// `1,2; 2` with `-` for an empty entry.
impl fmt::Display for SetSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_compact()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl fmt::Debug for SetSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for SetSequence {
    type Err = EndoError;

    fn from_str(s: &str) -> Result<Self, EndoError> {
        s.split(';')
            .map(|part| {
                part.parse::<VertexSet>()
                    .map_err(|e: SetParseError| EndoError::Parse(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SetSequence)
    }
}

/// A sequence satisfying the purity conditions for a given graph, i.e. the
/// sequence form of an endomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureSequence(SetSequence);

impl PureSequence {
    pub fn new(g: &OrientedGraph, seq: SetSequence) -> Result<Self, EndoError> {
        if is_pure(g, &seq)? {
            Ok(PureSequence(seq))
        } else {
            Err(EndoError::Impure(seq))
        }
    }

    pub fn unit(n: usize) -> Self {
        PureSequence(SetSequence::unit(n))
    }

    pub fn as_sequence(&self) -> &SetSequence {
        &self.0
    }

    pub fn into_sequence(self) -> SetSequence {
        self.0
    }

    pub fn sets(&self) -> &[VertexSet] {
        self.0.sets()
    }

    /// Composition; pure sequences are closed under `star`.
    pub fn star(&self, other: &PureSequence) -> Result<PureSequence, EndoError> {
        self.0.star(&other.0).map(PureSequence)
    }

    pub fn psi(&self) -> BoolMatrix {
        self.0.psi()
    }
}

impl fmt::Display for PureSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_dimension(g: &OrientedGraph, seq: &SetSequence) -> Result<(), EndoError> {
    if seq.n() != g.n() {
        return Err(EndoError::DimensionMismatch {
            expected: g.n(),
            found: seq.n(),
        });
    }
    if let Some(&bad) = seq.sets().iter().find(|s| !s.is_subset(g.vertices())) {
        return Err(EndoError::OutOfRange(bad));
    }
    Ok(())
}

/// The pair condition between positions `i` and `j` (`i != j`).
fn pair_ok(g: &OrientedGraph, i: usize, j: usize, xi: VertexSet, xj: VertexSet) -> bool {
    if g.has_arrow(i, j) {
        g.predicate_p(xi, xj)
    } else if g.has_arrow(j, i) {
        g.predicate_p(xj, xi)
    } else {
        g.predicate_p(xi, xj) && g.predicate_p(xj, xi)
    }
}

/// Every `X_i` acyclic; `p(X_i, X_j)` and `p(X_j, X_i)` for disconnected
/// `i, j`; `p(X_i, X_j)` for each arrow `i -> j`.
pub fn is_pure(g: &OrientedGraph, seq: &SetSequence) -> Result<bool, EndoError> {
    check_dimension(g, seq)?;
    let n = g.n();
    if !seq.sets().iter().all(|&x| g.is_acyclic(x)) {
        return Ok(false);
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            if !pair_ok(g, i, j, seq.get(i), seq.get(j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The n×n Boolean matrix `(entry(x, i))`, rows stored as column bit masks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: Vec<u64>,
}

impl BoolMatrix {
    pub fn zero(n: usize) -> Self {
        BoolMatrix { rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        BoolMatrix {
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self, EndoError> {
        let n = rows.len();
        let mut m = BoolMatrix::zero(n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(EndoError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (c, &b) in row.iter().enumerate() {
                m.set(r + 1, c + 1, b);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// 1-based entry.
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row - 1] >> (col - 1) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let bit = 1u64 << (col - 1);
        if value {
            self.rows[row - 1] |= bit;
        } else {
            self.rows[row - 1] &= !bit;
        }
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        (1..=n)
            .map(|r| (1..=n).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// `C_{i,j} = ⋁_k (A_{i,k} ∧ B_{k,j})`.
    pub fn multiply(&self, other: &BoolMatrix) -> Result<BoolMatrix, EndoError> {
        if self.n() != other.n() {
            return Err(EndoError::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                VertexSet::from_mask(row)
                    .iter()
                    .fold(0u64, |acc, k| acc | other.rows[k - 1])
            })
            .collect();
        Ok(BoolMatrix { rows })
    }
}

pub fn bool_multiply(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix, EndoError> {
    a.multiply(b)
}

/// `n` lines of `n` space-separated digits, row `x` on line `x`.
impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMatrix[")?;
        for (k, row) in self.rows().iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            for &b in row {
                write!(f, "{}", u8::from(b))?;
            }
        }
        write!(f, "]")
    }
}

impl FromStr for BoolMatrix {
    type Err = EndoError;

    fn from_str(s: &str) -> Result<Self, EndoError> {
        let rows = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| match t {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        other => Err(EndoError::Parse(format!("matrix entry `{other}`"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        BoolMatrix::from_rows(&rows)
    }
}

/// The contents of the generator images, provided the images are idempotent
/// and their contents form a pure sequence.
pub fn phi_from_images(g: &OrientedGraph, images: &[Word]) -> Result<PureSequence, EndoError> {
    if images.len() != g.n() {
        return Err(EndoError::DimensionMismatch {
            expected: g.n(),
            found: images.len(),
        });
    }
    for (k, w) in images.iter().enumerate() {
        w.check_alphabet(g.n())?;
        if !is_idempotent_word_within(g, w, DEFAULT_MAX_WORD_LEN)? {
            return Err(EndoError::NotIdempotent { generator: k + 1 });
        }
    }
    let seq = SetSequence::new(images.iter().map(Word::content).collect());
    PureSequence::new(g, seq)
}

/// `e_{X_i}` words for every position.
pub fn generator_images(g: &OrientedGraph, seq: &SetSequence) -> Result<Vec<Word>, EndoError> {
    seq.sets()
        .iter()
        .map(|&x| {
            idempotent_word(g, x)
                .map(|h| h.word)
                .map_err(|_| EndoError::Impure(seq.clone()))
        })
        .collect()
}

pub fn apply_endomorphism(
    g: &OrientedGraph,
    seq: &PureSequence,
    w: &Word,
) -> Result<Word, EndoError> {
    apply_endomorphism_within(g, seq, w, DEFAULT_MAX_WORD_LEN)
}

/// Substitutes `e_{X_i}` for each letter `i` and returns the canonical form
/// of the result.
pub fn apply_endomorphism_within(
    g: &OrientedGraph,
    seq: &PureSequence,
    w: &Word,
    max_len: usize,
) -> Result<Word, EndoError> {
    w.check_alphabet(g.n())?;
    let images = generator_images(g, seq.as_sequence())?;
    let total: usize = w.letters().map(|l| images[l - 1].len()).sum();
    if total > max_len {
        return Err(WordError::TooLong {
            len: total,
            limit: max_len,
        }
        .into());
    }
    let substituted: Word = w
        .letters()
        .flat_map(|l| images[l - 1].letters().collect::<Vec<_>>())
        .collect();
    Ok(canonical_form(g, &substituted))
}

/// Checks the defining relations on the images `e_{X_i}` by rewriting,
/// without consulting `p`. Tuples with a cyclic entry have no such images and
/// yield `false`.
pub fn verify_extends(g: &OrientedGraph, seq: &SetSequence) -> Result<bool, EndoError> {
    check_dimension(g, seq)?;
    let images = match seq
        .sets()
        .iter()
        .map(|&x| idempotent_word(g, x).map(|h| h.word))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(images) => images,
        Err(_) => return Ok(false),
    };
    let n = g.n();
    for i in 1..=n {
        for j in 1..=n {
            let (a, b) = (&images[i - 1], &images[j - 1]);
            let ab = a.concat(b);
            let holds = if g.has_arrow(i, j) {
                let aba = ab.concat(a);
                let bab = b.concat(a).concat(b);
                hk_equal(g, &aba, &ab) && hk_equal(g, &bab, &ab)
            } else if i < j && g.disconnected(i, j) {
                hk_equal(g, &ab, &b.concat(a))
            } else {
                true
            };
            if !holds {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairwise `p` lookups over the acyclic sets of one graph.
struct PTable<'g> {
    graph: &'g OrientedGraph,
    sets: Vec<VertexSet>,
    /// `p[a * len + b] = p(sets[a], sets[b])`.
    p: Vec<bool>,
}

impl<'g> PTable<'g> {
    fn new(graph: &'g OrientedGraph) -> Result<Self, EndoError> {
        let mut sets = graph.acyclic_subsets()?;
        sets.sort_unstable();
        let len = sets.len();
        let p = (0..len * len)
            .into_par_iter()
            .map(|k| graph.predicate_p(sets[k / len], sets[k % len]))
            .collect();
        Ok(PTable { graph, sets, p })
    }

    fn p(&self, a: usize, b: usize) -> bool {
        self.p[a * self.sets.len() + b]
    }

    /// Whether position `k` holding `sets[b]` is compatible with position
    /// `j` holding `sets[a]` (1-based positions).
    fn compatible(&self, j: usize, a: usize, k: usize, b: usize) -> bool {
        if self.graph.has_arrow(j, k) {
            self.p(a, b)
        } else if self.graph.has_arrow(k, j) {
            self.p(b, a)
        } else {
            self.p(a, b) && self.p(b, a)
        }
    }

    fn candidates(&self) -> u128 {
        (self.sets.len() as u128).saturating_pow(self.graph.n() as u32)
    }

    /// Depth-first walk over pure tuples whose first entry is `sets[first]`,
    /// skipping any prefix that already violates a pair condition. `nodes`
    /// counts visited prefixes; the walk stops once it reaches `node_limit`.
    fn walk<F>(&self, first: usize, nodes: &mut u64, node_limit: u64, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = self.graph.n();
        let mut prefix = Vec::with_capacity(n);
        prefix.push(first);
        self.extend(&mut prefix, n, nodes, node_limit, visit)
    }

    fn extend<F>(
        &self,
        prefix: &mut Vec<usize>,
        n: usize,
        nodes: &mut u64,
        node_limit: u64,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        *nodes += 1;
        if *nodes > node_limit {
            return ControlFlow::Break(());
        }
        if prefix.len() == n {
            return visit(prefix);
        }
        let k = prefix.len() + 1;
        for b in 0..self.sets.len() {
            let ok = prefix
                .iter()
                .enumerate()
                .all(|(j0, &a)| self.compatible(j0 + 1, a, k, b));
            if ok {
                prefix.push(b);
                let flow = self.extend(prefix, n, nodes, node_limit, visit);
                prefix.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    fn to_sequence(&self, idx: &[usize]) -> PureSequence {
        PureSequence(SetSequence(idx.iter().map(|&i| self.sets[i]).collect()))
    }
}

fn checked_table(g: &OrientedGraph, budget: u128) -> Result<PTable<'_>, EndoError> {
    let table = PTable::new(g)?;
    let candidates = table.candidates();
    if candidates > budget {
        return Err(EndoError::BudgetExceeded { candidates, budget });
    }
    Ok(table)
}

/// All pure sequences, ordered lexicographically by the masks of
/// `(X_1, ..., X_n)`. The choice of `X_1` is sharded across threads.
pub fn enumerate_endomorphisms(
    g: &OrientedGraph,
    budget: u128,
) -> Result<Vec<PureSequence>, EndoError> {
    let table = checked_table(g, budget)?;
    let shards: Vec<Vec<PureSequence>> = (0..table.sets.len())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut nodes = 0;
            let _ = table.walk(first, &mut nodes, u64::MAX, &mut |idx| {
                out.push(table.to_sequence(idx));
                ControlFlow::Continue(())
            });
            out
        })
        .collect();
    Ok(shards.into_iter().flatten().collect())
}

/// Number of pure sequences, streamed without materializing them.
pub fn count_endomorphisms(g: &OrientedGraph, budget: u128) -> Result<u64, EndoError> {
    let table = checked_table(g, budget)?;
    Ok((0..table.sets.len())
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            let mut nodes = 0;
            let _ = table.walk(first, &mut nodes, u64::MAX, &mut |_| {
                count += 1;
                ControlFlow::Continue(())
            });
            count
        })
        .sum())
}

/// Walks the pruned search tree until about `node_limit` prefixes have been
/// visited. Returns `(prefixes visited, pure tuples found)`; used for timing.
pub fn sample_enumeration(g: &OrientedGraph, node_limit: u64) -> Result<(u64, u64), EndoError> {
    let table = PTable::new(g)?;
    let mut nodes = 0u64;
    let mut found = 0u64;
    for first in 0..table.sets.len() {
        let flow = table.walk(first, &mut nodes, node_limit, &mut |_| {
            found += 1;
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            break;
        }
    }
    Ok((nodes.min(node_limit), found))
}

/// Pure sequences with a two-sided inverse under `star`.
pub fn units(g: &OrientedGraph, budget: u128) -> Result<Vec<PureSequence>, EndoError> {
    let all = enumerate_endomorphisms(g, budget)?;
    let unit = PureSequence::unit(g.n());
    // A unit's sequence consists of singletons, so only those need checking.
    let perms: Vec<&PureSequence> = all
        .iter()
        .filter(|s| s.sets().iter().all(|x| x.len() == 1))
        .collect();
    let mut out = Vec::new();
    for s in &perms {
        let invertible = perms.iter().any(|t| {
            s.star(t).is_ok_and(|st| st == unit) && t.star(s).is_ok_and(|ts| ts == unit)
        });
        if invertible {
            out.push((*s).clone());
        }
    }
    Ok(out)
}

pub fn unit_group_size(g: &OrientedGraph, budget: u128) -> Result<usize, EndoError> {
    units(g, budget).map(|u| u.len())
}
