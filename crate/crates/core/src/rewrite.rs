//! Deciding equality in the Hecke-Kiselman monoid of a graph.
//!
//! A word is reduced by elementary cancellations until none applies; two
//! reduced words represent the same element exactly when they differ by
//! commutations of disconnected letters. Equality is therefore decided by
//! comparing the lexicographically least word in the commutation class of
//! each reduced form.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::OrientedGraph;
use crate::word::{Word, WordError, DEFAULT_MAX_WORD_LEN};

/// Guards for [`bounded_elements`].
pub const MAX_BOUNDED_LEN: usize = 8;
pub const MAX_BOUNDED_VERTICES: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("bounded enumeration supports max_len <= {MAX_BOUNDED_LEN} and n <= {MAX_BOUNDED_VERTICES} (got max_len {max_len}, n {n})")]
    BoundExceeded { max_len: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// `w1 a u a w2 -> w1 a u w2`, allowed when no letter of `u` has an arrow to `a`.
    Right,
    /// `w1 a u a w2 -> w1 u a w2`, allowed when no letter of `u` has an arrow from `a`.
    Left,
}

/// One applicable elementary cancellation: the two occurrences of the
/// repeated letter sit at `first < second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cancellation {
    pub side: Side,
    pub first: usize,
    pub second: usize,
}

impl Cancellation {
    pub fn letter(&self, w: &Word) -> usize {
        w.get(self.first)
    }

    /// The infix `u` strictly between the two occurrences.
    pub fn infix(&self, w: &Word) -> Word {
        (self.first + 1..self.second).map(|i| w.get(i)).collect()
    }

    pub fn apply(&self, w: &Word) -> Word {
        match self.side {
            Side::Right => w.without(self.second),
            Side::Left => w.without(self.first),
        }
    }
}

/// A word on which no elementary cancellation applies.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalFormWord(Word);

impl NormalFormWord {
    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

/// Scans the cancellations with first occurrence at `i`, in order of
/// increasing infix length, right before left. `visit` returns `true` to stop.
fn scan_from(
    g: &OrientedGraph,
    w: &[u8],
    i: usize,
    mut visit: impl FnMut(Cancellation) -> bool,
) -> bool {
    let a = w[i] as usize;
    let into_a = g.in_neighbors(a).mask();
    let from_a = g.out_neighbors(a).mask();
    let mut infix = 0u64;
    for (j, &b) in w.iter().enumerate().skip(i + 1) {
        let right_ok = infix & into_a == 0;
        let left_ok = infix & from_a == 0;
        if !right_ok && !left_ok {
            return false;
        }
        if b as usize == a {
            if right_ok
                && visit(Cancellation {
                    side: Side::Right,
                    first: i,
                    second: j,
                })
            {
                return true;
            }
            if left_ok
                && visit(Cancellation {
                    side: Side::Left,
                    first: i,
                    second: j,
                })
            {
                return true;
            }
        }
        infix |= 1u64 << (b - 1);
    }
    false
}

/// Every applicable elementary cancellation, ordered by position of the first
/// occurrence, then infix length, right before left.
pub fn cancellation_candidates(g: &OrientedGraph, w: &Word) -> Vec<Cancellation> {
    let mut out = Vec::new();
    for i in 0..w.len() {
        scan_from(g, w.raw(), i, |c| {
            out.push(c);
            false
        });
    }
    out
}

fn first_candidate(g: &OrientedGraph, w: &Word) -> Option<Cancellation> {
    let mut found = None;
    for i in 0..w.len() {
        if scan_from(g, w.raw(), i, |c| {
            found = Some(c);
            true
        }) {
            break;
        }
    }
    found
}

pub fn is_normal_form(g: &OrientedGraph, w: &Word) -> bool {
    first_candidate(g, w).is_none()
}

/// Applies the first listed cancellation until none is left.
pub fn normalize(g: &OrientedGraph, w: &Word) -> NormalFormWord {
    let mut cur = w.clone();
    while let Some(c) = first_candidate(g, &cur) {
        cur = c.apply(&cur);
    }
    NormalFormWord(cur)
}

/// Like [`normalize`], but each step picks uniformly among all applicable
/// cancellations using a generator seeded with `seed`.
pub fn normalize_randomized(g: &OrientedGraph, w: &Word, seed: u64) -> NormalFormWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = w.clone();
    loop {
        let cands = cancellation_candidates(g, &cur);
        match cands.choose(&mut rng) {
            Some(c) => cur = c.apply(&cur),
            None => return NormalFormWord(cur),
        }
    }
}

/// The lexicographically least word reachable from `w` by swapping adjacent
/// disconnected letters.
pub fn trace_canonical(g: &OrientedGraph, w: &Word) -> Word {
    let mut rest: Vec<u8> = w.raw().to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // A letter can move to the front iff everything before its first
        // occurrence is a different, disconnected letter.
        let mut seen = 0u64;
        let mut best: Option<(u8, usize)> = None;
        for (pos, &l) in rest.iter().enumerate() {
            let bit = 1u64 << (l - 1);
            if seen & bit == 0
                && seen & g.neighbors(l as usize).mask() == 0
                && best.is_none_or(|(b, _)| l < b)
            {
                best = Some((l, pos));
            }
            seen |= bit;
            if best.is_some_and(|(b, _)| b == 1) {
                break;
            }
        }
        let (l, pos) = best.expect("the first letter is always movable");
        out.push(l);
        rest.remove(pos);
    }
    Word::from_raw(out)
}

/// Canonical representative of the element `w` represents.
pub fn canonical_form(g: &OrientedGraph, w: &Word) -> Word {
    trace_canonical(g, normalize(g, w).word())
}

/// Whether `w1` and `w2` represent the same monoid element.
pub fn hk_equal(g: &OrientedGraph, w1: &Word, w2: &Word) -> bool {
    w1.content() == w2.content() && canonical_form(g, w1) == canonical_form(g, w2)
}

pub fn is_idempotent_word(g: &OrientedGraph, w: &Word) -> Result<bool, RewriteError> {
    is_idempotent_word_within(g, w, DEFAULT_MAX_WORD_LEN)
}

/// [`is_idempotent_word`] with an explicit cap on the length of `w w`.
pub fn is_idempotent_word_within(
    g: &OrientedGraph,
    w: &Word,
    max_len: usize,
) -> Result<bool, RewriteError> {
    let square = w.concat(w);
    square.check_len(max_len)?;
    Ok(hk_equal(g, &square, w))
}

/// Canonical representatives of every element expressible by a word of
/// length at most `max_len`, sorted by length and then lexicographically.
pub fn bounded_elements(g: &OrientedGraph, max_len: usize) -> Result<Vec<Word>, RewriteError> {
    let n = g.n();
    if max_len > MAX_BOUNDED_LEN || n > MAX_BOUNDED_VERTICES {
        return Err(RewriteError::BoundExceeded { max_len, n });
    }
    let mut found: BTreeSet<(usize, Word)> = BTreeSet::new();
    let mut layer = vec![Word::empty()];
    for len in 0..=max_len {
        for w in &layer {
            let c = canonical_form(g, w);
            found.insert((c.len(), c));
        }
        if len == max_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| (1..=n).map(move |v| w.concat(&Word::letter(v))))
            .collect();
    }
    Ok(found.into_iter().map(|(_, w)| w).collect())
}
