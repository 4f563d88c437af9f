//! Idempotents `e_X`, one per acyclic vertex set `X`, and products of pairs
//! of them.

use std::fmt;

use thiserror::Error;

use crate::graph::{GraphError, OrientedGraph};
use crate::rewrite::{hk_equal, is_idempotent_word, RewriteError};
use crate::set::VertexSet;
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdempotentError {
    #[error("{0} induces an oriented cycle, so no idempotent has this content")]
    NotAcyclic(VertexSet),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("theorem violation for X = {x}, Y = {y}: {detail}")]
    TheoremViolation {
        x: VertexSet,
        y: VertexSet,
        detail: String,
    },
}

/// The idempotent with content `support`, carried by a word using each
/// letter of the support once with every arrow pointing left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdempotentHandle {
    pub support: VertexSet,
    pub word: Word,
}

/// `X = {1,2} word = 1 2`
impl fmt::Display for IdempotentHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X = {} word = {}", self.support, self.word)
    }
}

/// Builds `e_X`. The word lists the vertices of `x` sources first, breaking
/// ties by smallest label.
pub fn idempotent_word(g: &OrientedGraph, x: VertexSet) -> Result<IdempotentHandle, IdempotentError> {
    let order = g
        .source_first_order(x)
        .map_err(|_| IdempotentError::NotAcyclic(x))?;
    Ok(IdempotentHandle {
        support: x,
        word: order.into_iter().collect(),
    })
}

/// Each letter of `x` exactly once, nothing else, and no arrow from a later
/// letter to an earlier one.
pub fn is_x_topological(g: &OrientedGraph, w: &Word, x: VertexSet) -> bool {
    if w.len() != x.len() || w.content() != x {
        return false;
    }
    let mut before = VertexSet::EMPTY;
    for l in w.letters() {
        if !g.out_neighbors(l).is_disjoint(before) {
            return false;
        }
        before.insert(l);
    }
    true
}

/// One handle per acyclic vertex set, in the listing order of
/// [`OrientedGraph::acyclic_subsets`].
pub fn enumerate_idempotents(g: &OrientedGraph) -> Result<Vec<IdempotentHandle>, IdempotentError> {
    g.acyclic_subsets()?
        .into_iter()
        .map(|x| idempotent_word(g, x))
        .collect()
}

/// Both answers to "is `e_X e_Y` idempotent?".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductCheck {
    /// From the path predicate `p(X, Y)`.
    pub via_p: bool,
    /// From rewriting `e_X e_Y e_X e_Y` against `e_X e_Y`.
    pub via_oracle: bool,
}

impl ProductCheck {
    pub fn agrees(&self) -> bool {
        self.via_p == self.via_oracle
    }
}

fn pair_words(g: &OrientedGraph, x: VertexSet, y: VertexSet) -> Result<(Word, Word), IdempotentError> {
    Ok((idempotent_word(g, x)?.word, idempotent_word(g, y)?.word))
}

pub fn product_is_idempotent(
    g: &OrientedGraph,
    x: VertexSet,
    y: VertexSet,
) -> Result<ProductCheck, IdempotentError> {
    let (wx, wy) = pair_words(g, x, y)?;
    Ok(ProductCheck {
        via_p: g.predicate_p(x, y),
        via_oracle: is_idempotent_word(g, &wx.concat(&wy))?,
    })
}

/// When `p(X, Y)` holds, returns `X ∪ Y` after confirming that it is acyclic
/// and that `e_X e_Y = e_{X ∪ Y}`; otherwise `None`.
pub fn product_support_law(
    g: &OrientedGraph,
    x: VertexSet,
    y: VertexSet,
) -> Result<Option<VertexSet>, IdempotentError> {
    let (wx, wy) = pair_words(g, x, y)?;
    if !g.predicate_p(x, y) {
        return Ok(None);
    }
    let union = x.union(y);
    let violation = |detail: &str| IdempotentError::TheoremViolation {
        x,
        y,
        detail: detail.to_string(),
    };
    if !g.is_acyclic(union) {
        return Err(violation("p holds but X ∪ Y is cyclic"));
    }
    let joined = idempotent_word(g, union)?.word;
    if !hk_equal(g, &wx.concat(&wy), &joined) {
        return Err(violation("p holds but e_X e_Y differs from e_{X ∪ Y}"));
    }
    Ok(Some(union))
}

/// `e_X e_Y e_X = e_Y e_X e_Y = e_X e_Y`.
pub fn braid_law(g: &OrientedGraph, x: VertexSet, y: VertexSet) -> Result<bool, IdempotentError> {
    let (wx, wy) = pair_words(g, x, y)?;
    let xy = wx.concat(&wy);
    let xyx = xy.concat(&wx);
    let yxy = wy.concat(&wx).concat(&wy);
    Ok(hk_equal(g, &xyx, &xy) && hk_equal(g, &yxy, &xy))
}

/// The sets `M, N, R, S` attached to a pair `(X, Y)`, with `I = X ∩ Y`:
/// `R` is the part of `I` reachable from `Y \ X` through `I`, `S = I \ R`,
/// `M = (Y \ X) ∪ R`, `N = (X \ Y) ∪ S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MnrsPartition {
    pub m: VertexSet,
    pub n: VertexSet,
    pub r: VertexSet,
    pub s: VertexSet,
}

impl MnrsPartition {
    /// The disjoint-union identities relating the four sets to `x` and `y`.
    pub fn invariants_hold(&self, x: VertexSet, y: VertexSet) -> bool {
        let i = x.intersection(y);
        let disjoint_union = |a: VertexSet, b: VertexSet, whole: VertexSet| {
            a.is_disjoint(b) && a.union(b) == whole
        };
        disjoint_union(self.r, self.s, i)
            && disjoint_union(y.difference(x), self.r, self.m)
            && disjoint_union(x.difference(y), self.s, self.n)
            && disjoint_union(self.n, self.r, x)
            && disjoint_union(self.m, self.s, y)
            && disjoint_union(self.m, self.n, x.union(y))
    }

    /// Arrows with source in `M` and target in `N`.
    pub fn arrows_m_to_n(&self, g: &OrientedGraph) -> Vec<(usize, usize)> {
        self.m
            .iter()
            .flat_map(|u| g.out_neighbors(u).intersection(self.n).iter().map(move |v| (u, v)))
            .collect()
    }
}

pub fn mnrs_partition(g: &OrientedGraph, x: VertexSet, y: VertexSet) -> MnrsPartition {
    let i = x.intersection(y);
    let y_only = y.difference(x);
    // Chains b -> i_1 -> ... -> i_r -> i with every i_t in I: seed with the
    // first step out of Y \ X, then close under successors inside I.
    let r = g.reachable(g.successors(y_only).intersection(i), i);
    let s = i.difference(r);
    MnrsPartition {
        m: y_only.union(r),
        n: x.difference(y).union(s),
        r,
        s,
    }
}
