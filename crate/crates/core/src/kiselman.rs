//! The Kiselman monoid `K_n`: the graph with `i -> j` exactly when `i > j`,
//! plus closed-form shortcuts used to cross-check the general machinery.

use crate::graph::{GraphError, OrientedGraph};
use crate::idempotent::IdempotentError;
use crate::rewrite::is_idempotent_word;
use crate::set::{VertexSet, MAX_VERTICES};
use crate::word::Word;

pub fn kiselman_graph(n: usize) -> Result<OrientedGraph, GraphError> {
    if !(1..=MAX_VERTICES).contains(&n) {
        return Err(GraphError::VertexCount(n));
    }
    OrientedGraph::new(n, (1..=n).flat_map(|i| (1..i).map(move |j| (i, j))))
}

/// Members of `x` in decreasing order; the unit for the empty set.
pub fn epsilon_word(x: VertexSet) -> Word {
    let mut letters: Vec<usize> = x.iter().collect();
    letters.reverse();
    letters.into()
}

/// Every member of `X \ Y` exceeds every member of `Y \ X`.
pub fn prop14_condition(x: VertexSet, y: VertexSet) -> bool {
    match (x.difference(y).first(), y.difference(x).last()) {
        (Some(min_x), Some(max_y)) => min_x > max_y,
        _ => true,
    }
}

/// Whether `ε_{X∪Y} ε_X` and `ε_Y ε_{X∪Y}` are both idempotent in `K_n`.
pub fn combine_law(n: usize, x: VertexSet, y: VertexSet) -> Result<bool, IdempotentError> {
    let g = kiselman_graph(n)?;
    let joined = epsilon_word(x.union(y));
    let left = joined.concat(&epsilon_word(x));
    let right = epsilon_word(y).concat(&joined);
    Ok(is_idempotent_word(&g, &left)? && is_idempotent_word(&g, &right)?)
}
