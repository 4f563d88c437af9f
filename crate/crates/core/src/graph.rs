//! Simple oriented graphs on `[n]` and the set-level queries the monoid
//! layers are built on: acyclicity of induced subgraphs, the family of
//! acyclic vertex sets, reachability and the predicate `p`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::Rng;
use thiserror::Error;

use crate::set::{VertexSet, MAX_VERTICES};

/// Largest `n` for which [`OrientedGraph::acyclic_subsets`] will enumerate.
pub const MAX_SUBSET_ENUMERATION: usize = 24;
/// Largest `n` for the brute-force automorphism search.
pub const MAX_AUTOMORPHISM_VERTICES: usize = 8;
/// Largest `n` for [`all_graphs`].
pub const MAX_ALL_GRAPHS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} out of range 1..=64")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("arrows {0} -> {1} and {1} -> {0} form a 2-cycle")]
    TwoCycle(usize, usize),
    #[error("duplicate arrow {0} -> {1}")]
    DuplicateArrow(usize, usize),
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<GraphError>,
    },
    #[error("vertex set {0} induces an oriented cycle")]
    Cyclic(VertexSet),
    #[error("{op} supports at most {limit} vertices, graph has {n}")]
    TooLarge {
        op: &'static str,
        n: usize,
        limit: usize,
    },
}

impl GraphError {
    fn at_line(self, line: usize) -> Self {
        GraphError::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

/// A finite simple oriented graph on the vertices `1..=n`: no loops, no
/// 2-cycles, no repeated arrows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    /// `out[v - 1]`: targets of arrows leaving `v`.
    out: Vec<u64>,
    /// `inc[v - 1]`: sources of arrows entering `v`.
    inc: Vec<u64>,
}

impl OrientedGraph {
    /// The graph on `n` vertices with no arrows.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(GraphError::VertexCount(n));
        }
        Ok(OrientedGraph {
            n,
            out: vec![0; n],
            inc: vec![0; n],
        })
    }

    pub fn new<I>(n: usize, arrows: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::edgeless(n)?;
        for (u, v) in arrows {
            g.add_arrow(u, v)?;
        }
        Ok(g)
    }

    fn add_arrow(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if !(1..=self.n).contains(&w) {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_arrow(u, v) {
            return Err(GraphError::DuplicateArrow(u, v));
        }
        if self.has_arrow(v, u) {
            return Err(GraphError::TwoCycle(u, v));
        }
        self.out[u - 1] |= 1 << (v - 1);
        self.inc[v - 1] |= 1 << (u - 1);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_arrow(&self, u: usize, v: usize) -> bool {
        (1..=self.n).contains(&u) && VertexSet::from_mask(self.out[u - 1]).contains(v)
    }

    /// `u != v` and no arrow in either direction.
    pub fn disconnected(&self, u: usize, v: usize) -> bool {
        u != v && !self.has_arrow(u, v) && !self.has_arrow(v, u)
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_mask(self.out[v - 1])
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_mask(self.inc[v - 1])
    }

    /// Vertices joined to `v` by an arrow in either direction.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.out_neighbors(v).union(self.in_neighbors(v))
    }

    /// Arrows sorted by `(source, target)`.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|u| self.out_neighbors(u).iter().map(move |v| (u, v)))
            .collect()
    }

    pub fn arrow_count(&self) -> usize {
        self.out.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Union of out-neighbourhoods of `set`.
    pub fn successors(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.out_neighbors(v)))
    }

    /// The full subgraph on `x`, as a view that still uses the labels of `self`.
    pub fn induced_subgraph(&self, x: VertexSet) -> InducedSubgraph<'_> {
        InducedSubgraph {
            graph: self,
            vertices: x.intersection(self.vertices()),
        }
    }

    /// Whether the full subgraph on `x` has no oriented cycle.
    pub fn is_acyclic(&self, x: VertexSet) -> bool {
        // Peel sinks until nothing is left or no sink remains.
        let mut remaining = x.mask();
        loop {
            if remaining == 0 {
                return true;
            }
            let mut peeled = 0u64;
            let mut rest = remaining;
            while rest != 0 {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.out[bit] & remaining == 0 {
                    peeled |= 1 << bit;
                }
            }
            if peeled == 0 {
                return false;
            }
            remaining &= !peeled;
        }
    }

    /// Enumerates `x` as `(i_1, ..., i_k)` so that `i_j -> i_j'` implies
    /// `j > j'`: every arrow points from a later entry to an earlier one.
    /// Among the admissible next vertices the smallest label is taken.
    pub fn topological_order(&self, x: VertexSet) -> Result<Vec<usize>, GraphError> {
        self.peel(x, |v, remaining| self.out[v - 1] & remaining == 0)
    }

    /// Enumerates `x` with every arrow pointing from an earlier entry to a
    /// later one, smallest admissible label first.
    pub fn source_first_order(&self, x: VertexSet) -> Result<Vec<usize>, GraphError> {
        self.peel(x, |v, remaining| self.inc[v - 1] & remaining == 0)
    }

    fn peel(
        &self,
        x: VertexSet,
        ready: impl Fn(usize, u64) -> bool,
    ) -> Result<Vec<usize>, GraphError> {
        let x = x.intersection(self.vertices());
        let mut remaining = x.mask();
        let mut order = Vec::with_capacity(x.len());
        while remaining != 0 {
            let next = VertexSet::from_mask(remaining)
                .iter()
                .find(|&v| ready(v, remaining))
                .ok_or(GraphError::Cyclic(x))?;
            order.push(next);
            remaining &= !(1u64 << (next - 1));
        }
        Ok(order)
    }

    /// The family `A` of vertex sets inducing acyclic subgraphs, ordered by
    /// cardinality and then by mask.
    pub fn acyclic_subsets(&self) -> Result<Vec<VertexSet>, GraphError> {
        if self.n > MAX_SUBSET_ENUMERATION {
            return Err(GraphError::TooLarge {
                op: "acyclic subset enumeration",
                n: self.n,
                limit: MAX_SUBSET_ENUMERATION,
            });
        }
        let mut all = vec![VertexSet::EMPTY];
        let mut level = vec![VertexSet::EMPTY];
        while !level.is_empty() {
            let known: HashSet<VertexSet> = level.iter().copied().collect();
            let mut next = Vec::new();
            for &base in &level {
                let start = base.last().map_or(1, |m| m + 1);
                for v in start..=self.n {
                    let mut cand = base;
                    cand.insert(v);
                    // A superset of a cyclic set is cyclic; only extend sets
                    // whose every co-1 subset survived the previous level.
                    let closed = cand.iter().all(|u| {
                        let mut sub = cand;
                        sub.remove(u);
                        known.contains(&sub)
                    });
                    if closed && self.is_acyclic(cand) {
                        next.push(cand);
                    }
                }
            }
            next.sort_unstable();
            all.extend_from_slice(&next);
            level = next;
        }
        Ok(all)
    }

    /// Vertices of `within` reachable from `sources` by a directed path that
    /// stays inside `within`. Zero-length paths count, so every source in
    /// `within` is included.
    pub fn reachable(&self, sources: VertexSet, within: VertexSet) -> VertexSet {
        let mut reached = sources.intersection(within);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let step = self
                .successors(frontier)
                .intersection(within)
                .difference(reached);
            reached = reached.union(step);
            frontier = step;
        }
        reached
    }

    /// `p(x, y)`: no directed path inside the full subgraph on `x ∪ y` starts
    /// in `y \ x` and ends in `x \ y`.
    pub fn predicate_p(&self, x: VertexSet, y: VertexSet) -> bool {
        let hit = self.reachable(y.difference(x), x.union(y));
        hit.is_disjoint(x.difference(y))
    }

    /// All vertex permutations preserving the arrow relation. `perm[v - 1]`
    /// is the image of `v`.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>, GraphError> {
        if self.n > MAX_AUTOMORPHISM_VERTICES {
            return Err(GraphError::TooLarge {
                op: "automorphism search",
                n: self.n,
                limit: MAX_AUTOMORPHISM_VERTICES,
            });
        }
        let arrows = self.arrows();
        Ok((1..=self.n)
            .permutations(self.n)
            .filter(|perm| {
                arrows
                    .iter()
                    .all(|&(u, v)| self.has_arrow(perm[u - 1], perm[v - 1]))
            })
            .collect())
    }

    /// Random acyclic graph: a random labelling of a random subgraph of the
    /// complete acyclic tournament, each arrow kept with probability `density`.
    pub fn random_acyclic<R: Rng>(n: usize, density: f64, rng: &mut R) -> Result<Self, GraphError> {
        let mut labels: Vec<usize> = (1..=n).collect();
        rand::seq::SliceRandom::shuffle(labels.as_mut_slice(), rng);
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(density) {
                    arrows.push((labels[i], labels[j]));
                }
            }
        }
        Self::new(n, arrows)
    }
}

/// Every labelled simple oriented graph on `[n]`: each unordered pair
/// `{u, v}` carries no arrow, `u -> v`, or `v -> u`.
pub fn all_graphs(n: usize) -> Result<Vec<OrientedGraph>, GraphError> {
    if n > MAX_ALL_GRAPHS {
        return Err(GraphError::TooLarge {
            op: "graph enumeration",
            n,
            limit: MAX_ALL_GRAPHS,
        });
    }
    let pairs: Vec<(usize, usize)> = (1..=n).tuple_combinations().collect();
    let total = 3usize.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut arrows = Vec::new();
            for &(u, v) in &pairs {
                match code % 3 {
                    1 => arrows.push((u, v)),
                    2 => arrows.push((v, u)),
                    _ => {}
                }
                code /= 3;
            }
            OrientedGraph::new(n, arrows)
        })
        .collect()
}

/// The full subgraph of a graph on a vertex subset.
#[derive(Clone, Copy)]
pub struct InducedSubgraph<'g> {
    graph: &'g OrientedGraph,
    vertices: VertexSet,
}

impl InducedSubgraph<'_> {
    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn has_arrow(&self, u: usize, v: usize) -> bool {
        self.vertices.contains(u) && self.vertices.contains(v) && self.graph.has_arrow(u, v)
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        self.graph
            .arrows()
            .into_iter()
            .filter(|&(u, v)| self.vertices.contains(u) && self.vertices.contains(v))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.graph.is_acyclic(self.vertices)
    }
}

/// Graph file format: `n <count>` followed by one `<u> <v>` line per arrow;
/// `#` starts a comment.
impl FromStr for OrientedGraph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<OrientedGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            match graph.as_mut() {
                None => {
                    if toks.len() != 2 || toks[0] != "n" {
                        return Err(GraphError::Malformed {
                            line,
                            message: format!("expected `n <count>`, found `{content}`"),
                        });
                    }
                    let n = parse_index(toks[1], line)?;
                    graph = Some(OrientedGraph::edgeless(n).map_err(|e| e.at_line(line))?);
                }
                Some(g) => {
                    if toks.len() != 2 {
                        return Err(GraphError::Malformed {
                            line,
                            message: format!("expected `<u> <v>`, found `{content}`"),
                        });
                    }
                    let u = parse_index(toks[0], line)?;
                    let v = parse_index(toks[1], line)?;
                    g.add_arrow(u, v).map_err(|e| e.at_line(line))?;
                }
            }
        }
        graph.ok_or(GraphError::MissingHeader)
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.parse().map_err(|_| GraphError::Malformed {
        line,
        message: format!("`{tok}` is not a non-negative integer"),
    })
}

/// Serializes in the graph file format with arrows sorted by `(u, v)`.
impl fmt::Display for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (u, v) in self.arrows() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows = self
            .arrows()
            .iter()
            .map(|(u, v)| format!("{u}->{v}"))
            .join(", ");
        write!(f, "OrientedGraph(n={}; {arrows})", self.n)
    }
}
