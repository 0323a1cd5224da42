//! Bitset kernel for simple undirected graphs on up to 64 vertices.
//!
//! Graphs are immutable after construction; every operation returns a new
//! value.  Vertex ids are dense `0..n-1`; adjacency is one `u64` neighbor
//! bitset per vertex, kept symmetric and irreflexive.

mod canon;
mod enumerate;
mod graph6;
mod patch;
mod reduce;
mod tagged;

pub use canon::{
    are_isomorphic, automorphisms, canonical_form, canonical_graph, colored_canonical_form,
};
pub use enumerate::{
    enumerate_all, enumerate_connected, labeled_connected_count, labeled_graphs,
    unlabeled_counts_by_filter, ENUM_CAP,
};
pub use graph6::{from_graph6, to_graph6};
pub use patch::{comating_graph, patch_compose, Patch, PatchDecomposition, SortFlag};
pub use reduce::{
    contract_siblings, reduce, reduce_trace, remove_all_leaves, remove_leaves, K2Policy,
    ReductionStep,
};
pub use tagged::{decorate, undecorate, Tag, TaggedGraph};

/// Errors from the graph kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("removal would leave an empty graph")]
    WouldEmptyGraph,
    #[error("K2 has no reduction (pass the K2-as-bullet option to map it to a single vertex)")]
    K2Input,
    #[error("decomposition is one of the two exceptional size-2 configurations")]
    ExceptionalSize2,
    #[error("invalid tagged graph: {0}")]
    InvalidTags(String),
    #[error("vertex count {0} exceeds the enumeration cap {1}")]
    CapExceeded(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not reduced: {0}")]
    NotReduced(String),
    #[error("graph6 parse error: {0}")]
    Parse(String),
}

/// Iterates the set bits of a mask as vertex ids.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// A simple undirected graph on `1..=64` dense vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!((1..=64).contains(&n), "vertex count must be 1..=64");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Single vertex.
    pub fn bullet() -> Self {
        Graph::empty(1)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Star with `n - 1` leaves attached to vertex 0.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn closed_neighborhood(&self, v: usize) -> u64 {
        self.adj[v] | 1 << v
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in bits(self.adj[u]) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        self.connected_within(self.full_mask())
    }

    /// Connectivity of the subgraph induced by `mask` (empty masks count as
    /// connected).
    pub(crate) fn connected_within(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.adj[v] & mask & !seen;
            }
            seen |= next;
            frontier = next;
        }
        seen == mask
    }

    /// Bitset of degree-1 vertices.
    pub fn leaves(&self) -> u64 {
        let mut mask = 0u64;
        for v in 0..self.n {
            if self.degree(v) == 1 {
                mask |= 1 << v;
            }
        }
        mask
    }

    pub fn is_k2(&self) -> bool {
        self.n == 2 && self.has_edge(0, 1)
    }

    /// Equivalence classes of equal closed neighborhoods, each sorted, listed
    /// by smallest member.
    pub fn sibling_classes(&self) -> Vec<Vec<usize>> {
        let mut by_cn: std::collections::BTreeMap<u64, Vec<usize>> = Default::default();
        for v in 0..self.n {
            by_cn.entry(self.closed_neighborhood(v)).or_default().push(v);
        }
        let mut classes: Vec<Vec<usize>> = by_cn.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        classes
    }

    /// Largest sibling class size minus one.
    pub fn sibling_number(&self) -> usize {
        self.sibling_classes()
            .iter()
            .map(|c| c.len() - 1)
            .max()
            .unwrap_or(0)
    }

    /// Maximal number of leaves adjacent to one vertex.
    pub fn tuft_number(&self) -> usize {
        let leaves = self.leaves();
        (0..self.n)
            .map(|v| (self.adj[v] & leaves).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Induced subgraph on `keep`, vertex ids recompacted in increasing
    /// order.  Returns the graph and the old-to-new id map.
    pub fn induced_subgraph(&self, keep: u64) -> (Graph, Vec<Option<usize>>) {
        let kept: Vec<usize> = bits(keep).collect();
        assert!(!kept.is_empty(), "induced subgraph must be nonempty");
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in kept.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let mut g = Graph::empty(kept.len());
        for (new_u, &old_u) in kept.iter().enumerate() {
            for old_v in bits(self.adj[old_u] & keep) {
                if old_v > old_u {
                    g.add_edge(new_u, old_to_new[old_v].unwrap());
                }
            }
        }
        (g, old_to_new)
    }

    /// Relabels: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in bits(self.adj[u]) {
                if v > u {
                    g.add_edge(perm[u], perm[v]);
                }
            }
        }
        g
    }

    /// Distinct lengths `k >= 4` of induced cycles, ascending.  Checks every
    /// vertex subset, so it is meant for small graphs.
    pub fn induced_cycle_lengths(&self) -> Vec<usize> {
        assert!(self.n <= 20, "induced-cycle search is exponential in n");
        let mut lengths = std::collections::BTreeSet::new();
        for mask in 0..(1u64 << self.n) {
            let size = mask.count_ones() as usize;
            if size < 4 || lengths.contains(&size) {
                continue;
            }
            // An induced k-cycle is exactly a connected induced subgraph in
            // which every vertex has two neighbors.
            if bits(mask).all(|v| (self.adj[v] & mask).count_ones() == 2)
                && self.connected_within(mask)
            {
                lengths.insert(size);
            }
        }
        lengths.into_iter().collect()
    }

    /// True iff the graph is not chordal.
    pub fn has_induced_cycle_geq4(&self) -> bool {
        !self.induced_cycle_lengths().is_empty()
    }
}

impl std::fmt::Display for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", to_graph6(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sibling_classes_examples() {
        assert_eq!(Graph::complete(4).sibling_classes(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            Graph::path(4).sibling_classes(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        // C4: opposite vertices share open but not closed neighborhoods.
        assert_eq!(Graph::cycle(4).sibling_classes().len(), 4);
    }

    #[test]
    fn sibling_number_examples() {
        assert_eq!(Graph::complete(4).sibling_number(), 3);
        assert_eq!(Graph::star(4).sibling_number(), 0);
        assert_eq!(Graph::complete(2).sibling_number(), 1);
    }

    #[test]
    fn tuft_number_examples() {
        assert_eq!(Graph::star(4).tuft_number(), 3);
        assert_eq!(Graph::cycle(4).tuft_number(), 0);
        // Paw: triangle with a pendant vertex.
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]);
        assert_eq!(paw.tuft_number(), 1);
        assert_eq!(paw.sibling_number(), 1);
        assert_eq!(Graph::complete(2).tuft_number(), 1);
        assert_eq!(Graph::bullet().tuft_number(), 0);
    }

    #[test]
    fn fig1_graphs_on_four_vertices() {
        // All six connected graphs on 4 vertices and their (s, t) pairs.
        let star = Graph::star(4);
        let path = Graph::path(4);
        let c4 = Graph::cycle(4);
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]);
        let diamond = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (2, 3)]);
        let k4 = Graph::complete(4);
        let pairs: Vec<(usize, usize)> = [&star, &path, &c4, &paw, &diamond, &k4]
            .iter()
            .map(|g| (g.sibling_number(), g.tuft_number()))
            .collect();
        assert_eq!(pairs, vec![(0, 3), (0, 1), (0, 0), (1, 1), (1, 0), (3, 0)]);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(5).is_connected());
        assert!(Graph::bullet().is_connected());
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(!two_edges.is_connected());
    }

    #[test]
    fn induced_subgraph_recompacts() {
        let p4 = Graph::path(4);
        let (g, map) = p4.induced_subgraph(0b1110);
        assert_eq!(g.n(), 3);
        assert_eq!(map, vec![None, Some(0), Some(1), Some(2)]);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn induced_cycles() {
        assert_eq!(Graph::cycle(4).induced_cycle_lengths(), vec![4]);
        assert!(!Graph::complete(4).has_induced_cycle_geq4());
        assert!(!Graph::star(5).has_induced_cycle_geq4());
        assert_eq!(Graph::cycle(6).induced_cycle_lengths(), vec![6]);
        // C5 plus one chord leaves an induced C4.
        let mut house = Graph::cycle(5);
        house.add_edge(1, 4);
        assert_eq!(house.induced_cycle_lengths(), vec![4]);
        assert!(Graph::path(7).induced_cycle_lengths().is_empty());
    }
}
