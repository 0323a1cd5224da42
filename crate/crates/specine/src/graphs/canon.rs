//! Canonical labeling by refinement-pruned search, plus isomorphism tests
//! and automorphism enumeration.
//!
//! The canonical form of a graph is the lexicographically smallest
//! column-major upper-triangle adjacency bitstring over all labelings that
//! list the vertices class-block by class-block, where the classes come from
//! iterated neighborhood refinement and the block order is by (class size,
//! class rank).  Classes and their order are isomorphism-invariant, so equal
//! forms characterize isomorphic graphs exactly.

use super::{bits, Graph};

/// Iterated refinement: start from the given colors, repeatedly replace each
/// vertex color by the rank of `(color, sorted multiset of neighbor colors)`
/// until the partition stabilizes.  Ranks are assigned by sorting signature
/// values, so they are invariant under relabeling.
fn refine(g: &Graph, init: &[u64]) -> Vec<u32> {
    let n = g.n();
    let mut colors: Vec<u32> = rank_values(init);
    let mut class_count = distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = bits(g.neighbors(v)).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank_values(&sigs);
        let next_count = distinct(&next);
        if next_count == class_count {
            return next;
        }
        colors = next;
        class_count = next_count;
    }
}

fn rank_values<T: Ord + Clone>(values: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() as u32)
        .collect()
}

fn distinct(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Upper-triangle bit index of the pair `(i, j)`, `i < j`, column-major.
fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

fn top_mask(len: usize) -> u128 {
    if len == 0 {
        0
    } else {
        (!0u128) << (128 - len)
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    classes: Vec<Vec<usize>>,
    pos_class: Vec<usize>,
    order: Vec<usize>,
    used: u64,
    best: Option<u128>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self) {
        self.rec(0, 0);
    }

    fn rec(&mut self, pos: usize, code: u128) {
        if pos == self.n {
            if self.best.map_or(true, |b| code < b) {
                self.best = Some(code);
                self.best_order = self.order.clone();
            }
            return;
        }
        let cls = self.pos_class[pos];
        for idx in 0..self.classes[cls].len() {
            let v = self.classes[cls][idx];
            if self.used >> v & 1 == 1 {
                continue;
            }
            let mut code2 = code;
            for i in 0..pos {
                if self.g.has_edge(self.order[i], v) {
                    code2 |= 1u128 << (127 - pair_index(i, pos));
                }
            }
            let determined = top_mask(pos * (pos + 1) / 2);
            if let Some(b) = self.best {
                if code2 & determined > b & determined {
                    continue;
                }
            }
            self.order.push(v);
            self.used |= 1 << v;
            self.rec(pos + 1, code2);
            self.order.pop();
            self.used &= !(1 << v);
        }
    }
}

/// Runs the minimum-code search; returns the code and the winning vertex
/// order (`order[p]` is the vertex placed at position `p`).
fn min_code(g: &Graph, ranks: &[u32]) -> (u128, Vec<usize>) {
    let n = g.n();
    assert!(n <= 16, "canonical form supports at most 16 vertices");
    let nclasses = ranks.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); nclasses];
    for v in 0..n {
        classes[ranks[v] as usize].push(v);
    }
    classes.retain(|c| !c.is_empty());
    classes.sort_by_key(|c| (c.len(), ranks[c[0]]));
    let mut pos_class = Vec::with_capacity(n);
    for (ci, c) in classes.iter().enumerate() {
        pos_class.extend(std::iter::repeat(ci).take(c.len()));
    }
    let mut search = Search {
        g,
        n,
        classes,
        pos_class,
        order: Vec::with_capacity(n),
        used: 0,
        best: None,
        best_order: Vec::new(),
    };
    search.run();
    (search.best.unwrap(), search.best_order)
}

fn pack_code(n: usize, code: u128) -> Vec<u8> {
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(8);
    let mut out = Vec::with_capacity(nbytes + 1);
    out.push(n as u8);
    for b in 0..nbytes {
        out.push((code >> (120 - 8 * b)) as u8);
    }
    out
}

/// Canonical byte string; two graphs have equal forms iff they are
/// isomorphic.  `n <= 16`.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let ranks = refine(g, &vec![0; g.n()]);
    let (code, _) = min_code(g, &ranks);
    pack_code(g.n(), code)
}

/// Canonical byte string of a vertex-colored graph; equal forms iff there is
/// a color-preserving isomorphism.  The per-position colors are appended to
/// the code so different colorings cannot collide.
pub fn colored_canonical_form(g: &Graph, colors: &[u64]) -> Vec<u8> {
    assert_eq!(colors.len(), g.n());
    let ranks = refine(g, colors);
    let (code, order) = min_code(g, &ranks);
    let mut out = pack_code(g.n(), code);
    for &v in &order {
        out.extend_from_slice(&colors[v].to_be_bytes());
    }
    out
}

/// The canonically labeled representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let ranks = refine(g, &vec![0; g.n()]);
    let (_, order) = min_code(g, &ranks);
    let mut pos_of = vec![0usize; g.n()];
    for (p, &v) in order.iter().enumerate() {
        pos_of[v] = p;
    }
    g.permuted(&pos_of)
}

/// Joint refinement of two graphs in one color space, so ranks are
/// comparable across them.
fn joint_refine(a: &Graph, b: &Graph) -> (Vec<u32>, Vec<u32>) {
    let (na, nb) = (a.n(), b.n());
    let mut colors: Vec<u32> = vec![0; na + nb];
    let mut class_count = 1usize;
    loop {
        let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(na + nb);
        for v in 0..na {
            let mut nbc: Vec<u32> = bits(a.neighbors(v)).map(|w| colors[w]).collect();
            nbc.sort_unstable();
            sigs.push((colors[v], nbc));
        }
        for v in 0..nb {
            let mut nbc: Vec<u32> = bits(b.neighbors(v)).map(|w| colors[na + w]).collect();
            nbc.sort_unstable();
            sigs.push((colors[na + v], nbc));
        }
        let next = rank_values(&sigs);
        let next_count = distinct(&next);
        if next_count == class_count {
            return (next[..na].to_vec(), next[na..].to_vec());
        }
        colors = next;
        class_count = next_count;
    }
}

/// Isomorphism test by refinement plus backtracking; works for any size the
/// kernel supports (no 16-vertex cap).
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (ra, rb) = joint_refine(a, b);
    let mut ha = ra.clone();
    let mut hb = rb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return false;
    }
    let n = a.n();
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    fn rec(
        v: usize,
        a: &Graph,
        b: &Graph,
        ra: &[u32],
        rb: &[u32],
        map: &mut Vec<usize>,
        used: &mut u64,
    ) -> bool {
        let n = a.n();
        if v == n {
            return true;
        }
        for w in 0..n {
            if *used >> w & 1 == 1 || rb[w] != ra[v] {
                continue;
            }
            if (0..v).any(|u| a.has_edge(u, v) != b.has_edge(map[u], w)) {
                continue;
            }
            map[v] = w;
            *used |= 1 << w;
            if rec(v + 1, a, b, ra, rb, map, used) {
                return true;
            }
            *used &= !(1 << w);
            map[v] = usize::MAX;
        }
        false
    }
    rec(0, a, b, &ra, &rb, &mut map, &mut used)
}

/// Every automorphism of `g`, as images `perm[v]`.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let ranks = refine(g, &vec![0; n]);
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    fn rec(
        v: usize,
        g: &Graph,
        ranks: &[u32],
        map: &mut Vec<usize>,
        used: &mut u64,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.n();
        if v == n {
            out.push(map.clone());
            return;
        }
        for w in 0..n {
            if *used >> w & 1 == 1 || ranks[w] != ranks[v] {
                continue;
            }
            if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(map[u], w)) {
                continue;
            }
            map[v] = w;
            *used |= 1 << w;
            rec(v + 1, g, ranks, map, used, out);
            *used &= !(1 << w);
            map[v] = usize::MAX;
        }
    }
    rec(0, g, &ranks, &mut map, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelings_share_a_form() {
        let c5 = Graph::cycle(5);
        let relabeled = c5.permuted(&[2, 0, 4, 1, 3]);
        assert_eq!(canonical_form(&c5), canonical_form(&relabeled));
        assert!(are_isomorphic(&c5, &relabeled));
        let canon = canonical_graph(&c5);
        assert_eq!(canonical_form(&canon), canonical_form(&c5));
    }

    #[test]
    fn different_graphs_have_different_forms() {
        let path = Graph::path(5);
        let star = Graph::star(5);
        assert_ne!(canonical_form(&path), canonical_form(&star));
        assert!(!are_isomorphic(&path, &star));
        // Same degree sequence, non-isomorphic: C6 vs two triangles.
        let c6 = Graph::cycle(6);
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!are_isomorphic(&c6, &tt));
        assert_ne!(canonical_form(&c6), canonical_form(&tt));
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphisms(&Graph::cycle(5)).len(), 10);
        assert_eq!(automorphisms(&Graph::cycle(4)).len(), 8);
        assert_eq!(automorphisms(&Graph::complete(4)).len(), 24);
        assert_eq!(automorphisms(&Graph::path(4)).len(), 2);
        assert_eq!(automorphisms(&Graph::star(5)).len(), 24);
        assert_eq!(automorphisms(&Graph::bullet()).len(), 1);
    }

    #[test]
    fn automorphisms_match_brute_force_filter() {
        use crate::symfunc::test_support::all_permutations;
        for g in [
            Graph::cycle(5),
            Graph::path(5),
            Graph::star(4),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]),
        ] {
            let n = g.n();
            let mut expect: Vec<Vec<usize>> = all_permutations(n)
                .into_iter()
                .filter(|p| g.permuted(p) == g)
                .collect();
            let mut got = automorphisms(&g);
            expect.sort();
            got.sort();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn colored_forms_separate_colorings() {
        let p3 = Graph::path(3);
        // Color the middle vertex differently from the ends.
        let a = colored_canonical_form(&p3, &[0, 1, 0]);
        let b = colored_canonical_form(&p3, &[1, 0, 0]);
        let c = colored_canonical_form(&p3, &[0, 0, 1]);
        assert_ne!(a, b);
        assert_eq!(b, c);
        assert_eq!(
            colored_canonical_form(&p3, &[0, 1, 0]),
            colored_canonical_form(&p3.permuted(&[2, 1, 0]), &[0, 1, 0])
        );
    }
}
