//! The block/patch decomposition of a connected graph and its inverse.
//!
//! Removing all leaves of a connected graph other than K2 and contracting
//! the sibling classes of the result yields its co-mating graph M.  Each
//! vertex of M corresponds to a block: one sibling class together with the
//! leaves hanging off its members.  The block's internal structure is a
//! patch: tufts (a root with its leaves) plus leafless roots.  Composition
//! rebuilds the graph by taking a clique on each block's roots and a
//! complete join between the roots of adjacent blocks.

use super::{bits, contract_siblings, remove_leaves, Graph, GraphError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SortFlag {
    /// Exactly one leafless root.
    SingleXRoot,
    /// Two or more leafless roots.
    ZRoots,
    /// Every root carries a tuft.
    NoLeaflessRoot,
}

/// The structure inside one block: tuft roots with their nonempty leaf sets,
/// plus the remaining leafless roots.  Vertex ids refer to the original
/// graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub tufts: Vec<(usize, Vec<usize>)>,
    pub leafless_roots: Vec<usize>,
    pub sort_flag: SortFlag,
}

impl Patch {
    pub fn roots(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.tufts.iter().map(|&(root, _)| root).collect();
        r.extend(&self.leafless_roots);
        r.sort_unstable();
        r
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut out = self.roots();
        for (_, leaves) in &self.tufts {
            out.extend(leaves);
        }
        out.sort_unstable();
        out
    }

    fn expected_flag(&self) -> SortFlag {
        match self.leafless_roots.len() {
            0 => SortFlag::NoLeaflessRoot,
            1 => SortFlag::SingleXRoot,
            _ => SortFlag::ZRoots,
        }
    }

    fn assert_valid(&self) {
        assert!(
            !self.tufts.is_empty() || !self.leafless_roots.is_empty(),
            "a patch is nonempty"
        );
        assert!(
            self.tufts.iter().all(|(_, leaves)| !leaves.is_empty()),
            "tuft leaf sets are nonempty"
        );
        assert_eq!(self.sort_flag, self.expected_flag(), "sort flag mismatch");
    }
}

/// `(partition, co-mating graph, patches)`; block `b` of the partition is
/// `comating` vertex `b` and carries `patches[b]`.
#[derive(Clone, Debug)]
pub struct PatchDecomposition {
    pub partition: Vec<Vec<usize>>,
    pub comating: Graph,
    pub patches: Vec<Patch>,
}

/// Decomposes a connected graph other than K2 into its co-mating graph and
/// one patch per block.  `patch_compose` inverts this exactly.
pub fn comating_graph(g: &Graph) -> Result<PatchDecomposition, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.is_k2() {
        return Err(GraphError::K2Input);
    }
    let leaves = g.leaves();
    // In a connected graph other than K2, the non-leaf vertices are nonempty
    // and a leaf is never adjacent to a vertex with siblings, so every leaf
    // becomes a tuft leaf of its unique neighbor.
    let (pruned, old_to_new) = remove_leaves(g, leaves)?;
    let new_to_old: Vec<usize> = {
        let mut v = vec![0usize; pruned.n()];
        for (old, new) in old_to_new.iter().enumerate() {
            if let Some(new) = new {
                v[*new] = old;
            }
        }
        v
    };
    let (comating, class_of) = contract_siblings(&pruned);
    debug_assert_eq!(comating.sibling_number(), 0);

    let mut partition: Vec<Vec<usize>> = vec![Vec::new(); comating.n()];
    let mut patches: Vec<Patch> = (0..comating.n())
        .map(|_| Patch {
            tufts: Vec::new(),
            leafless_roots: Vec::new(),
            sort_flag: SortFlag::NoLeaflessRoot,
        })
        .collect();
    for new_v in 0..pruned.n() {
        let old_v = new_to_old[new_v];
        let block = class_of[new_v];
        let own_leaves: Vec<usize> = bits(g.neighbors(old_v) & leaves).collect();
        partition[block].push(old_v);
        partition[block].extend(&own_leaves);
        if own_leaves.is_empty() {
            patches[block].leafless_roots.push(old_v);
        } else {
            patches[block].tufts.push((old_v, own_leaves));
        }
    }
    for (block, patch) in patches.iter_mut().enumerate() {
        partition[block].sort_unstable();
        patch.tufts.sort_unstable();
        patch.leafless_roots.sort_unstable();
        patch.sort_flag = patch.expected_flag();
        patch.assert_valid();
    }
    Ok(PatchDecomposition {
        partition,
        comating,
        patches,
    })
}

/// Rebuilds the graph from a decomposition: per block a clique on the roots
/// and the tuft edges, plus a complete join between the roots of blocks
/// adjacent in the co-mating graph.  The two size-2 configurations that do
/// not correspond to any graph are rejected.
pub fn patch_compose(d: &PatchDecomposition) -> Result<Graph, GraphError> {
    let blocks = d.partition.len();
    assert_eq!(d.comating.n(), blocks, "one block per co-mating vertex");
    assert_eq!(d.patches.len(), blocks);
    assert_eq!(
        d.comating.sibling_number(),
        0,
        "the co-mating graph is sibling-free"
    );
    let mut all: Vec<usize> = Vec::new();
    for (b, patch) in d.patches.iter().enumerate() {
        patch.assert_valid();
        assert_eq!(patch.vertices(), d.partition[b], "patch covers its block");
        all.extend(&d.partition[b]);
    }
    all.sort_unstable();
    let n = all.len();
    assert!(
        all.iter().copied().eq(0..n),
        "blocks must partition dense vertex ids 0..n-1"
    );

    if blocks == 1 {
        let patch = &d.patches[0];
        // Two lone leafless roots would compose to K2 with both ends
        // siblings; a lone single-leaf tuft would compose to K2 itself.
        if patch.tufts.is_empty() && patch.leafless_roots.len() == 2 {
            return Err(GraphError::ExceptionalSize2);
        }
        if patch.leafless_roots.is_empty()
            && patch.tufts.len() == 1
            && patch.tufts[0].1.len() == 1
        {
            return Err(GraphError::ExceptionalSize2);
        }
    }

    let mut g = Graph::empty(n);
    for patch in &d.patches {
        for (root, leaves) in &patch.tufts {
            for &leaf in leaves {
                g.add_edge(*root, leaf);
            }
        }
        let roots = patch.roots();
        for (i, &u) in roots.iter().enumerate() {
            for &v in &roots[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    for (b1, b2) in d.comating.edges() {
        for &u in &d.patches[b1].roots() {
            for &v in &d.patches[b2].roots() {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::super::are_isomorphic;
    use super::*;

    fn round_trip(g: &Graph) {
        let d = comating_graph(g).unwrap();
        assert_eq!(&patch_compose(&d).unwrap(), g);
    }

    #[test]
    fn paths_decompose_to_shorter_paths() {
        for n in 5..=8 {
            let d = comating_graph(&Graph::path(n)).unwrap();
            assert!(are_isomorphic(&d.comating, &Graph::path(n - 2)));
            round_trip(&Graph::path(n));
        }
        // P4's co-mating graph is a single vertex.
        let d = comating_graph(&Graph::path(4)).unwrap();
        assert_eq!(d.comating.n(), 1);
        round_trip(&Graph::path(4));
    }

    #[test]
    fn comating_input_is_fixed() {
        let c5 = Graph::cycle(5);
        let d = comating_graph(&c5).unwrap();
        assert_eq!(d.comating, c5);
        assert!(d.partition.iter().all(|b| b.len() == 1));
        assert!(d
            .patches
            .iter()
            .all(|p| p.sort_flag == SortFlag::SingleXRoot));
        round_trip(&c5);
    }

    #[test]
    fn single_tuft_composes_to_star() {
        let d = PatchDecomposition {
            partition: vec![vec![0, 1, 2, 3]],
            comating: Graph::bullet(),
            patches: vec![Patch {
                tufts: vec![(0, vec![1, 2, 3])],
                leafless_roots: vec![],
                sort_flag: SortFlag::NoLeaflessRoot,
            }],
        };
        assert_eq!(patch_compose(&d).unwrap(), Graph::star(4));
    }

    #[test]
    fn exceptional_size_two_configurations_rejected() {
        let two_z = PatchDecomposition {
            partition: vec![vec![0, 1]],
            comating: Graph::bullet(),
            patches: vec![Patch {
                tufts: vec![],
                leafless_roots: vec![0, 1],
                sort_flag: SortFlag::ZRoots,
            }],
        };
        assert_eq!(
            patch_compose(&two_z).unwrap_err(),
            GraphError::ExceptionalSize2
        );
        let lone_tuft = PatchDecomposition {
            partition: vec![vec![0, 1]],
            comating: Graph::bullet(),
            patches: vec![Patch {
                tufts: vec![(0, vec![1])],
                leafless_roots: vec![],
                sort_flag: SortFlag::NoLeaflessRoot,
            }],
        };
        assert_eq!(
            patch_compose(&lone_tuft).unwrap_err(),
            GraphError::ExceptionalSize2
        );
    }

    #[test]
    fn rejects_k2_and_disconnected() {
        assert_eq!(
            comating_graph(&Graph::complete(2)).unwrap_err(),
            GraphError::K2Input
        );
        assert_eq!(
            comating_graph(&Graph::from_edges(4, &[(0, 1), (2, 3)])).unwrap_err(),
            GraphError::Disconnected
        );
    }

    #[test]
    fn fifteen_vertex_worked_example() {
        let g = crate::verify::fixtures::fifteen_vertex_patch_example();
        // Canonical decomposition: every leaf is a tuft leaf, so vertex 0
        // (a pendant vertex) joins the block of its neighbor and the
        // co-mating graph is the 4-path.
        let d = comating_graph(&g).unwrap();
        assert!(are_isomorphic(&d.comating, &Graph::path(4)));
        assert_eq!(
            d.partition,
            vec![
                vec![0, 1, 9],
                vec![2, 3, 10, 11],
                vec![4],
                vec![5, 6, 7, 8, 12, 13, 14],
            ]
        );
        round_trip(&g);
    }

    #[test]
    fn fifteen_vertex_five_block_composition() {
        // The same graph also arises by composing the five-block
        // decomposition in which the pendant vertex 0 is a leafless root of
        // its own block (leaves may sit at a root of either sort; the
        // decomposition of the three-sort structure is determined only once
        // the sorts are fixed).
        let g = crate::verify::fixtures::fifteen_vertex_patch_example();
        let d = PatchDecomposition {
            partition: vec![
                vec![0],
                vec![1, 9],
                vec![2, 3, 10, 11],
                vec![4],
                vec![5, 6, 7, 8, 12, 13, 14],
            ],
            comating: Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]),
            patches: vec![
                Patch {
                    tufts: vec![],
                    leafless_roots: vec![0],
                    sort_flag: SortFlag::SingleXRoot,
                },
                Patch {
                    tufts: vec![(1, vec![9])],
                    leafless_roots: vec![],
                    sort_flag: SortFlag::NoLeaflessRoot,
                },
                Patch {
                    tufts: vec![(3, vec![10, 11])],
                    leafless_roots: vec![2],
                    sort_flag: SortFlag::SingleXRoot,
                },
                Patch {
                    tufts: vec![],
                    leafless_roots: vec![4],
                    sort_flag: SortFlag::SingleXRoot,
                },
                Patch {
                    tufts: vec![(5, vec![12]), (6, vec![13, 14])],
                    leafless_roots: vec![7, 8],
                    sort_flag: SortFlag::ZRoots,
                },
            ],
        };
        assert_eq!(patch_compose(&d).unwrap(), g);
    }
}
