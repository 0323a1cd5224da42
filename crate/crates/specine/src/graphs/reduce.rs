//! Leaf removal, sibling contraction, and the reduction fixed point.

use super::{bits, Graph, GraphError};

/// How `reduce` treats a K2 input; the reduction is otherwise undefined for
/// it.  With `AsBullet`, K2 reduces to the single vertex so that tallies over
/// all connected graphs are total.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum K2Policy {
    Reject,
    AsBullet,
}

/// One stage of the reduction process.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub removed_leaves: bool,
    pub graph: Graph,
}

/// Removes the given set of leaves; every vertex in `subset` must have
/// degree 1 and at least one vertex must remain.  Returns the recompacted
/// graph and the old-to-new id map.
pub fn remove_leaves(g: &Graph, subset: u64) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
    if subset & !g.full_mask() != 0 {
        return Err(GraphError::NotALeaf(
            bits(subset & !g.full_mask()).next().unwrap(),
        ));
    }
    for v in bits(subset) {
        if g.degree(v) != 1 {
            return Err(GraphError::NotALeaf(v));
        }
    }
    let keep = g.full_mask() & !subset;
    if keep == 0 {
        return Err(GraphError::WouldEmptyGraph);
    }
    Ok(g.induced_subgraph(keep))
}

/// Removes all leaves.
pub fn remove_all_leaves(g: &Graph) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
    remove_leaves(g, g.leaves())
}

/// Contracts every sibling class to a single vertex.  Adjacency between
/// classes is all-or-nothing (siblings share closed neighborhoods), so the
/// quotient is well defined; it is never K2.  Returns the quotient and the
/// total old-to-new map.
pub fn contract_siblings(g: &Graph) -> (Graph, Vec<usize>) {
    let classes = g.sibling_classes();
    let mut old_to_new = vec![0usize; g.n()];
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            old_to_new[v] = ci;
        }
    }
    let mut q = Graph::empty(classes.len());
    for (ci, class) in classes.iter().enumerate() {
        let rep = class[0];
        for w in bits(g.neighbors(rep)) {
            let cj = old_to_new[w];
            if cj > ci {
                q.add_edge(ci, cj);
            }
        }
    }
    assert!(!q.is_k2(), "sibling contraction can never produce K2");
    (q, old_to_new)
}

/// The reduction: alternately remove all leaves and contract sibling classes
/// until the graph is leafless and sibling-free (possibly a single vertex).
/// The input must be connected and, unless `K2Policy::AsBullet` is chosen,
/// different from K2.
pub fn reduce(g: &Graph, policy: K2Policy) -> Result<Graph, GraphError> {
    let trace = reduce_trace(g, policy)?;
    Ok(trace.last().map(|s| s.graph.clone()).unwrap_or_else(|| g.clone()))
}

/// Like [`reduce`], but returns every intermediate stage (one entry per leaf
/// removal and per sibling contraction actually applied).
pub fn reduce_trace(g: &Graph, policy: K2Policy) -> Result<Vec<ReductionStep>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.is_k2() {
        return match policy {
            K2Policy::Reject => Err(GraphError::K2Input),
            K2Policy::AsBullet => Ok(vec![ReductionStep {
                removed_leaves: false,
                graph: Graph::bullet(),
            }]),
        };
    }
    let mut cur = g.clone();
    let mut steps = Vec::new();
    loop {
        // Invariant: cur is connected and not K2, so removing all leaves
        // cannot empty it.  An intermediate K2 can only appear as the output
        // of a leaf removal and is immediately contracted to a vertex.
        let leaves = cur.leaves();
        if leaves != 0 {
            let (next, _) = remove_leaves(&cur, leaves)?;
            cur = next;
            steps.push(ReductionStep {
                removed_leaves: true,
                graph: cur.clone(),
            });
        }
        if cur.sibling_number() > 0 {
            let (next, _) = contract_siblings(&cur);
            cur = next;
            steps.push(ReductionStep {
                removed_leaves: false,
                graph: cur.clone(),
            });
        }
        if cur.leaves() == 0 && cur.sibling_number() == 0 {
            break;
        }
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::super::{are_isomorphic, canonical_form};
    use super::*;

    #[test]
    fn remove_leaves_examples() {
        // Both endpoints of P4 leave K2.
        let (g, _) = remove_leaves(&Graph::path(4), 0b1001).unwrap();
        assert!(g.is_k2());
        // Empty subset is the identity.
        let (g, _) = remove_leaves(&Graph::path(4), 0).unwrap();
        assert_eq!(g, Graph::path(4));
        // Star on 5 vertices minus all leaves is a single vertex.
        let (g, _) = remove_all_leaves(&Graph::star(5)).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(
            remove_leaves(&Graph::path(4), 0b0010).unwrap_err(),
            GraphError::NotALeaf(1)
        );
        assert_eq!(
            remove_leaves(&Graph::complete(2), 0b11).unwrap_err(),
            GraphError::WouldEmptyGraph
        );
    }

    #[test]
    fn contract_siblings_examples() {
        let (q, _) = contract_siblings(&Graph::complete(5));
        assert_eq!(q.n(), 1);
        let (q, _) = contract_siblings(&Graph::cycle(4));
        assert!(are_isomorphic(&q, &Graph::cycle(4)));
        let (q, map) = contract_siblings(&Graph::complete(2));
        assert_eq!(q.n(), 1);
        assert_eq!(map, vec![0, 0]);
    }

    #[test]
    fn contraction_kills_all_siblings_in_one_pass() {
        // The quotient by sibling classes is itself sibling-free.
        for g in [
            Graph::complete(6),
            Graph::star(6),
            Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]),
        ] {
            let (q, _) = contract_siblings(&g);
            assert_eq!(q.sibling_number(), 0, "quotient of {g} has siblings");
        }
    }

    #[test]
    fn reduce_examples() {
        // P4: removing leaves gives K2, contracting gives the single vertex.
        let r = reduce(&Graph::path(4), K2Policy::Reject).unwrap();
        assert_eq!(r.n(), 1);
        // A reduced graph is a fixed point.
        let c5 = Graph::cycle(5);
        assert_eq!(reduce(&c5, K2Policy::Reject).unwrap(), c5);
        // K2 policy.
        assert_eq!(
            reduce(&Graph::complete(2), K2Policy::Reject).unwrap_err(),
            GraphError::K2Input
        );
        assert_eq!(
            reduce(&Graph::complete(2), K2Policy::AsBullet).unwrap().n(),
            1
        );
        assert_eq!(
            reduce(&Graph::from_edges(4, &[(0, 1), (2, 3)]), K2Policy::Reject).unwrap_err(),
            GraphError::Disconnected
        );
    }

    #[test]
    fn seventeen_vertex_example_reduces_in_two_rounds() {
        use crate::verify::fixtures::{eight_vertex_middle, seventeen_vertex_example, six_vertex_reduced};
        let g = seventeen_vertex_example();
        let trace = reduce_trace(&g, K2Policy::Reject).unwrap();
        let rounds = trace.iter().filter(|s| s.removed_leaves).count();
        assert_eq!(rounds, 2);
        // After the first full round the graph matches the middle stage.
        let after_round1 = &trace[1].graph;
        assert_eq!(
            canonical_form(after_round1),
            canonical_form(&eight_vertex_middle())
        );
        let last = &trace.last().unwrap().graph;
        assert_eq!(canonical_form(last), canonical_form(&six_vertex_reduced()));
        // The reduction target is leafless, sibling-free, and not chordal.
        assert_eq!(last.leaves(), 0);
        assert_eq!(last.sibling_number(), 0);
        assert!(last.has_induced_cycle_geq4());
    }
}
