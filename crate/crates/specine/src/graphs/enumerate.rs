//! Exhaustive generation of unlabeled graphs at desk scale.
//!
//! Graphs on `n` vertices are grown from the complete list on `n - 1` by
//! attaching a new vertex with every possible neighborhood and deduplicating
//! through the canonical form (every graph arises this way: delete any
//! vertex).  A second, independent path — filtering all labeled graphs and
//! canonicalizing — checks the counts for small `n`.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use super::{canonical_form, canonical_graph, Graph, GraphError};

/// Hard cap on the vertex count for exhaustive generation.
pub const ENUM_CAP: usize = 8;

fn cache() -> &'static Mutex<HashMap<usize, Arc<Vec<Graph>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Graph>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// One canonical representative per unlabeled simple graph on `n` vertices
/// (connected or not), sorted by canonical form.  Memoized process-wide.
pub fn enumerate_all(n: usize) -> Result<Arc<Vec<Graph>>, GraphError> {
    assert!(n >= 1, "graphs have at least one vertex");
    if n > ENUM_CAP {
        return Err(GraphError::CapExceeded(n, ENUM_CAP));
    }
    if let Some(found) = cache().lock().unwrap().get(&n) {
        return Ok(found.clone());
    }
    let graphs = if n == 1 {
        vec![Graph::bullet()]
    } else {
        let parents = enumerate_all(n - 1)?;
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut out: Vec<(Vec<u8>, Graph)> = Vec::new();
        for parent in parents.iter() {
            for mask in 0..(1u64 << (n - 1)) {
                let mut g = Graph::empty(n);
                for (u, v) in parent.edges() {
                    g.add_edge(u, v);
                }
                for v in super::bits(mask) {
                    g.add_edge(v, n - 1);
                }
                let form = canonical_form(&g);
                if seen.insert(form.clone()) {
                    out.push((form, canonical_graph(&g)));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.into_iter().map(|(_, g)| g).collect()
    };
    let arc = Arc::new(graphs);
    cache().lock().unwrap().insert(n, arc.clone());
    Ok(arc)
}

/// One representative per unlabeled connected graph on `n` vertices, in
/// canonical-form order.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(enumerate_all(n)?
        .iter()
        .filter(|g| g.is_connected())
        .cloned()
        .collect())
}

/// Builds the labeled graph on `n` vertices from an edge bitmask in
/// column-major pair order.
fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    g
}

/// Independent count oracle: canonicalizes every one of the `2^(n(n-1)/2)`
/// labeled graphs and counts distinct forms.  Returns
/// `(all classes, connected classes)`.  Exponential; capped at `n <= 7`.
pub fn unlabeled_counts_by_filter(n: usize) -> Result<(usize, usize), GraphError> {
    assert!(n >= 1);
    if n > 7 {
        return Err(GraphError::CapExceeded(n, 7));
    }
    let pairs = n * (n - 1) / 2;
    let mut all: HashSet<Vec<u8>> = HashSet::new();
    let mut connected: HashSet<Vec<u8>> = HashSet::new();
    for mask in 0..(1u64 << pairs) {
        let g = graph_from_edge_mask(n, mask);
        let form = canonical_form(&g);
        if g.is_connected() {
            connected.insert(form.clone());
        }
        all.insert(form);
    }
    Ok((all.len(), connected.len()))
}

/// Number of labeled connected graphs on `n` vertices, by filtering all edge
/// masks.  Capped at `n <= 7`.
pub fn labeled_connected_count(n: usize) -> Result<u64, GraphError> {
    assert!(n >= 1);
    if n > 7 {
        return Err(GraphError::CapExceeded(n, 7));
    }
    let pairs = n * (n - 1) / 2;
    let mut count = 0u64;
    for mask in 0..(1u64 << pairs) {
        if graph_from_edge_mask(n, mask).is_connected() {
            count += 1;
        }
    }
    Ok(count)
}

/// Iterates all `2^(n(n-1)/2)` labeled graphs on `n` vertices, for
/// exhaustive round-trip checks over labeled inputs.  Exponential: keep `n`
/// small.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n >= 1 && n <= 11, "labeled iteration is exponential in n");
    let pairs = n * (n - 1) / 2;
    (0..(1u64 << pairs)).map(move |mask| graph_from_edge_mask(n, mask))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL_COUNTS: [usize; 8] = [1, 2, 4, 11, 34, 156, 1044, 12346];
    const CONNECTED_COUNTS: [usize; 8] = [1, 1, 2, 6, 21, 112, 853, 11117];

    #[test]
    fn counts_match_known_values_up_to_six() {
        for n in 1..=6 {
            assert_eq!(enumerate_all(n).unwrap().len(), ALL_COUNTS[n - 1]);
            assert_eq!(enumerate_connected(n).unwrap().len(), CONNECTED_COUNTS[n - 1]);
        }
    }

    #[test]
    fn counts_match_the_labeled_filter_oracle() {
        for n in 1..=6 {
            let (all, connected) = unlabeled_counts_by_filter(n).unwrap();
            assert_eq!(all, enumerate_all(n).unwrap().len());
            assert_eq!(connected, enumerate_connected(n).unwrap().len());
        }
    }

    #[test]
    fn seven_vertex_counts() {
        assert_eq!(enumerate_all(7).unwrap().len(), ALL_COUNTS[6]);
        assert_eq!(enumerate_connected(7).unwrap().len(), CONNECTED_COUNTS[6]);
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        let graphs = enumerate_all(5).unwrap();
        let mut forms: Vec<Vec<u8>> = graphs.iter().map(canonical_form).collect();
        forms.dedup();
        assert_eq!(forms.len(), graphs.len());
        let mut sorted = forms.clone();
        sorted.sort();
        assert_eq!(forms, sorted);
    }

    #[test]
    fn four_vertex_connected_statistics() {
        let stats: Vec<(usize, usize)> = enumerate_connected(4)
            .unwrap()
            .iter()
            .map(|g| (g.sibling_number(), g.tuft_number()))
            .collect();
        let mut sorted = stats.clone();
        sorted.sort();
        assert_eq!(sorted, vec![(0, 0), (0, 1), (0, 3), (1, 0), (1, 1), (3, 0)]);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_all(9).unwrap_err(),
            GraphError::CapExceeded(9, ENUM_CAP)
        );
        assert_eq!(
            unlabeled_counts_by_filter(8).unwrap_err(),
            GraphError::CapExceeded(8, 7)
        );
    }

    #[test]
    fn labeled_connected_counts() {
        let expect = [1u64, 1, 4, 38, 728, 26704];
        for n in 1..=6 {
            assert_eq!(labeled_connected_count(n).unwrap(), expect[n - 1]);
        }
    }
}
