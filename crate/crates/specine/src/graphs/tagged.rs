//! Decorated graphs: the one-round quotient with S/T vertex tags recording
//! contracted sibling groups and deleted tufts.

use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use super::{bits, colored_canonical_form, Graph, GraphError};

/// A vertex tag: `S(k)` for a contracted sibling group of size `k + 1`,
/// `T(k)` for a deleted tuft of `k` leaves; `k >= 1` in both cases.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Tag {
    S(u32),
    T(u32),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::S(k) => write!(f, "S{k}"),
            Tag::T(k) => write!(f, "T{k}"),
        }
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (head, k) = s.split_at(1);
        let k: u32 = k.parse().map_err(|_| format!("bad tag {s:?}"))?;
        if k == 0 {
            return Err(format!("tag {s:?} must have k >= 1"));
        }
        match head {
            "S" => Ok(Tag::S(k)),
            "T" => Ok(Tag::T(k)),
            _ => Err(format!("bad tag {s:?}")),
        }
    }
}

/// A graph with optional vertex tags.  Valid tagged graphs (the constructor
/// enforces validity) are exactly the decorated graphs:
///
/// 1. among any two sibling vertices at least one carries a T tag, and
/// 2. every untagged leaf neighbors an S-tagged vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedGraph {
    pub graph: Graph,
    pub tags: Vec<Option<Tag>>,
}

impl TaggedGraph {
    pub fn new(graph: Graph, tags: Vec<Option<Tag>>) -> Result<Self, GraphError> {
        if tags.len() != graph.n() {
            return Err(GraphError::InvalidTags(format!(
                "{} tags for {} vertices",
                tags.len(),
                graph.n()
            )));
        }
        let t = TaggedGraph { graph, tags };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), GraphError> {
        for (v, tag) in self.tags.iter().enumerate() {
            if let Some(Tag::S(0) | Tag::T(0)) = tag {
                return Err(GraphError::InvalidTags(format!("vertex {v} tagged with k = 0")));
            }
        }
        for class in self.graph.sibling_classes() {
            let untagged_t = class
                .iter()
                .filter(|&&v| !matches!(self.tags[v], Some(Tag::T(_))))
                .count();
            if class.len() >= 2 && untagged_t >= 2 {
                return Err(GraphError::InvalidTags(format!(
                    "siblings {class:?} have fewer than {} T tags",
                    class.len() - 1
                )));
            }
        }
        for v in bits(self.graph.leaves()) {
            if self.tags[v].is_none() {
                let w = bits(self.graph.neighbors(v)).next().unwrap();
                if !matches!(self.tags[w], Some(Tag::S(_))) {
                    return Err(GraphError::InvalidTags(format!(
                        "untagged leaf {v} has no S-tagged neighbor"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of vertices of the graph this decodes to.
    pub fn total_weight(&self) -> usize {
        self.graph.n()
            + self
                .tags
                .iter()
                .map(|t| match t {
                    Some(Tag::S(k)) | Some(Tag::T(k)) => *k as usize,
                    None => 0,
                })
                .sum::<usize>()
    }

    /// Canonical bytes under tag-preserving isomorphism.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let colors: Vec<u64> = self
            .tags
            .iter()
            .map(|t| match t {
                None => 0u64,
                Some(Tag::S(k)) => 2 * *k as u64,
                Some(Tag::T(k)) => 2 * *k as u64 + 1,
            })
            .collect();
        colored_canonical_form(&self.graph, &colors)
    }

    pub fn is_isomorphic_to(&self, other: &TaggedGraph) -> bool {
        self.canonical_bytes() == other.canonical_bytes()
    }

    /// The tag map as JSON: `{"0": "S2", "1": null, ...}`.
    pub fn tags_json(&self) -> Value {
        let mut m = Map::new();
        for (v, tag) in self.tags.iter().enumerate() {
            m.insert(
                v.to_string(),
                tag.map(|t| Value::String(t.to_string())).unwrap_or(Value::Null),
            );
        }
        Value::Object(m)
    }

    pub fn tags_from_json(graph: Graph, v: &Value) -> Result<Self, GraphError> {
        let obj = v
            .as_object()
            .ok_or_else(|| GraphError::InvalidTags("tag map must be an object".into()))?;
        let mut tags = vec![None; graph.n()];
        for (key, tag) in obj {
            let idx: usize = key
                .parse()
                .map_err(|_| GraphError::InvalidTags(format!("bad vertex key {key:?}")))?;
            if idx >= graph.n() {
                return Err(GraphError::InvalidTags(format!("vertex {idx} out of range")));
            }
            tags[idx] = match tag {
                Value::Null => None,
                Value::String(s) => {
                    Some(Tag::from_str(s).map_err(GraphError::InvalidTags)?)
                }
                _ => return Err(GraphError::InvalidTags("tags are strings or null".into())),
            };
        }
        TaggedGraph::new(graph, tags)
    }
}

/// Builds the decorated graph: tag each vertex adjacent to `k` leaves with
/// `T_k`, remove all leaves, then contract each maximal sibling group of the
/// original graph (necessarily of size `k + 1 >= 2`) to one vertex tagged
/// `S_k`.  Requires a connected graph other than K2.
pub fn decorate(g: &Graph) -> Result<TaggedGraph, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.is_k2() {
        return Err(GraphError::K2Input);
    }
    let leaves = g.leaves();
    let classes: Vec<Vec<usize>> = g
        .sibling_classes()
        .into_iter()
        .filter(|c| leaves >> c[0] & 1 == 0)
        .collect();
    // A vertex adjacent to a leaf never has siblings in a graph other than
    // K2, so tuft tags always land on singleton classes.
    for class in &classes {
        if class.len() >= 2 {
            assert!(
                class.iter().all(|&v| g.neighbors(v) & leaves == 0),
                "a leaf cannot be adjacent to a vertex having siblings"
            );
        }
    }
    let mut tags: Vec<Option<Tag>> = Vec::with_capacity(classes.len());
    let mut class_of = vec![usize::MAX; g.n()];
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            class_of[v] = ci;
        }
        if class.len() >= 2 {
            tags.push(Some(Tag::S(class.len() as u32 - 1)));
        } else {
            let k = (g.neighbors(class[0]) & leaves).count_ones();
            tags.push(if k > 0 { Some(Tag::T(k)) } else { None });
        }
    }
    let mut quotient = Graph::empty(classes.len());
    for (ci, class) in classes.iter().enumerate() {
        for w in bits(g.neighbors(class[0]) & !leaves) {
            let cj = class_of[w];
            if cj != usize::MAX && cj > ci {
                quotient.add_edge(ci, cj);
            }
        }
    }
    let decorated = TaggedGraph::new(quotient, tags)
        .expect("the decorated graph of a connected non-K2 graph is always valid");
    Ok(decorated)
}

/// Rebuilds a graph from a decorated graph: each `S_k` vertex expands to a
/// clique of `k + 1` mutual siblings on its neighborhood, each `T_k` vertex
/// gains `k` pendant leaves.
pub fn undecorate(t: &TaggedGraph) -> Result<Graph, GraphError> {
    t.validate()?;
    let m = t.graph.n();
    let mut first_copy = vec![0usize; m];
    let mut n = 0usize;
    for v in 0..m {
        first_copy[v] = n;
        n += match t.tags[v] {
            Some(Tag::S(k)) => k as usize + 1,
            _ => 1,
        };
    }
    let mut leaf_base = n;
    for v in 0..m {
        if let Some(Tag::T(k)) = t.tags[v] {
            n += k as usize;
        }
    }
    if n > 64 {
        return Err(GraphError::InvalidTags(format!(
            "expansion needs {n} vertices, above the 64-vertex kernel limit"
        )));
    }
    let copies = |v: usize| -> Vec<usize> {
        match t.tags[v] {
            Some(Tag::S(k)) => (0..=k as usize).map(|i| first_copy[v] + i).collect(),
            _ => vec![first_copy[v]],
        }
    };
    let mut g = Graph::empty(n);
    for (u, v) in t.graph.edges() {
        for &cu in &copies(u) {
            for &cv in &copies(v) {
                g.add_edge(cu, cv);
            }
        }
    }
    for v in 0..m {
        match t.tags[v] {
            Some(Tag::S(k)) => {
                let cs = copies(v);
                for i in 0..=k as usize {
                    for j in (i + 1)..=k as usize {
                        g.add_edge(cs[i], cs[j]);
                    }
                }
            }
            Some(Tag::T(k)) => {
                for _ in 0..k {
                    g.add_edge(first_copy[v], leaf_base);
                    leaf_base += 1;
                }
            }
            None => {}
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::super::are_isomorphic;
    use super::*;

    fn tag(s: &str) -> Option<Tag> {
        Some(s.parse().unwrap())
    }

    #[test]
    fn decorate_round_trips_on_simple_graphs() {
        for g in [
            Graph::bullet(),
            Graph::star(5),
            Graph::complete(4),
            Graph::path(6),
            Graph::cycle(5),
        ] {
            let t = decorate(&g).unwrap();
            let back = undecorate(&t).unwrap();
            assert!(are_isomorphic(&g, &back), "round trip failed for {g}");
            let again = decorate(&back).unwrap();
            assert!(t.is_isomorphic_to(&again));
        }
    }

    #[test]
    fn decorate_reads_off_the_invariants() {
        // Star: center tagged T_{n-1}; complete graph: one vertex S_{n-1}.
        let t = decorate(&Graph::star(5)).unwrap();
        assert_eq!(t.graph.n(), 1);
        assert_eq!(t.tags, vec![tag("T4")]);
        let t = decorate(&Graph::complete(6)).unwrap();
        assert_eq!(t.graph.n(), 1);
        assert_eq!(t.tags, vec![tag("S5")]);
        // An untagged reduced graph decorates to itself.
        let c5 = Graph::cycle(5);
        let t = decorate(&c5).unwrap();
        assert_eq!(t.graph, c5);
        assert!(t.tags.iter().all(|x| x.is_none()));
    }

    #[test]
    fn seventeen_vertex_example_decoration() {
        let g = crate::verify::fixtures::seventeen_vertex_example();
        let t = decorate(&g).unwrap();
        let expected = TaggedGraph::new(
            crate::verify::fixtures::eight_vertex_middle(),
            vec![
                tag("S2"),
                tag("S1"),
                None,
                None,
                tag("T2"),
                None,
                tag("T3"),
                tag("S1"),
            ],
        )
        .unwrap();
        assert!(t.is_isomorphic_to(&expected));
        assert!(are_isomorphic(&undecorate(&t).unwrap(), &g));
        // The maximal tags recover the graph invariants.
        assert_eq!(g.sibling_number(), 2);
        assert_eq!(g.tuft_number(), 3);
    }

    #[test]
    fn validity_conditions() {
        // Path with S_n on the middle vertex: valid.  With T_n instead the
        // untagged leaves lack an S-neighbor: invalid.
        let p3 = Graph::path(3);
        assert!(TaggedGraph::new(p3.clone(), vec![None, tag("S2"), None]).is_ok());
        assert!(TaggedGraph::new(p3.clone(), vec![None, tag("T2"), None]).is_err());
        // Untagged siblings: invalid (K2 shape with no T tag).
        let k2 = Graph::complete(2);
        assert!(TaggedGraph::new(k2.clone(), vec![None, None]).is_err());
        assert!(TaggedGraph::new(k2.clone(), vec![None, tag("S1")]).is_err());
        assert!(TaggedGraph::new(k2.clone(), vec![tag("T1"), tag("S1")]).is_ok());
        assert!(TaggedGraph::new(k2, vec![tag("T3"), tag("T1")]).is_ok());
        // k = 0 tags are rejected.
        assert!(TaggedGraph::new(Graph::bullet(), vec![Some(Tag::S(0))]).is_err());
    }

    #[test]
    fn undecorate_expands_tags() {
        // Lone T_k vertex is a star; lone S_k vertex is a complete graph.
        let star = undecorate(&TaggedGraph::new(Graph::bullet(), vec![tag("T3")]).unwrap()).unwrap();
        assert!(are_isomorphic(&star, &Graph::star(4)));
        let k4 = undecorate(&TaggedGraph::new(Graph::bullet(), vec![tag("S3")]).unwrap()).unwrap();
        assert!(are_isomorphic(&k4, &Graph::complete(4)));
        // T1-S1 edge expands to the paw plus a pendant leaf.
        let t = TaggedGraph::new(Graph::complete(2), vec![tag("T1"), tag("S1")]).unwrap();
        let g = undecorate(&t).unwrap();
        assert_eq!(g.n(), 4);
        assert!(are_isomorphic(
            &g,
            &Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)])
        ));
        let again = decorate(&g).unwrap();
        assert!(again.is_isomorphic_to(&t));
    }

    #[test]
    fn tags_json_round_trip() {
        let t = TaggedGraph::new(Graph::path(3), vec![None, tag("S2"), None]).unwrap();
        let json = t.tags_json();
        assert_eq!(json["1"], serde_json::json!("S2"));
        assert_eq!(json["0"], serde_json::Value::Null);
        let back = TaggedGraph::tags_from_json(Graph::path(3), &json).unwrap();
        assert_eq!(back, t);
    }
}
