//! Labeled simple graphs and their connected subgraphs.
//!
//! Everything downstream leans on two facts established here: a [`Graph`]
//! stores its vertices and edges in sorted sets, so the derived `Ord` is
//! exactly the canonical order (vertex list compared lexicographically,
//! then edge list), and a [`ConnectedSubgraph`] is nonempty and connected
//! by construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex labels start at 1")]
    ZeroLabel,
    #[error("loop edge at vertex {0}")]
    Loop(u64),
    #[error("edge {0}-{1} has an endpoint outside the vertex set")]
    DanglingEdge(u64, u64),
    #[error("line {line}: malformed graph record `{text}`")]
    Malformed { line: usize, text: String },
    #[error("graph is empty or not connected")]
    NotConnected,
    #[error("vertex {0} is not in the graph")]
    MissingVertex(u64),
    #[error("{0} is not a subgraph of the host graph")]
    NotSubgraph(String),
}

/// A vertex label. Labels are integers starting at 1; 0 is reserved as
/// never-a-vertex so parsers can reject it early.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u64);

impl VertexId {
    pub fn new(label: u64) -> Result<Self, GraphError> {
        if label == 0 {
            return Err(GraphError::ZeroLabel);
        }
        Ok(VertexId(label))
    }

    pub fn label(self) -> u64 {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An undirected edge between two distinct vertices, stored with the
/// smaller endpoint first so equal edges compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Result<Self, GraphError> {
        if u == v {
            return Err(GraphError::Loop(u.label()));
        }
        Ok(if u < v {
            Edge { lo: u, hi: v }
        } else {
            Edge { lo: v, hi: u }
        })
    }

    /// Endpoints in ascending order.
    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.lo, self.hi)
    }

    pub fn touches(self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`. Caller must know `v` is an endpoint.
    pub fn other(self, v: VertexId) -> VertexId {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.touches(other.lo) || self.touches(other.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A finite labeled simple graph. Invariant: every edge endpoint is in
/// the vertex set. The derived `Ord` compares vertex sets
/// lexicographically, then edge sets, which is the canonical order used
/// for every basis and rendering in this crate.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn empty() -> Self {
        Graph::default()
    }

    /// Builds a graph from explicit vertex and edge sets. Fails if an
    /// edge endpoint is missing from the vertices; use [`Graph::add_edge`]
    /// when endpoints should be declared implicitly.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::default();
        g.vertices.extend(vertices);
        for e in edges {
            let (u, v) = e.endpoints();
            if !g.vertices.contains(&u) || !g.vertices.contains(&v) {
                return Err(GraphError::DanglingEdge(u.label(), v.label()));
            }
            g.edges.insert(e);
        }
        Ok(g)
    }

    /// Convenience constructor from raw labels; edge endpoints are added
    /// to the vertex set automatically.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = u64>,
        edges: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::default();
        for v in vertices {
            g.add_vertex(VertexId::new(v)?);
        }
        for (u, v) in edges {
            g.add_edge(Edge::new(VertexId::new(u)?, VertexId::new(v)?)?);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    /// Inserts an edge, declaring both endpoints as vertices.
    pub fn add_edge(&mut self, e: Edge) {
        let (u, v) = e.endpoints();
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.insert(e);
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn is_subgraph_of(&self, host: &Graph) -> bool {
        self.vertices.is_subset(&host.vertices) && self.edges.is_subset(&host.edges)
    }

    /// The canonical key: sorted vertex labels, then sorted endpoint
    /// pairs. `Graph`'s `Ord` agrees with comparing these keys.
    pub fn canonical_key(&self) -> (Vec<u64>, Vec<(u64, u64)>) {
        (
            self.vertices.iter().map(|v| v.label()).collect(),
            self.edges
                .iter()
                .map(|e| {
                    let (u, v) = e.endpoints();
                    (u.label(), v.label())
                })
                .collect(),
        )
    }

    /// Parses the line-oriented graph file format: one integer declares
    /// an isolated vertex, two integers an edge (endpoints declared
    /// implicitly), `#` starts a comment, blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut g = Graph::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let malformed = || GraphError::Malformed {
                line: idx + 1,
                text: line.to_string(),
            };
            let mut nums = Vec::new();
            for tok in line.split_whitespace() {
                nums.push(tok.parse::<u64>().map_err(|_| malformed())?);
            }
            match nums.as_slice() {
                [v] => g.add_vertex(VertexId::new(*v)?),
                [u, v] => g.add_edge(Edge::new(VertexId::new(*u)?, VertexId::new(*v)?)?),
                _ => return Err(malformed()),
            }
        }
        Ok(g)
    }

    /// Serializes back to the file format: isolated vertices first, then
    /// edges, both ascending. `parse(to_text(g)) == g`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &v in &self.vertices {
            if !self.edges.iter().any(|e| e.touches(v)) {
                out.push_str(&format!("{v}\n"));
            }
        }
        for &e in &self.edges {
            let (u, v) = e.endpoints();
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Hex SHA-256 of the canonical serialization. Stable across runs;
    /// used to key caches and stamp verification reports.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The subgraph induced on `subset`: those vertices plus every edge
    /// with both endpoints inside.
    pub fn induced_subgraph(&self, subset: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        if let Some(v) = subset.iter().find(|v| !self.vertices.contains(v)) {
            return Err(GraphError::MissingVertex(v.label()));
        }
        Ok(self.induced_in(subset))
    }

    pub(crate) fn induced_in(&self, subset: &BTreeSet<VertexId>) -> Graph {
        debug_assert!(subset.is_subset(&self.vertices));
        let edges = self
            .edges
            .iter()
            .filter(|e| {
                let (u, v) = e.endpoints();
                subset.contains(&u) && subset.contains(&v)
            })
            .copied()
            .collect();
        Graph {
            vertices: subset.clone(),
            edges,
        }
    }

    fn adjacency(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &e in &self.edges {
            let (u, v) = e.endpoints();
            adj.get_mut(&u).unwrap().push(v);
            adj.get_mut(&v).unwrap().push(u);
        }
        adj
    }

    /// Connected components in ascending canonical order. Their vertex
    /// sets partition the vertices and their edge sets partition the
    /// edges.
    pub fn connected_components(&self) -> Vec<ConnectedSubgraph> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut components = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut component = BTreeSet::new();
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                if !component.insert(v) {
                    continue;
                }
                queue.extend(adj[&v].iter().copied());
            }
            seen.extend(component.iter().copied());
            components.push(ConnectedSubgraph(self.induced_in(&component)));
        }
        components.sort();
        components
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let adj = self.adjacency();
        let start = *self.vertices.iter().next().unwrap();
        let mut seen = BTreeSet::new();
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            if !seen.insert(v) {
                continue;
            }
            queue.extend(adj[&v].iter().copied());
        }
        seen.len() == self.vertices.len()
    }
}

impl fmt::Display for Graph {
    /// The brace literal form, e.g. `{1,2,3|1-2,2-3}`; edge part omitted
    /// when there are no edges.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        if !self.edges.is_empty() {
            write!(f, "|")?;
            for (i, e) in self.edges.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "}}")
    }
}

/// A nonempty connected subgraph, the generators of the subgraph
/// algebra. Wraps a [`Graph`] that `is_connected`; the canonical order
/// is inherited.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConnectedSubgraph(Graph);

impl ConnectedSubgraph {
    pub fn new(graph: Graph) -> Result<Self, GraphError> {
        if !graph.is_connected() {
            return Err(GraphError::NotConnected);
        }
        Ok(ConnectedSubgraph(graph))
    }

    pub fn single_vertex(v: VertexId) -> Self {
        let mut g = Graph::default();
        g.add_vertex(v);
        ConnectedSubgraph(g)
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    /// The number of vertices; this is the degree of the subgraph as a
    /// generator.
    pub fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }
}

impl fmt::Display for ConnectedSubgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(label: u64) -> VertexId {
        VertexId::new(label).unwrap()
    }

    fn edge(u: u64, w: u64) -> Edge {
        Edge::new(v(u), v(w)).unwrap()
    }

    /// The 4-cycle on 1..4 used throughout the crate's tests.
    pub(crate) fn square() -> Graph {
        Graph::from_parts([], [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap()
    }

    #[test]
    fn vertex_zero_rejected() {
        assert_eq!(VertexId::new(0), Err(GraphError::ZeroLabel));
    }

    #[test]
    fn edge_orients_endpoints() {
        assert_eq!(edge(5, 2), edge(2, 5));
        assert_eq!(edge(5, 2).endpoints(), (v(2), v(5)));
        assert_eq!(Edge::new(v(3), v(3)), Err(GraphError::Loop(3)));
    }

    #[test]
    fn new_rejects_dangling_edge() {
        let err = Graph::new([v(1), v(2)], [edge(2, 3)]);
        assert_eq!(err, Err(GraphError::DanglingEdge(2, 3)));
    }

    #[test]
    fn parse_basic_file() {
        let g = Graph::parse("# ring\n1 2\n2 3\n\n7\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 2);
        assert!(g.contains_vertex(v(7)));
        assert!(g.contains_edge(edge(1, 2)));
    }

    #[test]
    fn parse_trailing_comment_and_duplicates() {
        let g = Graph::parse("1 2 # bridge\n2 1\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_rejects_junk() {
        assert!(matches!(
            Graph::parse("1 2\nx y\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("1 2 3\n"),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert_eq!(Graph::parse("1 1\n"), Err(GraphError::Loop(1)));
        assert_eq!(Graph::parse("0\n"), Err(GraphError::ZeroLabel));
    }

    #[test]
    fn to_text_lists_isolated_then_edges() {
        let g = Graph::parse("9\n3 4\n1 2\n").unwrap();
        assert_eq!(g.to_text(), "9\n1 2\n3 4\n");
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn content_hash_ignores_input_order() {
        let a = Graph::parse("1 2\n3 4\n9\n").unwrap();
        let b = Graph::parse("9\n3 4\n1 2\n").unwrap();
        assert_eq!(a.content_hash(), b.content_hash());
        assert_eq!(a.content_hash().len(), 64);
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges() {
        let g = square();
        let sub = g
            .induced_subgraph(&[v(1), v(2), v(4)].into_iter().collect())
            .unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert!(sub.contains_edge(edge(1, 2)));
        assert!(sub.contains_edge(edge(1, 4)));
        assert!(!sub.contains_edge(edge(2, 3)));

        let err = g.induced_subgraph(&[v(9)].into_iter().collect());
        assert_eq!(err, Err(GraphError::MissingVertex(9)));
    }

    #[test]
    fn components_partition_vertices_and_edges() {
        let g = Graph::parse("1 2\n2 3\n5 6\n8\n").unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 3);
        let vertex_total: usize = comps.iter().map(|c| c.vertex_count()).sum();
        let edge_total: usize = comps.iter().map(|c| c.graph().edge_count()).sum();
        assert_eq!(vertex_total, g.vertex_count());
        assert_eq!(edge_total, g.edge_count());
        assert!(comps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn connectivity() {
        assert!(!Graph::empty().is_connected());
        assert!(square().is_connected());
        assert!(!Graph::parse("1\n2\n").unwrap().is_connected());
        assert!(ConnectedSubgraph::new(Graph::parse("1\n2\n").unwrap()).is_err());
    }

    #[test]
    fn canonical_order_is_lexicographic_with_prefix_rule() {
        // {1,2} < {2} because the vertex lists compare lexicographically,
        // and {1} < {1,2} because a strict prefix comes first.
        let g12 = Graph::from_parts([1, 2], []).unwrap();
        let g2 = Graph::from_parts([2], []).unwrap();
        let g1 = Graph::from_parts([1], []).unwrap();
        assert!(g12 < g2);
        assert!(g1 < g12);
        // Equal vertices: fewer/smaller edges first.
        let e12 = Graph::from_parts([], [(1, 2)]).unwrap();
        assert!(g12 < e12);
    }

    #[test]
    fn display_literal_form() {
        let e = Graph::from_parts([], [(1, 2)]).unwrap();
        assert_eq!(e.to_string(), "{1,2|1-2}");
        let dot = Graph::from_parts([7], []).unwrap();
        assert_eq!(dot.to_string(), "{7}");
        assert_eq!(square().to_string(), "{1,2,3,4|1-2,1-4,2-3,3-4}");
    }

    prop_compose! {
        /// Small arbitrary graphs on labels 1..=8.
        pub(crate) fn arb_graph()(
            verts in prop::collection::btree_set(1u64..=8, 0..6),
            raw_edges in prop::collection::vec((1u64..=8, 1u64..=8), 0..8),
        ) -> Graph {
            let edges = raw_edges.into_iter().filter(|(a, b)| a != b);
            Graph::from_parts(verts, edges).unwrap()
        }
    }

    proptest! {
        #[test]
        fn roundtrip_through_text(g in arb_graph()) {
            prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        }

        #[test]
        fn ord_matches_canonical_key(a in arb_graph(), b in arb_graph()) {
            prop_assert_eq!(a.cmp(&b), a.canonical_key().cmp(&b.canonical_key()));
        }

        #[test]
        fn induced_composes(g in arb_graph()) {
            // Inducing on a subset twice equals inducing once.
            let all: Vec<_> = g.vertices().iter().copied().collect();
            let half: BTreeSet<_> = all.iter().copied().step_by(2).collect();
            let quarter: BTreeSet<_> = half.iter().copied().step_by(2).collect();
            let once = g.induced_subgraph(&quarter).unwrap();
            let twice = g
                .induced_subgraph(&half)
                .unwrap()
                .induced_subgraph(&quarter)
                .unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn components_are_connected(g in arb_graph()) {
            for c in g.connected_components() {
                prop_assert!(c.graph().is_connected());
                prop_assert!(c.graph().is_subgraph_of(&g));
            }
        }
    }
}
