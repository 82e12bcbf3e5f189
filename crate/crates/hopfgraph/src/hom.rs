//! Graph homomorphisms and the algebra morphisms they induce.
//!
//! A homomorphism maps vertices so that edges land on edges. Applying
//! one to a monomial replaces every factor by its image subgraph
//! (duplicate image vertices and edges merge, the image of a connected
//! graph stays connected), which extends to an algebra morphism on
//! elements. Identity and composition make this a covariant functor;
//! the verifier exercises both laws.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{ConnectedSubgraph, Edge, Graph, GraphError, VertexId};
use crate::hopf::{Element, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("source vertex {0} has no image")]
    Unmapped(u64),
    #[error("map lists vertex {0}, which is not in the source graph")]
    UnknownSource(u64),
    #[error("vertex {0} maps to {1}, which is not a target vertex")]
    ImageNotVertex(u64, u64),
    #[error("edge {0}-{1} maps to {2}-{3}, which is not a target edge")]
    ImageNotEdge(u64, u64, u64, u64),
    #[error("cannot compose: inner target differs from outer source")]
    MiddleMismatch,
    #[error("line {line}: malformed map record `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {vertex} mapped twice")]
    Duplicate { line: usize, vertex: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A validated graph homomorphism: a total vertex map under which every
/// source edge lands on a target edge (so no edge collapses to a
/// loop).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphHom {
    source: Graph,
    target: Graph,
    map: BTreeMap<VertexId, VertexId>,
}

impl GraphHom {
    pub fn new(
        source: Graph,
        target: Graph,
        map: BTreeMap<VertexId, VertexId>,
    ) -> Result<Self, HomError> {
        for &v in map.keys() {
            if !source.contains_vertex(v) {
                return Err(HomError::UnknownSource(v.label()));
            }
        }
        for &v in source.vertices() {
            let image = *map.get(&v).ok_or(HomError::Unmapped(v.label()))?;
            if !target.contains_vertex(image) {
                return Err(HomError::ImageNotVertex(v.label(), image.label()));
            }
        }
        for &e in source.edges() {
            let (u, v) = e.endpoints();
            let (fu, fv) = (map[&u], map[&v]);
            let lands_on_edge = fu != fv
                && target.contains_edge(Edge::new(fu, fv).expect("endpoints are distinct"));
            if !lands_on_edge {
                return Err(HomError::ImageNotEdge(
                    u.label(),
                    v.label(),
                    fu.label(),
                    fv.label(),
                ));
            }
        }
        Ok(GraphHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(g: &Graph) -> Self {
        GraphHom {
            source: g.clone(),
            target: g.clone(),
            map: g.vertices().iter().map(|&v| (v, v)).collect(),
        }
    }

    /// outer ∘ inner. The middle graphs must coincide exactly.
    pub fn compose(outer: &GraphHom, inner: &GraphHom) -> Result<GraphHom, HomError> {
        if inner.target != outer.source {
            return Err(HomError::MiddleMismatch);
        }
        Ok(GraphHom {
            source: inner.source.clone(),
            target: outer.target.clone(),
            map: inner
                .map
                .iter()
                .map(|(&v, &w)| (v, outer.map[&w]))
                .collect(),
        })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.map
    }

    /// The image of a connected subgraph of the source: mapped vertices
    /// and edges with duplicates merged. Connectedness survives taking
    /// images, so the result is again a connected subgraph (of the
    /// target).
    pub fn image_subgraph(&self, c: &ConnectedSubgraph) -> Result<ConnectedSubgraph, HomError> {
        if !c.graph().is_subgraph_of(&self.source) {
            return Err(GraphError::NotSubgraph(c.to_string()).into());
        }
        let vertices: BTreeSet<VertexId> =
            c.graph().vertices().iter().map(|v| self.map[v]).collect();
        let edges: BTreeSet<Edge> = c
            .graph()
            .edges()
            .iter()
            .map(|e| {
                let (u, v) = e.endpoints();
                Edge::new(self.map[&u], self.map[&v])
                    .expect("validated homomorphisms never collapse an edge")
            })
            .collect();
        let image = Graph::new(vertices, edges)
            .expect("image edge endpoints are image vertices");
        Ok(ConnectedSubgraph::new(image)
            .expect("the image of a connected graph is connected"))
    }

    /// The induced algebra morphism: factors map to their image
    /// subgraphs, the unit maps to the unit, everything extends
    /// linearly. Multiplicative by construction on monomials.
    pub fn apply(&self, a: &Element) -> Result<Element, HomError> {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let factors = m
                .factors()
                .iter()
                .map(|f| self.image_subgraph(f))
                .collect::<Result<Vec<_>, _>>()?;
            out.add_term(Monomial::from_factors(factors), c.clone());
        }
        Ok(out)
    }

    /// Parses the map file format: one `u -> v` record per line, `#`
    /// comments, blank lines skipped.
    pub fn parse_map(text: &str) -> Result<BTreeMap<VertexId, VertexId>, HomError> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let malformed = || HomError::Malformed {
                line: idx + 1,
                text: line.to_string(),
            };
            let (left, right) = line.split_once("->").ok_or_else(malformed)?;
            let u: u64 = left.trim().parse().map_err(|_| malformed())?;
            let v: u64 = right.trim().parse().map_err(|_| malformed())?;
            let u = VertexId::new(u)?;
            let v = VertexId::new(v)?;
            if map.insert(u, v).is_some() {
                return Err(HomError::Duplicate {
                    line: idx + 1,
                    vertex: u.label(),
                });
            }
        }
        Ok(map)
    }
}
