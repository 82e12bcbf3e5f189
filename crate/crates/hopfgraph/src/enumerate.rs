//! Enumeration of the generating set (every nonempty connected
//! subgraph of the host) and of the graded monomial bases built from
//! it.
//!
//! Connected subgraphs on one vertex are just the vertices; every
//! larger one is determined by a connected, nonempty edge subset
//! together with its endpoints. Edge subsets are grown one incident
//! edge at a time with an exclusive-extension rule that produces each
//! subset exactly once. Exponential blowup is accepted; the target is
//! desk-scale graphs.

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex, OnceLock};

use crate::graph::{ConnectedSubgraph, Edge, Graph, VertexId};
use crate::hopf::Monomial;

/// All nonempty connected subgraphs with at most `max_vertices`
/// vertices (all of them when `None`), sorted by the canonical order.
pub fn connected_subgraphs(g: &Graph, max_vertices: Option<usize>) -> Vec<ConnectedSubgraph> {
    let bound = max_vertices.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    for &v in g.vertices() {
        out.push(ConnectedSubgraph::single_vertex(v));
    }

    let edges: Vec<Edge> = g.edges().iter().copied().collect();
    // Adjacency on edge indices: two edges are adjacent when they share
    // an endpoint, so connected edge subsets are exactly the connected
    // sets of this derived graph.
    let adjacent: Vec<Vec<usize>> = edges
        .iter()
        .map(|&e| {
            edges
                .iter()
                .enumerate()
                .filter(|&(_, &other)| other != e && e.shares_endpoint(other))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();

    let mut subset = Vec::new();
    for anchor in 0..edges.len() {
        subset.push(anchor);
        let extension: BTreeSet<usize> =
            adjacent[anchor].iter().copied().filter(|&j| j > anchor).collect();
        let mut vertices = BTreeSet::new();
        let (u, v) = edges[anchor].endpoints();
        vertices.insert(u);
        vertices.insert(v);
        if vertices.len() <= bound {
            grow(
                &edges, &adjacent, anchor, &mut subset, extension, &vertices, bound, &mut out,
            );
        }
        subset.pop();
    }

    out.sort();
    out
}

/// Emits the current subset, then extends it by each candidate edge in
/// turn. A candidate is consumed at this level before recursing and the
/// recursion may only add edges that were not already adjacent to the
/// subset (exclusive extension), so every connected edge subset whose
/// minimum index is `anchor` appears exactly once.
#[allow(clippy::too_many_arguments)]
fn grow(
    edges: &[Edge],
    adjacent: &[Vec<usize>],
    anchor: usize,
    subset: &mut Vec<usize>,
    mut extension: BTreeSet<usize>,
    vertices: &BTreeSet<VertexId>,
    bound: usize,
    out: &mut Vec<ConnectedSubgraph>,
) {
    out.push(subgraph_of_edges(edges, subset, vertices));
    let reachable: BTreeSet<usize> = subset
        .iter()
        .flat_map(|&i| adjacent[i].iter().copied())
        .collect();
    while let Some(&next) = extension.iter().next() {
        extension.remove(&next);
        let mut next_vertices = vertices.clone();
        let (u, v) = edges[next].endpoints();
        next_vertices.insert(u);
        next_vertices.insert(v);
        if next_vertices.len() > bound {
            continue;
        }
        let mut next_extension = extension.clone();
        for &j in &adjacent[next] {
            if j > anchor && !subset.contains(&j) && !reachable.contains(&j) {
                next_extension.insert(j);
            }
        }
        subset.push(next);
        grow(
            edges,
            adjacent,
            anchor,
            subset,
            next_extension,
            &next_vertices,
            bound,
            out,
        );
        subset.pop();
    }
}

fn subgraph_of_edges(
    edges: &[Edge],
    subset: &[usize],
    vertices: &BTreeSet<VertexId>,
) -> ConnectedSubgraph {
    let g = Graph::new(
        vertices.iter().copied(),
        subset.iter().map(|&i| edges[i]),
    )
    .expect("edge endpoints were collected into the vertex set");
    ConnectedSubgraph::new(g).expect("grown edge subsets are connected")
}

/// The degree-`n` slice of the monomial basis: all multisets of
/// connected subgraphs with total vertex count `n`, sorted and
/// duplicate-free. Degree 0 holds exactly the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    degree: usize,
    monomials: Vec<Monomial>,
}

impl GradedBasis {
    pub(crate) fn from_sorted(degree: usize, monomials: Vec<Monomial>) -> Self {
        debug_assert!(monomials.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(monomials.iter().all(|m| m.degree() == degree));
        GradedBasis { degree, monomials }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.monomials.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.binary_search(m).is_ok()
    }
}

/// Enumerates the degree-`n` basis by multiset composition: generators
/// are taken in degree order with non-decreasing index, which hits each
/// multiset exactly once.
pub fn graded_basis(g: &Graph, degree: usize) -> GradedBasis {
    let mut generators = connected_subgraphs(g, Some(degree));
    generators.sort_by_key(|c| c.vertex_count());
    let mut monomials = Vec::new();
    let mut stack = Vec::new();
    compose(&generators, 0, degree, &mut stack, &mut monomials);
    monomials.sort();
    GradedBasis::from_sorted(degree, monomials)
}

fn compose(
    generators: &[ConnectedSubgraph],
    from: usize,
    remaining: usize,
    stack: &mut Vec<ConnectedSubgraph>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial::from_factors(stack.iter().cloned()));
        return;
    }
    for i in from..generators.len() {
        let d = generators[i].vertex_count();
        if d > remaining {
            // Generators are sorted by degree, so no later one fits.
            break;
        }
        stack.push(generators[i].clone());
        compose(generators, i, remaining - d, stack, out);
        stack.pop();
    }
}

pub fn graded_dimension(g: &Graph, degree: usize) -> usize {
    graded_basis(g, degree).len()
}

/// Memoized access to the generating set and the graded bases of one
/// host graph. Fills are idempotent (enumeration is deterministic), so
/// concurrent readers at worst recompute a slice that is then dropped.
pub struct BasisTable {
    host: Graph,
    generators: OnceLock<Arc<Vec<ConnectedSubgraph>>>,
    bases: Mutex<std::collections::BTreeMap<usize, Arc<GradedBasis>>>,
}

impl BasisTable {
    pub fn new(host: Graph) -> Self {
        BasisTable {
            host,
            generators: OnceLock::new(),
            bases: Mutex::new(Default::default()),
        }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    /// The full generating set, computed once.
    pub fn generators(&self) -> Arc<Vec<ConnectedSubgraph>> {
        self.generators
            .get_or_init(|| Arc::new(connected_subgraphs(&self.host, None)))
            .clone()
    }

    pub fn basis(&self, degree: usize) -> Arc<GradedBasis> {
        if let Some(b) = self.bases.lock().unwrap().get(&degree) {
            return b.clone();
        }
        let computed = Arc::new(graded_basis(&self.host, degree));
        self.bases
            .lock()
            .unwrap()
            .entry(degree)
            .or_insert(computed)
            .clone()
    }

    pub fn dimension(&self, degree: usize) -> usize {
        self.basis(degree).len()
    }

    /// Pre-fills the table with externally validated data (the basis
    /// cache). Entries already present win, keeping fills idempotent.
    pub(crate) fn seed(
        &self,
        generators: Option<Vec<ConnectedSubgraph>>,
        bases: impl IntoIterator<Item = GradedBasis>,
    ) {
        if let Some(generators) = generators {
            let _ = self.generators.set(Arc::new(generators));
        }
        let mut map = self.bases.lock().unwrap();
        for basis in bases {
            map.entry(basis.degree()).or_insert_with(|| Arc::new(basis));
        }
    }

}
