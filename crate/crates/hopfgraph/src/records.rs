//! Structured record forms of graphs, monomials, and term lists, used
//! for `--json` output and the basis cache. Coefficients travel as
//! exact strings because JSON numbers cannot hold big rationals.

use serde::{Deserialize, Serialize};

use crate::dual::{DualElement, DualTensorElement};
use crate::graph::{ConnectedSubgraph, Edge, Graph, GraphError, VertexId};
use crate::hopf::{Element, Monomial, TensorElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphRecord {
    pub vertices: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
}

impl SubgraphRecord {
    pub fn from_subgraph(c: &ConnectedSubgraph) -> Self {
        let (vertices, edges) = c.graph().canonical_key();
        SubgraphRecord { vertices, edges }
    }

    /// Rebuilds and revalidates: labels, edge endpoints, connectivity.
    pub fn to_subgraph(&self) -> Result<ConnectedSubgraph, GraphError> {
        let vertices = self
            .vertices
            .iter()
            .map(|&v| VertexId::new(v))
            .collect::<Result<Vec<_>, _>>()?;
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| Edge::new(VertexId::new(u)?, VertexId::new(v)?))
            .collect::<Result<Vec<_>, _>>()?;
        ConnectedSubgraph::new(Graph::new(vertices, edges)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub factors: Vec<SubgraphRecord>,
}

impl MonomialRecord {
    pub fn from_monomial(m: &Monomial) -> Self {
        MonomialRecord {
            factors: m.factors().iter().map(SubgraphRecord::from_subgraph).collect(),
        }
    }

    pub fn to_monomial(&self) -> Result<Monomial, GraphError> {
        Ok(Monomial::from_factors(
            self.factors
                .iter()
                .map(|f| f.to_subgraph())
                .collect::<Result<Vec<_>, _>>()?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub factors: Vec<SubgraphRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermRecord {
    pub coeff: String,
    pub lhs: Vec<SubgraphRecord>,
    pub rhs: Vec<SubgraphRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualTermRecord {
    pub coeff: String,
    pub functional: Vec<SubgraphRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualTensorTermRecord {
    pub coeff: String,
    pub lhs: Vec<SubgraphRecord>,
    pub rhs: Vec<SubgraphRecord>,
}

fn factor_records(m: &Monomial) -> Vec<SubgraphRecord> {
    m.factors().iter().map(SubgraphRecord::from_subgraph).collect()
}

/// Terms in canonical order, mirroring the text rendering one for one.
pub fn element_records(a: &Element) -> Vec<TermRecord> {
    a.terms()
        .map(|(m, c)| TermRecord {
            coeff: c.to_string(),
            factors: factor_records(m),
        })
        .collect()
}

pub fn tensor_records(t: &TensorElement) -> Vec<TensorTermRecord> {
    t.terms()
        .map(|(l, r, c)| TensorTermRecord {
            coeff: c.to_string(),
            lhs: factor_records(l),
            rhs: factor_records(r),
        })
        .collect()
}

pub fn dual_records(z: &DualElement) -> Vec<DualTermRecord> {
    z.terms()
        .map(|(f, c)| DualTermRecord {
            coeff: c.to_string(),
            functional: factor_records(f),
        })
        .collect()
}

pub fn dual_tensor_records(t: &DualTensorElement) -> Vec<DualTensorTermRecord> {
    t.terms()
        .map(|(l, r, c)| DualTensorTermRecord {
            coeff: c.to_string(),
            lhs: factor_records(l),
            rhs: factor_records(r),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{antipode_recursive, scalar_int};

    fn e12() -> ConnectedSubgraph {
        let g = Graph::from_parts([], [(1, 2)]).unwrap();
        ConnectedSubgraph::new(g).unwrap()
    }

    #[test]
    fn subgraph_record_roundtrip() {
        let rec = SubgraphRecord::from_subgraph(&e12());
        assert_eq!(rec.vertices, vec![1, 2]);
        assert_eq!(rec.edges, vec![(1, 2)]);
        assert_eq!(rec.to_subgraph().unwrap(), e12());

        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"vertices":[1,2],"edges":[[1,2]]}"#);
        let back: SubgraphRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn to_subgraph_validates() {
        let dangling = SubgraphRecord {
            vertices: vec![1],
            edges: vec![(1, 2)],
        };
        assert!(dangling.to_subgraph().is_err());
        let disconnected = SubgraphRecord {
            vertices: vec![1, 2],
            edges: vec![],
        };
        assert!(disconnected.to_subgraph().is_err());
    }

    #[test]
    fn element_records_mirror_terms() {
        let a = antipode_recursive(&Element::from_monomial(Monomial::single(e12())));
        let records = element_records(&a);
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].coeff, "-1");
        assert_eq!(records[0].factors.len(), 1);
        assert_eq!(records[1].coeff, "2");
        assert_eq!(records[1].factors.len(), 2);
    }

    #[test]
    fn monomial_record_roundtrip() {
        let m = Monomial::from_factors([e12(), e12()]);
        let rec = MonomialRecord::from_monomial(&m);
        assert_eq!(rec.to_monomial().unwrap(), m);
        assert_eq!(
            rec.to_monomial().unwrap(),
            serde_json::from_str::<MonomialRecord>(&serde_json::to_string(&rec).unwrap())
                .unwrap()
                .to_monomial()
                .unwrap()
        );
    }

    #[test]
    fn unit_coefficient_is_exact_string() {
        let a = Element::unit(scalar_int(3)).scale(&num::BigRational::new(1.into(), 2.into()));
        let records = element_records(&a);
        assert_eq!(records[0].coeff, "3/2");
        assert!(records[0].factors.is_empty());
    }
}
