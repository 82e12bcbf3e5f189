//! Hopf algebra of connected subgraphs.
//!
//! Given a finite labeled graph, this crate builds the graded Hopf
//! algebra spanned by multisets of its nonempty connected subgraphs:
//! the product is multiset union, the coproduct splits each factor over
//! ordered vertex bipartitions into induced-subgraph components, and
//! the antipode follows from connectedness of the grading. On top of
//! that sit the graded dual (dual basis functionals, structure
//! constants, pairing), algebra morphisms induced by graph
//! homomorphisms, and a verification suite that exercises every axiom
//! exhaustively up to a degree cutoff.
//!
//! Monomials are kept as canonically sorted multisets, so the algebra
//! is commutative by construction; coefficients are exact rationals.

pub mod cache;
pub mod dual;
pub mod enumerate;
pub mod expr;
pub mod graph;
pub mod hom;
pub mod hopf;
pub mod records;
pub mod verify;
