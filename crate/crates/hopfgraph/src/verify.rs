//! Executable checks of the algebra laws: exhaustive over graded bases
//! up to a degree cutoff, randomized over general elements, each
//! producing a machine-readable report.
//!
//! The laws are linear or bilinear, so basis-exhaustive checks settle
//! them per degree; the randomized passes guard the linear-extension
//! plumbing. Checks draw no global state and run sequentially, so a
//! report is a pure function of (graph, cutoff, seed).

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dual::{dual_coproduct, pairing, DualElement, DualOps};
use crate::enumerate::BasisTable;
use crate::graph::{Graph, GraphError};
use crate::hom::{GraphHom, HomError};
use crate::hopf::{
    antipode_series, coproduct, coproduct_monomial, scalar_int, write_signed_sum, AntipodeTable,
    CoeffStyle, Element, Monomial, Scalar, TensorElement,
};

/// Random elements draw monomials up to this degree; products of two
/// samples then stay within degree 6, keeping coproducts cheap.
const SAMPLE_DEGREE: usize = 3;

/// One law violation: the offending input plus both sides, all in
/// canonical rendering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one check run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub graph_hash: String,
    pub cutoff: usize,
    pub seed: u64,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Accumulates cases and failures for one report. Exhaustive sweeps
/// visit bases in canonical order, so the recorded failures arrive
/// ordered; `finish` re-sorts to keep aggregation order-independent.
struct Checker {
    check: &'static str,
    graph_hash: String,
    cutoff: usize,
    seed: u64,
    cases: u64,
    failures: Vec<Failure>,
    started: Instant,
}

impl Checker {
    fn new(check: &'static str, host: &Graph, cutoff: usize, seed: u64) -> Self {
        Checker {
            check,
            graph_hash: host.content_hash(),
            cutoff,
            seed,
            cases: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    /// Counts a case; records a failure with rendered witnesses when the
    /// sides disagree. The input label is built lazily so passing cases
    /// cost no formatting.
    fn expect<T: PartialEq + fmt::Display>(
        &mut self,
        input: impl FnOnce() -> String,
        expected: &T,
        actual: &T,
    ) {
        self.cases += 1;
        if expected != actual {
            self.failures.push(Failure {
                input: input(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn finish(mut self) -> Report {
        self.failures.sort();
        Report {
            check: self.check.to_string(),
            graph_hash: self.graph_hash,
            cutoff: self.cutoff,
            seed: self.seed,
            cases: self.cases,
            failures: self.failures,
            ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

/// Three-slot tensor, used only to compare the two refinements of Δ.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct TripleTensor {
    terms: BTreeMap<(Monomial, Monomial, Monomial), Scalar>,
}

impl TripleTensor {
    fn add_term(&mut self, key: (Monomial, Monomial, Monomial), c: Scalar) {
        use num::Zero;
        let total = self.terms.remove(&key).unwrap_or_else(Scalar::zero) + c;
        if !total.is_zero() {
            self.terms.insert(key, total);
        }
    }
}

impl fmt::Display for TripleTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(
            f,
            self.terms
                .iter()
                .map(|((a, b, c), k)| (format!("{a} (x) {b} (x) {c}"), k.clone())),
            CoeffStyle::ElideOnes,
        )
    }
}

/// (Δ ⊗ id)Δ, assembled from a two-slot coproduct by refining the left
/// slot.
fn refine_left(delta: &TensorElement) -> TripleTensor {
    let mut out = TripleTensor::default();
    for (l, r, c) in delta.terms() {
        for (a, b, d) in coproduct_monomial(l).terms() {
            out.add_term((a.clone(), b.clone(), r.clone()), c * d);
        }
    }
    out
}

/// (id ⊗ Δ)Δ, refining the right slot.
fn refine_right(delta: &TensorElement) -> TripleTensor {
    let mut out = TripleTensor::default();
    for (l, r, c) in delta.terms() {
        for (a, b, d) in coproduct_monomial(r).terms() {
            out.add_term((l.clone(), a.clone(), b.clone()), c * d);
        }
    }
    out
}

/// Monomials of degree ≤ min(cutoff, SAMPLE_DEGREE), the pool random
/// elements draw from.
fn sample_pool(table: &BasisTable, cutoff: usize) -> Vec<Monomial> {
    (0..=cutoff.min(SAMPLE_DEGREE))
        .flat_map(|n| table.basis(n).monomials().to_vec())
        .collect()
}

/// 1 to 3 terms with nonzero coefficients in -3..=3.
fn random_element(rng: &mut ChaCha8Rng, pool: &[Monomial]) -> Element {
    let mut out = Element::zero();
    for _ in 0..rng.random_range(1..=3usize) {
        let m = pool[rng.random_range(0..pool.len())].clone();
        let c = loop {
            let c = rng.random_range(-3..=3i64);
            if c != 0 {
                break c;
            }
        };
        out.add_term(m, scalar_int(c));
    }
    out
}

/// Coassociativity, both counit laws, and cocommutativity on every
/// basis monomial of degree ≤ `max_degree`.
pub fn check_coalgebra(g: &Graph, max_degree: usize) -> Report {
    let mut c = Checker::new("coalgebra", g, max_degree, 0);
    let table = BasisTable::new(g.clone());
    for n in 0..=max_degree {
        for m in table.basis(n).iter() {
            let delta = coproduct_monomial(m);
            c.expect(
                || format!("coassociativity on {m}"),
                &refine_left(&delta),
                &refine_right(&delta),
            );
            let here = Element::from_monomial(m.clone());
            c.expect(
                || format!("left counit law on {m}"),
                &here,
                &delta.collapse_left_counit(),
            );
            c.expect(
                || format!("right counit law on {m}"),
                &here,
                &delta.collapse_right_counit(),
            );
            c.expect(|| format!("cocommutativity on {m}"), &delta, &delta.flip());
        }
    }
    c.finish()
}

/// Δ(ab) = Δ(a)Δ(b) and ε(ab) = ε(a)ε(b): exhaustively on basis pairs
/// with summed degree ≤ `max_degree`, then on `samples` random element
/// pairs.
pub fn check_bialgebra(g: &Graph, max_degree: usize, samples: usize, seed: u64) -> Report {
    let mut c = Checker::new("bialgebra", g, max_degree, seed);
    let table = BasisTable::new(g.clone());
    for p in 0..=max_degree {
        for q in 0..=max_degree - p {
            for m1 in table.basis(p).iter() {
                let d1 = coproduct_monomial(m1);
                for m2 in table.basis(q).iter() {
                    let prod = m1.concat(m2);
                    c.expect(
                        || format!("coproduct of product {m1} * {m2}"),
                        &coproduct_monomial(&prod),
                        &(&d1 * &coproduct_monomial(m2)),
                    );
                    let e1 = if m1.is_unit() { 1 } else { 0 };
                    let e2 = if m2.is_unit() { 1 } else { 0 };
                    c.expect(
                        || format!("counit of product {m1} * {m2}"),
                        &scalar_int(e1 * e2),
                        &Element::from_monomial(prod).counit(),
                    );
                }
            }
        }
    }
    let pool = sample_pool(&table, max_degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let a = random_element(&mut rng, &pool);
        let b = random_element(&mut rng, &pool);
        let ab = &a * &b;
        c.expect(
            || format!("coproduct of sampled product #{i}: ({a}) * ({b})"),
            &coproduct(&ab),
            &(&coproduct(&a) * &coproduct(&b)),
        );
        c.expect(
            || format!("counit of sampled product #{i}: ({a}) * ({b})"),
            &(a.counit() * b.counit()),
            &ab.counit(),
        );
    }
    c.finish()
}

/// Antipode axioms on all basis monomials of degree ≤ `max_degree`:
/// S*id = id*S = uε, agreement of the recursive and series routes,
/// S(1) = 1, S∘S = id, and multiplicativity on basis pairs.
pub fn check_hopf(g: &Graph, max_degree: usize) -> Report {
    let mut c = Checker::new("hopf", g, max_degree, 0);
    let table = BasisTable::new(g.clone());
    let antipode = AntipodeTable::new();

    c.expect(
        || "antipode of the unit".to_string(),
        &Element::one(),
        &antipode.apply(&Element::one()),
    );

    for n in 0..=max_degree {
        for m in table.basis(n).iter() {
            let here = Element::from_monomial(m.clone());
            let delta = coproduct_monomial(m);
            let ue = Element::unit(here.counit());

            let mut left = Element::zero();
            let mut right = Element::zero();
            for (l, r, k) in delta.terms() {
                let sl = &antipode.apply(&Element::from_monomial(l.clone()))
                    * &Element::from_monomial(r.clone());
                left.add_assign_scaled(&sl, k);
                let rs = &Element::from_monomial(l.clone())
                    * &antipode.apply(&Element::from_monomial(r.clone()));
                right.add_assign_scaled(&rs, k);
            }
            c.expect(|| format!("S*id = u.eps on {m}"), &ue, &left);
            c.expect(|| format!("id*S = u.eps on {m}"), &ue, &right);

            let s = antipode.apply(&here);
            c.expect(
                || format!("recursive vs series antipode on {m}"),
                &s,
                &antipode_series(&here),
            );
            c.expect(|| format!("S(S(x)) = x on {m}"), &here, &antipode.apply(&s));
        }
    }

    for p in 1..=max_degree {
        for q in 1..=max_degree.saturating_sub(p) {
            for m1 in table.basis(p).iter() {
                let s1 = antipode.apply(&Element::from_monomial(m1.clone()));
                for m2 in table.basis(q).iter() {
                    let s2 = antipode.apply(&Element::from_monomial(m2.clone()));
                    c.expect(
                        || format!("S(xy) = S(x)S(y) on {m1} * {m2}"),
                        &antipode.apply(&Element::from_monomial(m1.concat(m2))),
                        &(&s1 * &s2),
                    );
                }
            }
        }
    }
    c.finish()
}

/// Grading laws: H^(0) is spanned by the unit alone, ε vanishes on
/// positive degrees, products of basis monomials land in the basis of
/// the summed degree, and every coproduct term splits the degree with
/// both slots spanned by their graded bases.
pub fn check_grading(g: &Graph, max_degree: usize) -> Report {
    let mut c = Checker::new("grading", g, max_degree, 0);
    let table = BasisTable::new(g.clone());

    let zero = table.basis(0);
    c.expect(|| "dimension of degree 0".to_string(), &1usize, &zero.len());
    if let Some(m0) = zero.monomials().first() {
        c.expect(|| "degree-0 basis monomial".to_string(), &Monomial::unit(), m0);
    }

    for n in 0..=max_degree {
        for m in table.basis(n).iter() {
            if n > 0 {
                c.expect(
                    || format!("counit vanishes on {m}"),
                    &scalar_int(0),
                    &Element::from_monomial(m.clone()).counit(),
                );
            }
            for (l, r, _) in coproduct_monomial(m).terms() {
                c.expect(
                    || format!("coproduct degree split of {m} at {l} (x) {r}"),
                    &n,
                    &(l.degree() + r.degree()),
                );
                c.expect(
                    || format!("coproduct factors of {m} stay in basis: {l} (x) {r}"),
                    &true,
                    &(table.basis(l.degree()).contains(l) && table.basis(r.degree()).contains(r)),
                );
            }
        }
    }

    for p in 0..=max_degree {
        for q in 0..=max_degree - p {
            for m1 in table.basis(p).iter() {
                for m2 in table.basis(q).iter() {
                    let prod = m1.concat(m2);
                    c.expect(
                        || format!("product degree of {m1} * {m2}"),
                        &(p + q),
                        &prod.degree(),
                    );
                    c.expect(
                        || format!("product of {m1} and {m2} lies in graded basis"),
                        &true,
                        &table.basis(p + q).contains(&prod),
                    );
                }
            }
        }
    }
    c.finish()
}

/// Both adjointness identities between the two sides of the pairing,
/// plus unit, commutativity, and associativity laws of the dual
/// product, over basis tuples within the cutoff.
pub fn check_duality(g: &Graph, max_degree: usize) -> Report {
    let mut c = Checker::new("duality", g, max_degree, 0);
    let table = BasisTable::new(g.clone());
    let ops = DualOps::new(&table);

    // ⟨Z_F1 · Z_F2, F⟩ = ⟨Z_F1 ⊗ Z_F2, Δ(F)⟩.
    for p in 0..=max_degree {
        for q in 0..=max_degree - p {
            for f1 in table.basis(p).iter() {
                let z1 = DualElement::basis(f1.clone());
                for f2 in table.basis(q).iter() {
                    let z2 = DualElement::basis(f2.clone());
                    let z = ops.product(&z1, &z2);
                    for f in table.basis(p + q).iter() {
                        c.expect(
                            || format!("product adjointness at ({f1}, {f2}; {f})"),
                            &coproduct_monomial(f).coefficient(f1, f2),
                            &pairing(&z, &Element::from_monomial(f.clone())),
                        );
                    }
                }
            }
        }
    }

    // ⟨Δ*(Z_F), F1 ⊗ F2⟩ = ⟨Z_F, F1 · F2⟩.
    for s in 0..=max_degree {
        for f in table.basis(s).iter() {
            let dc = dual_coproduct(&DualElement::basis(f.clone()));
            for p in 0..=max_degree {
                for q in 0..=max_degree - p {
                    for f1 in table.basis(p).iter() {
                        for f2 in table.basis(q).iter() {
                            let rhs = if &f1.concat(f2) == f {
                                scalar_int(1)
                            } else {
                                scalar_int(0)
                            };
                            c.expect(
                                || format!("coproduct adjointness at ({f}; {f1}, {f2})"),
                                &rhs,
                                &dc.coefficient(f1, f2),
                            );
                        }
                    }
                }
            }
        }
    }

    // Unit law; degree-0 factors in the laws below reduce to it.
    let unit = DualElement::unit();
    for s in 0..=max_degree {
        for f in table.basis(s).iter() {
            let z = DualElement::basis(f.clone());
            c.expect(
                || format!("left dual unit law on Z[{f}]"),
                &z,
                &ops.product(&unit, &z),
            );
            c.expect(
                || format!("right dual unit law on Z[{f}]"),
                &z,
                &ops.product(&z, &unit),
            );
        }
    }

    for p in 1..=max_degree {
        for q in 1..=max_degree.saturating_sub(p) {
            for f1 in table.basis(p).iter() {
                let z1 = DualElement::basis(f1.clone());
                for f2 in table.basis(q).iter() {
                    let z2 = DualElement::basis(f2.clone());
                    c.expect(
                        || format!("dual commutativity on (Z[{f1}], Z[{f2}])"),
                        &ops.product(&z1, &z2),
                        &ops.product(&z2, &z1),
                    );
                    for r in 1..=max_degree.saturating_sub(p + q) {
                        for f3 in table.basis(r).iter() {
                            let z3 = DualElement::basis(f3.clone());
                            c.expect(
                                || format!("dual associativity on (Z[{f1}], Z[{f2}], Z[{f3}])"),
                                &ops.product(&ops.product(&z1, &z2), &z3),
                                &ops.product(&z1, &ops.product(&z2, &z3)),
                            );
                        }
                    }
                }
            }
        }
    }
    c.finish()
}

/// Functoriality on sampled elements over f's source: H(f) is
/// multiplicative, H(id) is the identity, and H(g∘f) = H(g)∘H(f).
/// Errors if the two morphisms do not compose.
pub fn check_functor(
    f: &GraphHom,
    g: &GraphHom,
    samples: usize,
    seed: u64,
) -> Result<Report, HomError> {
    let composed = GraphHom::compose(g, f)?;
    let identity = GraphHom::identity(f.source());
    let mut c = Checker::new("functor", f.source(), SAMPLE_DEGREE, seed);
    let table = BasisTable::new(f.source().clone());
    let pool = sample_pool(&table, SAMPLE_DEGREE);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let a = random_element(&mut rng, &pool);
        let b = random_element(&mut rng, &pool);
        c.expect(
            || format!("multiplicativity on sample #{i}: ({a}) * ({b})"),
            &f.apply(&(&a * &b))?,
            &(&f.apply(&a)? * &f.apply(&b)?),
        );
        c.expect(
            || format!("identity morphism on sample #{i}: {a}"),
            &a,
            &identity.apply(&a)?,
        );
        c.expect(
            || format!("composition on sample #{i}: {a}"),
            &composed.apply(&a)?,
            &g.apply(&f.apply(&a)?)?,
        );
    }
    Ok(c.finish())
}

/// For every basis monomial over `g_sub`, each coproduct term stays
/// inside the span generated by `g_sub`'s connected subgraphs. Errors
/// if `g_sub` is not a subgraph of `g`.
pub fn check_subcoalgebra(g: &Graph, g_sub: &Graph, max_degree: usize) -> Result<Report, GraphError> {
    if !g_sub.is_subgraph_of(g) {
        return Err(GraphError::NotSubgraph(format!(
            "{g_sub} is not a subgraph of {g}"
        )));
    }
    let mut c = Checker::new("subcoalgebra", g, max_degree, 0);
    let sub_table = BasisTable::new(g_sub.clone());
    for n in 0..=max_degree {
        for m in sub_table.basis(n).iter() {
            for (l, r, _) in coproduct_monomial(m).terms() {
                c.expect(
                    || format!("coproduct of {m} stays over the subgraph at {l} (x) {r}"),
                    &true,
                    &(sub_table.basis(l.degree()).contains(l)
                        && sub_table.basis(r.degree()).contains(r)),
                );
            }
        }
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn square() -> Graph {
        Graph::from_parts([], [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_parts([], [(1, 2), (2, 3)]).unwrap()
    }

    fn single() -> Graph {
        Graph::from_parts([7], []).unwrap()
    }

    fn assert_passes(r: &Report) {
        assert!(
            r.passed(),
            "{} failed {} of {} cases; first: {:?}",
            r.check,
            r.failures.len(),
            r.cases,
            r.failures.first()
        );
        assert!(r.cases > 0);
    }

    #[test]
    fn coalgebra_passes_on_small_graphs() {
        assert_passes(&check_coalgebra(&square(), 3));
        assert_passes(&check_coalgebra(&path3(), 3));
        // Repeated-factor monomials over one vertex exercise the
        // binomial-type coproduct.
        assert_passes(&check_coalgebra(&single(), 4));
    }

    #[test]
    fn bialgebra_passes_and_is_seed_deterministic() {
        let a = check_bialgebra(&path3(), 3, 25, 11);
        let b = check_bialgebra(&path3(), 3, 25, 11);
        assert_passes(&a);
        assert_eq!(a.cases, b.cases);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.seed, 11);
    }

    #[test]
    fn hopf_passes_on_path() {
        let r = check_hopf(&path3(), 3);
        assert_passes(&r);
    }

    #[test]
    fn grading_passes_on_square() {
        assert_passes(&check_grading(&square(), 3));
    }

    #[test]
    fn duality_passes_on_path() {
        assert_passes(&check_duality(&path3(), 3));
    }

    #[test]
    fn functor_checks_rotation_and_embedding() {
        let c4 = square();
        let rotation = GraphHom::new(
            c4.clone(),
            c4.clone(),
            BTreeMap::from_iter(
                [(1u64, 2u64), (2, 3), (3, 4), (4, 1)]
                    .map(|(a, b)| (crate::graph::VertexId::new(a).unwrap(),
                                   crate::graph::VertexId::new(b).unwrap())),
            ),
        )
        .unwrap();
        let r = check_functor(&rotation, &rotation, 20, 5).unwrap();
        assert_passes(&r);

        let p2 = Graph::from_parts([], [(1, 2)]).unwrap();
        let embed = GraphHom::new(
            p2,
            c4,
            BTreeMap::from_iter([(1u64, 1u64), (2, 2)].map(|(a, b)| {
                (crate::graph::VertexId::new(a).unwrap(), crate::graph::VertexId::new(b).unwrap())
            })),
        )
        .unwrap();
        let r = check_functor(&embed, &rotation, 20, 5).unwrap();
        assert_passes(&r);
    }

    #[test]
    fn functor_rejects_non_composable_pair() {
        let p2 = Graph::from_parts([], [(1, 2)]).unwrap();
        let id2 = GraphHom::identity(&p2);
        let id3 = GraphHom::identity(&path3());
        assert!(matches!(
            check_functor(&id2, &id3, 5, 0),
            Err(HomError::MiddleMismatch)
        ));
    }

    #[test]
    fn subcoalgebra_passes_for_edge_and_path_in_square() {
        let c4 = square();
        let edge = Graph::from_parts([], [(1, 2)]).unwrap();
        let path = Graph::from_parts([], [(1, 2), (2, 3)]).unwrap();
        assert_passes(&check_subcoalgebra(&c4, &edge, 4).unwrap());
        assert_passes(&check_subcoalgebra(&c4, &path, 4).unwrap());
        assert_passes(&check_subcoalgebra(&c4, &c4, 2).unwrap());
    }

    #[test]
    fn subcoalgebra_rejects_non_subgraph() {
        let c4 = square();
        let other = Graph::from_parts([], [(1, 5)]).unwrap();
        assert!(matches!(
            check_subcoalgebra(&c4, &other, 3),
            Err(GraphError::NotSubgraph(_))
        ));
    }

    #[test]
    fn report_serializes_with_stable_fields() {
        let mut r = check_coalgebra(&single(), 1);
        r.ms = 0;
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"check":"coalgebra","graph_hash":""#));
        assert!(json.contains(r#""cutoff":1"#));
        assert!(json.contains(r#""seed":0"#));
        assert!(json.contains(r#""failures":[]"#));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn failures_carry_witnesses_and_sort() {
        let g = single();
        let mut c = Checker::new("probe", &g, 1, 0);
        c.expect(|| "beta".to_string(), &2usize, &3usize);
        c.expect(|| "alpha".to_string(), &1usize, &1usize);
        c.expect(|| "alpha".to_string(), &5usize, &7usize);
        let r = c.finish();
        assert_eq!(r.cases, 3);
        assert!(!r.passed());
        assert_eq!(
            r.failures,
            vec![
                Failure {
                    input: "alpha".to_string(),
                    expected: "5".to_string(),
                    actual: "7".to_string(),
                },
                Failure {
                    input: "beta".to_string(),
                    expected: "2".to_string(),
                    actual: "3".to_string(),
                },
            ]
        );
    }

    #[test]
    fn triple_tensor_renders_like_tensors() {
        let m = Monomial::unit();
        let mut t = TripleTensor::default();
        t.add_term((m.clone(), m.clone(), m.clone()), scalar_int(2));
        assert_eq!(t.to_string(), "2 1 (x) 1 (x) 1");
        t.add_term((m.clone(), m.clone(), m), scalar_int(-2));
        assert_eq!(t.to_string(), "0");
    }
}
