//! The Hopf algebra on multisets of connected subgraphs.
//!
//! Monomials are canonically sorted multisets of [`ConnectedSubgraph`]
//! factors, so the algebra is the free commutative (polynomial) algebra
//! on the generators. The coproduct splits each factor over all ordered
//! vertex bipartitions into induced-subgraph components, the counit
//! reads off the unit coefficient, and the antipode comes in two
//! independent forms (a memoized recursion and a convolution series)
//! that are checked against each other.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex};

use num::{BigRational, One, Signed, Zero};

use crate::graph::{ConnectedSubgraph, Graph, GraphError, VertexId};

/// Exact coefficient type. Every structure constant arising from the
/// algebra itself is an integer; rationals exist for user input.
pub type Scalar = BigRational;

pub fn scalar_int(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

/// A multiset of connected subgraphs, stored as a sorted factor list.
/// The empty multiset is the unit. `Ord` is shortlex: fewer factors
/// first, then lexicographic on the factor list; this is the canonical
/// order behind every basis listing and rendering.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<ConnectedSubgraph>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    /// Normalizes a word (ordered factor list) into a monomial by
    /// sorting. Unordered input is equally fine.
    pub fn from_factors(factors: impl IntoIterator<Item = ConnectedSubgraph>) -> Self {
        let mut factors: Vec<_> = factors.into_iter().collect();
        factors.sort();
        Monomial { factors }
    }

    pub fn single(factor: ConnectedSubgraph) -> Self {
        Monomial {
            factors: vec![factor],
        }
    }

    /// One factor per connected component of `g`; the unit for the
    /// empty graph.
    pub fn from_components_of(g: &Graph) -> Self {
        Monomial::from_factors(g.connected_components())
    }

    pub fn factors(&self) -> &[ConnectedSubgraph] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total vertex count with multiplicity; the grading.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.vertex_count()).sum()
    }

    /// Number of factors with multiplicity.
    pub fn breadth(&self) -> usize {
        self.factors.len()
    }

    /// Multiset union; the monomial-level product.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        Monomial::from_factors(self.factors.iter().chain(&other.factors).cloned())
    }

    /// Checks that every factor lives inside `host`.
    pub fn validate_in(&self, host: &Graph) -> Result<(), GraphError> {
        for factor in &self.factors {
            if !factor.graph().is_subgraph_of(host) {
                return Err(GraphError::NotSubgraph(factor.to_string()));
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.factors
            .len()
            .cmp(&other.factors.len())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// A finite linear combination of monomials. Zero coefficients are
/// never stored, so equality is plain term-by-term comparison.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    /// k times the unit monomial.
    pub fn unit(k: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(Monomial::unit(), k);
        e
    }

    pub fn one() -> Self {
        Element::unit(Scalar::one())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_term(m, Scalar::one());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// self += k · other.
    pub fn add_assign_scaled(&mut self, other: &Element, k: &Scalar) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * k);
        }
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_assign_scaled(self, k);
        out
    }

    /// Coefficient of the unit monomial; the counit.
    pub fn counit(&self) -> Scalar {
        self.coefficient(&Monomial::unit())
    }

    /// Largest degree among the stored monomials; 0 for the zero
    /// element.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// The part of degree exactly `n`.
    pub fn component(&self, n: usize) -> Element {
        Element::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn validate_in(&self, host: &Graph) -> Result<(), GraphError> {
        for m in self.terms.keys() {
            m.validate_in(host)?;
        }
        Ok(())
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    /// Bilinear extension of multiset union.
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.concat(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(
            f,
            self.terms.iter().map(|(m, c)| {
                let body = if m.is_unit() {
                    String::new()
                } else {
                    m.to_string()
                };
                (body, c.clone())
            }),
            CoeffStyle::ElideOnesPositive,
        )
    }
}

/// A finite linear combination of monomial pairs; the target of the
/// coproduct. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    /// 1 ⊗ 1.
    pub fn one() -> Self {
        TensorElement::pure(Monomial::unit(), Monomial::unit())
    }

    pub fn pure(left: Monomial, right: Monomial) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(left, right, Scalar::one());
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &Scalar)> + '_ {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn coefficient(&self, left: &Monomial, right: &Monomial) -> Scalar {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coefficient_sum(&self) -> Scalar {
        self.terms.values().sum()
    }

    /// Swaps the two slots of every term.
    pub fn flip(&self) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(r.clone(), l.clone(), c.clone());
        }
        out
    }

    /// Multiplies the two slots together; the map a⊗b ↦ a·b.
    pub fn collapse_product(&self) -> Element {
        let mut out = Element::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(l.concat(r), c.clone());
        }
        out
    }

    /// Applies the counit to the left slot and collapses k⊗H onto H.
    pub fn collapse_left_counit(&self) -> Element {
        let mut out = Element::zero();
        for ((l, r), c) in &self.terms {
            if l.is_unit() {
                out.add_term(r.clone(), c.clone());
            }
        }
        out
    }

    /// Applies the counit to the right slot and collapses H⊗k onto H.
    pub fn collapse_right_counit(&self) -> Element {
        let mut out = Element::zero();
        for ((l, r), c) in &self.terms {
            if r.is_unit() {
                out.add_term(l.clone(), c.clone());
            }
        }
        out
    }
}

impl AddAssign<&TensorElement> for TensorElement {
    fn add_assign(&mut self, rhs: &TensorElement) {
        for ((l, r), c) in &rhs.terms {
            self.add_term(l.clone(), r.clone(), c.clone());
        }
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), c) in &rhs.terms {
            out.add_term(l.clone(), r.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &TensorElement {
    type Output = TensorElement;
    /// Slot-wise product; the algebra structure on H ⊗ H.
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &rhs.terms {
                out.add_term(l1.concat(l2), r1.concat(r2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(
            f,
            self.terms
                .iter()
                .map(|((l, r), c)| (format!("{l} (x) {r}"), c.clone())),
            CoeffStyle::ElideOnes,
        )
    }
}

/// Coproduct of a single connected subgraph: one term per ordered
/// bipartition of its vertex set, with each side collapsed to the
/// multiset of components of the induced subgraph.
fn coproduct_subgraph(factor: &ConnectedSubgraph) -> TensorElement {
    let g = factor.graph();
    let verts: Vec<VertexId> = g.vertices().iter().copied().collect();
    let n = verts.len();
    assert!(
        n < 63,
        "bipartition enumeration is limited to 62 vertices per factor"
    );
    let mut out = TensorElement::zero();
    for mask in 0u64..(1u64 << n) {
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for (i, &v) in verts.iter().enumerate() {
            if mask & (1u64 << i) != 0 {
                left.insert(v);
            } else {
                right.insert(v);
            }
        }
        out.add_term(
            Monomial::from_components_of(&g.induced_in(&left)),
            Monomial::from_components_of(&g.induced_in(&right)),
            Scalar::one(),
        );
    }
    out
}

/// Coproduct of a monomial: the slot-wise product of its factors'
/// coproducts. Δ(1) = 1⊗1.
pub fn coproduct_monomial(m: &Monomial) -> TensorElement {
    m.factors()
        .iter()
        .fold(TensorElement::one(), |acc, factor| {
            &acc * &coproduct_subgraph(factor)
        })
}

/// Linear extension of [`coproduct_monomial`].
pub fn coproduct(a: &Element) -> TensorElement {
    let mut out = TensorElement::zero();
    for (m, c) in a.terms() {
        let delta = coproduct_monomial(m);
        for (l, r, d) in delta.terms() {
            out.add_term(l.clone(), r.clone(), c * d);
        }
    }
    out
}

/// A linear self-map of the algebra, the raw material of convolution.
/// Linearity is a promise checked by tests, not enforced by the type.
pub type EndoMap = Arc<dyn Fn(&Element) -> Element + Send + Sync>;

pub fn identity_map() -> EndoMap {
    Arc::new(|a: &Element| a.clone())
}

/// uε, the unit of the convolution algebra.
pub fn unit_counit_map() -> EndoMap {
    Arc::new(|a: &Element| Element::unit(a.counit()))
}

/// (f*g)(x) = multiply ∘ (f⊗g) ∘ Δ(x).
pub fn convolve(f: &EndoMap, g: &EndoMap) -> EndoMap {
    let f = Arc::clone(f);
    let g = Arc::clone(g);
    Arc::new(move |a: &Element| {
        let mut out = Element::zero();
        for (l, r, c) in coproduct(a).terms() {
            let prod = &f(&Element::from_monomial(l.clone())) * &g(&Element::from_monomial(r.clone()));
            out.add_assign_scaled(&prod, c);
        }
        out
    })
}

/// Wraps a linear map with a per-monomial cache. Nested convolutions
/// re-evaluate their factors on the same monomials over and over; the
/// cache turns that from exponential to linear in the closure size.
/// Only sound for linear maps, which is all an [`EndoMap`] may be.
pub fn memoized(f: EndoMap) -> EndoMap {
    let cache: Arc<Mutex<HashMap<Monomial, Element>>> = Arc::new(Mutex::new(HashMap::new()));
    Arc::new(move |a: &Element| {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let hit = cache.lock().unwrap().get(m).cloned();
            let value = match hit {
                Some(v) => v,
                None => {
                    let v = f(&Element::from_monomial(m.clone()));
                    cache.lock().unwrap().insert(m.clone(), v.clone());
                    v
                }
            };
            out.add_assign_scaled(&value, c);
        }
        out
    })
}

/// Memoized antipode table. The recursion revisits the same lower-degree
/// monomials constantly, so entries are cached; they are deterministic,
/// hence a concurrent double-fill writes equal values.
#[derive(Default)]
pub struct AntipodeTable {
    memo: Mutex<HashMap<Monomial, Element>>,
}

impl AntipodeTable {
    pub fn new() -> Self {
        AntipodeTable::default()
    }

    pub fn apply(&self, a: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            out.add_assign_scaled(&self.of_monomial(m), c);
        }
        out
    }

    /// S(x) = −x − Σ S(x′)·x″ over the coproduct terms with both slots
    /// of degree ≥ 1. Terminates because the left slot strictly drops
    /// in degree.
    fn of_monomial(&self, m: &Monomial) -> Element {
        if m.is_unit() {
            return Element::one();
        }
        if let Some(hit) = self.memo.lock().unwrap().get(m) {
            return hit.clone();
        }
        let mut acc = -&Element::from_monomial(m.clone());
        for (l, r, c) in coproduct_monomial(m).terms() {
            if l.degree() == 0 || r.degree() == 0 {
                continue;
            }
            let middle = &self.of_monomial(l) * &Element::from_monomial(r.clone());
            acc.add_assign_scaled(&middle, &-c.clone());
        }
        self.memo.lock().unwrap().insert(m.clone(), acc.clone());
        acc
    }
}

/// Antipode via the memoized recursion.
pub fn antipode_recursive(a: &Element) -> Element {
    AntipodeTable::new().apply(a)
}

/// An antipode endomap sharing one memo table across calls.
pub fn antipode_map() -> EndoMap {
    let table = Arc::new(AntipodeTable::new());
    Arc::new(move |a: &Element| table.apply(a))
}

/// Antipode via the convolution series Σ_{k≥0} (uε − id)^{*k}, truncated
/// at the maximum degree present: uε − id kills degree 0 and the
/// coproduct respects the grading, so higher convolution powers vanish
/// on the input.
pub fn antipode_series(a: &Element) -> Element {
    let cutoff = a.max_degree();
    let ueps = unit_counit_map();
    let id = identity_map();
    let step: EndoMap = Arc::new(move |x: &Element| &ueps(x) - &id(x));
    let mut total = Element::zero();
    let mut power = unit_counit_map();
    for k in 0..=cutoff {
        total += &power(a);
        if k < cutoff {
            power = memoized(convolve(&step, &power));
        }
    }
    total
}

pub(crate) enum CoeffStyle {
    /// Skip magnitude-1 coefficients on positive terms only, so `{1}`
    /// carries no coefficient but a negated term reads `-1 {1}`
    /// (element rendering).
    ElideOnesPositive,
    /// Skip magnitude-1 coefficients everywhere (tensor and dual
    /// renderings).
    ElideOnes,
}

/// Shared renderer for signed sums: terms joined by ` + ` / ` - `, a
/// bare `-` on a leading negative term, `0` for the empty sum. An empty
/// body stands for the unit monomial and prints as the coefficient
/// alone.
pub(crate) fn write_signed_sum<I>(
    f: &mut fmt::Formatter<'_>,
    terms: I,
    style: CoeffStyle,
) -> fmt::Result
where
    I: Iterator<Item = (String, Scalar)>,
{
    let mut wrote = false;
    for (body, coeff) in terms {
        if wrote {
            f.write_str(if coeff.is_negative() { " - " } else { " + " })?;
        } else {
            if coeff.is_negative() {
                f.write_str("-")?;
            }
            wrote = true;
        }
        let mag = coeff.abs();
        let show_mag = match style {
            CoeffStyle::ElideOnesPositive => !mag.is_one() || coeff.is_negative(),
            CoeffStyle::ElideOnes => !mag.is_one(),
        };
        match (show_mag, body.is_empty()) {
            (true, true) => write!(f, "{mag}")?,
            (true, false) => write!(f, "{mag} {body}")?,
            (false, true) => f.write_str("1")?,
            (false, false) => f.write_str(&body)?,
        }
    }
    if !wrote {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sub(vertices: &[u64], edges: &[(u64, u64)]) -> ConnectedSubgraph {
        let g = Graph::from_parts(vertices.iter().copied(), edges.iter().copied()).unwrap();
        ConnectedSubgraph::new(g).unwrap()
    }

    fn dot(v: u64) -> ConnectedSubgraph {
        sub(&[v], &[])
    }

    fn e(u: u64, v: u64) -> ConnectedSubgraph {
        sub(&[], &[(u, v)])
    }

    fn m(factors: &[ConnectedSubgraph]) -> Monomial {
        Monomial::from_factors(factors.iter().cloned())
    }

    /// Generators drawn from the square: vertices, edges, one path.
    fn pool() -> Vec<ConnectedSubgraph> {
        vec![
            dot(1),
            dot(2),
            dot(3),
            dot(4),
            e(1, 2),
            e(2, 3),
            e(3, 4),
            e(1, 4),
            sub(&[], &[(1, 2), (2, 3)]),
        ]
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0..pool().len(), 0..=2)
            .prop_map(|ix| Monomial::from_factors(ix.into_iter().map(|i| pool()[i].clone())))
    }

    fn arb_element() -> impl Strategy<Value = Element> {
        prop::collection::vec((arb_monomial(), -3i64..=3), 0..=3)
            .prop_map(|terms| Element::from_terms(terms.into_iter().map(|(m, c)| (m, scalar_int(c)))))
    }

    #[test]
    fn monomial_normalizes_word_order() {
        assert_eq!(m(&[e(1, 2), dot(1)]), m(&[dot(1), e(1, 2)]));
        assert_eq!(m(&[e(1, 2), e(1, 2)]).breadth(), 2);
        assert_eq!(Monomial::unit().degree(), 0);
        assert_eq!(Monomial::unit().breadth(), 0);
        assert_eq!(m(&[e(1, 2), e(1, 2), dot(1), dot(2)]).breadth(), 4);
        assert_eq!(m(&[e(1, 2), e(1, 2)]).degree(), 4);
    }

    #[test]
    fn monomial_order_is_shortlex() {
        // Fewer factors first, then lexicographic by factor list: the
        // single-factor e12 precedes the two-factor {1}*{2}.
        let edge = m(&[e(1, 2)]);
        let dots = m(&[dot(1), dot(2)]);
        assert!(Monomial::unit() < edge);
        assert!(edge < dots);
        assert!(m(&[dot(1)]) < edge);
    }

    #[test]
    fn product_is_multiset_union() {
        let a = Element::from_monomial(m(&[dot(1)]));
        let b = Element::from_monomial(m(&[e(1, 2)]));
        let ab = &a * &b;
        assert_eq!(ab, Element::from_monomial(m(&[dot(1), e(1, 2)])));

        let sum = &a + &Element::from_monomial(m(&[dot(2)]));
        let prod = &sum * &a;
        assert_eq!(prod.coefficient(&m(&[dot(1), dot(1)])), scalar_int(1));
        assert_eq!(prod.coefficient(&m(&[dot(1), dot(2)])), scalar_int(1));
        assert_eq!(prod.term_count(), 2);
    }

    #[test]
    fn coproduct_of_vertex_is_primitive() {
        let d = coproduct_monomial(&m(&[dot(1)]));
        let one = Monomial::unit();
        let v = m(&[dot(1)]);
        assert_eq!(d.term_count(), 2);
        assert_eq!(d.coefficient(&v, &one), scalar_int(1));
        assert_eq!(d.coefficient(&one, &v), scalar_int(1));
    }

    #[test]
    fn coproduct_of_edge_has_four_terms() {
        let d = coproduct_monomial(&m(&[e(1, 2)]));
        let one = Monomial::unit();
        let edge = m(&[e(1, 2)]);
        assert_eq!(d.term_count(), 4);
        assert_eq!(d.coefficient(&edge, &one), scalar_int(1));
        assert_eq!(d.coefficient(&one, &edge), scalar_int(1));
        assert_eq!(d.coefficient(&m(&[dot(1)]), &m(&[dot(2)])), scalar_int(1));
        assert_eq!(d.coefficient(&m(&[dot(2)]), &m(&[dot(1)])), scalar_int(1));
    }

    #[test]
    fn coproduct_of_unit_and_zero() {
        assert_eq!(coproduct_monomial(&Monomial::unit()), TensorElement::one());
        assert_eq!(coproduct(&Element::zero()), TensorElement::zero());
    }

    #[test]
    fn counit_reads_unit_coefficient() {
        let a = &Element::unit(scalar_int(3)) + &Element::from_monomial(m(&[e(1, 2)])).scale(&scalar_int(2));
        assert_eq!(a.counit(), scalar_int(3));
        assert_eq!(Element::from_monomial(m(&[e(1, 2)])).counit(), scalar_int(0));
        assert_eq!(Element::one().counit(), scalar_int(1));
    }

    #[test]
    fn antipode_small_cases() {
        let v = Element::from_monomial(m(&[dot(1)]));
        assert_eq!(antipode_recursive(&v), -&v);
        assert_eq!(antipode_recursive(&Element::one()), Element::one());

        let edge = Element::from_monomial(m(&[e(1, 2)]));
        let expected = &Element::from_monomial(m(&[dot(1), dot(2)])).scale(&scalar_int(2)) - &edge;
        assert_eq!(antipode_recursive(&edge), expected);
        assert_eq!(antipode_series(&edge), expected);
    }

    #[test]
    fn convolution_unit_and_counting() {
        let ueps = unit_counit_map();
        let id = identity_map();
        let left = convolve(&ueps, &id);
        let right = convolve(&id, &ueps);
        let edge = Element::from_monomial(m(&[e(1, 2)]));
        assert_eq!(left(&edge), edge);
        assert_eq!(right(&edge), edge);

        // (id*id)(•1) doubles a primitive element.
        let sq = convolve(&id, &id);
        let v = Element::from_monomial(m(&[dot(1)]));
        assert_eq!(sq(&v), v.scale(&scalar_int(2)));
    }

    #[test]
    fn antipode_convolution_identity_on_path() {
        let p = Element::from_monomial(m(&[sub(&[], &[(1, 2), (2, 3)])]));
        let conv = convolve(&antipode_map(), &identity_map());
        assert_eq!(conv(&p), Element::zero());
        let conv = convolve(&identity_map(), &antipode_map());
        assert_eq!(conv(&p), Element::zero());
    }

    #[test]
    fn rendering_matches_canonical_forms() {
        assert_eq!(Element::zero().to_string(), "0");
        assert_eq!(Element::one().to_string(), "1");
        assert_eq!(Element::unit(scalar_int(-3)).to_string(), "-3");
        assert_eq!(
            Element::unit(BigRational::new(3.into(), 2.into())).to_string(),
            "3/2"
        );

        let s = antipode_recursive(&Element::from_monomial(m(&[e(1, 2)])));
        assert_eq!(s.to_string(), "-1 {1,2|1-2} + 2 {1}*{2}");

        // Positive unit coefficients stay silent; negative ones print.
        assert_eq!(Element::from_monomial(m(&[dot(1), e(1, 2)])).to_string(), "{1}*{1,2|1-2}");
        assert_eq!((-&Element::from_monomial(m(&[dot(1)]))).to_string(), "-1 {1}");

        let d = coproduct_monomial(&m(&[dot(1)]));
        assert_eq!(d.to_string(), "1 (x) {1} + {1} (x) 1");
    }

    #[test]
    fn tensor_flip_is_involutive_and_fixes_coproducts() {
        let d = coproduct_monomial(&m(&[e(1, 2), dot(3)]));
        assert_eq!(d.flip(), d);
        let t = TensorElement::pure(m(&[dot(1)]), m(&[dot(2)]));
        assert_ne!(t.flip(), t);
        assert_eq!(t.flip().flip(), t);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn product_laws(a in arb_element(), b in arb_element(), c in arb_element()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &Element::one(), a.clone());
        }

        #[test]
        fn coproduct_is_multiplicative(a in arb_element(), b in arb_element()) {
            prop_assert_eq!(coproduct(&(&a * &b)), &coproduct(&a) * &coproduct(&b));
        }

        #[test]
        fn counit_laws_collapse(mono in arb_monomial()) {
            let a = Element::from_monomial(mono);
            let d = coproduct(&a);
            prop_assert_eq!(d.collapse_left_counit(), a.clone());
            prop_assert_eq!(d.collapse_right_counit(), a);
        }

        #[test]
        fn coproduct_is_cocommutative(a in arb_element()) {
            let d = coproduct(&a);
            prop_assert_eq!(d.flip(), d);
        }

        #[test]
        fn coproduct_respects_grading(mono in arb_monomial()) {
            let n = mono.degree();
            for (l, r, _) in coproduct_monomial(&mono).terms() {
                prop_assert_eq!(l.degree() + r.degree(), n);
            }
        }

        #[test]
        fn coproduct_mass_is_two_to_degree(mono in arb_monomial()) {
            let mass = coproduct_monomial(&mono).coefficient_sum();
            prop_assert_eq!(mass, scalar_int(1 << mono.degree()));
        }

        #[test]
        fn antipode_routes_agree(mono in arb_monomial()) {
            let a = Element::from_monomial(mono);
            prop_assert_eq!(antipode_recursive(&a), antipode_series(&a));
        }

        #[test]
        fn antipode_is_involutive_and_multiplicative(a in arb_element(), b in arb_element()) {
            prop_assert_eq!(antipode_recursive(&antipode_recursive(&a)), a.clone());
            prop_assert_eq!(
                antipode_recursive(&(&a * &b)),
                &antipode_recursive(&a) * &antipode_recursive(&b)
            );
        }

        #[test]
        fn induced_components_are_route_independent(mono in arb_monomial(), picks in prop::collection::vec(0u8..3, 0..12)) {
            // Inducing a factor on W then on U ⊆ W gives the same
            // component multiset as inducing on U directly.
            for factor in mono.factors() {
                let verts: Vec<_> = factor.graph().vertices().iter().copied().collect();
                let w: std::collections::BTreeSet<_> = verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| picks.get(*i).copied().unwrap_or(0) >= 1)
                    .map(|(_, v)| *v)
                    .collect();
                let u: std::collections::BTreeSet<_> = verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| picks.get(*i).copied().unwrap_or(0) == 2)
                    .map(|(_, v)| *v)
                    .collect();
                prop_assert!(u.is_subset(&w));
                let via_w = Monomial::from_components_of(
                    &factor.graph().induced_subgraph(&w).unwrap().induced_subgraph(&u).unwrap(),
                );
                let direct = Monomial::from_components_of(&factor.graph().induced_subgraph(&u).unwrap());
                prop_assert_eq!(via_w, direct);
            }
        }
    }
}
