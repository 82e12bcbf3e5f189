//! The graded dual: functionals Z_F dual to the monomial basis, their
//! product via coproduct structure constants, the coproduct adjoint to
//! multiplication, and the pairing connecting the two sides.
//!
//! The product of Z_{F1} and Z_{F2} is found by scanning the whole
//! graded basis at the summed degree and reading the coefficient of
//! F1 ⊗ F2 in each coproduct; correctness over cleverness. The dual
//! coproduct splits the index multiset over all ordered two-part
//! decompositions, which is exactly the adjoint of multiset-union
//! multiplication.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::sync::Mutex;

use num::{BigInt, One, Signed, Zero};

use crate::enumerate::BasisTable;
use crate::graph::ConnectedSubgraph;
use crate::hopf::{
    coproduct_monomial, write_signed_sum, CoeffStyle, Element, Monomial, Scalar, TensorElement,
};

/// A finite linear combination of dual basis functionals Z_F, keyed by
/// the index monomial F. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl DualElement {
    pub fn zero() -> Self {
        DualElement::default()
    }

    /// Z_F for a single index monomial.
    pub fn basis(f: Monomial) -> Self {
        let mut z = DualElement::zero();
        z.add_term(f, Scalar::one());
        z
    }

    /// Z_1, the unit of the dual algebra.
    pub fn unit() -> Self {
        DualElement::basis(Monomial::unit())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut z = DualElement::zero();
        for (f, c) in terms {
            z.add_term(f, c);
        }
        z
    }

    /// Lifts an element termwise: Σ c_F · F ↦ Σ c_F · Z_F.
    pub fn lift(a: &Element) -> Self {
        DualElement::from_terms(a.terms().map(|(m, c)| (m.clone(), c.clone())))
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

    pub fn coefficient(&self, f: &Monomial) -> Scalar {
        self.terms.get(f).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, f: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(f) {
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

    pub fn scale(&self, k: &Scalar) -> DualElement {
        DualElement::from_terms(self.terms.iter().map(|(f, c)| (f.clone(), c * k)))
    }
}

impl AddAssign<&DualElement> for DualElement {
    fn add_assign(&mut self, rhs: &DualElement) {
        for (f, c) in &rhs.terms {
            self.add_term(f.clone(), c.clone());
        }
    }
}

impl Add for &DualElement {
    type Output = DualElement;
    fn add(self, rhs: &DualElement) -> DualElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &DualElement {
    type Output = DualElement;
    fn sub(self, rhs: &DualElement) -> DualElement {
        let mut out = self.clone();
        for (f, c) in &rhs.terms {
            out.add_term(f.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &DualElement {
    type Output = DualElement;
    fn neg(self) -> DualElement {
        DualElement {
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(
            f,
            self.terms
                .iter()
                .map(|(m, c)| (format!("Z[{m}]"), c.clone())),
            CoeffStyle::ElideOnes,
        )
    }
}

/// A linear combination of Z ⊗ Z basis pairs; the target of the dual
/// coproduct.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualTensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl DualTensorElement {
    pub fn zero() -> Self {
        DualTensorElement::default()
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

    /// ⟨self, a ⊗ b⟩ for a pure tensor of monomials extended over a
    /// tensor element: sums coefficient products over matching pairs.
    pub fn pair_tensor(&self, t: &TensorElement) -> Scalar {
        let mut total = Scalar::zero();
        for (l, r, c) in t.terms() {
            total += self.coefficient(l, r) * c;
        }
        total
    }
}

impl AddAssign<&DualTensorElement> for DualTensorElement {
    fn add_assign(&mut self, rhs: &DualTensorElement) {
        for ((l, r), c) in &rhs.terms {
            self.add_term(l.clone(), r.clone(), c.clone());
        }
    }
}

impl fmt::Display for DualTensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(
            f,
            self.terms
                .iter()
                .map(|((l, r), c)| (format!("Z[{l}] (x) Z[{r}]"), c.clone())),
            CoeffStyle::ElideOnes,
        )
    }
}

/// ⟨z, a⟩ = Σ over shared monomials of coefficient products; the
/// bilinear extension of Z_F(F′) = δ_{F,F′}.
pub fn pairing(z: &DualElement, a: &Element) -> Scalar {
    let mut total = Scalar::zero();
    for (m, c) in a.terms() {
        total += z.coefficient(m) * c;
    }
    total
}

/// ⟨z1 ⊗ z2, t⟩ slot-by-slot.
pub fn pairing_tensor(z1: &DualElement, z2: &DualElement, t: &TensorElement) -> Scalar {
    let mut total = Scalar::zero();
    for (l, r, c) in t.terms() {
        total += z1.coefficient(l) * z2.coefficient(r) * c;
    }
    total
}

/// n(F1,F2;F): the coefficient of F1 ⊗ F2 in Δ(F). Always a
/// nonnegative integer, and zero unless the degrees add up.
pub fn structure_constant(f1: &Monomial, f2: &Monomial, f: &Monomial) -> BigInt {
    let c = coproduct_monomial(f).coefficient(f1, f2);
    debug_assert!(c.is_integer() && !c.is_negative());
    c.to_integer()
}

/// Dual-side workspace over one host basis. Coproducts of candidate
/// monomials are memoized across calls, so chained products (unit,
/// commutativity, associativity sweeps) pay for each Δ(F) once.
pub struct DualOps<'a> {
    basis: &'a BasisTable,
    deltas: Mutex<HashMap<Monomial, TensorElement>>,
}

impl<'a> DualOps<'a> {
    pub fn new(basis: &'a BasisTable) -> Self {
        DualOps {
            basis,
            deltas: Mutex::new(HashMap::new()),
        }
    }

    pub fn basis(&self) -> &'a BasisTable {
        self.basis
    }

    fn delta_coefficient(&self, f: &Monomial, f1: &Monomial, f2: &Monomial) -> Scalar {
        let mut deltas = self.deltas.lock().unwrap();
        deltas
            .entry(f.clone())
            .or_insert_with(|| coproduct_monomial(f))
            .coefficient(f1, f2)
    }

    /// Z_{F1}·Z_{F2} = Σ_F n(F1,F2;F) Z_F with F running over the graded
    /// basis at degree deg F1 + deg F2; extended bilinearly. Adjoint to
    /// the coproduct under the pairing.
    pub fn product(&self, z1: &DualElement, z2: &DualElement) -> DualElement {
        let mut out = DualElement::zero();
        for (f1, c1) in z1.terms() {
            for (f2, c2) in z2.terms() {
                let degree = f1.degree() + f2.degree();
                let weight = c1 * c2;
                for f in self.basis.basis(degree).iter() {
                    let n = self.delta_coefficient(f, f1, f2);
                    if !n.is_zero() {
                        out.add_term(f.clone(), n * &weight);
                    }
                }
            }
        }
        out
    }
}

/// One-shot form of [`DualOps::product`].
pub fn dual_product(basis: &BasisTable, z1: &DualElement, z2: &DualElement) -> DualElement {
    DualOps::new(basis).product(z1, z2)
}

/// Dual coproduct: Δ*(Z_F) = Σ Z_A ⊗ Z_B over all ordered splits of the
/// multiset F into two sub-multisets, each distinct ordered pair once;
/// extended linearly. This is the adjoint of multiplication.
pub fn dual_coproduct(z: &DualElement) -> DualTensorElement {
    let mut out = DualTensorElement::zero();
    for (f, c) in z.terms() {
        for (a, b) in multiset_splits(f) {
            out.add_term(a, b, c.clone());
        }
    }
    out
}

/// ε*(z): the coefficient of Z_1, i.e. evaluation at the unit monomial.
pub fn dual_counit(z: &DualElement) -> Scalar {
    z.coefficient(&Monomial::unit())
}

/// All ordered pairs (A, B) with A ⊎ B = F as multisets. Choices are
/// made per distinct factor, count 0..=multiplicity, so each ordered
/// pair appears exactly once.
fn multiset_splits(f: &Monomial) -> Vec<(Monomial, Monomial)> {
    let mut runs: Vec<(&ConnectedSubgraph, usize)> = Vec::new();
    for factor in f.factors() {
        match runs.last_mut() {
            Some((g, count)) if *g == factor => *count += 1,
            _ => runs.push((factor, 1)),
        }
    }

    let mut splits = Vec::new();
    let mut take = vec![0usize; runs.len()];
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, &(factor, count)) in runs.iter().enumerate() {
            for _ in 0..take[i] {
                left.push(factor.clone());
            }
            for _ in take[i]..count {
                right.push(factor.clone());
            }
        }
        splits.push((Monomial::from_factors(left), Monomial::from_factors(right)));

        // Odometer over 0..=count per run.
        let mut i = 0;
        loop {
            if i == runs.len() {
                return splits;
            }
            if take[i] < runs[i].1 {
                take[i] += 1;
                break;
            }
            take[i] = 0;
            i += 1;
        }
    }
}

/// Structure-constant table row: n(F1,F2;F) for export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureRow {
    pub f1: Monomial,
    pub f2: Monomial,
    pub f: Monomial,
    pub n: BigInt,
}

/// Every n(F1,F2;F) with deg F1 = `left_degree`, deg F2 =
/// `right_degree`, F over the summed degree, zeros included, in
/// canonical order of (F1, F2, F).
pub fn structure_table(
    basis: &BasisTable,
    left_degree: usize,
    right_degree: usize,
) -> Vec<StructureRow> {
    let left = basis.basis(left_degree);
    let right = basis.basis(right_degree);
    let candidates = basis.basis(left_degree + right_degree);
    let mut rows = Vec::new();
    for f in candidates.iter() {
        let delta = coproduct_monomial(f);
        for f1 in left.iter() {
            for f2 in right.iter() {
                let n = delta.coefficient(f1, f2);
                debug_assert!(n.is_integer() && !n.is_negative());
                rows.push(StructureRow {
                    f1: f1.clone(),
                    f2: f2.clone(),
                    f: f.clone(),
                    n: n.to_integer(),
                });
            }
        }
    }
    rows.sort_by(|a, b| {
        (&a.f1, &a.f2, &a.f).cmp(&(&b.f1, &b.f2, &b.f))
    });
    rows
}
