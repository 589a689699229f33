//! Group rings `A[G]` and crossed products `A *_σ G` with finitely supported
//! elements.
//!
//! Elements are sparse maps from group elements to coordinate vectors over a
//! unital coefficient algebra `A`. Plain group rings work over any supported
//! group; crossed products need a finite group and carry an action
//! `α: G -> Aut(A)` and a 2-cocycle `σ: G × G -> A^×`, with product
//! `(a u_g)(b u_h) = a α_g(b) σ(g, h) u_gh`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::{sign_characters, Algebra, AlgebraError, Vector};
use crate::graded::{GradedAlgebra, GradedElement};
use crate::groups::{Closure, Group, GroupElement, GroupError};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupRingError {
    #[error("coefficient algebra must be unital")]
    NotUnital,
    #[error("operation needs a finite group, got {0}")]
    InfiniteGroup(String),
    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { expected: usize, got: usize },
    #[error("action of {0} is not an algebra automorphism")]
    NotAutomorphism(String),
    #[error("action matrix for {0} has the wrong shape")]
    ActionShape(String),
    #[error("action of {0} cannot be derived from the given data")]
    ActionUndetermined(String),
    #[error("action of {0} given twice with different values")]
    ActionConflict(String),
    #[error("cocycle value at ({0}, {1}) is not invertible")]
    CocycleNotInvertible(String, String),
    #[error("cocycle condition fails at ({0}, {1}, {2})")]
    CocycleCondition(String, String, String),
    #[error("twisted action condition fails at ({0}, {1})")]
    TwistedAction(String, String),
    #[error("crossed product is not associative")]
    NotAssociative,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Sparse element `Σ a_g u_g`; zero coefficient vectors are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupRingElement {
    terms: BTreeMap<GroupElement, Vector>,
}

impl GroupRingElement {
    pub fn terms(&self) -> &BTreeMap<GroupElement, Vector> {
        &self.terms
    }

    pub fn coefficient(&self, g: &GroupElement) -> Option<&Vector> {
        self.terms.get(g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.terms.keys().cloned().collect()
    }
}

/// Convolution of two finitely supported maps over `group`. `term` computes
/// the contribution of `(x_g, y_h)` to degree `gh`.
pub(crate) fn convolve<T: Clone>(
    group: &Group,
    x: &BTreeMap<GroupElement, T>,
    y: &BTreeMap<GroupElement, T>,
    term: impl Fn(&GroupElement, &T, &GroupElement, &T) -> T,
    add: impl Fn(&T, &T) -> T,
    is_zero: impl Fn(&T) -> bool,
) -> BTreeMap<GroupElement, T> {
    let mut out: BTreeMap<GroupElement, T> = BTreeMap::new();
    for (g, a) in x {
        for (h, b) in y {
            let t = term(g, a, h, b);
            let gh = group.mul(g, h);
            let sum = match out.get(&gh) {
                Some(prev) => add(prev, &t),
                None => t,
            };
            out.insert(gh, sum);
        }
    }
    out.retain(|_, v| !is_zero(v));
    out
}

#[derive(Clone, Debug)]
struct Twist {
    /// `α_g` as a matrix acting on coordinate columns, for every element.
    action: BTreeMap<GroupElement, Matrix>,
    cocycle: BTreeMap<(GroupElement, GroupElement), Vector>,
}

#[derive(Clone, Debug)]
pub struct GroupRing {
    coeff: Algebra,
    group: Group,
    twist: Option<Twist>,
}

impl GroupRing {
    pub fn new(coeff: Algebra, group: Group) -> Result<GroupRing, GroupRingError> {
        if coeff.identity().is_none() {
            return Err(GroupRingError::NotUnital);
        }
        Ok(GroupRing { coeff, group, twist: None })
    }

    /// A crossed product over a finite group. `action` gives `α_g` for some
    /// elements; generators left out act trivially, and the rest follow from the twisted
    /// action rule `α_gh(c) = σ(g,h)^-1 α_g(α_h(c)) σ(g,h)`. Missing cocycle
    /// entries default to `1_A`.
    pub fn crossed_product(
        coeff: Algebra,
        group: Group,
        action: &[(GroupElement, Matrix)],
        cocycle: &[(GroupElement, GroupElement, Vector)],
    ) -> Result<GroupRing, GroupRingError> {
        let one = coeff.identity().cloned().ok_or(GroupRingError::NotUnital)?;
        let elements = group
            .elements()
            .ok_or_else(|| GroupRingError::InfiniteGroup(group.name()))?;
        let d = coeff.dim();
        let label = |g: &GroupElement| group.label(g);

        let mut sigma = BTreeMap::new();
        for g in &elements {
            for h in &elements {
                sigma.insert((g.clone(), h.clone()), one.clone());
            }
        }
        for (g, h, v) in cocycle {
            group.check_member(g)?;
            group.check_member(h)?;
            if v.len() != d {
                return Err(GroupRingError::CoefficientLength { expected: d, got: v.len() });
            }
            sigma.insert((g.clone(), h.clone()), v.clone());
        }
        let mut sigma_inv = BTreeMap::new();
        for ((g, h), v) in &sigma {
            let inv = coeff
                .inverse(v)
                .ok_or_else(|| GroupRingError::CocycleNotInvertible(label(g), label(h)))?;
            sigma_inv.insert((g.clone(), h.clone()), inv);
        }

        let mut known: BTreeMap<GroupElement, Matrix> = BTreeMap::new();
        for (g, m) in action {
            group.check_member(g)?;
            if m.len() != d || m.iter().any(|row| row.len() != d) {
                return Err(GroupRingError::ActionShape(label(g)));
            }
            if known.insert(g.clone(), m.clone()).is_some_and(|prev| prev != *m) {
                return Err(GroupRingError::ActionConflict(label(g)));
            }
        }
        // generators without explicit data act trivially
        for s in group.generators() {
            known.entry(s.clone()).or_insert_with(|| identity_matrix(&coeff));
        }
        let given: Vec<GroupElement> = known.keys().cloned().collect();
        let e = group.identity();
        known.entry(e.clone()).or_insert_with(|| identity_matrix(&coeff));
        // extend by right multiplication with the given elements
        let mut frontier: Vec<GroupElement> = known.keys().cloned().collect();
        while let Some(g) = frontier.pop() {
            for s in &given {
                let gs = group.mul(&g, s);
                if known.contains_key(&gs) {
                    continue;
                }
                let (ag, as_) = (&known[&g], &known[s]);
                let (sg, sg_inv) = (&sigma[&(g.clone(), s.clone())], &sigma_inv[&(g.clone(), s.clone())]);
                let cols: Vec<Vector> = (0..d)
                    .map(|j| {
                        let twisted = linalg::mat_vec(coeff.field(), ag, &linalg::mat_vec(coeff.field(), as_, &coeff.basis(j)));
                        coeff.mul_unchecked(&coeff.mul_unchecked(sg_inv, &twisted), sg)
                    })
                    .collect();
                known.insert(gs.clone(), linalg::transpose(&cols, d));
                frontier.push(gs);
            }
        }
        if let Some(missing) = elements.iter().find(|g| !known.contains_key(*g)) {
            return Err(GroupRingError::ActionUndetermined(label(missing)));
        }

        let apply = |g: &GroupElement, x: &[Scalar]| linalg::mat_vec(coeff.field(), &known[g], x);
        for g in &elements {
            let m = &known[g];
            let automorphism = linalg::rank(coeff.field(), m, d) == d
                && apply(g, &one) == one
                && (0..d).all(|i| {
                    (0..d).all(|j| {
                        let (bi, bj) = (coeff.basis(i), coeff.basis(j));
                        apply(g, &coeff.mul_unchecked(&bi, &bj)) == coeff.mul_unchecked(&apply(g, &bi), &apply(g, &bj))
                    })
                });
            if !automorphism {
                return Err(GroupRingError::NotAutomorphism(label(g)));
            }
        }
        for g in &elements {
            for h in &elements {
                let gh = group.mul(g, h);
                let s_gh = &sigma[&(g.clone(), h.clone())];
                for k in &elements {
                    let lhs = coeff.mul_unchecked(s_gh, &sigma[&(gh.clone(), k.clone())]);
                    let rhs = coeff.mul_unchecked(
                        &apply(g, &sigma[&(h.clone(), k.clone())]),
                        &sigma[&(g.clone(), group.mul(h, k))],
                    );
                    if lhs != rhs {
                        return Err(GroupRingError::CocycleCondition(label(g), label(h), label(k)));
                    }
                }
                for j in 0..d {
                    let c = coeff.basis(j);
                    let lhs = coeff.mul_unchecked(&apply(g, &apply(h, &c)), s_gh);
                    let rhs = coeff.mul_unchecked(s_gh, &apply(&gh, &c));
                    if lhs != rhs {
                        return Err(GroupRingError::TwistedAction(label(g), label(h)));
                    }
                }
            }
        }
        let ring = GroupRing {
            coeff,
            group,
            twist: Some(Twist { action: known, cocycle: sigma }),
        };
        ring.as_graded_algebra().map_err(|err| match err {
            GroupRingError::Algebra(AlgebraError::NotAssociative(..)) => GroupRingError::NotAssociative,
            other => other,
        })?;
        Ok(ring)
    }

    pub fn coeff(&self) -> &Algebra {
        &self.coeff
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn is_crossed(&self) -> bool {
        self.twist.is_some()
    }

    /// `α_g(x)`; the identity map for plain group rings.
    pub fn act(&self, g: &GroupElement, x: &[Scalar]) -> Vector {
        match &self.twist {
            None => x.to_vec(),
            Some(t) => linalg::mat_vec(self.coeff.field(), &t.action[g], x),
        }
    }

    /// `σ(g, h)`; `1_A` for plain group rings.
    pub fn cocycle(&self, g: &GroupElement, h: &GroupElement) -> Vector {
        match &self.twist {
            None => self.coeff_one(),
            Some(t) => t.cocycle[&(g.clone(), h.clone())].clone(),
        }
    }

    fn coeff_one(&self) -> Vector {
        self.coeff.identity().expect("coefficient algebra is unital").clone()
    }

    pub fn zero(&self) -> GroupRingElement {
        GroupRingElement::default()
    }

    /// `a u_g`.
    pub fn monomial(&self, a: Vector, g: GroupElement) -> Result<GroupRingElement, GroupRingError> {
        self.element(vec![(g, a)])
    }

    /// `1_A u_g`.
    pub fn u(&self, g: &GroupElement) -> GroupRingElement {
        self.monomial(self.coeff_one(), g.clone()).expect("group element of this ring")
    }

    /// The identity `σ(e,e)^-1 u_e`, which is `1_A u_e` for plain group rings.
    pub fn one(&self) -> GroupRingElement {
        let e = self.group.identity();
        let s = self.cocycle(&e, &e);
        let inv = self.coeff.inverse(&s).expect("cocycle values are invertible");
        self.monomial(inv, e).expect("identity of this ring")
    }

    /// Builds `Σ a_g u_g`; repeated degrees are summed.
    pub fn element(&self, terms: Vec<(GroupElement, Vector)>) -> Result<GroupRingElement, GroupRingError> {
        let d = self.coeff.dim();
        let mut out: BTreeMap<GroupElement, Vector> = BTreeMap::new();
        for (g, a) in terms {
            self.group.check_member(&g)?;
            if a.len() != d {
                return Err(GroupRingError::CoefficientLength { expected: d, got: a.len() });
            }
            if a.iter().any(|c| !self.coeff.field().contains(c)) {
                return Err(GroupRingError::Algebra(AlgebraError::FieldMismatch));
            }
            let sum = match out.get(&g) {
                Some(prev) => self.coeff.add(prev, &a),
                None => a,
            };
            out.insert(g, sum);
        }
        out.retain(|_, v| !linalg::is_zero_vector(v));
        Ok(GroupRingElement { terms: out })
    }

    pub fn add(&self, x: &GroupRingElement, y: &GroupRingElement) -> GroupRingElement {
        let mut terms = x.terms.clone();
        for (g, b) in &y.terms {
            let sum = match terms.get(g) {
                Some(a) => self.coeff.add(a, b),
                None => b.clone(),
            };
            terms.insert(g.clone(), sum);
        }
        terms.retain(|_, v| !linalg::is_zero_vector(v));
        GroupRingElement { terms }
    }

    pub fn neg(&self, x: &GroupRingElement) -> GroupRingElement {
        let minus_one = self.coeff.field().from_i64(-1);
        self.scale(&minus_one, x)
    }

    pub fn sub(&self, x: &GroupRingElement, y: &GroupRingElement) -> GroupRingElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, s: &Scalar, x: &GroupRingElement) -> GroupRingElement {
        let mut terms: BTreeMap<GroupElement, Vector> =
            x.terms.iter().map(|(g, a)| (g.clone(), self.coeff.scale(s, a))).collect();
        terms.retain(|_, v| !linalg::is_zero_vector(v));
        GroupRingElement { terms }
    }

    /// Plain: coefficient of `k` is `Σ_{gh=k} a_g b_h`. Crossed: `Σ a_g α_g(b_h) σ(g,h)`.
    pub fn mul(&self, x: &GroupRingElement, y: &GroupRingElement) -> GroupRingElement {
        let terms = convolve(
            &self.group,
            &x.terms,
            &y.terms,
            |g, a, h, b| match &self.twist {
                None => self.coeff.mul_unchecked(a, b),
                Some(_) => self.coeff.mul_unchecked(
                    &self.coeff.mul_unchecked(a, &self.act(g, b)),
                    &self.cocycle(g, h),
                ),
            },
            |a, b| self.coeff.add(a, b),
            |v| linalg::is_zero_vector(v),
        );
        GroupRingElement { terms }
    }

    pub fn is_idempotent(&self, f: &GroupRingElement) -> bool {
        self.mul(f, f) == *f
    }

    /// Commutes with every `b_i u_e` and with `u_s` for every generator `s`.
    /// These generate the ring, so this decides centrality even over
    /// infinite groups.
    pub fn is_central(&self, f: &GroupRingElement) -> bool {
        let e = self.group.identity();
        let commutes = |x: &GroupRingElement| self.mul(f, x) == self.mul(x, f);
        (0..self.coeff.dim()).all(|i| commutes(&self.monomial(self.coeff.basis(i), e.clone()).expect("identity")))
            && self.group.generators().iter().all(|s| commutes(&self.u(s)))
    }

    pub fn support_group(&self, f: &GroupRingElement, cap: usize) -> Closure {
        self.group.subgroup_closure(&f.support(), cap)
    }

    fn finite_elements(&self) -> Result<Vec<GroupElement>, GroupRingError> {
        self.group
            .elements()
            .ok_or_else(|| GroupRingError::InfiniteGroup(self.group.name()))
    }

    /// The ring as a `G`-graded algebra with basis `b_i u_g` at index
    /// `pos(g) * dim(A) + i`, `pos` being the table order of `G`.
    pub fn as_graded_algebra(&self) -> Result<GradedAlgebra, GroupRingError> {
        let elements = self.finite_elements()?;
        let d = self.coeff.dim();
        let n = elements.len();
        let field = self.coeff.field();
        let basis_elt = |x: usize| {
            self.monomial(self.coeff.basis(x % d), elements[x / d].clone())
                .expect("element of this ring")
        };
        let labels: Vec<String> = (0..n * d)
            .map(|x| {
                let g = self.group.label(&elements[x / d]);
                if d == 1 {
                    format!("u_{g}")
                } else {
                    format!("{}*u_{g}", self.coeff.labels()[x % d])
                }
            })
            .collect();
        let products = (0..n * d)
            .map(|x| {
                (0..n * d)
                    .map(|y| self.to_dense(&elements, &self.mul(&basis_elt(x), &basis_elt(y))))
                    .collect()
            })
            .collect();
        let kind = if self.is_crossed() { "crossed product" } else { "group ring" };
        let mut alg = Algebra::from_products(
            field,
            labels,
            products,
            &format!("{} {kind} over {}", self.coeff.description(), self.group.name()),
        )?;
        if !self.is_crossed() {
            alg.set_split_idempotents(self.split_idempotents(&elements));
        }
        let degrees = (0..n * d).map(|x| elements[x / d].clone()).collect();
        Ok(GradedAlgebra::new(alg, self.group.clone(), degrees).expect("group ring grading is valid"))
    }

    /// `a_k ⊗ e_χ` for split `A` and `G` abelian of exponent 2 with `|G|`
    /// invertible, where `e_χ = |G|^-1 Σ χ(g) u_g`.
    fn split_idempotents(&self, elements: &[GroupElement]) -> Option<Vec<Vector>> {
        let ids = self.coeff.split_idempotents()?;
        let chars = sign_characters(&self.group)?;
        let field = self.coeff.field();
        let inv_order = field.from_i64(elements.len() as i64).inv()?;
        let d = self.coeff.dim();
        Some(
            ids.iter()
                .flat_map(|a| {
                    chars.iter().map(|chi| {
                        (0..elements.len() * d)
                            .map(|x| &(&a[x % d] * &field.from_i64(chi[x / d])) * &inv_order)
                            .collect()
                    })
                })
                .collect(),
        )
    }

    fn to_dense(&self, elements: &[GroupElement], x: &GroupRingElement) -> Vector {
        let d = self.coeff.dim();
        let mut v = vec![self.coeff.field().zero(); elements.len() * d];
        for (pos, g) in elements.iter().enumerate() {
            if let Some(a) = x.terms.get(g) {
                v[pos * d..(pos + 1) * d].clone_from_slice(a);
            }
        }
        v
    }

    pub fn to_graded(&self, x: &GroupRingElement) -> Result<GradedElement, GroupRingError> {
        let elements = self.finite_elements()?;
        Ok(GradedElement::from_dense(&self.to_dense(&elements, x)))
    }

    pub fn from_graded(&self, x: &GradedElement) -> Result<GroupRingElement, GroupRingError> {
        let elements = self.finite_elements()?;
        let d = self.coeff.dim();
        let dense = x.to_dense(self.coeff.field(), elements.len() * d);
        self.element(
            elements
                .iter()
                .enumerate()
                .map(|(pos, g)| (g.clone(), dense[pos * d..(pos + 1) * d].to_vec()))
                .collect(),
        )
    }

    pub fn format(&self, x: &GroupRingElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms
            .iter()
            .map(|(g, a)| {
                let label = self.group.label(g);
                if *a == self.coeff_one() {
                    format!("u_{label}")
                } else {
                    format!("({})u_{label}", self.coeff.format(a))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GroupRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_crossed() { "*" } else { "" };
        write!(f, "{}{kind}[{}]", self.coeff.description(), self.group.name())
    }
}

fn identity_matrix(coeff: &Algebra) -> Matrix {
    (0..coeff.dim()).map(|i| coeff.basis(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Side;
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rational
    }

    fn qk() -> GroupRing {
        let k = Group::finite_subgroup(&Group::symmetric(3), &[GroupElement::Finite(1)], 10).unwrap().0;
        GroupRing::new(Algebra::product(q(), 1).unwrap(), k).unwrap()
    }

    #[test]
    fn half_sum_is_a_central_idempotent() {
        let r = qk();
        let h = q().from_ratio(1, 2);
        let g = r.group().generators()[0].clone();
        let f = r.element(vec![(r.group().identity(), vec![h.clone()]), (g, vec![h])]).unwrap();
        assert!(r.is_idempotent(&f));
        assert!(r.is_central(&f));
        assert_eq!(r.support_group(&f, 10).elements().map(|e| e.len()), Some(2));
    }

    #[test]
    fn matrix_coefficients_over_integers() {
        let m2 = Algebra::matrix(q(), 2).unwrap();
        let r = GroupRing::new(m2.clone(), Group::free_abelian(1)).unwrap();
        let t = GroupElement::Lattice(vec![1]);
        let f = r
            .element(vec![(GroupElement::Lattice(vec![0]), m2.basis(0)), (t, m2.basis(1))])
            .unwrap();
        assert!(r.is_idempotent(&f));
        assert!(!r.is_central(&f));
        assert_eq!(r.support_group(&f, 100), Closure::ExceedsCap);
        assert_eq!(r.support_group(&r.one(), 100).elements().map(|e| e.len()), Some(1));
        let x = r.element(vec![(GroupElement::Lattice(vec![-3]), m2.basis(2))]).unwrap();
        assert_eq!(r.mul(&r.one(), &x), x);
        assert_eq!(r.mul(&x, &r.one()), x);
    }

    #[test]
    fn centrality_over_infinite_groups_uses_generators() {
        let qa = Algebra::product(q(), 1).unwrap();
        let d = GroupRing::new(qa.clone(), Group::infinite_dihedral()).unwrap();
        let one = vec![q().one()];
        // u_{st} + u_{ts} is a class sum, u_{st} alone is not central
        let st = d.group().mul(&Group::dinf_s(), &Group::dinf_t());
        let ts = d.group().inv(&st);
        let class_sum = d.element(vec![(st.clone(), one.clone()), (ts, one.clone())]).unwrap();
        assert!(d.is_central(&class_sum));
        assert!(!d.is_central(&d.u(&st)));
        assert!(!d.is_central(&d.u(&Group::dinf_s())));
        let z2 = GroupRing::new(qa, Group::free_abelian(2)).unwrap();
        let x = z2
            .element(vec![(GroupElement::Lattice(vec![1, -2]), one.clone()), (GroupElement::Lattice(vec![0, 5]), one)])
            .unwrap();
        assert!(z2.is_central(&x));
    }

    #[test]
    fn graded_bridge_preserves_products_and_centrality() {
        let f3 = Field::prime(3).unwrap();
        let r = GroupRing::new(Algebra::product(f3, 1).unwrap(), Group::symmetric(3)).unwrap();
        let g = r.as_graded_algebra().unwrap();
        assert_eq!(g.dim(), 6);
        assert!(g.check_condition(Side::Left).holds());
        for f in g.central_idempotents_enumerate(1_000).unwrap() {
            let x = r.from_graded(&f).unwrap();
            assert!(r.is_central(&x));
            assert!(r.is_idempotent(&x));
            assert_eq!(r.to_graded(&x).unwrap(), f);
        }
        for i in 0..6 {
            for j in 0..6 {
                let (a, b) = (g.basis_element(i), g.basis_element(j));
                let lhs = r.to_graded(&r.mul(&r.from_graded(&a).unwrap(), &r.from_graded(&b).unwrap())).unwrap();
                assert_eq!(lhs, g.mul(&a, &b));
            }
        }
    }

    #[test]
    fn split_metadata_over_klein_four() {
        let r = GroupRing::new(Algebra::product(q(), 1).unwrap(), Group::klein_four()).unwrap();
        let g = r.as_graded_algebra().unwrap();
        assert_eq!(g.central_idempotents_enumerate(100).unwrap().len(), 16);
    }

    fn f5_twisted() -> Result<GroupRing, GroupRingError> {
        let f5 = Field::prime(5).unwrap();
        let z2 = Group::cyclic(2);
        let s = GroupElement::Finite(1);
        let a = Algebra::product(f5, 1).unwrap();
        GroupRing::crossed_product(a, z2, &[], &[(s.clone(), s, vec![f5.from_i64(2)])])
    }

    #[test]
    fn crossed_product_with_nontrivial_cocycle() {
        let r = f5_twisted().unwrap();
        let s = GroupElement::Finite(1);
        let us = r.u(&s);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(r.mul(&us, &us), r.monomial(vec![f5.from_i64(2)], GroupElement::Finite(0)).unwrap());
        let g = r.as_graded_algebra().unwrap();
        assert!(g.check_condition(Side::Left).holds());
        assert!(g.check_condition(Side::Right).holds());
    }

    #[test]
    fn crossed_product_with_swap_action() {
        // Q^2 with Z2 swapping the factors
        let a = Algebra::product(q(), 2).unwrap();
        let swap = vec![vec![q().zero(), q().one()], vec![q().one(), q().zero()]];
        let z2 = Group::cyclic(2);
        let r = GroupRing::crossed_product(a.clone(), z2.clone(), &[(GroupElement::Finite(1), swap)], &[]).unwrap();
        let e1 = r.monomial(a.basis(0), GroupElement::Finite(0)).unwrap();
        let us = r.u(&GroupElement::Finite(1));
        assert_eq!(r.mul(&us, &e1), r.monomial(a.basis(1), GroupElement::Finite(1)).unwrap());
        assert!(!r.is_central(&e1));
        assert!(r.is_central(&r.one()));
        let bad = vec![vec![q().one(), q().one()], vec![q().zero(), q().one()]];
        assert!(matches!(
            GroupRing::crossed_product(a, z2, &[(GroupElement::Finite(1), bad)], &[]),
            Err(GroupRingError::NotAutomorphism(_))
        ));
    }

    #[test]
    fn rejects_bad_cocycles() {
        let f5 = Field::prime(5).unwrap();
        let z2 = Group::cyclic(2);
        let a = Algebra::product(f5, 1).unwrap();
        let (e, s) = (GroupElement::Finite(0), GroupElement::Finite(1));
        assert!(matches!(
            GroupRing::crossed_product(a.clone(), z2.clone(), &[], &[(s.clone(), s.clone(), vec![f5.zero()])]),
            Err(GroupRingError::CocycleNotInvertible(..))
        ));
        assert!(matches!(
            GroupRing::crossed_product(a.clone(), z2, &[], &[(e, s, vec![f5.from_i64(2)])]),
            Err(GroupRingError::CocycleCondition(..))
        ));
        assert!(matches!(
            GroupRing::crossed_product(a, Group::free_abelian(1), &[], &[]),
            Err(GroupRingError::InfiniteGroup(_))
        ));
    }

    #[test]
    fn nonunital_coefficients_are_rejected() {
        let nil = Algebra::from_constants(q(), 1, &[], None).unwrap();
        assert_eq!(GroupRing::new(nil, Group::cyclic(2)).unwrap_err(), GroupRingError::NotUnital);
    }
}
