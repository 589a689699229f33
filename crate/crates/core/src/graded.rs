//! Group-graded algebras given by a graded basis, and the support,
//! centrality, idempotency and hypothesis checks on them.
//!
//! A [`GradedAlgebra`] assigns a degree in a [`Group`] to every basis vector of
//! an [`Algebra`]. The component `R_g` is the span of the basis vectors of
//! degree `g`, so `R` is the direct sum of its components by construction; the
//! constructor checks `R_g R_h ⊆ R_gh` on all basis pairs.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Algebra, Vector};
use crate::groups::{Closure, Group, GroupElement, GroupError, GroupKind};
use crate::linalg;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("expected {expected} degrees, got {got}")]
    DegreeCount { expected: usize, got: usize },
    #[error("degree of basis vector {0} is not an element of the grading group")]
    ForeignDegree(usize),
    #[error("grading violated: {left} * {right} has a nonzero coefficient on {target}, of degree {actual} instead of {expected}")]
    NotGraded {
        left: String,
        right: String,
        target: String,
        expected: String,
        actual: String,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("central idempotent enumeration unsupported: {0}")]
    Unsupported(String),
}

/// Which side the multiplier acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `R_g r`
    Left,
    /// `r R_g`
    Right,
}

/// Marks a truncated `Z^k`-graded instance: components of total degree up to
/// `max_total_degree` agree with the untruncated ring, higher ones do not.
/// Checks skip products whose degree lies beyond the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub max_total_degree: i64,
}

impl DegreeWindow {
    fn admits(&self, g: &GroupElement) -> bool {
        match g {
            GroupElement::Lattice(v) => v.iter().sum::<i64>() <= self.max_total_degree,
            _ => true,
        }
    }
}

/// Sparse coordinates over a graded basis; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedElement {
    coords: BTreeMap<usize, Scalar>,
}

impl GradedElement {
    pub fn from_dense(v: &[Scalar]) -> GradedElement {
        GradedElement {
            coords: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, field: Field, dim: usize) -> Vector {
        let mut v = vec![field.zero(); dim];
        for (i, c) in &self.coords {
            v[*i] = c.clone();
        }
        v
    }

    pub fn coords(&self) -> &BTreeMap<usize, Scalar> {
        &self.coords
    }

    pub fn coefficient(&self, i: usize) -> Option<&Scalar> {
        self.coords.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coords.len()
    }
}

/// A failed instance of condition (i) or (ii): `r` is a nonzero element of
/// `R_h` annihilated by `R_g` on the checked side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionWitness {
    pub g: GroupElement,
    pub h: GroupElement,
    pub r: GradedElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionOutcome {
    Holds,
    /// The sparsest annihilated element found; ties go to the first pair in
    /// support order (g outer, h inner).
    Fails(ConditionWitness),
}

impl ConditionOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionOutcome::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongGrading {
    StronglyGradedOnSupport,
    Fails { g: GroupElement, h: GroupElement },
    SupportNotClosed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonDegeneracy {
    Holds,
    Fails { g: GroupElement, r: GradedElement },
}

impl NonDegeneracy {
    pub fn holds(&self) -> bool {
        matches!(self, NonDegeneracy::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primeness {
    Prime,
    /// `a R_e b = 0` with `a, b` nonzero in `R_e`.
    NotPrime { a: GradedElement, b: GradedElement },
    Unsupported(String),
}

/// A finite-dimensional algebra with a degree map into a group.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    algebra: Algebra,
    group: Group,
    degrees: Vec<GroupElement>,
    window: Option<DegreeWindow>,
}

impl GradedAlgebra {
    pub fn new(algebra: Algebra, group: Group, degrees: Vec<GroupElement>) -> Result<GradedAlgebra, GradedError> {
        if degrees.len() != algebra.dim() {
            return Err(GradedError::DegreeCount {
                expected: algebra.dim(),
                got: degrees.len(),
            });
        }
        for (i, g) in degrees.iter().enumerate() {
            if !group.contains(g) {
                return Err(GradedError::ForeignDegree(i));
            }
        }
        let d = algebra.dim();
        for i in 0..d {
            for j in 0..d {
                let expected = group.mul(&degrees[i], &degrees[j]);
                for (k, _) in algebra.basis_product(i, j) {
                    if degrees[*k] != expected {
                        let labels = algebra.labels();
                        return Err(GradedError::NotGraded {
                            left: labels[i].clone(),
                            right: labels[j].clone(),
                            target: labels[*k].clone(),
                            expected: group.label(&expected),
                            actual: group.label(&degrees[*k]),
                        });
                    }
                }
            }
        }
        Ok(GradedAlgebra {
            algebra,
            group,
            degrees,
            window: None,
        })
    }

    /// Every basis vector in degree `e`.
    pub fn trivially_graded(algebra: Algebra, group: Group) -> GradedAlgebra {
        let degrees = vec![group.identity(); algebra.dim()];
        GradedAlgebra::new(algebra, group, degrees).expect("trivial grading is always valid")
    }

    pub fn with_window(mut self, window: DegreeWindow) -> GradedAlgebra {
        self.window = Some(window);
        self
    }

    pub fn window(&self) -> Option<&DegreeWindow> {
        self.window.as_ref()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `Supp(R)`: degrees of nonzero components, in order of first basis
    /// occurrence.
    pub fn ring_support(&self) -> Vec<GroupElement> {
        let mut seen = BTreeSet::new();
        self.degrees.iter().filter(|g| seen.insert((*g).clone())).cloned().collect()
    }

    /// Basis indices spanning `R_g`.
    pub fn component_basis(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == *g).collect()
    }

    pub fn element(&self, dense: &[Scalar]) -> GradedElement {
        assert_eq!(dense.len(), self.dim(), "coordinate vector length");
        GradedElement::from_dense(dense)
    }

    pub fn basis_element(&self, i: usize) -> GradedElement {
        self.element(&self.algebra.basis(i))
    }

    pub fn dense(&self, r: &GradedElement) -> Vector {
        r.to_dense(self.field(), self.dim())
    }

    pub fn zero(&self) -> GradedElement {
        GradedElement::default()
    }

    /// The identity element, if the algebra is unital.
    pub fn unit(&self) -> Option<GradedElement> {
        self.algebra.identity().map(|u| GradedElement::from_dense(u))
    }

    pub fn is_unital(&self) -> bool {
        self.algebra.identity().is_some()
    }

    /// For finite-dimensional algebras s-unitality coincides with having an
    /// identity: a local unit for the basis is a global one.
    pub fn is_s_unital(&self) -> bool {
        self.unit().is_some()
    }

    pub fn mul(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        GradedElement::from_dense(&self.algebra.mul_unchecked(&self.dense(x), &self.dense(y)))
    }

    pub fn add(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        GradedElement::from_dense(&self.algebra.add(&self.dense(x), &self.dense(y)))
    }

    pub fn sub(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        GradedElement::from_dense(&self.algebra.sub(&self.dense(x), &self.dense(y)))
    }

    pub fn scale(&self, s: &Scalar, x: &GradedElement) -> GradedElement {
        GradedElement::from_dense(&self.algebra.scale(s, &self.dense(x)))
    }

    /// Projection onto `R_g`.
    pub fn component(&self, r: &GradedElement, g: &GroupElement) -> GradedElement {
        GradedElement {
            coords: r
                .coords
                .iter()
                .filter(|(i, _)| self.degrees[**i] == *g)
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    /// Degrees with a nonzero component, sorted.
    pub fn support(&self, r: &GradedElement) -> Vec<GroupElement> {
        let set: BTreeSet<GroupElement> = r.coords.keys().map(|i| self.degrees[*i].clone()).collect();
        set.into_iter().collect()
    }

    pub fn support_group(&self, r: &GradedElement, cap: usize) -> Closure {
        self.group.subgroup_closure(&self.support(r), cap)
    }

    pub fn is_homogeneous(&self, r: &GradedElement) -> bool {
        self.support(r).len() <= 1
    }

    pub fn is_idempotent(&self, f: &GradedElement) -> bool {
        self.mul(f, f) == *f
    }

    pub fn is_central(&self, f: &GradedElement) -> bool {
        self.algebra.is_central(&self.dense(f))
    }

    pub fn format(&self, r: &GradedElement) -> String {
        self.algebra.format(&self.dense(r))
    }

    /// Every central idempotent, sorted by coordinate vector.
    ///
    /// Over `F_p` the center (dimension `z`) is searched exhaustively, which
    /// needs `p^z <= budget`. Over `Q` only split commutative algebras are
    /// supported; their idempotents are the 0/1 combinations of the primitive
    /// idempotents.
    pub fn central_idempotents_enumerate(&self, budget: u64) -> Result<Vec<GradedElement>, EnumerationError> {
        let mut found = match self.field() {
            Field::Prime { p } => self.enumerate_modular(p, budget)?,
            Field::Rational => self.enumerate_split(budget)?,
        };
        found.sort_by_key(|f| self.dense(f));
        debug_assert!(found.iter().all(|f| self.is_idempotent(f) && self.is_central(f)));
        Ok(found)
    }

    fn enumerate_split(&self, budget: u64) -> Result<Vec<GradedElement>, EnumerationError> {
        let ids = self.algebra.split_idempotents().ok_or_else(|| {
            EnumerationError::Unsupported(format!(
                "{} over Q is not a known split commutative product",
                self.algebra.description()
            ))
        })?;
        let n = ids.len();
        if n >= 64 || (1u64 << n) > budget {
            return Err(EnumerationError::BudgetExceeded {
                needed: format!("2^{n}"),
                budget,
            });
        }
        Ok((0u64..(1 << n))
            .map(|mask| {
                let v = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(self.algebra.zero(), |acc, i| self.algebra.add(&acc, &ids[i]));
                GradedElement::from_dense(&v)
            })
            .collect())
    }

    fn enumerate_modular(&self, p: u64, budget: u64) -> Result<Vec<GradedElement>, EnumerationError> {
        let center = self.algebra.center();
        let z = center.len();
        let total = (p as u128).checked_pow(z as u32).filter(|t| *t <= budget as u128).ok_or_else(|| {
            EnumerationError::BudgetExceeded {
                needed: format!("{p}^{z}"),
                budget,
            }
        })? as u64;
        let field = self.field();
        // structure constants of the center in its own basis
        let gamma: Vec<Vec<Vec<u64>>> = (0..z)
            .map(|i| {
                (0..z)
                    .map(|j| {
                        let prod = self.algebra.mul_unchecked(&center[i], &center[j]);
                        let coords = self
                            .algebra
                            .coordinates_in(&center, &prod)
                            .expect("center is closed under multiplication");
                        coords.iter().map(|c| c.residue().expect("modular scalar")).collect()
                    })
                    .collect()
            })
            .collect();
        let hits: Vec<Vec<u64>> = (0..total)
            .into_par_iter()
            .filter_map(|index| {
                let mut x = vec![0u64; z];
                let mut rest = index;
                for slot in x.iter_mut().rev() {
                    *slot = rest % p;
                    rest /= p;
                }
                let mut sq = vec![0u64; z];
                for i in 0..z {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..z {
                        if x[j] == 0 {
                            continue;
                        }
                        let c = x[i] * x[j] % p;
                        for (k, g) in gamma[i][j].iter().enumerate() {
                            sq[k] = (sq[k] + c * g) % p;
                        }
                    }
                }
                (sq == x).then_some(x)
            })
            .collect();
        Ok(hits
            .into_iter()
            .map(|x| {
                let v = (0..z).fold(self.algebra.zero(), |acc, i| {
                    self.algebra.add(&acc, &self.algebra.scale(&field.from_i64(x[i] as i64), &center[i]))
                });
                GradedElement::from_dense(&v)
            })
            .collect())
    }

    fn admitted(&self, product_degree: &GroupElement) -> bool {
        self.window.as_ref().is_none_or(|w| w.admits(product_degree))
    }

    /// Matrix of `r -> x * r` (left) or `r -> r * x` (right), restricted to
    /// `r` in the span of `cols`.
    fn restricted_action(&self, x: usize, cols: &[usize], side: Side) -> Vec<Vector> {
        let bx = self.algebra.basis(x);
        let images: Vec<Vector> = cols
            .iter()
            .map(|&c| {
                let bc = self.algebra.basis(c);
                match side {
                    Side::Left => self.algebra.mul_unchecked(&bx, &bc),
                    Side::Right => self.algebra.mul_unchecked(&bc, &bx),
                }
            })
            .collect();
        linalg::transpose(&images, self.dim())
    }

    /// Joint annihilator `{r ∈ R_h : R_g r = 0}` (left) or `{r ∈ R_h : r R_g = 0}`
    /// (right), as full-length coordinate vectors.
    pub fn annihilator_in_component(&self, g: &GroupElement, h: &GroupElement, side: Side) -> Vec<GradedElement> {
        let gs = self.component_basis(g);
        let hs = self.component_basis(h);
        let mut rows = Vec::new();
        for &x in &gs {
            rows.extend(self.restricted_action(x, &hs, side));
        }
        linalg::kernel(self.field(), &rows, hs.len())
            .into_iter()
            .map(|k| {
                let mut v = self.algebra.zero();
                for (pos, &idx) in hs.iter().enumerate() {
                    v[idx] = k[pos].clone();
                }
                GradedElement::from_dense(&v)
            })
            .collect()
    }

    /// All failing pairs of condition (i) (left) or (ii) (right), with a
    /// kernel basis for each, in support order.
    pub fn condition_failures(&self, side: Side) -> Vec<ConditionWitness> {
        let supp = self.ring_support();
        let mut out = Vec::new();
        for g in &supp {
            for h in &supp {
                let product = match side {
                    Side::Left => self.group.mul(g, h),
                    Side::Right => self.group.mul(h, g),
                };
                if !self.admitted(&product) {
                    continue;
                }
                for r in self.annihilator_in_component(g, h, side) {
                    out.push(ConditionWitness {
                        g: g.clone(),
                        h: h.clone(),
                        r,
                    });
                }
            }
        }
        out
    }

    /// Condition (i) (`Side::Left`: `R_g r != 0`) or (ii) (`Side::Right`:
    /// `r R_g != 0`) for all nonzero homogeneous `r` and all `g ∈ Supp(R)`.
    pub fn check_condition(&self, side: Side) -> ConditionOutcome {
        let failures = self.condition_failures(side);
        match failures.into_iter().enumerate().min_by_key(|(pos, w)| (w.r.nnz(), *pos)) {
            None => ConditionOutcome::Holds,
            Some((_, w)) => ConditionOutcome::Fails(w),
        }
    }

    /// `R_g R_h = R_gh` for all `g, h` in the support, provided the support is
    /// a subgroup.
    pub fn check_strongly_graded(&self, cap: usize) -> StrongGrading {
        let supp = self.ring_support();
        match self.group.subgroup_closure(&supp, cap.max(supp.len())) {
            Closure::Finite(v) if v.len() == supp.len() => {}
            _ => return StrongGrading::SupportNotClosed,
        }
        for g in &supp {
            for h in &supp {
                let gh = self.group.mul(g, h);
                if !self.admitted(&gh) {
                    continue;
                }
                let target = self.component_basis(&gh);
                let mut spanning: Vec<Vector> = Vec::new();
                for &x in &self.component_basis(g) {
                    for &y in &self.component_basis(h) {
                        let prod = self.algebra.mul_unchecked(&self.algebra.basis(x), &self.algebra.basis(y));
                        spanning.push(target.iter().map(|&t| prod[t].clone()).collect());
                    }
                }
                if linalg::rank(self.field(), &spanning, target.len()) != target.len() {
                    return StrongGrading::Fails { g: g.clone(), h: h.clone() };
                }
            }
        }
        StrongGrading::StronglyGradedOnSupport
    }

    /// Right: `r_g R_{g^-1} != 0` for nonzero `r_g`; left: `R_{g^-1} r_g != 0`.
    /// Checked for every `g` in the support.
    pub fn check_non_degenerate(&self, side: Side) -> NonDegeneracy {
        for g in self.ring_support() {
            let ginv = self.group.inv(&g);
            if !self.admitted(&g) || !self.admitted(&ginv) {
                continue;
            }
            if let Some(r) = self.annihilator_in_component(&ginv, &g, side).into_iter().next() {
                return NonDegeneracy::Fails { g, r };
            }
        }
        NonDegeneracy::Holds
    }

    /// Every supported degree contains a homogeneous element that is neither
    /// a left nor a right zero divisor. Candidates are the basis vectors of the
    /// component and their sum.
    pub fn regular_homogeneous_elements(&self) -> Option<Vec<(GroupElement, GradedElement)>> {
        let d = self.dim();
        let mut out = Vec::new();
        for g in self.ring_support() {
            let basis = self.component_basis(&g);
            let mut candidates: Vec<Vector> = basis.iter().map(|&i| self.algebra.basis(i)).collect();
            if basis.len() > 1 {
                candidates.push(
                    basis
                        .iter()
                        .fold(self.algebra.zero(), |acc, &i| self.algebra.add(&acc, &self.algebra.basis(i))),
                );
            }
            let regular = candidates.into_iter().find(|x| {
                linalg::rank(self.field(), &self.algebra.left_mul_matrix(x), d) == d
                    && linalg::rank(self.field(), &self.algebra.right_mul_matrix(x), d) == d
            })?;
            out.push((g, GradedElement::from_dense(&regular)));
        }
        Some(out)
    }

    /// `a R_e b`, as the list of products with each basis vector of `R_e`.
    fn sandwich_vanishes(&self, a: &[Scalar], b: &[Scalar], re: &[usize]) -> bool {
        re.iter().all(|&x| {
            let ax = self.algebra.mul_unchecked(a, &self.algebra.basis(x));
            linalg::is_zero_vector(&self.algebra.mul_unchecked(&ax, b))
        })
    }

    /// Primeness of the principal component `R_e`.
    pub fn is_prime_principal(&self, budget: u64) -> Primeness {
        let e = self.group.identity();
        let re = self.component_basis(&e);
        if re.is_empty() {
            return Primeness::Unsupported("principal component is zero".into());
        }
        let field = self.field();
        for &i in &re {
            for &j in &re {
                let (a, b) = (self.algebra.basis(i), self.algebra.basis(j));
                if self.sandwich_vanishes(&a, &b, &re) {
                    return Primeness::NotPrime {
                        a: GradedElement::from_dense(&a),
                        b: GradedElement::from_dense(&b),
                    };
                }
            }
        }
        match field {
            Field::Prime { p } => self.prime_by_exhaustion(p, &re, budget),
            Field::Rational => self.prime_over_rationals(&re),
        }
    }

    fn prime_by_exhaustion(&self, p: u64, re: &[usize], budget: u64) -> Primeness {
        let m = re.len();
        let total = match (p as u128).checked_pow(m as u32) {
            Some(t) if t <= budget as u128 => t as u64,
            _ => return Primeness::Unsupported(format!("|R_e| = {p}^{m} exceeds budget {budget}")),
        };
        let field = self.field();
        let embed = |coords: &[Scalar]| {
            let mut v = self.algebra.zero();
            for (pos, &idx) in re.iter().enumerate() {
                v[idx] = coords[pos].clone();
            }
            v
        };
        for index in 1..total {
            let mut digits = vec![0u64; m];
            let mut rest = index;
            for slot in digits.iter_mut().rev() {
                *slot = rest % p;
                rest /= p;
            }
            // a up to scalar multiples: leading nonzero digit equal to 1
            if digits.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let a = embed(&digits.iter().map(|&x| field.from_i64(x as i64)).collect::<Vec<_>>());
            // b -> (a x b)_x is linear in b
            let mut rows = Vec::new();
            for &x in re {
                let ax = self.algebra.mul_unchecked(&a, &self.algebra.basis(x));
                let images: Vec<Vector> = re
                    .iter()
                    .map(|&c| self.algebra.mul_unchecked(&ax, &self.algebra.basis(c)))
                    .collect();
                rows.extend(linalg::transpose(&images, self.dim()));
            }
            if let Some(k) = linalg::kernel(field, &rows, m).into_iter().next() {
                return Primeness::NotPrime {
                    a: GradedElement::from_dense(&a),
                    b: GradedElement::from_dense(&embed(&k)),
                };
            }
        }
        Primeness::Prime
    }

    fn prime_over_rationals(&self, re: &[usize]) -> Primeness {
        let in_re = |v: &Vector| v.iter().enumerate().all(|(i, c)| c.is_zero() || re.contains(&i));
        if let Some(ids) = self.algebra.split_idempotents() {
            let n = ids.len().min(16);
            let sums: Vec<Vector> = (1u32..(1 << n))
                .map(|mask| {
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .fold(self.algebra.zero(), |acc, i| self.algebra.add(&acc, &ids[i]))
                })
                .filter(|v| in_re(v))
                .collect();
            for a in &sums {
                for b in &sums {
                    if self.sandwich_vanishes(a, b, re) {
                        return Primeness::NotPrime {
                            a: GradedElement::from_dense(a),
                            b: GradedElement::from_dense(b),
                        };
                    }
                }
            }
        }
        if re.len() == self.dim() {
            if let Some(prime) = self.algebra.declared_prime() {
                return if prime {
                    Primeness::Prime
                } else {
                    Primeness::Unsupported("declared not prime but no witness found".into())
                };
            }
        }
        if re.len() == 1 {
            let b = self.algebra.basis(re[0]);
            if !linalg::is_zero_vector(&self.algebra.mul_unchecked(&b, &b)) {
                // a one-dimensional algebra with nonzero product is a field
                return Primeness::Prime;
            }
        }
        Primeness::Unsupported("primeness over Q is only decided for known families".into())
    }

    /// The grading group kind, for hypothesis bookkeeping.
    pub fn group_kind(&self) -> &GroupKind {
        self.group.kind()
    }
}
