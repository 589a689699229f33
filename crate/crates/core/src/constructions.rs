//! Constructions between graded rings: Dorroh unitization, the embedding
//! `φ: R -> R[G]`, regrading by a quotient group, restriction to a subgroup,
//! and regrading an `N^k`-graded algebra over `Z^k`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coeff::{Algebra, AlgebraError, Vector};
use crate::graded::{GradedAlgebra, GradedElement, GradedError};
use crate::group_ring::{convolve, GroupRing, GroupRingElement, GroupRingError};
use crate::groups::{Closure, Group, GroupElement, GroupError, Quotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("the algebra has no identity element")]
    NotUnital,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal: conjugation by {0} leaves it")]
    NotNormal(String),
    #[error("operation needs a finite group, got {0}")]
    InfiniteGroup(String),
    #[error("degree of basis vector {0} has a negative coordinate")]
    DegreeOutsideMonoid(usize),
    #[error("degree vectors must all have length {0}")]
    DegreeRank(usize),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
}

impl From<GroupError> for ConstructionError {
    fn from(err: GroupError) -> Self {
        match err {
            GroupError::NotSubgroup => ConstructionError::NotSubgroup,
            GroupError::NotNormal(g) => ConstructionError::NotNormal(g),
            GroupError::NotFinite(g) => ConstructionError::InfiniteGroup(g),
            other => ConstructionError::Graded(GradedError::Group(other)),
        }
    }
}

/// `(r, n)` in the Dorroh extension `D = R × Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct DorrohElement {
    pub r: GradedElement,
    pub n: BigInt,
}

impl DorrohElement {
    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.n.is_zero()
    }
}

/// The unital ring `D = R × Z` with `(r,n)(s,m) = (rs + ns + mr, nm)`,
/// graded by `D_e = R_e × Z` and `D_g = R_g × 0` for `g != e`.
#[derive(Clone, Debug)]
pub struct DorrohRing {
    base: GradedAlgebra,
}

/// Sparse element of the group ring `D[G]`.
pub type DorrohGroupElement = BTreeMap<GroupElement, DorrohElement>;

pub fn dorroh_unitize(base: &GradedAlgebra) -> DorrohRing {
    DorrohRing { base: base.clone() }
}

impl DorrohRing {
    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    pub fn zero(&self) -> DorrohElement {
        DorrohElement::default()
    }

    pub fn one(&self) -> DorrohElement {
        DorrohElement {
            r: self.base.zero(),
            n: BigInt::one(),
        }
    }

    /// `ψ(r) = (r, 0)`.
    pub fn psi(&self, r: &GradedElement) -> DorrohElement {
        DorrohElement {
            r: r.clone(),
            n: BigInt::zero(),
        }
    }

    pub fn element(&self, r: GradedElement, n: BigInt) -> DorrohElement {
        DorrohElement { r, n }
    }

    fn int_times(&self, n: &BigInt, r: &GradedElement) -> GradedElement {
        if n.is_zero() {
            return self.base.zero();
        }
        self.base.scale(&self.base.field().from_bigint(n), r)
    }

    pub fn add(&self, x: &DorrohElement, y: &DorrohElement) -> DorrohElement {
        DorrohElement {
            r: self.base.add(&x.r, &y.r),
            n: &x.n + &y.n,
        }
    }

    pub fn neg(&self, x: &DorrohElement) -> DorrohElement {
        DorrohElement {
            r: self.base.scale(&self.base.field().from_i64(-1), &x.r),
            n: -&x.n,
        }
    }

    pub fn sub(&self, x: &DorrohElement, y: &DorrohElement) -> DorrohElement {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &DorrohElement, y: &DorrohElement) -> DorrohElement {
        let rs = self.base.mul(&x.r, &y.r);
        let ns = self.int_times(&x.n, &y.r);
        let mr = self.int_times(&y.n, &x.r);
        DorrohElement {
            r: self.base.add(&self.base.add(&rs, &ns), &mr),
            n: &x.n * &y.n,
        }
    }

    pub fn is_idempotent(&self, x: &DorrohElement) -> bool {
        self.mul(x, x) == *x
    }

    /// `D` is spanned over `Z` by `(0,1)` and the `(b_i, 0)`; `(0,1)` is
    /// central, so commuting with the `(b_i, 0)` suffices.
    pub fn is_central(&self, x: &DorrohElement) -> bool {
        (0..self.base.dim()).all(|i| {
            let b = self.psi(&self.base.basis_element(i));
            self.mul(x, &b) == self.mul(&b, x)
        })
    }

    pub fn component(&self, x: &DorrohElement, g: &GroupElement) -> DorrohElement {
        let e = self.base.group().identity();
        DorrohElement {
            r: self.base.component(&x.r, g),
            n: if *g == e { x.n.clone() } else { BigInt::zero() },
        }
    }

    pub fn support(&self, x: &DorrohElement) -> Vec<GroupElement> {
        let mut set: BTreeSet<GroupElement> = self.base.support(&x.r).into_iter().collect();
        if !x.n.is_zero() {
            set.insert(self.base.group().identity());
        }
        set.into_iter().collect()
    }

    pub fn support_group(&self, x: &DorrohElement, cap: usize) -> Closure {
        self.base.group().subgroup_closure(&self.support(x), cap)
    }

    /// `φ(x) = Σ x_g u_g` in `D[G]`.
    pub fn phi(&self, x: &DorrohElement) -> DorrohGroupElement {
        self.support(x)
            .into_iter()
            .map(|g| {
                let c = self.component(x, &g);
                (g, c)
            })
            .collect()
    }

    pub fn group_ring_mul(&self, x: &DorrohGroupElement, y: &DorrohGroupElement) -> DorrohGroupElement {
        convolve(
            self.base.group(),
            x,
            y,
            |_, a, _, b| self.mul(a, b),
            |a, b| self.add(a, b),
            DorrohElement::is_zero,
        )
    }

    pub fn group_ring_one(&self) -> DorrohGroupElement {
        [(self.base.group().identity(), self.one())].into_iter().collect()
    }

    /// Commutes with `(b_i, 0) u_e` for every basis vector and with `u_s`
    /// for every generator `s`.
    pub fn group_ring_is_central(&self, f: &DorrohGroupElement) -> bool {
        let group = self.base.group();
        let e = group.identity();
        let commutes = |x: &DorrohGroupElement| self.group_ring_mul(f, x) == self.group_ring_mul(x, f);
        (0..self.base.dim()).all(|i| {
            let b = self.psi(&self.base.basis_element(i));
            commutes(&[(e.clone(), b)].into_iter().collect())
        }) && group
            .generators()
            .iter()
            .all(|s| commutes(&[(s.clone(), self.one())].into_iter().collect()))
    }
}

/// `φ: R -> R[G]`, `r -> Σ r_g u_g`, for a unital graded algebra.
#[derive(Clone, Debug)]
pub struct PhiEmbedding {
    source: GradedAlgebra,
    target: GroupRing,
}

pub fn embed_phi(r: &GradedAlgebra) -> Result<PhiEmbedding, ConstructionError> {
    if !r.is_unital() {
        return Err(ConstructionError::NotUnital);
    }
    let target = GroupRing::new(r.algebra().clone(), r.group().clone())?;
    Ok(PhiEmbedding {
        source: r.clone(),
        target,
    })
}

impl PhiEmbedding {
    pub fn source(&self) -> &GradedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &GroupRing {
        &self.target
    }

    pub fn apply(&self, x: &GradedElement) -> GroupRingElement {
        let terms: Vec<(GroupElement, Vector)> = self
            .source
            .support(x)
            .into_iter()
            .map(|g| {
                let c = self.source.dense(&self.source.component(x, &g));
                (g, c)
            })
            .collect();
        self.target.element(terms).expect("components live in the coefficient algebra")
    }
}

/// The same algebra graded by `G/N`: `deg'(i) = deg(i) N`.
pub fn quotient_regrade(r: &GradedAlgebra, normal: &[GroupElement]) -> Result<(GradedAlgebra, Quotient), ConstructionError> {
    let group = r.group();
    if !group.is_finite() {
        return Err(ConstructionError::InfiniteGroup(group.name()));
    }
    let quotient = group.quotient_group(normal)?;
    let degrees = r.degrees().iter().map(|g| quotient.project(g)).collect();
    let regraded = GradedAlgebra::new(r.algebra().clone(), quotient.group.clone(), degrees)?;
    Ok((regraded, quotient))
}

/// `R_H = ⊕_{h ∈ H} R_h` for a finite subgroup `H`, graded by `H` as a group
/// of its own. Returns the subalgebra and the inclusion of `H` into `G`.
pub fn restrict_to_subgroup(
    r: &GradedAlgebra,
    subgroup: &[GroupElement],
) -> Result<(GradedAlgebra, Vec<GroupElement>), ConstructionError> {
    let group = r.group();
    for h in subgroup {
        group.check_member(h)?;
    }
    if !group.is_subgroup(subgroup) {
        return Err(ConstructionError::NotSubgroup);
    }
    let (h_group, inclusion) = group
        .finite_subgroup(subgroup, subgroup.len())
        .ok_or(ConstructionError::NotSubgroup)?;
    let keep: Vec<usize> = (0..r.dim()).filter(|&i| inclusion.contains(&r.degrees()[i])).collect();
    let alg = r.algebra();
    let position: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let products: Vec<Vec<Vector>> = keep
        .iter()
        .map(|&i| {
            keep.iter()
                .map(|&j| {
                    let mut v = vec![alg.field().zero(); keep.len()];
                    for (k, c) in alg.basis_product(i, j) {
                        v[position[k]] = c.clone();
                    }
                    v
                })
                .collect()
        })
        .collect();
    let labels = keep.iter().map(|&i| alg.labels()[i].clone()).collect();
    let mut sub = Algebra::from_products(alg.field(), labels, products, &format!("{}_H", alg.description()))?;
    sub.set_split_idempotents(split_in_subspace(alg, &keep));
    if keep.len() == alg.dim() {
        sub.set_declared_prime(alg.declared_prime());
    }
    let degrees = keep
        .iter()
        .map(|&i| {
            let pos = inclusion.iter().position(|x| *x == r.degrees()[i]).expect("degree in H");
            GroupElement::Finite(pos)
        })
        .collect();
    Ok((GradedAlgebra::new(sub, h_group, degrees)?, inclusion))
}

/// If `R` is split with primitive idempotents `e_1..e_n`, the subalgebra
/// spanned by the basis vectors `keep` is split exactly when its minimal
/// idempotents among the sums of the `e_i` number `keep.len()`.
fn split_in_subspace(alg: &Algebra, keep: &[usize]) -> Option<Vec<Vector>> {
    let ids = alg.split_idempotents()?;
    let n = ids.len();
    if n > 16 {
        return None;
    }
    let inside = |v: &Vector| v.iter().enumerate().all(|(i, c)| c.is_zero() || keep.contains(&i));
    let sum = |mask: u32| {
        (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(alg.zero(), |acc, i| alg.add(&acc, &ids[i]))
    };
    let masks: Vec<u32> = (1u32..(1 << n)).filter(|&m| inside(&sum(m))).collect();
    let atoms: Vec<u32> = masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&o| o != m && o & m == o))
        .collect();
    if atoms.len() != keep.len() {
        return None;
    }
    Some(
        atoms
            .into_iter()
            .map(|m| {
                let v = sum(m);
                keep.iter().map(|&i| v[i].clone()).collect()
            })
            .collect(),
    )
}

/// Reads `N^k` degrees as elements of `Z^k`; components outside the monoid
/// are zero.
pub fn monoid_to_group_regrade(algebra: &Algebra, degrees: &[Vec<i64>]) -> Result<GradedAlgebra, ConstructionError> {
    let k = degrees.first().map_or(1, Vec::len);
    for (i, d) in degrees.iter().enumerate() {
        if d.len() != k {
            return Err(ConstructionError::DegreeRank(k));
        }
        if d.iter().any(|&x| x < 0) {
            return Err(ConstructionError::DegreeOutsideMonoid(i));
        }
    }
    let group = Group::free_abelian(k);
    let degrees = degrees.iter().map(|d| GroupElement::Lattice(d.clone())).collect();
    Ok(GradedAlgebra::new(algebra.clone(), group, degrees)?)
}
