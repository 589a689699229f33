//! Finite-dimensional associative algebras over a [`Field`], given by
//! structure constants on a fixed basis.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::groups::{Group, GroupElement};
use crate::linalg;
use crate::scalar::{Field, Scalar, ScalarError};

/// Dense coordinate vector over an algebra basis.
pub type Vector = Vec<Scalar>;

/// Sparse row of structure constants: the product `b_i b_j` as `(k, c_k)` pairs
/// with nonzero `c_k`, sorted by `k`.
pub type SparseVector = Vec<(usize, Scalar)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("invalid algebra parameter: {0}")]
    InvalidParameter(String),
    #[error("proposed basis is not linearly independent")]
    DependentBasis,
    #[error("scalar belongs to a different field")]
    FieldMismatch,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Built-in algebra families.
#[derive(Clone, Debug)]
pub enum BuiltinAlgebra {
    /// `M_n(F)` with matrix-unit basis `E_ij`.
    Matrix(usize),
    /// `F^n` with orthogonal idempotent basis `e_i`.
    Product(usize),
    /// `F[t]/(t^n)` with basis `1, t, ..., t^(n-1)`.
    TruncatedPoly(usize),
    /// `F[G]` for a finite group, basis `u_g` in table order.
    GroupAlgebra(Group),
}

/// A validated associative algebra.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    products: Vec<Vec<SparseVector>>,
    identity: Option<Vector>,
    /// A complete set of orthogonal idempotents spanning the algebra, when it
    /// is known to be isomorphic to `F^n`.
    split_idempotents: Option<Vec<Vector>>,
    /// Known primeness, for families where it is analytic.
    prime: Option<bool>,
    description: String,
}

fn sparse(v: &[Scalar]) -> SparseVector {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

impl Algebra {
    /// Builds an algebra from dense products `b_i b_j` and validates
    /// associativity on every basis triple.
    pub fn from_products(
        field: Field,
        labels: Vec<String>,
        products: Vec<Vec<Vector>>,
        description: &str,
    ) -> Result<Algebra, AlgebraError> {
        let d = labels.len();
        if products.len() != d || products.iter().any(|row| row.len() != d || row.iter().any(|v| v.len() != d)) {
            return Err(AlgebraError::InvalidParameter("structure constant table has wrong shape".into()));
        }
        if products.iter().flatten().flatten().any(|c| !field.contains(c)) {
            return Err(AlgebraError::FieldMismatch);
        }
        let products = products
            .iter()
            .map(|row| row.iter().map(|v| sparse(v)).collect())
            .collect();
        let mut alg = Algebra {
            field,
            labels,
            products,
            identity: None,
            split_idempotents: None,
            prime: None,
            description: description.to_string(),
        };
        alg.validate_associative()?;
        alg.identity = alg.solve_identity();
        Ok(alg)
    }

    /// Builds an algebra from `(i, j, k, c)` entries meaning `c` is the
    /// coefficient of `b_k` in `b_i b_j`. Repeated entries are summed.
    pub fn from_constants(
        field: Field,
        dim: usize,
        constants: &[(usize, usize, usize, Scalar)],
        labels: Option<Vec<String>>,
    ) -> Result<Algebra, AlgebraError> {
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("b{i}")).collect());
        if labels.len() != dim {
            return Err(AlgebraError::InvalidParameter("label count differs from dimension".into()));
        }
        let mut products = vec![vec![vec![field.zero(); dim]; dim]; dim];
        for (i, j, k, c) in constants {
            for idx in [i, j, k] {
                if *idx >= dim {
                    return Err(AlgebraError::IndexOutOfRange(*idx));
                }
            }
            if !field.contains(c) {
                return Err(AlgebraError::FieldMismatch);
            }
            products[*i][*j][*k] = &products[*i][*j][*k] + c;
        }
        Algebra::from_products(field, labels, products, "custom")
    }

    pub fn builtin(field: Field, spec: &BuiltinAlgebra) -> Result<Algebra, AlgebraError> {
        match spec {
            BuiltinAlgebra::Matrix(n) => Algebra::matrix(field, *n),
            BuiltinAlgebra::Product(n) => Algebra::product(field, *n),
            BuiltinAlgebra::TruncatedPoly(n) => Algebra::truncated_poly(field, *n),
            BuiltinAlgebra::GroupAlgebra(g) => Algebra::group_algebra(field, g),
        }
    }

    pub fn matrix(field: Field, n: usize) -> Result<Algebra, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidParameter("matrix size must be >= 1".into()));
        }
        let d = n * n;
        let labels = (0..d).map(|x| format!("E{}{}", x / n + 1, x % n + 1)).collect();
        let products = (0..d)
            .map(|x| {
                (0..d)
                    .map(|y| {
                        let mut v = vec![field.zero(); d];
                        // E_ab E_cd = delta_bc E_ad
                        if x % n == y / n {
                            v[(x / n) * n + y % n] = field.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut alg = Algebra::from_products(field, labels, products, &format!("M{n}({field})"))?;
        alg.prime = Some(true);
        if n == 1 {
            alg.split_idempotents = Some(vec![vec![field.one()]]);
        }
        Ok(alg)
    }

    pub fn product(field: Field, n: usize) -> Result<Algebra, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidParameter("product needs n >= 1".into()));
        }
        let labels = (0..n).map(|i| format!("e{}", i + 1)).collect();
        let products = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![field.zero(); n];
                        if i == j {
                            v[i] = field.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut alg = Algebra::from_products(field, labels, products, &format!("{field}^{n}"))?;
        alg.split_idempotents = Some((0..n).map(|i| alg.basis(i)).collect());
        alg.prime = Some(n == 1);
        Ok(alg)
    }

    pub fn truncated_poly(field: Field, n: usize) -> Result<Algebra, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidParameter("truncation length must be >= 1".into()));
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        let products = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut v = vec![field.zero(); n];
                        if a + b < n {
                            v[a + b] = field.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut alg = Algebra::from_products(field, labels, products, &format!("{field}[t]/(t^{n})"))?;
        if n == 1 {
            alg.split_idempotents = Some(vec![vec![field.one()]]);
            alg.prime = Some(true);
        } else {
            // t^(n-1) * R * t^(n-1) = 0
            alg.prime = Some(false);
        }
        Ok(alg)
    }

    pub fn group_algebra(field: Field, group: &Group) -> Result<Algebra, AlgebraError> {
        let n = group
            .order()
            .ok_or_else(|| AlgebraError::InvalidParameter(format!("group algebra needs a finite group, got {group}")))?;
        let labels = (0..n).map(|i| format!("u_{}", group.label(&GroupElement::Finite(i)))).collect();
        let products = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut v = vec![field.zero(); n];
                        if let GroupElement::Finite(c) = group.mul(&GroupElement::Finite(a), &GroupElement::Finite(b)) {
                            v[c] = field.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut alg = Algebra::from_products(field, labels, products, &format!("{field}[{}]", group.name()))?;
        if let Some(chars) = sign_characters(group) {
            let inv_order = field.from_i64(n as i64).inv();
            if let Some(inv_order) = inv_order {
                alg.split_idempotents = Some(
                    chars
                        .iter()
                        .map(|chi| chi.iter().map(|&s| &field.from_i64(s) * &inv_order).collect())
                        .collect(),
                );
            }
        }
        Ok(alg)
    }

    /// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i * dim(B) + j`.
    pub fn tensor(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
        if a.field != b.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let field = a.field;
        let (da, db) = (a.dim(), b.dim());
        let d = da * db;
        let labels = (0..d)
            .map(|x| {
                let (la, lb) = (&a.labels[x / db], &b.labels[x % db]);
                match (la.as_str(), lb.as_str()) {
                    (_, "1") => la.clone(),
                    ("1", _) => lb.clone(),
                    _ => format!("{la}*{lb}"),
                }
            })
            .collect();
        let products = (0..d)
            .map(|x| {
                (0..d)
                    .map(|y| {
                        let mut v = vec![field.zero(); d];
                        for (k, c) in a.basis_product(x / db, y / db) {
                            for (l, e) in b.basis_product(x % db, y % db) {
                                v[k * db + l] = &v[k * db + l] + &(c * e);
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut alg = Algebra::from_products(field, labels, products, &format!("{} ⊗ {}", a.description, b.description))?;
        if let (Some(ia), Some(ib)) = (&a.split_idempotents, &b.split_idempotents) {
            alg.split_idempotents = Some(
                ia.iter()
                    .flat_map(|x| {
                        ib.iter().map(move |y| {
                            (0..d).map(|z| &x[z / db] * &y[z % db]).collect::<Vector>()
                        })
                    })
                    .collect(),
            );
        }
        Ok(alg)
    }

    /// The opposite algebra: same basis, `b_i ∘ b_j = b_j b_i`.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let products = (0..d)
            .map(|i| (0..d).map(|j| self.products[j][i].clone()).collect())
            .collect();
        Algebra {
            field: self.field,
            labels: self.labels.clone(),
            products,
            identity: self.identity.clone(),
            split_idempotents: self.split_idempotents.clone(),
            prime: self.prime,
            description: format!("({})^op", self.description),
        }
    }

    /// Re-expresses the algebra in a new basis, given as coordinate vectors in
    /// the current basis.
    pub fn rebase(&self, new_basis: &[Vector], labels: Vec<String>) -> Result<Algebra, AlgebraError> {
        let d = self.dim();
        if new_basis.len() != d || labels.len() != d {
            return Err(AlgebraError::DimensionMismatch { expected: d, got: new_basis.len() });
        }
        for v in new_basis {
            self.check_len(v)?;
        }
        // columns of `change` are the new basis vectors
        let change = linalg::transpose(new_basis, d);
        if linalg::rank(self.field, &change, d) != d {
            return Err(AlgebraError::DependentBasis);
        }
        let to_new = |v: &Vector| linalg::solve(self.field, &change, v, d).expect("basis spans the algebra");
        let products = (0..d)
            .map(|i| (0..d).map(|j| to_new(&self.mul_unchecked(&new_basis[i], &new_basis[j]))).collect())
            .collect();
        let mut alg = Algebra::from_products(self.field, labels, products, &self.description)?;
        alg.split_idempotents = self
            .split_idempotents
            .as_ref()
            .map(|ids| ids.iter().map(to_new).collect());
        alg.prime = self.prime;
        Ok(alg)
    }

    /// Coordinates of `v` with respect to another basis of this algebra,
    /// given as coordinate vectors in the current basis.
    pub fn coordinates_in(&self, basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
        let change = linalg::transpose(basis, self.dim());
        linalg::solve(self.field, &change, v, basis.len())
    }

    fn validate_associative(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul_unchecked(&self.sparse_to_dense(&self.products[i][j]), &self.basis(k));
                    let right = self.mul_unchecked(&self.basis(i), &self.sparse_to_dense(&self.products[j][k]));
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn sparse_to_dense(&self, v: &SparseVector) -> Vector {
        let mut out = self.zero();
        for (k, c) in v {
            out[*k] = c.clone();
        }
        out
    }

    fn solve_identity(&self) -> Option<Vector> {
        let d = self.dim();
        // unknown u: u b_i = b_i and b_i u = b_i for every i
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for i in 0..d {
            let left = self.right_mul_matrix(&self.basis(i));
            let right = self.left_mul_matrix(&self.basis(i));
            for k in 0..d {
                rows.push(left[k].clone());
                rhs.push(if k == i { self.field.one() } else { self.field.zero() });
                rows.push(right[k].clone());
                rhs.push(if k == i { self.field.one() } else { self.field.zero() });
            }
        }
        if d == 0 {
            return None;
        }
        linalg::solve(self.field, &rows, &rhs, d)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn set_description(&mut self, description: &str) {
        self.description = description.to_string();
    }

    pub fn identity(&self) -> Option<&Vector> {
        self.identity.as_ref()
    }

    pub fn split_idempotents(&self) -> Option<&[Vector]> {
        self.split_idempotents.as_deref()
    }

    pub(crate) fn set_split_idempotents(&mut self, ids: Option<Vec<Vector>>) {
        self.split_idempotents = ids;
    }

    pub(crate) fn set_declared_prime(&mut self, prime: Option<bool>) {
        self.prime = prime;
    }

    pub fn declared_prime(&self) -> Option<bool> {
        self.prime
    }

    pub fn zero(&self) -> Vector {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i][j]
    }

    fn check_len(&self, x: &[Scalar]) -> Result<(), AlgebraError> {
        if x.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coeff = xi * yj;
                for (k, c) in &self.products[i][j] {
                    out[*k] = &out[*k] + &(&coeff * c);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn scale(&self, s: &Scalar, x: &[Scalar]) -> Vector {
        x.iter().map(|a| s * a).collect()
    }

    /// Matrix of `y -> x * y`; column `j` holds `x * b_j`.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Vec<Vector> {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul_unchecked(x, &self.basis(j))).collect();
        linalg::transpose(&cols, self.dim())
    }

    /// Matrix of `y -> y * x`; column `j` holds `b_j * x`.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Vec<Vector> {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul_unchecked(&self.basis(j), x)).collect();
        linalg::transpose(&cols, self.dim())
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.products[i][j] == self.products[j][i]))
    }

    /// A basis of the center `{x : x b_i = b_i x for all i}`.
    pub fn center(&self) -> Vec<Vector> {
        let d = self.dim();
        let mut rows = Vec::with_capacity(d * d);
        for i in 0..d {
            let b = self.basis(i);
            let lhs = self.right_mul_matrix(&b);
            let rhs = self.left_mul_matrix(&b);
            for k in 0..d {
                rows.push(self.sub(&lhs[k], &rhs[k]));
            }
        }
        linalg::kernel(self.field, &rows, d)
    }

    pub fn is_central(&self, x: &[Scalar]) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis(i);
            self.mul_unchecked(x, &b) == self.mul_unchecked(&b, x)
        })
    }

    /// Two-sided inverse, if `x` is a unit of a unital algebra.
    pub fn inverse(&self, x: &[Scalar]) -> Option<Vector> {
        let one = self.identity.as_ref()?;
        let y = linalg::solve(self.field, &self.left_mul_matrix(x), one, self.dim())?;
        (self.mul_unchecked(&y, x) == *one).then_some(y)
    }

    /// Human-readable expansion such as `1/2*b + c`.
    pub fn format(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.labels[i].clone()
                } else {
                    format!("{c}*{}", self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// For a finite abelian group of exponent at most 2, all homomorphisms to
/// `{1, -1}` as value tables indexed by element. `None` otherwise.
pub(crate) fn sign_characters(group: &Group) -> Option<Vec<Vec<i64>>> {
    let n = group.order()?;
    if !group.is_abelian() {
        return None;
    }
    let elems = group.elements()?;
    let e = group.identity();
    if elems.iter().any(|g| group.mul(g, g) != e) {
        return None;
    }
    let gens = group.generators().to_vec();
    let mut chars = Vec::new();
    for mask in 0u64..(1 << gens.len()) {
        let mut values: BTreeMap<GroupElement, i64> = BTreeMap::new();
        values.insert(e.clone(), 1);
        let mut frontier = vec![e.clone()];
        let mut consistent = true;
        while let Some(x) = frontier.pop() {
            for (bit, g) in gens.iter().enumerate() {
                let sign = if mask >> bit & 1 == 1 { -1 } else { 1 };
                let y = group.mul(&x, g);
                let v = values[&x] * sign;
                match values.get(&y) {
                    Some(&w) if w != v => consistent = false,
                    Some(_) => {}
                    None => {
                        values.insert(y.clone(), v);
                        frontier.push(y);
                    }
                }
            }
        }
        if consistent && values.len() == n {
            chars.push(elems.iter().map(|g| values[g]).collect());
        }
    }
    (chars.len() == n).then_some(chars)
}
