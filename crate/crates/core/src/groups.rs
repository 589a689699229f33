//! Groups with decidable word problem: finite Cayley tables, free abelian
//! groups `Z^k`, and the infinite dihedral group.
//!
//! The infinite dihedral group is realized as `Z ⋊ Z/2`. An element is a pair
//! `(n, flip)` and the product is
//! `(n, f) * (m, f') = (n + (-1)^f m, f xor f')`.
//! The involutive generators are `s = (0, true)` and `t = (1, true)`, so
//! `st = (-1, false)` generates the infinite cyclic normal subgroup.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element {0} does not belong to group {1}")]
    NotAMember(String, String),
    #[error("Cayley table is not a square table of valid indices")]
    MalformedTable,
    #[error("Cayley table is not a Latin square")]
    NotLatinSquare,
    #[error("Cayley table has no identity element")]
    NoIdentity,
    #[error("Cayley table is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("declared generators do not generate the group")]
    GeneratorsDoNotGenerate,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal: conjugation by {0} leaves it")]
    NotNormal(String),
    #[error("operation requires a finite group, got {0}")]
    NotFinite(String),
    #[error("unknown built-in group {0:?}")]
    UnknownGroup(String),
    #[error("cannot parse group element literal {0}")]
    BadLiteral(String),
    #[error("labels must be distinct and match the table size")]
    BadLabels,
}

/// A group element in normal form. Two elements are equal iff their normal
/// forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Index into a Cayley table.
    Finite(usize),
    /// Vector in `Z^k`.
    Lattice(Vec<i64>),
    /// `(n, flip)` in the infinite dihedral group.
    Dihedral { n: i64, flip: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Finite(FiniteTable),
    FreeAbelian { rank: usize },
    InfiniteDihedral,
}

/// A validated group together with a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    kind: GroupKind,
    generators: Vec<GroupElement>,
}

/// Result of a capped closure computation. `ExceedsCap` only says the set has
/// more than `cap` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Finite(Vec<GroupElement>),
    ExceedsCap,
}

impl Closure {
    pub fn is_finite(&self) -> bool {
        matches!(self, Closure::Finite(_))
    }

    pub fn elements(&self) -> Option<&[GroupElement]> {
        match self {
            Closure::Finite(v) => Some(v),
            Closure::ExceedsCap => None,
        }
    }
}

/// Outcome of [`Group::torsion_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Order(u64),
    /// Infinite order, established from the normal form.
    InfiniteOrderWitnessed,
    /// Finite group element whose order is larger than the cap.
    ExceedsCap,
}

/// `G/N` as a finite table, with the projection `G -> G/N` given by index.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    pub projection: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
}

impl Quotient {
    pub fn project(&self, g: &GroupElement) -> GroupElement {
        match g {
            GroupElement::Finite(i) => GroupElement::Finite(self.projection[*i]),
            _ => panic!("quotients are only formed from finite groups"),
        }
    }
}

/// How an instance file names a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GroupSpec {
    #[serde(rename = "finite")]
    Finite {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    #[serde(rename = "Zk")]
    FreeAbelian { k: usize },
    #[serde(rename = "Dinf")]
    InfiniteDihedral,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a * b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

fn cycle_label(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

impl FiniteTable {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

impl Group {
    /// Builds and validates a finite group from its Cayley table.
    pub fn from_table(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Group, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GroupError::MalformedTable);
        }
        if labels.len() != n || labels.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(GroupError::BadLabels);
        }
        for i in 0..n {
            let row: BTreeSet<_> = table[i].iter().collect();
            let col: BTreeSet<_> = (0..n).map(|j| &table[j][i]).collect();
            if row.len() != n || col.len() != n {
                return Err(GroupError::NotLatinSquare);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(
                            labels[a].clone(),
                            labels[b].clone(),
                            labels[c].clone(),
                        ));
                    }
                }
            }
        }
        // Latin square plus identity guarantees a unique two-sided inverse.
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("Latin square row contains identity"))
            .collect();
        let mut group = Group {
            kind: GroupKind::Finite(FiniteTable {
                name: name.to_string(),
                labels,
                table,
                identity,
                inverses,
            }),
            generators: Vec::new(),
        };
        group.generators = group.greedy_generators();
        Ok(group)
    }

    /// Same as [`Group::from_table`] but with a declared generating set, which
    /// is checked to generate the whole group.
    pub fn from_table_with_generators(
        name: &str,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        generators: &[usize],
    ) -> Result<Group, GroupError> {
        let mut group = Group::from_table(name, labels, table)?;
        let gens: Vec<GroupElement> = generators.iter().map(|&g| GroupElement::Finite(g)).collect();
        if let Some(order) = group.order() {
            match group.subgroup_closure(&gens, order) {
                Closure::Finite(v) if v.len() == order => {}
                _ => return Err(GroupError::GeneratorsDoNotGenerate),
            }
        }
        group.generators = gens;
        Ok(group)
    }

    fn greedy_generators(&self) -> Vec<GroupElement> {
        let n = self.order().expect("finite");
        let mut gens = Vec::new();
        let mut span: BTreeSet<GroupElement> = [self.identity()].into_iter().collect();
        for i in 0..n {
            let g = GroupElement::Finite(i);
            if !span.contains(&g) {
                gens.push(g);
                if let Closure::Finite(v) = self.subgroup_closure(&gens, n) {
                    span = v.into_iter().collect();
                }
            }
        }
        gens
    }

    fn from_permutation_group(name: &str, elements: Vec<Vec<usize>>, labels: Vec<String>, generators: &[usize]) -> Group {
        let n = elements.len();
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let prod = compose(&elements[a], &elements[b]);
                        elements.iter().position(|p| *p == prod).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        Group::from_table_with_generators(name, labels, table, generators).expect("built-in group is valid")
    }

    /// `Z/n`, labels `0..n-1`.
    pub fn cyclic(n: usize) -> Group {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let gens: &[usize] = if n == 1 { &[] } else { &[1] };
        Group::from_table_with_generators(&format!("Z{n}"), labels, table, gens).expect("cyclic group is valid")
    }

    /// The symmetric group on `n <= 5` points, in cycle notation.
    pub fn symmetric(n: usize) -> Group {
        assert!((1..=5).contains(&n), "symmetric group supported for 1..=5 points");
        let mut perms = permutations(n);
        perms.sort_by_key(|p| {
            let moved = p.iter().enumerate().filter(|(i, x)| *i != **x).count();
            (moved, cycle_label(p))
        });
        let labels: Vec<String> = perms.iter().map(|p| cycle_label(p)).collect();
        let mut gens = Vec::new();
        if n >= 2 {
            let transposition: Vec<usize> = (0..n).map(|i| match i { 0 => 1, 1 => 0, _ => i }).collect();
            gens.push(perms.iter().position(|p| *p == transposition).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(perms.iter().position(|p| *p == cycle).unwrap());
        }
        Group::from_permutation_group(&format!("S{n}"), perms, labels, &gens)
    }

    /// The dihedral group of order `2n`, elements `r^a s^f`.
    pub fn dihedral(n: usize) -> Group {
        assert!(n >= 1, "dihedral group needs n >= 1");
        let elems: Vec<(usize, bool)> = (0..n)
            .map(|a| (a, false))
            .chain((0..n).map(|a| (a, true)))
            .collect();
        let label = |&(a, f): &(usize, bool)| -> String {
            let rot = match a {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{a}"),
            };
            match (rot.is_empty(), f) {
                (true, false) => "e".to_string(),
                (_, false) => rot,
                (_, true) => format!("{rot}s"),
            }
        };
        let labels = elems.iter().map(label).collect();
        let table = elems
            .iter()
            .map(|&(a, f)| {
                elems
                    .iter()
                    .map(|&(b, g)| {
                        let b = if f { (n - b) % n } else { b };
                        let prod = ((a + b) % n, f ^ g);
                        elems.iter().position(|x| *x == prod).unwrap()
                    })
                    .collect()
            })
            .collect();
        let gens: Vec<usize> = if n == 1 { vec![1] } else { vec![1, n] };
        Group::from_table_with_generators(&format!("D{n}"), labels, table, &gens).expect("dihedral group is valid")
    }

    pub fn klein_four() -> Group {
        let labels = ["e", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|x: usize| (0..4).map(|y: usize| x ^ y).collect()).collect();
        Group::from_table_with_generators("V4", labels, table, &[1, 2]).expect("Klein four group is valid")
    }

    pub fn quaternion() -> Group {
        // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let elems: Vec<(bool, usize)> = (0..4).flat_map(|u| [(false, u), (true, u)]).collect();
        let names = ["1", "i", "j", "k"];
        let labels = elems
            .iter()
            .map(|&(neg, u)| format!("{}{}", if neg { "-" } else { "" }, names[u]))
            .collect();
        let table = elems
            .iter()
            .map(|&(sa, ua)| {
                elems
                    .iter()
                    .map(|&(sb, ub)| {
                        let (s, u) = unit_mul(ua, ub);
                        let prod = (s ^ sa ^ sb, u);
                        elems.iter().position(|x| *x == prod).unwrap()
                    })
                    .collect()
            })
            .collect();
        Group::from_table_with_generators("Q8", labels, table, &[2, 4]).expect("quaternion group is valid")
    }

    /// Direct product of two finite groups, labels `(a,b)`.
    pub fn direct_product(a: &Group, b: &Group) -> Result<Group, GroupError> {
        let (ta, tb) = match (&a.kind, &b.kind) {
            (GroupKind::Finite(x), GroupKind::Finite(y)) => (x, y),
            _ => return Err(GroupError::NotFinite(format!("{a} x {b}"))),
        };
        let (na, nb) = (ta.len(), tb.len());
        let labels = (0..na * nb)
            .map(|i| format!("({},{})", ta.labels[i / nb], tb.labels[i % nb]))
            .collect();
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| ta.table[x / nb][y / nb] * nb + tb.table[x % nb][y % nb])
                    .collect()
            })
            .collect();
        let mut gens = Vec::new();
        for g in &a.generators {
            if let GroupElement::Finite(i) = g {
                gens.push(i * nb + tb.identity);
            }
        }
        for g in &b.generators {
            if let GroupElement::Finite(j) = g {
                gens.push(ta.identity * nb + j);
            }
        }
        Group::from_table_with_generators(&format!("{}x{}", ta.name, tb.name), labels, table, &gens)
    }

    pub fn free_abelian(rank: usize) -> Group {
        let generators = (0..rank)
            .map(|i| GroupElement::Lattice((0..rank).map(|j| i64::from(i == j)).collect()))
            .collect();
        Group {
            kind: GroupKind::FreeAbelian { rank },
            generators,
        }
    }

    pub fn infinite_dihedral() -> Group {
        Group {
            kind: GroupKind::InfiniteDihedral,
            generators: vec![Group::dinf_s(), Group::dinf_t()],
        }
    }

    pub fn dinf_s() -> GroupElement {
        GroupElement::Dihedral { n: 0, flip: true }
    }

    pub fn dinf_t() -> GroupElement {
        GroupElement::Dihedral { n: 1, flip: true }
    }

    /// Built-in finite groups by name: `Z<n>`/`C<n>`, `S<n>`, `D<n>`, `V4`,
    /// `Q8`, and products joined with `x` such as `Z2xZ4`.
    pub fn named(name: &str) -> Result<Group, GroupError> {
        let unknown = || GroupError::UnknownGroup(name.to_string());
        if name.contains('x') {
            let mut parts = name.split('x');
            let first = Group::named(parts.next().ok_or_else(unknown)?)?;
            return parts.try_fold(first, |acc, part| Group::direct_product(&acc, &Group::named(part)?));
        }
        match name {
            "V4" | "Klein4" => return Ok(Group::klein_four()),
            "Q8" => return Ok(Group::quaternion()),
            _ => {}
        }
        let (head, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
        let n: usize = digits.parse().map_err(|_| unknown())?;
        match head {
            "Z" | "C" if (1..=64).contains(&n) => Ok(Group::cyclic(n)),
            "S" if (1..=5).contains(&n) => Ok(Group::symmetric(n)),
            "D" if (1..=32).contains(&n) => Ok(Group::dihedral(n)),
            _ => Err(unknown()),
        }
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Group, GroupError> {
        match spec {
            GroupSpec::Finite { name: Some(name), table: None, .. } => Group::named(name),
            GroupSpec::Finite { name, table: Some(table), labels } => {
                let labels = labels
                    .clone()
                    .unwrap_or_else(|| (0..table.len()).map(|i| format!("g{i}")).collect());
                Group::from_table(name.as_deref().unwrap_or("G"), labels, table.clone())
            }
            GroupSpec::Finite { name: None, table: None, .. } => Err(GroupError::MalformedTable),
            GroupSpec::FreeAbelian { k } => Ok(Group::free_abelian(*k)),
            GroupSpec::InfiniteDihedral => Ok(Group::infinite_dihedral()),
        }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn finite_table(&self) -> Option<&FiniteTable> {
        match &self.kind {
            GroupKind::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            GroupKind::Finite(t) => t.name.clone(),
            GroupKind::FreeAbelian { rank } => format!("Z^{rank}"),
            GroupKind::InfiniteDihedral => "D_inf".to_string(),
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.finite_table().map(FiniteTable::len)
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::Finite(t) => (0..t.len()).all(|a| (0..t.len()).all(|b| t.table[a][b] == t.table[b][a])),
            GroupKind::FreeAbelian { .. } => true,
            GroupKind::InfiniteDihedral => false,
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        match &self.kind {
            GroupKind::Finite(t) => t.len() == 1,
            GroupKind::FreeAbelian { .. } => true,
            GroupKind::InfiniteDihedral => false,
        }
    }

    /// All elements, for finite groups.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        self.order().map(|n| (0..n).map(GroupElement::Finite).collect())
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::Finite(t) => GroupElement::Finite(t.identity),
            GroupKind::FreeAbelian { rank } => GroupElement::Lattice(vec![0; *rank]),
            GroupKind::InfiniteDihedral => GroupElement::Dihedral { n: 0, flip: false },
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (&self.kind, g) {
            (GroupKind::Finite(t), GroupElement::Finite(i)) => *i < t.len(),
            (GroupKind::FreeAbelian { rank }, GroupElement::Lattice(v)) => v.len() == *rank,
            (GroupKind::InfiniteDihedral, GroupElement::Dihedral { .. }) => true,
            _ => false,
        }
    }

    pub fn check_member(&self, g: &GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::NotAMember(format!("{g:?}"), self.name()))
        }
    }

    /// Product `a * b` in normal form.
    ///
    /// Panics if either argument is not a member; use [`Group::try_mul`] for
    /// unchecked input.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.try_mul(a, b).expect("group elements of matching kind")
    }

    pub fn try_mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(match (&self.kind, a, b) {
            (GroupKind::Finite(t), GroupElement::Finite(x), GroupElement::Finite(y)) => GroupElement::Finite(t.table[*x][*y]),
            (GroupKind::FreeAbelian { .. }, GroupElement::Lattice(x), GroupElement::Lattice(y)) => {
                GroupElement::Lattice(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupKind::InfiniteDihedral, GroupElement::Dihedral { n, flip }, GroupElement::Dihedral { n: m, flip: f2 }) => {
                GroupElement::Dihedral {
                    n: if *flip { n - m } else { n + m },
                    flip: flip ^ f2,
                }
            }
            _ => unreachable!("membership checked"),
        })
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match (&self.kind, a) {
            (GroupKind::Finite(t), GroupElement::Finite(x)) => GroupElement::Finite(t.inverses[*x]),
            (GroupKind::FreeAbelian { .. }, GroupElement::Lattice(x)) => GroupElement::Lattice(x.iter().map(|v| -v).collect()),
            (GroupKind::InfiniteDihedral, GroupElement::Dihedral { n, flip }) => {
                if *flip {
                    a.clone()
                } else {
                    GroupElement::Dihedral { n: -n, flip: false }
                }
            }
            _ => panic!("element {a:?} does not belong to {}", self.name()),
        }
    }

    pub fn pow(&self, a: &GroupElement, k: u64) -> GroupElement {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn conjugate(&self, by: &GroupElement, g: &GroupElement) -> GroupElement {
        self.mul(&self.mul(by, g), &self.inv(by))
    }

    /// Human-readable label.
    pub fn label(&self, g: &GroupElement) -> String {
        match (&self.kind, g) {
            (GroupKind::Finite(t), GroupElement::Finite(i)) => t.labels[*i].clone(),
            (GroupKind::FreeAbelian { .. }, GroupElement::Lattice(v)) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            (GroupKind::InfiniteDihedral, GroupElement::Dihedral { n, flip }) => match (n, flip) {
                (0, false) => "e".to_string(),
                (0, true) => "s".to_string(),
                (1, true) => "t".to_string(),
                (n, false) if *n < 0 => format!("(st)^{}", -n),
                (n, false) => format!("(ts)^{n}"),
                (n, true) => format!("(ts)^{n}s"),
            },
            _ => format!("{g:?}"),
        }
    }

    /// Instance-file literal: label string, integer array, or `{"n", "flip"}`.
    pub fn literal(&self, g: &GroupElement) -> Value {
        match g {
            GroupElement::Finite(_) => Value::String(self.label(g)),
            GroupElement::Lattice(v) => json!(v),
            GroupElement::Dihedral { n, flip } => json!({"n": n, "flip": flip}),
        }
    }

    pub fn parse_literal(&self, value: &Value) -> Result<GroupElement, GroupError> {
        let bad = || GroupError::BadLiteral(value.to_string());
        let g = match (&self.kind, value) {
            (GroupKind::Finite(t), Value::String(s)) => {
                GroupElement::Finite(t.labels.iter().position(|l| l == s).ok_or_else(bad)?)
            }
            (GroupKind::FreeAbelian { rank }, Value::Array(items)) => {
                let v: Vec<i64> = items.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<Result<_, _>>()?;
                if v.len() != *rank {
                    return Err(bad());
                }
                GroupElement::Lattice(v)
            }
            (GroupKind::FreeAbelian { rank: 1 }, Value::Number(n)) => GroupElement::Lattice(vec![n.as_i64().ok_or_else(bad)?]),
            (GroupKind::InfiniteDihedral, Value::Object(map)) => {
                let n = map.get("n").and_then(Value::as_i64).ok_or_else(bad)?;
                let flip = map.get("flip").and_then(Value::as_bool).ok_or_else(bad)?;
                GroupElement::Dihedral { n, flip }
            }
            (GroupKind::InfiniteDihedral, Value::String(s)) => match s.as_str() {
                "e" => self.identity(),
                "s" => Group::dinf_s(),
                "t" => Group::dinf_t(),
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        };
        Ok(g)
    }

    /// Breadth-first closure of `gens` under multiplication and inversion.
    pub fn subgroup_closure(&self, gens: &[GroupElement], cap: usize) -> Closure {
        let cap = cap.max(1);
        let mut steps: Vec<GroupElement> = Vec::new();
        for g in gens {
            steps.push(g.clone());
            steps.push(self.inv(g));
        }
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let e = self.identity();
        seen.insert(e.clone());
        queue.push_back(e);
        while let Some(x) = queue.pop_front() {
            for s in &steps {
                let y = self.mul(&x, s);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Closure::ExceedsCap;
                    }
                    queue.push_back(y);
                }
            }
        }
        Closure::Finite(seen.into_iter().collect())
    }

    /// `{x g x^-1}` over the given conjugators.
    pub fn conjugacy_class_under(&self, g: &GroupElement, conjugators: &[GroupElement]) -> Vec<GroupElement> {
        let set: BTreeSet<GroupElement> = conjugators.iter().map(|x| self.conjugate(x, g)).chain([g.clone()]).collect();
        set.into_iter().collect()
    }

    pub fn conjugacy_class(&self, g: &GroupElement, cap: usize) -> Closure {
        let cap = cap.max(1);
        let class = match (&self.kind, g) {
            (GroupKind::Finite(_), _) => self.conjugacy_class_under(g, &self.elements().expect("finite")),
            (GroupKind::FreeAbelian { .. }, _) => vec![g.clone()],
            // conjugates of (n, 0) are (n, 0) and (-n, 0); conjugates of
            // (n, 1) are all (m, 1) with m = n mod 2, an infinite set
            (GroupKind::InfiniteDihedral, GroupElement::Dihedral { n, flip: false }) => {
                let set: BTreeSet<GroupElement> = [*n, -*n]
                    .into_iter()
                    .map(|m| GroupElement::Dihedral { n: m, flip: false })
                    .collect();
                set.into_iter().collect()
            }
            (GroupKind::InfiniteDihedral, _) => return Closure::ExceedsCap,
        };
        if class.len() > cap {
            Closure::ExceedsCap
        } else {
            Closure::Finite(class)
        }
    }

    /// Smallest `n <= cap` with `g^n = e`.
    pub fn torsion_check(&self, g: &GroupElement, cap: u64) -> ElementOrder {
        match (&self.kind, g) {
            (GroupKind::FreeAbelian { .. }, GroupElement::Lattice(v)) => {
                if v.iter().all(|&x| x == 0) {
                    ElementOrder::Order(1)
                } else {
                    ElementOrder::InfiniteOrderWitnessed
                }
            }
            (GroupKind::InfiniteDihedral, GroupElement::Dihedral { n, flip }) => match (n, flip) {
                (0, false) => ElementOrder::Order(1),
                (_, true) => ElementOrder::Order(2),
                _ => ElementOrder::InfiniteOrderWitnessed,
            },
            _ => {
                let e = self.identity();
                let mut x = g.clone();
                let mut n = 1;
                while x != e {
                    if n >= cap {
                        return ElementOrder::ExceedsCap;
                    }
                    x = self.mul(&x, g);
                    n += 1;
                }
                ElementOrder::Order(n)
            }
        }
    }

    pub fn is_subgroup(&self, subset: &[GroupElement]) -> bool {
        let set: BTreeSet<&GroupElement> = subset.iter().collect();
        set.contains(&self.identity())
            && subset.iter().all(|x| set.contains(&self.inv(x)) && subset.iter().all(|y| set.contains(&self.mul(x, y))))
    }

    /// `G/N` for finite `G` and normal `N`.
    pub fn quotient_group(&self, normal: &[GroupElement]) -> Result<Quotient, GroupError> {
        let t = self.finite_table().ok_or_else(|| GroupError::NotFinite(self.name()))?;
        for x in normal {
            self.check_member(x)?;
        }
        if !self.is_subgroup(normal) {
            return Err(GroupError::NotSubgroup);
        }
        let members: BTreeSet<&GroupElement> = normal.iter().collect();
        for g in &self.generators {
            if normal.iter().any(|x| !members.contains(&self.conjugate(g, x))) {
                return Err(GroupError::NotNormal(self.label(g)));
            }
        }
        let n = t.len();
        let mut projection = vec![usize::MAX; n];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            if projection[g] != usize::MAX {
                continue;
            }
            let idx = cosets.len();
            let mut coset: Vec<usize> = normal
                .iter()
                .map(|x| match x {
                    GroupElement::Finite(i) => t.table[g][*i],
                    _ => unreachable!(),
                })
                .collect();
            coset.sort_unstable();
            coset.dedup();
            for &c in &coset {
                projection[c] = idx;
            }
            cosets.push(coset);
        }
        let labels: Vec<String> = cosets
            .iter()
            .map(|c| {
                if c.contains(&t.identity) {
                    "N".to_string()
                } else {
                    format!("{}N", t.labels[c[0]])
                }
            })
            .collect();
        let table: Vec<Vec<usize>> = cosets
            .iter()
            .map(|a| cosets.iter().map(|b| projection[t.table[a[0]][b[0]]]).collect())
            .collect();
        let mut gens: Vec<usize> = self
            .generators
            .iter()
            .filter_map(|g| match g {
                GroupElement::Finite(i) => Some(projection[*i]),
                _ => None,
            })
            .filter(|&c| c != projection[t.identity])
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let group = Group::from_table_with_generators(&format!("{}/N", t.name), labels, table, &gens)?;
        Ok(Quotient {
            group,
            projection,
            cosets,
        })
    }

    /// The finite subgroup generated by `gens` as a group of its own, with
    /// the inclusion map. Returns `None` if the closure exceeds `cap`.
    pub fn finite_subgroup(&self, gens: &[GroupElement], cap: usize) -> Option<(Group, Vec<GroupElement>)> {
        let elems = match self.subgroup_closure(gens, cap) {
            Closure::Finite(v) => v,
            Closure::ExceedsCap => return None,
        };
        let e = self.identity();
        let mut ordered = vec![e.clone()];
        ordered.extend(elems.iter().filter(|x| **x != e).cloned());
        let labels = ordered.iter().map(|x| self.label(x)).collect();
        let table = ordered
            .iter()
            .map(|a| {
                ordered
                    .iter()
                    .map(|b| {
                        let p = self.mul(a, b);
                        ordered.iter().position(|x| *x == p).expect("closed")
                    })
                    .collect()
            })
            .collect();
        let gen_idx: Vec<usize> = gens
            .iter()
            .filter(|g| **g != e)
            .map(|g| ordered.iter().position(|x| x == g).expect("generator in closure"))
            .collect();
        let name = format!("<{}>", gens.iter().map(|g| self.label(g)).collect::<Vec<_>>().join(","));
        let group = Group::from_table_with_generators(&name, labels, table, &gen_idx).expect("closed subset is a group");
        Some((group, ordered))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &Group, label: &str) -> GroupElement {
        g.parse_literal(&Value::String(label.to_string())).unwrap()
    }

    #[test]
    fn s3_transposition_is_an_involution() {
        let s3 = Group::symmetric(3);
        let t = el(&s3, "(12)");
        assert_eq!(s3.mul(&t, &t), s3.identity());
        assert_eq!(s3.order(), Some(6));
        assert!(!s3.is_abelian());
    }

    #[test]
    fn s3_labels() {
        let s3 = Group::symmetric(3);
        let labels = s3.finite_table().unwrap().labels().to_vec();
        assert_eq!(labels, ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]);
    }

    #[test]
    fn dinf_normal_forms() {
        let d = Group::infinite_dihedral();
        let (s, t) = (Group::dinf_s(), Group::dinf_t());
        assert_eq!(d.mul(&s, &s), d.identity());
        assert_eq!(d.mul(&t, &t), d.identity());
        let st = d.mul(&s, &t);
        assert_eq!(st, GroupElement::Dihedral { n: -1, flip: false });
        let mut x = st.clone();
        for _ in 1..50 {
            assert_ne!(x, d.identity());
            x = d.mul(&x, &st);
        }
        assert_eq!(d.torsion_check(&st, 1000), ElementOrder::InfiniteOrderWitnessed);
    }

    #[test]
    fn lattice_addition() {
        let z2 = Group::free_abelian(2);
        let a = GroupElement::Lattice(vec![1, 2]);
        let b = GroupElement::Lattice(vec![3, -2]);
        assert_eq!(z2.mul(&a, &b), GroupElement::Lattice(vec![4, 0]));
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let z2 = Group::free_abelian(2);
        assert!(z2.try_mul(&GroupElement::Finite(0), &z2.identity()).is_err());
        assert!(z2.try_mul(&GroupElement::Lattice(vec![1]), &z2.identity()).is_err());
    }

    #[test]
    fn closure_examples() {
        let s3 = Group::symmetric(3);
        let t = el(&s3, "(12)");
        assert_eq!(s3.subgroup_closure(std::slice::from_ref(&t), 100), Closure::Finite(vec![s3.identity(), t]));
        let d = Group::infinite_dihedral();
        assert_eq!(d.subgroup_closure(&[Group::dinf_s(), Group::dinf_t()], 100), Closure::ExceedsCap);
        let z = Group::free_abelian(1);
        assert_eq!(z.subgroup_closure(&[], 10), Closure::Finite(vec![z.identity()]));
    }

    #[test]
    fn conjugacy_examples() {
        let s3 = Group::symmetric(3);
        let class = s3.conjugacy_class(&el(&s3, "(12)"), 100);
        let expected: Vec<GroupElement> = ["(12)", "(13)", "(23)"].iter().map(|l| el(&s3, l)).collect();
        assert_eq!(class, Closure::Finite(expected));
        let z2 = Group::free_abelian(2);
        let g = GroupElement::Lattice(vec![5, 1]);
        assert_eq!(z2.conjugacy_class(&g, 10), Closure::Finite(vec![g]));
        let d = Group::infinite_dihedral();
        assert_eq!(d.conjugacy_class(&Group::dinf_s(), 50), Closure::ExceedsCap);
    }

    #[test]
    fn dinf_flip_conjugates_are_distinct_up_to_cap() {
        // independent enumeration of t^n s t^-n style conjugates
        let d = Group::infinite_dihedral();
        let s = Group::dinf_s();
        let st = d.mul(&s, &Group::dinf_t());
        let mut seen = BTreeSet::new();
        let mut w = d.identity();
        for _ in 0..51 {
            seen.insert(d.conjugate(&w, &s));
            w = d.mul(&w, &st);
        }
        assert_eq!(seen.len(), 51);
    }

    #[test]
    fn quotients() {
        let s3 = Group::symmetric(3);
        let a3: Vec<GroupElement> = ["e", "(123)", "(132)"].iter().map(|l| el(&s3, l)).collect();
        let q = s3.quotient_group(&a3).unwrap();
        assert_eq!(q.group.order(), Some(2));
        let k = vec![s3.identity(), el(&s3, "(12)")];
        assert!(matches!(s3.quotient_group(&k), Err(GroupError::NotNormal(_))));
        let not_sub = vec![s3.identity(), el(&s3, "(123)")];
        assert_eq!(s3.quotient_group(&not_sub).unwrap_err(), GroupError::NotSubgroup);
        let trivial = s3.quotient_group(&[s3.identity()]).unwrap();
        assert_eq!(trivial.group.order(), Some(6));
    }

    #[test]
    fn torsion_examples() {
        let z = Group::free_abelian(1);
        assert_eq!(z.torsion_check(&GroupElement::Lattice(vec![3]), 100), ElementOrder::InfiniteOrderWitnessed);
        let s3 = Group::symmetric(3);
        assert_eq!(s3.torsion_check(&el(&s3, "(123)"), 100), ElementOrder::Order(3));
        assert_eq!(s3.torsion_check(&el(&s3, "(123)"), 2), ElementOrder::ExceedsCap);
        let d = Group::infinite_dihedral();
        assert_eq!(d.torsion_check(&Group::dinf_s(), 100), ElementOrder::Order(2));
    }

    #[test]
    fn table_validation_rejects_bad_tables() {
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert_eq!(Group::from_table("x", labels(2), vec![vec![0, 1], vec![1, 1]]).unwrap_err(), GroupError::NotLatinSquare);
        assert_eq!(Group::from_table("x", labels(2), vec![vec![0, 1]]).unwrap_err(), GroupError::MalformedTable);
        // Latin square with identity 0 but not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(Group::from_table("x", labels(5), t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn named_groups() {
        for (name, order) in [("Z4", 4), ("S3", 6), ("D4", 8), ("V4", 4), ("Q8", 8), ("Z2xZ4", 8), ("Z2xZ2xZ2", 8)] {
            let g = Group::named(name).unwrap();
            assert_eq!(g.order(), Some(order), "{name}");
            assert_eq!(g.subgroup_closure(g.generators(), 100).elements().unwrap().len(), order);
        }
        assert!(!Group::named("Q8").unwrap().is_abelian());
        assert!(!Group::named("D4").unwrap().is_abelian());
        assert!(Group::named("X9").is_err());
    }
}
