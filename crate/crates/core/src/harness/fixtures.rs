//! Registry of worked instances with machine-checked expected facts.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

use crate::coeff::{Algebra, Vector};
use crate::constructions::{dorroh_unitize, embed_phi, restrict_to_subgroup};
use crate::graded::{ConditionOutcome, DegreeWindow, GradedAlgebra, GradedElement, NonDegeneracy, Primeness, Side, StrongGrading};
use crate::group_ring::{GroupRing, GroupRingElement};
use crate::groups::{Closure, Group, GroupElement, GroupError};
use crate::scalar::{Field, Scalar};

use super::verify::{verify_group_ring, verify_theorems, Status, VerificationReport};
use super::HarnessError;

pub const FIXTURE_NAMES: &[&str] = &["dinf-q4", "m2-z", "s3-k", "triangular", "poly-z", "f2-s3", "crossed-f5"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub id: String,
    pub reference: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub description: String,
    pub facts: Vec<Fact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    pub pass: bool,
}

/// The instance behind a fixture.
#[derive(Clone, Debug)]
pub enum FixtureInstance {
    Graded(GradedAlgebra),
    GroupRing(GroupRing),
}

#[derive(Clone, Debug)]
pub enum FixtureElement {
    Graded(GradedElement),
    GroupRing(GroupRingElement),
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub instance: FixtureInstance,
    pub elements: BTreeMap<String, FixtureElement>,
}

impl Fixture {
    pub fn graded(&self) -> Option<&GradedAlgebra> {
        match &self.instance {
            FixtureInstance::Graded(r) => Some(r),
            FixtureInstance::GroupRing(_) => None,
        }
    }

    /// The graded algebra, converting finite group rings.
    pub fn as_graded(&self) -> Option<GradedAlgebra> {
        match &self.instance {
            FixtureInstance::Graded(r) => Some(r.clone()),
            FixtureInstance::GroupRing(ring) => ring.as_graded_algebra().ok(),
        }
    }

    pub fn graded_element(&self, name: &str) -> Option<&GradedElement> {
        match self.elements.get(name)? {
            FixtureElement::Graded(x) => Some(x),
            FixtureElement::GroupRing(_) => None,
        }
    }

    pub fn ring_element(&self, name: &str) -> Option<&GroupRingElement> {
        match self.elements.get(name)? {
            FixtureElement::GroupRing(x) => Some(x),
            FixtureElement::Graded(_) => None,
        }
    }
}

fn q() -> Field {
    Field::Rational
}

fn qv(xs: &[(i64, i64)]) -> Vector {
    xs.iter().map(|&(n, d)| q().from_ratio(n, d)).collect()
}

/// Coordinates of `1, a, b, c` in `Q^4`.
pub fn dinf_q4_basis() -> Vec<Vector> {
    let v = |xs: [i64; 4]| xs.iter().map(|&x| q().from_i64(x)).collect::<Vector>();
    vec![v([1, 1, 1, 1]), v([1, 1, -1, -1]), v([1, -1, 0, 0]), v([0, 0, 1, -1])]
}

/// `Q^4` in the basis `1, a, b, c`, graded by `D_inf` with `1, a` in degree
/// `e`, `b` in degree `s` and `c` in degree `t`.
pub fn dinf_q4() -> GradedAlgebra {
    let labels = ["1", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let mut alg = Algebra::product(q(), 4)
        .and_then(|r| r.rebase(&dinf_q4_basis(), labels))
        .expect("rebasing Q^4");
    alg.set_description("Q^4 in basis 1, a, b, c");
    let g = Group::infinite_dihedral();
    let e = g.identity();
    GradedAlgebra::new(alg, g, vec![e.clone(), e, Group::dinf_s(), Group::dinf_t()]).expect("valid grading")
}

/// `M_2(Q)[Z]`.
pub fn m2_z() -> GroupRing {
    GroupRing::new(Algebra::matrix(q(), 2).expect("M2"), Group::free_abelian(1)).expect("unital coefficients")
}

/// `K = {e, (12)}` in `S_3`, with the inclusion.
pub fn s3_subgroup_k() -> (Group, Group, Vec<GroupElement>) {
    let s3 = Group::symmetric(3);
    let t = s3
        .parse_literal(&serde_json::Value::String("(12)".into()))
        .expect("(12) in S3");
    let (k, inclusion) = s3.finite_subgroup(&[t], 10).expect("order 2");
    (s3, k, inclusion)
}

/// `Q[K]` graded by `S_3` through the inclusion `K ⊂ S_3`.
pub fn s3_k() -> GradedAlgebra {
    let (s3, k, inclusion) = s3_subgroup_k();
    let alg = Algebra::group_algebra(q(), &k).expect("Q[K]");
    GradedAlgebra::new(alg, s3, inclusion).expect("valid grading")
}

/// Upper triangular `[[Q, Q[t]], [0, Q[t]]]` truncated at `t^(n+1) = 0`, graded by
/// `Z` with `E11, E22` in degree 0 and `E12 t^(k-1), E22 t^k` in degree `k`.
/// Degrees up to `n` agree with the untruncated ring.
pub fn triangular(field: Field, n: usize) -> GradedAlgebra {
    // (row, col, power)
    let mut basis = vec![(1usize, 1usize, 0usize), (2, 2, 0)];
    for k in 0..n {
        basis.push((1, 2, k));
        basis.push((2, 2, k + 1));
    }
    basis.push((1, 2, n));
    let degree = |(r, c, p): (usize, usize, usize)| p as i64 + i64::from(r == 1 && c == 2);
    let find = |x: (usize, usize, usize)| basis.iter().position(|y| *y == x);
    let mut constants = Vec::new();
    for (i, &(a, b, p)) in basis.iter().enumerate() {
        for (j, &(c, d, s)) in basis.iter().enumerate() {
            if b == c {
                if let Some(k) = find((a, d, p + s)) {
                    constants.push((i, j, k, field.one()));
                }
            }
        }
    }
    let labels = basis
        .iter()
        .map(|&(r, c, p)| match p {
            0 => format!("E{r}{c}"),
            1 => format!("E{r}{c}*t"),
            _ => format!("E{r}{c}*t^{p}"),
        })
        .collect();
    let mut alg = Algebra::from_constants(field, basis.len(), &constants, Some(labels)).expect("triangular ring");
    alg.set_description(&format!("triangular ring over {field}[t]/(t^{})", n + 1));
    let z = Group::free_abelian(1);
    let degrees = basis.iter().map(|&x| GroupElement::Lattice(vec![degree(x)])).collect();
    GradedAlgebra::new(alg, z, degrees)
        .expect("valid grading")
        .with_window(DegreeWindow {
            max_total_degree: n as i64,
        })
}

/// The opposite ring of [`triangular`] with the same degrees.
pub fn triangular_opposite(field: Field, n: usize) -> GradedAlgebra {
    let r = triangular(field, n);
    let window = r.window().cloned();
    let mut op = GradedAlgebra::new(r.algebra().opposite(), r.group().clone(), r.degrees().to_vec()).expect("valid");
    if let Some(w) = window {
        op = op.with_window(w);
    }
    op
}

/// `F[t]/(t^n)` graded by `Z` with `deg t = 1`.
pub fn truncated_poly_z(field: Field, n: usize) -> GradedAlgebra {
    let alg = Algebra::truncated_poly(field, n).expect("truncated polynomial ring");
    let degrees = (0..n).map(|i| GroupElement::Lattice(vec![i as i64])).collect();
    GradedAlgebra::new(alg, Group::free_abelian(1), degrees)
        .expect("valid grading")
        .with_window(DegreeWindow {
            max_total_degree: n as i64 - 1,
        })
}

/// `F_5 *_σ Z_2` with trivial action and `σ(s, s) = 2`.
pub fn crossed_f5() -> GroupRing {
    let f5 = Field::prime(5).expect("5 is prime");
    let s = GroupElement::Finite(1);
    GroupRing::crossed_product(
        Algebra::product(f5, 1).expect("F5"),
        Group::cyclic(2),
        &[],
        &[(s.clone(), s, vec![f5.from_i64(2)])],
    )
    .expect("valid cocycle")
}

pub fn fixture(name: &str) -> Result<Fixture, HarnessError> {
    let mut elements = BTreeMap::new();
    let (description, instance) = match name {
        "dinf-q4" => {
            let r = dinf_q4();
            let h = (1, 2);
            elements.insert("f".into(), FixtureElement::Graded(r.element(&qv(&[h, (0, 1), h, h]))));
            for (i, label) in ["1", "a", "b", "c"].iter().enumerate() {
                elements.insert(label.to_string(), FixtureElement::Graded(r.basis_element(i)));
            }
            ("Q^4 graded by the infinite dihedral group", FixtureInstance::Graded(r))
        }
        "m2-z" => {
            let ring = m2_z();
            let m2 = ring.coeff().clone();
            let f = ring
                .element(vec![
                    (GroupElement::Lattice(vec![0]), m2.basis(0)),
                    (GroupElement::Lattice(vec![1]), m2.basis(1)),
                ])
                .expect("terms in M2(Q)[Z]");
            elements.insert("f".into(), FixtureElement::GroupRing(f));
            ("M2(Q)[Z] with E11 u_0 + E12 u_1", FixtureInstance::GroupRing(ring))
        }
        "s3-k" => {
            let r = s3_k();
            let h = (1, 2);
            elements.insert("f".into(), FixtureElement::Graded(r.element(&qv(&[h, h]))));
            ("Q[K] for K = <(12)>, graded by S3", FixtureInstance::Graded(r))
        }
        "triangular" => (
            "triangular ring over Q[t], graded by Z, truncated at degree 4",
            FixtureInstance::Graded(triangular(q(), 3)),
        ),
        "poly-z" => (
            "F3[t]/(t^4) graded by Z",
            FixtureInstance::Graded(truncated_poly_z(Field::prime(3).expect("prime"), 4)),
        ),
        "f2-s3" => (
            "F2[S3] with its canonical grading",
            FixtureInstance::GroupRing(
                GroupRing::new(Algebra::product(Field::prime(2).expect("prime"), 1).expect("F2"), Group::symmetric(3))
                    .expect("unital"),
            ),
        ),
        "crossed-f5" => (
            "F5 *_σ Z2 with σ(s,s) = 2",
            FixtureInstance::GroupRing(crossed_f5()),
        ),
        other => return Err(HarnessError::UnknownFixture(other.to_string())),
    };
    Ok(Fixture {
        name: name.to_string(),
        description: description.to_string(),
        instance,
        elements,
    })
}

struct Facts {
    reference: &'static str,
    facts: Vec<Fact>,
}

impl Facts {
    fn new(reference: &'static str) -> Facts {
        Facts {
            reference,
            facts: Vec::new(),
        }
    }

    fn check(&mut self, id: &str, expected: impl Display, observed: impl Display) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        self.facts.push(Fact {
            id: id.to_string(),
            reference: self.reference.to_string(),
            pass: expected == observed,
            expected,
            observed,
        });
    }
}

fn set_of(group: &Group, elems: &[GroupElement]) -> String {
    let labels: Vec<String> = elems.iter().map(|g| group.label(g)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn closure_text(group: &Group, c: &Closure) -> String {
    match c {
        Closure::Finite(v) => set_of(group, v),
        Closure::ExceedsCap => "exceeds-cap".into(),
    }
}

fn condition_text(r: &GradedAlgebra, outcome: &ConditionOutcome) -> String {
    match outcome {
        ConditionOutcome::Holds => "holds".into(),
        ConditionOutcome::Fails(w) => format!(
            "fails at g={}, h={}, r={}",
            r.group().label(&w.g),
            r.group().label(&w.h),
            r.format(&w.r)
        ),
    }
}

fn coords_text(v: &[Scalar]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn run_fixture(name: &str, cap: usize, budget: u64) -> Result<FixtureReport, HarnessError> {
    let fx = fixture(name)?;
    let (facts, verification) = match name {
        "dinf-q4" => dinf_q4_facts(&fx, cap, budget),
        "m2-z" => m2_z_facts(&fx),
        "s3-k" => s3_k_facts(&fx, cap, budget),
        "triangular" => triangular_facts(&fx, cap, budget),
        "poly-z" => poly_z_facts(&fx, cap, budget),
        "f2-s3" => f2_s3_facts(&fx, cap, budget),
        "crossed-f5" => crossed_f5_facts(&fx, cap, budget),
        _ => unreachable!("fixture registry and fact table agree"),
    };
    let pass = facts.iter().all(|f| f.pass) && verification.as_ref().is_none_or(|v| v.status != Status::Fail);
    Ok(FixtureReport {
        name: fx.name,
        description: fx.description,
        facts,
        verification,
        pass,
    })
}

pub fn run_all_fixtures(cap: usize, budget: u64) -> Vec<FixtureReport> {
    FIXTURE_NAMES
        .iter()
        .map(|n| run_fixture(n, cap, budget).expect("registered fixture"))
        .collect()
}

type FactResult = (Vec<Fact>, Option<VerificationReport>);

fn dinf_q4_facts(fx: &Fixture, cap: usize, budget: u64) -> FactResult {
    let r = fx.graded().expect("graded fixture");
    let el = |n: &str| fx.graded_element(n).expect("named element").clone();
    let (f, one, a, b, c) = (el("f"), el("1"), el("a"), el("b"), el("c"));
    let g = r.group();
    let mut facts = Facts::new("infinite dihedral counterexample");

    let basis = dinf_q4_basis();
    let coords = r.dense(&f);
    let standard: Vector = (0..4)
        .map(|k| (0..4).fold(q().zero(), |acc, i| &acc + &(&coords[i] * &basis[i][k])))
        .collect();
    facts.check("f-standard-coordinates", "(1, 0, 1, 0)", coords_text(&standard));
    facts.check("f-idempotent", true, r.is_idempotent(&f));
    facts.check("f-central", true, r.is_central(&f));
    facts.check("f-support", "{e, s, t}", set_of(g, &r.support(&f)));
    facts.check("f-support-group-cap-100", "exceeds-cap", closure_text(g, &r.support_group(&f, 100)));
    facts.check("f-component-e", "1/2*1", r.format(&r.component(&f, &g.identity())));
    facts.check("f-component-s", "1/2*b", r.format(&r.component(&f, &Group::dinf_s())));
    let half = q().from_ratio(1, 2);
    let expected_b2 = r.scale(&half, &r.add(&one, &a));
    let expected_c2 = r.scale(&half, &r.sub(&one, &a));
    facts.check("b-squared", r.format(&expected_b2), r.format(&r.mul(&b, &b)));
    facts.check("c-squared", r.format(&expected_c2), r.format(&r.mul(&c, &c)));
    facts.check("bc-zero", "0", r.format(&r.mul(&b, &c)));
    facts.check("b-plus-c-support", "{s, t}", set_of(g, &r.support(&r.add(&b, &c))));
    facts.check("b-not-idempotent", false, r.is_idempotent(&b));
    facts.check("condition-left", "fails at g=s, h=t, r=c", condition_text(r, &r.check_condition(Side::Left)));
    facts.check("condition-right", "fails at g=s, h=t, r=c", condition_text(r, &r.check_condition(Side::Right)));
    facts.check(
        "strongly-graded",
        "support-not-closed",
        matches!(r.check_strongly_graded(cap), StrongGrading::SupportNotClosed).then_some("support-not-closed").unwrap_or("other"),
    );
    facts.check("non-degenerate-right", true, r.check_non_degenerate(Side::Right) == NonDegeneracy::Holds);
    facts.check(
        "principal-component-prime",
        false,
        !matches!(r.is_prime_principal(budget), Primeness::NotPrime { .. }),
    );
    facts.check("identity", "1", r.unit().map_or("none".into(), |u| r.format(&u)));

    let d = dorroh_unitize(r);
    let pf = d.psi(&f);
    facts.check("dorroh-psi-f-central-idempotent", true, d.is_central(&pf) && d.is_idempotent(&pf));
    facts.check("dorroh-psi-f-support", "{e, s, t}", set_of(g, &d.support(&pf)));
    facts.check(
        "dorroh-phi-support",
        "{e, s, t}",
        set_of(g, &d.phi(&pf).keys().cloned().collect::<Vec<_>>()),
    );
    let phi = embed_phi(r).expect("unital");
    facts.check("phi-support", "{e, s, t}", set_of(g, &phi.apply(&f).support()));
    let (sub, _) = restrict_to_subgroup(r, &[g.identity(), Group::dinf_s()]).expect("<s> is a subgroup");
    facts.check("restrict-to-s", "1, a, b", sub.algebra().labels().join(", "));

    let report = verify_theorems(&fx.name, r, cap, budget);
    let infinite_central = report.idempotents.iter().any(|i| !i.support_group.finite);
    facts.check(
        "no-finite-support-result-applies",
        true,
        !report.conclusions.iter().any(|c| c.applies && c.id.ends_with("finite-support") && c.id != "abelian-finite-support"),
    );
    facts.check("observed-infinite-support-group", true, infinite_central);
    (facts.facts, Some(report))
}

fn m2_z_facts(fx: &Fixture) -> FactResult {
    let FixtureInstance::GroupRing(ring) = &fx.instance else {
        unreachable!("group ring fixture")
    };
    let f = fx.ring_element("f").expect("f");
    let g = ring.group();
    let mut facts = Facts::new("matrix coefficients over Z");
    facts.check("f-idempotent", true, ring.is_idempotent(f));
    facts.check("f-central", false, ring.is_central(f));
    facts.check("f-support", "{(0), (1)}", set_of(g, &f.support()));
    for cap in [2usize, 100, 1000] {
        facts.check(
            &format!("f-support-group-cap-{cap}"),
            "exceeds-cap",
            closure_text(g, &ring.support_group(f, cap)),
        );
    }
    facts.check("identity-support-group", "{(0)}", closure_text(g, &ring.support_group(&ring.one(), 10)));
    (facts.facts, None)
}

fn s3_k_facts(fx: &Fixture, cap: usize, budget: u64) -> FactResult {
    let r = fx.graded().expect("graded fixture");
    let f = fx.graded_element("f").expect("f");
    let g = r.group();
    let mut facts = Facts::new("non-normal subgroup of S3");
    facts.check("f-nonzero", true, !f.is_zero());
    facts.check("f-idempotent", true, r.is_idempotent(f));
    facts.check("f-central", true, r.is_central(f));
    facts.check("f-support-group", "{e, (12)}", closure_text(g, &r.support_group(f, cap)));
    let (_, k, inclusion) = s3_subgroup_k();
    let quotient = match g.quotient_group(&inclusion) {
        Err(GroupError::NotNormal(_)) => "not-normal".to_string(),
        Err(e) => e.to_string(),
        Ok(_) => "normal".to_string(),
    };
    facts.check("quotient-by-k", "not-normal", quotient);
    facts.check("condition-left", "holds", condition_text(r, &r.check_condition(Side::Left)));
    let ring = GroupRing::new(Algebra::group_algebra(q(), &Group::cyclic(1)).expect("Q"), k).expect("unital");
    let h = q().from_ratio(1, 2);
    let gf = ring
        .element(vec![
            (GroupElement::Finite(0), vec![h.clone()]),
            (GroupElement::Finite(1), vec![h]),
        ])
        .expect("terms");
    facts.check("group-ring-f-central", true, ring.is_central(&gf));
    facts.check("group-ring-f-idempotent", true, ring.is_idempotent(&gf));
    (facts.facts, Some(verify_theorems(&fx.name, r, cap, budget)))
}

fn triangular_facts(fx: &Fixture, cap: usize, budget: u64) -> FactResult {
    let r = fx.graded().expect("graded fixture");
    let mut facts = Facts::new("triangular ring over Z");
    facts.check("condition-left", "fails at g=(1), h=(0), r=E11", condition_text(r, &r.check_condition(Side::Left)));
    facts.check("condition-right", "holds", condition_text(r, &r.check_condition(Side::Right)));
    let op = triangular_opposite(q(), 3);
    facts.check("opposite-condition-left", "holds", condition_text(&op, &op.check_condition(Side::Left)));
    facts.check(
        "opposite-condition-right-fails",
        true,
        !op.check_condition(Side::Right).holds(),
    );
    let nd = match r.check_non_degenerate(Side::Right) {
        NonDegeneracy::Holds => "holds".to_string(),
        NonDegeneracy::Fails { g, .. } => format!("fails at g={}", r.group().label(&g)),
    };
    facts.check("non-degenerate-right", "fails at g=(1)", nd);
    // the rational ring is not split; the same ring over F3 is enumerable
    let f3 = triangular(Field::prime(3).expect("prime"), 3);
    let over_f3 = verify_theorems("triangular-f3", &f3, cap, budget);
    let listed: Vec<String> = over_f3.idempotents.iter().map(|i| i.element.clone()).collect();
    facts.check("f3-central-idempotents", "0; E11 + E22", listed.join("; "));
    facts.check(
        "f3-central-idempotents-in-degree-0",
        true,
        over_f3.idempotents.iter().all(|i| i.in_principal_component),
    );
    (facts.facts, Some(verify_theorems(&fx.name, r, cap, budget)))
}

fn poly_z_facts(fx: &Fixture, cap: usize, budget: u64) -> FactResult {
    let r = fx.graded().expect("graded fixture");
    let mut facts = Facts::new("truncated polynomial ring over Z");
    let report = verify_theorems(&fx.name, r, cap, budget);
    let listed: Vec<String> = report.idempotents.iter().map(|i| i.element.clone()).collect();
    facts.check("central-idempotents", "0; 1", listed.join("; "));
    let a = report
        .conclusions
        .iter()
        .find(|c| c.id == "torsion-free-abelian-principal")
        .expect("conclusion present");
    facts.check("principal-result-applies", true, a.applies);
    facts.check("principal-result-holds", "Some(true)", format!("{:?}", a.holds));
    (facts.facts, Some(report))
}

fn f2_s3_facts(fx: &Fixture, cap: usize, budget: u64) -> FactResult {
    let FixtureInstance::GroupRing(ring) = &fx.instance else {
        unreachable!("group ring fixture")
    };
    let r = ring.as_graded_algebra().expect("finite group");
    let mut facts = Facts::new("group algebra of S3 over F2");
    facts.check("dimension", 6, r.dim());
    facts.check("condition-left", "holds", condition_text(&r, &r.check_condition(Side::Left)));
    let a3: Vec<GroupElement> = ["e", "(123)", "(132)"]
        .iter()
        .map(|l| r.group().parse_literal(&serde_json::Value::String(l.to_string())).expect("label"))
        .collect();
    let (quotient, _) = crate::constructions::quotient_regrade(&r, &a3).expect("A3 is normal");
    facts.check(
        "quotient-principal-dimension",
        3,
        quotient.component_basis(&quotient.group().identity()).len(),
    );
    let report = verify_group_ring(&fx.name, ring, cap, budget).expect("finite group");
    facts.check("central-idempotent-count", "Some(4)", format!("{:?}", report.enumeration.count));
    facts.check(
        "nonzero-idempotents-finite-support",
        true,
        report.idempotents.iter().all(|i| i.support_group.finite),
    );
    (facts.facts, Some(report))
}

fn crossed_f5_facts(fx: &Fixture, cap: usize, budget: u64) -> FactResult {
    let FixtureInstance::GroupRing(ring) = &fx.instance else {
        unreachable!("group ring fixture")
    };
    let f5 = ring.coeff().field();
    let s = GroupElement::Finite(1);
    let us = ring.u(&s);
    let mut facts = Facts::new("twisted group algebra of Z2 over F5");
    facts.check("u-s-squared", ring.format(&ring.monomial(vec![f5.from_i64(2)], ring.group().identity()).expect("term")), ring.format(&ring.mul(&us, &us)));
    let r = ring.as_graded_algebra().expect("finite group");
    facts.check("condition-left", "holds", condition_text(&r, &r.check_condition(Side::Left)));
    facts.check("condition-right", "holds", condition_text(&r, &r.check_condition(Side::Right)));
    facts.check("regular-homogeneous", true, r.regular_homogeneous_elements().is_some());
    facts.check(
        "strongly-graded",
        true,
        r.check_strongly_graded(cap) == StrongGrading::StronglyGradedOnSupport,
    );
    let report = verify_group_ring(&fx.name, ring, cap, budget).expect("finite group");
    facts.check("central-idempotent-count", "Some(2)", format!("{:?}", report.enumeration.count));
    (facts.facts, Some(report))
}
