//! Bounded instance families verified in bulk.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::Algebra;
use crate::constructions::monoid_to_group_regrade;
use crate::graded::{DegreeWindow, GradedAlgebra};
use crate::group_ring::GroupRing;
use crate::groups::{Group, GroupElement};
use crate::scalar::Field;

use super::fixtures::{triangular, triangular_opposite, truncated_poly_z};
use super::verify::{verify_group_ring, verify_theorems, Status, VerificationReport};
use super::HarnessError;

pub const FAMILIES: &[&str] = &["group-rings", "crossed-products", "zk-graded"];

/// Finite groups the group-ring families draw from, smallest first.
const GROUPS: &[&str] = &["Z1", "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3", "Z7", "Z8", "D4", "Q8", "Z2xZ4", "Z2xZ2xZ2"];

#[derive(Clone, Debug)]
enum Candidate {
    Graded(String, GradedAlgebra),
    GroupRing(String, GroupRing),
}

impl Candidate {
    fn name(&self) -> &str {
        match self {
            Candidate::Graded(n, _) | Candidate::GroupRing(n, _) => n,
        }
    }

    fn verify(&self, cap: usize, budget: u64) -> VerificationReport {
        let name = self.name();
        match self {
            Candidate::Graded(_, r) => verify_theorems(name, r, cap, budget),
            Candidate::GroupRing(_, ring) => verify_group_ring(name, ring, cap, budget).expect("sweep group rings are finite"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConclusionTally {
    pub applies: usize,
    pub holds: usize,
    pub fails: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepTotals {
    pub instances: usize,
    pub pass: usize,
    pub fail: usize,
    pub budget_exceeded: usize,
    pub unsupported: usize,
    pub rejected_candidates: usize,
    pub central_idempotents: usize,
    /// Idempotents of torsion-free abelian instances, and how many lie in `R_e`.
    pub torsion_free_idempotents: usize,
    pub torsion_free_idempotents_principal: usize,
    /// Nonzero idempotents of instances satisfying an annihilator condition,
    /// and how many have a finite support group.
    pub condition_idempotents: usize,
    pub condition_idempotents_finite: usize,
    pub conclusions: BTreeMap<String, ConclusionTally>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub family: String,
    pub fields: Vec<String>,
    pub max_order: usize,
    pub cap: usize,
    pub budget: u64,
    pub totals: SweepTotals,
    pub instances: Vec<VerificationReport>,
}

impl SweepReport {
    pub fn conclusion_failures(&self) -> usize {
        self.totals.conclusions.values().map(|t| t.fails).sum()
    }
}

pub fn parse_field(text: &str) -> Result<Field, HarnessError> {
    match text {
        "Q" => Ok(Field::Rational),
        _ => {
            let p = text
                .strip_prefix('F')
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| HarnessError::Input(format!("field must be Q or Fp, got `{text}`")))?;
            Ok(Field::prime(p)?)
        }
    }
}

pub fn default_fields() -> Vec<Field> {
    vec![
        Field::prime(2).expect("prime"),
        Field::prime(3).expect("prime"),
        Field::prime(5).expect("prime"),
        Field::Rational,
    ]
}

fn is_elementary_two_group(g: &Group) -> bool {
    g.elements()
        .is_some_and(|els| els.iter().all(|x| g.mul(x, x) == g.identity()))
}

fn group_rings(field: Field, max_order: usize) -> Result<Vec<Candidate>, HarnessError> {
    let mut out = Vec::new();
    for name in GROUPS {
        let g = Group::named(name)?;
        let order = g.order().expect("finite");
        if order > max_order {
            continue;
        }
        // over Q only split group algebras are enumerable
        if field.order().is_none() && !is_elementary_two_group(&g) {
            continue;
        }
        let ring = GroupRing::new(Algebra::product(field, 1)?, g.clone())?;
        out.push(Candidate::GroupRing(format!("group-rings/{field}/{field}[{name}]"), ring));
        if field.order().is_some() && order <= 2 {
            let ring = GroupRing::new(Algebra::matrix(field, 2)?, g)?;
            out.push(Candidate::GroupRing(format!("group-rings/{field}/M2({field})[{name}]"), ring));
        }
    }
    Ok(out)
}

/// Crossed products over `Z2` and `Z3` with every unit-valued cocycle table,
/// kept when the validator accepts them.
fn crossed_products(field: Field, max_order: usize) -> Result<(Vec<Candidate>, usize), HarnessError> {
    let mut out = Vec::new();
    let mut rejected = 0;
    let Some(p) = field.order() else {
        return Ok((out, 0));
    };
    let units: Vec<i64> = (1..p as i64).collect();
    let mut push = |name: String, built: Result<GroupRing, _>| match built {
        Ok(ring) => out.push(Candidate::GroupRing(name, ring)),
        Err(_) => rejected += 1,
    };
    if max_order >= 2 {
        let z2 = Group::cyclic(2);
        let s = GroupElement::Finite(1);
        let f = Algebra::product(field, 1)?;
        for &l in &units {
            let cocycle = [(s.clone(), s.clone(), vec![field.from_i64(l)])];
            push(
                format!("crossed-products/{field}/Z2/{field}/s.s={l}"),
                GroupRing::crossed_product(f.clone(), z2.clone(), &[], &cocycle),
            );
        }
        let f2 = Algebra::product(field, 2)?;
        let (zero, one) = (field.zero(), field.one());
        let swap = vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]];
        for (action_name, action) in [("trivial", vec![]), ("swap", vec![(s.clone(), swap)])] {
            for &l1 in &units {
                for &l2 in &units {
                    let cocycle = [(s.clone(), s.clone(), vec![field.from_i64(l1), field.from_i64(l2)])];
                    push(
                        format!("crossed-products/{field}/Z2/{field}^2-{action_name}/s.s=({l1},{l2})"),
                        GroupRing::crossed_product(f2.clone(), z2.clone(), &action, &cocycle),
                    );
                }
            }
        }
    }
    if max_order >= 3 {
        let z3 = Group::cyclic(3);
        let f = Algebra::product(field, 1)?;
        let (g1, g2) = (GroupElement::Finite(1), GroupElement::Finite(2));
        let pairs = [(g1.clone(), g1.clone()), (g1.clone(), g2.clone()), (g2.clone(), g1), (g2.clone(), g2)];
        let n = units.len();
        for code in 0..n.pow(4) {
            let values: Vec<i64> = (0..4).map(|k| units[code / n.pow(k) % n]).collect();
            let cocycle: Vec<_> = pairs
                .iter()
                .zip(&values)
                .map(|((g, h), &v)| (g.clone(), h.clone(), vec![field.from_i64(v)]))
                .collect();
            let tag = values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            push(
                format!("crossed-products/{field}/Z3/{field}/sigma=({tag})"),
                GroupRing::crossed_product(f.clone(), z3.clone(), &[], &cocycle),
            );
        }
    }
    Ok((out, rejected))
}

/// `Z`- and `Z^2`-graded algebras of dimension at most `max_dim`.
fn zk_graded(field: Field, max_dim: usize) -> Result<Vec<Candidate>, HarnessError> {
    let mut out = Vec::new();
    let z1 = Group::free_abelian(1);
    let z2 = Group::free_abelian(2);
    if field.order().is_none() {
        for n in 1..=max_dim {
            let r = GradedAlgebra::trivially_graded(Algebra::product(field, n)?, z1.clone());
            out.push(Candidate::Graded(format!("zk-graded/Q/Q^{n}/trivial-Z"), r));
        }
        for (a, b) in [(1, 2), (2, 2), (2, 3), (2, 4)] {
            if a * b > max_dim {
                continue;
            }
            let alg = Algebra::tensor(&Algebra::product(field, a)?, &Algebra::product(field, b)?)?;
            out.push(Candidate::Graded(
                format!("zk-graded/Q/Q^{a}xQ^{b}/trivial-Z2"),
                GradedAlgebra::trivially_graded(alg, z2.clone()),
            ));
        }
        return Ok(out);
    }
    for n in 1..=max_dim {
        out.push(Candidate::Graded(
            format!("zk-graded/{field}/{field}[t]_(t^{n})"),
            truncated_poly_z(field, n),
        ));
    }
    for a in 2..=max_dim {
        for b in a..=max_dim {
            if a * b > max_dim {
                continue;
            }
            let alg = Algebra::tensor(&Algebra::truncated_poly(field, a)?, &Algebra::truncated_poly(field, b)?)?;
            let degrees: Vec<Vec<i64>> = (0..a * b).map(|x| vec![(x / b) as i64, (x % b) as i64]).collect();
            let r = monoid_to_group_regrade(&alg, &degrees)?.with_window(DegreeWindow {
                max_total_degree: a as i64 - 1,
            });
            out.push(Candidate::Graded(format!("zk-graded/{field}/{field}[x,y]_(x^{a},y^{b})"), r));
        }
    }
    if max_dim >= 4 {
        let m2 = Algebra::matrix(field, 2)?;
        let degrees = [0i64, 1, -1, 0].iter().map(|&d| GroupElement::Lattice(vec![d])).collect();
        out.push(Candidate::Graded(
            format!("zk-graded/{field}/M2({field})/deg=j-i"),
            GradedAlgebra::new(m2, z1.clone(), degrees)?,
        ));
    }
    for n in 1..=3usize {
        if 2 * n + 3 > max_dim {
            continue;
        }
        out.push(Candidate::Graded(format!("zk-graded/{field}/triangular-{n}"), triangular(field, n)));
        out.push(Candidate::Graded(format!("zk-graded/{field}/triangular-{n}-op"), triangular_opposite(field, n)));
    }
    Ok(out)
}

fn candidates(family: &str, field: Field, max_order: usize) -> Result<(Vec<Candidate>, usize), HarnessError> {
    match family {
        "group-rings" => Ok((group_rings(field, max_order)?, 0)),
        "crossed-products" => crossed_products(field, max_order),
        "zk-graded" => Ok((zk_graded(field, max_order)?, 0)),
        other => Err(HarnessError::UnknownFamily(other.to_string())),
    }
}

fn tally(reports: &[VerificationReport], rejected: usize) -> SweepTotals {
    let mut t = SweepTotals {
        instances: reports.len(),
        rejected_candidates: rejected,
        ..SweepTotals::default()
    };
    for r in reports {
        match r.status {
            Status::Pass => t.pass += 1,
            Status::Fail => t.fail += 1,
            Status::BudgetExceeded => t.budget_exceeded += 1,
            Status::Unsupported => t.unsupported += 1,
        }
        t.central_idempotents += r.idempotents.len();
        if r.hypotheses.abelian && r.hypotheses.torsion_free {
            t.torsion_free_idempotents += r.idempotents.len();
            t.torsion_free_idempotents_principal += r.idempotents.iter().filter(|i| i.in_principal_component).count();
        }
        if r.hypotheses.condition_left.holds || r.hypotheses.condition_right.holds {
            let nonzero: Vec<_> = r.idempotents.iter().filter(|i| !i.support.is_empty()).collect();
            t.condition_idempotents += nonzero.len();
            t.condition_idempotents_finite += nonzero.iter().filter(|i| i.support_group.finite).count();
        }
        for c in &r.conclusions {
            let entry = t.conclusions.entry(c.id.clone()).or_default();
            if c.applies {
                entry.applies += 1;
                match c.holds {
                    Some(true) => entry.holds += 1,
                    Some(false) => entry.fails += 1,
                    None => {}
                }
            }
        }
    }
    t
}

/// Builds every instance of `family` for each field, verifies them in
/// parallel and sorts the reports by instance name. `family` may be `all`.
pub fn sweep(family: &str, fields: &[Field], max_order: usize, cap: usize, budget: u64) -> Result<SweepReport, HarnessError> {
    let families: Vec<&str> = if family == "all" { FAMILIES.to_vec() } else { vec![family] };
    let mut all = Vec::new();
    let mut rejected = 0;
    for fam in &families {
        for &field in fields {
            let (c, r) = candidates(fam, field, max_order)?;
            all.extend(c);
            rejected += r;
        }
    }
    let mut reports: Vec<VerificationReport> = all.par_iter().map(|c| c.verify(cap, budget)).collect();
    reports.sort_by(|a, b| a.instance.cmp(&b.instance));
    Ok(SweepReport {
        family: family.to_string(),
        fields: fields.iter().map(|f| f.to_string()).collect(),
        max_order,
        cap,
        budget,
        totals: tally(&reports, rejected),
        instances: reports,
    })
}
