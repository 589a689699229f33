//! Hypothesis checks, central idempotent enumeration and conclusion checks
//! for a single graded instance.

use serde::Serialize;

use crate::graded::{
    ConditionOutcome, EnumerationError, GradedAlgebra, GradedElement, NonDegeneracy, Primeness, Side, StrongGrading,
};
use crate::group_ring::GroupRing;
use crate::groups::{Closure, ElementOrder, GroupElement};

pub const DEFAULT_CAP: usize = 1000;
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub g: String,
    pub h: String,
    pub r: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub abelian: bool,
    pub torsion_free: bool,
    pub unital: bool,
    /// `R_g r != 0` for homogeneous `r != 0`, `g ∈ Supp(R)`.
    pub condition_left: ConditionReport,
    /// `r R_g != 0` for homogeneous `r != 0`, `g ∈ Supp(R)`.
    pub condition_right: ConditionReport,
    pub strongly_graded: String,
    pub non_degenerate_right: bool,
    pub non_degenerate_left: bool,
    pub principal_component: String,
    pub regular_homogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportGroupReport {
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentReport {
    pub element: String,
    pub coordinates: Vec<String>,
    pub support: Vec<String>,
    pub support_group: SupportGroupReport,
    pub in_principal_component: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub id: String,
    pub applies: bool,
    /// `None` when the check could not be carried out.
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub algebra: String,
    pub field: String,
    pub group: String,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    pub hypotheses: Hypotheses,
    pub enumeration: Enumeration,
    pub idempotents: Vec<IdempotentReport>,
    pub conclusions: Vec<Conclusion>,
    pub observations: Vec<String>,
    pub status: Status,
}

impl VerificationReport {
    pub fn failures(&self) -> Vec<&Conclusion> {
        self.conclusions
            .iter()
            .filter(|c| c.applies && c.holds == Some(false))
            .collect()
    }

    /// Whether any conclusion with satisfied hypotheses was checked.
    pub fn any_applicable(&self) -> bool {
        self.conclusions.iter().any(|c| c.applies)
    }
}

pub fn condition_report(r: &GradedAlgebra, outcome: &ConditionOutcome) -> ConditionReport {
    match outcome {
        ConditionOutcome::Holds => ConditionReport { holds: true, witness: None },
        ConditionOutcome::Fails(w) => ConditionReport {
            holds: false,
            witness: Some(Witness {
                g: r.group().label(&w.g),
                h: r.group().label(&w.h),
                r: r.format(&w.r),
            }),
        },
    }
}

pub fn support_group_report(r: &GradedAlgebra, closure: &Closure) -> SupportGroupReport {
    match closure {
        Closure::Finite(v) => SupportGroupReport {
            finite: true,
            order: Some(v.len()),
            elements: Some(v.iter().map(|g| r.group().label(g)).collect()),
        },
        Closure::ExceedsCap => SupportGroupReport {
            finite: false,
            order: None,
            elements: None,
        },
    }
}

fn hypotheses(r: &GradedAlgebra, budget: u64) -> Hypotheses {
    let group = r.group();
    let strongly = match r.check_strongly_graded(DEFAULT_CAP) {
        StrongGrading::StronglyGradedOnSupport => "strongly-graded-on-support".to_string(),
        StrongGrading::Fails { g, h } => format!("fails at ({}, {})", group.label(&g), group.label(&h)),
        StrongGrading::SupportNotClosed => "support-not-closed".to_string(),
    };
    let principal = match r.is_prime_principal(budget) {
        Primeness::Prime => "prime".to_string(),
        Primeness::NotPrime { a, b } => format!("not prime: ({}) R_e ({}) = 0", r.format(&a), r.format(&b)),
        Primeness::Unsupported(why) => format!("undecided: {why}"),
    };
    Hypotheses {
        abelian: group.is_abelian(),
        torsion_free: group.is_torsion_free(),
        unital: r.is_unital(),
        condition_left: condition_report(r, &r.check_condition(Side::Left)),
        condition_right: condition_report(r, &r.check_condition(Side::Right)),
        strongly_graded: strongly,
        non_degenerate_right: r.check_non_degenerate(Side::Right) == NonDegeneracy::Holds,
        non_degenerate_left: r.check_non_degenerate(Side::Left) == NonDegeneracy::Holds,
        principal_component: principal,
        regular_homogeneous: r.regular_homogeneous_elements().is_some(),
    }
}

struct Checked {
    f: GradedElement,
    support: Vec<GroupElement>,
    closure: Closure,
}

fn conclusion(id: &str, applies: bool, holds: Option<bool>, detail: impl Into<String>) -> Conclusion {
    Conclusion {
        id: id.to_string(),
        applies,
        holds: if applies { holds } else { None },
        detail: detail.into(),
    }
}

/// Runs every hypothesis check, enumerates central idempotents, and checks
/// each conclusion whose hypotheses hold.
pub fn verify_theorems(name: &str, r: &GradedAlgebra, cap: usize, budget: u64) -> VerificationReport {
    let group = r.group();
    let hyp = hypotheses(r, budget);
    let e = group.identity();

    let (enumeration, found) = match r.central_idempotents_enumerate(budget) {
        Ok(list) => (
            Enumeration {
                status: "complete".into(),
                count: Some(list.len()),
                detail: None,
            },
            Some(list),
        ),
        Err(err @ EnumerationError::BudgetExceeded { .. }) => (
            Enumeration {
                status: "budget-exceeded".into(),
                count: None,
                detail: Some(err.to_string()),
            },
            None,
        ),
        Err(err @ EnumerationError::Unsupported(_)) => (
            Enumeration {
                status: "unsupported".into(),
                count: None,
                detail: Some(err.to_string()),
            },
            None,
        ),
    };

    let checked: Option<Vec<Checked>> = found.as_ref().map(|list| {
        list.iter()
            .map(|f| {
                let support = r.support(f);
                let closure = group.subgroup_closure(&support, cap);
                Checked {
                    f: f.clone(),
                    support,
                    closure,
                }
            })
            .collect()
    });
    let idempotents = checked
        .as_ref()
        .map(|list| {
            list.iter()
                .map(|c| IdempotentReport {
                    element: r.format(&c.f),
                    coordinates: r.dense(&c.f).iter().map(|x| x.to_string()).collect(),
                    support: c.support.iter().map(|g| group.label(g)).collect(),
                    support_group: support_group_report(r, &c.closure),
                    in_principal_component: c.support.iter().all(|g| *g == e),
                })
                .collect()
        })
        .unwrap_or_default();

    let nonzero: Option<Vec<&Checked>> = checked.as_ref().map(|l| l.iter().filter(|c| !c.f.is_zero()).collect());
    let all_finite = || nonzero.as_ref().map(|l| l.iter().all(|c| c.closure.is_finite()));
    let all_principal = || {
        checked
            .as_ref()
            .map(|l| l.iter().all(|c| c.support.iter().all(|g| *g == e)))
    };
    let finite_or_principal = |torsion_free: bool| {
        if torsion_free {
            all_finite().zip(all_principal()).map(|(a, b)| a && b)
        } else {
            all_finite()
        }
    };
    let count = |l: &Option<Vec<&Checked>>| l.as_ref().map_or(0, Vec::len);

    let mut conclusions = Vec::new();

    // abelian grading group: finite support groups, supports in the torsion subgroup
    let abelian_holds = nonzero.as_ref().map(|l| {
        l.iter().all(|c| {
            c.closure.is_finite()
                && c.support
                    .iter()
                    .all(|g| matches!(group.torsion_check(g, cap as u64), ElementOrder::Order(_)))
        })
    });
    conclusions.push(conclusion(
        "abelian-finite-support",
        hyp.abelian,
        abelian_holds,
        format!("{} nonzero central idempotents checked for finite support group and torsion support", count(&nonzero)),
    ));

    conclusions.push(conclusion(
        "torsion-free-abelian-principal",
        hyp.abelian && hyp.torsion_free,
        all_principal(),
        "every central idempotent lies in the principal component",
    ));

    let annihilator = hyp.condition_left.holds || hyp.condition_right.holds;
    conclusions.push(conclusion(
        "annihilator-condition-finite-support",
        annihilator,
        all_finite(),
        "nonzero central idempotents have finite support group",
    ));

    // the support group of a nonzero central element is FC; exhaustive on finite closures
    let fc = nonzero.as_ref().map(|l| {
        l.iter().all(|c| match &c.closure {
            Closure::Finite(elems) => elems
                .iter()
                .all(|h| group.conjugacy_class_under(h, elems).iter().all(|x| elems.contains(x))),
            Closure::ExceedsCap => hyp.abelian,
        })
    });
    conclusions.push(conclusion(
        "annihilator-condition-fc-support-group",
        annihilator,
        fc,
        "conjugacy classes inside each support group are finite",
    ));

    let strongly = hyp.unital && hyp.strongly_graded == "strongly-graded-on-support";
    conclusions.push(conclusion(
        "strongly-graded-finite-support",
        strongly,
        finite_or_principal(hyp.torsion_free),
        "unital and strongly graded on a subgroup support",
    ));

    conclusions.push(conclusion(
        "regular-homogeneous-finite-support",
        hyp.regular_homogeneous,
        finite_or_principal(hyp.torsion_free),
        "every supported degree has a homogeneous non-zero-divisor",
    ));

    let nondeg = (hyp.non_degenerate_right || hyp.non_degenerate_left) && hyp.principal_component == "prime";
    conclusions.push(conclusion(
        "nondegenerate-prime-finite-support",
        nondeg,
        finite_or_principal(hyp.torsion_free),
        "non-degenerate grading with prime principal component",
    ));

    let componentwise = checked.as_ref().map(|l| {
        l.iter()
            .all(|c| c.support.iter().all(|g| r.is_central(&r.component(&c.f, g))))
    });
    conclusions.push(conclusion(
        "abelian-componentwise-centrality",
        hyp.abelian,
        componentwise,
        "homogeneous components of central idempotents are central",
    ));

    let local_units = r.unit().map(|one| {
        let one_e = r.component(&one, &e);
        (0..r.dim()).all(|i| {
            let b = r.basis_element(i);
            r.mul(&one_e, &b) == b && r.mul(&b, &one_e) == b
        })
    });
    conclusions.push(conclusion(
        "unital-local-units-in-principal",
        hyp.unital,
        local_units,
        "the degree-e part of the identity acts as identity on every basis vector",
    ));

    let mut observations = Vec::new();
    if !conclusions.iter().any(|c| c.id.ends_with("finite-support") && c.applies) {
        observations.push("no finite-support result applies".to_string());
    }
    if let Some(l) = &nonzero {
        let infinite = l.iter().filter(|c| !c.closure.is_finite()).count();
        if infinite > 0 {
            observations.push(format!(
                "{infinite} nonzero central idempotents have support group exceeding cap {cap}"
            ));
        }
    }
    if let Some(w) = r.window() {
        observations.push(format!(
            "hypotheses evaluated on products of total degree at most {}",
            w.max_total_degree
        ));
    }

    let status = if conclusions.iter().any(|c| c.applies && c.holds == Some(false)) {
        Status::Fail
    } else if enumeration.status == "budget-exceeded" {
        Status::BudgetExceeded
    } else if enumeration.status == "unsupported" {
        Status::Unsupported
    } else {
        Status::Pass
    };

    VerificationReport {
        instance: name.to_string(),
        algebra: r.algebra().description().to_string(),
        field: r.field().to_string(),
        group: group.name(),
        dimension: r.dim(),
        window: r.window().map(|w| w.max_total_degree),
        hypotheses: hyp,
        enumeration,
        idempotents,
        conclusions,
        observations,
        status,
    }
}

/// Verifies a group ring or crossed product over a finite group through its
/// graded algebra, and cross-checks the two centrality procedures on every
/// enumerated idempotent and every center basis vector.
pub fn verify_group_ring(name: &str, ring: &GroupRing, cap: usize, budget: u64) -> Option<VerificationReport> {
    let graded = ring.as_graded_algebra().ok()?;
    let mut report = verify_theorems(name, &graded, cap, budget);
    let mut candidates: Vec<GradedElement> = graded
        .algebra()
        .center()
        .iter()
        .map(|v| GradedElement::from_dense(v))
        .collect();
    if let Ok(ids) = graded.central_idempotents_enumerate(budget) {
        candidates.extend(ids);
    }
    let agree = candidates.iter().all(|x| {
        let y = ring.from_graded(x).expect("finite group ring element");
        ring.is_central(&y) == graded.is_central(x)
    });
    report.conclusions.push(Conclusion {
        id: "group-ring-centrality-oracle".into(),
        applies: true,
        holds: Some(agree),
        detail: format!("generator-based and basis-based centrality agree on {} elements", candidates.len()),
    });
    if !agree {
        report.status = Status::Fail;
    }
    Some(report)
}
