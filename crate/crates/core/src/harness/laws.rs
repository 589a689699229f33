//! Seeded randomized checks of the construction laws on each fixture.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::coeff::{Algebra, Vector};
use crate::constructions::{dorroh_unitize, embed_phi, DorrohElement};
use crate::graded::{GradedAlgebra, GradedElement};
use crate::groups::{Group, GroupElement};
use crate::scalar::{Field, Scalar};

use super::fixtures::{fixture, FIXTURE_NAMES};
use super::HarnessError;

pub const DEFAULT_SAMPLES: usize = 500;
pub const DEFAULT_SEED: u64 = 0x6772_6c5f_6c61_7773;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub fixture: String,
    pub law: String,
    pub checks: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl LawReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    fixture: String,
    law: &'static str,
    checks: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(fixture: &str, law: &'static str) -> Tally {
        Tally {
            fixture: fixture.to_string(),
            law,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn finish(self) -> LawReport {
        LawReport {
            fixture: self.fixture,
            law: self.law.to_string(),
            checks: self.checks,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

pub fn random_scalar(field: Field, rng: &mut StdRng) -> Scalar {
    match field.order() {
        Some(p) => field.from_i64(rng.gen_range(0..p) as i64),
        None => field.from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
    }
}

/// Each coordinate is nonzero with probability about one half.
pub fn random_vector(field: Field, dim: usize, rng: &mut StdRng) -> Vector {
    (0..dim)
        .map(|_| if rng.gen_bool(0.5) { random_scalar(field, rng) } else { field.zero() })
        .collect()
}

fn random_element(r: &GradedAlgebra, rng: &mut StdRng) -> GradedElement {
    r.element(&random_vector(r.field(), r.dim(), rng))
}

fn random_central(r: &GradedAlgebra, center: &[Vector], rng: &mut StdRng) -> GradedElement {
    let alg = r.algebra();
    let v = center.iter().fold(alg.zero(), |acc, z| {
        let c = random_scalar(r.field(), rng);
        alg.add(&acc, &alg.scale(&c, z))
    });
    r.element(&v)
}

fn random_dorroh(r: &GradedAlgebra, rng: &mut StdRng) -> DorrohElement {
    DorrohElement {
        r: random_element(r, rng),
        n: BigInt::from(rng.gen_range(-3i64..=3)),
    }
}

/// The graded ring each fixture's laws run on. `m2-z` is infinite
/// dimensional, so its coefficient ring `M_2(Q)` with `deg E_ij = j - i`
/// stands in.
pub fn law_ring(name: &str) -> Result<GradedAlgebra, HarnessError> {
    if name == "m2-z" {
        let alg = Algebra::matrix(Field::Rational, 2)?;
        let degrees = [0i64, 1, -1, 0].iter().map(|&d| GroupElement::Lattice(vec![d])).collect();
        return Ok(GradedAlgebra::new(alg, Group::free_abelian(1), degrees)?);
    }
    fixture(name)?
        .as_graded()
        .ok_or_else(|| HarnessError::Input(format!("fixture `{name}` has no finite graded form")))
}

pub fn check_laws(name: &str, r: &GradedAlgebra, samples: usize, seed: u64) -> Result<Vec<LawReport>, HarnessError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let phi = embed_phi(r)?;
    let target = phi.target();
    let d = dorroh_unitize(r);
    let center = r.algebra().center();
    let show = |x: &GradedElement| r.format(x);

    let mut phi_mul = Tally::new(name, "phi-multiplicative");
    let mut phi_add = Tally::new(name, "phi-additive");
    let mut phi_support = Tally::new(name, "phi-support");
    let mut phi_unit = Tally::new(name, "phi-unital");
    let mut dorroh_assoc = Tally::new(name, "dorroh-associative");
    let mut dorroh_dist = Tally::new(name, "dorroh-distributive");
    let mut dorroh_unit = Tally::new(name, "dorroh-identity");
    let mut dorroh_psi = Tally::new(name, "dorroh-psi-homomorphism");
    let mut dorroh_central = Tally::new(name, "dorroh-psi-centrality");
    let mut componentwise = Tally::new(name, "componentwise-centrality");
    let mut phi_central = Tally::new(name, "phi-centrality");
    let mut pipeline = Tally::new(name, "dorroh-phi-centrality");

    let unit = r.unit().expect("embed_phi succeeded, so the ring is unital");
    phi_unit.record(phi.apply(&unit) == target.one(), || "phi(1) != 1".into());

    for _ in 0..samples {
        let (x, y) = (random_element(r, &mut rng), random_element(r, &mut rng));
        let (px, py) = (phi.apply(&x), phi.apply(&y));
        phi_mul.record(phi.apply(&r.mul(&x, &y)) == target.mul(&px, &py), || {
            format!("x = {}, y = {}", show(&x), show(&y))
        });
        phi_add.record(phi.apply(&r.add(&x, &y)) == target.add(&px, &py), || {
            format!("x = {}, y = {}", show(&x), show(&y))
        });
        phi_support.record(px.support() == r.support(&x), || format!("x = {}", show(&x)));

        let (a, b, c) = (random_dorroh(r, &mut rng), random_dorroh(r, &mut rng), random_dorroh(r, &mut rng));
        dorroh_assoc.record(d.mul(&d.mul(&a, &b), &c) == d.mul(&a, &d.mul(&b, &c)), || "(ab)c != a(bc)".into());
        let left = d.mul(&a, &d.add(&b, &c)) == d.add(&d.mul(&a, &b), &d.mul(&a, &c));
        let right = d.mul(&d.add(&a, &b), &c) == d.add(&d.mul(&a, &c), &d.mul(&b, &c));
        dorroh_dist.record(left && right, || "distributivity fails".into());
        dorroh_unit.record(d.mul(&d.one(), &a) == a && d.mul(&a, &d.one()) == a, || "1 is not a two-sided identity".into());
        dorroh_psi.record(d.psi(&r.mul(&x, &y)) == d.mul(&d.psi(&x), &d.psi(&y)), || {
            format!("x = {}, y = {}", show(&x), show(&y))
        });

        let z = random_central(r, &center, &mut rng);
        let z_central = r.is_central(&z);
        dorroh_central.record(z_central && d.is_central(&d.psi(&z)), || format!("z = {}", show(&z)));
        // psi reflects centrality: a non-central x stays non-central
        dorroh_central.record(r.is_central(&x) == d.is_central(&d.psi(&x)), || format!("x = {}", show(&x)));
        if r.group().is_abelian() {
            let ok = r.support(&z).iter().all(|g| r.is_central(&r.component(&z, g)));
            componentwise.record(ok, || format!("z = {}", show(&z)));
            phi_central.record(target.is_central(&phi.apply(&z)), || format!("z = {}", show(&z)));
            let lifted = d.phi(&d.psi(&z));
            let same_support = lifted.keys().cloned().collect::<Vec<_>>() == r.support(&z);
            pipeline.record(same_support && d.group_ring_is_central(&lifted), || format!("z = {}", show(&z)));
        }
    }

    let mut out = vec![
        phi_mul.finish(),
        phi_add.finish(),
        phi_support.finish(),
        phi_unit.finish(),
        dorroh_assoc.finish(),
        dorroh_dist.finish(),
        dorroh_unit.finish(),
        dorroh_psi.finish(),
        dorroh_central.finish(),
    ];
    if r.group().is_abelian() {
        out.push(componentwise.finish());
        out.push(phi_central.finish());
        out.push(pipeline.finish());
    }
    Ok(out)
}

/// Runs the laws on every fixture, each with its own seed offset.
pub fn check_all_laws(samples: usize, seed: u64) -> Result<Vec<LawReport>, HarnessError> {
    let mut out = Vec::new();
    for (i, name) in FIXTURE_NAMES.iter().enumerate() {
        let r = law_ring(name)?;
        out.extend(check_laws(name, &r, samples, seed.wrapping_add(i as u64))?);
    }
    Ok(out)
}
