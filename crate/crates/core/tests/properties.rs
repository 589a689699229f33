use std::collections::BTreeSet;

use grl::constructions::quotient_regrade;
use grl::graded::GradedAlgebra;
use grl::harness::fixtures::{dinf_q4, triangular, truncated_poly_z};
use grl::{Algebra, Closure, Field, Group, GroupElement, GroupRing, Scalar};
use proptest::prelude::*;

fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn scalars(field: Field, xs: &[(i64, i64)]) -> Vec<Scalar> {
    xs.iter()
        .map(|&(n, d)| match field.order() {
            Some(_) => field.from_i64(n),
            None => field.from_ratio(n, d),
        })
        .collect()
}

fn coeffs(dim: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), dim)
}

fn finite_groups() -> Vec<Group> {
    ["Z1", "Z2", "Z5", "V4", "S3", "D4", "Q8", "Z2xZ4"]
        .iter()
        .map(|n| Group::named(n).unwrap())
        .collect()
}

#[test]
fn finite_group_axioms_exhaustive() {
    for g in finite_groups() {
        let els = g.elements().unwrap();
        let e = g.identity();
        for a in &els {
            assert_eq!(g.mul(a, &e), *a);
            assert_eq!(g.mul(&e, a), *a);
            assert_eq!(g.mul(a, &g.inv(a)), e);
            for b in &els {
                for c in &els {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)), "{}", g.name());
                }
            }
        }
    }
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    let s3 = Group::symmetric(3);
    let d4 = Group::named("D4").unwrap();
    let z2z4 = Group::named("Z2xZ4").unwrap();
    let cases = [
        (s3.clone(), s3.elements().unwrap().into_iter().filter(|x| s3.torsion_check(x, 10) != grl::ElementOrder::Order(2)).collect::<Vec<_>>()),
        (d4.clone(), d4.subgroup_closure(&[d4.pow(&d4.generators()[0], 2)], 100).elements().unwrap().to_vec()),
        (z2z4.clone(), z2z4.subgroup_closure(&[z2z4.generators()[1].clone()], 100).elements().unwrap().to_vec()),
    ];
    for (g, n) in cases {
        let q = g.quotient_group(&n).unwrap();
        let els = g.elements().unwrap();
        let image: BTreeSet<GroupElement> = els.iter().map(|x| q.project(x)).collect();
        assert_eq!(image.len(), q.group.order().unwrap());
        for a in &els {
            for b in &els {
                assert_eq!(q.project(&g.mul(a, b)), q.group.mul(&q.project(a), &q.project(b)));
            }
        }
    }
}

fn lattice(k: usize) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(-50i64..=50, k).prop_map(GroupElement::Lattice)
}

fn dihedral() -> impl Strategy<Value = GroupElement> {
    (-50i64..=50, any::<bool>()).prop_map(|(n, flip)| GroupElement::Dihedral { n, flip })
}

fn check_axioms(g: &Group, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Result<(), TestCaseError> {
    let e = g.identity();
    prop_assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
    prop_assert_eq!(g.mul(a, &e), a.clone());
    prop_assert_eq!(g.mul(&e, a), a.clone());
    prop_assert_eq!(g.mul(a, &g.inv(a)), e);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lattice_axioms(a in lattice(2), b in lattice(2), c in lattice(2)) {
        check_axioms(&Group::free_abelian(2), &a, &b, &c)?;
    }

    #[test]
    fn dihedral_axioms(a in dihedral(), b in dihedral(), c in dihedral()) {
        check_axioms(&Group::infinite_dihedral(), &a, &b, &c)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closures_are_closed(gi in 0usize..8, picks in prop::collection::vec(0usize..8, 0..3)) {
        let groups = finite_groups();
        let g = &groups[gi];
        let els = g.elements().unwrap();
        let gens: Vec<GroupElement> = picks.iter().map(|&i| els[i % els.len()].clone()).collect();
        let Closure::Finite(h) = g.subgroup_closure(&gens, 1000) else { panic!("finite group") };
        for x in &h {
            prop_assert!(h.contains(&g.inv(x)));
            for y in &h {
                prop_assert!(h.contains(&g.mul(x, y)));
            }
        }
        for s in &gens {
            prop_assert!(h.contains(s));
        }
    }

    #[test]
    fn conjugacy_classes_contain_the_element(gi in 0usize..8, pick in 0usize..8) {
        let groups = finite_groups();
        let g = &groups[gi];
        let els = g.elements().unwrap();
        let x = &els[pick % els.len()];
        let Closure::Finite(class) = g.conjugacy_class(x, 1000) else { panic!("finite group") };
        prop_assert!(class.contains(x));
        if g.is_abelian() {
            prop_assert_eq!(class, vec![x.clone()]);
        }
    }

    #[test]
    fn lattice_conjugacy_is_trivial(a in lattice(2)) {
        let g = Group::free_abelian(2);
        prop_assert_eq!(g.conjugacy_class(&a, 10), Closure::Finite(vec![a]));
    }
}

fn builtin_algebras() -> Vec<Algebra> {
    let mut out = Vec::new();
    for field in [Field::Rational, fp(2), fp(5)] {
        out.push(Algebra::matrix(field, 2).unwrap());
        out.push(Algebra::product(field, 3).unwrap());
        out.push(Algebra::truncated_poly(field, 4).unwrap());
        out.push(Algebra::group_algebra(field, &Group::symmetric(3)).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn multiplication_is_bilinear(
        x in coeffs(6), y in coeffs(6), z in coeffs(6), a in (-4i64..=4, 1i64..=3), b in (-4i64..=4, 1i64..=3)
    ) {
        for alg in builtin_algebras() {
            let f = alg.field();
            let d = alg.dim();
            let (x, y, z) = (scalars(f, &x[..d]), scalars(f, &y[..d]), scalars(f, &z[..d]));
            let (a, b) = (scalars(f, &[a])[0].clone(), scalars(f, &[b])[0].clone());
            let lhs = alg.mul(&alg.add(&alg.scale(&a, &x), &alg.scale(&b, &y)), &z).unwrap();
            let rhs = alg.add(&alg.scale(&a, &alg.mul(&x, &z).unwrap()), &alg.scale(&b, &alg.mul(&y, &z).unwrap()));
            prop_assert_eq!(&lhs, &rhs);
            let lhs = alg.mul(&z, &alg.add(&alg.scale(&a, &x), &alg.scale(&b, &y))).unwrap();
            let rhs = alg.add(&alg.scale(&a, &alg.mul(&z, &x).unwrap()), &alg.scale(&b, &alg.mul(&z, &y).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn center_vectors_commute_with_the_basis() {
    for alg in builtin_algebras() {
        for z in alg.center() {
            for i in 0..alg.dim() {
                let b = alg.basis(i);
                assert_eq!(alg.mul(&z, &b).unwrap(), alg.mul(&b, &z).unwrap());
            }
        }
    }
    for field in [Field::Rational, fp(3)] {
        for name in ["Z4", "V4", "Z2xZ4"] {
            let alg = Algebra::group_algebra(field, &Group::named(name).unwrap()).unwrap();
            assert_eq!(alg.center().len(), alg.dim());
        }
    }
}

fn graded_samples() -> Vec<GradedAlgebra> {
    let f2s3 = GroupRing::new(Algebra::product(fp(2), 1).unwrap(), Group::symmetric(3))
        .unwrap()
        .as_graded_algebra()
        .unwrap();
    let m2z2 = GroupRing::new(Algebra::matrix(fp(3), 2).unwrap(), Group::cyclic(2))
        .unwrap()
        .as_graded_algebra()
        .unwrap();
    vec![dinf_q4(), triangular(Field::Rational, 2), truncated_poly_z(fp(5), 5), f2s3, m2z2]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn componentwise_product_law(x in coeffs(8), y in coeffs(8)) {
        for r in graded_samples() {
            let f = r.field();
            let d = r.dim();
            let (x, y) = (r.element(&scalars(f, &x[..d])), r.element(&scalars(f, &y[..d])));
            let xy = r.mul(&x, &y);
            let g = r.group();
            let (sx, sy) = (r.support(&x), r.support(&y));
            let mut degrees: BTreeSet<GroupElement> = r.support(&xy).into_iter().collect();
            for a in &sx {
                for b in &sy {
                    degrees.insert(g.mul(a, b));
                }
            }
            for k in degrees {
                let mut expected = r.zero();
                for a in &sx {
                    for b in &sy {
                        if g.mul(a, b) == k {
                            expected = r.add(&expected, &r.mul(&r.component(&x, a), &r.component(&y, b)));
                        }
                    }
                }
                prop_assert_eq!(r.component(&xy, &k), expected);
            }
        }
    }

    #[test]
    fn support_of_product(x in coeffs(8), y in coeffs(8)) {
        for r in graded_samples() {
            let f = r.field();
            let d = r.dim();
            let (x, y) = (r.element(&scalars(f, &x[..d])), r.element(&scalars(f, &y[..d])));
            let g = r.group();
            let products: BTreeSet<GroupElement> = r
                .support(&x)
                .iter()
                .flat_map(|a| r.support(&y).into_iter().map(move |b| g.mul(a, &b)))
                .collect();
            for k in r.support(&r.mul(&x, &y)) {
                prop_assert!(products.contains(&k));
            }
        }
    }

    #[test]
    fn components_sum_to_the_element(x in coeffs(8)) {
        for r in graded_samples() {
            let x = r.element(&scalars(r.field(), &x[..r.dim()]));
            let sum = r.support(&x).iter().fold(r.zero(), |acc, g| r.add(&acc, &r.component(&x, g)));
            prop_assert_eq!(sum, x);
        }
    }
}

fn sparse_terms(k: usize) -> impl Strategy<Value = Vec<(Vec<i64>, Vec<(i64, i64)>)>> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, k), coeffs(4)), 0..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn group_ring_is_associative_and_distributive(
        x in sparse_terms(2), y in sparse_terms(2), z in sparse_terms(2)
    ) {
        let q = Field::Rational;
        let ring = GroupRing::new(Algebra::matrix(q, 2).unwrap(), Group::free_abelian(2)).unwrap();
        let build = |terms: &[(Vec<i64>, Vec<(i64, i64)>)]| {
            let terms = terms.iter().map(|(g, c)| (GroupElement::Lattice(g.clone()), scalars(q, c))).collect();
            ring.element(terms).unwrap()
        };
        let (x, y, z) = (build(&x), build(&y), build(&z));
        prop_assert_eq!(ring.mul(&ring.mul(&x, &y), &z), ring.mul(&x, &ring.mul(&y, &z)));
        prop_assert_eq!(ring.mul(&x, &ring.add(&y, &z)), ring.add(&ring.mul(&x, &y), &ring.mul(&x, &z)));
        prop_assert_eq!(ring.mul(&ring.add(&x, &y), &z), ring.add(&ring.mul(&x, &z), &ring.mul(&y, &z)));
        prop_assert_eq!(ring.mul(&ring.one(), &x), x.clone());
    }

    #[test]
    fn dihedral_group_ring_is_associative(
        x in prop::collection::vec((dihedral(), -3i64..=3), 0..=5),
        y in prop::collection::vec((dihedral(), -3i64..=3), 0..=5),
        z in prop::collection::vec((dihedral(), -3i64..=3), 0..=5),
    ) {
        let q = Field::Rational;
        let ring = GroupRing::new(Algebra::product(q, 1).unwrap(), Group::infinite_dihedral()).unwrap();
        let build = |terms: &[(GroupElement, i64)]| {
            let mut acc = ring.zero();
            for (g, c) in terms {
                acc = ring.add(&acc, &ring.monomial(vec![q.from_i64(*c)], g.clone()).unwrap());
            }
            acc
        };
        let (x, y, z) = (build(&x), build(&y), build(&z));
        prop_assert_eq!(ring.mul(&ring.mul(&x, &y), &z), ring.mul(&x, &ring.mul(&y, &z)));
    }
}

#[test]
fn quotient_components_add_up() {
    let cases: Vec<(GradedAlgebra, Vec<&str>)> = vec![
        (
            GroupRing::new(Algebra::matrix(fp(2), 2).unwrap(), Group::symmetric(3))
                .unwrap()
                .as_graded_algebra()
                .unwrap(),
            vec!["e", "(123)", "(132)"],
        ),
        (
            GroupRing::new(Algebra::product(fp(3), 1).unwrap(), Group::named("D4").unwrap())
                .unwrap()
                .as_graded_algebra()
                .unwrap(),
            vec!["e", "r^2"],
        ),
    ];
    for (r, labels) in cases {
        let g = r.group();
        let normal: Vec<GroupElement> = labels
            .iter()
            .map(|l| g.parse_literal(&serde_json::Value::String(l.to_string())).unwrap())
            .collect();
        let (q, quotient) = quotient_regrade(&r, &normal).unwrap();
        for c in q.group().elements().unwrap() {
            let expected: usize = g
                .elements()
                .unwrap()
                .iter()
                .filter(|x| quotient.project(x) == c)
                .map(|x| r.component_basis(x).len())
                .sum();
            assert_eq!(q.component_basis(&c).len(), expected);
        }
    }
}
