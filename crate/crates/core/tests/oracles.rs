//! Library answers compared against brute-force computations written
//! independently here.

use std::collections::BTreeSet;

use grl::constructions::{dorroh_unitize, embed_phi, monoid_to_group_regrade, quotient_regrade, restrict_to_subgroup};
use grl::graded::{GradedAlgebra, Primeness};
use grl::harness::fixtures::dinf_q4;
use grl::{Algebra, Closure, ElementOrder, Field, Group, GroupElement, GroupRing};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

fn f(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn el(g: &Group, label: &str) -> GroupElement {
    g.parse_literal(&Value::String(label.into())).unwrap()
}

/// Permutation of {0,1,2} from a cycle label such as "(12)" or "(132)".
fn perm(label: &str) -> [usize; 3] {
    let mut p = [0, 1, 2];
    if label == "e" {
        return p;
    }
    let digits: Vec<usize> = label
        .trim_matches(|c| c == '(' || c == ')')
        .chars()
        .map(|c| c.to_digit(10).unwrap() as usize - 1)
        .collect();
    for i in 0..digits.len() {
        p[digits[i]] = digits[(i + 1) % digits.len()];
    }
    p
}

fn compose(a: [usize; 3], b: [usize; 3]) -> [usize; 3] {
    [a[b[0]], a[b[1]], a[b[2]]]
}

fn inverse(a: [usize; 3]) -> [usize; 3] {
    let mut out = [0; 3];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

const S3_LABELS: [&str; 6] = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];

#[test]
fn s3_conjugacy_class_by_brute_force() {
    let s3 = Group::symmetric(3);
    let g = perm("(12)");
    let expected: BTreeSet<[usize; 3]> = S3_LABELS
        .iter()
        .map(|c| compose(compose(perm(c), g), inverse(perm(c))))
        .collect();
    let observed: BTreeSet<[usize; 3]> = match s3.conjugacy_class(&el(&s3, "(12)"), 100) {
        Closure::Finite(v) => v.iter().map(|x| perm(&s3.label(x))).collect(),
        Closure::ExceedsCap => panic!("finite group"),
    };
    assert_eq!(observed, expected);
    assert_eq!(observed.len(), 3);
}

#[test]
fn dinf_conjugates_of_s_exceed_cap() {
    // (n, flip) arithmetic: (n,f)(m,g) = (n + (-1)^f m, f xor g)
    let mul = |a: (i64, bool), b: (i64, bool)| (a.0 + if a.1 { -b.0 } else { b.0 }, a.1 ^ b.1);
    let inv = |a: (i64, bool)| if a.1 { a } else { (-a.0, false) };
    let (s, t) = ((0, true), (1, true));
    let st = mul(s, t);
    let mut w = (0, false);
    let mut seen = BTreeSet::new();
    for _ in 0..60 {
        seen.insert(mul(mul(w, s), inv(w)));
        w = mul(w, st);
    }
    assert!(seen.len() > 50);
    let g = Group::infinite_dihedral();
    assert_eq!(g.conjugacy_class(&Group::dinf_s(), 50), Closure::ExceedsCap);
}

#[test]
fn s3_mod_a3_by_coset_table() {
    let a3: Vec<[usize; 3]> = ["e", "(123)", "(132)"].iter().map(|l| perm(l)).collect();
    let mut cosets: BTreeSet<BTreeSet<[usize; 3]>> = BTreeSet::new();
    for l in S3_LABELS {
        cosets.insert(a3.iter().map(|h| compose(perm(l), *h)).collect());
    }
    let s3 = Group::symmetric(3);
    let normal: Vec<GroupElement> = ["e", "(123)", "(132)"].iter().map(|l| el(&s3, l)).collect();
    let q = s3.quotient_group(&normal).unwrap();
    assert_eq!(q.group.order(), Some(cosets.len()));
    assert_eq!(cosets.len(), 2);
}

#[test]
fn order_of_three_cycle() {
    let c = perm("(123)");
    let order = (1..10).find(|&k| (0..k).fold([0, 1, 2], |acc, _| compose(acc, c)) == [0, 1, 2]).unwrap();
    let s3 = Group::symmetric(3);
    assert_eq!(s3.torsion_check(&el(&s3, "(123)"), 100), ElementOrder::Order(order as u64));
}

type M2 = [[u64; 2]; 2];

fn m2_all() -> Vec<M2> {
    (0..16u64)
        .map(|x| [[x & 1, x >> 1 & 1], [x >> 2 & 1, x >> 3 & 1]])
        .collect()
}

fn m2_mul(a: M2, b: M2) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 2;
        }
    }
    c
}

fn m2_vec(a: M2) -> Vec<u64> {
    vec![a[0][0], a[0][1], a[1][0], a[1][1]]
}

#[test]
fn m2_f2_central_idempotents_by_exhaustion() {
    let all = m2_all();
    let expected: BTreeSet<Vec<u64>> = all
        .iter()
        .filter(|&&x| m2_mul(x, x) == x && all.iter().all(|&y| m2_mul(x, y) == m2_mul(y, x)))
        .map(|&x| m2_vec(x))
        .collect();
    let r = GradedAlgebra::trivially_graded(Algebra::matrix(f(2), 2).unwrap(), Group::cyclic(1));
    let observed: BTreeSet<Vec<u64>> = r
        .central_idempotents_enumerate(1000)
        .unwrap()
        .iter()
        .map(|x| r.dense(x).iter().map(|c| c.residue().unwrap()).collect())
        .collect();
    assert_eq!(observed, expected);
    assert_eq!(expected, [vec![0, 0, 0, 0], vec![1, 0, 0, 1]].into_iter().collect());
}

#[test]
fn m2_f2_is_prime_by_exhaustion() {
    let all = m2_all();
    let zero = [[0; 2]; 2];
    let prime = all.iter().all(|&a| {
        all.iter()
            .all(|&b| a == zero || b == zero || all.iter().any(|&r| m2_mul(m2_mul(a, r), b) != zero))
    });
    assert!(prime);
    let r = GradedAlgebra::trivially_graded(Algebra::matrix(f(2), 2).unwrap(), Group::cyclic(1));
    assert_eq!(r.is_prime_principal(1000), Primeness::Prime);
}

#[test]
fn center_of_m2_q_is_scalars() {
    let q = Field::Rational;
    let alg = Algebra::matrix(q, 2).unwrap();
    let center = alg.center();
    assert_eq!(center.len(), 1);
    let v = &center[0];
    assert!(v[1].is_zero() && v[2].is_zero() && !v[0].is_zero());
    assert_eq!(v[0], v[3]);
    for i in 0..4 {
        let b = alg.basis(i);
        assert_eq!(alg.mul(v, &b).unwrap(), alg.mul(&b, v).unwrap());
    }
}

/// Multiplies in `F_p[S3]` with coordinates indexed by `S3_LABELS`.
fn s3_group_ring_mul(p: u64, x: &[u64], y: &[u64]) -> Vec<u64> {
    let perms: Vec<[usize; 3]> = S3_LABELS.iter().map(|l| perm(l)).collect();
    let mut out = vec![0; 6];
    for i in 0..6 {
        for j in 0..6 {
            let k = perms.iter().position(|&q| q == compose(perms[i], perms[j])).unwrap();
            out[k] = (out[k] + x[i] * y[j]) % p;
        }
    }
    out
}

fn group_ring_idempotents_oracle(p: u64) -> BTreeSet<Vec<u64>> {
    let mut found = BTreeSet::new();
    let units: Vec<Vec<u64>> = (0..6).map(|i| (0..6).map(|j| u64::from(i == j)).collect()).collect();
    for code in 0..p.pow(6) {
        let x: Vec<u64> = (0..6).map(|k| code / p.pow(k) % p).collect();
        if s3_group_ring_mul(p, &x, &x) != x {
            continue;
        }
        if units.iter().all(|u| s3_group_ring_mul(p, &x, u) == s3_group_ring_mul(p, u, &x)) {
            found.insert(x);
        }
    }
    found
}

fn library_group_ring_idempotents(p: u64) -> BTreeSet<Vec<u64>> {
    let s3 = Group::symmetric(3);
    let ring = GroupRing::new(Algebra::product(f(p), 1).unwrap(), s3.clone()).unwrap();
    let r = ring.as_graded_algebra().unwrap();
    // reorder coordinates to S3_LABELS
    let order: Vec<usize> = S3_LABELS
        .iter()
        .map(|l| (0..6).find(|&i| s3.label(&r.degrees()[i]) == *l).unwrap())
        .collect();
    r.central_idempotents_enumerate(1_000_000)
        .unwrap()
        .iter()
        .map(|x| {
            let d = r.dense(x);
            order.iter().map(|&i| d[i].residue().unwrap()).collect()
        })
        .collect()
}

#[test]
fn f2_s3_central_idempotents_by_exhaustion() {
    let expected = group_ring_idempotents_oracle(2);
    assert_eq!(library_group_ring_idempotents(2), expected);
    assert_eq!(expected.len(), 4);
}

#[test]
fn f3_s3_central_idempotents_by_exhaustion() {
    let expected = group_ring_idempotents_oracle(3);
    assert_eq!(library_group_ring_idempotents(3), expected);
    let s3 = Group::symmetric(3);
    let ring = GroupRing::new(Algebra::product(f(3), 1).unwrap(), s3.clone()).unwrap();
    let r = ring.as_graded_algebra().unwrap();
    for x in r.central_idempotents_enumerate(1_000_000).unwrap() {
        assert!(r.support_group(&x, 1000).is_finite());
    }
}

#[test]
fn f2_z2_idempotents_by_exhaustion() {
    // (x0 + x1 u)^2 = x0^2 + x1^2 + 2 x0 x1 u over F2
    let expected: BTreeSet<Vec<u64>> = (0..4u64)
        .map(|c| vec![c & 1, c >> 1])
        .filter(|x| vec![(x[0] * x[0] + x[1] * x[1]) % 2, (2 * x[0] * x[1]) % 2] == *x)
        .collect();
    let ring = GroupRing::new(Algebra::product(f(2), 1).unwrap(), Group::cyclic(2)).unwrap();
    let r = ring.as_graded_algebra().unwrap();
    let observed: BTreeSet<Vec<u64>> = r
        .central_idempotents_enumerate(100)
        .unwrap()
        .iter()
        .map(|x| r.dense(x).iter().map(|c| c.residue().unwrap()).collect())
        .collect();
    assert_eq!(observed, expected);
}

#[test]
fn dorroh_product_matches_the_formula() {
    let q = Field::Rational;
    let n = 4;
    let alg = Algebra::truncated_poly(q, n).unwrap();
    let degrees: Vec<Vec<i64>> = (0..n as i64).map(|i| vec![i]).collect();
    let r = monoid_to_group_regrade(&alg, &degrees).unwrap();
    let d = dorroh_unitize(&r);
    let poly_mul = |a: &[i64], b: &[i64]| {
        let mut c = vec![0i64; n];
        for i in 0..n {
            for j in 0..n - i {
                c[i + j] += a[i] * b[j];
            }
        }
        c
    };
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
        let (k, m) = (rng.gen_range(-4i64..=4), rng.gen_range(-4i64..=4));
        let ab = poly_mul(&a, &b);
        let expected_r: Vec<i64> = (0..n).map(|i| ab[i] + k * b[i] + m * a[i]).collect();
        let to_q = |v: &[i64]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let x = d.element(r.element(&to_q(&a)), BigInt::from(k));
        let y = d.element(r.element(&to_q(&b)), BigInt::from(m));
        let z = d.mul(&x, &y);
        assert_eq!(r.dense(&z.r), to_q(&expected_r));
        assert_eq!(z.n, BigInt::from(k * m));
    }
}

#[test]
fn phi_on_homogeneous_pairs() {
    let r = dinf_q4();
    let phi = embed_phi(&r).unwrap();
    let ring = phi.target();
    let g = r.group();
    let mut rng = StdRng::seed_from_u64(5);
    let q = Field::Rational;
    for _ in 0..200 {
        let i = rng.gen_range(0..4);
        let j = rng.gen_range(0..4);
        let (ci, cj) = (q.from_i64(rng.gen_range(1..5)), q.from_i64(rng.gen_range(-4..0)));
        let a = r.scale(&ci, &r.basis_element(i));
        let b = r.scale(&cj, &r.basis_element(j));
        let ab = r.mul(&a, &b);
        let gh = g.mul(&r.degrees()[i], &r.degrees()[j]);
        let expected = if ab.is_zero() {
            ring.zero()
        } else {
            ring.monomial(r.dense(&ab), gh).unwrap()
        };
        assert_eq!(ring.mul(&phi.apply(&a), &phi.apply(&b)), expected);
    }
}

#[test]
fn quotient_of_f2_s3_by_a3() {
    let s3 = Group::symmetric(3);
    let ring = GroupRing::new(Algebra::product(f(2), 1).unwrap(), s3.clone()).unwrap();
    let r = ring.as_graded_algebra().unwrap();
    let a3: Vec<GroupElement> = ["e", "(123)", "(132)"].iter().map(|l| el(&s3, l)).collect();
    let (q, _) = quotient_regrade(&r, &a3).unwrap();
    let expected = (0..6).filter(|&i| a3.contains(&r.degrees()[i])).count();
    assert_eq!(q.component_basis(&q.group().identity()).len(), expected);
    assert_eq!(expected, 3);
}

#[test]
fn restricting_the_dihedral_example_to_s() {
    let r = dinf_q4();
    let g = r.group();
    let keep: Vec<String> = (0..4)
        .filter(|&i| [g.identity(), Group::dinf_s()].contains(&r.degrees()[i]))
        .map(|i| r.algebra().labels()[i].clone())
        .collect();
    let (sub, _) = restrict_to_subgroup(&r, &[g.identity(), Group::dinf_s()]).unwrap();
    assert_eq!(sub.algebra().labels(), keep.as_slice());
    assert_eq!(keep, ["1", "a", "b"]);
}

#[test]
fn crossed_product_square_of_u_s() {
    let f5 = f(5);
    let s = GroupElement::Finite(1);
    let ring = GroupRing::crossed_product(
        Algebra::product(f5, 1).unwrap(),
        Group::cyclic(2),
        &[],
        &[(s.clone(), s.clone(), vec![f5.from_i64(2)])],
    )
    .unwrap();
    // (1 u_s)(1 u_s) = 1 * alpha_s(1) * sigma(s,s) u_e
    let sq = ring.mul(&ring.u(&s), &ring.u(&s));
    assert_eq!(sq.support(), vec![GroupElement::Finite(0)]);
    assert_eq!(sq.coefficient(&GroupElement::Finite(0)).unwrap()[0].residue(), Some(2));
}
