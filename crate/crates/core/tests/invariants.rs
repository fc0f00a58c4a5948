mod common;

use common::*;
use killingweb::exactmath::rational::int;
use killingweb::exactmath::Rational;
use killingweb::invariants::*;
use killingweb::killing::generators::{apply_generator, generator_matrix, parameter_varset};
use killingweb::killing::params::symbolic_kt;
use killingweb::killing::*;
use num_traits::{Signed, Zero};

#[test]
fn full_invariants_survive_exact_isometries() {
    let mut r = rng(11);
    for _ in 0..40 {
        let k = random_kt(&mut r);
        let h = random_isometry(&mut r);
        let before = full_invariants(&k);
        let after = full_invariants(&apply_isometry(&k, &h));
        for i in 0..15 {
            assert_eq!(before.get(i), after.get(i), "Delta{}", i + 1);
        }
    }
}

#[test]
fn unweighted_brackets_break_invariance() {
    let mut r = rng(12);
    let k = random_kt(&mut r).trace_free();
    let h = random_isometry(&mut r);
    let kt = apply_isometry(&k, &h).trace_free();
    let (a, b) = (deltas_weighted(&k, &int(1)), deltas_weighted(&kt, &int(1)));
    assert!((0..15).any(|i| a[i] != b[i]));
}

#[test]
fn generators_annihilate_symbolic_invariants() {
    let vars = parameter_varset();
    let g = generator_matrix();
    let d = deltas(&symbolic_kt(&vars));
    for (i, di) in d.iter().enumerate() {
        for row in 0..6 {
            assert!(apply_generator(&g, row, di).is_zero(), "Delta{} under row {row}", i + 1);
        }
    }
}

#[test]
fn kv_invariants_survive_exact_isometries() {
    let mut r = rng(13);
    for _ in 0..100 {
        let v = random_kv(&mut r);
        let h = random_isometry(&mut r);
        assert_eq!(kv_invariants(&v), kv_invariants(&apply_isometry_kv(&v, &h)));
    }
}

#[test]
fn translational_examples() {
    let cart = KtParams::from_named(&[("a1", int(1)), ("a2", int(2)), ("a3", int(3))]).unwrap();
    assert_eq!(translational_invariants(&cart).unwrap().as_vec(), vec![int(0), int(0)]);
    let pc = KtParams::from_named(&[("a1", int(2)), ("a2", int(2)), ("a3", int(1)), ("b23", int(3))]).unwrap();
    assert_eq!(translational_invariants(&pc).unwrap().as_vec(), vec![int(0), int(81)]);
    let cc = KtParams::from_named(&[("a1", int(2)), ("a2", int(2)), ("a3", int(1)), ("c3", int(5))]).unwrap();
    assert_eq!(translational_invariants(&cc).unwrap().as_vec(), vec![int(5), int(0)]);
    assert!(translational_invariants(&KtParams::from_named(&[("c1", int(1))]).unwrap()).is_err());
}

#[test]
fn translational_invariants_under_planar_motions() {
    let mut r = rng(14);
    let names = ["a1", "a2", "a3", "alpha3", "b13", "b23", "c3"];
    for _ in 0..30 {
        let pairs: Vec<(&str, Rational)> = names.iter().map(|n| (*n, small_rat(&mut r, 9, 3))).collect();
        let k = KtParams::from_named(&pairs).unwrap();
        let s = small_rat(&mut r, 5, 3);
        let z = int(0);
        let l = cayley_rotation(&[s, z.clone(), z.clone()]);
        let h = Isometry::new(l, [small_rat(&mut r, 5, 2), small_rat(&mut r, 5, 2), z]).unwrap();
        let kt = apply_isometry(&k, &h);
        assert!(killingweb::invariants::is_translational_form(&kt));
        assert_eq!(translational_invariants(&k).unwrap(), translational_invariants(&kt).unwrap());
    }
}

#[test]
fn rotational_examples_and_z_shifts() {
    let sph = KtParams::from_named(&[
        ("a1", int(1)),
        ("a2", int(1)),
        ("a3", int(1)),
        ("c1", int(2)),
        ("c2", int(2)),
        ("c3", int(3)),
    ])
    .unwrap();
    let d = rotational_invariants(&sph).unwrap();
    assert_eq!((d.get(0), d.get(1)), (&int(2), &int(0)));
    let par =
        KtParams::from_named(&[("a1", int(1)), ("a2", int(1)), ("a3", int(1)), ("b12", int(2)), ("b21", int(-2))])
            .unwrap();
    let d = rotational_invariants(&par).unwrap();
    assert_eq!((d.get(0), d.get(1)), (&int(0), &int(4)));
    let pro = KtParams::from_named(&[
        ("a1", int(1)),
        ("a2", int(1)),
        ("a3", int(4)),
        ("c1", int(1)),
        ("c2", int(1)),
        ("c3", int(1)),
    ])
    .unwrap();
    assert!(rotational_invariants(&pro).unwrap().get(1).is_positive());
    let mut r = rng(15);
    for _ in 0..20 {
        let (a1, a3, b12, c2, c3) = (
            small_rat(&mut r, 9, 2),
            small_rat(&mut r, 9, 2),
            small_rat(&mut r, 9, 2),
            small_rat(&mut r, 9, 2),
            small_rat(&mut r, 9, 2),
        );
        let k = KtParams::from_named(&[
            ("a1", a1.clone()),
            ("a2", a1),
            ("a3", a3),
            ("b12", b12.clone()),
            ("b21", -b12),
            ("c1", c2.clone()),
            ("c2", c2),
            ("c3", c3),
        ])
        .unwrap();
        let h = Isometry::translation([int(0), int(0), small_rat(&mut r, 7, 3)]);
        let kt = apply_isometry(&k, &h);
        assert_eq!(rotational_invariants(&k).unwrap(), rotational_invariants(&kt).unwrap());
    }
}

fn canonical(pairs: &[(&str, i64)]) -> KtParams<Rational> {
    let v: Vec<(&str, Rational)> = pairs.iter().map(|(n, x)| (*n, int(*x))).collect();
    KtParams::from_named(&v).unwrap()
}

#[test]
fn xi_on_asymmetric_canonical_forms() {
    // Satisfies b12 [b12 b21 + c3 (a2 − a3)] + b21 [b12 b21 + c3 (a1 − a3)] = 0.
    let par = canonical(&[("a1", 3), ("a2", 3), ("a3", 2), ("b12", 1), ("b21", -1), ("c3", 1)]);
    let xi = xi_invariants(&full_invariants(&par));
    assert!(xi.get(0).is_zero() && xi.get(1).is_zero());

    let con = canonical(&[("a1", 5), ("a2", 5), ("a3", 5), ("c1", 1), ("c2", 2), ("c3", 3)]);
    let xi = xi_invariants(&full_invariants(&con));
    assert_eq!(xi.as_vec(), vec![int(22), int(180), int(6), int(0), int(0), int(0)]);

    let mut r = rng(16);
    for _ in 0..20 {
        let (a, c): ([Rational; 3], [Rational; 3]) =
            (std::array::from_fn(|_| small_rat(&mut r, 9, 2)), std::array::from_fn(|_| small_rat(&mut r, 9, 2)));
        let k = KtParams::from_named(&[
            ("a1", a[0].clone()),
            ("a2", a[1].clone()),
            ("a3", a[2].clone()),
            ("c1", c[0].clone()),
            ("c2", c[1].clone()),
            ("c3", c[2].clone()),
        ])
        .unwrap();
        let xi = xi_invariants(&full_invariants(&k));
        let (a1, a2, a3) = (&a[0], &a[1], &a[2]);
        let (c1, c2, c3) = (&c[0], &c[1], &c[2]);
        let two = int(2);
        let xi4 = (a1 + a2 - &two * a3) * c1 * c2 + (a2 + a3 - &two * a1) * c2 * c3 + (a3 + a1 - &two * a2) * c3 * c1;
        let xi5 = (c1 * c2 + c2 * c3 + c3 * c1)
            * ((a1 + a2 - &two * a3) * c3 + (a2 + a3 - &two * a1) * c1 + (a3 + a1 - &two * a2) * c2);
        let xi6 = int(12)
            * c1
            * c2
            * c3
            * ((&two * a1 - a2 - a3) * c1 + (&two * a2 - a3 - a1) * c2 + (&two * a3 - a1 - a2) * c3);
        assert_eq!(xi.get(3), &xi4);
        assert_eq!(xi.get(4), &xi5);
        assert_eq!(xi.get(5), &xi6);
        let xi3 = (c1 - c2) * (c1 - c2) + (c2 - c3) * (c2 - c3) + (c3 - c1) * (c3 - c1);
        assert_eq!(xi.get(2), &xi3);
    }
}
