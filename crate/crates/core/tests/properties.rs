//! Property tests for the algebraic invariants of each module.

mod common;

use std::collections::HashMap;

use common::{random_family, CM};
use killingweb::classify::{classify_web, WebClass};
use killingweb::exactmath::rational::rat;
use killingweb::exactmath::{Poly, RatFun, RatMatrix, Rational, VarSet};
use killingweb::invariants::{full_invariants, kv_invariants};
use killingweb::killing::*;
use killingweb::parser::parse_potential;
use proptest::prelude::*;
use rand::SeedableRng;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=4, any::<bool>()).prop_map(|(n, d, s)| rat(if s { n } else { -n }, d))
}

fn poly(max_deg: u16, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), rational()), 0..=max_terms).prop_map(|terms| {
        let vars = VarSet::xyz();
        terms
            .into_iter()
            .fold(Poly::zero(&vars), |acc, ((i, j, k), c)| acc.try_add(&Poly::monomial(&vars, &[i, j, k], c)).unwrap())
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    (poly(2, 3), nonzero_rational())
        .prop_map(|(p, c)| p.try_add(&Poly::constant(&VarSet::xyz(), c)).unwrap())
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn kt() -> impl Strategy<Value = KtParams<Rational>> {
    prop::collection::vec(rational(), 21).prop_map(|v| KtParams::from_vec(&std::array::from_fn(|i| v[i].clone())))
}

fn kv() -> impl Strategy<Value = KvParams<Rational>> {
    prop::collection::vec(rational(), 6).prop_map(|v| KvParams::from_vec(&std::array::from_fn(|i| v[i].clone())))
}

fn isometry() -> impl Strategy<Value = Isometry<Rational>> {
    (prop::collection::vec(rational(), 3), prop::collection::vec(rational(), 3)).prop_map(|(s, d)| {
        let l = cayley_rotation(&std::array::from_fn(|i| s[i].clone()));
        Isometry::new(l, std::array::from_fn(|i| d[i].clone())).unwrap()
    })
}

fn parse(s: &str) -> RatFun {
    parse_potential(s, &HashMap::new()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(3, 4), q in poly(3, 4), r in poly(3, 4)) {
        prop_assert_eq!(p.try_add(&q).unwrap(), q.try_add(&p).unwrap());
        prop_assert_eq!(p.try_mul(&q).unwrap(), q.try_mul(&p).unwrap());
        prop_assert_eq!(p.try_mul(&q).unwrap().try_mul(&r).unwrap(), p.try_mul(&q.try_mul(&r).unwrap()).unwrap());
        let lhs = p.try_mul(&q.try_add(&r).unwrap()).unwrap();
        let rhs = p.try_mul(&q).unwrap().try_add(&p.try_mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn difference_is_zero_iff_terms_equal(p in poly(2, 3), q in poly(2, 3)) {
        prop_assert_eq!(p.try_sub(&q).unwrap().is_zero(), p.terms() == q.terms());
        prop_assert!(p.try_sub(&p).unwrap().is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(3, 4), q in poly(3, 4), pt in prop::collection::vec(rational(), 3)) {
        let sum = p.try_add(&q).unwrap().eval(&pt);
        let prod = p.try_mul(&q).unwrap().eval(&pt);
        prop_assert_eq!(sum, p.eval(&pt) + q.eval(&pt));
        prop_assert_eq!(prod, p.eval(&pt) * q.eval(&pt));
    }

    #[test]
    fn ratfun_normal_form(n in poly(2, 3), d in nonzero_poly(), s in nonzero_poly()) {
        let a = RatFun::new(n.clone(), d.clone()).unwrap();
        let b = RatFun::new(n.try_mul(&s).unwrap(), d.try_mul(&s).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn nullspace_sound_and_complete(rows in prop::collection::vec(prop::collection::vec(rational(), 5), 1..5)) {
        let m = RatMatrix::from_rows(rows);
        let ns = m.nullspace();
        prop_assert_eq!(ns.len() + m.rank(), 5);
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(num_traits::Zero::is_zero));
        }
        if !ns.is_empty() {
            prop_assert_eq!(RatMatrix::from_rows(ns.clone()).rank(), ns.len());
            // a combination of kernel vectors adds no rank
            let extra: Vec<Rational> = (0..5).map(|j| ns.iter().fold(rat(0, 1), |acc, v| acc + &v[j])).collect();
            let mut stacked = ns.clone();
            stacked.push(extra);
            prop_assert_eq!(RatMatrix::from_rows(stacked).rank(), ns.len());
        }
    }

    #[test]
    fn parser_round_trip(n in poly(3, 4), d in nonzero_poly()) {
        let f = RatFun::new(n, d).unwrap();
        prop_assert_eq!(parse(&f.to_string()), f);
    }

    #[test]
    fn group_action(k in kt(), v in kv(), h1 in isometry(), h2 in isometry()) {
        prop_assert_eq!(apply_isometry(&apply_isometry(&k, &h1), &h2), apply_isometry(&k, &h1.compose(&h2)));
        prop_assert_eq!(apply_isometry(&k, &Isometry::identity(&rat(0, 1))), k.clone());
        prop_assert_eq!(apply_isometry_kv(&apply_isometry_kv(&v, &h1), &h2), apply_isometry_kv(&v, &h1.compose(&h2)));
    }

    #[test]
    fn invariants_survive_isometries(k in kt(), v in kv(), h in isometry()) {
        prop_assert_eq!(full_invariants(&k), full_invariants(&apply_isometry(&k, &h)));
        prop_assert_eq!(kv_invariants(&v), kv_invariants(&apply_isometry_kv(&v, &h)));
    }

    #[test]
    fn symmetry_basis_annihilates(k in kt()) {
        for v in symmetry_basis(&k) {
            prop_assert!(lie_derivative(&v, &k).iter().flatten().all(Poly::is_zero));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn nijenhuis_antisymmetry(k in kt()) {
        let n = nijenhuis(&k);
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    prop_assert_eq!(&n[i][j][l], &-&n[i][l][j]);
                }
            }
        }
    }

    #[test]
    fn normality_and_distinctness_covariance(k in kt(), h in isometry()) {
        let moved = apply_isometry(&k, &h);
        prop_assert_eq!(has_normal_eigenvectors(&k), has_normal_eigenvectors(&moved));
        prop_assert_eq!(has_distinct_eigenvalues(&k), has_distinct_eigenvalues(&moved));
    }

    #[test]
    fn label_is_isometry_invariant(web_idx in 0usize..11, seed in any::<u64>(), h in isometry()) {
        let web = WebClass::ALL[web_idx];
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let k = random_family(web, &mut r);
        prop_assume!(k.is_some());
        let k = k.unwrap();
        if let Ok(rep) = classify_web(&k) {
            prop_assert_eq!(classify_web(&apply_isometry(&k, &h)).unwrap().web, rep.web);
        }
    }
}

#[test]
fn parser_expands_powers() {
    assert_eq!(parse("(x+y)^2"), parse("x^2+2*x*y+y^2"));
    assert_eq!(parse(CM).to_string(), parse(&parse(CM).to_string()).to_string());
}
