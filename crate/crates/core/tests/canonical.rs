mod common;

use common::*;
use killingweb::canonical::charts::chart_components;
use killingweb::canonical::{
    canonical_chart, chart_map, chart_pushforward_check, family_residual, symmetric_eig3, to_canonical,
    EssentialParams, SeparableChart,
};
use killingweb::classify::{Aligned, Tolerances, WebClass};
use killingweb::exactmath::rational::int;
use killingweb::killing::{apply_isometry, Isometry, KtParams};
use rand::Rng;

fn random_u(web: WebClass, e: &EssentialParams, r: &mut impl Rng) -> [f64; 3] {
    let mut g = |lo: f64, hi: f64| {
        let m = 0.05 * (hi - lo);
        r.gen_range(lo + m..hi - m)
    };
    use WebClass::*;
    match web {
        Cartesian => [g(-3.0, 3.0), g(-3.0, 3.0), g(-3.0, 3.0)],
        CircularCylindrical => [g(0.3, 3.0), g(0.1, 6.2), g(-3.0, 3.0)],
        ParabolicCylindrical => [g(0.3, 2.0), g(0.2, 2.0), g(-3.0, 3.0)],
        EllipticHyperbolic => [g(0.2, 1.5), g(0.1, 1.4), g(-3.0, 3.0)],
        Spherical | ProlateSpheroidal | OblateSpheroidal => [g(0.3, 1.5), g(0.2, 2.9), g(0.1, 6.2)],
        Parabolic => [g(0.3, 2.0), g(0.3, 2.0), g(0.1, 6.2)],
        Conical => {
            let (b, c) = (e.b.unwrap(), e.c.unwrap());
            [g(0.3, 3.0), g(b * b, c * c).sqrt(), g(0.0, b * b).sqrt()]
        }
        Paraboloidal => {
            let (b, c) = (e.b.unwrap(), e.c.unwrap());
            [g(b, b + 2.0 * (b - c)), g(c - 2.0 * (b - c), c), g(c, b)]
        }
        Ellipsoidal => {
            let (a, b, c) = (e.a.unwrap(), e.b.unwrap(), e.c.unwrap());
            [g(b, a), g(c, b), g(c - (a - c), c)]
        }
    }
}

fn random_signs(r: &mut impl Rng) -> [f64; 3] {
    std::array::from_fn(|_| if r.gen_bool(0.5) { 1.0 } else { -1.0 })
}

/// Off-diagonal components relative to the diagonal ones.
fn relative_offdiag(k: &KtParams<f64>, chart: &SeparableChart, u: &[f64; 3], s: &[f64; 3]) -> f64 {
    let m = chart_components(k, chart, u, s).unwrap();
    let off = chart_pushforward_check(k, chart, u, s).unwrap();
    let diag = (0..3).fold(0.0f64, |a, i| a.max(m[i][i].abs()));
    off / diag.max(1.0)
}

fn close(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => (x - y).abs() <= 1e-8 * x.abs().max(y.abs()).max(1.0),
        _ => false,
    }
}

#[test]
fn round_trip_all_webs() {
    let tol = Tolerances::default();
    let mut r = rng(77);
    for web in WebClass::ALL {
        let mut done = 0;
        let mut tried = 0;
        while done < 5 && tried < 40 {
            tried += 1;
            let Some(k) = random_family(web, &mut r) else { continue };
            let Ok((rep0, chart0)) = canonical_chart(&k, &tol) else { continue };
            assert_eq!(rep0.web, web);
            let h = random_isometry(&mut r);
            let moved = apply_isometry(&k, &h);
            let (rep, chart) =
                canonical_chart(&moved, &tol).unwrap_or_else(|e| panic!("{web}: {e} for {}", moved.to_json()));
            assert_eq!(rep.web, web);
            // the composed frame lands on the family
            let back = apply_isometry(&moved.to_f64(), &chart.frame);
            let res = family_residual(web, &back);
            assert!(res < 1e-8, "{web}: residual {res:e}");
            let (e0, e1) = (chart0.essential, chart.essential);
            assert!(close(e0.a, e1.a) && close(e0.b, e1.b) && close(e0.c, e1.c), "{web}: {e0:?} vs {e1:?}");
            // diagonal in its own chart
            let kf = moved.to_f64();
            for _ in 0..20 {
                let u = random_u(web, &chart.essential, &mut r);
                let s = random_signs(&mut r);
                let off = relative_offdiag(&kf, &chart, &u, &s);
                assert!(off < 1e-8, "{web}: off-diagonal {off:e} at {u:?}");
            }
            done += 1;
        }
        assert_eq!(done, 5, "{web}: too few nondegenerate draws");
    }
}

#[test]
fn metric_is_diagonal_in_every_chart() {
    let tol = Tolerances::default();
    let mut r = rng(8);
    for web in WebClass::ALL {
        let k = loop {
            if let Some(k) = random_family(web, &mut r) {
                if let Ok(c) = canonical_chart(&k, &tol) {
                    break c.1;
                }
            }
        };
        let g = KtParams::metric().to_f64();
        for _ in 0..10 {
            let u = random_u(web, &k.essential, &mut r);
            let off = chart_pushforward_check(&g, &k, &u, &random_signs(&mut r)).unwrap();
            assert!(off < 1e-8, "{web}: {off:e}");
        }
    }
}

#[test]
fn spherical_tensor_is_not_diagonal_in_cartesian_chart() {
    let k = killingweb::canonical::canonical_web_tensor(WebClass::Spherical, &[int(1), int(1), int(3)]).unwrap();
    let cart =
        SeparableChart { web: WebClass::Cartesian, essential: Default::default(), frame: Isometry::identity(&0.0) };
    assert!(chart_pushforward_check(&k.to_f64(), &cart, &[0.7, -0.4, 1.1], &[1.0; 3]).unwrap() > 0.1);
}

#[test]
fn chart_examples() {
    let id = Isometry::identity(&0.0);
    let cc = SeparableChart { web: WebClass::CircularCylindrical, essential: Default::default(), frame: id.clone() };
    assert_eq!(chart_map(&cc, &[1.0, 0.0, 5.0], &[1.0; 3]).unwrap(), [1.0, 0.0, 5.0]);
    let sp = SeparableChart { web: WebClass::Spherical, essential: Default::default(), frame: id.clone() };
    let x = chart_map(&sp, &[2.0, std::f64::consts::FRAC_PI_2, 0.0], &[1.0; 3]).unwrap();
    assert!((x[0] - 2.0).abs() < 1e-15 && x[1].abs() < 1e-15 && x[2].abs() < 1e-15);
    assert!(chart_map(&sp, &[-1.0, 0.5, 0.5], &[1.0; 3]).is_err());

    let (a, b, c) = (5.0, 3.0, 1.0);
    let el = SeparableChart {
        web: WebClass::Ellipsoidal,
        essential: EssentialParams { a: Some(a), b: Some(b), c: Some(c) },
        frame: id,
    };
    let mut r = rng(4);
    for _ in 0..50 {
        let u = random_u(WebClass::Ellipsoidal, &el.essential, &mut r);
        let x = chart_map(&el, &u, &random_signs(&mut r)).unwrap();
        // each coordinate surface: Σ x_i² / (p_i − u) = 1
        for v in u {
            let q = x[0] * x[0] / (a - v) + x[1] * x[1] / (b - v) + x[2] * x[2] / (c - v);
            assert!((q - 1.0).abs() < 1e-10, "{q}");
        }
    }
}

fn param(k: &KtParams<killingweb::exactmath::Rational>, name: &str) -> killingweb::exactmath::Rational {
    k.to_vec()[killingweb::killing::params::param_index(name).unwrap()].clone()
}

#[test]
fn translational_and_rotational_recovery_examples() {
    let tol = Tolerances::default();
    let canon =
        killingweb::canonical::canonical_web_tensor(WebClass::CircularCylindrical, &[int(1), int(5), int(1)]).unwrap();
    let cc = apply_isometry(&canon, &Isometry::translation([int(-2), int(3), int(0)]));
    assert_eq!((param(&cc, "b23"), param(&cc, "b13"), param(&cc, "c3")), (int(2), int(3), int(1)));
    let chart = to_canonical(&Aligned::Exact(cc), WebClass::CircularCylindrical, &tol).unwrap();
    let d = chart.frame.delta();
    assert!((d[0] - 2.0).abs() < 1e-12 && (d[1] + 3.0).abs() < 1e-12 && d[2].abs() < 1e-12, "{d:?}");
    assert_eq!(chart.frame.lambda(), &killingweb::exactmath::mat3::identity(&0.0));

    let canon = killingweb::canonical::canonical_web_tensor(WebClass::Spherical, &[int(1), int(2), int(0)]).unwrap();
    let sp = apply_isometry(&canon, &Isometry::translation([int(0), int(0), int(-2)]));
    assert_eq!((param(&sp, "b12"), param(&sp, "c2")), (int(4), int(2)));
    let chart = to_canonical(&Aligned::Exact(sp), WebClass::Spherical, &tol).unwrap();
    let d = chart.frame.delta();
    assert!(d[0].abs() < 1e-12 && d[1].abs() < 1e-12 && (d[2] - 2.0).abs() < 1e-12, "{d:?}");
}

#[test]
fn calogero_moser_charts() {
    let tol = Tolerances::default();
    let [k1, k2, k3, _] = cm_tensors();
    for sign in [1, -1] {
        let k = k3.add(&k1.scale(&int(sign)));
        let (rep, chart) = canonical_chart(&k, &tol).unwrap();
        let want = if sign > 0 { WebClass::ProlateSpheroidal } else { WebClass::OblateSpheroidal };
        assert_eq!(rep.web, want);
        assert!((chart.essential.a.unwrap() - 3f64.sqrt()).abs() < 1e-12);
    }
    let (rep, chart) = canonical_chart(&k2, &tol).unwrap();
    assert_eq!(rep.web, WebClass::Parabolic);
    assert!(chart.frame.delta().iter().all(|x| x.abs() < 1e-12));
}

#[test]
fn eigen_oracle_on_random_symmetric() {
    let mut r = rng(9);
    for _ in 0..200 {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..=i {
                let v = r.gen_range(-5.0..5.0);
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        let (vals, v) = symmetric_eig3(&m, 1e-9).unwrap();
        assert!(vals[0] <= vals[1] && vals[1] <= vals[2]);
        // roots of det(M − t I) by the trigonometric formula
        let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
        let p1 = m[0][1].powi(2) + m[0][2].powi(2) + m[1][2].powi(2);
        let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
        let p = (p2 / 6.0).sqrt();
        let bm: Vec<Vec<f64>> =
            (0..3).map(|i| (0..3).map(|j| (m[i][j] - if i == j { q } else { 0.0 }) / p).collect()).collect();
        let det = bm[0][0] * (bm[1][1] * bm[2][2] - bm[1][2] * bm[2][1])
            - bm[0][1] * (bm[1][0] * bm[2][2] - bm[1][2] * bm[2][0])
            + bm[0][2] * (bm[1][0] * bm[2][1] - bm[1][1] * bm[2][0]);
        let phi = (det / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
        let e1 = q + 2.0 * p * phi.cos();
        let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
        let e2 = 3.0 * q - e1 - e3;
        let mut want = [e1, e2, e3];
        want.sort_by(f64::total_cmp);
        for i in 0..3 {
            assert!((vals[i] - want[i]).abs() < 1e-10);
        }
        let mv = killingweb::exactmath::mat3::mul(&m, &v);
        for i in 0..3 {
            for k in 0..3 {
                assert!((mv[i][k] - v[i][k] * vals[k]).abs() < 1e-10 * 15.0);
            }
        }
    }
}
