#![allow(dead_code)]

use killingweb::exactmath::rational::{int, rat};
use killingweb::exactmath::Rational;
use killingweb::killing::{cayley_rotation, Isometry, KtParams, KvParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `-n..=n` and denominator in `1..=d`.
pub fn small_rat(r: &mut impl Rng, n: i64, d: i64) -> Rational {
    rat(r.gen_range(-n..=n), r.gen_range(1..=d))
}

pub fn random_kt(r: &mut impl Rng) -> KtParams<Rational> {
    KtParams::from_vec(&std::array::from_fn(|_| small_rat(r, 9, 4)))
}

pub fn random_kv(r: &mut impl Rng) -> KvParams<Rational> {
    KvParams::from_vec(&std::array::from_fn(|_| small_rat(r, 9, 4)))
}

pub fn random_point(r: &mut impl Rng) -> [Rational; 3] {
    std::array::from_fn(|_| small_rat(r, 7, 3))
}

/// Exact proper isometry from a Cayley rotation and a rational shift.
pub fn random_isometry(r: &mut impl Rng) -> Isometry<Rational> {
    let s = std::array::from_fn(|_| small_rat(r, 3, 3));
    let l = cayley_rotation(&s);
    Isometry::new(l, std::array::from_fn(|_| small_rat(r, 5, 2))).expect("Cayley rotation is proper")
}

pub fn quarter_turn_z() -> Isometry<Rational> {
    let l = [[int(0), int(-1), int(0)], [int(1), int(0), int(0)], [int(0), int(0), int(1)]];
    Isometry::rotation(l).unwrap()
}

/// Parameters whose components equal the given matrix (entries in `x, y, z`).
pub fn fit_kt(matrix: [[&str; 3]; 3]) -> KtParams<Rational> {
    use killingweb::exactmath::RatMatrix;
    use killingweb::killing::kt_components;
    use killingweb::parser::parse_potential;
    let target: Vec<Vec<killingweb::exactmath::Poly>> = matrix
        .iter()
        .map(|row| row.iter().map(|s| parse_potential(s, &Default::default()).unwrap().num().clone()).collect())
        .collect();
    let basis: Vec<_> = (0..21)
        .map(|p| {
            let mut v: [Rational; 21] = std::array::from_fn(|_| int(0));
            v[p] = int(1);
            kt_components(&KtParams::from_vec(&v))
        })
        .collect();
    let monomials: Vec<[u16; 3]> = (0..3u16)
        .flat_map(|a| (0..3u16).flat_map(move |b| (0..3u16).map(move |c| [a, b, c])))
        .filter(|e| e.iter().sum::<u16>() <= 2)
        .collect();
    let mut m = RatMatrix::zeros(0, 0);
    let mut rhs = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for e in &monomials {
                m.push_row(basis.iter().map(|b| b[i][j].coeff(e)).collect());
                rhs.push(target[i][j].coeff(e));
            }
        }
    }
    let sol = m.solve(&rhs).expect("matrix is a Killing tensor");
    KtParams::from_vec(&std::array::from_fn(|p| sol[p].clone()))
}

/// The tensors `K1..K4` of the inverse-square three-body potential.
pub fn cm_tensors() -> [KtParams<Rational>; 4] {
    [
        fit_kt([["0", "1", "1"], ["1", "0", "1"], ["1", "1", "0"]]),
        fit_kt([["2*y+2*z", "-x-y", "-z-x"], ["-x-y", "2*z+2*x", "-y-z"], ["-z-x", "-y-z", "2*x+2*y"]]),
        fit_kt([["y^2+z^2", "-x*y", "-z*x"], ["-x*y", "z^2+x^2", "-y*z"], ["-z*x", "-y*z", "x^2+y^2"]]),
        fit_kt([
            ["-2*y*z", "(x+y-z)*z", "(z+x-y)*y"],
            ["(x+y-z)*z", "-2*z*x", "(z+y-x)*x"],
            ["(z+x-y)*y", "(z+y-x)*x", "-2*x*y"],
        ]),
    ]
}

/// Random valid parameters for a canonical family; `None` for draws that
/// hit a boundary of the family.
pub fn random_family(web: killingweb::classify::WebClass, r: &mut impl Rng) -> Option<KtParams<Rational>> {
    use killingweb::canonical::catalog::{canonical_web_tensor, family_parameters};
    use killingweb::classify::WebClass as W;
    let n = family_parameters(web).len();
    let mut v: Vec<Rational> = (0..n).map(|_| small_rat(r, 6, 3)).collect();
    let pos = |r: &mut dyn rand::RngCore| rat(r.gen_range(1..=12), r.gen_range(1..=3));
    let distinct = |c: &[Rational]| c[0] != c[1] && c[1] != c[2] && c[0] != c[2];
    match web {
        W::Conical if !distinct(&v[1..4]) => return None,
        W::EllipticHyperbolic => v[1] = &v[0] - &v[3] * pos(r),
        W::ProlateSpheroidal => v[1] = &v[0] + &v[2] * pos(r),
        W::OblateSpheroidal => v[1] = &v[0] - &v[2] * pos(r),
        W::Paraboloidal => {
            // a2 from the linear constraint
            let (a1, a3, b12, b21, c3) = (&v[0], &v[2], &v[3], &v[4], &v[5]);
            if (b12 * c3) == int(0) {
                return None;
            }
            v[1] = a3 - (b12 * b21 * (b12 + b21) + b21 * c3 * (a1 - a3)) / (b12 * c3);
        }
        W::Ellipsoidal => {
            let (a1, a2, c1, c2, c3) = (&v[0], &v[1], &v[3], &v[4], &v[5]);
            let den = c3 * (c1 - c2);
            if den == int(0) {
                return None;
            }
            v[2] = -((a1 - a2) * c1 * c2 + a2 * c2 * c3 - a1 * c3 * c1) / den;
            if !distinct(&v[3..6]) {
                return None;
            }
        }
        _ => {}
    }
    canonical_web_tensor(web, &v).ok()
}

/// Kernel of `d(K dV) = 0` for a polynomial `V`, computed over the generic
/// 21-parameter tensor by direct expansion: each monomial coefficient in
/// `x, y, z` of the three curl components is a linear form in the parameters.
/// Includes the trivial direction `b11 = b22 = b33`.
pub fn oracle_compatibility_rows(v: &killingweb::exactmath::Poly) -> killingweb::exactmath::RatMatrix {
    use killingweb::exactmath::RatMatrix;
    use killingweb::killing::components::kt_components_symbolic;
    use killingweb::killing::params::{symbolic_kt, symbolic_varset};
    let vars = symbolic_varset();
    let v = v.embed(&vars).unwrap();
    let k = kt_components_symbolic(&symbolic_kt(&vars), 21);
    let omega: Vec<_> = (0..3)
        .map(|i| {
            (0..3).fold(killingweb::exactmath::Poly::zero(&vars), |acc, j| {
                acc.try_add(&k[i][j].try_mul(&v.diff(21 + j)).unwrap()).unwrap()
            })
        })
        .collect();
    let mut m = RatMatrix::zeros(0, 21);
    for (a, b) in [(1, 2), (2, 0), (0, 1)] {
        let curl = omega[a].diff(21 + b).try_sub(&omega[b].diff(21 + a)).unwrap();
        for (_, coeff) in curl.coefficients_in(&[21, 22, 23]) {
            let mut row = vec![int(0); 21];
            for (e, c) in coeff.terms() {
                let j = (0..21).find(|&j| e[j] == 1).expect("linear in the parameters");
                row[j] = c.clone();
            }
            m.push_row(row);
        }
    }
    m
}

/// Parameter vector with the trivial `b11 = b22 = b33` direction removed.
pub fn without_trace(k: &KtParams<Rational>) -> Vec<Rational> {
    let mut v = k.to_vec().to_vec();
    let t = v[8].clone();
    for j in 6..9 {
        v[j] = &v[j] - &t;
    }
    v
}

/// Rank of a list of parameter vectors taken modulo the trivial direction.
pub fn span_rank(ks: &[KtParams<Rational>]) -> usize {
    killingweb::exactmath::RatMatrix::from_rows(ks.iter().map(without_trace).collect()).rank()
}

/// Random polynomial in `x, y, z` of total degree at most `deg`.
pub fn random_poly(r: &mut impl Rng, deg: u16, terms: usize) -> killingweb::exactmath::Poly {
    use killingweb::exactmath::{Poly, VarSet};
    let vars = VarSet::xyz();
    (0..terms).fold(Poly::zero(&vars), |acc, _| {
        let d = r.gen_range(0..=deg);
        let i = r.gen_range(0..=d);
        let j = r.gen_range(0..=d - i);
        acc.try_add(&Poly::monomial(&vars, &[i, j, d - i - j], small_rat(r, 5, 3))).unwrap()
    })
}

pub const CM: &str = "1/(x-y)^2 + 1/(y-z)^2 + 1/(z-x)^2";

/// `V(h(x))` as an expression, for a potential written in `x, y, z`.
pub fn substituted(expr: &str, h: &Isometry<Rational>) -> String {
    let (l, d) = (h.lambda(), h.delta());
    let img: Vec<String> =
        (0..3).map(|i| format!("(({})*x + ({})*y + ({})*z + ({}))", l[i][0], l[i][1], l[i][2], d[i])).collect();
    expr.chars()
        .map(|c| match c {
            'x' => img[0].clone(),
            'y' => img[1].clone(),
            'z' => img[2].clone(),
            c => c.to_string(),
        })
        .collect()
}
