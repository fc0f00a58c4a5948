//! Infinitesimal generators of the isometry action on parameter space.
//!
//! Rows are the derivatives of `apply_isometry` at the identity along the
//! translation by `e_m` (`U_m`) and the rotation about `e_m` (`V_m`).

use super::params::{symbolic_kt, KtParams, PARAM_NAMES};
use crate::exactmath::mat3::{self, Mat3};
use crate::exactmath::{Poly, Rational, Ring, VarSet};

/// Six rows `U1, U2, U3, V1, V2, V3` of 21 entries each.
pub type GeneratorMatrix = [[Poly; 21]; 6];

fn eps_mat<S: Ring>(like: &S, f: impl Fn(usize, usize) -> i32) -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| like.constant_like(&Rational::from_integer(f(i, j).into()))))
}

/// Generator rows for parameters given as ring elements.
pub fn generator_rows<S: Ring>(k: &KtParams<S>) -> [[S; 21]; 6] {
    let like = &k.a[0][0];
    std::array::from_fn(|r| {
        let m = r % 3;
        let d = if r < 3 {
            // `E_m` has column `n` equal to `e_n × e_m`.
            let e = eps_mat(like, |i, n| mat3::eps(i, n, m));
            let zero = mat3::zero_mat(like);
            KtParams { a: mat3::sym2(&mat3::mul(&k.b, &e)), b: mat3::mul(&mat3::transpose(&e), &k.c), c: zero }
        } else {
            // `W_m v = e_m × v`.
            let w = eps_mat(like, |i, j| mat3::eps(i, m, j));
            let comm = |x: &Mat3<S>| mat3::sub(&mat3::mul(x, &w), &mat3::mul(&w, x));
            KtParams { a: comm(&k.a), b: comm(&k.b), c: comm(&k.c) }
        };
        d.to_vec()
    })
}

/// Generators as degree-one polynomials in the 21 parameter names.
pub fn generator_matrix() -> GeneratorMatrix {
    let vars = parameter_varset();
    generator_rows(&symbolic_kt(&vars))
}

pub fn parameter_varset() -> VarSet {
    VarSet::new(PARAM_NAMES.iter().map(|s| s.to_string()))
}

/// Directional derivative of `f` along row `r`.
pub fn apply_generator(g: &GeneratorMatrix, r: usize, f: &Poly) -> Poly {
    let mut s = Poly::zero(f.vars());
    for (j, coef) in g[r].iter().enumerate() {
        if !coef.is_zero() {
            s = s + &(coef * &f.diff(j));
        }
    }
    s
}

/// Lie bracket of rows `r` and `s` as a parameter-space vector field.
pub fn bracket(g: &GeneratorMatrix, r: usize, s: usize) -> [Poly; 21] {
    std::array::from_fn(|j| &apply_generator(g, r, &g[s][j]) - &apply_generator(g, s, &g[r][j]))
}

/// Rows evaluated at a numeric parameter point.
pub fn generator_rows_at(k: &KtParams<Rational>) -> [[Rational; 21]; 6] {
    generator_rows(k)
}
