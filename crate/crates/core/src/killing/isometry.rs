//! Proper Euclidean motions `x = λ x̃ + δ` and their action on parameters.
//!
//! `apply(apply(K, h1), h2) = apply(K, h1.compose(h2))` where
//! `h1.compose(h2) = (λ1 λ2, λ1 δ2 + δ1)`: the parameters of `K` in the
//! coordinates `x̃` of `h1`, then re-expressed in the coordinates of `h2`.

use super::params::{KtParams, KvParams};
use crate::error::{Error, Result};
use crate::exactmath::mat3::{self, Mat3, Vec3};
use crate::exactmath::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Isometry<S> {
    lambda: Mat3<S>,
    delta: Vec3<S>,
}

impl<S: Scalar> Isometry<S> {
    /// Rejects matrices that are not proper rotations (exactly for rationals,
    /// within `1e-9` for floats).
    pub fn new(lambda: Mat3<S>, delta: Vec3<S>) -> Result<Self> {
        let like = delta[0].clone();
        let gram = mat3::sub(&mat3::mul(&mat3::transpose(&lambda), &lambda), &mat3::identity(&like));
        let one = like.constant_like(&Rational::from_integer(1.into()));
        if !gram.iter().flatten().all(Scalar::approx_zero) || !(mat3::det(&lambda) - one).approx_zero() {
            return Err(Error::usage("isometry rotation must be orthogonal with determinant +1"));
        }
        Ok(Isometry { lambda, delta })
    }

    pub fn identity(like: &S) -> Self {
        let z = like.constant_like(&Rational::from_integer(0.into()));
        Isometry { lambda: mat3::identity(like), delta: [z.clone(), z.clone(), z] }
    }

    pub fn translation(delta: Vec3<S>) -> Self {
        Isometry { lambda: mat3::identity(&delta[0]), delta }
    }

    pub fn rotation(lambda: Mat3<S>) -> Result<Self> {
        let z = lambda[0][0].constant_like(&Rational::from_integer(0.into()));
        Isometry::new(lambda, [z.clone(), z.clone(), z])
    }

    pub fn lambda(&self) -> &Mat3<S> {
        &self.lambda
    }

    pub fn delta(&self) -> &Vec3<S> {
        &self.delta
    }

    /// `μ` with column `n` equal to `λ e_n × δ`.
    pub fn mu(&self) -> Mat3<S> {
        let cols: [Vec3<S>; 3] = std::array::from_fn(|n| mat3::cross(&mat3::column(&self.lambda, n), &self.delta));
        mat3::from_columns([&cols[0], &cols[1], &cols[2]])
    }

    pub fn compose(&self, next: &Self) -> Self {
        Isometry {
            lambda: mat3::mul(&self.lambda, &next.lambda),
            delta: mat3::vadd(&mat3::mul_vec(&self.lambda, &next.delta), &self.delta),
        }
    }

    pub fn inverse(&self) -> Self {
        let lt = mat3::transpose(&self.lambda);
        let d = mat3::mul_vec(&lt, &self.delta);
        Isometry { lambda: lt, delta: d.map(|x| -x) }
    }

    /// Old coordinates of the point with new coordinates `xt`.
    pub fn forward(&self, xt: &Vec3<S>) -> Vec3<S> {
        mat3::vadd(&mat3::mul_vec(&self.lambda, xt), &self.delta)
    }

    pub fn to_f64(&self) -> Isometry<f64> {
        Isometry { lambda: mat3::to_f64(&self.lambda), delta: self.delta.clone().map(|x| x.to_f64()) }
    }
}

/// Parameters of `K` in the coordinates `x̃` of `h`.
pub fn apply_isometry<S: Scalar>(k: &KtParams<S>, h: &Isometry<S>) -> KtParams<S> {
    let l = &h.lambda;
    let lt = mat3::transpose(l);
    let mu = h.mu();
    let mut_ = mat3::transpose(&mu);
    let a = mat3::add(
        &mat3::add(&mat3::mul(&mat3::mul(&lt, &k.a), l), &mat3::sym2(&mat3::mul(&mat3::mul(&lt, &k.b), &mu))),
        &mat3::mul(&mat3::mul(&mut_, &k.c), &mu),
    );
    let b = mat3::add(&mat3::mul(&mat3::mul(&lt, &k.b), l), &mat3::mul(&mat3::mul(&mut_, &k.c), l));
    let c = mat3::mul(&mat3::mul(&lt, &k.c), l);
    KtParams { a, b, c }
}

pub fn apply_isometry_kv<S: Scalar>(v: &KvParams<S>, h: &Isometry<S>) -> KvParams<S> {
    let lt = mat3::transpose(&h.lambda);
    let mut_ = mat3::transpose(&h.mu());
    KvParams { a: mat3::vadd(&mat3::mul_vec(&lt, &v.a), &mat3::mul_vec(&mut_, &v.c)), c: mat3::mul_vec(&lt, &v.c) }
}

/// Exact rotation `(I − S)(I + S)⁻¹` for skew-symmetric `S` given by its
/// entries `(s12, s13, s23)`.
pub fn cayley_rotation(s: &Vec3<Rational>) -> Mat3<Rational> {
    let z = Rational::from_integer(0.into());
    let sk = [
        [z.clone(), s[0].clone(), s[1].clone()],
        [-s[0].clone(), z.clone(), s[2].clone()],
        [-s[1].clone(), -s[2].clone(), z.clone()],
    ];
    let id = mat3::identity(&z);
    let inv = mat3::inverse(&mat3::add(&id, &sk)).expect("I + S is invertible for skew S");
    mat3::mul(&mat3::sub(&id, &sk), &inv)
}
