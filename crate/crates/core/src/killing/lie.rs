//! Lie derivatives of Killing tensors along Killing vectors.

use num_traits::Zero;

use super::components::{kt_components, kv_components};
use super::params::{KtParams, KvParams};
use crate::exactmath::mat3::Mat3;
use crate::exactmath::{Poly, RatMatrix, Rational};

/// `(L_V K)^ij = V^l ∂_l K^ij − K^lj ∂_l V^i − K^il ∂_l V^j`.
pub fn lie_derivative(v: &KvParams<Rational>, k: &KtParams<Rational>) -> Mat3<Poly> {
    lie_derivative_of(&kv_components(v), &kt_components(k))
}

pub fn lie_derivative_of(v: &[Poly; 3], k: &Mat3<Poly>) -> Mat3<Poly> {
    let dv: [[Poly; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|l| v[i].diff(l)));
    let zero = Poly::zero(k[0][0].vars());
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = zero.clone();
            for l in 0..3 {
                s = s + &(&v[l] * &k[i][j].diff(l)) - &(&k[l][j] * &dv[i][l]) - &(&k[i][l] * &dv[j][l]);
            }
            s
        })
    })
}

fn unit_kv(n: usize) -> KvParams<Rational> {
    KvParams::from_vec(&std::array::from_fn(
        |i| if i == n { Rational::from_integer(1.into()) } else { Rational::zero() },
    ))
}

/// Basis of the Killing vectors `V` with `L_V K = 0`, from the nullspace of
/// the linear system in the six vector parameters.
pub fn symmetry_basis(k: &KtParams<Rational>) -> Vec<KvParams<Rational>> {
    let kc = kt_components(k);
    let images: Vec<Mat3<Poly>> = (0..6).map(|n| lie_derivative_of(&kv_components(&unit_kv(n)), &kc)).collect();
    let mut keys = std::collections::BTreeSet::new();
    for img in &images {
        for p in img.iter().flatten() {
            for (e, _) in p.terms() {
                keys.insert(e.clone());
            }
        }
    }
    let mut m = RatMatrix::zeros(0, 6);
    for i in 0..3 {
        for j in i..3 {
            for e in &keys {
                m.push_row(images.iter().map(|img| img[i][j].coeff(e)).collect());
            }
        }
    }
    m.nullspace().into_iter().map(|v| KvParams::from_vec(&std::array::from_fn(|i| v[i].clone()))).collect()
}
