//! Coordinate components of Killing tensors and Killing vectors.

use num_traits::Zero;

use super::params::{KtParams, KvParams};
use crate::exactmath::mat3::{self, Mat3, Vec3};
use crate::exactmath::{Poly, Rational, Ring, VarSet};

/// Matrix whose column `i` is the rotation field `R_i = x × e_i` at `x`.
pub fn rotation_fields<S: Ring>(x: &Vec3<S>) -> Mat3<S> {
    let z = x[0].constant_like(&Rational::zero());
    std::array::from_fn(|k| {
        std::array::from_fn(|i| {
            let mut s = z.clone();
            for (j, xj) in x.iter().enumerate() {
                match mat3::eps(k, j, i) {
                    1 => s = s + xj.clone(),
                    -1 => s = s - xj.clone(),
                    _ => {}
                }
            }
            s
        })
    })
}

/// `K^ij` at the point `x`: `A + B Rᵀ + R Bᵀ + R C Rᵀ`.
pub fn components_at<S: Ring>(k: &KtParams<S>, x: &Vec3<S>) -> Mat3<S> {
    let r = rotation_fields(x);
    let rt = mat3::transpose(&r);
    let br = mat3::mul(&k.b, &rt);
    let rcr = mat3::mul(&mat3::mul(&r, &k.c), &rt);
    mat3::add(&mat3::add(&k.a, &mat3::sym2(&br)), &rcr)
}

/// `V^i` at the point `x`: `A + R C`.
pub fn kv_at<S: Ring>(v: &KvParams<S>, x: &Vec3<S>) -> Vec3<S> {
    mat3::vadd(&v.a, &mat3::mul_vec(&rotation_fields(x), &v.c))
}

fn xyz_polys(vars: &VarSet, offset: usize) -> Vec3<Poly> {
    std::array::from_fn(|i| Poly::var(vars, offset + i))
}

/// Components as polynomials in `x, y, z`.
pub fn kt_components(k: &KtParams<Rational>) -> Mat3<Poly> {
    let v = VarSet::xyz();
    let kp = k.map(|c| Poly::constant(&v, c.clone()));
    components_at(&kp, &xyz_polys(&v, 0))
}

/// Components of a symbolic tensor whose parameters live in `vars`, with
/// `x, y, z` at positions `offset..offset + 3`.
pub fn kt_components_symbolic(k: &KtParams<Poly>, offset: usize) -> Mat3<Poly> {
    let vars = k.a[0][0].vars().clone();
    components_at(k, &xyz_polys(&vars, offset))
}

pub fn kv_components(v: &KvParams<Rational>) -> Vec3<Poly> {
    let vars = VarSet::xyz();
    let vp =
        KvParams { a: v.a.clone().map(|c| Poly::constant(&vars, c)), c: v.c.clone().map(|c| Poly::constant(&vars, c)) };
    kv_at(&vp, &xyz_polys(&vars, 0))
}

/// True when every component is identically zero.
pub fn is_zero_tensor(m: &Mat3<Poly>) -> bool {
    m.iter().flatten().all(Poly::is_zero)
}

pub fn eval_rational(m: &Mat3<Poly>, p: &Vec3<Rational>) -> Mat3<Rational> {
    mat3::map(m, |q| q.eval(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;

    #[test]
    fn constant_tensor() {
        let k = KtParams::from_named(&[("a1", int(1))]).unwrap();
        let m = kt_components(&k);
        assert_eq!(m[0][0], Poly::one(&VarSet::xyz()));
        assert!(m.iter().flatten().skip(1).all(Poly::is_zero));
    }

    #[test]
    fn spherical_sample() {
        // The spherical display repeats a1 on the diagonal and has c1 = c2.
        let one = || int(1);
        let k = KtParams::from_named(&[
            ("a1", one()),
            ("a2", one()),
            ("a3", one()),
            ("c1", one()),
            ("c2", one()),
            ("c3", one()),
        ])
        .unwrap();
        let m = eval_rational(&kt_components(&k), &[int(1), int(0), int(0)]);
        let want = mat3::map(&[[1, 0, 0], [0, 2, 0], [0, 0, 2]], |&v| int(v));
        assert_eq!(m, want);
    }

    #[test]
    fn rotation_generator() {
        let v = KvParams { a: [int(0), int(0), int(0)], c: [int(0), int(0), int(1)] };
        let p = kv_components(&v);
        let vars = VarSet::xyz();
        assert_eq!(p, [Poly::var(&vars, 1), -Poly::var(&vars, 0), Poly::zero(&vars)]);
    }
}
