//! Small fixed-size linear algebra over any [`Ring`].

use super::{Rational, Ring, Scalar};
use num_traits::{One, Zero};

pub type Vec3<S> = [S; 3];
pub type Mat3<S> = [[S; 3]; 3];

/// Levi-Civita symbol with `eps(0,1,2) = 1`.
pub fn eps(i: usize, j: usize, k: usize) -> i32 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

pub fn map<S, T>(m: &Mat3<S>, f: impl Fn(&S) -> T) -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| f(&m[i][j])))
}

/// Matrix with entries `c` times `like`'s ring identity.
pub fn const_mat<S: Ring>(like: &S, m: &Mat3<Rational>) -> Mat3<S> {
    map(m, |c| like.constant_like(c))
}

pub fn zero_mat<S: Ring>(like: &S) -> Mat3<S> {
    let z = like.constant_like(&Rational::zero());
    std::array::from_fn(|_| std::array::from_fn(|_| z.clone()))
}

pub fn identity<S: Ring>(like: &S) -> Mat3<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| like.constant_like(&if i == j { Rational::one() } else { Rational::zero() }))
    })
}

pub fn transpose<S: Clone>(m: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

pub fn add<S: Ring>(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].clone() + b[i][j].clone()))
}

pub fn sub<S: Ring>(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].clone() - b[i][j].clone()))
}

pub fn scale<S: Ring>(a: &Mat3<S>, c: &Rational) -> Mat3<S> {
    map(a, |x| x.scale(c))
}

pub fn mul<S: Ring>(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = a[i][0].clone() * b[0][j].clone();
            for k in 1..3 {
                s = s + a[i][k].clone() * b[k][j].clone();
            }
            s
        })
    })
}

pub fn mul_vec<S: Ring>(a: &Mat3<S>, v: &Vec3<S>) -> Vec3<S> {
    std::array::from_fn(|i| dot(&a[i], v))
}

pub fn dot<S: Ring>(a: &Vec3<S>, b: &Vec3<S>) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn cross<S: Ring>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn vadd<S: Ring>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    std::array::from_fn(|i| a[i].clone() + b[i].clone())
}

pub fn vsub<S: Ring>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    std::array::from_fn(|i| a[i].clone() - b[i].clone())
}

pub fn column<S: Clone>(m: &Mat3<S>, j: usize) -> Vec3<S> {
    std::array::from_fn(|i| m[i][j].clone())
}

pub fn from_columns<S: Clone>(c: [&Vec3<S>; 3]) -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| c[j][i].clone()))
}

/// `M + Mᵀ`.
pub fn sym2<S: Ring>(m: &Mat3<S>) -> Mat3<S> {
    add(m, &transpose(m))
}

pub fn trace<S: Ring>(m: &Mat3<S>) -> S {
    m[0][0].clone() + m[1][1].clone() + m[2][2].clone()
}

pub fn det<S: Ring>(m: &Mat3<S>) -> S {
    let c = |i: usize, j: usize| m[i][j].clone();
    c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) - c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0))
        + c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0))
}

/// Sum of the principal 2×2 minors.
pub fn minor_sum<S: Ring>(m: &Mat3<S>) -> S {
    let c = |i: usize, j: usize| m[i][j].clone();
    c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0) + c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1) + c(0, 0) * c(2, 2)
        - c(0, 2) * c(2, 0)
}

pub fn adjugate<S: Ring>(m: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            // Cofactor of entry (j, i).
            let r: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let c: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = m[r[0]][c[0]].clone() * m[r[1]][c[1]].clone() - m[r[0]][c[1]].clone() * m[r[1]][c[0]].clone();
            if (i + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
    })
}

/// Inverse, or `None` when the determinant vanishes.
pub fn inverse<S: Scalar>(m: &Mat3<S>) -> Option<Mat3<S>> {
    let d = det(m);
    if d.approx_zero() {
        return None;
    }
    let di = d.inv();
    Some(map(&adjugate(m), |x| x.clone() * di.clone()))
}

/// `S_v` with `S_v u = u × v`.
pub fn cross_right<S: Ring>(v: &Vec3<S>) -> Mat3<S> {
    let z = v[0].constant_like(&Rational::zero());
    [
        [z.clone(), v[2].clone(), -v[1].clone()],
        [-v[2].clone(), z.clone(), v[0].clone()],
        [v[1].clone(), -v[0].clone(), z],
    ]
}

pub fn max_abs(m: &Mat3<f64>) -> f64 {
    m.iter().flatten().fold(0.0_f64, |a, b| a.max(b.abs()))
}

pub fn to_f64<S: Scalar>(m: &Mat3<S>) -> Mat3<f64> {
    map(m, Scalar::to_f64)
}
