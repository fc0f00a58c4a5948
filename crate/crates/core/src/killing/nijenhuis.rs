//! Nijenhuis torsion, the normality conditions, and the eigenvalue discriminant.

use super::components::kt_components;
use super::params::KtParams;
use crate::exactmath::mat3::{self, Mat3, Vec3};
use crate::exactmath::rational::rat;
use crate::exactmath::{Poly, Rational, Ring};
use num_traits::Zero;

/// `N[i][j][k] = N^i_jk`, antisymmetric in `j, k`.
pub type Torsion = [[[Poly; 3]; 3]; 3];

/// Nijenhuis tensor of the components `k`, differentiating by variables
/// `offset..offset + 3` as `x, y, z`.
///
/// `N^i_jk = K^i_l K^l_[j,k] + K^l_[j K^i_k],l` with unit brackets of weight 1/2.
pub fn nijenhuis_of(k: &Mat3<Poly>, offset: usize) -> Torsion {
    let dk: [Mat3<Poly>; 3] = std::array::from_fn(|d| mat3::map(k, |p| p.diff(offset + d)));
    let half = rat(1, 2);
    let zero = Poly::zero(k[0][0].vars());
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|kk| {
                if j == kk {
                    return zero.clone();
                }
                let mut s = zero.clone();
                for l in 0..3 {
                    s = s + &k[i][l] * &(&dk[kk][l][j] - &dk[j][l][kk]);
                    s = s + &(&k[l][j] * &dk[l][i][kk]) - &(&k[l][kk] * &dk[l][i][j]);
                }
                s.scale(&half)
            })
        })
    })
}

pub fn nijenhuis(k: &KtParams<Rational>) -> Torsion {
    nijenhuis_of(&kt_components(k), 0)
}

/// The `123` components of `N^l_[jk} M_{i]l` for `M = g, K, K²`.
///
/// Each is a single polynomial; its coefficients in `x, y, z` are the
/// normality equations.
pub fn tsn_polys(k: &Mat3<Poly>, n: &Torsion) -> [Poly; 3] {
    let k2 = mat3::mul(k, k);
    let cyc = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
    let zero = Poly::zero(k[0][0].vars());
    let contract = |m: Option<&Mat3<Poly>>| {
        let mut s = zero.clone();
        for &(i, j, kk) in &cyc {
            match m {
                None => s = s + &n[i][j][kk],
                Some(m) => {
                    for l in 0..3 {
                        s = s + &(&n[l][j][kk] * &m[i][l]);
                    }
                }
            }
        }
        s
    };
    [contract(None), contract(Some(k)), contract(Some(&k2))]
}

/// Normality equations: for each condition, the coefficient of every
/// monomial in the variables `offset..offset + 3`, in grlex order.
pub fn tsn_equations(k: &Mat3<Poly>, offset: usize) -> [Vec<Poly>; 3] {
    let n = nijenhuis_of(k, offset);
    let idx = [offset, offset + 1, offset + 2];
    tsn_polys(k, &n).map(|p| p.coefficients_in(&idx).into_iter().map(|(_, c)| c).filter(|c| !c.is_zero()).collect())
}

/// True when all three normality conditions hold identically.
pub fn has_normal_eigenvectors(k: &KtParams<Rational>) -> bool {
    let kc = kt_components(k);
    let n = nijenhuis_of(&kc, 0);
    tsn_polys(&kc, &n).iter().all(Poly::is_zero)
}

/// Discriminant of `det(K − λ I)` in terms of the principal invariants.
pub fn discriminant_of<S: Ring>(k: &Mat3<S>) -> S {
    let i1 = mat3::trace(k);
    let i2 = mat3::minor_sum(k);
    let i3 = mat3::det(k);
    let c = |n: i64| Rational::from_integer(n.into());
    let p = |x: &S, y: &S| x.clone() * y.clone();
    let i1sq = p(&i1, &i1);
    let i2sq = p(&i2, &i2);
    p(&p(&i1, &i2), &i3).scale(&c(18)) - p(&p(&i1sq, &i1), &i3).scale(&c(4)) + p(&i1sq, &i2sq)
        - p(&i2sq, &i2).scale(&c(4))
        - p(&i3, &i3).scale(&c(27))
}

pub fn char_discriminant(k: &KtParams<Rational>) -> Poly {
    discriminant_of(&kt_components(k))
}

/// Exact test: the discriminant polynomial is not identically zero.
///
/// The discriminant has degree at most 12 in each of `x, y, z`, so it is zero
/// iff it vanishes on a 13 × 13 × 13 grid. A generic probe point goes first.
pub fn has_distinct_eigenvalues(k: &KtParams<Rational>) -> bool {
    let nonzero_at = |p: &Vec3<Rational>| !discriminant_of(&crate::killing::components_at(k, p)).is_zero();
    if nonzero_at(&[rat(3, 7), rat(-5, 11), rat(2, 13)]) {
        return true;
    }
    let grid = |i: i64| rat(i - 6, 1);
    (0..13).any(|i| (0..13).any(|j| (0..13).any(|l| nonzero_at(&[grid(i), grid(j), grid(l)]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;
    use crate::exactmath::VarSet;

    #[test]
    fn diagonal_discriminant() {
        let k = KtParams::from_named(&[("a1", int(1)), ("a2", int(2)), ("a3", int(3))]).unwrap();
        assert_eq!(char_discriminant(&k), Poly::constant(&VarSet::xyz(), int(4)));
        assert!(!has_distinct_eigenvalues(&KtParams::metric()));
    }

    #[test]
    fn constant_tensor_is_torsion_free() {
        let k = KtParams::from_named(&[("a1", int(5)), ("alpha1", int(2)), ("a3", int(-1))]).unwrap();
        assert!(nijenhuis(&k).iter().flatten().flatten().all(Poly::is_zero));
        assert!(has_normal_eigenvectors(&k));
    }

    #[test]
    fn grid_test_agrees_with_expansion() {
        // R3 ⊙ R3 and Σ Ri ⊙ Ri have a double eigenvalue everywhere
        let cases = [
            (KtParams::from_named(&[("c3", int(1))]).unwrap(), false),
            (KtParams::from_named(&[("c1", int(1)), ("c2", int(1)), ("c3", int(1))]).unwrap(), false),
            (KtParams::from_named(&[("c1", int(1)), ("c2", int(2)), ("c3", int(3))]).unwrap(), true),
            (KtParams::from_named(&[("a1", int(1)), ("b13", int(1)), ("c3", int(2))]).unwrap(), true),
        ];
        for (k, distinct) in cases {
            assert_eq!(!char_discriminant(&k).is_zero(), distinct);
            assert_eq!(has_distinct_eigenvalues(&k), distinct);
        }
    }
}
