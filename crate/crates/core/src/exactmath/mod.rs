//! Exact arithmetic: rationals, sparse polynomials, rational functions, matrices.

pub mod gcd;
pub mod mat3;
pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

pub use matrix::RatMatrix;
pub use poly::{Poly, VarSet};
pub use ratfun::RatFun;
pub use rational::Rational;

/// Commutative ring elements that can absorb rational scalars.
pub trait Ring: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn scale(&self, c: &Rational) -> Self;
    /// The constant `c` in the same ring as `self` (same variable set for polynomials).
    fn constant_like(&self, c: &Rational) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl Ring for Rational {
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn constant_like(&self, c: &Rational) -> Self {
        c.clone()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for f64 {
    fn scale(&self, c: &Rational) -> Self {
        self * rational::to_f64(c)
    }
    fn constant_like(&self, c: &Rational) -> Self {
        rational::to_f64(c)
    }
    fn is_zero_elem(&self) -> bool {
        *self == 0.0
    }
}

impl Ring for Poly {
    fn scale(&self, c: &Rational) -> Self {
        Poly::scale(self, c)
    }
    fn constant_like(&self, c: &Rational) -> Self {
        Poly::constant(self.vars(), c.clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Field scalars used for numeric parameter values and isometries.
pub trait Scalar: Ring + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn from_rat(c: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Multiplicative inverse; callers guarantee a nonzero argument.
    fn inv(&self) -> Self;
    /// Exact zero test for rationals, `|x| <= 1e-9` for floats.
    fn approx_zero(&self) -> bool;
}

impl Scalar for Rational {
    fn from_rat(c: &Rational) -> Self {
        c.clone()
    }
    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn approx_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    fn from_rat(c: &Rational) -> Self {
        rational::to_f64(c)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn inv(&self) -> Self {
        1.0 / self
    }
    fn approx_zero(&self) -> bool {
        self.abs() <= 1e-9
    }
}
