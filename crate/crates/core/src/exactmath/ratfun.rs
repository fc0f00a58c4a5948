//! Reduced quotients of polynomials.

use std::fmt;

use super::gcd::gcd;
use super::poly::{Poly, VarSet};
use super::rational::Rational;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic under grlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.vars() != den.vars() {
            return Err(Error::usage("numerator and denominator use different variables"));
        }
        if den.is_zero() {
            return Err(Error::domain("zero polynomial denominator"));
        }
        if num.is_zero() {
            let one = Poly::one(den.vars());
            return Ok(RatFun { num, den: one });
        }
        let g = gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading_coeff().recip();
        Ok(RatFun { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.vars());
        RatFun { num: p, den }
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(vars, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, o: &RatFun) -> Result<RatFun> {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &RatFun) -> Result<RatFun> {
        self.combine(o, true)
    }

    fn combine(&self, o: &RatFun, negate: bool) -> Result<RatFun> {
        let other_num = if negate { -&o.num } else { o.num.clone() };
        if self.den == o.den {
            return RatFun::new(self.num.try_add(&other_num)?, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let sd = self.den.div_exact(&g).expect("gcd divides");
        let od = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.try_mul(&od)?.try_add(&other_num.try_mul(&sd)?)?;
        RatFun::new(num, self.den.try_mul(&od)?)
    }

    pub fn mul(&self, o: &RatFun) -> Result<RatFun> {
        RatFun::new(self.num.try_mul(&o.num)?, self.den.try_mul(&o.den)?)
    }

    pub fn div(&self, o: &RatFun) -> Result<RatFun> {
        if o.is_zero() {
            return Err(Error::domain("division by the zero function"));
        }
        RatFun::new(self.num.try_mul(&o.den)?, self.den.try_mul(&o.num)?)
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, n: i64) -> Result<RatFun> {
        let k = n.unsigned_abs() as u32;
        let (p, q) = (self.num.pow(k), self.den.pow(k));
        if n >= 0 {
            RatFun::new(p, q)
        } else {
            if self.is_zero() {
                return Err(Error::domain("negative power of zero"));
            }
            RatFun::new(q, p)
        }
    }

    /// Partial derivative with respect to variable number `i`.
    pub fn diff(&self, i: usize) -> RatFun {
        let n = &(&self.num.diff(i) * &self.den) - &(&self.num * &self.den.diff(i));
        RatFun::new(n, &self.den * &self.den).expect("nonzero denominator")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c == Rational::from_integer(1.into())) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
