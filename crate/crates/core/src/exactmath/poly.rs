//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept sorted by descending graded-lexicographic order with no
//! zero coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, Debug)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarSet(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    /// The spatial variables `x, y, z`.
    pub fn xyz() -> Self {
        thread_local! {
            static XYZ: VarSet = VarSet::new(["x", "y", "z"]);
        }
        XYZ.with(Clone::clone)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSet {}

impl Hash for VarSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

/// Exponent vector, one entry per variable.
pub type Exps = Box<[u16]>;

/// Graded lexicographic comparison.
pub fn grlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: VarSet,
    terms: Vec<(Exps, Rational)>,
}

impl Poly {
    pub fn zero(vars: &VarSet) -> Self {
        Poly { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.push((vec![0; vars.len()].into(), c));
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Poly::constant(vars, Rational::one())
    }

    /// The polynomial consisting of variable number `i`.
    pub fn var(vars: &VarSet, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut e = vec![0u16; vars.len()];
        e[i] = 1;
        Poly { vars: vars.clone(), terms: vec![(e.into(), Rational::one())] }
    }

    pub fn var_named(vars: &VarSet, name: &str) -> Result<Self> {
        let i = vars.index_of(name).ok_or_else(|| Error::usage(format!("unknown variable {name:?}")))?;
        Ok(Poly::var(vars, i))
    }

    /// Single term `c * x^e`.
    pub fn monomial(vars: &VarSet, exps: &[u16], c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.push((exps.into(), c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms; duplicates are summed.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exps, Rational)>,
    {
        let mut acc: HashMap<Exps, Rational> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Poly::from_map(vars, acc)
    }

    fn from_map(vars: &VarSet, acc: HashMap<Exps, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
        Poly { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Exps, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coeff(&self, exps: &[u16]) -> Rational {
        self.terms
            .binary_search_by(|(e, _)| grlex_cmp(exps, e))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn leading(&self) -> Option<&(Exps, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(e, _)| e.iter().map(|&x| x as u32).sum()).unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0)
    }

    fn check_vars(&self, other: &Poly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::usage(format!("variable lists differ: {:?} vs {:?}", self.vars.names(), other.vars.names())))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sgn = |c: &Rational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match grlex_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sgn(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (e.clone(), sgn(c))));
        Poly { vars: self.vars.clone(), terms: out }
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.vars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Exps, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        let n = self.vars.len();
        let mut buf = vec![0u16; n];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for k in 0..n {
                    buf[k] = ea[k] + eb[k];
                }
                let prod = ca * cb;
                match acc.get_mut(buf.as_slice()) {
                    Some(c) => *c += prod,
                    None => {
                        acc.insert(buf.clone().into(), prod);
                    }
                }
            }
        }
        Poly::from_map(&self.vars, acc)
    }

    /// Multiplication by `c * x^e`; order is preserved so no re-sort is needed.
    pub fn mul_term(&self, e: &[u16], c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(ea, ca)| (ea.iter().zip(e).map(|(x, y)| x + y).collect::<Exps>(), ca * c))
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.vars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.product(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to variable number `i`.
    pub fn diff(&self, i: usize) -> Poly {
        assert!(i < self.vars.len(), "variable index out of range");
        // Lowering one exponent preserves the relative grlex order of survivors.
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * Rational::from_integer(e[i].into()))
            })
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn diff_by_name(&self, name: &str) -> Result<Poly> {
        let i = self.vars.index_of(name).ok_or_else(|| Error::usage(format!("unknown variable {name:?}")))?;
        Ok(self.diff(i))
    }

    /// Exact value at a point given positionally.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let pows = power_table(point, self, Rational::one());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    t *= &pows[k][ek as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact value at a point given by variable name.
    pub fn eval_named(&self, point: &HashMap<String, Rational>) -> Result<Rational> {
        let vals = self
            .vars
            .names()
            .iter()
            .map(|n| point.get(n).cloned().ok_or_else(|| Error::usage(format!("missing binding for {n:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval(&vals))
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        self.terms
            .iter()
            .map(|(e, c)| e.iter().enumerate().fold(rational::to_f64(c), |t, (k, &ek)| t * point[k].powi(ek as i32)))
            .sum()
    }

    /// Groups terms by their exponents in the variables `idx`.
    ///
    /// Each group is returned as (exponents in `idx`, remaining polynomial with
    /// those exponents zeroed), ordered by descending grlex of the key.
    pub fn coefficients_in(&self, idx: &[usize]) -> Vec<(Vec<u16>, Poly)> {
        let mut groups: HashMap<Vec<u16>, Vec<(Exps, Rational)>> = HashMap::new();
        for (e, c) in &self.terms {
            let key: Vec<u16> = idx.iter().map(|&i| e[i]).collect();
            let mut rest = e.clone();
            for &i in idx {
                rest[i] = 0;
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut out: Vec<_> = groups
            .into_iter()
            .map(|(k, ts)| {
                // Zeroing a fixed key subset preserves the grlex order inside a group.
                (k, Poly { vars: self.vars.clone(), terms: ts })
            })
            .collect();
        out.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        out
    }

    /// Coefficients as a univariate polynomial in variable `v`; entry `k`
    /// multiplies `v^k` and is free of `v`.
    pub fn to_univariate(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exps, Rational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[v] as usize;
            rest[v] = 0;
            buckets[k].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                ts.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
                Poly { vars: self.vars.clone(), terms: ts }
            })
            .collect()
    }

    pub fn from_univariate(vars: &VarSet, v: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(vars);
        let mut e = vec![0u16; vars.len()];
        for (k, c) in coeffs.iter().enumerate() {
            e[v] = k as u16;
            out = out.merge(&c.mul_term(&e, &Rational::one()), false);
        }
        out
    }

    /// Quotient `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() || self.vars != d.vars {
            return None;
        }
        let (ld, lc) = d.terms[0].clone();
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((le, lcoef)) = r.terms.first().cloned() {
            if le.iter().zip(ld.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exps = le.iter().zip(ld.iter()).map(|(a, b)| a - b).collect();
            let c = &lcoef / &lc;
            r = r.merge(&d.mul_term(&e, &c), true);
            q.push((e, c));
        }
        Some(Poly { vars: self.vars.clone(), terms: q })
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> Rational {
        use num_integer::Integer;
        let mut g = num_bigint::BigInt::zero();
        let mut l = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            Rational::one()
        } else {
            Rational::new(g, l)
        }
    }

    /// Integer-primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Associate with leading coefficient one.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.terms[0].1.recip())
    }

    /// Re-expresses the polynomial over a larger variable set containing all current names.
    pub fn embed(&self, target: &VarSet) -> Result<Poly> {
        let map = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| Error::usage(format!("variable {n:?} not in target set"))))
            .collect::<Result<Vec<_>>>()?;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = vec![0u16; target.len()];
            for (k, &t) in map.iter().enumerate() {
                e2[t] = e[k];
            }
            (e2.into_boxed_slice(), c.clone())
        });
        Ok(Poly::from_terms(target, terms))
    }

    /// JSON form `[{"exps":[...],"coef":"p/q"}, ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms.iter().map(|(e, c)| json!({"exps": e.to_vec(), "coef": rational::to_string(c)})).collect(),
        )
    }

    pub fn from_json(vars: &VarSet, v: &Value) -> Result<Poly> {
        let bad = |m: &str| Error::usage(format!("malformed polynomial JSON: {m}"));
        let arr = v.as_array().ok_or_else(|| bad("expected array"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let exps = t
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing exps"))?
                .iter()
                .map(|x| x.as_u64().and_then(|u| u16::try_from(u).ok()).ok_or_else(|| bad("exponent")))
                .collect::<Result<Vec<u16>>>()?;
            if exps.len() != vars.len() {
                return Err(bad("exponent vector length"));
            }
            let coef = rational::parse(t.get("coef").and_then(Value::as_str).ok_or_else(|| bad("missing coef"))?)?;
            terms.push((exps.into_boxed_slice(), coef));
        }
        Ok(Poly::from_terms(vars, terms))
    }
}

fn power_table<T: Clone + for<'a> Mul<&'a T, Output = T>>(point: &[T], p: &Poly, one: T) -> Vec<Vec<T>> {
    point
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let d = p.degree_in(k) as usize;
            let mut v = Vec::with_capacity(d + 1);
            v.push(one.clone());
            for i in 1..=d {
                let next = v[i - 1].clone() * x;
                v.push(next);
            }
            v
        })
        .collect()
}

impl fmt::Display for Poly {
    /// Infix form accepted by the potential parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(rational::to_string(&mag));
            }
            for (k, &ek) in e.iter().enumerate() {
                match ek {
                    0 => {}
                    1 => factors.push(self.vars.names()[k].clone()),
                    _ => factors.push(format!("{}^{}", self.vars.names()[k], ek)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                assert!(self.vars == rhs.vars, "polynomial variable lists differ");
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Poly, b: &Poly| a.merge(b, false));
forward_binop!(Sub, sub, |a: &Poly, b: &Poly| a.merge(b, true));
forward_binop!(Mul, mul, |a: &Poly, b: &Poly| a.product(b));

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for t in &mut self.terms {
            t.1 = -t.1.clone();
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, rat};

    fn xy() -> (VarSet, Poly, Poly) {
        let v = VarSet::new(["x", "y"]);
        let x = Poly::var(&v, 0);
        let y = Poly::var(&v, 1);
        (v, x, y)
    }

    #[test]
    fn cancellation_and_squares() {
        let (v, x, y) = xy();
        assert_eq!(&(&x + &y) + &(&x - &y), x.scale(&int(2)));
        let one = Poly::one(&v);
        assert_eq!((&x + &one) * (&x - &one), &x.pow(2) - &one);
    }

    #[test]
    fn mismatched_variables_rejected() {
        let (_, x, _) = xy();
        let z = Poly::var(&VarSet::new(["z"]), 0);
        assert!(x.try_add(&z).unwrap_err().is_usage());
        assert!(x.try_mul(&z).is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let (v, x, y) = xy();
        let p = &x.pow(2) * &y;
        assert_eq!(p.diff(0), (&x * &y).scale(&int(2)));
        assert!(Poly::constant(&v, int(5)).diff(0).is_zero());
        assert!(p.diff_by_name("w").is_err());
        let q = &x.pow(2) + &y;
        assert_eq!(q.eval(&[int(2), int(3)]), int(7));
        assert_eq!(Poly::zero(&v).eval(&[int(2), int(3)]), int(0));
        let mut m = HashMap::new();
        m.insert("x".to_string(), int(2));
        assert!(q.eval_named(&m).is_err());
    }

    #[test]
    fn grlex_leading_term() {
        let (v, x, y) = xy();
        let p = &(&x + &y.pow(2)) + &Poly::constant(&v, rat(-1, 2));
        assert_eq!(p.leading().unwrap().0.as_ref(), &[0, 2]);
        assert_eq!(p.to_string(), "y^2 + x - 1/2");
    }

    #[test]
    fn exact_division() {
        let (v, x, y) = xy();
        let a = &x + &y;
        let b = &x - &Poly::one(&v);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&(&x + &Poly::constant(&v, int(3)))).is_none());
    }

    #[test]
    fn json_round_trip() {
        let (v, x, y) = xy();
        let p = &x.pow(3).scale(&rat(2, 3)) - &y;
        let j = p.to_json();
        assert_eq!(Poly::from_json(&v, &j).unwrap(), p);
    }

    #[test]
    fn univariate_view_round_trip() {
        let (v, x, y) = xy();
        let p = &(&x.pow(2) * &y) + &(&y.pow(3) - &x);
        let u = p.to_univariate(1);
        assert_eq!(u.len(), 4);
        assert_eq!(Poly::from_univariate(&v, 1, &u), p);
    }
}
