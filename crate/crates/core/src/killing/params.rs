//! Parameter blocks of Killing tensors and Killing vectors.

use std::hash::{Hash, Hasher};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::mat3::{self, Mat3, Vec3};
use crate::exactmath::rational::{self, rat};
use crate::exactmath::{Poly, Rational, Ring, Scalar, VarSet};

/// Parameter names in canonical order.
pub const PARAM_NAMES: [&str; 21] = [
    "a1", "a2", "a3", "alpha1", "alpha2", "alpha3", "b11", "b22", "b33", "b23", "b31", "b12", "b32", "b13", "b21",
    "c1", "c2", "c3", "gamma1", "gamma2", "gamma3",
];

/// Matrix slot of each parameter. Symmetric slots of `A` and `C` are filled in pairs.
const SLOTS: [(usize, (usize, usize)); 21] = [
    (0, (0, 0)),
    (0, (1, 1)),
    (0, (2, 2)),
    (0, (1, 2)),
    (0, (0, 2)),
    (0, (0, 1)),
    (1, (0, 0)),
    (1, (1, 1)),
    (1, (2, 2)),
    (1, (1, 2)),
    (1, (2, 0)),
    (1, (0, 1)),
    (1, (2, 1)),
    (1, (0, 2)),
    (1, (1, 0)),
    (2, (0, 0)),
    (2, (1, 1)),
    (2, (2, 2)),
    (2, (1, 2)),
    (2, (0, 2)),
    (2, (0, 1)),
];

pub fn param_index(name: &str) -> Option<usize> {
    PARAM_NAMES.iter().position(|&n| n == name)
}

/// Killing tensor `A^ij X_i⊙X_j + 2 B^ij X_i⊙R_j + C^ij R_i⊙R_j`.
///
/// `a` and `c` are symmetric. Only differences of the diagonal of `b` are
/// meaningful; equality compares the trace-free normalization.
#[derive(Clone, Debug)]
pub struct KtParams<S> {
    pub a: Mat3<S>,
    pub b: Mat3<S>,
    pub c: Mat3<S>,
}

/// Killing vector `A^i X_i + C^i R_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KvParams<S> {
    pub a: Vec3<S>,
    pub c: Vec3<S>,
}

impl<S: Ring> KtParams<S> {
    pub fn from_vec(v: &[S; 21]) -> Self {
        let z = v[0].constant_like(&Rational::zero());
        let mut m: [Mat3<S>; 3] = std::array::from_fn(|_| mat3::zero_mat(&z));
        for (k, &(blk, (i, j))) in SLOTS.iter().enumerate() {
            m[blk][i][j] = v[k].clone();
            if blk != 1 {
                m[blk][j][i] = v[k].clone();
            }
        }
        let [a, b, c] = m;
        KtParams { a, b, c }
    }

    pub fn to_vec(&self) -> [S; 21] {
        let m = [&self.a, &self.b, &self.c];
        std::array::from_fn(|k| {
            let (blk, (i, j)) = SLOTS[k];
            m[blk][i][j].clone()
        })
    }

    pub fn zero_like(like: &S) -> Self {
        let z = like.constant_like(&Rational::zero());
        KtParams::from_vec(&std::array::from_fn(|_| z.clone()))
    }

    /// `β = (b22 − b33, b33 − b11, b11 − b22)`.
    pub fn beta(&self) -> Vec3<S> {
        let b = &self.b;
        [b[1][1].clone() - b[2][2].clone(), b[2][2].clone() - b[0][0].clone(), b[0][0].clone() - b[1][1].clone()]
    }

    /// Representative with `b11 + b22 + b33 = 0`.
    pub fn trace_free(&self) -> Self {
        let t = mat3::trace(&self.b).scale(&rat(1, 3));
        let mut k = self.clone();
        for i in 0..3 {
            k.b[i][i] = k.b[i][i].clone() - t.clone();
        }
        k
    }

    pub fn add(&self, o: &Self) -> Self {
        KtParams { a: mat3::add(&self.a, &o.a), b: mat3::add(&self.b, &o.b), c: mat3::add(&self.c, &o.c) }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        KtParams { a: mat3::scale(&self.a, s), b: mat3::scale(&self.b, s), c: mat3::scale(&self.c, s) }
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> KtParams<T> {
        KtParams { a: mat3::map(&self.a, &f), b: mat3::map(&self.b, &f), c: mat3::map(&self.c, &f) }
    }
}

impl KtParams<Rational> {
    pub fn zero() -> Self {
        KtParams::zero_like(&Rational::zero())
    }

    /// The metric `g = X1² + X2² + X3²`.
    pub fn metric() -> Self {
        let mut v: [Rational; 21] = std::array::from_fn(|_| Rational::zero());
        for x in v.iter_mut().take(3) {
            *x = rational::one();
        }
        KtParams::from_vec(&v)
    }

    /// Builds from `(name, value)` pairs; unnamed parameters are zero.
    pub fn from_named(pairs: &[(&str, Rational)]) -> Result<Self> {
        let mut v: [Rational; 21] = std::array::from_fn(|_| Rational::zero());
        for (n, x) in pairs {
            let i = param_index(n).ok_or_else(|| Error::usage(format!("unknown parameter {n:?}")))?;
            v[i] = x.clone();
        }
        Ok(KtParams::from_vec(&v))
    }

    pub fn to_f64(&self) -> KtParams<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn is_zero(&self) -> bool {
        self.trace_free().to_vec().iter().all(Zero::is_zero)
    }

    /// Largest absolute parameter after trace-free normalization.
    pub fn max_abs(&self) -> Rational {
        self.trace_free().to_vec().iter().map(rational::abs).max().unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &Rational| Value::String(rational::to_string(x));
        json!({
            "a": [s(&self.a[0][0]), s(&self.a[1][1]), s(&self.a[2][2])],
            "alpha": [s(&self.a[1][2]), s(&self.a[0][2]), s(&self.a[0][1])],
            "b": self.b.iter().map(|r| r.iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "c": [s(&self.c[0][0]), s(&self.c[1][1]), s(&self.c[2][2])],
            "gamma": [s(&self.c[1][2]), s(&self.c[0][2]), s(&self.c[0][1])],
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::usage("Killing tensor JSON must be an object"))?;
        for k in obj.keys() {
            if !matches!(k.as_str(), "a" | "alpha" | "b" | "c" | "gamma" | "schema") {
                return Err(Error::usage(format!("unknown Killing tensor field {k:?}")));
            }
        }
        let triple = |key: &str| -> Result<Vec3<Rational>> {
            match obj.get(key) {
                None => Ok(std::array::from_fn(|_| Rational::zero())),
                Some(x) => rational_array::<3>(x, key),
            }
        };
        let a = triple("a")?;
        let al = triple("alpha")?;
        let c = triple("c")?;
        let ga = triple("gamma")?;
        let b: Mat3<Rational> = match obj.get("b") {
            None => mat3::zero_mat(&Rational::zero()),
            Some(Value::Array(rows)) if rows.len() == 3 => {
                let r0 = rational_array::<3>(&rows[0], "b")?;
                let r1 = rational_array::<3>(&rows[1], "b")?;
                let r2 = rational_array::<3>(&rows[2], "b")?;
                [r0, r1, r2]
            }
            Some(_) => return Err(Error::usage("field \"b\" must be a 3×3 array")),
        };
        let sym = |d: &Vec3<Rational>, o: &Vec3<Rational>| -> Mat3<Rational> {
            [
                [d[0].clone(), o[2].clone(), o[1].clone()],
                [o[2].clone(), d[1].clone(), o[0].clone()],
                [o[1].clone(), o[0].clone(), d[2].clone()],
            ]
        };
        Ok(KtParams { a: sym(&a, &al), b, c: sym(&c, &ga) })
    }
}

impl KtParams<f64> {
    pub fn to_json(&self) -> Value {
        json!({
            "a": [self.a[0][0], self.a[1][1], self.a[2][2]],
            "alpha": [self.a[1][2], self.a[0][2], self.a[0][1]],
            "b": self.b,
            "c": [self.c[0][0], self.c[1][1], self.c[2][2]],
            "gamma": [self.c[1][2], self.c[0][2], self.c[0][1]],
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.trace_free().to_vec().iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

/// Reads a fixed-length array of `"p/q"` strings or JSON integers.
pub fn rational_array<const N: usize>(v: &Value, key: &str) -> Result<[Rational; N]> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == N)
        .ok_or_else(|| Error::usage(format!("field {key:?} must be an array of {N} rationals")))?;
    let mut out: [Rational; N] = std::array::from_fn(|_| Rational::zero());
    for (o, x) in out.iter_mut().zip(arr) {
        *o = rational_value(x, key)?;
    }
    Ok(out)
}

pub fn rational_value(x: &Value, key: &str) -> Result<Rational> {
    match x {
        Value::String(s) => rational::parse(s),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().expect("checked"))),
        _ => Err(Error::usage(format!("field {key:?} holds a non-rational value {x}"))),
    }
}

impl<S: Ring + PartialEq> PartialEq for KtParams<S> {
    fn eq(&self, o: &Self) -> bool {
        let (p, q) = (self.trace_free(), o.trace_free());
        p.a == q.a && p.b == q.b && p.c == q.c
    }
}

impl<S: Ring + Eq> Eq for KtParams<S> {}

impl Hash for KtParams<Rational> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trace_free().to_vec().hash(state);
    }
}

impl<S: Ring> KvParams<S> {
    pub fn from_vec(v: &[S; 6]) -> Self {
        KvParams { a: [v[0].clone(), v[1].clone(), v[2].clone()], c: [v[3].clone(), v[4].clone(), v[5].clone()] }
    }

    pub fn to_vec(&self) -> [S; 6] {
        std::array::from_fn(|i| if i < 3 { self.a[i].clone() } else { self.c[i - 3].clone() })
    }
}

impl KvParams<Rational> {
    pub fn is_zero(&self) -> bool {
        self.to_vec().iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &Rational| Value::String(rational::to_string(x));
        json!({ "a": self.a.iter().map(s).collect::<Vec<_>>(), "c": self.c.iter().map(s).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::usage("Killing vector JSON must be an object"))?;
        let get = |k: &str| match obj.get(k) {
            None => Ok(std::array::from_fn(|_| Rational::zero())),
            Some(x) => rational_array::<3>(x, k),
        };
        Ok(KvParams { a: get("a")?, c: get("c")? })
    }
}

/// The 21 parameters as variables `a1, …, gamma3`, followed by `x, y, z`.
pub fn symbolic_varset() -> VarSet {
    VarSet::new(PARAM_NAMES.iter().map(|s| s.to_string()).chain(["x", "y", "z"].map(String::from)))
}

/// Generic Killing tensor over [`symbolic_varset`].
pub fn symbolic_kt(vars: &VarSet) -> KtParams<Poly> {
    KtParams::from_vec(&std::array::from_fn(|k| Poly::var(vars, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;

    #[test]
    fn vector_round_trip_and_slots() {
        let v: [Rational; 21] = std::array::from_fn(|i| int(i as i64 + 1));
        let k = KtParams::from_vec(&v);
        assert_eq!(k.to_vec(), v);
        assert_eq!(k.a[1][2], int(4));
        assert_eq!(k.a[2][1], int(4));
        assert_eq!(k.b[2][0], int(11));
        assert_eq!(k.c[0][1], int(21));
    }

    #[test]
    fn trace_free_equality() {
        let k = KtParams::from_named(&[("b11", int(1)), ("b22", int(1)), ("b33", int(1)), ("a1", int(2))]).unwrap();
        let l = KtParams::from_named(&[("a1", int(2))]).unwrap();
        assert_eq!(k, l);
        assert_ne!(KtParams::metric(), l);
    }

    #[test]
    fn json_round_trip() {
        let v: [Rational; 21] = std::array::from_fn(|i| rat(i as i64 - 7, 3));
        let k = KtParams::from_vec(&v);
        let back = KtParams::from_json(&k.to_json()).unwrap();
        assert_eq!(back.to_vec(), v);
        assert!(KtParams::from_json(&json!({"a": [1, 2]})).is_err());
        assert!(KtParams::from_json(&json!({"a": [1.5, 2, 3]})).is_err());
    }
}
