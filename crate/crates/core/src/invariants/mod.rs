//! Isometry invariants of Killing vectors and Killing tensors.

pub mod table;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactmath::mat3::{self, Vec3};
use crate::exactmath::rational::{self, int, rat};
use crate::exactmath::{Rational, Ring};
use crate::killing::{KtParams, KvParams};

pub use table::{deltas, deltas_weighted};

/// Exact values tagged with their names, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVector {
    pub values: Vec<(String, Rational)>,
}

impl InvariantVector {
    pub fn new(prefix: &str, vals: impl IntoIterator<Item = Rational>) -> Self {
        InvariantVector {
            values: vals.into_iter().enumerate().map(|(i, v)| (format!("{prefix}{}", i + 1), v)).collect(),
        }
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i].1
    }

    pub fn as_vec(&self) -> Vec<Rational> {
        self.values.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.values {
            m.insert(k.clone(), Value::String(rational::to_string(v)));
        }
        Value::Object(m)
    }
}

/// `(C·C, A·C)`.
pub fn kv_invariants(v: &KvParams<Rational>) -> InvariantVector {
    InvariantVector::new("Delta", [mat3::dot(&v.c, &v.c), mat3::dot(&v.a, &v.c)])
}

/// The unique `b_ii` with the given differences and zero sum.
pub fn extract_bii(beta: &Vec3<Rational>) -> Result<Vec3<Rational>> {
    if !(&beta[0] + &beta[1] + &beta[2]).is_zero() {
        return Err(Error::usage("beta components must sum to zero"));
    }
    let third = rat(1, 3);
    Ok([(&beta[2] - &beta[1]) * &third, (&beta[0] - &beta[2]) * &third, (&beta[1] - &beta[0]) * &third])
}

/// Replaces the diagonal of `B` by the trace-free solution for its differences.
pub fn normalize_bii<S: Ring>(k: &KtParams<S>) -> KtParams<S> {
    k.trace_free()
}

/// `Δ1..Δ15` after the `b_ii` normalization.
pub fn full_invariants(k: &KtParams<Rational>) -> InvariantVector {
    let b = extract_bii(&k.beta()).expect("differences of a diagonal sum to zero");
    let mut kn = k.clone();
    for (i, v) in b.into_iter().enumerate() {
        kn.b[i][i] = v;
    }
    InvariantVector::new("Delta", deltas(&kn))
}

const TRANSLATIONAL_FREE: [&str; 7] = ["a1", "a2", "a3", "alpha3", "b13", "b23", "c3"];
const ROTATIONAL_FREE: [&str; 8] = ["a1", "a2", "a3", "b12", "b21", "c1", "c2", "c3"];

fn excluded<S: Ring>(k: &KtParams<S>, free: &[&str]) -> Vec<S> {
    let v = k.trace_free().to_vec();
    crate::killing::PARAM_NAMES.iter().zip(v).filter(|(n, _)| !free.contains(n)).map(|(_, x)| x).collect()
}

/// Quantities that vanish exactly on the translational form.
pub fn translational_residuals<S: Ring>(k: &KtParams<S>) -> Vec<S> {
    excluded(k, &TRANSLATIONAL_FREE)
}

/// Quantities that vanish exactly on the rotational form
/// (`a2 = a1`, `b21 = −b12`, `c1 = c2`, only `a1, a3, b12, c2, c3` free).
pub fn rotational_residuals<S: Ring>(k: &KtParams<S>) -> Vec<S> {
    let mut r = excluded(k, &ROTATIONAL_FREE);
    r.push(k.a[1][1].clone() - k.a[0][0].clone());
    r.push(k.b[1][0].clone() + k.b[0][1].clone());
    r.push(k.c[0][0].clone() - k.c[1][1].clone());
    r
}

pub fn is_translational_form(k: &KtParams<Rational>) -> bool {
    translational_residuals(k).iter().all(Zero::is_zero)
}

pub fn is_rotational_form(k: &KtParams<Rational>) -> bool {
    rotational_residuals(k).iter().all(Zero::is_zero)
}

/// `(c3, [b13² − b23² + c3(a2 − a1)]² + 4(b13 b23 − α3 c3)²)`; polynomial
/// degrees 1 and 4.
pub fn translational_values<S: Ring>(k: &KtParams<S>) -> [S; 2] {
    let (a1, a2, al3) = (k.a[0][0].clone(), k.a[1][1].clone(), k.a[0][1].clone());
    let (b13, b23, c3) = (k.b[0][2].clone(), k.b[1][2].clone(), k.c[2][2].clone());
    let p = b13.clone() * b13.clone() - b23.clone() * b23.clone() + c3.clone() * (a2 - a1);
    let q = b13 * b23 - al3 * c3.clone();
    [c3, p.clone() * p + (q.clone() * q).scale(&int(4))]
}

/// `(c2, b12² + c2(a3 − a1), a3, c3)`; polynomial degrees 1, 2, 1, 1.
pub fn rotational_values<S: Ring>(k: &KtParams<S>) -> [S; 4] {
    let (a1, a3, b12, c2, c3) =
        (k.a[0][0].clone(), k.a[2][2].clone(), k.b[0][1].clone(), k.c[1][1].clone(), k.c[2][2].clone());
    [c2.clone(), b12.clone() * b12 + c2 * (a3.clone() - a1), a3, c3]
}

pub fn translational_invariants(k: &KtParams<Rational>) -> Result<InvariantVector> {
    if !is_translational_form(k) {
        return Err(Error::domain("Killing tensor is not in the translational form"));
    }
    Ok(InvariantVector::new("Delta", translational_values(k)))
}

pub fn rotational_invariants(k: &KtParams<Rational>) -> Result<InvariantVector> {
    if !is_rotational_form(k) {
        return Err(Error::domain("Killing tensor is not in the rotational form"));
    }
    Ok(InvariantVector::new("Delta", rotational_values(k)))
}

/// `Ξ1..Ξ6` from `Δ1..Δ15`.
pub fn xi_invariants(d: &InvariantVector) -> InvariantVector {
    let g = |i: usize| d.get(i - 1).clone();
    let xi1 = g(2) * g(2) - g(4);
    let xi2 = g(2) * g(2) * g(2) - g(7);
    let xi3 = int(3) * g(4) - g(2) * g(2);
    let xi4 = g(2) * g(5) - int(3) * g(8) - int(2) * g(10);
    let xi5 = g(2) * g(10) + g(4) * g(5) - g(11);
    let inner = int(2) * g(2) * (int(10) * g(2) * g(5) + int(24) * g(8) - int(3) * g(10)) - int(72) * g(11) + g(12);
    let xi6 = g(2) * inner - int(48) * g(4) * g(8) - int(20) * g(5) * g(7) + int(16) * g(15);
    InvariantVector::new("Xi", [xi1, xi2, xi3, xi4, xi5, xi6])
}

/// Every invariant vector applicable to `k`.
pub fn all_invariants_json(k: &KtParams<Rational>) -> Value {
    let full = full_invariants(k);
    let mut out = json!({ "full": full.to_json(), "xi": xi_invariants(&full).to_json() });
    if let Ok(t) = translational_invariants(k) {
        out["translational"] = t.to_json();
    }
    if let Ok(r) = rotational_invariants(k) {
        out["rotational"] = r.to_json();
    }
    out
}
