//! Dimension of the space of Killing tensors.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of valence-`p` Killing tensors on flat `n`-space:
/// `(1/n) C(n+p, p+1) C(n+p−1, p)`.
pub fn dtt_dimension(n: i64, p: i64) -> Result<u64> {
    if n < 1 || p < 1 {
        return Err(Error::usage(format!("dimension formula needs n ≥ 1 and p ≥ 1, got n = {n}, p = {p}")));
    }
    let (n, p) = (n as u64, p as u64);
    let d = binomial(n + p, p + 1) * binomial(n + p - 1, p) / n;
    d.to_u64().ok_or_else(|| Error::usage("dimension overflows u64"))
}
