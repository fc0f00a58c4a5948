//! The eleven separable charts `x̃ = T(u)` and a pointwise diagonality check.
//!
//! Charts defined through squares (conical, paraboloidal `x, y`, ellipsoidal)
//! take an octant selector: one sign per Cartesian axis.

use super::normal::SeparableChart;
use crate::classify::WebClass;
use crate::error::{Error, Result};
use crate::exactmath::mat3::{self, Mat3, Vec3};
use crate::killing::{components_at, KtParams};

use std::f64::consts::{PI, TAU};

fn out_of_range(web: WebClass, u: &Vec3<f64>) -> Error {
    Error::domain(format!("coordinates {u:?} outside the {web} chart range"))
}

fn root(v: f64) -> f64 {
    v.max(0.0).sqrt()
}

/// `T(u)` in canonical coordinates, before the chart frame.
pub fn standard_chart(chart: &SeparableChart, u: &Vec3<f64>, signs: &Vec3<f64>) -> Result<Vec3<f64>> {
    let web = chart.web;
    let e = &chart.essential;
    let [p, q, r] = *u;
    let ok = |cond: bool| if cond { Ok(()) } else { Err(out_of_range(web, u)) };
    let sgn = |i: usize| if signs[i] < 0.0 { -1.0 } else { 1.0 };
    Ok(match web {
        WebClass::Cartesian => *u,
        WebClass::CircularCylindrical => {
            ok(p >= 0.0 && (0.0..TAU).contains(&q))?;
            [p * q.cos(), p * q.sin(), r]
        }
        WebClass::ParabolicCylindrical => {
            ok(p >= 0.0)?;
            [0.5 * (p * p - q * q), p * q, r]
        }
        WebClass::EllipticHyperbolic => {
            let a = e.a.expect("elliptic-hyperbolic chart has a");
            ok(p >= 0.0 && (0.0..TAU).contains(&q))?;
            [a * p.cosh() * q.cos(), a * p.sinh() * q.sin(), r]
        }
        WebClass::Spherical => {
            ok(p >= 0.0 && (0.0..PI).contains(&q) && (0.0..TAU).contains(&r))?;
            [p * q.sin() * r.cos(), p * q.sin() * r.sin(), p * q.cos()]
        }
        WebClass::ProlateSpheroidal => {
            let a = e.a.expect("prolate chart has a");
            ok(p >= 0.0 && (0.0..PI).contains(&q) && (0.0..TAU).contains(&r))?;
            [a * p.sinh() * q.sin() * r.cos(), a * p.sinh() * q.sin() * r.sin(), a * p.cosh() * q.cos()]
        }
        WebClass::OblateSpheroidal => {
            let a = e.a.expect("oblate chart has a");
            ok(p >= 0.0 && (0.0..PI).contains(&q) && (0.0..TAU).contains(&r))?;
            [a * p.cosh() * q.sin() * r.cos(), a * p.cosh() * q.sin() * r.sin(), a * p.sinh() * q.cos()]
        }
        WebClass::Parabolic => {
            ok(p >= 0.0 && q >= 0.0 && (0.0..TAU).contains(&r))?;
            [p * q * r.cos(), p * q * r.sin(), 0.5 * (p * p - q * q)]
        }
        WebClass::Conical => {
            let (b, c) = (e.b.expect("conical chart has b"), e.c.expect("conical chart has c"));
            let (b2, c2) = (b * b, c * c);
            let (t2, l2) = (q * q, r * r);
            ok(p >= 0.0 && b2 < t2 && t2 < c2 && 0.0 < l2 && l2 < b2)?;
            // x² + y² + z² = r² fixes the z denominator at c²(c² − b²)
            [
                sgn(0) * (p * q * r / (b * c)).abs(),
                sgn(1) * root(p * p * (t2 - b2) * (b2 - l2) / (b2 * (c2 - b2))),
                sgn(2) * root(p * p * (c2 - t2) * (c2 - l2) / (c2 * (c2 - b2))),
            ]
        }
        WebClass::Paraboloidal => {
            let (b, c) = (e.b.expect("paraboloidal chart has b"), e.c.expect("paraboloidal chart has c"));
            ok(q < c && c < r && r < b && b < p)?;
            [
                sgn(0) * root(4.0 * (p - b) * (b - q) * (b - r) / (b - c)),
                sgn(1) * root(4.0 * (p - c) * (c - q) * (r - c) / (b - c)),
                p + q + r - b - c,
            ]
        }
        WebClass::Ellipsoidal => {
            let (a, b, c) = (
                e.a.expect("ellipsoidal chart has a"),
                e.b.expect("ellipsoidal chart has b"),
                e.c.expect("ellipsoidal chart has c"),
            );
            ok(a > p && p > b && b > q && q > c && c > r)?;
            [
                sgn(0) * root((a - p) * (a - q) * (a - r) / ((a - b) * (a - c))),
                sgn(1) * root((b - p) * (b - q) * (b - r) / ((b - a) * (b - c))),
                sgn(2) * root((c - p) * (c - q) * (c - r) / ((c - a) * (c - b))),
            ]
        }
    })
}

/// `x = λ T(u) + δ`.
pub fn chart_map(chart: &SeparableChart, u: &Vec3<f64>, signs: &Vec3<f64>) -> Result<Vec3<f64>> {
    Ok(chart.frame.forward(&standard_chart(chart, u, signs)?))
}

/// Jacobian `∂x/∂u` by central differences with step `1e-6 · max(1, |u_k|)`.
pub fn chart_jacobian(chart: &SeparableChart, u: &Vec3<f64>, signs: &Vec3<f64>) -> Result<Mat3<f64>> {
    let mut j = [[0.0; 3]; 3];
    for k in 0..3 {
        let h = 1e-6 * u[k].abs().max(1.0);
        let (mut up, mut um) = (*u, *u);
        up[k] += h;
        um[k] -= h;
        let (xp, xm) = (chart_map(chart, &up, signs)?, chart_map(chart, &um, signs)?);
        for i in 0..3 {
            j[i][k] = (xp[i] - xm[i]) / (2.0 * h);
        }
    }
    Ok(j)
}

/// Contravariant components of `k` in the chart at `u`.
pub fn chart_components(
    k: &KtParams<f64>,
    chart: &SeparableChart,
    u: &Vec3<f64>,
    signs: &Vec3<f64>,
) -> Result<Mat3<f64>> {
    let x = chart_map(chart, u, signs)?;
    let j = chart_jacobian(chart, u, signs)?;
    let scale = mat3::max_abs(&j);
    let det = mat3::det(&j);
    if det.is_nan() || det.abs() <= 1e-12 * scale.powi(3) {
        return Err(Error::domain(format!("chart Jacobian is singular at {u:?}")));
    }
    let ji = mat3::inverse(&j).expect("nonsingular Jacobian");
    let kx = components_at(k, &x);
    Ok(mat3::mul(&mat3::mul(&ji, &kx), &mat3::transpose(&ji)))
}

/// Largest off-diagonal magnitude of `k` in chart coordinates at `u`.
pub fn chart_pushforward_check(
    k: &KtParams<f64>,
    chart: &SeparableChart,
    u: &Vec3<f64>,
    signs: &Vec3<f64>,
) -> Result<f64> {
    let m = chart_components(k, chart, u, signs)?;
    Ok([m[0][1], m[0][2], m[1][2], m[1][0], m[2][0], m[2][1]].iter().fold(0.0, |a: f64, x| a.max(x.abs())))
}

/// Bounded interior box of the chart coordinates, unbounded ranges truncated.
pub fn interior_box(chart: &SeparableChart) -> [(f64, f64); 3] {
    let e = &chart.essential;
    let (a, b, c) = (e.a.unwrap_or(1.0), e.b.unwrap_or(1.0), e.c.unwrap_or(1.0));
    use WebClass::*;
    match chart.web {
        Cartesian => [(-3.0, 3.0); 3],
        CircularCylindrical => [(0.3, 3.0), (0.1, 6.2), (-3.0, 3.0)],
        ParabolicCylindrical => [(0.3, 2.0), (0.2, 2.0), (-3.0, 3.0)],
        EllipticHyperbolic => [(0.2, 1.5), (0.1, 1.4), (-3.0, 3.0)],
        Spherical | ProlateSpheroidal | OblateSpheroidal => [(0.3, 1.5), (0.2, 2.9), (0.1, 6.2)],
        Parabolic => [(0.3, 2.0), (0.3, 2.0), (0.1, 6.2)],
        Conical => [(0.3, 3.0), (b, c), (0.0, b)],
        Paraboloidal => [(b, b + 2.0 * (b - c)), (c - 2.0 * (b - c), c), (c, b)],
        Ellipsoidal => [(b, a), (c, b), (c - (a - c), c)],
    }
}

/// `n` deterministic points with octant signs, each strictly inside
/// `interior_box` with a 5% margin on every side.
pub fn interior_samples(chart: &SeparableChart, n: usize) -> Vec<(Vec3<f64>, Vec3<f64>)> {
    // Kronecker sequence on the plastic-number lattice
    const ALPHA: [f64; 3] = [0.819_172_513_396_164_4, 0.671_043_606_703_789_2, 0.549_700_477_901_970_1];
    let bx = interior_box(chart);
    let squared = matches!(chart.web, WebClass::Conical);
    (0..n)
        .map(|i| {
            let u = std::array::from_fn(|k| {
                let f = 0.05 + 0.9 * (0.5 + ALPHA[k] * (i + 1) as f64).fract();
                let (lo, hi) = bx[k];
                if squared && k > 0 {
                    (lo * lo + f * (hi * hi - lo * lo)).sqrt()
                } else {
                    lo + f * (hi - lo)
                }
            });
            let s = std::array::from_fn(|k| if (i >> k) & 1 == 0 { 1.0 } else { -1.0 });
            (u, s)
        })
        .collect()
}

/// Largest off-diagonal component relative to the largest diagonal one
/// (floored at 1), over `interior_samples(chart, n)`.
pub fn relative_pushforward_residual(k: &KtParams<f64>, chart: &SeparableChart, n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for (u, s) in interior_samples(chart, n) {
        let m = chart_components(k, chart, &u, &s)?;
        let diag = (0..3).fold(1.0f64, |a, i| a.max(m[i][i].abs()));
        let off = [m[0][1], m[0][2], m[1][2]].iter().fold(0.0f64, |a, x| a.max(x.abs()));
        worst = worst.max(off / diag);
    }
    Ok(worst)
}
