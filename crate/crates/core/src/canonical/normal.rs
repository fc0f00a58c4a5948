//! Isometries bringing an aligned characteristic Killing tensor onto its
//! canonical family, and recovery of the essential parameters.

use std::f64::consts::FRAC_PI_2;

use serde_json::{json, Map, Value};

use super::catalog::family_functionals;
use super::eig::{min_norm_solve, symmetric_eig3};
use crate::classify::{rotation_with_axis, Aligned, Tolerances, WebClass};
use crate::error::{Error, Result};
use crate::exactmath::mat3::{self, Mat3, Vec3};
use crate::killing::{apply_isometry, Isometry, KtParams, PARAM_NAMES};

/// Essential constants of the separable chart; absent ones are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EssentialParams {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
}

impl EssentialParams {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if let Some(v) = v {
                m.insert(k.to_string(), json!(v));
            }
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::usage("essential parameters must be an object"))?;
        let get = |k: &str| -> Result<Option<f64>> {
            match obj.get(k) {
                None => Ok(None),
                Some(x) => x
                    .as_f64()
                    .map(Some)
                    .ok_or_else(|| Error::usage(format!("essential parameter {k} must be a number"))),
            }
        };
        Ok(EssentialParams { a: get("a")?, b: get("b")?, c: get("c")? })
    }
}

/// `x = λ T(u) + δ` with `T` the standard chart of `web`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparableChart {
    pub web: WebClass,
    pub essential: EssentialParams,
    pub frame: Isometry<f64>,
}

impl SeparableChart {
    pub fn to_json(&self) -> Value {
        json!({
            "web": self.web.label(),
            "lambda": self.frame.lambda(),
            "delta": self.frame.delta(),
            "essential": self.essential.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let web: WebClass = v["web"].as_str().ok_or_else(|| Error::usage("chart needs a \"web\" label"))?.parse()?;
        let num = |x: &Value| x.as_f64().ok_or_else(|| Error::usage("chart frame entries must be numbers"));
        let row = |x: &Value| -> Result<Vec3<f64>> {
            let a = x
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::usage("chart frame rows must have 3 entries"))?;
            Ok([num(&a[0])?, num(&a[1])?, num(&a[2])?])
        };
        let rows =
            v["lambda"].as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::usage("chart lambda must be 3×3"))?;
        let lambda = [row(&rows[0])?, row(&rows[1])?, row(&rows[2])?];
        let frame = Isometry::new(lambda, row(&v["delta"])?)?;
        Ok(SeparableChart { web, essential: EssentialParams::from_json(&v["essential"])?, frame })
    }

    /// The same chart seen from coordinates `x̃` with `x = h(x̃)`.
    pub fn after(&self, h: &Isometry<f64>) -> SeparableChart {
        SeparableChart { frame: h.compose(&self.frame), ..self.clone() }
    }
}

fn idx(name: &str) -> usize {
    PARAM_NAMES.iter().position(|m| *m == name).expect("parameter name")
}

fn rot_z(phi: f64) -> Mat3<f64> {
    let (s, c) = phi.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

fn proper(mut l: Mat3<f64>) -> Mat3<f64> {
    if mat3::det(&l) < 0.0 {
        for row in &mut l {
            row[2] = -row[2];
        }
    }
    l
}

fn permuted(l: &Mat3<f64>, p: [usize; 3]) -> Mat3<f64> {
    let cols = p.map(|k| mat3::column(l, k));
    proper(mat3::from_columns([&cols[0], &cols[1], &cols[2]]))
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn transformed(k: &KtParams<f64>, l: &Mat3<f64>, d: &Vec3<f64>) -> KtParams<f64> {
    let h = Isometry::new(*l, *d).expect("proper rotation");
    apply_isometry(k, &h).trace_free()
}

fn eval(fs: &[Vec<(usize, f64)>], v: &[f64; 21]) -> Vec<f64> {
    fs.iter().map(|f| f.iter().map(|(i, c)| c * v[*i]).sum()).collect()
}

/// Translation making the linear family conditions hold after rotating by
/// `l`: the `B` conditions first (affine in `δ`), then the `A` conditions on
/// the remaining kernel by Newton steps (at most quadratic there).
fn solve_delta(k: &KtParams<f64>, l: &Mat3<f64>, fs: &[Vec<(usize, f64)>]) -> Vec3<f64> {
    let scale = k.max_abs().max(f64::MIN_POSITIVE);
    let in_range = |f: &Vec<(usize, f64)>, r: std::ops::Range<usize>| f.iter().all(|(i, _)| r.contains(i));
    let fb: Vec<_> = fs.iter().filter(|f| in_range(f, 6..15)).cloned().collect();
    let fa: Vec<_> = fs.iter().filter(|f| in_range(f, 0..6)).cloned().collect();
    let g = |fs: &[Vec<(usize, f64)>], d: &Vec3<f64>| eval(fs, &transformed(k, l, d).to_vec());

    let b0 = g(&fb, &[0.0; 3]);
    let cols: Vec<Vec<f64>> = (0..3)
        .map(|j| {
            let mut e = [0.0; 3];
            e[j] = 1.0;
            g(&fb, &e).iter().zip(&b0).map(|(x, y)| x - y).collect()
        })
        .collect();
    let rows: Vec<Vec<f64>> = (0..b0.len()).map(|i| (0..3).map(|j| cols[j][i]).collect()).collect();
    let rhs: Vec<f64> = b0.iter().map(|x| -x).collect();
    let (d0, kernel) = min_norm_solve(&rows, &rhs, 3, 1e-10);
    let mut delta = [d0[0], d0[1], d0[2]];
    if kernel.is_empty() || fa.is_empty() {
        return delta;
    }
    let at = |s: &[f64]| -> Vec3<f64> {
        let mut d = delta;
        for (n, sk) in kernel.iter().zip(s) {
            for i in 0..3 {
                d[i] += sk * n[i];
            }
        }
        d
    };
    let mut s = vec![0.0; kernel.len()];
    for _ in 0..8 {
        let r = g(&fa, &at(&s));
        if r.iter().all(|x| x.abs() <= 1e-14 * scale) {
            break;
        }
        // central differences are exact for quadratics
        let jac: Vec<Vec<f64>> = (0..kernel.len())
            .map(|k| {
                let (mut sp, mut sm) = (s.clone(), s.clone());
                sp[k] += 1.0;
                sm[k] -= 1.0;
                g(&fa, &at(&sp)).iter().zip(g(&fa, &at(&sm))).map(|(p, m)| (p - m) / 2.0).collect()
            })
            .collect();
        let rows: Vec<Vec<f64>> = (0..r.len()).map(|i| (0..kernel.len()).map(|k| jac[k][i]).collect()).collect();
        let rhs: Vec<f64> = r.iter().map(|x| -x).collect();
        let (step, _) = min_norm_solve(&rows, &rhs, kernel.len(), 1e-10);
        for (sk, dk) in s.iter_mut().zip(step) {
            *sk += dk;
        }
    }
    delta = at(&s);
    delta
}

/// Largest violated family condition relative to the parameter scale.
pub fn family_residual(web: WebClass, k: &KtParams<f64>) -> f64 {
    let k = k.trace_free();
    let scale = k.max_abs().max(f64::MIN_POSITIVE);
    let v = k.to_vec();
    let linear = eval(&family_functionals(web), &v).into_iter().fold(0.0f64, |m, x| m.max(x.abs())) / scale;
    let g = |n: &str| v[idx(n)];
    let cubic = match web {
        WebClass::Paraboloidal => {
            super::catalog::paraboloidal_constraint([g("a1"), g("a2"), g("a3")], g("b12"), g("b21"), g("c3")).abs()
                / scale.powi(3)
        }
        WebClass::Ellipsoidal => {
            super::catalog::ellipsoidal_constraint([g("a1"), g("a2"), g("a3")], [g("c1"), g("c2"), g("c3")]).abs()
                / scale.powi(3)
        }
        _ => 0.0,
    };
    linear.max(cubic)
}

/// Essential parameters read off a canonical tensor, and the shift of the
/// chart origin along `λ e3` fixing the paraboloidal gauge.
fn essential(web: WebClass, k: &KtParams<f64>, tol: &Tolerances) -> Option<(EssentialParams, f64)> {
    let v = k.to_vec();
    let g = |n: &str| v[idx(n)];
    let scale = k.max_abs();
    let zero = |x: f64| x.abs() <= tol.class * scale;
    let pos = |x: f64| x > 0.0 && x.is_finite();
    let none = EssentialParams::default();
    Some(match web {
        WebClass::EllipticHyperbolic => {
            let a2 = (g("a1") - g("a2")) / g("c3");
            (pos(a2) && !zero(g("c3"))).then_some((EssentialParams { a: Some(a2.sqrt()), ..none }, 0.0))?
        }
        WebClass::ProlateSpheroidal | WebClass::OblateSpheroidal => {
            let sign = if web == WebClass::ProlateSpheroidal { 1.0 } else { -1.0 };
            let a2 = sign * (g("a3") - g("a1")) / g("c2");
            (pos(a2) && !zero(g("c2"))).then_some((EssentialParams { a: Some(a2.sqrt()), ..none }, 0.0))?
        }
        WebClass::Conical => {
            let (c1, c2, c3) = (g("c1"), g("c2"), g("c3"));
            if !(c1 < c2 && c2 < c3) || zero(c2 - c1) || zero(c3 - c2) {
                return None;
            }
            (EssentialParams { a: None, b: Some(((c2 - c1) / (c3 - c1)).sqrt()), c: Some(1.0) }, 0.0)
        }
        WebClass::Paraboloidal => {
            let (a1, a2, a3, b12, b21, c3) = (g("a1"), g("a2"), g("a3"), g("b12"), g("b21"), g("c3"));
            let (b, c) = if zero(c3) {
                if zero(b12) {
                    return None;
                }
                let c = (a2 - a3) / (2.0 * b12);
                (c - (a2 - a1) / (2.0 * b12), c)
            } else if zero(b21) {
                if zero(b12) {
                    return None;
                }
                let b = (a1 - a2) / (2.0 * b12);
                (b, b + b12 / (2.0 * c3))
            } else if zero(b12) {
                let c = (a1 - a2) / (2.0 * b21);
                (c - b21 / (2.0 * c3), c)
            } else {
                let b = (a1 - a3) / (2.0 * b12);
                (b, b + (b12 + b21) / (2.0 * c3))
            };
            let gap = b - c;
            if !pos(gap) {
                return None;
            }
            // gauge c = b − c, so that 0 < c < b
            (EssentialParams { a: None, b: Some(2.0 * gap), c: Some(gap) }, gap - c)
        }
        WebClass::Ellipsoidal => {
            let (a1, a2, a3, c1, c2, c3) = (g("a1"), g("a2"), g("a3"), g("c1"), g("c2"), g("c3"));
            let (d1, d2) = if !zero(c2) && !zero(c3) {
                let d1 = (a1 - a2) / c3;
                (d1, (a1 - a3) / c2 - d1)
            } else if zero(c2) && !zero(c3) && !zero(c1) {
                ((a1 - a2) / c3, -(a1 - a2) / c1)
            } else if !zero(c2) && zero(c3) && !zero(c1) {
                let ac = (a1 - a3) / c2;
                let d2 = (a1 - a3) / c1;
                (ac - d2, d2)
            } else {
                return None;
            };
            if !pos(d1) || !pos(d2) {
                return None;
            }
            // gauge c = b − c
            (EssentialParams { a: Some(2.0 * d2 + d1), b: Some(2.0 * d2), c: Some(d2) }, 0.0)
        }
        _ => (none, 0.0),
    })
}

fn trial_rotations(web: WebClass, k: &KtParams<f64>, tol: &Tolerances) -> Result<Vec<Mat3<f64>>> {
    let v = k.to_vec();
    let g = |n: &str| v[idx(n)];
    let scale = k.max_abs();
    let zero = |x: f64, deg: i32| x.abs() <= tol.class * scale.powi(deg);
    let id = mat3::identity(&0.0);
    Ok(match web {
        WebClass::Cartesian => vec![proper(symmetric_eig3(&k.a, tol.canon)?.1)],
        WebClass::CircularCylindrical => vec![id],
        WebClass::ParabolicCylindrical => {
            let (b13, b23) = (g("b13"), g("b23"));
            let phi = if zero(b23, 1) { FRAC_PI_2 } else { (-b13 / b23).atan() };
            vec![rot_z(phi), rot_z(phi + FRAC_PI_2)]
        }
        WebClass::EllipticHyperbolic => {
            let (a1, a2, al3, b13, b23, c3) = (g("a1"), g("a2"), g("alpha3"), g("b13"), g("b23"), g("c3"));
            let s1 = b13 * b13 - b23 * b23 + c3 * (a2 - a1);
            let s2 = al3 * c3 - b13 * b23;
            let disc = s1 * s1 + 4.0 * s2 * s2;
            let phi = if zero(s2, 2) {
                if s1 < 0.0 {
                    0.0
                } else {
                    FRAC_PI_2
                }
            } else {
                ((s1 + disc.sqrt()) / (2.0 * s2)).atan()
            };
            vec![rot_z(phi), rot_z(phi + FRAC_PI_2)]
        }
        WebClass::Spherical | WebClass::ProlateSpheroidal | WebClass::OblateSpheroidal | WebClass::Parabolic => {
            vec![id]
        }
        WebClass::Conical => vec![proper(symmetric_eig3(&k.c, tol.canon)?.1)],
        WebClass::Ellipsoidal => {
            let (vals, vecs) = symmetric_eig3(&k.c, tol.canon)?;
            let eq = |i: usize, j: usize| zero(vals[i] - vals[j], 1);
            let base = match (eq(0, 1), eq(1, 2)) {
                (false, false) => vecs,
                (true, true) => {
                    let d = solve_delta(k, &id, &family_functionals(web));
                    let kt = transformed(k, &id, &d);
                    symmetric_eig3(&kt.a, tol.canon)?.1
                }
                _ => return Err(Error::consistency("ellipsoidal tensor with exactly two equal eigenvalues of C")),
            };
            PERMUTATIONS.iter().map(|p| permuted(&base, *p)).collect()
        }
        WebClass::Paraboloidal => {
            let (cvals, cvecs) = symmetric_eig3(&k.c, tol.canon)?;
            let big = (0..3).max_by(|&i, &j| cvals[i].abs().total_cmp(&cvals[j].abs())).expect("three");
            let c_zero = zero(cvals[big], 1);
            let axis = if c_zero {
                let b2 = mat3::mul(&k.b, &k.b);
                let sym = mat3::scale(&mat3::add(&b2, &mat3::transpose(&b2)), &crate::exactmath::rational::rat(1, 2));
                let (_, bvecs) = symmetric_eig3(&sym, tol.canon)?;
                mat3::column(&bvecs, 2)
            } else {
                mat3::column(&cvecs, big)
            };
            let mut out = Vec::new();
            for sign in [1.0, -1.0] {
                let l0 = rotation_with_axis(&axis.map(|x| sign * x));
                let bp = mat3::mul(&mat3::mul(&mat3::transpose(&l0), &k.b), &l0);
                let p = (bp[0][0] - bp[1][1]) / 2.0;
                let q = (bp[0][1] + bp[1][0]) / 2.0;
                let psi0 = if !c_zero && !(zero(p, 1) && zero(q, 1)) {
                    0.5 * (-p).atan2(q)
                } else {
                    let fs: Vec<_> = family_functionals(web).into_iter().filter(|f| f[0].0 != idx("alpha3")).collect();
                    let d = solve_delta(k, &l0, &fs);
                    let kt = transformed(k, &l0, &d);
                    // principal axis of the upper 2×2 block of Ã
                    0.5 * (2.0 * kt.a[0][1]).atan2(kt.a[0][0] - kt.a[1][1])
                };
                for k4 in 0..4 {
                    out.push(mat3::mul(&l0, &rot_z(psi0 + k4 as f64 * FRAC_PI_2)));
                }
            }
            out
        }
    })
}

struct Trial {
    lambda: Mat3<f64>,
    delta: Vec3<f64>,
    essential: EssentialParams,
    shift: f64,
}

/// Frame and essential parameters for an aligned tensor of the given web.
///
/// The returned frame maps the coordinates of `k` to canonical coordinates.
pub fn to_canonical(k: &Aligned, web: WebClass, tol: &Tolerances) -> Result<SeparableChart> {
    let kf = k.to_f64().trace_free();
    if kf.max_abs() == 0.0 {
        return Err(Error::domain("zero Killing tensor has no canonical form"));
    }
    let fs = family_functionals(web);
    let mut best_residual = f64::INFINITY;
    let mut degenerate = false;
    let mut trials = Vec::new();
    for l in trial_rotations(web, &kf, tol)? {
        let delta = if web == WebClass::Cartesian { [0.0; 3] } else { solve_delta(&kf, &l, &fs) };
        let kt = transformed(&kf, &l, &delta);
        let r = family_residual(web, &kt);
        best_residual = best_residual.min(r);
        if r > tol.canon {
            continue;
        }
        match essential(web, &kt, tol) {
            Some((essential, shift)) => trials.push(Trial { lambda: l, delta, essential, shift }),
            None => degenerate = true,
        }
    }
    if web == WebClass::Paraboloidal {
        let key = |t: &Trial| mat3::dot(&t.delta, &t.delta).sqrt();
        let eps = 1e-9 * kf.max_abs().max(1.0);
        trials.sort_by(|x, y| {
            let (a, b) = (key(x), key(y));
            if (a - b).abs() > eps {
                return a.total_cmp(&b);
            }
            x.lambda
                .iter()
                .flatten()
                .zip(y.lambda.iter().flatten())
                .map(|(p, q)| p.total_cmp(q))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
    }
    let Some(t) = trials.into_iter().next() else {
        if degenerate {
            return Err(Error::domain(format!("near-degenerate {web} tensor: essential parameters out of range")));
        }
        return Err(Error::domain(format!(
            "tensor does not match the {web} canonical family (relative residual {best_residual:.3e})"
        )));
    };
    let axis = mat3::column(&t.lambda, 2);
    let delta = mat3::vsub(&t.delta, &axis.map(|x| x * t.shift));
    let frame = Isometry::new(t.lambda, delta).expect("proper rotation");
    Ok(SeparableChart { web, essential: t.essential, frame })
}

/// Classifies `k` and returns the chart in the input coordinates.
pub fn canonical_chart(
    k: &KtParams<crate::exactmath::Rational>,
    tol: &Tolerances,
) -> Result<(crate::classify::ClassificationReport, SeparableChart)> {
    crate::classify::require_ckt(k)?;
    canonical_chart_of_ckt(k, tol)
}

/// `canonical_chart` for a tensor already known to pass `require_ckt`.
pub fn canonical_chart_of_ckt(
    k: &KtParams<crate::exactmath::Rational>,
    tol: &Tolerances,
) -> Result<(crate::classify::ClassificationReport, SeparableChart)> {
    let report = crate::classify::classify_ckt(k, tol)?;
    let chart = to_canonical(&report.aligned, report.web, tol)?.after(&report.aligning_isometry.to_f64());
    Ok((report, chart))
}
