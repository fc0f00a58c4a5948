//! Killing vector types, symmetry detection and web labels for characteristic
//! Killing tensors.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::mat3::{self, Mat3, Vec3};
use crate::exactmath::rational::{self, sqrt_exact};
use crate::exactmath::Rational;
use crate::invariants::{self, InvariantVector};
use crate::killing::{
    apply_isometry, apply_isometry_kv, has_distinct_eigenvalues, has_normal_eigenvectors, kt_components,
    symmetry_basis, Isometry, KtParams, KvParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WebClass {
    Cartesian,
    CircularCylindrical,
    ParabolicCylindrical,
    EllipticHyperbolic,
    Spherical,
    ProlateSpheroidal,
    OblateSpheroidal,
    Parabolic,
    Conical,
    Paraboloidal,
    Ellipsoidal,
}

impl WebClass {
    pub const ALL: [WebClass; 11] = [
        WebClass::Cartesian,
        WebClass::CircularCylindrical,
        WebClass::ParabolicCylindrical,
        WebClass::EllipticHyperbolic,
        WebClass::Spherical,
        WebClass::ProlateSpheroidal,
        WebClass::OblateSpheroidal,
        WebClass::Parabolic,
        WebClass::Conical,
        WebClass::Paraboloidal,
        WebClass::Ellipsoidal,
    ];

    /// Separable coordinate names in chart order.
    pub fn coordinates(self) -> [&'static str; 3] {
        use WebClass::*;
        match self {
            Cartesian => ["x", "y", "z"],
            CircularCylindrical => ["r", "θ", "z"],
            ParabolicCylindrical => ["μ", "ν", "z"],
            EllipticHyperbolic => ["η", "ψ", "z"],
            Spherical => ["r", "θ", "φ"],
            ProlateSpheroidal | OblateSpheroidal => ["η", "θ", "ψ"],
            Parabolic => ["μ", "ν", "ψ"],
            Conical => ["r", "θ", "λ"],
            Paraboloidal => ["μ", "ν", "λ"],
            Ellipsoidal => ["η", "θ", "λ"],
        }
    }

    pub fn group(self) -> &'static str {
        if self.is_translational() {
            "translational"
        } else if self.is_rotational() {
            "rotational"
        } else {
            "asymmetric"
        }
    }

    /// The invariant conditions that select this web in the classifier.
    pub fn signature(self) -> &'static str {
        use WebClass::*;
        match self {
            Cartesian => "constant tensor, or translational form with Δ1 = 0, Δ2 = 0",
            CircularCylindrical => {
                "helicoidal symmetry, or translational form with Δ1 ≠ 0, Δ2 = 0, or rotational form with Δ1 = Δ2 = 0"
            }
            ParabolicCylindrical => "translational form with Δ1 = 0, Δ2 ≠ 0",
            EllipticHyperbolic => "translational form with Δ1 ≠ 0, Δ2 ≠ 0",
            Spherical => "rotational form with Δ1 ≠ 0, Δ2 = 0",
            ProlateSpheroidal => "rotational form with Δ1 ≠ 0, Δ2 > 0",
            OblateSpheroidal => "rotational form with Δ1 ≠ 0, Δ2 < 0",
            Parabolic => "rotational form with Δ1 = 0, Δ2 ≠ 0",
            Conical => "no symmetry; Ξ1, Ξ2 not both 0, Ξ3 ≠ 0, Ξ4 = Ξ5 = Ξ6 = 0",
            Paraboloidal => "no symmetry; Ξ1 = Ξ2 = 0",
            Ellipsoidal => "no symmetry; Ξ1, Ξ2 not both 0, and Ξ3 = 0 or some of Ξ4, Ξ5, Ξ6 ≠ 0",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            WebClass::Cartesian => "CARTESIAN",
            WebClass::CircularCylindrical => "CIRCULAR_CYLINDRICAL",
            WebClass::ParabolicCylindrical => "PARABOLIC_CYLINDRICAL",
            WebClass::EllipticHyperbolic => "ELLIPTIC_HYPERBOLIC",
            WebClass::Spherical => "SPHERICAL",
            WebClass::ProlateSpheroidal => "PROLATE_SPHEROIDAL",
            WebClass::OblateSpheroidal => "OBLATE_SPHEROIDAL",
            WebClass::Parabolic => "PARABOLIC",
            WebClass::Conical => "CONICAL",
            WebClass::Paraboloidal => "PARABOLOIDAL",
            WebClass::Ellipsoidal => "ELLIPSOIDAL",
        }
    }

    /// Webs whose CKTs admit a translational Killing vector.
    pub fn is_translational(self) -> bool {
        matches!(
            self,
            WebClass::Cartesian
                | WebClass::CircularCylindrical
                | WebClass::ParabolicCylindrical
                | WebClass::EllipticHyperbolic
        )
    }

    pub fn is_rotational(self) -> bool {
        matches!(
            self,
            WebClass::Spherical | WebClass::ProlateSpheroidal | WebClass::OblateSpheroidal | WebClass::Parabolic
        )
    }

    pub fn is_asymmetric(self) -> bool {
        matches!(self, WebClass::Conical | WebClass::Paraboloidal | WebClass::Ellipsoidal)
    }
}

impl fmt::Display for WebClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for WebClass {
    type Err = Error;

    /// Case-insensitive; `-` and spaces are read as `_`.
    fn from_str(s: &str) -> Result<Self> {
        let norm: String =
            s.trim().chars().map(|c| if c == '-' || c == ' ' { '_' } else { c.to_ascii_uppercase() }).collect();
        WebClass::ALL.into_iter().find(|w| w.label() == norm).ok_or_else(|| Error::usage(format!("unknown web {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KvClass {
    Translational,
    Rotational,
    /// `right_handed` is `Δ2 > 0`.
    Helicoidal {
        right_handed: bool,
    },
}

impl KvClass {
    pub fn label(self) -> &'static str {
        match self {
            KvClass::Translational => "TRANSLATIONAL",
            KvClass::Rotational => "ROTATIONAL",
            KvClass::Helicoidal { .. } => "HELICOIDAL",
        }
    }
}

pub fn classify_kv(v: &KvParams<Rational>) -> Result<KvClass> {
    if v.is_zero() {
        return Err(Error::domain("zero Killing vector"));
    }
    let d = invariants::kv_invariants(v);
    Ok(match (d.get(0).is_zero(), d.get(1).is_zero()) {
        (true, _) => KvClass::Translational,
        (false, true) => KvClass::Rotational,
        (false, false) => KvClass::Helicoidal { right_handed: d.get(1).is_positive() },
    })
}

/// An isometry that is exact when every required square root is rational.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Frame {
    Exact(Isometry<Rational>),
    Float(Isometry<f64>),
}

impl Frame {
    pub fn identity() -> Self {
        Frame::Exact(Isometry::identity(&Rational::zero()))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Frame::Exact(_))
    }

    pub fn to_f64(&self) -> Isometry<f64> {
        match self {
            Frame::Exact(h) => h.to_f64(),
            Frame::Float(h) => h.clone(),
        }
    }

    /// `self` followed by `next`; exact only when both are.
    pub fn compose(&self, next: &Frame) -> Frame {
        match (self, next) {
            (Frame::Exact(a), Frame::Exact(b)) => Frame::Exact(a.compose(b)),
            _ => Frame::Float(self.to_f64().compose(&next.to_f64())),
        }
    }

    pub fn apply(&self, k: &KtParams<Rational>) -> Aligned {
        match self {
            Frame::Exact(h) => Aligned::Exact(apply_isometry(k, h)),
            Frame::Float(h) => Aligned::Float(apply_isometry(&k.to_f64(), h)),
        }
    }

    /// Exact entries are rational strings, float entries numbers.
    pub fn to_json(&self) -> Value {
        match self {
            Frame::Exact(h) => {
                let s = |x: &Rational| Value::String(rational::to_string(x));
                json!({
                    "exact": true,
                    "lambda": h.lambda().iter().map(|r| r.iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "delta": h.delta().iter().map(s).collect::<Vec<_>>(),
                })
            }
            Frame::Float(h) => json!({ "exact": false, "lambda": h.lambda(), "delta": h.delta() }),
        }
    }
}

/// Parameters in an aligned frame.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Aligned {
    Exact(KtParams<Rational>),
    Float(KtParams<f64>),
}

impl Aligned {
    pub fn to_f64(&self) -> KtParams<f64> {
        match self {
            Aligned::Exact(k) => k.to_f64(),
            Aligned::Float(k) => k.clone(),
        }
    }
}

/// Relative tolerances for the floating branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Zero test of an invariant of polynomial degree `d`: `|v| <= class * scale^d`.
    pub class: f64,
    /// Residual allowed in normal-form checks, relative to the largest parameter.
    pub canon: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { class: 1e-9, canon: 1e-8 }
    }
}

/// Unit vector completed to a proper orthonormal basis with `n` as third
/// column. The seed is the standard basis vector least aligned with `n`.
fn frame_with_axis(n: &Vec3<Rational>) -> Frame {
    let n2 = mat3::dot(n, n);
    let seed = (0..3).min_by(|&i, &j| n[i].abs().cmp(&n[j].abs())).expect("three entries");
    if let Some(norm) = sqrt_exact(&n2) {
        let u = n.clone().map(|x| x / &norm);
        // |e − (e·u)u|² = 1 − u_k²
        let w2 = Rational::from_integer(1.into()) - &u[seed] * &u[seed];
        if let Some(wn) = sqrt_exact(&w2) {
            let mut e: Vec3<Rational> = std::array::from_fn(|_| Rational::zero());
            e[seed] = Rational::from_integer(1.into());
            let w = mat3::vsub(&e, &u.clone().map(|x| x * &u[seed]));
            let u1 = w.map(|x| x / &wn);
            let u2 = mat3::cross(&u, &u1);
            let l = mat3::from_columns([&u1, &u2, &u]);
            return Frame::Exact(Isometry::rotation(l).expect("orthonormal completion"));
        }
    }
    let nf = n.clone().map(|x| rational::to_f64(&x));
    Frame::Float(Isometry::rotation(completion_f64(&nf, seed)).expect("orthonormal completion"))
}

/// Proper rotation with third column `n/|n|`, seeded like [`canonicalize_kv`].
pub fn rotation_with_axis(n: &Vec3<f64>) -> Mat3<f64> {
    let seed = (0..3).min_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs())).expect("three entries");
    completion_f64(n, seed)
}

fn completion_f64(n: &Vec3<f64>, seed: usize) -> Mat3<f64> {
    let norm = mat3::dot(n, n).sqrt();
    let u = n.map(|x| x / norm);
    let mut w = [0.0; 3];
    w[seed] = 1.0;
    let w = mat3::vsub(&w, &u.map(|x| x * u[seed]));
    let wn = mat3::dot(&w, &w).sqrt();
    let u1 = w.map(|x| x / wn);
    let u2 = mat3::cross(&u, &u1);
    mat3::from_columns([&u1, &u2, &u])
}

/// Isometry bringing `v` to `a X̃3`, `c R̃3` or `a X̃3 + c R̃3`.
pub fn canonicalize_kv(v: &KvParams<Rational>) -> Result<Frame> {
    let class = classify_kv(v)?;
    if class == KvClass::Translational {
        return Ok(frame_with_axis(&v.a));
    }
    // δ = (A × C)/|C|² leaves Ã = C (A·C)/|C|².
    let c2 = mat3::dot(&v.c, &v.c);
    let delta = mat3::cross(&v.a, &v.c).map(|x| x / &c2);
    Ok(Frame::Exact(Isometry::translation(delta)).compose(&frame_with_axis(&v.c)))
}

/// Invariant values consulted during classification.
#[derive(Clone, Debug, PartialEq)]
pub enum TraceValues {
    Exact(InvariantVector),
    Float(Vec<(String, f64)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceEntry {
    pub stage: String,
    pub values: TraceValues,
}

impl TraceEntry {
    fn exact(stage: &str, v: InvariantVector) -> Self {
        TraceEntry { stage: stage.to_string(), values: TraceValues::Exact(v) }
    }

    pub fn to_json(&self) -> Value {
        let values = match &self.values {
            TraceValues::Exact(v) => v.to_json(),
            TraceValues::Float(v) => Value::Object(v.iter().map(|(k, x)| (k.clone(), json!(x))).collect()),
        };
        json!({ "stage": self.stage, "values": values })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub web: WebClass,
    /// Maps the input frame to the normal-form frame.
    pub aligning_isometry: Frame,
    /// Parameters of the input tensor in the aligned frame.
    pub aligned: Aligned,
    pub symmetry_basis: Vec<KvParams<Rational>>,
    pub invariant_trace: Vec<TraceEntry>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> Value {
        let aligned = match &self.aligned {
            Aligned::Exact(k) => k.to_json(),
            Aligned::Float(k) => k.to_json(),
        };
        json!({
            "web": self.web.label(),
            "aligning_isometry": self.aligning_isometry.to_json(),
            "aligned": aligned,
            "symmetry_basis": self.symmetry_basis.iter().map(KvParams::to_json).collect::<Vec<_>>(),
            "invariant_trace": self.invariant_trace.iter().map(TraceEntry::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Rejects tensors without normal eigenvectors or with repeated eigenvalues.
pub fn require_ckt(k: &KtParams<Rational>) -> Result<()> {
    if !has_normal_eigenvectors(k) {
        return Err(Error::domain("not a characteristic Killing tensor: TSN conditions violated"));
    }
    if !has_distinct_eigenvalues(k) {
        return Err(Error::domain("not a characteristic Killing tensor: eigenvalues are not distinct"));
    }
    Ok(())
}

pub fn is_constant(k: &KtParams<Rational>) -> bool {
    kt_components(k).iter().flatten().all(|p| p.is_constant())
}

pub fn classify_web(k: &KtParams<Rational>) -> Result<ClassificationReport> {
    classify_web_with(k, &Tolerances::default())
}

pub fn classify_web_with(k: &KtParams<Rational>, tol: &Tolerances) -> Result<ClassificationReport> {
    require_ckt(k)?;
    classify_ckt(k, tol)
}

/// `classify_web_with` for a tensor already known to pass `require_ckt`.
pub fn classify_ckt(k: &KtParams<Rational>, tol: &Tolerances) -> Result<ClassificationReport> {
    let identity = Frame::identity();
    if is_constant(k) {
        return Ok(ClassificationReport {
            web: WebClass::Cartesian,
            aligning_isometry: identity,
            aligned: Aligned::Exact(k.clone()),
            symmetry_basis: symmetry_basis(k),
            invariant_trace: Vec::new(),
        });
    }
    let basis = symmetry_basis(k);
    if basis.is_empty() {
        let full = invariants::full_invariants(k);
        let xi = invariants::xi_invariants(&full);
        let z = |i: usize| xi.get(i).is_zero();
        let web = if z(0) && z(1) {
            WebClass::Paraboloidal
        } else if z(2) {
            WebClass::Ellipsoidal
        } else if z(3) && z(4) && z(5) {
            WebClass::Conical
        } else {
            WebClass::Ellipsoidal
        };
        return Ok(ClassificationReport {
            web,
            aligning_isometry: identity,
            aligned: Aligned::Exact(k.clone()),
            symmetry_basis: basis,
            invariant_trace: vec![TraceEntry::exact("full", full), TraceEntry::exact("xi", xi)],
        });
    }

    let classes: Vec<KvClass> = basis.iter().map(classify_kv).collect::<Result<_>>()?;
    let mut trace: Vec<TraceEntry> = Vec::new();
    if let Some(i) = classes.iter().position(|c| matches!(c, KvClass::Helicoidal { .. })) {
        trace.push(TraceEntry::exact("kv", invariants::kv_invariants(&basis[i])));
        let frame = canonicalize_kv(&basis[i])?;
        let aligned = frame.apply(k);
        return Ok(ClassificationReport {
            web: WebClass::CircularCylindrical,
            aligning_isometry: frame,
            aligned,
            symmetry_basis: basis,
            invariant_trace: trace,
        });
    }
    let translational = classes.contains(&KvClass::Translational);
    let wanted = if translational { KvClass::Translational } else { KvClass::Rotational };
    // Prefer a member whose alignment stays exact.
    let candidates: Vec<usize> = (0..basis.len()).filter(|&i| classes[i] == wanted).collect();
    let frames: Vec<Frame> = candidates.iter().map(|&i| canonicalize_kv(&basis[i])).collect::<Result<_>>()?;
    let pick = frames.iter().position(Frame::is_exact).unwrap_or(0);
    let member = &basis[candidates[pick]];
    let frame = frames[pick].clone();
    trace.push(TraceEntry::exact("kv", invariants::kv_invariants(member)));
    let aligned = frame.apply(k);

    let web = match &aligned {
        Aligned::Exact(ka) => {
            let ka = ka.trace_free();
            let residual = if translational {
                invariants::translational_residuals(&ka)
            } else {
                invariants::rotational_residuals(&ka)
            };
            if residual.iter().any(|r| !r.is_zero()) {
                return Err(normal_form_failure(translational, &ka.to_f64()));
            }
            if translational {
                let d = invariants::translational_invariants(&ka)?;
                let web = table3(d.get(0).is_zero(), d.get(1).is_zero());
                trace.push(TraceEntry::exact("translational", d));
                web
            } else {
                let d = invariants::rotational_invariants(&ka)?;
                let web = table4(d.get(0).is_zero(), d.get(1).is_zero(), d.get(1).is_positive());
                trace.push(TraceEntry::exact("rotational", d));
                web
            }
        }
        Aligned::Float(ka) => {
            let ka = ka.trace_free();
            let scale = ka.max_abs();
            let small = |v: f64, deg: i32| v.abs() <= tol.class * scale.powi(deg);
            let residual = if translational {
                invariants::translational_residuals(&ka)
            } else {
                invariants::rotational_residuals(&ka)
            };
            if residual.iter().any(|r| r.abs() > tol.canon * scale) {
                return Err(normal_form_failure(translational, &ka));
            }
            let named = |v: &[f64]| v.iter().enumerate().map(|(i, x)| (format!("Delta{}", i + 1), *x)).collect();
            if translational {
                let d = invariants::translational_values(&ka);
                trace.push(TraceEntry { stage: "translational".into(), values: TraceValues::Float(named(&d)) });
                table3(small(d[0], 1), small(d[1], 4))
            } else {
                let d = invariants::rotational_values(&ka);
                trace.push(TraceEntry { stage: "rotational".into(), values: TraceValues::Float(named(&d)) });
                table4(small(d[0], 1), small(d[1], 2), d[1] > 0.0)
            }
        }
    };
    Ok(ClassificationReport { web, aligning_isometry: frame, aligned, symmetry_basis: basis, invariant_trace: trace })
}

fn normal_form_failure(translational: bool, ka: &KtParams<f64>) -> Error {
    let form = if translational { "translational" } else { "rotational" };
    Error::consistency(format!("aligned tensor is not in the {form} normal form: {}", ka.to_json()))
}

fn table3(d1_zero: bool, d2_zero: bool) -> WebClass {
    match (d1_zero, d2_zero) {
        (true, true) => WebClass::Cartesian,
        (false, true) => WebClass::CircularCylindrical,
        (true, false) => WebClass::ParabolicCylindrical,
        (false, false) => WebClass::EllipticHyperbolic,
    }
}

fn table4(d1_zero: bool, d2_zero: bool, d2_positive: bool) -> WebClass {
    match (d1_zero, d2_zero) {
        (true, true) => WebClass::CircularCylindrical,
        (false, true) => WebClass::Spherical,
        (false, false) if d2_positive => WebClass::ProlateSpheroidal,
        (false, false) => WebClass::OblateSpheroidal,
        (true, false) => WebClass::Parabolic,
    }
}

/// `A`, `C` of a Killing vector after `frame`, as floats.
pub fn aligned_kv(v: &KvParams<Rational>, frame: &Frame) -> KvParams<f64> {
    match frame {
        Frame::Exact(h) => {
            let w = apply_isometry_kv(v, h);
            KvParams { a: w.a.map(|x| rational::to_f64(&x)), c: w.c.map(|x| rational::to_f64(&x)) }
        }
        Frame::Float(h) => {
            let vf =
                KvParams { a: v.a.clone().map(|x| rational::to_f64(&x)), c: v.c.clone().map(|x| rational::to_f64(&x)) };
            apply_isometry_kv(&vf, h)
        }
    }
}
