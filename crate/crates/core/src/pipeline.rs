//! From a potential to its separable webs: the compatible Killing tensors,
//! the characteristic ones among them and a bounded search over integer
//! combinations.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::canonical::charts::relative_pushforward_residual;
use crate::canonical::{canonical_chart_of_ckt, family_residual, to_canonical, SeparableChart};
use crate::classify::{classify_kv, Aligned, ClassificationReport, KvClass, Tolerances, WebClass};
use crate::error::{Error, Result};
use crate::exactmath::mat3::{Mat3, Vec3};
use crate::exactmath::matrix::RatMatrix;
use crate::exactmath::poly::{Exps, Poly, VarSet};
use crate::exactmath::ratfun::RatFun;
use crate::exactmath::Rational;
use crate::killing::params::{param_index, PARAM_NAMES};
use crate::killing::{
    apply_isometry, has_distinct_eigenvalues, has_normal_eigenvectors, kt_components, KtParams, KvParams,
};
use num_traits::Zero;

/// Parameter columns of the compatibility system; `b33` is dropped since
/// `b11 = b22 = b33` is the zero tensor.
pub fn space_columns() -> Vec<usize> {
    let b33 = param_index("b33").expect("b33 is a parameter");
    (0..21).filter(|&j| j != b33).collect()
}

/// Killing tensors compatible with a potential.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatibleSpace {
    /// One tensor per free parameter, with that parameter equal to one.
    pub basis: Vec<KtParams<Rational>>,
    /// Index into `PARAM_NAMES` of the free parameter of each basis tensor.
    pub free_params: Vec<usize>,
    pub metric_index: Option<usize>,
}

impl CompatibleSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension(),
            "metric_index": self.metric_index,
            "free_parameters": self.free_params.iter().map(|&j| PARAM_NAMES[j]).collect::<Vec<_>>(),
            "basis": self.basis.iter().map(|k| k.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// `(V, ∇V numerators, D)`: `∂_k V = G_k / D²` with `V = N / D`.
struct Gradient {
    g: [Poly; 3],
    d: Poly,
}

fn gradient(v: &RatFun) -> Result<Gradient> {
    let xyz = VarSet::xyz();
    let (n, d) = if v.vars() == &xyz {
        (v.num().clone(), v.den().clone())
    } else {
        (v.num().embed(&xyz)?, v.den().embed(&xyz)?)
    };
    if d.is_zero() {
        return Err(Error::domain("potential has a zero denominator"));
    }
    let g = std::array::from_fn(|k| {
        n.diff(k).try_mul(&d).and_then(|a| a.try_sub(&n.try_mul(&d.diff(k))?)).expect("same variables")
    });
    Ok(Gradient { g, d })
}

/// Numerators of the three components of `d(K dV)`, over the common
/// denominator `D³`.
fn curl_numerators(grad: &Gradient, k: &Mat3<Poly>) -> [Poly; 3] {
    let mul = |a: &Poly, b: &Poly| a.try_mul(b).expect("same variables");
    let p: Vec<Poly> = (0..3)
        .map(|i| {
            (0..3).fold(Poly::zero(&VarSet::xyz()), |acc, j| {
                acc.try_add(&mul(&k[i][j], &grad.g[j])).expect("same variables")
            })
        })
        .collect();
    let d = &grad.d;
    let two = Rational::from_integer(2.into());
    // ∂_k ω_j − ∂_j ω_k with ω_j = P_j / D²
    let comp = |j: usize, k: usize| {
        let lead = mul(&p[j].diff(k).try_sub(&p[k].diff(j)).expect("same variables"), d);
        let tail = mul(&p[j], &d.diff(k)).try_sub(&mul(&p[k], &d.diff(j))).expect("same variables").scale(&two);
        lead.try_sub(&tail).expect("same variables")
    };
    [comp(1, 2), comp(2, 0), comp(0, 1)]
}

fn unit_tensor(j: usize) -> KtParams<Rational> {
    let mut v: [Rational; 21] = std::array::from_fn(|_| Rational::from_integer(0.into()));
    v[j] = Rational::from_integer(1.into());
    KtParams::from_vec(&v)
}

/// Exact test of `d(K dV) = 0`.
pub fn is_compatible(v: &RatFun, k: &KtParams<Rational>) -> Result<bool> {
    let grad = gradient(v)?;
    Ok(curl_numerators(&grad, &kt_components(k)).iter().all(Poly::is_zero))
}

fn is_metric_multiple(k: &KtParams<Rational>) -> bool {
    let c = kt_components(k);
    let d = &c[0][0];
    d.is_constant()
        && !d.is_zero()
        && c[1][1] == *d
        && c[2][2] == *d
        && [c[0][1].clone(), c[0][2].clone(), c[1][2].clone()].iter().all(Poly::is_zero)
}

/// Keeps the row space of `rows` reduced to at most `cols` rows.
fn reduce(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let (m, pivots) = RatMatrix::from_rows(rows).rref();
    (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
}

/// Exact nullspace of the coefficient system of `d(K dV) = 0`.
///
/// Columns are eliminated in reverse parameter order, so the free parameters
/// are the earliest ones in `PARAM_NAMES` and the basis is listed in that
/// order.
pub fn compatibility_space(v: &RatFun) -> Result<CompatibleSpace> {
    let grad = gradient(v)?;
    let cols = space_columns();
    let n = cols.len();
    // per column, the curl numerators of its unit tensor
    let curls: Vec<[Poly; 3]> =
        cols.par_iter().map(|&j| curl_numerators(&grad, &kt_components(&unit_tensor(j)))).collect();
    let mut system: BTreeMap<(usize, Exps), Vec<Rational>> = BTreeMap::new();
    for (c, curl) in curls.iter().enumerate() {
        for (comp, poly) in curl.iter().enumerate() {
            for (e, coeff) in poly.terms() {
                let row = system.entry((comp, e.clone())).or_insert_with(|| vec![Rational::from_integer(0.into()); n]);
                // reversed column order
                row[n - 1 - c] = coeff.clone();
            }
        }
    }
    let mut rows = Vec::new();
    for row in system.into_values() {
        rows.push(row);
        if rows.len() >= 8 * n {
            rows = reduce(rows);
        }
    }
    let rows = if rows.is_empty() { rows } else { reduce(rows) };
    let mut m = RatMatrix::zeros(0, n);
    for r in rows {
        m.push_row(r);
    }
    let mut kernel: Vec<(usize, KtParams<Rational>)> = m
        .nullspace()
        .into_iter()
        .map(|x| {
            let free = (0..n).rev().find(|&c| x[c] == Rational::from_integer(1.into())).map(|c| cols[n - 1 - c]);
            let mut full: [Rational; 21] = std::array::from_fn(|_| Rational::from_integer(0.into()));
            for (c, val) in x.into_iter().enumerate() {
                full[cols[n - 1 - c]] = val;
            }
            (free.expect("kernel vector has a free column"), KtParams::from_vec(&full))
        })
        .collect();
    kernel.sort_by_key(|(f, _)| *f);
    let metric_index = kernel.iter().position(|(_, k)| is_metric_multiple(k));
    Ok(CompatibleSpace {
        free_params: kernel.iter().map(|(f, _)| *f).collect(),
        basis: kernel.into_iter().map(|(_, k)| k).collect(),
        metric_index,
    })
}

/// Basis tensors with normal eigenvectors and distinct eigenvalues.
pub fn extract_ckts(space: &CompatibleSpace) -> Vec<KtParams<Rational>> {
    space.basis.iter().filter(|k| is_ckt(k)).cloned().collect()
}

fn is_ckt(k: &KtParams<Rational>) -> bool {
    has_distinct_eigenvalues(k) && has_normal_eigenvectors(k)
}

/// Integer coefficient range `{-range..range}` for combinations of the
/// non-metric basis tensors, and a cap on the number of candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CombinationPolicy {
    pub range: u32,
    pub max_candidates: usize,
}

impl CombinationPolicy {
    pub fn with_range(range: u32) -> Self {
        CombinationPolicy { range, ..Self::default() }
    }
}

impl Default for CombinationPolicy {
    fn default() -> Self {
        CombinationPolicy { range: 2, max_candidates: 100_000 }
    }
}

/// Upper bound on the candidate count: `((2r + 1)^n − 1) / 2`, saturating,
/// for `n` non-metric generators.
pub fn candidate_bound(n: usize, policy: CombinationPolicy) -> u128 {
    let side = 2 * policy.range as u128 + 1;
    side.checked_pow(n as u32).map_or(u128::MAX, |t| (t - 1) / 2)
}

/// Coefficient vectors over `dimension` generators, the metric coefficient
/// fixed at zero. Only primitive vectors with a positive leading entry and at
/// least two nonzero entries are produced, ordered by `(max |ℓ|, Σ |ℓ|, ℓ)`.
///
/// Fails with a usage error when `candidate_bound` exceeds the policy cap.
pub fn combination_candidates(
    dimension: usize,
    metric_index: Option<usize>,
    policy: CombinationPolicy,
) -> Result<Vec<Vec<i64>>> {
    let free: Vec<usize> = (0..dimension).filter(|&i| Some(i) != metric_index).collect();
    let bound = candidate_bound(free.len(), policy);
    if policy.range > 0 && bound > policy.max_candidates as u128 {
        return Err(Error::usage(format!(
            "combination range {} over {} tensors gives up to {bound} candidates, above the limit of {}",
            policy.range,
            free.len(),
            policy.max_candidates
        )));
    }
    let r = policy.range as i64;
    if r == 0 || free.len() < 2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut l = vec![-r; free.len()];
    loop {
        let support = l.iter().filter(|&&x| x != 0).count();
        let lead_positive = l.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        let g = l.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
        if support >= 2 && lead_positive && g == 1 {
            let mut full = vec![0i64; dimension];
            for (&i, &x) in free.iter().zip(&l) {
                full[i] = x;
            }
            out.push(full);
        }
        // odometer
        let mut i = l.len();
        loop {
            if i == 0 {
                out.sort_by_key(|v| {
                    (v.iter().map(|x| x.abs()).max(), v.iter().map(|x| x.abs()).sum::<i64>(), v.clone())
                });
                return Ok(out);
            }
            i -= 1;
            if l[i] < r {
                l[i] += 1;
                break;
            }
            l[i] = -r;
        }
    }
}

pub fn combine(basis: &[KtParams<Rational>], coefficients: &[i64]) -> KtParams<Rational> {
    coefficients.iter().zip(basis).fold(KtParams::zero(), |acc, (&l, k)| {
        if l == 0 {
            acc
        } else {
            acc.add(&k.scale(&Rational::from_integer(l.into())))
        }
    })
}

/// The Killing tensor `v ⊙ v`.
pub fn symmetric_square(v: &KvParams<Rational>) -> KtParams<Rational> {
    let outer = |p: &Vec3<Rational>, q: &Vec3<Rational>| -> Mat3<Rational> {
        std::array::from_fn(|i| std::array::from_fn(|j| &p[i] * &q[j]))
    };
    KtParams { a: outer(&v.a, &v.a), b: outer(&v.a, &v.c), c: outer(&v.c, &v.c) }
}

/// Where a discovered tensor came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// A compatible-space basis tensor.
    Basis,
    /// An integer combination of basis tensors.
    Combination,
    /// A combination of `g`, `t ⊙ t` and `w ⊙ w` for a rotation `w` about
    /// the axis of an earlier discovery, `t` the translation along it.
    AxisFamily,
}

impl Source {
    pub fn label(self) -> &'static str {
        match self {
            Source::Basis => "basis",
            Source::Combination => "combination",
            Source::AxisFamily => "axis_family",
        }
    }
}

/// A characteristic Killing tensor with its classification and chart.
#[derive(Clone, Debug)]
pub struct Discovery {
    pub source: Source,
    /// Coefficients over the compatible-space basis.
    pub coefficients: Vec<Rational>,
    pub tensor: KtParams<Rational>,
    pub report: ClassificationReport,
    pub chart: SeparableChart,
    /// `relative_pushforward_residual` of `tensor` in `chart`.
    pub chart_residual: f64,
}

impl Discovery {
    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.label(),
            "coefficients": self.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "web": self.report.web.label(),
            "tensor": self.tensor.to_json(),
            "classification": self.report.to_json(),
            "chart": self.chart.to_json(),
            "chart_residual": self.chart_residual,
        })
    }
}

/// Interior points used for chart verification.
pub const CHART_SAMPLES: usize = 20;
/// Bound on `relative_pushforward_residual` for a verified chart.
pub const CHART_TOLERANCE: f64 = 1e-8;
/// Bound on the family residual for two discoveries to share a frame.
const SAME_FRAME_TOLERANCE: f64 = 1e-6;
/// Candidates classified between deduplication rounds.
const CHUNK: usize = 64;

#[derive(Clone, Debug)]
pub struct SeparabilityReport {
    pub potential: String,
    pub compatible_space: CompatibleSpace,
    /// Distinct webs in discovery order: basis tensors, combinations, axis
    /// families.
    pub ckts: Vec<Discovery>,
    pub combinations_tried: usize,
    pub distinct_webs: BTreeSet<WebClass>,
}

impl SeparabilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "potential": self.potential,
            "compatible_space": self.compatible_space.to_json(),
            "ckts": self.ckts.iter().map(Discovery::to_json).collect::<Vec<_>>(),
            "combinations_tried": self.combinations_tried,
            "distinct_webs": self.distinct_webs.iter().map(|w| w.label()).collect::<Vec<_>>(),
        })
    }
}

/// Parameter vector with the null direction `b11 = b22 = b33` removed.
fn reduced(k: &KtParams<Rational>) -> Vec<Rational> {
    let mut v = k.to_vec().to_vec();
    let t = v[8].clone();
    for x in &mut v[6..9] {
        *x -= &t;
    }
    v
}

/// Coordinates of `k` over the space basis.
pub fn coordinates(space: &CompatibleSpace, k: &KtParams<Rational>) -> Result<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = space.basis.iter().map(reduced).collect();
    let target = reduced(k);
    let m = RatMatrix::from_rows((0..21).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect());
    m.solve(&target).ok_or_else(|| Error::consistency("tensor is not in the compatible space"))
}

/// Classifies and charts `k`; `None` when it is not characteristic.
pub fn discover(
    k: KtParams<Rational>,
    coefficients: Vec<Rational>,
    source: Source,
    tol: &Tolerances,
) -> Result<Option<Discovery>> {
    if !is_ckt(&k) {
        return Ok(None);
    }
    let (report, chart) = canonical_chart_of_ckt(&k, tol)?;
    let chart_residual = relative_pushforward_residual(&k.to_f64(), &chart, CHART_SAMPLES)?;
    if chart_residual > CHART_TOLERANCE {
        return Err(Error::consistency(format!(
            "{} chart leaves off-diagonal components of relative size {chart_residual:.3e}",
            report.web
        )));
    }
    Ok(Some(Discovery { source, coefficients, tensor: k, report, chart, chart_residual }))
}

/// Same label, and `d`'s tensor lies in the canonical family when expressed
/// in `s`'s chart frame. Essential parameters may differ, so a one-parameter
/// family of confocal webs counts once.
pub fn same_frame(d: &Discovery, s: &Discovery) -> bool {
    s.report.web == d.report.web
        && family_residual(d.report.web, &apply_isometry(&d.tensor.to_f64(), &s.chart.frame)) < SAME_FRAME_TOLERANCE
}

/// `k` has a valid canonical form of `s`'s web in `s`'s frame, so it would
/// be deduplicated against `s`.
fn represented(k: &KtParams<f64>, seen: &[Discovery], tol: &Tolerances) -> bool {
    seen.iter().any(|s| {
        let local = apply_isometry(k, &s.chart.frame);
        family_residual(s.report.web, &local) < SAME_FRAME_TOLERANCE
            && to_canonical(&Aligned::Float(local), s.report.web, tol).is_ok()
    })
}

/// Classifies `candidates` in chunks, skipping tensors already represented
/// and appending new webs to `seen`.
fn search(
    candidates: Vec<(KtParams<Rational>, Vec<Rational>)>,
    source: Source,
    seen: &mut Vec<Discovery>,
    tol: &Tolerances,
) -> Result<()> {
    for chunk in candidates.chunks(CHUNK) {
        let fresh: Vec<_> = chunk.iter().filter(|(k, _)| !represented(&k.to_f64(), seen, tol)).collect();
        let found: Vec<Option<Discovery>> =
            fresh.into_par_iter().map(|(k, c)| discover(k.clone(), c.clone(), source, tol)).collect::<Result<_>>()?;
        for d in found.into_iter().flatten() {
            if !seen.iter().any(|s| same_frame(&d, s)) {
                seen.push(d);
            }
        }
    }
    Ok(())
}

fn integer_coefficients(l: &[i64]) -> Vec<Rational> {
    l.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// New webs from integer combinations of the basis, in candidate order,
/// skipping webs already present in `seen`. Returns them with the number of
/// candidates.
pub fn combination_search(
    space: &CompatibleSpace,
    policy: CombinationPolicy,
    seen: &[Discovery],
    tol: &Tolerances,
) -> Result<(Vec<Discovery>, usize)> {
    let candidates = combination_candidates(space.dimension(), space.metric_index, policy)?;
    let tried = candidates.len();
    let candidates = candidates.into_iter().map(|l| (combine(&space.basis, &l), integer_coefficients(&l))).collect();
    let mut all = seen.to_vec();
    let start = all.len();
    search(candidates, Source::Combination, &mut all, tol)?;
    Ok((all.split_off(start), tried))
}

/// Rotations among the symmetries of `seen`, one per axis, in discovery order.
fn rotation_axes(seen: &[Discovery]) -> Vec<KvParams<Rational>> {
    let mut keys = BTreeSet::new();
    let mut out = Vec::new();
    for w in seen.iter().flat_map(|d| &d.report.symmetry_basis) {
        if !matches!(classify_kv(w), Ok(KvClass::Rotational)) {
            continue;
        }
        let v = w.to_vec();
        let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero Killing vector").clone();
        if keys.insert(v.iter().map(|x| x / &lead).collect::<Vec<_>>()) {
            out.push(w.clone());
        }
    }
    out
}

/// Webs from the compatible part of `span{g, t ⊙ t, w ⊙ w}` for every
/// rotation `w` about the axis of a web in `seen`.
pub fn axis_family_search(
    v: &RatFun,
    space: &CompatibleSpace,
    policy: CombinationPolicy,
    seen: &[Discovery],
    tol: &Tolerances,
) -> Result<(Vec<Discovery>, usize)> {
    let grad = gradient(v)?;
    let mut all = seen.to_vec();
    let start = all.len();
    let mut tried = 0;
    for w in rotation_axes(seen) {
        let t = KvParams { a: w.c.clone(), c: std::array::from_fn(|_| Rational::from_integer(0.into())) };
        let family = [KtParams::metric(), symmetric_square(&t), symmetric_square(&w)];
        let mut m = RatMatrix::zeros(0, 3);
        let curls: Vec<[Poly; 3]> = family.iter().map(|k| curl_numerators(&grad, &kt_components(k))).collect();
        let mut rows: BTreeMap<(usize, Exps), Vec<Rational>> = BTreeMap::new();
        for (j, curl) in curls.iter().enumerate() {
            for (comp, p) in curl.iter().enumerate() {
                for (e, c) in p.terms() {
                    rows.entry((comp, e.clone())).or_insert_with(|| vec![Rational::from_integer(0.into()); 3])[j] =
                        c.clone();
                }
            }
        }
        for r in rows.into_values() {
            m.push_row(r);
        }
        let basis: Vec<KtParams<Rational>> = m
            .nullspace()
            .into_iter()
            .map(|x| family.iter().zip(&x).fold(KtParams::zero(), |acc, (k, c)| acc.add(&k.scale(c))))
            .collect();
        let metric_index = basis.iter().position(is_metric_multiple);
        let mut candidates: Vec<Vec<i64>> = (0..basis.len())
            .filter(|&i| Some(i) != metric_index)
            .map(|i| {
                let mut l = vec![0; basis.len()];
                l[i] = 1;
                l
            })
            .collect();
        candidates.extend(combination_candidates(basis.len(), metric_index, policy)?);
        tried += candidates.len();
        let candidates = candidates
            .into_iter()
            .map(|l| {
                let k = combine(&basis, &l);
                let c = coordinates(space, &k)?;
                Ok((k, c))
            })
            .collect::<Result<Vec<_>>>()?;
        search(candidates, Source::AxisFamily, &mut all, tol)?;
    }
    Ok((all.split_off(start), tried))
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var("KILLINGWEB_THREADS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::usage(format!("KILLINGWEB_THREADS must be a count, got {s:?}")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| Error::usage(e.to_string()))
}

/// Compatible space, basis CKTs, combination search and axis families, each
/// discovery classified and charted. Runs on a pool sized by
/// `KILLINGWEB_THREADS` (all cores when unset or zero).
pub fn find_separable_webs(v: &RatFun, policy: CombinationPolicy, tol: &Tolerances) -> Result<SeparabilityReport> {
    thread_pool()?.install(|| {
        let space = compatibility_space(v)?;
        let n = space.dimension();
        let singles = (0..n)
            .map(|i| {
                let mut l = vec![0i64; n];
                l[i] = 1;
                (space.basis[i].clone(), integer_coefficients(&l))
            })
            .collect();
        let mut ckts = Vec::new();
        search(singles, Source::Basis, &mut ckts, tol)?;
        let (more, mut combinations_tried) = combination_search(&space, policy, &ckts, tol)?;
        ckts.extend(more);
        if policy.range > 0 {
            let (more, tried) = axis_family_search(v, &space, policy, &ckts, tol)?;
            ckts.extend(more);
            combinations_tried += tried;
        }
        let distinct_webs = ckts.iter().map(|d| d.report.web).collect();
        Ok(SeparabilityReport {
            potential: v.to_string(),
            compatible_space: space,
            ckts,
            combinations_tried,
            distinct_webs,
        })
    })
}
