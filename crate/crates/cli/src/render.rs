//! Plain-text renderings of the JSON reports.

use std::fmt::Write;

use serde_json::{json, Value};

use killingweb::canonical::{family_parameters, SeparableChart};
use killingweb::classify::{ClassificationReport, WebClass};
use killingweb::exactmath::mat3::{Mat3, Vec3};
use killingweb::pipeline::SeparabilityReport;

fn vec3(v: &Vec3<f64>) -> String {
    format!("({:.6}, {:.6}, {:.6})", v[0], v[1], v[2])
}

fn mat3(m: &Mat3<f64>, indent: &str) -> String {
    m.iter().map(|r| format!("{indent}{}\n", vec3(r))).collect()
}

fn essential(chart: &SeparableChart) -> String {
    let e = &chart.essential;
    let parts: Vec<String> =
        [("a", e.a), ("b", e.b), ("c", e.c)].iter().filter_map(|(k, v)| v.map(|v| format!("{k} = {v:.9}"))).collect();
    if parts.is_empty() {
        "none".to_string()
    } else {
        parts.join(", ")
    }
}

pub fn chart(chart: &SeparableChart) -> String {
    let c = chart.web.coordinates();
    let mut s = String::new();
    writeln!(s, "web: {} ({}, {}, {})", chart.web, c[0], c[1], c[2]).unwrap();
    writeln!(s, "essential: {}", essential(chart)).unwrap();
    writeln!(s, "lambda:").unwrap();
    s += &mat3(chart.frame.lambda(), "  ");
    writeln!(s, "delta: {}", vec3(chart.frame.delta())).unwrap();
    s
}

pub fn classification(r: &ClassificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "web: {}", r.web).unwrap();
    let f = r.aligning_isometry.to_f64();
    writeln!(s, "aligning isometry ({}):", if r.aligning_isometry.is_exact() { "exact" } else { "floating" }).unwrap();
    s += &mat3(f.lambda(), "  ");
    writeln!(s, "  delta {}", vec3(f.delta())).unwrap();
    writeln!(s, "symmetry basis: {} Killing vector(s)", r.symmetry_basis.len()).unwrap();
    for e in &r.invariant_trace {
        writeln!(s, "  {}", e.to_json()).unwrap();
    }
    s
}

pub fn invariants(v: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(groups) = v {
        for (g, vals) in groups {
            writeln!(s, "{g}:").unwrap();
            if let Value::Object(m) = vals {
                for (k, x) in m {
                    writeln!(s, "  {k} = {}", x.as_str().unwrap_or(&x.to_string())).unwrap();
                }
            }
        }
    }
    s
}

pub fn separability(r: &SeparabilityReport) -> String {
    let mut s = String::new();
    writeln!(s, "potential: {}", r.potential).unwrap();
    let sp = &r.compatible_space;
    let free: Vec<&str> = sp.free_params.iter().map(|&j| killingweb::killing::PARAM_NAMES[j]).collect();
    writeln!(s, "compatible space: dimension {} (free {})", sp.dimension(), free.join(", ")).unwrap();
    writeln!(s, "combinations tried: {}", r.combinations_tried).unwrap();
    writeln!(s, "characteristic Killing tensors: {}", r.ckts.len()).unwrap();
    for d in &r.ckts {
        let coeffs: Vec<String> = d.coefficients.iter().map(|c| c.to_string()).collect();
        writeln!(
            s,
            "  {:<22} {:<12} [{}]  essential: {}  delta {}",
            d.report.web.label(),
            d.source.label(),
            coeffs.join(", "),
            essential(&d.chart),
            vec3(d.chart.frame.delta())
        )
        .unwrap();
    }
    let webs: Vec<&str> = r.distinct_webs.iter().map(|w| w.label()).collect();
    writeln!(s, "distinct webs ({}): {}", webs.len(), webs.join(", ")).unwrap();
    s
}

pub fn atlas_json() -> Value {
    let webs: Vec<Value> = WebClass::ALL
        .iter()
        .map(|w| {
            json!({
                "web": w.label(),
                "group": w.group(),
                "coordinates": w.coordinates(),
                "canonical_parameters": family_parameters(*w),
                "signature": w.signature(),
            })
        })
        .collect();
    json!({ "webs": webs })
}

pub fn atlas() -> String {
    let mut s = String::new();
    for group in ["translational", "rotational", "asymmetric"] {
        writeln!(s, "{group} webs").unwrap();
        for w in WebClass::ALL.iter().filter(|w| w.group() == group) {
            let c = w.coordinates();
            writeln!(s, "  {:<22} ({}, {}, {})  {}", w.label(), c[0], c[1], c[2], w.signature()).unwrap();
        }
    }
    s
}
