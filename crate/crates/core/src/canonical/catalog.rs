//! The eleven canonical characteristic Killing tensors and their parameter
//! constraints.

use num_traits::{Signed, Zero};

use crate::classify::WebClass;
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::killing::{KtParams, PARAM_NAMES};

/// Source of a canonical parameter: a family parameter or its negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Src {
    P(&'static str),
    Neg(&'static str),
}

use Src::{Neg, P};

/// Nonzero parameters of each canonical tensor. Parameters not listed vanish.
pub fn assignment(web: WebClass) -> &'static [(&'static str, Src)] {
    match web {
        WebClass::Cartesian => &[("a1", P("a1")), ("a2", P("a2")), ("a3", P("a3"))],
        WebClass::CircularCylindrical => &[("a1", P("a1")), ("a2", P("a1")), ("a3", P("a3")), ("c3", P("c3"))],
        WebClass::ParabolicCylindrical => &[("a1", P("a1")), ("a2", P("a1")), ("a3", P("a3")), ("b23", P("b23"))],
        WebClass::EllipticHyperbolic => &[("a1", P("a1")), ("a2", P("a2")), ("a3", P("a3")), ("c3", P("c3"))],
        WebClass::Spherical => {
            &[("a1", P("a1")), ("a2", P("a1")), ("a3", P("a1")), ("c1", P("c2")), ("c2", P("c2")), ("c3", P("c3"))]
        }
        WebClass::ProlateSpheroidal | WebClass::OblateSpheroidal => {
            &[("a1", P("a1")), ("a2", P("a1")), ("a3", P("a3")), ("c1", P("c2")), ("c2", P("c2")), ("c3", P("c3"))]
        }
        WebClass::Parabolic => &[
            ("a1", P("a1")),
            ("a2", P("a1")),
            ("a3", P("a1")),
            ("b12", P("b12")),
            ("b21", Neg("b12")),
            ("c3", P("c3")),
        ],
        WebClass::Conical => {
            &[("a1", P("a1")), ("a2", P("a1")), ("a3", P("a1")), ("c1", P("c1")), ("c2", P("c2")), ("c3", P("c3"))]
        }
        WebClass::Paraboloidal => {
            &[("a1", P("a1")), ("a2", P("a2")), ("a3", P("a3")), ("b12", P("b12")), ("b21", P("b21")), ("c3", P("c3"))]
        }
        WebClass::Ellipsoidal => {
            &[("a1", P("a1")), ("a2", P("a2")), ("a3", P("a3")), ("c1", P("c1")), ("c2", P("c2")), ("c3", P("c3"))]
        }
    }
}

/// Parameter names each canonical family takes, in order.
pub fn family_parameters(web: WebClass) -> Vec<&'static str> {
    let mut out = Vec::new();
    for (name, src) in assignment(web) {
        if *src == P(name) {
            out.push(*name);
        }
    }
    out
}

/// Linear functionals on the 21 trace-free parameters that vanish exactly on
/// the family, as `(index, coefficient)` lists.
pub fn family_functionals(web: WebClass) -> Vec<Vec<(usize, f64)>> {
    let idx = |n: &str| PARAM_NAMES.iter().position(|m| *m == n).expect("parameter name");
    let table = assignment(web);
    PARAM_NAMES
        .iter()
        .enumerate()
        .filter_map(|(p, name)| match table.iter().find(|(n, _)| n == name).map(|(_, s)| *s) {
            None => Some(vec![(p, 1.0)]),
            Some(P(q)) if q == *name => None,
            Some(P(q)) => Some(vec![(p, 1.0), (idx(q), -1.0)]),
            Some(Neg(q)) => Some(vec![(p, 1.0), (idx(q), 1.0)]),
        })
        .collect()
}

/// `b12 [b12 b21 + c3 (a2 − a3)] + b21 [b12 b21 + c3 (a1 − a3)]`.
pub fn paraboloidal_constraint<S>(a: [S; 3], b12: S, b21: S, c3: S) -> S
where
    S: Clone + std::ops::Add<Output = S> + std::ops::Sub<Output = S> + std::ops::Mul<Output = S>,
{
    let [a1, a2, a3] = a;
    let bb = b12.clone() * b21.clone();
    b12 * (bb.clone() + c3.clone() * (a2 - a3.clone())) + b21 * (bb + c3 * (a1 - a3))
}

/// `(a1 − a2) c1 c2 + (a2 − a3) c2 c3 + (a3 − a1) c3 c1`.
pub fn ellipsoidal_constraint<S>(a: [S; 3], c: [S; 3]) -> S
where
    S: Clone + std::ops::Add<Output = S> + std::ops::Sub<Output = S> + std::ops::Mul<Output = S>,
{
    let [a1, a2, a3] = a;
    let [c1, c2, c3] = c;
    (a1.clone() - a2.clone()) * c1.clone() * c2.clone() + (a2 - a3.clone()) * c2 * c3.clone() + (a3 - a1) * c3 * c1
}

/// The canonical tensor of `web` with the given family parameters
/// (see [`family_parameters`]).
pub fn canonical_web_tensor(web: WebClass, values: &[Rational]) -> Result<KtParams<Rational>> {
    let names = family_parameters(web);
    if values.len() != names.len() {
        return Err(Error::usage(format!("{web} takes {} parameters ({})", names.len(), names.join(", "))));
    }
    let v = |n: &str| values[names.iter().position(|m| *m == n).expect("family parameter")].clone();
    let violated = |what: &str| Err(Error::domain(format!("{web} parameters violate {what}")));
    let nonzero = |n: &str| !v(n).is_zero();
    match web {
        WebClass::CircularCylindrical if !nonzero("c3") => return violated("c3 != 0"),
        WebClass::ParabolicCylindrical if !nonzero("b23") => return violated("b23 != 0"),
        WebClass::EllipticHyperbolic if !nonzero("c3") || !((v("a1") - v("a2")) / v("c3")).is_positive() => {
            return violated("(a1 - a2)/c3 > 0")
        }
        WebClass::Spherical if !nonzero("c2") => return violated("c2 != 0"),
        WebClass::ProlateSpheroidal if !nonzero("c2") || !((v("a3") - v("a1")) / v("c2")).is_positive() => {
            return violated("(a3 - a1)/c2 > 0")
        }
        WebClass::OblateSpheroidal if !nonzero("c2") || !((v("a3") - v("a1")) / v("c2")).is_negative() => {
            return violated("(a3 - a1)/c2 < 0")
        }
        WebClass::Parabolic if !nonzero("b12") => return violated("b12 != 0"),
        WebClass::Paraboloidal
            if !paraboloidal_constraint([v("a1"), v("a2"), v("a3")], v("b12"), v("b21"), v("c3")).is_zero() =>
        {
            return violated("the paraboloidal constraint")
        }
        WebClass::Ellipsoidal
            if !ellipsoidal_constraint([v("a1"), v("a2"), v("a3")], [v("c1"), v("c2"), v("c3")]).is_zero() =>
        {
            return violated("the ellipsoidal constraint")
        }
        _ => {}
    }
    let pairs: Vec<(&str, Rational)> = assignment(web)
        .iter()
        .map(|(n, s)| match s {
            P(q) => (*n, v(q)),
            Neg(q) => (*n, -v(q)),
        })
        .collect();
    KtParams::from_named(&pairs)
}
