//! Multivariate polynomial GCD by recursive primitive pseudo-remainder sequences.

use super::poly::Poly;

/// Greatest common divisor, normalized to leading coefficient one.
///
/// The gcd of two zero polynomials is zero.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert!(a.vars() == b.vars(), "polynomial variable lists differ");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.vars());
    }
    if a.div_exact(b).is_some() {
        return b.monic();
    }
    if b.div_exact(a).is_some() {
        return a.monic();
    }
    gcd_rec(a, b).monic()
}

fn main_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.vars().len()).find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.vars());
    }
    let v = match main_var(a, b) {
        Some(v) => v,
        None => return Poly::one(a.vars()),
    };
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    if ua.len() == 1 {
        // a is free of v, so the gcd divides the v-content of b.
        return gcd_rec(a, &content_of(&ub));
    }
    if ub.len() == 1 {
        return gcd_rec(b, &content_of(&ua));
    }
    let ca = content_of(&ua);
    let cb = content_of(&ub);
    let c = gcd_rec(&ca, &cb);
    let mut p = primitive_part(&ua, &ca);
    let mut q = primitive_part(&ub, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            q = vec![Poly::one(a.vars())];
            break;
        }
        let cr = content_of(&r);
        p = q;
        q = primitive_part(&r, &cr);
    }
    let g = Poly::from_univariate(a.vars(), v, &q);
    (&c * &g).primitive()
}

fn content_of(u: &[Poly]) -> Poly {
    let mut g = Poly::zero(u[0].vars());
    for c in u {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.clone() } else { gcd_rec(&g, c) };
        if g.is_constant() {
            return Poly::one(c.vars());
        }
    }
    g.primitive()
}

fn primitive_part(u: &[Poly], content: &Poly) -> Vec<Poly> {
    u.iter().map(|c| c.div_exact(content).expect("content divides every coefficient")).collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients;
/// the result has trailing zero coefficients removed (empty means zero).
fn prem(p: &[Poly], q: &[Poly]) -> Vec<Poly> {
    let n = q.len() - 1;
    let lq = &q[n];
    let mut r: Vec<Poly> = p.to_vec();
    trim(&mut r);
    while r.len() > n {
        let m = r.len() - 1;
        let lr = r[m].clone();
        let shift = m - n;
        let mut next: Vec<Poly> = r.iter().map(|c| c * lq).collect();
        for (k, qc) in q.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(qc * &lr);
        }
        next.pop();
        trim(&mut next);
        r = next;
        // Keep coefficient growth in check by removing the rational content.
        if let Some(first) = r.iter().find(|c| !c.is_zero()) {
            let mut ct = first.content();
            for c in r.iter().filter(|c| !c.is_zero()) {
                ct = rat_gcd(&ct, &c.content());
            }
            let inv = ct.recip();
            for c in r.iter_mut() {
                *c = c.scale(&inv);
            }
        }
    }
    r
}

fn rat_gcd(a: &super::Rational, b: &super::Rational) -> super::Rational {
    use num_integer::Integer;
    super::Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

fn trim(r: &mut Vec<Poly>) {
    while r.last().is_some_and(Poly::is_zero) {
        r.pop();
    }
}
