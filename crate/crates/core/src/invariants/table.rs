//! The fifteen fundamental invariants as contracted tensor monomials.
//!
//! Each term is `coef · w^halves · Π factors`, where `w` is the weight of one
//! two-index (anti)symmetrization bracket and the factors are written as
//! `A`, `B`, `C` or `E` (Levi-Civita) followed by index letters. `Bij` is
//! `B[i][j]`; every index letter is summed.

use crate::exactmath::mat3;
use crate::exactmath::rational::{int, rat};
use crate::exactmath::{Rational, Ring};
use crate::killing::KtParams;

pub struct Term {
    pub coef: i64,
    pub halves: u32,
    pub factors: &'static str,
}

const fn t(coef: i64, halves: u32, factors: &'static str) -> Term {
    Term { coef, halves, factors }
}

pub static DELTA_TERMS: [&[Term]; 15] = [
    &[t(1, 0, "Bii")],
    &[t(1, 0, "Cii")],
    &[t(1, 0, "Bij Cij")],
    &[t(1, 0, "Cij Cij")],
    &[t(1, 0, "Bij Bji"), t(1, 0, "Aij Cij")],
    &[t(1, 0, "Bij Cjk Cki")],
    &[t(1, 0, "Cij Cjk Cki")],
    &[t(1, 0, "Cij Bjk Bik"), t(2, 0, "Cij Bjk Bki"), t(1, 0, "Cij Ajk Cki")],
    &[
        t(1, 0, "Eikm Ejln Bij Bkl Bmn"),
        t(-2, 1, "Bii Bjj Bkk"),
        t(2, 1, "Bij Bji Bkk"),
        t(-2, 0, "Aij Cij Bkk"),
        t(6, 0, "Bij Ajk Cki"),
    ],
    &[
        t(1, 0, "Bij Bik Ckj"),
        t(-2, 0, "Bij Bjk Cki"),
        t(-1, 0, "Bij Bij Ckk"),
        t(-1, 0, "Aij Cij Ckk"),
        t(1, 1, "Aii Cjj Ckk"),
        t(-1, 1, "Aii Cjk Ckj"),
    ],
    &[
        t(1, 0, "Eilm Ejkp Bij Bkl Cmn Cnp"),
        t(1, 0, "Bij Bij Ckl Ckl"),
        t(-1, 0, "Bij Cjk Ckl Bil"),
        t(-4, 1, "Bij Cjk Ckl Bli"),
        t(4, 1, "Bij Cjk Cll Bki"),
        t(1, 1, "Aij Cij Ckk Cll"),
        t(-1, 1, "Aij Cij Ckl Clk"),
    ],
    &[
        t(1, 0, "Aii Cjj Ckk Cll"),
        t(3, 0, "Aii Cjk Cjk Cll"),
        t(-4, 0, "Aii Cjk Ckl Clj"),
        t(-6, 0, "Aij Cij Ckl Ckl"),
        t(6, 0, "Bij Bij Ckl Ckl"),
        t(-6, 0, "Bij Cjk Bik Cll"),
        t(12, 0, "Bij Cjk Bki Cll"),
        t(-24, 0, "Bij Cjk Ckl Bli"),
        t(12, 0, "Eilm Ejkp Bij Bkl Cmn Cnp"),
    ],
    &[
        t(1, 1, "Aij Bij Ckk Cll"),
        t(-1, 1, "Aij Bij Ckl Clk"),
        t(1, 0, "Aij Bjk Ckl Cli"),
        t(-2, 1, "Aij Cij Bkk Cll"),
        t(-2, 1, "Aij Cik Bjk Cll"),
        t(1, 0, "Aii Cjk Bjk Cll"),
        t(-1, 0, "Aii Cjk Bkl Clj"),
        t(-1, 0, "Bij Bij Bkl Ckl"),
        t(-2, 0, "Bij Cjk Bki Bll"),
        t(-1, 0, "Bij Bjk Bik Cll"),
        t(1, 0, "Bij Bjk Bil Ckl"),
        t(1, 0, "Bij Bik Blj Ckl"),
    ],
    &[
        t(4, 2, "Aii Ajj Ckk Cll"),
        t(-4, 2, "Aii Ajj Ckl Clk"),
        t(-4, 2, "Aij Aji Ckk Cll"),
        t(4, 2, "Aij Aji Ckl Clk"),
        t(8, 1, "Aij Ajk Cki Cll"),
        t(-8, 1, "Aij Ajk Ckl Cil"),
        t(8, 1, "Aij Akk Cjl Cli"),
        t(-8, 1, "Aij Akk Cll Cji"),
        t(1, 0, "Aij Cij Akl Ckl"),
        t(4, 1, "Aij Cij Bkk Bll"),
        t(-4, 1, "Aij Cij Bkl Blk"),
        t(4, 0, "Cij Bjk Akl Bil"),
        t(16, 1, "Aij Cjk Bkl Bli"),
        t(-16, 1, "Aij Cjk Bll Bki"),
    ],
    &[
        t(1, 0, "Aij Cij Ckk Cll Cmm"),
        t(-3, 0, "Aij Cij Ckl Ckl Cmm"),
        t(2, 0, "Aij Cij Ckl Clm Cmk"),
        t(-6, 1, "Aij Cjk Cki Cll Cmm"),
        t(6, 1, "Aij Cjk Cki Clm Cml"),
        t(-12, 1, "Cij Bjk Ckl Bil Cmm"),
        t(12, 1, "Cij Bjk Ckl Bim Clm"),
        t(-24, 1, "Cij Bjk Bkl Cil Cmm"),
        t(24, 1, "Cij Bjk Bkl Cim Clm"),
    ],
];

/// Dense tensor with every index of dimension 3, entries in row-major order
/// of `labels`.
struct Tensor<S> {
    labels: Vec<u8>,
    data: Vec<S>,
}

fn strides(n: usize) -> impl Fn(&[usize]) -> usize {
    move |idx: &[usize]| {
        debug_assert_eq!(idx.len(), n);
        idx.iter().fold(0, |acc, &i| acc * 3 + i)
    }
}

fn load<S: Ring>(k: &KtParams<S>, eps: &[S; 27], token: &str, zero: &S) -> Tensor<S> {
    let bytes = token.as_bytes();
    let raw = &bytes[1..];
    let get = |idx: &[usize]| -> S {
        match bytes[0] {
            b'A' => k.a[idx[0]][idx[1]].clone(),
            b'B' => k.b[idx[0]][idx[1]].clone(),
            b'C' => k.c[idx[0]][idx[1]].clone(),
            b'E' => eps[idx[0] * 9 + idx[1] * 3 + idx[2]].clone(),
            other => panic!("unknown factor {}", other as char),
        }
    };
    // A label repeated inside one factor is traced there and nowhere else.
    let count = |l: u8| raw.iter().filter(|&&m| m == l).count();
    let mut open: Vec<u8> = Vec::new();
    let mut traced: Vec<u8> = Vec::new();
    for &l in raw {
        let set = if count(l) == 1 { &mut open } else { &mut traced };
        if !set.contains(&l) {
            set.push(l);
        }
    }
    let (no, nt) = (open.len(), traced.len());
    let data = (0..3usize.pow(no as u32))
        .map(|flat| {
            let mut s = zero.clone();
            for tr in 0..3usize.pow(nt as u32) {
                let digit = |l: u8| -> usize {
                    if let Some(p) = open.iter().position(|&m| m == l) {
                        flat / 3usize.pow((no - 1 - p) as u32) % 3
                    } else {
                        let p = traced.iter().position(|&m| m == l).unwrap();
                        tr / 3usize.pow((nt - 1 - p) as u32) % 3
                    }
                };
                let full: Vec<usize> = raw.iter().map(|&l| digit(l)).collect();
                s = s + get(&full);
            }
            s
        })
        .collect();
    Tensor { labels: open, data }
}

/// Product of `p` and `q`, summing over shared labels absent from `later`.
fn contract<S: Ring>(p: &Tensor<S>, q: &Tensor<S>, later: &[u8], zero: &S) -> Tensor<S> {
    let mut out_labels: Vec<u8> = Vec::new();
    let mut summed: Vec<u8> = Vec::new();
    for &l in p.labels.iter().chain(&q.labels) {
        if out_labels.contains(&l) || summed.contains(&l) {
            continue;
        }
        let shared = p.labels.contains(&l) && q.labels.contains(&l);
        if shared && !later.contains(&l) {
            summed.push(l);
        } else {
            out_labels.push(l);
        }
    }
    let all: Vec<u8> = out_labels.iter().chain(&summed).copied().collect();
    let pos = |set: &[u8]| -> Vec<usize> { set.iter().map(|l| all.iter().position(|m| m == l).unwrap()).collect() };
    let (pp, qp) = (pos(&p.labels), pos(&q.labels));
    let (sp, sq) = (strides(p.labels.len()), strides(q.labels.len()));
    let no = out_labels.len();
    let ns = summed.len();
    let mut data = vec![zero.clone(); 3usize.pow(no as u32)];
    let mut idx = vec![0usize; no + ns];
    for (o, slot) in data.iter_mut().enumerate() {
        let mut f = o;
        for d in (0..no).rev() {
            idx[d] = f % 3;
            f /= 3;
        }
        for s in 0..3usize.pow(ns as u32) {
            let mut g = s;
            for d in (0..ns).rev() {
                idx[no + d] = g % 3;
                g /= 3;
            }
            let pi: Vec<usize> = pp.iter().map(|&d| idx[d]).collect();
            let a = &p.data[sp(&pi)];
            if a.is_zero_elem() {
                continue;
            }
            let qi: Vec<usize> = qp.iter().map(|&d| idx[d]).collect();
            let b = &q.data[sq(&qi)];
            if b.is_zero_elem() {
                continue;
            }
            *slot = slot.clone() + a.clone() * b.clone();
        }
    }
    Tensor { labels: out_labels, data }
}

fn eps_tensor<S: Ring>(like: &S) -> [S; 27] {
    std::array::from_fn(|f| like.constant_like(&int(mat3::eps(f / 9, (f / 3) % 3, f % 3) as i64)))
}

/// Value of one contracted monomial.
pub fn eval_factors<S: Ring>(k: &KtParams<S>, factors: &str) -> S {
    let like = &k.a[0][0];
    let eps = eps_tensor(like);
    let tokens: Vec<&str> = factors.split_whitespace().collect();
    let zero = like.constant_like(&int(0));
    let mut acc = load(k, &eps, tokens[0], &zero);
    for (n, tok) in tokens.iter().enumerate().skip(1) {
        let later: Vec<u8> = tokens[n + 1..].iter().flat_map(|t| t.as_bytes()[1..].to_vec()).collect();
        acc = contract(&acc, &load(k, &eps, tok, &zero), &later, &zero);
    }
    debug_assert!(acc.labels.is_empty(), "uncontracted index in {factors}");
    acc.data.into_iter().next().expect("scalar")
}

/// The fifteen invariants, each bracket carrying weight `w`.
pub fn deltas_weighted<S: Ring>(k: &KtParams<S>, w: &Rational) -> [S; 15] {
    std::array::from_fn(|d| {
        let mut s = k.a[0][0].constant_like(&int(0));
        for term in DELTA_TERMS[d] {
            let mut c = int(term.coef);
            for _ in 0..term.halves {
                c *= w;
            }
            s = s + eval_factors(k, term.factors).scale(&c);
        }
        s
    })
}

/// Brackets normalized with weight `1/2`.
pub fn deltas<S: Ring>(k: &KtParams<S>) -> [S; 15] {
    deltas_weighted(k, &rat(1, 2))
}
