#![allow(dead_code)]
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::path::PathBuf;
use vinbergkit::coxgraph::{load_graph, CoxeterGraph, GramMatrix};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus() -> Vec<PathBuf> {
    let mut out = Vec::new();
    for d in std::fs::read_dir(corpus_dir()).unwrap() {
        for f in std::fs::read_dir(d.unwrap().path()).unwrap() {
            out.push(f.unwrap().path());
        }
    }
    out.sort();
    out
}

pub fn load(rel: &str) -> (CoxeterGraph, GramMatrix) {
    let text = std::fs::read_to_string(corpus_dir().join(rel)).unwrap();
    load_graph(&text, true).unwrap()
}

/// Sturm-sequence count of real roots of p in (−∞, 0).
pub fn negative_roots(p: &[BigRational]) -> usize {
    fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut a = a.to_vec();
        while a.len() >= b.len() && !a.is_empty() {
            let c = a.last().unwrap() / b.last().unwrap();
            let s = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[s + i] = &a[s + i] - &c * bi;
            }
            a.pop();
            while a.last().is_some_and(|x| x.is_zero()) {
                a.pop();
            }
        }
        a
    }
    let mut p = p.to_vec();
    while p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    // strip the root 0
    while p[0].is_zero() {
        p.remove(0);
    }
    if p.len() == 1 {
        return 0;
    }
    let dp: Vec<BigRational> = (1..p.len()).map(|i| &p[i] * BigRational::from_integer(BigInt::from(i))).collect();
    let mut seq = vec![p.clone(), dp];
    while seq.last().unwrap().len() > 1 {
        let n = seq.len();
        let r: Vec<BigRational> = rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|x| -x).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    let var = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_minus_inf = seq
        .iter()
        .map(|q| {
            let lc = q.last().unwrap().signum();
            let s = if lc.is_positive() { 1 } else { -1 };
            if (q.len() - 1) % 2 == 0 { s } else { -s }
        })
        .collect();
    let at_zero = seq.iter().map(|q| if q[0].is_positive() { 1 } else if q[0].is_negative() { -1 } else { 0 }).collect();
    var(at_minus_inf) - var(at_zero)
}
