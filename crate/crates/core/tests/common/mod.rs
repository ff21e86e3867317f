//! Test-side oracles, written independently of the library internals.
#![allow(dead_code)]

pub mod checks;

use std::collections::BTreeMap;

use kgs::graph::FormalityGraph;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// All permutations of `0..n` (Heap order is irrelevant here).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn parity_of_sort(t: &mut [usize]) -> i8 {
    let mut sign = 1;
    for i in 0..t.len() {
        for j in 0..t.len() - 1 - i {
            if t[j] > t[j + 1] {
                t.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// Aerial vertex `i` moves to position `perm[i]`; sinks stay put.
pub fn relabel(sinks: usize, tuples: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    let map = |x: usize| {
        if x < sinks {
            x
        } else {
            sinks + perm[x - sinks]
        }
    };
    let mut out = vec![Vec::new(); tuples.len()];
    for (i, t) in tuples.iter().enumerate() {
        out[perm[i]] = t.iter().map(|&x| map(x)).collect();
    }
    out
}

/// Brute-force invariant: the smallest sorted-tuple encoding over all
/// aerial relabelings, with the tuple-sorting sign at the minimum (0 when
/// two minimizing relabelings disagree, i.e. an odd automorphism exists).
pub fn brute_key(sinks: usize, tuples: &[Vec<usize>]) -> (Vec<Vec<usize>>, i8) {
    let mut best: Option<(Vec<Vec<usize>>, i8)> = None;
    for perm in permutations(tuples.len()) {
        let mut t = relabel(sinks, tuples, &perm);
        let mut sign = 1;
        for x in &mut t {
            sign *= parity_of_sort(x);
        }
        match &mut best {
            None => best = Some((t, sign)),
            Some((b, s)) => {
                if t < *b {
                    *b = t;
                    *s = sign;
                } else if t == *b && *s != sign {
                    *s = 0;
                }
            }
        }
    }
    let (key, sign) = best.unwrap_or((Vec::new(), 1));
    // once zero, any later equal leaf must keep it zero
    (key, sign)
}

/// Brute-force key of a graph value.
pub fn graph_key(g: &FormalityGraph) -> (Vec<Vec<usize>>, i8) {
    brute_key(g.sinks(), &g.to_tuples())
}

/// Every raw graph with the given out-degrees (ordered targets).
pub fn raw_graphs(sinks: usize, degrees: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let v = sinks + degrees.len();
    let per: Vec<Vec<Vec<usize>>> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| ordered_choices(v, sinks + i, d))
        .collect();
    let mut out = vec![Vec::new()];
    for choices in per {
        let mut next = Vec::new();
        for prefix in &out {
            for c in &choices {
                let mut p: Vec<Vec<usize>> = prefix.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn ordered_choices(v: usize, own: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for p in &out {
            for x in (0..v).filter(|&x| x != own && !p.contains(&x)) {
                let mut q: Vec<usize> = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Dense Gauss-Jordan over ℚ: (rank of A, whether Ax = b is consistent).
pub fn dense_rank_and_consistency(a: &[Vec<BigRational>], b: &[BigRational]) -> (usize, bool) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    let consistent = (rank..rows).all(|r| m[r][cols].is_zero());
    (rank, consistent)
}

/// Per z-exponent sums of evaluation maps keyed by (ħ-order, z-exponent).
pub fn by_exponent(
    map: BTreeMap<(usize, usize), kgs::oracle::Poly>,
) -> BTreeMap<usize, kgs::oracle::Poly> {
    let mut out: BTreeMap<usize, kgs::oracle::Poly> = BTreeMap::new();
    for ((_, e), v) in map {
        let nv = v.nvars();
        out.entry(e)
            .or_insert_with(|| kgs::oracle::Poly::zero(nv))
            .add_assign(&v);
    }
    out.retain(|_, v| !v.is_zero());
    out
}
