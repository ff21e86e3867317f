//! Oracle checks shared by the topic suites and the acceptance run. Each
//! returns the first counterexample as an error.

use std::collections::BTreeMap;

use kgs::graph::{
    canonical_form, generate_kontsevich_graphs, generate_leibniz_graphs, FormalityGraph,
    LeibnizFilters,
};
use kgs::jacobi::expand_leibniz;
use kgs::oracle::{evaluate_graph, evaluate_series, Arg, Poly, PolyBivector};
use kgs::series::{insert, split_by_tridiff, GraphSeries};
use kgs::Mode;
use num_rational::BigRational;
use num_traits::One;

use super::by_exponent;

fn symbols() -> Vec<Arg> {
    vec![Arg::Symbol; 3]
}

/// `Σ J^{ijk} ξ_{0,i} ξ_{1,j} ξ_{2,k}` with the Jacobiator written out from
/// its definition as a cyclic sum.
pub fn jacobiator_symbol(p: &PolyBivector) -> Poly {
    let d = p.dim();
    let nv = d + 3 * d;
    let q = p.extend(nv);
    let mut out = Poly::zero(nv);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut jac = Poly::zero(nv);
                for l in 0..d {
                    jac = &jac + &(q.get(i, l) * &q.get(j, k).derivative(l));
                    jac = &jac + &(q.get(j, l) * &q.get(k, i).derivative(l));
                    jac = &jac + &(q.get(k, l) * &q.get(i, j).derivative(l));
                }
                let xi = Poly::monomial(
                    nv,
                    &[(d + i, 1), (2 * d + j, 1), (3 * d + k, 1)],
                    BigRational::one(),
                );
                out = &out + &(&jac * &xi);
            }
        }
    }
    out
}

/// The tripod expands to three Kontsevich graphs whose value on P₀ is the
/// Jacobiator and which vanish on so(3).
pub fn tripod_semantics() -> Result<(), String> {
    let e = expand_leibniz(&FormalityGraph::tripod(), Mode::Full);
    if e.len() != 3 || !e.graphs().all(|g| g.is_kontsevich() && g.aerial() == 2) {
        return Err(format!("expansion has {} terms", e.len()));
    }
    let p = PolyBivector::p0();
    let value = by_exponent(evaluate_series(&e, &p, &symbols()).map_err(|e| e.to_string())?);
    if value.get(&0) != Some(&jacobiator_symbol(&p)) {
        return Err("value on P0 differs from the Jacobiator".into());
    }
    if !evaluate_series(&e, &PolyBivector::so3(), &symbols())
        .map_err(|e| e.to_string())?
        .is_empty()
    {
        return Err("nonzero on so(3)".into());
    }
    Ok(())
}

/// Grafting `γ` into slot `s` of `Γ` composes the operators, checked on P₀
/// with polynomial arguments for all outer graphs with at most two and
/// inner graphs with one or two aerial vertices.
pub fn insert_leibniz_rule() -> Result<(), String> {
    let p = PolyBivector::p0();
    let f = Poly::parse("x1*x2 + x3", 3).unwrap();
    let g = Poly::parse("x2^2 - x1", 3).unwrap();
    let h = Poly::parse("x1*x3^2", 3).unwrap();
    let outers: Vec<FormalityGraph> = (0..=2)
        .flat_map(|n| generate_kontsevich_graphs(2, n, None))
        .collect();
    let inners: Vec<FormalityGraph> = (1..=2)
        .flat_map(|n| generate_kontsevich_graphs(2, n, None))
        .collect();
    let err = |e: kgs::oracle::EvalError| e.to_string();
    for outer in &outers {
        for inner in &inners {
            for slot in 0..2 {
                let composed = insert(outer, slot, inner).map_err(|e| e.to_string())?;
                let all = [
                    Arg::Poly(f.clone()),
                    Arg::Poly(g.clone()),
                    Arg::Poly(h.clone()),
                ];
                let lhs = by_exponent(evaluate_series(&composed, &p, &all).map_err(err)?)
                    .remove(&0)
                    .unwrap_or_else(|| Poly::zero(3));
                let (a, b) = if slot == 0 { (&f, &g) } else { (&g, &h) };
                let iv = evaluate_graph(inner, &p, &[Arg::Poly(a.clone()), Arg::Poly(b.clone())])
                    .map_err(err)?;
                let args = if slot == 0 {
                    [iv, h.clone()]
                } else {
                    [f.clone(), iv]
                };
                let rhs = evaluate_graph(
                    outer,
                    &p,
                    &[Arg::Poly(args[0].clone()), Arg::Poly(args[1].clone())],
                )
                .map_err(err)?;
                if lhs != rhs {
                    return Err(format!("{outer} at {slot} with {inner}"));
                }
            }
        }
    }
    Ok(())
}

/// For every Leibniz graph with at most two aerial vertices, the Kontsevich
/// expansion and the direct Jacobiator evaluation agree on P₀.
pub fn expansion_semantics() -> Result<(), String> {
    let p = PolyBivector::p0();
    for n in 1..=2 {
        for l in generate_leibniz_graphs(3, n, LeibnizFilters::default()) {
            let e = evaluate_series(&expand_leibniz(&l, Mode::Full), &p, &symbols())
                .map_err(|e| e.to_string())?;
            let direct = evaluate_graph(&l, &p, &symbols()).map_err(|e| e.to_string())?;
            let got = by_exponent(e)
                .remove(&0)
                .unwrap_or_else(|| Poly::zero(direct.nvars()));
            if got != direct {
                return Err(format!("{l}"));
            }
        }
    }
    Ok(())
}

/// Splitting a series by sink in-degree profile agrees with splitting its
/// symbol on P₀ by ξ-degree per sink.
pub fn tridiff_split(s: &GraphSeries, n: usize) -> Result<(), String> {
    let p = PolyBivector::p0();
    let d = p.dim();
    let nv = 4 * d;
    let whole =
        by_exponent(evaluate_series(&s.order(n), &p, &symbols()).map_err(|e| e.to_string())?)
            .remove(&0)
            .unwrap_or_else(|| Poly::zero(nv));
    let mut by_profile: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
    for (key, part) in whole.split_by(d..nv) {
        let profile: Vec<usize> = key
            .chunks(d)
            .map(|c| c.iter().sum::<u32>() as usize)
            .collect();
        let exps: Vec<(usize, u32)> = key.iter().enumerate().map(|(i, &e)| (d + i, e)).collect();
        let restored = &part * &Poly::monomial(nv, &exps, BigRational::one());
        let slot = by_profile.entry(profile).or_insert_with(|| Poly::zero(nv));
        *slot = &*slot + &restored;
    }
    by_profile.retain(|_, v| !v.is_zero());
    let mut seen = 0;
    for c in split_by_tridiff(s, n) {
        let v = by_exponent(
            evaluate_series(&c.combination, &p, &symbols()).map_err(|e| e.to_string())?,
        )
        .remove(&0);
        if v.as_ref() != by_profile.get(&c.order) {
            return Err(format!("order {n} component {}", c.label()));
        }
        seen += usize::from(v.is_some());
    }
    if seen != by_profile.len() {
        return Err(format!("order {n}: symbol has profiles outside the split"));
    }
    Ok(())
}

fn graph(sinks: usize, tuples: &[Vec<usize>]) -> FormalityGraph {
    FormalityGraph::new(sinks, tuples).unwrap()
}

/// Raw shapes small enough to sweep completely: Kontsevich graphs on two
/// sinks with up to three wedges and Leibniz graphs on three sinks with up
/// to two aerial vertices.
pub fn raw_corpus() -> Vec<(usize, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for degrees in [vec![2], vec![2, 2], vec![2, 2, 2]] {
        out.extend(super::raw_graphs(2, &degrees).into_iter().map(|t| (2, t)));
    }
    for degrees in [vec![3], vec![3, 2], vec![2, 3]] {
        out.extend(super::raw_graphs(3, &degrees).into_iter().map(|t| (3, t)));
    }
    out
}

pub fn canonical_idempotent() -> Result<(), String> {
    for (m, t) in raw_corpus() {
        let c = canonical_form(&graph(m, &t));
        let again = canonical_form(&c.graph);
        if again.graph != c.graph || (!c.is_zero() && again.sign != 1) {
            return Err(format!("{}", c.graph));
        }
    }
    Ok(())
}

/// Classes, zero detection and signs against the brute-force key.
pub fn canonical_matches_brute_force() -> Result<(), String> {
    for (m, t) in raw_corpus() {
        let g = graph(m, &t);
        let c = canonical_form(&g);
        let (key, bsign) = super::brute_key(m, &t);
        let (ckey, csign) = super::graph_key(&c.graph);
        if key != ckey {
            return Err(format!("class of {g}"));
        }
        if c.is_zero() != (bsign == 0) {
            return Err(format!("zero detection for {g}"));
        }
        if bsign != 0 && c.sign != bsign * csign {
            return Err(format!("sign of {g}"));
        }
    }
    Ok(())
}

/// Every aerial relabeling of every Leibniz graph with up to four aerial
/// vertices has the same canonical form and sign.
pub fn canonical_relabel_invariant() -> Result<(), String> {
    for n in 1..=4 {
        for g in generate_leibniz_graphs(3, n, LeibnizFilters::default()) {
            let base = canonical_form(&g);
            let tuples = g.to_tuples();
            for perm in super::permutations(n) {
                let h = graph(3, &super::relabel(3, &tuples, &perm));
                let c = canonical_form(&h);
                if c.graph != base.graph || c.sign != base.sign {
                    return Err(format!("{h} relabels {g}"));
                }
            }
        }
    }
    Ok(())
}

/// A transposition inside one tuple flips the sign; a 3-cycle keeps it.
pub fn canonical_sign_multiplicative() -> Result<(), String> {
    for (m, t) in raw_corpus() {
        let base = canonical_form(&graph(m, &t));
        for i in 0..t.len() {
            let mut swapped = t.clone();
            swapped[i].swap(0, 1);
            let c = canonical_form(&graph(m, &swapped));
            if c.graph != base.graph || c.sign != -base.sign {
                return Err(format!("swap in tuple {i} of {:?}", t));
            }
            if t[i].len() == 3 {
                let mut cycled = t.clone();
                cycled[i].rotate_left(1);
                if canonical_form(&graph(m, &cycled)).sign != base.sign {
                    return Err(format!("cycle in tuple {i} of {:?}", t));
                }
            }
        }
    }
    Ok(())
}
