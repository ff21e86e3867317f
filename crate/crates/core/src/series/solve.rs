//! Order-by-order construction of an associative star product.
//!
//! For `k ≥ 2` the associator at order `k + 1` is linear in `B_k` and
//! `B_{k+1}` (the quadratic terms start at order `2k`). A choice of `B_k`
//! that solves order `k` alone can still make order `k + 1` infeasible, so
//! both orders are solved jointly and only `B_k` is kept.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{associator, insert_series, GraphSeries, SeriesError, StarProduct};
use crate::coeff::Coefficient;
use crate::graph::{
    canonical_form, generate_kontsevich_graphs, generate_leibniz_graphs, FormalityGraph,
    LeibnizFilters,
};
use crate::jacobi::expand_leibniz;
use crate::linsolve::SparseSystem;
use crate::Mode;

/// Linear part of the associator in the coefficient of `u` when the other
/// argument of the composition is `other`.
fn variation(u: &FormalityGraph, other: &GraphSeries) -> Result<GraphSeries, SeriesError> {
    let us = GraphSeries::from_graph(u);
    let mut s = insert_series(&us, 0, other)?;
    s.sub_series(&insert_series(&us, 1, other)?);
    s.add_series(&insert_series(other, 0, &us)?);
    s.sub_series(&insert_series(other, 1, &us)?);
    Ok(s)
}

/// The same graph with the two sinks exchanged.
fn swap_sinks(g: &FormalityGraph) -> FormalityGraph {
    let targets = g
        .raw_targets()
        .iter()
        .map(|&t| match t {
            0 => 1,
            1 => 0,
            t => t,
        })
        .collect();
    FormalityGraph::from_raw(2, g.trident(), targets)
}

/// Unknown coefficients of one order: nonzero Kontsevich graphs that hit
/// both sinks (the others must vanish for `1` to stay the unit).
fn unknowns(n: usize, mode: Mode) -> Vec<FormalityGraph> {
    let cap = (mode == Mode::Affine).then_some(1);
    generate_kontsevich_graphs(2, n, cap)
        .into_iter()
        .filter(FormalityGraph::all_sinks_hit)
        .collect()
}

fn leibniz_pool(n: usize, mode: Mode) -> Vec<FormalityGraph> {
    let filters = LeibnizFilters {
        nonzero: true,
        all_sinks_hit: true,
        affine: mode == Mode::Affine,
    };
    generate_leibniz_graphs(3, n - 1, filters)
}

/// One block of equations, keyed by graph.
type Rows<'a> = BTreeMap<&'a FormalityGraph, Vec<(usize, BigRational)>>;

fn add_columns<'a>(rows: &mut Rows<'a>, offset: usize, columns: &'a [GraphSeries], sign: i64) {
    let sign = BigRational::from_integer(sign.into());
    for (j, s) in columns.iter().enumerate() {
        for (g, c) in s.iter() {
            rows.entry(g)
                .or_default()
                .push((offset + j, c.slice(0) * &sign));
        }
    }
}

/// `x_u = (−1)^n · sign · x_{u'}` for `u'` the sink swap of `u`.
fn symmetry_rows(
    graphs: &[FormalityGraph],
    n: usize,
    offset: usize,
) -> Vec<Vec<(usize, BigRational)>> {
    let index: BTreeMap<&FormalityGraph, usize> =
        graphs.iter().enumerate().map(|(j, u)| (u, j)).collect();
    let parity = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut out = Vec::new();
    for (j, u) in graphs.iter().enumerate() {
        let c = canonical_form(&swap_sinks(u));
        let partner = index[&c.graph];
        if partner >= j {
            let factor = BigRational::from_integer((parity * c.sign as i64).into());
            out.push(vec![
                (offset + j, BigRational::one()),
                (offset + partner, -factor),
            ]);
        }
    }
    out
}

/// Extends `star` (known through order `k − 1`) by one order.
///
/// Unknowns for orders `k` and `k + 1` are solved jointly with Leibniz
/// coefficients so that both associator orders are Leibniz combinations,
/// independently in each power of `z`. The solution obeys
/// `B_n(f,g) = (−1)^n B_n(g,f)`; remaining free unknowns are zero. `k = 1`
/// sets the bracket coefficient to 1.
pub fn solve_star_order(
    star: &StarProduct,
    k: usize,
    mode: Mode,
) -> Result<StarProduct, SeriesError> {
    if k == 0 || star.order + 1 < k {
        return Err(SeriesError::InsufficientOrder {
            have: star.order,
            need: k.saturating_sub(1),
        });
    }
    let mut base = star.truncate(k - 1);
    if k == 1 {
        base.order = 1;
        base.series
            .add_canonical(FormalityGraph::wedge(), &Coefficient::one());
        return Ok(base);
    }
    let bracket = base.series.order(1);
    if bracket.z_degree().is_some_and(|d| d > 0) {
        return Err(SeriesError::Infeasible(k));
    }
    base.order = k + 1;
    let assoc = associator(&base, k + 1)?.restrict(mode);
    let known = [assoc.order(k), assoc.order(k + 1)];

    let unit = GraphSeries::from_graph(&FormalityGraph::edgeless(2));
    let u_k = unknowns(k, mode);
    let u_next = unknowns(k + 1, mode);
    let pool_k = leibniz_pool(k, mode);
    let pool_next = leibniz_pool(k + 1, mode);

    let columns =
        |graphs: &[FormalityGraph], other: &GraphSeries| -> Result<Vec<GraphSeries>, SeriesError> {
            graphs
                .par_iter()
                .map(|u| variation(u, other).map(|s| s.restrict(mode)))
                .collect()
        };
    let delta_k = columns(&u_k, &unit)?;
    let lambda_k = columns(&u_k, &bracket)?;
    let delta_next = columns(&u_next, &unit)?;
    let expand = |pool: &[FormalityGraph]| -> Vec<GraphSeries> {
        pool.par_iter().map(|l| expand_leibniz(l, mode)).collect()
    };
    let e_k = expand(&pool_k);
    let e_next = expand(&pool_next);

    // columns: u_k | pool_k | u_next | pool_next
    let o_pool_k = u_k.len();
    let o_next = o_pool_k + pool_k.len();
    let o_pool_next = o_next + u_next.len();
    let cols = o_pool_next + pool_next.len();

    let mut rows_k: Rows = BTreeMap::new();
    add_columns(&mut rows_k, 0, &delta_k, 1);
    add_columns(&mut rows_k, o_pool_k, &e_k, -1);
    let mut rows_next: Rows = BTreeMap::new();
    add_columns(&mut rows_next, 0, &lambda_k, 1);
    add_columns(&mut rows_next, o_next, &delta_next, 1);
    add_columns(&mut rows_next, o_pool_next, &e_next, -1);
    for g in known[0].graphs() {
        rows_k.entry(g).or_default();
    }
    for g in known[1].graphs() {
        rows_next.entry(g).or_default();
    }
    let mut symmetry = symmetry_rows(&u_k, k, 0);
    symmetry.extend(symmetry_rows(&u_next, k + 1, o_next));

    let exponents: BTreeSet<usize> = known.iter().flat_map(|s| s.z_exponents()).collect();
    let mut solution = vec![Coefficient::zero(); u_k.len()];
    for e in exponents {
        let mut sys = SparseSystem::new(cols);
        for (rows, target) in [(&rows_k, &known[0]), (&rows_next, &known[1])] {
            for (g, entries) in rows {
                let rhs = -target
                    .get(g)
                    .map(|c| c.slice(e))
                    .unwrap_or_else(BigRational::zero);
                sys.push_row(entries.iter().cloned(), rhs);
            }
        }
        for row in &symmetry {
            sys.push_row(row.iter().cloned(), BigRational::zero());
        }
        let x = sys.solve().ok_or(SeriesError::Infeasible(k))?;
        for (sol, v) in solution.iter_mut().zip(x) {
            *sol += &Coefficient::monomial(v, e);
        }
    }
    base.order = k;
    for (u, c) in u_k.into_iter().zip(solution) {
        base.series.add_canonical(u, &c);
    }
    Ok(base)
}

/// Chains [`solve_star_order`] from the bare product up to order `k`.
pub fn solve_star_through(k: usize, mode: Mode) -> Result<StarProduct, SeriesError> {
    let mut star = StarProduct::product();
    for n in 1..=k {
        star = solve_star_order(&star, n, mode)?;
    }
    Ok(star)
}
