//! Layered search for Leibniz factorizations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{contract_edges, expand_leibniz, Certificate, LayerLog};
use crate::coeff::Coefficient;
use crate::graph::FormalityGraph;
use crate::linsolve::SparseSystem;
use crate::series::{slice_series, split_by_tridiff, GraphSeries, TriDiffComponent};
use crate::Mode;

/// Leibniz graphs first reached at one layer, and the Kontsevich graphs
/// their expansions add to everything seen before.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub index: usize,
    pub leibniz_set: Vec<FormalityGraph>,
    pub kontsevich_frontier: Vec<FormalityGraph>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub layers: Vec<Layer>,
    pub log: LayerLog,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Highest layer index searched (layer 0 always is).
    pub max_layers: usize,
    pub mode: Mode,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            max_layers: 3,
            mode: Mode::Full,
        }
    }
}

/// Solves `Σ c_L E_L = target` slice by slice in `z`, columns in pool order.
fn solve_with(
    target: &TriDiffComponent,
    pool: &[FormalityGraph],
    expansions: &[GraphSeries],
) -> Certificate {
    let mut rows: BTreeMap<&FormalityGraph, Vec<(usize, BigRational)>> = BTreeMap::new();
    for (j, e) in expansions.iter().enumerate() {
        for (g, c) in e.iter() {
            rows.entry(g).or_default().push((j, c.slice(0)));
        }
    }
    for g in target.combination.graphs() {
        rows.entry(g).or_default();
    }
    let mut coeffs = vec![Coefficient::zero(); pool.len()];
    let mut status = true;
    for e in target.combination.z_exponents() {
        let mut sys = SparseSystem::new(pool.len());
        for (g, entries) in &rows {
            let rhs = target
                .combination
                .get(g)
                .map(|c| c.slice(e))
                .unwrap_or_else(BigRational::zero);
            sys.push_row(entries.iter().cloned(), rhs);
        }
        match sys.solve() {
            Some(x) => {
                for (c, v) in coeffs.iter_mut().zip(x) {
                    *c += &Coefficient::monomial(v, e);
                }
            }
            None => {
                status = false;
                break;
            }
        }
    }
    let terms = if status {
        pool.iter()
            .cloned()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .collect()
    } else {
        Vec::new()
    };
    Certificate {
        order: target.order.clone(),
        hbar_order: target.hbar_order,
        terms,
        log: None,
        status,
    }
}

/// One exact solve of the target against a fixed Leibniz pool.
pub fn factorize_component(
    target: &TriDiffComponent,
    pool: &[FormalityGraph],
    mode: Mode,
) -> Certificate {
    let expansions: Vec<GraphSeries> = pool.par_iter().map(|l| expand_leibniz(l, mode)).collect();
    solve_with(target, pool, &expansions)
}

fn contract_all(graphs: &[FormalityGraph], mode: Mode) -> BTreeSet<FormalityGraph> {
    graphs
        .par_iter()
        .map(|g| contract_edges(g, mode))
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Grows the Leibniz pool layer by layer until the target factors, nothing
/// new appears, or `max_layers` is exhausted.
pub fn layer_closure(target: &TriDiffComponent, opts: &ClosureOptions) -> Closure {
    let mode = opts.mode;
    let mut seen_k: BTreeSet<FormalityGraph> = target.combination.graphs().cloned().collect();
    let mut frontier: Vec<FormalityGraph> = seen_k.iter().cloned().collect();
    let mut pool: Vec<FormalityGraph> = Vec::new();
    let mut pool_set: BTreeSet<FormalityGraph> = BTreeSet::new();
    let mut expansions: Vec<GraphSeries> = Vec::new();
    let mut layers = Vec::new();
    let mut steps = Vec::new();
    let mut certificate = solve_with(target, &pool, &expansions);

    for index in 0..=opts.max_layers {
        let new_l: Vec<FormalityGraph> = contract_all(&frontier, mode)
            .into_iter()
            .filter(|l| !pool_set.contains(l))
            .collect();
        let new_e: Vec<GraphSeries> = new_l.par_iter().map(|l| expand_leibniz(l, mode)).collect();
        let mut new_k = BTreeSet::new();
        for e in &new_e {
            for g in e.graphs() {
                if !seen_k.contains(g) {
                    new_k.insert(g.clone());
                }
            }
        }
        seen_k.extend(new_k.iter().cloned());
        steps.push((new_l.len(), new_k.len()));
        let grew = !new_l.is_empty();
        pool_set.extend(new_l.iter().cloned());
        pool.extend(new_l.iter().cloned());
        expansions.extend(new_e);
        if grew || index == 0 {
            certificate = solve_with(target, &pool, &expansions);
        }
        let frontier_next: Vec<FormalityGraph> = new_k.into_iter().collect();
        layers.push(Layer {
            index,
            leibniz_set: new_l,
            kontsevich_frontier: frontier_next.clone(),
        });
        if certificate.status || frontier_next.is_empty() {
            break;
        }
        frontier = frontier_next;
    }

    let log = LayerLog {
        order: target.order.clone(),
        target_size: target.combination.len(),
        steps,
        status: certificate.status,
    };
    certificate.log = Some(log.clone());
    Closure {
        layers,
        log,
        certificate,
    }
}

/// Which `z`-slice of each component to factorize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SlicePolicy {
    /// The whole ℚ[z] component at once, one pool for all slices.
    #[default]
    Merged,
    /// Only the coefficient of `z^e`, with a pool from its own graphs.
    Exponent(usize),
}

impl std::str::FromStr for SlicePolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "merged" => Ok(SlicePolicy::Merged),
            other => other
                .parse()
                .map(SlicePolicy::Exponent)
                .map_err(|_| format!("bad slice {other:?} (expected merged or an exponent)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FactorizeOptions {
    pub closure: ClosureOptions,
    pub slice: SlicePolicy,
}

/// All components of one ħ-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    pub hbar_order: usize,
    pub graph_count: usize,
    pub closures: Vec<Closure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    pub orders: Vec<OrderReport>,
}

impl FactorizationReport {
    pub fn success(&self) -> bool {
        self.orders
            .iter()
            .all(|o| o.closures.iter().all(|c| c.certificate.status))
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.orders
            .iter()
            .flat_map(|o| o.closures.iter().map(|c| &c.certificate))
    }

    /// The run log: per order a header, then one trace and status per
    /// component.
    pub fn log_text(&self) -> String {
        let mut out = String::new();
        for o in &self.orders {
            let _ = writeln!(out, "h^{}:", o.hbar_order);
            let _ = writeln!(out, "Number of Kontsevich graphs: {}", o.graph_count);
            let _ = writeln!(out, "Number of differential orders: {}", o.closures.len());
            for c in &o.closures {
                let _ = writeln!(out, "{}", c.log);
            }
        }
        out
    }
}

/// Splits `assoc` by ħ-order (up to `k`) and differential order, and runs
/// the layered search on every component in parallel. Output order is
/// deterministic.
pub fn factorize_series(
    assoc: &GraphSeries,
    k: usize,
    opts: &FactorizeOptions,
) -> FactorizationReport {
    let assoc = assoc.restrict(opts.closure.mode);
    let mut orders = Vec::new();
    for n in assoc.orders().into_iter().filter(|&n| n <= k) {
        let mut components = split_by_tridiff(&assoc, n);
        if let SlicePolicy::Exponent(e) = opts.slice {
            components = components
                .into_iter()
                .map(|c| TriDiffComponent {
                    combination: slice_series(&c.combination, e),
                    ..c
                })
                .filter(|c| !c.combination.is_empty())
                .collect();
        }
        let graph_count = components.iter().map(|c| c.combination.len()).sum();
        let closures = components
            .par_iter()
            .map(|c| layer_closure(c, &opts.closure))
            .collect();
        orders.push(OrderReport {
            hbar_order: n,
            graph_count,
            closures,
        });
    }
    FactorizationReport { orders }
}

/// Outcome of removing a factorable `z`-slice from a star product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Input minus `z^e` times the slice, or the input when `status` fails.
    pub reduced: crate::series::StarProduct,
    /// Two-sink Leibniz combination (already carrying `z^e`).
    pub leibniz: GraphSeries,
    /// Components that did not factor.
    pub residual: GraphSeries,
    pub logs: Vec<LayerLog>,
    pub status: bool,
}

/// Realizes the `z^exponent` slice of each order as a Leibniz combination on
/// two sinks and subtracts it; the result agrees with the input on every
/// Poisson structure.
pub fn reduce_series(
    star: &crate::series::StarProduct,
    exponent: usize,
    opts: &ClosureOptions,
) -> Reduction {
    let slice = slice_series(&star.series.restrict(opts.mode), exponent);
    let zpow = Coefficient::monomial(num_traits::One::one(), exponent);
    let mut leibniz = GraphSeries::new(2);
    let mut residual = GraphSeries::new(2);
    let mut removed = GraphSeries::new(2);
    let mut logs = Vec::new();
    for n in slice.orders() {
        let components = split_by_tridiff(&slice, n);
        let closures: Vec<Closure> = components
            .par_iter()
            .map(|c| layer_closure(c, opts))
            .collect();
        for (comp, closure) in components.iter().zip(closures) {
            if closure.certificate.status {
                leibniz.add_scaled(&closure.certificate.combination(), &zpow);
                removed.add_scaled(&comp.combination, &zpow);
            } else {
                residual.add_scaled(&comp.combination, &zpow);
            }
            logs.push(closure.log);
        }
    }
    let status = residual.is_empty();
    let mut reduced = star.clone();
    if status {
        reduced.series.sub_series(&removed);
    } else {
        leibniz = GraphSeries::new(2);
    }
    Reduction {
        reduced,
        leibniz,
        residual,
        logs,
        status,
    }
}
