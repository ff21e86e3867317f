//! Graph series: finite sums of canonical graphs with ℚ[z] coefficients,
//! graded by the number of aerial vertices (the power of ħ).

mod compose;
mod io;
mod solve;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::coeff::{CoeffParseError, Coefficient};
use crate::graph::{canonical_form, FormalityGraph, GraphError};
use crate::Mode;

pub use compose::{associator, insert, insert_series};
pub use io::{
    load_series, load_star_product, write_series, write_star_product, Normalization, SeriesHeader,
};
pub use solve::{solve_star_order, solve_star_through};

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("line {line}: {source}")]
    Coeff {
        line: usize,
        #[source]
        source: CoeffParseError,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph on {found} sinks in a series on {expected} sinks")]
    SinkMismatch { expected: usize, found: usize },
    #[error("star product has no unit term (edgeless graph with coefficient 1 at order 0)")]
    MissingUnit,
    #[error("star product has no Poisson bracket term at order 1")]
    MissingBracket,
    #[error("line {line}: star products contain Kontsevich graphs only")]
    NotKontsevich { line: usize },
    #[error("series known through order {have}, order {need} requested")]
    InsufficientOrder { have: usize, need: usize },
    #[error("composition of two graphs with tridents")]
    MultipleTridents,
    #[error("no associative extension found at order {0}")]
    Infeasible(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Finite linear combination of canonical graphs on a fixed number of sinks.
///
/// Coefficients are full operator coefficients (any `1/n!` already merged).
/// Zero graphs and zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSeries {
    sinks: usize,
    entries: BTreeMap<FormalityGraph, Coefficient>,
}

impl GraphSeries {
    pub fn new(sinks: usize) -> Self {
        GraphSeries {
            sinks,
            entries: BTreeMap::new(),
        }
    }

    /// A single graph with coefficient 1 (canonicalized, sign absorbed).
    pub fn from_graph(g: &FormalityGraph) -> Self {
        let mut s = GraphSeries::new(g.sinks());
        s.add_graph(g, &Coefficient::one());
        s
    }

    pub fn sinks(&self) -> usize {
        self.sinks
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FormalityGraph, &Coefficient)> {
        self.entries.iter()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &FormalityGraph> {
        self.entries.keys()
    }

    pub fn get(&self, g: &FormalityGraph) -> Option<&Coefficient> {
        self.entries.get(g)
    }

    pub fn contains(&self, g: &FormalityGraph) -> bool {
        self.entries.contains_key(g)
    }

    /// Adds `c · g` after canonicalizing `g`; zero graphs are dropped.
    pub fn add_graph(&mut self, g: &FormalityGraph, c: &Coefficient) {
        assert_eq!(g.sinks(), self.sinks, "sink count mismatch");
        let canon = canonical_form(g);
        match canon.sign {
            0 => {}
            1 => self.add_canonical(canon.graph, c),
            _ => self.add_canonical(canon.graph, &-c),
        }
    }

    /// Adds `c · g` for a graph already in canonical form.
    pub fn add_canonical(&mut self, g: FormalityGraph, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_series(&mut self, other: &GraphSeries) {
        self.add_scaled(other, &Coefficient::one());
    }

    pub fn sub_series(&mut self, other: &GraphSeries) {
        self.add_scaled(other, &Coefficient::integer(-1));
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &GraphSeries, factor: &Coefficient) {
        assert_eq!(other.sinks, self.sinks, "sink count mismatch");
        for (g, c) in &other.entries {
            self.add_canonical(g.clone(), &(c * factor));
        }
    }

    pub fn scaled(&self, factor: &Coefficient) -> GraphSeries {
        let mut out = GraphSeries::new(self.sinks);
        out.add_scaled(self, factor);
        out
    }

    /// Terms with exactly `n` aerial vertices.
    pub fn order(&self, n: usize) -> GraphSeries {
        self.filter(|g, _| g.aerial() == n)
    }

    /// Terms with at most `k` aerial vertices.
    pub fn truncate(&self, k: usize) -> GraphSeries {
        self.filter(|g, _| g.aerial() <= k)
    }

    pub fn filter(
        &self,
        mut keep: impl FnMut(&FormalityGraph, &Coefficient) -> bool,
    ) -> GraphSeries {
        GraphSeries {
            sinks: self.sinks,
            entries: self
                .entries
                .iter()
                .filter(|(g, c)| keep(g, c))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    /// Restriction to graphs that survive on affine bivectors (aerial
    /// in-degree at most 1; the trident may take 2).
    pub fn restrict(&self, mode: Mode) -> GraphSeries {
        match mode {
            Mode::Full => self.clone(),
            Mode::Affine => self.filter(|g, _| mode.admits(g)),
        }
    }

    /// ħ-orders present.
    pub fn orders(&self) -> BTreeSet<usize> {
        self.entries.keys().map(|g| g.aerial()).collect()
    }

    pub fn max_order(&self) -> Option<usize> {
        self.entries.keys().map(|g| g.aerial()).max()
    }

    /// Largest `z`-degree over all coefficients.
    pub fn z_degree(&self) -> Option<usize> {
        self.entries.values().filter_map(|c| c.degree()).max()
    }

    /// `z`-exponents present in any coefficient.
    pub fn z_exponents(&self) -> BTreeSet<usize> {
        self.entries.values().flat_map(|c| c.exponents()).collect()
    }
}

/// Differential order as printed in logs: `(2, 4, 2)`.
pub struct DiffOrder<'a>(pub &'a [usize]);

impl fmt::Display for DiffOrder<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// The part of a series of fixed ħ-order and fixed sink in-degree profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriDiffComponent {
    pub order: Vec<usize>,
    pub hbar_order: usize,
    pub combination: GraphSeries,
}

impl TriDiffComponent {
    pub fn label(&self) -> String {
        DiffOrder(&self.order).to_string()
    }
}

/// Partitions the order-`n` terms by sink in-degree profile, in ascending
/// lexicographic order of the profile. Empty components are omitted.
pub fn split_by_tridiff(s: &GraphSeries, n: usize) -> Vec<TriDiffComponent> {
    let mut parts: BTreeMap<Vec<usize>, GraphSeries> = BTreeMap::new();
    for (g, c) in s.iter().filter(|(g, _)| g.aerial() == n) {
        parts
            .entry(g.differential_order())
            .or_insert_with(|| GraphSeries::new(s.sinks()))
            .add_canonical(g.clone(), c);
    }
    parts
        .into_iter()
        .map(|(order, combination)| TriDiffComponent {
            order,
            hbar_order: n,
            combination,
        })
        .collect()
}

/// Entrywise `z^exponent` slice; the result has rational coefficients.
pub fn slice_series(s: &GraphSeries, exponent: usize) -> GraphSeries {
    let mut out = GraphSeries::new(s.sinks());
    for (g, c) in s.iter() {
        out.add_canonical(g.clone(), &Coefficient::rational(c.slice(exponent)));
    }
    out
}

/// A star product known through a given ħ-order (on two sinks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarProduct {
    pub series: GraphSeries,
    /// Highest order at which the coefficients are known (possibly all zero).
    pub order: usize,
}

impl StarProduct {
    /// `× + ħ Λ`: the star product mod ō(ħ).
    pub fn first_order() -> Self {
        let mut series = GraphSeries::new(2);
        series.add_canonical(FormalityGraph::edgeless(2), &Coefficient::one());
        series.add_canonical(FormalityGraph::wedge(), &Coefficient::one());
        StarProduct { series, order: 1 }
    }

    /// Only the product `×`.
    pub fn product() -> Self {
        let mut series = GraphSeries::new(2);
        series.add_canonical(FormalityGraph::edgeless(2), &Coefficient::one());
        StarProduct { series, order: 0 }
    }

    pub fn restrict(&self, mode: Mode) -> StarProduct {
        StarProduct {
            series: self.series.restrict(mode),
            order: self.order,
        }
    }

    pub fn truncate(&self, k: usize) -> StarProduct {
        StarProduct {
            series: self.series.truncate(k),
            order: self.order.min(k),
        }
    }
}
