//! Formality graphs: ground vertices (sinks) plus aerial vertices with
//! ordered out-edge tuples.
//!
//! Vertices `0..m` are sinks, `m..m+n` are aerial. Every aerial vertex is a
//! wedge (two out-edges) except for at most one trident (three out-edges),
//! which is evaluated with the Jacobiator of the bivector.

mod canon;
mod generate;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use canon::{canonical_form, SignedCanonical};
pub use generate::{
    generate_kontsevich_graphs, generate_leibniz_graphs, leibniz_census, LeibnizCensus,
    LeibnizFilters,
};

/// Vertex labels are stored as bytes; graphs in this domain stay far below
/// this bound.
pub const MAX_VERTICES: usize = 250;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph encoding: {0}")]
    Syntax(String),
    #[error("vertex label {label} out of range (graph has {vertices} vertices)")]
    LabelOutOfRange { label: usize, vertices: usize },
    #[error("tadpole at aerial vertex {0}")]
    Tadpole(usize),
    #[error("duplicate edge from aerial vertex {0}")]
    DuplicateEdge(usize),
    #[error("trident at vertex {0} has repeated targets")]
    TridentTargetsNotDistinct(usize),
    #[error("more than one trident vertex")]
    MultipleTridents,
    #[error("aerial vertex {vertex} has {len} out-edges (expected 2 or 3)")]
    BadOutDegree { vertex: usize, len: usize },
    #[error("graph too large ({0} vertices)")]
    TooLarge(usize),
    #[error("expected a {expected} graph")]
    WrongKind { expected: &'static str },
}

/// A Formality graph with ordered out-edges.
///
/// The derived ordering (sinks, trident position, targets) is the
/// deterministic iteration order used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalityGraph {
    sinks: u8,
    aerial: u8,
    /// Aerial index (0-based among aerial vertices) of the trident, if any.
    trident: Option<u8>,
    /// Concatenated out-tuples in aerial order.
    targets: Vec<u8>,
}

impl FormalityGraph {
    /// Builds and validates a graph from per-aerial-vertex target tuples.
    pub fn new(sinks: usize, tuples: &[Vec<usize>]) -> Result<Self, GraphError> {
        let n = tuples.len();
        let total = sinks + n;
        if total > MAX_VERTICES {
            return Err(GraphError::TooLarge(total));
        }
        let mut trident = None;
        let mut targets = Vec::with_capacity(2 * n + 1);
        for (i, tuple) in tuples.iter().enumerate() {
            let v = sinks + i;
            match tuple.len() {
                2 => {}
                3 => {
                    if trident.is_some() {
                        return Err(GraphError::MultipleTridents);
                    }
                    trident = Some(i as u8);
                }
                len => return Err(GraphError::BadOutDegree { vertex: v, len }),
            }
            for (pos, &t) in tuple.iter().enumerate() {
                if t >= total {
                    return Err(GraphError::LabelOutOfRange {
                        label: t,
                        vertices: total,
                    });
                }
                if t == v {
                    return Err(GraphError::Tadpole(v));
                }
                if tuple[..pos].contains(&t) {
                    return Err(if tuple.len() == 3 {
                        GraphError::TridentTargetsNotDistinct(v)
                    } else {
                        GraphError::DuplicateEdge(v)
                    });
                }
                targets.push(t as u8);
            }
        }
        Ok(FormalityGraph {
            sinks: sinks as u8,
            aerial: n as u8,
            trident,
            targets,
        })
    }

    /// Assembles a graph from raw parts without validation. Callers uphold
    /// the structural invariants.
    pub(crate) fn from_raw(sinks: usize, trident: Option<usize>, targets: Vec<u8>) -> Self {
        let aerial = if trident.is_some() {
            (targets.len() - 1) / 2
        } else {
            targets.len() / 2
        };
        FormalityGraph {
            sinks: sinks as u8,
            aerial: aerial as u8,
            trident: trident.map(|t| t as u8),
            targets,
        }
    }

    /// The edgeless graph on `sinks` ground vertices (the product `×` for two).
    pub fn edgeless(sinks: usize) -> Self {
        FormalityGraph {
            sinks: sinks as u8,
            aerial: 0,
            trident: None,
            targets: Vec::new(),
        }
    }

    /// The wedge Λ on two sinks: the Poisson bracket.
    pub fn wedge() -> Self {
        Self::from_raw(2, None, vec![0, 1])
    }

    /// The tripod on three sinks: the Jacobiator itself.
    pub fn tripod() -> Self {
        Self::from_raw(3, Some(0), vec![0, 1, 2])
    }

    pub fn sinks(&self) -> usize {
        self.sinks as usize
    }

    pub fn aerial(&self) -> usize {
        self.aerial as usize
    }

    pub fn vertex_count(&self) -> usize {
        self.sinks() + self.aerial()
    }

    /// Aerial index of the trident vertex.
    pub fn trident(&self) -> Option<usize> {
        self.trident.map(|t| t as usize)
    }

    pub fn is_kontsevich(&self) -> bool {
        self.trident.is_none()
    }

    pub fn is_leibniz(&self) -> bool {
        self.trident.is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub(crate) fn raw_targets(&self) -> &[u8] {
        &self.targets
    }

    fn offset(&self, i: usize) -> usize {
        match self.trident {
            Some(t) if (t as usize) < i => 2 * i + 1,
            _ => 2 * i,
        }
    }

    /// Out-tuple of aerial vertex with aerial index `i` (vertex label `m + i`).
    pub fn tuple(&self, i: usize) -> &[u8] {
        let start = self.offset(i);
        let len = if self.trident == Some(i as u8) { 3 } else { 2 };
        &self.targets[start..start + len]
    }

    pub fn tuples(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.aerial()).map(move |i| self.tuple(i))
    }

    /// All edges as (source label, target label) pairs in tuple order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.sinks();
        self.tuples()
            .enumerate()
            .flat_map(|(i, t)| t.iter().map(move |&x| (m + i, x as usize)))
            .collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &t in &self.targets {
            deg[t as usize] += 1;
        }
        deg
    }

    /// Sink in-degrees `(d_0, …, d_{m-1})`: the homogeneous differential
    /// order of the operator in each argument.
    pub fn differential_order(&self) -> Vec<usize> {
        let mut deg = vec![0; self.sinks()];
        for &t in &self.targets {
            if (t as usize) < deg.len() {
                deg[t as usize] += 1;
            }
        }
        deg
    }

    /// Largest in-degree over aerial vertices other than the trident, and the
    /// in-degree of the trident (0 when absent).
    pub fn aerial_in_degree_bounds(&self) -> (usize, usize) {
        let deg = self.in_degrees();
        let m = self.sinks();
        let mut wedge_max = 0;
        let mut trident_deg = 0;
        for i in 0..self.aerial() {
            if self.trident() == Some(i) {
                trident_deg = deg[m + i];
            } else {
                wedge_max = wedge_max.max(deg[m + i]);
            }
        }
        (wedge_max, trident_deg)
    }

    /// Every sink receives at least one edge.
    pub fn all_sinks_hit(&self) -> bool {
        self.differential_order().iter().all(|&d| d > 0)
    }

    /// The affine in-degree bounds: wedges at most 1, trident at most 2.
    pub fn is_affine(&self) -> bool {
        let (w, t) = self.aerial_in_degree_bounds();
        w <= 1 && t <= 2
    }

    pub fn to_tuples(&self) -> Vec<Vec<usize>> {
        self.tuples()
            .map(|t| t.iter().map(|&x| x as usize).collect())
            .collect()
    }
}

/// Parses one graph encoding, e.g. `3 2; 0 1 4 | 1 2`.
pub fn parse_graph(text: &str) -> Result<FormalityGraph, GraphError> {
    text.parse()
}

/// The canonical text encoding; round-trips through [`parse_graph`].
pub fn encode_graph(g: &FormalityGraph) -> String {
    g.to_string()
}

impl fmt::Display for FormalityGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {};", self.sinks, self.aerial)?;
        for (i, t) in self.tuples().enumerate() {
            f.write_str(if i == 0 { " " } else { " | " })?;
            for (j, x) in t.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

fn parse_usize(tok: &str) -> Result<usize, GraphError> {
    tok.parse()
        .map_err(|_| GraphError::Syntax(format!("expected a vertex label, got {tok:?}")))
}

impl FromStr for FormalityGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, body) = s
            .split_once(';')
            .ok_or_else(|| GraphError::Syntax(format!("missing ';' in {s:?}")))?;
        let head: Vec<&str> = head.split_whitespace().collect();
        if head.len() != 2 {
            return Err(GraphError::Syntax(format!(
                "expected '<sinks> <aerial>', got {:?}",
                head.join(" ")
            )));
        }
        let m = parse_usize(head[0])?;
        let n = parse_usize(head[1])?;
        let body = body.trim();
        let tuples: Vec<Vec<usize>> = if body.contains('|') {
            body.split('|')
                .map(|t| t.split_whitespace().map(parse_usize).collect())
                .collect::<Result<_, _>>()?
        } else {
            let flat: Vec<usize> = body
                .split_whitespace()
                .map(parse_usize)
                .collect::<Result<_, _>>()?;
            if flat.len() == 2 * n {
                flat.chunks(2).map(|c| c.to_vec()).collect()
            } else if n == 1 && flat.len() == 3 {
                vec![flat]
            } else {
                return Err(GraphError::Syntax(format!(
                    "{} targets for {n} aerial vertices; separate tuples with '|' \
                     when a trident is present",
                    flat.len()
                )));
            }
        };
        if tuples.len() != n {
            return Err(GraphError::Syntax(format!(
                "header declares {n} aerial vertices, found {} tuples",
                tuples.len()
            )));
        }
        FormalityGraph::new(m, &tuples)
    }
}

/// Parity of the permutation sorting `t` ascending (+1 even, −1 odd).
pub(crate) fn sort_parity(t: &mut [u8]) -> i8 {
    let mut sign = 1;
    // insertion sort: at most three elements
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}
