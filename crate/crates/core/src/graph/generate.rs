//! Exhaustive generation of admissible graph sets, deduplicated by canonical
//! form.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{canonical_form, FormalityGraph};

/// Filters applied to generated Leibniz graphs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LeibnizFilters {
    /// Drop zero graphs (odd automorphism).
    pub nonzero: bool,
    /// Keep graphs in which every sink has in-degree at least one.
    pub all_sinks_hit: bool,
    /// Trident in-degree at most 2, other aerial vertices at most 1.
    pub affine: bool,
}

/// Sizes of the generated Leibniz set after each filter stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeibnizCensus {
    pub generated: usize,
    pub nonzero: usize,
    pub all_sinks_hit: usize,
}

/// Unordered target choices (ascending) for one aerial vertex.
fn choices(vertices: usize, own: usize, arity: usize) -> Vec<Vec<u8>> {
    let pool: Vec<u8> = (0..vertices)
        .filter(|&x| x != own)
        .map(|x| x as u8)
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(arity);
    fn rec(pool: &[u8], start: usize, arity: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == arity {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, i + 1, arity, cur, out);
            cur.pop();
        }
    }
    rec(&pool, 0, arity, &mut current, &mut out);
    out
}

/// Canonical forms (with sign) of all raw graphs built from the per-vertex
/// choice lists. Parallel over the first vertex's choices; the result map is
/// ordered, so the output does not depend on scheduling.
fn enumerate(
    sinks: usize,
    trident: Option<usize>,
    per_vertex: &[Vec<Vec<u8>>],
) -> BTreeMap<FormalityGraph, i8> {
    if per_vertex.is_empty() {
        let mut map = BTreeMap::new();
        map.insert(FormalityGraph::edgeless(sinks), 1);
        return map;
    }
    let rest = &per_vertex[1..];
    per_vertex[0]
        .par_iter()
        .map(|first| {
            let mut found = BTreeMap::new();
            let mut idx = vec![0usize; rest.len()];
            loop {
                let mut targets = first.clone();
                for (k, &i) in idx.iter().enumerate() {
                    targets.extend_from_slice(&rest[k][i]);
                }
                let c = canonical_form(&FormalityGraph::from_raw(sinks, trident, targets));
                found.entry(c.graph).or_insert(c.sign);
                // odometer
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return found;
                    }
                    idx[k] += 1;
                    if idx[k] < rest[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        })
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// All pairwise non-isomorphic nonzero Kontsevich graphs on `sinks` ground
/// and `aerial` aerial vertices, optionally restricted to aerial in-degree
/// at most `in_degree_cap`. Sorted by canonical encoding.
pub fn generate_kontsevich_graphs(
    sinks: usize,
    aerial: usize,
    in_degree_cap: Option<usize>,
) -> Vec<FormalityGraph> {
    let v = sinks + aerial;
    let per_vertex: Vec<_> = (0..aerial).map(|i| choices(v, sinks + i, 2)).collect();
    enumerate(sinks, None, &per_vertex)
        .into_iter()
        .filter(|(_, sign)| *sign != 0)
        .map(|(g, _)| g)
        .filter(|g| match in_degree_cap {
            Some(cap) => g.aerial_in_degree_bounds().0 <= cap,
            None => true,
        })
        .collect()
}

fn leibniz_raw(sinks: usize, aerial: usize) -> BTreeMap<FormalityGraph, i8> {
    assert!(aerial >= 1, "a Leibniz graph needs its trident");
    let v = sinks + aerial;
    let mut per_vertex = vec![choices(v, sinks, 3)];
    per_vertex.extend((1..aerial).map(|i| choices(v, sinks + i, 2)));
    enumerate(sinks, Some(0), &per_vertex)
}

/// All admissible Leibniz graphs with one trident and `aerial - 1` wedges,
/// after the requested filters. Sorted by canonical encoding.
pub fn generate_leibniz_graphs(
    sinks: usize,
    aerial: usize,
    filters: LeibnizFilters,
) -> Vec<FormalityGraph> {
    leibniz_raw(sinks, aerial)
        .into_iter()
        .filter(|(g, sign)| {
            (!filters.nonzero || *sign != 0)
                && (!filters.all_sinks_hit || g.all_sinks_hit())
                && (!filters.affine || g.is_affine())
        })
        .map(|(g, _)| g)
        .collect()
}

/// Counts after each cumulative filter stage: generated, nonzero, and
/// nonzero with every sink hit.
pub fn leibniz_census(sinks: usize, aerial: usize) -> LeibnizCensus {
    let all = leibniz_raw(sinks, aerial);
    let nonzero: Vec<_> = all.iter().filter(|(_, s)| **s != 0).collect();
    LeibnizCensus {
        generated: all.len(),
        nonzero: nonzero.len(),
        all_sinks_hit: nonzero.iter().filter(|(g, _)| g.all_sinks_hit()).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_kontsevich_sets() {
        assert_eq!(
            generate_kontsevich_graphs(2, 1, None),
            vec![FormalityGraph::wedge()]
        );
        assert_eq!(
            generate_kontsevich_graphs(2, 0, None),
            vec![FormalityGraph::edgeless(2)]
        );
    }

    #[test]
    fn leibniz_table_counts() {
        let c1 = leibniz_census(3, 1);
        assert_eq!((c1.generated, c1.nonzero, c1.all_sinks_hit), (1, 1, 1));
        let c2 = leibniz_census(3, 2);
        assert_eq!((c2.generated, c2.nonzero, c2.all_sinks_hit), (24, 24, 15));
        let c3 = leibniz_census(3, 3);
        assert_eq!(
            (c3.generated, c3.nonzero, c3.all_sinks_hit),
            (520, 490, 301)
        );
    }

    #[test]
    fn leibniz_edge_count() {
        for g in generate_leibniz_graphs(3, 3, LeibnizFilters::default()) {
            assert_eq!(g.edge_count(), 2 * 4 - 1);
            assert_eq!(g.trident(), Some(0));
        }
    }

    #[test]
    fn affine_filter_bounds() {
        let f = LeibnizFilters {
            affine: true,
            ..Default::default()
        };
        for g in generate_leibniz_graphs(3, 3, f) {
            let (w, t) = g.aerial_in_degree_bounds();
            assert!(w <= 1 && t <= 2);
        }
        for g in generate_kontsevich_graphs(2, 3, Some(1)) {
            assert!(g.aerial_in_degree_bounds().0 <= 1);
        }
    }
}
