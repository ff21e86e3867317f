//! Operator composition by grafting, and the associator.

use rayon::prelude::*;

use super::{GraphSeries, SeriesError, StarProduct};
use crate::coeff::Coefficient;
use crate::graph::FormalityGraph;

/// Raw (uncanonicalized) graphs of `outer ∘_slot inner`, one per
/// redistribution of the edges that hit sink `slot`. Non-simple results are
/// skipped.
///
/// Sinks of the result: outer sinks before `slot`, then the inner sinks,
/// then the remaining outer sinks. Aerial vertices: outer first, then inner.
pub(crate) fn insert_raw(
    outer: &FormalityGraph,
    slot: usize,
    inner: &FormalityGraph,
    mut emit: impl FnMut(FormalityGraph),
) -> Result<(), SeriesError> {
    assert!(slot < outer.sinks(), "slot {slot} out of range");
    if outer.trident().is_some() && inner.trident().is_some() {
        return Err(SeriesError::MultipleTridents);
    }
    let (m, n) = (outer.sinks(), outer.aerial());
    let (mi, ni) = (inner.sinks(), inner.aerial());
    let big_m = m + mi - 1;
    let map_outer = |x: usize| -> usize {
        if x < slot {
            x
        } else if x < m {
            x + mi - 1
        } else {
            big_m + (x - m)
        }
    };
    let map_inner = |x: usize| -> usize {
        if x < mi {
            slot + x
        } else {
            big_m + n + (x - mi)
        }
    };
    let trident = outer.trident().or_else(|| inner.trident().map(|t| n + t));

    // Positions in the concatenated outer targets that hit the slot.
    let mut base: Vec<u8> = Vec::with_capacity(outer.edge_count() + inner.edge_count());
    let mut open = Vec::new();
    for &t in outer.raw_targets() {
        let t = t as usize;
        if t == slot {
            open.push(base.len());
            base.push(0);
        } else {
            base.push(map_outer(t) as u8);
        }
    }
    for &t in inner.raw_targets() {
        base.push(map_inner(t as usize) as u8);
    }
    let landing: Vec<u8> = (0..mi + ni).map(|x| map_inner(x) as u8).collect();
    let mut idx = vec![0usize; open.len()];
    loop {
        let mut targets = base.clone();
        for (k, &pos) in open.iter().enumerate() {
            targets[pos] = landing[idx[k]];
        }
        let g = FormalityGraph::from_raw(big_m, trident, targets);
        if is_simple(&g) {
            emit(g);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(());
            }
            idx[k] += 1;
            if idx[k] < landing.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// No repeated target within any out-tuple.
pub(crate) fn is_simple(g: &FormalityGraph) -> bool {
    g.tuples()
        .all(|t| (1..t.len()).all(|i| !t[..i].contains(&t[i])))
}

/// `outer ∘_slot inner` as a canonical series with coefficient +1 per
/// redistribution.
pub fn insert(
    outer: &FormalityGraph,
    slot: usize,
    inner: &FormalityGraph,
) -> Result<GraphSeries, SeriesError> {
    let mut out = GraphSeries::new(outer.sinks() + inner.sinks() - 1);
    let one = Coefficient::one();
    insert_raw(outer, slot, inner, |g| out.add_graph(&g, &one))?;
    Ok(out)
}

/// Bilinear extension of [`insert`] to series.
pub fn insert_series(
    outer: &GraphSeries,
    slot: usize,
    inner: &GraphSeries,
) -> Result<GraphSeries, SeriesError> {
    let sinks = outer.sinks() + inner.sinks() - 1;
    let outer_terms: Vec<_> = outer.iter().collect();
    let parts: Vec<Result<GraphSeries, SeriesError>> = outer_terms
        .par_iter()
        .map(|(g1, c1)| {
            let mut local = GraphSeries::new(sinks);
            for (g2, c2) in inner.iter() {
                let c = *c1 * c2;
                insert_raw(g1, slot, g2, |g| local.add_graph(&g, &c))?;
            }
            Ok(local)
        })
        .collect();
    let mut out = GraphSeries::new(sinks);
    for p in parts {
        out.add_series(&p?);
    }
    Ok(out)
}

/// `(f⋆g)⋆h − f⋆(g⋆h)` through order `k`.
pub fn associator(star: &StarProduct, k: usize) -> Result<GraphSeries, SeriesError> {
    if k > star.order {
        return Err(SeriesError::InsufficientOrder {
            have: star.order,
            need: k,
        });
    }
    let by_order: Vec<GraphSeries> = (0..=k).map(|n| star.series.order(n)).collect();
    let mut out = GraphSeries::new(3);
    for a in 0..=k {
        for b in 0..=k - a {
            let left = insert_series(&by_order[a], 0, &by_order[b])?;
            let right = insert_series(&by_order[a], 1, &by_order[b])?;
            out.add_series(&left);
            out.sub_series(&right);
        }
    }
    if out.z_degree().is_some_and(|d| d >= 2) {
        log::warn!("associator has a coefficient of degree >= 2 in z");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn unit_of_composition() {
        let s = insert(&FormalityGraph::wedge(), 0, &FormalityGraph::edgeless(1)).unwrap();
        assert_eq!(s, GraphSeries::from_graph(&FormalityGraph::wedge()));
    }

    #[test]
    fn wedge_into_wedge_has_three_sites() {
        let mut raw = Vec::new();
        insert_raw(&FormalityGraph::wedge(), 0, &FormalityGraph::wedge(), |g| {
            raw.push(g)
        })
        .unwrap();
        assert_eq!(raw.len(), 3);
        let s = insert(&FormalityGraph::wedge(), 0, &FormalityGraph::wedge()).unwrap();
        assert_eq!(s.sinks(), 3);
        assert_eq!(s.len(), 3);
        assert!(s.contains(
            &crate::graph::canonical_form(&parse_graph("3 2; 4 2 | 0 1").unwrap()).graph
        ));
    }

    #[test]
    fn raw_count_is_landing_power() {
        let outer = parse_graph("2 2; 0 1 | 0 2").unwrap();
        let inner = FormalityGraph::wedge();
        let mut raw = 0;
        insert_raw(&outer, 0, &inner, |_| raw += 1).unwrap();
        assert_eq!(raw, 3usize.pow(2));
    }

    #[test]
    fn first_order_associator_vanishes() {
        let a = associator(&StarProduct::first_order(), 1).unwrap();
        assert!(a.is_empty());
        assert!(associator(&StarProduct::first_order(), 2).is_err());
    }
}
