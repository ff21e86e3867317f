//! Leibniz graphs to Kontsevich graphs and back.

use std::collections::BTreeSet;

use crate::coeff::Coefficient;
use crate::graph::{canonical_form, FormalityGraph};
use crate::series::GraphSeries;
use crate::Mode;

/// Replaces the trident by the Jacobiator.
///
/// With trident targets `(a, b, c)`, each cyclic rotation `(x, y, z)` gives a
/// top wedge `u → (x, v)` (keeping the trident's label) over a new lower wedge
/// `v → (y, z)` appended as the last aerial vertex; every edge that hit the
/// trident lands on `u` or on `v`. All `3·2^q` raw graphs carry `+1`. In
/// affine mode graphs outside the affine bounds are dropped.
pub fn expand_leibniz(l: &FormalityGraph, mode: Mode) -> GraphSeries {
    let mut out = GraphSeries::new(l.sinks());
    let one = Coefficient::one();
    for_each_expansion(l, |g| {
        if mode.admits(&g) {
            out.add_graph(&g, &one);
        }
    });
    out
}

/// Raw graphs of the expansion, before canonicalization.
pub(crate) fn for_each_expansion(l: &FormalityGraph, mut emit: impl FnMut(FormalityGraph)) {
    let t = l.trident().expect("expand_leibniz needs a trident");
    let m = l.sinks();
    let n = l.aerial();
    let u = (m + t) as u8;
    let v = (m + n) as u8;
    let abc: Vec<u8> = l.tuple(t).to_vec();
    let incoming: Vec<(usize, usize)> = (0..n)
        .filter(|&i| i != t)
        .flat_map(|i| (0..2).map(move |p| (i, p)))
        .filter(|&(i, p)| l.tuple(i)[p] == u)
        .collect();
    for r in 0..3 {
        let (x, y, z) = (abc[r], abc[(r + 1) % 3], abc[(r + 2) % 3]);
        for mask in 0u32..(1 << incoming.len()) {
            let mut tuples: Vec<[u8; 2]> = (0..n)
                .map(|i| {
                    if i == t {
                        [x, v]
                    } else {
                        [l.tuple(i)[0], l.tuple(i)[1]]
                    }
                })
                .collect();
            for (bit, &(i, p)) in incoming.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    tuples[i][p] = v;
                }
            }
            tuples.push([y, z]);
            let targets: Vec<u8> = tuples.into_iter().flatten().collect();
            emit(FormalityGraph::from_raw(m, None, targets));
        }
    }
}

/// Leibniz graphs obtained by contracting one aerial-to-aerial edge.
///
/// The edge `u → v` merges into a trident at `u` with targets (the other
/// target of `u`, then the targets of `v`). Results with a tadpole, a double
/// edge or repeated trident targets are rejected; zero graphs are dropped.
/// In affine mode only graphs within the affine bounds are kept.
pub fn contract_edges(k: &FormalityGraph, mode: Mode) -> BTreeSet<FormalityGraph> {
    assert!(k.is_kontsevich(), "contract_edges needs a Kontsevich graph");
    let m = k.sinks();
    let n = k.aerial();
    let mut out = BTreeSet::new();
    for ui in 0..n {
        let u = m + ui;
        let tu = k.tuple(ui);
        for p in 0..2 {
            let v = tu[p] as usize;
            if v < m {
                continue;
            }
            let vi = v - m;
            let tv = k.tuple(vi);
            let other = tu[1 - p] as usize;
            if tv.contains(&(u as u8)) || tv.contains(&(other as u8)) {
                continue;
            }
            // relabel: v disappears, edges into v go to u
            let relabel = |x: usize| -> u8 {
                let x = if x == v { u } else { x };
                (if x > v { x - 1 } else { x }) as u8
            };
            let mut targets = Vec::with_capacity(2 * n - 1);
            let mut trident = 0;
            let mut ok = true;
            for wi in 0..n {
                if wi == vi {
                    continue;
                }
                if wi == ui {
                    trident = if ui > vi { ui - 1 } else { ui };
                    targets.push(relabel(other));
                    targets.push(relabel(tv[0] as usize));
                    targets.push(relabel(tv[1] as usize));
                } else {
                    let tw = k.tuple(wi);
                    let (a, b) = (relabel(tw[0] as usize), relabel(tw[1] as usize));
                    if a == b {
                        ok = false;
                        break;
                    }
                    targets.push(a);
                    targets.push(b);
                }
            }
            if !ok {
                continue;
            }
            let g = FormalityGraph::from_raw(m, Some(trident), targets);
            let c = canonical_form(&g);
            if c.sign != 0 && mode.admits(&c.graph) {
                out.insert(c.graph);
            }
        }
    }
    out
}
