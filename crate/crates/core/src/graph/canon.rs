//! Signed canonical forms of Formality graphs.
//!
//! Sinks are individually colored, the trident has its own color class and
//! wedges share one. Colors are refined to an equitable partition and every
//! non-discrete partition is split by individualizing each vertex of its
//! first non-singleton cell. Each leaf of that search tree is a relabeling;
//! the canonical form is the leaf whose sorted tuple encoding is
//! lexicographically smallest. Leaves with the same encoding differ by an
//! automorphism, so two of them with opposite tuple parity prove the graph is
//! a zero graph.

use super::{sort_parity, FormalityGraph};

/// A canonical representative together with the sign relating the input
/// graph's operator to it: `input = sign · graph`. `sign == 0` marks a zero
/// graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedCanonical {
    pub graph: FormalityGraph,
    pub sign: i8,
}

impl SignedCanonical {
    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

pub fn canonical_form(g: &FormalityGraph) -> SignedCanonical {
    let m = g.sinks();
    let n = g.aerial();
    if n == 0 {
        return SignedCanonical {
            graph: g.clone(),
            sign: 1,
        };
    }
    let v = m + n;
    let mut out = vec![Vec::new(); v];
    let mut inn = vec![Vec::new(); v];
    for (s, t) in g.edges() {
        out[s].push(t);
        inn[t].push(s);
    }
    let wedge_color = if g.trident().is_some() { m + 1 } else { m };
    let mut colors: Vec<u32> = (0..v)
        .map(|x| {
            if x < m {
                x as u32
            } else if g.trident() == Some(x - m) {
                m as u32
            } else {
                wedge_color as u32
            }
        })
        .collect();

    let mut search = Search {
        g,
        out,
        inn,
        best: None,
        zero: false,
    };
    search.refine(&mut colors);
    search.descend(colors);

    let (targets, sign) = search.best.expect("search visits at least one leaf");
    SignedCanonical {
        graph: FormalityGraph::from_raw(m, g.trident().map(|_| 0), targets),
        sign: if search.zero { 0 } else { sign },
    }
}

struct Search<'a> {
    g: &'a FormalityGraph,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    best: Option<(Vec<u8>, i8)>,
    zero: bool,
}

impl Search<'_> {
    fn refine(&self, colors: &mut [u32]) {
        let v = colors.len();
        let mut classes = count_classes(colors);
        let mut order: Vec<usize> = (0..v).collect();
        loop {
            let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..v)
                .map(|x| {
                    let mut o: Vec<u32> = self.out[x].iter().map(|&y| colors[y]).collect();
                    let mut i: Vec<u32> = self.inn[x].iter().map(|&y| colors[y]).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    (colors[x], o, i)
                })
                .collect();
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut rank = 0u32;
            for k in 0..v {
                if k > 0 && sigs[order[k]] != sigs[order[k - 1]] {
                    rank += 1;
                }
                colors[order[k]] = rank;
            }
            let now = rank as usize + 1;
            if now == classes {
                break;
            }
            classes = now;
        }
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let v = colors.len();
        let mut sizes = vec![0usize; v];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let Some(cell) = sizes.iter().position(|&s| s > 1) else {
            self.leaf(&colors);
            return;
        };
        let cell = cell as u32;
        for pick in 0..v {
            if colors[pick] != cell {
                continue;
            }
            let mut next = colors.clone();
            for (w, c) in next.iter_mut().enumerate() {
                if *c > cell || (*c == cell && w != pick) {
                    *c += 1;
                }
            }
            self.refine(&mut next);
            self.descend(next);
        }
    }

    fn leaf(&mut self, labels: &[u32]) {
        let m = self.g.sinks();
        let n = self.g.aerial();
        let mut by_label = vec![0usize; n];
        for x in m..m + n {
            by_label[labels[x] as usize - m] = x;
        }
        let mut targets = Vec::with_capacity(self.g.edge_count());
        let mut sign = 1i8;
        for &x in &by_label {
            let start = targets.len();
            targets.extend(self.out[x].iter().map(|&y| labels[y] as u8));
            sign *= sort_parity(&mut targets[start..]);
        }
        match &self.best {
            Some((best, best_sign)) => match targets.cmp(best) {
                std::cmp::Ordering::Less => self.best = Some((targets, sign)),
                std::cmp::Ordering::Equal => {
                    if sign != *best_sign {
                        self.zero = true;
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
            None => self.best = Some((targets, sign)),
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}
