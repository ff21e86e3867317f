//! Counts admissible Leibniz graphs and lists the small Kontsevich sets.
//!
//! cargo run --example generate_graphs -- 3

use kgs::graph::{
    generate_kontsevich_graphs, generate_leibniz_graphs, leibniz_census, LeibnizFilters,
};

fn main() {
    let max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    println!("Leibniz graphs on 3 sinks (generated / nonzero / all sinks hit / affine)");
    for n in 1..=max {
        let c = leibniz_census(3, n);
        let affine = generate_leibniz_graphs(
            3,
            n,
            LeibnizFilters {
                nonzero: true,
                all_sinks_hit: true,
                affine: true,
            },
        );
        println!(
            "  {n} aerial: {} / {} / {} / {}",
            c.generated,
            c.nonzero,
            c.all_sinks_hit,
            affine.len()
        );
    }
    for n in 0..=2 {
        let graphs = generate_kontsevich_graphs(2, n, None);
        println!(
            "Kontsevich graphs on 2 sinks with {n} aerial vertices: {}",
            graphs.len()
        );
        for g in graphs {
            println!("  {g}");
        }
    }
}
