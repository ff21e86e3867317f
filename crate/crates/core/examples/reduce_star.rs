//! Adds `z` times the expansion of a two-sink Leibniz graph to a star
//! product and removes it again by factoring the `z`-slice.

use kgs::coeff::Coefficient;
use kgs::graph::FormalityGraph;
use kgs::jacobi::{expand_leibniz, reduce_series, ClosureOptions};
use kgs::series::solve_star_through;
use kgs::Mode;

fn main() {
    let star = solve_star_through(3, Mode::Full).unwrap();
    let leibniz: FormalityGraph = "2 2; 0 1 3 | 0 1".parse().unwrap();
    let mut padded = star.clone();
    padded
        .series
        .add_scaled(&expand_leibniz(&leibniz, Mode::Full), &Coefficient::z());
    println!(
        "{} terms, {} with z, before reduction",
        padded.series.len(),
        padded
            .series
            .iter()
            .filter(|(_, c)| c.degree().unwrap_or(0) > 0)
            .count()
    );

    let r = reduce_series(&padded, 1, &ClosureOptions::default());
    for log in &r.logs {
        println!("{log}");
    }
    println!("status: {}", r.status);
    println!("{} terms after reduction", r.reduced.series.len());
    for (g, c) in r.leibniz.iter() {
        println!("removed {c} * [{g}]");
    }
    println!("reduced star equals the original: {}", r.reduced == star);
}
