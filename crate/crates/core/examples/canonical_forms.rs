//! Canonical forms with signs: relabelings agree, swapped edges flip the
//! sign, zero graphs are detected.

use kgs::graph::{canonical_form, FormalityGraph};

fn show(text: &str) {
    let g: FormalityGraph = text.parse().expect("valid graph");
    let c = canonical_form(&g);
    if c.is_zero() {
        println!("{text:<28} is a zero graph");
    } else {
        println!("{text:<28} = {:+} * [{}]", c.sign, c.graph);
    }
}

fn main() {
    // one graph under relabeling and edge swaps
    show("2 2; 0 3 | 0 1");
    show("2 2; 0 1 | 0 2");
    show("2 2; 3 0 | 0 1");
    // Leibniz graphs: the trident moves to aerial index 0
    show("3 2; 0 1 | 1 2 3");
    show("3 2; 1 2 4 | 0 1");
    // a graph with an odd automorphism
    show("2 3; 3 4 | 4 2 | 2 3");
    let g: FormalityGraph = "3 6; 2 7 | 1 8 | 1 3 | 1 2 4 | 0 5 | 0 1".parse().unwrap();
    println!(
        "differential order of a larger Leibniz graph: {:?}",
        g.differential_order()
    );
}
