//! Expands the tripod into Kontsevich graphs, contracts them back, and
//! checks on a non-Poisson bivector that the expansion is the Jacobiator.

use kgs::graph::FormalityGraph;
use kgs::jacobi::{contract_edges, expand_leibniz};
use kgs::oracle::{evaluate_graph, evaluate_series, Arg, Poly, PolyBivector};
use kgs::Mode;

fn main() {
    let tripod = FormalityGraph::tripod();
    let expansion = expand_leibniz(&tripod, Mode::Full);
    println!("{tripod} expands to:");
    for (g, c) in expansion.iter() {
        let back: Vec<String> = contract_edges(g, Mode::Full)
            .iter()
            .map(|l| l.to_string())
            .collect();
        println!("  {c:>3} * [{g}]  contracts to {back:?}");
    }

    let p = PolyBivector::p0();
    let args = vec![Arg::Symbol; 3];
    let direct = evaluate_graph(&tripod, &p, &args).unwrap();
    let expanded = evaluate_series(&expansion, &p, &args).unwrap();
    let value = expanded
        .values()
        .next()
        .cloned()
        .unwrap_or_else(|| Poly::zero(direct.nvars()));
    println!("Jacobiator of P0 is zero: {}", p.jacobiator().is_zero());
    println!(
        "expansion matches the Jacobiator symbol: {}",
        value == direct
    );
    let on_so3 = evaluate_series(&expansion, &PolyBivector::so3(), &args).unwrap();
    println!("expansion vanishes on so(3): {}", on_so3.is_empty());
}
