//! Evaluates graph series on explicit polynomial bivectors.

use kgs::oracle::{evaluate_series, Arg, Poly, PolyBivector};
use kgs::series::{associator, solve_star_through, StarProduct};
use kgs::Mode;

fn main() {
    let so3 = PolyBivector::so3();
    let x = |i| Poly::var(3, i);
    let args = [Arg::Poly(x(0)), Arg::Poly(x(1))];
    println!("x1 * x2 through the bracket on so(3):");
    for ((n, e), v) in evaluate_series(&StarProduct::first_order().series, &so3, &args).unwrap() {
        println!("  h^{n} z^{e}: {v}");
    }

    let star = solve_star_through(2, Mode::Full).unwrap();
    let f = Poly::parse("x1^2", 3).unwrap();
    let g = Poly::parse("x2*x3", 3).unwrap();
    println!("x1^2 * x2*x3 through second order on so(3):");
    for ((n, e), v) in evaluate_series(&star.series, &so3, &[Arg::Poly(f), Arg::Poly(g)]).unwrap() {
        println!("  h^{n} z^{e}: {v}");
    }

    let assoc = associator(&star, 2).unwrap();
    for p in [("so(3)", so3), ("P0", PolyBivector::p0())] {
        let v = evaluate_series(&assoc, &p.1, &vec![Arg::Symbol; 3]).unwrap();
        println!("associator symbol on {}: {} nonzero orders", p.0, v.len());
    }
}
