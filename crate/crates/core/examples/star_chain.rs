//! Builds a star product order by order, computes its associator and
//! factors every component through Leibniz graphs.
//!
//! cargo run --release --example star_chain -- 3

use kgs::jacobi::{factorize_series, FactorizeOptions};
use kgs::series::{associator, solve_star_through, write_star_product};
use kgs::Mode;

fn main() {
    env_logger::init();
    let k: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let star = solve_star_through(k, Mode::Full).expect("solvable through this order");
    print!("{}", write_star_product(&star.truncate(2)));
    for n in 0..=k {
        println!(
            "# order {n}: {} graphs in the star product",
            star.series.order(n).len()
        );
    }

    let assoc = associator(&star, k).unwrap();
    for n in 2..=k {
        println!(
            "# order {n}: {} graphs in the associator",
            assoc.order(n).len()
        );
    }
    let report = factorize_series(&assoc, k, &FactorizeOptions::default());
    print!("{}", report.log_text());
    println!("all components factor: {}", report.success());
}
