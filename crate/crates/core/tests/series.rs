mod common;

use kgs::graph::FormalityGraph;
use kgs::series::{
    associator, load_series, load_star_product, write_series, write_star_product, GraphSeries,
    StarProduct,
};
use kgs::Mode;

#[test]
fn insert_obeys_the_leibniz_rule() {
    common::checks::insert_leibniz_rule().unwrap();
}

#[test]
fn first_order_associator_is_empty() {
    let assoc = associator(&StarProduct::first_order(), 1).unwrap();
    assert!(assoc.order(0).is_empty());
    assert!(assoc.order(1).is_empty());
}

#[test]
fn star_files_round_trip() {
    let star = kgs::series::solve_star_through(2, Mode::Full).unwrap();
    let text = write_star_product(&star);
    assert_eq!(load_star_product(&text).unwrap(), star);
    let assoc = associator(&star, 2).unwrap();
    assert_eq!(load_series(&write_series(&assoc)).unwrap(), assoc);
}

#[test]
fn series_arithmetic_cancels() {
    let star = kgs::series::solve_star_through(2, Mode::Full).unwrap();
    let mut s = star.series.clone();
    s.sub_series(&star.series);
    assert!(s.is_empty());
    let mut t = GraphSeries::new(2);
    let g: FormalityGraph = "2 2; 0 1 | 0 1".parse().unwrap();
    let swapped: FormalityGraph = "2 2; 1 0 | 0 1".parse().unwrap();
    t.add_graph(&g, &kgs::coeff::Coefficient::one());
    t.add_graph(&swapped, &kgs::coeff::Coefficient::one());
    assert!(t.is_empty());
}
