//! Checks against external weight data. Each test needs `KGS_FIXTURES` to
//! name a directory holding the listed file and prints `SKIP` otherwise.

use std::path::PathBuf;

use kgs::graph::{canonical_form, FormalityGraph};
use kgs::jacobi::{factorize_series, layer_closure, ClosureOptions, FactorizeOptions};
use kgs::pipeline::{
    certificate_file_name, cmd_reduce, cmd_verify, fixtures_dir, read_file, series_text,
};
use kgs::series::{associator, load_star_product, split_by_tridiff};
use kgs::Mode;

fn fixture(name: &str) -> Option<PathBuf> {
    let path = fixtures_dir()?.join(name);
    if path.is_file() {
        Some(path)
    } else {
        None
    }
}

macro_rules! require {
    ($name:expr) => {
        match fixture($name) {
            Some(p) => p,
            None => {
                println!("SKIP: fixture {} not available", $name);
                return;
            }
        }
    };
}

/// The layer-1 witness for `(2, 4, 2)`: trident at 6.
const L1: &str = "3 6; 2 7 | 1 8 | 1 3 | 1 2 4 | 0 5 | 0 1";

#[test]
fn witness_graph_is_well_formed() {
    let l1: FormalityGraph = L1.parse().unwrap();
    assert!(l1.is_leibniz() && l1.is_affine());
    assert_eq!(l1.differential_order(), vec![2, 4, 2]);
    assert!(!canonical_form(&l1).is_zero());
}

#[test]
fn genuine_fourth_order() {
    let path = require!("star4.txt");
    let star = load_star_product(&read_file(&path).unwrap()).unwrap();
    assert_eq!(star.order, 4);
    let assoc = associator(&star, 4).unwrap();
    let counts: Vec<usize> = (2..=4).map(|n| assoc.order(n).len()).collect();
    assert_eq!(counts, [3, 39, 740]);
    let report = factorize_series(
        &assoc,
        4,
        &FactorizeOptions {
            closure: ClosureOptions {
                max_layers: 0,
                mode: Mode::Full,
            },
            ..Default::default()
        },
    );
    assert!(report.success());
    let target = series_text(&assoc);
    for cert in report.certificates() {
        let v = cmd_verify(&cert.to_text(), &target, Mode::Full, &[]).unwrap();
        assert!(v.check.passed(), "{}", certificate_file_name(cert));
    }
}

#[test]
#[ignore = "hours of compute"]
fn genuine_sixth_order() {
    let path = require!("star6.txt");
    let star = load_star_product(&read_file(&path).unwrap()).unwrap();
    let assoc = associator(&star, 6).unwrap();
    assert_eq!(assoc.order(6).len(), 290305);
    assert_eq!(split_by_tridiff(&assoc, 6).len(), 105);
}

#[test]
#[ignore = "hours of compute"]
fn affine_seventh_order() {
    let path = require!("star7-affine.txt");
    let star = load_star_product(&read_file(&path).unwrap())
        .unwrap()
        .restrict(Mode::Affine);
    assert_eq!(star.series.len(), 1423);
    let assoc = associator(&star, 7).unwrap().restrict(Mode::Affine);
    let components = split_by_tridiff(&assoc, 7);
    assert_eq!(components.len(), 161);
    let opts = ClosureOptions {
        max_layers: 1,
        mode: Mode::Affine,
    };
    let expected = [
        (vec![2, 3, 3], 2294, 3584),
        (vec![3, 2, 3], 2331, 3603),
        (vec![3, 3, 2], 2294, 3584),
        (vec![2, 4, 2], 1246, 2041),
    ];
    let l1 = canonical_form(&L1.parse().unwrap()).graph;
    let mut exceptional = Vec::new();
    for c in &components {
        let closure = layer_closure(c, &opts);
        assert!(closure.log.status, "{}", c.label());
        if closure.log.layers_used() == 1 {
            exceptional.push(c.order.clone());
            let (_, k, l) = expected.iter().find(|(o, _, _)| *o == c.order).unwrap();
            assert_eq!(closure.log.target_size, *k);
            assert_eq!(closure.log.steps[0].0, *l);
            if c.order == [2, 4, 2] {
                assert!(!closure.layers[0].leibniz_set.contains(&l1));
                assert!(closure.layers[1].leibniz_set.contains(&l1));
            }
        }
    }
    exceptional.sort();
    let mut want: Vec<_> = expected.iter().map(|(o, _, _)| o.clone()).collect();
    want.sort();
    assert_eq!(exceptional, want);
}

#[test]
#[ignore = "hours of compute"]
fn affine_seventh_order_reduction() {
    let path = require!("star7-affine.txt");
    let text = read_file(&path).unwrap();
    let r = cmd_reduce(
        &text,
        1,
        &ClosureOptions {
            max_layers: 1,
            mode: Mode::Affine,
        },
    )
    .unwrap();
    assert!(r.status);
    assert_eq!(r.reduced.series.len(), 326);
}
