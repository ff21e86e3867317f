//! Writes a factorization certificate, reads it back and verifies it, then
//! shows that a tampered copy is rejected.

use kgs::jacobi::{factorize_series, Certificate, FactorizeOptions};
use kgs::pipeline::{cmd_verify, series_text};
use kgs::series::{associator, solve_star_through};
use kgs::Mode;

fn main() {
    let star = solve_star_through(3, Mode::Full).unwrap();
    let assoc = associator(&star, 3).unwrap();
    let target = series_text(&assoc);
    let report = factorize_series(&assoc, 3, &FactorizeOptions::default());

    let cert = report
        .certificates()
        .next()
        .expect("at least one component");
    let text = cert.to_text();
    print!("{text}");
    let verdict = cmd_verify(&text, &target, Mode::Full, &[]).unwrap();
    print!("{}", verdict.text);

    let mut tampered = Certificate::parse(&text).unwrap();
    tampered.terms[0].1 = -&tampered.terms[0].1;
    let verdict = cmd_verify(&tampered.to_text(), &target, Mode::Full, &[]).unwrap();
    print!("tampered copy:\n{}", verdict.text);
}
