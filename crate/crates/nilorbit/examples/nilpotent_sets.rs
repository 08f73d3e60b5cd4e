//! Fix the map and vary the base point: which starting values hit zero
//! exactly, and which ones keep vanishing somewhere modulo every prime?
//! The first set is decided exactly; the second combines exact rules with
//! scan-backed candidates, each flagged with its certainty.
//!
//! Run with: cargo run --example nilpotent_sets

use nilorbit::polynomial::Polynomial;
use nilorbit::verify::scan_point_sets;

fn main() {
    let window = 10;
    let bound = 1_000;
    for u in [
        Polynomial::linear(1, -1),
        Polynomial::new([0, 0, 1]),
        Polynomial::linear(2, -2),
        Polynomial::linear(3, -6),
        Polynomial::new([-2, 4]),
    ] {
        let scan = scan_point_sets(&u, window, bound).unwrap();
        println!("{}", scan.summary());
    }

    println!();
    println!("every zero-hitting point is also a candidate; a trailing '?'");
    println!("marks scan-backed candidates outside the exact rules");
}
