//! The classifier answers: does every prime (outside an exempt set) admit
//! a vanishing step for this orbit? Verdicts come from complete
//! closed-form rules wherever those exist, each tagged with the rule that
//! produced it; scanning is the fallback, flagged as such.
//!
//! Run with: cargo run --example classification

use num_bigint::BigInt;

use nilorbit::classify::classify;
use nilorbit::numtheory::PrimeSupport;
use nilorbit::polynomial::Polynomial;

fn show(u: &Polynomial, r: i64, exempt: &[u64]) {
    let excluded = PrimeSupport::new(exempt.iter().copied()).unwrap();
    let c = classify(u, &BigInt::from(r), &excluded).unwrap();
    let a: Vec<String> = exempt.iter().map(|p| p.to_string()).collect();
    println!(
        "{:<14} r = {r:>2}, A = {{{}}}: {:<30} via {}",
        u.pretty(),
        a.join(","),
        format!("{:?}", c.verdict),
        c.provenance
    );
}

fn main() {
    println!("base point 1, nothing exempt:");
    show(&Polynomial::linear(1, 1), 1, &[]);
    show(&Polynomial::linear(1, -1), 1, &[]);
    show(&Polynomial::linear(-2, 4), 1, &[]);
    show(&Polynomial::new([-3, 7, -2]), 1, &[]);
    show(&Polynomial::linear(1, 4), 1, &[]);

    println!("\nexempting 2 changes which maps survive:");
    show(&Polynomial::linear(1, 4), 1, &[2]);
    show(&Polynomial::linear(-2, -1), 1, &[]);
    show(&Polynomial::linear(-2, -1), 1, &[2]);

    println!("\nbase point 0 reads prime support off the coefficients:");
    show(&Polynomial::linear(6, 3), 0, &[]);
    show(&Polynomial::linear(6, 12), 0, &[]);
    show(&Polynomial::new([0, 5, 1]), 0, &[]);

    println!("\ncomposite base points factor through a base change:");
    show(&Polynomial::linear(1, 6), 12, &[]);
    show(&Polynomial::linear(1, -8), 4, &[]);
    show(&Polynomial::linear(-2, -6), 6, &[]);

    println!("\ndegree >= 2 without a zero hit is refuted outright:");
    show(&Polynomial::new([-1, -1, 1]), 2, &[]);
    show(&Polynomial::new([0, 0, 1]), 3, &[2, 3]);
}
