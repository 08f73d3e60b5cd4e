//! Sweep every prime up to a bound and ask each one: does some iterate
//! vanish there? A single prime answering "no" is a complete refutation
//! certificate; all primes answering "yes" is evidence bounded by the
//! sweep, never proof.
//!
//! Run with: cargo run --example scan_report

use num_bigint::BigInt;

use nilorbit::modp::{find_witness, weak_local_scan, Certainty, ScanStatus};
use nilorbit::numtheory::PrimeSupport;
use nilorbit::polynomial::Polynomial;

fn describe(u: &Polynomial, r: i64, bound: u64) {
    let base = BigInt::from(r);
    let empty = PrimeSupport::empty();
    let report = weak_local_scan(u, &base, &empty, bound).unwrap();
    println!("{} at r = {r}, primes up to {bound}:", u.pretty());
    match report.status {
        ScanStatus::WitnessFound { first } => {
            println!("  witness p = {first}: no iterate ever vanishes there");
        }
        ScanStatus::AllFoundUpToBound => {
            println!("  every scanned prime admits a vanishing step");
        }
    }
    println!(
        "  certainty: {}",
        match report.certainty {
            Certainty::Proved => "proved (the witness settles it)",
            Certainty::Inconclusive => "inconclusive (primes beyond the bound are unseen)",
        }
    );
    println!("  first rows of the table:");
    for line in report.to_csv().lines().take(6) {
        println!("    {line}");
    }
    println!();
}

fn main() {
    // refuted: p = 5 admits no vanishing step
    describe(&Polynomial::new([-2, 4]), 1, 100);

    // the successor map survives every sweep; only the bound stops it
    describe(&Polynomial::linear(1, 1), 1, 100);

    // the existence probe answers faster when only the witness matters
    let u = Polynomial::new([-2, 4]);
    let first = find_witness(&u, &BigInt::from(1), &PrimeSupport::empty(), 100).unwrap();
    println!("find_witness on {} at r = 1: {first:?}", u.pretty());

    // exempting the witness prime pushes the search to the next one
    let exempt = PrimeSupport::new([5]).unwrap();
    let next = find_witness(&u, &BigInt::from(1), &exempt, 100).unwrap();
    println!("same search with 5 exempt: {next:?}");
}
