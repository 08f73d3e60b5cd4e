//! The bundled suites enumerate whole coefficient boxes, classify every
//! polynomial inside, challenge each verdict with independent mod-p
//! evidence, and compare the resulting member sets against direct
//! constructive enumerations of the expected forms.
//!
//! Run with: cargo run --release --example theorem_suites

use nilorbit::verify::{theorem_suite, theorem_suite_with, SuiteOptions, SUITE_NAMES};

fn main() {
    println!("available suites: {}\n", SUITE_NAMES.join(", "));

    // a complete box at base point 1: every verdict exact, member set
    // equal to the template families
    let outcome = theorem_suite("thm4.1").unwrap();
    print!("{}", outcome.summary());

    // randomized identities with a fixed default seed
    let outcome = theorem_suite("fact3.1").unwrap();
    print!("{}", outcome.summary());

    // prime-counting for power-free pairs, at a reduced bound for speed
    let opts = SuiteOptions {
        prime_bound: Some(2_000),
        seed: 7,
    };
    let outcome = theorem_suite_with("lemma3.2-contrapositive", &opts).unwrap();
    print!("{}", outcome.summary());
}
