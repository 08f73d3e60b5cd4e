//! How integer orbits resolve: a zero hit, a cycle, a divergence, and a
//! linear orbit that outlives its step budget yet still gets an exact
//! answer through the closed form.
//!
//! Run with: cargo run --example orbit_tour

use num_bigint::BigInt;

use nilorbit::orbits::{escape_bound, nilpotency_index, orbit, OrbitOutcome};
use nilorbit::polynomial::Polynomial;

fn show(u: &Polynomial, r: i64) {
    let base = BigInt::from(r);
    let outcome = orbit(u, &base, 50).unwrap();
    let mut steps = vec![base.to_string()];
    steps.extend(outcome.trajectory().iter().map(|x| x.to_string()));
    println!("{} starting at {r}", u.pretty());
    println!("  orbit: {}", steps.join(" -> "));
    match outcome {
        OrbitOutcome::HitsZero { index, .. } => {
            println!("  hits zero at step {index}");
        }
        OrbitOutcome::EntersCycle {
            preperiod,
            period,
            cycle,
            ..
        } => {
            let c: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            println!(
                "  enters a {period}-cycle after {preperiod} steps: [{}]",
                c.join(", ")
            );
        }
        OrbitOutcome::Escapes { step, escape_bound, .. } => {
            println!(
                "  diverges: magnitude {escape_bound} reached at step {step}, doubling ever after"
            );
        }
        OrbitOutcome::Exhausted { max_steps, .. } => {
            println!("  unresolved within {max_steps} steps");
        }
    }
    println!();
}

fn main() {
    // 0 -> 2 -> 3 -> 4 -> 5 -> 0: a degree-3 map with a long zero approach
    show(&Polynomial::new([25, -25, 9, -1]), 2);

    // x^2 - 1 from 0 falls straight into the 2-cycle {-1, 0}... almost:
    // 0 -> -1 -> 0 is a zero hit; from 2 it diverges instead
    show(&Polynomial::new([-1, 0, 1]), 0);
    show(&Polynomial::new([-1, 0, 1]), 2);

    // x^2 - x - 1 cycles without ever vanishing
    show(&Polynomial::new([-1, -1, 1]), 2);

    // every degree >= 2 map carries a divergence certificate: beyond this
    // magnitude each step at least doubles
    let u = Polynomial::new([-1, -1, 1]);
    println!(
        "escape bound of {}: {}",
        u.pretty(),
        escape_bound(&u).unwrap()
    );

    // linear orbits have no such certificate, so the step budget can run
    // out -- but the nilpotency question still has an exact closed-form
    // answer far beyond any budget
    let v = Polynomial::linear(1, -1);
    let far = BigInt::parse_bytes(b"1000000000000000000000000000000", 10).unwrap();
    println!(
        "\n{} started at 10^30: budgeted orbit says {:?}, closed form says index {}",
        v.pretty(),
        orbit(&v, &far, 50).unwrap().kind(),
        nilpotency_index(&v, &far).unwrap().unwrap()
    );
}
