//! Two exact transport identities cut the classification problem down:
//! mirroring x -> -x carries base point r to -r, and when r divides the
//! constant term, a base change carries r to 1 at the cost of widening
//! the exempt set by the primes of r.
//!
//! Run with: cargo run --example reduction_and_conjugation

use num_bigint::BigInt;

use nilorbit::modp::m_p;
use nilorbit::polynomial::Polynomial;

fn orbit_row(u: &Polynomial, start: i64, steps: u64) -> String {
    let mut x = BigInt::from(start);
    let mut row = vec![x.to_string()];
    for _ in 0..steps {
        x = u.eval(&x);
        row.push(x.to_string());
    }
    row.join(" -> ")
}

fn main() {
    // mirror: v(x) = -u(-x) replays the orbit of -r with all signs flipped
    let u = Polynomial::new([-2, 4]);
    let v = u.conjugate();
    println!("u = {}", u.pretty());
    println!("v = {} (the mirror of u)", v.pretty());
    println!("  orbit of u from  1: {}", orbit_row(&u, 1, 5));
    println!("  orbit of v from -1: {}", orbit_row(&v, -1, 5));

    // per-prime data transports unchanged
    let r = BigInt::from(1);
    for p in [3u64, 5, 7] {
        let here = m_p(&u, &r, p).unwrap();
        let there = m_p(&v, &-&r, p).unwrap();
        println!(
            "  p = {p}: m_p {:?} / {:?}, rho ({}, {}) / ({}, {})",
            here.m_p, there.m_p, here.preperiod, here.period, there.preperiod, there.period
        );
    }

    // base change: with r | u(0), v(x) = u(rx)/r satisfies
    // r * v^(n)(1) = u^(n)(r)
    let u = Polynomial::new([6, 7, 3]);
    let r = BigInt::from(2);
    let v = u.reduce_at(&r).unwrap();
    println!("\nu = {}", u.pretty());
    println!("v = {} (u carried from base point 2 to base point 1)", v.pretty());
    println!("  orbit of u from 2: {}", orbit_row(&u, 2, 4));
    println!("  orbit of v from 1: {}", orbit_row(&v, 1, 4));
    println!("  the first row is exactly 2 times the second, step by step");
}
