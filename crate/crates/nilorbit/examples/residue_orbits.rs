//! The same orbit looks different modulo each prime: eventually periodic
//! with a rho shape, and sometimes a residue hits zero. The first zero
//! step m_p is the quantity everything else in this crate is built on.
//!
//! Run with: cargo run --example residue_orbits

use num_bigint::BigInt;
use num_integer::Integer;

use nilorbit::modp::m_p;
use nilorbit::numtheory::primes_up_to;
use nilorbit::polynomial::Polynomial;

fn residue_walk(u: &Polynomial, r: &BigInt, p: u64) -> Vec<u64> {
    let data = m_p(u, r, p).unwrap();
    let mut x = u64::try_from(r.mod_floor(&BigInt::from(p))).unwrap();
    let mut walk = vec![x];
    for _ in 1..(data.preperiod + data.period) {
        x = u.eval_mod(x, p).unwrap();
        walk.push(x);
    }
    walk
}

fn main() {
    let u = Polynomial::new([-2, 4]);
    let zero = BigInt::from(0);

    println!("{} started at 0, reduced at small primes:", u.pretty());
    for p in primes_up_to(20).unwrap() {
        let data = m_p(&u, &zero, p).unwrap();
        let walk: Vec<String> = residue_walk(&u, &zero, p)
            .iter()
            .map(|v| v.to_string())
            .collect();
        let vanish = match data.m_p {
            Some(m) => format!("m_p = {m}"),
            None => "never zero".to_string(),
        };
        println!(
            "  p = {p:>2}: {} then repeats | preperiod {}, period {} | {}",
            walk.join(" -> "),
            data.preperiod,
            data.period,
            vanish
        );
    }

    // the successor map is the extreme case: the residue orbit walks the
    // whole of Z/p before landing on zero at step p - 1
    let successor = Polynomial::linear(1, 1);
    let one = BigInt::from(1);
    println!("\n{} started at 1:", successor.pretty());
    for p in [5u64, 13, 97] {
        let data = m_p(&successor, &one, p).unwrap();
        println!(
            "  p = {p:>2}: m_p = {} (always p - 1)",
            data.m_p.unwrap()
        );
    }
}
