//! Exact forward-orbit resolution over the integers.
//!
//! For degree >= 2 every orbit is classified without a step cap: once a
//! value clears the escape bound the orbit grows at least geometrically and
//! can never return, and until then all values live in a finite box where a
//! repeat is forced. Degree-1 orbits are resolved through closed forms, so
//! even astronomically late zero hits are found without stepping.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numtheory::is_power_ratio;
use crate::polynomial::Polynomial;
use crate::{Error, Result};

/// Longest value prefix retained in an outcome, starting at the first
/// iterate. Diagnostic only; decisions never depend on it.
pub const TRAJECTORY_CAP: usize = 64;

/// How a forward orbit resolved. `trajectory` holds the first iterates
/// (the starting point excluded), truncated to [`TRAJECTORY_CAP`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitOutcome {
    /// Some iterate is exactly zero; `index` is the least n >= 1 with
    /// u^(n)(r) = 0.
    HitsZero { index: u64, trajectory: Vec<BigInt> },
    /// The orbit is eventually periodic and never zero: after `preperiod`
    /// steps it enters `cycle`, which then repeats forever.
    EntersCycle {
        preperiod: u64,
        period: u64,
        cycle: Vec<BigInt>,
        trajectory: Vec<BigInt>,
    },
    /// A value at position `step` reached `escape_bound` in absolute
    /// value, beyond which each step at least doubles the magnitude. The
    /// orbit diverges and no later iterate can be zero.
    Escapes {
        step: u64,
        escape_bound: BigInt,
        trajectory: Vec<BigInt>,
    },
    /// Resolution needed more than `max_steps` steps (degree-1 orbits
    /// only; a divergent linear orbit has no finite escape certificate).
    Exhausted { max_steps: u64, trajectory: Vec<BigInt> },
}

impl OrbitOutcome {
    pub fn trajectory(&self) -> &[BigInt] {
        match self {
            OrbitOutcome::HitsZero { trajectory, .. }
            | OrbitOutcome::EntersCycle { trajectory, .. }
            | OrbitOutcome::Escapes { trajectory, .. }
            | OrbitOutcome::Exhausted { trajectory, .. } => trajectory,
        }
    }

    /// Stable tag used by the machine-readable output formats.
    pub fn kind(&self) -> &'static str {
        match self {
            OrbitOutcome::HitsZero { .. } => "hits-zero",
            OrbitOutcome::EntersCycle { .. } => "enters-cycle",
            OrbitOutcome::Escapes { .. } => "escapes",
            OrbitOutcome::Exhausted { .. } => "exhausted",
        }
    }
}

/// Smallest B >= 1 such that |x| >= B forces |u(x)| >= 2|x| under the
/// triangle-inequality estimate
/// |u(x)| >= |x|^(d-1) * (|c_d| * |x| - sum of lower |c_i|).
/// Requires degree >= 2; a linear map admits no such doubling bound.
pub fn escape_bound(u: &Polynomial) -> Result<BigInt> {
    if u.degree() < 2 {
        return Err(Error::WrongDegree {
            required: "degree >= 2",
        });
    }
    let lower: BigInt = u
        .coeffs()
        .iter()
        .take(u.degree())
        .map(|c| c.abs())
        .sum();
    let num = lower + 2;
    let den = u.leading_coeff().abs();
    let b: BigInt = (&num + &den - BigInt::one()) / &den;
    Ok(b.max(BigInt::one()))
}

/// Resolve the forward orbit of `r` under `u`.
///
/// Degree >= 2 ignores `max_steps`: the trichotomy (zero hit, cycle,
/// escape) is decided exactly. Degree 1 resolves through closed forms and
/// reports `Exhausted` when the answer lies beyond `max_steps`.
pub fn orbit(u: &Polynomial, r: &BigInt, max_steps: u64) -> Result<OrbitOutcome> {
    if u.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if u.degree() == 1 {
        let (a, b) = u.as_linear().expect("degree 1");
        return Ok(linear_orbit(u, a, b, r, max_steps));
    }
    let bound = escape_bound(u)?;
    let mut trajectory = Vec::new();
    if r.abs() >= bound {
        return Ok(OrbitOutcome::Escapes {
            step: 0,
            escape_bound: bound,
            trajectory,
        });
    }
    let mut seen: HashMap<BigInt, u64> = HashMap::new();
    let mut values = vec![r.clone()];
    seen.insert(r.clone(), 0);
    let mut x = r.clone();
    let mut n: u64 = 0;
    loop {
        x = u.eval(&x);
        n += 1;
        if trajectory.len() < TRAJECTORY_CAP {
            trajectory.push(x.clone());
        }
        if x.is_zero() {
            return Ok(OrbitOutcome::HitsZero {
                index: n,
                trajectory,
            });
        }
        if x.abs() >= bound {
            return Ok(OrbitOutcome::Escapes {
                step: n,
                escape_bound: bound,
                trajectory,
            });
        }
        if let Some(&j) = seen.get(&x) {
            let period = n - j;
            let cycle = values[j as usize..].to_vec();
            return Ok(OrbitOutcome::EntersCycle {
                preperiod: j,
                period,
                cycle,
                trajectory,
            });
        }
        seen.insert(x.clone(), n);
        values.push(x.clone());
    }
}

/// Least n >= 1 with u^(n)(r) = 0, or None when no iterate vanishes.
/// Exact in all cases: degree >= 2 through the orbit trichotomy, degree 1
/// through closed forms, so indices far beyond any practical step budget
/// (for instance x - 1 started at 10^30) come back instantly.
pub fn nilpotency_index(u: &Polynomial, r: &BigInt) -> Result<Option<BigInt>> {
    if u.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if u.degree() >= 2 {
        return Ok(match orbit(u, r, u64::MAX)? {
            OrbitOutcome::HitsZero { index, .. } => Some(BigInt::from(index)),
            _ => None,
        });
    }
    let (a, b) = u.as_linear().expect("degree 1");
    Ok(linear_zero_index(a, b, r))
}

/// Closed-form zero index of the orbit of `r` under `a*x + b`, `a != 0`.
fn linear_zero_index(a: &BigInt, b: &BigInt, r: &BigInt) -> Option<BigInt> {
    if a.is_one() {
        // translation: u^(n)(r) = r + n*b
        if b.is_zero() {
            return r.is_zero().then(BigInt::one);
        }
        let (q, rem) = (-r).div_rem(b);
        return (rem.is_zero() && q >= BigInt::one()).then_some(q);
    }
    if *a == BigInt::from(-1) {
        // involution up to translation: r -> b - r -> r
        if b == r {
            return Some(BigInt::one());
        }
        return (r.is_zero() && !b.is_zero()).then(|| BigInt::from(2));
    }
    // |a| >= 2: u^(n)(r) = (a^n * g - b) / (a - 1) with g = r(a-1) + b,
    // so a zero hit means a^n * g = b exactly.
    let g = r * (a - BigInt::one()) + b;
    if g.is_zero() {
        // r is a fixed point
        return r.is_zero().then(BigInt::one);
    }
    if b.is_zero() {
        // pure scaling never reaches zero from r != 0
        return None;
    }
    match is_power_ratio(a, b, &g) {
        Ok(Some(k)) if k >= 1 => Some(BigInt::from(k)),
        _ => None,
    }
}

fn linear_orbit(
    u: &Polynomial,
    a: &BigInt,
    b: &BigInt,
    r: &BigInt,
    max_steps: u64,
) -> OrbitOutcome {
    if let Some(index) = linear_zero_index(a, b, r) {
        if index <= BigInt::from(max_steps) {
            let index = index.to_u64().expect("bounded by max_steps");
            return OrbitOutcome::HitsZero {
                index,
                trajectory: linear_prefix(u, r, index),
            };
        }
        return OrbitOutcome::Exhausted {
            max_steps,
            trajectory: linear_prefix(u, r, max_steps),
        };
    }
    // No zero hit. A linear orbit is periodic exactly when a = 1, b = 0
    // (every point fixed), a = -1 (a two-cycle, or a fixed point when
    // b = 2r), or |a| >= 2 with r fixed. Everything else diverges.
    if a.is_one() && b.is_zero() {
        return OrbitOutcome::EntersCycle {
            preperiod: 0,
            period: 1,
            cycle: vec![r.clone()],
            trajectory: vec![r.clone()],
        };
    }
    if *a == BigInt::from(-1) {
        let other = b - r;
        if other == *r {
            return OrbitOutcome::EntersCycle {
                preperiod: 0,
                period: 1,
                cycle: vec![r.clone()],
                trajectory: vec![r.clone()],
            };
        }
        return OrbitOutcome::EntersCycle {
            preperiod: 0,
            period: 2,
            cycle: vec![r.clone(), other.clone()],
            trajectory: vec![other, r.clone()],
        };
    }
    if a.abs() >= BigInt::from(2) && (r * (a - BigInt::one()) + b).is_zero() {
        return OrbitOutcome::EntersCycle {
            preperiod: 0,
            period: 1,
            cycle: vec![r.clone()],
            trajectory: vec![r.clone()],
        };
    }
    OrbitOutcome::Exhausted {
        max_steps,
        trajectory: linear_prefix(u, r, max_steps),
    }
}

/// First min(n, cap) iterate values, by direct stepping.
fn linear_prefix(u: &Polynomial, r: &BigInt, n: u64) -> Vec<BigInt> {
    let take = n.min(TRAJECTORY_CAP as u64);
    let mut out = Vec::with_capacity(take as usize);
    let mut x = r.clone();
    for _ in 0..take {
        x = u.eval(&x);
        out.push(x.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn bis(ns: &[i64]) -> Vec<BigInt> {
        ns.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn escape_bound_fixtures() {
        assert_eq!(escape_bound(&p("-2,0,1")).unwrap(), bi(4)); // x^2 - 2
        assert_eq!(escape_bound(&p("0,0,1")).unwrap(), bi(2)); // x^2
        assert_eq!(escape_bound(&p("-3,7,-2")).unwrap(), bi(6));
        assert!(escape_bound(&p("1,1")).is_err());
        assert!(escape_bound(&p("5")).is_err());
    }

    #[test]
    fn escape_bound_doubles_beyond_itself() {
        for u in [p("-2,0,1"), p("-3,7,-2"), p("25,-25,9,-1"), p("0,0,0,5")] {
            let bnd = escape_bound(&u).unwrap();
            let b = bnd.to_i64().unwrap();
            for x in -(b + 25)..=(b + 25) {
                if bi(x).abs() >= bnd {
                    assert!(
                        u.eval(&bi(x)).abs() >= bi(2 * x).abs(),
                        "u = {u}, x = {x}"
                    );
                }
            }
        }
    }

    #[test]
    fn quadratic_enters_cycle() {
        let u = p("-2,0,1"); // x^2 - 2
        match orbit(&u, &bi(0), 10).unwrap() {
            OrbitOutcome::EntersCycle {
                preperiod,
                period,
                cycle,
                trajectory,
            } => {
                assert_eq!((preperiod, period), (2, 1));
                assert_eq!(cycle, bis(&[2]));
                assert_eq!(trajectory, bis(&[-2, 2, 2]));
            }
            other => panic!("expected cycle, got {other:?}"),
        }
        match orbit(&u, &bi(1), 10).unwrap() {
            OrbitOutcome::EntersCycle {
                preperiod, period, cycle, ..
            } => {
                assert_eq!((preperiod, period), (1, 1));
                assert_eq!(cycle, bis(&[-1]));
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn quadratic_escapes() {
        let u = p("-2,0,1");
        match orbit(&u, &bi(3), 10).unwrap() {
            OrbitOutcome::Escapes {
                step,
                escape_bound,
                trajectory,
            } => {
                assert_eq!(step, 1);
                assert_eq!(escape_bound, bi(4));
                assert_eq!(trajectory, bis(&[7]));
            }
            other => panic!("expected escape, got {other:?}"),
        }
        match orbit(&u, &bi(100), 10).unwrap() {
            OrbitOutcome::Escapes { step, .. } => assert_eq!(step, 0),
            other => panic!("expected escape, got {other:?}"),
        }
    }

    #[test]
    fn cubic_hits_zero() {
        let u = p("25,-25,9,-1"); // -x^3 + 9x^2 - 25x + 25
        match orbit(&u, &bi(2), 100).unwrap() {
            OrbitOutcome::HitsZero { index, trajectory } => {
                assert_eq!(index, 4);
                assert_eq!(trajectory, bis(&[3, 4, 5, 0]));
            }
            other => panic!("expected zero hit, got {other:?}"),
        }
    }

    #[test]
    fn degree_two_and_up_ignores_step_cap() {
        // resolution is exact even with a cap of 1
        let u = p("25,-25,9,-1");
        assert!(matches!(
            orbit(&u, &bi(2), 1).unwrap(),
            OrbitOutcome::HitsZero { index: 4, .. }
        ));
    }

    #[test]
    fn translation_orbits() {
        let u = p("1,1"); // x + 1
        match orbit(&u, &bi(1), 10).unwrap() {
            OrbitOutcome::Exhausted {
                max_steps,
                trajectory,
            } => {
                assert_eq!(max_steps, 10);
                assert_eq!(trajectory, bis(&[2, 3, 4, 5, 6, 7, 8, 9, 10, 11]));
            }
            other => panic!("expected exhausted, got {other:?}"),
        }
        let d = p("-1,1"); // x - 1
        match orbit(&d, &bi(5), 100).unwrap() {
            OrbitOutcome::HitsZero { index, trajectory } => {
                assert_eq!(index, 5);
                assert_eq!(trajectory, bis(&[4, 3, 2, 1, 0]));
            }
            other => panic!("expected zero hit, got {other:?}"),
        }
        assert!(matches!(
            orbit(&d, &bi(5), 3).unwrap(),
            OrbitOutcome::Exhausted { max_steps: 3, .. }
        ));
    }

    #[test]
    fn negation_orbits() {
        let u = p("4,-1"); // -x + 4
        assert!(matches!(
            orbit(&u, &bi(4), 10).unwrap(),
            OrbitOutcome::HitsZero { index: 1, .. }
        ));
        match orbit(&u, &bi(0), 10).unwrap() {
            OrbitOutcome::HitsZero { index, trajectory } => {
                assert_eq!(index, 2);
                assert_eq!(trajectory, bis(&[4, 0]));
            }
            other => panic!("expected zero hit, got {other:?}"),
        }
        match orbit(&u, &bi(1), 10).unwrap() {
            OrbitOutcome::EntersCycle {
                preperiod,
                period,
                cycle,
                trajectory,
            } => {
                assert_eq!((preperiod, period), (0, 2));
                assert_eq!(cycle, bis(&[1, 3]));
                assert_eq!(trajectory, bis(&[3, 1]));
            }
            other => panic!("expected cycle, got {other:?}"),
        }
        // b = 2r pins a fixed point
        let v = p("2,-1"); // -x + 2
        assert!(matches!(
            orbit(&v, &bi(1), 10).unwrap(),
            OrbitOutcome::EntersCycle { preperiod: 0, period: 1, .. }
        ));
    }

    #[test]
    fn scaling_orbits() {
        let u = p("-4,-2"); // -2x - 4
        match orbit(&u, &bi(-1), 10).unwrap() {
            OrbitOutcome::HitsZero { index, trajectory } => {
                assert_eq!(index, 2);
                assert_eq!(trajectory, bis(&[-2, 0]));
            }
            other => panic!("expected zero hit, got {other:?}"),
        }
        // fixed point of -3x + 12
        assert!(matches!(
            orbit(&p("12,-3"), &bi(3), 10).unwrap(),
            OrbitOutcome::EntersCycle { preperiod: 0, period: 1, .. }
        ));
        // pure scaling from a nonzero point diverges
        assert!(matches!(
            orbit(&p("0,2"), &bi(5), 10).unwrap(),
            OrbitOutcome::Exhausted { .. }
        ));
        assert!(matches!(
            orbit(&p("0,2"), &bi(0), 10).unwrap(),
            OrbitOutcome::HitsZero { index: 1, .. }
        ));
        // identity map fixes everything
        assert!(matches!(
            orbit(&p("0,1"), &bi(7), 10).unwrap(),
            OrbitOutcome::EntersCycle { preperiod: 0, period: 1, .. }
        ));
        assert!(matches!(
            orbit(&p("0,1"), &bi(0), 10).unwrap(),
            OrbitOutcome::HitsZero { index: 1, .. }
        ));
    }

    #[test]
    fn constant_maps_are_rejected() {
        assert!(matches!(
            orbit(&p("7"), &bi(0), 10),
            Err(Error::ConstantPolynomial)
        ));
        assert!(nilpotency_index(&p("0"), &bi(0)).is_err());
    }

    #[test]
    fn trajectory_is_capped() {
        match orbit(&p("1,1"), &bi(0), 200).unwrap() {
            OrbitOutcome::Exhausted { trajectory, .. } => {
                assert_eq!(trajectory.len(), TRAJECTORY_CAP);
                assert_eq!(trajectory[0], bi(1));
                assert_eq!(trajectory[63], bi(64));
            }
            other => panic!("expected exhausted, got {other:?}"),
        }
    }

    #[test]
    fn nilpotency_index_fixtures() {
        assert_eq!(
            nilpotency_index(&p("-4,-2"), &bi(-1)).unwrap(),
            Some(bi(2))
        );
        assert_eq!(nilpotency_index(&p("-1,1"), &bi(5)).unwrap(), Some(bi(5)));
        assert_eq!(nilpotency_index(&p("-2,4"), &bi(0)).unwrap(), None);
        assert_eq!(nilpotency_index(&p("1,1"), &bi(1)).unwrap(), None);
        assert_eq!(nilpotency_index(&p("-2,0,1"), &bi(0)).unwrap(), None);
        assert_eq!(
            nilpotency_index(&p("25,-25,9,-1"), &bi(2)).unwrap(),
            Some(bi(4))
        );
        assert_eq!(nilpotency_index(&p("2,-1"), &bi(2)).unwrap(), Some(bi(1)));
        assert_eq!(nilpotency_index(&p("0,-1"), &bi(0)).unwrap(), Some(bi(1)));
        assert_eq!(nilpotency_index(&p("4,-1"), &bi(0)).unwrap(), Some(bi(2)));
        assert_eq!(nilpotency_index(&p("0,1"), &bi(0)).unwrap(), Some(bi(1)));
        assert_eq!(nilpotency_index(&p("0,1"), &bi(3)).unwrap(), None);
    }

    #[test]
    fn nilpotency_index_is_closed_form_for_linears() {
        // x - 1 from 10^30 resolves without stepping
        let r = BigInt::from_str("1000000000000000000000000000000").unwrap();
        assert_eq!(nilpotency_index(&p("-1,1"), &r).unwrap(), Some(r.clone()));
        assert_eq!(nilpotency_index(&p("1,1"), &(-&r)).unwrap(), Some(r));
    }

    #[test]
    fn nilpotency_index_agrees_with_stepping() {
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                if a == 0 {
                    continue;
                }
                let u = Polynomial::linear(a, b);
                for r in -8i64..=8 {
                    let mut expected = None;
                    let mut x = bi(r);
                    for n in 1u64..=50 {
                        x = u.eval(&x);
                        if x.is_zero() {
                            expected = Some(bi(n as i64));
                            break;
                        }
                    }
                    let got = nilpotency_index(&u, &bi(r)).unwrap();
                    // 50 steps decide every |a| >= 1, |b|,|r| <= 8 case:
                    // surviving translation orbits are past zero, others
                    // grow or cycle within that window
                    assert_eq!(got, expected, "a={a} b={b} r={r}");
                }
            }
        }
    }
}
