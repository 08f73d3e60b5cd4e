//! Orbits of residues mod p and per-prime vanishing steps.
//!
//! For a map u and start r, `m_p` is the least m >= 1 with
//! u^(m)(r) = 0 mod p. Every orbit mod p is eventually periodic with
//! preperiod + period <= p, so each per-prime question is decided by a
//! bounded walk: a zero either appears within preperiod + period steps or
//! never. A prime with no such m is a witness that the map is not weakly
//! locally nilpotent at r outside the excluded set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::numtheory::{cached_primes, is_prime, PrimeSupport};
use crate::polynomial::{horner_mod, Polynomial};
use crate::{Error, Result};

/// Mod-p orbit summary for one prime. `preperiod` and `period` describe
/// the rho shape of the orbit of `r` mod p; `m_p` is the least m >= 1
/// with u^(m)(r) = 0 mod p, when one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModPResult {
    pub p: u64,
    pub m_p: Option<u64>,
    pub preperiod: u64,
    pub period: u64,
}

struct ReducedMap {
    coeffs: Vec<u64>,
    p: u64,
}

impl ReducedMap {
    fn new(u: &Polynomial, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        if u.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        Ok(ReducedMap {
            coeffs: u.coeffs_mod(p),
            p,
        })
    }

    fn step(&self, x: u64) -> u64 {
        horner_mod(&self.coeffs, x, self.p)
    }

    fn start(&self, r: &BigInt) -> u64 {
        r.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue below p")
    }

    /// Linear with unit slope mod p: the map permutes residues, so the
    /// orbit is purely periodic and one loop around the cycle sees every
    /// reachable value.
    fn is_permutation(&self) -> bool {
        self.coeffs.len() == 2 && self.coeffs[1] % self.p != 0
    }
}

/// Decide m_p exactly, along with the orbit's preperiod and period.
pub fn m_p(u: &Polynomial, r: &BigInt, p: u64) -> Result<ModPResult> {
    let map = ReducedMap::new(u, p)?;
    let x0 = map.start(r);

    if map.is_permutation() {
        // purely periodic: walk once around the cycle of x0
        let mut x = x0;
        let mut zero_at = None;
        let mut step = 0u64;
        loop {
            x = map.step(x);
            step += 1;
            if x == 0 && zero_at.is_none() {
                zero_at = Some(step);
            }
            if x == x0 {
                break;
            }
            debug_assert!(step <= p, "cycle longer than residue count");
        }
        return Ok(ModPResult {
            p,
            m_p: zero_at,
            preperiod: 0,
            period: step,
        });
    }

    let (preperiod, period) = brent_cycle(&map, x0);
    debug_assert!(preperiod + period <= p);

    // every orbit position with index >= 1 appears among steps
    // 1 ..= preperiod + period, the last of which closes the cycle
    let mut x = x0;
    let mut zero_at = None;
    for step in 1..=(preperiod + period) {
        x = map.step(x);
        if x == 0 {
            zero_at = Some(step);
            break;
        }
    }
    Ok(ModPResult {
        p,
        m_p: zero_at,
        preperiod,
        period,
    })
}

/// Brent's cycle detection on the orbit of x0: returns (preperiod, period).
fn brent_cycle(map: &ReducedMap, x0: u64) -> (u64, u64) {
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = x0;
    let mut hare = map.step(x0);
    while tortoise != hare {
        if power == lam {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = map.step(hare);
        lam += 1;
    }
    let mut hare = x0;
    for _ in 0..lam {
        hare = map.step(hare);
    }
    let mut tortoise = x0;
    let mut mu = 0u64;
    while tortoise != hare {
        tortoise = map.step(tortoise);
        hare = map.step(hare);
        mu += 1;
    }
    (mu, lam)
}

/// Cheap existence probe for m_p: a single forward walk, stopping at the
/// first zero, at a return to the start, or after p steps (by which point
/// every reachable zero would have appeared).
pub fn m_p_exists(u: &Polynomial, r: &BigInt, p: u64) -> Result<bool> {
    let map = ReducedMap::new(u, p)?;
    let x0 = map.start(r);
    let mut x = x0;
    for _ in 0..p {
        x = map.step(x);
        if x == 0 {
            return Ok(true);
        }
        if x == x0 {
            return Ok(false);
        }
    }
    Ok(false)
}

/// Outcome of a bounded scan over primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanStatus {
    /// Every scanned prime has an m_p. Evidence for weak local
    /// nilpotency, never proof: the primes beyond the bound are unseen.
    AllFoundUpToBound,
    /// At least one scanned prime has no m_p; `first` is the smallest.
    /// This is a complete disproof certificate.
    WitnessFound { first: u64 },
}

/// Whether a scan outcome settles the membership question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certainty {
    Proved,
    Inconclusive,
}

/// Full per-prime table for `u` at `r` over the primes up to
/// `prime_bound`, skipping the excluded set.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub polynomial: Polynomial,
    pub base_point: BigInt,
    pub excluded: Vec<u64>,
    pub prime_bound: u64,
    pub results: Vec<ModPResult>,
    pub witnesses: Vec<u64>,
    pub status: ScanStatus,
    pub certainty: Certainty,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,m_p,preperiod,period\n");
        for res in &self.results {
            let m = res
                .m_p
                .map(|m| m.to_string())
                .unwrap_or_else(|| "-".to_string());
            out.push_str(&format!(
                "{},{},{},{}\n",
                res.p, m, res.preperiod, res.period
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|res| {
                json!({
                    "p": res.p,
                    "m_p": res.m_p,
                    "preperiod": res.preperiod,
                    "period": res.period,
                })
            })
            .collect();
        let status = match &self.status {
            ScanStatus::AllFoundUpToBound => json!({"kind": "all-found-up-to-bound"}),
            ScanStatus::WitnessFound { first } => {
                json!({"kind": "witness-found", "first": first})
            }
        };
        json!({
            "polynomial": self.polynomial.to_string(),
            "base_point": self.base_point.to_string(),
            "excluded": self.excluded,
            "prime_bound": self.prime_bound,
            "results": results,
            "witnesses": self.witnesses,
            "status": status,
            "certainty": match self.certainty {
                Certainty::Proved => "proved",
                Certainty::Inconclusive => "inconclusive",
            },
        })
    }
}

/// Scan all primes p <= prime_bound outside `excluded`, computing the
/// full m_p table. Primes are processed in parallel; the report is
/// ordered by p and fully deterministic.
pub fn weak_local_scan(
    u: &Polynomial,
    r: &BigInt,
    excluded: &PrimeSupport,
    prime_bound: u64,
) -> Result<ScanReport> {
    if u.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if prime_bound < 2 {
        return Err(Error::EmptyRange { bound: prime_bound });
    }
    let primes = cached_primes(prime_bound);
    let upto = primes.partition_point(|&p| p <= prime_bound);
    let results: Vec<ModPResult> = primes[..upto]
        .par_iter()
        .filter(|&&p| !excluded.contains(p))
        .map(|&p| m_p(u, r, p))
        .collect::<Result<_>>()?;
    let witnesses: Vec<u64> = results
        .iter()
        .filter(|res| res.m_p.is_none())
        .map(|res| res.p)
        .collect();
    let (status, certainty) = match witnesses.first() {
        Some(&first) => (ScanStatus::WitnessFound { first }, Certainty::Proved),
        None => (ScanStatus::AllFoundUpToBound, Certainty::Inconclusive),
    };
    Ok(ScanReport {
        polynomial: u.clone(),
        base_point: r.clone(),
        excluded: excluded.primes().to_vec(),
        prime_bound,
        results,
        witnesses,
        status,
        certainty,
    })
}

/// Smallest prime p <= prime_bound outside `excluded` with no m_p, or
/// None when every scanned prime has one. Uses the existence probe
/// rather than full cycle structure, and stops at the first witness.
pub fn find_witness(
    u: &Polynomial,
    r: &BigInt,
    excluded: &PrimeSupport,
    prime_bound: u64,
) -> Result<Option<u64>> {
    if u.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if prime_bound < 2 {
        return Err(Error::EmptyRange { bound: prime_bound });
    }
    let primes = cached_primes(prime_bound);
    let upto = primes.partition_point(|&p| p <= prime_bound);
    let hit = primes[..upto]
        .par_iter()
        .filter(|&&p| !excluded.contains(p))
        .map(|&p| m_p_exists(u, r, p).map(|found| (p, found)))
        .find_first(|res| matches!(res, Ok((_, false)) | Err(_)));
    match hit {
        Some(Ok((p, _))) => Ok(Some(p)),
        Some(Err(e)) => Err(e),
        None => Ok(None),
    }
}
