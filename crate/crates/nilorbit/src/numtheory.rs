//! Primes, factorization, prime supports, and exact power-ratio queries.
//!
//! Everything here is exact integer arithmetic. Primality of machine-sized
//! integers is decided by a Miller-Rabin test with a witness set proven
//! complete for all of `u64`; factorization runs trial division over a
//! shared sieve first and falls back to Brent's cycle-based splitting for
//! large cofactors. None of this is meant for cryptographic-size inputs,
//! but it must not silently fail on an occasional large coefficient.

use std::cmp::Ordering;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Sieve block size; ranges above this are processed segment by segment.
const SEGMENT: u64 = 1 << 20;

/// Trial division stops here; surviving cofactors go to Brent splitting.
const TRIAL_BOUND: u64 = 1_000_000;

// ---------------------------------------------------------------------------
// modular helpers (u64, exact via u128 intermediates)

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `u64`. The witness set 2..=37 is known to
/// be complete below 3.3e24, which covers the whole type.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// sieves

fn simple_sieve(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// All primes in `[2, bound]`, ascending. Errors when the range is empty
/// (`bound < 2`). Ranges beyond one segment are sieved segment-wise so the
/// working set stays bounded.
pub fn primes_up_to(bound: u64) -> Result<Vec<u64>> {
    if bound < 2 {
        return Err(Error::EmptyRange { bound });
    }
    if bound <= SEGMENT {
        return Ok(simple_sieve(bound));
    }
    let root = bound.isqrt();
    let base = simple_sieve(root.max(2));
    let mut primes = simple_sieve(SEGMENT);
    let mut lo = SEGMENT + 1;
    while lo <= bound {
        let hi = lo.saturating_add(SEGMENT - 1).min(bound);
        let mut composite = vec![false; (hi - lo + 1) as usize];
        for &p in &base {
            if p.saturating_mul(p) > hi {
                break;
            }
            let first = ((lo + p - 1) / p).max(p) * p;
            let mut j = first;
            while j <= hi {
                composite[(j - lo) as usize] = true;
                j += p;
            }
        }
        for (i, &c) in composite.iter().enumerate() {
            if !c {
                primes.push(lo + i as u64);
            }
        }
        lo = hi + 1;
    }
    Ok(primes)
}

struct PrimeCache {
    bound: u64,
    primes: std::sync::Arc<Vec<u64>>,
}

static PRIME_CACHE: OnceLock<RwLock<PrimeCache>> = OnceLock::new();

/// Shared, monotonically growing prime table. May hold more primes than
/// requested; callers slice what they need. Purely an internal cache: the
/// public `primes_up_to` stays side-effect free.
pub(crate) fn cached_primes(bound: u64) -> std::sync::Arc<Vec<u64>> {
    let lock = PRIME_CACHE.get_or_init(|| {
        RwLock::new(PrimeCache {
            bound: 0,
            primes: std::sync::Arc::new(Vec::new()),
        })
    });
    {
        let guard = lock.read().expect("prime cache poisoned");
        if guard.bound >= bound {
            return guard.primes.clone();
        }
    }
    let mut guard = lock.write().expect("prime cache poisoned");
    if guard.bound < bound {
        let target = bound.max(1 << 16);
        guard.primes = std::sync::Arc::new(
            primes_up_to(target).expect("target >= 2"),
        );
        guard.bound = target;
    }
    guard.primes.clone()
}

// ---------------------------------------------------------------------------
// factorization

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of an odd
/// composite `n` with no small prime factors.
fn rho_split(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n));
    for c in 1..64u64 {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = 0u64;
        let mut ys = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += batch;
            }
            r <<= 1;
        }
        if g == n {
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho failed on composite {n}");
}

fn factor_u64_into(mut n: u64, out: &mut Vec<(u64, u32)>) {
    if n <= 1 {
        return;
    }
    let primes = cached_primes(TRIAL_BOUND);
    for &p in primes.iter() {
        if p.saturating_mul(p) > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push((n, 1));
        return;
    }
    // no factor <= min(TRIAL_BOUND, sqrt n), so n is a product of two
    // or three large primes; split recursively
    let d = rho_split(n);
    let mut parts = Vec::new();
    factor_u64_into(d, &mut parts);
    factor_u64_into(n / d, &mut parts);
    out.extend(parts);
}

fn merge_factors(mut raw: Vec<(u64, u32)>) -> Vec<(u64, u32)> {
    raw.sort_unstable();
    let mut merged: Vec<(u64, u32)> = Vec::with_capacity(raw.len());
    for (p, e) in raw {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    merged
}

/// Factor a nonzero `u64` into `(prime, exponent)` pairs, ascending.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut raw = Vec::new();
    factor_u64_into(n, &mut raw);
    merge_factors(raw)
}

fn big_is_probable_prime(n: &BigInt) -> bool {
    // Deterministic below ~3.3e24 with this witness set; a strong
    // probable-prime check beyond, which is far past anything the crate
    // is expected to factor.
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigInt::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn big_rho_split(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    for c in 1..64u32 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            if x == y {
                break; // cycle without factor; bump c
            }
            let g = (&x - &y).abs().gcd(n);
            if g > one && &g < n {
                return g;
            }
        }
    }
    unreachable!("rho failed on composite bigint");
}

fn factor_big_into(n: BigInt, out: &mut Vec<(BigInt, u32)>) {
    if let Some(small) = n.to_u64() {
        for (p, e) in factor_u64(small) {
            out.push((BigInt::from(p), e));
        }
        return;
    }
    if big_is_probable_prime(&n) {
        out.push((n, 1));
        return;
    }
    let d = big_rho_split(&n);
    factor_big_into(n.clone() / &d, out);
    factor_big_into(d, out);
}

/// Factor a nonzero integer into `(prime, exponent)` pairs with primes
/// ascending. The sign is discarded; `factorize(&(-1).into())` is empty.
pub fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut m = n.abs();
    let mut raw: Vec<(BigInt, u32)> = Vec::new();
    if m.is_one() {
        return Ok(raw);
    }
    if let Some(small) = m.to_u64() {
        return Ok(factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect());
    }
    // strip small primes first so the recursive splitter only sees the
    // hard cofactor
    let primes = cached_primes(TRIAL_BOUND);
    for &p in primes.iter() {
        let pb = BigInt::from(p);
        if (&m % &pb).is_zero() {
            let mut e = 0u32;
            while (&m % &pb).is_zero() {
                m /= &pb;
                e += 1;
            }
            raw.push((pb, e));
            if m.is_one() {
                break;
            }
            if let Some(small) = m.to_u64() {
                for (q, f) in factor_u64(small) {
                    raw.push((BigInt::from(q), f));
                }
                m = BigInt::one();
                break;
            }
        }
    }
    if !m.is_one() {
        factor_big_into(m, &mut raw);
    }
    raw.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BigInt, u32)> = Vec::with_capacity(raw.len());
    for (p, e) in raw {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(merged)
}

/// Exponent of the prime `p` in `n` (`n` nonzero).
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero() && p >= 2);
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut e = 0u32;
    while (&m % &pb).is_zero() {
        m /= &pb;
        e += 1;
    }
    e
}

// ---------------------------------------------------------------------------
// prime supports

/// A finite set of primes, optionally remembering which primes were excluded
/// when it was computed. Represents both plain excluded sets and supports
/// of the form "primes dividing `a`, minus an excluded set".
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeSupport {
    primes: Vec<u64>,
    excluded: Vec<u64>,
}

impl PrimeSupport {
    /// The empty set.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build a set from arbitrary primes. Rejects non-primes; sorts and
    /// deduplicates.
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = primes.into_iter().collect();
        for &p in &v {
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
        }
        v.sort_unstable();
        v.dedup();
        Ok(PrimeSupport {
            primes: v,
            excluded: Vec::new(),
        })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn excluded(&self) -> &[u64] {
        &self.excluded
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn is_subset_of(&self, other: &PrimeSupport) -> bool {
        self.primes.iter().all(|&p| other.contains(p))
    }

    /// Set union of the primes; any exclusion bookkeeping is dropped.
    pub fn union(&self, other: &PrimeSupport) -> PrimeSupport {
        let mut merged: Vec<u64> = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.primes.len() && j < other.primes.len() {
            match self.primes[i].cmp(&other.primes[j]) {
                Ordering::Less => {
                    merged.push(self.primes[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    merged.push(other.primes[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    merged.push(self.primes[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&self.primes[i..]);
        merged.extend_from_slice(&other.primes[j..]);
        PrimeSupport {
            primes: merged,
            excluded: Vec::new(),
        }
    }

    /// True iff every prime factor of `n` lies in this set (`n` nonzero;
    /// units are covered by anything). Works by dividing the set's primes
    /// out of `n`, so `n` never needs to be factored.
    pub fn covers(&self, n: &BigInt) -> bool {
        if n.is_zero() {
            return false;
        }
        let mut m = n.abs();
        for &p in &self.primes {
            if m.is_one() {
                return true;
            }
            let pb = BigInt::from(p);
            while (&m % &pb).is_zero() {
                m /= &pb;
            }
        }
        m.is_one()
    }
}

/// Primes dividing `a` that are not in `excluded`. The result remembers the
/// excluded set it was computed against. Errors on `a = 0` (every prime
/// divides 0) and on prime factors too large for the set representation.
pub fn prime_support(a: &BigInt, excluded: &PrimeSupport) -> Result<PrimeSupport> {
    if a.is_zero() {
        return Err(Error::UndefinedSupport);
    }
    let mut primes = Vec::new();
    for (p, _) in factorize(a)? {
        let p = p.to_u64().ok_or_else(|| {
            Error::InvalidArgument(format!("prime factor {p} exceeds the set representation"))
        })?;
        if !excluded.contains(p) {
            primes.push(p);
        }
    }
    Ok(PrimeSupport {
        primes,
        excluded: excluded.primes.clone(),
    })
}

/// True iff every prime dividing `a` divides `b`. Decided with gcd
/// stripping alone; neither argument is factored.
pub fn support_subset(a: &BigInt, b: &BigInt) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::UndefinedSupport);
    }
    let mut x = a.abs();
    let b = b.abs();
    loop {
        if x.is_one() {
            return Ok(true);
        }
        let g = x.gcd(&b);
        if g.is_one() {
            return Ok(false);
        }
        while (&x % &g).is_zero() {
            x /= &g;
        }
    }
}

// ---------------------------------------------------------------------------
// power ratios

/// A solved instance of "is `beta/gamma` an integer power of `alpha`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerRatioQuery {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    /// The unique `k` with `gamma * alpha^k = beta`, when one exists.
    pub result: Option<i64>,
}

impl PowerRatioQuery {
    pub fn solve(alpha: BigInt, beta: BigInt, gamma: BigInt) -> Result<Self> {
        let result = is_power_ratio(&alpha, &beta, &gamma)?;
        Ok(PowerRatioQuery {
            alpha,
            beta,
            gamma,
            result,
        })
    }
}

/// Exponent `k >= 0` with `alpha^k = q`, if any (`|alpha| >= 2`).
fn exact_log(alpha: &BigInt, q: &BigInt) -> Option<u32> {
    let mut q = q.clone();
    let mut k = 0u32;
    loop {
        if q.is_one() {
            return Some(k);
        }
        if q.magnitude().is_one() {
            return None; // q == -1, never a power of |alpha| >= 2
        }
        if !(&q % alpha).is_zero() {
            return None;
        }
        q /= alpha;
        k += 1;
    }
}

/// Find the integer `k` with `gamma * alpha^k = beta`, exactly.
///
/// For `|alpha| >= 2` such a `k` is unique when it exists and may be
/// negative. For `alpha = 1` the relation holds for every `k` or none, and
/// for `alpha = -1` for infinitely many or none; in both cases the smallest
/// valid `k >= 0` is reported. All three inputs must be nonzero.
pub fn is_power_ratio(alpha: &BigInt, beta: &BigInt, gamma: &BigInt) -> Result<Option<i64>> {
    if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
        return Err(Error::InvalidArgument(
            "power ratio inputs must be nonzero".into(),
        ));
    }
    if alpha.magnitude().is_one() {
        if beta == gamma {
            return Ok(Some(0));
        }
        if alpha.is_negative() && *beta == -gamma {
            return Ok(Some(1));
        }
        return Ok(None);
    }
    if (beta % gamma).is_zero() {
        if let Some(k) = exact_log(alpha, &(beta / gamma)) {
            return Ok(Some(k as i64));
        }
    }
    if (gamma % beta).is_zero() {
        if let Some(k) = exact_log(alpha, &(gamma / beta)) {
            if k > 0 {
                return Ok(Some(-(k as i64)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn naive_primes(bound: u64) -> Vec<u64> {
        (2..=bound)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn primes_up_to_small_matches_trial_division() {
        let got = primes_up_to(100).unwrap();
        assert_eq!(got, naive_primes(100));
        assert_eq!(got.len(), 25);
        assert_eq!(*got.last().unwrap(), 97);
    }

    #[test]
    fn primes_up_to_rejects_empty_range() {
        assert!(matches!(primes_up_to(1), Err(Error::EmptyRange { bound: 1 })));
        assert!(matches!(primes_up_to(0), Err(Error::EmptyRange { .. })));
        assert_eq!(primes_up_to(2).unwrap(), vec![2]);
    }

    #[test]
    fn segmented_sieve_agrees_across_the_boundary() {
        // crosses the segment size, so both code paths run
        let bound = (1u64 << 20) + 50_000;
        let primes = primes_up_to(bound).unwrap();
        assert!(primes.windows(2).all(|w| w[0] < w[1]));
        assert!(primes.iter().all(|&p| is_prime(p)));
        // every odd number in a window near the boundary is classified
        // the same way by the sieve and by Miller-Rabin
        let lo = (1u64 << 20) - 1_000;
        let in_sieve: Vec<u64> = primes
            .iter()
            .copied()
            .filter(|&p| p >= lo && p <= bound)
            .collect();
        let by_mr: Vec<u64> = (lo..=bound).filter(|&n| is_prime(n)).collect();
        assert_eq!(in_sieve, by_mr);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let naive = naive_primes(2_000);
        for n in 0..=2_000u64 {
            assert_eq!(is_prime(n), naive.binary_search(&n).is_ok(), "n = {n}");
        }
        // strong pseudoprime candidates
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(4_294_967_297)); // F5 = 641 * 6700417
    }

    #[test]
    fn factorize_matches_oracle_on_small_range() {
        // oracle: plain trial division, independent of the sieve/rho path
        fn oracle(mut n: u64) -> Vec<(u64, u32)> {
            let mut out = Vec::new();
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    let mut e = 0;
                    while n % d == 0 {
                        n /= d;
                        e += 1;
                    }
                    out.push((d, e));
                }
                d += 1;
            }
            if n > 1 {
                out.push((n, 1));
            }
            out
        }
        for n in 2..=5_000u64 {
            assert_eq!(factor_u64(n), oracle(n), "n = {n}");
        }
    }

    #[test]
    fn factorize_reconstructs_product_up_to_1e5() {
        for n in 2..=100_000u64 {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(back, n);
        }
    }

    #[test]
    fn factorize_examples_and_edges() {
        assert_eq!(
            factorize(&bi(360)).unwrap(),
            vec![(bi(2), 3), (bi(3), 2), (bi(5), 1)]
        );
        assert_eq!(factorize(&bi(-360)).unwrap(), factorize(&bi(360)).unwrap());
        assert!(factorize(&bi(1)).unwrap().is_empty());
        assert!(factorize(&bi(-1)).unwrap().is_empty());
        assert!(factorize(&bi(0)).is_err());
        // beyond the trial bound: product of two 10-digit primes
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(1_000_000_009u64);
        let f = factorize(&(&p * &q)).unwrap();
        assert_eq!(f, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn valuation_counts_exact_powers() {
        assert_eq!(valuation(&bi(360), 2), 3);
        assert_eq!(valuation(&bi(360), 3), 2);
        assert_eq!(valuation(&bi(360), 7), 0);
        assert_eq!(valuation(&bi(-8), 2), 3);
    }

    #[test]
    fn support_subset_matches_factorization_route_exhaustively() {
        for a in -200i64..=200 {
            if a == 0 {
                continue;
            }
            let sa: std::collections::BTreeSet<u64> = factor_u64(a.unsigned_abs())
                .into_iter()
                .map(|(p, _)| p)
                .collect();
            for b in -200i64..=200 {
                if b == 0 {
                    continue;
                }
                let sb: std::collections::BTreeSet<u64> = factor_u64(b.unsigned_abs())
                    .into_iter()
                    .map(|(p, _)| p)
                    .collect();
                assert_eq!(
                    support_subset(&bi(a), &bi(b)).unwrap(),
                    sa.is_subset(&sb),
                    "a = {a}, b = {b}"
                );
            }
        }
    }

    #[test]
    fn support_subset_rejects_zero() {
        assert!(support_subset(&bi(0), &bi(3)).is_err());
        assert!(support_subset(&bi(3), &bi(0)).is_err());
    }

    #[test]
    fn prime_support_respects_exclusions() {
        let empty = PrimeSupport::empty();
        let s = prime_support(&bi(360), &empty).unwrap();
        assert_eq!(s.primes(), &[2, 3, 5]);
        let a = PrimeSupport::new([3]).unwrap();
        let s = prime_support(&bi(360), &a).unwrap();
        assert_eq!(s.primes(), &[2, 5]);
        assert_eq!(s.excluded(), &[3]);
        assert!(prime_support(&bi(0), &empty).is_err());
        let unit = prime_support(&bi(-1), &empty).unwrap();
        assert!(unit.is_empty());
    }

    #[test]
    fn prime_support_rejects_composite_exclusions() {
        assert!(PrimeSupport::new([4]).is_err());
        assert!(PrimeSupport::new([2, 9]).is_err());
        let s = PrimeSupport::new([5, 2, 2, 3]).unwrap();
        assert_eq!(s.primes(), &[2, 3, 5]);
    }

    #[test]
    fn covers_divides_out_without_factoring() {
        let s = PrimeSupport::new([2, 3]).unwrap();
        assert!(s.covers(&bi(1)));
        assert!(s.covers(&bi(-1)));
        assert!(s.covers(&bi(12)));
        assert!(s.covers(&bi(-432)));
        assert!(!s.covers(&bi(10)));
        assert!(!s.covers(&bi(0)));
        assert!(PrimeSupport::empty().covers(&bi(1)));
        assert!(!PrimeSupport::empty().covers(&bi(2)));
    }

    #[test]
    fn union_merges_sorted() {
        let a = PrimeSupport::new([2, 7]).unwrap();
        let b = PrimeSupport::new([3, 7, 11]).unwrap();
        assert_eq!(a.union(&b).primes(), &[2, 3, 7, 11]);
    }

    #[test]
    fn power_ratio_brute_force_agreement() {
        // oracle: scan k in [-40, 40] with exact rational arithmetic
        for alpha in [-5i64, -3, -2, 2, 3, 10] {
            for beta in -64i64..=64 {
                for gamma in [-12i64, -4, -3, -1, 1, 2, 6, 27] {
                    if beta == 0 {
                        continue;
                    }
                    let mut expect = None;
                    'scan: for k in 0..=40i64 {
                        // gamma * alpha^k == beta
                        let mut v = BigInt::from(gamma);
                        for _ in 0..k {
                            v *= alpha;
                        }
                        if v == bi(beta) {
                            expect = Some(k);
                            break 'scan;
                        }
                        // negative k: gamma == beta * alpha^k
                        let mut w = BigInt::from(beta);
                        for _ in 0..k {
                            w *= alpha;
                        }
                        if k > 0 && w == bi(gamma) {
                            expect = Some(-k);
                            break 'scan;
                        }
                    }
                    assert_eq!(
                        is_power_ratio(&bi(alpha), &bi(beta), &bi(gamma)).unwrap(),
                        expect,
                        "alpha={alpha} beta={beta} gamma={gamma}"
                    );
                }
            }
        }
    }

    #[test]
    fn power_ratio_named_cases() {
        // no k: 2 * (-2)^k never equals 1
        assert_eq!(is_power_ratio(&bi(-2), &bi(1), &bi(2)).unwrap(), None);
        // (-2)^2 * (-1) = -4
        assert_eq!(is_power_ratio(&bi(-2), &bi(-4), &bi(-1)).unwrap(), Some(2));
        // negative exponent: 12 * 2^-2 = 3
        assert_eq!(is_power_ratio(&bi(2), &bi(3), &bi(12)).unwrap(), Some(-2));
        // unit alpha conventions
        assert_eq!(is_power_ratio(&bi(1), &bi(7), &bi(7)).unwrap(), Some(0));
        assert_eq!(is_power_ratio(&bi(1), &bi(7), &bi(5)).unwrap(), None);
        assert_eq!(is_power_ratio(&bi(-1), &bi(7), &bi(7)).unwrap(), Some(0));
        assert_eq!(is_power_ratio(&bi(-1), &bi(-7), &bi(7)).unwrap(), Some(1));
        assert_eq!(is_power_ratio(&bi(-1), &bi(5), &bi(7)).unwrap(), None);
        // zero inputs are rejected
        assert!(is_power_ratio(&bi(0), &bi(1), &bi(1)).is_err());
        assert!(is_power_ratio(&bi(2), &bi(0), &bi(1)).is_err());
        assert!(is_power_ratio(&bi(2), &bi(1), &bi(0)).is_err());
    }

    #[test]
    fn power_ratio_query_records_inputs() {
        let q = PowerRatioQuery::solve(bi(-2), bi(-4), bi(-1)).unwrap();
        assert_eq!(q.result, Some(2));
        assert_eq!(q.alpha, bi(-2));
    }
}
