//! Exhaustive desk-scale validation: enumerate every polynomial in a
//! coefficient box, classify each one, and challenge every verdict with
//! independent mod-p evidence.
//!
//! Each bundled suite pits two routes against each other: the closed-form
//! classification on one side, and either a witness search or a direct
//! constructive enumeration of the expected member forms on the other.
//! The two routes share only low-level arithmetic, so agreement is a real
//! check rather than a tautology. A contradiction between routes is a
//! build-failing event.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classify::{classify_with_bound, Verdict};
use crate::modp::{find_witness, m_p, Certainty};
use crate::numtheory::{factor_u64, is_power_ratio, mulmod, primes_up_to, PrimeSupport};
use crate::orbits::nilpotency_index;
use crate::polynomial::Polynomial;
use crate::{Error, Result};

/// Seed for the randomized suites when the caller does not supply one.
pub const DEFAULT_SUITE_SEED: u64 = 1729;

/// Names accepted by [`theorem_suite`].
pub const SUITE_NAMES: &[&str] = &[
    "thm4.1",
    "cor4.2",
    "cor4.3",
    "thm4.4",
    "cor4.5",
    "thm5.1",
    "cor5.2",
    "thm5.3",
    "cor5.4",
    "fact3.1",
    "lemma3.2-contrapositive",
];

// ---------------------------------------------------------------------------
// coefficient boxes

/// Finite universe of query polynomials: every degree in `degree_min..=
/// degree_max` with every coefficient in `coeff_min..=coeff_max` and a
/// nonzero leading coefficient, asked at one base point with one exempt
/// set, scans bounded by `prime_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientBox {
    degree_min: usize,
    degree_max: usize,
    coeff_min: i64,
    coeff_max: i64,
    base_point: BigInt,
    excluded: PrimeSupport,
    prime_bound: u64,
}

impl CoefficientBox {
    pub fn new(
        degree: (usize, usize),
        coeffs: (i64, i64),
        base_point: impl Into<BigInt>,
        excluded: PrimeSupport,
        prime_bound: u64,
    ) -> Result<Self> {
        let (degree_min, degree_max) = degree;
        let (coeff_min, coeff_max) = coeffs;
        if degree_min < 1 {
            return Err(Error::InvalidArgument(
                "degree range must start at 1".into(),
            ));
        }
        if degree_min > degree_max {
            return Err(Error::InvalidArgument(format!(
                "empty degree range {degree_min}..={degree_max}"
            )));
        }
        if coeff_min > coeff_max {
            return Err(Error::InvalidArgument(format!(
                "empty coefficient range {coeff_min}..={coeff_max}"
            )));
        }
        if coeff_min == 0 && coeff_max == 0 {
            return Err(Error::InvalidArgument(
                "coefficient range {0} admits no leading coefficient".into(),
            ));
        }
        if prime_bound < 2 {
            return Err(Error::InvalidArgument(format!(
                "prime bound {prime_bound} is below 2"
            )));
        }
        Ok(CoefficientBox {
            degree_min,
            degree_max,
            coeff_min,
            coeff_max,
            base_point: base_point.into(),
            excluded,
            prime_bound,
        })
    }

    pub fn degree_range(&self) -> (usize, usize) {
        (self.degree_min, self.degree_max)
    }

    pub fn coeff_range(&self) -> (i64, i64) {
        (self.coeff_min, self.coeff_max)
    }

    pub fn base_point(&self) -> &BigInt {
        &self.base_point
    }

    pub fn excluded(&self) -> &PrimeSupport {
        &self.excluded
    }

    pub fn prime_bound(&self) -> u64 {
        self.prime_bound
    }

    /// Number of polynomials the box enumerates.
    pub fn count(&self) -> u128 {
        let width = (self.coeff_max - self.coeff_min + 1) as u128;
        let zero_in_range = self.coeff_min <= 0 && self.coeff_max >= 0;
        let leading = width - u128::from(zero_in_range);
        (self.degree_min..=self.degree_max)
            .map(|d| leading * width.pow(d as u32))
            .sum()
    }

    pub fn contains(&self, u: &Polynomial) -> bool {
        let d = u.degree();
        if d < self.degree_min || d > self.degree_max {
            return false;
        }
        let lo = BigInt::from(self.coeff_min);
        let hi = BigInt::from(self.coeff_max);
        u.coeffs().iter().all(|c| *c >= lo && *c <= hi)
    }

    pub fn describe(&self) -> String {
        let a: Vec<String> = self.excluded.iter().map(|p| p.to_string()).collect();
        format!(
            "degree {}..={}, coeffs {}..={}, r={}, A={{{}}}, P={}",
            self.degree_min,
            self.degree_max,
            self.coeff_min,
            self.coeff_max,
            self.base_point,
            a.join(","),
            self.prime_bound
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": [self.degree_min, self.degree_max],
            "coefficients": [self.coeff_min, self.coeff_max],
            "base_point": self.base_point.to_string(),
            "excluded": self.excluded.primes(),
            "prime_bound": self.prime_bound,
        })
    }
}

/// All polynomials in the box, each exactly once: degree-major, then
/// ascending lexicographic on the coefficient tuple (c_0, ..., c_d).
pub fn enumerate_polynomials(bounds: &CoefficientBox) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mut digits = Vec::new();
    for d in bounds.degree_min..=bounds.degree_max {
        digits.clear();
        digits.resize(d + 1, 0i64);
        fill_from(&mut digits, 0, bounds.coeff_min, bounds.coeff_max, &mut out);
    }
    out
}

fn fill_from(digits: &mut Vec<i64>, pos: usize, lo: i64, hi: i64, out: &mut Vec<Polynomial>) {
    let last = digits.len() - 1;
    if pos > last {
        out.push(Polynomial::new(digits.iter().copied()));
        return;
    }
    for c in lo..=hi {
        if pos == last && c == 0 {
            continue;
        }
        digits[pos] = c;
        fill_from(digits, pos + 1, lo, hi, out);
    }
}

// ---------------------------------------------------------------------------
// cross-validation

/// Independent mod-p evidence that refutes a classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanEvidence {
    /// A member verdict, yet some prime outside the exempt set admits no
    /// vanishing step.
    WitnessAgainstMember { p: u64 },
    /// A refutation verdict whose claimed witness prime does admit a
    /// vanishing step.
    VanishingAtClaimedWitness { p: u64, m_p: u64 },
}

impl ScanEvidence {
    fn to_json(&self) -> Value {
        match self {
            ScanEvidence::WitnessAgainstMember { p } => {
                json!({"kind": "witness-against-member", "p": p})
            }
            ScanEvidence::VanishingAtClaimedWitness { p, m_p } => {
                json!({"kind": "vanishing-at-claimed-witness", "p": p, "m_p": m_p})
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Contradiction {
    pub polynomial: Polynomial,
    pub verdict: String,
    pub evidence: ScanEvidence,
}

#[derive(Debug, Clone)]
pub struct Inconclusive {
    pub polynomial: Polynomial,
    pub verdict: String,
}

/// Outcome of one box run. `elapsed` is kept out of the JSON rendering so
/// identical boxes produce byte-identical reports.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub bounds: CoefficientBox,
    pub verdict_counts: BTreeMap<String, usize>,
    pub contradictions: Vec<Contradiction>,
    pub inconclusives: Vec<Inconclusive>,
    pub elapsed: Duration,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.contradictions.is_empty()
    }

    pub fn total(&self) -> usize {
        self.verdict_counts.values().sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "box": self.bounds.to_json(),
            "counts": self.verdict_counts,
            "contradictions": self.contradictions.iter().map(|c| json!({
                "polynomial": c.polynomial.to_string(),
                "verdict": c.verdict,
                "evidence": c.evidence.to_json(),
            })).collect::<Vec<_>>(),
            "inconclusives": self.inconclusives.iter().map(|i| json!({
                "polynomial": i.polynomial.to_string(),
                "verdict": i.verdict,
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }

    pub fn summary(&self) -> String {
        let counts: Vec<String> = self
            .verdict_counts
            .iter()
            .map(|(name, n)| format!("{name} {n}"))
            .collect();
        format!(
            "{} | {} polynomials in {:.2?} | {} | contradictions {} | inconclusives {}",
            self.bounds.describe(),
            self.total(),
            self.elapsed,
            counts.join(", "),
            self.contradictions.len(),
            self.inconclusives.len()
        )
    }
}

struct Finding {
    poly: Polynomial,
    verdict: Verdict,
    contradiction: Option<ScanEvidence>,
    inconclusive: bool,
}

// The challenge side needs only two facts: whether a witness exists at
// all (against a member claim) and whether the claimed witness really
// lacks a vanishing step. The full per-prime table decides neither
// question better, so the probe form is used throughout.
fn examine(u: &Polynomial, bounds: &CoefficientBox) -> Result<Finding> {
    let r = &bounds.base_point;
    let classified = classify_with_bound(u, r, &bounds.excluded, bounds.prime_bound)?;
    let mut contradiction = None;
    let mut inconclusive = false;
    match classified.verdict.membership() {
        Some(true) => {
            if let Some(p) = find_witness(u, r, &bounds.excluded, bounds.prime_bound)? {
                contradiction = Some(ScanEvidence::WitnessAgainstMember { p });
            }
        }
        Some(false) => {
            let witness = match &classified.verdict {
                Verdict::NotWeaklyLocallyNilpotent { witness } => *witness,
                _ => None,
            };
            match witness {
                Some(w) => {
                    if let Some(m) = m_p(u, r, w)?.m_p {
                        contradiction =
                            Some(ScanEvidence::VanishingAtClaimedWitness { p: w, m_p: m });
                    }
                }
                None => inconclusive = true,
            }
        }
        None => inconclusive = true,
    }
    Ok(Finding {
        poly: u.clone(),
        verdict: classified.verdict,
        contradiction,
        inconclusive,
    })
}

/// Classify every polynomial in the box and challenge each verdict with
/// independent mod-p evidence.
pub fn cross_validate(bounds: &CoefficientBox) -> Result<ValidationReport> {
    Ok(cross_validate_detailed(bounds)?.0)
}

/// [`cross_validate`] plus the per-polynomial verdicts, for callers that
/// compare the classified member set against template enumerations.
pub fn cross_validate_detailed(
    bounds: &CoefficientBox,
) -> Result<(ValidationReport, Vec<(Polynomial, Verdict)>)> {
    let start = Instant::now();
    let polys = enumerate_polynomials(bounds);
    // independent per polynomial; indexed collect keeps enumeration order
    // regardless of scheduling
    let findings: Vec<Finding> = polys
        .par_iter()
        .map(|u| examine(u, bounds))
        .collect::<Result<_>>()?;

    let mut verdict_counts = BTreeMap::new();
    let mut contradictions = Vec::new();
    let mut inconclusives = Vec::new();
    let mut verdicts = Vec::with_capacity(findings.len());
    for finding in findings {
        *verdict_counts
            .entry(finding.verdict.name().to_string())
            .or_insert(0usize) += 1;
        if let Some(evidence) = finding.contradiction {
            contradictions.push(Contradiction {
                polynomial: finding.poly.clone(),
                verdict: finding.verdict.name().to_string(),
                evidence,
            });
        }
        if finding.inconclusive {
            inconclusives.push(Inconclusive {
                polynomial: finding.poly.clone(),
                verdict: finding.verdict.name().to_string(),
            });
        }
        verdicts.push((finding.poly, finding.verdict));
    }
    let report = ValidationReport {
        bounds: bounds.clone(),
        verdict_counts,
        contradictions,
        inconclusives,
        elapsed: start.elapsed(),
    };
    Ok((report, verdicts))
}

// ---------------------------------------------------------------------------
// suites

#[derive(Debug, Clone)]
pub struct SuiteCheck {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<SuiteCheck>,
    pub reports: Vec<ValidationReport>,
}

impl SuiteOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks.iter().map(|c| json!({
                "label": c.label,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "reports": self.reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "suite {}: {}\n",
            self.name,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for check in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: {}\n",
                if check.passed { "ok" } else { "FAIL" },
                check.label,
                check.detail
            ));
        }
        for report in &self.reports {
            out.push_str(&format!("  {}\n", report.summary()));
        }
        out
    }
}

/// Knobs shared by all suites. `prime_bound` overrides each suite's
/// canonical bound; `seed` drives the randomized ones.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub prime_bound: Option<u64>,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            prime_bound: None,
            seed: DEFAULT_SUITE_SEED,
        }
    }
}

/// Run one named suite with default options.
pub fn theorem_suite(name: &str) -> Result<SuiteOutcome> {
    theorem_suite_with(name, &SuiteOptions::default())
}

pub fn theorem_suite_with(name: &str, opts: &SuiteOptions) -> Result<SuiteOutcome> {
    match name {
        "thm4.1" => suite_base_one(opts, "thm4.1", 1),
        "cor4.2" => suite_base_one(opts, "cor4.2", -1),
        "cor4.3" => suite_singletons(opts),
        "thm4.4" => suite_base_zero(opts, "thm4.4"),
        "cor4.5" => suite_base_zero(opts, "cor4.5"),
        "thm5.1" => suite_exempt_translations(opts, "thm5.1"),
        "cor5.2" => suite_exempt_translations(opts, "cor5.2"),
        "thm5.3" => suite_general_base(opts, "thm5.3"),
        "cor5.4" => suite_general_base(opts, "cor5.4"),
        "fact3.1" => suite_conjugation(opts),
        "lemma3.2-contrapositive" => suite_power_free_primes(opts),
        _ => Err(Error::UnknownSuite(name.to_string())),
    }
}

fn finish(name: &str, checks: Vec<SuiteCheck>, reports: Vec<ValidationReport>) -> SuiteOutcome {
    let passed = checks.iter().all(|c| c.passed);
    SuiteOutcome {
        name: name.to_string(),
        passed,
        checks,
        reports,
    }
}

fn check(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> SuiteCheck {
    SuiteCheck {
        label: label.into(),
        passed,
        detail: detail.into(),
    }
}

fn contradiction_check(reports: &[ValidationReport]) -> SuiteCheck {
    let total: usize = reports.iter().map(|r| r.contradictions.len()).sum();
    let detail = match reports
        .iter()
        .flat_map(|r| r.contradictions.first())
        .next()
    {
        Some(c) => format!(
            "{total} across {} boxes; first at {} ({})",
            reports.len(),
            c.polynomial,
            c.verdict
        ),
        None => format!("0 across {} boxes", reports.len()),
    };
    check("no verdict is contradicted by scan evidence", total == 0, detail)
}

fn inconclusive_check(reports: &[ValidationReport]) -> SuiteCheck {
    let total: usize = reports.iter().map(|r| r.inconclusives.len()).sum();
    let detail = match reports.iter().flat_map(|r| r.inconclusives.first()).next() {
        Some(i) => format!(
            "{total} across {} boxes; first at {} ({})",
            reports.len(),
            i.polynomial,
            i.verdict
        ),
        None => format!("0 across {} boxes", reports.len()),
    };
    check(
        "every verdict is conclusive (complete classification)",
        total == 0,
        detail,
    )
}

fn set_equality_check(
    label: impl Into<String>,
    classified: &BTreeSet<Polynomial>,
    templates: &BTreeSet<Polynomial>,
) -> SuiteCheck {
    let mut detail = format!("classified {} vs template {}", classified.len(), templates.len());
    let missing: Vec<String> = templates
        .difference(classified)
        .take(3)
        .map(|u| u.to_string())
        .collect();
    let extra: Vec<String> = classified
        .difference(templates)
        .take(3)
        .map(|u| u.to_string())
        .collect();
    if !missing.is_empty() {
        detail.push_str(&format!("; template-only: [{}]", missing.join(" | ")));
    }
    if !extra.is_empty() {
        detail.push_str(&format!("; classified-only: [{}]", extra.join(" | ")));
    }
    check(label, classified == templates, detail)
}

fn members_of(findings: &[(Polynomial, Verdict)]) -> BTreeSet<Polynomial> {
    findings
        .iter()
        .filter(|(_, v)| v.membership() == Some(true))
        .map(|(u, _)| u.clone())
        .collect()
}

fn with_verdict(
    findings: &[(Polynomial, Verdict)],
    keep: impl Fn(&Verdict) -> bool,
) -> BTreeSet<Polynomial> {
    findings
        .iter()
        .filter(|(_, v)| keep(v))
        .map(|(u, _)| u.clone())
        .collect()
}

fn empty_box(
    degree: (usize, usize),
    coeffs: (i64, i64),
    base_point: i64,
    prime_bound: u64,
) -> Result<CoefficientBox> {
    CoefficientBox::new(degree, coeffs, base_point, PrimeSupport::empty(), prime_bound)
}

// ---------------------------------------------------------------------------
// template enumerations
//
// Each enumerator builds the expected member set directly from the
// closed template forms, never from classify, so the suite comparisons
// cross two independent routes.

// (x - c) * q over machine integers; template data stays far from overflow
fn times_x_minus(c: i64, q: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; q.len() + 1];
    for (i, &qi) in q.iter().enumerate() {
        out[i] -= c * qi;
        out[i + 1] += qi;
    }
    out
}

// every coefficient vector of the given length over [lo, hi]
fn coeff_vectors(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
        for v in &out {
            for c in lo..=hi {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

// positive integers <= bound built only from the given primes (1 included)
fn smooth_values(primes: &[u64], bound: i64) -> Vec<i64> {
    let mut out = vec![1i64];
    for &q in primes {
        let mut grown = Vec::new();
        for &v in &out {
            let mut w = v;
            while let Some(next) = w.checked_mul(q as i64) {
                if next > bound {
                    break;
                }
                w = next;
                grown.push(w);
            }
        }
        out.extend(grown);
    }
    out.sort_unstable();
    out
}

// smooth values together with their exponent vector, aligned with `primes`
fn smooth_with_exponents(primes: &[u64], bound: i64) -> Vec<(i64, Vec<u32>)> {
    let mut out = vec![(1i64, Vec::new())];
    for &q in primes {
        let mut next = Vec::new();
        for (v, exps) in &out {
            let mut w = *v;
            let mut e = 0u32;
            loop {
                let mut grown = exps.clone();
                grown.push(e);
                next.push((w, grown));
                match w.checked_mul(q as i64) {
                    Some(prod) if prod <= bound => {
                        w = prod;
                        e += 1;
                    }
                    _ => break,
                }
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

// Member forms at base point 1 (degree <= 2 boxes): the orbit start is
// forced through 1 -> 2 -> 3, so members either kill one of those values
// or are the successor map.
fn templates_at_one(bounds: &CoefficientBox) -> BTreeSet<Polynomial> {
    debug_assert!(bounds.degree_range().1 <= 2);
    let (lo, hi) = bounds.coeff_range();
    let mut out = BTreeSet::new();
    // u(1) = 0: u = (x-1)(ax + b); a is the quadratic coefficient of u
    // and b is minus its constant term, so these ranges cover the box
    for a in lo..=hi {
        for b in -hi..=-lo {
            if a == 0 && b == 0 {
                continue;
            }
            let u = Polynomial::new(times_x_minus(1, &[b, a]));
            if bounds.contains(&u) {
                out.insert(u);
            }
        }
    }
    // u(1) = 2, u(2) = 0: u = (x-2)(ax - a - 2)
    for a in lo..=hi {
        let u = Polynomial::new(times_x_minus(2, &[-a - 2, a]));
        if bounds.contains(&u) {
            out.insert(u);
        }
    }
    // u(1) = 2, u(2) = 3, u(3) = 0: a single quadratic fits
    let pinned = Polynomial::new([-3, 7, -2]);
    if bounds.contains(&pinned) {
        out.insert(pinned);
    }
    // the one member that never hits zero
    let successor = Polynomial::new([1, 1]);
    if bounds.contains(&successor) {
        out.insert(successor);
    }
    out
}

// Mirror image of `templates_at_one` under x -> -x, for base point -1.
fn templates_at_minus_one(bounds: &CoefficientBox) -> Result<BTreeSet<Polynomial>> {
    let (lo, hi) = bounds.coeff_range();
    let m = lo.abs().max(hi.abs());
    let hull = empty_box(bounds.degree_range(), (-m, m), 1, bounds.prime_bound())?;
    Ok(templates_at_one(&hull)
        .into_iter()
        .map(|u| u.conjugate())
        .filter(|u| bounds.contains(u))
        .collect())
}

// Member forms at base point 0 (degree <= 3 boxes), split into the
// zero-hitting forms and the survivors.
fn templates_at_zero(
    bounds: &CoefficientBox,
) -> (BTreeSet<Polynomial>, BTreeSet<Polynomial>) {
    debug_assert!(bounds.degree_range().1 <= 3);
    let (lo, hi) = bounds.coeff_range();
    let m = lo.abs().max(hi.abs());
    let mut nilpotent = BTreeSet::new();
    // x * p(x): the first step already lands on zero
    for p in coeff_vectors(bounds.degree_range().1, lo, hi) {
        if p.iter().all(|&c| c == 0) {
            continue;
        }
        let mut coeffs = vec![0i64];
        coeffs.extend(&p);
        let u = Polynomial::new(coeffs);
        if bounds.contains(&u) {
            nilpotent.insert(u);
        }
    }
    // (x - a) p(x) with p(0) = -1: orbit 0 -> a -> 0. The middle
    // coefficient of p is the quadratic coefficient of u plus a times the
    // cubic one, so |middle| <= m + m^2 covers the box.
    for a in lo..=hi {
        if a == 0 {
            continue;
        }
        for c in lo..=hi {
            for d in -(m + m * m)..=(m + m * m) {
                let u = Polynomial::new(times_x_minus(a, &[-1, d, c]));
                if bounds.contains(&u) {
                    nilpotent.insert(u);
                }
            }
        }
    }
    // survivors: x + b, and ax + b where every prime of a divides b
    let mut survivors = BTreeSet::new();
    for b in lo..=hi {
        if b == 0 {
            continue;
        }
        let u = Polynomial::linear(1, b);
        if bounds.contains(&u) {
            survivors.insert(u);
        }
    }
    for a in lo..=hi {
        if a.abs() < 2 {
            continue;
        }
        for b in lo..=hi {
            if b == 0 {
                continue;
            }
            if factor_u64(a.unsigned_abs())
                .iter()
                .all(|&(q, _)| b % (q as i64) == 0)
            {
                let u = Polynomial::linear(a, b);
                if bounds.contains(&u) {
                    survivors.insert(u);
                }
            }
        }
    }
    (nilpotent, survivors)
}

// Member forms at base point 1 with exempt primes A (linear boxes):
// translations by +-(A-smooth), scalings of x - 1, A-smooth slopes with
// constant 1, the doubling special case, and -2x + 4.
fn templates_exempt_translations(bounds: &CoefficientBox) -> BTreeSet<Polynomial> {
    debug_assert!(bounds.degree_range() == (1, 1));
    let (lo, hi) = bounds.coeff_range();
    let m = lo.abs().max(hi.abs());
    let smooth = smooth_values(bounds.excluded().primes(), m);
    let mut out = BTreeSet::new();
    let mut push = |u: Polynomial| {
        if bounds.contains(&u) {
            out.insert(u);
        }
    };
    for &v in &smooth {
        push(Polynomial::linear(1, v));
        push(Polynomial::linear(1, -v));
        if v >= 2 {
            push(Polynomial::linear(v, 1));
            push(Polynomial::linear(-v, 1));
        }
    }
    for a in lo..=hi {
        if a != 0 {
            push(Polynomial::linear(a, -a));
        }
    }
    if bounds.excluded().contains(2) {
        push(Polynomial::linear(-2, -1));
    }
    push(Polynomial::linear(-2, 4));
    out
}

// The non-nilpotent members from the same family: drop x - v with v
// A-free (those hit zero) and the x - 1 scalings.
fn templates_exempt_survivors(bounds: &CoefficientBox) -> BTreeSet<Polynomial> {
    debug_assert!(bounds.degree_range() == (1, 1));
    let (lo, hi) = bounds.coeff_range();
    let m = lo.abs().max(hi.abs());
    let smooth = smooth_values(bounds.excluded().primes(), m);
    let mut out = BTreeSet::new();
    let mut push = |u: Polynomial| {
        if bounds.contains(&u) {
            out.insert(u);
        }
    };
    for &v in &smooth {
        push(Polynomial::linear(1, v));
        if v >= 2 {
            push(Polynomial::linear(1, -v));
            push(Polynomial::linear(v, 1));
            push(Polynomial::linear(-v, 1));
        }
    }
    if bounds.excluded().contains(2) {
        push(Polynomial::linear(-2, -1));
    }
    out
}

// Survivor forms at base point r >= 2: translations by r-smooth values
// (negative ones only when some exponent exceeds r's), r-smooth slopes
// with constant r, and -2x - r for even r.
fn templates_general_base(bounds: &CoefficientBox, r: i64) -> BTreeSet<Polynomial> {
    debug_assert!(bounds.degree_range() == (1, 1));
    debug_assert!(r >= 2);
    let (lo, hi) = bounds.coeff_range();
    let m = lo.abs().max(hi.abs());
    let factors = factor_u64(r as u64);
    let primes: Vec<u64> = factors.iter().map(|&(q, _)| q).collect();
    let mut out = BTreeSet::new();
    let mut push = |u: Polynomial| {
        if bounds.contains(&u) {
            out.insert(u);
        }
    };
    for (v, exps) in smooth_with_exponents(&primes, m) {
        push(Polynomial::linear(1, v));
        let oversteps = exps
            .iter()
            .zip(&factors)
            .any(|(&s, &(_, a))| s > a);
        if oversteps {
            push(Polynomial::linear(1, -v));
        }
    }
    // steep slopes solve b*(1 + a + ... + a^(m-1)) = r with every prime of a
    // dividing b; m = 1 gives the b = r family and (a, m) = (-2, 2) gives
    // -2x-r, composite r carries further solutions
    let r_big = BigInt::from(r);
    for a in lo..=hi {
        if a.abs() < 2 {
            continue;
        }
        let slope = BigInt::from(a);
        let slope_primes: Vec<u64> = factor_u64(a.unsigned_abs())
            .into_iter()
            .map(|(q, _)| q)
            .collect();
        let mut sigma = BigInt::one();
        let mut power = slope.clone();
        while sigma.abs() <= r_big {
            if (&r_big % &sigma).is_zero() {
                let b = &r_big / &sigma;
                if slope_primes
                    .iter()
                    .all(|&q| (&b % BigInt::from(q)).is_zero())
                {
                    push(Polynomial::linear(slope.clone(), b));
                }
            }
            sigma += &power;
            power *= &slope;
        }
    }
    out
}

// Survivor forms at base point r <= -2: the x -> -x mirror of the forms
// at -r.
fn templates_general_base_negative(
    bounds: &CoefficientBox,
    r: i64,
) -> Result<BTreeSet<Polynomial>> {
    debug_assert!(r <= -2);
    let (lo, hi) = bounds.coeff_range();
    let m = lo.abs().max(hi.abs());
    let hull = empty_box((1, 1), (-m, m), -r, bounds.prime_bound())?;
    Ok(templates_general_base(&hull, -r)
        .into_iter()
        .map(|u| u.conjugate())
        .filter(|u| bounds.contains(u))
        .collect())
}

// ---------------------------------------------------------------------------
// suite bodies

fn suite_base_one(opts: &SuiteOptions, name: &str, base: i64) -> Result<SuiteOutcome> {
    let p = opts.prime_bound.unwrap_or(1_000);
    let bounds = empty_box((1, 2), (-6, 6), base, p)?;
    let (report, findings) = cross_validate_detailed(&bounds)?;
    let templates = if base == 1 {
        templates_at_one(&bounds)
    } else {
        templates_at_minus_one(&bounds)?
    };
    let mut checks = vec![
        contradiction_check(std::slice::from_ref(&report)),
        inconclusive_check(std::slice::from_ref(&report)),
        set_equality_check(
            format!("member set matches the template families at r={base}"),
            &members_of(&findings),
            &templates,
        ),
    ];
    if base == -1 {
        // every verdict must mirror the verdict of the conjugate at r=1
        let one = BigInt::from(1);
        let empty = PrimeSupport::empty();
        let mismatches: Vec<String> = enumerate_polynomials(&bounds)
            .par_iter()
            .filter_map(|u| {
                let here = classify_with_bound(u, bounds.base_point(), &empty, p).ok()?;
                let mirror = classify_with_bound(&u.conjugate(), &one, &empty, p).ok()?;
                (here.verdict != mirror.verdict).then(|| u.to_string())
            })
            .collect();
        checks.push(check(
            "verdicts mirror the conjugate classification at r=1",
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!("{} polynomials agree", report.total())
            } else {
                format!("first mismatch at {}", mismatches[0])
            },
        ));
    }
    Ok(finish(name, checks, vec![report]))
}

fn suite_singletons(opts: &SuiteOptions) -> Result<SuiteOutcome> {
    let p = opts.prime_bound.unwrap_or(10_000);
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    for (base, survivor) in [(1i64, Polynomial::linear(1, 1)), (-1, Polynomial::linear(1, -1))] {
        let bounds = empty_box((1, 1), (-100, 100), base, p)?;
        let (report, findings) = cross_validate_detailed(&bounds)?;
        let survivors = with_verdict(&findings, |v| *v == Verdict::InSr);
        let expected: BTreeSet<Polynomial> = [survivor.clone()].into_iter().collect();
        checks.push(set_equality_check(
            format!("exactly one survivor at r={base}"),
            &survivors,
            &expected,
        ));
        // 200 slope/translation pairs kill the base point at step one,
        // and one map kills it at step two
        let nilpotent = with_verdict(&findings, |v| matches!(v, Verdict::Nilpotent { .. }));
        checks.push(check(
            format!("zero-hitting count at r={base}"),
            nilpotent.len() == 201,
            format!("{} of 201 expected", nilpotent.len()),
        ));
        reports.push(report);
    }
    checks.insert(0, contradiction_check(&reports));
    checks.insert(1, inconclusive_check(&reports));
    Ok(finish("cor4.3", checks, reports))
}

fn suite_base_zero(opts: &SuiteOptions, name: &str) -> Result<SuiteOutcome> {
    let p = opts.prime_bound.unwrap_or(1_000);
    let bounds = empty_box((1, 3), (-5, 5), 0, p)?;
    let (report, findings) = cross_validate_detailed(&bounds)?;
    let (nilpotent_forms, survivor_forms) = templates_at_zero(&bounds);
    let mut checks = vec![
        contradiction_check(std::slice::from_ref(&report)),
        inconclusive_check(std::slice::from_ref(&report)),
    ];
    match name {
        "thm4.4" => {
            let all: BTreeSet<Polynomial> =
                nilpotent_forms.union(&survivor_forms).cloned().collect();
            checks.push(set_equality_check(
                "member set matches the template families at r=0",
                &members_of(&findings),
                &all,
            ));
            // zero-hitting orbits at 0 resolve within two steps
            let slow: Vec<String> = findings
                .iter()
                .filter_map(|(u, v)| match v {
                    Verdict::Nilpotent { index }
                        if *index != BigInt::from(1) && *index != BigInt::from(2) =>
                    {
                        Some(format!("{u} (index {index})"))
                    }
                    _ => None,
                })
                .collect();
            checks.push(check(
                "every zero-hitting index is 1 or 2",
                slow.is_empty(),
                if slow.is_empty() {
                    "indices confined to {1, 2}".to_string()
                } else {
                    format!("first offender {}", slow[0])
                },
            ));
        }
        _ => {
            let survivors = with_verdict(&findings, |v| *v == Verdict::InSr);
            checks.push(set_equality_check(
                "survivor set matches the two linear families at r=0",
                &survivors,
                &survivor_forms,
            ));
        }
    }
    Ok(finish(name, checks, vec![report]))
}

fn suite_exempt_translations(opts: &SuiteOptions, name: &str) -> Result<SuiteOutcome> {
    let p = opts.prime_bound.unwrap_or(10_000);
    let exempt_sets: [&[u64]; 4] = [&[], &[2], &[2, 3], &[5]];
    let doubling = Polynomial::linear(-2, -1);
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    for primes in exempt_sets {
        let excluded = PrimeSupport::new(primes.iter().copied())?;
        let bounds = CoefficientBox::new((1, 1), (-40, 40), 1, excluded, p)?;
        let (report, findings) = cross_validate_detailed(&bounds)?;
        let label_set = format!("A={{{}}}", primes.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","));
        if name == "thm5.1" {
            checks.push(set_equality_check(
                format!("member set matches templates with {label_set}"),
                &members_of(&findings),
                &templates_exempt_translations(&bounds),
            ));
            let has_doubling = members_of(&findings).contains(&doubling);
            let expected = primes.contains(&2);
            checks.push(check(
                format!("-2x-1 membership with {label_set}"),
                has_doubling == expected,
                format!("member: {has_doubling}, exempting 2: {expected}"),
            ));
        } else {
            let survivors = with_verdict(&findings, |v| {
                matches!(v, Verdict::InSr | Verdict::WeaklyLocallyNilpotentOutsideA)
            });
            checks.push(set_equality_check(
                format!("survivor set matches templates with {label_set}"),
                &survivors,
                &templates_exempt_survivors(&bounds),
            ));
        }
        reports.push(report);
    }
    checks.insert(0, contradiction_check(&reports));
    checks.insert(1, inconclusive_check(&reports));
    Ok(finish(name, checks, reports))
}

fn suite_general_base(opts: &SuiteOptions, name: &str) -> Result<SuiteOutcome> {
    let p = opts.prime_bound.unwrap_or(10_000);
    let negative = name == "cor5.4";
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    let mut equality_lines = Vec::new();
    let mut equality_ok = true;
    let mut mirror_ok = true;
    let mut mirror_detail = String::from("all classifications mirror their conjugates");
    for magnitude in 2i64..=12 {
        let base = if negative { -magnitude } else { magnitude };
        let bounds = empty_box((1, 1), (-30, 30), base, p)?;
        let (report, findings) = cross_validate_detailed(&bounds)?;
        let survivors = with_verdict(&findings, |v| *v == Verdict::InSr);
        let templates = if negative {
            templates_general_base_negative(&bounds, base)?
        } else {
            templates_general_base(&bounds, base)
        };
        if survivors != templates {
            equality_ok = false;
        }
        equality_lines.push(format!("r={base}: {}/{}", survivors.len(), templates.len()));
        if negative {
            // strict verdict equality against the conjugate at -base;
            // a cheap bound suffices since both sides search identically
            let mirror_bound = p.min(1_000);
            let empty = PrimeSupport::empty();
            let positive = BigInt::from(-base);
            let mismatch = enumerate_polynomials(&bounds)
                .par_iter()
                .filter_map(|u| {
                    let here = classify_with_bound(u, bounds.base_point(), &empty, mirror_bound)
                        .ok()?;
                    let mirror =
                        classify_with_bound(&u.conjugate(), &positive, &empty, mirror_bound)
                            .ok()?;
                    (here.verdict != mirror.verdict).then(|| u.to_string())
                })
                .collect::<Vec<_>>();
            if let Some(first) = mismatch.first() {
                mirror_ok = false;
                mirror_detail = format!("first mismatch at {first} (r={base})");
            }
        }
        reports.push(report);
    }
    checks.push(contradiction_check(&reports));
    checks.push(inconclusive_check(&reports));
    checks.push(check(
        "survivor sets match the template enumerations",
        equality_ok,
        equality_lines.join(", "),
    ));
    if negative {
        checks.push(check(
            "classification at r mirrors the conjugate at -r",
            mirror_ok,
            mirror_detail,
        ));
    }
    Ok(finish(name, checks, reports))
}

fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: usize, coeff_bound: i64) -> Polynomial {
    let d = rng.gen_range(1..=max_degree);
    let mut coeffs: Vec<i64> = (0..=d)
        .map(|_| rng.gen_range(-coeff_bound..=coeff_bound))
        .collect();
    while coeffs[d] == 0 {
        coeffs[d] = rng.gen_range(-coeff_bound..=coeff_bound);
    }
    Polynomial::new(coeffs)
}

fn suite_conjugation(opts: &SuiteOptions) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let instances = 1_000;
    let mut orbit_failures = Vec::new();
    for _ in 0..instances {
        let u = random_polynomial(&mut rng, 4, 9);
        let r = BigInt::from(rng.gen_range(-20i64..=20));
        let n = rng.gen_range(1u64..=8);
        let v = u.conjugate();
        let mirrored = v.iterate(&(-&r), n)?;
        let negated = -u.iterate(&r, n)?;
        if mirrored != negated {
            orbit_failures.push(format!("{u} at r={r}, n={n}"));
        }
    }
    let mut checks = vec![check(
        format!("orbit negation identity on {instances} seeded instances"),
        orbit_failures.is_empty(),
        orbit_failures
            .first()
            .map(|f| format!("first failure: {f}"))
            .unwrap_or_else(|| format!("{instances} exact agreements")),
    )];

    // the mirrored orbit mod p has the same rho shape and vanishing step
    let spot_primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let spots = 100;
    let mut spot_failures = Vec::new();
    for _ in 0..spots {
        let u = random_polynomial(&mut rng, 4, 9);
        let r = BigInt::from(rng.gen_range(-20i64..=20));
        let p = spot_primes[rng.gen_range(0..spot_primes.len())];
        let v = u.conjugate();
        let here = m_p(&u, &r, p)?;
        let there = m_p(&v, &(-&r), p)?;
        if (here.m_p, here.preperiod, here.period) != (there.m_p, there.preperiod, there.period) {
            spot_failures.push(format!("{u} at r={r}, p={p}"));
        }
    }
    checks.push(check(
        format!("mod-p orbit data transported on {spots} seeded instances"),
        spot_failures.is_empty(),
        spot_failures
            .first()
            .map(|f| format!("first failure: {f}"))
            .unwrap_or_else(|| format!("{spots} exact agreements")),
    ));
    Ok(finish("fact3.1", checks, Vec::new()))
}

/// Primes p <= bound such that gamma * alpha^n - beta is nonzero mod p
/// for every n >= 0. The powers of alpha mod p cycle, so one sweep of the
/// cycle answers all n at once.
pub fn primes_missing_every_term(alpha: i64, beta: i64, gamma: i64, bound: u64) -> Result<Vec<u64>> {
    let primes = primes_up_to(bound)?;
    Ok(primes
        .into_iter()
        .filter(|&p| {
            let a = alpha.rem_euclid(p as i64) as u64;
            let b = beta.rem_euclid(p as i64) as u64;
            let g = gamma.rem_euclid(p as i64) as u64;
            let mut x = 1u64;
            loop {
                if mulmod(g, x, p) == b {
                    return false;
                }
                x = mulmod(x, a, p);
                if x == 1 {
                    return true;
                }
                if x == 0 {
                    // p divides alpha: every later term is -beta
                    return b != 0;
                }
            }
        })
        .collect())
}

fn suite_power_free_primes(opts: &SuiteOptions) -> Result<SuiteOutcome> {
    let bound = opts.prime_bound.unwrap_or(10_000);
    let triples = [(-2i64, 1i64, 2i64), (2, -1, 1), (-2, -2, -1)];
    let mut checks = Vec::new();
    for (alpha, beta, gamma) in triples {
        let relation = is_power_ratio(&alpha.into(), &beta.into(), &gamma.into())?;
        checks.push(check(
            format!("no power relation for (alpha, beta, gamma) = ({alpha}, {beta}, {gamma})"),
            relation.is_none(),
            match relation {
                None => "no integer k solves gamma * alpha^k = beta".to_string(),
                Some(k) => format!("unexpected relation at k = {k}"),
            },
        ));
        let missing = primes_missing_every_term(alpha, beta, gamma, bound)?;
        let shifted = if beta < 0 {
            format!("+ {}", -beta)
        } else {
            format!("- {beta}")
        };
        checks.push(check(
            format!("many primes divide no term {gamma}*({alpha})^n {shifted}"),
            missing.len() >= 10,
            format!(
                "{} primes <= {bound}, first few: {:?}",
                missing.len(),
                &missing[..missing.len().min(5)]
            ),
        ));
    }
    Ok(finish("lemma3.2-contrapositive", checks, Vec::new()))
}

// ---------------------------------------------------------------------------
// point-set probes

/// Candidate base point for local nilpotency, with the rule verdict that
/// admitted it and whether that verdict is exact.
#[derive(Debug, Clone)]
pub struct PointCandidate {
    pub point: BigInt,
    pub verdict: String,
    pub certainty: Certainty,
}

/// Window probe for one polynomial: the base points whose orbit hits zero
/// (exact), and the candidates for local nilpotency (exact where the
/// classification is complete, scan-backed otherwise).
#[derive(Debug, Clone)]
pub struct PointScan {
    pub polynomial: Polynomial,
    pub range: i64,
    pub prime_bound: u64,
    pub nilpotent_points: Vec<(BigInt, BigInt)>,
    pub candidates: Vec<PointCandidate>,
}

impl PointScan {
    pub fn to_json(&self) -> Value {
        json!({
            "polynomial": self.polynomial.to_string(),
            "range": self.range,
            "prime_bound": self.prime_bound,
            "nilpotent": self.nilpotent_points.iter().map(|(r, index)| json!({
                "r": r.to_string(),
                "index": index.to_string(),
            })).collect::<Vec<_>>(),
            "candidates": self.candidates.iter().map(|c| json!({
                "r": c.point.to_string(),
                "verdict": c.verdict,
                "certainty": match c.certainty {
                    Certainty::Proved => "proved",
                    Certainty::Inconclusive => "inconclusive",
                },
            })).collect::<Vec<_>>(),
        })
    }

    pub fn summary(&self) -> String {
        let nil: Vec<String> = self
            .nilpotent_points
            .iter()
            .map(|(r, _)| r.to_string())
            .collect();
        let cand: Vec<String> = self
            .candidates
            .iter()
            .map(|c| {
                if c.certainty == Certainty::Proved {
                    c.point.to_string()
                } else {
                    format!("{}?", c.point)
                }
            })
            .collect();
        format!(
            "{} on [-{}, {}]: zero-hitting {{{}}}, local-nilpotency candidates {{{}}}",
            self.polynomial.pretty(),
            self.range,
            self.range,
            nil.join(", "),
            cand.join(", ")
        )
    }
}

/// Probe the window [-range, range]: exact zero-hitting points, plus
/// local-nilpotency candidates with their certainty. Question marks in
/// the summary flag scan-backed candidates that no complete rule covers.
pub fn scan_point_sets(u: &Polynomial, range: i64, prime_bound: u64) -> Result<PointScan> {
    if range < 1 {
        return Err(Error::InvalidArgument(format!(
            "window bound {range} must be at least 1"
        )));
    }
    let empty = PrimeSupport::empty();
    let mut nilpotent_points = Vec::new();
    let mut candidates = Vec::new();
    for point in -range..=range {
        let r = BigInt::from(point);
        if let Some(index) = nilpotency_index(u, &r)? {
            nilpotent_points.push((r.clone(), index));
        }
        let classified = classify_with_bound(u, &r, &empty, prime_bound)?;
        let keep = match classified.verdict.membership() {
            Some(true) => Some(Certainty::Proved),
            None => Some(Certainty::Inconclusive),
            Some(false) => None,
        };
        if let Some(certainty) = keep {
            candidates.push(PointCandidate {
                point: r,
                verdict: classified.verdict.name().to_string(),
                certainty,
            });
        }
    }
    Ok(PointScan {
        polynomial: u.clone(),
        range,
        prime_bound,
        nilpotent_points,
        candidates,
    })
}
