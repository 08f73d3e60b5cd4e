//! Exact membership decisions for orbit-vanishing classes.
//!
//! Each verdict is backed either by a complete classification rule for its
//! base point (recorded in `provenance` as a rule tag such as
//! "Thm4.1(4)"), by an exact orbit computation ("Orbit"), or by a witness
//! prime found by scanning ("Scan"). The one non-answer, `OutOfExactScope`,
//! marks query shapes for which no complete rule is known; it always
//! arrives with the scan evidence attached and is never silently turned
//! into a guess.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::modp::{weak_local_scan, find_witness, Certainty, ScanReport, ScanStatus};
use crate::numtheory::{prime_support, support_subset, PrimeSupport};
use crate::orbits::nilpotency_index;
use crate::polynomial::Polynomial;
use crate::{Error, Result, DEFAULT_PRIME_BOUND};

/// Membership verdict for one query (u, r, A).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Some iterate of r is exactly zero; strongest possible membership.
    Nilpotent { index: BigInt },
    /// Every prime admits a vanishing step, but no iterate is zero
    /// (membership in S_r; only meaningful when A is empty).
    InSr,
    /// Every prime outside A admits a vanishing step, no iterate is zero.
    WeaklyLocallyNilpotentOutsideA,
    /// Some prime outside A admits no vanishing step. The witness is a
    /// checkable certificate when one was found within the search bound;
    /// the verdict is rule-backed either way.
    NotWeaklyLocallyNilpotent { witness: Option<u64> },
    /// No complete rule covers this query shape.
    OutOfExactScope,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Nilpotent { .. } => "Nilpotent",
            Verdict::InSr => "InSr",
            Verdict::WeaklyLocallyNilpotentOutsideA => "WeaklyLocallyNilpotentOutsideA",
            Verdict::NotWeaklyLocallyNilpotent { .. } => "NotWeaklyLocallyNilpotent",
            Verdict::OutOfExactScope => "OutOfExactScope",
        }
    }

    /// Some(true) for member verdicts, Some(false) for non-member, None
    /// when the question was not decided.
    pub fn membership(&self) -> Option<bool> {
        match self {
            Verdict::Nilpotent { .. }
            | Verdict::InSr
            | Verdict::WeaklyLocallyNilpotentOutsideA => Some(true),
            Verdict::NotWeaklyLocallyNilpotent { .. } => Some(false),
            Verdict::OutOfExactScope => None,
        }
    }
}

/// A verdict together with the rule that produced it and the query it
/// answers. `scan` is attached when scanning took part in the decision.
#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    pub provenance: String,
    pub polynomial: Polynomial,
    pub base_point: BigInt,
    pub excluded: PrimeSupport,
    pub scan: Option<ScanReport>,
}

impl Classification {
    fn new(
        verdict: Verdict,
        provenance: impl Into<String>,
        u: &Polynomial,
        r: &BigInt,
        a: &PrimeSupport,
    ) -> Self {
        Classification {
            verdict,
            provenance: provenance.into(),
            polynomial: u.clone(),
            base_point: r.clone(),
            excluded: a.clone(),
            scan: None,
        }
    }

    pub fn certainty(&self) -> Certainty {
        match self.verdict {
            Verdict::OutOfExactScope => Certainty::Inconclusive,
            _ => Certainty::Proved,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let index = match &self.verdict {
            Verdict::Nilpotent { index } => serde_json::Value::String(index.to_string()),
            _ => serde_json::Value::Null,
        };
        let witness = match &self.verdict {
            Verdict::NotWeaklyLocallyNilpotent { witness } => {
                witness.map_or(serde_json::Value::Null, |w| w.into())
            }
            _ => serde_json::Value::Null,
        };
        let mut obj = serde_json::json!({
            "verdict": self.verdict.name(),
            "index": index,
            "witness": witness,
            "provenance": self.provenance,
            "certainty": match self.certainty() {
                Certainty::Proved => "proved",
                Certainty::Inconclusive => "inconclusive",
            },
            "polynomial": self.polynomial.to_string(),
            "base_point": self.base_point.to_string(),
            "excluded": self.excluded.primes(),
        });
        if let Some(scan) = &self.scan {
            obj["scan"] = scan.to_json();
        }
        obj
    }
}

fn require_map(u: &Polynomial) -> Result<()> {
    if u.is_constant() {
        Err(Error::ConstantPolynomial)
    } else {
        Ok(())
    }
}

/// Vanishing class of `u` started at 1, all primes considered, complete
/// for every degree: the orbit values 1, 2, 3 are forced step by step, so
/// four coefficient tests decide everything.
pub fn classify_at_one(u: &Polynomial) -> Result<Classification> {
    at_one(u, DEFAULT_PRIME_BOUND)
}

fn at_one(u: &Polynomial, bound: u64) -> Result<Classification> {
    require_map(u)?;
    let empty = PrimeSupport::empty();
    let one = BigInt::one();
    let u1 = u.eval(&one);
    if u1.is_zero() {
        return Ok(Classification::new(
            Verdict::Nilpotent { index: one.clone() },
            "Thm4.1(1)",
            u,
            &one,
            &empty,
        ));
    }
    if u1 == BigInt::from(2) {
        let u2 = u.eval(&BigInt::from(2));
        if u2.is_zero() {
            return Ok(Classification::new(
                Verdict::Nilpotent {
                    index: BigInt::from(2),
                },
                "Thm4.1(2)",
                u,
                &one,
                &empty,
            ));
        }
        if u2 == BigInt::from(3) && u.eval(&BigInt::from(3)).is_zero() {
            return Ok(Classification::new(
                Verdict::Nilpotent {
                    index: BigInt::from(3),
                },
                "Thm4.1(3)",
                u,
                &one,
                &empty,
            ));
        }
    }
    if *u == Polynomial::linear(1, 1) {
        return Ok(Classification::new(Verdict::InSr, "Thm4.1(4)", u, &one, &empty));
    }
    let witness = find_witness(u, &one, &empty, bound)?;
    Ok(Classification::new(
        Verdict::NotWeaklyLocallyNilpotent { witness },
        "Thm4.1",
        u,
        &one,
        &empty,
    ))
}

/// Vanishing class at -1: mirror the map through x -> -x and decide at 1.
/// Sign conjugation preserves zero hits and every per-prime vanishing
/// step, so the verdict carries over verbatim.
pub fn classify_at_minus_one(u: &Polynomial) -> Result<Classification> {
    at_minus_one(u, DEFAULT_PRIME_BOUND)
}

fn at_minus_one(u: &Polynomial, bound: u64) -> Result<Classification> {
    let inner = at_one(&u.conjugate(), bound)?;
    Ok(Classification {
        provenance: inner.provenance.replace("Thm4.1", "Cor4.2"),
        polynomial: u.clone(),
        base_point: BigInt::from(-1),
        ..inner
    })
}

/// Vanishing class at 0, complete for every degree. A zero hit from 0
/// happens within two steps or never; the non-nilpotent members are
/// exactly the linear maps with unit or support-dominated slope.
pub fn classify_at_zero(u: &Polynomial) -> Result<Classification> {
    at_zero(u, DEFAULT_PRIME_BOUND)
}

fn at_zero(u: &Polynomial, bound: u64) -> Result<Classification> {
    require_map(u)?;
    let empty = PrimeSupport::empty();
    let zero = BigInt::zero();
    let u0 = u.eval(&zero);
    if u0.is_zero() {
        return Ok(Classification::new(
            Verdict::Nilpotent { index: BigInt::one() },
            "Thm4.4(3)",
            u,
            &zero,
            &empty,
        ));
    }
    if u.eval(&u0).is_zero() {
        return Ok(Classification::new(
            Verdict::Nilpotent {
                index: BigInt::from(2),
            },
            "Thm4.4(4)",
            u,
            &zero,
            &empty,
        ));
    }
    if let Some((a, b)) = u.as_linear() {
        if !b.is_zero() {
            if a.is_one() {
                return Ok(Classification::new(Verdict::InSr, "Thm4.4(1)", u, &zero, &empty));
            }
            if a.abs() >= BigInt::from(2) && support_subset(a, b)? {
                return Ok(Classification::new(Verdict::InSr, "Thm4.4(2)", u, &zero, &empty));
            }
        }
    }
    let witness = find_witness(u, &zero, &empty, bound)?;
    Ok(Classification::new(
        Verdict::NotWeaklyLocallyNilpotent { witness },
        "Thm4.4",
        u,
        &zero,
        &empty,
    ))
}

/// Vanishing class of the linear map `a*x + b` started at 1, primes in
/// `excluded` exempt. Complete for every finite excluded set.
pub fn classify_linear_at_one_outside(
    a: &BigInt,
    b: &BigInt,
    excluded: &PrimeSupport,
) -> Result<Classification> {
    linear_at_one_outside(a, b, excluded, DEFAULT_PRIME_BOUND)
}

fn linear_at_one_outside(
    a: &BigInt,
    b: &BigInt,
    excluded: &PrimeSupport,
    bound: u64,
) -> Result<Classification> {
    if a.is_zero() {
        return Err(Error::NotADynamicalMap);
    }
    let u = Polynomial::linear(a.clone(), b.clone());
    let one = BigInt::one();
    if let Some(index) = nilpotency_index(&u, &one)? {
        // the only nilpotent linear maps at 1 are the multiples of x - 1
        // and the single map -2x + 4
        let tag = if *b == -a {
            "Thm5.1(2)"
        } else if *a == BigInt::from(-2) && *b == BigInt::from(4) {
            "Thm5.1(5)"
        } else {
            "Orbit"
        };
        return Ok(Classification::new(
            Verdict::Nilpotent { index },
            tag,
            &u,
            &one,
            excluded,
        ));
    }
    let member_tag = if a.is_one() && excluded.covers(b) {
        Some("Thm5.1(1)")
    } else if b.is_one() && a.abs() >= BigInt::from(2) && excluded.covers(a) {
        Some("Thm5.1(3)")
    } else if *a == BigInt::from(-2) && *b == BigInt::from(-1) && excluded.contains(2) {
        Some("Thm5.1(4)")
    } else {
        None
    };
    if let Some(tag) = member_tag {
        let verdict = if excluded.is_empty() {
            Verdict::InSr
        } else {
            Verdict::WeaklyLocallyNilpotentOutsideA
        };
        return Ok(Classification::new(verdict, tag, &u, &one, excluded));
    }
    let witness = find_witness(&u, &one, excluded, bound)?;
    Ok(Classification::new(
        Verdict::NotWeaklyLocallyNilpotent { witness },
        "Thm5.1",
        &u,
        &one,
        excluded,
    ))
}

/// Membership of the linear map `a*x + b` in S_r for |r| >= 2, all primes
/// considered. Negative r mirrors through x -> -x onto -r.
pub fn classify_linear_at_r(a: &BigInt, b: &BigInt, r: &BigInt) -> Result<Classification> {
    linear_at_r(a, b, r, DEFAULT_PRIME_BOUND)
}

fn linear_at_r(a: &BigInt, b: &BigInt, r: &BigInt, bound: u64) -> Result<Classification> {
    if a.is_zero() {
        return Err(Error::NotADynamicalMap);
    }
    if r.abs() < BigInt::from(2) {
        return Err(Error::InvalidArgument(format!(
            "base point {r} needs the dedicated classifier for 0 and +-1"
        )));
    }
    if r.is_negative() {
        let inner = linear_at_r(a, &(-b), &(-r), bound)?;
        return Ok(Classification {
            provenance: inner.provenance.replace("Thm5.3", "Cor5.4"),
            polynomial: Polynomial::linear(a.clone(), b.clone()),
            base_point: r.clone(),
            ..inner
        });
    }
    let u = Polynomial::linear(a.clone(), b.clone());
    let empty = PrimeSupport::empty();
    let two = BigInt::from(2);
    let member_tag = if a.is_one() && b.is_positive() && support_subset(b, r)? {
        Some("Thm5.3(1)")
    } else if a.is_one()
        && b.is_negative()
        && support_subset(&-b, r)?
        && !(r % &-b).is_zero()
    {
        // slope-one drops: the step must overshoot r in some prime power,
        // otherwise the walk lands exactly on zero (nilpotent, not S_r)
        Some("Thm5.3(2)")
    } else if a.abs() >= two {
        geometric_sum_member_tag(a, b, r)?
    } else {
        None
    };
    if let Some(tag) = member_tag {
        return Ok(Classification::new(Verdict::InSr, tag, &u, r, &empty));
    }
    if let Some(index) = nilpotency_index(&u, r)? {
        return Ok(Classification::new(
            Verdict::Nilpotent { index },
            "Orbit",
            &u,
            r,
            &empty,
        ));
    }
    let witness = find_witness(&u, r, &empty, bound)?;
    Ok(Classification::new(
        Verdict::NotWeaklyLocallyNilpotent { witness },
        "Thm5.3",
        &u,
        r,
        &empty,
    ))
}

/// Survivor test for steep slopes at r >= 2. The orbit of `a*x + b` is
/// b*(1 + a + ... + a^(m+n-1)) once some offset m >= 1 satisfies
/// b*(1 + a + ... + a^(m-1)) = r; membership needs that offset plus every
/// prime of a dividing b. The printed clause tags cover b = r and -2x-r,
/// composite bases admit further solutions tagged "(ext)".
fn geometric_sum_member_tag(a: &BigInt, b: &BigInt, r: &BigInt) -> Result<Option<&'static str>> {
    if b.is_zero() || !(r % b).is_zero() || !support_subset(a, b)? {
        return Ok(None);
    }
    let target = r / b;
    let mut sigma = BigInt::one();
    let mut power = a.clone();
    // |sigma| never shrinks as terms accrue, so stopping past |target| is exact
    while sigma.abs() <= target.abs() {
        if sigma == target {
            let tag = if target.is_one() {
                "Thm5.3(3)"
            } else if *a == BigInt::from(-2) && target == BigInt::from(-1) {
                "Thm5.3(4)"
            } else {
                "Thm5.3(ext)"
            };
            return Ok(Some(tag));
        }
        sigma += &power;
        power *= a;
    }
    Ok(None)
}

fn nilpotent_index_tag(r: &BigInt, index: &BigInt) -> String {
    let small = index.to_string();
    if r.is_one() && *index <= BigInt::from(3) {
        format!("Thm4.1({small})")
    } else if *r == BigInt::from(-1) && *index <= BigInt::from(3) {
        format!("Cor4.2({small})")
    } else if r.is_zero() && index.is_one() {
        "Thm4.4(3)".to_string()
    } else if r.is_zero() && *index == BigInt::from(2) {
        "Thm4.4(4)".to_string()
    } else {
        "Orbit".to_string()
    }
}

/// Full dispatch: decide the vanishing class of `u` at `r` with primes in
/// `excluded` exempt, using the default witness-search bound.
pub fn classify(u: &Polynomial, r: &BigInt, excluded: &PrimeSupport) -> Result<Classification> {
    classify_with_bound(u, r, excluded, DEFAULT_PRIME_BOUND)
}

/// [`classify`] with an explicit prime bound for witness searches and
/// evidence scans. The bound never affects which verdicts are reachable,
/// only how hard the search for a certificate or for scan evidence tries.
pub fn classify_with_bound(
    u: &Polynomial,
    r: &BigInt,
    excluded: &PrimeSupport,
    bound: u64,
) -> Result<Classification> {
    require_map(u)?;

    if u.degree() >= 2 {
        if let Some(index) = nilpotency_index(u, r)? {
            let tag = nilpotent_index_tag(r, &index);
            return Ok(Classification::new(
                Verdict::Nilpotent { index },
                tag,
                u,
                r,
                excluded,
            ));
        }
        // degree >= 2 and non-nilpotent rules out weak local nilpotency
        // outside every finite set; the witness is a bonus certificate
        let witness = find_witness(u, r, excluded, bound)?;
        return Ok(Classification::new(
            Verdict::NotWeaklyLocallyNilpotent { witness },
            "Fact1.1",
            u,
            r,
            excluded,
        ));
    }

    let (a, b) = u.as_linear().expect("degree 1");
    if excluded.is_empty() {
        if r.is_one() {
            return at_one(u, bound);
        }
        if *r == BigInt::from(-1) {
            return at_minus_one(u, bound);
        }
        if r.is_zero() {
            return at_zero(u, bound);
        }
        return linear_at_r(a, b, r, bound);
    }

    if r.is_one() {
        return linear_at_one_outside(a, b, excluded, bound);
    }
    if *r == BigInt::from(-1) {
        let inner = linear_at_one_outside(a, &(-b), excluded, bound)?;
        return Ok(Classification {
            provenance: format!("Fact3.1+{}", inner.provenance),
            polynomial: u.clone(),
            base_point: r.clone(),
            ..inner
        });
    }
    if r.is_zero() {
        if let Some(index) = nilpotency_index(u, r)? {
            let tag = nilpotent_index_tag(r, &index);
            return Ok(Classification::new(
                Verdict::Nilpotent { index },
                tag,
                u,
                r,
                excluded,
            ));
        }
        // membership with all primes considered transfers to any exempt
        // set; beyond that no complete rule is known for this shape
        if !b.is_zero() && (a.is_one() || (a.abs() >= BigInt::from(2) && support_subset(a, b)?)) {
            let tag = if a.is_one() { "Thm4.4(1)" } else { "Thm4.4(2)" };
            return Ok(Classification::new(
                Verdict::WeaklyLocallyNilpotentOutsideA,
                tag,
                u,
                r,
                excluded,
            ));
        }
        return scan_fallback(u, r, excluded, bound, "");
    }

    // |r| >= 2 with a nonempty exempt set: mirror negative base points,
    // then shift the question to base point 1 when r divides b
    let (na, nb, nr, prefix) = if r.is_negative() {
        (a.clone(), -b, -r, "Fact3.1+")
    } else {
        (a.clone(), b.clone(), r.clone(), "")
    };
    if (&nb % &nr).is_zero() {
        let shifted = prime_support(&nr, excluded)?;
        let wider = excluded.union(&shifted);
        let inner = linear_at_one_outside(&na, &(&nb / &nr), &wider, bound)?;
        return Ok(Classification {
            provenance: format!("{prefix}Reduction+{}", inner.provenance),
            polynomial: u.clone(),
            base_point: r.clone(),
            excluded: excluded.clone(),
            ..inner
        });
    }
    let mirrored = Polynomial::linear(na, nb);
    let mut out = scan_fallback(&mirrored, &nr, excluded, bound, prefix)?;
    out.polynomial = u.clone();
    out.base_point = r.clone();
    Ok(out)
}

/// Last resort for query shapes with no complete rule: scan for a witness.
/// A found witness is a full disproof certificate; an all-found table is
/// only evidence and the question stays open.
fn scan_fallback(
    u: &Polynomial,
    r: &BigInt,
    excluded: &PrimeSupport,
    bound: u64,
    prefix: &str,
) -> Result<Classification> {
    let report = weak_local_scan(u, r, excluded, bound)?;
    let verdict = match report.status {
        ScanStatus::WitnessFound { first } => Verdict::NotWeaklyLocallyNilpotent {
            witness: Some(first),
        },
        ScanStatus::AllFoundUpToBound => Verdict::OutOfExactScope,
    };
    let mut out = Classification::new(verdict, format!("{prefix}Scan"), u, r, excluded);
    out.scan = Some(report);
    Ok(out)
}
