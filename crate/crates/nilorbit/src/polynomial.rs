//! Integer polynomials with exact coefficient arithmetic.
//!
//! Coefficients are arbitrary-precision and stored constant-first, so the
//! text form `"-3,7,-2"` is the map `x -> -2x^2 + 7x - 3`. Iteration always
//! composes values, never symbols: the n-th iterate of a degree-d map has
//! degree d^n and would explode symbolically, while its value at a point is
//! cheap.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::numtheory::is_prime;
use crate::{Error, Result};

/// A polynomial in `Z[x]`, constant coefficient first.
///
/// The representation is canonical: no trailing zero coefficients, and the
/// zero polynomial is a single zero. Constants are representable so they
/// can be parsed and printed, but every dynamical operation rejects them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// Build from constant-first coefficients, dropping trailing zeros.
    pub fn new<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.len() > 1 && coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Polynomial { coeffs }
    }

    /// The linear map `a*x + b`.
    pub fn linear(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Polynomial::new([b.into(), a.into()])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn leading_coeff(&self) -> &BigInt {
        self.coeffs.last().expect("coeffs nonempty")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// `(a, b)` when this is exactly `a*x + b` with `a != 0`.
    pub fn as_linear(&self) -> Option<(&BigInt, &BigInt)> {
        if self.degree() == 1 {
            Some((&self.coeffs[1], &self.coeffs[0]))
        } else {
            None
        }
    }

    fn require_dynamical(&self) -> Result<()> {
        if self.is_constant() {
            Err(Error::ConstantPolynomial)
        } else {
            Ok(())
        }
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = self.leading_coeff().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc * x + c;
        }
        acc
    }

    /// Value of the n-th iterate at `r` (`n = 0` gives `r` back). Composes
    /// values, so cost grows with the size of the orbit values, not with
    /// the symbolic degree of the iterate.
    pub fn iterate(&self, r: &BigInt, n: u64) -> Result<BigInt> {
        self.require_dynamical()?;
        let mut x = r.clone();
        for _ in 0..n {
            x = self.eval(&x);
        }
        Ok(x)
    }

    /// Evaluation mod a prime `p`, with coefficients reduced up front and
    /// every intermediate kept below `p`.
    pub fn eval_mod(&self, x: u64, p: u64) -> Result<u64> {
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let coeffs = self.coeffs_mod(p);
        Ok(horner_mod(&coeffs, x % p, p))
    }

    /// Coefficients reduced into `[0, p)`, constant-first.
    pub(crate) fn coeffs_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
            .collect()
    }

    /// The sign-conjugate map `v(x) = -u(-x)`, i.e. coefficientwise
    /// `v_i = (-1)^(i+1) c_i`. Iterating `v` from `-r` mirrors iterating
    /// `u` from `r` with all signs flipped, so orbit structure at `r` and
    /// `-r` correspond exactly.
    pub fn conjugate(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { -c } else { c.clone() })
            .collect::<Vec<_>>();
        Polynomial::new(coeffs)
    }

    /// Base change `v(x) = u(r*x) / r` for `r >= 1` dividing the constant
    /// term: coefficientwise `v_i = c_i * r^(i-1)` with `v_0 = c_0 / r`.
    /// Then `r * v^(n)(1) = u^(n)(r)` for every `n`, which moves questions
    /// about the orbit of `r` to the orbit of 1.
    pub fn reduce_at(&self, r: &BigInt) -> Result<Polynomial> {
        if !r.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "base change requires r >= 1, got {r}"
            )));
        }
        if !(self.constant_term() % r).is_zero() {
            return Err(Error::NotDivisible {
                r: r.clone(),
                constant: self.constant_term().clone(),
            });
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(self.constant_term() / r);
        let mut rpow = BigInt::one();
        for c in self.coeffs.iter().skip(1) {
            coeffs.push(c * &rpow);
            rpow *= r;
        }
        Ok(Polynomial::new(coeffs))
    }

    /// Human-oriented rendering like `-2x^2 + 7x - 3`. The canonical
    /// interchange form stays the comma list from `Display`.
    pub fn pretty(&self) -> String {
        if self.is_constant() {
            return self.coeffs[0].to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => {
                    out.push_str("x^");
                    out.push_str(&i.to_string());
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parse the comma list `"c0,c1,...,cd"` (constant first).
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs = Vec::new();
        for part in trimmed.split(',') {
            let part = part.trim();
            let c = BigInt::from_str(part).map_err(|_| {
                Error::Parse(format!("bad coefficient '{part}' in '{trimmed}'"))
            })?;
            coeffs.push(c);
        }
        Ok(Polynomial::new(coeffs))
    }
}

pub(crate) fn horner_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = *coeffs.last().expect("coeffs nonempty") as u128;
    let (x, p) = (x as u128, p as u128);
    for c in coeffs.iter().rev().skip(1) {
        acc = (acc * x + *c as u128) % p;
    }
    (acc % p) as u64
}

/// Value of the n-th iterate of `a*x + b` at `r`, in closed form:
/// `a^n * r + b * (a^(n-1) + ... + a + 1)`. Requires `a != 0`.
pub fn linear_closed_form(a: &BigInt, b: &BigInt, r: &BigInt, n: u64) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::NotADynamicalMap);
    }
    let apow = Pow::pow(a, n);
    let geom = if a.is_one() {
        BigInt::from(n)
    } else {
        (&apow - BigInt::one()) / (a - BigInt::one())
    };
    Ok(apow * r + b * geom)
}
