use std::fmt;

use num_bigint::BigInt;

/// Errors surfaced by the library. Every variant has a stable machine code
/// (see [`Error::code`]) used in CLI diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A prime range `[2, bound]` with `bound < 2` is empty.
    EmptyRange { bound: u64 },
    /// The prime support of 0 is undefined.
    UndefinedSupport,
    /// Zero or otherwise out-of-domain argument, explained in the message.
    InvalidArgument(String),
    /// Modulus is not prime.
    InvalidModulus(u64),
    /// Dynamical operations need degree >= 1; constants are representable
    /// but cannot be iterated meaningfully.
    ConstantPolynomial,
    /// Operation requires a specific degree shape (e.g. escape bounds only
    /// exist for degree >= 2).
    WrongDegree { required: &'static str },
    /// Linear closed forms need a nonzero slope.
    NotADynamicalMap,
    /// Base change to `v(x) = u(rx)/r` requires `r | u(0)`.
    NotDivisible { r: BigInt, constant: BigInt },
    /// Unknown verification suite name.
    UnknownSuite(String),
    /// Malformed textual input (polynomial or prime list).
    Parse(String),
}

impl Error {
    /// Stable, machine-parsable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyRange { .. } => "empty-range",
            Error::UndefinedSupport => "undefined-support",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::InvalidModulus(_) => "invalid-modulus",
            Error::ConstantPolynomial => "constant-polynomial",
            Error::WrongDegree { .. } => "wrong-degree",
            Error::NotADynamicalMap => "not-a-dynamical-map",
            Error::NotDivisible { .. } => "not-divisible",
            Error::UnknownSuite(_) => "unknown-suite",
            Error::Parse(_) => "parse",
        }
    }

    /// Process exit code class: parse failures are 2, domain failures 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyRange { bound } => {
                write!(f, "prime range [2, {bound}] is empty")
            }
            Error::UndefinedSupport => write!(f, "prime support of 0 is undefined"),
            Error::InvalidArgument(msg) => write!(f, "{msg}"),
            Error::InvalidModulus(p) => write!(f, "{p} is not prime"),
            Error::ConstantPolynomial => {
                write!(f, "constant polynomials cannot be iterated")
            }
            Error::WrongDegree { required } => write!(f, "requires {required}"),
            Error::NotADynamicalMap => {
                write!(f, "linear closed form requires a nonzero slope")
            }
            Error::NotDivisible { r, constant } => {
                write!(f, "{r} does not divide the constant term {constant}")
            }
            Error::UnknownSuite(name) => write!(f, "unknown suite '{name}'"),
            Error::Parse(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}
