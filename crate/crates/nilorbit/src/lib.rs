//! Forward orbits of integer polynomials under iteration, and the arithmetic
//! of when those orbits reach zero.
//!
//! Given `u` in `Z[x]` and a base point `r`, the crate answers three kinds of
//! question exactly:
//!
//! * does some iterate `u(u(...u(r)...))` equal zero, and after how many
//!   steps ([`orbits::nilpotency_index`]);
//! * for a prime `p`, does some iterate vanish mod `p`, and how is the
//!   orbit mod `p` shaped ([`modp::m_p`], [`modp::weak_local_scan`]);
//! * which polynomials have an iterate vanishing mod every prime outside a
//!   fixed excluded set ([`classify::classify`]), decided by closed-form
//!   rules rather than search wherever the rule tables apply.
//!
//! The [`verify`] module cross-checks the rule tables against brute-force
//! modular scans over coefficient boxes, and the [`cli`] module exposes the
//! whole thing as a small command-line tool. Run `cargo run --example` for
//! guided tours of each capability.

pub mod classify;
pub mod cli;
mod error;
pub mod modp;
pub mod numtheory;
pub mod orbits;
pub mod polynomial;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Version tag stamped into every machine-readable output.
pub const SCHEMA: &str = "nilorbit/1";

/// Prime bound used by decision procedures when the caller does not supply
/// one. Witness searches and default scans stop here.
pub const DEFAULT_PRIME_BOUND: u64 = 10_000;
