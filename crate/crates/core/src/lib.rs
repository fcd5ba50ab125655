//! Exact and numeric verification of tangent products over power residues.
//!
//! For an odd prime `p ≡ 1 (mod 2m)` with `2` an m-th power residue, the
//! product of `1 + tan(π·ak/p)` over the m-th power residues `k` is
//! `(-2/p)_{2m} (-2)^{(p-1)/(2m)}`. This crate checks that statement and the
//! cyclotomic product identities behind it exactly in `Z[ζ_{4p}]`, and again
//! in floating point, over sweeps of primes.
//!
//! The cyclotomic layer is generic over the coefficient type ([`Coefficient`])
//! and the numeric layer over the float type; the aliases below fix the
//! reference choices (`BigInt` and `f64`).

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod harness;
pub mod numeric;
pub mod quadforms;
pub mod record;
pub mod residues;

pub use arith::PrimeContext;
pub use cyclotomic::{poly::Coefficient, CycloElement, CycloRing};
pub use error::{Error, Result};
pub use harness::{scan, ScanConfig};
pub use numeric::SignedMagnitude;
pub use quadforms::Representation;
pub use record::{Check, Status, VerificationRecord};
pub use residues::{ResidueSet, SignSymbol};

/// Arbitrary-precision coefficients; the reference path for every exact check.
pub type ExactRing = CycloRing<num_bigint::BigInt>;
pub type ExactElement = CycloElement<num_bigint::BigInt>;

/// Machine-word coefficients, for small orders where they cannot overflow.
pub type SmallRing = CycloRing<i64>;
pub type SmallElement = CycloElement<i64>;
pub type WideRing = CycloRing<i128>;
pub type WideElement = CycloElement<i128>;

pub type Magnitude = SignedMagnitude<f64>;
pub type Magnitude32 = SignedMagnitude<f32>;
