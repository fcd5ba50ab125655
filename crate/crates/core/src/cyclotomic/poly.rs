//! Dense integer polynomials, coefficient vectors in ascending degree.
//!
//! Everything here is generic over [`Coefficient`] so the same code runs on
//! machine integers (fast, overflow-checked in debug) and on `BigInt` (the
//! reference path).

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, SubAssign};

use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer type usable as a polynomial coefficient.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every coefficient type")
    }
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + for<'a> AddAssign<&'a T>
        + for<'a> SubAssign<&'a T>
{
}

/// Drops trailing zero coefficients; the zero polynomial becomes `[]`.
pub fn trim<T: Coefficient>(coeffs: &mut Vec<T>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

pub fn degree<T: Coefficient>(coeffs: &[T]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

pub fn from_i64s<T: Coefficient>(coeffs: &[i64]) -> Vec<T> {
    coeffs.iter().map(|&c| T::from_int(c)).collect()
}

/// `x^d - 1`.
pub fn x_pow_minus_one<T: Coefficient>(d: usize) -> Vec<T> {
    let mut out = vec![T::zero(); d + 1];
    out[0] = -T::one();
    out[d] = T::one();
    out
}

pub fn mul<T: Coefficient>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out[i + j] += &(ai.clone() * bj.clone());
        }
    }
    trim(&mut out);
    out
}

/// Nonzero `(degree, coefficient)` pairs of `divisor` below its leading term.
fn lower_terms<T: Coefficient>(divisor: &[T], deg: usize) -> Vec<(usize, T)> {
    divisor[..deg]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j, c.clone()))
        .collect()
}

/// Reduces `coeffs` in place modulo a monic `divisor`, returning the quotient.
///
/// The remainder is left in `coeffs`, trimmed. Zero coefficients of the
/// divisor are skipped, which matters for sparse cyclotomic polynomials.
pub fn rem_monic_in_place<T: Coefficient>(coeffs: &mut Vec<T>, divisor: &[T]) -> Vec<T> {
    let deg = degree(divisor).expect("division by the zero polynomial");
    assert!(divisor[deg].is_one(), "divisor must be monic");
    let terms = lower_terms(divisor, deg);
    trim(coeffs);
    if coeffs.len() <= deg {
        return Vec::new();
    }
    let mut quotient = vec![T::zero(); coeffs.len() - deg];
    for top in (deg..coeffs.len()).rev() {
        if coeffs[top].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut coeffs[top], T::zero());
        let shift = top - deg;
        for (j, c) in &terms {
            if c.is_one() {
                coeffs[shift + j] -= &lead;
            } else if (-c.clone()).is_one() {
                coeffs[shift + j] += &lead;
            } else {
                coeffs[shift + j] -= &(lead.clone() * c.clone());
            }
        }
        quotient[shift] = lead;
    }
    trim(coeffs);
    trim(&mut quotient);
    quotient
}

/// Quotient and remainder of `num` by a monic `divisor`.
pub fn div_rem_monic<T: Coefficient>(num: &[T], divisor: &[T]) -> (Vec<T>, Vec<T>) {
    let mut rem = num.to_vec();
    let q = rem_monic_in_place(&mut rem, divisor);
    (q, rem)
}

/// Exact quotient by `x^d - 1` in O(deg) additions.
///
/// Returns `None` when the division leaves a remainder.
pub fn div_exact_x_pow_minus_one<T: Coefficient>(num: &[T], d: usize) -> Option<Vec<T>> {
    assert!(d > 0);
    let mut rem = num.to_vec();
    trim(&mut rem);
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() <= d {
        return None;
    }
    let mut q = vec![T::zero(); rem.len() - d];
    for top in (d..rem.len()).rev() {
        if rem[top].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut rem[top], T::zero());
        rem[top - d] += &lead;
        q[top - d] = lead;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Folds exponents modulo `n`, i.e. reduces modulo `x^n - 1`. Output has length `n`.
pub fn fold<T: Coefficient>(coeffs: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n];
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out[j % n] += c;
        }
    }
    out
}
