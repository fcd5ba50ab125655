use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;

use super::{CycloElement, CycloRing};
use crate::arith::PrimeContext;
use crate::error::{Error, Result};
use crate::record::{Check, VerificationRecord};
use crate::residues::{require_two_in_residues, residue_set, symbol_sign, ResidueSet};
use crate::Coefficient;

/// The two-term factor `sign1·x^exp1 + sign2·x^exp2`, signs in `{-1, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Binomial {
    pub sign1: i8,
    pub exp1: usize,
    pub sign2: i8,
    pub exp2: usize,
}

impl Binomial {
    pub fn new(sign1: i8, exp1: usize, sign2: i8, exp2: usize) -> Self {
        Self {
            sign1,
            exp1,
            sign2,
            exp2,
        }
    }
}

/// Canonical product of sparse binomials, folding modulo `x^n - 1` after
/// every factor. An empty list gives 1.
pub fn binomial_product<T: Coefficient>(
    ring: &Arc<CycloRing<T>>,
    factors: &[Binomial],
) -> CycloElement<T> {
    let n = ring.n();
    let mut acc = vec![T::zero(); n];
    acc[0] = T::one();
    let mut next = vec![T::zero(); n];
    // exponents >= `support` are known to be zero in `acc`
    let mut support = 1usize;
    for f in factors {
        assert!(f.exp1 < n && f.exp2 < n, "binomial exponent out of range");
        let reach = (support + f.exp1.max(f.exp2)).min(n);
        for (j, slot) in next.iter_mut().enumerate().take(reach) {
            let i1 = (j + n - f.exp1) % n;
            let i2 = (j + n - f.exp2) % n;
            slot.clone_from(&acc[i1]);
            if f.sign1 < 0 {
                *slot = -std::mem::replace(slot, T::zero());
            }
            if f.sign2 < 0 {
                *slot -= &acc[i2];
            } else {
                *slot += &acc[i2];
            }
        }
        for slot in next.iter_mut().skip(reach) {
            slot.set_zero();
        }
        support = reach;
        std::mem::swap(&mut acc, &mut next);
    }
    CycloElement::from_coeffs(ring, acc).reduce()
}

fn require_unit(a: i64, ctx: &PrimeContext) -> Result<u64> {
    match ctx.residue(a) {
        0 => Err(Error::InvalidInput(format!(
            "a = {a} is divisible by {}",
            ctx.p()
        ))),
        r => Ok(r),
    }
}

fn prepare(ctx: &PrimeContext, m: u64, a: i64) -> Result<(ResidueSet, u64)> {
    let a = require_unit(a, ctx)?;
    require_two_in_residues(ctx, m)?;
    Ok((residue_set(ctx, m)?, a))
}

/// Factors `i ∓ e^{2πiak/p} = x^p ∓ x^{4(ak mod p)}` over `k ∈ R_m(p)`.
fn gi_factors(ctx: &PrimeContext, set: &ResidueSet, a: u64, plus: bool) -> Vec<Binomial> {
    let p = ctx.p();
    let sign2 = if plus { 1 } else { -1 };
    set.iter()
        .map(|k| {
            let ak = ((a as u128 * k as u128) % p as u128) as usize;
            Binomial::new(1, p as usize, sign2, 4 * ak)
        })
        .collect()
}

/// `sign · i^e` as an element of `Z[ζ_{4p}]`.
fn signed_i_power<T: Coefficient>(
    ring: &Arc<CycloRing<T>>,
    p: u64,
    sign: i8,
    e: u64,
) -> CycloElement<T> {
    let c = if sign < 0 { -T::one() } else { T::one() };
    CycloElement::monomial(ring, c, (p * (e % 4)) as usize)
}

fn ring_for<T: Coefficient>(ring: &Arc<CycloRing<T>>, ctx: &PrimeContext) -> Result<()> {
    if ring.n() as u64 != 4 * ctx.p() {
        return Err(Error::RingMismatch {
            left: ring.n(),
            right: 4 * ctx.p() as usize,
        });
    }
    Ok(())
}

/// `∏_{k∈R_m(p)} (i - e^{2πiak/p})`, or with `+` when `plus`, in canonical form.
pub fn gi_product(ctx: &PrimeContext, m: u64, a: i64, plus: bool) -> Result<CycloElement<BigInt>> {
    let ring = CycloRing::for_prime(ctx.p())?;
    let (set, a) = prepare(ctx, m, a)?;
    Ok(binomial_product(&ring, &gi_factors(ctx, &set, a, plus)))
}

fn verify_gi_sign<T: Coefficient>(
    ring: &Arc<CycloRing<T>>,
    ctx: &PrimeContext,
    m: u64,
    a: i64,
    plus: bool,
) -> Result<VerificationRecord> {
    ring_for(ring, ctx)?;
    let (set, a_red) = prepare(ctx, m, a)?;
    let p = ctx.p();
    let lhs = binomial_product(ring, &gi_factors(ctx, &set, a_red, plus));
    let symbol = symbol_sign(if plus { 2 } else { -2 }, ctx, m)?;
    let rhs = signed_i_power(ring, p, symbol.value, (p - 1) / (2 * m));
    let check = if plus { Check::GiPlus } else { Check::Gi };
    Ok(VerificationRecord::exact(
        p,
        m,
        a,
        check,
        rhs.render(),
        lhs.render(),
    ))
}

/// Exact check of `∏ (i - e^{2πiak/p}) = (-2/p)_{2m} · i^{(p-1)/(2m)}` in a caller-supplied ring.
pub fn verify_gi_in<T: Coefficient>(
    ring: &Arc<CycloRing<T>>,
    ctx: &PrimeContext,
    m: u64,
    a: i64,
) -> Result<VerificationRecord> {
    verify_gi_sign(ring, ctx, m, a, false)
}

/// As [`verify_gi_in`] for `∏ (i + e^{2πiak/p}) = (2/p)_{2m} · i^{(p-1)/(2m)}`.
pub fn verify_gi_plus_in<T: Coefficient>(
    ring: &Arc<CycloRing<T>>,
    ctx: &PrimeContext,
    m: u64,
    a: i64,
) -> Result<VerificationRecord> {
    verify_gi_sign(ring, ctx, m, a, true)
}

pub fn verify_gi(ctx: &PrimeContext, m: u64, a: i64) -> Result<VerificationRecord> {
    verify_gi_in(&CycloRing::<BigInt>::for_prime(ctx.p())?, ctx, m, a)
}

pub fn verify_gi_plus(ctx: &PrimeContext, m: u64, a: i64) -> Result<VerificationRecord> {
    verify_gi_plus_in(&CycloRing::<BigInt>::for_prime(ctx.p())?, ctx, m, a)
}

/// `(-2/p)_{2m} · (-2)^{(p-1)/(2m)}`, the value of the tangent product.
pub fn main_identity_value(ctx: &PrimeContext, m: u64) -> Result<BigInt> {
    require_two_in_residues(ctx, m)?;
    let delta = symbol_sign(-2, ctx, m)?.value;
    let e = ((ctx.p() - 1) / (2 * m)) as u32;
    Ok(BigInt::from(delta) * BigInt::from(-2).pow(e))
}

/// Both sides of the cross-multiplied tangent identity
/// `(i - 1)^{|R_m(p)|} = scalar · ∏ (i - e^{2πiak/p})`.
pub fn tan_cross_sides<T: Coefficient>(
    ring: &Arc<CycloRing<T>>,
    ctx: &PrimeContext,
    m: u64,
    a: i64,
    scalar: &T,
) -> Result<(CycloElement<T>, CycloElement<T>)> {
    ring_for(ring, ctx)?;
    let (set, a_red) = prepare(ctx, m, a)?;
    let p = ctx.p() as usize;
    let i_minus_one = vec![Binomial::new(1, p, -1, 0); set.len()];
    let lhs = binomial_product(ring, &i_minus_one);
    let rhs = binomial_product(ring, &gi_factors(ctx, &set, a_red, false)).scale(scalar);
    Ok((lhs, rhs.reduce()))
}

pub fn verify_tan_cross_in<T: Coefficient>(
    ring: &Arc<CycloRing<T>>,
    ctx: &PrimeContext,
    m: u64,
    a: i64,
) -> Result<VerificationRecord> {
    require_two_in_residues(ctx, m)?;
    let delta = symbol_sign(-2, ctx, m)?.value;
    let scalar = (0..(ctx.p() - 1) / (2 * m))
        .fold(T::from_int(delta as i64), |acc, _| acc * T::from_int(-2));
    let (lhs, rhs) = tan_cross_sides(ring, ctx, m, a, &scalar)?;
    Ok(VerificationRecord::exact(
        ctx.p(),
        m,
        a,
        Check::ThmMainExact,
        lhs.render(),
        rhs.render(),
    ))
}

/// Exact, transcendental-free check of the tangent product identity.
pub fn verify_tan_cross(ctx: &PrimeContext, m: u64, a: i64) -> Result<VerificationRecord> {
    verify_tan_cross_in(&CycloRing::<BigInt>::for_prime(ctx.p())?, ctx, m, a)
}
