//! Floating-point tangent products, accumulated as sign and base-2 log
//! magnitude so that values like `2^{(p-1)/2}` never overflow.
//!
//! The exact cyclotomic checks are authoritative; these are a sanity layer
//! against the transcendental form of the same identities.

use std::fmt;

use num_traits::{Float, FloatConst};

use crate::arith::{jacobi, PrimeContext};
use crate::error::{Error, Result};
use crate::record::{Check, Status, VerificationRecord};
use crate::residues::{require_two_in_residues, residue_set, symbol_sign};

/// Default relative tolerance for numeric comparisons.
pub const DEFAULT_REL_TOL: f64 = 1e-6;

/// Factors smaller than this in absolute value get a precision warning.
const NEAR_ZERO_FACTOR: f64 = 1e-12;

/// Inputs closer than this to a tangent pole are rejected.
const POLE_GUARD: f64 = 1e-9;

/// Right sides smaller than this are compared absolutely.
const ZERO_CROSSING: f64 = 1e-9;

/// `sign · 2^log2_mag`; `sign == 0` encodes zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedMagnitude<F> {
    pub sign: i8,
    pub log2_mag: F,
}

impl<F: Float> SignedMagnitude<F> {
    pub fn one() -> Self {
        Self {
            sign: 1,
            log2_mag: F::zero(),
        }
    }

    pub fn from_value(v: F) -> Self {
        if v.is_zero() {
            Self {
                sign: 0,
                log2_mag: F::neg_infinity(),
            }
        } else {
            Self {
                sign: if v < F::zero() { -1 } else { 1 },
                log2_mag: v.abs().log2(),
            }
        }
    }

    /// `sign · 2^exp` for an exact integer exponent.
    pub fn power_of_two(sign: i8, exp: u64) -> Self {
        Self {
            sign,
            log2_mag: F::from(exp).expect("exponent fits the float type"),
        }
    }

    /// Back to a plain float; overflows to infinity for large magnitudes.
    pub fn value(&self) -> F {
        match self.sign {
            0 => F::zero(),
            s => F::from(s).unwrap() * self.log2_mag.exp2(),
        }
    }

    /// Same sign and `|Δ log2| <= log2(1 + rel_tol)`.
    pub fn approx_eq(&self, other: &Self, rel_tol: F) -> bool {
        self.sign == other.sign
            && (self.sign == 0
                || (self.log2_mag - other.log2_mag).abs() <= (F::one() + rel_tol).log2())
    }
}

impl<F: Float> std::ops::Mul for SignedMagnitude<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self {
            sign: self.sign * rhs.sign,
            log2_mag: self.log2_mag + rhs.log2_mag,
        }
    }
}

impl<F: Float + fmt::Display> fmt::Display for SignedMagnitude<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => f.write_str("0"),
            s => write!(
                f,
                "{}2^{:.12}",
                if s < 0 { "-" } else { "+" },
                self.log2_mag
            ),
        }
    }
}

/// Running product of real factors in sign/log form.
#[derive(Debug, Clone, Copy)]
struct Accumulator<F> {
    product: SignedMagnitude<F>,
    min_abs: F,
}

impl<F: Float> Accumulator<F> {
    fn new() -> Self {
        Self {
            product: SignedMagnitude::one(),
            min_abs: F::infinity(),
        }
    }

    fn push(&mut self, factor: F) {
        self.min_abs = self.min_abs.min(factor.abs());
        self.product = self.product * SignedMagnitude::from_value(factor);
    }

    fn warning(&self) -> &'static str {
        if self.min_abs < F::from(NEAR_ZERO_FACTOR).unwrap() {
            " [precision warning: near-zero factor]"
        } else {
            ""
        }
    }
}

/// Reduces `t` modulo 1 into `[-1/2, 1/2)`.
fn reduce_turns<F: Float>(t: F) -> F {
    let half = F::from(0.5).unwrap();
    t - (t + half).floor()
}

/// `1 + tan(π·t)` with `t` first reduced modulo 1.
pub fn one_plus_tan_turns<F: Float + FloatConst>(t: F) -> F {
    F::one() + (F::PI() * reduce_turns(t)).tan()
}

/// `1 + tan(π·num/den)` for an integer ratio, reduced exactly before conversion.
fn one_plus_tan_ratio<F: Float + FloatConst>(num: u64, den: u64) -> F {
    let r = num % den;
    // r/den in (-1/2, 1/2]
    let signed = if 2 * r > den {
        r as i128 - den as i128
    } else {
        r as i128
    };
    let t = F::from(signed).unwrap() / F::from(den).unwrap();
    F::one() + (F::PI() * t).tan()
}

/// The reduced numerators `ak mod p` for `k ∈ R_m(p)`, in the residue set's order.
pub fn factor_numerators(ctx: &PrimeContext, m: u64, a: i64) -> Result<Vec<u64>> {
    let a = nonzero(ctx, a)?;
    let p = ctx.p();
    Ok(residue_set(ctx, m)?
        .iter()
        .map(|k| ((a as u128 * k as u128) % p as u128) as u64)
        .collect())
}

fn nonzero(ctx: &PrimeContext, a: i64) -> Result<u64> {
    match ctx.residue(a) {
        0 => Err(Error::InvalidInput(format!(
            "a = {a} is divisible by {}",
            ctx.p()
        ))),
        r => Ok(r),
    }
}

fn tan_product_acc<F: Float + FloatConst>(
    ctx: &PrimeContext,
    m: u64,
    a: i64,
) -> Result<Accumulator<F>> {
    let mut acc = Accumulator::new();
    for num in factor_numerators(ctx, m, a)? {
        let factor: F = one_plus_tan_ratio(num, ctx.p());
        assert!(!factor.is_zero(), "1 + tan(pi*{num}/{}) vanished", ctx.p());
        acc.push(factor);
    }
    Ok(acc)
}

/// `∏_{k∈R_m(p)} (1 + tan(π·ak/p))`, left to right over ascending `k`.
pub fn tan_product<F: Float + FloatConst>(
    ctx: &PrimeContext,
    m: u64,
    a: i64,
) -> Result<SignedMagnitude<F>> {
    Ok(tan_product_acc(ctx, m, a)?.product)
}

/// Sign and power of two of `(-2/p)_{2m} · (-2)^{(p-1)/(2m)}`.
pub fn theorem_main_expected(ctx: &PrimeContext, m: u64) -> Result<(i8, u64)> {
    require_two_in_residues(ctx, m)?;
    let delta = symbol_sign(-2, ctx, m)?.value;
    let e = (ctx.p() - 1) / (2 * m);
    Ok((if e % 2 == 0 { delta } else { -delta }, e))
}

fn numeric_record(
    p: u64,
    m: u64,
    a: i64,
    check: Check,
    expected: SignedMagnitude<f64>,
    got: SignedMagnitude<f64>,
    ok: bool,
    rel_tol: f64,
    warning: &str,
) -> VerificationRecord {
    VerificationRecord::with_status(
        p,
        m,
        a,
        check,
        if ok { Status::Pass } else { Status::Fail },
        format!("{expected} rel_tol={rel_tol:e}"),
        format!("{got}{warning}"),
    )
}

/// Numeric check of the tangent product identity in the log domain.
pub fn verify_theorem_main_numeric(
    ctx: &PrimeContext,
    m: u64,
    a: i64,
    rel_tol: f64,
) -> Result<VerificationRecord> {
    nonzero(ctx, a)?;
    let (sign, e) = theorem_main_expected(ctx, m)?;
    let expected = SignedMagnitude::power_of_two(sign, e);
    let acc = tan_product_acc::<f64>(ctx, m, a)?;
    let ok = acc.product.approx_eq(&expected, rel_tol);
    Ok(numeric_record(
        ctx.p(),
        m,
        a,
        Check::ThmMainNumeric,
        expected,
        acc.product,
        ok,
        rel_tol,
        acc.warning(),
    ))
}

/// Both sides of `∏_{r<n} (1 + tan π(x+r)/n) = (2/n) 2^{(n-1)/2} (1 + (-1/n) tan πx)`.
///
/// Returns `(lhs, lhs / 2^{(n-1)/2}, core)` where `core = (2/n)(1 + (-1/n) tan πx)`
/// is the right side divided by the same power of two.
pub fn pmd_lemma_sides<F: Float + FloatConst>(n: u64, x: F) -> Result<(SignedMagnitude<F>, F, F)> {
    if n % 2 == 0 {
        return Err(Error::InvalidInput(format!("n = {n} must be odd")));
    }
    let nf = F::from(n).unwrap();
    let half = F::from(0.5).unwrap();
    let guard = F::from(POLE_GUARD).unwrap();
    let pole_distance = |t: F| reduce_turns(t - half).abs();
    if pole_distance(x) < guard {
        return Err(Error::PoleProximity {
            distance: pole_distance(x).to_f64().unwrap_or(0.0),
        });
    }
    let mut acc = Accumulator::new();
    let mut lhs_scaled = F::one();
    let scale_step = F::from(2.0).unwrap().sqrt();
    for r in 0..n {
        let t = (x + F::from(r).unwrap()) / nf;
        // pole distance measured in units of x
        let distance = pole_distance(t) * nf;
        if distance < guard {
            return Err(Error::PoleProximity {
                distance: distance.to_f64().unwrap_or(0.0),
            });
        }
        let factor = one_plus_tan_turns(t);
        acc.push(factor);
        lhs_scaled = lhs_scaled * factor;
        if r > 0 {
            lhs_scaled = lhs_scaled / scale_step;
        }
    }
    let chi2 = F::from(jacobi(2, n)).unwrap();
    let chi_minus1 = F::from(jacobi(-1, n)).unwrap();
    let core = chi2 * (F::one() + chi_minus1 * (F::PI() * reduce_turns(x)).tan());
    Ok((acc.product, lhs_scaled, core))
}

/// Numeric check of the classical full-period tangent product.
///
/// Relative comparison in the log domain, except at zero crossings: when
/// `|(2/n)(1 + (-1/n) tan πx)| < 1e-9` the sides are compared absolutely after
/// dividing both by `2^{(n-1)/2}`, since rounding in the vanishing factor is
/// amplified by the remaining ones.
pub fn pmd_lemma_identity(n: u64, x: f64, rel_tol: f64) -> Result<VerificationRecord> {
    let (lhs, lhs_scaled, core) = pmd_lemma_sides::<f64>(n, x)?;
    let rhs = SignedMagnitude::from_value(core) * SignedMagnitude::power_of_two(1, (n - 1) / 2);
    let zero_crossing = core.abs() < ZERO_CROSSING;
    let ok = if zero_crossing {
        (lhs_scaled - core).abs() <= rel_tol
    } else {
        lhs.approx_eq(&rhs, rel_tol)
    };
    // near zero the record shows the scaled sides that were compared
    let (expected, actual) = if zero_crossing {
        (
            format!("{core:+.12e}/2^{} abs_tol={rel_tol:e} x={x}", (n - 1) / 2),
            format!("{lhs_scaled:+.12e}/2^{}", (n - 1) / 2),
        )
    } else {
        (format!("{rhs} rel_tol={rel_tol:e} x={x}"), format!("{lhs}"))
    };
    Ok(VerificationRecord::with_status(
        n,
        1,
        0,
        Check::PmdLemma,
        if ok { Status::Pass } else { Status::Fail },
        expected,
        actual,
    ))
}

/// `(-1)^{#{1 <= k < p/4 : (k/p) = 1}} · 2^{(p-1)/4}`, the `p ≡ 1 (mod 8)` value.
pub fn pmd_theorem14_expected(ctx: &PrimeContext) -> Result<SignedMagnitude<f64>> {
    let p = ctx.p();
    if p % 8 != 1 {
        return Err(Error::BranchViolation(p));
    }
    let count = (1..)
        .take_while(|&k| 4 * k < p)
        .filter(|&k| jacobi(k as i64, p) == 1)
        .count();
    Ok(SignedMagnitude::power_of_two(
        if count % 2 == 0 { 1 } else { -1 },
        (p - 1) / 4,
    ))
}

/// `∏_{k=1}^{(p-1)/2} (1 + tan(π·ak²/p))`.
pub fn quadratic_tan_product<F: Float + FloatConst>(
    ctx: &PrimeContext,
    a: i64,
) -> Result<SignedMagnitude<F>> {
    let a = nonzero(ctx, a)? as u128;
    let p = ctx.p();
    let mut acc = Accumulator::new();
    for k in 1..=(p - 1) / 2 {
        let num = (a * (k as u128 * k as u128 % p as u128) % p as u128) as u64;
        acc.push(one_plus_tan_ratio::<F>(num, p));
    }
    Ok(acc.product)
}

/// Numeric check of the quadratic-residue tangent product, `p ≡ 1 (mod 8)` only.
pub fn pmd_theorem14_numeric(
    ctx: &PrimeContext,
    a: i64,
    rel_tol: f64,
) -> Result<VerificationRecord> {
    let expected = pmd_theorem14_expected(ctx)?;
    let got = quadratic_tan_product::<f64>(ctx, a)?;
    let ok = got.approx_eq(&expected, rel_tol);
    Ok(numeric_record(
        ctx.p(),
        2,
        a,
        Check::PmdThm14,
        expected,
        got,
        ok,
        rel_tol,
        "",
    ))
}
