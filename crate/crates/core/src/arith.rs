//! Word-size modular arithmetic: primality, modular powers, Jacobi symbols
//! and square roots modulo a prime.
//!
//! Every residue crossing this module's API lives in `[0, p)`; signed inputs
//! are reduced first.

use crate::error::{Error, Result};

/// Witnesses for which Miller-Rabin is exact on all of `u64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// A verified odd prime together with the factorization of `p - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u64,
    p_minus_1: u64,
    /// Distinct prime factors of `p - 1`, ascending.
    order_factors: Vec<u64>,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p_minus_1 = p - 1;
        Ok(Self {
            p,
            p_minus_1,
            order_factors: distinct_prime_factors(p_minus_1),
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn p_minus_1(&self) -> u64 {
        self.p_minus_1
    }

    pub fn order_factors(&self) -> &[u64] {
        &self.order_factors
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn residue(&self, a: i64) -> u64 {
        reduce_signed(a, self.p)
    }

    /// Multiplicative order of `a` modulo `p`, or `None` when `p | a`.
    pub fn multiplicative_order(&self, a: i64) -> Option<u64> {
        let a = self.residue(a);
        if a == 0 {
            return None;
        }
        let mut order = self.p_minus_1;
        for &q in &self.order_factors {
            while order % q == 0 && pow_mod(a, order / q, self.p) == 1 {
                order /= q;
            }
        }
        Some(order)
    }
}

impl std::fmt::Display for PrimeContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.p)
    }
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[inline]
pub(crate) fn reduce_signed(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `b^e mod m` for an already reduced base.
pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// `b^e mod m` with `b` first reduced into `[0, m)`.
///
/// ```
/// assert_eq!(resitan::arith::mod_pow(-2, 14, 113), 112);
/// ```
pub fn mod_pow(b: i64, e: u64, m: u64) -> u64 {
    assert!(m >= 2, "modulus must be at least 2");
    pow_mod(reduce_signed(b, m), e, m)
}

/// Deterministic primality test, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &MR_WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol `(a/n)` for odd `n >= 1`.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus, got {n}");
    let mut a = reduce_signed(a, n);
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Square root of `a` modulo `p` by Tonelli-Shanks.
///
/// Returns the smaller of the two roots, `Some(0)` for `a = 0`, and `None`
/// when `a` is a quadratic non-residue.
pub fn sqrt_mod(a: u64, ctx: &PrimeContext) -> Option<u64> {
    let p = ctx.p();
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    debug_assert_eq!(mul_mod(r, r, p), a);
    Some(r.min(p - r))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a non-residue");

    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        // least i with t^(2^i) = 1
        let mut i = 1;
        let mut t2 = mul_mod(t, t, p);
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}
