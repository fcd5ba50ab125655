//! m-th power residue sets and the +-1-valued 2m-th power residue symbol.

use crate::arith::{pow_mod, PrimeContext};
use crate::error::{Error, Result};

/// The set `R_m(p)` of m-th power residues in `[1, p-1]`, sorted ascending.
///
/// Only constructed when `2m | p - 1`, so `p - 1` is always a member and the
/// set is closed under `k -> p - k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    p: u64,
    m: u64,
    members: Vec<u64>,
}

impl ResidueSet {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: u64) -> bool {
        self.members.binary_search(&(k % self.p)).is_ok()
    }

    pub fn sum(&self) -> u128 {
        self.members.iter().map(|&k| k as u128).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }
}

/// A 2m-th power residue symbol restricted to its real values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignSymbol {
    pub value: i8,
    pub a: i64,
    pub p: u64,
    /// The symbol's order, `2m`.
    pub order: u64,
}

impl SignSymbol {
    pub fn is_positive(&self) -> bool {
        self.value > 0
    }
}

impl std::fmt::Display for SignSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(if self.value > 0 { "+1" } else { "-1" })
    }
}

fn require_divides(d: u64, ctx: &PrimeContext, what: &str) -> Result<()> {
    if d == 0 || ctx.p_minus_1() % d != 0 {
        return Err(Error::Hypothesis(format!(
            "{what}: {d} does not divide p - 1 = {}",
            ctx.p_minus_1()
        )));
    }
    Ok(())
}

fn require_unit(k: i64, ctx: &PrimeContext) -> Result<u64> {
    match ctx.residue(k) {
        0 => Err(Error::Hypothesis(format!("{k} = 0 (mod {})", ctx.p()))),
        r => Ok(r),
    }
}

/// Is `k` an m-th power modulo `p`? Requires `p = 1 (mod m)` and `p ∤ k`.
pub fn is_mth_residue(k: i64, ctx: &PrimeContext, m: u64) -> Result<bool> {
    require_divides(m, ctx, "m-th power residue test")?;
    let k = require_unit(k, ctx)?;
    Ok(pow_mod(k, ctx.p_minus_1() / m, ctx.p()) == 1)
}

/// Builds `R_m(p)` by the membership exponent test; requires `2m | p - 1`.
pub fn residue_set(ctx: &PrimeContext, m: u64) -> Result<ResidueSet> {
    if m == 0 {
        return Err(Error::Hypothesis("m must be positive".into()));
    }
    require_divides(2 * m, ctx, "residue set")?;
    let p = ctx.p();
    let e = ctx.p_minus_1() / m;
    let members: Vec<u64> = (1..p).filter(|&k| pow_mod(k, e, p) == 1).collect();
    debug_assert_eq!(members.len() as u64, ctx.p_minus_1() / m);
    Ok(ResidueSet { p, m, members })
}

/// Checks that the members of `R_m(p)` sum to `p(p-1)/(2m)`.
///
/// Returns the verdict together with the computed sum.
pub fn residue_sum_check(ctx: &PrimeContext, m: u64) -> Result<(bool, u128)> {
    let set = residue_set(ctx, m)?;
    let p = ctx.p() as u128;
    let expected = p * (p - 1) / (2 * m as u128);
    let sum = set.sum();
    Ok((sum == expected, sum))
}

/// The sign `d` with `a^((p-1)/(2m)) = d (mod p)`.
///
/// Fails with [`Error::NonRealSymbol`] when the power is neither 1 nor
/// `p - 1`, i.e. the symbol is a non-real root of unity.
pub fn symbol_sign(a: i64, ctx: &PrimeContext, m: u64) -> Result<SignSymbol> {
    if m == 0 {
        return Err(Error::Hypothesis("m must be positive".into()));
    }
    require_divides(2 * m, ctx, "power residue symbol")?;
    let r = require_unit(a, ctx)?;
    let p = ctx.p();
    let order = 2 * m;
    let value = match pow_mod(r, ctx.p_minus_1() / order, p) {
        1 => 1,
        v if v == p - 1 => -1,
        v => {
            return Err(Error::NonRealSymbol {
                a,
                p,
                order,
                value: v,
            })
        }
    };
    Ok(SignSymbol { value, a, p, order })
}

/// Does `2 ∈ R_m(p)` hold, with `2m | p - 1`? The common hypothesis of the
/// product identities.
pub fn require_two_in_residues(ctx: &PrimeContext, m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Hypothesis("m must be positive".into()));
    }
    require_divides(2 * m, ctx, "product identity")?;
    if !is_mth_residue(2, ctx, m)? {
        return Err(Error::Hypothesis(format!(
            "2 is not a {m}-th power residue modulo {}",
            ctx.p()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime, jacobi, mul_mod};
    use std::collections::BTreeSet;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    fn brute_force(p: u64, m: u64) -> Vec<u64> {
        let set: BTreeSet<u64> = (1..p).map(|k| pow_mod(k, m, p)).collect();
        set.into_iter().collect()
    }

    #[test]
    fn mth_residue_examples() {
        assert!(is_mth_residue(2, &ctx(31), 3).unwrap());
        assert!(is_mth_residue(1, &ctx(31), 5).unwrap());
        assert!(!is_mth_residue(2, &ctx(13), 3).unwrap());
        assert_eq!(pow_mod(2, 4, 13), 3);
    }

    #[test]
    fn mth_residue_rejects_bad_hypotheses() {
        assert!(matches!(
            is_mth_residue(13, &ctx(13), 3),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            is_mth_residue(2, &ctx(13), 5),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn residue_set_examples() {
        assert_eq!(residue_set(&ctx(13), 3).unwrap().members(), &[1, 5, 8, 12]);
        assert_eq!(
            residue_set(&ctx(7), 1).unwrap().members(),
            &[1, 2, 3, 4, 5, 6]
        );
        let r31 = residue_set(&ctx(31), 3).unwrap();
        assert_eq!(r31.members(), brute_force(31, 3).as_slice());
        assert_eq!(r31.sum(), 155);
        assert!(matches!(
            residue_set(&ctx(13), 4),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            residue_set(&ctx(13), 0),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn residue_sum_examples() {
        assert_eq!(residue_sum_check(&ctx(31), 3).unwrap(), (true, 155));
        assert_eq!(residue_sum_check(&ctx(13), 3).unwrap(), (true, 26));
        assert_eq!(residue_sum_check(&ctx(5), 1).unwrap(), (true, 10));
    }

    #[test]
    fn residue_set_structure() {
        for p in (3..2000).filter(|&p| is_prime(p)) {
            let c = ctx(p);
            for m in (1..p).filter(|m| (p - 1) % (2 * m) == 0) {
                let set = residue_set(&c, m).unwrap();
                assert_eq!(set.len() as u64, (p - 1) / m);
                assert!(set.contains(1) && set.contains(p - 1));
                for k in set.iter() {
                    assert!(set.contains(p - k));
                }
                let step = (set.len() / 7).max(1);
                for x in set.iter().step_by(step) {
                    for y in set.iter().step_by(step) {
                        assert!(set.contains(mul_mod(x, y, p)));
                    }
                }
            }
        }
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(symbol_sign(-2, &ctx(31), 3).unwrap().value, -1);
        assert_eq!(symbol_sign(2, &ctx(31), 3).unwrap().value, 1);
        let s = symbol_sign(-2, &ctx(113), 4).unwrap();
        assert_eq!((s.value, s.order), (-1, 8));
        assert_eq!(s.to_string(), "-1");
        // 2^1 mod 7 = 2 at order 6
        assert!(matches!(
            symbol_sign(2, &ctx(7), 3),
            Err(Error::NonRealSymbol { value: 2, .. })
        ));
    }

    #[test]
    fn symbol_power_m_is_jacobi() {
        for p in (3..3000).filter(|&p| is_prime(p)) {
            let c = ctx(p);
            for m in (1..p).filter(|m| (p - 1) % (2 * m) == 0) {
                let Ok(s) = symbol_sign(-2, &c, m) else {
                    continue;
                };
                let j = jacobi(-2, p);
                if m % 2 == 1 {
                    assert_eq!(s.value, j, "p={p} m={m}");
                } else {
                    assert_eq!(j, 1, "p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn symbol_ignores_2m_th_powers() {
        for (p, m) in [(31u64, 3u64), (113, 4), (73, 2), (337, 4), (223, 3)] {
            let c = ctx(p);
            let base = symbol_sign(-2, &c, m).unwrap().value;
            for b in 1..p.min(60) {
                let scaled = mul_mod(c.residue(-2), pow_mod(b, 2 * m, p), p);
                assert_eq!(symbol_sign(scaled as i64, &c, m).unwrap().value, base);
            }
        }
    }

    #[test]
    fn two_in_residues_hypothesis() {
        assert!(require_two_in_residues(&ctx(31), 3).is_ok());
        assert!(require_two_in_residues(&ctx(31), 5).is_err());
        assert!(require_two_in_residues(&ctx(13), 2).is_err());
        assert!(require_two_in_residues(&ctx(5), 1).is_ok());
    }
}
