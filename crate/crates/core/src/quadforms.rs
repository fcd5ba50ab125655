//! Representations `p = x² + d·y²` and the parity and residuosity criteria
//! built on them.

use crate::arith::{jacobi, reduce_signed, sqrt_mod, PrimeContext};
use crate::error::{Error, Result};
use crate::record::{Check, VerificationRecord};
use crate::residues::is_mth_residue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Representation {
    pub p: u64,
    pub d: u64,
    pub x: u64,
    pub y: u64,
}

impl Representation {
    fn holds(&self) -> bool {
        (self.x as u128).pow(2) + self.d as u128 * (self.y as u128).pow(2) == self.p as u128
    }
}

/// Solves `p = x² + d·y²` in positive integers with Cornacchia's algorithm.
pub fn cornacchia(ctx: &PrimeContext, d: u64) -> Option<Representation> {
    let p = ctx.p();
    if d == 0 || d >= p {
        return None;
    }
    let root = sqrt_mod(reduce_signed(-(d as i64), p), ctx)?;
    // descend from the root in (p/2, p), then from its partner
    let seeds = [p - root, root];
    seeds.into_iter().find_map(|r| descend(p, d, r))
}

fn descend(p: u64, d: u64, r0: u64) -> Option<Representation> {
    let limit = p.isqrt();
    let (mut a, mut b) = (p, r0);
    while b > limit {
        (a, b) = (b, a % b);
    }
    let x = b;
    let rest = p - x * x;
    if x == 0 || rest % d != 0 {
        return None;
    }
    let y2 = rest / d;
    let y = y2.isqrt();
    let rep = Representation { p, d, x, y };
    (y > 0 && y * y == y2 && rep.holds()).then_some(rep)
}

fn representation(ctx: &PrimeContext, d: u64) -> Result<Representation> {
    cornacchia(ctx, d).ok_or(Error::NotRepresentable { p: ctx.p(), d })
}

/// `(-2/p) = (-1)^{xy/2}` for `p = x² + 27y²`, together with the equivalent
/// `4 | xy ⟺ p ≡ 1, 3 (mod 8)` and the parity side condition `x ≢ y (mod 2)`.
pub fn check_lemma31(ctx: &PrimeContext) -> Result<VerificationRecord> {
    let rep = representation(ctx, 27)?;
    let p = ctx.p();
    let (x, y) = (rep.x, rep.y);
    let xy = x * y;
    let parity_ok = x % 2 != y % 2;
    let sign = if (xy / 2) % 2 == 0 { 1 } else { -1 };
    let divisibility = (xy % 4 == 0) == matches!(p % 8, 1 | 3);
    let expected = format!("(-2/p)={sign:+} 4|xy<=>p=1,3(8) x!=y(2)");
    let actual = format!(
        "(-2/p)={:+}{}{}",
        jacobi(-2, p),
        if divisibility {
            " 4|xy<=>p=1,3(8)"
        } else {
            " 4|xy<=>p=1,3(8) FAILS"
        },
        if parity_ok { " x!=y(2)" } else { " x=y(2)" },
    );
    Ok(VerificationRecord::exact(
        p,
        3,
        0,
        Check::Lemma31,
        expected,
        actual,
    ))
}

fn criterion_discriminant(m: u64) -> Result<u64> {
    match m {
        3 => Ok(27),
        4 => Ok(64),
        _ => Err(Error::InvalidInput(format!(
            "criterion defined for m = 3, 4; got {m}"
        ))),
    }
}

/// `2 ∈ R_m(p) ⟺ p = x² + m(my)²` for `m ∈ {3, 4}`.
pub fn two_residue_criterion(ctx: &PrimeContext, m: u64) -> Result<VerificationRecord> {
    let d = criterion_discriminant(m)?;
    let p = ctx.p();
    if p % m != 1 {
        return Err(Error::Hypothesis(format!("{p} is not 1 (mod {m})")));
    }
    let residue = is_mth_residue(2, ctx, m)?;
    let represented = cornacchia(ctx, d).is_some();
    // expected: is 2 an m-th power residue; actual: is p = x^2 + d y^2 solvable
    Ok(VerificationRecord::exact(
        p,
        m,
        0,
        Check::Criterion,
        residue.to_string(),
        represented.to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;
    use crate::record::Status;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    fn exhaustive(p: u64, d: u64) -> Vec<(u64, u64)> {
        (1..)
            .take_while(|y| d * y * y < p)
            .filter_map(|y| {
                let x2 = p - d * y * y;
                let x = x2.isqrt();
                (x * x == x2 && x > 0).then_some((x, y))
            })
            .collect()
    }

    #[test]
    fn cornacchia_examples() {
        let r = cornacchia(&ctx(31), 27).unwrap();
        assert_eq!((r.x, r.y), (2, 1));
        let r = cornacchia(&ctx(113), 64).unwrap();
        assert_eq!((r.x, r.y), (7, 1));
        assert_eq!(cornacchia(&ctx(13), 27), None);
        assert_eq!(cornacchia(&ctx(17), 64), None);
        let r = cornacchia(&ctx(337), 64).unwrap();
        assert_eq!((r.x, r.y), (9, 2));
        let r = cornacchia(&ctx(13), 1).unwrap();
        assert_eq!((r.x * r.x + r.y * r.y), 13);
    }

    #[test]
    fn cornacchia_matches_exhaustive_search() {
        for p in (3..20_000).filter(|&p| is_prime(p)) {
            for d in [1u64, 2, 3, 7, 27, 64] {
                let brute = exhaustive(p, d);
                let got = cornacchia(&ctx(p), d).map(|r| (r.x, r.y));
                match got {
                    Some(xy) => assert!(brute.contains(&xy), "p={p} d={d}"),
                    None => assert!(brute.is_empty(), "p={p} d={d} missed {brute:?}"),
                }
                if d == 27 || d == 64 {
                    assert!(brute.len() <= 1, "p={p} d={d} not unique: {brute:?}");
                }
            }
        }
    }

    #[test]
    fn lemma31_examples() {
        let r = check_lemma31(&ctx(31)).unwrap();
        assert_eq!(r.status, Status::Pass, "{r}");
        assert!(r.expected.starts_with("(-2/p)=-1"));
        let r = check_lemma31(&ctx(43)).unwrap();
        assert_eq!(r.status, Status::Pass, "{r}");
        assert!(r.expected.starts_with("(-2/p)=+1"));
        assert_eq!(
            check_lemma31(&ctx(13)),
            Err(Error::NotRepresentable { p: 13, d: 27 })
        );
    }

    #[test]
    fn criterion_examples() {
        let r = two_residue_criterion(&ctx(31), 3).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!((r.expected.as_str(), r.actual.as_str()), ("true", "true"));
        let r = two_residue_criterion(&ctx(13), 3).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!((r.expected.as_str(), r.actual.as_str()), ("false", "false"));
        let r = two_residue_criterion(&ctx(113), 4).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.actual, "true");
        assert!(matches!(
            two_residue_criterion(&ctx(11), 3),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            two_residue_criterion(&ctx(19), 4),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            two_residue_criterion(&ctx(31), 5),
            Err(Error::InvalidInput(_))
        ));
    }
}
