//! Exact arithmetic in `Z[ζ_n]` and the exact product-identity checks.
//!
//! Elements are dense coefficient vectors in the basis `ζ^0, ..., ζ^(n-1)`.
//! Products fold exponents modulo `n` (cheap, since `ζ^n = 1`); equality is
//! decided on the canonical form, the remainder modulo `Φ_n`.

pub mod poly;
mod verify;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
pub use poly::Coefficient;
pub use verify::{
    binomial_product, gi_product, main_identity_value, tan_cross_sides, verify_gi, verify_gi_in,
    verify_gi_plus, verify_gi_plus_in, verify_tan_cross, verify_tan_cross_in, Binomial,
};

/// Default upper bound on the cyclotomic order accepted by [`cyclotomic_poly`].
pub const DEFAULT_MAX_ORDER: usize = 4 * 5000;

pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn prime_factorization(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        let mut e = 0;
        while n % q == 0 {
            n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: usize) -> i8 {
    let f = prime_factorization(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: usize) -> usize {
    prime_factorization(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// `Φ_n` with the default order bound.
pub fn cyclotomic_poly<T: Coefficient>(n: usize) -> Result<Vec<T>> {
    cyclotomic_poly_bounded(n, DEFAULT_MAX_ORDER)
}

/// `Φ_n(x) = ∏_{d|n} (x^d - 1)^μ(n/d)`, multiplying the `μ = +1` factors and
/// then dividing out the `μ = -1` factors exactly.
pub fn cyclotomic_poly_bounded<T: Coefficient>(n: usize, bound: usize) -> Result<Vec<T>> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "cyclotomic order must be positive".into(),
        ));
    }
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let mut num: Vec<T> = vec![T::one()];
    let mut denominators = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = poly::mul(&num, &poly::x_pow_minus_one(d)),
            -1 => denominators.push(d),
            _ => {}
        }
    }
    for d in denominators {
        num =
            poly::div_exact_x_pow_minus_one(&num, d).expect("x^d - 1 divides the Möbius numerator");
    }
    debug_assert_eq!(num.len(), euler_phi(n) + 1);
    Ok(num)
}

/// The ring `Z[ζ_n] = Z[x]/Φ_n(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloRing<T> {
    n: usize,
    phi_n: usize,
    cyclo_poly: Vec<T>,
}

impl<T: Coefficient> CycloRing<T> {
    pub fn new(n: usize) -> Result<Arc<Self>> {
        Self::with_bound(n, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(n: usize, bound: usize) -> Result<Arc<Self>> {
        let cyclo_poly = cyclotomic_poly_bounded(n, bound)?;
        Ok(Arc::new(Self {
            n,
            phi_n: cyclo_poly.len() - 1,
            cyclo_poly,
        }))
    }

    /// `Z[ζ_{4p}]`, which contains both `i = ζ^p` and `e^{2πi/p} = ζ^4`.
    pub fn for_prime(p: u64) -> Result<Arc<Self>> {
        let n = usize::try_from(p)
            .ok()
            .and_then(|p| p.checked_mul(4))
            .ok_or(Error::BoundExceeded {
                n: usize::MAX,
                bound: DEFAULT_MAX_ORDER,
            })?;
        Self::new(n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi_n(&self) -> usize {
        self.phi_n
    }

    pub fn cyclo_poly(&self) -> &[T] {
        &self.cyclo_poly
    }
}

/// An element of `Z[ζ_n]`; `coeffs[j]` multiplies `ζ^j`.
#[derive(Debug, Clone)]
pub struct CycloElement<T> {
    ring: Arc<CycloRing<T>>,
    coeffs: Vec<T>,
}

impl<T: Coefficient> CycloElement<T> {
    /// Wraps raw coefficients; any length is accepted and folded on reduction.
    pub fn from_coeffs(ring: &Arc<CycloRing<T>>, coeffs: Vec<T>) -> Self {
        Self {
            ring: Arc::clone(ring),
            coeffs,
        }
    }

    pub fn zero(ring: &Arc<CycloRing<T>>) -> Self {
        Self::from_coeffs(ring, Vec::new())
    }

    pub fn one(ring: &Arc<CycloRing<T>>) -> Self {
        Self::from_coeffs(ring, vec![T::one()])
    }

    /// `c·ζ^e`, with `e` taken modulo `n`.
    pub fn monomial(ring: &Arc<CycloRing<T>>, c: T, e: usize) -> Self {
        let e = e % ring.n;
        let mut coeffs = vec![T::zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(ring, coeffs)
    }

    pub fn ring(&self) -> &Arc<CycloRing<T>> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Canonical form: exponents folded modulo `n`, then the remainder
    /// modulo `Φ_n`. Idempotent.
    pub fn reduce(&self) -> Self {
        let mut coeffs = if self.coeffs.len() > self.ring.n {
            poly::fold(&self.coeffs, self.ring.n)
        } else {
            self.coeffs.clone()
        };
        poly::rem_monic_in_place(&mut coeffs, &self.ring.cyclo_poly);
        Self {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.reduce().coeffs.is_empty()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.n == other.ring.n {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.n,
                right: other.ring.n,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        Ok(Self::from_coeffs(&self.ring, coeffs))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c.clone()).collect();
        Self::from_coeffs(&self.ring, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.clone() * k.clone()).collect();
        Self::from_coeffs(&self.ring, coeffs)
    }

    /// Canonical product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let n = self.ring.n;
        let a = self.reduce();
        let b = other.reduce();
        let mut out = vec![T::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out[(i + j) % n] += &(x.clone() * y.clone());
            }
        }
        Ok(Self::from_coeffs(&self.ring, out).reduce())
    }

    /// Value at `ζ_n = e^{2πi/n}` in double precision.
    pub fn embed(&self) -> Complex64 {
        let n = self.ring.n;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = std::f64::consts::TAU * ((j % n) as f64) / n as f64;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }

    /// Sum of absolute values of the coefficients, as a float.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }

    /// Canonical form rendered as `c*z^e` terms in decreasing exponent order.
    pub fn render(&self) -> String {
        self.reduce().to_string()
    }
}

impl<T: Coefficient> PartialEq for CycloElement<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.n == other.ring.n && self.reduce().coeffs == other.reduce().coeffs
    }
}

/// Renders the stored coefficients as-is; call [`CycloElement::reduce`]
/// first (or use [`CycloElement::render`]) for the canonical string.
impl<T: Coefficient> fmt::Display for CycloElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{c}*z^{e}")?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}*z^{e}", c.abs())?;
            } else {
                write!(f, " + {c}*z^{e}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type Ring = CycloRing<BigInt>;
    type Elem = CycloElement<BigInt>;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Oracle for `Φ_n`: divide `x^n - 1` by `Φ_d` for every proper divisor.
    fn cyclotomic_by_recursion(n: usize, memo: &mut Vec<Option<Vec<i64>>>) -> Vec<i64> {
        if let Some(Some(f)) = memo.get(n) {
            return f.clone();
        }
        let mut num: Vec<i64> = poly::x_pow_minus_one(n);
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let phi_d = cyclotomic_by_recursion(d, memo);
            let (q, r) = poly::div_rem_monic(&num, &phi_d);
            assert!(r.is_empty());
            num = q;
        }
        memo[n] = Some(num.clone());
        num
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly::<i64>(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_poly::<i64>(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly::<i64>(12).unwrap(), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly::<i64>(6).unwrap(), vec![1, -1, 1]);
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}
        let phi105 = cyclotomic_poly::<i64>(105).unwrap();
        assert_eq!(phi105.len(), 49);
        assert_eq!(phi105.iter().copied().min(), Some(-2));
    }

    #[test]
    fn mobius_formula_matches_recursive_division() {
        let mut memo = vec![None; 401];
        for n in 1..=400 {
            assert_eq!(
                cyclotomic_poly::<i64>(n).unwrap(),
                cyclotomic_by_recursion(n, &mut memo),
                "n = {n}"
            );
        }
    }

    #[test]
    fn cyclotomic_bound() {
        assert_eq!(
            cyclotomic_poly::<i64>(DEFAULT_MAX_ORDER + 1),
            Err(Error::BoundExceeded {
                n: DEFAULT_MAX_ORDER + 1,
                bound: DEFAULT_MAX_ORDER
            })
        );
        assert!(cyclotomic_poly_bounded::<i64>(30, 20).is_err());
        assert!(cyclotomic_poly::<i64>(0).is_err());
    }

    #[test]
    fn cyclotomic_vanishes_at_primitive_root() {
        for n in [1usize, 7, 12, 60, 124, 452] {
            let ring = Ring::new(n).unwrap();
            let phi = Elem::from_coeffs(&ring, ring.cyclo_poly().to_vec());
            assert!(phi.embed().norm() < 1e-6, "n = {n}");
            assert!(phi.is_zero());
        }
    }

    #[test]
    fn reduction_examples() {
        let p = 31usize;
        let ring = Ring::for_prime(p as u64).unwrap();
        assert_eq!(ring.n(), 124);
        assert_eq!(ring.phi_n(), 60);
        let mut c = vec![big(0); 2 * p + 1];
        c[0] = big(1);
        c[2 * p] = big(1);
        assert!(Elem::from_coeffs(&ring, c).is_zero());
        assert_eq!(Elem::monomial(&ring, big(1), 124).render(), "1*z^0");
        let mut c = vec![big(0); 125];
        c[124] = big(1);
        assert_eq!(Elem::from_coeffs(&ring, c).reduce(), Elem::one(&ring));
    }

    #[test]
    fn multiplication_examples() {
        let p = 31usize;
        let ring = Ring::for_prime(p as u64).unwrap();
        let i = Elem::monomial(&ring, big(1), p);
        assert_eq!(i.mul(&i).unwrap().render(), "-1*z^0");
        let zeta_p = Elem::monomial(&ring, big(1), 4);
        let a = i.sub(&zeta_p).unwrap();
        let b = i.add(&zeta_p).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.render(), "-1*z^8 - 1*z^0");
        let want = Complex64::new(-1.0, 0.0) - zeta_p.embed() * zeta_p.embed();
        assert!((prod.embed() - want).norm() < 1e-12);
        assert_eq!(a.mul(&Elem::one(&ring)).unwrap(), a);
    }

    #[test]
    fn ring_mismatch() {
        let r1 = Ring::new(12).unwrap();
        let r2 = Ring::new(20).unwrap();
        let e = Elem::one(&r1).mul(&Elem::one(&r2));
        assert_eq!(
            e,
            Err(Error::RingMismatch {
                left: 12,
                right: 20
            })
        );
    }

    #[test]
    fn render_format() {
        let ring = Ring::new(12).unwrap();
        let e = Elem::from_coeffs(&ring, vec![big(3), big(0), big(-2), big(1)]);
        assert_eq!(e.render(), "1*z^3 - 2*z^2 + 3*z^0");
        assert_eq!(Elem::zero(&ring).render(), "0");
        let e = Elem::from_coeffs(&ring, vec![big(0), big(-5)]);
        assert_eq!(e.render(), "-5*z^1");
    }

    fn element(ring: Arc<Ring>) -> impl Strategy<Value = Elem> {
        let n = ring.n();
        prop::collection::vec(-20i64..20, 0..=n)
            .prop_map(move |c| Elem::from_coeffs(&ring, c.into_iter().map(BigInt::from).collect()))
    }

    fn ring_and_three() -> impl Strategy<Value = (Elem, Elem, Elem)> {
        prop::sample::select(vec![12usize, 20, 28, 44, 52]).prop_flat_map(|n| {
            let ring = Ring::new(n).unwrap();
            (element(ring.clone()), element(ring.clone()), element(ring))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in ring_and_three()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn reduce_is_idempotent_and_embedding_stable((a, _, _) in ring_and_three()) {
            let r = a.reduce();
            let rr = r.reduce();
            prop_assert_eq!(rr.coeffs(), r.coeffs());
            prop_assert!(r.coeffs().len() <= a.ring().phi_n());
            let drift = (r.embed() - a.embed()).norm();
            prop_assert!(drift < 1e-6 * (1.0 + a.l1_norm()), "drift {}", drift);
        }
    }
}
