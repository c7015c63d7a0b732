//! Number-theoretic helpers, finite fields, permutations and matrices.

mod field;
mod matrix;
mod perm;

pub use field::{FieldElement, FiniteField, DEFAULT_FIELD_CAP};
pub use matrix::FieldMatrix;
pub use perm::Permutation;

use crate::error::{Error, Result};
use num_bigint::BigUint;
use serde::Serialize;

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct primes.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Number of primes counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn to_biguint(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::from(1u32), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }

    /// Product of two factorizations (exponents add).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(p, e)), Some(&(q, f))) if p == q => {
                    out.push((p, e + f));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, e)), Some(&(q, _))) if p < q => {
                    out.push((p, e));
                    i += 1;
                }
                (Some(&(p, e)), None) => {
                    out.push((p, e));
                    i += 1;
                }
                (_, Some(&(q, f))) => {
                    out.push((q, f));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self { factors: out }
    }

    /// Exact quotient; fails if `other` does not divide `self`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let mut out = self.factors.clone();
        for &(q, f) in &other.factors {
            let slot = out
                .iter_mut()
                .find(|(p, _)| *p == q)
                .filter(|(_, e)| *e >= f)
                .ok_or_else(|| Error::invalid("factorization quotient is not exact"))?;
            slot.1 -= f;
        }
        out.retain(|&(_, e)| e > 0);
        Ok(Self { factors: out })
    }
}

/// Trial-division factorization. `n = 1` gives the empty factorization.
pub fn factorize(mut n: u64) -> PrimeFactorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    PrimeFactorization { factors }
}

pub fn omega(n: u64) -> usize {
    factorize(n).omega()
}

pub fn big_omega(n: u64) -> u32 {
    factorize(n).big_omega()
}

pub fn binary_ones(n: u64) -> u32 {
    n.count_ones()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).factors == [(n, 1)]
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::Overflow(format!("{base}^{exp}")))
}

/// Multiplicative order of `a` modulo `m` (requires gcd(a, m) = 1, m > 1).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    debug_assert!(m > 1 && gcd(a % m, m) == 1);
    let a = (a % m) as u128;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = x * a % m as u128;
        k += 1;
    }
    k
}

/// Smallest primitive prime divisor of `p^i - 1`: a prime dividing it that
/// divides no `p^k - 1` with `1 <= k < i`. `None` when no such prime exists.
pub fn zsigmondy_ppd(p: u64, i: u32) -> Result<Option<u64>> {
    if !is_prime(p) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    if i == 0 {
        return Err(Error::pre("exponent must be positive"));
    }
    let value = checked_pow(p, i)? - 1;
    if value <= 1 {
        return Ok(None);
    }
    Ok(factorize(value)
        .primes()
        .find(|&r| multiplicative_order(p, r) == u64::from(i)))
}

/// Sieve of Eratosthenes on `0..=n`.
pub fn prime_sieve(n: usize) -> Vec<bool> {
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
}

/// Prime-counting function.
pub fn prime_pi(n: usize) -> usize {
    prime_sieve(n).into_iter().filter(|&b| b).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).factors().is_empty());
        assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(
            factorize(262080).factors(),
            &[(2, 6), (3, 2), (5, 1), (7, 1), (13, 1)]
        );
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(1), 0);
        assert_eq!(omega(12), 2);
        assert_eq!(omega(360), 3);
        assert_eq!(big_omega(1), 0);
        assert_eq!(big_omega(12), 3);
        assert_eq!(big_omega(64), 6);
        assert_eq!(binary_ones(4), 1);
        assert_eq!(binary_ones(7), 3);
        assert_eq!(binary_ones(12), 2);
    }

    fn brute_ppd(p: u64, i: u32) -> Option<u64> {
        let v = p.pow(i) - 1;
        (2..=v).find(|&r| {
            (2..r).all(|d| r % d != 0)
                && v % r == 0
                && (1..i).all(|k| (p.pow(k) - 1) % r != 0)
        })
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(zsigmondy_ppd(2, 4).unwrap(), Some(5));
        assert_eq!(zsigmondy_ppd(2, 6).unwrap(), None);
        assert_eq!(zsigmondy_ppd(3, 2).unwrap(), None);
        assert!(matches!(zsigmondy_ppd(2, 80), Err(Error::Overflow(_))));
        assert!(zsigmondy_ppd(4, 2).is_err());
    }

    #[test]
    fn zsigmondy_matches_brute_force() {
        for p in [2u64, 3, 5] {
            for i in 2..=8 {
                if p.pow(i) > 100_000 {
                    continue;
                }
                assert_eq!(zsigmondy_ppd(p, i).unwrap(), brute_ppd(p, i), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn zsigmondy_exceptions_small_primes() {
        for p in [2u64, 3, 5, 7] {
            for i in 2..=12u32 {
                let got = zsigmondy_ppd(p, i).unwrap();
                let exceptional = (p, i) == (2, 6) || (i == 2 && (p + 1).is_power_of_two());
                assert_eq!(got.is_none(), exceptional, "p={p} i={i}");
                if let Some(r) = got {
                    assert_eq!((p.pow(i) - 1) % r, 0);
                    for k in 1..i {
                        assert_ne!((p.pow(k) - 1) % r, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn prime_pi_examples() {
        assert_eq!(prime_pi(2), 1);
        assert_eq!(prime_pi(10), 4);
        assert_eq!(prime_pi(100), 25);
        assert_eq!(prime_pi(1000), 168);
    }

    #[test]
    fn factorization_algebra() {
        let a = factorize(360);
        let b = factorize(84);
        assert_eq!(a.mul(&b), factorize(360 * 84));
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert!(b.div(&a).is_err());
    }

    proptest! {
        #[test]
        fn factorize_round_trip(n in 1u64..1_000_000) {
            let f = factorize(n);
            let mut prev = 1;
            for &(p, e) in f.factors() {
                prop_assert!(p > prev && e >= 1 && is_prime(p));
                prev = p;
            }
            prop_assert_eq!(f.to_biguint(), BigUint::from(n));
        }
    }
}
