use super::{factorize, is_prime};
use crate::error::{Error, Result};
use std::fmt;

/// Default cap on `p^f` for field construction.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 16;

/// An element of GF(p^f), packed as the base-`p` integer whose digit `i` is
/// the coefficient of `x^i` in the polynomial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^f) with a fixed defining polynomial and a fixed generator of the
/// multiplicative group. Multiplication goes through log/exp tables.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic defining polynomial, coefficients of `x^0 ..= x^degree`.
    modulus: Vec<u32>,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.generator == other.generator
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// GF(p^f) using the least monic irreducible polynomial (ordered by its
    /// coefficient list read from the top degree down) and the least element
    /// of multiplicative order `p^f - 1`.
    pub fn new(p: u32, f: u32) -> Result<Self> {
        Self::with_cap(p, f, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u32, f: u32, cap: u64) -> Result<Self> {
        let q = field_order(p, f, cap)?;
        let modulus = (0..q)
            .map(|low| {
                let mut poly = digits(low, p, f);
                poly.push(1);
                poly
            })
            .find(|poly| is_irreducible(poly, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::build(p, f, modulus)
    }

    /// GF(p^f) with a caller-supplied monic irreducible polynomial
    /// (coefficients of `x^0 ..= x^f`).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::invalid("defining polynomial must be monic of degree >= 1"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::invalid("polynomial coefficients must be reduced mod p"));
        }
        let f = (modulus.len() - 1) as u32;
        field_order(p, f, DEFAULT_FIELD_CAP)?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::invalid(format!("{modulus:?} is reducible over GF({p})")));
        }
        Self::build(p, f, modulus)
    }

    fn build(p: u32, f: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = p.pow(f);
        let group_order = u64::from(q - 1);
        let prime_divisors: Vec<u64> = factorize(group_order.max(1)).primes().collect();
        let mulmod = |a: u32, b: u32| pack(&poly_mulmod(&digits(a, p, f), &digits(b, p, f), &modulus, p), p);
        let powmod = |a: u32, mut e: u64| {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, base);
                }
                base = mulmod(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..q)
            .find(|&g| prime_divisors.iter().all(|&r| powmod(g, group_order / r) != 1))
            .ok_or_else(|| Error::invalid("no primitive element found"))?;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = mulmod(x, generator);
        }
        debug_assert_eq!(x, 1);
        Ok(Self {
            p,
            degree: f,
            order: q,
            modulus,
            generator: FieldElement(generator),
            exp,
            log,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements `q = p^f`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The designated generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn element(&self, packed: u32) -> Result<FieldElement> {
        if packed < self.order {
            Ok(FieldElement(packed))
        } else {
            Err(Error::invalid(format!("{packed} is not an element of GF({})", self.order)))
        }
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.degree as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::invalid(format!(
                "coefficient vector {coeffs:?} is not an element of GF({}^{})",
                self.p, self.degree
            )));
        }
        Ok(FieldElement(pack(coeffs, self.p)))
    }

    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0, self.p, self.degree)
    }

    /// Image of an integer under the prime-field embedding.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(i64::from(self.p)) as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let n = self.order - 1;
        let l = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        FieldElement(self.exp[l as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::pre("zero has no inverse"));
        }
        let n = self.order - 1;
        Ok(FieldElement(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return a;
        }
        let n = u64::from(self.order - 1);
        let l = u64::from(self.log[a.0 as usize]) * (e % n) % n;
        FieldElement(self.exp[l as usize])
    }

    /// Discrete logarithm to the designated generator.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64> {
        let l = self.log(a).ok_or_else(|| Error::pre("zero has no multiplicative order"))?;
        let n = u64::from(self.order - 1);
        Ok(n / num_integer::gcd(n, u64::from(l)))
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, u64::from(self.p))
    }

    /// Least element (in packed order) of multiplicative order `p^e - 1`,
    /// i.e. a generator of the subfield GF(p^e)*.
    pub fn subfield_primitive_element(&self, e: u32) -> Result<FieldElement> {
        if e == 0 || self.degree % e != 0 {
            return Err(Error::pre(format!(
                "{e} does not divide the field degree {}",
                self.degree
            )));
        }
        let target = u64::from(self.p.pow(e) - 1);
        Ok(self
            .elements()
            .skip(1)
            .find(|&a| self.multiplicative_order(a).unwrap() == target)
            .expect("every subfield has a primitive element"))
    }
}

fn field_order(p: u32, f: u32, cap: u64) -> Result<u32> {
    if !is_prime(u64::from(p)) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    if f == 0 {
        return Err(Error::pre("field degree must be positive"));
    }
    let q = u64::from(p)
        .checked_pow(f)
        .filter(|&q| q <= cap)
        .ok_or_else(|| Error::cap("field order", u128::from(p).saturating_pow(f), cap))?;
    Ok(q as u32)
}

fn digits(mut v: u32, p: u32, f: u32) -> Vec<u32> {
    (0..f)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo a monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    debug_assert_eq!(m.last(), Some(&1));
    let p = u64::from(p);
    let mut r: Vec<u64> = a.iter().map(|&c| u64::from(c)).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - top * u64::from(mi) % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let pp = u64::from(p);
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % pp;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Trial division by every monic polynomial of degree at most half.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let f = poly.len() - 1;
    for d in 1..=f / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = digits(low, p, d as u32);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(f2.primitive_element(), f2.one());
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.coefficients(f4.primitive_element()), vec![0, 1]);
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.multiplicative_order(f9.primitive_element()).unwrap(), 8);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(FiniteField::new(2, 17), Err(Error::CapExceeded { .. })));
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::with_cap(2, 4, 8).is_err());
    }

    #[test]
    fn supplied_modulus() {
        let f8 = FiniteField::with_modulus(2, vec![1, 0, 1, 1]).unwrap();
        assert_eq!(f8.order(), 8);
        assert!(FiniteField::with_modulus(2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn subfield_generators() {
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.subfield_primitive_element(1).unwrap(), f4.one());
        let f64 = FiniteField::new(2, 6).unwrap();
        for (e, ord) in [(1, 1), (2, 3), (3, 7), (6, 63)] {
            let l = f64.subfield_primitive_element(e).unwrap();
            assert_eq!(f64.multiplicative_order(l).unwrap(), ord);
            assert_eq!(f64.pow(l, 1 << e), l, "lies in GF(2^{e})");
        }
        assert!(f64.subfield_primitive_element(4).is_err());
    }

    /// Independent check of the defining polynomials against a brute-force
    /// root search for degree <= 3 (reducible iff it has a root).
    #[test]
    fn low_degree_modulus_has_no_roots() {
        for (p, f) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 3)] {
            let field = FiniteField::new(p, f).unwrap();
            let m = field.modulus();
            for x in 0..p {
                let v = m.iter().rev().fold(0u32, |acc, &c| (acc * x + c) % p);
                assert_ne!(v, 0, "GF({p}^{f}) modulus has root {x}");
            }
        }
    }

    #[test]
    fn field_axioms() {
        for (p, f) in [(2, 1), (2, 2), (2, 3), (2, 6), (3, 2), (5, 1), (7, 1)] {
            let k = FiniteField::new(p, f).unwrap();
            let q = k.order();
            assert_eq!(
                k.multiplicative_order(k.primitive_element()).unwrap(),
                u64::from(q - 1)
            );
            if q > 64 {
                continue;
            }
            let els: Vec<_> = k.elements().collect();
            for &a in &els {
                assert_eq!(k.add(a, k.neg(a)), k.zero());
                if !a.is_zero() {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
                }
                for &b in &els {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for &c in &els {
                        assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                        assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }
}
