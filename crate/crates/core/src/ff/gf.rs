use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use super::{int, least_generator, Field};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest supported cardinality for integer-encoded fields.
pub const MAX_ORDER: u64 = 1 << 63;

/// Fields up to this size get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 20;
const NO_LOG: u32 = u32::MAX;

/// `F_p` or `F_{p^k}`, elements stored as canonical encodings
/// `sum d_i p^i` of their coefficient vectors over `F_p`.
#[derive(Clone)]
pub struct Gf(Arc<Inner>);

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus over `F_p`, constant term first. Empty for prime fields.
    modulus: Vec<u64>,
    prime_subfield: Option<Gf>,
    kernel: Kernel,
    generator: OnceLock<u64>,
}

enum Kernel {
    Prime,
    Digits,
    Tables(Tables),
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[i] = log(1 + g^i)`, `NO_LOG` where `1 + g^i = 0`. Odd `p` only.
    zech: Vec<u32>,
}

impl Gf {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !int::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_ORDER {
            return Err(Error::Overflow);
        }
        Ok(Gf(Arc::new(Inner {
            p,
            k: 1,
            q: p,
            modulus: Vec::new(),
            prime_subfield: None,
            kernel: Kernel::Prime,
            generator: OnceLock::new(),
        })))
    }

    /// `F_{p^k}` with the least monic irreducible degree-`k` modulus over `F_p`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let base = Self::prime(p)?;
        if k == 1 {
            return Ok(base);
        }
        let q = p.checked_pow(k).filter(|&q| q <= MAX_ORDER).ok_or(Error::Overflow)?;
        let modulus = Poly::least_irreducible(&base, k as usize);
        let modulus: Vec<u64> = modulus.coeffs().to_vec();
        let mut field = Gf(Arc::new(Inner {
            p,
            k,
            q,
            modulus,
            prime_subfield: Some(base),
            kernel: Kernel::Digits,
            generator: OnceLock::new(),
        }));
        if q <= TABLE_LIMIT {
            let tables = Tables::build(&field);
            let inner = Arc::get_mut(&mut field.0).expect("fresh handle");
            inner.kernel = Kernel::Tables(tables);
        }
        Ok(field)
    }

    /// `F_q` for a prime power `q`.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, k) = int::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// The prime subfield (the field itself when `k = 1`).
    pub fn prime_subfield(&self) -> Gf {
        self.0.prime_subfield.clone().unwrap_or_else(|| self.clone())
    }

    /// Defining modulus over `F_p`; `None` for prime fields.
    pub fn modulus(&self) -> Option<Poly<Gf>> {
        if self.0.modulus.is_empty() {
            None
        } else {
            Some(Poly::new(&self.prime_subfield(), self.0.modulus.clone()))
        }
    }

    /// Least generator of `F_q^*` in the canonical encoding.
    pub fn primitive_element(&self) -> u64 {
        *self.0.generator.get_or_init(|| least_generator(self, self.0.q - 1))
    }

    pub fn embed_prime(&self, c: u64) -> u64 {
        c % self.0.p
    }

    /// Inverse of [`Gf::embed_prime`], defined exactly on the prime subfield.
    pub fn try_project_prime(&self, a: u64) -> Result<u64> {
        if a < self.0.p {
            Ok(a)
        } else {
            Err(Error::NotInSubfield)
        }
    }

    fn add_mod_p(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    fn mul_mod_p(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if p < (1 << 32) {
            a * b % p
        } else {
            (a as u128 * b as u128 % p as u128) as u64
        }
    }

    fn inv_mod_p(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let p = self.0.p as i128;
        let (mut r0, mut r1) = (p, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Some(t0.rem_euclid(p) as u64)
    }

    fn split(&self, a: u64) -> Vec<u64> {
        let p = self.0.p;
        let mut rest = a;
        (0..self.0.k)
            .map(|_| {
                let d = rest % p;
                rest /= p;
                d
            })
            .collect()
    }

    fn join(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.0.p + d)
    }

    fn digit_add(&self, a: u64, b: u64) -> u64 {
        if self.0.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.split(a), self.split(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| self.add_mod_p(x, y)).collect();
        self.join(&sum)
    }

    fn digit_neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        let d: Vec<u64> = self.split(a).iter().map(|&x| (p - x) % p).collect();
        self.join(&d)
    }

    /// Schoolbook product of coefficient vectors reduced by the modulus.
    fn digit_mul(&self, a: u64, b: u64) -> u64 {
        let k = self.0.k as usize;
        let (da, db) = (self.split(a), self.split(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = self.add_mod_p(prod[i + j], self.mul_mod_p(x, y));
            }
        }
        let m = &self.0.modulus;
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (j, &mj) in m[..k].iter().enumerate() {
                let sub = self.mul_mod_p(c, mj);
                prod[top - k + j] = self.add_mod_p(prod[top - k + j], self.0.p - sub);
            }
            prod[top] = 0;
        }
        self.join(&prod[..k])
    }
}

impl Tables {
    fn build(field: &Gf) -> Tables {
        let q = field.0.q;
        let order = (q - 1) as usize;
        let g = least_generator(field, q - 1);
        let mut exp = Vec::with_capacity(2 * order);
        let mut log = vec![NO_LOG; q as usize];
        let mut acc = 1u64;
        for i in 0..order {
            exp.push(acc as u32);
            log[acc as usize] = i as u32;
            acc = field.digit_mul(acc, g);
        }
        exp.extend_from_within(..);
        let zech = if field.0.p == 2 {
            Vec::new()
        } else {
            (0..order)
                .map(|i| {
                    let s = field.digit_add(1, exp[i] as u64);
                    if s == 0 {
                        NO_LOG
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        };
        field.0.generator.set(g).ok();
        Tables { exp, log, zech }
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Gf {}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => write!(f, "GF({})", self.0.q),
            Some(m) => write!(f, "GF({})[{}]", self.0.q, m.render()),
        }
    }
}

impl Field for Gf {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn degree_over_prime(&self) -> u32 {
        self.0.k
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.0.q)
    }

    fn order_u64(&self) -> Option<u64> {
        Some(self.0.q)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        match &self.0.kernel {
            Kernel::Prime => self.add_mod_p(*a, *b),
            Kernel::Digits => self.digit_add(*a, *b),
            Kernel::Tables(t) => {
                if self.0.p == 2 {
                    return a ^ b;
                }
                if *a == 0 {
                    return *b;
                }
                if *b == 0 {
                    return *a;
                }
                let order = self.0.q - 1;
                let (la, lb) = (t.log[*a as usize] as u64, t.log[*b as usize] as u64);
                let d = (lb + order - la) % order;
                match t.zech[d as usize] {
                    NO_LOG => 0,
                    z => t.exp[(la + z as u64) as usize] as u64,
                }
            }
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        let nb = self.neg(b);
        self.add(a, &nb)
    }

    fn neg(&self, a: &u64) -> u64 {
        match &self.0.kernel {
            Kernel::Prime => {
                if *a == 0 {
                    0
                } else {
                    self.0.p - a
                }
            }
            _ if self.0.p == 2 => *a,
            Kernel::Tables(t) => {
                if *a == 0 {
                    return 0;
                }
                let half = (self.0.q - 1) / 2;
                t.exp[(t.log[*a as usize] as u64 + half) as usize] as u64
            }
            Kernel::Digits => self.digit_neg(*a),
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        match &self.0.kernel {
            Kernel::Prime => self.mul_mod_p(*a, *b),
            Kernel::Digits => self.digit_mul(*a, *b),
            Kernel::Tables(t) => {
                if *a == 0 || *b == 0 {
                    0
                } else {
                    t.exp[(t.log[*a as usize] + t.log[*b as usize]) as usize] as u64
                }
            }
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        match &self.0.kernel {
            Kernel::Prime => self.inv_mod_p(*a),
            Kernel::Tables(t) => {
                let order = self.0.q - 1;
                let l = t.log[*a as usize] as u64;
                Some(t.exp[((order - l) % order) as usize] as u64)
            }
            Kernel::Digits => Some(self.pow(a, self.0.q - 2)),
        }
    }

    fn from_int(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.0.p as i128) as u64
    }

    fn digits(&self, a: &u64) -> Vec<u64> {
        self.split(*a)
    }

    fn from_digits(&self, digits: &[u64]) -> u64 {
        self.join(digits)
    }

    fn element_at(&self, index: u64) -> Option<u64> {
        (index < self.0.q).then_some(index)
    }

    fn cmp_canonical(&self, a: &u64, b: &u64) -> std::cmp::Ordering {
        a.cmp(b)
    }

    fn encode(&self, a: &u64) -> BigUint {
        BigUint::from(*a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let f2 = Gf::new(2, 1).unwrap();
        assert!(f2.modulus().is_none());
        assert_eq!(f2.q(), 2);

        let f9 = Gf::new(3, 2).unwrap();
        assert_eq!(f9.modulus().unwrap().coeffs(), &[1, 0, 1]);

        assert_eq!(Gf::new(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(Gf::new(3, 0), Err(Error::ZeroDegree));
        assert_eq!(Gf::new(2, 64), Err(Error::Overflow));
        assert!(Gf::new(2, 63).is_ok());
        assert_eq!(Gf::from_order(12), Err(Error::NotPrimePower(12)));
    }

    #[test]
    fn primitive_element_examples() {
        assert_eq!(Gf::prime(5).unwrap().primitive_element(), 2);
        assert_eq!(Gf::prime(2).unwrap().primitive_element(), 1);
        // 1 + x in F_9, encoded 1 + 3
        let f9 = Gf::new(3, 2).unwrap();
        let g = f9.primitive_element();
        assert_eq!(g, 4);
        assert_eq!(f9.pow(&g, 4), 2);
    }

    #[test]
    fn frobenius_on_f9() {
        let f9 = Gf::new(3, 2).unwrap();
        let alpha = 3; // the class of x, a root of x^2 + 1
        let over = BigUint::from(3u32);
        assert_eq!(f9.frobenius(&alpha, &over), f9.neg(&alpha));
        for c in 0..3 {
            assert_eq!(f9.frobenius(&c, &over), c);
        }
        for a in 0..9 {
            let twice = f9.frobenius(&f9.frobenius(&a, &over), &over);
            assert_eq!(twice, a);
        }
    }

    /// Tabled and digit kernels must agree; F_27 is tabled, so rebuild the
    /// digit kernel by hand.
    #[test]
    fn table_kernel_matches_digit_kernel() {
        let tabled = Gf::new(3, 3).unwrap();
        let plain = Gf(Arc::new(Inner {
            p: 3,
            k: 3,
            q: 27,
            modulus: tabled.0.modulus.clone(),
            prime_subfield: Some(Gf::prime(3).unwrap()),
            kernel: Kernel::Digits,
            generator: OnceLock::new(),
        }));
        for a in 0..27 {
            assert_eq!(tabled.neg(&a), plain.neg(&a));
            assert_eq!(tabled.inv(&a), plain.inv(&a));
            for b in 0..27 {
                assert_eq!(tabled.add(&a, &b), plain.add(&a, &b));
                assert_eq!(tabled.mul(&a, &b), plain.mul(&a, &b));
            }
        }
    }

    #[test]
    fn large_prime_field_arithmetic() {
        let p = 9_223_372_036_854_775_783; // largest prime below 2^63
        let f = Gf::prime(p).unwrap();
        let a = p - 2;
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), 1);
        assert_eq!(f.add(&a, &5), 3);
    }
}
