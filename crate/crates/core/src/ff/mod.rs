//! Finite fields.
//!
//! Two concrete fields implement [`Field`]:
//!
//! * [`Gf`] is `F_p` or `F_{p^k} = F_p[x]/(m)`, with elements stored as their
//!   canonical integer encoding. Cardinality is capped at `2^63`.
//! * [`ExtField`] is a one-step extension `F[y]/(M)` of any field, with elements
//!   stored as coefficient vectors over the base. These carry splitting fields
//!   whose cardinality may exceed the integer envelope.
//!
//! Moduli are the least monic irreducible polynomial in the canonical order:
//! coefficient vectors read as base-`|F|` integers, constant term least
//! significant. This is not the Conway-polynomial convention, so encodings are
//! not interchangeable with systems that use Conway polynomials.

mod ext;
mod gf;
pub mod int;

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use ext::ExtField;
pub use gf::{Gf, MAX_ORDER};

/// A finite field acting on its own element type.
///
/// Fields are immutable handles that are cheap to clone; elements are plain
/// values and every operation goes through the field.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree_over_prime(&self) -> u32;
    fn order(&self) -> BigUint;
    fn order_u64(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under `Z -> F_p -> F`.
    fn from_int(&self, v: i64) -> Self::Elem;
    /// Base-`p` digits of the canonical encoding, least significant first,
    /// always `degree_over_prime` long.
    fn digits(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_digits(&self, digits: &[u64]) -> Self::Elem;
    /// The element whose canonical encoding is `index`, if `index < |F|`.
    fn element_at(&self, index: u64) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|binv| self.mul(a, &binv))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Order in the canonical encoding.
    fn cmp_canonical(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        self.digits(a).iter().rev().cmp(self.digits(b).iter().rev())
    }

    fn encode(&self, a: &Self::Elem) -> BigUint {
        let p = BigUint::from(self.characteristic());
        self.digits(a)
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &p + BigUint::from(d))
    }

    /// Canonical text form: the base-`p` digits of the encoding, most
    /// significant first, fixed width `degree_over_prime`. Digits are joined
    /// with `.` when `p > 10`.
    fn text(&self, a: &Self::Elem) -> String {
        let sep = if self.characteristic() > 10 { "." } else { "" };
        self.digits(a)
            .iter()
            .rev()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// `a^|over|`, where `over` is a subfield given by its cardinality.
    /// Fixed points are exactly the elements of that subfield.
    fn frobenius(&self, a: &Self::Elem, over_order: &BigUint) -> Self::Elem {
        self.pow_big(a, over_order)
    }

    /// Multiplicative order of a nonzero element, given the prime factors of
    /// `|F| - 1`.
    fn element_order(&self, a: &Self::Elem, group_order: u64, primes: &[u64]) -> u64 {
        let mut ord = group_order;
        for &l in primes {
            while ord % l == 0 && self.is_one(&self.pow(a, ord / l)) {
                ord /= l;
            }
        }
        ord
    }
}

/// Parses the canonical text form back into an element.
pub fn parse_text<F: Field>(field: &F, s: &str) -> Option<F::Elem> {
    let p = field.characteristic();
    let mut digits: Vec<u64> = if p > 10 {
        s.split('.').map(|d| d.parse().ok()).collect::<Option<_>>()?
    } else {
        s.chars().map(|c| c.to_digit(10).map(u64::from)).collect::<Option<_>>()?
    };
    if digits.len() != field.degree_over_prime() as usize || digits.iter().any(|&d| d >= p) {
        return None;
    }
    digits.reverse();
    Some(field.from_digits(&digits))
}

/// Least element (canonical order) generating the multiplicative group.
///
/// `group_order` is `|F| - 1`; callers guarantee it fits in `u64`.
pub(crate) fn least_generator<F: Field>(field: &F, group_order: u64) -> F::Elem {
    let primes = int::prime_factors(group_order);
    (1..)
        .map(|i| field.element_at(i).expect("generator exists below |F|"))
        .find(|g| primes.iter().all(|&l| !field.is_one(&field.pow(g, group_order / l))))
        .expect("cyclic group has a generator")
}

pub(crate) fn big_minus_one(x: &BigUint) -> BigUint {
    x - BigUint::one()
}
