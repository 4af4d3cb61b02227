use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{big_minus_one, least_generator, Field};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Upper bound on extension cardinality, in bits.
const MAX_BITS: u64 = 1024;

/// One-step extension `F[y]/(M)`, `M` the least monic irreducible polynomial
/// of the requested degree over `F` in the canonical order.
///
/// Elements are coefficient vectors over the base, constant term first,
/// always exactly `degree` long.
pub struct ExtField<F: Field>(Arc<Inner<F>>);

struct Inner<F: Field> {
    base: F,
    degree: usize,
    modulus: Vec<F::Elem>,
    order: BigUint,
    generator: OnceLock<Option<Vec<F::Elem>>>,
}

impl<F: Field> Clone for ExtField<F> {
    fn clone(&self) -> Self {
        ExtField(Arc::clone(&self.0))
    }
}

impl<F: Field> ExtField<F> {
    pub fn new(base: &F, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = base.order().pow(degree as u32);
        if order.bits() > MAX_BITS {
            return Err(Error::Overflow);
        }
        let modulus = Poly::least_irreducible(base, degree);
        Ok(ExtField(Arc::new(Inner {
            base: base.clone(),
            degree,
            modulus: modulus.coeffs().to_vec(),
            order,
            generator: OnceLock::new(),
        })))
    }

    pub fn base(&self) -> &F {
        &self.0.base
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> Poly<F> {
        Poly::new(&self.0.base, self.0.modulus.clone())
    }

    pub fn embed(&self, a: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.0.base.zero(); self.0.degree];
        v[0] = a.clone();
        v
    }

    /// Inverse of [`ExtField::embed`], defined exactly on its image.
    pub fn try_project(&self, a: &[F::Elem]) -> Result<F::Elem> {
        if a[1..].iter().all(|c| self.0.base.is_zero(c)) {
            Ok(a[0].clone())
        } else {
            Err(Error::NotInSubfield)
        }
    }

    /// The generator of the extension as an algebra over the base.
    pub fn generator_y(&self) -> Vec<F::Elem> {
        if self.0.degree == 1 {
            // modulus is y - c, so y = c
            return vec![self.0.base.neg(&self.0.modulus[0])];
        }
        let mut v = vec![self.0.base.zero(); self.0.degree];
        v[1] = self.0.base.one();
        v
    }

    /// `a^|base|`; fixes exactly the embedded base.
    pub fn frobenius_base(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        self.pow_big(&a.to_vec(), &self.0.base.order())
    }

    /// Multiplies by a base-field scalar.
    pub fn scale(&self, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().map(|x| self.0.base.mul(c, x)).collect()
    }

    /// Least generator of the multiplicative group, when `|E| - 1` fits the
    /// integer envelope that factoring supports.
    pub fn primitive_element(&self) -> Result<Vec<F::Elem>> {
        self.0
            .generator
            .get_or_init(|| {
                let order = big_minus_one(&self.0.order).to_u64().filter(|&m| m < (1 << 63))?;
                Some(least_generator(self, order))
            })
            .clone()
            .ok_or(Error::Overflow)
    }

    /// Evaluates a base-field polynomial at an extension element.
    pub fn eval_base_poly(&self, f: &Poly<F>, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, &x.to_vec());
            acc[0] = self.0.base.add(&acc[0], c);
        }
        acc
    }
}

impl<F: Field> PartialEq for ExtField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base && self.0.modulus == other.0.modulus)
    }
}

impl<F: Field> fmt::Debug for ExtField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[y]/({})", self.0.base, self.modulus().render())
    }
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn characteristic(&self) -> u64 {
        self.0.base.characteristic()
    }

    fn degree_over_prime(&self) -> u32 {
        self.0.base.degree_over_prime() * self.0.degree as u32
    }

    fn order(&self) -> BigUint {
        self.0.order.clone()
    }

    fn order_u64(&self) -> Option<u64> {
        self.0.order.to_u64()
    }

    fn zero(&self) -> Self::Elem {
        vec![self.0.base.zero(); self.0.degree]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.0.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.0.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.0.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.0.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.0.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let base = &self.0.base;
        let t = self.0.degree;
        let mut prod = vec![base.zero(); 2 * t - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let term = base.mul(x, y);
                prod[i + j] = base.add(&prod[i + j], &term);
            }
        }
        let m = &self.0.modulus;
        for top in (t..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[top], base.zero());
            if base.is_zero(&c) {
                continue;
            }
            for (j, mj) in m[..t].iter().enumerate() {
                let term = base.mul(&c, mj);
                prod[top - t + j] = base.sub(&prod[top - t + j], &term);
            }
        }
        prod.truncate(t);
        prod
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let pa = Poly::new(&self.0.base, a.clone());
        let (g, u, _) = Poly::xgcd(&pa, &self.modulus()).ok()?;
        debug_assert!(g.is_one());
        let mut v = u.coeffs().to_vec();
        v.resize(self.0.degree, self.0.base.zero());
        Some(v)
    }

    fn from_int(&self, v: i64) -> Self::Elem {
        self.embed(&self.0.base.from_int(v))
    }

    fn digits(&self, a: &Self::Elem) -> Vec<u64> {
        a.iter().flat_map(|c| self.0.base.digits(c)).collect()
    }

    fn from_digits(&self, digits: &[u64]) -> Self::Elem {
        let w = self.0.base.degree_over_prime() as usize;
        digits.chunks(w).map(|d| self.0.base.from_digits(d)).collect()
    }

    fn element_at(&self, index: u64) -> Option<Self::Elem> {
        let base = &self.0.base;
        let mut v = self.zero();
        match base.order_u64() {
            Some(q) => {
                let mut rest = index;
                for slot in v.iter_mut() {
                    *slot = base.element_at(rest % q)?;
                    rest /= q;
                }
                (rest == 0).then_some(v)
            }
            None => {
                v[0] = base.element_at(index)?;
                Some(v)
            }
        }
    }

    fn cmp_canonical(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        for (x, y) in a.iter().zip(b).rev() {
            match self.0.base.cmp_canonical(x, y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}
