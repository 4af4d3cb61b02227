//! Dense univariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ff::{int, Field};

/// Coefficients constant term first, no trailing zeros. The zero polynomial
/// has no coefficients and degree `None`.
#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &F) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(field: &F, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[0] = field.neg(&field.one());
        coeffs[n] = field.add(&coeffs[n], &field.one());
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn lead(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !self.field.is_zero(c)).count()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(c) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let f = &self.field;
        let Some(sd) = self.degree() else {
            return Ok((self.clone(), self.clone()));
        };
        if sd < dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let lead_inv = f.inv(d.lead().unwrap()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); sd - dd + 1];
        for top in (dd..=sd).rev() {
            let c = f.mul(&rem[top], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let term = f.mul(&c, dj);
                rem[top - dd + j] = f.sub(&rem[top - dd + j], &term);
            }
            quot[top - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        self.divrem(d).map(|(_, r)| r)
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotADivisor)
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Formal derivative; monomials whose exponent is divisible by the
    /// characteristic vanish.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| {
                let k = f.from_int((k as u64 % f.characteristic()) as i64);
                f.mul(&k, a)
            })
            .collect();
        Self::new(f, coeffs)
    }

    /// `g*(x) = x^deg(g) g(1/x)` using the actual degree.
    pub fn reciprocal(&self) -> Result<Self> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        self.reciprocal_formal(d)
    }

    /// `x^d g(1/x)` for a formal degree `d >= deg(g)`.
    pub fn reciprocal_formal(&self, d: usize) -> Result<Self> {
        match self.degree() {
            None => Ok(self.clone()),
            Some(actual) if actual > d => Err(Error::FormalDegree { formal: d, actual }),
            Some(_) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.resize(d + 1, self.field.zero());
                coeffs.reverse();
                Ok(Self::new(&self.field, coeffs))
            }
        }
    }

    /// Reciprocal scaled to be monic.
    pub fn monic_reciprocal(&self) -> Result<Self> {
        self.reciprocal().map(|r| r.monic())
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.reciprocal().is_ok_and(|r| r == *self)
    }

    /// Monic gcd with Bezout cofactors: `u a + v b = g`.
    pub fn xgcd(a: &Self, b: &Self) -> Result<(Self, Self, Self)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = &a.field;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        let inv = f.inv(r0.lead().unwrap()).expect("nonzero leading coefficient");
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    pub fn gcd(a: &Self, b: &Self) -> Result<Self> {
        Self::xgcd(a, b).map(|(g, _, _)| g)
    }

    /// `base^e mod m`.
    pub fn powmod(base: &Self, e: &BigUint, m: &Self) -> Result<Self> {
        let mut acc = Self::one(&base.field).rem(m)?;
        let b = base.rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m)?;
            if e.bit(i) {
                acc = (&acc * &b).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Rabin's test: `x^(Q^d) = x mod f` and `gcd(x^(Q^(d/l)) - x, f) = 1`
    /// for every prime `l | d`, with `Q` the field size.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(1) => return Ok(true),
            Some(d) => d,
        };
        let f = self.monic();
        let q = self.field.order();
        let x = Self::x(&self.field);
        // frob[i] = x^(Q^i) mod f
        let mut frob = vec![x.clone()];
        for i in 0..d {
            let next = Self::powmod(&frob[i], &q, &f)?;
            frob.push(next);
        }
        if frob[d] != x {
            return Ok(false);
        }
        for l in int::prime_factors(d as u64) {
            let h = &frob[d / l as usize] - &x;
            if !Self::gcd(&h, &f)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The least monic irreducible polynomial of degree `d` in the canonical
    /// order (coefficients as base-`|F|` digits, constant term least
    /// significant).
    pub(crate) fn least_irreducible(field: &F, d: usize) -> Self {
        let radix = field.order_u64().unwrap_or(u64::MAX);
        let mut digits = vec![0u64; d];
        loop {
            if d == 1 || digits[0] != 0 {
                let mut coeffs: Vec<F::Elem> = digits
                    .iter()
                    .map(|&i| field.element_at(i).expect("digit below field order"))
                    .collect();
                coeffs.push(field.one());
                let cand = Self::new(field, coeffs);
                if cand.is_irreducible().expect("nonconstant candidate") {
                    return cand;
                }
            }
            let mut pos = 0;
            loop {
                digits[pos] += 1;
                if digits[pos] < radix {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
                assert!(pos < d, "irreducible polynomials exist in every degree");
            }
        }
    }

    /// For self-reciprocal `g` of degree `2t` with `g(1), g(-1) != 0`, the
    /// degree-`t` polynomial `h` with `g(x) = x^t h(x + 1/x)`, built on the
    /// Dickson basis `D_0 = 2, D_1 = z, D_j = z D_{j-1} - D_{j-2}`.
    pub fn compress_self_reciprocal(&self) -> Result<Self> {
        let f = &self.field;
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if !self.is_self_reciprocal() {
            return Err(Error::NotSelfReciprocal);
        }
        if deg % 2 == 1 {
            return Err(Error::OddDegree);
        }
        if f.is_zero(&self.eval(&f.one())) {
            return Err(Error::UnitRoot(1));
        }
        if f.is_zero(&self.eval(&f.from_int(-1))) {
            return Err(Error::UnitRoot(-1));
        }
        let t = deg / 2;
        let z = Self::x(f);
        let mut h = Self::constant(f, self.coeffs[t].clone());
        let (mut d_prev, mut d_cur) = (Self::constant(f, f.from_int(2)), z.clone());
        for j in 1..=t {
            h = &h + &d_cur.scale(&self.coeffs[t + j]);
            let d_next = &(&z * &d_cur) - &d_prev;
            (d_prev, d_cur) = (d_cur, d_next);
        }
        Ok(h)
    }

    /// Degree first, then coefficients from the top in the field's canonical
    /// order. Among polynomials of equal degree this is the integer value of
    /// the coefficient vector.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs).rev() {
                match self.field.cmp_canonical(a, b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Human-readable form such as `2x^3+x+1`, coefficients written as the
    /// decimal value of their canonical encoding.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let coef = self.field.encode(c).to_string();
            let term = match (k, coef.as_str()) {
                (0, _) => coef,
                (1, "1") => "x".into(),
                (1, _) => format!("{coef}x"),
                (_, "1") => format!("x^{k}"),
                _ => format!("{coef}x^{k}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    /// Comma-separated canonical element texts, constant term first.
    pub fn to_text(&self) -> String {
        self.coeffs.iter().map(|c| self.field.text(c)).collect::<Vec<_>>().join(",")
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f, coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f, coeffs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        Poly::new(&self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}
