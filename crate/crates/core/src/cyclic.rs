//! The cyclic group algebra `R_n = F_q[x]/(x^n - 1)`.
//!
//! `x^n - 1` is factored structurally: each `q`-cyclotomic coset `C` mod `n`
//! gives the factor `prod_{i in C} (x - zeta^i)`, computed in `F_{q^t}` with
//! `t = ord_n(q)` and projected back to `F_q`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{int, ExtField, Field, Gf};
use crate::poly::Poly;

/// Orbits of `i -> q i` on `Z/nZ`, each sorted, ordered by least element.
pub fn cyclotomic_cosets(n: u64, q: u64) -> Result<Vec<Vec<u64>>> {
    check_coprime(q, n)?;
    let qm = q % n;
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut i = start;
        while !seen[i as usize] {
            seen[i as usize] = true;
            coset.push(i);
            i = ((i as u128 * qm as u128) % n as u128) as u64;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    Ok(cosets)
}

pub(crate) fn check_coprime(q: u64, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if int::gcd(q, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FactorRole {
    /// `x - 1`
    Unity,
    /// `x + 1`, present when `n` is even in odd characteristic
    NegUnity,
    SelfReciprocal,
    PairCanonical,
    PairMate,
}

impl FactorRole {
    pub fn is_self_reciprocal(self) -> bool {
        matches!(self, Self::Unity | Self::NegUnity | Self::SelfReciprocal)
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub poly: Poly<Gf>,
    pub role: FactorRole,
    /// Index of the monic reciprocal, for pair members.
    pub mate: Option<usize>,
    /// Exponents `i` with `f(zeta^i) = 0`, when known.
    pub coset: Option<Vec<u64>>,
}

/// How the primitive `n`-th root of unity was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaConvention {
    /// `zeta = g^((q^t-1)/n)`, `g` the least generator of `F_{q^t}^*`.
    PrimitivePower,
    /// `zeta = h^((q^t-1)/n)`, `h` the least element making this a
    /// primitive `n`-th root. Used when `q^t - 1` exceeds `2^63`.
    LeastRootPower,
}

/// The splitting field of `x^n - 1` together with the chosen root.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub field: ExtField<Gf>,
    pub zeta: Vec<u64>,
    pub convention: ZetaConvention,
}

impl Splitting {
    pub fn new(base: &Gf, n: u64) -> Result<Self> {
        check_coprime(base.q(), n)?;
        let t = int::multiplicative_order(base.q(), n) as usize;
        let field = ExtField::new(base, t)?;
        let exponent = (field.order() - 1u32) / BigUint::from(n);
        let primes = int::prime_factors(n);
        let is_primitive_root = |z: &Vec<u64>| {
            primes.iter().all(|&l| !field.is_one(&field.pow(z, n / l)))
        };
        let (zeta, convention) = match field.primitive_element() {
            Ok(g) => (field.pow_big(&g, &exponent), ZetaConvention::PrimitivePower),
            Err(_) => {
                let zeta = (1..)
                    .map(|i| field.pow_big(&field.element_at(i).expect("index in range"), &exponent))
                    .find(|z| is_primitive_root(z))
                    .expect("F_{q^t}^* contains elements of order n");
                (zeta, ZetaConvention::LeastRootPower)
            }
        };
        if !field.is_one(&field.pow(&zeta, n)) || !is_primitive_root(&zeta) {
            return Err(Error::Invariant("zeta is not a primitive n-th root of unity".into()));
        }
        Ok(Splitting { field, zeta, convention })
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn zeta_pow(&self, i: u64) -> Vec<u64> {
        self.field.pow(&self.zeta, i)
    }
}

/// The classified irreducible factors of `x^n - 1`.
///
/// Ordering: `x - 1`; then `x + 1` when `n` is even in odd characteristic;
/// then the other self-reciprocal factors by canonical polynomial order; then
/// the reciprocal pairs, also by canonical order of the canonical member, each
/// listed canonical member first. The canonical member of a pair is the
/// smaller of `f` and its monic reciprocal.
#[derive(Clone, Debug)]
pub struct Factorization {
    field: Gf,
    n: usize,
    factors: Vec<Factor>,
    r: usize,
    s: usize,
    splitting: Option<Splitting>,
}

impl Factorization {
    /// Orders and classifies monic irreducible factors of `x^n - 1`.
    pub fn classify(
        field: &Gf,
        n: usize,
        polys: Vec<(Poly<Gf>, Option<Vec<u64>>)>,
        splitting: Option<Splitting>,
    ) -> Result<Self> {
        check_coprime(field.q(), n as u64)?;
        let unity = Poly::from_ints(field, &[-1, 1]);
        let neg_unity = Poly::from_ints(field, &[1, 1]);
        let has_neg_unity = n % 2 == 0 && field.p() != 2;

        let mut lead: Vec<Factor> = Vec::new();
        let mut selfrec: Vec<Factor> = Vec::new();
        let mut paired: Vec<(Poly<Gf>, Option<Vec<u64>>, Poly<Gf>)> = Vec::new();
        for (poly, coset) in polys {
            if !poly.is_monic() || poly.degree() == Some(0) {
                return Err(Error::Invariant(format!("factor {poly:?} is not monic nonconstant")));
            }
            let recip = poly.monic_reciprocal()?;
            let role = if poly == unity {
                FactorRole::Unity
            } else if has_neg_unity && poly == neg_unity {
                FactorRole::NegUnity
            } else if recip == poly {
                FactorRole::SelfReciprocal
            } else {
                paired.push((poly, coset, recip));
                continue;
            };
            let factor = Factor { poly, role, mate: None, coset };
            if role == FactorRole::SelfReciprocal {
                selfrec.push(factor);
            } else {
                lead.push(factor);
            }
        }
        lead.sort_by_key(|f| f.role != FactorRole::Unity);
        selfrec.sort_by(|a, b| a.poly.cmp_canonical(&b.poly));

        let mut canon: Vec<usize> = (0..paired.len())
            .filter(|&i| paired[i].0.cmp_canonical(&paired[i].2).is_lt())
            .collect();
        canon.sort_by(|&a, &b| paired[a].0.cmp_canonical(&paired[b].0));
        if 2 * canon.len() != paired.len() {
            return Err(Error::Invariant("reciprocal pairs do not close up".into()));
        }

        let mut factors = lead;
        factors.extend(selfrec);
        let r = factors.len();
        let mut taken = vec![false; paired.len()];
        for &ci in &canon {
            let mate = (0..paired.len())
                .find(|&j| !taken[j] && paired[j].0 == paired[ci].2)
                .ok_or_else(|| Error::Invariant("reciprocal of a factor is missing".into()))?;
            taken[ci] = true;
            taken[mate] = true;
            let idx = factors.len();
            factors.push(Factor {
                poly: paired[ci].0.clone(),
                role: FactorRole::PairCanonical,
                mate: Some(idx + 1),
                coset: paired[ci].1.clone(),
            });
            factors.push(Factor {
                poly: paired[mate].0.clone(),
                role: FactorRole::PairMate,
                mate: Some(idx),
                coset: paired[mate].1.clone(),
            });
        }
        let s = canon.len();
        Ok(Factorization { field: field.clone(), n, factors, r, s, splitting })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of self-reciprocal factors, `x - 1` and `x + 1` included.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of reciprocal pairs.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn splitting(&self) -> Option<&Splitting> {
        self.splitting.as_ref()
    }

    pub fn polys(&self) -> Vec<Poly<Gf>> {
        self.factors.iter().map(|f| f.poly.clone()).collect()
    }

    pub fn index_of(&self, poly: &Poly<Gf>) -> Option<usize> {
        self.factors.iter().position(|f| f.poly == *poly)
    }

    /// Indices of the Wedderburn components in order: one per self-reciprocal
    /// factor, one per pair (its canonical member).
    pub fn component_heads(&self) -> Vec<usize> {
        (0..self.factors.len()).filter(|&i| self.factors[i].role != FactorRole::PairMate).collect()
    }

    pub fn product(&self) -> Poly<Gf> {
        self.factors.iter().fold(Poly::one(&self.field), |acc, f| &acc * &f.poly)
    }

    /// Same polynomials in the same order.
    pub fn same_factors(&self, other: &Self) -> bool {
        self.n == other.n && self.field == other.field && self.polys() == other.polys()
    }
}

/// Factors `x^n - 1` over `F_q` from the cyclotomic cosets.
pub fn factor_xn_minus_1(field: &Gf, n: usize) -> Result<Factorization> {
    let q = field.q();
    let cosets = cyclotomic_cosets(n as u64, q)?;
    let splitting = Splitting::new(field, n as u64)?;
    let ext = &splitting.field;
    let mut polys = Vec::with_capacity(cosets.len());
    for coset in cosets {
        let mut root_poly = Poly::one(ext);
        for &i in &coset {
            let linear = Poly::new(ext, vec![ext.neg(&splitting.zeta_pow(i)), ext.one()]);
            root_poly = &root_poly * &linear;
        }
        let coeffs = root_poly
            .coeffs()
            .iter()
            .map(|c| ext.try_project(c))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::Invariant("cyclotomic factor is not defined over F_q".into()))?;
        polys.push((Poly::new(field, coeffs), Some(coset)));
    }
    let fact = Factorization::classify(field, n, polys, Some(splitting))?;
    if fact.product() != Poly::x_pow_minus_one(field, n) {
        return Err(Error::Invariant("factors do not multiply to x^n - 1".into()));
    }
    for f in fact.factors() {
        if !f.poly.is_irreducible()? {
            return Err(Error::Invariant(format!("factor {:?} is reducible", f.poly)));
        }
    }
    Ok(fact)
}

/// Element of `R_n`: a dense coefficient vector of length exactly `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct RnElement {
    field: Gf,
    coeffs: Vec<u64>,
}

impl RnElement {
    pub fn zero(field: &Gf, n: usize) -> Self {
        RnElement { field: field.clone(), coeffs: vec![0; n] }
    }

    pub fn one(field: &Gf, n: usize) -> Self {
        Self::monomial(field, n, 1, 0)
    }

    /// `c x^k`, exponent reduced mod `n`.
    pub fn monomial(field: &Gf, n: usize, c: u64, k: usize) -> Self {
        let mut e = Self::zero(field, n);
        e.coeffs[k % n] = c;
        e
    }

    pub fn from_coeffs(field: &Gf, coeffs: Vec<u64>) -> Self {
        RnElement { field: field.clone(), coeffs }
    }

    /// Reduces a polynomial mod `x^n - 1`.
    pub fn from_poly(field: &Gf, n: usize, p: &Poly<Gf>) -> Self {
        let mut e = Self::zero(field, n);
        for (k, c) in p.coeffs().iter().enumerate() {
            e.coeffs[k % n] = field.add(&e.coeffs[k % n], c);
        }
        e
    }

    pub fn to_poly(&self) -> Poly<Gf> {
        Poly::new(&self.field, self.coeffs.clone())
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect();
        RnElement { field: f.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.sub(a, b)).collect();
        RnElement { field: f.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        RnElement { field: f.clone(), coeffs: self.coeffs.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn scale(&self, c: &u64) -> Self {
        let f = &self.field;
        RnElement { field: f.clone(), coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect() }
    }

    /// Cyclic convolution.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        let f = &self.field;
        let n = self.n();
        let mut out = vec![0u64; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if *b == 0 {
                    continue;
                }
                let k = if i + j >= n { i + j - n } else { i + j };
                out[k] = f.add(&out[k], &f.mul(a, b));
            }
        }
        RnElement { field: f.clone(), coeffs: out }
    }

    /// `H(x^{-1})`.
    pub fn bar(&self) -> Self {
        let n = self.n();
        let coeffs = (0..n).map(|k| self.coeffs[(n - k) % n]).collect();
        RnElement { field: self.field.clone(), coeffs }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// Value at `x = c` for `c` with `c^n = 1`.
    pub fn eval(&self, c: &u64) -> u64 {
        self.to_poly().eval(c)
    }
}

impl std::fmt::Debug for RnElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_poly().render())
    }
}

fn cofactor(fact: &Factorization, f: &Poly<Gf>) -> Result<Poly<Gf>> {
    if f.is_zero() {
        return Err(Error::NotADivisor);
    }
    Poly::x_pow_minus_one(fact.field(), fact.n()).exact_div(f)
}

/// `e_f = -((f*)')* / n * (x^n - 1)/f`, the idempotent that is 1 exactly on
/// the roots of `f`.
///
/// The outer reciprocal is taken at the formal degree `deg f - 1`: when the
/// characteristic divides `deg f` the derivative loses its top term, and the
/// identity `((f*)')* = -sum lambda_i prod_{j != i} (x - lambda_j)` only holds
/// at the formal degree.
pub fn idempotent_derivative(fact: &Factorization, f: &Poly<Gf>) -> Result<RnElement> {
    let field = fact.field();
    let n = fact.n();
    let f = f.monic();
    let cof = cofactor(fact, &f)?;
    let Some(d) = f.degree().filter(|&d| d > 0) else {
        return Ok(RnElement::zero(field, n));
    };
    let inner = f.reciprocal()?.derivative().reciprocal_formal(d - 1)?;
    let n_inv = field.inv(&field.from_int(n as i64)).expect("gcd(n, q) = 1");
    let e = (&inner * &cof).scale(&field.neg(&n_inv));
    Ok(RnElement::from_poly(field, n, &e))
}

/// The unique `e` with `e = 1 mod f` and `e = 0 mod (x^n - 1)/f`, from the
/// Bezout identity `u f + v g = 1`: `e = v g`.
pub fn idempotent_crt_oracle(fact: &Factorization, f: &Poly<Gf>) -> Result<RnElement> {
    let f = f.monic();
    let cof = cofactor(fact, &f)?;
    let (g, _, v) = Poly::xgcd(&f, &cof)?;
    if !g.is_one() {
        return Err(Error::Invariant("x^n - 1 is not squarefree".into()));
    }
    Ok(RnElement::from_poly(fact.field(), fact.n(), &(&v * &cof)))
}

/// The `r + 2s` primitive idempotents of `R_n`, aligned with the factors.
///
/// Each is computed by [`idempotent_derivative`] and certified against the CRT
/// oracle, for idempotency, pairwise orthogonality and completeness.
pub fn primitive_idempotents(field: &Gf, n: usize) -> Result<(Factorization, Vec<RnElement>)> {
    let fact = factor_xn_minus_1(field, n)?;
    let idems = idempotents_for(&fact)?;
    Ok((fact, idems))
}

/// [`primitive_idempotents`] for an existing factorization.
pub fn idempotents_for(fact: &Factorization) -> Result<Vec<RnElement>> {
    let field = fact.field();
    let n = fact.n();
    let mut idems = Vec::with_capacity(fact.len());
    for factor in fact.factors() {
        let e = idempotent_derivative(fact, &factor.poly)?;
        if e != idempotent_crt_oracle(fact, &factor.poly)? {
            return Err(Error::Invariant(format!("derivative formula disagrees with CRT for {:?}", factor.poly)));
        }
        if !e.is_idempotent() {
            return Err(Error::Invariant("e_f is not idempotent".into()));
        }
        idems.push(e);
    }
    for i in 0..idems.len() {
        for j in i + 1..idems.len() {
            if !idems[i].mul(&idems[j]).is_zero() {
                return Err(Error::Invariant("idempotents are not orthogonal".into()));
            }
        }
    }
    let total = idems.iter().fold(RnElement::zero(field, n), |acc, e| acc.add(e));
    if total != RnElement::one(field, n) {
        return Err(Error::Invariant("idempotents do not sum to 1".into()));
    }
    Ok(idems)
}

/// `q^t - 1` as an integer when it fits.
pub fn splitting_order_u64(s: &Splitting) -> Option<u64> {
    let m = s.field.order();
    if m.is_zero() {
        None
    } else {
        (m - 1u32).to_u64()
    }
}
