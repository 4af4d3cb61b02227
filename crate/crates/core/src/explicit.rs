//! Closed forms when every prime factor of `n` divides `q - 1`.
//!
//! Here `x^n - 1` splits into binomials `x^t - theta^{ul}` and, when `8 | n`
//! and `q = 3 mod 4`, trinomials `x^{2t} - (a + a^q) x^t + theta^{ul'}` with
//! `a = alpha^{ul'}` in `F_{q^2}`. The general modules arbitrate every claim.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::cyclic::{self, check_coprime, Factorization, RnElement};
use crate::dihedral::{CentralIdempotent, CentralKind, DihedralElement, WedderburnDescriptor};
use crate::error::{Error, Result};
use crate::ff::{int, ExtField, Field, Gf};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// `n` odd.
    #[serde(rename = "ODD")]
    Odd,
    /// `n` even, and `8` not dividing `n` or `q != 3 mod 4`.
    #[serde(rename = "EVEN_I")]
    EvenI,
    /// `8 | n` and `q = 3 mod 4`.
    #[serde(rename = "EVEN_II")]
    EvenII,
}

#[derive(Clone, Debug)]
pub struct ExplicitParams {
    pub field: Gf,
    pub quad: ExtField<Gf>,
    pub q: u64,
    pub n: u64,
    pub kappa: u64,
    /// Defined for even `n`.
    pub nu: Option<u32>,
    pub m: u64,
    pub l: u64,
    /// Defined in case `EVEN_II`.
    pub m_prime: Option<u64>,
    pub l_prime: Option<u64>,
    /// Least generator of `F_q^*`.
    pub theta: u64,
    /// Least generator of `F_{q^2}^*` with `alpha^{q+1} = theta`.
    pub alpha: Vec<u64>,
    pub case: CaseTag,
    /// Defined in case `EVEN_II`: 1 iff `v2(q+1) <= v2(n/2)`.
    pub i: Option<u32>,
}

pub fn explicit_params(field: &Gf, n: u64) -> Result<ExplicitParams> {
    let q = field.q();
    check_coprime(q, n)?;
    if !int::radical_divides(n, q - 1) {
        return Err(Error::RadicalCondition { q, n });
    }
    let kappa = int::gcd(n, q - 1);
    let nu = (n % 2 == 0).then(|| int::nu2(n / 2).min(int::nu2(q + 1)));
    let case = if n % 2 == 1 {
        CaseTag::Odd
    } else if n % 8 == 0 && q % 4 == 3 {
        CaseTag::EvenII
    } else {
        CaseTag::EvenI
    };
    let quad = ExtField::new(field, 2)?;
    let theta = field.primitive_element();
    let alpha = norm_preimage_generator(&quad, &theta)?;
    let (mut m_prime, mut l_prime, mut i) = (None, None, None);
    if case == CaseTag::EvenII {
        let nu = nu.expect("n even");
        let modulus = (1u64 << nu) * kappa;
        m_prime = Some(n / modulus);
        l_prime = Some((q * q - 1) / modulus);
        i = Some(u32::from(int::nu2(q + 1) <= int::nu2(n / 2)));
    }
    let params = ExplicitParams {
        field: field.clone(),
        quad,
        q,
        n,
        kappa,
        nu,
        m: n / kappa,
        l: (q - 1) / kappa,
        m_prime,
        l_prime,
        theta,
        alpha,
        case,
        i,
    };
    if params.quad.pow(&params.alpha, q + 1) != params.quad.embed(&theta) {
        return Err(Error::Invariant("alpha^(q+1) != theta".into()));
    }
    Ok(params)
}

/// Least generator of `F_{q^2}^*` whose norm `alpha^{q+1}` is `theta`.
fn norm_preimage_generator(quad: &ExtField<Gf>, theta: &u64) -> Result<Vec<u64>> {
    let q = quad.base().q();
    let order = q.checked_mul(q).ok_or(Error::Overflow)? - 1;
    let primes = int::prime_factors(order);
    let target = quad.embed(theta);
    (1..=order)
        .filter_map(|i| quad.element_at(i))
        .find(|a| quad.pow(a, q + 1) == target && quad.element_order(a, order, &primes) == order)
        .ok_or_else(|| Error::Invariant("no generator of F_{q^2}^* has norm theta".into()))
}

impl ExplicitParams {
    /// `2^nu kappa`, the modulus of the `S_t` condition.
    pub fn st_modulus(&self) -> Option<u64> {
        Some((1u64 << self.nu?) * self.kappa)
    }

    /// `S_t = {u : 1 <= u <= 2^nu kappa, gcd(u, t) = 1, 2^nu not dividing u, u < {qu}}`.
    pub fn st_set(&self, t: u64) -> Option<StSet> {
        self.m_prime?;
        let modulus = self.st_modulus()?;
        let two_nu = 1u64 << self.nu?;
        let members = (1..=modulus)
            .filter(|&u| int::gcd(u, t) == 1 && u % two_nu != 0 && u < (self.q % modulus) * u % modulus)
            .collect();
        Some(StSet { t, members })
    }

    fn theta_pow(&self, e: u64) -> u64 {
        self.field.pow(&self.theta, e % (self.q - 1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StSet {
    pub t: u64,
    pub members: Vec<u64>,
}

/// How an explicit factor was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    /// `x^t - theta^{ul}`.
    Binomial { t: u64, u: u64 },
    /// `x^{2t} - (a + a^q) x^t + theta^{ul'}`, `a = alpha^{ul'}`.
    Trinomial { t: u64, u: u64 },
}

#[derive(Clone, Debug)]
pub struct ExplicitFactor {
    pub shape: Shape,
    /// `theta^{ul}` or `theta^{ul'}`.
    pub constant: u64,
    /// `a + a^q` for trinomials.
    pub middle: Option<u64>,
    pub poly: Poly<Gf>,
}

impl ExplicitFactor {
    /// `x^t - c` with a single nonzero term below the leading one.
    pub fn is_binomial_shaped(&self) -> bool {
        self.poly.weight() == 2
    }
}

/// The closed-form factorization, ordered and classified like the general one.
#[derive(Clone, Debug)]
pub struct ExplicitFactorization {
    pub fact: Factorization,
    /// Aligned with `fact.factors()`.
    pub factors: Vec<ExplicitFactor>,
}

fn binomial(params: &ExplicitParams, t: u64, u: u64) -> ExplicitFactor {
    let f = &params.field;
    let c = params.theta_pow(u * params.l);
    let mut coeffs = vec![f.zero(); t as usize + 1];
    coeffs[0] = f.neg(&c);
    coeffs[t as usize] = f.one();
    ExplicitFactor { shape: Shape::Binomial { t, u }, constant: c, middle: None, poly: Poly::new(f, coeffs) }
}

fn trinomial(params: &ExplicitParams, t: u64, u: u64) -> Result<ExplicitFactor> {
    let f = &params.field;
    let quad = &params.quad;
    let e = u * params.l_prime.expect("EVEN_II");
    let a = quad.pow(&params.alpha, e);
    let middle = quad
        .try_project(&quad.add(&a, &quad.pow(&a, params.q)))
        .map_err(|_| Error::Invariant("trace of alpha^(ul') is not in F_q".into()))?;
    let c = params.theta_pow(e);
    let t = t as usize;
    let mut coeffs = vec![f.zero(); 2 * t + 1];
    coeffs[0] = c;
    coeffs[t] = f.neg(&middle);
    coeffs[2 * t] = f.one();
    Ok(ExplicitFactor {
        shape: Shape::Trinomial { t: t as u64, u },
        constant: c,
        middle: Some(middle),
        poly: Poly::new(f, coeffs),
    })
}

fn emit(params: &ExplicitParams) -> Result<Vec<ExplicitFactor>> {
    let mut out = Vec::new();
    match params.case {
        CaseTag::Odd | CaseTag::EvenI => {
            for t in int::divisors(params.m) {
                for u in (1..=params.kappa).filter(|&u| int::gcd(u, t) == 1) {
                    out.push(binomial(params, t, u));
                }
            }
        }
        CaseTag::EvenII => {
            let m_prime = params.m_prime.expect("EVEN_II");
            for t in int::divisors(m_prime) {
                if t % 2 == 1 {
                    for w in (1..=params.kappa).filter(|&w| int::gcd(w, t) == 1) {
                        out.push(binomial(params, t, w));
                    }
                }
                for u in params.st_set(t).expect("EVEN_II").members {
                    out.push(trinomial(params, t, u)?);
                }
            }
        }
    }
    Ok(out)
}

pub fn explicit_factorization(params: &ExplicitParams) -> Result<ExplicitFactorization> {
    let field = &params.field;
    let n = params.n as usize;
    let emitted = emit(params)?;
    let total: usize = emitted.iter().map(|f| f.poly.degree().unwrap_or(0)).sum();
    if total != n {
        return Err(Error::Invariant(format!("explicit factor degrees sum to {total}, not {n}")));
    }
    let fact = Factorization::classify(field, n, emitted.iter().map(|f| (f.poly.clone(), None)).collect(), None)?;
    let factors = fact
        .factors()
        .iter()
        .map(|g| emitted.iter().find(|f| f.poly == g.poly).cloned().expect("classified from emitted"))
        .collect();
    Ok(ExplicitFactorization { fact, factors })
}

/// One row of the factor-count table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub degree: usize,
    pub shape: &'static str,
    pub claimed: String,
    pub actual: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCountReport {
    pub rows: Vec<CountRow>,
    pub all_match: bool,
}

fn ratio_text(r: &Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn phi_over(t: u64, num: i64, den: i64) -> Rational64 {
    Rational64::new(int::euler_phi(t) as i64 * num, t as i64 * den)
}

/// Claimed counts by `(degree, shape)`.
pub fn claimed_factor_counts(params: &ExplicitParams) -> BTreeMap<(usize, &'static str), Rational64> {
    let kappa = params.kappa as i64;
    let mut claims: BTreeMap<(usize, &'static str), Rational64> = BTreeMap::new();
    let mut add = |deg: u64, shape, v: Rational64| *claims.entry((deg as usize, shape)).or_default() += v;
    match params.case {
        CaseTag::Odd | CaseTag::EvenI => {
            for t in int::divisors(params.m) {
                add(t, "binomial", phi_over(t, kappa, 1));
            }
        }
        CaseTag::EvenII => {
            let two_nu_1 = 1i64 << (params.nu.expect("EVEN_II") - 1);
            for t in int::divisors(params.m_prime.expect("EVEN_II")) {
                if t % 2 == 1 {
                    add(t, "binomial", phi_over(t, kappa, 1));
                    add(2 * t, "binomial", phi_over(t, kappa, 2));
                    add(2 * t, "trinomial", phi_over(t, (two_nu_1 - 1) * kappa, 1));
                } else {
                    add(2 * t, "trinomial", phi_over(t, two_nu_1 * kappa, 1));
                }
            }
        }
    }
    claims
}

/// Compares the closed-form counts with a factorization of `x^n - 1`.
pub fn factor_count_check(params: &ExplicitParams, fact: &Factorization) -> FactorCountReport {
    let mut actual: BTreeMap<(usize, &'static str), usize> = BTreeMap::new();
    for f in fact.factors() {
        let shape = match f.poly.weight() {
            2 => "binomial",
            3 => "trinomial",
            _ => "other",
        };
        *actual.entry((f.poly.degree().unwrap_or(0), shape)).or_default() += 1;
    }
    let claims = claimed_factor_counts(params);
    let mut keys: Vec<_> = claims.keys().chain(actual.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let rows: Vec<CountRow> = keys
        .into_iter()
        .map(|k| {
            let claimed = claims.get(&k).copied().unwrap_or_default();
            let actual = actual.get(&k).copied().unwrap_or(0);
            CountRow {
                degree: k.0,
                shape: k.1,
                claimed: ratio_text(&claimed),
                actual,
                matches: claimed == Rational64::from_integer(actual as i64),
            }
        })
        .collect();
    let all_match = rows.iter().all(|r| r.matches);
    FactorCountReport { rows, all_match }
}

/// Closed-form idempotent of one explicit factor:
/// `(c t / n) (x^n - 1)/(x^t - c)` for binomials and
/// `(t / n)(s x^t - 2c) (x^n - 1)/(x^{2t} - s x^t + c)` for trinomials.
pub fn explicit_idempotent(params: &ExplicitParams, factor: &ExplicitFactor) -> Result<RnElement> {
    let f = &params.field;
    let n = params.n as usize;
    let cof = Poly::x_pow_minus_one(f, n).exact_div(&factor.poly)?;
    let n_inv = f.inv(&f.from_int(n as i64)).expect("gcd(n, q) = 1");
    let e = match (factor.shape, factor.middle) {
        (Shape::Binomial { t, .. }, _) => {
            let scale = f.mul(&f.mul(&factor.constant, &f.from_int(t as i64)), &n_inv);
            cof.scale(&scale)
        }
        (Shape::Trinomial { t, .. }, Some(s)) => {
            let two_c = f.mul(&f.from_int(2), &factor.constant);
            let lin = &Poly::monomial(f, s, t as usize) - &Poly::constant(f, two_c);
            (&lin * &cof).scale(&f.mul(&f.from_int(t as i64), &n_inv))
        }
        (Shape::Trinomial { .. }, None) => return Err(Error::Invariant("trinomial without middle term".into())),
    };
    Ok(RnElement::from_poly(f, n, &e))
}

/// Closed-form idempotents aligned with `ef.factors`.
pub fn explicit_idempotents(params: &ExplicitParams, ef: &ExplicitFactorization) -> Result<Vec<RnElement>> {
    ef.factors.iter().map(|f| explicit_idempotent(params, f)).collect()
}

/// Closed-form mate: `x^t - c^-1` for binomials, the `-u` trinomial otherwise.
fn formula_mate(params: &ExplicitParams, f: &ExplicitFactor) -> Result<Poly<Gf>> {
    match f.shape {
        Shape::Binomial { t, .. } => {
            let field = &params.field;
            let c_inv = field.inv(&f.constant).ok_or(Error::Invariant("zero binomial constant".into()))?;
            let mut coeffs = vec![field.zero(); t as usize + 1];
            coeffs[0] = field.neg(&c_inv);
            coeffs[t as usize] = field.one();
            Ok(Poly::new(field, coeffs))
        }
        Shape::Trinomial { t, u } => {
            let modulus = params.q * params.q - 1;
            let lp = params.l_prime.expect("EVEN_II");
            let neg = (modulus - (u * lp) % modulus) % modulus;
            // u' with u' l' = -u l' mod q^2 - 1
            Ok(trinomial(params, t, neg / lp)?.poly)
        }
    }
}

/// Lifts the explicit idempotents to central idempotents of `F_q D_2n`.
///
/// `x - 1`, and `x + 1` for even `n`, split into `(1 +- y)/2 e` in odd
/// characteristic. Other self-reciprocal factors (`theta^{ul'} = 1`
/// trinomials, and `x^2 + 1`) pass through. The remaining factors are not
/// self-reciprocal and pair with their closed-form mate.
pub fn explicit_dihedral_promotion(
    params: &ExplicitParams,
    ef: &ExplicitFactorization,
    idems: &[RnElement],
) -> Result<Vec<CentralIdempotent>> {
    let field = &params.field;
    let n = params.n as usize;
    let odd_char = field.p() != 2;
    let one = DihedralElement::one(field, n);
    let y = DihedralElement::y(field, n);
    let half = field.inv(&field.from_int(2));
    let minus_one = field.from_int(-1);
    let mut used = vec![false; ef.factors.len()];
    let mut out = Vec::new();
    for (j, f) in ef.factors.iter().enumerate() {
        if used[j] {
            continue;
        }
        used[j] = true;
        let e = DihedralElement::from_cyclic(idems[j].clone());
        let linear_unit = matches!(f.shape, Shape::Binomial { t: 1, .. })
            && (f.constant == 1 || (n % 2 == 0 && f.constant == minus_one));
        // x^t - c is self-reciprocal iff c = c^-1; a trinomial iff theta^{ul'} = 1
        let self_reciprocal = match f.shape {
            Shape::Binomial { .. } => field.mul(&f.constant, &f.constant) == 1,
            Shape::Trinomial { .. } => f.constant == 1,
        };
        if linear_unit && odd_char {
            let half = half.expect("odd characteristic");
            for (s, kind) in [(one.add(&y), CentralKind::YPlusSplit), (one.sub(&y), CentralKind::YMinusSplit)] {
                out.push(CentralIdempotent { element: s.scale(&half).mul(&e), kind, sources: vec![j] });
            }
        } else if self_reciprocal {
            out.push(CentralIdempotent { element: e, kind: CentralKind::SelfReciprocal, sources: vec![j] });
        } else {
            let mate_poly = formula_mate(params, f)?;
            if Some(&mate_poly) != f.poly.monic_reciprocal().ok().as_ref() {
                return Err(Error::Invariant(format!("closed-form mate of {:?} is not its reciprocal", f.poly)));
            }
            let mate = ef.fact.index_of(&mate_poly).ok_or(Error::Invariant("mate is not a factor".into()))?;
            used[mate] = true;
            out.push(CentralIdempotent {
                element: e.add(&DihedralElement::from_cyclic(idems[mate].clone())),
                kind: CentralKind::PairSum,
                sources: vec![j, mate],
            });
        }
    }
    Ok(out)
}

/// One summand type of the decomposition: `F_q`, or `M_2(F_{q^d})` by `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandCount {
    pub summand: String,
    pub claimed: String,
    pub actual: usize,
    pub matches: bool,
}

/// A claimed expression evaluated on this instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluated {
    pub expression: &'static str,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionStatus {
    Confirmed,
    Discrepancy,
    /// Characteristic 2 with `n` even cannot occur here; kept for completeness.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub case: CaseTag,
    pub status: DecompositionStatus,
    pub rows: Vec<SummandCount>,
    /// Rows that disagree or are not integers.
    pub discrepancies: Vec<SummandCount>,
    /// Closed-form expressions behind the `EVEN_II` claim, as printed.
    pub expressions: Vec<Evaluated>,
}

fn summand_name(d: usize) -> String {
    match d {
        0 => "F_q".to_string(),
        1 => "M2(F_q)".to_string(),
        d => format!("M2(F_q^{d})"),
    }
}

/// Claimed multiplicities: key 0 is the number of `F_q` summands, key `d`
/// the number of `M_2(F_{q^d})` blocks.
pub fn claimed_decomposition(params: &ExplicitParams) -> (BTreeMap<usize, Rational64>, Vec<Evaluated>) {
    let kappa = params.kappa as i64;
    let k = Rational64::from_integer(kappa);
    let mut c: BTreeMap<usize, Rational64> = BTreeMap::new();
    let mut add = |d: u64, v: Rational64| *c.entry(d as usize).or_default() += v;
    let mut expressions = Vec::new();
    match params.case {
        CaseTag::Odd | CaseTag::EvenI => {
            if params.case == CaseTag::Odd {
                add(0, 2.into());
                add(1, Rational64::new(kappa - 1, 2));
            } else {
                add(0, 4.into());
                add(1, k / 2 - 1);
            }
            for t in int::divisors(params.m).into_iter().filter(|&t| t != 1) {
                add(t, phi_over(t, kappa, 2));
            }
        }
        CaseTag::EvenII => {
            let nu = params.nu.expect("EVEN_II") as i32;
            let i = params.i.expect("EVEN_II") as i32;
            let p2 = |e: i32| {
                if e >= 0 {
                    Rational64::from_integer(1 << e)
                } else {
                    Rational64::new(1, 1 << -e)
                }
            };
            let m2_q = k + p2(nu - i) - 3;
            let m2_q2 = p2(nu - 2) * k - p2(nu - 1) - k / 4 + 1;
            add(0, 4.into());
            add(1, m2_q);
            add(2, m2_q2);
            for t in int::divisors(params.m_prime.expect("EVEN_II")) {
                if t % 2 == 1 && t != 1 {
                    add(t, phi_over(t, kappa, 2));
                    add(2 * t, phi_over(t, 1, 2) * (p2(nu - 1) - 1) * k);
                } else if t % 2 == 0 {
                    add(2 * t, phi_over(t, 1, 1) * p2(nu - 2) * k);
                }
            }
            let ev = |expression, v: Rational64| Evaluated { expression, value: ratio_text(&v) };
            expressions = vec![
                ev("kappa+2^(nu-i)-3", m2_q),
                ev("2^(nu-2)kappa-2^(nu-1)-k/4+1 (k read as kappa)", m2_q2),
                ev("kappa+2^(nu-1)-3 (intermediate, v2(q+1) <= v2(n/2))", k + p2(nu - 1) - 3),
                ev("kappa/4(2^nu-1)-(2^(nu-1)-1) (intermediate, v2(q+1) <= v2(n/2))", k / 4 * (p2(nu) - 1) - (p2(nu - 1) - 1)),
                ev("kappa+2^nu-3 (intermediate, v2(q+1) > v2(n/2))", k + p2(nu) - 3),
                ev("2^(nu-2)kappa-2^nu-k/4+1 (intermediate, v2(q+1) > v2(n/2))", p2(nu - 2) * k - p2(nu) - k / 4 + 1),
            ];
        }
    }
    c.retain(|_, v| *v != Rational64::default());
    (c, expressions)
}

/// Compares the claimed decomposition with a computed descriptor. The
/// characteristic-2 twisted block counts as two `F_q` summands.
pub fn explicit_decomposition_counts(params: &ExplicitParams, desc: &WedderburnDescriptor) -> DecompositionReport {
    let (claimed, expressions) = claimed_decomposition(params);
    let (fq, blocks) = desc.tally();
    let mut actual = blocks;
    actual.insert(0, fq);
    let mut keys: Vec<usize> = claimed.keys().chain(actual.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let rows: Vec<SummandCount> = keys
        .into_iter()
        .map(|d| {
            let c = claimed.get(&d).copied().unwrap_or_default();
            let a = actual.get(&d).copied().unwrap_or(0);
            SummandCount {
                summand: summand_name(d),
                claimed: ratio_text(&c),
                actual: a,
                matches: c == Rational64::from_integer(a as i64),
            }
        })
        .collect();
    let discrepancies: Vec<SummandCount> = rows.iter().filter(|r| !r.matches).cloned().collect();
    let status = if params.field.p() == 2 && params.case != CaseTag::Odd {
        DecompositionStatus::NotApplicable
    } else if discrepancies.is_empty() {
        DecompositionStatus::Confirmed
    } else {
        DecompositionStatus::Discrepancy
    };
    DecompositionReport { case: params.case, status, rows, discrepancies, expressions }
}

/// Serializable view of the parameters.
#[derive(Clone, Debug, Serialize)]
pub struct ParamsRecord {
    pub kappa: u64,
    pub nu: Option<u32>,
    pub m: u64,
    pub l: u64,
    pub m_prime: Option<u64>,
    pub l_prime: Option<u64>,
    pub case: CaseTag,
    pub i: Option<u32>,
    pub theta: u64,
    pub alpha: Vec<u64>,
    /// Modulus used in the `S_t` condition.
    pub st_modulus: Option<&'static str>,
}

impl From<&ExplicitParams> for ParamsRecord {
    fn from(p: &ExplicitParams) -> Self {
        ParamsRecord {
            kappa: p.kappa,
            nu: p.nu,
            m: p.m,
            l: p.l,
            m_prime: p.m_prime,
            l_prime: p.l_prime,
            case: p.case,
            i: p.i,
            theta: p.theta,
            alpha: p.alpha.clone(),
            st_modulus: p.m_prime.map(|_| "2^nu*kappa"),
        }
    }
}

/// Checks every closed form of one instance against the general modules.
#[derive(Clone, Debug, Serialize)]
pub struct ExplicitCheck {
    pub params: ParamsRecord,
    pub factorization_matches: bool,
    pub idempotents_match: bool,
    pub promotion_matches: bool,
    pub factor_counts: FactorCountReport,
    pub decomposition: DecompositionReport,
}

impl ExplicitCheck {
    /// Hard checks only; the decomposition claim is evaluated separately.
    pub fn passed(&self) -> bool {
        self.factorization_matches && self.idempotents_match && self.promotion_matches && self.factor_counts.all_match
    }
}

pub fn check_explicit(alg: &crate::dihedral::DihedralAlgebra) -> Result<ExplicitCheck> {
    let params = explicit_params(alg.field(), alg.n() as u64)?;
    let general = alg.factorization();
    let ef = explicit_factorization(&params)?;
    let factorization_matches = ef.fact.same_factors(general);
    let idems = explicit_idempotents(&params, &ef)?;
    let idempotents_match = factorization_matches
        && ef.fact.factors().iter().zip(&idems).all(|(f, e)| {
            cyclic::idempotent_crt_oracle(general, &f.poly).map(|o| o == *e).unwrap_or(false)
        });
    let promotion_matches = factorization_matches && {
        let mut a: Vec<Vec<u64>> = explicit_dihedral_promotion(&params, &ef, &idems)?
            .iter()
            .map(|c| c.element.to_vector())
            .collect();
        let mut b: Vec<Vec<u64>> = alg.central_idempotents().iter().map(|c| c.element.to_vector()).collect();
        a.sort();
        b.sort();
        a == b
    };
    Ok(ExplicitCheck {
        params: (&params).into(),
        factorization_matches,
        idempotents_match,
        promotion_matches,
        factor_counts: factor_count_check(&params, general),
        decomposition: explicit_decomposition_counts(&params, &alg.wedderburn()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::DihedralAlgebra;

    fn gf(q: u64) -> Gf {
        Gf::from_order(q).unwrap()
    }

    fn polys(q: u64, list: &[&[i64]]) -> Vec<Poly<Gf>> {
        list.iter().map(|c| Poly::from_ints(&gf(q), c)).collect()
    }

    fn sorted(mut v: Vec<Poly<Gf>>) -> Vec<Poly<Gf>> {
        v.sort_by(|a, b| a.cmp_canonical(b));
        v
    }

    #[test]
    fn params_examples() {
        let p = explicit_params(&gf(5), 8).unwrap();
        assert_eq!((p.kappa, p.m, p.l, p.case, p.theta), (4, 2, 1, CaseTag::EvenI, 2));
        let p = explicit_params(&gf(3), 8).unwrap();
        assert_eq!((p.kappa, p.nu, p.m_prime, p.l_prime, p.case, p.i), (2, Some(2), Some(1), Some(1), CaseTag::EvenII, Some(1)));
        assert_eq!(p.st_set(1).unwrap().members, vec![1, 2, 5]);
        let p = explicit_params(&gf(4), 9).unwrap();
        assert_eq!((p.kappa, p.m, p.l, p.case), (3, 3, 1, CaseTag::Odd));
        assert_eq!(explicit_params(&gf(3), 5).unwrap_err(), Error::RadicalCondition { q: 3, n: 5 });
    }

    #[test]
    fn theta_is_norm_of_alpha() {
        for q in [3, 4, 5, 7, 9, 13] {
            let p = explicit_params(&gf(q), 1).unwrap();
            assert_eq!(p.quad.embed(&p.theta), p.quad.pow(&p.alpha, q + 1));
        }
    }

    #[test]
    fn factorization_examples() {
        let ef = explicit_factorization(&explicit_params(&gf(5), 8).unwrap()).unwrap();
        let want = polys(5, &[&[-2, 1], &[-4, 1], &[-3, 1], &[-1, 1], &[-2, 0, 1], &[-3, 0, 1]]);
        assert_eq!(sorted(ef.fact.polys()), sorted(want));

        let p = explicit_params(&gf(3), 8).unwrap();
        let ef = explicit_factorization(&p).unwrap();
        let want = polys(3, &[&[-2, 1], &[-1, 1], &[1, 0, 1], &[2, 1, 1], &[2, 2, 1]]);
        assert_eq!(sorted(ef.fact.polys()), sorted(want));
        assert!(ef.fact.same_factors(&cyclic::factor_xn_minus_1(&gf(3), 8).unwrap()));

        let ef = explicit_factorization(&explicit_params(&gf(7), 1).unwrap()).unwrap();
        assert_eq!(ef.fact.polys(), polys(7, &[&[-1, 1]]));
    }

    #[test]
    fn count_examples() {
        for (q, n) in [(5, 8), (3, 8), (4, 9), (3, 16), (7, 24)] {
            let p = explicit_params(&gf(q), n).unwrap();
            let general = cyclic::factor_xn_minus_1(&gf(q), n as usize).unwrap();
            let r = factor_count_check(&p, &general);
            assert!(r.all_match, "({q}, {n}): {r:?}");
        }
        let p = explicit_params(&gf(3), 8).unwrap();
        let r = factor_count_check(&p, &cyclic::factor_xn_minus_1(&gf(3), 8).unwrap());
        let row = |d, s| r.rows.iter().find(|x| x.degree == d && x.shape == s).unwrap().actual;
        assert_eq!((row(1, "binomial"), row(2, "binomial"), row(2, "trinomial")), (2, 1, 2));
    }

    #[test]
    fn idempotent_examples() {
        let p = explicit_params(&gf(5), 4).unwrap();
        let ef = explicit_factorization(&p).unwrap();
        let general = cyclic::factor_xn_minus_1(&gf(5), 4).unwrap();
        let idems = explicit_idempotents(&p, &ef).unwrap();
        for (f, e) in ef.fact.factors().iter().zip(&idems) {
            assert_eq!(*e, cyclic::idempotent_crt_oracle(&general, &f.poly).unwrap());
        }
        let p = explicit_params(&gf(3), 8).unwrap();
        let ef = explicit_factorization(&p).unwrap();
        let general = cyclic::factor_xn_minus_1(&gf(3), 8).unwrap();
        let j = ef.fact.index_of(&Poly::from_ints(&gf(3), &[2, 1, 1])).unwrap();
        let e = explicit_idempotent(&p, &ef.factors[j]).unwrap();
        assert_eq!(e, cyclic::idempotent_crt_oracle(&general, &ef.factors[j].poly).unwrap());
    }

    #[test]
    fn promotion_and_decomposition() {
        for (q, n) in [(3, 4), (2, 7), (4, 9), (5, 8), (3, 8), (7, 12), (9, 16), (13, 24)] {
            let alg = DihedralAlgebra::new(&gf(q), n).unwrap_or_else(|e| panic!("({q}, {n}): {e}"));
            let check = match check_explicit(&alg) {
                Ok(c) => c,
                Err(Error::RadicalCondition { .. }) => continue,
                Err(e) => panic!("({q}, {n}): {e}"),
            };
            assert!(check.passed(), "({q}, {n}): {check:?}");
        }
    }

    #[test]
    fn decomposition_claims() {
        let alg = DihedralAlgebra::new(&gf(4), 9).unwrap();
        let r = check_explicit(&alg).unwrap().decomposition;
        assert_eq!(r.status, DecompositionStatus::Confirmed);
        let alg = DihedralAlgebra::new(&gf(5), 8).unwrap();
        assert_eq!(check_explicit(&alg).unwrap().decomposition.status, DecompositionStatus::Confirmed);
        let alg = DihedralAlgebra::new(&gf(3), 8).unwrap();
        let r = check_explicit(&alg).unwrap().decomposition;
        assert_eq!(r.status, DecompositionStatus::Discrepancy);
        let q2 = r.rows.iter().find(|x| x.summand == "M2(F_q^2)").unwrap();
        assert_eq!((q2.claimed.as_str(), q2.actual), ("1/2", 1));
        assert!(!r.expressions.is_empty());
    }
}
