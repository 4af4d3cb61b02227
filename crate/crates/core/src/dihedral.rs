//! The dihedral group algebra `F_q D_2n`, `D_2n = <x, y | x^n, y^2, xy = yx^-1>`.
//!
//! Elements are stored as `P(x) + Q(x) y` with `P, Q` in `R_n`.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclic::{self, check_coprime, FactorRole, Factorization, RnElement};
use crate::error::{Error, Result};
use crate::ff::{ExtField, Field, Gf};
use crate::linalg::{self, Span};

/// Default cap on `q^dim(eZ)` for [`primitivity_check`].
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Random pairs used by the multiplicativity check.
pub const RANDOM_PAIRS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonDelta {
    pub epsilon: usize,
    pub delta: usize,
}

pub fn epsilon_delta(field: &Gf, n: usize) -> Result<EpsilonDelta> {
    check_coprime(field.q(), n as u64)?;
    let epsilon = match (field.p() == 2, n % 2 == 0) {
        (true, _) => 0,
        (false, false) => 1,
        (false, true) => 2,
    };
    Ok(EpsilonDelta { epsilon, delta: epsilon.max(1) })
}

#[derive(Clone, PartialEq, Eq)]
pub struct DihedralElement {
    p: RnElement,
    q: RnElement,
}

impl DihedralElement {
    pub fn new(p: RnElement, q: RnElement) -> Result<Self> {
        if p.n() != q.n() || p.field() != q.field() {
            return Err(Error::ContextMismatch);
        }
        Ok(DihedralElement { p, q })
    }

    pub fn from_cyclic(p: RnElement) -> Self {
        let q = RnElement::zero(p.field(), p.n());
        DihedralElement { p, q }
    }

    pub fn zero(field: &Gf, n: usize) -> Self {
        Self::from_cyclic(RnElement::zero(field, n))
    }

    pub fn one(field: &Gf, n: usize) -> Self {
        Self::from_cyclic(RnElement::one(field, n))
    }

    pub fn x_pow(field: &Gf, n: usize, k: usize) -> Self {
        Self::from_cyclic(RnElement::monomial(field, n, 1, k))
    }

    pub fn x(field: &Gf, n: usize) -> Self {
        Self::x_pow(field, n, 1)
    }

    pub fn y(field: &Gf, n: usize) -> Self {
        DihedralElement { p: RnElement::zero(field, n), q: RnElement::one(field, n) }
    }

    pub fn random<R: Rng>(field: &Gf, n: usize, rng: &mut R) -> Self {
        let mut draw = || {
            let c = (0..n).map(|_| rng.gen_range(0..field.q())).collect();
            RnElement::from_coeffs(field, c)
        };
        let p = draw();
        DihedralElement { p, q: draw() }
    }

    pub fn p(&self) -> &RnElement {
        &self.p
    }

    pub fn q(&self) -> &RnElement {
        &self.q
    }

    pub fn field(&self) -> &Gf {
        self.p.field()
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        DihedralElement { p: self.p.add(&o.p), q: self.q.add(&o.q) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        DihedralElement { p: self.p.sub(&o.p), q: self.q.sub(&o.q) }
    }

    pub fn scale(&self, c: &u64) -> Self {
        DihedralElement { p: self.p.scale(c), q: self.q.scale(c) }
    }

    /// `(P1 + Q1 y)(P2 + Q2 y) = (P1 P2 + Q1 bar(Q2)) + (P1 Q2 + Q1 bar(P2)) y`.
    ///
    /// Panics on mismatched contexts; see [`dihedral_multiply`].
    pub fn mul(&self, o: &Self) -> Self {
        assert!(self.n() == o.n() && self.field() == o.field(), "dihedral context mismatch");
        let p = self.p.mul(&o.p).add(&self.q.mul(&o.q.bar()));
        let q = self.p.mul(&o.q).add(&self.q.mul(&o.p.bar()));
        DihedralElement { p, q }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.mul(o) == o.mul(self)
    }

    /// Commutes with both generators.
    pub fn is_central(&self) -> bool {
        let (f, n) = (self.field(), self.n());
        self.commutes_with(&Self::x(f, n)) && self.commutes_with(&Self::y(f, n))
    }

    /// Coordinates on `1, x, .., x^{n-1}, y, xy, .., x^{n-1} y`.
    pub fn to_vector(&self) -> Vec<u64> {
        let mut v = self.p.coeffs().to_vec();
        v.extend_from_slice(self.q.coeffs());
        v
    }

    pub fn from_vector(field: &Gf, n: usize, v: &[u64]) -> Self {
        DihedralElement {
            p: RnElement::from_coeffs(field, v[..n].to_vec()),
            q: RnElement::from_coeffs(field, v[n..].to_vec()),
        }
    }

    /// `(P) + (Q)y`
    pub fn render(&self) -> String {
        format!("({}) + ({})y", self.p.to_poly().render(), self.q.to_poly().render())
    }
}

impl std::fmt::Debug for DihedralElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn dihedral_multiply(u: &DihedralElement, v: &DihedralElement) -> Result<DihedralElement> {
    if u.n() != v.n() || u.field() != v.field() {
        return Err(Error::ContextMismatch);
    }
    Ok(u.mul(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CentralKind {
    YPlusSplit,
    YMinusSplit,
    SelfReciprocal,
    PairSum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralIdempotent {
    pub element: DihedralElement,
    pub kind: CentralKind,
    pub sources: Vec<usize>,
}

/// The `epsilon + r + s` central idempotents built from the cyclic ones:
/// `(1 +- y)/2 e_f` for the first `epsilon` factors, `e_f` for the remaining
/// self-reciprocal ones and `e_f + e_{f*}` for each pair.
pub fn central_from_cyclic(
    fact: &Factorization,
    idems: &[RnElement],
    eps: EpsilonDelta,
) -> Vec<CentralIdempotent> {
    let field = fact.field();
    let n = fact.n();
    let half = field.inv(&field.from_int(2));
    let mut out = Vec::with_capacity(eps.epsilon + fact.r() + fact.s());
    for (j, factor) in fact.factors().iter().enumerate() {
        let e = DihedralElement::from_cyclic(idems[j].clone());
        match factor.role {
            _ if j < eps.epsilon => {
                let half = half.expect("epsilon > 0 only in odd characteristic");
                let one = DihedralElement::one(field, n);
                let y = DihedralElement::y(field, n);
                for (sign, kind) in [(&one.add(&y), CentralKind::YPlusSplit), (&one.sub(&y), CentralKind::YMinusSplit)] {
                    out.push(CentralIdempotent {
                        element: sign.scale(&half).mul(&e),
                        kind,
                        sources: vec![j],
                    });
                }
            }
            FactorRole::PairMate => {}
            FactorRole::PairCanonical => {
                let mate = factor.mate.expect("pair member has a mate");
                out.push(CentralIdempotent {
                    element: e.add(&DihedralElement::from_cyclic(idems[mate].clone())),
                    kind: CentralKind::PairSum,
                    sources: vec![j, mate],
                });
            }
            _ => out.push(CentralIdempotent { element: e, kind: CentralKind::SelfReciprocal, sources: vec![j] }),
        }
    }
    out
}

/// 2x2 matrix over a field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix2<F: Field> {
    field: F,
    pub m: [[F::Elem; 2]; 2],
}

impl<F: Field> Matrix2<F> {
    pub fn new(field: &F, m: [[F::Elem; 2]; 2]) -> Self {
        Matrix2 { field: field.clone(), m }
    }

    pub fn identity(field: &F) -> Self {
        let (o, z) = (field.one(), field.zero());
        Self::new(field, [[o.clone(), z.clone()], [z, o]])
    }

    pub fn zero(field: &F) -> Self {
        let z = field.zero();
        Self::new(field, [[z.clone(), z.clone()], [z.clone(), z]])
    }

    pub fn entries(&self) -> impl Iterator<Item = &F::Elem> {
        self.m.iter().flatten()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|e| self.field.is_zero(e))
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let m = std::array::from_fn(|i| std::array::from_fn(|j| f.add(&self.m[i][j], &o.m[i][j])));
        Self::new(f, m)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| f.add(&f.mul(&self.m[i][0], &o.m[0][j]), &f.mul(&self.m[i][1], &o.m[1][j])))
        });
        Self::new(f, m)
    }

    pub fn det(&self) -> F::Elem {
        let f = &self.field;
        f.sub(&f.mul(&self.m[0][0], &self.m[1][1]), &f.mul(&self.m[0][1], &self.m[1][0]))
    }

    pub fn trace(&self) -> F::Elem {
        self.field.add(&self.m[0][0], &self.m[1][1])
    }

    pub fn inverse(&self) -> Option<Self> {
        let f = &self.field;
        let d = f.inv(&self.det())?;
        let [[a, b], [c, e]] = &self.m;
        Some(Self::new(f, [[f.mul(e, &d), f.neg(&f.mul(b, &d))], [f.neg(&f.mul(c, &d)), f.mul(a, &d)]]))
    }
}

/// Image of a group-algebra element under one component map.
#[derive(Clone, PartialEq, Debug)]
pub enum TauImage {
    /// `(P(c) + Q(c), P(c) - Q(c))` for `c = +-1` in `F_q`.
    Pair(u64, u64),
    /// `(P(a) Q(a); Q(a^-1) P(a^-1))` over the splitting field.
    Matrix(Matrix2<ExtField<Gf>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WedderburnKind {
    #[serde(rename = "SPLIT_PAIR_FQ")]
    SplitPairFq,
    #[serde(rename = "TWISTED_PAIR_FQ")]
    TwistedPairFq,
    #[serde(rename = "MATRIX2")]
    Matrix2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedderburnComponent {
    pub kind: WedderburnKind,
    pub residue_degree: usize,
    pub dim: usize,
    pub sources: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedderburnDescriptor {
    pub components: Vec<WedderburnComponent>,
    pub semisimple: bool,
    pub total_dimension: usize,
}

impl WedderburnDescriptor {
    /// Counts of `F_q` summands and of `M_2(F_{q^d})` blocks by `d`.
    pub fn tally(&self) -> (usize, std::collections::BTreeMap<usize, usize>) {
        let mut fq = 0;
        let mut blocks = std::collections::BTreeMap::new();
        for c in &self.components {
            match c.kind {
                WedderburnKind::Matrix2 => *blocks.entry(c.residue_degree).or_insert(0) += 1,
                _ => fq += 2,
            }
        }
        (fq, blocks)
    }
}

pub fn wedderburn_for(fact: &Factorization) -> WedderburnDescriptor {
    let char2 = fact.field().p() == 2;
    let mut components = Vec::new();
    for (j, factor) in fact.factors().iter().enumerate() {
        let deg = factor.poly.degree().unwrap_or(0);
        let (kind, residue_degree, sources) = match factor.role {
            FactorRole::Unity | FactorRole::NegUnity if char2 => (WedderburnKind::TwistedPairFq, 1, vec![j]),
            FactorRole::Unity | FactorRole::NegUnity => (WedderburnKind::SplitPairFq, 1, vec![j]),
            FactorRole::SelfReciprocal => (WedderburnKind::Matrix2, deg / 2, vec![j]),
            FactorRole::PairCanonical => (WedderburnKind::Matrix2, deg, vec![j, factor.mate.unwrap_or(j)]),
            FactorRole::PairMate => continue,
        };
        let dim = match kind {
            WedderburnKind::Matrix2 => 4 * residue_degree,
            _ => 2,
        };
        components.push(WedderburnComponent { kind, residue_degree, dim, sources });
    }
    let total_dimension = components.iter().map(|c| c.dim).sum();
    WedderburnDescriptor { components, semisimple: !char2, total_dimension }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitivity {
    Primitive,
    NotPrimitive,
    /// `q^dim(eZ)` exceeds the enumeration budget.
    Skipped,
}

/// Basis of the center, from the linear system `zx = xz`, `zy = yz`.
pub fn center_basis(field: &Gf, n: usize) -> Result<Vec<DihedralElement>> {
    check_coprime(field.q(), n as u64)?;
    let x = DihedralElement::x(field, n);
    let y = DihedralElement::y(field, n);
    let images: Vec<Vec<u64>> = (0..2 * n)
        .map(|i| {
            let mut v = vec![0; 2 * n];
            v[i] = 1;
            let z = DihedralElement::from_vector(field, n, &v);
            let mut row = z.mul(&x).sub(&x.mul(&z)).to_vector();
            row.extend(z.mul(&y).sub(&y.mul(&z)).to_vector());
            row
        })
        .collect();
    // images are columns of the constraint matrix
    let rows: Vec<Vec<u64>> = (0..4 * n).map(|r| images.iter().map(|c| c[r]).collect()).collect();
    Ok(linalg::nullspace(field, &rows, 2 * n)
        .into_iter()
        .map(|v| DihedralElement::from_vector(field, n, &v))
        .collect())
}

/// Exhaustively counts idempotents of `eZ`; primitive iff only `0` and `e`.
pub fn primitivity_check(e: &DihedralElement, center: &[DihedralElement], budget: u64) -> Primitivity {
    if e.is_zero() || !e.is_idempotent() || !e.is_central() {
        return Primitivity::NotPrimitive;
    }
    let field = e.field();
    let n = e.n();
    let vectors: Vec<Vec<u64>> = center.iter().map(|z| e.mul(z).to_vector()).collect();
    let span = Span::new(field, &vectors);
    let d = span.dim();
    match field.q().checked_pow(d as u32) {
        Some(total) if total <= budget => {}
        _ => return Primitivity::Skipped,
    }
    let basis: Vec<DihedralElement> =
        span.basis().iter().map(|v| DihedralElement::from_vector(field, n, v)).collect();
    let table: Vec<Vec<Vec<u64>>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| span.coordinates(&a.mul(b).to_vector()).expect("eZ is closed"))
                .collect()
        })
        .collect();
    if count_idempotents(field, &table) == 2 {
        Primitivity::Primitive
    } else {
        Primitivity::NotPrimitive
    }
}

/// Odometer over all coordinate vectors `c` of a commutative algebra with
/// structure constants `table`, tracking `c^2` and `c b_a` incrementally.
fn count_idempotents(field: &Gf, table: &[Vec<Vec<u64>>]) -> u64 {
    let d = table.len();
    let q = field.q();
    let axpy = |acc: &mut [u64], s: u64, v: &[u64]| {
        for (a, x) in acc.iter_mut().zip(v) {
            *a = field.add(a, &field.mul(&s, x));
        }
    };
    let mut c = vec![0u64; d];
    let mut sq = vec![0u64; d];
    let mut left = vec![vec![0u64; d]; d];
    let two = field.from_int(2);
    let mut count = 1; // c = 0
    loop {
        let mut k = 0;
        while k < d && c[k] == q - 1 {
            k += 1;
        }
        if k == d {
            return count;
        }
        for i in 0..=k {
            let new = if i == k { c[i] + 1 } else { 0 };
            let delta = field.sub(&new, &c[i]);
            axpy(&mut sq, field.mul(&two, &delta), &left[i].clone());
            axpy(&mut sq, field.mul(&delta, &delta), &table[i][i]);
            for (a, row) in left.iter_mut().enumerate() {
                axpy(row, delta, &table[i][a]);
            }
            c[i] = new;
        }
        if sq == c {
            count += 1;
        }
    }
}

/// Outcome of [`DihedralAlgebra::verify_isomorphism`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub rank: usize,
    pub injective: bool,
    pub random_pairs: usize,
    pub multiplicative: bool,
    pub additive: bool,
    pub dimension_sum: usize,
    pub dimension_ok: bool,
    pub idempotent_images: bool,
    pub sigma_images: bool,
    pub subfield_entries: bool,
    pub dickson_roots: bool,
    /// `((1 + y) e_{x-1})^2 = 0` with the element nonzero; characteristic 2 only.
    pub nilpotent_witness: Option<bool>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.injective
            && self.multiplicative
            && self.additive
            && self.dimension_ok
            && self.idempotent_images
            && self.sigma_images
            && self.subfield_entries
            && self.dickson_roots
            && self.nilpotent_witness != Some(false)
    }
}

/// `F_q D_2n` with its factorization, idempotents and component maps.
#[derive(Clone, Debug)]
pub struct DihedralAlgebra {
    fact: Factorization,
    cyclic: Vec<RnElement>,
    eps: EpsilonDelta,
    central: Vec<CentralIdempotent>,
    /// `zeta^k` for `0 <= k < n`.
    zeta_pows: Vec<Vec<u64>>,
}

impl DihedralAlgebra {
    pub fn new(field: &Gf, n: usize) -> Result<Self> {
        let eps = epsilon_delta(field, n)?;
        let (fact, cyclic) = cyclic::primitive_idempotents(field, n)?;
        let central = central_from_cyclic(&fact, &cyclic, eps);
        if central.len() != eps.epsilon + fact.r() + fact.s() {
            return Err(Error::Invariant("wrong number of central idempotents".into()));
        }
        let s = fact.splitting().expect("structural factorization carries its splitting field");
        let ext = &s.field;
        let mut zeta_pows = Vec::with_capacity(n);
        let mut cur = ext.one();
        for _ in 0..n {
            zeta_pows.push(cur.clone());
            cur = ext.mul(&cur, &s.zeta);
        }
        Ok(DihedralAlgebra { fact, cyclic, eps, central, zeta_pows })
    }

    pub fn field(&self) -> &Gf {
        self.fact.field()
    }

    pub fn n(&self) -> usize {
        self.fact.n()
    }

    pub fn factorization(&self) -> &Factorization {
        &self.fact
    }

    pub fn cyclic_idempotents(&self) -> &[RnElement] {
        &self.cyclic
    }

    pub fn epsilon_delta(&self) -> EpsilonDelta {
        self.eps
    }

    pub fn central_idempotents(&self) -> &[CentralIdempotent] {
        &self.central
    }

    pub fn ext(&self) -> &ExtField<Gf> {
        &self.fact.splitting().expect("splitting field").field
    }

    pub fn wedderburn(&self) -> WedderburnDescriptor {
        wedderburn_for(&self.fact)
    }

    /// Factor indices carrying a component map: all but the pair mates.
    pub fn components(&self) -> Vec<usize> {
        self.fact.component_heads()
    }

    fn root_exponent(&self, j: usize) -> u64 {
        self.fact.factors()[j].coset.as_ref().expect("structural factor has a coset")[0]
    }

    /// `alpha_j^k`, with `alpha_j = zeta^{min C_j}`.
    fn alpha_pow(&self, j: usize, k: i64) -> Vec<u64> {
        let n = self.n() as i64;
        let e = (self.root_exponent(j) as i64 * k).rem_euclid(n);
        self.zeta_pows[e as usize].clone()
    }

    fn eval_at(&self, h: &RnElement, j: usize, sign: i64) -> Vec<u64> {
        let ext = self.ext();
        let n = self.n() as i64;
        let c = self.root_exponent(j) as i64;
        let mut acc = ext.zero();
        for (k, coeff) in h.coeffs().iter().enumerate() {
            if *coeff != 0 {
                let e = (sign * c * k as i64).rem_euclid(n) as usize;
                acc = ext.add(&acc, &ext.scale(coeff, &self.zeta_pows[e]));
            }
        }
        acc
    }

    fn check_component(&self, j: usize) -> Result<()> {
        match self.fact.factors().get(j) {
            Some(f) if f.role != FactorRole::PairMate => Ok(()),
            _ => Err(Error::IndexOutOfRange(j)),
        }
    }

    /// The component map at factor index `j` (not a pair mate).
    pub fn tau(&self, j: usize, u: &DihedralElement) -> Result<TauImage> {
        self.check_component(j)?;
        let field = self.field();
        if j < self.eps.epsilon {
            let c = match self.fact.factors()[j].role {
                FactorRole::Unity => field.one(),
                _ => field.from_int(-1),
            };
            let (p, q) = (u.p().eval(&c), u.q().eval(&c));
            return Ok(TauImage::Pair(field.add(&p, &q), field.sub(&p, &q)));
        }
        let m = [
            [self.eval_at(u.p(), j, 1), self.eval_at(u.q(), j, 1)],
            [self.eval_at(u.q(), j, -1), self.eval_at(u.p(), j, -1)],
        ];
        Ok(TauImage::Matrix(Matrix2::new(self.ext(), m)))
    }

    /// `Z_j^-1 M Z_j` with `Z_j = (1 -a; 1 -a^-1)`, for a self-reciprocal
    /// factor of degree at least 2.
    pub fn sigma_conjugate(&self, j: usize, m: &Matrix2<ExtField<Gf>>) -> Result<Matrix2<ExtField<Gf>>> {
        match self.fact.factors().get(j) {
            Some(f) if f.role == FactorRole::SelfReciprocal => {}
            Some(_) => return Err(Error::NotSelfReciprocal),
            None => return Err(Error::IndexOutOfRange(j)),
        }
        let ext = self.ext();
        let (a, a_inv) = (self.alpha_pow(j, 1), self.alpha_pow(j, -1));
        let z = Matrix2::new(ext, [[ext.one(), ext.neg(&a)], [ext.one(), ext.neg(&a_inv)]]);
        let z_inv = z.inverse().ok_or_else(|| Error::Invariant("Z_j is singular".into()))?;
        Ok(z_inv.mul(m).mul(&z))
    }

    pub fn center_basis(&self) -> Vec<DihedralElement> {
        center_basis(self.field(), self.n()).expect("context already validated")
    }

    /// Expected image of central idempotent `i` at component `j`.
    fn expected_image(&self, i: &CentralIdempotent, j: usize) -> TauImage {
        let field = self.field();
        let hit = i.sources[0] == j;
        match self.tau(j, &DihedralElement::zero(field, self.n())).expect("valid component") {
            TauImage::Pair(..) => match (hit, i.kind) {
                (true, CentralKind::YPlusSplit) => TauImage::Pair(1, 0),
                (true, _) => TauImage::Pair(0, 1),
                (false, _) => TauImage::Pair(0, 0),
            },
            TauImage::Matrix(z) if !hit => TauImage::Matrix(z),
            TauImage::Matrix(_) => TauImage::Matrix(Matrix2::identity(self.ext())),
        }
    }

    fn flatten(&self, u: &DihedralElement) -> Vec<u64> {
        let mut v = Vec::new();
        for j in self.components() {
            match self.tau(j, u).expect("valid component") {
                TauImage::Pair(a, b) => v.extend([a, b]),
                TauImage::Matrix(m) => m.entries().for_each(|e| v.extend_from_slice(e)),
            }
        }
        v
    }

    pub fn verify_isomorphism(&self) -> IsomorphismReport {
        let field = self.field();
        let n = self.n();
        let ext = self.ext();
        let mut r = IsomorphismReport::default();

        let rows: Vec<Vec<u64>> = (0..2 * n)
            .map(|i| {
                let mut v = vec![0; 2 * n];
                v[i] = 1;
                self.flatten(&DihedralElement::from_vector(field, n, &v))
            })
            .collect();
        r.rank = linalg::rank(field, &rows);
        r.injective = r.rank == 2 * n;

        let mut rng = ChaCha8Rng::seed_from_u64(field.q() << 32 | n as u64);
        r.multiplicative = true;
        r.additive = true;
        for _ in 0..RANDOM_PAIRS {
            let u = DihedralElement::random(field, n, &mut rng);
            let v = DihedralElement::random(field, n, &mut rng);
            let (uv, sum) = (u.mul(&v), u.add(&v));
            for j in self.components() {
                let (tu, tv) = (self.tau(j, &u).unwrap(), self.tau(j, &v).unwrap());
                let (tuv, tsum) = (self.tau(j, &uv).unwrap(), self.tau(j, &sum).unwrap());
                match (tu, tv) {
                    (TauImage::Pair(a, b), TauImage::Pair(c, d)) => {
                        r.multiplicative &= tuv == TauImage::Pair(field.mul(&a, &c), field.mul(&b, &d));
                        r.additive &= tsum == TauImage::Pair(field.add(&a, &c), field.add(&b, &d));
                    }
                    (TauImage::Matrix(a), TauImage::Matrix(b)) => {
                        r.multiplicative &= tuv == TauImage::Matrix(a.mul(&b));
                        r.additive &= tsum == TauImage::Matrix(a.add(&b));
                    }
                    _ => r.multiplicative = false,
                }
            }
            r.random_pairs += 1;
        }

        let desc = self.wedderburn();
        r.dimension_sum = desc.total_dimension;
        r.dimension_ok = r.dimension_sum == 2 * n;

        r.idempotent_images = self.central.iter().all(|e| {
            self.components().into_iter().all(|j| self.tau(j, &e.element).ok() == Some(self.expected_image(e, j)))
        });

        r.sigma_images = true;
        r.subfield_entries = true;
        r.dickson_roots = true;
        let x = DihedralElement::x(field, n);
        let y = DihedralElement::y(field, n);
        let samples: Vec<DihedralElement> =
            (0..4).map(|_| DihedralElement::random(field, n, &mut rng)).chain([x.clone(), y.clone()]).collect();
        for (j, factor) in self.fact.factors().iter().enumerate() {
            if factor.role != FactorRole::SelfReciprocal {
                continue;
            }
            let half_deg = factor.poly.degree().unwrap_or(0) / 2;
            let (a, a_inv) = (self.alpha_pow(j, 1), self.alpha_pow(j, -1));
            let trace = ext.add(&a, &a_inv);
            let sigma = |u: &DihedralElement| match self.tau(j, u) {
                Ok(TauImage::Matrix(m)) => self.sigma_conjugate(j, &m).ok(),
                _ => None,
            };
            let want_x = Matrix2::new(ext, [[ext.zero(), ext.one()], [ext.neg(&ext.one()), trace.clone()]]);
            let want_y = Matrix2::new(ext, [[ext.one(), ext.neg(&trace)], [ext.zero(), ext.neg(&ext.one())]]);
            r.sigma_images &= sigma(&x) == Some(want_x) && sigma(&y) == Some(want_y);

            let sub_order = BigUint::from(field.q()).pow(half_deg as u32);
            for u in &samples {
                if let Some(m) = sigma(u) {
                    r.subfield_entries &= m.entries().all(|e| ext.frobenius(e, &sub_order) == *e);
                } else {
                    r.subfield_entries = false;
                }
            }

            r.dickson_roots &= match factor.poly.compress_self_reciprocal() {
                Ok(h) => {
                    h.degree() == Some(half_deg)
                        && h.is_irreducible().unwrap_or(false)
                        && ext.is_zero(&ext.eval_base_poly(&h, &trace))
                }
                Err(_) => false,
            };
        }

        if field.p() == 2 {
            let e1 = DihedralElement::from_cyclic(self.cyclic[0].clone());
            let w = DihedralElement::one(field, n).add(&y).mul(&e1);
            r.nilpotent_witness = Some(!w.is_zero() && w.mul(&w).is_zero());
        }
        r
    }

    /// Checks the central idempotent suite: count, idempotency, centrality,
    /// orthogonality and completeness.
    pub fn certify_central(&self) -> Result<()> {
        let field = self.field();
        let n = self.n();
        for e in &self.central {
            if !e.element.is_idempotent() {
                return Err(Error::Invariant(format!("{} is not idempotent", e.element.render())));
            }
            if !e.element.is_central() {
                return Err(Error::Invariant(format!("{} is not central", e.element.render())));
            }
        }
        for (i, a) in self.central.iter().enumerate() {
            for b in &self.central[i + 1..] {
                if !a.element.mul(&b.element).is_zero() {
                    return Err(Error::Invariant("central idempotents are not orthogonal".into()));
                }
            }
        }
        let total = self.central.iter().fold(DihedralElement::zero(field, n), |acc, e| acc.add(&e.element));
        if total != DihedralElement::one(field, n) {
            return Err(Error::Invariant("central idempotents do not sum to 1".into()));
        }
        Ok(())
    }

    pub fn primitivity(&self, budget: u64) -> Vec<Primitivity> {
        let center = self.center_basis();
        self.central.iter().map(|e| primitivity_check(&e.element, &center, budget)).collect()
    }
}

/// Central idempotents of `F_q D_2n`.
pub fn central_idempotents(field: &Gf, n: usize) -> Result<Vec<CentralIdempotent>> {
    Ok(DihedralAlgebra::new(field, n)?.central)
}

pub fn wedderburn_decomposition(field: &Gf, n: usize) -> Result<WedderburnDescriptor> {
    epsilon_delta(field, n)?;
    Ok(wedderburn_for(&cyclic::factor_xn_minus_1(field, n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Gf {
        Gf::from_order(q).unwrap()
    }

    #[test]
    fn epsilon_delta_cases() {
        assert_eq!(epsilon_delta(&gf(4), 7).unwrap(), EpsilonDelta { epsilon: 0, delta: 1 });
        assert_eq!(epsilon_delta(&gf(3), 5).unwrap(), EpsilonDelta { epsilon: 1, delta: 1 });
        assert_eq!(epsilon_delta(&gf(5), 6).unwrap(), EpsilonDelta { epsilon: 2, delta: 2 });
        assert!(epsilon_delta(&gf(3), 6).is_err());
    }

    #[test]
    fn presentation() {
        let f = gf(5);
        let n = 6;
        let (x, y) = (DihedralElement::x(&f, n), DihedralElement::y(&f, n));
        assert_eq!(y.mul(&x), DihedralElement::x_pow(&f, n, n - 1).mul(&y));
        assert_eq!(y.mul(&y), DihedralElement::one(&f, n));
        assert_eq!(
            DihedralElement::x_pow(&f, n, 4).mul(&DihedralElement::x_pow(&f, n, 5)),
            DihedralElement::x_pow(&f, n, 3)
        );
        assert_eq!(dihedral_multiply(&x, &DihedralElement::x(&f, 4)), Err(Error::ContextMismatch));
    }

    #[test]
    fn central_idempotent_examples() {
        let alg = DihedralAlgebra::new(&gf(3), 4).unwrap();
        assert_eq!(alg.central_idempotents().len(), 5);
        alg.certify_central().unwrap();

        let alg = DihedralAlgebra::new(&gf(2), 7).unwrap();
        let kinds: Vec<_> = alg.central_idempotents().iter().map(|e| e.kind).collect();
        assert_eq!(kinds, vec![CentralKind::SelfReciprocal, CentralKind::PairSum]);
        alg.certify_central().unwrap();

        let f = gf(5);
        let c = central_idempotents(&f, 1).unwrap();
        let half = f.inv(&2).unwrap();
        assert_eq!(c[0].element.to_vector(), vec![half, half]);
        assert_eq!(c[1].element.to_vector(), vec![half, f.neg(&half)]);
        let c = central_idempotents(&gf(4), 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].element, DihedralElement::one(&gf(4), 1));
    }

    #[test]
    fn tau_examples() {
        let f = gf(3);
        let alg = DihedralAlgebra::new(&f, 4).unwrap();
        let ext = alg.ext().clone();
        let one = DihedralElement::one(&f, 4);
        assert_eq!(alg.tau(0, &one).unwrap(), TauImage::Pair(1, 1));
        assert_eq!(alg.tau(2, &one).unwrap(), TauImage::Matrix(Matrix2::identity(&ext)));
        let anti = Matrix2::new(&ext, [[ext.zero(), ext.one()], [ext.one(), ext.zero()]]);
        assert_eq!(alg.tau(2, &DihedralElement::y(&f, 4)).unwrap(), TauImage::Matrix(anti));
        let e = &alg.central_idempotents()[4];
        assert_eq!(e.sources, vec![2]);
        assert_eq!(alg.tau(2, &e.element).unwrap(), TauImage::Matrix(Matrix2::identity(&ext)));
        assert_eq!(alg.tau(0, &e.element).unwrap(), TauImage::Pair(0, 0));
        assert_eq!(alg.tau(7, &one), Err(Error::IndexOutOfRange(7)));
    }

    #[test]
    fn sigma_examples() {
        let f = gf(3);
        let alg = DihedralAlgebra::new(&f, 4).unwrap();
        let ext = alg.ext().clone();
        let TauImage::Matrix(tx) = alg.tau(2, &DihedralElement::x(&f, 4)).unwrap() else { panic!() };
        let minus_one = ext.neg(&ext.one());
        let want = Matrix2::new(&ext, [[ext.zero(), ext.one()], [minus_one, ext.zero()]]);
        assert_eq!(alg.sigma_conjugate(2, &tx).unwrap(), want);
        let id = Matrix2::identity(&ext);
        assert_eq!(alg.sigma_conjugate(2, &id).unwrap(), id);
        assert!(alg.sigma_conjugate(0, &id).is_err());
    }

    #[test]
    fn wedderburn_examples() {
        let d = wedderburn_decomposition(&gf(3), 4).unwrap();
        let kinds: Vec<_> = d.components.iter().map(|c| (c.kind, c.residue_degree, c.dim)).collect();
        assert_eq!(
            kinds,
            vec![
                (WedderburnKind::SplitPairFq, 1, 2),
                (WedderburnKind::SplitPairFq, 1, 2),
                (WedderburnKind::Matrix2, 1, 4)
            ]
        );
        assert!(d.semisimple);

        let d = wedderburn_decomposition(&gf(2), 7).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[0].kind, WedderburnKind::TwistedPairFq);
        assert_eq!((d.components[1].residue_degree, d.components[1].sources.clone()), (3, vec![1, 2]));
        assert_eq!(d.total_dimension, 14);
        assert!(!d.semisimple);

        let d = wedderburn_decomposition(&gf(4), 9).unwrap();
        let dims: Vec<_> = d.components.iter().map(|c| (c.kind, c.residue_degree)).collect();
        assert_eq!(
            dims,
            vec![(WedderburnKind::TwistedPairFq, 1), (WedderburnKind::Matrix2, 1), (WedderburnKind::Matrix2, 3)]
        );
        assert_eq!(d.total_dimension, 18);
    }

    #[test]
    fn center_and_primitivity() {
        let f = gf(5);
        let z = center_basis(&f, 1).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(primitivity_check(&DihedralElement::one(&f, 1), &z, DEFAULT_BUDGET), Primitivity::NotPrimitive);

        let alg = DihedralAlgebra::new(&gf(3), 4).unwrap();
        let center = alg.center_basis();
        for b in &center {
            assert!(b.is_central());
        }
        for e in alg.central_idempotents() {
            assert!(Span::new(&gf(3), &center.iter().map(|b| b.to_vector()).collect::<Vec<_>>()).contains(&e.element.to_vector()));
        }
        assert!(alg.primitivity(DEFAULT_BUDGET).iter().all(|p| *p == Primitivity::Primitive));
        let c = alg.central_idempotents();
        let sum = c[0].element.add(&c[4].element);
        assert_eq!(primitivity_check(&sum, &center, DEFAULT_BUDGET), Primitivity::NotPrimitive);
        assert_eq!(primitivity_check(&c[0].element, &center, 1), Primitivity::Skipped);
    }

    #[test]
    fn isomorphism_reports() {
        for (q, n) in [(3, 4), (5, 8), (2, 7), (4, 9), (9, 10), (7, 5)] {
            let alg = DihedralAlgebra::new(&gf(q), n).unwrap();
            let r = alg.verify_isomorphism();
            assert!(r.passed(), "({q}, {n}): {r:?}");
            assert_eq!(r.rank, 2 * n);
        }
    }
}
