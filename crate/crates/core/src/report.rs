//! Serializable reports and their text renderings.
//!
//! Field elements are integer encodings; polynomials are coefficient arrays,
//! constant term first.

use std::fmt::Write;

use serde::Serialize;

use crate::cyclic::{self, FactorRole, Factorization, ZetaConvention};
use crate::dihedral::{CentralKind, DihedralAlgebra, IsomorphismReport, Primitivity, WedderburnComponent, WedderburnKind};
use crate::error::{Error, Result};
use crate::explicit::{self, DecompositionReport, FactorCountReport, ParamsRecord};
use crate::ff::Gf;
use crate::verify::{self, InstanceReport, SweepReport, SCHEMA_VERSION};

#[derive(Clone, Debug, Serialize)]
pub struct FieldRecord {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    /// Defining polynomial over `F_p`; absent for prime fields.
    pub modulus: Option<Vec<u64>>,
}

impl From<&Gf> for FieldRecord {
    fn from(f: &Gf) -> Self {
        FieldRecord { q: f.q(), p: f.p(), k: f.k() as u32, modulus: f.modulus().map(|m| m.coeffs().to_vec()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingRecord {
    pub degree: usize,
    /// Coordinates over `F_q` in the splitting field's power basis.
    pub zeta: Vec<u64>,
    pub convention: ZetaConvention,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorRecord {
    pub index: usize,
    pub coeffs: Vec<u64>,
    pub text: String,
    pub degree: usize,
    pub role: FactorRole,
    pub mate: Option<usize>,
    pub coset: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub schema_version: u32,
    pub field: FieldRecord,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub splitting: Option<SplittingRecord>,
    pub factors: Vec<FactorRecord>,
}

fn factor_records(fact: &Factorization) -> Vec<FactorRecord> {
    fact.factors()
        .iter()
        .enumerate()
        .map(|(index, f)| FactorRecord {
            index,
            coeffs: f.poly.coeffs().to_vec(),
            text: f.poly.render(),
            degree: f.poly.degree().unwrap_or(0),
            role: f.role,
            mate: f.mate,
            coset: f.coset.clone(),
        })
        .collect()
}

fn role_name(r: FactorRole) -> &'static str {
    match r {
        FactorRole::Unity => "UNITY",
        FactorRole::NegUnity => "NEG_UNITY",
        FactorRole::SelfReciprocal => "SELF_RECIPROCAL",
        FactorRole::PairCanonical => "PAIR_CANONICAL",
        FactorRole::PairMate => "PAIR_MATE",
    }
}

pub fn factor_report(field: &Gf, n: usize) -> Result<FactorReport> {
    let fact = cyclic::factor_xn_minus_1(field, n)?;
    Ok(FactorReport {
        schema_version: SCHEMA_VERSION,
        field: field.into(),
        n,
        r: fact.r(),
        s: fact.s(),
        splitting: fact.splitting().map(|s| SplittingRecord {
            degree: s.degree(),
            zeta: s.zeta.clone(),
            convention: s.convention,
        }),
        factors: factor_records(&fact),
    })
}

impl FactorReport {
    pub fn text(&self) -> String {
        let mut out = format!("x^{}-1 over F_{}: r={} s={}\n", self.n, self.field.q, self.r, self.s);
        for f in &self.factors {
            let _ = write!(out, "f{} = {}  {}", f.index, f.text, role_name(f.role));
            if let Some(m) = f.mate {
                let _ = write!(out, " mate=f{m}");
            }
            if let Some(c) = &f.coset {
                let _ = write!(out, " coset={c:?}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdempotentRecord {
    pub factor: usize,
    pub factor_text: String,
    pub coeffs: Vec<u64>,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdempotentsReport {
    pub schema_version: u32,
    pub field: FieldRecord,
    pub n: usize,
    /// The derivative formula agrees with the CRT oracle; the set is orthogonal and complete.
    pub certified: bool,
    pub idempotents: Vec<IdempotentRecord>,
}

pub fn idempotents_report(field: &Gf, n: usize) -> Result<IdempotentsReport> {
    let (fact, idems) = cyclic::primitive_idempotents(field, n)?;
    let idempotents = fact
        .factors()
        .iter()
        .zip(&idems)
        .enumerate()
        .map(|(factor, (f, e))| IdempotentRecord {
            factor,
            factor_text: f.poly.render(),
            coeffs: verify::rn_coeffs(e),
            text: e.to_poly().render(),
        })
        .collect();
    Ok(IdempotentsReport { schema_version: SCHEMA_VERSION, field: field.into(), n, certified: true, idempotents })
}

impl IdempotentsReport {
    pub fn text(&self) -> String {
        let mut out = format!("primitive idempotents of F_{}[x]/(x^{}-1): {}\n", self.field.q, self.n, self.idempotents.len());
        for e in &self.idempotents {
            let _ = writeln!(out, "e[{}] = {}", e.factor_text, e.text);
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralRecord {
    #[serde(rename = "P")]
    pub p: Vec<u64>,
    #[serde(rename = "Q")]
    pub q: Vec<u64>,
    pub text: String,
    pub kind: CentralKind,
    pub sources: Vec<usize>,
    pub primitivity: Primitivity,
}

#[derive(Clone, Debug, Serialize)]
pub struct DihedralReport {
    pub schema_version: u32,
    pub q: u64,
    pub n: usize,
    pub epsilon: usize,
    pub delta: usize,
    pub idempotents: Vec<CentralRecord>,
    pub components: Vec<WedderburnComponent>,
    pub semisimple: bool,
    pub total_dimension: usize,
    pub checks: IsomorphismReport,
}

fn kind_name(k: CentralKind) -> &'static str {
    match k {
        CentralKind::YPlusSplit => "Y_PLUS_SPLIT",
        CentralKind::YMinusSplit => "Y_MINUS_SPLIT",
        CentralKind::SelfReciprocal => "SELF_RECIPROCAL",
        CentralKind::PairSum => "PAIR_SUM",
    }
}

fn component_text(c: &WedderburnComponent) -> String {
    match c.kind {
        WedderburnKind::SplitPairFq => "F_q + F_q".to_string(),
        WedderburnKind::TwistedPairFq => "F_q + F_q (twisted)".to_string(),
        WedderburnKind::Matrix2 if c.residue_degree == 1 => "M2(F_q)".to_string(),
        WedderburnKind::Matrix2 => format!("M2(F_q^{})", c.residue_degree),
    }
}

pub fn dihedral_report(field: &Gf, n: usize, budget: u64) -> Result<DihedralReport> {
    let alg = DihedralAlgebra::new(field, n)?;
    alg.certify_central()?;
    let prim = alg.primitivity(budget);
    let eps = alg.epsilon_delta();
    let desc = alg.wedderburn();
    let idempotents = alg
        .central_idempotents()
        .iter()
        .zip(prim)
        .map(|(c, primitivity)| CentralRecord {
            p: c.element.p().coeffs().to_vec(),
            q: c.element.q().coeffs().to_vec(),
            text: c.element.render(),
            kind: c.kind,
            sources: c.sources.clone(),
            primitivity,
        })
        .collect();
    Ok(DihedralReport {
        schema_version: SCHEMA_VERSION,
        q: field.q(),
        n,
        epsilon: eps.epsilon,
        delta: eps.delta,
        idempotents,
        components: desc.components,
        semisimple: desc.semisimple,
        total_dimension: desc.total_dimension,
        checks: alg.verify_isomorphism(),
    })
}

impl DihedralReport {
    pub fn passed(&self) -> bool {
        self.checks.passed() && self.idempotents.iter().all(|e| e.primitivity != Primitivity::NotPrimitive)
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "F_{} D_{}: epsilon={} delta={} central idempotents={}\n",
            self.q,
            2 * self.n,
            self.epsilon,
            self.delta,
            self.idempotents.len()
        );
        for e in &self.idempotents {
            let prim = match e.primitivity {
                Primitivity::Primitive => "primitive",
                Primitivity::NotPrimitive => "NOT primitive",
                Primitivity::Skipped => "primitivity skipped",
            };
            let _ = writeln!(out, "{}  {} from {:?}  {}", e.text, kind_name(e.kind), e.sources, prim);
        }
        out.push_str(&components_text(&self.components, self.semisimple, self.total_dimension));
        let _ = writeln!(out, "checks: {}", if self.checks.passed() { "pass" } else { "FAIL" });
        out
    }
}

fn components_text(components: &[WedderburnComponent], semisimple: bool, total: usize) -> String {
    let mut out = String::new();
    for c in components {
        let _ = writeln!(out, "{}  dim {}  from {:?}", component_text(c), c.dim, c.sources);
    }
    let _ = writeln!(out, "total dimension {total}, {}", if semisimple { "semisimple" } else { "not semisimple" });
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplicitRecord {
    pub params: ParamsRecord,
    pub factor_counts: FactorCountReport,
    pub decomposition: DecompositionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeReport {
    pub schema_version: u32,
    pub q: u64,
    pub n: usize,
    pub components: Vec<WedderburnComponent>,
    pub semisimple: bool,
    pub total_dimension: usize,
    /// Closed-form claims, when every prime factor of `n` divides `q - 1`.
    pub explicit: Option<ExplicitRecord>,
}

pub fn decompose_report(field: &Gf, n: usize) -> Result<DecomposeReport> {
    let fact = cyclic::factor_xn_minus_1(field, n)?;
    let desc = crate::dihedral::wedderburn_for(&fact);
    let explicit = match explicit::explicit_params(field, n as u64) {
        Ok(params) => Some(ExplicitRecord {
            factor_counts: explicit::factor_count_check(&params, &fact),
            decomposition: explicit::explicit_decomposition_counts(&params, &desc),
            params: (&params).into(),
        }),
        Err(Error::RadicalCondition { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(DecomposeReport {
        schema_version: SCHEMA_VERSION,
        q: field.q(),
        n,
        components: desc.components,
        semisimple: desc.semisimple,
        total_dimension: desc.total_dimension,
        explicit,
    })
}

impl DecomposeReport {
    pub fn text(&self) -> String {
        let mut out = format!("Wedderburn decomposition of F_{} D_{}\n", self.q, 2 * self.n);
        out.push_str(&components_text(&self.components, self.semisimple, self.total_dimension));
        if let Some(e) = &self.explicit {
            let d = &e.decomposition;
            let _ = writeln!(out, "closed form, case {:?}: {:?}", d.case, d.status);
            for r in &d.rows {
                let mark = if r.matches { "" } else { "  <-- discrepancy" };
                let _ = writeln!(out, "  {}: claimed {} actual {}{}", r.summand, r.claimed, r.actual, mark);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub passed: bool,
    pub instance: InstanceReport,
}

pub fn verify_report(field: &Gf, n: usize, budget: u64) -> Result<VerifyReport> {
    let instance = verify::verify_instance(field, n, budget)?;
    Ok(VerifyReport { schema_version: SCHEMA_VERSION, passed: instance.passed(), instance })
}

impl VerifyReport {
    pub fn text(&self) -> String {
        instance_line(&self.instance) + "\n"
    }
}

fn instance_line(r: &InstanceReport) -> String {
    let status = if r.passed() { "pass".to_string() } else { format!("FAIL {:?}", r.hard_failures) };
    let prim = &r.central.tally;
    let mut line = format!(
        "q={} n={} r={} s={} central={} primitive={}/{} skipped={} rank={} {}",
        r.q,
        r.n,
        r.r,
        r.s,
        r.central.count,
        prim.primitive,
        r.central.count,
        prim.skipped,
        r.isomorphism.rank,
        status
    );
    if let Some(e) = &r.explicit {
        let _ = write!(line, " closed-form case {:?} {:?}", e.decomposition.case, e.decomposition.status);
    }
    line
}

pub fn sweep_text(s: &SweepReport) -> String {
    let mut out = String::new();
    for r in &s.instances {
        out.push_str(&instance_line(r));
        out.push('\n');
    }
    for e in &s.errors {
        let _ = writeln!(out, "q={} n={} ERROR {}", e.q, e.n, e.error);
    }
    let m = &s.summary;
    let _ = writeln!(
        out,
        "instances={} passed={} hard_failures={} decomposition_discrepancies={} primitivity_skipped={} skipped_pairs={}",
        m.instances,
        m.passed,
        m.hard_failures,
        m.decomposition_discrepancies,
        m.primitivity_skipped,
        s.skipped.len()
    );
    out
}
