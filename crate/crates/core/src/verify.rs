//! Per-instance verification and the `(q, n)` sweep.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::{self, RnElement};
use crate::dihedral::{DihedralAlgebra, IsomorphismReport, Primitivity};
use crate::error::{Error, Result};
use crate::explicit::{self, DecompositionStatus, ExplicitCheck};
use crate::ff::{int, Gf};
use crate::poly::Poly;

pub const SCHEMA_VERSION: u32 = 1;

/// The acceptance sweep's field orders.
pub const SWEEP_Q: [u64; 12] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27];
pub const SWEEP_N_MAX: usize = 30;

#[derive(Clone, Debug, Serialize)]
pub struct DerivativeFormulaCheck {
    /// Monic divisors formed from at most two irreducible factors.
    pub divisors: usize,
    pub all_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicCheck {
    pub count: usize,
    pub cosets: usize,
    /// Idempotent, orthogonal, complete and equal to the oracle.
    pub certified: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PrimitivityTally {
    pub primitive: usize,
    pub not_primitive: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralCheck {
    pub count: usize,
    pub expected: usize,
    pub certified: bool,
    pub primitivity: Vec<Primitivity>,
    pub tally: PrimitivityTally,
}

#[derive(Clone, Debug, Serialize)]
pub struct Char2Check {
    pub semisimple: bool,
    pub nilpotent_witness: bool,
    /// Central idempotent count equals `r + s`.
    pub count_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub q: u64,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub epsilon: usize,
    pub delta: usize,
    pub splitting_degree: usize,
    pub zeta_convention: cyclic::ZetaConvention,
    pub derivative_formula: DerivativeFormulaCheck,
    pub cyclic: CyclicCheck,
    pub central: CentralCheck,
    pub isomorphism: IsomorphismReport,
    pub explicit: Option<ExplicitCheck>,
    pub char2: Option<Char2Check>,
    /// Names of failed hard checks; empty on success.
    pub hard_failures: Vec<String>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.hard_failures.is_empty()
    }

    /// The closed-form decomposition claim disagrees with the computed decomposition.
    pub fn decomposition_discrepancy(&self) -> bool {
        self.explicit.as_ref().is_some_and(|e| e.decomposition.status == DecompositionStatus::Discrepancy)
    }
}

/// The derivative formula against the oracle on every divisor built from at most two
/// irreducible factors, the trivial divisor included.
pub fn derivative_formula_check(fact: &cyclic::Factorization) -> Result<DerivativeFormulaCheck> {
    let field = fact.field();
    let polys = fact.polys();
    let mut divisors = vec![Poly::one(field)];
    for (i, f) in polys.iter().enumerate() {
        divisors.push(f.clone());
        for g in &polys[i + 1..] {
            divisors.push(f * g);
        }
    }
    let mut all_equal = true;
    for d in &divisors {
        all_equal &= cyclic::idempotent_derivative(fact, d)? == cyclic::idempotent_crt_oracle(fact, d)?;
    }
    Ok(DerivativeFormulaCheck { divisors: divisors.len(), all_equal })
}

pub fn verify_instance(field: &Gf, n: usize, budget: u64) -> Result<InstanceReport> {
    let alg = DihedralAlgebra::new(field, n)?;
    let fact = alg.factorization();
    let eps = alg.epsilon_delta();
    let mut failures = Vec::new();

    let derivative_formula = derivative_formula_check(fact)?;
    if !derivative_formula.all_equal {
        failures.push("derivative_formula_oracle".to_string());
    }

    let cosets = cyclic::cyclotomic_cosets(n as u64, field.q())?.len();
    let count = alg.cyclic_idempotents().len();
    let cyc = CyclicCheck { count, cosets, certified: cyclic::idempotents_for(fact).is_ok() };
    if count != cosets || count != fact.r() + 2 * fact.s() || !cyc.certified {
        failures.push("cyclic_idempotents".to_string());
    }

    let primitivity = alg.primitivity(budget);
    let mut tally = PrimitivityTally::default();
    for p in &primitivity {
        match p {
            Primitivity::Primitive => tally.primitive += 1,
            Primitivity::NotPrimitive => tally.not_primitive += 1,
            Primitivity::Skipped => tally.skipped += 1,
        }
    }
    let central = CentralCheck {
        count: alg.central_idempotents().len(),
        expected: eps.epsilon + fact.r() + fact.s(),
        certified: alg.certify_central().is_ok(),
        primitivity,
        tally,
    };
    if central.count != central.expected || !central.certified {
        failures.push("central_idempotents".to_string());
    }
    if central.tally.not_primitive > 0 {
        failures.push("primitivity".to_string());
    }

    let isomorphism = alg.verify_isomorphism();
    if !isomorphism.passed() {
        failures.push("isomorphism".to_string());
    }

    let explicit = match explicit::check_explicit(&alg) {
        Ok(c) => Some(c),
        Err(Error::RadicalCondition { .. }) => None,
        Err(e) => return Err(e),
    };
    if explicit.as_ref().is_some_and(|c| !c.passed()) {
        failures.push("explicit_closed_forms".to_string());
    }

    let char2 = (field.p() == 2).then(|| Char2Check {
        semisimple: alg.wedderburn().semisimple,
        nilpotent_witness: isomorphism.nilpotent_witness == Some(true),
        count_ok: alg.central_idempotents().len() == fact.r() + fact.s(),
    });
    if char2.as_ref().is_some_and(|c| c.semisimple || !c.nilpotent_witness || !c.count_ok) {
        failures.push("characteristic_2".to_string());
    }

    Ok(InstanceReport {
        q: field.q(),
        n,
        r: fact.r(),
        s: fact.s(),
        epsilon: eps.epsilon,
        delta: eps.delta,
        splitting_degree: fact.splitting().map_or(1, |s| s.degree()),
        zeta_convention: fact.splitting().map_or(cyclic::ZetaConvention::PrimitivePower, |s| s.convention),
        derivative_formula,
        cyclic: cyc,
        central,
        isomorphism,
        explicit,
        char2,
        hard_failures: failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedInstance {
    pub q: u64,
    pub n: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailedInstance {
    pub q: u64,
    pub n: usize,
    pub error: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub passed: usize,
    pub hard_failures: usize,
    pub decomposition_discrepancies: usize,
    pub primitivity_skipped: usize,
}

/// One row per instance whose closed-form decomposition disagrees.
#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyEntry {
    pub q: u64,
    pub n: usize,
    pub case: explicit::CaseTag,
    pub summands: Vec<explicit::SummandCount>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub q_list: Vec<u64>,
    pub n_max: usize,
    pub budget: u64,
    pub summary: SweepSummary,
    pub discrepancies: Vec<DiscrepancyEntry>,
    pub skipped: Vec<SkippedInstance>,
    pub errors: Vec<FailedInstance>,
    pub instances: Vec<InstanceReport>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.summary.hard_failures == 0
    }
}

/// Valid `(q, n)` pairs in sweep order, plus the pairs skipped for
/// `gcd(q, n) != 1`.
pub fn sweep_instances(q_list: &[u64], n_max: usize) -> Result<(Vec<(u64, usize)>, Vec<SkippedInstance>)> {
    let mut qs = q_list.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let mut valid = Vec::new();
    let mut skipped = Vec::new();
    for &q in &qs {
        if int::prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        for n in 1..=n_max {
            if int::gcd(q, n as u64) == 1 {
                valid.push((q, n));
            } else {
                skipped.push(SkippedInstance { q, n, reason: format!("gcd({q}, {n}) != 1") });
            }
        }
    }
    Ok((valid, skipped))
}

/// Verifies every valid instance on up to `jobs` threads (0 = rayon default).
/// The report is ordered by `(q, n)` regardless of completion order; timing
/// is returned separately so reports stay byte-identical.
pub fn sweep(q_list: &[u64], n_max: usize, budget: u64, jobs: usize) -> Result<(SweepReport, std::time::Duration)> {
    let start = Instant::now();
    let (valid, skipped) = sweep_instances(q_list, n_max)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let results: Vec<(u64, usize, Result<InstanceReport>)> = pool.install(|| {
        valid
            .par_iter()
            .map(|&(q, n)| {
                let r = Gf::from_order(q).and_then(|f| verify_instance(&f, n, budget));
                (q, n, r)
            })
            .collect()
    });

    let mut instances = Vec::new();
    let mut errors = Vec::new();
    for (q, n, r) in results {
        match r {
            Ok(rep) => instances.push(rep),
            Err(e) => errors.push(FailedInstance { q, n, error: e.to_string() }),
        }
    }
    let discrepancies: Vec<DiscrepancyEntry> = instances
        .iter()
        .filter(|r| r.decomposition_discrepancy())
        .map(|r| {
            let d = &r.explicit.as_ref().expect("discrepancy implies explicit").decomposition;
            DiscrepancyEntry { q: r.q, n: r.n, case: d.case, summands: d.discrepancies.clone() }
        })
        .collect();
    let failed = instances.iter().filter(|r| !r.passed()).count() + errors.len();
    let summary = SweepSummary {
        instances: instances.len() + errors.len(),
        passed: instances.iter().filter(|r| r.passed()).count(),
        hard_failures: failed,
        decomposition_discrepancies: discrepancies.len(),
        primitivity_skipped: instances.iter().map(|r| r.central.tally.skipped).sum(),
    };
    let mut q_sorted = q_list.to_vec();
    q_sorted.sort_unstable();
    q_sorted.dedup();
    let report = SweepReport {
        schema_version: SCHEMA_VERSION,
        q_list: q_sorted,
        n_max,
        budget,
        summary,
        discrepancies,
        skipped,
        errors,
        instances,
    };
    Ok((report, start.elapsed()))
}

/// Coefficients of an `R_n` element as a polynomial, constant term first.
pub fn rn_coeffs(e: &RnElement) -> Vec<u64> {
    e.to_poly().coeffs().to_vec()
}
