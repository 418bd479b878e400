//! End-to-end runs: pick `M₀`, reduce, and summarize as a report.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{full_basis, heuristic_init, MonomialBasis};
use crate::corpus::random_even_polynomial;
use crate::error::{Error, Result};
use crate::gram::{build_gram_system, evaluate_gram, GramConstraintSystem, GramMatrix};
use crate::newton::newton_reduce;
use crate::poly::Polynomial;
use crate::sdp_io::{ConstraintSummary, InitKind, Method, ReductionReport, RemovedMonomial, ReportStatus};
use crate::simplify::{SimplificationReport, SimplifyStatus};
use crate::zda::{find_certificate, zda_reduce, ZdaResult, ZdaStatus};

/// Initial basis for `p`. The polynomial must be nonzero with even degree.
pub fn initial_basis(p: &Polynomial, init: InitKind) -> Result<MonomialBasis> {
    match init {
        InitKind::Heuristic => heuristic_init(p),
        InitKind::Full => {
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            let d = p.degree();
            if d % 2 == 1 {
                return Err(Error::OddDegree(d));
            }
            Ok(full_basis(p.nvars(), d / 2))
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReduceOutcome {
    pub initial: MonomialBasis,
    pub newton: Option<MonomialBasis>,
    pub zda: Option<ZdaResult>,
    pub final_basis: MonomialBasis,
    /// Gram system over `final_basis`, for export.
    pub system: GramConstraintSystem,
    pub status: ReportStatus,
    pub newton_us: u64,
    pub zda_us: u64,
}

impl ReduceOutcome {
    /// `zda ⊆ newton ⊆ initial`, known only when both ran and ZDA finished.
    pub fn containment_ok(&self) -> Option<bool> {
        match (&self.newton, &self.zda) {
            (Some(n), Some(z)) if z.is_reduced() => {
                Some(z.final_basis.is_subset_of(n) && n.is_subset_of(&self.initial))
            }
            _ => None,
        }
    }
}

fn micros(t: Instant) -> u64 {
    t.elapsed().as_micros().min(u64::MAX as u128) as u64
}

/// Runs the selected reducers on `p`. With [`Method::Both`] ZDA starts from
/// the same `M₀` as Newton, so the two results can be compared.
///
/// An odd-degree input is reported as infeasible rather than as an error.
pub fn reduce(p: &Polynomial, method: Method, init: InitKind) -> Result<ReduceOutcome> {
    if method == Method::Simplify {
        return Err(Error::schema("method", "use simplify_program for SOS programs"));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.degree();
    if d % 2 == 1 {
        let initial = full_basis(p.nvars(), d / 2);
        return Ok(ReduceOutcome {
            system: build_gram_system(p, &initial)?,
            final_basis: initial.clone(),
            initial,
            newton: None,
            zda: None,
            status: ReportStatus::Infeasible {
                message: Error::OddDegree(d).to_string(),
                certificate: None,
            },
            newton_us: 0,
            zda_us: 0,
        });
    }
    let initial = initial_basis(p, init)?;

    let (newton, newton_us) = if matches!(method, Method::Newton | Method::Both) {
        let t = Instant::now();
        let n = newton_reduce(p, &initial)?;
        (Some(n), micros(t))
    } else {
        (None, 0)
    };
    let (zda, zda_us) = if matches!(method, Method::Zda | Method::Both) {
        let t = Instant::now();
        let z = zda_reduce(build_gram_system(p, &initial)?);
        (Some(z), micros(t))
    } else {
        (None, 0)
    };

    let (final_basis, system, status) = match &zda {
        Some(z) => {
            let status = match &z.status {
                ZdaStatus::Reduced => ReportStatus::Reduced,
                ZdaStatus::Infeasible { certificate } => ReportStatus::Infeasible {
                    message: certificate.to_string(),
                    certificate: Some(certificate.clone()),
                },
            };
            (z.final_basis.clone(), z.reduced_system.clone(), status)
        }
        None => {
            let basis = newton.clone().expect("newton ran");
            let system = build_gram_system(p, &basis)?;
            let status = match find_certificate(&system) {
                None => ReportStatus::Reduced,
                Some(c) => ReportStatus::Infeasible {
                    message: c.to_string(),
                    certificate: Some(c),
                },
            };
            (basis, system, status)
        }
    };

    Ok(ReduceOutcome {
        initial,
        newton,
        zda,
        final_basis,
        system,
        status,
        newton_us,
        zda_us,
    })
}

fn exps(b: &MonomialBasis) -> Vec<Vec<u32>> {
    b.iter().map(|a| a.exponents().to_vec()).collect()
}

/// Report for a [`reduce`] run.
pub fn reduce_report(
    input_digest: String,
    method: Method,
    init: InitKind,
    outcome: &ReduceOutcome,
    wall_time_us: u64,
) -> ReductionReport {
    let removed: Vec<RemovedMonomial> = match &outcome.zda {
        Some(z) => z
            .removed
            .iter()
            .map(|(sweep, a)| RemovedMonomial {
                constraint: 1,
                sweep: *sweep,
                monomial: a.exponents().to_vec(),
                text: a.to_string(),
            })
            .collect(),
        None => outcome
            .initial
            .iter()
            .filter(|a| !outcome.final_basis.contains(a))
            .map(|a| RemovedMonomial {
                constraint: 1,
                sweep: 0,
                monomial: a.exponents().to_vec(),
                text: a.to_string(),
            })
            .collect(),
    };
    ReductionReport {
        input_digest,
        method,
        init,
        nvars: outcome.initial.nvars(),
        initial_size: outcome.initial.len(),
        final_size: outcome.final_basis.len(),
        newton_final_size: outcome.newton.as_ref().map(MonomialBasis::len),
        zda_final_size: outcome.zda.as_ref().map(|z| z.final_basis.len()),
        containment_ok: outcome.containment_ok(),
        sweeps: outcome.zda.as_ref().map_or(0, |z| z.sweeps),
        removed,
        constraints: vec![ConstraintSummary {
            index: 1,
            initial_size: outcome.initial.len(),
            final_size: outcome.final_basis.len(),
            initial_basis: exps(&outcome.initial),
            newton_basis: outcome.newton.as_ref().map(exps),
            final_basis: exps(&outcome.final_basis),
        }],
        zeroed_decision_vars: Vec::new(),
        decision_signs: Vec::new(),
        status: outcome.status.clone(),
        wall_time_us,
    }
}

/// Report for a [`crate::simplify::simplify_program`] run.
pub fn simplify_report(input_digest: String, rep: &SimplificationReport, wall_time_us: u64) -> ReductionReport {
    let mut removed = Vec::new();
    let mut constraints = Vec::new();
    for (k, c) in rep.constraints.iter().enumerate() {
        for (it, a) in &c.removed {
            removed.push(RemovedMonomial {
                constraint: k + 1,
                sweep: *it,
                monomial: a.exponents().to_vec(),
                text: a.to_string(),
            });
        }
        constraints.push(ConstraintSummary {
            index: k + 1,
            initial_size: c.initial_basis.len(),
            final_size: c.final_basis.len(),
            initial_basis: exps(&c.initial_basis),
            newton_basis: None,
            final_basis: exps(&c.final_basis),
        });
    }
    let status = match &rep.status {
        SimplifyStatus::Simplified => ReportStatus::Simplified,
        SimplifyStatus::Infeasible { certificate } => ReportStatus::Infeasible {
            message: certificate.clone(),
            certificate: None,
        },
    };
    ReductionReport {
        input_digest,
        method: Method::Simplify,
        init: InitKind::Heuristic,
        nvars: rep.system.nvars(),
        initial_size: constraints.iter().map(|c| c.initial_size).sum(),
        final_size: constraints.iter().map(|c| c.final_size).sum(),
        newton_final_size: None,
        zda_final_size: None,
        containment_ok: None,
        sweeps: rep.iterations,
        removed,
        constraints,
        zeroed_decision_vars: rep.zeroed.clone(),
        decision_signs: rep.decision_signs.clone(),
        status,
        wall_time_us,
    }
}

/// Whether `zᵀQz` reproduces `p` exactly and `Q` is PSD.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub reproduces: bool,
    pub psd: bool,
}

impl WitnessCheck {
    pub fn is_certificate(&self) -> bool {
        self.reproduces && self.psd
    }
}

pub fn check_witness(p: &Polynomial, basis: &MonomialBasis, q: &GramMatrix) -> Result<WitnessCheck> {
    let z = evaluate_gram(basis, q)?;
    Ok(WitnessCheck {
        reproduces: &z == p,
        psd: q.is_psd(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchParams {
    pub nvars: usize,
    pub degree: u32,
    pub terms: usize,
    pub count: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub index: usize,
    pub polynomial: String,
    pub initial_size: usize,
    pub newton_size: usize,
    pub zda_size: usize,
    pub status: String,
    pub containment_ok: Option<bool>,
    pub newton_us: u64,
    pub zda_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchReport {
    pub params: BenchParams,
    pub rows: Vec<BenchRow>,
    pub containment_violations: usize,
}

/// Both reducers on a seeded corpus of even-degree polynomials. Rows come
/// back in corpus order whatever the thread count.
pub fn run_bench(params: BenchParams) -> Result<BenchReport> {
    if params.nvars == 0 {
        return Err(Error::schema("n", "must be positive"));
    }
    if params.degree < 2 {
        return Err(Error::schema("deg", "must be at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let corpus: Vec<Polynomial> = (0..params.count)
        .map(|_| random_even_polynomial(&mut rng, params.nvars, params.degree, params.terms.max(1)))
        .collect();
    let rows = corpus
        .par_iter()
        .enumerate()
        .map(|(index, p)| {
            let out = reduce(p, Method::Both, InitKind::Heuristic)?;
            Ok(BenchRow {
                index,
                polynomial: p.to_string(),
                initial_size: out.initial.len(),
                newton_size: out.newton.as_ref().map_or(0, MonomialBasis::len),
                zda_size: out.zda.as_ref().map_or(0, |z| z.final_basis.len()),
                status: match out.status {
                    ReportStatus::Infeasible { .. } => "infeasible".into(),
                    _ => "reduced".into(),
                },
                containment_ok: out.containment_ok(),
                newton_us: out.newton_us,
                zda_us: out.zda_us,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let containment_violations = rows.iter().filter(|r| r.containment_ok == Some(false)).count();
    Ok(BenchReport {
        params,
        rows,
        containment_violations,
    })
}
