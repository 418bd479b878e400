//! Zero diagonal algorithm.
//!
//! If some equation of the Gram system reads `Q_{i,i} = 0`, every PSD
//! solution has a zero `i`-th row and column, so monomial `i` can be
//! dropped. Dropping it removes pairs from other equations, which can in
//! turn expose new `Q_{j,j} = 0` equations. Each sweep collects every
//! currently forced zero diagonal and removes them together; the loop stops
//! after a sweep that finds nothing.
//!
//! The result does not depend on removal order: the final basis is the
//! largest subset of the initial basis in which no monomial is forced out.
//! Equations that no PSD matrix satisfies (`0 = c` with `c != 0`, or
//! `Q_{i,i} = c` with `c < 0`) are reported as a [`Certificate`].

use serde::{Deserialize, Serialize};

use num_traits::{Signed, Zero};

use crate::basis::MonomialBasis;
use crate::error::Result;
use crate::gram::{build_gram_system, GramConstraintSystem};
use crate::poly::{Coefficient, DegreeVector, Polynomial};

/// Why a system has no PSD solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// An equation lost every entry but still has a nonzero right-hand side.
    EmptyEquation {
        product_degree: Vec<u32>,
        #[serde(with = "crate::sdp_io::rational_str")]
        rhs: Coefficient,
    },
    /// An equation reads `Q_{i,i} = c` with `c < 0`.
    NegativeDiagonal {
        product_degree: Vec<u32>,
        monomial: Vec<u32>,
        #[serde(with = "crate::sdp_io::rational_str")]
        rhs: Coefficient,
    },
}

impl Certificate {
    pub fn product_degree(&self) -> &[u32] {
        match self {
            Certificate::EmptyEquation { product_degree, .. }
            | Certificate::NegativeDiagonal { product_degree, .. } => product_degree,
        }
    }
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::EmptyEquation { product_degree, rhs } => {
                write!(f, "coefficient of {} reads 0 = {rhs}", DegreeVector::new(product_degree.clone()))
            }
            Certificate::NegativeDiagonal { monomial, rhs, .. } => {
                write!(
                    f,
                    "diagonal entry for {} forced to {rhs} < 0",
                    DegreeVector::new(monomial.clone())
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZdaStatus {
    Reduced,
    Infeasible { certificate: Certificate },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZdaResult {
    pub final_basis: MonomialBasis,
    /// `(sweep, monomial)` pairs in removal order; sweeps are 1-based.
    pub removed: Vec<(usize, DegreeVector)>,
    /// Number of passes over the equations, including the final empty one.
    pub sweeps: usize,
    pub status: ZdaStatus,
    pub reduced_system: GramConstraintSystem,
}

impl ZdaResult {
    pub fn is_reduced(&self) -> bool {
        self.status == ZdaStatus::Reduced
    }
}

/// Active indices whose diagonal is forced to zero by some equation.
/// Sorted, without duplicates.
pub fn find_forced_zero_diagonals(csys: &GramConstraintSystem) -> Vec<usize> {
    let mut found: Vec<usize> = csys
        .equations()
        .iter()
        .filter(|e| e.rhs.is_zero())
        .filter_map(|e| e.single_diagonal())
        .filter(|&i| csys.is_active(i))
        .collect();
    found.sort_unstable();
    found.dedup();
    found
}

/// The first equation, in order, that no PSD matrix can satisfy.
pub fn find_certificate(csys: &GramConstraintSystem) -> Option<Certificate> {
    for e in csys.equations() {
        if e.is_contradiction() {
            return Some(Certificate::EmptyEquation {
                product_degree: e.product_degree.exponents().to_vec(),
                rhs: e.rhs.clone(),
            });
        }
        if let Some(i) = e.single_diagonal() {
            if e.rhs.is_negative() {
                return Some(Certificate::NegativeDiagonal {
                    product_degree: e.product_degree.exponents().to_vec(),
                    monomial: csys.basis().entries()[i].exponents().to_vec(),
                    rhs: e.rhs.clone(),
                });
            }
        }
    }
    None
}

/// Runs sweeps until none finds a forced zero diagonal, then looks for a
/// certificate of infeasibility. Certificates never disappear under removal,
/// so sweeping past the first one only shrinks the basis further.
pub fn zda_reduce(csys: GramConstraintSystem) -> ZdaResult {
    let mut sys = csys;
    let mut removed = Vec::new();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let found = find_forced_zero_diagonals(&sys);
        if found.is_empty() {
            break;
        }
        for i in found {
            removed.push((sweeps, sys.basis().entries()[i].clone()));
            // only active indices are reported
            sys.deactivate(i).expect("forced index is active");
        }
    }
    let status = match find_certificate(&sys) {
        Some(c) => ZdaStatus::Infeasible { certificate: c },
        None => ZdaStatus::Reduced,
    };
    ZdaResult {
        final_basis: sys.active_basis(),
        removed,
        sweeps,
        status,
        reduced_system: sys,
    }
}

/// Builds the Gram system of `p` over `m0` and reduces it.
pub fn zda_reduce_polynomial(p: &Polynomial, m0: &MonomialBasis) -> Result<ZdaResult> {
    Ok(zda_reduce(build_gram_system(p, m0)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::full_basis;
    use crate::poly::parse_polynomial;

    const SAMPLE: &str = "3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1";

    #[test]
    fn forced_diagonals_sample() {
        let p = parse_polynomial(SAMPLE, None).unwrap();
        let s = build_gram_system(&p, &full_basis(2, 2)).unwrap();
        assert_eq!(find_forced_zero_diagonals(&s), vec![5]);
        let s = s.with_deactivated(5).unwrap();
        assert_eq!(find_forced_zero_diagonals(&s), vec![4]);
        let one = parse_polynomial("1", None).unwrap();
        let s = build_gram_system(&one, &full_basis(1, 0)).unwrap();
        assert!(find_forced_zero_diagonals(&s).is_empty());
    }

    #[test]
    fn sample_reduction() {
        let p = parse_polynomial(SAMPLE, None).unwrap();
        let r = zda_reduce_polynomial(&p, &full_basis(2, 2)).unwrap();
        assert!(r.is_reduced());
        assert_eq!(r.final_basis.names(), ["1", "x1", "x2", "x1^2"]);
        let removed: Vec<_> = r.removed.iter().map(|(k, a)| (*k, a.to_string())).collect();
        assert_eq!(removed, [(1, "x2^2".to_string()), (2, "x1*x2".to_string())]);
        assert_eq!(r.sweeps, 3);
    }

    #[test]
    fn second_example_is_strictly_smaller() {
        let p = parse_polynomial("x1^2 + x2^2 + x1^4*x2^4", None).unwrap();
        let m0 = MonomialBasis::parse("x1, x2, x1*x2, x1^2*x2^2", 2).unwrap();
        let r = zda_reduce_polynomial(&p, &m0).unwrap();
        assert_eq!(r.final_basis.names(), ["x1", "x2", "x1^2*x2^2"]);
        assert_eq!(r.removed.len(), 1);
        assert_eq!(r.sweeps, 2);
        let r = zda_reduce_polynomial(&p, &full_basis(2, 4)).unwrap();
        assert_eq!(r.final_basis.names(), ["x1", "x2", "x1^2*x2^2"]);
        assert!(r.sweeps <= 16);
    }

    #[test]
    fn indefinite_product_is_infeasible() {
        let p = parse_polynomial("x1*x2", None).unwrap();
        let r = zda_reduce_polynomial(&p, &full_basis(2, 1)).unwrap();
        match &r.status {
            ZdaStatus::Infeasible {
                certificate: Certificate::EmptyEquation { product_degree, rhs },
            } => {
                assert_eq!(product_degree, &[1, 1]);
                assert_eq!(rhs, &Coefficient::from_integer(1.into()));
            }
            other => panic!("unexpected status {other:?}"),
        }
        assert_eq!(r.removed.len(), 3);
        assert!(r.final_basis.is_empty());
    }

    #[test]
    fn negative_diagonal_certificate() {
        let p = parse_polynomial("-x1^2 + 1", None).unwrap();
        let r = zda_reduce_polynomial(&p, &MonomialBasis::parse("1, x1", 1).unwrap()).unwrap();
        assert!(matches!(
            r.status,
            ZdaStatus::Infeasible {
                certificate: Certificate::NegativeDiagonal { .. }
            }
        ));
    }

    #[test]
    fn rerun_is_idempotent() {
        let p = parse_polynomial(SAMPLE, None).unwrap();
        let r = zda_reduce_polynomial(&p, &full_basis(2, 2)).unwrap();
        let again = zda_reduce(r.reduced_system.clone());
        assert!(again.removed.is_empty());
        assert_eq!(again.final_basis, r.final_basis);
    }
}
