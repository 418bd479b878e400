//! Exact feasibility of `{x ≥ 0 : Ax = b}` over the rationals.
//!
//! Phase-1 simplex on a dense rational tableau with Bland's rule, so the
//! iteration always terminates and the answer is exact.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Coefficient;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpRow {
    pub coeffs: BTreeMap<usize, Coefficient>,
    pub rhs: Coefficient,
}

/// Equality rows over `ncols` nonnegative variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LpFeasibilityProblem {
    ncols: usize,
    rows: Vec<LpRow>,
}

impl LpFeasibilityProblem {
    pub fn new(ncols: usize) -> Self {
        LpFeasibilityProblem {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[LpRow] {
        &self.rows
    }

    /// Adds `Σ coeffs[c]·x_c = rhs`. Zero coefficients are dropped.
    pub fn add_row<I>(&mut self, coeffs: I, rhs: Coefficient) -> Result<()>
    where
        I: IntoIterator<Item = (usize, Coefficient)>,
    {
        let mut row = BTreeMap::new();
        for (c, v) in coeffs {
            if c >= self.ncols {
                return Err(Error::DimensionMismatch {
                    expected: self.ncols,
                    got: c + 1,
                });
            }
            if !v.is_zero() {
                row.insert(c, v);
            }
        }
        self.rows.push(LpRow { coeffs: row, rhs });
        Ok(())
    }

    /// Whether `x` is nonnegative and satisfies every row exactly.
    pub fn is_witness(&self, x: &[Coefficient]) -> bool {
        x.len() == self.ncols
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|r| {
                r.coeffs
                    .iter()
                    .fold(Coefficient::zero(), |acc, (&c, v)| acc + v * &x[c])
                    == r.rhs
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Feasible(Vec<Coefficient>),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Number of simplex pivots performed.
    pub pivots: usize,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, LpStatus::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Coefficient]> {
        match &self.status {
            LpStatus::Feasible(x) => Some(x),
            LpStatus::Infeasible => None,
        }
    }
}

/// Decides feasibility by minimizing the sum of one artificial variable per
/// row. Feasible iff that minimum is zero.
pub fn lp_feasible(prob: &LpFeasibilityProblem) -> LpOutcome {
    let n = prob.ncols;
    let m = prob.rows.len();
    let width = n + m;

    // rows of B⁻¹[A | I], rhs kept nonnegative
    let mut tab: Vec<Vec<Coefficient>> = Vec::with_capacity(m);
    let mut rhs: Vec<Coefficient> = Vec::with_capacity(m);
    for (i, row) in prob.rows.iter().enumerate() {
        let flip = row.rhs.is_negative();
        let mut t = vec![Coefficient::zero(); width];
        for (&c, v) in &row.coeffs {
            t[c] = if flip { -v } else { v.clone() };
        }
        t[n + i] = Coefficient::from_integer(1.into());
        tab.push(t);
        rhs.push(row.rhs.abs());
    }
    let mut basis: Vec<usize> = (n..width).collect();

    // reduced costs of the phase-1 objective Σ artificials
    let mut cost = vec![Coefficient::zero(); width];
    for j in 0..n {
        cost[j] = -tab.iter().fold(Coefficient::zero(), |acc, t| acc + &t[j]);
    }
    let mut objective = rhs.iter().fold(Coefficient::zero(), |acc, b| acc + b);

    let mut pivots = 0;
    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        // Bland: smallest ratio, ties by smallest basic index
        let mut leave: Option<(usize, Coefficient)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase-1 objective is bounded below by zero
        let (r, _) = leave.expect("phase-1 simplex cannot be unbounded");

        let piv = tab[r][enter].clone();
        for v in tab[r].iter_mut() {
            *v /= &piv;
        }
        rhs[r] /= &piv;
        let prow = tab[r].clone();
        let prhs = rhs[r].clone();
        for i in 0..m {
            if i == r || tab[i][enter].is_zero() {
                continue;
            }
            let f = tab[i][enter].clone();
            for (v, p) in tab[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            rhs[i] -= &f * &prhs;
        }
        let f = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
        objective += &f * &prhs;
        basis[r] = enter;
        pivots += 1;
    }

    if !objective.is_zero() {
        return LpOutcome {
            status: LpStatus::Infeasible,
            pivots,
        };
    }
    let mut x = vec![Coefficient::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = rhs[i].clone();
        }
    }
    debug_assert!(prob.is_witness(&x), "simplex produced an invalid witness");
    LpOutcome {
        status: LpStatus::Feasible(x),
        pivots,
    }
}
