//! Coefficient-matching equations for `p = zᵀQz`.
//!
//! For a basis `M = {α_1, …, α_m}` every product degree `α ∈ M+M` gives one
//! equation `Σ_{(i,j) ∈ S_α} Q_{i,j} = c_α` (or `0` when `α` is not in the
//! support of `p`). Symmetry of `Q` is encoded structurally: each equation
//! lists unordered pairs `i <= j` with multiplicity 1 on the diagonal and 2
//! off it.
//!
//! Basis indices are 0-based throughout.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::basis::MonomialBasis;
use crate::error::{Error, Result};
use crate::poly::{Coefficient, DegreeVector, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub multiplicity: u32,
}

impl PairEntry {
    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }

    pub fn touches(&self, k: usize) -> bool {
        self.i == k || self.j == k
    }
}

/// `Σ multiplicity·Q_{i,j} = rhs` over the unordered pairs with
/// `α_i + α_j = product_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub product_degree: DegreeVector,
    pub entries: Vec<PairEntry>,
    pub rhs: Coefficient,
}

impl Equation {
    /// An equation `0 = c` with `c != 0`.
    pub fn is_contradiction(&self) -> bool {
        self.entries.is_empty() && !self.rhs.is_zero()
    }

    /// `Some(i)` when the equation reads exactly `Q_{i,i} = rhs`.
    pub fn single_diagonal(&self) -> Option<usize> {
        match self.entries.as_slice() {
            [e] if e.is_diagonal() => Some(e.i),
            _ => None,
        }
    }

    /// Left-hand side evaluated at `q`.
    pub fn lhs(&self, q: &GramMatrix) -> Coefficient {
        self.entries.iter().fold(Coefficient::zero(), |acc, e| {
            acc + q.get(e.i, e.j) * Coefficient::from_integer(e.multiplicity.into())
        })
    }
}

/// The equality system equating coefficients of `p` and `zᵀQz`, with
/// per-basis-entry activity flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramConstraintSystem {
    basis: MonomialBasis,
    active: Vec<bool>,
    equations: Vec<Equation>,
    rhs_support: BTreeSet<DegreeVector>,
}

/// Builds one equation per element of `M+M`, plus an empty-entry equation
/// for every support point of `p` outside `M+M` (an immediate infeasibility
/// certificate).
pub fn build_gram_system(p: &Polynomial, basis: &MonomialBasis) -> Result<GramConstraintSystem> {
    if p.nvars() != basis.nvars() {
        return Err(Error::DimensionMismatch {
            expected: basis.nvars(),
            got: p.nvars(),
        });
    }
    let mut by_degree: BTreeMap<DegreeVector, Vec<PairEntry>> = BTreeMap::new();
    let entries = basis.entries();
    for i in 0..entries.len() {
        for j in i..entries.len() {
            by_degree.entry(entries[i].add(&entries[j])).or_default().push(PairEntry {
                i,
                j,
                multiplicity: if i == j { 1 } else { 2 },
            });
        }
    }
    for alpha in p.support() {
        by_degree.entry(alpha.clone()).or_default();
    }
    let equations = by_degree
        .into_iter()
        .map(|(alpha, entries)| {
            let rhs = p.coefficient(&alpha).cloned().unwrap_or_else(Coefficient::zero);
            Equation {
                product_degree: alpha,
                entries,
                rhs,
            }
        })
        .collect();
    Ok(GramConstraintSystem {
        basis: basis.clone(),
        active: vec![true; basis.len()],
        equations,
        rhs_support: p.support().cloned().collect(),
    })
}

impl GramConstraintSystem {
    /// The basis the system was built over (inactive entries included).
    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn is_active(&self, index: usize) -> bool {
        self.active.get(index).copied().unwrap_or(false)
    }

    pub fn active_flags(&self) -> &[bool] {
        &self.active
    }

    /// The currently retained monomials.
    pub fn active_basis(&self) -> MonomialBasis {
        let mut k = 0;
        self.basis.filter(|_| {
            k += 1;
            self.active[k - 1]
        })
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn rhs_support(&self) -> &BTreeSet<DegreeVector> {
        &self.rhs_support
    }

    /// First equation reading `0 = c` with `c != 0`, if any.
    pub fn contradiction(&self) -> Option<&Equation> {
        self.equations.iter().find(|e| e.is_contradiction())
    }

    /// Equations that still have at least one entry.
    pub fn nonempty_equations(&self) -> impl Iterator<Item = &Equation> {
        self.equations.iter().filter(|e| !e.entries.is_empty())
    }

    /// Removes basis entry `index`: clears its flag and drops every pair
    /// touching it from every equation.
    pub fn deactivate(&mut self, index: usize) -> Result<()> {
        match self.active.get(index) {
            None => return Err(Error::IndexOutOfRange(index)),
            Some(false) => return Err(Error::IndexInactive(index)),
            Some(true) => {}
        }
        self.active[index] = false;
        for eq in &mut self.equations {
            eq.entries.retain(|e| !e.touches(index));
        }
        Ok(())
    }

    /// Non-mutating variant of [`deactivate`](Self::deactivate).
    pub fn with_deactivated(&self, index: usize) -> Result<GramConstraintSystem> {
        let mut out = self.clone();
        out.deactivate(index)?;
        Ok(out)
    }

    /// Whether `q` satisfies every equation exactly. Entries of `q` touching
    /// inactive indices are ignored.
    pub fn is_satisfied_by(&self, q: &GramMatrix) -> Result<bool> {
        if q.dim() != self.basis.len() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.len(),
                got: q.dim(),
            });
        }
        Ok(self.equations.iter().all(|e| e.lhs(q) == e.rhs))
    }
}

/// Symmetric matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    dim: usize,
    values: Vec<Coefficient>,
}

impl GramMatrix {
    pub fn zeros(dim: usize) -> Self {
        GramMatrix {
            dim,
            values: vec![Coefficient::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut q = Self::zeros(dim);
        for i in 0..dim {
            q.set(i, i, Coefficient::from_integer(1.into()));
        }
        q
    }

    /// Builds from rows; fails unless square and symmetric.
    pub fn from_rows(rows: Vec<Vec<Coefficient>>) -> Result<Self> {
        let dim = rows.len();
        let mut values = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            values.extend(row);
        }
        let q = GramMatrix { dim, values };
        for i in 0..dim {
            for j in i + 1..dim {
                if q.get(i, j) != q.get(j, i) {
                    return Err(Error::schema(format!("Q[{i}][{j}]"), "matrix is not symmetric"));
                }
            }
        }
        Ok(q)
    }

    /// `Σ_k a_k a_kᵀ` where `a_k` holds the coefficients of `fs[k]` on `basis`.
    /// Fails if some `f_k` uses a monomial outside the basis.
    pub fn from_squares(basis: &MonomialBasis, fs: &[Polynomial]) -> Result<Self> {
        let mut q = Self::zeros(basis.len());
        for f in fs {
            let mut a = vec![Coefficient::zero(); basis.len()];
            for (alpha, c) in f.terms() {
                let i = basis
                    .position(alpha)
                    .ok_or_else(|| Error::Infeasible(format!("monomial {alpha} not in basis")))?;
                a[i] = c.clone();
            }
            for i in 0..a.len() {
                for j in 0..a.len() {
                    let v = q.get(i, j) + &a[i] * &a[j];
                    q.values[i * q.dim + j] = v;
                }
            }
        }
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Coefficient {
        &self.values[i * self.dim + j]
    }

    /// Sets both `(i,j)` and `(j,i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Coefficient) {
        self.values[i * self.dim + j] = v.clone();
        self.values[j * self.dim + i] = v;
    }

    /// Principal submatrix keeping the listed indices.
    pub fn restrict(&self, keep: &[usize]) -> GramMatrix {
        let mut out = GramMatrix::zeros(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                out.values[a * keep.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Exact positive-semidefiniteness test by symmetric Gaussian
    /// elimination with diagonal pivoting.
    pub fn is_psd(&self) -> bool {
        let mut a: Vec<Vec<Coefficient>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).clone()).collect())
            .collect();
        loop {
            let m = a.len();
            if m == 0 {
                return true;
            }
            if (0..m).any(|i| a[i][i].is_negative()) {
                return false;
            }
            let Some(k) = (0..m).find(|&i| a[i][i].is_positive()) else {
                // zero diagonal forces a zero matrix
                return a.iter().all(|row| row.iter().all(Zero::is_zero));
            };
            let pivot = a[k][k].clone();
            let rest: Vec<usize> = (0..m).filter(|&i| i != k).collect();
            a = rest
                .iter()
                .map(|&i| {
                    rest.iter()
                        .map(|&j| &a[i][j] - &a[i][k] * &a[k][j] / &pivot)
                        .collect()
                })
                .collect();
        }
    }
}

/// `zᵀQz = Σ_{i,j} Q_{i,j} x^{α_i+α_j}`, exactly.
pub fn evaluate_gram(basis: &MonomialBasis, q: &GramMatrix) -> Result<Polynomial> {
    if q.dim() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            got: q.dim(),
        });
    }
    let e = basis.entries();
    let terms = (0..e.len())
        .flat_map(|i| (0..e.len()).map(move |j| (i, j)))
        .map(|(i, j)| (e[i].add(&e[j]), q.get(i, j).clone()));
    Ok(Polynomial::from_terms(basis.nvars(), terms))
}
