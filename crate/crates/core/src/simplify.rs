//! Simplification of SOS programs
//!
//! ```text
//! min cᵀd   s.t.   a_k(x,d) = a_{k,0}(x) + Σ_j a_{k,j}(x)·d_j  is SOS,  k = 1..N
//! ```
//!
//! Each constraint gets its own Gram matrix `Q_k` over a basis `z_k`, and
//! coefficient matching yields linear equations over the stacked unknowns
//! `y = [d; symvec(Q_1); …; symvec(Q_N)]`. Every unknown is a *slot*. The
//! simplifier tracks a sign mark per slot and repeatedly scans equations
//! with one or two live slots:
//!
//! * a single slot with zero right-hand side is zero;
//! * a single slot with nonzero right-hand side gets that sign;
//! * two slots are handled by the rules in [`process_two_var_equation`].
//!
//! A zero diagonal slot of `Q_k` removes its monomial from `z_k` together
//! with the whole row and column. Zero slots drop out of every equation,
//! which may expose new one- or two-slot equations. Decision variables that
//! end up zero are implicitly constrained and can be removed before the SDP
//! is solved.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::basis::{hull_bound_basis, MonomialBasis};
use crate::error::{Error, Result};
use crate::poly::{Coefficient, DegreeVector, Polynomial};

/// `a_{k,0} + a_{k,1}·d_1 + … + a_{k,r}·d_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSosConstraint {
    parts: Vec<Polynomial>,
}

impl AffineSosConstraint {
    pub fn new(parts: Vec<Polynomial>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyList);
        }
        let n = parts[0].nvars();
        if let Some(bad) = parts.iter().find(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.nvars(),
            });
        }
        Ok(AffineSosConstraint { parts })
    }

    pub fn parts(&self) -> &[Polynomial] {
        &self.parts
    }

    /// The constant part `a_{k,0}`.
    pub fn constant_part(&self) -> &Polynomial {
        &self.parts[0]
    }

    /// `a(x, d)` at a concrete decision vector.
    pub fn instantiate(&self, d: &[Coefficient]) -> Result<Polynomial> {
        if d.len() + 1 != self.parts.len() {
            return Err(Error::DimensionMismatch {
                expected: self.parts.len() - 1,
                got: d.len(),
            });
        }
        let mut acc = self.parts[0].clone();
        for (p, v) in self.parts[1..].iter().zip(d) {
            acc = acc.checked_add(&p.scale(v))?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SosProgram {
    nvars: usize,
    ndecs: usize,
    cost: Vec<Coefficient>,
    constraints: Vec<AffineSosConstraint>,
}

impl SosProgram {
    pub fn new(
        nvars: usize,
        ndecs: usize,
        cost: Vec<Coefficient>,
        constraints: Vec<AffineSosConstraint>,
    ) -> Result<Self> {
        if cost.len() != ndecs {
            return Err(Error::DimensionMismatch {
                expected: ndecs,
                got: cost.len(),
            });
        }
        if constraints.is_empty() {
            return Err(Error::EmptyList);
        }
        for c in &constraints {
            if c.parts.len() != ndecs + 1 {
                return Err(Error::DimensionMismatch {
                    expected: ndecs + 1,
                    got: c.parts.len(),
                });
            }
            if c.parts[0].nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: c.parts[0].nvars(),
                });
            }
        }
        Ok(SosProgram {
            nvars,
            ndecs,
            cost,
            constraints,
        })
    }

    /// Feasibility program `p ∈ SOS` with no decision variables.
    pub fn single(p: Polynomial) -> Self {
        SosProgram {
            nvars: p.nvars(),
            ndecs: 0,
            cost: Vec::new(),
            constraints: vec![AffineSosConstraint { parts: vec![p] }],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ndecs(&self) -> usize {
        self.ndecs
    }

    pub fn cost(&self) -> &[Coefficient] {
        &self.cost
    }

    pub fn constraints(&self) -> &[AffineSosConstraint] {
        &self.constraints
    }
}

/// What is known about the sign of one slot. Marks only ever move up:
/// `Unknown → NonNeg | NonPos → Zero`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMark {
    Unknown,
    NonNeg,
    NonPos,
    Zero,
}

impl SignMark {
    fn negate(self) -> SignMark {
        match self {
            SignMark::NonNeg => SignMark::NonPos,
            SignMark::NonPos => SignMark::NonNeg,
            m => m,
        }
    }

    /// Sign of `c·y` when `y` carries this mark.
    fn times(self, c: &Coefficient) -> SignMark {
        if c.is_negative() {
            self.negate()
        } else {
            self
        }
    }

    fn of(c: &Coefficient) -> SignMark {
        if c.is_zero() {
            SignMark::Zero
        } else if c.is_positive() {
            SignMark::NonNeg
        } else {
            SignMark::NonPos
        }
    }

    fn is_directional(self) -> bool {
        matches!(self, SignMark::NonNeg | SignMark::NonPos)
    }

    /// Whether `self` is at least as informative as `other`.
    pub fn refines(self, other: SignMark) -> bool {
        self == other || other == SignMark::Unknown || self == SignMark::Zero
    }

    /// Whether `v` is consistent with this mark.
    pub fn admits(self, v: &Coefficient) -> bool {
        match self {
            SignMark::Unknown => true,
            SignMark::NonNeg => !v.is_negative(),
            SignMark::NonPos => !v.is_positive(),
            SignMark::Zero => v.is_zero(),
        }
    }
}

impl fmt::Display for SignMark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignMark::Unknown => "unknown",
            SignMark::NonNeg => ">= 0",
            SignMark::NonPos => "<= 0",
            SignMark::Zero => "= 0",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector(Vec<SignMark>);

impl SignVector {
    pub fn new(marks: Vec<SignMark>) -> Self {
        SignVector(marks)
    }

    pub fn get(&self, slot: usize) -> SignMark {
        self.0[slot]
    }

    pub fn marks(&self) -> &[SignMark] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// What a slot of `y` stands for. Gram indices are positions in the
/// constraint's initial basis, with `i <= j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Decision(usize),
    Gram { block: usize, i: usize, j: usize },
}

impl Slot {
    pub fn is_diagonal(&self) -> bool {
        matches!(self, Slot::Gram { i, j, .. } if i == j)
    }
}

/// `Σ coeff·y_slot = rhs` for one product degree of one constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramEquation {
    pub constraint: usize,
    pub product_degree: DegreeVector,
    pub entries: Vec<(usize, Coefficient)>,
    pub rhs: Coefficient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramSystem {
    nvars: usize,
    ndecs: usize,
    cost: Vec<Coefficient>,
    bases: Vec<MonomialBasis>,
    monomial_active: Vec<Vec<bool>>,
    block_offsets: Vec<usize>,
    slots: Vec<Slot>,
    equations: Vec<ProgramEquation>,
    sign: SignVector,
    slot_active: Vec<bool>,
}

/// Default basis for one constraint: hull-linear bounds over the union of
/// the supports of all its parts, which contains `½C(a(x,d))` for every `d`.
pub fn default_constraint_basis(nvars: usize, c: &AffineSosConstraint) -> MonomialBasis {
    hull_bound_basis(nvars, c.parts.iter().flat_map(|p| p.support()))
}

/// Assembles `Ay = b` with `y = [d; symvec(Q_1); …; symvec(Q_N)]` and the
/// initial sign vector (diagonal Gram slots nonnegative, everything else
/// unknown).
pub fn build_program_system(prog: &SosProgram, bases: Option<Vec<MonomialBasis>>) -> Result<ProgramSystem> {
    let bases = match bases {
        Some(b) => {
            if b.len() != prog.constraints.len() {
                return Err(Error::DimensionMismatch {
                    expected: prog.constraints.len(),
                    got: b.len(),
                });
            }
            if let Some(bad) = b.iter().find(|m| m.nvars() != prog.nvars) {
                return Err(Error::DimensionMismatch {
                    expected: prog.nvars,
                    got: bad.nvars(),
                });
            }
            b
        }
        None => prog
            .constraints
            .iter()
            .map(|c| default_constraint_basis(prog.nvars, c))
            .collect(),
    };

    let mut slots: Vec<Slot> = (0..prog.ndecs).map(Slot::Decision).collect();
    let mut block_offsets = Vec::with_capacity(bases.len());
    for (k, m) in bases.iter().enumerate() {
        block_offsets.push(slots.len());
        for i in 0..m.len() {
            for j in i..m.len() {
                slots.push(Slot::Gram { block: k, i, j });
            }
        }
    }

    let mut equations = Vec::new();
    for (k, (c, m)) in prog.constraints.iter().zip(&bases).enumerate() {
        let mut rows: BTreeMap<DegreeVector, Vec<(usize, Coefficient)>> = BTreeMap::new();
        let e = m.entries();
        for i in 0..e.len() {
            for j in i..e.len() {
                let mult = if i == j { 1 } else { 2 };
                rows.entry(e[i].add(&e[j]))
                    .or_default()
                    .push((pair_slot(block_offsets[k], m.len(), i, j), Coefficient::from_integer(mult.into())));
            }
        }
        for (dj, part) in c.parts[1..].iter().enumerate() {
            for (alpha, v) in part.terms() {
                rows.entry(alpha.clone()).or_default().push((dj, -v));
            }
        }
        for alpha in c.parts[0].support() {
            rows.entry(alpha.clone()).or_default();
        }
        for (alpha, mut entries) in rows {
            // d slots sort first
            entries.sort_by_key(|(s, _)| *s);
            let rhs = c.parts[0].coefficient(&alpha).cloned().unwrap_or_else(Coefficient::zero);
            equations.push(ProgramEquation {
                constraint: k,
                product_degree: alpha,
                entries,
                rhs,
            });
        }
    }

    let sign = SignVector(
        slots
            .iter()
            .map(|s| if s.is_diagonal() { SignMark::NonNeg } else { SignMark::Unknown })
            .collect(),
    );
    Ok(ProgramSystem {
        nvars: prog.nvars,
        ndecs: prog.ndecs,
        cost: prog.cost.clone(),
        monomial_active: bases.iter().map(|m| vec![true; m.len()]).collect(),
        bases,
        block_offsets,
        slot_active: vec![true; slots.len()],
        slots,
        equations,
        sign,
    })
}

fn pair_slot(offset: usize, m: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows 0..i of the upper triangle hold i*m - i*(i-1)/2 entries
    offset + i * m - i * i.saturating_sub(1) / 2 + (j - i)
}

impl ProgramSystem {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ndecs(&self) -> usize {
        self.ndecs
    }

    pub fn cost(&self) -> &[Coefficient] {
        &self.cost
    }

    /// Initial basis of every constraint.
    pub fn bases(&self) -> &[MonomialBasis] {
        &self.bases
    }

    /// Currently retained monomials of constraint `k`.
    pub fn active_basis(&self, k: usize) -> MonomialBasis {
        let flags = &self.monomial_active[k];
        let mut idx = 0;
        self.bases[k].filter(|_| {
            idx += 1;
            flags[idx - 1]
        })
    }

    pub fn is_monomial_active(&self, k: usize, i: usize) -> bool {
        self.monomial_active[k][i]
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn equations(&self) -> &[ProgramEquation] {
        &self.equations
    }

    pub fn sign(&self) -> &SignVector {
        &self.sign
    }

    pub fn is_slot_active(&self, s: usize) -> bool {
        self.slot_active[s]
    }

    /// Slot holding `Q_k[i][j]` (either order).
    pub fn gram_slot(&self, block: usize, i: usize, j: usize) -> usize {
        pair_slot(self.block_offsets[block], self.bases[block].len(), i, j)
    }

    /// Entries of `eq` whose slots are still live.
    pub fn live_entries<'a>(&'a self, eq: &'a ProgramEquation) -> impl Iterator<Item = &'a (usize, Coefficient)> + 'a {
        eq.entries
            .iter()
            .filter(|(s, c)| self.slot_active[*s] && self.sign.get(*s) != SignMark::Zero && !c.is_zero())
    }

    fn upgrade(&mut self, slot: usize, mark: SignMark) -> bool {
        let cur = self.sign.0[slot];
        let next = match (cur, mark) {
            (c, m) if c == m => return false,
            (SignMark::Zero, _) => return false,
            (_, SignMark::Unknown) => return false,
            (SignMark::Unknown, m) => m,
            (_, SignMark::Zero) => SignMark::Zero,
            // NonNeg meets NonPos
            _ => SignMark::Zero,
        };
        self.sign.0[slot] = next;
        true
    }
}

/// A sign deduction: `slot` carries `mark`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deduction {
    pub slot: usize,
    pub mark: SignMark,
}

/// The equations admit no solution compatible with the sign marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contradiction(pub String);

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Deductions from `coeff·y_slot = rhs`.
///
/// Zero right-hand side marks the slot zero. Otherwise the slot takes the
/// sign of `coeff·rhs`; a slot already marked zero or with the opposite
/// sign cannot equal the nonzero value `rhs/coeff`.
pub fn process_single_var_equation(
    slot: usize,
    coeff: &Coefficient,
    rhs: &Coefficient,
    signs: &SignVector,
) -> std::result::Result<Vec<Deduction>, Contradiction> {
    if coeff.is_zero() {
        return Ok(Vec::new());
    }
    let mark = signs.get(slot);
    if rhs.is_zero() {
        return Ok(if mark == SignMark::Zero {
            Vec::new()
        } else {
            vec![Deduction {
                slot,
                mark: SignMark::Zero,
            }]
        });
    }
    let implied = SignMark::of(&(coeff * rhs));
    match mark {
        SignMark::Unknown => Ok(vec![Deduction { slot, mark: implied }]),
        m if m == implied => Ok(Vec::new()),
        SignMark::Zero => Err(Contradiction(format!(
            "slot {slot} is zero but must equal {}",
            rhs / coeff
        ))),
        m => Err(Contradiction(format!(
            "slot {slot} is {m} but must equal {}",
            rhs / coeff
        ))),
    }
}

/// Deductions from `a₁·y₁ + a₂·y₂ = rhs`.
///
/// 1. If one slot is zero, the other follows the single-variable rule.
/// 2. With `rhs = 0`, two terms known to share a sign are both zero.
/// 3. With `rhs = 0` and one term's sign known, the other term has the
///    opposite sign, which fixes its slot's mark.
/// 4. With `rhs != 0`, two terms of one known sign opposite to `rhs` are a
///    contradiction.
///
/// Nothing else is deduced.
pub fn process_two_var_equation(
    terms: [(usize, &Coefficient); 2],
    rhs: &Coefficient,
    signs: &SignVector,
) -> std::result::Result<Vec<Deduction>, Contradiction> {
    let [(s1, a1), (s2, a2)] = terms;
    if a1.is_zero() {
        return process_single_var_equation(s2, a2, rhs, signs);
    }
    if a2.is_zero() {
        return process_single_var_equation(s1, a1, rhs, signs);
    }
    let (m1, m2) = (signs.get(s1), signs.get(s2));
    if m1 == SignMark::Zero {
        return process_single_var_equation(s2, a2, rhs, signs);
    }
    if m2 == SignMark::Zero {
        return process_single_var_equation(s1, a1, rhs, signs);
    }
    let (o1, o2) = (m1.times(a1), m2.times(a2));
    if rhs.is_zero() {
        if o1.is_directional() && o1 == o2 {
            return Ok(vec![
                Deduction {
                    slot: s1,
                    mark: SignMark::Zero,
                },
                Deduction {
                    slot: s2,
                    mark: SignMark::Zero,
                },
            ]);
        }
        match (o1.is_directional(), o2.is_directional()) {
            (true, false) => Ok(vec![Deduction {
                slot: s2,
                mark: o1.negate().times(a2),
            }]),
            (false, true) => Ok(vec![Deduction {
                slot: s1,
                mark: o2.negate().times(a1),
            }]),
            _ => Ok(Vec::new()),
        }
    } else {
        let want = SignMark::of(rhs);
        if o1.is_directional() && o1 == o2 && o1 != want {
            return Err(Contradiction(format!(
                "slots {s1} and {s2} contribute terms {o1} but their sum is {rhs}"
            )));
        }
        Ok(Vec::new())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimplifyStatus {
    Simplified,
    Infeasible { certificate: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintOutcome {
    pub initial_basis: MonomialBasis,
    pub final_basis: MonomialBasis,
    /// `(iteration, monomial)`; iterations are 1-based.
    pub removed: Vec<(usize, DegreeVector)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplificationReport {
    pub constraints: Vec<ConstraintOutcome>,
    /// 1-based indices of decision variables found to be zero.
    pub zeroed: Vec<usize>,
    pub decision_signs: Vec<SignMark>,
    pub iterations: usize,
    pub status: SimplifyStatus,
    /// The system after simplification, ready for export.
    pub system: ProgramSystem,
}

impl SimplificationReport {
    pub fn is_simplified(&self) -> bool {
        self.status == SimplifyStatus::Simplified
    }
}

/// Iterates the one- and two-slot rules, monomial pruning and slot
/// elimination until a full pass learns nothing new. A contradiction makes
/// the program infeasible; the first one found is reported and the pass
/// continues without the offending equation.
pub fn simplify_program(psys: ProgramSystem) -> SimplificationReport {
    let mut sys = psys;
    let mut removed: Vec<Vec<(usize, DegreeVector)>> = vec![Vec::new(); sys.bases.len()];
    let mut iterations = 0;

    let mut first_contradiction: Option<String> = None;
    loop {
        iterations += 1;
        let mut changed = false;

        for e in 0..sys.equations.len() {
            let eq = &sys.equations[e];
            let live: Vec<(usize, Coefficient)> = sys.live_entries(eq).cloned().collect();
            let outcome = match live.as_slice() {
                [] if !eq.rhs.is_zero() => Err(Contradiction(format!(
                    "constraint {} coefficient of {} reads 0 = {}",
                    eq.constraint + 1,
                    eq.product_degree,
                    eq.rhs
                ))),
                [] => Ok(Vec::new()),
                [(s, a)] => process_single_var_equation(*s, a, &eq.rhs, &sys.sign),
                [(s1, a1), (s2, a2)] => process_two_var_equation([(*s1, a1), (*s2, a2)], &eq.rhs, &sys.sign),
                _ => Ok(Vec::new()),
            };
            match outcome {
                Ok(ds) => {
                    for d in ds {
                        changed |= sys.upgrade(d.slot, d.mark);
                    }
                }
                Err(c) => {
                    first_contradiction.get_or_insert(c.0);
                }
            }
        }

        // zero diagonals remove their monomial with its row and column
        for k in 0..sys.bases.len() {
            let m = sys.bases[k].len();
            for i in 0..m {
                if !sys.monomial_active[k][i] {
                    continue;
                }
                let diag = sys.gram_slot(k, i, i);
                if sys.sign.get(diag) != SignMark::Zero {
                    continue;
                }
                sys.monomial_active[k][i] = false;
                removed[k].push((iterations, sys.bases[k].entries()[i].clone()));
                for j in 0..m {
                    let s = sys.gram_slot(k, i, j);
                    changed |= sys.upgrade(s, SignMark::Zero);
                }
            }
        }

        for s in 0..sys.slots.len() {
            if sys.sign.get(s) == SignMark::Zero {
                sys.slot_active[s] = false;
            }
        }

        if !changed {
            break;
        }
    }
    let status = match first_contradiction {
        Some(certificate) => SimplifyStatus::Infeasible { certificate },
        None => SimplifyStatus::Simplified,
    };

    let constraints = (0..sys.bases.len())
        .map(|k| ConstraintOutcome {
            initial_basis: sys.bases[k].clone(),
            final_basis: sys.active_basis(k),
            removed: std::mem::take(&mut removed[k]),
        })
        .collect();
    let decision_signs: Vec<SignMark> = (0..sys.ndecs).map(|j| sys.sign.get(j)).collect();
    let zeroed = decision_signs
        .iter()
        .enumerate()
        .filter(|(_, m)| **m == SignMark::Zero)
        .map(|(j, _)| j + 1)
        .collect();
    SimplificationReport {
        constraints,
        zeroed,
        decision_signs,
        iterations,
        status,
        system: sys,
    }
}
