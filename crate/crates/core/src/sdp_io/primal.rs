use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gram::GramConstraintSystem;
use crate::poly::Coefficient;
use crate::simplify::{ProgramSystem, Slot};

/// One nonzero coefficient of a primal row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowEntry {
    pub col: usize,
    #[serde(with = "super::rational_str")]
    pub value: Coefficient,
}

/// `min cᵀd  s.t.  Ay = b,  Q_k ⪰ 0`, with columns ordered as
/// `[d (free); vec(Q_1); …; vec(Q_N)]` and each `vec` column-major.
///
/// Off-diagonal Gram coefficients are split evenly between `(i,j)` and
/// `(j,i)`, so every row is symmetric in each block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalSdpData {
    pub nfree: usize,
    /// Original 1-based decision-variable index of each free column.
    pub free_labels: Vec<usize>,
    pub blocks: Vec<usize>,
    /// Monomials (exponent vectors) indexing each block.
    pub block_monomials: Vec<Vec<Vec<u32>>>,
    pub rows: Vec<Vec<RowEntry>>,
    #[serde(with = "super::rational_vec")]
    pub rhs: Vec<Coefficient>,
    #[serde(with = "super::rational_vec")]
    pub cost: Vec<Coefficient>,
}

/// What a column of `y` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Free(usize),
    Psd { block: usize, row: usize, col: usize },
}

impl PrimalSdpData {
    pub fn ncols(&self) -> usize {
        self.nfree + self.blocks.iter().map(|m| m * m).sum::<usize>()
    }

    pub fn column(&self, col: usize) -> Option<Column> {
        if col < self.nfree {
            return Some(Column::Free(col));
        }
        let mut off = self.nfree;
        for (b, &m) in self.blocks.iter().enumerate() {
            if col < off + m * m {
                let k = col - off;
                return Some(Column::Psd {
                    block: b,
                    row: k % m,
                    col: k / m,
                });
            }
            off += m * m;
        }
        None
    }

    pub fn psd_column(&self, block: usize, row: usize, col: usize) -> usize {
        self.nfree + self.blocks[..block].iter().map(|m| m * m).sum::<usize>() + col * self.blocks[block] + row
    }
}

/// Systems that can be exported in primal form.
pub enum PrimalSource<'a> {
    Gram(&'a GramConstraintSystem),
    Program(&'a ProgramSystem),
}

impl<'a> From<&'a GramConstraintSystem> for PrimalSource<'a> {
    fn from(s: &'a GramConstraintSystem) -> Self {
        PrimalSource::Gram(s)
    }
}

impl<'a> From<&'a ProgramSystem> for PrimalSource<'a> {
    fn from(s: &'a ProgramSystem) -> Self {
        PrimalSource::Program(s)
    }
}

enum Target {
    Free(usize),
    /// block, basis indices, coefficient on the unordered pair
    Pair(usize, usize, usize),
}

struct Builder {
    data: PrimalSdpData,
    free_map: BTreeMap<usize, usize>,
    // (block, original index) -> position in exported block
    position: Vec<BTreeMap<usize, usize>>,
    exported_block: Vec<Option<usize>>,
}

impl Builder {
    fn push_row(&mut self, entries: Vec<(Target, Coefficient)>, rhs: &Coefficient, what: impl Fn() -> String) -> Result<()> {
        let mut row: BTreeMap<usize, Coefficient> = BTreeMap::new();
        let mut add = |col: usize, v: Coefficient| {
            let e = row.entry(col).or_insert_with(Coefficient::zero);
            *e += v;
        };
        for (t, c) in entries {
            if c.is_zero() {
                continue;
            }
            match t {
                Target::Free(j) => {
                    if let Some(&col) = self.free_map.get(&j) {
                        add(col, c);
                    }
                }
                Target::Pair(k, i, j) => {
                    let (Some(b), Some(&pi), Some(&pj)) = (
                        self.exported_block[k],
                        self.position[k].get(&i),
                        self.position[k].get(&j),
                    ) else {
                        continue;
                    };
                    if pi == pj {
                        add(self.data.psd_column(b, pi, pi), c);
                    } else {
                        let half = c / Coefficient::from_integer(2.into());
                        add(self.data.psd_column(b, pi, pj), half.clone());
                        add(self.data.psd_column(b, pj, pi), half);
                    }
                }
            }
        }
        row.retain(|_, v| !v.is_zero());
        if row.is_empty() {
            if rhs.is_zero() {
                return Ok(());
            }
            return Err(Error::Infeasible(format!("{} reads 0 = {rhs}", what())));
        }
        self.data
            .rows
            .push(row.into_iter().map(|(col, value)| RowEntry { col, value }).collect());
        self.data.rhs.push(rhs.clone());
        Ok(())
    }
}

/// Drops inactive slots and trivially satisfied rows, and expands the
/// unordered-pair encoding into full symmetric `vec(Q_k)` columns. Blocks
/// whose basis became empty are omitted.
///
/// Refuses (with [`Error::Infeasible`]) if some row reads `0 = c`, `c != 0`.
pub fn to_primal_form<'a>(source: impl Into<PrimalSource<'a>>, cost: &[Coefficient]) -> Result<PrimalSdpData> {
    match source.into() {
        PrimalSource::Gram(sys) => {
            if !cost.is_empty() {
                return Err(Error::DimensionMismatch {
                    expected: 0,
                    got: cost.len(),
                });
            }
            let active: Vec<usize> = (0..sys.basis().len()).filter(|&i| sys.is_active(i)).collect();
            let mut b = new_builder(vec![active.clone()], BTreeMap::new(), Vec::new(), |_, i| {
                sys.basis().entries()[i].exponents().to_vec()
            });
            for eq in sys.equations() {
                let entries = eq
                    .entries
                    .iter()
                    .map(|e| (Target::Pair(0, e.i, e.j), Coefficient::from_integer(e.multiplicity.into())))
                    .collect();
                b.push_row(entries, &eq.rhs, || format!("coefficient of {}", eq.product_degree))?;
            }
            Ok(b.data)
        }
        PrimalSource::Program(sys) => {
            if cost.len() != sys.ndecs() {
                return Err(Error::DimensionMismatch {
                    expected: sys.ndecs(),
                    got: cost.len(),
                });
            }
            let free: Vec<usize> = (0..sys.ndecs()).filter(|&j| sys.is_slot_active(j)).collect();
            let free_map: BTreeMap<usize, usize> = free.iter().enumerate().map(|(c, &j)| (j, c)).collect();
            let active: Vec<Vec<usize>> = (0..sys.bases().len())
                .map(|k| (0..sys.bases()[k].len()).filter(|&i| sys.is_monomial_active(k, i)).collect())
                .collect();
            let free_cost = free.iter().map(|&j| cost[j].clone()).collect();
            let mut b = new_builder(active, free_map, free_cost, |k, i| {
                sys.bases()[k].entries()[i].exponents().to_vec()
            });
            b.data.free_labels = free.iter().map(|j| j + 1).collect();
            for eq in sys.equations() {
                let entries = eq
                    .entries
                    .iter()
                    .filter(|(s, _)| sys.is_slot_active(*s))
                    .map(|(s, c)| {
                        let t = match sys.slots()[*s] {
                            Slot::Decision(j) => Target::Free(j),
                            Slot::Gram { block, i, j } => Target::Pair(block, i, j),
                        };
                        (t, c.clone())
                    })
                    .collect();
                b.push_row(entries, &eq.rhs, || {
                    format!("constraint {} coefficient of {}", eq.constraint + 1, eq.product_degree)
                })?;
            }
            Ok(b.data)
        }
    }
}

fn new_builder(
    active: Vec<Vec<usize>>,
    free_map: BTreeMap<usize, usize>,
    cost: Vec<Coefficient>,
    monomial: impl Fn(usize, usize) -> Vec<u32>,
) -> Builder {
    let mut blocks = Vec::new();
    let mut block_monomials = Vec::new();
    let mut exported_block = Vec::new();
    let mut position = Vec::new();
    for (k, idx) in active.iter().enumerate() {
        if idx.is_empty() {
            exported_block.push(None);
        } else {
            exported_block.push(Some(blocks.len()));
            blocks.push(idx.len());
            block_monomials.push(idx.iter().map(|&i| monomial(k, i)).collect());
        }
        position.push(idx.iter().enumerate().map(|(p, &i)| (i, p)).collect());
    }
    Builder {
        data: PrimalSdpData {
            nfree: free_map.len(),
            free_labels: Vec::new(),
            blocks,
            block_monomials,
            rows: Vec::new(),
            rhs: Vec::new(),
            cost,
        },
        free_map,
        position,
        exported_block,
    }
}
