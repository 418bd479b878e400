//! Monomial bases: the vector `z` of a Gram decomposition `p = zᵀQz`.

use std::fmt;

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::poly::{DegreeVector, Polynomial};

/// Ordered list of distinct degree vectors, strictly increasing in the
/// monomial order of [`DegreeVector`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialBasis {
    nvars: usize,
    entries: Vec<DegreeVector>,
}

impl MonomialBasis {
    /// Sorts and deduplicates `entries`. Panics if lengths disagree with `nvars`.
    pub fn new(nvars: usize, mut entries: Vec<DegreeVector>) -> Self {
        assert!(entries.iter().all(|e| e.nvars() == nvars), "degree vector length mismatch");
        entries.sort();
        entries.dedup();
        MonomialBasis { nvars, entries }
    }

    pub fn empty(nvars: usize) -> Self {
        MonomialBasis {
            nvars,
            entries: Vec::new(),
        }
    }

    /// Parses a comma-separated monomial list such as `"1, x1, x1^2*x2"`.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let entries = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| crate::poly::parse_monomial(s, nvars))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialBasis::new(nvars, entries))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[DegreeVector] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<&DegreeVector> {
        self.entries.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DegreeVector> {
        self.entries.iter()
    }

    pub fn contains(&self, alpha: &DegreeVector) -> bool {
        self.entries.binary_search(alpha).is_ok()
    }

    pub fn position(&self, alpha: &DegreeVector) -> Option<usize> {
        self.entries.binary_search(alpha).ok()
    }

    pub fn is_subset_of(&self, other: &MonomialBasis) -> bool {
        self.entries.iter().all(|a| other.contains(a))
    }

    /// Keeps entries for which `keep` returns true, preserving order.
    pub fn filter(&self, mut keep: impl FnMut(&DegreeVector) -> bool) -> MonomialBasis {
        MonomialBasis {
            nvars: self.nvars,
            entries: self.entries.iter().filter(|a| keep(a)).cloned().collect(),
        }
    }

    /// Monomial strings, e.g. `["1", "x1", "x1^2"]`.
    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for MonomialBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names().join(", "))
    }
}

impl<'a> IntoIterator for &'a MonomialBasis {
    type Item = &'a DegreeVector;
    type IntoIter = std::slice::Iter<'a, DegreeVector>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

/// Number of monomials in `n` variables with total degree at most `d`:
/// `C(n + d, d)`.
pub fn count_monomials(n: usize, d: usize) -> u128 {
    binomial((n + d) as u128, d as u128)
}

/// Enumerates every exponent vector with `lo <= total <= hi` and
/// `α_i <= caps[i]`.
fn enumerate_bounded(caps: &[u32], lo: u32, hi: u32) -> Vec<DegreeVector> {
    fn rec(i: usize, caps: &[u32], cur: &mut Vec<u32>, sum: u32, lo: u32, hi: u32, out: &mut Vec<DegreeVector>) {
        if i == caps.len() {
            if sum >= lo {
                out.push(DegreeVector::new(cur.clone()));
            }
            return;
        }
        let max = caps[i].min(hi - sum);
        for e in 0..=max {
            cur[i] = e;
            rec(i + 1, caps, cur, sum + e, lo, hi, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if lo <= hi {
        rec(0, caps, &mut vec![0; caps.len()], 0, lo, hi, &mut out);
    }
    out.sort();
    out
}

/// All monomials in `n` variables of total degree at most `d`, in basis order.
pub fn full_basis(n: usize, d: u32) -> MonomialBasis {
    MonomialBasis {
        nvars: n,
        entries: enumerate_bounded(&vec![d; n], 0, d),
    }
}

/// Outer approximation of `½·ch(points) ∩ N^n` from hull-linear bounds:
/// total degree in `[⌈dmin/2⌉, ⌊dmax/2⌋]` and `α_i <= ⌈max_i/2⌉`, where the
/// extremes are taken over `points`. Every bound is a linear functional
/// maximized or minimized at a generator, so no point of the half hull is
/// lost.
pub fn hull_bound_basis<'a, I>(nvars: usize, points: I) -> MonomialBasis
where
    I: IntoIterator<Item = &'a DegreeVector>,
{
    let mut caps = vec![0u32; nvars];
    let mut dmin = u32::MAX;
    let mut dmax = 0u32;
    let mut any = false;
    for a in points {
        any = true;
        for (c, &e) in caps.iter_mut().zip(a.exponents()) {
            *c = (*c).max(e);
        }
        dmin = dmin.min(a.total_degree());
        dmax = dmax.max(a.total_degree());
    }
    if !any {
        return MonomialBasis::empty(nvars);
    }
    let caps: Vec<u32> = caps.iter().map(|c| c.div_ceil(2)).collect();
    MonomialBasis {
        nvars,
        entries: enumerate_bounded(&caps, dmin.div_ceil(2), dmax / 2),
    }
}

/// Cheap initial basis `M₀` containing `½C(p) ∩ N^n`.
pub fn heuristic_init(p: &Polynomial) -> Result<MonomialBasis> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.degree();
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    Ok(hull_bound_basis(p.nvars(), p.support()))
}
