#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rand::Rng;
use sos_prune::{Coefficient, DegreeVector, MonomialBasis, Polynomial};

pub fn int(v: i64) -> Coefficient {
    Coefficient::from_integer(v.into())
}

pub fn dv(e: &[u32]) -> DegreeVector {
    DegreeVector::new(e.to_vec())
}

/// Unique solution of the square-or-tall system `a x = b`, if `a` has full
/// column rank and the system is consistent.
pub fn solve_unique(mut a: Vec<Vec<Coefficient>>, mut b: Vec<Coefficient>) -> Option<Vec<Coefficient>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        b.swap(r, p);
        let piv = a[r][c].clone();
        for v in a[r].iter_mut() {
            *v /= &piv;
        }
        b[r] /= &piv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
                let t = &f * &b[r];
                b[i] -= t;
            }
        }
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(b[..cols].to_vec())
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Hull membership by Carathéodory: `point ∈ ch(gens)` iff it is a convex
/// combination of some affinely independent subset of at most `dim + 1`
/// generators, whose barycentric coordinates are then unique.
pub fn caratheodory_member(point: &[u32], gens: &[Vec<u32>]) -> bool {
    let dim = point.len();
    for k in 1..=gens.len().min(dim + 1) {
        let mut all = Vec::new();
        subsets(gens.len(), k, 0, &mut Vec::new(), &mut all);
        for s in all {
            let mut a = vec![vec![Coefficient::one(); k]];
            let mut b = vec![Coefficient::one()];
            for c in 0..dim {
                a.push(s.iter().map(|&g| int(gens[g][c] as i64)).collect());
                b.push(int(point[c] as i64));
            }
            if let Some(l) = solve_unique(a, b) {
                if l.iter().all(|v| !v.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Every exponent vector in `[0, d]^n` with total degree at most `d`.
pub fn enumerate_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for e in 0..=d {
                let mut w = v.clone();
                w.push(e);
                if w.iter().sum::<u32>() <= d {
                    next.push(w);
                }
            }
        }
        out = next;
    }
    out
}

/// Distinct pairwise sums `α + β` over a basis.
pub fn pair_sums(basis: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for a in basis {
        for b in basis {
            out.insert(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    out
}

pub fn exponents(b: &MonomialBasis) -> Vec<Vec<u32>> {
    b.iter().map(|a| a.exponents().to_vec()).collect()
}

/// `zᵀQz` expanded term by term.
pub fn expand_gram(nvars: usize, basis: &[Vec<u32>], q: &[Vec<Coefficient>]) -> Polynomial {
    let mut acc: BTreeMap<Vec<u32>, Coefficient> = BTreeMap::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            *acc.entry(e).or_insert_with(Coefficient::zero) += &q[i][j];
        }
    }
    Polynomial::from_terms(nvars, acc.into_iter().map(|(e, c)| (DegreeVector::new(e), c)).collect::<Vec<_>>())
}

/// `Σ c cᵀ` over coefficient vectors of `fs` in the given basis; `None` if
/// some `f` uses a monomial outside it.
pub fn gram_from_factors(basis: &[Vec<u32>], fs: &[Polynomial]) -> Option<Vec<Vec<Coefficient>>> {
    let m = basis.len();
    let mut q = vec![vec![Coefficient::zero(); m]; m];
    for f in fs {
        let mut c = vec![Coefficient::zero(); m];
        for (a, v) in f.terms() {
            let i = basis.iter().position(|b| b.as_slice() == a.exponents())?;
            c[i] = v.clone();
        }
        for i in 0..m {
            for j in 0..m {
                q[i][j] += &c[i] * &c[j];
            }
        }
    }
    Some(q)
}

/// Parsed `.dat-s` contents.
#[derive(Debug, Clone, PartialEq)]
pub struct SdpaFile {
    pub comments: Vec<String>,
    pub mdim: usize,
    pub block_sizes: Vec<i64>,
    pub b: Vec<f64>,
    /// `(matno, block, i, j) -> value`
    pub entries: BTreeMap<(usize, usize, usize, usize), f64>,
}

pub fn parse_sdpa(text: &str) -> SdpaFile {
    let mut comments = Vec::new();
    let mut lines = Vec::new();
    for l in text.lines() {
        let t = l.trim();
        if t.starts_with('*') || t.starts_with('"') {
            comments.push(t.to_string());
        } else if !t.is_empty() {
            lines.push(t);
        }
    }
    let mdim: usize = lines[0].parse().expect("mDIM");
    let nblock: usize = lines[1].parse().expect("nBLOCK");
    let block_sizes: Vec<i64> = lines[2]
        .split(|c: char| c.is_whitespace() || c == ',' || c == '{' || c == '}' || c == '(' || c == ')')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().expect("block size"))
        .collect();
    assert_eq!(block_sizes.len(), nblock);
    let b: Vec<f64> = lines[3]
        .split_whitespace()
        .map(|s| s.parse().expect("b entry"))
        .collect();
    assert_eq!(b.len(), mdim);
    let mut entries = BTreeMap::new();
    for l in &lines[4..] {
        let f: Vec<&str> = l.split_whitespace().collect();
        assert_eq!(f.len(), 5, "entry line {l}");
        let key = (
            f[0].parse().unwrap(),
            f[1].parse().unwrap(),
            f[2].parse().unwrap(),
            f[3].parse().unwrap(),
        );
        let v: f64 = f[4].parse().unwrap();
        assert!(entries.insert(key, v).is_none(), "duplicate entry {l}");
    }
    SdpaFile {
        comments,
        mdim,
        block_sizes,
        b,
        entries,
    }
}

pub fn random_point<R: Rng>(rng: &mut R, dim: usize, max: u32) -> Vec<u32> {
    (0..dim).map(|_| rng.gen_range(0..=max)).collect()
}
