//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a sparse map from [`DegreeVector`] to a nonzero
//! [`Coefficient`]. The map is ordered by the monomial order used for Gram
//! bases (see [`DegreeVector`]'s `Ord`), so iterating a polynomial's terms
//! walks its support in basis order.
//!
//! Text form (variables are `x1 … xn`, whitespace is ignored):
//!
//! ```text
//! poly    := ['-'] term (('+'|'-') term)*
//! term    := coeff ('*' varpow)* | varpow ('*' varpow)*
//! varpow  := 'x' INT ['^' INT]
//! coeff   := INT | INT '/' INT | DECIMAL
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient, always kept in lowest terms with a positive
/// denominator.
pub type Coefficient = BigRational;

/// Exponent vector `α` of the monomial `x^α`.
///
/// Ordering: lower total degree first; among equal degrees, `α` precedes `β`
/// when the first nonzero entry of `α − β` is positive. For two variables and
/// degree ≤ 2 this gives `1, x1, x2, x1^2, x1*x2, x2^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeVector(Vec<u32>);

impl DegreeVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        DegreeVector(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        DegreeVector(vec![0; nvars])
    }

    /// The exponent vector of `x_{var+1}` (0-based `var`).
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        DegreeVector(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|&e| e % 2 == 0)
    }

    /// Exponent-wise sum, i.e. the degree vector of the product monomial.
    pub fn add(&self, other: &DegreeVector) -> DegreeVector {
        debug_assert_eq!(self.0.len(), other.0.len());
        DegreeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn doubled(&self) -> DegreeVector {
        DegreeVector(self.0.iter().map(|e| 2 * e).collect())
    }

    /// Standard graded-lex comparison (`x1 > x2 > …`), used for printing.
    pub fn cmp_grlex(&self, other: &DegreeVector) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Ord for DegreeVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for DegreeVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for DegreeVector {
    fn from(v: Vec<u32>) -> Self {
        DegreeVector(v)
    }
}

impl fmt::Display for DegreeVector {
    /// Monomial text, e.g. `x1^2*x3`; the constant monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with exact rational coefficients. No stored
/// coefficient is ever zero, so the key set is exactly the support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<DegreeVector, Coefficient>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Coefficient) -> Self {
        Self::from_terms(nvars, [(DegreeVector::zero(nvars), c)])
    }

    /// The polynomial `x_{var+1}` (0-based `var`).
    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::from_terms(nvars, [(DegreeVector::unit(nvars, var), Coefficient::one())])
    }

    /// Builds a polynomial, merging like terms and dropping zeros.
    ///
    /// Panics if a degree vector has the wrong length.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (DegreeVector, Coefficient)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (alpha, c) in terms {
            assert_eq!(alpha.nvars(), nvars, "degree vector length mismatch");
            p.add_term(alpha, c);
        }
        p
    }

    fn add_term(&mut self, alpha: DegreeVector, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&DegreeVector, &Coefficient)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &DegreeVector> {
        self.terms.keys()
    }

    pub fn coefficient(&self, alpha: &DegreeVector) -> Option<&Coefficient> {
        self.terms.get(alpha)
    }

    /// Maximum total degree over the support; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(DegreeVector::total_degree).max().unwrap_or(0)
    }

    /// Minimum total degree over the support; 0 for the zero polynomial.
    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(DegreeVector::total_degree).min().unwrap_or(0)
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_nvars(self, other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&-other)
    }

    /// Exact product.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        check_nvars(self, other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Coefficient]) -> Result<Coefficient> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Coefficient::zero();
        for (alpha, c) in &self.terms {
            let mut m = c.clone();
            for (x, &e) in point.iter().zip(alpha.exponents()) {
                m *= num_traits::pow(x.clone(), e as usize);
            }
            acc += m;
        }
        Ok(acc)
    }
}

fn check_nvars(p: &Polynomial, q: &Polynomial) -> Result<()> {
    if p.nvars != q.nvars {
        return Err(Error::DimensionMismatch {
            expected: p.nvars,
            got: q.nvars,
        });
    }
    Ok(())
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched `nvars`; use [`Polynomial::checked_add`] otherwise.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("nvars mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("nvars mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs).expect("nvars mismatch")
    }
}

/// Returns `Σ f_i²`.
pub fn sum_of_squares(fs: &[Polynomial]) -> Result<Polynomial> {
    let first = fs.first().ok_or(Error::EmptyList)?;
    let mut acc = Polynomial::zero(first.nvars);
    for f in fs {
        check_nvars(first, f)?;
        acc = acc.checked_add(&f.multiply(f)?)?;
    }
    Ok(acc)
}

pub fn multiply(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.multiply(q)
}

pub fn degree(p: &Polynomial) -> u32 {
    p.degree()
}

// ---------------------------------------------------------------------------
// Formatting

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &Coefficient) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: terms in descending graded-lex order, unit
    /// coefficients omitted on non-constant terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp_grlex(a.0));
        for (k, (alpha, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if alpha.is_constant() {
                write_coefficient(f, &abs)?;
            } else if abs.is_one() {
                write!(f, "{alpha}")?;
            } else {
                write_coefficient(f, &abs)?;
                write!(f, "*{alpha}")?;
            }
        }
        Ok(())
    }
}

pub fn format_polynomial(p: &Polynomial) -> String {
    p.to_string()
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        // ASCII digits only
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_int(&mut self) -> Result<usize> {
        let start = self.pos;
        let s = self.digits()?;
        s.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("integer '{s}' too large"),
        })
    }

    fn coeff(&mut self) -> Result<Coefficient> {
        let int = self.digits()?;
        let numer: BigInt = int.parse().unwrap();
        // decimal: digits directly after the point
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected digits after decimal point");
            }
            let frac = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac_val: BigInt = frac.parse().unwrap();
            return Ok(BigRational::new(numer * &scale + frac_val, scale));
        }
        if self.eat(b'/') {
            let at = self.pos;
            let den: BigInt = self.digits()?.parse().unwrap();
            if den.is_zero() {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "zero denominator".into(),
                });
            }
            return Ok(BigRational::new(numer, den));
        }
        Ok(BigRational::from_integer(numer))
    }

    fn varpow(&mut self, exps: &mut Vec<u32>) -> Result<()> {
        if !self.eat(b'x') {
            return self.err("expected variable 'x<index>'");
        }
        let at = self.pos;
        let idx = self.small_int()?;
        if idx == 0 {
            return Err(Error::Syntax {
                pos: at,
                msg: "variable index must be >= 1".into(),
            });
        }
        let mut e = 1u32;
        if self.eat(b'^') {
            let at = self.pos;
            let v = self.small_int()?;
            if v == 0 {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "exponent must be >= 1".into(),
                });
            }
            e = u32::try_from(v).map_err(|_| Error::Syntax {
                pos: at,
                msg: "exponent too large".into(),
            })?;
        }
        if exps.len() < idx {
            exps.resize(idx, 0);
        }
        exps[idx - 1] += e;
        Ok(())
    }

    fn term(&mut self) -> Result<(Coefficient, Vec<u32>)> {
        let mut exps = Vec::new();
        let c = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = self.coeff()?;
                while self.eat(b'*') {
                    self.varpow(&mut exps)?;
                }
                c
            }
            Some(b'x') => {
                self.varpow(&mut exps)?;
                while self.eat(b'*') {
                    self.varpow(&mut exps)?;
                }
                Coefficient::one()
            }
            Some(_) => return self.err("expected a coefficient or a variable"),
            None => return self.err("unexpected end of input"),
        };
        Ok((c, exps))
    }
}

/// Parses polynomial text. `nvars`, when given, fixes the ambient variable
/// count; otherwise it is the largest variable index seen (at least 1).
pub fn parse_polynomial(text: &str, nvars: Option<usize>) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return Err(Error::EmptyInput);
    }
    let mut raw: Vec<(Coefficient, Vec<u32>)> = Vec::new();
    let mut negate = false;
    if p.eat(b'-') {
        negate = true;
    } else {
        p.eat(b'+');
    }
    loop {
        let (c, e) = p.term()?;
        raw.push((if negate { -c } else { c }, e));
        match p.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => return p.err("expected '+', '-' or end of input"),
        }
        p.pos += 1;
    }

    let seen = raw.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let n = match nvars {
        Some(n) => {
            if seen > n {
                return Err(Error::VariableIndex { index: seen, nvars: n });
            }
            n
        }
        None => seen.max(1),
    };
    Ok(Polynomial::from_terms(
        n,
        raw.into_iter().map(|(c, mut e)| {
            e.resize(n, 0);
            (DegreeVector::new(e), c)
        }),
    ))
}

impl std::str::FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s, None)
    }
}

/// Parses a single monomial such as `x1^2*x2` or `1`.
pub fn parse_monomial(text: &str, nvars: usize) -> Result<DegreeVector> {
    let p = parse_polynomial(text, Some(nvars))?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((alpha, c)), None) if c.is_one() => Ok(alpha.clone()),
        _ => Err(Error::Syntax {
            pos: 0,
            msg: format!("'{text}' is not a monic monomial"),
        }),
    }
}

/// Parses a rational literal: `INT`, `INT/INT`, or a decimal, with an
/// optional leading sign.
pub fn parse_rational(text: &str) -> Result<Coefficient> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let mut p = Parser {
        src: body.as_bytes(),
        pos: 0,
    };
    let c = p.coeff()?;
    if p.peek().is_some() {
        return p.err("trailing characters after rational");
    }
    Ok(if neg { -c } else { c })
}
