//! Newton polytope pruning.
//!
//! `C(p)` is the convex hull of the support of `p`. A monomial `x^α` can
//! appear in an SOS decomposition of `p` only if `α ∈ ½C(p)`, i.e.
//! `2α ∈ C(p)`. Membership is decided per point with an exact LP over
//! barycentric weights; no facet description of the hull is ever built.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::basis::MonomialBasis;
use crate::error::{Error, Result};
use crate::poly::{Coefficient, DegreeVector, Polynomial};
use crate::ratlp::{lp_feasible, LpFeasibilityProblem};

/// Generators of a polytope; duplicates removed, order preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    nvars: usize,
    points: Vec<DegreeVector>,
}

impl PointSet {
    pub fn new(nvars: usize, points: impl IntoIterator<Item = DegreeVector>) -> Result<Self> {
        let mut out: Vec<DegreeVector> = Vec::new();
        for p in points {
            if p.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: p.nvars(),
                });
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(PointSet { nvars, points: out })
    }

    /// The support of `p`.
    pub fn support_of(p: &Polynomial) -> Self {
        PointSet {
            nvars: p.nvars(),
            points: p.support().cloned().collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn points(&self) -> &[DegreeVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Whether `point ∈ ch(generators)`: feasibility of
/// `{λ ≥ 0, Σλ_j = 1, Σλ_j·g_j = point}`.
pub fn hull_membership(point: &DegreeVector, generators: &PointSet) -> Result<bool> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if point.nvars() != generators.nvars {
        return Err(Error::DimensionMismatch {
            expected: generators.nvars,
            got: point.nvars(),
        });
    }
    let gens = generators.points();
    if gens.contains(point) {
        return Ok(true);
    }
    // bounding box
    for k in 0..point.nvars() {
        let (lo, hi) = gens
            .iter()
            .map(|g| g.exponents()[k])
            .fold((u32::MAX, 0), |(lo, hi), e| (lo.min(e), hi.max(e)));
        let e = point.exponents()[k];
        if e < lo || e > hi {
            return Ok(false);
        }
    }

    let mut lp = LpFeasibilityProblem::new(gens.len());
    lp.add_row((0..gens.len()).map(|j| (j, Coefficient::one())), Coefficient::one())?;
    for k in 0..point.nvars() {
        lp.add_row(
            gens.iter()
                .enumerate()
                .map(|(j, g)| (j, Coefficient::from_integer(g.exponents()[k].into()))),
            Coefficient::from_integer(point.exponents()[k].into()),
        )?;
    }
    Ok(lp_feasible(&lp).is_feasible())
}

fn check_reducible(p: &Polynomial) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.degree();
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    Ok(())
}

/// `{α ∈ M₀ : 2α ∈ C(p)}`, in basis order.
pub fn newton_reduce(p: &Polynomial, m0: &MonomialBasis) -> Result<MonomialBasis> {
    check_reducible(p)?;
    if p.nvars() != m0.nvars() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars(),
            got: m0.nvars(),
        });
    }
    let support = PointSet::support_of(p);
    let mut keep = Vec::with_capacity(m0.len());
    for alpha in m0 {
        if hull_membership(&alpha.doubled(), &support)? {
            keep.push(alpha.clone());
        }
    }
    Ok(MonomialBasis::new(m0.nvars(), keep))
}

/// Vertices of `ch(points)`: the points not in the hull of the others.
pub fn polytope_vertices(points: &PointSet) -> Result<PointSet> {
    if points.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if points.len() == 1 {
        return Ok(points.clone());
    }
    let mut vertices = Vec::new();
    for (i, pt) in points.points.iter().enumerate() {
        let others = PointSet {
            nvars: points.nvars,
            points: points
                .points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect(),
        };
        if !hull_membership(pt, &others)? {
            vertices.push(pt.clone());
        }
    }
    Ok(PointSet {
        nvars: points.nvars,
        points: vertices,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotSosReason {
    OddDegree { degree: u32 },
    OddVertex { vertex: Vec<u32> },
}

impl fmt::Display for NotSosReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotSosReason::OddDegree { degree } => write!(f, "OddDegree({degree})"),
            NotSosReason::OddVertex { vertex } => write!(f, "OddVertex({vertex:?})"),
        }
    }
}

/// Outcome of the necessary-condition screen. `Pass` does not imply SOS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ScreenResult {
    Pass,
    NotSos(NotSosReason),
}

impl ScreenResult {
    pub fn passed(&self) -> bool {
        matches!(self, ScreenResult::Pass)
    }
}

impl fmt::Display for ScreenResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScreenResult::Pass => f.write_str("Pass"),
            ScreenResult::NotSos(r) => write!(f, "NotSos({r})"),
        }
    }
}

/// Rejects `p` if its degree is odd or some vertex of `C(p)` has an odd entry.
pub fn even_vertex_screen(p: &Polynomial) -> Result<ScreenResult> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.degree();
    if d % 2 == 1 {
        return Ok(ScreenResult::NotSos(NotSosReason::OddDegree { degree: d }));
    }
    let vertices = polytope_vertices(&PointSet::support_of(p))?;
    if let Some(v) = vertices.points().iter().find(|v| !v.is_even()) {
        return Ok(ScreenResult::NotSos(NotSosReason::OddVertex {
            vertex: v.exponents().to_vec(),
        }));
    }
    Ok(ScreenResult::Pass)
}

/// Plotting data for a polynomial's Newton polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolytopeSummary {
    pub generators: Vec<Vec<u32>>,
    pub vertices: Vec<Vec<u32>>,
    #[serde(serialize_with = "half_vertices_ser")]
    pub half_vertices: Vec<Vec<Coefficient>>,
    pub candidate_basis: Vec<Vec<u32>>,
    pub reduced_basis: Vec<Vec<u32>>,
}

fn half_vertices_ser<S: serde::Serializer>(v: &[Vec<Coefficient>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|row| row.iter().map(crate::sdp_io::rational_str::to_string).collect::<Vec<_>>()))
}

/// Generators, vertices, and the basis pruned from `m0`.
pub fn polytope_summary(p: &Polynomial, m0: &MonomialBasis) -> Result<PolytopeSummary> {
    let support = PointSet::support_of(p);
    let vertices = polytope_vertices(&support)?;
    let reduced = newton_reduce(p, m0)?;
    let half = Coefficient::new(1.into(), 2.into());
    let to_vecs = |it: &mut dyn Iterator<Item = &DegreeVector>| -> Vec<Vec<u32>> {
        it.map(|a| a.exponents().to_vec()).collect()
    };
    Ok(PolytopeSummary {
        generators: to_vecs(&mut support.points().iter()),
        vertices: to_vecs(&mut vertices.points().iter()),
        half_vertices: vertices
            .points()
            .iter()
            .map(|v| {
                v.exponents()
                    .iter()
                    .map(|&e| Coefficient::from_integer(e.into()) * &half)
                    .collect()
            })
            .collect(),
        candidate_basis: to_vecs(&mut m0.iter()),
        reduced_basis: to_vecs(&mut reduced.iter()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::full_basis;
    use crate::poly::parse_polynomial;

    fn dv(e: &[u32]) -> DegreeVector {
        DegreeVector::new(e.to_vec())
    }

    fn ps(pts: &[&[u32]]) -> PointSet {
        PointSet::new(pts[0].len(), pts.iter().map(|p| dv(p))).unwrap()
    }

    const SAMPLE: &str = "3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1";

    #[test]
    fn membership_examples() {
        let gens = ps(&[&[4, 0], &[2, 1], &[2, 0], &[1, 1], &[0, 2], &[0, 0]]);
        assert!(hull_membership(&dv(&[2, 0]), &gens).unwrap());
        assert!(hull_membership(&dv(&[2, 1]), &gens).unwrap());
        let tri = ps(&[&[4, 0], &[0, 0], &[0, 2]]);
        assert!(!hull_membership(&dv(&[2, 2]), &tri).unwrap());
        assert!(hull_membership(&dv(&[2, 1]), &tri).unwrap());
        assert!(hull_membership(&dv(&[0, 2]), &tri).unwrap());
    }

    #[test]
    fn membership_errors() {
        let empty = PointSet::new(2, []).unwrap();
        assert_eq!(hull_membership(&dv(&[0, 0]), &empty), Err(Error::EmptyGenerators));
        assert!(hull_membership(&dv(&[0]), &ps(&[&[1, 1]])).is_err());
    }

    #[test]
    fn reduce_known_examples() {
        let p = parse_polynomial(SAMPLE, None).unwrap();
        assert_eq!(newton_reduce(&p, &full_basis(2, 2)).unwrap().names(), ["1", "x1", "x2", "x1^2"]);
        let p = parse_polynomial("x1^2 + x2^2 + x1^4*x2^4", None).unwrap();
        assert_eq!(
            newton_reduce(&p, &full_basis(2, 4)).unwrap().names(),
            ["x1", "x2", "x1*x2", "x1^2*x2^2"]
        );
        let p = parse_polynomial("1", Some(2)).unwrap();
        assert_eq!(newton_reduce(&p, &full_basis(2, 0)).unwrap().names(), ["1"]);
    }

    #[test]
    fn reduce_errors() {
        let p = parse_polynomial("x1^3", None).unwrap();
        assert_eq!(newton_reduce(&p, &full_basis(1, 1)), Err(Error::OddDegree(3)));
        assert_eq!(newton_reduce(&Polynomial::zero(1), &full_basis(1, 1)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn vertices() {
        let p = parse_polynomial(SAMPLE, None).unwrap();
        let v = polytope_vertices(&PointSet::support_of(&p)).unwrap();
        let mut got: Vec<_> = v.points().iter().map(|a| a.exponents().to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 0], vec![0, 2], vec![4, 0]]);
        assert_eq!(polytope_vertices(&ps(&[&[3, 1]])).unwrap().len(), 1);
        let v = polytope_vertices(&ps(&[&[0, 0], &[1, 0], &[2, 0]])).unwrap();
        assert_eq!(v.points(), &[dv(&[0, 0]), dv(&[2, 0])]);
    }

    #[test]
    fn screen() {
        let p = parse_polynomial("x1^3 + 1", None).unwrap();
        assert_eq!(
            even_vertex_screen(&p).unwrap(),
            ScreenResult::NotSos(NotSosReason::OddDegree { degree: 3 })
        );
        let motzkin = parse_polynomial("x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1", None).unwrap();
        assert_eq!(even_vertex_screen(&motzkin).unwrap(), ScreenResult::Pass);
        let p = parse_polynomial("x1^2 + x1", None).unwrap();
        assert_eq!(
            even_vertex_screen(&p).unwrap(),
            ScreenResult::NotSos(NotSosReason::OddVertex { vertex: vec![1] })
        );
        assert_eq!(even_vertex_screen(&Polynomial::zero(1)), Err(Error::ZeroPolynomial));
        assert!(even_vertex_screen(&parse_polynomial(SAMPLE, None).unwrap()).unwrap().passed());
    }
}
