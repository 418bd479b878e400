//! Seeded random polynomials for benchmarks and property suites.

use rand::seq::index::sample;
use rand::Rng;

use crate::basis::full_basis;
use crate::poly::{Coefficient, DegreeVector, Polynomial};

fn coefficient<R: Rng>(rng: &mut R) -> Coefficient {
    // uniform over {-9..9} \ {0}
    let v: i64 = rng.gen_range(1..=18);
    let v = if v > 9 { 9 - v } else { v };
    Coefficient::from_integer(v.into())
}

/// `terms` distinct monomials of degree at most `degree`, chosen uniformly,
/// each with a coefficient from `{-9..9} \ {0}`.
pub fn random_polynomial<R: Rng>(rng: &mut R, nvars: usize, degree: u32, terms: usize) -> Polynomial {
    let pool = full_basis(nvars, degree);
    let k = terms.min(pool.len());
    let picks = sample(rng, pool.len(), k);
    Polynomial::from_terms(
        nvars,
        picks.into_iter().map(|i| (pool.entries()[i].clone(), coefficient(rng))).collect::<Vec<_>>(),
    )
}

/// A polynomial of even degree (`degree` rounded down to even) with a term
/// `x_i^degree`, which is an even vertex of the Newton polytope. The other
/// `terms - 1` monomials are uniform over degree at most `degree`.
pub fn random_even_polynomial<R: Rng>(rng: &mut R, nvars: usize, degree: u32, terms: usize) -> Polynomial {
    let d = degree & !1;
    let var = rng.gen_range(0..nvars);
    let mut lead = vec![0; nvars];
    lead[var] = d;
    let lead = DegreeVector::new(lead);

    let pool: Vec<DegreeVector> = full_basis(nvars, d).entries().iter().filter(|a| **a != lead).cloned().collect();
    let k = terms.saturating_sub(1).min(pool.len());
    let mut out: Vec<(DegreeVector, Coefficient)> = vec![(lead, coefficient(rng))];
    for i in sample(rng, pool.len(), k) {
        out.push((pool[i].clone(), coefficient(rng)));
    }
    Polynomial::from_terms(nvars, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn even_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = random_even_polynomial(&mut rng, 3, 7, 10);
            assert_eq!(p.degree(), 6);
            assert_eq!(p.num_terms(), 10);
        }
    }

    #[test]
    fn deterministic() {
        let a = random_polynomial(&mut ChaCha8Rng::seed_from_u64(9), 2, 3, 4);
        let b = random_polynomial(&mut ChaCha8Rng::seed_from_u64(9), 2, 3, 4);
        assert_eq!(a, b);
        assert_eq!(a.num_terms(), 4);
    }
}
