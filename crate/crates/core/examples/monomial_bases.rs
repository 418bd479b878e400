use std::error::Error;

use sos_prune::basis::{count_monomials, full_basis, heuristic_init};
use sos_prune::poly::parse_polynomial;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (n, d) in [(2, 2), (2, 4), (3, 3), (6, 5)] {
        println!("monomials in {n} variables up to degree {d}: {}", count_monomials(n, d));
    }
    println!("full_basis(2, 2) = {}", full_basis(2, 2));

    let p = parse_polynomial("3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1", None)?;
    let m0 = heuristic_init(&p)?;
    println!("heuristic basis for {p}:\n  {m0}");
    assert!(m0.is_subset_of(&full_basis(2, 2)));

    let sparse = parse_polynomial("x1^2 + x2^2 + x1^4*x2^4", None)?;
    println!(
        "x1^2 + x2^2 + x1^4*x2^4: full basis {} monomials, heuristic {}",
        full_basis(2, 4).len(),
        heuristic_init(&sparse)?.len()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
