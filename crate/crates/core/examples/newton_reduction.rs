use std::error::Error;

use sos_prune::basis::{full_basis, heuristic_init};
use sos_prune::newton::{even_vertex_screen, hull_membership, newton_reduce, polytope_vertices, PointSet};
use sos_prune::poly::parse_polynomial;
use sos_prune::DegreeVector;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = parse_polynomial("x1^2 + x2^2 + x1^4*x2^4", None)?;
    let support = PointSet::support_of(&p);
    let vertices = polytope_vertices(&support)?;
    println!("vertices of the Newton polytope:");
    for v in vertices.points() {
        println!("  {:?}", v.exponents());
    }

    let reduced = newton_reduce(&p, &full_basis(2, 4))?;
    println!("15-monomial full basis -> {reduced}");
    assert_eq!(reduced, newton_reduce(&p, &heuristic_init(&p)?)?);

    // (2,2) = ((2,0) + (0,2) + (4,4)) / 3
    let inside = hull_membership(&DegreeVector::new(vec![2, 2]), &support)?;
    let outside = hull_membership(&DegreeVector::new(vec![4, 0]), &support)?;
    println!("(2,2) in hull: {inside}, (4,0) in hull: {outside}");

    for text in ["x1^3 + 1", "x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1", "x1*x2 + x1^2"] {
        let q = parse_polynomial(text, None)?;
        println!("screen {text}: {}", even_vertex_screen(&q)?);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
