use std::error::Error;

use sos_prune::poly::{parse_polynomial, sum_of_squares, Polynomial};
use sos_prune::Coefficient;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = parse_polynomial("1 + 7*x1^2 + 4*x2^2 - 4*x1*x2 - 2*x1^2*x2 + 3*x1^4", None)?;
    println!("canonical: {p}");
    println!("terms = {}, degree = {}", p.num_terms(), p.degree());
    assert_eq!(p.to_string(), "3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1");

    // decimals are read exactly
    let q = parse_polynomial("0.25*x1 - 1/3", None)?;
    println!("exact decimals: {q}");

    let f: Polynomial = "x1 - x2".parse()?;
    let g: Polynomial = "x1*x2 + 1".parse()?;
    let s = sum_of_squares(&[f, g])?;
    println!("(x1 - x2)^2 + (x1*x2 + 1)^2 = {s}");

    let half = Coefficient::new(1.into(), 2.into());
    let v = s.evaluate(&[half.clone(), -half])?;
    println!("value at (1/2, -1/2): {v}");

    if let Err(e) = parse_polynomial("x1^^2", None) {
        println!("rejected: {e}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
