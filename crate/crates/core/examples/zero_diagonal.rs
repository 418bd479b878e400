use std::error::Error;

use sos_prune::basis::full_basis;
use sos_prune::newton::newton_reduce;
use sos_prune::poly::parse_polynomial;
use sos_prune::zda::{zda_reduce_polynomial, ZdaStatus};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = parse_polynomial("3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1", None)?;
    let r = zda_reduce_polynomial(&p, &full_basis(2, 2))?;
    for (sweep, m) in &r.removed {
        println!("sweep {sweep}: removed {m}");
    }
    println!("final basis {} after {} sweeps", r.final_basis, r.sweeps);

    let q = parse_polynomial("x1^2 + x2^2 + x1^4*x2^4", None)?;
    let m0 = full_basis(2, 4);
    let newton = newton_reduce(&q, &m0)?;
    let zda = zda_reduce_polynomial(&q, &m0)?;
    println!("newton: {newton}");
    println!("zda:    {}", zda.final_basis);
    assert!(zda.final_basis.is_subset_of(&newton));

    let bad = parse_polynomial("x1*x2", None)?;
    let r = zda_reduce_polynomial(&bad, &full_basis(2, 1))?;
    if let ZdaStatus::Infeasible { certificate } = &r.status {
        println!("x1*x2 is not SOS: {certificate}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
