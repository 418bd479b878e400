use std::error::Error;

use sos_prune::ratlp::{lp_feasible, LpFeasibilityProblem};
use sos_prune::Coefficient;

fn q(n: i64, d: i64) -> Coefficient {
    Coefficient::new(n.into(), d.into())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // x + y + z = 1, x - y = 0, z = 0
    let mut lp = LpFeasibilityProblem::new(3);
    lp.add_row([(0, q(1, 1)), (1, q(1, 1)), (2, q(1, 1))], q(1, 1))?;
    lp.add_row([(0, q(1, 1)), (1, q(-1, 1))], q(0, 1))?;
    lp.add_row([(2, q(1, 1))], q(0, 1))?;
    let out = lp_feasible(&lp);
    println!("feasible: {}, {} pivots", out.is_feasible(), out.pivots);
    if let Some(x) = out.witness() {
        let xs: Vec<String> = x.iter().map(ToString::to_string).collect();
        println!("witness: ({})", xs.join(", "));
    }

    // x + y = 1 and x + y = 2 cannot both hold
    let mut lp = LpFeasibilityProblem::new(2);
    lp.add_row([(0, q(1, 1)), (1, q(1, 1))], q(1, 1))?;
    lp.add_row([(0, q(1, 1)), (1, q(1, 1))], q(2, 1))?;
    println!("second system feasible: {}", lp_feasible(&lp).is_feasible());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
