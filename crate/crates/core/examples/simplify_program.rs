use std::error::Error;

use sos_prune::sdp_io::parse_program_json;
use sos_prune::simplify::{build_program_system, simplify_program};

const PROGRAM: &str = r#"{
  "nvars": 1,
  "ndecs": 2,
  "cost": ["1", "-1"],
  "constraints": [
    { "parts": ["x1^2", "2*x1", "0"] },
    { "parts": ["1 + x1^2", "x1^2", "-x1^2"] }
  ]
}"#;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let prog = parse_program_json(PROGRAM)?;
    let sys = build_program_system(&prog, None)?;
    println!("{} slots, {} equations", sys.slot_count(), sys.equations().len());

    let rep = simplify_program(sys);
    println!("status: {:?} after {} iterations", rep.status, rep.iterations);
    println!("decision variables forced to zero: {:?}", rep.zeroed);
    for (j, s) in rep.decision_signs.iter().enumerate() {
        println!("  d{}: {s}", j + 1);
    }
    for (k, c) in rep.constraints.iter().enumerate() {
        println!("constraint {}: {} -> {}", k + 1, c.initial_basis, c.final_basis);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
