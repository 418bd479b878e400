use std::error::Error;

use sos_prune::basis::full_basis;
use sos_prune::pipeline::{reduce, reduce_report};
use sos_prune::poly::parse_polynomial;
use sos_prune::sdp_io::{export_report_json, export_sdpa_sparse, input_digest, to_primal_form, InitKind, Method};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let text = "3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1";
    let p = parse_polynomial(text, None)?;
    let out = reduce(&p, Method::Both, InitKind::Full)?;
    assert_eq!(out.initial, full_basis(2, 2));

    let data = to_primal_form(&out.system, &[])?;
    println!("blocks {:?}, {} rows, {} columns", data.blocks, data.rows.len(), data.ncols());
    print!("{}", export_sdpa_sparse(&data));

    let report = reduce_report(input_digest(text), Method::Both, InitKind::Full, &out, 0);
    print!("{}", export_report_json(&report));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
