use std::error::Error;

use sos_prune::basis::MonomialBasis;
use sos_prune::gram::{build_gram_system, evaluate_gram, GramMatrix};
use sos_prune::poly::parse_polynomial;
use sos_prune::Coefficient;

fn int(v: i64) -> Coefficient {
    Coefficient::from_integer(v.into())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = parse_polynomial("3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1", None)?;
    let z = MonomialBasis::parse("1, x1, x2, x1^2", 2)?;
    let rows = [[1, 0, 0, 0], [0, 7, -2, 0], [0, -2, 4, -1], [0, 0, -1, 3]];
    let q = GramMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())?;

    let back = evaluate_gram(&z, &q)?;
    println!("z^T Q z = {back}");
    assert_eq!(back, p);
    println!("Q is PSD: {}", q.is_psd());

    let sys = build_gram_system(&p, &z)?;
    println!("{} coefficient equations over {}", sys.equations().len(), z);
    for eq in sys.equations() {
        let lhs: Vec<String> = eq
            .entries
            .iter()
            .map(|e| format!("{}*Q[{},{}]", e.multiplicity, e.i + 1, e.j + 1))
            .collect();
        println!("  {:>10}: {} = {}", eq.product_degree.to_string(), lhs.join(" + "), eq.rhs);
    }
    println!("witness satisfies the system: {}", sys.is_satisfied_by(&q)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
