use std::error::Error;

use sos_prune::pipeline::{run_bench, BenchParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let report = run_bench(BenchParams {
        nvars: 3,
        degree: 6,
        terms: 10,
        count: 20,
        seed: 7,
    })?;
    println!("{:>3} {:>7} {:>6} {:>4} {:>10} {:>8}", "#", "initial", "newton", "zda", "newton_us", "zda_us");
    for r in &report.rows {
        println!(
            "{:>3} {:>7} {:>6} {:>4} {:>10} {:>8}",
            r.index, r.initial_size, r.newton_size, r.zda_size, r.newton_us, r.zda_us
        );
    }
    let newton: u64 = report.rows.iter().map(|r| r.newton_us).sum();
    let zda: u64 = report.rows.iter().map(|r| r.zda_us).sum();
    println!("total: newton {newton} us, zda {zda} us");
    println!("containment violations: {}", report.containment_violations);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
