mod common;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{exponents, int, pair_sums, parse_sdpa};
use sos_prune::basis::{full_basis, heuristic_init};
use sos_prune::corpus::random_even_polynomial;
use sos_prune::gram::build_gram_system;
use sos_prune::pipeline::{reduce, reduce_report, simplify_report};
use sos_prune::poly::parse_polynomial;
use sos_prune::sdp_io::{
    export_report_json, export_sdpa_sparse, input_digest, parse_program_json, parse_report_json, program_to_json,
    to_primal_form, Column, InitKind, Method, PrimalSdpData,
};
use sos_prune::simplify::{build_program_system, simplify_program};
use sos_prune::zda::zda_reduce;
use sos_prune::Coefficient;

/// Checks the file against the data, entry by entry, including the split of
/// free columns into `d+` and `d-`.
fn assert_round_trip(data: &PrimalSdpData) {
    let text = export_sdpa_sparse(data);
    let f = parse_sdpa(&text);
    assert_eq!(f.mdim, data.rows.len());
    let mut sizes: Vec<i64> = data.blocks.iter().map(|&m| m as i64).collect();
    if data.nfree > 0 {
        sizes.push(-2 * data.nfree as i64);
        assert_eq!(f.comments.len(), 1);
    } else {
        assert!(f.comments.is_empty());
    }
    assert_eq!(f.block_sizes, sizes);
    let b: Vec<f64> = data.rhs.iter().map(|v| v.to_f64().unwrap()).collect();
    assert_eq!(f.b, b);

    let lp = data.blocks.len() + 1;
    let mut expected = std::collections::BTreeMap::new();
    for (k, c) in data.cost.iter().enumerate() {
        if *c != int(0) {
            expected.insert((0, lp, 2 * k + 1, 2 * k + 1), -c.to_f64().unwrap());
            expected.insert((0, lp, 2 * k + 2, 2 * k + 2), c.to_f64().unwrap());
        }
    }
    for (r, row) in data.rows.iter().enumerate() {
        for e in row {
            let v = e.value.to_f64().unwrap();
            match data.column(e.col).unwrap() {
                Column::Free(k) => {
                    expected.insert((r + 1, lp, 2 * k + 1, 2 * k + 1), v);
                    expected.insert((r + 1, lp, 2 * k + 2, 2 * k + 2), -v);
                }
                Column::Psd { block, row, col } => {
                    // symmetric halves carry the same value
                    let mirror = data.rows[r].iter().find(|x| data.column(x.col) == Some(Column::Psd { block, row: col, col: row }));
                    assert_eq!(mirror.map(|x| &x.value), Some(&e.value));
                    if row <= col {
                        expected.insert((r + 1, block + 1, row + 1, col + 1), v);
                    }
                }
            }
        }
    }
    assert_eq!(f.entries, expected);
}

#[test]
fn sdpa_round_trip_on_random_reductions() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut exported = 0;
    for _ in 0..80 {
        let n = rng.gen_range(1..=3);
        let (deg, terms) = (2 * rng.gen_range(1..=3), rng.gen_range(3..=8));
        let p = random_even_polynomial(&mut rng, n, deg, terms);
        let r = zda_reduce(build_gram_system(&p, &heuristic_init(&p).unwrap()).unwrap());
        match to_primal_form(&r.reduced_system, &[]) {
            Ok(data) => {
                let active: usize = data.rows.len();
                let sums = pair_sums(&exponents(&r.final_basis));
                // rows are the product degrees that still carry a pair
                assert_eq!(active, sums.len());
                assert_round_trip(&data);
                exported += 1;
            }
            Err(_) => assert!(r.reduced_system.contradiction().is_some()),
        }
    }
    assert!(exported > 5);
}

#[test]
fn sdpa_with_free_variables() {
    let prog = parse_program_json(
        r#"{"nvars": 1, "ndecs": 2, "cost": ["3", "-1/2"],
            "constraints": [{"parts": ["1 + x1^2", "x1^2", "1"]}]}"#,
    )
    .unwrap();
    let rep = simplify_program(build_program_system(&prog, None).unwrap());
    let data = to_primal_form(&rep.system, prog.cost()).unwrap();
    assert_eq!(data.nfree, 2);
    assert_round_trip(&data);
    let text = export_sdpa_sparse(&data);
    assert!(text.starts_with('*'));
}

#[test]
fn witness_maps_through_the_split() {
    // Q11 - d = 1 with witness Q11 = 3, d = 2 -> d+ = 2, d- = 0
    let prog = parse_program_json(r#"{"nvars": 1, "ndecs": 1, "constraints": [{"parts": ["x1^2", "x1^2"]}]}"#).unwrap();
    let rep = simplify_program(build_program_system(&prog, Some(vec![full_basis(1, 1)])).unwrap());
    let data = to_primal_form(&rep.system, prog.cost()).unwrap();
    let f = parse_sdpa(&export_sdpa_sparse(&data));
    let (q11, dplus, dminus) = (3.0, 2.0, 0.0);
    for (m, b) in f.b.iter().enumerate() {
        let lhs: f64 = f
            .entries
            .iter()
            .filter(|(k, _)| k.0 == m + 1)
            .map(|(&(_, blk, i, _), v)| {
                if blk == 1 {
                    v * q11
                } else if i == 1 {
                    v * dplus
                } else {
                    v * dminus
                }
            })
            .sum();
        assert_eq!(lhs, *b);
    }
}

#[test]
fn reports_round_trip() {
    for (text, method, init) in [
        ("3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1", Method::Both, InitKind::Full),
        ("x1^2 + x2^2 + x1^4*x2^4", Method::Newton, InitKind::Heuristic),
        ("x1*x2", Method::Zda, InitKind::Full),
        ("x1^3 + 1", Method::Both, InitKind::Heuristic),
        ("x1^2 + 1", Method::Both, InitKind::Heuristic),
    ] {
        let p = parse_polynomial(text, None).unwrap();
        let out = reduce(&p, method, init).unwrap();
        let report = reduce_report(input_digest(text), method, init, &out, 1234);
        let json = export_report_json(&report);
        assert_eq!(parse_report_json(&json).unwrap(), report, "{json}");
        assert!(report.final_size <= report.initial_size);
    }
    let sample = "3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1";
    let out = reduce(&parse_polynomial(sample, None).unwrap(), Method::Both, InitKind::Full).unwrap();
    let json = export_report_json(&reduce_report(input_digest(sample), Method::Both, InitKind::Full, &out, 0));
    assert!(json.contains("\"initial_size\": 6"));
    assert!(json.contains("\"final_size\": 4"));

    let out = reduce(&parse_polynomial("x1^2 + 1", None).unwrap(), Method::Both, InitKind::Full).unwrap();
    let json = export_report_json(&reduce_report(String::new(), Method::Both, InitKind::Full, &out, 0));
    assert!(json.contains("\"removed\": []"));

    let prog = parse_program_json(r#"{"nvars": 1, "ndecs": 1, "cost": ["0"], "constraints": [{"parts": ["x1^2", "2*x1"]}]}"#).unwrap();
    let rep = simplify_program(build_program_system(&prog, None).unwrap());
    let report = simplify_report("d".into(), &rep, 0);
    let json = export_report_json(&report);
    assert!(json.contains("\"zeroed_decision_vars\": [\n    1\n  ]"), "{json}");
    assert_eq!(parse_report_json(&json).unwrap(), report);
}

#[test]
fn report_keys_are_sorted() {
    let p = parse_polynomial("x1^2 + 1", None).unwrap();
    let out = reduce(&p, Method::Both, InitKind::Heuristic).unwrap();
    let json = export_report_json(&reduce_report(String::new(), Method::Both, InitKind::Heuristic, &out, 0));
    let top: Vec<&str> = json
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
}

#[test]
fn program_documents_round_trip() {
    let text = r#"{"nvars": 2, "ndecs": 2, "cost": ["1/3", "-2"],
        "constraints": [{"parts": ["x1^2 + x2^2", "x1*x2", "0"]}, {"parts": ["1", "0", "x2^2"]}]}"#;
    let prog = parse_program_json(text).unwrap();
    assert_eq!(parse_program_json(&program_to_json(&prog)).unwrap(), prog);
    assert_eq!(prog.cost()[0], Coefficient::new(1.into(), 3.into()));
}
