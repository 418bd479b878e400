macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(parse_and_format, "parse_and_format.rs", parse_and_format_runs);
example!(monomial_bases, "monomial_bases.rs", monomial_bases_runs);
example!(gram_witness, "gram_witness.rs", gram_witness_runs);
example!(newton_reduction, "newton_reduction.rs", newton_reduction_runs);
example!(zero_diagonal, "zero_diagonal.rs", zero_diagonal_runs);
example!(simplify_program, "simplify_program.rs", simplify_program_runs);
example!(export_sdpa, "export_sdpa.rs", export_sdpa_runs);
example!(exact_lp, "exact_lp.rs", exact_lp_runs);
example!(random_bench, "random_bench.rs", random_bench_runs);
