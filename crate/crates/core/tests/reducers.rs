mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{caratheodory_member, expand_gram, exponents, int};
use sos_prune::basis::{full_basis, heuristic_init, MonomialBasis};
use sos_prune::corpus::{random_even_polynomial, random_polynomial};
use sos_prune::gram::build_gram_system;
use sos_prune::newton::{even_vertex_screen, newton_reduce, polytope_vertices, PointSet, ScreenResult};
use sos_prune::poly::{parse_polynomial, sum_of_squares};
use sos_prune::simplify::{
    build_program_system, simplify_program, AffineSosConstraint, SignMark, Slot, SosProgram,
};
use sos_prune::zda::{zda_reduce, ZdaStatus};
use sos_prune::{Coefficient, DegreeVector, Polynomial};

fn poly(s: &str) -> Polynomial {
    parse_polynomial(s, None).unwrap()
}

#[test]
fn vertices_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..150 {
        let dim = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=7);
        let pts: Vec<Vec<u32>> = (0..k).map(|_| common::random_point(&mut rng, dim, 6)).collect();
        let set = PointSet::new(dim, pts.iter().map(|p| DegreeVector::new(p.clone()))).unwrap();
        let verts = polytope_vertices(&set).unwrap();
        let distinct: Vec<Vec<u32>> = set.points().iter().map(|p| p.exponents().to_vec()).collect();
        for (i, p) in distinct.iter().enumerate() {
            let others: Vec<Vec<u32>> = distinct.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
            let is_vertex = others.is_empty() || !caratheodory_member(p, &others);
            assert_eq!(verts.points().contains(&DegreeVector::new(p.clone())), is_vertex, "{p:?} in {distinct:?}");
        }
    }
}

#[test]
fn newton_is_idempotent_and_keeps_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let fs: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let (d, t) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
                random_polynomial(&mut rng, n, d, t)
            })
            .collect();
        let p = sum_of_squares(&fs).unwrap();
        let m0 = full_basis(n, p.degree() / 2);
        let once = newton_reduce(&p, &m0).unwrap();
        assert_eq!(newton_reduce(&p, &once).unwrap(), once);
        for f in &fs {
            for a in f.support() {
                assert!(once.contains(a), "{a} of {f} dropped");
            }
        }
        assert!(even_vertex_screen(&p).unwrap().passed());
    }
}

#[test]
fn screen_examples() {
    assert!(matches!(even_vertex_screen(&poly("x1^3 + 1")).unwrap(), ScreenResult::NotSos(_)));
    let motzkin = poly("x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1");
    assert_eq!(even_vertex_screen(&motzkin).unwrap(), ScreenResult::Pass);
    assert_eq!(
        even_vertex_screen(&poly("3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1")).unwrap(),
        ScreenResult::Pass
    );
    assert!(!even_vertex_screen(&poly("x1^2*x2 + x1^4 + x2^4 + x1^3*x2")).unwrap().passed());
}

#[test]
fn zda_invariants_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for case in 0..120 {
        let n = rng.gen_range(1..=3);
        let (deg, terms) = (2 * rng.gen_range(1..=3), rng.gen_range(3..=10));
        let p = random_even_polynomial(&mut rng, n, deg, terms);
        let full = full_basis(n, p.degree() / 2);
        let heur = heuristic_init(&p).unwrap();

        let a = zda_reduce(build_gram_system(&p, &full).unwrap());
        let b = zda_reduce(build_gram_system(&p, &heur).unwrap());
        assert_eq!(a.final_basis, b.final_basis, "case {case}: {p}: init changes the result");
        assert_eq!(a.is_reduced(), b.is_reduced());

        assert!(a.sweeps <= full.len() + 1, "case {case}: {} sweeps", a.sweeps);
        let removed: Vec<DegreeVector> = a.removed.iter().map(|(_, m)| m.clone()).collect();
        let rebuilt = MonomialBasis::new(n, a.final_basis.iter().cloned().chain(removed.iter().cloned()).collect());
        assert_eq!(rebuilt, full);
        assert_eq!(a.final_basis.len() + removed.len(), full.len());
        assert!(a.removed.windows(2).all(|w| w[0].0 <= w[1].0));

        let again = zda_reduce(a.reduced_system.clone());
        assert!(again.removed.is_empty());
        assert_eq!(again.final_basis, a.final_basis);
        assert_eq!(again.sweeps, 1);
    }
}

#[test]
fn zda_keeps_factor_monomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let fs: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let (d, t) = (rng.gen_range(1..=2), rng.gen_range(1..=4));
                random_polynomial(&mut rng, n, d, t)
            })
            .collect();
        let p = sum_of_squares(&fs).unwrap();
        let r = zda_reduce(build_gram_system(&p, &full_basis(n, p.degree() / 2)).unwrap());
        assert_eq!(r.status, ZdaStatus::Reduced);
        for f in &fs {
            assert!(f.support().all(|a| r.final_basis.contains(a)));
        }
    }
}

/// Builds a feasible program from a hidden witness `(Q_k, d*)`, with some
/// zero rows in each `Q_k` and some zero decision values.
fn witness_program(rng: &mut ChaCha8Rng) -> (SosProgram, Vec<MonomialBasis>, Vec<Vec<Vec<Coefficient>>>, Vec<Coefficient>) {
    let n = rng.gen_range(1..=2);
    let ndecs = rng.gen_range(0..=3);
    let ncons = rng.gen_range(1..=2);
    let dstar: Vec<Coefficient> = (0..ndecs)
        .map(|_| if rng.gen_bool(0.4) { int(0) } else { int(rng.gen_range(-3..=3)) })
        .collect();
    let mut bases = Vec::new();
    let mut grams = Vec::new();
    let mut constraints = Vec::new();
    for _ in 0..ncons {
        let z = full_basis(n, rng.gen_range(1..=2));
        let m = z.len();
        let rank = rng.gen_range(1..=m);
        let a: Vec<Vec<i64>> = (0..m)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    vec![0; rank]
                } else {
                    (0..rank).map(|_| rng.gen_range(-2..=2)).collect()
                }
            })
            .collect();
        let q: Vec<Vec<Coefficient>> = (0..m)
            .map(|i| (0..m).map(|j| int((0..rank).map(|k| a[i][k] * a[j][k]).sum())).collect())
            .collect();
        let sos = expand_gram(n, &exponents(&z), &q);
        let parts_d: Vec<Polynomial> = (0..ndecs)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    // monomial of low degree so equations stay short
                    let t = rng.gen_range(1..=2);
                    random_polynomial(rng, n, 2, t)
                } else {
                    Polynomial::zero(n)
                }
            })
            .collect();
        let mut a0 = sos;
        for (pj, dj) in parts_d.iter().zip(&dstar) {
            a0 = &a0 - &pj.scale(dj);
        }
        let mut parts = vec![a0];
        parts.extend(parts_d);
        constraints.push(AffineSosConstraint::new(parts).unwrap());
        bases.push(z);
        grams.push(q);
    }
    let prog = SosProgram::new(n, ndecs, vec![int(0); ndecs], constraints).unwrap();
    (prog, bases, grams, dstar)
}

#[test]
fn simplify_marks_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut zero_marks = 0;
    for case in 0..300 {
        let (prog, bases, grams, dstar) = witness_program(&mut rng);
        let sys = build_program_system(&prog, Some(bases)).unwrap();
        let slots = sys.slot_count();
        let rep = simplify_program(sys);
        assert!(rep.is_simplified(), "case {case}: feasible program reported {:?}", rep.status);
        assert!(rep.iterations <= slots + 1, "case {case}: {} iterations", rep.iterations);
        let out = &rep.system;
        for (s, slot) in out.slots().iter().enumerate() {
            let value = match *slot {
                Slot::Decision(j) => dstar[j].clone(),
                Slot::Gram { block, i, j } => grams[block][i][j].clone(),
            };
            let mark = out.sign().get(s);
            assert!(mark.admits(&value), "case {case}: slot {s} marked {mark} but witness has {value}");
            zero_marks += usize::from(mark == SignMark::Zero);
            if let Slot::Gram { i, j, .. } = *slot {
                if i == j {
                    assert!(mark.refines(SignMark::NonNeg));
                }
            }
        }
        // a second pass learns nothing
        let again = simplify_program(rep.system.clone());
        assert_eq!(again.system.sign(), rep.system.sign());
        assert_eq!(again.iterations, 1);
    }
    assert!(zero_marks > 100, "only {zero_marks} zero marks exercised");
}

#[test]
fn blocks_only_interact_through_decisions() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..60 {
        let ps: Vec<Polynomial> = (0..3)
            .map(|_| {
                let (deg, t) = (2 * rng.gen_range(1..=2), rng.gen_range(2..=6));
                random_even_polynomial(&mut rng, 2, deg, t)
            })
            .collect();
        let cons: Vec<AffineSosConstraint> = ps.iter().map(|p| AffineSosConstraint::new(vec![p.clone()]).unwrap()).collect();
        let joint = simplify_program(build_program_system(&SosProgram::new(2, 0, vec![], cons).unwrap(), None).unwrap());
        for (k, p) in ps.iter().enumerate() {
            let alone = simplify_program(build_program_system(&SosProgram::single(p.clone()), None).unwrap());
            assert_eq!(joint.constraints[k].final_basis, alone.constraints[0].final_basis);
        }
    }
}

#[test]
fn shared_decision_couples_blocks() {
    // d is forced to zero by the first constraint, which then frees nothing
    // in the second: 1 + d*x1^2 keeps basis [1, x1]
    let c1 = AffineSosConstraint::new(vec![poly("x1^2"), poly("2*x1")]).unwrap();
    let c2 = AffineSosConstraint::new(vec![poly("1 + x1^2"), poly("x1^2")]).unwrap();
    let prog = SosProgram::new(1, 1, vec![int(1)], vec![c1, c2]).unwrap();
    let rep = simplify_program(build_program_system(&prog, None).unwrap());
    assert_eq!(rep.zeroed, [1]);
    assert_eq!(rep.constraints[0].final_basis.names(), ["x1"]);
    assert_eq!(rep.constraints[1].final_basis.names(), ["1", "x1"]);
}
