use std::collections::BTreeMap;

use hopfu::action::solve_actions;
use hopfu::families::{
    find_family, instance_matrices, instantiate, instantiate_unchecked, list_families, negative_controls,
    regularity_certificate, sample_instances, t05_4_as_skew, verify, Char2Form, FamilyError, ParamValue, CATALOG_IDS,
};
use hopfu::gf::{Field, FieldElem};
use hopfu::quadalg::QuadAlgebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, ParamValue> {
    pairs.iter().map(|&(k, v)| (k.to_string(), ParamValue::Int(v))).collect()
}

fn seed() -> u64 {
    std::env::var("HOPFU_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_260_418)
}

#[test]
fn catalog_samples_pass_at_several_primes() {
    for spec in list_families() {
        for p in [2u32, 3, 5, 7] {
            if !spec.allows_p(p) {
                continue;
            }
            for inst in sample_instances(spec.id, p).unwrap() {
                let rep = verify(&inst, 6);
                assert!(rep.passed, "{} p={p} {:?}: {:?}", spec.id, rep.params, rep.failed_checks());
                let act = inst.action().unwrap();
                assert!(act.is_inner_faithful());
                let dims = inst.algebra.hilbert(5).unwrap();
                for (n, d) in act.graded_decompose(5).unwrap().iter().enumerate() {
                    assert_eq!(d.dim() as usize, dims[n]);
                }
                assert_eq!(act.invariant_dims(5).unwrap(), act.invariant_dims_stacked(5).unwrap());
            }
        }
    }
}

#[test]
fn every_weight_choice_passes_for_small_primes() {
    for id in CATALOG_IDS {
        let spec = find_family(id).unwrap();
        let p = spec.smallest_p();
        let f = Field::prime(p).unwrap();
        let base = (spec.samples)(p).remove(0);
        for i in 0..p as i64 {
            for j in 0..p as i64 {
                let mut given = params(&base);
                given.insert("i".into(), ParamValue::Int(i));
                if given.contains_key("j") {
                    given.insert("j".into(), ParamValue::Int(j));
                } else if j > 0 {
                    continue;
                }
                match instantiate(id, &f, &given) {
                    Ok(inst) => {
                        let rep = verify(&inst, 5);
                        assert!(rep.passed, "{id} p={p} i={i} j={j}: {:?}", rep.failed_checks());
                    }
                    Err(FamilyError::ConstraintViolated(_)) => {}
                    Err(e) => panic!("{id}: {e}"),
                }
            }
        }
    }
}

#[test]
fn printed_and_normalized_forms_agree() {
    for p in [2, 3, 5] {
        let f = Field::prime(p).unwrap();
        let given = params(&[("i", 0), ("j", 1)]);
        let a = instantiate("t05-3", &f, &given).unwrap();
        let b = instantiate("t05-3-alt", &f, &given).unwrap();
        let (ra, rb) = (verify(&a, 6), verify(&b, 6));
        assert!(ra.passed && rb.passed);
        assert_eq!(ra.checks, rb.checks);
        assert_eq!(a.algebra.relations(), b.algebra.relations(), "p = {p}");
    }
}

#[test]
fn t05_4_is_a_skew_polynomial_ring() {
    for (p, a) in [(2, 1), (3, 1), (3, 2), (5, 3), (7, 6)] {
        let f = Field::prime(p).unwrap();
        let inst = instantiate("t05-4", &f, &params(&[("i", 0), ("j", 1), ("a", a)])).unwrap();
        let skew = t05_4_as_skew(&inst).unwrap();
        assert_eq!(inst.algebra.relations(), skew.algebra.relations());
        assert!(verify(&inst, 6).passed);
        assert!(verify(&skew, 6).passed);
    }
}

#[test]
fn constraint_examples() {
    let f5 = Field::prime(5).unwrap();
    let err = instantiate("t05-5", &f5, &params(&[("i", 2), ("j", 0), ("a", 2), ("eps", 1)])).unwrap_err();
    assert_eq!(err.to_string(), "constraint violated: eps(a^2-1) = 0 fails");
    let f3 = Field::prime(3).unwrap();
    assert!(matches!(
        instantiate("t05-4", &f3, &params(&[("i", 0), ("j", 0)])),
        Err(FamilyError::ConstraintViolated(_))
    ));
    assert!(matches!(
        instantiate("t05-7", &f3, &params(&[("i", 0), ("j", 2), ("c", 1)])),
        Err(FamilyError::ConstraintViolated(_))
    ));
    assert!(matches!(
        instantiate("t05-7", &Field::prime(5).unwrap(), &params(&[("i", 0), ("j", 2), ("b", 1)])),
        Err(FamilyError::ConstraintViolated(_))
    ));
}

#[test]
fn bypassed_t05_9_is_caught_by_hilbert() {
    let f2 = Field::prime(2).unwrap();
    let given = params(&[("i", 0), ("j", 1), ("b", 1), ("c", 1), ("e", 0)]);
    assert!(matches!(instantiate("t05-9", &f2, &given), Err(FamilyError::ConstraintViolated(_))));
    let inst = instantiate_unchecked("t05-9", &f2, &given).unwrap();
    let rep = verify(&inst, 6);
    assert!(!rep.passed);
    assert!(!rep.check("hilbert_matches").passed);
    assert!(!rep.check("koszul_dual_frobenius").passed);
    assert!(!rep.check("constraint_predicates").passed);
    assert!(rep.check("relations_U_submodule").passed);
}

#[test]
fn negative_controls_fail_a_certificate() {
    for spec in negative_controls() {
        for inst in sample_instances(spec.id, spec.smallest_p()).unwrap() {
            let rep = verify(&inst, 6);
            assert!(rep.check("relations_U_submodule").passed, "{}", spec.id);
            assert!(!rep.passed, "{}", spec.id);
        }
    }
}

fn check_point(form: Char2Form, f: &Field, v: &[FieldElem]) {
    let pred = form.predicate(f, v);
    let cert = regularity_certificate(&form.algebra(f, v), 6);
    let shown: Vec<String> = v.iter().map(|&e| f.format(e)).collect();
    assert_eq!(pred, cert, "{form:?} over F_{} at {shown:?}", f.order());
}

#[test]
fn char2_predicates_match_certificates_exhaustively() {
    for k in [1, 2] {
        let f = Field::new(2, k, None).unwrap();
        let elems: Vec<FieldElem> = f.elements().collect();
        for form in [Char2Form::Squares, Char2Form::Twisted, Char2Form::Normal] {
            let n = form.param_names().len();
            for idx in 0..elems.len().pow(n as u32) {
                let mut x = idx;
                let v: Vec<FieldElem> = (0..n)
                    .map(|_| {
                        let e = elems[x % elems.len()];
                        x /= elems.len();
                        e
                    })
                    .collect();
                check_point(form, &f, &v);
            }
        }
    }
}

#[test]
fn char2_predicates_match_certificates_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let f = Field::new(2, 4, None).unwrap();
    for form in [Char2Form::Squares, Char2Form::Twisted, Char2Form::Normal] {
        let n = form.param_names().len();
        for round in 0..150 {
            let mut v: Vec<FieldElem> = (0..n).map(|_| f.from_packed(rng.gen_range(0..16)).unwrap()).collect();
            // bias half the points onto the predicate's equalities
            if round % 2 == 0 {
                match form {
                    Char2Form::Squares => {
                        v[1] = v[0];
                        v[4] = v[3];
                    }
                    Char2Form::Twisted => {
                        v[0] = FieldElem::ONE;
                        v[1] = FieldElem::ZERO;
                    }
                    Char2Form::Normal => {
                        v[0] = FieldElem::ONE;
                        v[1] = FieldElem::ZERO;
                    }
                }
            }
            check_point(form, &f, &v);
        }
    }
}

/// The families read off the char-2 forms: predicate on the form parameters
/// versus the instance certificates.
#[test]
fn t05_8_and_t05_9_sweeps_agree_with_form_predicate() {
    for k in [1, 2] {
        let f = Field::new(2, k, None).unwrap();
        let elems: Vec<FieldElem> = f.elements().collect();
        let coeffs = |e: FieldElem| ParamValue::Coeffs(f.coeffs(e));
        for &b in &elems {
            for &c in &elems {
                for &e in &elems {
                    let mut given = BTreeMap::new();
                    given.insert("i".to_string(), ParamValue::Int(0));
                    given.insert("j".to_string(), ParamValue::Int(1));
                    given.insert("b".to_string(), coeffs(b));
                    given.insert("c".to_string(), coeffs(c));
                    given.insert("e".to_string(), coeffs(e));
                    let inst = instantiate_unchecked("t05-9", &f, &given).unwrap();
                    let rep = verify(&inst, 6);
                    let certs = rep.check("hilbert_matches").passed && rep.check("koszul_dual_frobenius").passed;
                    // normal form with q = 1, c1 = b, d = 1
                    let pred = Char2Form::Normal.predicate(&f, &[FieldElem::ONE, b, c, FieldElem::ONE, e]);
                    assert_eq!(
                        pred,
                        certs,
                        "t05-9 over F_{} b={} c={} e={}",
                        f.order(),
                        f.format(b),
                        f.format(c),
                        f.format(e)
                    );
                }
            }
            let mut given = BTreeMap::new();
            given.insert("e".to_string(), coeffs(b));
            let inst = instantiate("t05-8", &f, &given).unwrap();
            assert!(verify(&inst, 6).passed, "t05-8 over F_{} e={}", f.order(), f.format(b));
        }
    }
}

#[test]
fn catalog_actions_appear_in_solver_output() {
    for spec in list_families() {
        let p = spec.smallest_p();
        for inst in sample_instances(spec.id, p).unwrap() {
            let sols = solve_actions(&inst.algebra, u64::MAX).unwrap();
            let (u, w) = instance_matrices(&inst);
            assert!(sols.iter().any(|s| s.rho_u == u && s.rho_w == w), "{} {:?}", spec.id, inst.params.display());
        }
    }
}

#[test]
fn solver_ignores_relation_order() {
    let f3 = Field::prime(3).unwrap();
    let inst = instantiate("t05-2", &f3, &params(&[("i", 0)])).unwrap();
    let rels = inst.algebra.relations().basis_vectors();
    let names = ["x1", "x2", "x3"];
    let reversed: Vec<Vec<FieldElem>> = rels.iter().rev().cloned().collect();
    // mix: r0 + r1, r1 + 2 r2, r2
    let mixed: Vec<Vec<FieldElem>> = vec![
        rels[0].iter().zip(&rels[1]).map(|(&a, &b)| f3.add(a, b)).collect(),
        rels[1].iter().zip(&rels[2]).map(|(&a, &b)| f3.add(a, f3.mul(f3.from_int(2), b))).collect(),
        rels[2].clone(),
    ];
    let base = solve_actions(&inst.algebra, u64::MAX).unwrap();
    for alt in [reversed, mixed] {
        let alg = QuadAlgebra::new(&f3, &names, &alt).unwrap();
        assert_eq!(solve_actions(&alg, u64::MAX).unwrap(), base);
    }
}
