//! Quantum groups of finite groups checked against Cayley-table oracles, plus
//! invariance of the construction under unitary change of basis.

mod common;

use common::{c0_w, cstar_w, delta, group, sample, shift};
use pentagon_core::groups::{corpus, qg_from_group, Picture};
use pentagon_core::qgroup::{
    apply_antipode, build_from_unitary, coopposite, dual_qg, flip, invariant_dimension, manageability_witness, pentagon_residual,
    transpose_qg, InvariantSide,
};
use pentagon_core::tensorleg::{polar_unitary, relative_residual};
use pentagon_core::{ComplexMatrix, Error, Tolerances};
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn group_unitaries_match_the_cayley_table_formulas() {
    for (name, g) in corpus() {
        let c0 = qg_from_group(&g, Picture::C0, &tol()).unwrap();
        let cstar = qg_from_group(&g, Picture::Cstar, &tol()).unwrap();
        assert_eq!(c0.w(), &c0_w(&g), "{name}");
        assert_eq!(cstar.w(), &cstar_w(&g), "{name}");
        assert_eq!(c0.alg_c().len(), g.order(), "{name}");
        assert_eq!(cstar.alg_c().len(), g.order(), "{name}");
    }
}

#[test]
fn function_algebra_is_the_diagonal_and_its_dual_the_shifts() {
    for name in ["z3", "s3", "q8"] {
        let g = group(name);
        let qg = qg_from_group(&g, Picture::C0, &tol()).unwrap();
        for a in 0..g.order() {
            assert!(qg.alg_c().residual(&delta(g.order(), a)) < 1e-12, "{name}");
            assert!(qg.alg_chat().residual(&shift(&g, a)) < 1e-12, "{name}");
        }
        // an off-diagonal unit is outside C
        assert!(qg.alg_c().residual(&ComplexMatrix::unit(g.order(), 0, 1)) > 0.5);
    }
}

#[test]
fn function_algebra_comultiplication_sums_over_factorisations() {
    for name in ["z4", "s3"] {
        let g = group(name);
        let n = g.order();
        let qg = qg_from_group(&g, Picture::C0, &tol()).unwrap();
        for h in 0..n {
            let mut want = ComplexMatrix::zeros(n * n, n * n);
            for a in 0..n {
                for b in 0..n {
                    if g.table()[a][b] == h {
                        want = &want + &delta(n, a).kron(&delta(n, b));
                    }
                }
            }
            assert!(relative_residual(&qg.comultiply(&delta(n, h)), &want) < 1e-13, "{name} {h}");
        }
    }
}

#[test]
fn group_elements_are_grouplike_in_the_group_algebra() {
    for name in ["z4", "s3", "d4"] {
        let g = group(name);
        let qg = qg_from_group(&g, Picture::Cstar, &tol()).unwrap();
        for a in 0..g.order() {
            let t = shift(&g, a);
            assert!(qg.alg_c().residual(&t) < 1e-12);
            assert!(relative_residual(&qg.comultiply(&t), &t.kron(&t)) < 1e-13, "{name} {a}");
        }
    }
}

#[test]
fn dual_comultiplication_of_the_function_algebra_is_grouplike_on_shifts() {
    let g = group("s3");
    let qg = qg_from_group(&g, Picture::C0, &tol()).unwrap();
    for a in 0..g.order() {
        let t = shift(&g, a);
        let got = qg.comultiply_hat(&t);
        assert!(relative_residual(&got, &t.kron(&t)) < 1e-13, "{a}");
    }
}

#[test]
fn antipodes_invert_group_elements() {
    for name in ["z3", "s3", "q8"] {
        let g = group(name);
        let inv = |a: usize| (0..g.order()).find(|&b| g.table()[a][b] == g.identity()).unwrap();
        let c0 = qg_from_group(&g, Picture::C0, &tol()).unwrap();
        let cstar = qg_from_group(&g, Picture::Cstar, &tol()).unwrap();
        for a in 0..g.order() {
            let r = apply_antipode(&c0, &delta(g.order(), a)).unwrap();
            assert!(relative_residual(&r, &delta(g.order(), inv(a))) < 1e-12, "{name} {a}");
            let r = apply_antipode(&cstar, &shift(&g, a)).unwrap();
            assert!(relative_residual(&r, &shift(&g, inv(a))) < 1e-12, "{name} {a}");
        }
    }
}

#[test]
fn every_corpus_group_is_manageable_with_trivial_invariants() {
    for (name, g) in corpus() {
        for picture in [Picture::C0, Picture::Cstar] {
            let qg = qg_from_group(&g, picture, &tol()).unwrap();
            let witness = manageability_witness(&qg, &tol()).unwrap();
            assert!(witness.residual < 1e-12, "{name}");
            assert_eq!(invariant_dimension(&qg, InvariantSide::Left, &tol()), 1, "{name}");
            assert_eq!(invariant_dimension(&qg, InvariantSide::Right, &tol()), 1, "{name}");
            let r = qg.residuals();
            assert!(r.pentagon == 0.0 && r.coassociativity_c < 1e-12 && r.coassociativity_chat < 1e-12, "{name}");
        }
    }
}

#[test]
fn double_dual_returns_the_same_unitary() {
    for name in ["z2", "s3", "z4xz2"] {
        let qg = qg_from_group(&group(name), Picture::C0, &tol()).unwrap();
        let dd = dual_qg(&dual_qg(&qg, &tol()).unwrap(), &tol()).unwrap();
        assert!(dd.same_as(&qg));
    }
}

#[test]
fn trivial_unitary_gives_the_trivial_quantum_group() {
    let qg = build_from_unitary(ComplexMatrix::identity(9), &tol()).unwrap();
    assert_eq!(qg.alg_c().len(), 1);
    assert_eq!(qg.alg_chat().len(), 1);
}

#[test]
fn invalid_unitaries_are_rejected() {
    assert!(matches!(build_from_unitary(flip(2, 2), &tol()), Err(Error::PentagonViolation(_))));
    assert!(matches!(build_from_unitary(ComplexMatrix::identity(4).scale_real(0.5), &tol()), Err(Error::NotUnitary(_))));
    assert!(matches!(build_from_unitary(ComplexMatrix::identity(5), &tol()), Err(Error::DimensionMismatch(_))));
    assert!(matches!(build_from_unitary(ComplexMatrix::zeros(4, 2), &tol()), Err(Error::DimensionMismatch(_))));
    let (random, _) = polar_unitary(&sample(9, 9, 3));
    assert!(matches!(build_from_unitary(random, &tol()), Err(Error::PentagonViolation(_))));
}

#[test]
fn coopposite_flips_the_comultiplication() {
    let qg = qg_from_group(&group("s3"), Picture::C0, &tol()).unwrap();
    let cop = coopposite(&qg, &tol()).unwrap();
    let s = flip(6, 6);
    for x in qg.alg_c().basis() {
        let want = ComplexMatrix::product(&[&s, &qg.comultiply(x), &s]);
        assert!(relative_residual(&cop.comultiply(x), &want) < 1e-10);
    }
    // S3 is non-abelian, so the flip really changes Δ
    let x = delta(6, 1);
    assert!(relative_residual(&cop.comultiply(&x), &qg.comultiply(&x)) > 0.1);
}

#[test]
fn transposes_of_small_groups() {
    for name in ["z2", "z4", "s3"] {
        for picture in [Picture::C0, Picture::Cstar] {
            let qg = qg_from_group(&group(name), picture, &tol()).unwrap();
            let (conj, v) = transpose_qg(&qg, &Tolerances::uniform(1e-10)).unwrap();
            assert_eq!(conj.w(), &qg.w().conj());
            assert!(v.residuals().operator_pass(&tol()) && v.residuals().abstract_pass(&tol()), "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn conjugating_by_a_product_unitary_preserves_everything(
        which in 0usize..4,
        seed in any::<u64>(),
    ) {
        let name = ["z2", "z3", "z2xz2", "s3"][which];
        let g = group(name);
        let n = g.order();
        let (u, _) = polar_unitary(&sample(n, n, seed));
        let uu = u.kron(&u);
        let w = ComplexMatrix::product(&[&uu, &c0_w(&g), &uu.adjoint()]);
        prop_assert!(pentagon_residual(&w).unwrap() < 1e-12);
        let qg = build_from_unitary(w, &tol()).unwrap();
        prop_assert_eq!(qg.alg_c().len(), n);
        for a in 0..n {
            let moved = ComplexMatrix::product(&[&u, &delta(n, a), &u.adjoint()]);
            prop_assert!(qg.alg_c().residual(&moved) < 1e-10);
        }
        prop_assert!(qg.kac_r().is_some());
        prop_assert_eq!(invariant_dimension(&qg, InvariantSide::Left, &tol()), 1);
        prop_assert!(manageability_witness(&qg, &tol()).is_ok());
    }

    #[test]
    fn antipode_is_an_involutive_anti_automorphism(which in 0usize..3, seed in any::<u64>()) {
        let name = ["z4", "s3", "q8"][which];
        let g = group(name);
        let qg = qg_from_group(&g, Picture::Cstar, &tol()).unwrap();
        let span = qg.alg_c();
        let x = span.projection(&sample(g.order(), g.order(), seed));
        let y = span.projection(&sample(g.order(), g.order(), seed ^ 9));
        let rx = apply_antipode(&qg, &x).unwrap();
        let ry = apply_antipode(&qg, &y).unwrap();
        prop_assert!(relative_residual(&apply_antipode(&qg, &rx).unwrap(), &x) < 1e-10);
        prop_assert!(relative_residual(&apply_antipode(&qg, &x.matmul(&y)).unwrap(), &ry.matmul(&rx)) < 1e-10);
        prop_assert!(relative_residual(&apply_antipode(&qg, &x.adjoint()).unwrap(), &rx.adjoint()) < 1e-10);
    }
}
