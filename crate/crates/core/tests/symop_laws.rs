//! Algebraic laws of the weighted point-transformation layer, checked at
//! random sample points, plus mutation sensitivity: a relative weight
//! perturbation of 1e-6 must trip every identity suite it touches.

use affq_core::instances::{by_name, positive_models};
use affq_core::qgops::{
    check_cocycle_of, check_multunitary, check_pentagon_of, conj_j, conj_jhat, coproduct_left,
    coproduct_right, jcal, omega, what, what_omega_closed,
};
use affq_core::sampling::sample_rng;
use affq_core::symop::{equal_at, random_equality_test, sample_point};
use affq_core::suites::report_passed;
use affq_core::{SamplePlan, SymOp};

#[test]
fn compose_is_associative_at_samples() {
    for m in positive_models() {
        let a = omega(&m);
        let b = what(&m);
        let c = what_omega_closed(&m);
        let lhs = a.compose(&b).unwrap().compose(&c).unwrap();
        let rhs = a.compose(&b.compose(&c).unwrap()).unwrap();
        let mut rng = sample_rng(7, 1, 0);
        let mut tested = 0;
        for _ in 0..200 {
            let x = sample_point(&m, 2, 1e-2, &mut rng);
            if let Some((dm, dw)) = equal_at(&lhs, &rhs, &x, 1e-2) {
                assert!(dm < 1e-10 && dw < 1e-10, "{}: {dm} {dw}", m.name());
                tested += 1;
            }
        }
        assert!(tested > 50, "{}: too few valid samples", m.name());
    }
}

#[test]
fn invert_is_two_sided_at_samples() {
    for m in positive_models() {
        for op in [omega(&m), what(&m), what_omega_closed(&m)] {
            let inv = op.invert().unwrap();
            let left = inv.compose(&op).unwrap();
            let right = op.compose(&inv).unwrap();
            let id = SymOp::identity(2);
            let mut rng = sample_rng(11, 2, 0);
            let mut tested = 0;
            for _ in 0..200 {
                let x = sample_point(&m, 2, 1e-2, &mut rng);
                let a = equal_at(&left, &id, &x, 1e-2);
                let b = equal_at(&right, &id, &x, 1e-2);
                if let (Some((dm1, dw1)), Some((dm2, dw2))) = (a, b) {
                    assert!(dm1.max(dm2) < 1e-9, "{}: map {dm1} {dm2}", m.name());
                    assert!(dw1.max(dw2) < 1e-9, "{}: weight {dw1} {dw2}", m.name());
                    tested += 1;
                }
            }
            assert!(tested > 50, "{}: too few valid samples", m.name());
        }
    }
}

#[test]
fn involutions_square_to_identity() {
    for m in positive_models() {
        for op in [conj_j(&m), conj_jhat(&m), jcal(&m)] {
            let sq = op.compose(&op).unwrap();
            assert!(!sq.is_antilinear());
            let id = SymOp::identity(1);
            let mut rng = sample_rng(13, 3, 0);
            let mut tested = 0;
            for _ in 0..200 {
                let x = sample_point(&m, 1, 1e-2, &mut rng);
                if let Some((dm, dw)) = equal_at(&sq, &id, &x, 1e-2) {
                    assert!(dm < 1e-10 && dw < 1e-10, "{}: {dm} {dw}", m.name());
                    tested += 1;
                }
            }
            assert!(tested > 50, "{}: too few valid samples", m.name());
        }
    }
}

#[test]
fn leg_mismatch_is_rejected() {
    let one = SymOp::identity(1);
    let two = SymOp::identity(2);
    assert!(one.compose(&two).is_err());
    assert!(one.embed(3, &[0, 1]).is_err());
    assert!(SymOp::tensor2(&two, &two).is_err());
}

#[test]
fn weight_mutation_trips_cocycle() {
    let m = by_name("axb").unwrap();
    let mut plan = SamplePlan::default_exact();
    plan.count = 500;
    let good = check_cocycle_of(&m, &plan, &omega(&m), "cocycle-good");
    assert!(report_passed(&good, plan.min_valid_fraction));
    // The cocycle sides carry the candidate twice each, so a uniform
    // weight scaling cancels between them; perturb one side only.
    let om = omega(&m);
    let bad_om = om.perturb_weight(1.0 + 1e-6);
    let lhs = SymOp::compose_many(&[
        &bad_om.embed(3, &[0, 1]).unwrap(),
        &coproduct_left(&m, &bad_om).unwrap(),
    ])
    .unwrap();
    let rhs = SymOp::compose_many(&[
        &om.embed(3, &[1, 2]).unwrap(),
        &coproduct_right(&m, &om).unwrap(),
    ])
    .unwrap();
    let bad = random_equality_test("cocycle-mutated", &m, &lhs, &rhs, &plan);
    assert!(bad.failed > 0, "perturbed cocycle must fail");
}

#[test]
fn weight_mutation_trips_pentagon() {
    let m = by_name("axb").unwrap();
    let mut plan = SamplePlan::default_exact();
    plan.count = 500;
    let good = check_pentagon_of(&m, &plan, &what(&m), "pentagon-good");
    assert!(report_passed(&good, plan.min_valid_fraction));
    let bad = check_pentagon_of(
        &m,
        &plan,
        &what(&m).perturb_weight(1.0 + 1e-6),
        "pentagon-mutated",
    );
    assert!(bad.failed > 0, "perturbed pentagon must fail");
}

#[test]
fn multunitary_reports_pass_unperturbed() {
    let m = by_name("axb").unwrap();
    let mut plan = SamplePlan::default_exact();
    plan.count = 500;
    for r in check_multunitary(&m, &plan) {
        assert!(
            report_passed(&r, plan.min_valid_fraction),
            "{}: {:?}",
            r.identity,
            r.first_fail
        );
    }
}
