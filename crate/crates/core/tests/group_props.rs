//! Property tests for the group and orbit layers, over generated
//! coordinates rather than the library's own samplers.

use affq_core::instances::by_name;
use affq_core::{rel_dist, DualElem, GroupElem, QElem, VElem};
use proptest::prelude::*;

/// Nonzero scalar bounded away from 0 and ∞ (conditioning window).
fn scalar() -> impl Strategy<Value = f64> {
    (0.05f64..20.0).prop_flat_map(|m| prop_oneof![Just(m), Just(-m)])
}

fn bounded() -> impl Strategy<Value = f64> {
    -20.0f64..20.0
}

proptest! {
    #[test]
    fn axb_group_laws(q1 in scalar(), v1 in bounded(), q2 in scalar(), v2 in bounded(), q3 in scalar(), v3 in bounded()) {
        let m = by_name("axb").unwrap();
        let a = GroupElem { q: QElem(vec![q1]), v: VElem(vec![v1]) };
        let b = GroupElem { q: QElem(vec![q2]), v: VElem(vec![v2]) };
        let c = GroupElem { q: QElem(vec![q3]), v: VElem(vec![v3]) };
        // Associativity.
        let ab_c = m.g_mul(&m.g_mul(&a, &b), &c);
        let a_bc = m.g_mul(&a, &m.g_mul(&b, &c));
        prop_assert!(rel_dist(&ab_c.q.0, &a_bc.q.0) < 1e-12);
        prop_assert!(rel_dist(&ab_c.v.0, &a_bc.v.0) < 1e-12);
        // Inverse.
        let e = m.g_mul(&m.g_inv(&a), &a);
        prop_assert!(rel_dist(&e.q.0, &[1.0]) < 1e-12);
        prop_assert!(rel_dist(&e.v.0, &[0.0]) < 1e-10);
        // Modular function is multiplicative.
        let d = m.delta_g(&m.g_mul(&a, &b)) / (m.delta_g(&a) * m.delta_g(&b));
        prop_assert!((d - 1.0).abs() < 1e-10);
    }

    #[test]
    fn axb_flat_is_dual_action(q1 in scalar(), q2 in scalar(), xi in scalar()) {
        let m = by_name("axb").unwrap();
        let a = QElem(vec![q1]);
        let b = QElem(vec![q2]);
        let x = DualElem(vec![xi]);
        // (q q')^♭ = q^♭ q'^♭ and ⟨q^♭ξ, v⟩ = ⟨ξ, q⁻¹v⟩.
        let lhs = m.flat(&m.q_mul(&a, &b), &x);
        let rhs = m.flat(&a, &m.flat(&b, &x));
        prop_assert!(rel_dist(&lhs.0, &rhs.0) < 1e-12);
        let v = VElem(vec![0.37]);
        let p1 = m.pairing(&m.flat(&a, &x), &v);
        let p2 = m.pairing(&x, &m.q_act_v(&m.q_inv(&a), &v));
        prop_assert!((p1 - p2).norm() < 1e-9);
    }

    #[test]
    fn axb_orbit_round_trip(q in scalar()) {
        let m = by_name("axb").unwrap();
        let back = m.phi_inv(&m.phi(&QElem(vec![q])));
        prop_assert!(rel_dist(&back.0, &[q]) < 1e-14);
    }

    #[test]
    fn gl2_orbit_round_trip(a in scalar(), b in bounded(), c in bounded(), d in scalar()) {
        let m = by_name("gl2").unwrap();
        let q = QElem(vec![a, b, c, d]);
        // Only well-conditioned matrices are in scope.
        prop_assume!(m.q_regular(&q, 1e-2));
        let back = m.phi_inv(&m.phi(&q));
        prop_assert!(rel_dist(&back.0, &q.0) < 1e-9);
    }

    #[test]
    fn complex_flat_composes(a in scalar(), b in scalar(), c in scalar(), d in scalar()) {
        let m = by_name("complex-axb").unwrap();
        let q1 = QElem(vec![a, b]);
        let q2 = QElem(vec![c, d]);
        let xi = DualElem(vec![0.7, -0.3]);
        let lhs = m.flat(&m.q_mul(&q1, &q2), &xi);
        let rhs = m.flat(&q1, &m.flat(&q2, &xi));
        prop_assert!(rel_dist(&lhs.0, &rhs.0) < 1e-10);
    }
}
