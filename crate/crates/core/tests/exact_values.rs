//! Hand-checked point values for the operator and matched-pair layers on
//! the full `ax + b` model, frozen so that any regression in a formula or
//! a sign convention trips immediately.

use affq_core::instances::by_name;
use affq_core::matchedpair::{
    affdual_identity, affdual_inv, affdual_mul, decompose, f2, h1, h2, selfdual_c,
};
use affq_core::qgops::{conj_j, conj_jhat, jcal, omega, what_omega_closed, what_star};
use affq_core::{AffDualElem, DualElem, GroupElem, QElem, VElem, XPoint};

fn xp(q: f64, xi: f64) -> XPoint {
    XPoint {
        q: QElem(vec![q]),
        xi: DualElem(vec![xi]),
    }
}

fn assert_xp(actual: &XPoint, q: f64, xi: f64) {
    assert!((actual.q.0[0] - q).abs() < 1e-12, "q: {:?} vs {q}", actual.q.0);
    assert!((actual.xi.0[0] - xi).abs() < 1e-12, "xi: {:?} vs {xi}", actual.xi.0);
}

#[test]
fn omega_point_value() {
    let m = by_name("axb").unwrap();
    let op = omega(&m);
    let x = [xp(1.0, 3.0), xp(2.0, 1.0)];
    // a = φ⁻¹(ξ₀ + ξ₁) = φ⁻¹(2) = −1/2, weight 1/|a| = 2,
    // second leg (a q₂, ξ₂/a) = (−1, −2).
    let y = op.map(&x);
    assert_xp(&y[0], 1.0, 3.0);
    assert_xp(&y[1], -1.0, -2.0);
    let w = op.weight_at(&x);
    assert!((w.re - 2.0).abs() < 1e-12 && w.im.abs() < 1e-12, "w = {w}");
}

#[test]
fn what_star_point_value() {
    let m = by_name("axb").unwrap();
    let op = what_star(&m);
    let x = [xp(1.0, 3.0), xp(2.0, 1.0)];
    // (q₂⁻¹q₁, (q₂⁻¹)^♭ξ₁; q₂, ξ₁+ξ₂) = (1/2, 6; 2, 4), weight |q₂| = 2.
    let y = op.map(&x);
    assert_xp(&y[0], 0.5, 6.0);
    assert_xp(&y[1], 2.0, 4.0);
    let w = op.weight_at(&x);
    assert!((w.re - 2.0).abs() < 1e-12 && w.im.abs() < 1e-12, "w = {w}");
}

#[test]
fn what_omega_point_value_and_inverse() {
    let m = by_name("axb").unwrap();
    let op = what_omega_closed(&m);
    let x = [xp(1.0, 3.0), xp(2.0, 1.0)];
    // b = φ⁻¹((q₂⁻¹)^♭ξ₀ + ξ₁) = φ⁻¹(1) = −1, weight |b| = 1,
    // image (q₂q₁, q₂^♭ξ₁; b⁻¹a, (b⁻¹)^♭((q₂⁻¹)^♭ξ₂ − ξ₁)) = (2, 1.5; 0.5, 1).
    let y = op.map(&x);
    assert_xp(&y[0], 2.0, 1.5);
    assert_xp(&y[1], 0.5, 1.0);
    let w = op.weight_at(&x);
    assert!((w.re - 1.0).abs() < 1e-12 && w.im.abs() < 1e-12, "w = {w}");
    // The stored inverse must take the image back to the source point.
    let inv = op.invert().unwrap();
    let back = inv.map(&y);
    assert_xp(&back[0], 1.0, 3.0);
    assert_xp(&back[1], 2.0, 1.0);
}

#[test]
fn involutions_point_values() {
    let m = by_name("axb").unwrap();
    let j = conj_j(&m);
    let x = [xp(2.0, 3.0)];
    let y = j.map(&x);
    assert_xp(&y[0], 2.0, -3.0);
    assert!(j.is_antilinear());

    let jh = conj_jhat(&m);
    // Ĵ: (q, ξ) ↦ (q⁻¹, (q⁻¹)^♭ξ) = (1/2, 6), weight |q|^{3/2}.
    let y = jh.map(&x);
    assert_xp(&y[0], 0.5, 6.0);
    let w = jh.weight_at(&x);
    assert!((w.re - 2.0f64.powf(1.5)).abs() < 1e-12 && w.im.abs() < 1e-12);
    assert!(jh.is_antilinear());
    // 𝒥 = ĴJ is linear.
    assert!(!jcal(&m).is_antilinear());
}

#[test]
fn affdual_product_inverse_identity() {
    let m = by_name("axb").unwrap();
    let a = AffDualElem {
        q: QElem(vec![-2.0]),
        xi: DualElem(vec![0.0]),
    };
    let b = AffDualElem {
        q: QElem(vec![-1.0]),
        xi: DualElem(vec![-2.0]),
    };
    // (q,ξ)(q',ξ') = (qq', ξ + ξ'/q) = (2, 0 + 1) = (2, 1).
    let p = affdual_mul(&m, &a, &b);
    assert!((p.q.0[0] - 2.0).abs() < 1e-12);
    assert!((p.xi.0[0] - 1.0).abs() < 1e-12);
    let e = affdual_identity(&m);
    let back = affdual_mul(&m, &affdual_inv(&m, &p), &p);
    assert!((back.q.0[0] - e.q.0[0]).abs() < 1e-12);
    assert!((back.xi.0[0] - e.xi.0[0]).abs() < 1e-12);
}

#[test]
fn decompose_point_value() {
    let m = by_name("axb").unwrap();
    let g = AffDualElem {
        q: QElem(vec![2.0]),
        xi: DualElem(vec![1.0]),
    };
    // q₁ = φ⁻¹(ξ + φ(q)) = φ⁻¹(1/2) = −2, q₂ = q₁⁻¹q = −1, and the
    // factorization recomposes: h₁(−2)h₂(−1) = (2, 1).
    let (q1, q2) = decompose(&m, &g, 1e-9).unwrap();
    assert!((q1.0[0] + 2.0).abs() < 1e-12);
    assert!((q2.0[0] + 1.0).abs() < 1e-12);
    let re = affdual_mul(&m, &h1(&m, &q1), &h2(&m, &q2));
    assert!((re.q.0[0] - 2.0).abs() < 1e-12);
    assert!((re.xi.0[0] - 1.0).abs() < 1e-12);
}

#[test]
fn selfdual_swap_point_value() {
    let m = by_name("axb").unwrap();
    let c = selfdual_c(&m);
    assert!((c.q.0[0] + 1.0).abs() < 1e-12);
    assert!((c.xi.0[0] + 1.0).abs() < 1e-12);
    // c h₁(2) c⁻¹ = h₂(2) = (2, ξ₀ − ξ₀/2) = (2, −1/2).
    let lhs = affdual_mul(&m, &affdual_mul(&m, &c, &h1(&m, &QElem(vec![2.0]))), &affdual_inv(&m, &c));
    let rhs = h2(&m, &QElem(vec![2.0]));
    assert!((lhs.q.0[0] - rhs.q.0[0]).abs() < 1e-12);
    assert!((lhs.xi.0[0] - rhs.xi.0[0]).abs() < 1e-12);
    assert!((rhs.xi.0[0] + 0.5).abs() < 1e-12);
}

#[test]
fn f2_point_value() {
    let m = by_name("axb").unwrap();
    // f₂(q, ξ) = φ⁻¹(ξ + ξ₀)⁻¹ = φ⁻¹(1)⁻¹ = −1 at ξ = 2.
    let r = f2(&m, &xp(2.0, 2.0));
    assert!((r.0[0] + 1.0).abs() < 1e-12);
}

#[test]
fn group_law_point_values() {
    let m = by_name("axb").unwrap();
    let a = GroupElem {
        q: QElem(vec![2.0]),
        v: VElem(vec![1.0]),
    };
    let b = GroupElem {
        q: QElem(vec![3.0]),
        v: VElem(vec![4.0]),
    };
    // (q, v)(q', v') = (qq', v + qv') = (6, 9).
    let p = m.g_mul(&a, &b);
    assert!((p.q.0[0] - 6.0).abs() < 1e-12);
    assert!((p.v.0[0] - 9.0).abs() < 1e-12);
    let i = m.g_inv(&GroupElem {
        q: QElem(vec![2.0]),
        v: VElem(vec![4.0]),
    });
    assert!((i.q.0[0] - 0.5).abs() < 1e-12);
    assert!((i.v.0[0] + 2.0).abs() < 1e-12);
    // A reflection with the right translation is its own inverse.
    let r = m.g_inv(&GroupElem {
        q: QElem(vec![-1.0]),
        v: VElem(vec![3.0]),
    });
    assert!((r.q.0[0] + 1.0).abs() < 1e-12);
    assert!((r.v.0[0] - 3.0).abs() < 1e-12);
}

#[test]
fn modular_function_point_values() {
    let m = by_name("axb").unwrap();
    let g = GroupElem {
        q: QElem(vec![2.0]),
        v: VElem(vec![7.0]),
    };
    // Δ_G(q, v) = Δ_Q(q)/|q| = 1/2 on the unimodular-Q line.
    assert!((m.delta_g(&g) - 0.5).abs() < 1e-12);

    let m2 = by_name("gl2").unwrap();
    let g2 = GroupElem {
        q: QElem(vec![2.0, 0.0, 0.0, 1.0]),
        v: VElem(vec![0.0, 0.0]),
    };
    // GL₂ acting on ℝ²: |q| = |det|² = 4, Δ_Q = 1, so Δ_G = 1/4.
    assert!((m2.delta_g(&g2) - 0.25).abs() < 1e-12);
}

#[test]
fn complex_flat_and_phi() {
    let m = by_name("complex-axb").unwrap();
    // q^♭ξ = ξ/q̄: q = i → q̄ = −i → ξ/q̄ = iξ; take ξ = 1: expect i.
    let f = m.flat(&QElem(vec![0.0, 1.0]), &DualElem(vec![1.0, 0.0]));
    assert!((f.0[0] - 0.0).abs() < 1e-12 && (f.0[1] - 1.0).abs() < 1e-12);
    // φ(q) = ξ₀/q̄ = −1/q̄: q = 2i → q̄ = −2i → −1/(−2i) = −i/2.
    let p = m.phi(&QElem(vec![0.0, 2.0]));
    assert!((p.0[0] - 0.0).abs() < 1e-12 && (p.0[1] + 0.5).abs() < 1e-12);
}

#[test]
fn negative_model_breaks_freeness() {
    let m = by_name("exoo-negative").unwrap();
    assert!(!m.orbit_condition_holds());
    // φ(q) = q^♭ξ₀ fixes the base point under every pure scaling, so a
    // non-identity element maps to φ(e): the orbit map is not free.
    let e = m.q_identity();
    let g = m.scalar(2.0);
    let pe = m.phi(&e);
    let pg = m.phi(&g);
    assert!(affq_core::rel_dist(&pe.0, &pg.0) < 1e-14);
}
