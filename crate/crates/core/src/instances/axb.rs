//! The real `ax+b` group: `Q = ℝ*` acting on `V = ℝ` by multiplication.
//!
//! Conventions: pairing `e^{iξv}`, dual action `q^♭ξ = ξ/q`, base point
//! `ξ₀ = −1`, orbit map `φ(q) = −1/q` with inverse `φ⁻¹(ξ) = −1/ξ`,
//! modulus `|q|`, `Δ_Q ≡ 1`. The orbit is `ℝ* ⊂ ℝ = V̂`, which has full
//! measure, and the action on it is free: the orbit condition holds.

use rand::Rng;

use crate::elem::{DualElem, QElem};
use crate::model::DualOrbitModel;

/// The full (nonconnected) real `ax+b` group.
pub struct RealAxB;

impl DualOrbitModel for RealAxB {
    fn name(&self) -> &'static str {
        "axb"
    }

    fn describe(&self) -> &'static str {
        "real ax+b group, Q = R* acting on V = R by multiplication"
    }

    fn q_dim(&self) -> usize {
        1
    }

    fn v_dim(&self) -> usize {
        1
    }

    fn q_mul(&self, a: &QElem, b: &QElem) -> QElem {
        QElem(vec![a.0[0] * b.0[0]])
    }

    fn q_inv(&self, a: &QElem) -> QElem {
        QElem(vec![1.0 / a.0[0]])
    }

    fn q_identity(&self) -> QElem {
        QElem(vec![1.0])
    }

    fn q_act_v(&self, q: &QElem, v: &crate::elem::VElem) -> crate::elem::VElem {
        crate::elem::VElem(vec![q.0[0] * v.0[0]])
    }

    fn flat(&self, q: &QElem, xi: &DualElem) -> DualElem {
        DualElem(vec![xi.0[0] / q.0[0]])
    }

    fn xi0(&self) -> DualElem {
        DualElem(vec![-1.0])
    }

    fn phi_inv(&self, xi: &DualElem) -> QElem {
        QElem(vec![-1.0 / xi.0[0]])
    }

    fn mod_v(&self, q: &QElem) -> f64 {
        q.0[0].abs()
    }

    fn delta_q(&self, _q: &QElem) -> f64 {
        1.0
    }

    fn in_phi_domain(&self, xi: &DualElem, margin: f64) -> bool {
        xi.0[0].abs() >= margin
    }

    fn q_regular(&self, q: &QElem, margin: f64) -> bool {
        q.0[0].abs() >= margin
    }

    fn scalar(&self, t: f64) -> QElem {
        QElem(vec![t])
    }

    fn sample_q(&self, rng: &mut dyn rand::RngCore) -> QElem {
        let r = rng;
        let u: f64 = r.gen_range(-2.0..2.0);
        let s = if r.gen::<bool>() { 1.0 } else { -1.0 };
        QElem(vec![s * u.exp()])
    }
}
