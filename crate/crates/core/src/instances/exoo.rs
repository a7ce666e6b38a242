//! A deliberate *negative* instance: upper-triangular `Q` acting on `V = ℝ²`
//! without a free full-measure dual orbit.
//!
//! `Q = {(a, b) : a ≠ 0}` models the matrices `[[1, b], [0, a]]` acting on
//! column vectors `(x₁, x₂)` by `(x₁ + b x₂, a x₂)`. The dual action fixes
//! the first coordinate of `ξ₀ = (1, 0)`, so the orbit `{(1, y)}` is a
//! null set and the stabilizer `{b = 0}` is nontrivial — both halves of the
//! orbit condition fail. Used to verify that the orbit check rejects it
//! with a witness.

use rand::Rng;

use crate::elem::{DualElem, QElem, VElem};
use crate::model::DualOrbitModel;

/// Upper-triangular negative example (n = 1, m = 2 block sizes).
pub struct ExOoNegative;

impl DualOrbitModel for ExOoNegative {
    fn name(&self) -> &'static str {
        "exoo-negative"
    }

    fn describe(&self) -> &'static str {
        "upper-triangular block group on R^2 violating the dual orbit condition (negative test)"
    }

    fn q_dim(&self) -> usize {
        2
    }

    fn v_dim(&self) -> usize {
        2
    }

    // (a, b)·(a', b') corresponds to [[1,b],[0,a]]·[[1,b'],[0,a']] =
    // [[1, b' + b a'], [0, a a']].
    fn q_mul(&self, x: &QElem, y: &QElem) -> QElem {
        let (a, b) = (x.0[0], x.0[1]);
        let (a2, b2) = (y.0[0], y.0[1]);
        QElem(vec![a * a2, b2 + b * a2])
    }

    fn q_inv(&self, x: &QElem) -> QElem {
        let (a, b) = (x.0[0], x.0[1]);
        QElem(vec![1.0 / a, -b / a])
    }

    fn q_identity(&self) -> QElem {
        QElem(vec![1.0, 0.0])
    }

    fn q_act_v(&self, q: &QElem, v: &VElem) -> VElem {
        let (a, b) = (q.0[0], q.0[1]);
        VElem(vec![v.0[0] + b * v.0[1], a * v.0[1]])
    }

    // q^♭ξ = ᵗq⁻¹ξ with q = [[1,b],[0,a]]: ᵗq⁻¹ = [[1,0],[−b/a,1/a]].
    fn flat(&self, q: &QElem, xi: &DualElem) -> DualElem {
        let (a, b) = (q.0[0], q.0[1]);
        DualElem(vec![xi.0[0], (-b * xi.0[0] + xi.0[1]) / a])
    }

    fn xi0(&self) -> DualElem {
        DualElem(vec![1.0, 0.0])
    }

    // On the orbit slice {ξ₁ = 1} pick the representative with a = 1; the
    // stabilizer makes this choice non-unique, which the freeness probe
    // detects.
    fn phi_inv(&self, xi: &DualElem) -> QElem {
        QElem(vec![1.0, -xi.0[1]])
    }

    fn mod_v(&self, q: &QElem) -> f64 {
        q.0[0].abs()
    }

    fn delta_q(&self, q: &QElem) -> f64 {
        q.0[0].abs()
    }

    fn in_phi_domain(&self, xi: &DualElem, margin: f64) -> bool {
        (xi.0[0] - 1.0).abs() <= margin.min(1e-9)
    }

    fn q_regular(&self, q: &QElem, margin: f64) -> bool {
        q.0[0].abs() >= margin
    }

    fn orbit_condition_holds(&self) -> bool {
        false
    }

    fn phi_open(&self) -> bool {
        false
    }

    fn scalar(&self, t: f64) -> QElem {
        QElem(vec![t, 0.0])
    }

    fn sample_q(&self, rng: &mut dyn rand::RngCore) -> QElem {
        let r = rng;
        let u: f64 = r.gen_range(-2.0..2.0);
        let s = if r.gen::<bool>() { 1.0 } else { -1.0 };
        QElem(vec![s * u.exp(), r.gen_range(-4.0..4.0)])
    }
}
