//! The complex `ax+b` group: `Q = ℂ*` acting on `V = ℂ` by multiplication.
//!
//! Conventions: coordinates `[re, im]`; pairing `e^{i·Re(ξ̄ v)}` (the
//! Euclidean dot product of coordinates), dual action `q^♭ξ = ξ/q̄`, base
//! point `ξ₀ = −1`, orbit map `φ(q) = −1/q̄` with inverse `φ⁻¹(ξ) = −1/ξ̄`,
//! modulus `|q|²` (Lebesgue measure on ℝ²), `Δ_Q ≡ 1`.

use num_complex::Complex64;
use rand::Rng;

use crate::elem::{DualElem, QElem, VElem};
use crate::model::DualOrbitModel;

/// `ℂ* ⋉ ℂ`.
pub struct ComplexAxB;

fn c(v: &[f64]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn vv(z: Complex64) -> Vec<f64> {
    vec![z.re, z.im]
}

impl DualOrbitModel for ComplexAxB {
    fn name(&self) -> &'static str {
        "complex-axb"
    }

    fn describe(&self) -> &'static str {
        "complex ax+b group, Q = C* acting on V = C by multiplication"
    }

    fn q_dim(&self) -> usize {
        2
    }

    fn v_dim(&self) -> usize {
        2
    }

    fn q_mul(&self, a: &QElem, b: &QElem) -> QElem {
        QElem(vv(c(&a.0) * c(&b.0)))
    }

    fn q_inv(&self, a: &QElem) -> QElem {
        QElem(vv(c(&a.0).inv()))
    }

    fn q_identity(&self) -> QElem {
        QElem(vec![1.0, 0.0])
    }

    fn q_act_v(&self, q: &QElem, v: &VElem) -> VElem {
        VElem(vv(c(&q.0) * c(&v.0)))
    }

    fn flat(&self, q: &QElem, xi: &DualElem) -> DualElem {
        DualElem(vv(c(&xi.0) / c(&q.0).conj()))
    }

    fn xi0(&self) -> DualElem {
        DualElem(vec![-1.0, 0.0])
    }

    fn phi_inv(&self, xi: &DualElem) -> QElem {
        QElem(vv(-(c(&xi.0).inv().conj())))
    }

    fn mod_v(&self, q: &QElem) -> f64 {
        c(&q.0).norm_sqr()
    }

    fn delta_q(&self, _q: &QElem) -> f64 {
        1.0
    }

    fn in_phi_domain(&self, xi: &DualElem, margin: f64) -> bool {
        c(&xi.0).norm() >= margin
    }

    fn q_regular(&self, q: &QElem, margin: f64) -> bool {
        c(&q.0).norm() >= margin
    }

    fn scalar(&self, t: f64) -> QElem {
        QElem(vec![t, 0.0])
    }

    fn sample_q(&self, rng: &mut dyn rand::RngCore) -> QElem {
        let r = rng;
        let u: f64 = r.gen_range(-2.0..2.0);
        let t: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        QElem(vv(Complex64::from_polar(u.exp(), t)))
    }
}
