//! `Q = GL_n(ℝ)` acting on `V = Mat_n(ℝ)` by left multiplication (n ≤ 2).
//!
//! Conventions: coordinates are row-major matrix entries; pairing
//! `e^{i·Tr(ᵗξ v)}` (the Euclidean dot product of entries), dual action
//! `q^♭ξ = ᵗq⁻¹ ξ`, base point `ξ₀ = 1` (identity matrix), orbit map
//! `φ(q) = ᵗq⁻¹` with inverse `φ⁻¹(ξ) = (ᵗξ)⁻¹`, modulus `|det q|ⁿ`,
//! `Δ_Q ≡ 1`. The orbit is all of `GL_n ⊂ Mat_n = V̂`: full measure, free.

use rand::Rng;

use crate::elem::{DualElem, QElem, VElem};
use crate::model::DualOrbitModel;

/// `GL_n(ℝ) ⋉ Mat_n(ℝ)` for `n ∈ {1, 2}`.
pub struct GlnR {
    n: usize,
}

impl GlnR {
    pub fn new(n: usize) -> Self {
        assert!(n == 1 || n == 2, "only n = 1, 2 are registered");
        GlnR { n }
    }

    fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut c = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i * n + j] += a[i * n + k] * b[k * n + j];
                }
            }
        }
        c
    }

    fn det(&self, a: &[f64]) -> f64 {
        match self.n {
            1 => a[0],
            _ => a[0] * a[3] - a[1] * a[2],
        }
    }

    fn inv(&self, a: &[f64]) -> Vec<f64> {
        match self.n {
            1 => vec![1.0 / a[0]],
            _ => {
                let d = self.det(a);
                vec![a[3] / d, -a[1] / d, -a[2] / d, a[0] / d]
            }
        }
    }

    fn transpose(&self, a: &[f64]) -> Vec<f64> {
        match self.n {
            1 => a.to_vec(),
            _ => vec![a[0], a[2], a[1], a[3]],
        }
    }
}

impl DualOrbitModel for GlnR {
    fn name(&self) -> &'static str {
        if self.n == 1 {
            "gl1"
        } else {
            "gl2"
        }
    }

    fn describe(&self) -> &'static str {
        if self.n == 1 {
            "GL1(R) acting on R by multiplication"
        } else {
            "GL2(R) acting on 2x2 real matrices by left multiplication"
        }
    }

    fn q_dim(&self) -> usize {
        self.n * self.n
    }

    fn v_dim(&self) -> usize {
        self.n * self.n
    }

    fn q_mul(&self, a: &QElem, b: &QElem) -> QElem {
        QElem(self.mul(&a.0, &b.0))
    }

    fn q_inv(&self, a: &QElem) -> QElem {
        QElem(self.inv(&a.0))
    }

    fn q_identity(&self) -> QElem {
        match self.n {
            1 => QElem(vec![1.0]),
            _ => QElem(vec![1.0, 0.0, 0.0, 1.0]),
        }
    }

    fn q_act_v(&self, q: &QElem, v: &VElem) -> VElem {
        VElem(self.mul(&q.0, &v.0))
    }

    fn flat(&self, q: &QElem, xi: &DualElem) -> DualElem {
        let ti = self.transpose(&self.inv(&q.0));
        DualElem(self.mul(&ti, &xi.0))
    }

    fn xi0(&self) -> DualElem {
        DualElem(self.q_identity().0)
    }

    fn phi_inv(&self, xi: &DualElem) -> QElem {
        QElem(self.inv(&self.transpose(&xi.0)))
    }

    fn mod_v(&self, q: &QElem) -> f64 {
        self.det(&q.0).abs().powi(self.n as i32)
    }

    fn delta_q(&self, _q: &QElem) -> f64 {
        1.0
    }

    fn in_phi_domain(&self, xi: &DualElem, margin: f64) -> bool {
        self.det(&xi.0).abs() >= margin
    }

    fn q_regular(&self, q: &QElem, margin: f64) -> bool {
        self.det(&q.0).abs() >= margin
    }

    fn scalar(&self, t: f64) -> QElem {
        match self.n {
            1 => QElem(vec![t]),
            _ => QElem(vec![t, 0.0, 0.0, t]),
        }
    }

    fn sample_q(&self, rng: &mut dyn rand::RngCore) -> QElem {
        let r = rng;
        match self.n {
            1 => {
                let u: f64 = r.gen_range(-2.0..2.0);
                let s = if r.gen::<bool>() { 1.0 } else { -1.0 };
                QElem(vec![s * u.exp()])
            }
            _ => {
                // Rotation · signed log-uniform diagonal · rotation keeps the
                // determinant bounded away from zero.
                let (t1, t2): (f64, f64) = (
                    r.gen_range(0.0..std::f64::consts::TAU),
                    r.gen_range(0.0..std::f64::consts::TAU),
                );
                let d1 = (if r.gen::<bool>() { 1.0 } else { -1.0 })
                    * r.gen_range(-2.0..2.0f64).exp();
                let d2 = (if r.gen::<bool>() { 1.0 } else { -1.0 })
                    * r.gen_range(-2.0..2.0f64).exp();
                let rot = |t: f64| vec![t.cos(), -t.sin(), t.sin(), t.cos()];
                let m = self.mul(
                    &self.mul(&rot(t1), &[d1, 0.0, 0.0, d2]),
                    &rot(t2),
                );
                QElem(m)
            }
        }
    }
}
