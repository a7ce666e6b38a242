//! The model trait: everything a concrete group `G = Q ⋉ V` must provide.
//!
//! A model fixes coordinates for `Q`, `V`, `V̂`, the group operations, the
//! dual action `q^♭` defined by `⟨q^♭ξ, v⟩ = ⟨ξ, q⁻¹v⟩`, a base point
//! `ξ₀ ∈ V̂`, and the orbit map `φ(q) = q^♭ξ₀` together with its inverse.
//! The *dual orbit condition* asks that `φ` be a measure-class isomorphism
//! of `Q` onto a free orbit of full measure; models that intentionally
//! violate it (for negative testing) report `orbit_condition_holds() == false`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::elem::{DualElem, GroupElem, QElem, VElem};

/// Shared handle to a model, cheap to clone into operator closures.
pub type ArcModel = Arc<dyn DualOrbitModel>;

/// A semidirect product `G = Q ⋉ V` with a distinguished dual orbit.
pub trait DualOrbitModel: Send + Sync {
    /// Registry name (`axb`, `gl1`, `gl2`, `complex-axb`, `exoo-negative`).
    fn name(&self) -> &'static str;

    /// One-line human description.
    fn describe(&self) -> &'static str;

    /// Number of coordinates of a `Q` element.
    fn q_dim(&self) -> usize;
    /// Number of coordinates of a `V` (and `V̂`) element.
    fn v_dim(&self) -> usize;

    /// Product in `Q`.
    fn q_mul(&self, a: &QElem, b: &QElem) -> QElem;
    /// Inverse in `Q`.
    fn q_inv(&self, a: &QElem) -> QElem;
    /// Identity of `Q`.
    fn q_identity(&self) -> QElem;

    /// Action of `Q` on `V` (the automorphism `v ↦ qv`).
    fn q_act_v(&self, q: &QElem, v: &VElem) -> VElem;

    /// Dual action `q^♭ξ`, defined by `⟨q^♭ξ, v⟩ = ⟨ξ, q⁻¹v⟩`.
    fn flat(&self, q: &QElem, xi: &DualElem) -> DualElem;

    /// The base point `ξ₀` of the distinguished orbit.
    fn xi0(&self) -> DualElem;

    /// Inverse of the orbit map: the unique `q` with `q^♭ξ₀ = ξ`.
    ///
    /// Only meaningful on the orbit (`in_phi_domain`); models violating the
    /// orbit condition return a representative of the possibly-non-unique
    /// solution set when one exists.
    fn phi_inv(&self, xi: &DualElem) -> QElem;

    /// Modulus `|q|`: the scaling factor of Haar measure on `V` under `qv`.
    fn mod_v(&self, q: &QElem) -> f64;

    /// Modular function of `Q`.
    fn delta_q(&self, q: &QElem) -> f64;

    /// Whether `ξ` lies in the orbit `φ(Q)` with the given safety margin
    /// (distance to the complement / singular set).
    fn in_phi_domain(&self, xi: &DualElem, margin: f64) -> bool;

    /// Whether `q` is safely invertible with the given margin.
    fn q_regular(&self, q: &QElem, margin: f64) -> bool;

    /// Whether the dual orbit condition holds for this model.
    fn orbit_condition_holds(&self) -> bool {
        true
    }

    /// Whether `φ` is an *open* map onto its image; needed for the
    /// deformation family `Ω_θ` with `θ` running to the identity.
    fn phi_open(&self) -> bool {
        true
    }

    /// The central (scalar) element of `Q` of parameter `t`, used by the
    /// deformation suite. `scalar(1) = identity`.
    fn scalar(&self, t: f64) -> QElem;

    /// Random `Q` element: log-uniform in each scale coordinate over
    /// `[e^{−2}, e^{2}]`, with random sign/rotation where applicable.
    fn sample_q(&self, rng: &mut dyn rand::RngCore) -> QElem;

    /// Random `V` element: uniform in the coordinate box `[−4, 4]`.
    fn sample_v(&self, rng: &mut dyn rand::RngCore) -> VElem {
        let r = rng;
        VElem((0..self.v_dim()).map(|_| r.gen_range(-4.0..4.0)).collect())
    }

    /// Random `V̂` element: uniform in `[−4, 4]`, rejecting (boundedly many
    /// times) points within `margin` of the orbit's singular set, so that
    /// positive models essentially always yield usable points while models
    /// violating the orbit condition surface witnesses.
    fn sample_xi(&self, rng: &mut dyn rand::RngCore, margin: f64) -> DualElem {
        let r = rng;
        let mut cand = DualElem(vec![0.0; self.v_dim()]);
        for _ in 0..64 {
            cand = DualElem((0..self.v_dim()).map(|_| r.gen_range(-4.0..4.0)).collect());
            if self.in_phi_domain(&cand, margin) {
                return cand;
            }
        }
        cand
    }

    // ----- derived operations (model-independent) -----

    /// Orbit map `φ(q) = q^♭ξ₀`.
    fn phi(&self, q: &QElem) -> DualElem {
        self.flat(q, &self.xi0())
    }

    /// Character pairing `e^{i⟨ξ, v⟩}`. In every model's coordinates the
    /// pairing form `⟨ξ, v⟩` is the Euclidean dot product.
    fn pairing(&self, xi: &DualElem, v: &VElem) -> Complex64 {
        let dot: f64 = xi.0.iter().zip(&v.0).map(|(a, b)| a * b).sum();
        Complex64::from_polar(1.0, dot)
    }

    /// Product in `G = Q ⋉ V`: `(q, v)(q', v') = (qq', v + qv')`.
    fn g_mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let qv = self.q_act_v(&a.q, &b.v);
        GroupElem {
            q: self.q_mul(&a.q, &b.q),
            v: VElem(a.v.0.iter().zip(&qv.0).map(|(x, y)| x + y).collect()),
        }
    }

    /// Inverse in `G`: `(q, v)⁻¹ = (q⁻¹, −q⁻¹v)`.
    fn g_inv(&self, a: &GroupElem) -> GroupElem {
        let qi = self.q_inv(&a.q);
        let w = self.q_act_v(&qi, &a.v);
        GroupElem {
            q: qi,
            v: VElem(w.0.iter().map(|x| -x).collect()),
        }
    }

    /// Modular function of `G`: `Δ(q, v) = Δ_Q(q) / |q|`.
    fn delta_g(&self, g: &GroupElem) -> f64 {
        self.delta_q(&g.q) / self.mod_v(&g.q)
    }
}
