//! The twisted star product in the partial-Fourier picture.
//!
//! `(𝓕(f₁ ⋆ f₂))(q, ξ) = ∫ (𝓕f₁)(q, ξ') (𝓕f₂)(φ⁻¹(φ(q) − ξ'), ξ − ξ') dξ'`.
//!
//! Both factors and the output live on the refined lattice (spacing
//! `h_ξ/2`): the quadrature variable `ξ'` runs over the primal (odd-index)
//! sublattice, and because primal minus primal lands on the even sublattice
//! every lookup `φ(q) − ξ'` and `ξ − ξ'` is an exact lattice point — no
//! interpolation occurs inside the product. Out-of-window lookups are
//! dropped and tallied.

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::Grid;

/// Result of a star product: the refined-lattice output plus the fraction
/// of quadrature terms whose lookup left the window.
pub struct StarResult {
    pub out: Array2<Complex64>,
    pub dropped_fraction: f64,
}

/// Compute `f₁ ⋆ f₂` on the refined lattice.
pub fn star(g: &Grid, f1: &Array2<Complex64>, f2: &Array2<Complex64>) -> StarResult {
    let m = g.n_ref();
    assert_eq!(f1.dim(), (m, m));
    assert_eq!(f2.dim(), (m, m));
    let n = g.n;
    let mut out = Array2::default((m, m));
    let stats: Vec<(u64, u64)> = out
        .outer_iter_mut()
        .into_par_iter()
        .enumerate()
        .map(|(rq, mut row)| {
            let mut dropped = 0u64;
            let mut total = 0u64;
            if rq == n {
                // φ(q) undefined on the ξ = 0 row.
                return (0, 0);
            }
            for rxi in 0..m {
                let mut acc = Complex64::default();
                // ξ' runs over the primal sublattice r' = 2l+1.
                for l in 0..n {
                    let rp = 2 * l + 1;
                    total += 1;
                    // φ(q) − ξ' has refined index rq − r' + N (exact).
                    let iq = rq as isize - rp as isize + n as isize;
                    let ix = rxi as isize - rp as isize + n as isize;
                    if iq < 0 || iq >= m as isize || ix < 0 || ix >= m as isize {
                        dropped += 1;
                        continue;
                    }
                    if iq as usize == n {
                        // lookup hit the puncture φ⁻¹(0); the integrand
                        // carries no mass there (the factor vanishes).
                        continue;
                    }
                    acc += f1[[rq, rp]] * f2[[iq as usize, ix as usize]];
                }
                row[rxi] = acc * g.w_xi;
            }
            (dropped, total)
        })
        .collect();
    let dropped: u64 = stats.iter().map(|s| s.0).sum();
    let total: u64 = stats.iter().map(|s| s.1).sum();
    StarResult {
        out,
        dropped_fraction: if total == 0 {
            0.0
        } else {
            dropped as f64 / total as f64
        },
    }
}

/// Restrict a refined-lattice function to the primal `(q_l, ξ_m)` grid.
pub fn restrict_primal(g: &Grid, f: &Array2<Complex64>) -> Array2<Complex64> {
    Array2::from_shape_fn((g.n, g.n), |(l, m)| {
        f[[g.ref_of_primal(l), g.ref_of_primal(m)]]
    })
}

/// Squared norm of a refined-lattice function restricted to the primal grid
/// (partial-Fourier measure `w_ξ²` per node).
pub fn norm2_primal(g: &Grid, f: &Array2<Complex64>) -> f64 {
    let mut s = 0.0;
    for l in 0..g.n {
        for m in 0..g.n {
            s += f[[g.ref_of_primal(l), g.ref_of_primal(m)]].norm_sqr();
        }
    }
    s * g.w_xi * g.w_xi
}

/// Homomorphism defect `‖Op(f₁⋆f₂) − Op(f₁)Op(f₂)‖_F / (‖f₁‖‖f₂‖)`
/// at one grid size, for a pair of test-family members.
pub fn homomorphism_defect(
    g: &Grid,
    f1: &super::testfam::TestMember,
    f2: &super::testfam::TestMember,
) -> f64 {
    use super::kn::{hs_norm, op_kn};
    let s = star(g, &f1.to_ref(g), &f2.to_ref(g));
    // Back to the (q, v) picture: inverse DFT in ξ per q-row.
    let f12_qxi = restrict_primal(g, &s.out);
    let f12_qv = g.fourier_v_inv(&f12_qxi);
    let k12 = op_kn(g, &f12_qv);
    let k1 = op_kn(g, &f1.to_qv(g));
    let k2 = op_kn(g, &f2.to_qv(g));
    // Operator product with the h_v quadrature weight (kernels compose as
    // (K₁K₂)(v,v') = ∫K₁(v,w)K₂(w,v')dw).
    let prod = k1.dot(&k2).mapv(|z| z * g.h_v);
    let diff = &k12 - &prod;
    hs_norm(g, &diff) / (f1.norm_continuum() * f2.norm_continuum())
}

/// Associativity defect `‖(f₁⋆f₂)⋆f₃ − f₁⋆(f₂⋆f₃)‖ / ∏‖fᵢ‖` on the primal
/// grid.
pub fn associativity_defect(
    g: &Grid,
    f1: &super::testfam::TestMember,
    f2: &super::testfam::TestMember,
    f3: &super::testfam::TestMember,
) -> f64 {
    let a = star(g, &star(g, &f1.to_ref(g), &f2.to_ref(g)).out, &f3.to_ref(g));
    let b = star(g, &f1.to_ref(g), &star(g, &f2.to_ref(g), &f3.to_ref(g)).out);
    let diff = &a.out - &b.out;
    let norms = f1.norm_continuum() * f2.norm_continuum() * f3.norm_continuum();
    (norm2_primal(g, &diff)).sqrt() / norms
}
