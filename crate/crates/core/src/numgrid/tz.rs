//! The analytic family `T_z`: multiplication by `|1 + qξ|^{-z}` in the
//! partial-Fourier picture, and its compatibility with the star product.
//!
//! `|1 + qξ|^{-z}` is the modular function `Δ_G^{-z}` read through the dual
//! chart, and it intertwines multiplication by `|q|^{-z}` with the left
//! star action:
//!
//! `M(|q|^{-z}) · L_⋆(f) · M(|q|^{z}) = L_⋆(T_z f)`.
//!
//! On the lattice this identity is exact: the star quadrature only ever
//! evaluates `|φ⁻¹(φ(q) − ξ')|^z |q|^{-z} = |1 + qξ'|^{-z}` at lattice
//! points, and that scalar identity holds pointwise.

use ndarray::Array2;
use num_complex::Complex64;

use super::grid::Grid;
use super::star::{norm2_primal, star};

/// Apply `T_z` to a refined-lattice function. Nodes with `1 + qξ = 0`
/// (the lattice diagonal, where the star quadrature drops the term anyway)
/// are zeroed to keep complex powers finite.
pub fn t_z(g: &Grid, z: Complex64, f: &Array2<Complex64>) -> Array2<Complex64> {
    let m = g.n_ref();
    Array2::from_shape_fn((m, m), |(rq, rxi)| {
        if rq == g.n || rq == rxi {
            return Complex64::default();
        }
        let s = (1.0 + g.q_ref(rq) * g.xi_ref(rxi)).abs();
        f[[rq, rxi]] * (-z * s.ln()).exp()
    })
}

/// Multiply a refined-lattice function by `|q|^{-z}`.
fn mul_q_pow(g: &Grid, z: Complex64, f: &Array2<Complex64>) -> Array2<Complex64> {
    let m = g.n_ref();
    Array2::from_shape_fn((m, m), |(rq, rxi)| {
        if rq == g.n {
            return Complex64::default();
        }
        f[[rq, rxi]] * (-z * g.q_ref(rq).abs().ln()).exp()
    })
}

/// Relative defect of `M(|q|^{-z}) (f₁ ⋆ |q|^{z} f₂) = (T_z f₁) ⋆ f₂`
/// for a pair of test-family members.
pub fn chi_star_defect(
    g: &Grid,
    z: Complex64,
    f1: &super::testfam::TestMember,
    f2: &super::testfam::TestMember,
) -> f64 {
    let a1 = f1.to_ref(g);
    let a2 = f2.to_ref(g);
    let neg = -z;
    let lhs = mul_q_pow(g, z, &star(g, &a1, &mul_q_pow(g, neg, &a2)).out);
    let rhs = star(g, &t_z(g, z, &a1), &a2).out;
    let diff = &lhs - &rhs;
    norm2_primal(g, &diff).sqrt() / (norm2_primal(g, &lhs).sqrt().max(1e-300))
}

/// Relative defect of the semigroup law `T_z T_w = T_{z+w}`.
pub fn tz_semigroup_defect(
    g: &Grid,
    z: Complex64,
    w: Complex64,
    f: &super::testfam::TestMember,
) -> f64 {
    let a = f.to_ref(g);
    let lhs = t_z(g, z, &t_z(g, w, &a));
    let rhs = t_z(g, z + w, &a);
    let diff = &lhs - &rhs;
    norm2_primal(g, &diff).sqrt() / norm2_primal(g, &rhs).sqrt().max(1e-300)
}
