//! Kohn–Nirenberg quantization on the grid and its unitarity check.
//!
//! The (anti-ordered) quantization of a symbol `f(q, v)` is the operator on
//! `L²(V)` with kernel
//!
//! `K(v, v') = ∫ e^{iξ(v − v')} f(φ⁻¹(ξ), v') dξ`,
//!
//! discretized on the matched grids as
//! `K_{km} = Σ_l e^{iξ_l(v_k − v_m)} f[l, m] · w_ξ`.
//!
//! With the transported quadrature weights the discrete map `f ↦ K` is
//! exactly isometric from `Σ|f|² w_ξ h_v` to the Hilbert–Schmidt norm
//! `Σ|K|² h_v²`, so the meaningful unitarity test compares the grid
//! Hilbert–Schmidt norm against the *continuum* `‖f‖_{L²(G)}` of the test
//! family: the defect is pure quadrature error and must shrink as the grid
//! grows.

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::Grid;
use super::testfam::TestMember;

/// Assemble the kernel matrix `K` of the quantized operator from the
/// `(q_l, v_m)` sample of the symbol.
pub fn op_kn(g: &Grid, f_qv: &Array2<Complex64>) -> Array2<Complex64> {
    let n = g.n;
    assert_eq!(f_qv.dim(), (n, n));
    // Phase table e^{iξ_l v_k} = e^{2πi(l+a)(k+b)/N} is N-periodic in k−m,
    // so K_{km} depends on the phases only through ξ_l(v_k − v_m).
    let phase: Vec<Vec<Complex64>> = (0..n)
        .map(|l| {
            (0..n)
                .map(|k| Complex64::from_polar(1.0, g.xi(l) * g.v(k)))
                .collect()
        })
        .collect();
    let mut k_mat = Array2::default((n, n));
    k_mat
        .outer_iter_mut()
        .into_par_iter()
        .enumerate()
        .for_each(|(k, mut row)| {
            for m in 0..n {
                let mut acc = Complex64::default();
                for l in 0..n {
                    acc += phase[l][k] * phase[l][m].conj() * f_qv[[l, m]];
                }
                row[m] = acc * g.w_xi;
            }
        });
    k_mat
}

/// Hilbert–Schmidt norm of a kernel matrix: `(Σ |K|² h_v²)^{1/2}`.
pub fn hs_norm(g: &Grid, k: &Array2<Complex64>) -> f64 {
    (k.iter().map(|z| z.norm_sqr()).sum::<f64>() * g.h_v * g.h_v).sqrt()
}

/// `|‖Op(f)‖_HS / ‖f‖_{L²(G)} − 1|` for one test-family member.
pub fn kn_ratio_defect(g: &Grid, f: &TestMember) -> f64 {
    let k = op_kn(g, &f.to_qv(g));
    (hs_norm(g, &k) / f.norm_continuum() - 1.0).abs()
}

/// Worst ratio defect over the family at one grid size.
pub fn kn_ratio_worst(g: &Grid, family: &[TestMember]) -> f64 {
    family
        .iter()
        .map(|f| kn_ratio_defect(g, f))
        .fold(0.0, f64::max)
}
