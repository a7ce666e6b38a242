//! Grid-layer unit tests: transform round trips, Plancherel, closed-form
//! Gaussian transforms, quadrature of the multiplicative measure, kernel
//! isometry, and the exact lattice identities of the diagonal semigroup.

use affq_core::numgrid::grid::Grid;
use affq_core::numgrid::kn::{hs_norm, op_kn};
use affq_core::numgrid::star::star;
use affq_core::numgrid::testfam::{test_family, TestMember};
use affq_core::numgrid::tz::{chi_star_defect, tz_semigroup_defect};
use ndarray::Array2;
use num_complex::Complex64;

#[test]
fn grid_geometry() {
    let g = Grid::new(128, 12.0);
    // ξ-spacing depends only on the window length, not on N.
    assert!((g.h_xi - std::f64::consts::PI / 12.0).abs() < 1e-15);
    assert!((Grid::new(256, 12.0).h_xi - g.h_xi).abs() < 1e-15);
    // v-nodes are symmetric, ξ-nodes half-offset (never zero).
    assert!((g.v(64)).abs() < 1e-15);
    for l in 0..g.n {
        assert!(g.xi(l).abs() > 1e-6);
        // q-nodes are the φ⁻¹-image of the ξ-nodes.
        assert!((g.q(l) + 1.0 / g.xi(l)).abs() < 1e-12);
    }
    // Refined lattice: odd rows are the primal nodes.
    for l in 0..g.n {
        assert!((g.xi_ref(g.ref_of_primal(l)) - g.xi(l)).abs() < 1e-12);
    }
}

#[test]
fn dft_round_trip_and_plancherel() {
    let g = Grid::new(128, 12.0);
    let fam = test_family();
    let f = fam[0].to_qv(&g);
    let hat = g.fourier_v(&f);
    let back = g.fourier_v_inv(&hat);
    let diff = &back - &f;
    let rel = diff.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
        / f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    assert!(rel < 1e-12, "round trip {rel}");
    let a = g.norm2_qv(&f);
    let b = g.norm2_qxi(&hat);
    assert!(((a - b) / a).abs() < 1e-12, "Plancherel {a} vs {b}");
}

#[test]
fn gaussian_transform_matches_closed_form() {
    let g = Grid::new(256, 12.0);
    for f in test_family() {
        let hat = g.fourier_v(&f.to_qv(&g));
        let exact = f.to_qxi(&g);
        let diff = &hat - &exact;
        let rel = (g.norm2_qxi(&diff) / g.norm2_qxi(&exact)).sqrt();
        assert!(rel < 1e-8, "transform error {rel}");
    }
}

#[test]
fn multiplicative_measure_quadrature() {
    // Σ g(q_l)|q_l| w_ξ reproduces ∫ g dμ_Q (dμ_Q = dq/2π|q|) for a
    // window supported well inside the coverage of the log|q| axis.
    let g = Grid::new(1024, 12.0);
    let (mu, s) = (-1.0, 0.5);
    let mut sum = 0.0;
    for l in 0..g.n {
        let u = g.q(l).abs().ln();
        sum += (-(u - mu) * (u - mu) / (2.0 * s * s)).exp() * g.q(l).abs() * g.w_xi;
    }
    // Both sign components contribute: 2·√(2π)s / 2π.
    let exact = 2.0 * (2.0 * std::f64::consts::PI).sqrt() * s / (2.0 * std::f64::consts::PI);
    // The ξ-spacing is set by the window (π/12), so the midpoint-rule
    // error floor is ~1e-6 regardless of N.
    assert!(((sum - exact) / exact).abs() < 5e-6, "{sum} vs {exact}");
}

#[test]
fn continuum_norm_matches_grid_norm() {
    let g = Grid::new(512, 12.0);
    for f in test_family() {
        let n2 = g.norm2_qv(&f.to_qv(&g));
        let exact = f.norm_continuum() * f.norm_continuum();
        assert!(((n2 - exact) / exact).abs() < 1e-4, "{n2} vs {exact}");
    }
}

#[test]
fn kernel_map_is_isometric_on_the_lattice() {
    // The discrete symbol → kernel map preserves the transported grid
    // norm exactly (up to roundoff); quadrature enters only when grid
    // norms are compared against continuum ones.
    let g = Grid::new(128, 12.0);
    let fam = test_family();
    let f = fam[2].to_qv(&g);
    let k = op_kn(&g, &f);
    let a = hs_norm(&g, &k);
    let b = g.norm2_qv(&f).sqrt();
    assert!(((a - b) / b).abs() < 1e-12, "{a} vs {b}");
}

#[test]
fn star_index_algebra_is_exact_for_deltas() {
    // F₁ a delta at primal refined node (r₁, c₁): the convolution places
    // F₂'s contribution at exactly one shifted index per output node.
    let g = Grid::new(16, 6.0);
    let m = g.n_ref();
    let (r1, c1) = (g.ref_of_primal(10), g.ref_of_primal(5));
    let mut f1: Array2<Complex64> = Array2::default((m, m));
    f1[[r1, c1]] = Complex64::new(1.0, 0.0);
    let mut f2: Array2<Complex64> = Array2::default((m, m));
    for r in 0..m {
        for c in 0..m {
            if r != g.n {
                f2[[r, c]] = Complex64::new((r as f64) + 0.01 * (c as f64), 0.0);
            }
        }
    }
    let out = star(&g, &f1, &f2).out;
    for rq in 0..m {
        for rxi in 0..m {
            let expect = {
                let iq = rq as isize - c1 as isize + g.n as isize;
                let ix = rxi as isize - c1 as isize + g.n as isize;
                if rq == g.n
                    || rq != r1
                    || iq < 0
                    || iq >= m as isize
                    || ix < 0
                    || ix >= m as isize
                    || iq as usize == g.n
                {
                    Complex64::default()
                } else {
                    f2[[iq as usize, ix as usize]] * g.w_xi
                }
            };
            assert!(
                (out[[rq, rxi]] - expect).norm() < 1e-13,
                "node ({rq},{rxi}): {} vs {expect}",
                out[[rq, rxi]]
            );
        }
    }
}

#[test]
fn tz_commutation_is_lattice_exact() {
    // M(|q|^{-z})(f₁ ⋆ |q|^{z}F₂) = (T_z f₁) ⋆ F₂ holds node-for-node on
    // the lattice because the shifted q-argument satisfies q' = q/(1+qξ').
    let g = Grid::new(64, 12.0);
    let fam = test_family();
    let d = chi_star_defect(&g, Complex64::new(0.25, -0.5), &fam[0], &fam[1]);
    assert!(d < 1e-12, "relative defect {d}");
}

#[test]
fn tz_semigroup_is_lattice_exact() {
    let g = Grid::new(64, 12.0);
    let fam = test_family();
    let d = tz_semigroup_defect(
        &g,
        Complex64::new(0.4, 0.3),
        Complex64::new(-0.2, 0.6),
        &fam[3],
    );
    assert!(d < 1e-10, "semigroup defect {d}");
}

#[test]
fn member_respects_sign_component() {
    let f = TestMember {
        sign: 1.0,
        amp: 1.0,
        mu_u: -1.0,
        s_u: 0.6,
        mu_v: 0.0,
        s_v: 1.0,
        omega: 0.0,
    };
    assert_eq!(f.eval_qv(-1.0, 0.0), Complex64::default());
    assert!(f.eval_qv(1.0, 0.0).norm() > 0.0);
    assert_eq!(f.eval_qxi(f64::INFINITY, 0.0), Complex64::default());
}
