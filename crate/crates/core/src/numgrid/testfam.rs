//! The seeded test family: modulated Gaussians in `(log|q|, v)` supported on
//! one sign component of `ℝ*`.
//!
//! Each member has closed forms for itself, its partial Fourier transform,
//! and its `L²(G)` norm, so every grid computation can be compared against
//! an exact continuum answer and samples can be taken at arbitrary
//! (including off-lattice) points without interpolation:
//!
//! `f(q,v) = amp·√|q|·exp(−(u−μ_u)²/4s_u²)·exp(−(v−μ_v)²/4s_v²)·e^{iωv}`
//! on the component `sign(q) = sign`, with `u = ln|q|`;
//!
//! `(𝓕_V f)(q,ξ) = amp·√|q|·exp(−(u−μ_u)²/4s_u²)·2s_v√π·
//!                 exp(−s_v²(ξ−ω)²)·e^{i(ω−ξ)μ_v}`;
//!
//! `‖f‖²_{L²(G)} = amp²·s_u·s_v` (measure `|q|⁻¹dμ_Q dv`, `dμ_Q = dq/2π|q|`).
//!
//! The `√|q|` factor cancels the `|q|⁻¹` in the measure so the norm
//! factorizes into two plain Gaussian integrals.

use ndarray::Array2;
use num_complex::Complex64;

use super::grid::Grid;

/// One modulated-Gaussian test function on a sign component of the group.
#[derive(Clone, Debug)]
pub struct TestMember {
    /// Which component of `ℝ*` carries the support (`+1.0` or `−1.0`).
    pub sign: f64,
    pub amp: f64,
    pub mu_u: f64,
    pub s_u: f64,
    pub mu_v: f64,
    pub s_v: f64,
    pub omega: f64,
}

impl TestMember {
    /// Evaluate `f(q, v)`.
    pub fn eval_qv(&self, q: f64, v: f64) -> Complex64 {
        if q == 0.0 || !q.is_finite() || q.signum() != self.sign {
            return Complex64::default();
        }
        let u = q.abs().ln();
        let du = (u - self.mu_u) / self.s_u;
        let dv = (v - self.mu_v) / self.s_v;
        let mag = self.amp * q.abs().sqrt() * (-du * du / 4.0 - dv * dv / 4.0).exp();
        mag * Complex64::from_polar(1.0, self.omega * v)
    }

    /// Evaluate the partial Fourier transform `(𝓕_V f)(q, ξ)`.
    pub fn eval_qxi(&self, q: f64, xi: f64) -> Complex64 {
        if q == 0.0 || !q.is_finite() || q.signum() != self.sign {
            return Complex64::default();
        }
        let u = q.abs().ln();
        let du = (u - self.mu_u) / self.s_u;
        let d = xi - self.omega;
        let mag = self.amp
            * q.abs().sqrt()
            * (-du * du / 4.0).exp()
            * 2.0
            * self.s_v
            * std::f64::consts::PI.sqrt()
            * (-self.s_v * self.s_v * d * d).exp();
        mag * Complex64::from_polar(1.0, -d * self.mu_v)
    }

    /// Exact continuum norm `‖f‖_{L²(G)}`.
    pub fn norm_continuum(&self) -> f64 {
        (self.amp * self.amp * self.s_u * self.s_v).sqrt()
    }

    /// Sample on the `(q_l, v_k)` grid (`N × N`).
    pub fn to_qv(&self, g: &Grid) -> Array2<Complex64> {
        Array2::from_shape_fn((g.n, g.n), |(l, k)| self.eval_qv(g.q(l), g.v(k)))
    }

    /// Sample the partial Fourier transform on the primal `(q_l, ξ_m)` grid.
    pub fn to_qxi(&self, g: &Grid) -> Array2<Complex64> {
        Array2::from_shape_fn((g.n, g.n), |(l, m)| self.eval_qxi(g.q(l), g.xi(m)))
    }

    /// Sample the partial Fourier transform on the full refined lattice
    /// (`(2N+1) × (2N+1)`, `q̃_r × ξ̃_s`); the undefined row `r = N` is zero.
    pub fn to_ref(&self, g: &Grid) -> Array2<Complex64> {
        let m = g.n_ref();
        Array2::from_shape_fn((m, m), |(r, s)| {
            if r == g.n {
                Complex64::default()
            } else {
                self.eval_qxi(g.q_ref(r), g.xi_ref(s))
            }
        })
    }
}

/// The fixed four-member family used by all numerical suites. Parameters
/// are chosen so that (a) ≥99% of each member's mass lies inside the
/// default window (`L_v = 12`, `N ≥ 128`), (b) both sign components are
/// exercised, and (c) the dominant discretization error (the coverage of
/// the `log|q|` axis, which grows with `N`) strictly decreases across
/// `N = 128, 256, 512`.
/// A symbol with a tighter `log|q|` profile, used by the equivariance
/// check. Conjugating by `π(q, v)` translates the symbol along `log|q|`
/// by `ln|q|`, so its `u`-support must stay inside the grid's coverage
/// for every tested group element; the shared family members sit too
/// close to the lower coverage edge for that.
pub fn equivariance_member() -> TestMember {
    TestMember {
        sign: 1.0,
        amp: 1.0,
        mu_u: -0.9,
        s_u: 0.45,
        mu_v: -0.2,
        s_v: 1.0,
        omega: 0.3,
    }
}

pub fn test_family() -> Vec<TestMember> {
    (0..4)
        .map(|k| {
            let kf = k as f64;
            TestMember {
                sign: if k % 2 == 0 { 1.0 } else { -1.0 },
                amp: 1.0 + 0.1 * kf,
                mu_u: -1.1 + 0.05 * kf,
                s_u: 0.65,
                mu_v: 0.3 * kf - 0.5,
                s_v: 1.0 + 0.1 * kf,
                omega: 0.5 * kf - 0.4,
            }
        })
        .collect()
}
