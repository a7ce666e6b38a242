//! Grid geometry and the unitary discrete Fourier transform.
//!
//! Conventions (matched to the continuum pairing `e^{iξv}`, `dξ = dy/2π`):
//!
//! * `v`-grid: `v_k = (k − N/2)·h_v`, `h_v = 2L/N`, `k = 0..N`.
//! * primal `ξ`-grid: `ξ_l = (l − N/2 + 1/2)·h_ξ`, `h_ξ = 2π/(N·h_v)`.
//!   The half-cell offset keeps the singular values `ξ = 0` and
//!   `ξ₀ + ξ = 0` (i.e. `ξ = 1`) off the lattice for every `N`.
//! * `q`-grid: `q_l = φ⁻¹(ξ_l) = −1/ξ_l` — exactly the `φ⁻¹`-image of the
//!   primal `ξ`-grid, so `∫ g dμ_Q = Σ g(q_l)|q_l|w_ξ` transports the Haar
//!   quadrature without interpolation, with `w_ξ = h_ξ/2π` per node.
//! * refined lattice: spacing `h_ξ/2`, nodes `ξ̃_r = (r − N)·h_ξ/2` for
//!   `r = 0..2N`. The primal grid is the odd-`r` sublattice; differences of
//!   primal nodes are even-`r` nodes, which is what makes the star-product
//!   lookup `φ(q) − ξ'` land exactly on the lattice.
//!
//! With these spacings `h_v·h_ξ = 2π/N`, and the forward/inverse DFTs below
//! are exactly unitary between `Σ|f_k|²h_v` and `Σ|F_l|²w_ξ`.

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

/// Grid geometry for one copy of the `ax+b` phase space.
#[derive(Clone, Debug)]
pub struct Grid {
    /// Number of nodes `N` (power of two).
    pub n: usize,
    /// Half-width `L` of the `v`-window.
    pub l_v: f64,
    /// `v` spacing `2L/N`.
    pub h_v: f64,
    /// Primal `ξ` spacing `2π/(N h_v) = π/L`.
    pub h_xi: f64,
    /// Quadrature weight per `ξ`-node, `h_ξ/2π`.
    pub w_xi: f64,
}

impl Grid {
    pub fn new(n: usize, l_v: f64) -> Grid {
        assert!(n.is_power_of_two(), "grid size must be a power of two");
        let h_v = 2.0 * l_v / n as f64;
        let h_xi = 2.0 * std::f64::consts::PI / (n as f64 * h_v);
        Grid {
            n,
            l_v,
            h_v,
            h_xi,
            w_xi: h_xi / (2.0 * std::f64::consts::PI),
        }
    }

    /// `v_k = (k − N/2)h_v`.
    pub fn v(&self, k: usize) -> f64 {
        (k as f64 - self.n as f64 / 2.0) * self.h_v
    }

    /// Primal `ξ_l = (l − N/2 + 1/2)h_ξ`.
    pub fn xi(&self, l: usize) -> f64 {
        (l as f64 - self.n as f64 / 2.0 + 0.5) * self.h_xi
    }

    /// `q_l = φ⁻¹(ξ_l) = −1/ξ_l`.
    pub fn q(&self, l: usize) -> f64 {
        -1.0 / self.xi(l)
    }

    /// Refined lattice node `ξ̃_r = (r − N)h_ξ/2`, `r = 0..=2N`.
    pub fn xi_ref(&self, r: usize) -> f64 {
        (r as f64 - self.n as f64) * self.h_xi / 2.0
    }

    /// Refined `q̃_r = −1/ξ̃_r` (infinite at `r = N`; callers must skip it).
    pub fn q_ref(&self, r: usize) -> f64 {
        -1.0 / self.xi_ref(r)
    }

    /// Refined index of the primal node `l`: `r = 2l + 1`.
    pub fn ref_of_primal(&self, l: usize) -> usize {
        2 * l + 1
    }

    /// Number of refined nodes, `2N + 1`.
    pub fn n_ref(&self) -> usize {
        2 * self.n + 1
    }

    /// Forward transform `F_l = h_v Σ_k f_k e^{−iξ_l v_k}` (per row of a
    /// `(rows × N)` array, transforming the second index `v → ξ`).
    pub fn fourier_v(&self, f: &Array2<Complex64>) -> Array2<Complex64> {
        self.dft(f, FftDirection::Forward)
    }

    /// Inverse transform `f_k = w_ξ Σ_l F_l e^{iξ_l v_k}`.
    pub fn fourier_v_inv(&self, f: &Array2<Complex64>) -> Array2<Complex64> {
        self.dft(f, FftDirection::Inverse)
    }

    /// The shared twiddle bookkeeping. Writing `ξ_l v_k = 2π(l+a)(k+b)/N`
    /// with `a = 1/2 − N/2`, `b = −N/2`, the continuum-convention transform
    /// is a plain length-`N` FFT conjugated by two diagonal phase factors.
    fn dft(&self, f: &Array2<Complex64>, dir: FftDirection) -> Array2<Complex64> {
        let n = self.n;
        assert_eq!(f.ncols(), n);
        let s = match dir {
            FftDirection::Forward => -1.0,
            FftDirection::Inverse => 1.0,
        };
        let a = 0.5 - n as f64 / 2.0;
        let b = -(n as f64) / 2.0;
        let tau = 2.0 * std::f64::consts::PI / n as f64;
        let scale = match dir {
            FftDirection::Forward => self.h_v,
            FftDirection::Inverse => self.w_xi,
        };
        // Forward maps index k (offset b) to index l (offset a); inverse
        // swaps the roles.
        let (off_in, off_out) = match dir {
            FftDirection::Forward => (b, a),
            FftDirection::Inverse => (a, b),
        };
        let pre: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, s * tau * off_out * (j as f64 + off_in)))
            .collect();
        let post: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, s * tau * off_in * j as f64) * scale)
            .collect();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft(n, dir);
        let mut out = Array2::zeros((f.nrows(), n));
        let mut buf = vec![Complex64::default(); n];
        for (i, row) in f.outer_iter().enumerate() {
            for j in 0..n {
                buf[j] = row[j] * pre[j];
            }
            fft.process(&mut buf);
            for j in 0..n {
                out[[i, j]] = buf[j] * post[j];
            }
        }
        out
    }

    /// Squared norm of a `(q_l, v_k)`-indexed sample of `f ∈ L²(G)`:
    /// `Σ |f|² w_ξ h_v` (the `|q|⁻¹dμ_Q` quadrature transported to `ξ`).
    pub fn norm2_qv(&self, f: &Array2<Complex64>) -> f64 {
        f.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.w_xi * self.h_v
    }

    /// Squared norm of a `(q_l, ξ_m)`-indexed sample in the partial-Fourier
    /// picture: `Σ |F|² w_ξ²`.
    pub fn norm2_qxi(&self, f: &Array2<Complex64>) -> f64 {
        f.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.w_xi * self.w_xi
    }
}
