//! An independent oracle for the direction of scaling flows.
//!
//! The one-parameter scaling flow acts on `u = ln|q|` by translation, so
//! exponentiating the spectral differentiation matrix on a periodic
//! `u`-grid must reproduce a translate: `e^{-b·d/du} g = g(· − b)`. This
//! pins down the sign convention independently of the operator layer. The
//! companion parity check fixes how a negative scale factor permutes the
//! two components of `ℝ*`.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::rel_dist;

/// Periodic grid on `[-l, l)` with `n` nodes.
pub struct FlowOracle {
    pub n: usize,
    pub l: f64,
    pub h: f64,
}

impl FlowOracle {
    pub fn new(n: usize, l: f64) -> FlowOracle {
        FlowOracle {
            n,
            l,
            h: 2.0 * l / n as f64,
        }
    }

    pub fn u(&self, j: usize) -> f64 {
        -self.l + j as f64 * self.h
    }

    /// Dense spectral differentiation matrix, built by differentiating the
    /// delta basis through the FFT (Nyquist mode dropped, so the matrix is
    /// exactly real antisymmetric).
    pub fn diff_matrix(&self) -> Array2<f64> {
        let n = self.n;
        let mut planner = FftPlanner::<f64>::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let period = 2.0 * self.l;
        let mut d = Array2::zeros((n, n));
        for j in 0..n {
            let mut buf: Vec<Complex64> = vec![Complex64::default(); n];
            buf[j] = Complex64::new(1.0, 0.0);
            fwd.process(&mut buf);
            for (k, v) in buf.iter_mut().enumerate() {
                let freq = if k <= n / 2 { k as isize } else { k as isize - n as isize };
                let freq = if k == n / 2 { 0 } else { freq };
                *v *= Complex64::new(0.0, 2.0 * std::f64::consts::PI * freq as f64 / period);
            }
            inv.process(&mut buf);
            for k in 0..n {
                d[[k, j]] = buf[k].re / n as f64;
            }
        }
        d
    }

    /// `e^A` by scaling-and-squaring with a Taylor tail.
    pub fn expm(a: &Array2<f64>) -> Array2<f64> {
        let n = a.nrows();
        let norm = a
            .outer_iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0f64, f64::max);
        let s = norm.log2().ceil().max(0.0) as u32 + 1;
        let scaled = a.mapv(|x| x / f64::powi(2.0, s as i32));
        let mut result = Array2::eye(n);
        let mut term = Array2::eye(n);
        for k in 1..=20 {
            term = term.dot(&scaled).mapv(|x| x / k as f64);
            result = result + &term;
        }
        for _ in 0..s {
            result = result.dot(&result);
        }
        result
    }

    fn gaussian(&self, center: f64, sigma: f64) -> Array1<f64> {
        Array1::from_shape_fn(self.n, |j| {
            let u = self.u(j) - center;
            (-u * u / (2.0 * sigma * sigma)).exp()
        })
    }

    /// Relative error of `e^{-bD} g` against the exact translate
    /// `g(· − b)` for a centered Gaussian.
    pub fn flow_defect(&self, b: f64) -> f64 {
        self.directional_defect(-b, b)
    }

    /// Same comparison with the exponent sign flipped; a correct sign
    /// convention makes this large.
    pub fn wrong_direction_defect(&self, b: f64) -> f64 {
        self.directional_defect(b, b)
    }

    fn directional_defect(&self, exponent_scale: f64, shift: f64) -> f64 {
        let d = self.diff_matrix();
        let flow = Self::expm(&d.mapv(|x| x * exponent_scale));
        let g = self.gaussian(0.0, 0.8);
        let moved = flow.dot(&g);
        let exact = self.gaussian(shift, 0.8);
        let num: f64 = (&moved - &exact).iter().map(|x| x * x).sum();
        let den: f64 = exact.iter().map(|x| x * x).sum();
        (num / den).sqrt()
    }

    /// A negative scale factor `s` acts on functions of `q ∈ ℝ*` by
    /// swapping the two components of `u = ln|q|` and translating by
    /// `ln|s|`: check this closed map against direct evaluation.
    pub fn parity_swap_defect(&self, s: f64) -> f64 {
        assert!(s < 0.0);
        // Two independent smooth profiles for the q > 0 / q < 0 components.
        let fp = |u: f64| (-(u - 0.3) * (u - 0.3)).exp();
        let fm = |u: f64| 0.5 * (-(u + 0.1) * (u + 0.1) / 1.3).exp();
        let eval = |q: f64| if q > 0.0 { fp(q.ln()) } else { fm((-q).ln()) };
        let shift = s.abs().ln();
        let mut worst: f64 = 0.0;
        for j in 0..self.n {
            let u = self.u(j);
            // Direct: (f ∘ σ_s)(±e^u) with σ_s(q) = q/s.
            let direct_p = eval(u.exp() / s);
            let direct_m = eval(-u.exp() / s);
            // Closed map: component swap plus translation by ln|s|.
            let closed_p = fm(u - shift);
            let closed_m = fp(u - shift);
            worst = worst.max(rel_dist(&[direct_p, direct_m], &[closed_p, closed_m]));
        }
        worst
    }
}
