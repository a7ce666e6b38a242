//! The quasi-regular representation `π(q,v)φ(w) = |q|^{-1/2} φ(q⁻¹(w − v))`
//! on the `v`-grid, and the Duflo–Moore orthogonality check.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;

use super::grid::Grid;
use super::kn::{hs_norm, op_kn};
use super::testfam::TestMember;
use crate::instances::by_name;
use crate::qgops::lambda_op;
use crate::GroupElem;

/// The periodic Dirichlet kernel of the half-offset frequency lattice
/// `ξ_l = (l − N/2 + 1/2)h_ξ`: `D(t) = (1/N)Σ_l e^{iξ_l t}
/// = sin(N h_ξ t/2) / (N sin(h_ξ t/2))`, which is real because the
/// lattice is symmetric. `D(v_k − v_j)` is exactly `δ_{kj}`.
fn dirichlet(g: &Grid, t: f64) -> f64 {
    let s = 0.5 * g.h_xi * t;
    let n = g.n as f64;
    let denom = s.sin();
    if denom.abs() < 1e-12 {
        // Limit at s = kπ (both numerator and denominator vanish).
        (n * s).cos() / s.cos()
    } else {
        (n * s).sin() / (n * denom)
    }
}

/// Apply `π(q, v)` to a `v`-grid vector:
/// `(π(q,v)f)(w) = |q|^{-1/2} f(q⁻¹(w − v))`, with `f` read as its
/// band-limited (trigonometric) interpolant. The interpolant is evaluated
/// exactly through the Dirichlet kernel, so dilation introduces no
/// polynomial-interpolation error even for frequencies near Nyquist.
pub fn pi_apply(g: &Grid, q: f64, v: f64, f: &Array1<Complex64>) -> Array1<Complex64> {
    assert!(q != 0.0);
    let u = pi_matrix(g, q, v);
    u.dot(f)
}

/// The matrix of `π(q, v)` in the delta basis: `U_{kj} = |q|^{-1/2}
/// D((v_k − v)/q − v_j)`.
pub fn pi_matrix(g: &Grid, q: f64, v: f64) -> Array2<Complex64> {
    assert!(q != 0.0);
    let amp = q.abs().sqrt().recip();
    let mut m = Array2::default((g.n, g.n));
    for k in 0..g.n {
        let x = (g.v(k) - v) / q;
        // For |q| = 1 the conjugated kernel has the same v-period as the
        // grid, so the periodic interpolant is exact and may wrap. For a
        // genuine dilation the periods disagree; outside the fundamental
        // window the wrapped values are spurious while the true kernel has
        // decayed, so truncate instead.
        if q.abs() != 1.0 && x.abs() >= g.l_v {
            continue;
        }
        for j in 0..g.n {
            m[[k, j]] = Complex64::new(amp * dirichlet(g, x - g.v(j)), 0.0);
        }
    }
    m
}

/// Sample `λ_g f` for a test-family member directly from the closed form,
/// as a `(q, v)`-grid array. `λ_g` acts on `L²(G)` by left translation with
/// the left-Haar unitarity factor; we read its weight and point map off the
/// one-leg operator so the convention matches the operator layer exactly.
pub fn lambda_g_sample(g: &Grid, gm: &GroupElem, f: &TestMember) -> Array2<Complex64> {
    let model = by_name("axb").expect("registered");
    let op = lambda_op(&model, gm);
    let mut out = Array2::default((g.n, g.n));
    for l in 0..g.n {
        for k in 0..g.n {
            // In the (q, ξ) chart λ_{(q,v)} is a phase times a
            // q-translation, so each node is an exact evaluation of the
            // closed-form 𝓕f at the mapped point.
            let x = crate::XPoint {
                q: crate::QElem(vec![g.q(l)]),
                xi: crate::DualElem(vec![g.xi(k)]),
            };
            let pts = op.map(std::slice::from_ref(&x));
            let w = op.weight_at(std::slice::from_ref(&x));
            out[[l, k]] = w * f.eval_qxi(pts[0].q.0[0], pts[0].xi.0[0]);
        }
    }
    g.fourier_v_inv(&out)
}

/// Equivariance defect `‖Op(λ_g f) − π(g) Op(f) π(g)*‖_F / ‖f‖` for one
/// group element.
pub fn equivariance_defect(g: &Grid, gm: &GroupElem, f: &TestMember) -> f64 {
    let k = op_kn(g, &f.to_qv(g));
    let u = pi_matrix(g, gm.q.0[0], gm.v.0[0]);
    let ustar = u.t().mapv(|z| z.conj());
    // π(g) is unitary on ℓ² with weight h_v; kernels conjugate as
    // U K U* with the same quadrature weight absorbed into U being a
    // plain matrix (U has no h_v factor, so none is needed here).
    let conj = u.dot(&k).dot(&ustar);
    let lhs = op_kn(g, &lambda_g_sample(g, gm, f));
    let diff = &lhs - &conj;
    hs_norm(g, &diff) / f.norm_continuum()
}

/// Worst equivariance defect over the on-grid elements `q = ±1`,
/// `v = v_k` (a spread of on-grid shifts).
pub fn equivariance_on_grid(g: &Grid, f: &TestMember) -> f64 {
    let mut worst: f64 = 0.0;
    for &q in &[1.0, -1.0] {
        for &k in &[g.n / 4, g.n / 2, 5 * g.n / 8, 3 * g.n / 4] {
            let gm = GroupElem {
                q: crate::QElem(vec![q]),
                v: crate::VElem(vec![g.v(k)]),
            };
            worst = worst.max(equivariance_defect(g, &gm, f));
        }
    }
    worst
}

/// Worst equivariance defect over `count` random group elements. The
/// element range keeps the translated-and-dilated symbol supported inside
/// the grid window, so the comparison measures interpolation quality
/// rather than window truncation.
pub fn equivariance_random(g: &Grid, f: &TestMember, count: usize, rng: &mut impl Rng) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let q = {
            let mag: f64 = rng.gen_range(0.6..1.6);
            if rng.gen::<bool>() {
                mag
            } else {
                -mag
            }
        };
        let v = rng.gen_range(-1.5..1.5);
        let gm = GroupElem {
            q: crate::QElem(vec![q]),
            v: crate::VElem(vec![v]),
        };
        worst = worst.max(equivariance_defect(g, &gm, f));
    }
    worst
}

/// Duflo–Moore orthogonality. After the translation part of the matrix
/// coefficient `⟨φ₁, π(g)φ₂⟩` is integrated out in closed form (Plancherel
/// collapses it to a diagonal), what remains is the double `Q`-integral
///
/// `∫∫ |φ₁(q_j⁻¹ q)|² |φ₂(q)|² |q| d_Q(q) |q_j|⁻¹ d_Q(q_j)
///    = (∫|φ₁|² (mod/Δ_Q) d_Q) · ‖φ₂‖²`,
///
/// i.e. the left factor acquires the Duflo–Moore density `mod_v/Δ_Q`.
/// Returns `|lhs/rhs − 1|` for two smooth off-puncture windows.
pub fn duflo_moore_defect(g: &Grid) -> f64 {
    let model = by_name("axb").expect("registered");
    let phi = |c: f64, q: f64| -> f64 {
        let u = q.abs().ln();
        (-((u - c) * (u - c)) / 0.5).exp()
    };
    let phi1 = |q: f64| phi(-0.3, q);
    let phi2 = |q: f64| phi(0.2, q);
    // ‖φ₂‖² in L²(Q, d_Q): Σ |φ₂(q_l)|² |q_l| w_ξ.
    let mut n2 = 0.0;
    for l in 0..g.n {
        let q = g.q(l);
        n2 += phi2(q) * phi2(q) * q.abs() * g.w_xi;
    }
    let mut lhs = 0.0;
    for j in 0..g.n {
        let qj = g.q(j);
        for l in 0..g.n {
            let q = g.q(l);
            let a1 = phi1(q / qj);
            let a2 = phi2(q);
            lhs += a1 * a1 * a2 * a2 * q * q * g.w_xi * g.w_xi;
        }
    }
    let mut rhs = 0.0;
    for l in 0..g.n {
        let q = g.q(l);
        let qe = crate::QElem(vec![q]);
        let weight = model.mod_v(&qe) / model.delta_q(&qe);
        rhs += phi1(q) * phi1(q) * weight * q.abs() * g.w_xi;
    }
    rhs *= n2;
    (lhs / rhs - 1.0).abs()
}
