//! Applying point-map operators to lattice functions.
//!
//! One-leg operators act on refined-lattice functions by bicubic
//! interpolation in the uniform `(φ(q), ξ)` chart: the refined lattice is
//! uniform there (`φ(q̃_r) = ξ̃_r`), so a mapped point reads off at the
//! fractional index `φ(q)·2/h_ξ + N`. This cross-checks the exact operator
//! layer against the grid layer.

use ndarray::Array2;
use num_complex::Complex64;

use super::grid::Grid;
use super::star::norm2_primal;
use super::testfam::TestMember;
use crate::instances::by_name;
use crate::qgops::{jcal, ju_u_j, omega_q_direct, u_direct};
use crate::symop::SymOp;
use crate::{DualElem, QElem, XPoint};

/// One-dimensional Catmull-Rom weightings at fractional offset `s ∈ [0,1)`.
fn cr_weights(s: f64) -> [f64; 4] {
    let s2 = s * s;
    let s3 = s2 * s;
    [
        0.5 * (-s3 + 2.0 * s2 - s),
        0.5 * (3.0 * s3 - 5.0 * s2 + 2.0),
        0.5 * (-3.0 * s3 + 4.0 * s2 + s),
        0.5 * (s3 - s2),
    ]
}

/// Bicubic interpolation of a refined-lattice function at fractional
/// refined indices `(tq, txi)`. Out-of-window neighbours read as zero, and
/// the `q`-puncture row `N` reads as zero (functions stored here vanish on
/// it by convention).
fn bicubic(g: &Grid, f: &Array2<Complex64>, tq: f64, txi: f64) -> Complex64 {
    let m = g.n_ref() as isize;
    let iq = tq.floor() as isize;
    let ix = txi.floor() as isize;
    let wq = cr_weights(tq - iq as f64);
    let wx = cr_weights(txi - ix as f64);
    let mut acc = Complex64::default();
    for (a, wa) in wq.iter().enumerate() {
        let r = iq - 1 + a as isize;
        if r < 0 || r >= m || r == g.n as isize {
            continue;
        }
        for (b, wb) in wx.iter().enumerate() {
            let c = ix - 1 + b as isize;
            if c < 0 || c >= m {
                continue;
            }
            acc += f[[r as usize, c as usize]] * (wa * wb);
        }
    }
    acc
}

/// Apply a one-leg operator to a refined-lattice function:
/// `(Tf)(x) = w(x) f(σx)`, conjugating the sample for antilinear `T`.
/// Guard-rejected nodes and the puncture row are zeroed.
pub fn apply_one_leg(g: &Grid, op: &SymOp, margin: f64, f: &Array2<Complex64>) -> Array2<Complex64> {
    assert_eq!(op.legs(), 1);
    let m = g.n_ref();
    let half = 0.5 * g.h_xi;
    Array2::from_shape_fn((m, m), |(rq, rxi)| {
        if rq == g.n {
            return Complex64::default();
        }
        let x = [XPoint {
            q: QElem(vec![g.q_ref(rq)]),
            xi: DualElem(vec![g.xi_ref(rxi)]),
        }];
        if !op.guard_at(&x, margin) {
            return Complex64::default();
        }
        let y = op.map(&x);
        let w = op.weight_at(&x);
        // Fractional refined indices of the mapped point in the φ chart.
        let tq = -1.0 / y[0].q.0[0] / half + g.n as f64;
        let txi = y[0].xi.0[0] / half + g.n as f64;
        let sample = bicubic(g, f, tq, txi);
        if op.is_antilinear() {
            w * sample.conj()
        } else {
            w * sample
        }
    })
}

/// Cross-layer check: the scaling operator applied two ways.
///
/// Route A evaluates its point map as an exact refined-lattice index shift
/// `(q, ξ) ↦ index (r_q − r_ξ + N, r_ξ)` — no interpolation. Route B
/// applies the three-factor conjugated form on the grid, each factor via
/// bicubic interpolation. The middle factor's weight diverges on the guard
/// curve, so both routes are compared on the common domain where every
/// factor's guard holds with margin `margin`; the mask is evaluated along
/// the exact orbit of each node. Returns the relative primal-grid distance.
pub fn cross_layer_defect(g: &Grid, margin: f64, f: &TestMember) -> f64 {
    let model = by_name("axb").expect("registered");
    let arr = f.to_ref(g);
    let m = g.n_ref();
    let direct = u_direct(&model);
    let j = jcal(&model);
    let mid = ju_u_j(&model);
    // Common domain: every guard along the exact three-factor orbit holds.
    let mask = Array2::from_shape_fn((m, m), |(rq, rxi)| {
        if rq == g.n {
            return false;
        }
        let x = [XPoint {
            q: QElem(vec![g.q_ref(rq)]),
            xi: DualElem(vec![g.xi_ref(rxi)]),
        }];
        if !direct.guard_at(&x, margin) || !j.guard_at(&x, margin) {
            return false;
        }
        let x1 = j.map(&x);
        if !mid.guard_at(&x1, margin) {
            return false;
        }
        let x2 = mid.map(&x1);
        j.guard_at(&x2, margin)
    });
    // Route A: exact lookup for the direct form. Its weight is 1 and
    // σ(q, ξ) = (φ⁻¹(φ(q) − ξ), ξ), i.e. chart index r_q − r_ξ + N.
    let route_a = Array2::from_shape_fn((m, m), |(rq, rxi)| {
        let i = rq as isize - rxi as isize + g.n as isize;
        if !mask[[rq, rxi]] || i < 0 || i >= m as isize || i as usize == g.n {
            return Complex64::default();
        }
        arr[[i as usize, rxi]]
    });
    // Route B: rightmost factor applied first, then restricted to the
    // common domain. The factors are applied with a near-zero guard margin
    // so the intermediate lattice functions carry their true values out to
    // the domain edge; cutting them at `margin` instead would put a cliff
    // inside the interpolation stencils of kept nodes near the mask
    // boundary.
    let tiny = 1e-12;
    let b_full = apply_one_leg(g, &j, tiny, &apply_one_leg(g, &mid, tiny, &apply_one_leg(g, &j, tiny, &arr)));
    let route_b = Array2::from_shape_fn((m, m), |(rq, rxi)| {
        if mask[[rq, rxi]] {
            b_full[[rq, rxi]]
        } else {
            Complex64::default()
        }
    });
    let diff = &route_a - &route_b;
    norm2_primal(g, &diff).sqrt() / norm2_primal(g, &route_a).sqrt().max(1e-300)
}

/// One row of the grid deformation table: the relative norm of
/// `(Ω_θ − 1)(F₁ ⊗ F₂)` on the primal grid.
///
/// The deformation leaves leg 1 pointwise fixed and its weight and leg-2
/// map depend only on ξ₁, so the squared norm factorizes per ξ₁-column:
/// the leg-2 factor is summed over the primal grid with `F₂` evaluated
/// from its closed form at the mapped (generally off-lattice) points — no
/// interpolation enters this table.
pub fn deformation_grid_norm(g: &Grid, theta: f64, f1: &TestMember, f2: &TestMember) -> f64 {
    let model = by_name("axb").expect("registered");
    let om = omega_q_direct(&model, &QElem(vec![theta]));
    let margin = 1e-9;
    let mut total = 0.0;
    let mut norm1 = 0.0;
    let mut norm2 = 0.0;
    for l2 in 0..g.n {
        let q = g.q(l2);
        for m2 in 0..g.n {
            norm2 += f2.eval_qxi(q, g.xi(m2)).norm_sqr() * q.abs() * g.w_xi * g.w_xi;
        }
    }
    for l1 in 0..g.n {
        let xi1 = g.xi(l1);
        // Leg-1 column mass Σ_q |F₁(q, ξ₁)|² |q| w_ξ · w_ξ.
        let mut s1 = 0.0;
        for lq in 0..g.n {
            s1 += f1.eval_qxi(g.q(lq), xi1).norm_sqr() * g.q(lq).abs() * g.w_xi * g.w_xi;
        }
        norm1 += s1;
        // Leg-2 transform for this ξ₁ (leg-1 point placement is otherwise
        // irrelevant to σ and the weight).
        let mut defect = 0.0;
        let mut skipped = false;
        for l2 in 0..g.n {
            for m2 in 0..g.n {
                let x = [
                    XPoint {
                        q: QElem(vec![1.0]),
                        xi: DualElem(vec![xi1]),
                    },
                    XPoint {
                        q: QElem(vec![g.q(l2)]),
                        xi: DualElem(vec![g.xi(m2)]),
                    },
                ];
                if !om.guard_at(&x, margin) {
                    skipped = true;
                    continue;
                }
                let y = om.map(&x);
                let w = om.weight_at(&x);
                let moved = w * f2.eval_qxi(y[1].q.0[0], y[1].xi.0[0]);
                let fixed = f2.eval_qxi(g.q(l2), g.xi(m2));
                defect += (moved - fixed).norm_sqr() * g.q(l2).abs() * g.w_xi * g.w_xi;
            }
        }
        // A guard rejection marks the whole column as saturated: the
        // operator moved mass outside its domain of definition there.
        if skipped {
            defect = defect.max(2.0 * norm2);
        }
        total += s1 * defect;
    }
    (total / (norm1 * norm2)).sqrt()
}
