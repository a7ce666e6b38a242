//! The matched pair of subgroups of `Q ⋉ V̂` reconstructed from the
//! pentagonal transformation `v` (the point map of `Ŵ_Ω`).
//!
//! The reconstruction produces two copies of `Q` acting on `X = Q × V̂`
//! from the right, together with maps `f₁, f₂ : X → Q` and embeddings
//! `h₁, h₂ : Q → Q ⋉ V̂` whose images `(Q, ξ₀Qξ₀⁻¹)` form a matched pair:
//! trivial intersection and dense product. Conjugation by `c = (−1, ξ₀)`
//! swaps the two subgroups, exhibiting the self-duality of the deformed
//! quantum group.
//!
//! Notation follows the reconstruction: `v(x,y) = (x•y, x#y)` and
//! `v⁻¹(x,y) = (x⋄y, x∗y)`; the defining relations are `x•y = x·f₁(y)` and
//! `x∗y = y·f₂(x)` for the two right actions.

use crate::elem::{rel_dist, xpoints_dist, AffDualElem, QElem, XPoint};
use crate::model::ArcModel;
use crate::qgops::what_omega_closed;
use crate::report::{SamplePlan, VerificationReport};
use crate::symop::{random_check, random_map_equality_test, sample_point, SymOp};

/// Product in `Q ⋉ V̂`: `(q,ξ)(q',ξ') = (qq', ξ + q^♭ξ')`.
pub fn affdual_mul(model: &ArcModel, a: &AffDualElem, b: &AffDualElem) -> AffDualElem {
    AffDualElem {
        q: model.q_mul(&a.q, &b.q),
        xi: a.xi.add(&model.flat(&a.q, &b.xi)),
    }
}

/// Inverse in `Q ⋉ V̂`: `(q,ξ)⁻¹ = (q⁻¹, −(q⁻¹)^♭ξ)`.
pub fn affdual_inv(model: &ArcModel, a: &AffDualElem) -> AffDualElem {
    let qi = model.q_inv(&a.q);
    AffDualElem {
        xi: model.flat(&qi, &a.xi).neg(),
        q: qi,
    }
}

/// Identity of `Q ⋉ V̂`.
pub fn affdual_identity(model: &ArcModel) -> AffDualElem {
    AffDualElem {
        q: model.q_identity(),
        xi: crate::elem::DualElem(vec![0.0; model.v_dim()]),
    }
}

/// Distance between affine dual elements (scale-robust, both coordinates).
pub fn affdual_dist(a: &AffDualElem, b: &AffDualElem) -> f64 {
    rel_dist(&a.q.0, &b.q.0).max(rel_dist(&a.xi.0, &b.xi.0))
}

/// The pentagonal transformation `v : X × X → X × X` — the point map of
/// `Ŵ_Ω` (weight dropped).
pub fn v_map(model: &ArcModel, x: &XPoint, y: &XPoint) -> (XPoint, XPoint) {
    let out = what_omega_closed(model).map(&[x.clone(), y.clone()]);
    let mut it = out.into_iter();
    (it.next().unwrap(), it.next().unwrap())
}

/// The inverse transformation `v⁻¹`.
pub fn v_inv_map(model: &ArcModel, x: &XPoint, y: &XPoint) -> (XPoint, XPoint) {
    let op = what_omega_closed(model)
        .invert()
        .expect("closed form carries an inverse");
    let out = op.map(&[x.clone(), y.clone()]);
    let mut it = out.into_iter();
    (it.next().unwrap(), it.next().unwrap())
}

/// Whether `v` is defined at `(x, y)` with the given margin.
pub fn v_guard(model: &ArcModel, x: &XPoint, y: &XPoint, margin: f64) -> bool {
    what_omega_closed(model).guard_at(&[x.clone(), y.clone()], margin)
}

/// `f₁(q,ξ) = q⁻¹`.
pub fn f1(model: &ArcModel, x: &XPoint) -> QElem {
    model.q_inv(&x.q)
}

/// Right action of the first copy of `Q`: `(q,ξ)·r = (r⁻¹q, (r⁻¹)^♭ξ)`.
pub fn act1(model: &ArcModel, x: &XPoint, r: &QElem) -> XPoint {
    let ri = model.q_inv(r);
    XPoint {
        q: model.q_mul(&ri, &x.q),
        xi: model.flat(&ri, &x.xi),
    }
}

/// `f₂(q,ξ) = φ⁻¹(ξ + ξ₀)⁻¹`.
pub fn f2(model: &ArcModel, x: &XPoint) -> QElem {
    model.q_inv(&model.phi_inv(&x.xi.add(&model.xi0())))
}

/// Right action of the second copy of `Q`:
/// `(q,ξ)·r = (φ⁻¹((r⁻¹)^♭(q^♭ξ₀ − ξ₀) + ξ₀), (r⁻¹)^♭(ξ + ξ₀) − ξ₀)`.
pub fn act2(model: &ArcModel, x: &XPoint, r: &QElem) -> XPoint {
    let ri = model.q_inv(r);
    let xi0 = model.xi0();
    let arg = model.flat(&ri, &model.phi(&x.q).sub(&xi0)).add(&xi0);
    XPoint {
        q: model.phi_inv(&arg),
        xi: model.flat(&ri, &x.xi.add(&xi0)).sub(&xi0),
    }
}

/// Embedding of the first subgroup: `h₁(q) = (q, 0)`.
pub fn h1(model: &ArcModel, q: &QElem) -> AffDualElem {
    AffDualElem {
        q: q.clone(),
        xi: crate::elem::DualElem(vec![0.0; model.v_dim()]),
    }
}

/// Embedding of the second subgroup `ξ₀Qξ₀⁻¹`: `h₂(q) = (q, ξ₀ − q^♭ξ₀)`.
pub fn h2(model: &ArcModel, q: &QElem) -> AffDualElem {
    AffDualElem {
        q: q.clone(),
        xi: model.xi0().sub(&model.phi(q)),
    }
}

/// Factor `g = h₁(q₁)h₂(q₂)`: `q₁ = φ⁻¹(ξ + φ(q))`, `q₂ = q₁⁻¹q`.
/// Defined when `ξ + φ(q)` lies in the orbit with the given margin.
pub fn decompose(model: &ArcModel, g: &AffDualElem, margin: f64) -> Option<(QElem, QElem)> {
    let arg = g.xi.add(&model.phi(&g.q));
    if !model.in_phi_domain(&arg, margin) {
        return None;
    }
    let q1 = model.phi_inv(&arg);
    let q2 = model.q_mul(&model.q_inv(&q1), &g.q);
    Some((q1, q2))
}

/// The swap element `c = (−1, ξ₀) ∈ Q ⋉ V̂` implementing self-duality.
pub fn selfdual_c(model: &ArcModel) -> AffDualElem {
    AffDualElem {
        q: model.scalar(-1.0),
        xi: model.xi0(),
    }
}

// ---------------------------------------------------------------------------
// Randomized checks
// ---------------------------------------------------------------------------

fn sample_pair(model: &ArcModel, margin: f64, rng: &mut dyn rand::RngCore) -> (XPoint, XPoint) {
    let pts = sample_point(model, 2, margin, rng);
    let mut it = pts.into_iter();
    (it.next().unwrap(), it.next().unwrap())
}

/// `v⁻¹∘v = id` and `v∘v⁻¹ = id` on guarded samples.
pub fn check_inverse_law(model: &ArcModel, plan: &SamplePlan) -> VerificationReport {
    let m = model.clone();
    let op = what_omega_closed(model);
    let inv = op.invert().expect("inverse");
    random_check("matchedpair-inverse-law", model, plan, move |rng| {
        let pts = sample_point(&m, 2, plan.margin, rng);
        if !op.guard_at(&pts, plan.margin) {
            return None;
        }
        let fwd = op.map(&pts);
        if !inv.guard_at(&fwd, plan.margin) {
            return None;
        }
        let round = inv.map(&fwd);
        let mut d = xpoints_dist(&round, &pts);
        if inv.guard_at(&pts, plan.margin) {
            let back = inv.map(&pts);
            if op.guard_at(&back, plan.margin) {
                d = d.max(xpoints_dist(&op.map(&back), &pts));
            }
        }
        let witness = if d > plan.tolerance {
            format!("round-trip defect {d:.3e} at {pts:?}")
        } else {
            String::new()
        };
        Some((d, witness))
    })
}

/// The reconstruction relations tying `v` to the actions:
/// `x•y = x·f₁(y)`, `x∗y = y·f₂(x)`, right-equivariance of `f₁`, `f₂`,
/// and the action laws for `act1`, `act2`.
pub fn check_reconstruction(model: &ArcModel, plan: &SamplePlan) -> VerificationReport {
    let m = model.clone();
    let op = what_omega_closed(model);
    let inv = op.invert().expect("inverse");
    random_check("matchedpair-reconstruction", model, plan, move |rng| {
        let (x, y) = sample_pair(&m, plan.margin, rng);
        let pts = [x.clone(), y.clone()];
        if !op.guard_at(&pts, plan.margin) || !inv.guard_at(&pts, plan.margin) {
            return None;
        }
        let mut d = 0.0f64;
        // (i) first output of v equals x·f₁(y)
        let bullet = &op.map(&pts)[0];
        d = d.max(xpoints_dist(
            std::slice::from_ref(bullet),
            &[act1(&m, &x, &f1(&m, &y))],
        ));
        // (ii) second output of v⁻¹ equals y·f₂(x)
        if m.in_phi_domain(&x.xi.add(&m.xi0()), plan.margin) {
            let star = &inv.map(&pts)[1];
            d = d.max(xpoints_dist(
                std::slice::from_ref(star),
                &[act2(&m, &y, &f2(&m, &x))],
            ));
        }
        // (iii) equivariance f₁(x·r) = f₁(x)·r; f₂(x·r) = f₂(x)·r
        let r = m.sample_q(rng);
        let s = m.sample_q(rng);
        d = d.max(rel_dist(
            &f1(&m, &act1(&m, &x, &r)).0,
            &m.q_mul(&f1(&m, &x), &r).0,
        ));
        let x2 = act2(&m, &x, &r);
        if m.in_phi_domain(&x.xi.add(&m.xi0()), plan.margin)
            && m.in_phi_domain(&x2.xi.add(&m.xi0()), plan.margin)
        {
            d = d.max(rel_dist(
                &f2(&m, &x2).0,
                &m.q_mul(&f2(&m, &x), &r).0,
            ));
            // (iv) action laws
            d = d.max(xpoints_dist(
                &[act2(&m, &x2, &s)],
                &[act2(&m, &x, &m.q_mul(&r, &s))],
            ));
        }
        d = d.max(xpoints_dist(
            &[act1(&m, &act1(&m, &x, &r), &s)],
            &[act1(&m, &x, &m.q_mul(&r, &s))],
        ));
        let witness = if d > plan.tolerance {
            format!("reconstruction defect {d:.3e} at x={x:?} y={y:?}")
        } else {
            String::new()
        };
        Some((d, witness))
    })
}

/// The compatibility identity
/// `h₂(f₂(x)) h₁(f₁(y)) = h₁(f₁(b)) h₂(f₂(a))` with `(a,b) = v(x,y)`.
pub fn check_35b(model: &ArcModel, plan: &SamplePlan) -> VerificationReport {
    let m = model.clone();
    let op = what_omega_closed(model);
    random_check("matchedpair-35b", model, plan, move |rng| {
        let (x, y) = sample_pair(&m, plan.margin, rng);
        let pts = [x.clone(), y.clone()];
        if !op.guard_at(&pts, plan.margin)
            || !m.in_phi_domain(&x.xi.add(&m.xi0()), plan.margin)
        {
            return None;
        }
        let out = op.map(&pts);
        let (a, b) = (&out[0], &out[1]);
        if !m.in_phi_domain(&a.xi.add(&m.xi0()), plan.margin) {
            return None;
        }
        let lhs = affdual_mul(
            &m,
            &h2(&m, &f2(&m, &x)),
            &h1(&m, &f1(&m, &y)),
        );
        let rhs = affdual_mul(
            &m,
            &h1(&m, &f1(&m, b)),
            &h2(&m, &f2(&m, a)),
        );
        let d = affdual_dist(&lhs, &rhs);
        let witness = if d > plan.tolerance {
            format!("35b defect {d:.3e} at x={x:?} y={y:?}")
        } else {
            String::new()
        };
        Some((d, witness))
    })
}

/// Homomorphism laws for `h₁`, `h₂`, and intersection triviality in
/// parametrized form: `h₁(q) = h₂(q')` forces equal first coordinates, so
/// it reduces to `φ(q) = ξ₀ ⇒ q = 1`, checked via `φ⁻¹(ξ₀) = 1` and the
/// nonvanishing of `ξ₀ − φ(q)` at samples away from the identity.
pub fn check_subgroups(model: &ArcModel, plan: &SamplePlan) -> VerificationReport {
    let m = model.clone();
    random_check("matchedpair-subgroups", model, plan, move |rng| {
        let q = m.sample_q(rng);
        let r = m.sample_q(rng);
        let mut d = 0.0f64;
        d = d.max(affdual_dist(
            &affdual_mul(&m, &h1(&m, &q), &h1(&m, &r)),
            &h1(&m, &m.q_mul(&q, &r)),
        ));
        d = d.max(affdual_dist(
            &affdual_mul(&m, &h2(&m, &q), &h2(&m, &r)),
            &h2(&m, &m.q_mul(&q, &r)),
        ));
        // Intersection triviality, parametrized.
        if m.in_phi_domain(&m.xi0(), plan.margin) {
            d = d.max(rel_dist(&m.phi_inv(&m.xi0()).0, &m.q_identity().0));
        }
        let away = rel_dist(&q.0, &m.q_identity().0) > 0.1;
        if away {
            let sep = rel_dist(&m.xi0().0, &m.phi(&q).0);
            if sep <= plan.tolerance {
                return Some((
                    1.0,
                    format!("h1/h2 intersection witness: q={q:?} has phi(q)=xi0"),
                ));
            }
        }
        let witness = if d > plan.tolerance {
            format!("subgroup law defect {d:.3e} at q={q:?} r={r:?}")
        } else {
            String::new()
        };
        Some((d, witness))
    })
}

/// Factorization `G₁G₂` of full measure: `decompose` must succeed on at
/// least 99% of uniform samples of `Q ⋉ V̂` and recompose to the input at
/// 1e-10.
pub fn check_decompose(model: &ArcModel, plan: &SamplePlan) -> VerificationReport {
    let start = std::time::Instant::now();
    let salt = crate::sampling::suite_salt("matchedpair-decompose");
    let mut valid = 0usize;
    let mut failed = 0usize;
    let mut rejected = 0usize;
    let mut worst = 0.0f64;
    let mut first_fail: Option<String> = None;
    for i in 0..plan.count as u64 {
        let mut rng = crate::sampling::sample_rng(plan.seed, salt, i);
        let g = AffDualElem {
            q: model.sample_q(&mut rng),
            xi: model.sample_xi(&mut rng, 0.0),
        };
        match decompose(model, &g, plan.margin) {
            None => rejected += 1,
            Some((q1, q2)) => {
                valid += 1;
                let re = affdual_mul(model, &h1(model, &q1), &h2(model, &q2));
                let d = affdual_dist(&re, &g);
                worst = worst.max(d);
                if d > 1e-10 {
                    failed += 1;
                    if first_fail.is_none() {
                        first_fail =
                            Some(format!("sample {i}: recomposition defect {d:.3e} at {g:?}"));
                    }
                }
            }
        }
    }
    if (valid as f64) < 0.99 * plan.count as f64 && first_fail.is_none() {
        failed += 1;
        first_fail = Some(format!(
            "decompose succeeded on only {valid}/{} samples ({rejected} rejected); 99% required",
            plan.count
        ));
    }
    VerificationReport {
        identity: "matchedpair-decompose".into(),
        model: model.name().to_string(),
        seed: plan.seed,
        count: plan.count,
        margin: plan.margin,
        tolerance: 1e-10,
        valid,
        failed,
        worst_map_err: worst,
        worst_weight_err: 0.0,
        first_fail,
        millis: start.elapsed().as_millis() as u64,
    }
}

/// Self-duality: conjugation by `c = (−1, ξ₀)` swaps the two subgroups,
/// `c h₁(q) c⁻¹ = h₂(q)` and `c h₂(q) c⁻¹ = h₁(q)`.
pub fn check_selfdual(model: &ArcModel, plan: &SamplePlan) -> VerificationReport {
    let m = model.clone();
    random_check("selfdual-conjugation", model, plan, move |rng| {
        let q = m.sample_q(rng);
        let c = selfdual_c(&m);
        let ci = affdual_inv(&m, &c);
        let conj = |a: &AffDualElem| affdual_mul(&m, &affdual_mul(&m, &c, a), &ci);
        let d1 = affdual_dist(&conj(&h1(&m, &q)), &h2(&m, &q));
        let d2 = affdual_dist(&conj(&h2(&m, &q)), &h1(&m, &q));
        let d = d1.max(d2);
        let witness = if d > plan.tolerance {
            format!("selfdual defect {d:.3e} at q={q:?}")
        } else {
            String::new()
        };
        Some((d, witness))
    })
}

/// Map-level pentagon for `v`: the σ-parts of `v₁₂v₁₃v₂₃` and `v₂₃v₁₂`
/// agree on `X³` (weights compared separately by the unitary pentagon).
pub fn check_pentagon_maps(model: &ArcModel, plan: &SamplePlan) -> VerificationReport {
    let t = what_omega_closed(model);
    let t12 = t.embed(3, &[0, 1]).expect("embed");
    let t13 = t.embed(3, &[0, 2]).expect("embed");
    let t23 = t.embed(3, &[1, 2]).expect("embed");
    let lhs = SymOp::compose_many(&[&t12, &t13, &t23]).expect("legs");
    let rhs = SymOp::compose_many(&[&t23, &t12]).expect("legs");
    random_map_equality_test("matchedpair-pentagon-maps", model, &lhs, &rhs, plan)
}
