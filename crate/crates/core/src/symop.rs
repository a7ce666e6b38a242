//! Weighted point transformations and their randomized equality tests.
//!
//! A [`SymOp`] is an operator `(Tf)(x) = w(x)·f(σ(x))` on functions of
//! `n` legs `x ∈ (Q × V̂)ⁿ`, optionally composed with complex conjugation
//! (`antilinear`). The closure data carries:
//!
//! * the forward point map `σ` and its domain guard,
//! * optionally the inverse map `σ⁻¹` with its own guard (needed by
//!   [`SymOp::invert`]),
//! * the weight `w`.
//!
//! Composition, inversion, leg embedding and leg permutation are all closed
//! operations on this class, which is what makes every operator identity in
//! this project exactly checkable at random points.

use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::elem::{rel_dist_c, xpoints_dist, XPoint};
use crate::error::CoreError;
use crate::model::ArcModel;
use crate::report::{SamplePlan, VerificationReport};
use crate::sampling::{sample_rng, suite_salt};

type MapFn = dyn Fn(&[XPoint]) -> Vec<XPoint> + Send + Sync;
type WeightFn = dyn Fn(&[XPoint]) -> Complex64 + Send + Sync;
type GuardFn = dyn Fn(&[XPoint], f64) -> bool + Send + Sync;

/// A weighted point transformation on `n` legs.
#[derive(Clone)]
pub struct SymOp {
    legs: usize,
    antilinear: bool,
    sigma: Arc<MapFn>,
    sigma_inv: Option<Arc<MapFn>>,
    weight: Arc<WeightFn>,
    guard: Arc<GuardFn>,
    guard_inv: Arc<GuardFn>,
}

fn always(_x: &[XPoint], _m: f64) -> bool {
    true
}

impl SymOp {
    /// Build an operator from closures. `sigma_inv`, when given, must be the
    /// two-sided inverse of `sigma` on the guarded domain; `guard_inv` guards
    /// the domain of `sigma_inv`.
    pub fn new(
        legs: usize,
        antilinear: bool,
        sigma: impl Fn(&[XPoint]) -> Vec<XPoint> + Send + Sync + 'static,
        weight: impl Fn(&[XPoint]) -> Complex64 + Send + Sync + 'static,
        guard: impl Fn(&[XPoint], f64) -> bool + Send + Sync + 'static,
    ) -> SymOp {
        SymOp {
            legs,
            antilinear,
            sigma: Arc::new(sigma),
            sigma_inv: None,
            weight: Arc::new(weight),
            guard: Arc::new(guard),
            guard_inv: Arc::new(always),
        }
    }

    /// Attach a closed-form inverse map with its guard.
    pub fn with_inverse(
        mut self,
        sigma_inv: impl Fn(&[XPoint]) -> Vec<XPoint> + Send + Sync + 'static,
        guard_inv: impl Fn(&[XPoint], f64) -> bool + Send + Sync + 'static,
    ) -> SymOp {
        self.sigma_inv = Some(Arc::new(sigma_inv));
        self.guard_inv = Arc::new(guard_inv);
        self
    }

    /// The identity operator on `legs` legs.
    pub fn identity(legs: usize) -> SymOp {
        SymOp::new(
            legs,
            false,
            |x| x.to_vec(),
            |_| Complex64::new(1.0, 0.0),
            always,
        )
        .with_inverse(|x| x.to_vec(), always)
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn is_antilinear(&self) -> bool {
        self.antilinear
    }

    /// Evaluate the point map.
    pub fn map(&self, x: &[XPoint]) -> Vec<XPoint> {
        (self.sigma)(x)
    }

    /// Evaluate the weight.
    pub fn weight_at(&self, x: &[XPoint]) -> Complex64 {
        (self.weight)(x)
    }

    /// Whether `x` is safely inside the domain with margin `m`.
    pub fn guard_at(&self, x: &[XPoint], m: f64) -> bool {
        (self.guard)(x, m)
    }

    /// Operator product `self · other` (apply `other` first):
    /// `σ = σ_other ∘ σ_self`, `w(x) = w_self(x) · ℓ_self(w_other(σ_self x))`
    /// where `ℓ` is conjugation when the left factor is antilinear.
    pub fn compose(&self, other: &SymOp) -> Result<SymOp, CoreError> {
        if self.legs != other.legs {
            return Err(CoreError::LegMismatch {
                op: "compose",
                expected: self.legs,
                got: other.legs,
            });
        }
        let (sa, sb) = (self.sigma.clone(), other.sigma.clone());
        let (wa, wb) = (self.weight.clone(), other.weight.clone());
        let (ga, gb) = (self.guard.clone(), other.guard.clone());
        let a_anti = self.antilinear;
        let sigma = {
            let (sa, sb) = (sa.clone(), sb.clone());
            move |x: &[XPoint]| sb(&sa(x))
        };
        let weight = {
            let sa = sa.clone();
            move |x: &[XPoint]| {
                let mid = sa(x);
                let w2 = wb(&mid);
                wa(x) * if a_anti { w2.conj() } else { w2 }
            }
        };
        let guard = {
            let sa = sa.clone();
            move |x: &[XPoint], m: f64| ga(x, m) && gb(&sa(x), m)
        };
        let mut out = SymOp {
            legs: self.legs,
            antilinear: self.antilinear ^ other.antilinear,
            sigma: Arc::new(sigma),
            sigma_inv: None,
            weight: Arc::new(weight),
            guard: Arc::new(guard),
            guard_inv: Arc::new(always),
        };
        if let (Some(ia), Some(ib)) = (self.sigma_inv.clone(), other.sigma_inv.clone()) {
            let (gia, gib) = (self.guard_inv.clone(), other.guard_inv.clone());
            let inv = {
                let (ia, ib) = (ia.clone(), ib.clone());
                move |x: &[XPoint]| ia(&ib(x))
            };
            let ginv = move |x: &[XPoint], m: f64| gib(x, m) && gia(&ib(x), m);
            out.sigma_inv = Some(Arc::new(inv));
            out.guard_inv = Arc::new(ginv);
        }
        Ok(out)
    }

    /// Product of several factors, leftmost applied last.
    pub fn compose_many(factors: &[&SymOp]) -> Result<SymOp, CoreError> {
        let mut it = factors.iter();
        let first = it.next().expect("at least one factor");
        let mut acc = (*first).clone();
        for f in it {
            acc = acc.compose(f)?;
        }
        Ok(acc)
    }

    /// Inverse operator; requires a stored inverse map.
    pub fn invert(&self) -> Result<SymOp, CoreError> {
        let inv = self
            .sigma_inv
            .clone()
            .ok_or(CoreError::NoInverse("SymOp::invert"))?;
        let w = self.weight.clone();
        let anti = self.antilinear;
        let weight = {
            let inv = inv.clone();
            move |x: &[XPoint]| {
                let pre = inv(x);
                let wv = w(&pre);
                // Linear:      (T⁻¹f)(x) = f(σ⁻¹x) / w(σ⁻¹x).
                // Antilinear:  (T⁻¹f)(x) = conj(f(σ⁻¹x)) / conj(w(σ⁻¹x)).
                if anti {
                    wv.conj().inv()
                } else {
                    wv.inv()
                }
            }
        };
        Ok(SymOp {
            legs: self.legs,
            antilinear: self.antilinear,
            sigma: inv,
            sigma_inv: Some(self.sigma.clone()),
            weight: Arc::new(weight),
            guard: self.guard_inv.clone(),
            guard_inv: self.guard.clone(),
        })
    }

    /// Embed an operator into `total` legs, acting on the legs listed in
    /// `placement` (e.g. `embed(&w, 3, &[0, 2])` forms `W₁₃`).
    pub fn embed(&self, total: usize, placement: &[usize]) -> Result<SymOp, CoreError> {
        if placement.len() != self.legs {
            return Err(CoreError::LegMismatch {
                op: "embed",
                expected: self.legs,
                got: placement.len(),
            });
        }
        let place: Vec<usize> = placement.to_vec();
        let select = {
            let place = place.clone();
            move |x: &[XPoint]| -> Vec<XPoint> { place.iter().map(|&i| x[i].clone()).collect() }
        };
        let scatter = {
            let place = place.clone();
            move |x: &[XPoint], sub: Vec<XPoint>| -> Vec<XPoint> {
                let mut out = x.to_vec();
                for (k, &i) in place.iter().enumerate() {
                    out[i] = sub[k].clone();
                }
                out
            }
        };
        let s = self.sigma.clone();
        let sigma = {
            let (select, scatter) = (select.clone(), scatter.clone());
            move |x: &[XPoint]| scatter(x, s(&select(x)))
        };
        let w = self.weight.clone();
        let weight = {
            let select = select.clone();
            move |x: &[XPoint]| w(&select(x))
        };
        let g = self.guard.clone();
        let guard = {
            let select = select.clone();
            move |x: &[XPoint], m: f64| g(&select(x), m)
        };
        let mut out = SymOp {
            legs: total,
            antilinear: self.antilinear,
            sigma: Arc::new(sigma),
            sigma_inv: None,
            weight: Arc::new(weight),
            guard: Arc::new(guard),
            guard_inv: Arc::new(always),
        };
        if let Some(si) = self.sigma_inv.clone() {
            let gi = self.guard_inv.clone();
            let (select, scatter) = (select, scatter);
            let sel2 = select.clone();
            let inv = move |x: &[XPoint]| scatter(x, si(&select(x)));
            let ginv = move |x: &[XPoint], m: f64| gi(&sel2(x), m);
            out.sigma_inv = Some(Arc::new(inv));
            out.guard_inv = Arc::new(ginv);
        }
        Ok(out)
    }

    /// Tensor product of two one-leg operators with equal linearity flags.
    ///
    /// This is not the same as composing two embeddings: for antilinear
    /// factors the embeddings' conjugations would cancel, whereas `a ⊗ b`
    /// conjugates once. Mixed linear/antilinear tensor products are not
    /// well-defined operators and are rejected.
    pub fn tensor2(a: &SymOp, b: &SymOp) -> Result<SymOp, CoreError> {
        if a.legs != 1 || b.legs != 1 {
            return Err(CoreError::LegMismatch {
                op: "tensor2",
                expected: 1,
                got: a.legs.max(b.legs),
            });
        }
        if a.antilinear != b.antilinear {
            return Err(CoreError::Config(
                "tensor2: factors must have equal linearity flags".into(),
            ));
        }
        let (sa, sb) = (a.sigma.clone(), b.sigma.clone());
        let (wa, wb) = (a.weight.clone(), b.weight.clone());
        let (ga, gb) = (a.guard.clone(), b.guard.clone());
        let sigma = move |x: &[XPoint]| -> Vec<XPoint> {
            let mut out = sa(&x[..1]);
            out.extend(sb(&x[1..]));
            out
        };
        let weight = move |x: &[XPoint]| wa(&x[..1]) * wb(&x[1..]);
        let guard = move |x: &[XPoint], m: f64| ga(&x[..1], m) && gb(&x[1..], m);
        let mut out = SymOp {
            legs: 2,
            antilinear: a.antilinear,
            sigma: Arc::new(sigma),
            sigma_inv: None,
            weight: Arc::new(weight),
            guard: Arc::new(guard),
            guard_inv: Arc::new(always),
        };
        if let (Some(ia), Some(ib)) = (a.sigma_inv.clone(), b.sigma_inv.clone()) {
            let (gia, gib) = (a.guard_inv.clone(), b.guard_inv.clone());
            let inv = move |x: &[XPoint]| -> Vec<XPoint> {
                let mut out = ia(&x[..1]);
                out.extend(ib(&x[1..]));
                out
            };
            let ginv = move |x: &[XPoint], m: f64| gia(&x[..1], m) && gib(&x[1..], m);
            out.sigma_inv = Some(Arc::new(inv));
            out.guard_inv = Arc::new(ginv);
        }
        Ok(out)
    }

    /// A copy of this operator with its weight multiplied by `factor`.
    /// Used by mutation tests to confirm the identity checks are sensitive.
    pub fn perturb_weight(&self, factor: f64) -> SymOp {
        let w = self.weight.clone();
        let mut out = self.clone();
        out.weight = Arc::new(move |x: &[XPoint]| w(x) * factor);
        out
    }

    /// The leg-permutation operator `(P f)(x₁,…,xₙ) = f(x_{π(1)},…,x_{π(n)})`.
    pub fn permute_legs(n: usize, perm: &[usize]) -> SymOp {
        assert_eq!(perm.len(), n);
        let p: Vec<usize> = perm.to_vec();
        let mut pinv = vec![0usize; n];
        for (i, &j) in p.iter().enumerate() {
            pinv[j] = i;
        }
        let fwd = {
            let p = p.clone();
            move |x: &[XPoint]| -> Vec<XPoint> { p.iter().map(|&i| x[i].clone()).collect() }
        };
        let bwd = move |x: &[XPoint]| -> Vec<XPoint> { pinv.iter().map(|&i| x[i].clone()).collect() };
        SymOp::new(n, false, fwd, |_| Complex64::new(1.0, 0.0), always).with_inverse(bwd, always)
    }

    /// `T₂₁` for a 2-leg operator: conjugate by the leg swap.
    pub fn swap_legs(&self) -> Result<SymOp, CoreError> {
        if self.legs != 2 {
            return Err(CoreError::LegMismatch {
                op: "swap_legs",
                expected: 2,
                got: self.legs,
            });
        }
        let sw = SymOp::permute_legs(2, &[1, 0]);
        sw.compose(self)?.compose(&sw)
    }
}

/// Pointwise comparison of two operators at `x`.
///
/// Returns `None` when either guard rejects `x` (skip), otherwise the pair
/// `(map distance, weight distance)`. A structural mismatch (leg count or
/// linearity flag) is reported as an infinite distance.
pub fn equal_at(a: &SymOp, b: &SymOp, x: &[XPoint], margin: f64) -> Option<(f64, f64)> {
    if a.legs != b.legs || a.antilinear != b.antilinear {
        return Some((f64::INFINITY, f64::INFINITY));
    }
    if !a.guard_at(x, margin) || !b.guard_at(x, margin) {
        return None;
    }
    let md = xpoints_dist(&a.map(x), &b.map(x));
    let wd = rel_dist_c(a.weight_at(x), b.weight_at(x));
    Some((md, wd))
}

/// Draw a random point of `Xⁿ` for the given model.
pub fn sample_point(model: &ArcModel, legs: usize, margin: f64, rng: &mut dyn rand::RngCore) -> Vec<XPoint> {
    (0..legs)
        .map(|_| XPoint {
            q: model.sample_q(rng),
            xi: model.sample_xi(rng, margin),
        })
        .collect()
}

/// Per-sample outcome used by the drivers below.
enum Outcome {
    Skipped,
    Ok(f64, f64),
    Fail(u64, f64, f64, String),
}

fn run_outcomes<F>(identity: &str, model: &ArcModel, plan: &SamplePlan, per_sample: F) -> VerificationReport
where
    F: Fn(u64, &mut dyn rand::RngCore) -> Option<(f64, f64, String)> + Send + Sync,
{
    let start = Instant::now();
    let salt = suite_salt(identity);
    let outcomes: Vec<Outcome> = (0..plan.count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(plan.seed, salt, i);
            match per_sample(i, &mut rng) {
                None => Outcome::Skipped,
                Some((md, wd, witness)) => {
                    if md <= plan.tolerance && wd <= plan.tolerance {
                        Outcome::Ok(md, wd)
                    } else {
                        Outcome::Fail(i, md, wd, witness)
                    }
                }
            }
        })
        .collect();

    let mut valid = 0usize;
    let mut failed = 0usize;
    let mut worst_map = 0.0f64;
    let mut worst_w = 0.0f64;
    let mut first_fail: Option<(u64, String)> = None;
    for o in outcomes {
        match o {
            Outcome::Skipped => {}
            Outcome::Ok(md, wd) => {
                valid += 1;
                worst_map = worst_map.max(md);
                worst_w = worst_w.max(wd);
            }
            Outcome::Fail(i, md, wd, msg) => {
                valid += 1;
                failed += 1;
                worst_map = worst_map.max(md);
                worst_w = worst_w.max(wd);
                if first_fail.as_ref().map(|(j, _)| i < *j).unwrap_or(true) {
                    first_fail = Some((i, msg));
                }
            }
        }
    }
    VerificationReport {
        identity: identity.to_string(),
        model: model.name().to_string(),
        seed: plan.seed,
        count: plan.count,
        margin: plan.margin,
        tolerance: plan.tolerance,
        valid,
        failed,
        worst_map_err: worst_map,
        worst_weight_err: worst_w,
        first_fail: first_fail.map(|(i, m)| format!("sample {i}: {m}")),
        millis: start.elapsed().as_millis() as u64,
    }
}

/// Randomized equality test of two fixed operators.
pub fn random_equality_test(
    identity: &str,
    model: &ArcModel,
    a: &SymOp,
    b: &SymOp,
    plan: &SamplePlan,
) -> VerificationReport {
    random_equality_test_with(identity, model, plan, a.legs, |_rng| (a.clone(), b.clone()))
}

/// Randomized equality test where the operator pair may depend on extra
/// randomness (e.g. a freshly sampled group element per sample).
pub fn random_equality_test_with<F>(
    identity: &str,
    model: &ArcModel,
    plan: &SamplePlan,
    legs: usize,
    make_pair: F,
) -> VerificationReport
where
    F: Fn(&mut dyn rand::RngCore) -> (SymOp, SymOp) + Send + Sync,
{
    let m = model.clone();
    run_outcomes(identity, model, plan, move |_i, rng| {
        let (a, b) = make_pair(rng);
        let x = sample_point(&m, legs, plan.margin, rng);
        equal_at(&a, &b, &x, plan.margin).map(|(md, wd)| {
            let witness = if md > plan.tolerance || wd > plan.tolerance {
                format!("map_err={md:.3e} weight_err={wd:.3e} at {x:?}")
            } else {
                String::new()
            };
            (md, wd, witness)
        })
    })
}

/// Randomized check that the *point maps* of two operators agree, ignoring
/// weights (used where only the underlying transformation is claimed equal).
pub fn random_map_equality_test(
    identity: &str,
    model: &ArcModel,
    a: &SymOp,
    b: &SymOp,
    plan: &SamplePlan,
) -> VerificationReport {
    let (a, b) = (a.clone(), b.clone());
    let m = model.clone();
    run_outcomes(identity, model, plan, move |_i, rng| {
        let x = sample_point(&m, a.legs(), plan.margin, rng);
        if !a.guard_at(&x, plan.margin) || !b.guard_at(&x, plan.margin) {
            return None;
        }
        let md = xpoints_dist(&a.map(&x), &b.map(&x));
        let witness = if md > plan.tolerance {
            format!("map_err={md:.3e} at {x:?}")
        } else {
            String::new()
        };
        Some((md, 0.0, witness))
    })
}

/// Generic sample-driven check returning map/weight distances, for checks
/// that are not plain operator equalities (group laws, reconstruction laws).
pub fn random_check<F>(
    identity: &str,
    model: &ArcModel,
    plan: &SamplePlan,
    per_sample: F,
) -> VerificationReport
where
    F: Fn(&mut dyn rand::RngCore) -> Option<(f64, String)> + Send + Sync,
{
    run_outcomes(identity, model, plan, move |_i, rng| {
        per_sample(rng).map(|(d, w)| (d, 0.0, w))
    })
}
