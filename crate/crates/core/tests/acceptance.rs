//! The acceptance checklist: one criterion per numbered line, covering the
//! exact identity layer on every registered model and the numerical layer
//! on the full `ax + b` line at its stated grid sizes and tolerances.
//!
//! Every criterion prints exactly one `PASS`/`FAIL` line (run with
//! `--nocapture` to see them on success); the test fails if any line fails.

use affq_core::instances::{by_name, positive_models};
use affq_core::qgops;
use affq_core::suites::{report_passed, run_suite, GridPlan, SuiteOutput};
use affq_core::{ArcModel, SamplePlan};

struct Checklist {
    results: Vec<(usize, String, bool, String)>,
}

impl Checklist {
    fn new() -> Checklist {
        Checklist {
            results: Vec::new(),
        }
    }

    fn record(&mut self, idx: usize, name: &str, ok: bool, detail: String) {
        println!(
            "criterion {idx:>2} {name}: {} ({detail})",
            if ok { "PASS" } else { "FAIL" }
        );
        self.results.push((idx, name.to_string(), ok, detail));
    }

    fn finish(self) {
        let failed: Vec<_> = self.results.iter().filter(|r| !r.2).collect();
        assert!(
            failed.is_empty(),
            "{} acceptance criteria failed: {:?}",
            failed.len(),
            failed
                .iter()
                .map(|r| format!("#{} {} ({})", r.0, r.1, r.3))
                .collect::<Vec<_>>()
        );
    }
}

fn plan() -> SamplePlan {
    SamplePlan::default_exact()
}

fn grid() -> GridPlan {
    GridPlan::default()
}

/// Run one suite and fold its reports into (all passed, summary string).
fn suite_outcome(name: &str, model: &ArcModel) -> (bool, String) {
    match run_suite(name, model, &plan(), &grid()) {
        Err(e) => (false, format!("{}: {e}", model.name())),
        Ok(out) => fold_reports(model, &out),
    }
}

fn fold_reports(model: &ArcModel, out: &SuiteOutput) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for r in &out.reports {
        let passed = report_passed(r, plan().min_valid_fraction);
        ok &= passed;
        if passed {
            details.push(format!(
                "{} {} worst {:.2e}",
                model.name(),
                r.identity,
                r.worst_map_err
            ));
        } else {
            details.push(format!(
                "{} {} FAILED: {}",
                model.name(),
                r.identity,
                r.first_fail.clone().unwrap_or_default()
            ));
        }
    }
    (ok, details.join("; "))
}

/// Run one suite on every positive model, folding outcomes.
fn on_all_positive(name: &str) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for m in positive_models() {
        let (o, d) = suite_outcome(name, &m);
        ok &= o;
        details.push(d);
    }
    (ok, details.join("; "))
}

#[test]
fn acceptance() {
    let mut list = Checklist::new();
    let axb = by_name("axb").unwrap();

    // 1. Orbit round trips on positive models; recorded witness on the
    //    negative model.
    {
        let (mut ok, mut detail) = on_all_positive("orbit");
        let neg = by_name("exoo-negative").unwrap();
        match run_suite("orbit", &neg, &plan(), &grid()) {
            Err(e) => {
                ok = false;
                detail = format!("{detail}; negative model: {e}");
            }
            Ok(out) => {
                let r = &out.reports[0];
                let witnessed = r.failed == 0
                    && r.first_fail
                        .as_deref()
                        .is_some_and(|s| s.contains("expected violation recorded"));
                ok &= witnessed;
                detail = format!(
                    "{detail}; negative witness: {}",
                    r.first_fail.clone().unwrap_or_else(|| "MISSING".into())
                );
            }
        }
        list.record(1, "dual-orbit round trips", ok, detail);
    }

    // 2. Cocycle identity on all positive models, and the weight-mutation
    //    variant must fail.
    {
        let (mut ok, mut detail) = on_all_positive("cocycle");
        let mut short = plan();
        short.count = 1000;
        // A uniform weight scaling cancels between the two cocycle sides
        // (the candidate appears twice on each), so perturb one side only.
        let om = qgops::omega(&axb);
        let bad_om = om.perturb_weight(1.0 + 1e-6);
        let lhs = affq_core::SymOp::compose_many(&[
            &bad_om.embed(3, &[0, 1]).unwrap(),
            &qgops::coproduct_left(&axb, &bad_om).unwrap(),
        ])
        .unwrap();
        let rhs = affq_core::SymOp::compose_many(&[
            &om.embed(3, &[1, 2]).unwrap(),
            &qgops::coproduct_right(&axb, &om).unwrap(),
        ])
        .unwrap();
        let mutated =
            affq_core::symop::random_equality_test("cocycle-mutated", &axb, &lhs, &rhs, &short);
        if mutated.failed == 0 {
            ok = false;
            detail = format!("{detail}; mutation NOT detected");
        } else {
            detail = format!("{detail}; mutation detected ({} fails)", mutated.failed);
        }
        list.record(2, "cocycle identity", ok, detail);
    }

    // 3. Pentagon for both two-leg unitaries.
    {
        let (ok, detail) = on_all_positive("pentagon");
        list.record(3, "pentagon", ok, detail);
    }

    // 4. Closed form vs seven-factor composition (plus involution laws).
    {
        let (ok, detail) = on_all_positive("multunitary");
        list.record(4, "multiplicative-unitary factorization", ok, detail);
    }

    // 5. Conjugate operator relation.
    {
        let (ok, detail) = on_all_positive("bar");
        list.record(5, "conjugate-unitary relation", ok, detail);
    }

    // 6. Scaling family: direct vs composed construction, 10 sampled
    //    scalings per model (both components on the disconnected line).
    {
        let mut ok = true;
        let mut details = Vec::new();
        for m in positive_models() {
            // Scalings far from the identity reject a sizeable share of
            // samples at their guards (up to ~36% on the 2×2 matrix
            // model), so the criterion is judged per scaling: no failures
            // and at least half the samples valid for each sampled q.
            let reports = qgops::check_omega_q(&m, &plan());
            let mut worst = 0.0f64;
            for r in &reports {
                worst = worst.max(r.worst_map_err);
                if r.failed > 0 || r.valid * 2 < r.count {
                    ok = false;
                    details.push(format!(
                        "{} {} FAILED (valid {}/{}): {}",
                        m.name(),
                        r.identity,
                        r.valid,
                        r.count,
                        r.first_fail.clone().unwrap_or_default()
                    ));
                }
            }
            details.push(format!("{} worst {:.2e}", m.name(), worst));
        }
        list.record(6, "scaling family direct vs composed", ok, details.join("; "));
    }

    // 7. Derived one-parameter form on the line plus the flow oracle.
    {
        let (ok, detail) = suite_outcome("stachura", &axb);
        list.record(7, "flow form and generator oracle", ok, detail);
    }

    // 8. Matched-pair laws and the factorization map.
    {
        let (ok1, d1) = on_all_positive("matchedpair");
        let (ok2, d2) = on_all_positive("decompose");
        list.record(8, "matched pair and factorization", ok1 && ok2, format!("{d1}; {d2}"));
    }

    // 9. Self-duality swap.
    {
        let (ok, detail) = on_all_positive("selfdual");
        list.record(9, "self-duality swap", ok, detail);
    }

    // 10. Kernel-norm unitarity at N = 256, strictly improving 128 → 512.
    {
        let (ok, detail) = suite_outcome("kn-unitarity", &axb);
        list.record(10, "kernel-map unitarity", ok, detail);
    }

    // 11. Star product: homomorphism and associativity defects at N = 128,
    //     strictly improving with N.
    {
        let (ok, detail) = suite_outcome("star", &axb);
        list.record(11, "star product", ok, detail);
    }

    // 12. Equivariance at N = 256: on-grid and random group elements.
    {
        let (ok, detail) = suite_outcome("equivariance", &axb);
        list.record(12, "representation equivariance", ok, detail);
    }

    // 13. Orthogonality identity on Gaussian pairs within 2%.
    {
        let (ok, detail) = suite_outcome("duflomoore", &axb);
        list.record(13, "orthogonality identity", ok, detail);
    }

    // 14. Diagonal semigroup commutation at N = 128 for the stated
    //     exponent set.
    {
        let (ok, detail) = match run_suite("chistar", &axb, &plan(), &grid()) {
            Err(e) => (false, e.to_string()),
            Ok(out) => {
                let r = &out.reports[0];
                (
                    report_passed(r, plan().min_valid_fraction),
                    format!("worst {:.2e}", r.worst_map_err),
                )
            }
        };
        list.record(14, "diagonal semigroup commutation", ok, detail);
    }

    // 15. Deformation: exact map-distance table and grid norm table both
    //     strictly decreasing along θ = 1 … 1/16.
    {
        let (mut ok, detail) = suite_outcome("deformation", &axb);
        let tables = run_suite("deformation", &axb, &plan(), &grid())
            .map(|o| o.tables.len())
            .unwrap_or(0);
        if tables < 2 {
            ok = false;
        }
        list.record(
            15,
            "deformation tables strictly decreasing",
            ok,
            format!("{detail}; {tables} tables"),
        );
    }

    // 16. Cross-layer consistency of the scaling operator at N = 128.
    {
        let (ok, detail) = match run_suite("chistar", &axb, &plan(), &grid()) {
            Err(e) => (false, e.to_string()),
            Ok(out) => {
                let r = &out.reports[1];
                (
                    report_passed(r, plan().min_valid_fraction),
                    format!("defect {:.2e}", r.worst_map_err),
                )
            }
        };
        list.record(16, "cross-layer consistency", ok, detail);
    }

    // 17. Determinism: identical configs produce byte-identical reports.
    {
        let run = || {
            let out = run_suite("cocycle", &axb, &plan(), &grid()).unwrap();
            out.reports
                .iter()
                .map(|r| serde_json::to_string(&r.deterministic()).unwrap())
                .collect::<Vec<_>>()
                .join("\n")
        };
        let a = run();
        let b = run();
        let ok = a == b;
        list.record(
            17,
            "byte-identical determinism",
            ok,
            if ok { "re-run matched".into() } else { "re-run differed".into() },
        );
    }

    list.finish();
}
