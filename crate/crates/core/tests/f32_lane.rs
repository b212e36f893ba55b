//! The whole pipeline is generic over the scalar type; this exercises the
//! single-precision lane end to end and checks it tracks the f64 lane.

use eswm::mechanism::{run_eswm_with_submissions, MechanismParams};
use eswm::model::{
    expected_valuation, submission_pdf, task_valuation, RequesterId, RequesterProfile, WorkerId,
    WorkerProfile,
};
use eswm::report::compute_metrics;
use std::collections::BTreeMap;

fn requesters<S: eswm::Real>() -> Vec<RequesterProfile<S>> {
    let r = |id, size: f64, v: f64, a: f64| {
        RequesterProfile::new(
            RequesterId(id),
            eswm::num::real(size),
            eswm::num::real(10.0),
            eswm::num::real(15.0),
            eswm::num::real(v),
            eswm::num::real(a),
        )
        .unwrap()
    };
    vec![
        r(1, 1.0, 100.0, 1.0),
        r(2, 1.0, 90.0, 10.0),
        r(3, 1.0, 50.0, 1.0),
    ]
}

fn workers<S: eswm::Real>() -> Vec<WorkerProfile<S>> {
    let w = |id, c: f64, mu: f64| {
        WorkerProfile::new(WorkerId(id), eswm::num::real(c), eswm::num::real(mu)).unwrap()
    };
    vec![w(1, 1.0, 1.0), w(2, 4.0, 1.0), w(3, 2.0, 1.0)]
}

fn pipeline<S: eswm::Real>() -> (S, S, S) {
    let rs = requesters::<S>();
    let ws = workers::<S>();
    let params = MechanismParams::new(1, S::one(), S::one()).unwrap();
    let subs: BTreeMap<WorkerId, S> = BTreeMap::from([(WorkerId(1), eswm::num::real(12.0))]);
    let out = run_eswm_with_submissions(&rs, &ws, &params, &subs).unwrap();
    let m = compute_metrics(&out, &rs, &ws, &params, 0);
    (
        out.effective_fees[&RequesterId(1)],
        out.effective_payments[&WorkerId(1)],
        m.platform_utility_post,
    )
}

#[test]
fn f32_pipeline_matches_f64() {
    let (q32, p32, u32_) = pipeline::<f32>();
    let (q64, p64, u64_) = pipeline::<f64>();
    assert!((q32 as f64 - q64).abs() < 1e-4, "{q32} vs {q64}");
    assert!((p32 as f64 - p64).abs() < 1e-4, "{p32} vs {p64}");
    assert!((u32_ as f64 - u64_).abs() < 1e-3, "{u32_} vs {u64_}");
    // Frozen by hand: v(12) = 100 - 1 * 2^2 = 96, so 0.96 * 50 and 0.96 * 2.
    assert!((q64 - 48.0).abs() < 1e-9);
    assert!((p64 - 1.92).abs() < 1e-9);
}

#[test]
fn f32_model_math_is_usable() {
    let r = RequesterProfile::<f32>::new(RequesterId(0), 1.0, 10.0, 15.0, 100.0, 4.0).unwrap();
    let w = WorkerProfile::<f32>::new(WorkerId(0), 1.0, 1.2).unwrap();
    assert_eq!(task_valuation(&r, 12.0_f32), 84.0);
    let density = submission_pdf(&w, 10.0_f32, 10.0, 15.0);
    assert!(density > 0.0);
    let e = expected_valuation(&r, &w);
    let e64 = expected_valuation(
        &RequesterProfile::<f64>::new(RequesterId(0), 1.0, 10.0, 15.0, 100.0, 4.0).unwrap(),
        &WorkerProfile::<f64>::new(WorkerId(0), 1.0, 1.2).unwrap(),
    );
    // Single precision carries the quadrature to roughly 1e-3 here.
    assert!((e as f64 - e64).abs() < 0.05, "{e} vs {e64}");
}
