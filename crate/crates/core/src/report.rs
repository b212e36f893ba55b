//! Per-auction performance metrics and deterministic CSV emission.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use crate::mechanism::{AuctionOutcome, MechanismParams};
use crate::model::{
    expected_valuation, task_valuation, Money, RequesterId, RequesterProfile, WorkerId,
    WorkerProfile,
};
use crate::num::Real;

/// All metrics of one auction, plus the run metadata needed to interpret a
/// CSV row on its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsRecord<S> {
    /// Naive social welfare: winners' full valuations minus winners' costs.
    pub nsw: Money<S>,
    /// Expected social welfare: expected valuations of the matched pairs
    /// minus winners' costs.
    pub esw: Money<S>,
    /// Platform utility at matching time (fees minus payments).
    pub platform_utility_pre: Money<S>,
    /// Platform utility after submission (effective fees minus payments).
    pub platform_utility_post: Money<S>,
    /// Realized requester utility averaged over the whole roster.
    pub avg_requester_utility: Money<S>,
    /// Realized worker utility averaged over the whole roster.
    pub avg_worker_utility: Money<S>,
    pub n_matches: usize,
    pub revoked: bool,
    pub capacity: usize,
    pub beta_alpha: S,
    pub beta_lambda: S,
    pub seed: u64,
}

impl<S: Real> MetricsRecord<S> {
    /// The all-zero record of a cancelled auction.
    pub fn revoked(params: &MechanismParams<S>, seed: u64) -> Self {
        Self {
            nsw: S::zero(),
            esw: S::zero(),
            platform_utility_pre: S::zero(),
            platform_utility_post: S::zero(),
            avg_requester_utility: S::zero(),
            avg_worker_utility: S::zero(),
            n_matches: 0,
            revoked: true,
            capacity: params.capacity,
            beta_alpha: params.beta_alpha,
            beta_lambda: params.beta_lambda,
            seed,
        }
    }
}

/// Computes the metrics of a finalized auction.
///
/// `roster_r` / `roster_w` are the full participation rosters (winners and
/// losers); averages divide by their lengths. Expected valuations are taken
/// against the profiles in `roster_w`, so passing ground-truth worker
/// profiles here yields honest welfare even when the auction itself ran on
/// platform estimates.
pub fn compute_metrics<S: Real>(
    outcome: &AuctionOutcome<S>,
    roster_r: &[RequesterProfile<S>],
    roster_w: &[WorkerProfile<S>],
    params: &MechanismParams<S>,
    seed: u64,
) -> MetricsRecord<S> {
    if outcome.revoked {
        return MetricsRecord::revoked(params, seed);
    }

    let req_by_id: BTreeMap<RequesterId, &RequesterProfile<S>> =
        roster_r.iter().map(|r| (r.id, r)).collect();
    let wrk_by_id: BTreeMap<WorkerId, &WorkerProfile<S>> =
        roster_w.iter().map(|w| (w.id, w)).collect();

    let mut nsw = S::zero();
    let mut esw = S::zero();
    let mut requester_total = S::zero();
    let mut worker_total = S::zero();
    for &(rid, wid) in &outcome.matches {
        let req = req_by_id.get(&rid).expect("matched requester in roster");
        let wrk = wrk_by_id.get(&wid).expect("matched worker in roster");
        nsw += req.max_valuation - wrk.cost;
        esw += expected_valuation(req, wrk) - wrk.cost;
        let t_sub = outcome.submissions[&wid];
        let achieved = task_valuation(req, t_sub);
        requester_total += achieved - outcome.effective_fees[&rid];
        worker_total += outcome.effective_payments[&wid] - wrk.cost;
    }

    fn sum<K, S: Real>(m: &BTreeMap<K, S>) -> S {
        m.values().copied().sum()
    }
    MetricsRecord {
        nsw,
        esw,
        platform_utility_pre: sum(&outcome.temp_fees) - sum(&outcome.temp_payments),
        platform_utility_post: sum(&outcome.effective_fees) - sum(&outcome.effective_payments),
        avg_requester_utility: requester_total
            / S::from_usize(roster_r.len().max(1)).expect("roster size"),
        avg_worker_utility: worker_total
            / S::from_usize(roster_w.len().max(1)).expect("roster size"),
        n_matches: outcome.matches.len(),
        revoked: false,
        capacity: params.capacity,
        beta_alpha: params.beta_alpha,
        beta_lambda: params.beta_lambda,
        seed,
    }
}

/// Column order of every emitted CSV.
pub const CSV_HEADER: &str = "nsw,esw,platform_utility_pre,platform_utility_post,avg_requester_utility,avg_worker_utility,n_matches,revoked,capacity,beta_alpha,beta_lambda,seed";

/// Formats a float with six significant digits, deterministically.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..=5).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

/// One CSV row in [`CSV_HEADER`] order.
pub fn csv_row<S: Real>(rec: &MetricsRecord<S>) -> String {
    let f = |v: S| format_sig6(v.to_f64().expect("finite metric"));
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        f(rec.nsw),
        f(rec.esw),
        f(rec.platform_utility_pre),
        f(rec.platform_utility_post),
        f(rec.avg_requester_utility),
        f(rec.avg_worker_utility),
        rec.n_matches,
        rec.revoked,
        rec.capacity,
        f(rec.beta_alpha),
        f(rec.beta_lambda),
        rec.seed,
    )
}

/// Header plus one row per record, byte-deterministic for fixed input.
pub fn csv_string<S: Real>(records: &[MetricsRecord<S>]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for rec in records {
        out.push_str(&csv_row(rec));
        out.push('\n');
    }
    out
}

/// Writes records to `path`, creating parent directories as needed.
pub fn emit_csv<S: Real>(records: &[MetricsRecord<S>], path: &Path) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, csv_string(records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanism::{run_eswm_with_submissions, MechanismParams};
    use crate::model::{RequesterId, RequesterProfile, WorkerId, WorkerProfile};
    use approx::assert_abs_diff_eq;

    fn running_instance() -> (Vec<RequesterProfile<f64>>, Vec<WorkerProfile<f64>>) {
        let rs = vec![
            RequesterProfile::new(RequesterId(1), 1.0, 10.0, 15.0, 100.0, 1.0).unwrap(),
            RequesterProfile::new(RequesterId(2), 1.0, 10.0, 15.0, 90.0, 10.0).unwrap(),
            RequesterProfile::new(RequesterId(3), 1.0, 10.0, 15.0, 50.0, 1.0).unwrap(),
        ];
        let ws = vec![
            WorkerProfile::new(WorkerId(1), 1.0, 1.0).unwrap(),
            WorkerProfile::new(WorkerId(2), 4.0, 1.0).unwrap(),
            WorkerProfile::new(WorkerId(3), 2.0, 1.0).unwrap(),
        ];
        (rs, ws)
    }

    #[test]
    fn metrics_on_running_example() {
        let (rs, ws) = running_instance();
        let params = MechanismParams::new(1, 1.0, 1.0).unwrap();
        let subs = std::collections::BTreeMap::from([(WorkerId(1), 9.0)]);
        let out = run_eswm_with_submissions(&rs, &ws, &params, &subs).unwrap();
        let m = compute_metrics(&out, &rs, &ws, &params, 7);
        assert_abs_diff_eq!(m.platform_utility_pre, 48.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.platform_utility_post, 48.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.avg_requester_utility, 50.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.avg_worker_utility, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.nsw, 99.0, epsilon = 1e-12);
        assert!(m.esw <= m.nsw);
        assert_eq!(m.n_matches, 1);
        assert_eq!(m.seed, 7);
    }

    #[test]
    fn revoked_outcome_is_all_zero() {
        let rs = vec![
            RequesterProfile::new(RequesterId(1), 1.0, 10.0, 15.0, 100.0, 1.0).unwrap(),
            RequesterProfile::new(RequesterId(2), 1.0, 10.0, 15.0, 1.0, 1.0).unwrap(),
        ];
        let ws = vec![
            WorkerProfile::new(WorkerId(1), 1.0, 1.0).unwrap(),
            WorkerProfile::new(WorkerId(2), 5.0, 1.0).unwrap(),
        ];
        let params = MechanismParams::new(1, 0.0, 0.0).unwrap();
        let subs = std::collections::BTreeMap::from([(WorkerId(1), 1.0)]);
        let out = run_eswm_with_submissions(&rs, &ws, &params, &subs).unwrap();
        assert!(out.revoked);
        let m = compute_metrics(&out, &rs, &ws, &params, 0);
        assert_eq!(m.nsw, 0.0);
        assert_eq!(m.esw, 0.0);
        assert_eq!(m.platform_utility_pre, 0.0);
        assert_eq!(m.avg_requester_utility, 0.0);
        assert_eq!(m.n_matches, 0);
        assert!(m.revoked);
    }

    #[test]
    fn punctual_population_closes_welfare_gap() {
        // Tiny mean factor: submissions land long before the deadline, so the
        // expected welfare coincides with the naive one.
        let rs = vec![
            RequesterProfile::new(RequesterId(1), 1.0, 100.0, 120.0, 80.0, 2.0).unwrap(),
            RequesterProfile::new(RequesterId(2), 1.0, 100.0, 120.0, 40.0, 2.0).unwrap(),
        ];
        let ws = vec![
            WorkerProfile::new(WorkerId(1), 1.0, 0.3).unwrap(),
            WorkerProfile::new(WorkerId(2), 2.0, 0.3).unwrap(),
        ];
        let params = MechanismParams::new(1, 0.5, 0.5).unwrap();
        let subs = std::collections::BTreeMap::from([(WorkerId(1), 30.0)]);
        let out = run_eswm_with_submissions(&rs, &ws, &params, &subs).unwrap();
        let m = compute_metrics(&out, &rs, &ws, &params, 0);
        assert_abs_diff_eq!(m.esw, m.nsw, epsilon = 1e-3);
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_sig6(0.0), "0");
        assert_eq!(format_sig6(84.0), "84.0000");
        assert_eq!(format_sig6(0.00123), "0.00123000");
        assert_eq!(format_sig6(-1.6849), "-1.68490");
        assert_eq!(format_sig6(123456.4), "123456");
        assert_eq!(format_sig6(1.23456789e7), "1.23457e7");
        assert_eq!(format_sig6(9.87e-7), "9.87000e-7");
    }

    #[test]
    fn csv_is_deterministic_and_parseable() {
        let (rs, ws) = running_instance();
        let params = MechanismParams::new(1, 1.0, 1.0).unwrap();
        let subs = std::collections::BTreeMap::from([(WorkerId(1), 12.0)]);
        let out = run_eswm_with_submissions(&rs, &ws, &params, &subs).unwrap();
        let m = compute_metrics(&out, &rs, &ws, &params, 3);

        let a = csv_string(&[m, m]);
        let b = csv_string(&[m, m]);
        assert_eq!(a, b);

        let lines: Vec<&str> = a.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_HEADER);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields.len(), 12);
        let esw: f64 = fields[1].parse().unwrap();
        let rel = (esw - m.esw).abs() / m.esw.abs().max(1e-12);
        assert!(rel < 1e-5, "parse drift {rel}");
        assert_eq!(fields[7], "false");
    }

    #[test]
    fn empty_records_give_header_only() {
        let s = csv_string::<f64>(&[]);
        assert_eq!(s, format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn formatter_round_trips_across_magnitudes() {
        for exp in -8..=8 {
            for mantissa in [1.0, 1.234567891, 9.87654321, 9.99999949] {
                for sign in [1.0, -1.0] {
                    let x = sign * mantissa * 10f64.powi(exp);
                    let s = format_sig6(x);
                    let back: f64 = s.parse().expect("formatted float parses");
                    let rel = (back - x).abs() / x.abs();
                    assert!(rel < 1e-5, "{x} -> {s} drifted by {rel}");
                }
            }
        }
    }

    #[test]
    fn unwritable_path_is_an_error() {
        // A path whose parent is a regular file cannot be created.
        let dir = std::env::temp_dir().join("eswm_report_test_blocker");
        std::fs::write(&dir, b"not a directory").unwrap();
        let target = dir.join("inner").join("records.csv");
        assert!(emit_csv::<f64>(&[], &target).is_err());
        std::fs::remove_file(&dir).ok();
    }
}
