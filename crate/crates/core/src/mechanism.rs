//! The double-auction pipeline: greedy winner selection on both sides,
//! trimming to equal size, budget-balance check with revocation, rank-order
//! matching, and two-stage pricing.
//!
//! Selection ranks requesters by `max_valuation / (alpha^beta_alpha *
//! task_size)` and workers by `cost / lambda^beta_lambda`. The marginal
//! (threshold) agent excluded from each side sets critical-value prices for
//! every winner, which makes truthful reporting a dominant strategy.
//! Temporary prices assume punctual submission; effective prices scale them
//! by the valuation actually achieved at submission time.
//!
//! The benchmark variant is the same pipeline with both exponents zeroed, so
//! selection ignores depreciation speed and punctuality entirely.

use std::collections::BTreeMap;

use rand::Rng;
use thiserror::Error;

use crate::model::{
    sample_submission_time, task_valuation, Money, RequesterId, RequesterProfile, Time, WorkerId,
    WorkerProfile,
};
use crate::num::{real, Real};

/// Floor applied to depreciation speeds inside ratio and pricing arithmetic,
/// so never-depreciating tasks (`alpha = 0`) keep the formulas finite.
pub const ALPHA_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MechanismError {
    #[error("capacity must be at least 1")]
    ZeroCapacity,
    #[error("beta exponents must be finite and nonnegative")]
    InvalidBeta,
    #[error("matched worker {0} has no recorded submission time")]
    MissingSubmission(WorkerId),
}

/// Auction knobs: platform capacity and the two selection/pricing exponents.
///
/// The exponents weight depreciation speed against unit valuation on the
/// requester side and punctuality against cost on the worker side; they are
/// split so each side can be tuned independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MechanismParams<S> {
    pub capacity: usize,
    pub beta_alpha: S,
    pub beta_lambda: S,
}

impl<S: Real> MechanismParams<S> {
    pub fn new(capacity: usize, beta_alpha: S, beta_lambda: S) -> Result<Self, MechanismError> {
        if capacity == 0 {
            return Err(MechanismError::ZeroCapacity);
        }
        for b in [beta_alpha, beta_lambda] {
            if !b.is_finite() || b < S::zero() {
                return Err(MechanismError::InvalidBeta);
            }
        }
        Ok(Self {
            capacity,
            beta_alpha,
            beta_lambda,
        })
    }

    /// Same capacity with both exponents zeroed: the benchmark's selection
    /// and pricing rule.
    pub fn zero_beta(&self) -> Self {
        Self {
            capacity: self.capacity,
            beta_alpha: S::zero(),
            beta_lambda: S::zero(),
        }
    }
}

/// Requester-side selection key; higher is better.
pub fn requester_ratio<S: Real>(r: &RequesterProfile<S>, beta_alpha: S) -> S {
    r.max_valuation / (r.alpha.max(real(ALPHA_FLOOR)).powf(beta_alpha) * r.task_size)
}

/// Worker-side selection key; lower is better.
pub fn worker_ratio<S: Real>(w: &WorkerProfile<S>, beta_lambda: S) -> S {
    w.cost / w.lambda.powf(beta_lambda)
}

/// One side's winner set plus the excluded marginal agent that prices it.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection<P> {
    /// Winners in selection order: best ratio first.
    pub winners: Vec<P>,
    /// The excluded marginal agent; `None` only for an empty pool.
    pub threshold: Option<P>,
    /// Ratio comparisons performed, for complexity accounting.
    pub comparisons: u64,
}

/// Iterative greedy selection: repeatedly extract the best-ratio agent until
/// `capacity + 1` are taken or the pool is exhausted, then remove the last
/// (worst) pick as the threshold. Ties break toward the smaller id during
/// extraction, which makes the whole pipeline deterministic.
fn greedy_select<S: Real, P: Clone>(
    pool: &[P],
    key: impl Fn(&P) -> S,
    id: impl Fn(&P) -> u32,
    take_max: bool,
    capacity: usize,
) -> Selection<P> {
    let mut remaining: Vec<(S, u32, usize)> = pool
        .iter()
        .enumerate()
        .map(|(i, p)| (key(p), id(p), i))
        .collect();
    let mut picked: Vec<usize> = Vec::with_capacity((capacity + 1).min(pool.len()));
    let mut comparisons = 0u64;
    while picked.len() != capacity + 1 && !remaining.is_empty() {
        let mut best = 0usize;
        for cand in 1..remaining.len() {
            comparisons += 1;
            let (rc, ic, _) = remaining[cand];
            let (rb, ib, _) = remaining[best];
            let beats = if take_max {
                rc > rb || (rc == rb && ic < ib)
            } else {
                rc < rb || (rc == rb && ic < ib)
            };
            if beats {
                best = cand;
            }
        }
        picked.push(remaining.swap_remove(best).2);
    }
    // The last pick is the worst ratio among those selected.
    let threshold = picked.pop().map(|i| pool[i].clone());
    Selection {
        winners: picked.into_iter().map(|i| pool[i].clone()).collect(),
        threshold,
        comparisons,
    }
}

/// Selects winning requesters by descending `requester_ratio`.
///
/// A pool of size `n` yields at most `min(capacity, n - 1)` winners: the
/// threshold agent is always consumed, so a single-requester pool produces an
/// empty winner set.
pub fn select_winning_requesters<S: Real>(
    pool: &[RequesterProfile<S>],
    params: &MechanismParams<S>,
) -> Selection<RequesterProfile<S>> {
    greedy_select(
        pool,
        |r| requester_ratio(r, params.beta_alpha),
        |r| r.id.0,
        true,
        params.capacity,
    )
}

/// Selects winning workers by ascending `worker_ratio`.
pub fn select_winning_workers<S: Real>(
    pool: &[WorkerProfile<S>],
    params: &MechanismParams<S>,
) -> Selection<WorkerProfile<S>> {
    greedy_select(
        pool,
        |w| worker_ratio(w, params.beta_lambda),
        |w| w.id.0,
        false,
        params.capacity,
    )
}

/// Equal-sized winner lists with their (possibly replaced) thresholds and the
/// temporary prices derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct PricedSelection<S> {
    pub winners_r: Vec<RequesterProfile<S>>,
    pub winners_w: Vec<WorkerProfile<S>>,
    pub threshold_r: Option<RequesterProfile<S>>,
    pub threshold_w: Option<WorkerProfile<S>>,
    pub fees: BTreeMap<RequesterId, Money<S>>,
    pub payments: BTreeMap<WorkerId, Money<S>>,
}

/// Trims the longer winner list down to the shorter one's length, promoting
/// the first truncated agent to threshold on that side, then computes the
/// temporary fee `(alpha_j^ba / alpha_th^ba) * (v_th / size_th) * size_j` for
/// each requester and payment `(lambda_i^bl / lambda_th^bl) * cost_th` for
/// each worker.
///
/// If either side is empty (or has no threshold) both sides are emptied and
/// no prices are produced.
pub fn trim_and_price<S: Real>(
    requesters: Selection<RequesterProfile<S>>,
    workers: Selection<WorkerProfile<S>>,
    params: &MechanismParams<S>,
) -> PricedSelection<S> {
    let Selection {
        winners: mut winners_r,
        threshold: mut threshold_r,
        ..
    } = requesters;
    let Selection {
        winners: mut winners_w,
        threshold: mut threshold_w,
        ..
    } = workers;

    let degenerate = winners_r.is_empty()
        || winners_w.is_empty()
        || threshold_r.is_none()
        || threshold_w.is_none();
    if degenerate {
        return PricedSelection {
            winners_r: Vec::new(),
            winners_w: Vec::new(),
            threshold_r,
            threshold_w,
            fees: BTreeMap::new(),
            payments: BTreeMap::new(),
        };
    }

    if winners_r.len() < winners_w.len() {
        threshold_w = Some(winners_w[winners_r.len()]);
        winners_w.truncate(winners_r.len());
    } else if winners_r.len() > winners_w.len() {
        threshold_r = Some(winners_r[winners_w.len()]);
        winners_r.truncate(winners_w.len());
    }

    let th_r = threshold_r.as_ref().expect("checked above");
    let th_w = threshold_w.as_ref().expect("checked above");
    let unit_fee = requester_ratio(th_r, params.beta_alpha);
    let unit_pay = worker_ratio(th_w, params.beta_lambda);

    let fees = winners_r
        .iter()
        .map(|r| {
            let weight = r.alpha.max(real(ALPHA_FLOOR)).powf(params.beta_alpha) * r.task_size;
            (r.id, unit_fee * weight)
        })
        .collect();
    let payments = winners_w
        .iter()
        .map(|w| (w.id, unit_pay * w.lambda.powf(params.beta_lambda)))
        .collect();

    PricedSelection {
        winners_r,
        winners_w,
        threshold_r,
        threshold_w,
        fees,
        payments,
    }
}

/// Matching result: either rank-order pairs with their temporary prices, or a
/// revoked (cancelled) auction with everything emptied.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchOutcome<S> {
    pub priced: PricedSelection<S>,
    pub matches: Vec<(RequesterId, WorkerId)>,
    pub revoked: bool,
}

/// Runs [`trim_and_price`], revokes the auction when total payments exceed
/// total fees (or when a side is empty, where critical-value pricing is
/// undefined), and otherwise pairs the k-th best requester with the k-th
/// best worker.
pub fn match_winners<S: Real>(
    requesters: Selection<RequesterProfile<S>>,
    workers: Selection<WorkerProfile<S>>,
    params: &MechanismParams<S>,
) -> MatchOutcome<S> {
    let mut priced = trim_and_price(requesters, workers, params);
    if priced.winners_r.is_empty() || priced.winners_w.is_empty() {
        return MatchOutcome {
            priced,
            matches: Vec::new(),
            revoked: true,
        };
    }

    let total_fees: S = priced.fees.values().copied().sum();
    let total_payments: S = priced.payments.values().copied().sum();
    if total_payments > total_fees {
        priced.winners_r.clear();
        priced.winners_w.clear();
        priced.fees.clear();
        priced.payments.clear();
        return MatchOutcome {
            priced,
            matches: Vec::new(),
            revoked: true,
        };
    }

    let matches = priced
        .winners_r
        .iter()
        .zip(priced.winners_w.iter())
        .map(|(r, w)| (r.id, w.id))
        .collect();
    MatchOutcome {
        priced,
        matches,
        revoked: false,
    }
}

/// How effective prices relate to temporary ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PricingMode {
    /// Scale fee and payment by `achieved valuation / max valuation` at the
    /// recorded submission time.
    Scaled,
    /// Keep the temporary prices regardless of submission time.
    Fixed,
}

/// Effective fee and payment maps produced by the pricing pass.
pub type EffectivePrices<S> = (
    BTreeMap<RequesterId, Money<S>>,
    BTreeMap<WorkerId, Money<S>>,
);

/// Computes effective prices for every match. Each match is independent of
/// the others, so the per-match results do not depend on evaluation order.
pub fn apply_effective_pricing<S: Real>(
    matches: &[(RequesterId, WorkerId)],
    fees: &BTreeMap<RequesterId, Money<S>>,
    payments: &BTreeMap<WorkerId, Money<S>>,
    submissions: &BTreeMap<WorkerId, Time<S>>,
    requesters: &[RequesterProfile<S>],
    mode: PricingMode,
) -> Result<EffectivePrices<S>, MechanismError> {
    let req_by_id: BTreeMap<RequesterId, &RequesterProfile<S>> =
        requesters.iter().map(|r| (r.id, r)).collect();
    let mut eff_fees = BTreeMap::new();
    let mut eff_payments = BTreeMap::new();
    for &(rid, wid) in matches {
        let req = req_by_id
            .get(&rid)
            .expect("matched requester present in winner list");
        let fee = *fees.get(&rid).expect("matched requester has a fee");
        let pay = *payments.get(&wid).expect("matched worker has a payment");
        let ratio = match mode {
            PricingMode::Fixed => S::one(),
            PricingMode::Scaled => {
                let t_sub = *submissions
                    .get(&wid)
                    .ok_or(MechanismError::MissingSubmission(wid))?;
                task_valuation(req, t_sub) / req.max_valuation
            }
        };
        eff_fees.insert(rid, ratio * fee);
        eff_payments.insert(wid, ratio * pay);
    }
    Ok((eff_fees, eff_payments))
}

/// Everything the platform decides in one auction.
#[derive(Debug, Clone, PartialEq)]
pub struct AuctionOutcome<S> {
    /// Winning requesters, best ratio first.
    pub winners_r: Vec<RequesterProfile<S>>,
    /// Winning workers, best ratio first.
    pub winners_w: Vec<WorkerProfile<S>>,
    pub threshold_r: Option<RequesterProfile<S>>,
    pub threshold_w: Option<WorkerProfile<S>>,
    /// Rank-order pairs (k-th best requester with k-th best worker).
    pub matches: Vec<(RequesterId, WorkerId)>,
    /// Temporary fees, set at matching assuming punctual submission.
    pub temp_fees: BTreeMap<RequesterId, Money<S>>,
    /// Temporary payments.
    pub temp_payments: BTreeMap<WorkerId, Money<S>>,
    /// Effective fees after submission.
    pub effective_fees: BTreeMap<RequesterId, Money<S>>,
    /// Effective payments after submission.
    pub effective_payments: BTreeMap<WorkerId, Money<S>>,
    /// Submission time of each matched worker.
    pub submissions: BTreeMap<WorkerId, Time<S>>,
    /// True when the auction was cancelled (budget-balance failure or a
    /// degenerate side); everything transactional is then empty.
    pub revoked: bool,
}

/// Runs the full pipeline, obtaining each matched worker's submission time
/// from `submit` (called once per match, in match order).
pub fn run_auction<S: Real>(
    requesters: &[RequesterProfile<S>],
    workers: &[WorkerProfile<S>],
    params: &MechanismParams<S>,
    mut submit: impl FnMut(&RequesterProfile<S>, &WorkerProfile<S>) -> Time<S>,
    mode: PricingMode,
) -> AuctionOutcome<S> {
    let sel_r = select_winning_requesters(requesters, params);
    let sel_w = select_winning_workers(workers, params);
    let matched = match_winners(sel_r, sel_w, params);

    let mut submissions = BTreeMap::new();
    if !matched.revoked {
        for (r, w) in matched
            .priced
            .winners_r
            .iter()
            .zip(matched.priced.winners_w.iter())
        {
            submissions.insert(w.id, submit(r, w));
        }
    }
    assemble(matched, submissions, mode).expect("every match was just given a submission time")
}

/// Runs the full pipeline against externally supplied submission times.
/// Errors if a matched worker has none.
pub fn run_auction_with_submissions<S: Real>(
    requesters: &[RequesterProfile<S>],
    workers: &[WorkerProfile<S>],
    params: &MechanismParams<S>,
    submissions: &BTreeMap<WorkerId, Time<S>>,
    mode: PricingMode,
) -> Result<AuctionOutcome<S>, MechanismError> {
    let sel_r = select_winning_requesters(requesters, params);
    let sel_w = select_winning_workers(workers, params);
    let matched = match_winners(sel_r, sel_w, params);
    let kept: BTreeMap<WorkerId, Time<S>> = matched
        .matches
        .iter()
        .filter_map(|&(_, wid)| submissions.get(&wid).map(|&t| (wid, t)))
        .collect();
    assemble(matched, kept, mode)
}

fn assemble<S: Real>(
    matched: MatchOutcome<S>,
    submissions: BTreeMap<WorkerId, Time<S>>,
    mode: PricingMode,
) -> Result<AuctionOutcome<S>, MechanismError> {
    let MatchOutcome {
        priced,
        matches,
        revoked,
    } = matched;
    let (effective_fees, effective_payments) = if revoked {
        (BTreeMap::new(), BTreeMap::new())
    } else {
        apply_effective_pricing(
            &matches,
            &priced.fees,
            &priced.payments,
            &submissions,
            &priced.winners_r,
            mode,
        )?
    };
    Ok(AuctionOutcome {
        winners_r: priced.winners_r,
        winners_w: priced.winners_w,
        threshold_r: priced.threshold_r,
        threshold_w: priced.threshold_w,
        matches,
        temp_fees: priced.fees,
        temp_payments: priced.payments,
        effective_fees,
        effective_payments,
        submissions,
        revoked,
    })
}

/// The full mechanism with submission times sampled from each matched
/// worker's own punctuality model.
pub fn run_eswm<S: Real, R: Rng + ?Sized>(
    requesters: &[RequesterProfile<S>],
    workers: &[WorkerProfile<S>],
    params: &MechanismParams<S>,
    rng: &mut R,
) -> AuctionOutcome<S> {
    run_auction(
        requesters,
        workers,
        params,
        |req, w| sample_submission_time(w, req.deadline, req.expiry, rng),
        PricingMode::Scaled,
    )
}

/// The full mechanism against externally supplied submission times.
pub fn run_eswm_with_submissions<S: Real>(
    requesters: &[RequesterProfile<S>],
    workers: &[WorkerProfile<S>],
    params: &MechanismParams<S>,
    submissions: &BTreeMap<WorkerId, Time<S>>,
) -> Result<AuctionOutcome<S>, MechanismError> {
    run_auction_with_submissions(
        requesters,
        workers,
        params,
        submissions,
        PricingMode::Scaled,
    )
}

/// The benchmark: the identical pipeline with both exponents zeroed, so
/// selection reduces to `max_valuation / task_size` and raw cost, fees to
/// `(v_th / size_th) * size_j`, and payments to `cost_th`. Effective pricing
/// still scales by achieved valuation so the two mechanisms stay comparable
/// after submission; see [`run_benchmark_fixed_price`] for the flat variant.
pub fn run_benchmark<S: Real, R: Rng + ?Sized>(
    requesters: &[RequesterProfile<S>],
    workers: &[WorkerProfile<S>],
    params: &MechanismParams<S>,
    rng: &mut R,
) -> AuctionOutcome<S> {
    run_auction(
        requesters,
        workers,
        &params.zero_beta(),
        |req, w| sample_submission_time(w, req.deadline, req.expiry, rng),
        PricingMode::Scaled,
    )
}

/// Benchmark against externally supplied submission times.
pub fn run_benchmark_with_submissions<S: Real>(
    requesters: &[RequesterProfile<S>],
    workers: &[WorkerProfile<S>],
    params: &MechanismParams<S>,
    submissions: &BTreeMap<WorkerId, Time<S>>,
) -> Result<AuctionOutcome<S>, MechanismError> {
    run_auction_with_submissions(
        requesters,
        workers,
        &params.zero_beta(),
        submissions,
        PricingMode::Scaled,
    )
}

/// Benchmark variant whose effective prices equal the temporary ones
/// (fee and payment never react to the submission time).
pub fn run_benchmark_fixed_price<S: Real, R: Rng + ?Sized>(
    requesters: &[RequesterProfile<S>],
    workers: &[WorkerProfile<S>],
    params: &MechanismParams<S>,
    rng: &mut R,
) -> AuctionOutcome<S> {
    run_auction(
        requesters,
        workers,
        &params.zero_beta(),
        |req, w| sample_submission_time(w, req.deadline, req.expiry, rng),
        PricingMode::Fixed,
    )
}
