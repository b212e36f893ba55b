//! Two-platform competition: participants re-select their platform each round
//! with probability proportional to the square root of the average utility it
//! delivered, and each platform learns worker punctuality from its own
//! observations.
//!
//! Platforms never see a worker's true mean factor; selection runs on
//! per-platform estimates (new workers start at 1) while sampled submission
//! times are always driven by the true profile.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::mechanism::{run_auction, MechanismParams, PricingMode};
use crate::model::{sample_submission_time, RequesterProfile, WorkerId, WorkerProfile};
use crate::num::{real, Real};
use crate::population::{sample_requesters, sample_workers, PopulationDistributions};
use crate::report::{compute_metrics, MetricsRecord};
use crate::seed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarketError {
    #[error("average utilities must be nonnegative")]
    NegativeUtility,
}

/// The two competing platforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Platform {
    A,
    B,
}

/// A value per platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PlatformPair<T> {
    pub a: T,
    pub b: T,
}

impl<T> PlatformPair<T> {
    pub fn get(&self, p: Platform) -> &T {
        match p {
            Platform::A => &self.a,
            Platform::B => &self.b,
        }
    }

    pub fn get_mut(&mut self, p: Platform) -> &mut T {
        match p {
            Platform::A => &mut self.a,
            Platform::B => &mut self.b,
        }
    }
}

/// Joining probabilities `(prob_a, prob_b)` given the average utilities the
/// two platforms delivered last round: proportional to the square roots, the
/// concavity damping the pull of large utilities. The all-zero case has no
/// defined ratio and falls back to an even split.
pub fn participation_probabilities<S: Real>(u_a: S, u_b: S) -> Result<(S, S), MarketError> {
    if u_a < S::zero() || u_b < S::zero() {
        return Err(MarketError::NegativeUtility);
    }
    let half = real::<S>(0.5);
    if u_a == S::zero() && u_b == S::zero() {
        return Ok((half, half));
    }
    let (sa, sb) = (u_a.sqrt(), u_b.sqrt());
    let total = sa + sb;
    Ok((sa / total, sb / total))
}

/// How a platform turns punctuality observations into a mean-factor estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LearningRule<S> {
    /// Mean over all of the platform's own observations.
    RunningMean,
    /// Mean over the most recent `window` observations.
    Window(usize),
    /// Exponentially weighted mean with smoothing weight in (0, 1].
    Ewma(S),
}

#[derive(Debug, Clone, PartialEq)]
enum EstimateState<S> {
    Mean { sum: S, count: u64 },
    Window(VecDeque<S>),
    Ewma(S),
}

/// Per-platform punctuality knowledge: a mean-factor estimate per worker,
/// learned from the ratio `submission_time / deadline` of completed tasks.
/// Workers never observed estimate to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PunctualityTracker<S> {
    rule: LearningRule<S>,
    states: BTreeMap<WorkerId, EstimateState<S>>,
}

/// Floor on estimates so a perfectly-instant submitter still yields a valid
/// positive mean factor.
const ESTIMATE_FLOOR: f64 = 1e-6;

impl<S: Real> PunctualityTracker<S> {
    pub fn new(rule: LearningRule<S>) -> Self {
        Self {
            rule,
            states: BTreeMap::new(),
        }
    }

    /// Current mean-factor estimate for a worker.
    pub fn estimate(&self, id: WorkerId) -> S {
        let est = match self.states.get(&id) {
            None => S::one(),
            Some(EstimateState::Mean { sum, count }) => {
                *sum / S::from_u64(*count).expect("count representable")
            }
            Some(EstimateState::Window(buf)) => {
                buf.iter().copied().sum::<S>() / S::from_usize(buf.len()).expect("len")
            }
            Some(EstimateState::Ewma(v)) => *v,
        };
        est.max(real(ESTIMATE_FLOOR))
    }

    /// Records one completed task: the observation is `t_sub / deadline`.
    pub fn observe(&mut self, id: WorkerId, t_sub: S, deadline: S) {
        self.record(id, t_sub / deadline);
    }

    /// Seeds the tracker with one pre-competition observation, standing in
    /// for punctuality derived from historical log data.
    pub fn seed_observation(&mut self, id: WorkerId, ratio: S) {
        self.record(id, ratio);
    }

    fn record(&mut self, id: WorkerId, ratio: S) {
        match (&self.rule, self.states.get_mut(&id)) {
            (LearningRule::RunningMean, Some(EstimateState::Mean { sum, count })) => {
                *sum += ratio;
                *count += 1;
            }
            (LearningRule::RunningMean, _) => {
                self.states.insert(
                    id,
                    EstimateState::Mean {
                        sum: ratio,
                        count: 1,
                    },
                );
            }
            (LearningRule::Window(w), Some(EstimateState::Window(buf))) => {
                if buf.len() == *w {
                    buf.pop_front();
                }
                buf.push_back(ratio);
            }
            (LearningRule::Window(_), _) => {
                self.states
                    .insert(id, EstimateState::Window(VecDeque::from([ratio])));
            }
            (LearningRule::Ewma(weight), Some(EstimateState::Ewma(v))) => {
                *v = *weight * ratio + (S::one() - *weight) * *v;
            }
            (LearningRule::Ewma(_), _) => {
                self.states.insert(id, EstimateState::Ewma(ratio));
            }
        }
    }
}

/// How platforms' punctuality knowledge starts out.
///
/// The auction protocol has the platform attach a log-derived punctuality
/// coefficient to every worker's type before selection, so [`FromLogs`] is
/// the standard setting: trackers start from each worker's true mean factor
/// (one pseudo-observation) and keep updating from live submissions.
/// [`Cold`] starts every estimate at 1 as if no worker had any history,
/// which isolates the learning dynamics.
///
/// [`FromLogs`]: PunctualityKnowledge::FromLogs
/// [`Cold`]: PunctualityKnowledge::Cold
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PunctualityKnowledge {
    FromLogs,
    Cold,
}

/// Which pipeline a platform runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MechanismKind {
    Eswm,
    Benchmark,
}

/// A platform's full configuration for the competition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlatformSpec<S> {
    pub mechanism: MechanismKind,
    pub params: MechanismParams<S>,
    pub pricing: PricingMode,
}

impl<S: Real> PlatformSpec<S> {
    pub fn eswm(params: MechanismParams<S>) -> Self {
        Self {
            mechanism: MechanismKind::Eswm,
            params,
            pricing: PricingMode::Scaled,
        }
    }

    pub fn benchmark(params: MechanismParams<S>) -> Self {
        Self {
            mechanism: MechanismKind::Benchmark,
            params,
            pricing: PricingMode::Scaled,
        }
    }

    fn effective_params(&self) -> MechanismParams<S> {
        match self.mechanism {
            MechanismKind::Eswm => self.params,
            MechanismKind::Benchmark => self.params.zero_beta(),
        }
    }
}

/// Average utilities delivered in the latest completed round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AvgUtils<S> {
    pub requester: PlatformPair<S>,
    pub worker: PlatformPair<S>,
}

/// Shared participant pool, its current partition across the two platforms,
/// per-platform punctuality knowledge, and the RNG streams.
#[derive(Debug, Clone)]
pub struct MarketState<S> {
    pub requesters: Vec<RequesterProfile<S>>,
    pub workers: Vec<WorkerProfile<S>>,
    pub membership_r: Vec<Platform>,
    pub membership_w: Vec<Platform>,
    pub avg_utils: Option<AvgUtils<S>>,
    pub trackers: PlatformPair<PunctualityTracker<S>>,
    pub round: u32,
    rng_assign: ChaCha8Rng,
    rng_submit: ChaCha8Rng,
}

impl<S: Real> MarketState<S> {
    pub fn new(
        requesters: Vec<RequesterProfile<S>>,
        workers: Vec<WorkerProfile<S>>,
        learning: LearningRule<S>,
        knowledge: PunctualityKnowledge,
        master_seed: u64,
    ) -> Self {
        let mut trackers = PlatformPair {
            a: PunctualityTracker::new(learning),
            b: PunctualityTracker::new(learning),
        };
        if knowledge == PunctualityKnowledge::FromLogs {
            for w in &workers {
                trackers.a.seed_observation(w.id, w.mu);
                trackers.b.seed_observation(w.id, w.mu);
            }
        }
        let membership_r = vec![Platform::A; requesters.len()];
        let membership_w = vec![Platform::A; workers.len()];
        Self {
            requesters,
            workers,
            membership_r,
            membership_w,
            avg_utils: None,
            trackers,
            round: 0,
            rng_assign: seed::stream(master_seed, &[1]),
            rng_submit: seed::stream(master_seed, &[2]),
        }
    }

    pub fn roster_size(&self, p: Platform) -> (usize, usize) {
        (
            self.membership_r.iter().filter(|&&m| m == p).count(),
            self.membership_w.iter().filter(|&&m| m == p).count(),
        )
    }
}

/// Re-partitions every participant across the two platforms, independently
/// per agent, with probabilities from the latest average utilities (an even
/// split when no round has completed yet).
pub fn reselect<S: Real>(state: &mut MarketState<S>) {
    let half = real::<S>(0.5);
    let (pr, pw) = match &state.avg_utils {
        None => ((half, half), (half, half)),
        Some(u) => (
            participation_probabilities(u.requester.a, u.requester.b)
                .expect("average utilities are clamped nonnegative"),
            participation_probabilities(u.worker.a, u.worker.b)
                .expect("average utilities are clamped nonnegative"),
        ),
    };
    let rng = &mut state.rng_assign;
    let draw = |rng: &mut ChaCha8Rng, p: S| {
        let u: f64 = rng.random();
        if real::<S>(u) < p {
            Platform::A
        } else {
            Platform::B
        }
    };
    for slot in state.membership_r.iter_mut() {
        *slot = draw(rng, pr.0);
    }
    for slot in state.membership_w.iter_mut() {
        *slot = draw(rng, pw.0);
    }
}

/// Runs one auction round on both platforms and updates the state: average
/// utilities, punctuality knowledge, and the round counter.
///
/// Each platform selects on its own estimated worker profiles; submission
/// times are sampled from the true ones. Metrics are computed against the
/// true profiles. A revoked auction contributes zero utilities.
pub fn run_round<S: Real>(
    state: &mut MarketState<S>,
    spec_a: &PlatformSpec<S>,
    spec_b: &PlatformSpec<S>,
    seed_tag: u64,
) -> (MetricsRecord<S>, MetricsRecord<S>) {
    let metrics_a = run_platform(state, Platform::A, spec_a, seed_tag);
    let metrics_b = run_platform(state, Platform::B, spec_b, seed_tag);
    state.avg_utils = Some(AvgUtils {
        requester: PlatformPair {
            a: metrics_a.avg_requester_utility.max(S::zero()),
            b: metrics_b.avg_requester_utility.max(S::zero()),
        },
        worker: PlatformPair {
            a: metrics_a.avg_worker_utility.max(S::zero()),
            b: metrics_b.avg_worker_utility.max(S::zero()),
        },
    });
    state.round += 1;
    (metrics_a, metrics_b)
}

fn run_platform<S: Real>(
    state: &mut MarketState<S>,
    platform: Platform,
    spec: &PlatformSpec<S>,
    seed_tag: u64,
) -> MetricsRecord<S> {
    let roster_r: Vec<RequesterProfile<S>> = state
        .requesters
        .iter()
        .zip(&state.membership_r)
        .filter(|&(_, &m)| m == platform)
        .map(|(r, _)| *r)
        .collect();
    let tracker = state.trackers.get(platform);
    let roster_w_true: Vec<WorkerProfile<S>> = state
        .workers
        .iter()
        .zip(&state.membership_w)
        .filter(|&(_, &m)| m == platform)
        .map(|(w, _)| *w)
        .collect();
    // The platform's view: estimated mean factor, spread derived from it.
    let roster_w_view: Vec<WorkerProfile<S>> = roster_w_true
        .iter()
        .map(|w| {
            let est = tracker.estimate(w.id);
            WorkerProfile::new(w.id, w.cost, est).expect("positive estimate")
        })
        .collect();

    let true_by_id: BTreeMap<WorkerId, &WorkerProfile<S>> =
        roster_w_true.iter().map(|w| (w.id, w)).collect();
    let params = spec.effective_params();
    let rng = &mut state.rng_submit;
    let outcome = run_auction(
        &roster_r,
        &roster_w_view,
        &params,
        |req, w_view| {
            let true_w = true_by_id[&w_view.id];
            sample_submission_time(true_w, req.deadline, req.expiry, rng)
        },
        spec.pricing,
    );

    let req_deadline: BTreeMap<_, _> = roster_r.iter().map(|r| (r.id, r.deadline)).collect();
    let tracker = state.trackers.get_mut(platform);
    for &(rid, wid) in &outcome.matches {
        tracker.observe(wid, outcome.submissions[&wid], req_deadline[&rid]);
    }

    compute_metrics(&outcome, &roster_r, &roster_w_true, &params, seed_tag)
}

/// Full competition configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompetitionConfig<S> {
    pub n_requesters: usize,
    pub n_workers: usize,
    pub spec_a: PlatformSpec<S>,
    pub spec_b: PlatformSpec<S>,
    pub rounds: u32,
    pub seed: u64,
    pub distributions: PopulationDistributions<S>,
    pub learning: LearningRule<S>,
    pub knowledge: PunctualityKnowledge,
}

/// Roster sizes of one platform in one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RosterSize {
    pub requesters: usize,
    pub workers: usize,
}

/// One round of the competition time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundRecord<S> {
    pub round: u32,
    pub a: MetricsRecord<S>,
    pub b: MetricsRecord<S>,
    pub roster_a: RosterSize,
    pub roster_b: RosterSize,
}

/// Draws a fresh population (fixed for the whole competition, so punctuality
/// can be learned), then alternates re-selection and auction rounds.
pub fn run_competition<S: Real>(cfg: &CompetitionConfig<S>) -> Vec<RoundRecord<S>> {
    let mut pop_rng = seed::stream(cfg.seed, &[0]);
    let requesters = sample_requesters(cfg.n_requesters, &cfg.distributions, &mut pop_rng);
    let workers = sample_workers(cfg.n_workers, &cfg.distributions, &mut pop_rng);
    let mut state = MarketState::new(requesters, workers, cfg.learning, cfg.knowledge, cfg.seed);

    (1..=cfg.rounds)
        .map(|round| {
            reselect(&mut state);
            let (a, b) = run_round(&mut state, &cfg.spec_a, &cfg.spec_b, cfg.seed);
            let (ra, wa) = state.roster_size(Platform::A);
            let (rb, wb) = state.roster_size(Platform::B);
            RoundRecord {
                round,
                a,
                b,
                roster_a: RosterSize {
                    requesters: ra,
                    workers: wa,
                },
                roster_b: RosterSize {
                    requesters: rb,
                    workers: wb,
                },
            }
        })
        .collect()
}
