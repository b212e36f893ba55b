//! Draws requester and worker populations from configurable uniform ranges.

use rand::Rng;

use crate::model::{ModelError, RequesterId, RequesterProfile, WorkerId, WorkerProfile};
use crate::num::{real, Real};

/// Stand-in for an open lower bound: uniform over `(0, x]` is drawn as
/// uniform over `[OPEN_LOW, x]`.
pub const OPEN_LOW: f64 = 1e-9;

/// Closed uniform range `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformRange<S> {
    pub low: S,
    pub high: S,
}

impl<S: Real> UniformRange<S> {
    pub fn new(low: S, high: S) -> Result<Self, ModelError> {
        if !low.is_finite() || !high.is_finite() {
            return Err(ModelError::NonFinite("range bound"));
        }
        if low > high {
            return Err(ModelError::EmptySupport);
        }
        Ok(Self { low, high })
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> S {
        let u: f64 = rng.random();
        self.low + (self.high - self.low) * real::<S>(u)
    }
}

/// Uniform ranges for every profile field the simulator draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationDistributions<S> {
    pub max_valuation: UniformRange<S>,
    pub task_size: UniformRange<S>,
    pub deadline: UniformRange<S>,
    /// Expiry is drawn as `deadline * factor`.
    pub expiry_factor: UniformRange<S>,
    pub alpha: UniformRange<S>,
    pub cost: UniformRange<S>,
    pub mu: UniformRange<S>,
}

impl<S: Real> Default for PopulationDistributions<S> {
    /// The standard simulation setting: valuations, deadlines, and
    /// depreciation speeds over (0, 100], task sizes over [1, 10], expiry up
    /// to 1.5x the deadline, costs over (0, 10], mean factors over (0, 1.5].
    fn default() -> Self {
        let r = |lo: f64, hi: f64| UniformRange {
            low: real::<S>(lo),
            high: real::<S>(hi),
        };
        Self {
            max_valuation: r(OPEN_LOW, 100.0),
            task_size: r(1.0, 10.0),
            deadline: r(OPEN_LOW, 100.0),
            expiry_factor: r(1.0, 1.5),
            alpha: r(OPEN_LOW, 100.0),
            cost: r(OPEN_LOW, 10.0),
            mu: r(OPEN_LOW, 1.5),
        }
    }
}

/// Draws `n` requester profiles with ids `0..n`.
pub fn sample_requesters<S: Real, R: Rng + ?Sized>(
    n: usize,
    dist: &PopulationDistributions<S>,
    rng: &mut R,
) -> Vec<RequesterProfile<S>> {
    (0..n)
        .map(|i| {
            let max_valuation = dist.max_valuation.draw(rng);
            let task_size = dist.task_size.draw(rng);
            let deadline = dist.deadline.draw(rng);
            let expiry = deadline * dist.expiry_factor.draw(rng);
            let alpha = dist.alpha.draw(rng);
            RequesterProfile::new(
                RequesterId(i as u32),
                task_size,
                deadline,
                expiry,
                max_valuation,
                alpha,
            )
            .expect("ranges produce valid requester profiles")
        })
        .collect()
}

/// Draws `n` worker profiles with ids `0..n` and the default spread
/// `sigma = 2 * mu`.
pub fn sample_workers<S: Real, R: Rng + ?Sized>(
    n: usize,
    dist: &PopulationDistributions<S>,
    rng: &mut R,
) -> Vec<WorkerProfile<S>> {
    (0..n)
        .map(|i| {
            let cost = dist.cost.draw(rng);
            let mu = dist.mu.draw(rng);
            WorkerProfile::new(WorkerId(i as u32), cost, mu)
                .expect("ranges produce valid worker profiles")
        })
        .collect()
}
