//! Domain types and the market's closed-form/stochastic math: task
//! depreciation, submission-time distribution, and expected valuation.
//!
//! A requester's task keeps its full valuation until its deadline, then
//! depreciates quadratically at speed `alpha` until it hits zero or the task
//! expires. A worker submits at a random time drawn from a normal
//! distribution centered at `mu * deadline`, truncated to `[0, expiry]`.
//! The expected valuation of a pairing integrates the depreciation curve
//! against that distribution.

use rand::Rng;
use thiserror::Error;

use crate::num::{real, std_normal_cdf, std_normal_pdf, std_normal_quantile, Real};
use crate::quad::integrate;

/// Money amount in the scalar type.
pub type Money<S> = S;
/// Point in simulated time.
pub type Time<S> = S;
/// Probability density value; may exceed 1.
pub type Density<S> = S;

/// Identifier of a requester (buyer).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RequesterId(pub u32);

/// Identifier of a worker (seller).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorkerId(pub u32);

impl std::fmt::Display for RequesterId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "r{}", self.0)
    }
}

impl std::fmt::Display for WorkerId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "w{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{0} must be finite")]
    NonFinite(&'static str),
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("task_size must be at least 1")]
    TaskSizeBelowOne,
    #[error("alpha must be nonnegative")]
    NegativeAlpha,
    #[error("expiry must not precede deadline")]
    ExpiryBeforeDeadline,
    #[error("support bounds must satisfy lo < hi")]
    EmptySupport,
    #[error("distribution has vanishing mass on its support")]
    VanishingMass,
}

/// A buyer's type: one task with size, deadline/expiry window, maximum
/// valuation, and depreciation speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RequesterProfile<S> {
    pub id: RequesterId,
    /// Task size in task units; at least 1.
    pub task_size: S,
    /// Time at which the valuation starts to depreciate.
    pub deadline: Time<S>,
    /// Time at which the valuation becomes null; at or after the deadline.
    pub expiry: Time<S>,
    /// Full valuation of the task while it has not depreciated.
    pub max_valuation: Money<S>,
    /// Depreciation speed in money per squared time unit; zero means the task
    /// never loses value before its expiry.
    pub alpha: S,
}

impl<S: Real> RequesterProfile<S> {
    pub fn new(
        id: RequesterId,
        task_size: S,
        deadline: Time<S>,
        expiry: Time<S>,
        max_valuation: Money<S>,
        alpha: S,
    ) -> Result<Self, ModelError> {
        for (name, v) in [
            ("task_size", task_size),
            ("deadline", deadline),
            ("expiry", expiry),
            ("max_valuation", max_valuation),
            ("alpha", alpha),
        ] {
            if !v.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
        }
        if deadline <= S::zero() {
            return Err(ModelError::NotPositive("deadline"));
        }
        if max_valuation <= S::zero() {
            return Err(ModelError::NotPositive("max_valuation"));
        }
        if task_size < S::one() {
            return Err(ModelError::TaskSizeBelowOne);
        }
        if alpha < S::zero() {
            return Err(ModelError::NegativeAlpha);
        }
        if expiry < deadline {
            return Err(ModelError::ExpiryBeforeDeadline);
        }
        Ok(Self {
            id,
            task_size,
            deadline,
            expiry,
            max_valuation,
            alpha,
        })
    }
}

/// A seller's type: execution cost plus the platform-side punctuality
/// parameters `(mu, sigma, lambda)` with `lambda = 1/mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkerProfile<S> {
    pub id: WorkerId,
    /// Cost incurred to execute one task.
    pub cost: Money<S>,
    /// Punctuality mean factor: the submission-time distribution is centered
    /// at `mu * deadline`.
    pub mu: S,
    /// Spread of the submission-time distribution; defaults to `2 * mu`.
    pub sigma: S,
    /// Punctuality coefficient, always exactly `1 / mu`.
    pub lambda: S,
}

impl<S: Real> WorkerProfile<S> {
    /// Builds a worker with the default spread `sigma = 2 * mu`.
    pub fn new(id: WorkerId, cost: Money<S>, mu: S) -> Result<Self, ModelError> {
        let two = real::<S>(2.0);
        Self::with_sigma(id, cost, mu, two * mu)
    }

    /// Builds a worker with an explicit spread override.
    pub fn with_sigma(id: WorkerId, cost: Money<S>, mu: S, sigma: S) -> Result<Self, ModelError> {
        for (name, v) in [("cost", cost), ("mu", mu), ("sigma", sigma)] {
            if !v.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
        }
        if cost <= S::zero() {
            return Err(ModelError::NotPositive("cost"));
        }
        if mu <= S::zero() {
            return Err(ModelError::NotPositive("mu"));
        }
        if sigma <= S::zero() {
            return Err(ModelError::NotPositive("sigma"));
        }
        Ok(Self {
            id,
            cost,
            mu,
            sigma,
            lambda: S::one() / mu,
        })
    }
}

/// Task valuation at time `t`: the full valuation up to the deadline, a
/// quadratic decay clamped at zero after it, and zero past the expiry.
///
/// Continuous and non-increasing for `t >= deadline`.
pub fn task_valuation<S: Real>(req: &RequesterProfile<S>, t: Time<S>) -> Money<S> {
    debug_assert!(t >= S::zero(), "valuation queried at negative time");
    if t > req.expiry {
        S::zero()
    } else if t <= req.deadline {
        req.max_valuation
    } else {
        let late = t - req.deadline;
        (req.max_valuation - req.alpha * late * late).max(S::zero())
    }
}

/// A normal distribution truncated to `[lo, hi]`, normalized so it integrates
/// to one over the support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedNormal<S> {
    location: S,
    scale: S,
    lo: S,
    hi: S,
    /// Untruncated CDF at `lo`.
    cdf_lo: S,
    /// Untruncated mass of `[lo, hi]`.
    mass: S,
}

impl<S: Real> TruncatedNormal<S> {
    pub fn new(location: S, scale: S, lo: S, hi: S) -> Result<Self, ModelError> {
        for (name, v) in [
            ("location", location),
            ("scale", scale),
            ("lo", lo),
            ("hi", hi),
        ] {
            if !v.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
        }
        if scale <= S::zero() {
            return Err(ModelError::NotPositive("scale"));
        }
        if lo >= hi {
            return Err(ModelError::EmptySupport);
        }
        let cdf_lo = std_normal_cdf((lo - location) / scale);
        let cdf_hi = std_normal_cdf((hi - location) / scale);
        let mass = cdf_hi - cdf_lo;
        if mass <= real::<S>(1e-290) {
            return Err(ModelError::VanishingMass);
        }
        Ok(Self {
            location,
            scale,
            lo,
            hi,
            cdf_lo,
            mass,
        })
    }

    pub fn support(&self) -> (S, S) {
        (self.lo, self.hi)
    }

    pub fn location(&self) -> S {
        self.location
    }

    pub fn scale(&self) -> S {
        self.scale
    }

    /// Density at `t`; zero outside the support.
    pub fn pdf(&self, t: S) -> Density<S> {
        if t < self.lo || t > self.hi {
            return S::zero();
        }
        std_normal_pdf((t - self.location) / self.scale) / (self.scale * self.mass)
    }

    /// Cumulative distribution at `t`, clamped to `[0, 1]`.
    pub fn cdf(&self, t: S) -> S {
        if t <= self.lo {
            return S::zero();
        }
        if t >= self.hi {
            return S::one();
        }
        let raw = (std_normal_cdf((t - self.location) / self.scale) - self.cdf_lo) / self.mass;
        raw.max(S::zero()).min(S::one())
    }

    /// Quantile for `p` in `[0, 1]`, clamped to the support.
    pub fn quantile(&self, p: S) -> S {
        debug_assert!(p >= S::zero() && p <= S::one());
        let target = self.cdf_lo + p * self.mass;
        // Keep the probit argument strictly inside (0, 1); the final clamp to
        // the support absorbs the rounding this introduces.
        let tiny = real::<S>(1e-300);
        let cap = S::one() - real::<S>(f64::EPSILON);
        let target = target.max(tiny).min(cap);
        let x = self.location + self.scale * std_normal_quantile(target);
        x.max(self.lo).min(self.hi)
    }

    /// Inverse-CDF draw; deterministic given the stream state, one uniform
    /// variate consumed per sample.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> S {
        let u: f64 = rng.random();
        self.quantile(real(u))
    }

    /// Grid of points straddling the density peak, used to seed quadrature so
    /// adaptive refinement cannot step over a narrow bump.
    pub fn peak_breakpoints(&self) -> [S; 9] {
        let m = self.location;
        let s = self.scale;
        let k = |c: f64| m + s * real::<S>(c);
        [
            k(-8.0),
            k(-4.0),
            k(-2.0),
            k(-1.0),
            m,
            k(1.0),
            k(2.0),
            k(4.0),
            k(8.0),
        ]
    }
}

/// The submission-time distribution of worker `w` for a task with the given
/// deadline and expiry: normal with mean `mu * deadline` and spread `sigma`,
/// truncated to `[0, expiry]`.
///
/// Panics when the task window is invalid or the distribution carries no mass
/// on the support (far outside the modeled parameter ranges).
pub fn submission_distribution<S: Real>(
    w: &WorkerProfile<S>,
    deadline: Time<S>,
    expiry: Time<S>,
) -> TruncatedNormal<S> {
    assert!(
        deadline > S::zero() && expiry >= deadline,
        "task window must satisfy 0 < deadline <= expiry"
    );
    TruncatedNormal::new(w.mu * deadline, w.sigma, S::zero(), expiry)
        .expect("submission-time distribution must have mass on [0, expiry]")
}

/// Density of worker `w` submitting at time `t`; zero outside `[0, expiry]`.
pub fn submission_pdf<S: Real>(
    w: &WorkerProfile<S>,
    t: Time<S>,
    deadline: Time<S>,
    expiry: Time<S>,
) -> Density<S> {
    submission_distribution(w, deadline, expiry).pdf(t)
}

/// Probability that worker `w` submits no later than `t`.
pub fn submission_cdf<S: Real>(
    w: &WorkerProfile<S>,
    t: Time<S>,
    deadline: Time<S>,
    expiry: Time<S>,
) -> S {
    submission_distribution(w, deadline, expiry).cdf(t)
}

/// Draws a submission time in `[0, expiry]` for worker `w`.
pub fn sample_submission_time<S: Real, R: Rng + ?Sized>(
    w: &WorkerProfile<S>,
    deadline: Time<S>,
    expiry: Time<S>,
    rng: &mut R,
) -> Time<S> {
    submission_distribution(w, deadline, expiry).sample(rng)
}

/// Absolute quadrature tolerance for [`expected_valuation`], as a fraction of
/// the requester's maximum valuation.
pub const EXPECTED_VALUATION_TOL: f64 = 1e-6;

/// Expected valuation achieved when requester `req`'s task is executed by
/// worker `w`: the integral of the depreciation curve against the
/// submission-time density over `[0, expiry]`.
///
/// Always in `[0, max_valuation]`. The plateau before the deadline and the
/// quadratic stretch after it are integrated separately (the integrand has a
/// kink at the deadline and possibly at the root of the valuation), each to
/// half of the `EXPECTED_VALUATION_TOL * max_valuation` budget.
pub fn expected_valuation<S: Real>(req: &RequesterProfile<S>, w: &WorkerProfile<S>) -> Money<S> {
    let dist = submission_distribution(w, req.deadline, req.expiry);
    let half_tol = real::<S>(EXPECTED_VALUATION_TOL * 0.5) * req.max_valuation;
    let seeds = dist.peak_breakpoints();

    let plateau =
        req.max_valuation * integrate(|t| dist.pdf(t), S::zero(), req.deadline, half_tol, &seeds);

    let mut upper = req.expiry;
    if req.alpha > S::zero() {
        let root = req.deadline + (req.max_valuation / req.alpha).sqrt();
        if root < upper {
            upper = root;
        }
    }
    let decay = if upper > req.deadline {
        integrate(
            |t| task_valuation(req, t) * dist.pdf(t),
            req.deadline,
            upper,
            half_tol,
            &seeds,
        )
    } else {
        S::zero()
    };

    (plateau + decay).max(S::zero()).min(req.max_valuation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn requester(v_max: f64, t_d: f64, t_ex: f64, alpha: f64) -> RequesterProfile<f64> {
        RequesterProfile::new(RequesterId(0), 1.0, t_d, t_ex, v_max, alpha).unwrap()
    }

    fn worker(mu: f64) -> WorkerProfile<f64> {
        WorkerProfile::new(WorkerId(0), 1.0, mu).unwrap()
    }

    /// Plain fixed-step Simpson rule, independent of the adaptive machinery.
    fn dense_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for i in 0..panels {
            let lo = a + i as f64 * h;
            acc += h / 6.0 * (f(lo) + 4.0 * f(lo + 0.5 * h) + f(lo + h));
        }
        acc
    }

    #[test]
    fn valuation_plateau_and_decay() {
        let r = requester(100.0, 10.0, 15.0, 4.0);
        assert_eq!(task_valuation(&r, 10.0), 100.0);
        assert_eq!(task_valuation(&r, 0.0), 100.0);
        assert_eq!(task_valuation(&r, 12.0), 84.0);
    }

    #[test]
    fn valuation_clamps_at_zero_and_expiry() {
        let fast = requester(100.0, 10.0, 15.0, 100.0);
        assert_eq!(task_valuation(&fast, 11.5), 0.0);
        let slow = requester(100.0, 10.0, 15.0, 0.5);
        assert_eq!(task_valuation(&slow, 16.0), 0.0);
    }

    #[test]
    fn profile_validation_rejects_bad_fields() {
        assert_eq!(
            RequesterProfile::new(RequesterId(0), 1.0, 10.0, 9.0, 100.0, 1.0),
            Err(ModelError::ExpiryBeforeDeadline)
        );
        assert_eq!(
            RequesterProfile::new(RequesterId(0), 0.5, 10.0, 15.0, 100.0, 1.0),
            Err(ModelError::TaskSizeBelowOne)
        );
        assert_eq!(
            RequesterProfile::new(RequesterId(0), 1.0, 10.0, 15.0, 100.0, -1.0),
            Err(ModelError::NegativeAlpha)
        );
        assert_eq!(
            WorkerProfile::new(WorkerId(0), 0.0, 1.0),
            Err(ModelError::NotPositive("cost"))
        );
        assert_eq!(
            WorkerProfile::with_sigma(WorkerId(0), 1.0, 1.0, 0.0),
            Err(ModelError::NotPositive("sigma"))
        );
    }

    #[test]
    fn lambda_is_reciprocal_of_mu() {
        let w = worker(0.8);
        assert_eq!(w.lambda, 1.0 / 0.8);
        assert_eq!(w.sigma, 1.6);
    }

    #[test]
    fn pdf_zero_outside_support() {
        let w = worker(1.0);
        assert_eq!(submission_pdf(&w, -1.0, 10.0, 15.0), 0.0);
        assert_eq!(submission_pdf(&w, 15.1, 10.0, 15.0), 0.0);
    }

    #[test]
    fn pdf_matches_independent_normalization_at_mode() {
        // mu = 1, sigma = 2, deadline 10, expiry 15: mode at t = 10.
        let w = WorkerProfile::with_sigma(WorkerId(0), 1.0, 1.0, 2.0).unwrap();
        let phi = |t: f64| {
            (-0.5 * ((t - 10.0) / 2.0).powi(2)).exp() / (2.0 * (2.0 * std::f64::consts::PI).sqrt())
        };
        let z = dense_simpson(phi, 0.0, 15.0, 20_000);
        let expected = phi(10.0) / z;
        let got = submission_pdf(&w, 10.0, 10.0, 15.0);
        assert_relative_eq!(got, expected, max_relative = 1e-9);
        // Frozen from the oracle above.
        assert_relative_eq!(got, 0.200_717_586_775_602, max_relative = 1e-9);
    }

    #[test]
    fn pdf_normalizes_over_support() {
        for (mu, t_d, t_ex) in [(1.0, 10.0, 15.0), (0.3, 50.0, 60.0), (1.5, 4.0, 6.0)] {
            let w = worker(mu);
            let dist = submission_distribution(&w, t_d, t_ex);
            let total = integrate(|t| dist.pdf(t), 0.0, t_ex, 1e-11, &dist.peak_breakpoints());
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn sampling_is_deterministic_and_in_support() {
        let w = worker(1.2);
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let ta = sample_submission_time(&w, 10.0, 15.0, &mut a);
            let tb = sample_submission_time(&w, 10.0, 15.0, &mut b);
            assert_eq!(ta, tb);
            assert!((0.0..=15.0).contains(&ta));
        }
    }

    #[test]
    fn sampling_matches_numerically_integrated_cdf() {
        // Kolmogorov-Smirnov against a CDF tabulated by dense quadrature of
        // the density, independent of the closed-form CDF the sampler uses.
        let w = worker(1.1);
        let (t_d, t_ex) = (10.0, 14.0);
        let dist = submission_distribution(&w, t_d, t_ex);
        let grid_n = 8192;
        let mut cdf_grid = vec![0.0_f64; grid_n + 1];
        for i in 0..grid_n {
            let lo = t_ex * i as f64 / grid_n as f64;
            let hi = t_ex * (i + 1) as f64 / grid_n as f64;
            cdf_grid[i + 1] = cdf_grid[i] + dense_simpson(|t| dist.pdf(t), lo, hi, 4);
        }
        let cdf_at = |t: f64| {
            let x = (t / t_ex * grid_n as f64).clamp(0.0, grid_n as f64);
            let i = x.floor() as usize;
            if i >= grid_n {
                return cdf_grid[grid_n];
            }
            let frac = x - i as f64;
            cdf_grid[i] * (1.0 - frac) + cdf_grid[i + 1] * frac
        };

        let n = 100_000;
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut samples: Vec<f64> = (0..n)
            .map(|_| sample_submission_time(&w, t_d, t_ex, &mut rng))
            .collect();
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut ks: f64 = 0.0;
        for (i, &t) in samples.iter().enumerate() {
            let f = cdf_at(t);
            ks = ks.max((f - i as f64 / n as f64).abs());
            ks = ks.max((f - (i + 1) as f64 / n as f64).abs());
        }
        assert!(ks < 0.01, "KS distance {ks} too large");
    }

    #[test]
    fn deep_tail_sampling_matches_analytic_cdf() {
        // Mean factor 1.45 against a barely-stretched window leaves ~1e-48
        // of untruncated mass on the support; sampling must still spread
        // correctly across it rather than collapse to an endpoint.
        let w = worker(1.45);
        let (t_d, t_ex) = (100.0, 100.5);
        let dist = submission_distribution(&w, t_d, t_ex);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let n = 40_000;
        let mut xs: Vec<f64> = (0..n).map(|_| dist.sample(&mut rng)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(xs[0] > 80.0, "left endpoint collapse: {}", xs[0]);
        let mut ks: f64 = 0.0;
        for (i, &x) in xs.iter().enumerate() {
            let f = dist.cdf(x);
            ks = ks.max((f - i as f64 / n as f64).abs());
            ks = ks.max((f - (i + 1) as f64 / n as f64).abs());
        }
        assert!(ks < 0.012, "KS distance {ks}");
    }

    #[test]
    fn expected_valuation_full_when_mass_before_deadline() {
        // Mean factor 0.5 with deadline 100 puts the whole distribution well
        // before the deadline: the expectation degenerates to the maximum.
        let r = requester(100.0, 100.0, 120.0, 5.0);
        let w = worker(0.5);
        let mass_before = submission_cdf(&w, 100.0, 100.0, 120.0);
        assert!(mass_before >= 1.0 - 1e-12);
        assert_abs_diff_eq!(expected_valuation(&r, &w), 100.0, epsilon = 1e-4);
    }

    #[test]
    fn expected_valuation_constant_support() {
        // alpha = 0 and expiry = deadline: the valuation is constant on the
        // whole support.
        let r = requester(100.0, 10.0, 10.0, 0.0);
        let w = worker(1.2);
        assert_abs_diff_eq!(expected_valuation(&r, &w), 100.0, epsilon = 1e-4);
    }

    #[test]
    fn expected_valuation_matches_monte_carlo() {
        let r = requester(100.0, 10.0, 15.0, 4.0);
        let w = WorkerProfile::with_sigma(WorkerId(0), 1.0, 1.2, 2.4).unwrap();
        let quad = expected_valuation(&r, &w);

        // Rejection-sampled Monte Carlo, independent of the quadrature and of
        // the inverse-CDF sampler.
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        let n = 1_000_000_usize;
        let (mut mean, mut m2) = (0.0_f64, 0.0_f64);
        let mut count = 0.0_f64;
        for _ in 0..n {
            let t = loop {
                let z: f64 = rng.sample(rand_distr::StandardNormal);
                let t = 1.2 * 10.0 + 2.4 * z;
                if (0.0..=15.0).contains(&t) {
                    break t;
                }
            };
            let v = task_valuation(&r, t);
            count += 1.0;
            let d = v - mean;
            mean += d / count;
            m2 += d * (v - mean);
        }
        let se = (m2 / (count - 1.0) / count).sqrt();
        assert!(
            (quad - mean).abs() <= 3.0 * se,
            "quadrature {quad} vs MC {mean} (se {se})"
        );
    }

    #[test]
    fn expected_valuation_non_increasing_in_mu() {
        let r = requester(80.0, 20.0, 28.0, 1.0);
        let sigma = 2.0;
        // Slack covers the quadrature tolerance of two evaluations.
        let slack = 2.0 * EXPECTED_VALUATION_TOL * 80.0;
        let mut prev = f64::INFINITY;
        for i in 1..=15 {
            let mu = 0.1 * i as f64;
            let w = WorkerProfile::with_sigma(WorkerId(0), 1.0, mu, sigma).unwrap();
            let e = expected_valuation(&r, &w);
            assert!(
                e <= prev + slack,
                "expectation increased at mu={mu}: {e} > {prev}"
            );
            prev = e;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn valuation_monotone_after_deadline(
            v_max in 1.0..100.0_f64,
            t_d in 0.5..50.0_f64,
            span in 0.0..30.0_f64,
            alpha in 0.0..100.0_f64,
            a in 0.0..1.0_f64,
            b in 0.0..1.0_f64,
        ) {
            let r = requester(v_max, t_d, t_d + span, alpha);
            let horizon = t_d + span + 5.0;
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let t1 = t_d + lo * (horizon - t_d);
            let t2 = t_d + hi * (horizon - t_d);
            prop_assert!(task_valuation(&r, t2) <= task_valuation(&r, t1) + 1e-12);
            // Constant before the deadline.
            prop_assert_eq!(task_valuation(&r, t_d * a), v_max);
        }

        #[test]
        fn valuation_pointwise_decreasing_in_alpha(
            v_max in 1.0..100.0_f64,
            t_d in 0.5..50.0_f64,
            span in 0.1..30.0_f64,
            alpha in 0.0..50.0_f64,
            bump in 0.0..50.0_f64,
            frac in 0.0..1.2_f64,
        ) {
            let r1 = requester(v_max, t_d, t_d + span, alpha);
            let r2 = requester(v_max, t_d, t_d + span, alpha + bump);
            let t = t_d + frac * span;
            prop_assert!(task_valuation(&r2, t) <= task_valuation(&r1, t));
        }

        #[test]
        fn expected_valuation_bounded(
            v_max in 1.0..100.0_f64,
            t_d in 1.0..100.0_f64,
            ex_factor in 1.0..1.5_f64,
            alpha in 1e-9..100.0_f64,
            mu in 0.05..1.5_f64,
            cost in 0.1..10.0_f64,
        ) {
            let r = requester(v_max, t_d, t_d * ex_factor, alpha);
            let w = WorkerProfile::new(WorkerId(1), cost, mu).unwrap();
            let e = expected_valuation(&r, &w);
            prop_assert!((0.0..=v_max + 1e-9).contains(&e), "expectation {e} out of bounds");
        }

        #[test]
        fn pdf_normalizes_for_random_profiles(
            t_d in 1.0..100.0_f64,
            ex_factor in 1.0..1.5_f64,
            mu in 0.05..1.5_f64,
        ) {
            let w = worker(mu);
            let t_ex = t_d * ex_factor;
            let dist = submission_distribution(&w, t_d, t_ex);
            let total = integrate(|t| dist.pdf(t), 0.0, t_ex, 1e-11, &dist.peak_breakpoints());
            prop_assert!((total - 1.0).abs() <= 1e-9, "pdf mass {total}");
        }
    }
}
