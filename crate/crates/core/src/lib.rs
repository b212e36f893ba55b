//! A double-auction crowdsourcing market in which task values depreciate
//! after their deadline and workers submit at stochastic times.
//!
//! The crate provides:
//!
//! - [`model`] — domain types plus the depreciation / submission-time math;
//! - [`mechanism`] — greedy winner selection, trimming, matching, and
//!   two-stage critical-value pricing (the ESWM pipeline and its flat
//!   benchmark);
//! - [`oracle`] — exact assignment optima, brute-force enumeration,
//!   Monte-Carlo valuation, and misreport probes used as ground truth;
//! - [`market`] — a two-platform competition with probabilistic participant
//!   re-selection and per-platform punctuality learning;
//! - [`report`] — per-auction metrics and deterministic CSV emission.
//!
//! Everything numeric is generic over the scalar type via [`num::Real`];
//! the aliases below pin the `f64` lane used by the simulator and CLI.
//!
//! ```
//! use eswm::mechanism::{run_eswm, MechanismParams};
//! use eswm::model::{RequesterId, WorkerId};
//! use eswm::{Requester, Worker};
//! use rand::SeedableRng;
//!
//! let requesters: Vec<Requester> = [(1, 100.0, 1.0), (2, 90.0, 10.0), (3, 50.0, 1.0)]
//!     .into_iter()
//!     .map(|(id, v, alpha)| {
//!         Requester::new(RequesterId(id), 1.0, 10.0, 15.0, v, alpha).unwrap()
//!     })
//!     .collect();
//! let workers: Vec<Worker> = [(1, 1.0), (2, 4.0), (3, 2.0)]
//!     .into_iter()
//!     .map(|(id, cost)| Worker::new(WorkerId(id), cost, 1.0).unwrap())
//!     .collect();
//!
//! let params = MechanismParams::new(1, 1.0, 1.0).unwrap();
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
//! let outcome = run_eswm(&requesters, &workers, &params, &mut rng);
//!
//! // The marginal agents price the winners: requester 1 pays at most 50,
//! // worker 1 receives at least 2, scaled by the achieved valuation.
//! assert_eq!(outcome.matches, vec![(RequesterId(1), WorkerId(1))]);
//! assert_eq!(outcome.temp_fees[&RequesterId(1)], 50.0);
//! assert_eq!(outcome.temp_payments[&WorkerId(1)], 2.0);
//! ```

#![forbid(unsafe_code)]

pub mod assignment;
pub mod market;
pub mod mechanism;
pub mod model;
pub mod num;
pub mod oracle;
pub mod population;
pub mod quad;
pub mod report;
pub mod seed;

pub use num::Real;

/// Double-precision requester profile.
pub type Requester = model::RequesterProfile<f64>;
/// Double-precision worker profile.
pub type Worker = model::WorkerProfile<f64>;
/// Double-precision mechanism parameters.
pub type Params = mechanism::MechanismParams<f64>;
/// Double-precision auction outcome.
pub type Outcome = mechanism::AuctionOutcome<f64>;
/// Double-precision metrics record.
pub type Metrics = report::MetricsRecord<f64>;
