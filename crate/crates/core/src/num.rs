//! Scalar abstraction and the handful of special functions everything else
//! builds on.
//!
//! The whole library is generic over the floating-point type through [`Real`];
//! the crate root pins `f64` aliases for the simulator and CLI lane.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar the library is generic over (`f32` or `f64`).
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
}

/// Lifts an `f64` constant into the scalar type.
#[inline]
pub fn real<S: Real>(x: f64) -> S {
    S::from_f64(x).expect("constant representable in scalar type")
}

/// 1 / sqrt(2 * pi)
const FRAC_1_SQRT_TAU: f64 = 0.398_942_280_401_432_7;

/// Standard normal density.
#[inline]
pub fn std_normal_pdf<S: Real>(z: S) -> S {
    real::<S>(FRAC_1_SQRT_TAU) * (-(z * z) * real::<S>(0.5)).exp()
}

/// Standard normal CDF.
///
/// The special function itself is evaluated in double precision regardless of
/// `S`; only the interface is generic.
#[inline]
pub fn std_normal_cdf<S: Real>(z: S) -> S {
    let z = z.to_f64().expect("finite argument");
    real(0.5 * statrs::function::erf::erfc(-z / std::f64::consts::SQRT_2))
}

/// Standard normal quantile for `p` in (0, 1).
///
/// The complementary form keeps full precision in both tails (plain
/// `erf_inv(2p - 1)` degenerates once `2p - 1` rounds to ±1, around
/// `p < 1e-17`). The result is polished with two Newton steps so it stays
/// consistent with [`std_normal_cdf`], which keeps inverse-CDF sampling
/// faithful to the analytic distribution.
pub fn std_normal_quantile<S: Real>(p: S) -> S {
    let p = p.to_f64().expect("finite argument");
    assert!(
        p > 0.0 && p < 1.0,
        "quantile argument must lie in (0, 1), got {p}"
    );
    let mut x = if p <= 0.5 {
        -std::f64::consts::SQRT_2 * statrs::function::erf::erfc_inv(2.0 * p)
    } else {
        std::f64::consts::SQRT_2 * statrs::function::erf::erfc_inv(2.0 * (1.0 - p))
    };
    for _ in 0..2 {
        let cdf = 0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2);
        let pdf = FRAC_1_SQRT_TAU * (-0.5 * x * x).exp();
        if pdf > 0.0 {
            x -= (cdf - p) / pdf;
        }
    }
    real(x)
}
