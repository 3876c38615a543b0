//! Exact arithmetic foundations: rationals, quadratic surds, rigorous
//! interval enclosures and Sturm-based polynomial sign certificates.

pub mod interval;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod value;

pub use interval::{interval_pow, IntervalError, RatInterval};
pub use poly::{
    isolate_roots_above, nonnegative_on_interval, nonnegative_on_ray, positive_on_half_open,
    positive_on_interval, positive_on_ray, SignCertificate, UniPoly,
};
pub use quad::{quad_sign, QuadExt};
pub use rational::{int, parse_rational, pow_i, rat, to_f64, ParseRationalError, Rational};
pub use value::{Exact, Scalar};
