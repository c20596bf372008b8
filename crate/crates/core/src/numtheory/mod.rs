//! Exact arithmetic and combinatorial number theory shared by the other
//! modules: Möbius/δ, falling factorials, cycle types of `S_k`, the cycle
//! index, truncated series and directed-rounding reals.

pub mod arith;
pub mod partitions;
pub mod real;
pub mod scalar;
pub mod series;

pub use arith::{
    binomial, delta, divisors, euler_phi, factorial, factorize, gcd, is_prime, lcm, moebius,
    prime_power, smallest_prime_factor,
};
pub use partitions::{class_size, cycle_index_eval, cycle_types, partitions, sign_of_type, CycleType};
pub use real::{
    binomial_interval, binomial_real, rational_le_f64, rational_to_f64_down, rational_to_f64_up,
    Interval, RealBound, Rounding,
};
pub use scalar::{falling_factorial, Scalar};
pub use series::{series_coeff, series_coeffs, truncated_mul, SeriesFactor};
