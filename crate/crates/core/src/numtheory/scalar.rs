use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

/// Number types the combinatorial evaluators run over: exact integers,
/// exact rationals, or plain `f64`.
pub trait Scalar: Clone + Num {
    fn from_bigint(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }
}

impl Scalar for BigInt {
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
}

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
}

impl Scalar for f64 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::INFINITY)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

/// `(x)_k = x (x−1) ⋯ (x−k+1)`, with `(x)_0 = 1`.
pub fn falling_factorial<T: Scalar>(x: &T, k: u64) -> T {
    let mut acc = T::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc = acc * term.clone();
        term = term - T::one();
    }
    acc
}
