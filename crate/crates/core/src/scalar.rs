//! Exact rational scalars. All arithmetic in the crate is over `Scalar`;
//! there is no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The ground field: arbitrary-precision rationals, always in lowest terms
/// with positive denominator (maintained by `BigRational` itself).
pub type Scalar = BigRational;

pub fn s_int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn s_frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn s_zero() -> Scalar {
    Scalar::zero()
}

pub fn s_one() -> Scalar {
    Scalar::one()
}

/// Canonical text form: `p` for integers, `p/q` otherwise, `q > 0`.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses the canonical form produced by [`format_scalar`].
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let t = text.trim();
    match t.split_once('/') {
        None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
    }
}

/// n! as a scalar; used by the alternation operator.
pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

/// Binomial coefficient C(n, k) as a scalar.
pub fn binomial(n: usize, k: usize) -> Scalar {
    if k > n {
        return s_zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

pub fn is_positive(s: &Scalar) -> bool {
    s.numer().is_positive()
}
