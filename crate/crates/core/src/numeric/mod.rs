//! Exact rational and univariate polynomial arithmetic.
//!
//! Rationals are [`num_rational::BigRational`], which keeps every value as a
//! reduced fraction with positive denominator. Polynomials are dense, lowest
//! degree first. Real roots are handled through Sturm chains and rational
//! bisection, so every answer produced here is certified.

mod poly;
mod ratfunc;
mod roots;

pub use poly::UPoly;
pub use ratfunc::RatFunc;
pub use roots::{
    count_real_roots, isolate_real_roots, odd_part, rational_roots, sign_at, squarefree_factors,
    squarefree_part, sturm_sequence, Base, ExtendedPoint, IsolatingInterval, Side,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational number in lowest terms.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoints are not in increasing order")]
    BadInterval,
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact integer square root, if `n` is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Square root of a rational, if it is the square of a rational.
pub fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(Rat::new(n, d))
}

/// The square-free integer `s` with `n = s * m^2` and `sign(s) = sign(n)`.
///
/// Trial division removes every prime up to the cube root of the cofactor; what
/// is left is 1, a prime, a product of two distinct primes, or a prime square,
/// and the last case is detected with an exact square root.
pub fn squarefree_kernel(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "square class of zero");
    let negative = n.is_negative();
    let mut rest = n.abs();
    let mut kernel = BigInt::one();
    let mut p = BigInt::from(2u32);
    loop {
        if (&p * &p * &p) > rest {
            break;
        }
        let mut odd = false;
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            odd = !odd;
        }
        if odd {
            kernel *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if int_sqrt_exact(&rest).is_none() {
        kernel *= &rest;
    }
    if negative {
        -kernel
    } else {
        kernel
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the `p` / `p/q` format produced by [`format_rat`].
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn squarefree_kernel_small_values() {
        let cases = [(1, 1), (4, 1), (12, 3), (-16, -1), (18, 2), (50, 2), (-75, -3), (97, 97)];
        for (n, s) in cases {
            assert_eq!(squarefree_kernel(&BigInt::from(n)), BigInt::from(s), "n = {n}");
        }
        // two large primes and a large prime square
        let p = BigInt::from(1_000_003i64);
        let q = BigInt::from(999_983i64);
        assert_eq!(squarefree_kernel(&(&p * &q * 4)), &p * &q);
        assert_eq!(squarefree_kernel(&(&p * &p * 7)), BigInt::from(7));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rat_sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt_exact(&rat(2, 1)), None);
        assert_eq!(rat_sqrt_exact(&rat(-1, 1)), None);
        assert_eq!(rat_sqrt_exact(&int(0)), Some(int(0)));
    }

    proptest! {
        #[test]
        fn rat_string_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
            let r = rat(n, d);
            prop_assert_eq!(parse_rat(&format_rat(&r)), Some(r));
        }

        #[test]
        fn kernel_times_square_recovers_input(s in 1i64..2000, m in 1i64..200, neg in any::<bool>()) {
            let n = BigInt::from(if neg { -s } else { s }) * BigInt::from(m * m);
            let k = squarefree_kernel(&n);
            prop_assert_eq!(squarefree_kernel(&k), k.clone());
            let ratio = Rat::new(n, k);
            prop_assert!(ratio.is_positive());
            prop_assert!(rat_sqrt_exact(&ratio).is_some());
        }
    }
}
