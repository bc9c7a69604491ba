//! Exact rational scalars and the nearest-integer calculus used everywhere.
//!
//! `nearest_int` rounds half-integers to the lesser integer, which pins the
//! signed fractional part `signed_frac` to the half-open range (-1/2, 1/2]
//! and makes `|signed_frac(x)| == dist_to_int(x)` an exact identity.

mod complex;
mod interval;
mod trig;

pub use complex::{unit_char, UnitComplexApprox};
pub use interval::{pow_rat_certified, CertifiedReal};
pub use trig::{pi, sin_cos_2pi};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::{Error, Result};

pub type BigRat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub(crate) fn half() -> BigRat {
    rat(1, 2)
}

/// Parses the scalar literal form used by every CLI flag and JSON field:
/// `"p/q"` or `"p"`, decimal big integers with an optional leading minus.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = BigInt::from_str(num_s)
        .map_err(|_| Error::bad_input(format!("bad integer literal: {num_s:?}")))?;
    let den = match den_s {
        Some(d) => BigInt::from_str(d)
            .map_err(|_| Error::bad_input(format!("bad denominator literal: {d:?}")))?,
        None => BigInt::one(),
    };
    if den <= BigInt::zero() {
        return Err(Error::bad_input(format!(
            "denominator must be positive in {s:?}"
        )));
    }
    Ok(BigRat::new(num, den))
}

pub fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::bad_input(format!("bad integer literal: {s:?}")))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn rat_to_string(x: &BigRat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Nearest integer, the lesser one on ties: 7/2 -> 3, -5/2 -> -3.
pub fn nearest_int(x: &BigRat) -> BigInt {
    // ceil(x - 1/2) realizes round-half-down.
    (x - half()).ceil().to_integer()
}

/// Signed fractional part `<x> := x - nearest_int(x)`, in (-1/2, 1/2].
pub fn signed_frac(x: &BigRat) -> BigRat {
    x - BigRat::from_integer(nearest_int(x))
}

/// Distance to the nearest integer `||x||`, in [0, 1/2].
pub fn dist_to_int(x: &BigRat) -> BigRat {
    signed_frac(x).abs()
}

/// Largest dyadic `m / 2^bits <= x` (directed rounding toward -inf).
pub(crate) fn floor_bits(x: &BigRat, bits: u32) -> BigRat {
    let scale = BigInt::one() << bits;
    let m = (x * BigRat::from_integer(scale.clone())).floor().to_integer();
    BigRat::new(m, scale)
}

/// Smallest dyadic `m / 2^bits >= x` (directed rounding toward +inf).
pub(crate) fn ceil_bits(x: &BigRat, bits: u32) -> BigRat {
    let scale = BigInt::one() << bits;
    let m = (x * BigRat::from_integer(scale.clone())).ceil().to_integer();
    BigRat::new(m, scale)
}

pub(crate) fn pow2_inv(bits: u32) -> BigRat {
    BigRat::new(BigInt::one(), BigInt::one() << bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nearest_int_examples() {
        assert_eq!(nearest_int(&rat(7, 2)), BigInt::from(3));
        assert_eq!(nearest_int(&rat_int(0)), BigInt::from(0));
        assert_eq!(nearest_int(&rat(-5, 3)), BigInt::from(-2));
        // ties to the lesser integer on the negative side as well
        assert_eq!(nearest_int(&rat(-7, 2)), BigInt::from(-4));
    }

    #[test]
    fn signed_frac_examples() {
        assert_eq!(signed_frac(&rat(7, 2)), rat(1, 2));
        assert_eq!(signed_frac(&rat(1, 3)), rat(1, 3));
        assert_eq!(signed_frac(&rat(-1, 3)), rat(-1, 3));
    }

    #[test]
    fn dist_to_int_examples() {
        assert_eq!(dist_to_int(&rat(2, 3)), rat(1, 3));
        assert_eq!(dist_to_int(&rat_int(5)), rat_int(0));
        assert_eq!(dist_to_int(&rat(7, 2)), rat(1, 2));
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("17").unwrap(), rat_int(17));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("a/b").is_err());
        assert_eq!(rat_to_string(&rat(-3, 4)), "-3/4");
        assert_eq!(rat_to_string(&rat(8, 4)), "2");
    }

    fn arb_rat() -> impl Strategy<Value = BigRat> {
        (-2000i64..2000, 1i64..400).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn frac_plus_nearest_is_identity(x in arb_rat()) {
            let recomposed = BigRat::from_integer(nearest_int(&x)) + signed_frac(&x);
            prop_assert_eq!(recomposed, x);
        }

        #[test]
        fn abs_signed_frac_is_dist(x in arb_rat()) {
            prop_assert_eq!(signed_frac(&x).abs(), dist_to_int(&x));
            prop_assert!(signed_frac(&x) > rat(-1, 2));
            prop_assert!(signed_frac(&x) <= rat(1, 2));
        }

        #[test]
        fn dist_is_periodic_and_even(x in arb_rat(), k in -50i64..50) {
            let shifted = &x + rat_int(k);
            prop_assert_eq!(dist_to_int(&shifted), dist_to_int(&x));
            prop_assert_eq!(dist_to_int(&-x.clone()), dist_to_int(&x));
        }
    }
}
