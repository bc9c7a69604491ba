use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ceil_bits, dist_to_int, floor_bits, half, nearest_int, BigRat};

/// Exact-rational interval `[lo, hi]` enclosing a real number. Every
/// operation returns an interval containing the image of the true value;
/// widths only ever grow through honest rounding, never through guesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedReal {
    lo: BigRat,
    hi: BigRat,
}

impl CertifiedReal {
    pub fn new(lo: BigRat, hi: BigRat) -> Self {
        assert!(lo <= hi, "inverted interval endpoints");
        CertifiedReal { lo, hi }
    }

    pub fn exact(x: BigRat) -> Self {
        CertifiedReal { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::exact(BigRat::zero())
    }

    /// Symmetric interval `[-r, r]`.
    pub fn ball(r: BigRat) -> Self {
        assert!(!r.is_negative());
        CertifiedReal { lo: -r.clone(), hi: r }
    }

    pub fn lo(&self) -> &BigRat {
        &self.lo
    }

    pub fn hi(&self) -> &BigRat {
        &self.hi
    }

    pub fn width(&self) -> BigRat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRat {
        (&self.lo + &self.hi) * half()
    }

    /// Half the width; `|true - mid| <= radius`.
    pub fn radius(&self) -> BigRat {
        self.width() * half()
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn certainly_lt(&self, x: &BigRat) -> bool {
        &self.hi < x
    }

    pub fn certainly_gt(&self, x: &BigRat) -> bool {
        &self.lo > x
    }

    pub fn certainly_le(&self, x: &BigRat) -> bool {
        &self.hi <= x
    }

    pub fn certainly_ge(&self, x: &BigRat) -> bool {
        &self.lo >= x
    }

    pub fn add(&self, other: &Self) -> Self {
        CertifiedReal {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn add_rat(&self, x: &BigRat) -> Self {
        CertifiedReal {
            lo: &self.lo + x,
            hi: &self.hi + x,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CertifiedReal {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Self {
        CertifiedReal {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn scale_rat(&self, c: &BigRat) -> Self {
        if c.is_negative() {
            CertifiedReal {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            CertifiedReal {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale_rat(&BigRat::from_integer(c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        CertifiedReal { lo, hi }
    }

    /// Interval division; the divisor must be bounded away from zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(
            other.lo.is_positive() || other.hi.is_negative(),
            "division by an interval containing zero"
        );
        let cands = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        CertifiedReal { lo, hi }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = self.hi.clone().max(-self.lo.clone());
            CertifiedReal {
                lo: BigRat::zero(),
                hi,
            }
        }
    }

    /// Interval power with integer exponent; sign-correct for even powers.
    pub fn powi(&self, e: u32) -> Self {
        if e == 0 {
            return Self::exact(BigRat::one());
        }
        if e % 2 == 0 {
            let a = self.abs();
            CertifiedReal {
                lo: pow_rat_int(&a.lo, e),
                hi: pow_rat_int(&a.hi, e),
            }
        } else {
            CertifiedReal {
                lo: pow_rat_int(&self.lo, e),
                hi: pow_rat_int(&self.hi, e),
            }
        }
    }

    /// Enclosure of x^p over a nonnegative interval for rational p > 0
    /// (lo clamped to 0); exact when p is an integer.
    pub fn pow_rat(&self, p: &BigRat, bits: u32) -> Self {
        use num_traits::ToPrimitive;
        if p.is_integer() {
            return self.powi(p.to_integer().to_u32().expect("exponent too large"));
        }
        let lo = if self.lo.is_negative() {
            BigRat::zero()
        } else {
            pow_rat_certified(&self.lo, p, bits).lo().clone()
        };
        let hi = pow_rat_certified(&self.hi.clone().max(BigRat::zero()), p, bits)
            .hi()
            .clone();
        CertifiedReal { lo, hi }
    }

    /// Outward dyadic rounding to `bits` fractional bits; keeps denominators
    /// small along long computations.
    pub fn round_out(&self, bits: u32) -> Self {
        CertifiedReal {
            lo: floor_bits(&self.lo, bits),
            hi: ceil_bits(&self.hi, bits),
        }
    }

    /// Widens both endpoints by `r >= 0`.
    pub fn widen(&self, r: &BigRat) -> Self {
        assert!(!r.is_negative());
        CertifiedReal {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    pub fn clamp(&self, lo: &BigRat, hi: &BigRat) -> Self {
        let l = self.lo.clone().max(lo.clone()).min(hi.clone());
        let h = self.hi.clone().min(hi.clone()).max(lo.clone());
        CertifiedReal { lo: l, hi: h }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        CertifiedReal {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Enclosure of `max(x, y)` for `x in self`, `y in other`.
    pub fn max_pointwise(&self, other: &Self) -> Self {
        CertifiedReal {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Enclosure of `sqrt` over a nonnegative interval (lo clamped to 0),
    /// with `2^-bits` dyadic rounding.
    pub fn sqrt(&self, bits: u32) -> Self {
        let lo = if self.lo.is_negative() {
            BigRat::zero()
        } else {
            sqrt_lower(&self.lo, bits)
        };
        let hi = sqrt_upper(&self.hi.clone().max(BigRat::zero()), bits);
        CertifiedReal { lo, hi }
    }

    /// Subtracts the nearest integer to the midpoint; returns the reduced
    /// interval and the integer removed. Exact (no rounding).
    pub fn reduce_mod1(&self) -> (Self, BigInt) {
        let k = nearest_int(&self.mid());
        let kr = BigRat::from_integer(k.clone());
        (
            CertifiedReal {
                lo: &self.lo - &kr,
                hi: &self.hi - &kr,
            },
            k,
        )
    }

    /// Enclosure of `{ ||y|| : y in [lo, hi] }`. Wide inputs (width >= 1/2
    /// around a critical point) degrade gracefully toward [0, 1/2].
    pub fn dist_to_int_certified(&self) -> Self {
        if self.width() >= BigRat::one() {
            return CertifiedReal {
                lo: BigRat::zero(),
                hi: half(),
            };
        }
        let (r, _) = self.reduce_mod1();
        // After reduction the interval sits within (-3/2, 3/2).
        let da = dist_to_int(&r.lo);
        let db = dist_to_int(&r.hi);
        let contains_integer = r.lo.floor() < r.hi.floor() || r.lo.is_integer() || r.hi.is_integer();
        let contains_half = {
            let s = CertifiedReal {
                lo: &r.lo - half(),
                hi: &r.hi - half(),
            };
            s.lo.floor() < s.hi.floor() || s.lo.is_integer() || s.hi.is_integer()
        };
        let lo = if contains_integer {
            BigRat::zero()
        } else {
            da.clone().min(db.clone())
        };
        let hi = if contains_half {
            half()
        } else {
            da.max(db)
        };
        CertifiedReal { lo, hi }
    }
}

fn pow_rat_int(x: &BigRat, e: u32) -> BigRat {
    let mut acc = BigRat::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Dyadic m/2^bits with m = floor(sqrt(x * 4^bits)): a certified lower
/// bound for sqrt(x), x >= 0.
pub(crate) fn sqrt_lower(x: &BigRat, bits: u32) -> BigRat {
    debug_assert!(!x.is_negative());
    let scaled = x * BigRat::from_integer(BigInt::one() << (2 * bits));
    let m = scaled.floor().to_integer().sqrt();
    BigRat::new(m, BigInt::one() << bits)
}

pub(crate) fn sqrt_upper(x: &BigRat, bits: u32) -> BigRat {
    debug_assert!(!x.is_negative());
    let scaled = x * BigRat::from_integer(BigInt::one() << (2 * bits));
    let m = scaled.ceil().to_integer().sqrt() + BigInt::one();
    BigRat::new(m, BigInt::one() << bits)
}

/// Certified enclosure of x^(u/v) for x >= 0 and rational p = u/v > 0.
pub fn pow_rat_certified(x: &BigRat, p: &BigRat, bits: u32) -> CertifiedReal {
    assert!(!x.is_negative() && p.is_positive());
    if x.is_zero() {
        return CertifiedReal::exact(BigRat::zero());
    }
    let u = p.numer().to_u32_checked();
    let v = p.denom().to_u32_checked();
    let xu = pow_rat_int(x, u);
    if v == 1 {
        return CertifiedReal::exact(xu);
    }
    // v-th root with directed dyadic rounding on numerator and denominator.
    let scale = BigInt::one() << (v * bits);
    let lo_m = (&xu * BigRat::from_integer(scale.clone()))
        .floor()
        .to_integer()
        .nth_root(v);
    let hi_m = (&xu * BigRat::from_integer(scale))
        .ceil()
        .to_integer()
        .nth_root(v)
        + BigInt::one();
    let den = BigInt::one() << bits;
    CertifiedReal::new(BigRat::new(lo_m, den.clone()), BigRat::new(hi_m, den))
}

trait ToU32Checked {
    fn to_u32_checked(&self) -> u32;
}

impl ToU32Checked for BigInt {
    fn to_u32_checked(&self) -> u32 {
        use num_traits::ToPrimitive;
        self.to_u32().expect("exponent out of u32 range")
    }
}
