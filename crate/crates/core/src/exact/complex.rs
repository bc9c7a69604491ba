use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ceil_bits, nearest_int, pi, sin_cos_2pi, BigRat, CertifiedReal};

/// Approximate point on (or near) the unit circle: exact rational centre
/// `(re, im)` plus a certified radius `err` so that the true value lies in
/// the closed disc around the centre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitComplexApprox {
    pub re: BigRat,
    pub im: BigRat,
    pub err: BigRat,
}

impl UnitComplexApprox {
    pub fn new(re: BigRat, im: BigRat, err: BigRat) -> Self {
        assert!(!err.is_negative());
        UnitComplexApprox { re, im, err }
    }

    pub fn one() -> Self {
        UnitComplexApprox {
            re: BigRat::one(),
            im: BigRat::zero(),
            err: BigRat::zero(),
        }
    }

    pub fn exact(re: BigRat, im: BigRat) -> Self {
        UnitComplexApprox {
            re,
            im,
            err: BigRat::zero(),
        }
    }

    /// Product with error propagation: true values t1, t2 satisfy
    /// |t1 t2 - z1 z2| <= e1(1+e2) + e2(1+e1) + e1 e2 when |t_i| <= 1.
    pub fn mul(&self, other: &Self) -> Self {
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        let one = BigRat::one();
        let err = &self.err * (&one + &other.err)
            + &other.err * (&one + &self.err)
            + &self.err * &other.err;
        UnitComplexApprox { re, im, err }
    }

    /// z^k by repeated squaring; the error bound (1+e)^k - 1 is certified
    /// for true values on the closed unit disc.
    pub fn pow(&self, k: u64) -> Self {
        let mut acc = UnitComplexApprox::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Outward rounding of the centre to `bits` dyadic bits; the rounding
    /// slack is folded into `err`.
    pub fn round(&self, bits: u32) -> Self {
        let re = super::floor_bits(&self.re, bits);
        let im = super::floor_bits(&self.im, bits);
        let slack = (&self.re - &re).abs() + (&self.im - &im).abs();
        UnitComplexApprox {
            re,
            im,
            err: ceil_bits(&(&self.err + slack), bits),
        }
    }

    pub fn re_interval(&self) -> CertifiedReal {
        CertifiedReal::new(&self.re - &self.err, &self.re + &self.err)
    }

    pub fn im_interval(&self) -> CertifiedReal {
        CertifiedReal::new(&self.im - &self.err, &self.im + &self.err)
    }

    /// Enclosure of |z|^2 for the true value.
    pub fn modulus_sq_interval(&self) -> CertifiedReal {
        let centre_norm_sq = &self.re * &self.re + &self.im * &self.im;
        let centre_norm = CertifiedReal::exact(centre_norm_sq).sqrt(96);
        let lo = (centre_norm.lo() - &self.err).max(BigRat::zero());
        let hi = centre_norm.hi() + &self.err;
        let iv = CertifiedReal::new(lo, hi);
        iv.mul(&iv)
    }

    /// Distance bound |z1 - z2| <= value (upper) for the true values.
    pub fn dist_upper(&self, other: &Self) -> BigRat {
        let dr = &self.re - &other.re;
        let di = &self.im - &other.im;
        let centre_sq = &dr * &dr + &di * &di;
        let centre = CertifiedReal::exact(centre_sq).sqrt(96);
        centre.hi() + &self.err + &other.err
    }
}

/// Certified value of `e^{2 pi i m t}` with exact mod-1 reduction of `m t`
/// before any transcendental evaluation. The returned radius satisfies
/// `err <= 2^-prec + 2 pi |m| width(t)`.
pub fn unit_char(m: &BigInt, t: &CertifiedReal, prec: u32) -> UnitComplexApprox {
    if m.is_zero() {
        return UnitComplexApprox::one();
    }
    let mt = t.scale_int(m);
    // exact reduction at the midpoint; the interval radius transfers to the
    // circle with a factor 2 pi
    let c = mt.mid();
    let k = nearest_int(&c);
    let r = &c - BigRat::from_integer(k);
    let delta = mt.radius();
    let (cos_iv, sin_iv) = sin_cos_2pi(&r, prec + 2);
    let re = cos_iv.mid();
    let im = sin_iv.mid();
    let arc = if delta.is_zero() {
        BigRat::zero()
    } else {
        pi(32).hi() * BigRat::from_integer(BigInt::from(2)) * &delta
    };
    let err = cos_iv.radius() + sin_iv.radius() + arc;
    UnitComplexApprox::new(re, im, err).round(prec + 16)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn unit_char_examples() {
        let t = CertifiedReal::exact(rat(1, 2));
        let z = unit_char(&BigInt::zero(), &t, 10);
        assert_eq!(z, UnitComplexApprox::one());

        let z = unit_char(&BigInt::one(), &t, 20);
        assert!((&z.re + rat_int(1)).abs() <= &z.err + rat(1, 1 << 19));
        assert!(z.im.abs() <= &z.err + rat(1, 1 << 19));
        assert!(z.err <= rat(1, 1 << 20));

        let t8 = CertifiedReal::exact(rat(1, 8));
        let z = unit_char(&BigInt::from(4), &t8, 20);
        assert!((&z.re + rat_int(1)).abs() <= &z.err + rat(1, 1 << 19));
        assert!(z.err <= rat(1, 1 << 20));
    }

    #[test]
    fn approximate_unimodularity_invariant() {
        for i in 1..40i64 {
            let t = CertifiedReal::exact(rat(i, 137));
            let z = unit_char(&BigInt::from(11), &t, 48);
            let norm = &z.re * &z.re + &z.im * &z.im;
            assert!((norm - rat_int(1)).abs() <= rat_int(3) * &z.err);
        }
    }

    #[test]
    fn multiplicativity_within_error() {
        // both discs contain the same true value e^{2 pi i (a+b) t}, so the
        // centres sit within the summed radii
        let t = CertifiedReal::exact(rat(5, 171));
        for (a, b) in [(3i64, 4i64), (10, 7), (25, 111), (1, 1)] {
            let za = unit_char(&BigInt::from(a), &t, 60);
            let zb = unit_char(&BigInt::from(b), &t, 60);
            let zab = unit_char(&BigInt::from(a + b), &t, 60);
            let prod = za.mul(&zb);
            let dr = &zab.re - &prod.re;
            let di = &zab.im - &prod.im;
            let bound = &zab.err + &prod.err;
            assert!(&dr * &dr + &di * &di <= &bound * &bound);
        }
    }
}
