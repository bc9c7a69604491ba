//! Adaptive-precision pi and circle functions with certified enclosures.
//!
//! Arguments are reduced mod 1 in exact rational arithmetic by the callers;
//! here a dyadic midpoint is extracted and the Taylor series is summed in
//! interval arithmetic with outward rounding after every step, so the
//! returned enclosures are sound for any rational input size.

use num_traits::{One, Signed, Zero};
use std::sync::Mutex;

use super::{pow2_inv, signed_frac, BigRat, CertifiedReal};
use crate::exact::rat_int;

static PI_CACHE: Mutex<Option<(u32, CertifiedReal)>> = Mutex::new(None);

/// Enclosure of pi with width <= 2^-prec, by Machin's formula
/// pi = 16 atan(1/5) - 4 atan(1/239) in exact rational arithmetic.
pub fn pi(prec: u32) -> CertifiedReal {
    {
        let cache = PI_CACHE.lock().unwrap();
        if let Some((p, v)) = cache.as_ref() {
            if *p >= prec {
                return v.round_out(prec + 2);
            }
        }
    }
    let work = prec + 8;
    let a5 = atan_inv(5, work);
    let a239 = atan_inv(239, work);
    let v = a5
        .scale_rat(&rat_int(16))
        .sub(&a239.scale_rat(&rat_int(4)))
        .round_out(work);
    {
        let mut cache = PI_CACHE.lock().unwrap();
        match cache.as_ref() {
            Some((p, _)) if *p >= prec => {}
            _ => *cache = Some((prec, v.clone())),
        }
    }
    v.round_out(prec + 2)
}

/// atan(1/x) for integer x >= 2 via the alternating series, with the
/// first omitted term as the tail bound.
fn atan_inv(x: i64, prec: u32) -> CertifiedReal {
    let eps = pow2_inv(prec + 4);
    let xr = rat_int(x);
    let xsq_inv = BigRat::one() / (&xr * &xr);
    let mut term = BigRat::one() / xr; // 1/x
    let mut sum = BigRat::zero();
    let mut k: i64 = 0;
    loop {
        let contrib = &term / rat_int(2 * k + 1);
        if contrib < eps {
            // alternating with strictly decreasing terms: remainder bounded
            // by the first omitted contribution
            let sum_iv = CertifiedReal::exact(sum);
            return sum_iv.widen(&contrib).round_out(prec + 2);
        }
        if k % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term *= &xsq_inv;
        k += 1;
    }
}

/// Certified (cos 2*pi*r, sin 2*pi*r). The argument is reduced mod 1 first,
/// so only |theta| <= pi enters the Taylor loop.
pub fn sin_cos_2pi(r: &BigRat, prec: u32) -> (CertifiedReal, CertifiedReal) {
    let work = prec + 24;
    let rr = signed_frac(r); // in (-1/2, 1/2], exact
    let theta = pi(work)
        .scale_rat(&(&rr * rat_int(2)))
        .round_out(work);
    // Split into dyadic midpoint + radius; |cos' |, |sin'| <= 1 lets the
    // radius transfer directly to the result.
    let m = super::floor_bits(&theta.mid(), work);
    let delta = {
        let d1 = (theta.hi() - &m).abs();
        let d2 = (theta.lo() - &m).abs();
        d1.max(d2)
    };
    let (c, s) = sin_cos_taylor(&m, work);
    let one = BigRat::one();
    let cos = c.widen(&delta).round_out(prec + 2).clamp(&-one.clone(), &one);
    let sin = s.widen(&delta).round_out(prec + 2).clamp(&-one.clone(), &one);
    (cos, sin)
}

/// Taylor evaluation at an exact dyadic point m with |m| <= 4.
fn sin_cos_taylor(m: &BigRat, work: u32) -> (CertifiedReal, CertifiedReal) {
    debug_assert!(m.abs() <= rat_int(4));
    // the stop threshold must sit above the 2^-work rounding granularity,
    // otherwise rounded terms plateau there and the loop never exits
    let eps = pow2_inv(work.saturating_sub(8));
    let msq = CertifiedReal::exact(m * m).round_out(work);
    // cos: sum (-1)^k m^(2k) / (2k)!, term ratio msq/((2k+1)(2k+2))
    let mut cos = CertifiedReal::zero();
    let mut term = CertifiedReal::exact(BigRat::one());
    let mut k: u32 = 0;
    loop {
        cos = if k % 2 == 0 { cos.add(&term) } else { cos.sub(&term) };
        let next = term
            .mul(&msq)
            .scale_rat(&BigRat::new(1.into(), ((2 * k + 1) * (2 * k + 2)).into()))
            .round_out(work);
        // terms decrease strictly once (2k+1)(2k+2) > msq, true from k >= 2
        if k >= 2 && next.hi() < &eps {
            cos = cos.widen(next.hi());
            break;
        }
        term = next;
        k += 1;
    }
    // sin: sum (-1)^k m^(2k+1) / (2k+1)!
    let mut sin = CertifiedReal::zero();
    let mut term = CertifiedReal::exact(m.clone());
    let mut k: u32 = 0;
    loop {
        sin = if k % 2 == 0 { sin.add(&term) } else { sin.sub(&term) };
        let next = term
            .mul(&msq)
            .scale_rat(&BigRat::new(1.into(), ((2 * k + 2) * (2 * k + 3)).into()))
            .round_out(work);
        let next_mag = next.abs();
        if k >= 2 && next_mag.hi() < &eps {
            sin = sin.widen(next_mag.hi());
            break;
        }
        term = next;
        k += 1;
    }
    (sin_cos_clamp(cos), sin_cos_clamp(sin))
}

fn sin_cos_clamp(x: CertifiedReal) -> CertifiedReal {
    let one = BigRat::one();
    x.clamp(&-one.clone(), &one)
}

#[allow(dead_code)]
pub(crate) fn two_pi_upper(prec: u32) -> BigRat {
    pi(prec).hi() * rat_int(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn close_to(iv: &CertifiedReal, x: f64, tol: f64) -> bool {
        use num_traits::ToPrimitive;
        let lo = iv.lo().to_f64().unwrap();
        let hi = iv.hi().to_f64().unwrap();
        lo - tol <= x && x <= hi + tol && (hi - lo) < tol
    }

    #[test]
    fn pi_is_tight() {
        let p = pi(96);
        assert!(close_to(&p, std::f64::consts::PI, 1e-12));
        assert!(p.width() <= pow2_inv(90));
    }

    #[test]
    fn quarter_turns_are_exactish() {
        let (c, s) = sin_cos_2pi(&rat(1, 2), 64);
        assert!(close_to(&c, -1.0, 1e-15));
        assert!(close_to(&s, 0.0, 1e-15));
        let (c, s) = sin_cos_2pi(&rat(1, 4), 64);
        assert!(close_to(&c, 0.0, 1e-15));
        assert!(close_to(&s, 1.0, 1e-15));
    }

    #[test]
    fn random_angles_match_f64() {
        use num_traits::ToPrimitive;
        for i in 1..200i64 {
            let r = rat(i * 37 % 211, 211);
            let (c, s) = sin_cos_2pi(&r, 80);
            let x = 2.0 * std::f64::consts::PI * r.to_f64().unwrap();
            assert!(close_to(&c, x.cos(), 1e-12), "cos at {r}");
            assert!(close_to(&s, x.sin(), 1e-12), "sin at {r}");
        }
    }

    #[test]
    fn huge_denominator_argument() {
        // argument reduction must stay exact for large rationals
        let num: num_bigint::BigInt = "123456789123456789123456789123456789".parse().unwrap();
        let den: num_bigint::BigInt = "340282366920938463463374607431768211457".parse().unwrap();
        let r = BigRat::new(num, den);
        let (c, s) = sin_cos_2pi(&r, 64);
        let csq_plus_ssq = c.mul(&c).add(&s.mul(&s));
        assert!(csq_plus_ssq.contains(&BigRat::one()));
        assert!(csq_plus_ssq.width() < rat(1, 1 << 40));
    }
}
