//! Continued fractions: principal denominators, certified enclosures of
//! alpha = [0; a_1, a_2, ...] and of the signed errors q_n alpha - p_n, and
//! the Ostrowski digit expansion in that basis.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{BigRat, CertifiedReal};
use crate::seq::IndexRule;
use crate::{Error, Result};

/// Partial quotients a_1, a_2, ... (all >= 1), either by rule or explicit.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CFExpansion {
    pub quotients: Quotients,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Quotients {
    Rule(IndexRule),
    List(Vec<u64>),
}

impl CFExpansion {
    pub fn from_rule(rule: IndexRule) -> Self {
        CFExpansion {
            quotients: Quotients::Rule(rule),
        }
    }

    pub fn from_list(list: Vec<u64>) -> Result<Self> {
        if list.is_empty() || list.iter().any(|&a| a == 0) {
            return Err(Error::bad_input("partial quotients must be >= 1"));
        }
        Ok(CFExpansion {
            quotients: Quotients::List(list),
        })
    }

    /// a_n for n >= 1.
    pub fn quotient(&self, n: usize) -> Result<BigInt> {
        match &self.quotients {
            Quotients::Rule(rule) => rule.eval(n),
            Quotients::List(list) => list
                .get(n - 1)
                .map(|&a| BigInt::from(a))
                .ok_or(Error::IndexOutOfPrefix {
                    index: n,
                    len: list.len(),
                }),
        }
    }

    /// Number of quotients when the expansion is finite.
    pub fn finite_len(&self) -> Option<usize> {
        match &self.quotients {
            Quotients::Rule(_) => None,
            Quotients::List(list) => Some(list.len()),
        }
    }
}

/// Convergent tables p_0..p_N, q_0..q_N with q_0 = 1, q_1 = a_1 and
/// q_{n+1} = a_{n+1} q_n + q_{n-1} (same recursion for p with p_0 = 0,
/// p_1 = 1).
#[derive(Debug, Clone)]
pub struct Convergents {
    pub p: Vec<BigInt>,
    pub q: Vec<BigInt>,
}

impl Convergents {
    pub fn depth(&self) -> usize {
        self.q.len() - 1
    }

    /// Convergent p_n/q_n as an exact rational.
    pub fn ratio(&self, n: usize) -> BigRat {
        BigRat::new(self.p[n].clone(), self.q[n].clone())
    }
}

pub fn convergents(cf: &CFExpansion, n: usize) -> Result<Convergents> {
    assert!(n >= 1);
    let mut p = Vec::with_capacity(n + 1);
    let mut q = Vec::with_capacity(n + 1);
    p.push(BigInt::zero());
    q.push(BigInt::one());
    let a1 = cf.quotient(1)?;
    p.push(BigInt::one());
    q.push(a1);
    for k in 2..=n {
        let a = cf.quotient(k)?;
        let pn = &a * &p[k - 1] + &p[k - 2];
        let qn = &a * &q[k - 1] + &q[k - 2];
        p.push(pn);
        q.push(qn);
    }
    Ok(Convergents { p, q })
}

/// Euclidean expansion of a rational in (0,1), canonical last quotient >= 2.
pub fn cf_of_rational(x: &BigRat) -> Result<CFExpansion> {
    if !(x > &BigRat::zero() && x < &BigRat::one()) {
        return Err(Error::OutOfRange(x.to_string(), "(0,1)"));
    }
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut quots = Vec::new();
    while !num.is_zero() {
        let a = &den / &num;
        let r = &den % &num;
        quots.push(a);
        den = std::mem::replace(&mut num, r);
    }
    // coprime inputs end with a quotient >= 2 automatically
    debug_assert!(quots.last().map(|a| a >= &BigInt::from(2)).unwrap_or(false));
    let list = quots
        .iter()
        .map(|a| {
            a.to_u64()
                .ok_or_else(|| Error::bad_input("quotient too large for list form"))
        })
        .collect::<Result<Vec<u64>>>()?;
    CFExpansion::from_list(list)
}

/// Exact value of a finite expansion.
pub fn cf_value(cf: &CFExpansion) -> Result<BigRat> {
    let len = cf
        .finite_len()
        .ok_or_else(|| Error::bad_input("cf_value needs a finite expansion"))?;
    let conv = convergents(cf, len)?;
    Ok(conv.ratio(len))
}

/// Interval with endpoints p_{N-1}/q_{N-1} and p_N/q_N; contains alpha,
/// width exactly 1/(q_{N-1} q_N).
pub fn alpha_enclosure(cf: &CFExpansion, n: usize) -> Result<CertifiedReal> {
    if n < 2 {
        return Err(Error::bad_input("alpha_enclosure needs N >= 2"));
    }
    let conv = convergents(cf, n)?;
    Ok(alpha_from(&conv, n))
}

/// Enclosure of the signed error <q_n alpha> := q_n alpha - p_n, computed
/// from the depth-N alpha enclosure. Sign alternates with n and
/// |q_n alpha - p_n| lies in (1/(q_{n+1}+q_n), 1/q_{n+1}).
pub fn qn_alpha_signed(cf: &CFExpansion, n: usize, depth: usize) -> Result<CertifiedReal> {
    if depth <= n + 2 {
        return Err(Error::bad_input("qn_alpha_signed needs depth N > n + 2"));
    }
    let conv = convergents(cf, depth)?;
    let alpha = alpha_from(&conv, depth);
    Ok(signed_error(&conv, &alpha, n))
}

fn alpha_from(conv: &Convergents, n: usize) -> CertifiedReal {
    let a = conv.ratio(n - 1);
    let b = conv.ratio(n);
    if a <= b {
        CertifiedReal::new(a, b)
    } else {
        CertifiedReal::new(b, a)
    }
}

fn signed_error(conv: &Convergents, alpha: &CertifiedReal, n: usize) -> CertifiedReal {
    alpha
        .scale_int(&conv.q[n])
        .add_rat(&-BigRat::from_integer(conv.p[n].clone()))
}

/// Ostrowski digits w_1..w_N with w_k <= a_k and the Markov condition
/// w_k = a_k => w_{k+1} = 0, relative to the basis e_k = <q_k alpha>.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OstrowskiDigits {
    pub digits: Vec<BigInt>,
}

impl OstrowskiDigits {
    /// Checks the digit bounds and the Markov condition against `cf`.
    pub fn is_valid(&self, cf: &CFExpansion) -> Result<bool> {
        for (i, d) in self.digits.iter().enumerate() {
            let a = cf.quotient(i + 1)?;
            if d.is_negative() || d > &a {
                return Ok(false);
            }
            if d == &a {
                if let Some(next) = self.digits.get(i + 1) {
                    if !next.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Enclosure of the partial value sum_k w_k <q_k alpha> (not reduced mod 1).
pub fn ostrowski_partial_value(
    digits: &OstrowskiDigits,
    cf: &CFExpansion,
    depth: usize,
) -> Result<CertifiedReal> {
    let n = digits.digits.len();
    let depth = depth.max(n + 3);
    let conv = convergents(cf, depth)?;
    let alpha = alpha_from(&conv, depth);
    let mut acc = CertifiedReal::zero();
    for (i, d) in digits.digits.iter().enumerate() {
        acc = acc.add(&signed_error(&conv, &alpha, i + 1).scale_int(d));
    }
    Ok(acc)
}

/// Bound on |sum_{k > N} w_k <q_k alpha>| over all admissible digit tails:
/// a_k D_{k-1} = D_{k-2} - D_k telescopes to D_{N-1} + D_N.
pub fn ostrowski_residual_bound(cf: &CFExpansion, n: usize, depth: usize) -> Result<BigRat> {
    let depth = depth.max(n + 3);
    let conv = convergents(cf, depth)?;
    let alpha = alpha_from(&conv, depth);
    let d_prev = signed_error(&conv, &alpha, n.saturating_sub(1).max(1)).abs();
    let d_n = signed_error(&conv, &alpha, n).abs();
    Ok(d_prev.hi() + d_n.hi())
}

const OSTROWSKI_MAX_REFINE: usize = 7;
const OSTROWSKI_GUARD: usize = 8;

/// Greedy most-significant-first digit extraction. Digit decisions compare
/// the residual against certified tail ranges; a point on the seam between
/// two admissible digits takes the higher one (the half-open convention),
/// and undecidable enclosures trigger geometric refinement of both the
/// convergent depth and the lookahead guard before `PrecisionExhausted`.
///
/// In this basis the representable set has full measure only when the
/// partial quotients are bounded by the digit caps tightly (e.g. a_n = 1);
/// for rapidly growing quotients many t have no admissible expansion at
/// all, and such inputs also end in `PrecisionExhausted`.
pub fn ostrowski_digits(
    t: &CertifiedReal,
    cf: &CFExpansion,
    n_digits: usize,
) -> Result<OstrowskiDigits> {
    assert!(n_digits >= 1);
    if t.lo().is_negative() || t.hi() >= &BigRat::one() {
        return Err(Error::OutOfRange(
            format!("[{}, {}]", t.lo(), t.hi()),
            "[0,1)",
        ));
    }
    for attempt in 0..OSTROWSKI_MAX_REFINE {
        // the guard depth is what resolves seam points; alpha precision at
        // depth 2(n + guard) is already far finer than any digit scale
        let guard = OSTROWSKI_GUARD + 6 * attempt;
        let depth = 2 * (n_digits + guard) + 8;
        match try_digits(t, cf, n_digits, guard, depth)? {
            Some(digits) => return Ok(digits),
            None => continue,
        }
    }
    Err(Error::PrecisionExhausted("an Ostrowski digit boundary"))
}

/// One attempt at fixed guard and depth; `Ok(None)` means "refine and retry".
fn try_digits(
    t: &CertifiedReal,
    cf: &CFExpansion,
    n_digits: usize,
    guard: usize,
    depth: usize,
) -> Result<Option<OstrowskiDigits>> {
    let base = n_digits + guard;
    let conv = convergents(cf, depth.max(base + 3))?;
    let alpha = alpha_from(&conv, conv.depth());
    // dyadic working precision well below the finest basis scale
    let bits = (conv.q[base + 2].bits() as u32) + 96;
    // signed basis vectors e_1..e_{base} and digit caps a_1..a_{base}
    let mut e = Vec::with_capacity(base + 1);
    let mut caps = Vec::with_capacity(base + 1);
    e.push(CertifiedReal::zero()); // index 0 unused
    caps.push(BigInt::zero());
    for k in 1..=base {
        e.push(signed_error(&conv, &alpha, k).round_out(bits));
        caps.push(cf.quotient(k)?);
    }
    let mag = |k: usize| -> BigRat { e[k].abs().hi().clone() };
    // outer enclosures of the representable tail ranges R_k; the telescoped
    // bound D_{k-2} + D_{k-1} seeds the two levels past the guard
    let mut ranges = vec![CertifiedReal::zero(); base + 3];
    ranges[base + 2] = CertifiedReal::ball(mag(base) + mag(base - 1));
    ranges[base + 1] = CertifiedReal::ball(mag(base - 1) + mag(base));
    for k in (1..=base).rev() {
        let ek = &e[k];
        let cap = &caps[k];
        let full = ek.scale_int(cap).add(&ranges[k + 2]);
        let partial_span = CertifiedReal::zero().hull(&ek.scale_int(&(cap - BigInt::one())));
        let partial = partial_span.add(&ranges[k + 1]);
        ranges[k] = full.hull(&partial).round_out(bits);
    }

    // shift t into the fundamental domain; on the seam prefer the shifted
    // copy, matching the half-open domain reading
    let t_shift = t.add_rat(&-BigRat::one());
    let t_ok = !disjoint(t, &ranges[1]);
    let ts_ok = !disjoint(&t_shift, &ranges[1]);
    let mut residual = match (t_ok, ts_ok) {
        (true, false) => t.clone(),
        (false, true) => t_shift,
        (true, true) => {
            if t.is_exact() && t.lo().is_zero() {
                t.clone()
            } else if t.width() * BigRat::from_integer(4.into()) < mag(1) {
                t_shift
            } else {
                return Ok(None);
            }
        }
        (false, false) => return Ok(None),
    };

    let mut digits: Vec<BigInt> = Vec::with_capacity(n_digits);
    let mut prev_full = false;
    for k in 1..=n_digits {
        if prev_full {
            digits.push(BigInt::zero());
            prev_full = false;
            continue;
        }
        let cap = caps[k].clone();
        let ek = &e[k];
        // solve (residual - w e_k) in R_{k+1} for integer w, then test the
        // few integer candidates near the solution window
        let q = residual.sub(&ranges[k + 1]).div(ek);
        let lo = q.lo().floor().to_integer() - BigInt::one();
        let hi = q.hi().ceil().to_integer() + BigInt::one();
        let mut candidates: Vec<BigInt> = Vec::new();
        let mut w = lo.max(BigInt::zero());
        let w_hi = hi.min(cap.clone());
        while w <= w_hi {
            candidates.push(w.clone());
            w += BigInt::one();
        }
        if !candidates.contains(&cap) {
            candidates.push(cap.clone());
        }
        let mut admissible: Vec<BigInt> = Vec::new();
        for wc in candidates {
            let after = residual.sub(&ek.scale_int(&wc));
            let tail_range = if wc == cap { &ranges[k + 2] } else { &ranges[k + 1] };
            if !disjoint(&after, tail_range) {
                admissible.push(wc);
            }
        }
        // exactly one candidate decides outright; a pair of neighbours is a
        // seam point and takes the higher digit, provided the residual is
        // narrow enough that the seam is real and not input slack. A wrong
        // pick dead-ends downstream and retries with a longer guard.
        admissible.sort();
        let narrow = residual.width() * BigRat::from_integer(4.into()) < ek.abs().lo().clone();
        let w = match admissible.len() {
            1 => admissible.pop().unwrap(),
            2 if narrow && &admissible[1] - &admissible[0] == BigInt::one() => {
                admissible.pop().unwrap()
            }
            _ => return Ok(None),
        };
        residual = residual.sub(&ek.scale_int(&w)).round_out(bits);
        prev_full = w == caps[k];
        digits.push(w);
    }
    Ok(Some(OstrowskiDigits { digits }))
}

fn disjoint(a: &CertifiedReal, b: &CertifiedReal) -> bool {
    a.hi() < b.lo() || b.hi() < a.lo()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn golden() -> CFExpansion {
        CFExpansion::from_rule(IndexRule::constant(1))
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cf_of_rational_examples() {
        let cf = cf_of_rational(&rat(3, 7)).unwrap();
        assert_eq!(cf.quotients, Quotients::List(vec![2, 3]));
        let cf = cf_of_rational(&rat(1, 2)).unwrap();
        assert_eq!(cf.quotients, Quotients::List(vec![2]));
        let cf = cf_of_rational(&rat(5, 8)).unwrap();
        assert_eq!(cf.quotients, Quotients::List(vec![1, 1, 1, 2]));
        assert!(cf_of_rational(&rat(3, 2)).is_err());
    }

    #[test]
    fn cf_roundtrip_is_exact() {
        for (n, d) in [(3i64, 7i64), (5, 8), (1, 2), (355, 452), (89, 144)] {
            let x = rat(n, d);
            let cf = cf_of_rational(&x).unwrap();
            assert_eq!(cf_value(&cf).unwrap(), x);
        }
    }

    #[test]
    fn convergents_examples() {
        let conv = convergents(&golden(), 5).unwrap();
        assert_eq!(conv.q, ints(&[1, 1, 2, 3, 5, 8]));

        let cf = CFExpansion::from_list(vec![2, 3]).unwrap();
        let conv = convergents(&cf, 2).unwrap();
        assert_eq!(conv.q, ints(&[1, 2, 7]));

        let cf = CFExpansion::from_rule(IndexRule::affine(0, 1));
        let conv = convergents(&cf, 3).unwrap();
        assert_eq!(conv.q, ints(&[1, 1, 3, 10]));
    }

    #[test]
    fn determinant_identity() {
        // p_n q_{n-1} - p_{n-1} q_n = (-1)^{n+1} with p_0 = 0, q_0 = 1
        for cf in [golden(), CFExpansion::from_rule(IndexRule::affine(0, 1))] {
            let conv = convergents(&cf, 12).unwrap();
            for n in 1..=12usize {
                let det = &conv.p[n] * &conv.q[n - 1] - &conv.p[n - 1] * &conv.q[n];
                let expect = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                assert_eq!(det, expect, "at n = {n}");
            }
        }
    }

    #[test]
    fn alpha_enclosure_golden() {
        let a = alpha_enclosure(&golden(), 6).unwrap();
        // (sqrt 5 - 1)/2 = 0.6180339887...
        assert!(a.contains(&rat(6180339887, 10000000000)));
        assert_eq!(a.width(), rat(1, 8 * 13));

        let conv = convergents(&golden(), 9).unwrap();
        let a = alpha_enclosure(&golden(), 9).unwrap();
        assert_eq!(
            a.width(),
            BigRat::new(BigInt::one(), &conv.q[8] * &conv.q[9])
        );
    }

    #[test]
    fn alpha_enclosure_sqrt2_minus_1() {
        let cf = CFExpansion::from_rule(IndexRule::constant(2));
        let a = alpha_enclosure(&cf, 4).unwrap();
        assert!(a.contains(&rat(41421356237, 100000000000)));
    }

    #[test]
    fn qn_alpha_signs_and_bounds() {
        let cf = golden();
        let conv = convergents(&cf, 14).unwrap();
        let e1 = qn_alpha_signed(&cf, 1, 14).unwrap();
        // q_1 alpha - p_1 = alpha - 1 < 0
        assert!(e1.certainly_lt(&BigRat::zero()));
        assert!(e1.contains(&rat(-3819660113, 10000000000)));
        for n in 1..=10usize {
            let en = qn_alpha_signed(&cf, n, 14).unwrap();
            if n % 2 == 0 {
                assert!(en.certainly_gt(&BigRat::zero()));
            } else {
                assert!(en.certainly_lt(&BigRat::zero()));
            }
            let mag = en.abs();
            let upper = BigRat::new(BigInt::one(), conv.q[n + 1].clone());
            let lower = BigRat::new(BigInt::one(), &conv.q[n + 1] + &conv.q[n]);
            assert!(mag.certainly_lt(&upper));
            assert!(mag.certainly_gt(&lower));
        }
    }

    #[test]
    fn sqrt2_growth_of_denominators() {
        // 4 q_{j+n}^2 >= 2^n q_j^2 in exact integers
        for cf in [golden(), CFExpansion::from_rule(IndexRule::affine(0, 1))] {
            let conv = convergents(&cf, 20).unwrap();
            for j in 0..=20usize {
                for n in 0..=(20 - j) {
                    let lhs = BigInt::from(4) * &conv.q[j + n] * &conv.q[j + n];
                    let rhs = (BigInt::one() << n) * &conv.q[j] * &conv.q[j];
                    assert!(lhs >= rhs, "j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn ostrowski_zero_expansion() {
        let t = CertifiedReal::zero();
        let d = ostrowski_digits(&t, &golden(), 8).unwrap();
        assert_eq!(d.digits, ints(&[0; 8]));
    }

    #[test]
    fn ostrowski_single_basis_vector() {
        // t = |<q_2 alpha>| for golden alpha has digits (0, 1, 0, 0, ...)
        let t = qn_alpha_signed(&golden(), 2, 40).unwrap();
        let d = ostrowski_digits(&t, &golden(), 8).unwrap();
        assert_eq!(d.digits, ints(&[0, 1, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn ostrowski_markov_and_roundtrip_random() {
        // the golden expansion represents every t in [0,1); random rationals
        // must all decode, satisfy the digit conditions and round-trip
        let cf = golden();
        let n_digits = 10;
        for i in 0..200u64 {
            let t_rat = rat(((i * 2654435761) % 9973) as i64, 9973);
            let t = CertifiedReal::exact(t_rat.clone());
            let d = ostrowski_digits(&t, &cf, n_digits).unwrap();
            assert!(d.is_valid(&cf).unwrap(), "invalid digit pattern for {t_rat}");
            // the partial value re-encloses t modulo 1 within the residual
            let v = ostrowski_partial_value(&d, &cf, 40).unwrap();
            let res = ostrowski_residual_bound(&cf, n_digits, 40).unwrap();
            let diff_a = v.add_rat(&-t_rat.clone()).abs();
            let diff_b = v.add_rat(&(BigRat::one() - &t_rat)).abs();
            let ok = diff_a.lo() <= &res || diff_b.lo() <= &res;
            assert!(ok, "roundtrip residual too large for {t_rat}");
        }
    }

    #[test]
    fn ostrowski_growing_quotients_representable_points() {
        // with unbounded quotients not every t is representable; points built
        // from admissible digit patterns must still decode to those digits
        let cf = CFExpansion::from_rule(IndexRule::affine(0, 1));
        let patterns: [&[i64]; 4] = [
            &[0, 1, 0, 2, 0, 0],
            &[1, 0, 0, 3, 0, 1],
            &[0, 2, 0, 0, 4, 0],
            &[0, 1, 2, 3, 0, 5],
        ];
        for pat in patterns {
            let digits = OstrowskiDigits { digits: ints(pat) };
            assert!(digits.is_valid(&cf).unwrap());
            let v = ostrowski_partial_value(&digits, &cf, 40).unwrap();
            // shift into [0,1) exactly; the value has tiny enclosure width
            let shift = v.lo().floor();
            let t = v.add_rat(&-shift);
            let got = ostrowski_digits(&t, &cf, pat.len()).unwrap();
            assert_eq!(got.digits, ints(pat));
        }
    }

    #[test]
    fn ostrowski_wide_interval_exhausts_precision() {
        // an interval straddling many digit boundaries cannot be decided
        let cf = golden();
        let wide = CertifiedReal::new(rat(1, 10), rat(9, 10));
        assert!(matches!(
            ostrowski_digits(&wide, &cf, 4),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn finite_cf_alpha_is_contained() {
        let cf = cf_of_rational(&rat(5, 8)).unwrap();
        let a = alpha_enclosure(&cf, 4).unwrap();
        assert!(a.contains(&rat(5, 8)));
    }
}
