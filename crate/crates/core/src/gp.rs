//! Diagnostics for the summability groups G_p(b) = { t : sum ||b_n t||^p
//! finite } and the certified point constructions that exhibit uncountably
//! many members: multiplicative subsequence points, principal-denominator
//! points, super-lacunary interval descents, the Erdos-Taylor dichotomy and
//! the factorial-products example.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cfrac::{convergents, qn_alpha_signed, CFExpansion};
use crate::exact::{dist_to_int, rat_int, signed_frac, BigRat, CertifiedReal};
use crate::ipset::IndexSet;
use crate::seq::SequencePrefix;
use crate::{Error, Result};

/// Finite word over {0,1}; bit k selects the k-th term of a construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitWord(Vec<bool>);

impl BitWord {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::bad_input("bit words must be nonempty"));
        }
        Ok(BitWord(bits))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::bad_input(format!("bad bit {other:?} in word"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        BitWord::new(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedMember,
    DivergenceEvidence,
    Inconclusive,
}

/// Partial-sum report for sum_n ||b_n t||^p. `certified-member` appears
/// only together with a finite tail certificate.
#[derive(Debug, Clone)]
pub struct GpReport {
    pub p: BigRat,
    pub depth: usize,
    pub partial: CertifiedReal,
    pub tail_certificate: Option<CertifiedReal>,
    pub verdict: Verdict,
}

impl GpReport {
    fn new(
        p: BigRat,
        depth: usize,
        partial: CertifiedReal,
        tail_certificate: Option<CertifiedReal>,
        verdict: Verdict,
    ) -> Self {
        assert!(
            verdict != Verdict::CertifiedMember || tail_certificate.is_some(),
            "membership requires a tail certificate"
        );
        GpReport {
            p,
            depth,
            partial,
            tail_certificate,
            verdict,
        }
    }
}

const POW_BITS: u32 = 96;

/// Partial sum sum_{n <= depth} ||b_n t||^p; exact for rational t and
/// integer p, a certified enclosure otherwise. Carries no tail certificate
/// except at t = 0.
pub fn gp_partial_sum(
    prefix: &SequencePrefix,
    t: &CertifiedReal,
    p: &BigRat,
    depth: usize,
) -> Result<GpReport> {
    if depth > prefix.len() {
        return Err(Error::IndexOutOfPrefix {
            index: depth,
            len: prefix.len(),
        });
    }
    if !p.is_positive() {
        return Err(Error::bad_input("exponent p must be positive"));
    }
    if t.is_exact() && t.lo().is_zero() {
        return Ok(GpReport::new(
            p.clone(),
            depth,
            CertifiedReal::zero(),
            Some(CertifiedReal::zero()),
            Verdict::CertifiedMember,
        ));
    }
    let mut acc = CertifiedReal::zero();
    let mut terms = Vec::with_capacity(depth);
    for n in 1..=depth {
        let term = t
            .scale_int(prefix.get(n)?)
            .dist_to_int_certified()
            .pow_rat(p, POW_BITS);
        acc = acc.add(&term);
        terms.push(term);
    }
    // crude divergence witness: the last few terms alone already contribute
    // at least 1, so the series cannot be Cauchy if the pattern persists
    let window = terms.len().min(10);
    let tail_low: BigRat = terms[terms.len() - window..]
        .iter()
        .map(|t| t.lo().clone())
        .sum();
    let verdict = if tail_low >= BigRat::one() {
        Verdict::DivergenceEvidence
    } else {
        Verdict::Inconclusive
    };
    Ok(GpReport::new(p.clone(), depth, acc, None, verdict))
}

/// Certified point of G_1(b) for a multiplicative prefix along a sparse
/// subsequence: t(w) = sum_k w_k / b_{n_k}, enclosed with the geometric
/// tail bound 1/b_{n_d}.
#[derive(Debug, Clone)]
pub struct Lemma21Point {
    pub t: CertifiedReal,
    pub t_partial: BigRat,
    pub cert: GpReport,
}

pub fn lemma21_point(
    prefix: &SequencePrefix,
    nk: &IndexSet,
    word: &BitWord,
    sum_to: usize,
) -> Result<Lemma21Point> {
    if word.len() > nk.len() {
        return Err(Error::bad_input("word longer than the index subsequence"));
    }
    if nk.max() > prefix.len() || sum_to > prefix.len() {
        return Err(Error::IndexOutOfPrefix {
            index: nk.max().max(sum_to),
            len: prefix.len(),
        });
    }
    // multiplicativity with all quotients >= 2 past the seed
    for m in 2..=prefix.len() {
        let prev = prefix.get(m - 1)?;
        let cur = prefix.get(m)?;
        if !cur.is_multiple_of(prev) {
            return Err(Error::NotMultiplicative(prev.to_string(), cur.to_string()));
        }
        if cur < &(prev * BigInt::from(2)) {
            return Err(Error::RatioConditionFailed(m));
        }
    }
    // quotient a_m = b_m / b_{m-1} must at least triple along n_k
    let quot = |m: usize| -> Result<BigRat> { prefix.quotient(m) };
    for (i, w) in nk.indices().windows(2).enumerate() {
        if quot(w[1])? < quot(w[0])? * rat_int(3) {
            return Err(Error::RatioConditionFailed(i + 1));
        }
    }

    let d = word.len();
    let idx = &nk.indices()[..d];
    let mut partial = BigRat::zero();
    for (k, &on) in word.bits().iter().enumerate() {
        if on {
            partial += BigRat::new(BigInt::one(), prefix.get(idx[k])?.clone());
        }
    }
    // geometric closure along the subsequence: the tripling quotients give
    // sum_{k > d} 1/b_{n_k} <= (1/2) / b_{n_d}, strictly separating words
    let tail = BigRat::new(BigInt::one(), prefix.get(idx[d - 1])?.clone() * BigInt::from(2));
    let t = CertifiedReal::new(partial.clone(), &partial + &tail);

    // certified partial sum from N = n_1 and the quotient-chain tail bound
    let n1 = nk.indices()[0];
    let mut acc = CertifiedReal::zero();
    for n in n1..=sum_to {
        acc = acc.add(&t.scale_int(prefix.get(n)?).dist_to_int_certified());
    }
    // the chain bounds sum_{N > sum_to} ||b_N t|| by 2/a_{n_k} over the
    // subsequence beyond the window, closed geometrically past the word
    let mut tail_bound = BigRat::zero();
    for (k, &i) in idx.iter().enumerate() {
        if k >= 1 && i > sum_to {
            tail_bound += rat_int(2) / quot(i)?;
        }
    }
    tail_bound += BigRat::one() / quot(idx[d - 1])?;
    let cert = GpReport::new(
        BigRat::one(),
        sum_to,
        acc,
        Some(CertifiedReal::new(BigRat::zero(), tail_bound)),
        Verdict::CertifiedMember,
    );
    Ok(Lemma21Point {
        t,
        t_partial: partial,
        cert,
    })
}

/// Certified point built from principal denominators along a subsequence:
/// t(w) = sum_k w_k <q_{n_k - 1} alpha> mod 1, with per-block partial sums
/// of ||q_N t|| over N in [n_K - 1, n_{K+1} - 2].
#[derive(Debug, Clone)]
pub struct Lemma22Point {
    pub t: CertifiedReal,
    pub blocks: Vec<BlockSum>,
    pub cumulative: Vec<CertifiedReal>,
}

#[derive(Debug, Clone)]
pub struct BlockSum {
    pub block: usize,
    pub from: usize,
    pub to: usize,
    pub sum: CertifiedReal,
}

pub fn lemma22_point(cf: &CFExpansion, nk: &IndexSet, word: &BitWord) -> Result<Lemma22Point> {
    if word.len() + 1 > nk.len() {
        return Err(Error::bad_input(
            "need one subsequence index beyond the word for block sums",
        ));
    }
    // unbounded-quotient evidence: a_{n_k} at least doubles along n_k
    for (i, w) in nk.indices().windows(2).enumerate() {
        let a0 = cf.quotient(w[0])?;
        let a1 = cf.quotient(w[1])?;
        if a1 < &a0 * BigInt::from(2) {
            return Err(Error::RatioConditionFailed(i + 1));
        }
    }
    let d = word.len();
    let idx = nk.indices();
    let depth = idx[d] + 16;
    let mut t = CertifiedReal::zero();
    for (k, &on) in word.bits().iter().enumerate() {
        if on {
            // basis index n_k - 1 (the paper's shifted convention)
            let j = idx[k] - 1;
            let e = if j == 0 {
                // q_0 alpha - p_0 = alpha
                crate::cfrac::alpha_enclosure(cf, depth)?
            } else {
                qn_alpha_signed(cf, j, depth)?
            };
            t = t.add(&e);
        }
    }
    let (t, _) = t.reduce_mod1();

    let conv = convergents(cf, idx[d].max(3))?;
    let mut blocks = Vec::new();
    let mut cumulative = Vec::new();
    let mut acc = CertifiedReal::zero();
    for bk in 1..d {
        let from = idx[bk - 1].saturating_sub(1).max(1);
        let to = idx[bk].saturating_sub(2).max(from);
        let mut sum = CertifiedReal::zero();
        for n in from..=to {
            let term = t.scale_int(&conv.q[n]).dist_to_int_certified();
            sum = sum.add(&term);
            acc = acc.add(&term);
            cumulative.push(acc.clone());
        }
        blocks.push(BlockSum {
            block: bk,
            from,
            to,
            sum,
        });
    }
    Ok(Lemma22Point {
        t,
        blocks,
        cumulative,
    })
}

/// Nested-interval descent point for super-lacunary prefixes. The interval
/// system at stage n consists of I_{k,n} = [k/b_n - 4/b_{n+1},
/// k/b_n + 4/b_{n+1}] for 1 <= k < b_n; each bit picks the nearest
/// admissible child centre strictly left (0) or right (1) of the parent.
#[derive(Debug, Clone)]
pub struct SuperlacunaryPoint {
    pub t: CertifiedReal,
    pub start_stage: usize,
    pub centers: Vec<(usize, BigInt)>,
    pub cert: GpReport,
}

/// First index from which every consecutive ratio on the prefix exceeds 10.
pub fn superlacunary_start(prefix: &SequencePrefix) -> Result<usize> {
    let ten = rat_int(10);
    let mut n0 = prefix.len();
    for n in (1..prefix.len()).rev() {
        if prefix.quotient(n + 1)? > ten {
            n0 = n;
        } else {
            break;
        }
    }
    if n0 >= prefix.len() {
        return Err(Error::GapTooSmall(prefix.len()));
    }
    Ok(n0)
}

/// Child centres strictly left/right of x = k/b inside I_{k,n}; admissible
/// means the child interval is contained in the parent interval, which the
/// >10 ratio guarantees for the nearest centres.
pub(crate) fn nested_children(k: &BigInt, b: &BigInt, b_next: &BigInt) -> (BigInt, BigInt) {
    let scaled = k * b_next; // x * b_next = k b_next / b
    let floor = scaled.div_floor(b);
    let exact = (&scaled % b).is_zero();
    let left = if exact { &floor - 1 } else { floor.clone() };
    let right = &floor + 1;
    (left, right)
}

pub(crate) fn check_child_containment(
    k: &BigInt,
    b: &BigInt,
    kc: &BigInt,
    b_next: &BigInt,
    b_next2: &BigInt,
) -> bool {
    // |kc/b' - k/b| <= 4/b' - 4/b'' in exact arithmetic
    let lhs = (BigRat::new(kc.clone(), b_next.clone()) - BigRat::new(k.clone(), b.clone())).abs();
    let rhs = BigRat::new(4.into(), b_next.clone()) - BigRat::new(4.into(), b_next2.clone());
    lhs <= rhs
}

pub fn superlacunary_point(
    prefix: &SequencePrefix,
    word: &BitWord,
    p: &BigRat,
) -> Result<SuperlacunaryPoint> {
    let d = word.len();
    let mut n0 = superlacunary_start(prefix)?;
    // the root interval family needs b >= 2
    while n0 < prefix.len() && prefix.get(n0)? < &BigInt::from(2) {
        n0 += 1;
    }
    if n0 + d + 1 > prefix.len() {
        return Err(Error::PrefixTooShort {
            needed: n0 + d + 1,
            len: prefix.len(),
        });
    }
    let mut stage = n0;
    let mut k: BigInt = prefix.get(n0)?.div_floor(&BigInt::from(2)).max(BigInt::one());
    let mut centers = vec![(stage, k.clone())];
    for &bit in word.bits() {
        let b = prefix.get(stage)?;
        let b_next = prefix.get(stage + 1)?;
        let b_next2 = prefix.get(stage + 2).ok();
        let (left, right) = nested_children(&k, b, b_next);
        let chosen = if bit { right } else { left };
        assert!(chosen >= BigInt::one() && &chosen < b_next);
        if let Some(b2) = b_next2 {
            assert!(check_child_containment(&k, b, &chosen, b_next, b2));
        }
        k = chosen;
        stage += 1;
        centers.push((stage, k.clone()));
    }
    // the final interval I_{k, stage} encloses every deeper descent
    let x = BigRat::new(k.clone(), prefix.get(stage)?.clone());
    let half_width = BigRat::new(4.into(), prefix.get(stage + 1)?.clone());
    let t = CertifiedReal::new(&x - &half_width, &x + &half_width);

    // stage-by-stage membership certificate
    let mut partial = CertifiedReal::zero();
    for n in 1..stage {
        partial = partial.add(
            &t.scale_int(prefix.get(n)?)
                .dist_to_int_certified()
                .pow_rat(p, POW_BITS),
        );
    }
    for (n, kn) in centers.iter() {
        // ||b_n t|| <= 4 b_n / b_{n+1} holds at every computed depth
        let bound = BigRat::new(prefix.get(*n)?.clone() * BigInt::from(4), prefix.get(n + 1)?.clone());
        let dist = t.scale_int(prefix.get(*n)?).dist_to_int_certified();
        assert!(dist.hi() <= &bound, "interval descent violated at stage {n} (k = {kn})");
    }
    // structural tail bound N0/2^p + 4^p sum_{n >= N0} (b_n/b_{n+1})^p over
    // the available prefix
    let mut ratio_sum = CertifiedReal::zero();
    for n in n0..prefix.len() {
        ratio_sum = ratio_sum.add(
            &CertifiedReal::exact(prefix.quotient(n + 1)?.recip()).pow_rat(p, POW_BITS),
        );
    }
    let four_p = CertifiedReal::exact(rat_int(4)).pow_rat(p, POW_BITS);
    let half_p = CertifiedReal::exact(BigRat::new(1.into(), 2.into())).pow_rat(p, POW_BITS);
    let bound = half_p
        .scale_rat(&rat_int(n0 as i64))
        .add(&four_p.mul(&ratio_sum));
    let cert = GpReport::new(
        p.clone(),
        stage,
        partial,
        Some(bound),
        Verdict::CertifiedMember,
    );
    Ok(SuperlacunaryPoint {
        t,
        start_stage: n0,
        centers,
        cert,
    })
}

/// Exact two-sided record of the Erdos-Taylor dichotomy at one index.
#[derive(Debug, Clone, Serialize)]
pub struct DichotomyWitness {
    pub index: usize,
    pub premise_holds: bool,
    #[serde(with = "crate::serde_util::rat_string")]
    pub dist_n: BigRat,
    #[serde(with = "crate::serde_util::rat_string")]
    pub premise_threshold: BigRat,
    /// Present exactly when the premise holds; then it must be true.
    pub conclusion_holds: Option<bool>,
    #[serde(with = "crate::serde_util::rat_string")]
    pub dist_next: BigRat,
    #[serde(with = "crate::serde_util::rat_string")]
    pub conclusion_threshold: BigRat,
}

/// ||b_n t|| < ||t||/(2 a_n) forces ||b_{n+1} t|| > ||t||/2, exactly, for
/// an Erdos-Taylor prefix (b_{n+1} = a_n b_n + 1) and non-integer t.
pub fn et_dichotomy(prefix: &SequencePrefix, t: &BigRat, n: usize) -> Result<DichotomyWitness> {
    if t.is_integer() {
        return Err(Error::IntegerT);
    }
    if n + 1 > prefix.len() {
        return Err(Error::IndexOutOfPrefix {
            index: n + 1,
            len: prefix.len(),
        });
    }
    let bn = prefix.get(n)?;
    let bn1 = prefix.get(n + 1)?;
    let a_num = bn1 - BigInt::one();
    if !a_num.is_multiple_of(bn) {
        return Err(Error::bad_input(
            "prefix is not Erdos-Taylor: b_{n+1} - 1 is not a multiple of b_n",
        ));
    }
    let a = a_num / bn;
    let dist_t = dist_to_int(t);
    let dist_n = dist_to_int(&(t * BigRat::from_integer(bn.clone())));
    let dist_next = dist_to_int(&(t * BigRat::from_integer(bn1.clone())));
    let premise_threshold = &dist_t / (BigRat::from_integer(a) * rat_int(2));
    let conclusion_threshold = &dist_t / rat_int(2);
    let premise_holds = dist_n < premise_threshold;
    let conclusion_holds = premise_holds.then(|| dist_next > conclusion_threshold);
    Ok(DichotomyWitness {
        index: n,
        premise_holds,
        dist_n,
        premise_threshold,
        conclusion_holds,
        dist_next,
        conclusion_threshold,
    })
}

/// Factorial-products point t(w) = sum w_n / b_n with its per-index
/// decomposition <b_N t> = w_{N+1}/a_{N+1} + theta_N.
#[derive(Debug, Clone)]
pub struct Example42Point {
    pub t: CertifiedReal,
    pub t_partial: BigRat,
    pub laserbeam: Vec<LaserbeamRow>,
}

#[derive(Debug, Clone)]
pub struct LaserbeamRow {
    pub n: usize,
    /// w_{N+1} / a_{N+1}, the leading term.
    pub main: BigRat,
    /// Enclosure of theta_N (the finite part is exact, the word tail adds
    /// an interval).
    pub theta: CertifiedReal,
    /// 1 / a_{N+1}^2.
    pub bound: BigRat,
    /// |theta_N| <= bound, certified.
    pub within_bound: bool,
    /// signed_frac(b_N t_partial) == main + theta_partial, exact.
    pub decomposition_exact: bool,
}

pub fn example42_point(prefix: &SequencePrefix, word: &BitWord) -> Result<Example42Point> {
    let d = word.len();
    if d + 2 > prefix.len() {
        return Err(Error::PrefixTooShort {
            needed: d + 2,
            len: prefix.len(),
        });
    }
    // quotients must be integers >= 2 throughout (b_1 counts as a_1)
    for m in 1..=prefix.len() {
        let q = prefix.quotient(m)?;
        if !q.is_integer() || q < rat_int(2) {
            return Err(Error::bad_input(format!(
                "quotient b_{m}/b_{} = {q} is not an integer >= 2",
                m.saturating_sub(1).max(1)
            )));
        }
    }
    let mut partial = BigRat::zero();
    for (i, &on) in word.bits().iter().enumerate() {
        if on {
            partial += BigRat::new(BigInt::one(), prefix.get(i + 1)?.clone());
        }
    }
    // sum_{n > d} w_n / b_n <= (1/b_{d+1}) * a_{d+2}/(a_{d+2} - 1); the
    // theta bound 1/a^2 is nearly tight, so the closure must be too
    let a1 = prefix.quotient(d + 1)?;
    let a2 = prefix.quotient(d + 2)?;
    let tail = BigRat::new(BigInt::one(), prefix.get(d)?.clone()) / &a1 * &a2
        / (&a2 - BigRat::one());
    let t = CertifiedReal::new(partial.clone(), &partial + &tail);

    let mut laserbeam = Vec::new();
    for n in 1..d {
        let bn = prefix.get(n)?;
        let a_next = prefix.quotient(n + 1)?.to_integer();
        let main = if word.bits()[n] {
            BigRat::new(BigInt::one(), a_next.clone())
        } else {
            BigRat::zero()
        };
        // theta_N = b_N * (sum_{k >= N+2} w_k / b_k)
        let mut theta_partial = BigRat::zero();
        for k in (n + 2)..=d {
            if word.bits()[k - 1] {
                theta_partial += BigRat::new(bn.clone(), prefix.get(k)?.clone());
            }
        }
        let theta_tail = BigRat::from_integer(bn.clone()) * &tail;
        let theta = CertifiedReal::new(theta_partial.clone(), &theta_partial + &theta_tail);
        let bound = BigRat::new(BigInt::one(), &a_next * &a_next);
        let within_bound = theta.abs().hi() <= &bound;
        let lhs = signed_frac(&(BigRat::from_integer(bn.clone()) * &partial));
        let decomposition_exact = lhs == &main + &theta_partial;
        laserbeam.push(LaserbeamRow {
            n,
            main,
            theta,
            bound,
            within_bound,
            decomposition_exact,
        });
    }
    Ok(Example42Point {
        t,
        t_partial: partial,
        laserbeam,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::seq::{generate, IndexRule, SequenceSpec};

    fn pow2(n: usize) -> SequencePrefix {
        generate(
            &SequenceSpec::Multiplicative {
                rule: IndexRule::constant(2),
                seed: vec![BigInt::one()],
            },
            n,
        )
        .unwrap()
    }

    fn et_plus1(n: usize) -> SequencePrefix {
        generate(&SequenceSpec::ErdosTaylor { rule: IndexRule::affine(1, 1) }, n).unwrap()
    }

    fn factorial(n: usize) -> SequencePrefix {
        generate(&SequenceSpec::FactorialProducts { rule: IndexRule::affine(1, 1) }, n).unwrap()
    }

    #[test]
    fn gp_partial_sum_examples() {
        let r = gp_partial_sum(&pow2(5), &CertifiedReal::exact(rat(1, 3)), &rat_int(1), 5).unwrap();
        assert_eq!(r.partial.lo(), &rat(5, 3));
        assert_eq!(r.partial.hi(), &rat(5, 3));

        let r = gp_partial_sum(&pow2(5), &CertifiedReal::zero(), &rat_int(2), 5).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedMember);
        assert_eq!(r.partial.hi(), &rat_int(0));

        let p = generate(
            &SequenceSpec::Explicit {
                seed: [1i64, 3, 10, 41].iter().map(|&x| BigInt::from(x)).collect(),
            },
            4,
        )
        .unwrap();
        let r = gp_partial_sum(&p, &CertifiedReal::exact(rat(1, 2)), &rat_int(2), 4).unwrap();
        assert_eq!(r.partial.lo(), &rat(3, 4));
    }

    /// Instance of the multiplicative construction: a_m = 2 except at
    /// n_k = 5k where a = 3^k (as consecutive quotients).
    fn lemma21_instance(len: usize, nk_step: usize) -> (SequencePrefix, IndexSet) {
        let mut quots: Vec<BigInt> = Vec::new();
        let mut subseq = Vec::new();
        for m in 2..=len {
            if m % nk_step == 0 {
                let k = m / nk_step;
                quots.push(BigInt::from(3).pow(k as u32));
                subseq.push(m);
            } else {
                quots.push(BigInt::from(2));
            }
        }
        let spec = SequenceSpec::Multiplicative {
            rule: IndexRule::explicit(quots),
            seed: vec![BigInt::from(2)],
        };
        (generate(&spec, len).unwrap(), IndexSet::new(subseq).unwrap())
    }

    #[test]
    fn lemma21_zero_word_and_bound() {
        let (prefix, nk) = lemma21_instance(40, 5);
        let zero_word = BitWord::parse("000000").unwrap();
        let pt = lemma21_point(&prefix, &nk, &zero_word, 35).unwrap();
        assert!(pt.t_partial.is_zero());
        assert_eq!(pt.cert.partial.lo(), &rat_int(0));

        let word = BitWord::parse("101101").unwrap();
        let pt = lemma21_point(&prefix, &nk, &word, 35).unwrap();
        assert!(pt.cert.partial.hi() <= &rat_int(4), "bound 4 violated: {:?}", pt.cert.partial);
        assert_eq!(pt.cert.verdict, Verdict::CertifiedMember);
    }

    #[test]
    fn lemma21_distinct_words_are_ordered_and_disjoint() {
        let (prefix, nk) = lemma21_instance(40, 5);
        let words = ["000", "001", "010", "011", "100", "101", "110", "111"];
        let mut points: Vec<CertifiedReal> = words
            .iter()
            .map(|w| lemma21_point(&prefix, &nk, &BitWord::parse(w).unwrap(), 20).unwrap().t)
            .collect();
        // lexicographic word order equals numeric order of the points
        for w in points.windows(2) {
            assert!(w[0].hi() < w[1].lo(), "enclosures overlap");
        }
        points.reverse();
        for w in points.windows(2) {
            assert!(w[0].lo() > w[1].hi());
        }
    }

    #[test]
    fn lemma21_rejects_bad_instances() {
        let p = et_plus1(6); // not multiplicative
        let nk = IndexSet::new(vec![2, 4]).unwrap();
        let w = BitWord::parse("10").unwrap();
        assert!(matches!(
            lemma21_point(&p, &nk, &w, 5),
            Err(Error::NotMultiplicative(_, _))
        ));
        // multiplicative but the subsequence ratio condition fails
        let (prefix, _) = lemma21_instance(20, 5);
        let bad_nk = IndexSet::new(vec![2, 3]).unwrap();
        assert!(matches!(
            lemma21_point(&prefix, &bad_nk, &w, 10),
            Err(Error::RatioConditionFailed(_))
        ));
    }

    #[test]
    fn lemma22_blocks_are_bounded() {
        // a_n = n, n_k = 2^k
        let cf = CFExpansion::from_rule(IndexRule::affine(0, 1));
        let nk = IndexSet::new(vec![2, 4, 8, 16, 32]).unwrap();
        let word = BitWord::parse("1011").unwrap();
        let pt = lemma22_point(&cf, &nk, &word).unwrap();
        assert_eq!(pt.blocks.len(), 3);
        // cumulative partial sums are increasing and finite
        for w in pt.cumulative.windows(2) {
            assert!(w[0].lo() <= w[1].lo());
        }
        // zero word gives t = 0 and zero block sums
        let z = lemma22_point(&cf, &nk, &BitWord::parse("0000").unwrap()).unwrap();
        assert_eq!(z.t.lo(), &rat_int(0));
        for b in &z.blocks {
            assert_eq!(b.sum.hi(), &rat_int(0));
        }
    }

    #[test]
    fn superlacunary_descent_certificate() {
        // b_{n+1} = 12 * 2^n * b_n: ratios 24, 48, 96, ...
        let quots: Vec<BigInt> = (1..30).map(|n| BigInt::from(12) << n).collect();
        let spec = SequenceSpec::Multiplicative {
            rule: IndexRule::explicit(quots),
            seed: vec![BigInt::from(2)],
        };
        let prefix = generate(&spec, 16).unwrap();
        let word = BitWord::parse("0110101").unwrap();
        let pt = superlacunary_point(&prefix, &word, &rat_int(2)).unwrap();
        assert_eq!(pt.cert.verdict, Verdict::CertifiedMember);
        assert!(pt.cert.tail_certificate.is_some());

        // distinct equal-length words give disjoint enclosures
        let other = superlacunary_point(&prefix, &BitWord::parse("0110100").unwrap(), &rat_int(2)).unwrap();
        assert!(pt.t.lo() > other.t.hi() || other.t.lo() > pt.t.hi());
    }

    #[test]
    fn superlacunary_needs_big_gaps() {
        let p = pow2(10); // ratios are 2, never > 10
        assert!(matches!(
            superlacunary_point(&p, &BitWord::parse("01").unwrap(), &rat_int(1)),
            Err(Error::GapTooSmall(_)) | Err(Error::PrefixTooShort { .. })
        ));
    }

    #[test]
    fn dichotomy_examples() {
        let p = et_plus1(4); // 1, 3, 10, 41 with a = (2, 3, 4)
        let w = et_dichotomy(&p, &rat(1, 10), 3).unwrap();
        assert!(w.premise_holds);
        assert_eq!(w.conclusion_holds, Some(true));
        assert_eq!(w.dist_next, rat(1, 10));

        let w = et_dichotomy(&p, &rat(1, 10), 1).unwrap();
        assert!(!w.premise_holds);
        assert_eq!(w.conclusion_holds, None);

        // t = 1/2 with b_n odd: premise fails
        let w = et_dichotomy(&p, &rat(1, 2), 2).unwrap();
        assert!(!w.premise_holds);

        assert!(matches!(et_dichotomy(&p, &rat_int(3), 1), Err(Error::IntegerT)));
    }

    #[test]
    fn example42_rows() {
        let p = factorial(24);
        let zero = example42_point(&p, &BitWord::parse("000000000000").unwrap()).unwrap();
        assert!(zero.t_partial.is_zero());
        for row in &zero.laserbeam {
            assert!(row.theta.hi().is_zero() || row.theta.hi() > &rat_int(0));
            assert_eq!(row.main, rat_int(0));
        }

        // w = (1, 0, 0, ...) with b = (2, 6, 24, ...): t = 1/2, <b_1 t> = 0
        let one = example42_point(&p, &BitWord::parse("100000000000").unwrap()).unwrap();
        assert_eq!(one.t_partial, rat(1, 2));
        assert_eq!(one.laserbeam[0].main, rat_int(0));
        assert!(one.laserbeam[0].decomposition_exact);

        let w = BitWord::parse("110101101011").unwrap();
        let pt = example42_point(&p, &w).unwrap();
        for row in &pt.laserbeam {
            assert!(row.within_bound, "theta bound fails at n = {}", row.n);
            assert!(row.decomposition_exact, "decomposition fails at n = {}", row.n);
        }
    }

    #[test]
    fn example42_distinct_words_disjoint() {
        let p = factorial(16);
        let a = example42_point(&p, &BitWord::parse("10110101").unwrap()).unwrap();
        let b = example42_point(&p, &BitWord::parse("10110100").unwrap()).unwrap();
        assert!(a.t.lo() > b.t.hi() || b.t.lo() > a.t.hi());
    }
}
