//! Sequence prefixes from declarative rules, plus the growth / lacunarity /
//! multiplicativity taxonomy used to classify them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{pow_rat_certified, BigRat, CertifiedReal};
use crate::{Error, Result};

/// Auxiliary index rule `n -> a_n` (1-indexed), always a positive integer.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IndexRule {
    /// Finite list of explicit values.
    ExplicitList {
        #[serde(with = "crate::serde_util::int_vec")]
        values: Vec<BigInt>,
    },
    /// c0 + c1 * n, evaluated exactly; errors if non-integral or <= 0.
    Affine {
        #[serde(with = "crate::serde_util::rat_string")]
        c0: BigRat,
        #[serde(with = "crate::serde_util::rat_string")]
        c1: BigRat,
    },
    /// floor(n^e) for rational e >= 0.
    PowerFloor {
        #[serde(with = "crate::serde_util::rat_string")]
        e: BigRat,
    },
    Constant {
        #[serde(with = "crate::serde_util::rat_string")]
        c: BigRat,
    },
}

impl IndexRule {
    pub fn constant(c: i64) -> Self {
        IndexRule::Constant {
            c: BigRat::from_integer(BigInt::from(c)),
        }
    }

    pub fn affine(c0: i64, c1: i64) -> Self {
        IndexRule::Affine {
            c0: BigRat::from_integer(BigInt::from(c0)),
            c1: BigRat::from_integer(BigInt::from(c1)),
        }
    }

    pub fn explicit(values: Vec<BigInt>) -> Self {
        IndexRule::ExplicitList { values }
    }

    /// Evaluates a_n for n >= 1.
    pub fn eval(&self, n: usize) -> Result<BigInt> {
        let value = match self {
            IndexRule::ExplicitList { values } => values
                .get(n - 1)
                .cloned()
                .ok_or(Error::RuleDomain {
                    index: n,
                    detail: format!("explicit list has only {} entries", values.len()),
                })?,
            IndexRule::Affine { c0, c1 } => {
                let v = c0 + c1 * BigRat::from_integer(BigInt::from(n));
                if !v.is_integer() {
                    return Err(Error::RuleDomain {
                        index: n,
                        detail: format!("affine rule gives non-integer {v}"),
                    });
                }
                v.to_integer()
            }
            IndexRule::PowerFloor { e } => {
                if e.is_negative() {
                    return Err(Error::RuleDomain {
                        index: n,
                        detail: "power-floor exponent must be >= 0".into(),
                    });
                }
                let u = e.numer().to_u32().ok_or(Error::RuleDomain {
                    index: n,
                    detail: "exponent numerator too large".into(),
                })?;
                let v = e.denom().to_u32().ok_or(Error::RuleDomain {
                    index: n,
                    detail: "exponent denominator too large".into(),
                })?;
                // floor(n^(u/v)) = floor((n^u)^(1/v)), exact in integers
                BigInt::from(n).pow(u).nth_root(v)
            }
            IndexRule::Constant { c } => {
                if !c.is_integer() {
                    return Err(Error::RuleDomain {
                        index: n,
                        detail: format!("constant rule value {c} is not an integer"),
                    });
                }
                c.to_integer()
            }
        };
        if value <= BigInt::zero() {
            return Err(Error::RuleDomain {
                index: n,
                detail: format!("rule value {value} is not positive"),
            });
        }
        Ok(value)
    }
}

/// Generating rule for a sequence prefix b_1 < b_2 < ...
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SequenceSpec {
    /// Values given outright (in `seed`).
    Explicit {
        #[serde(with = "crate::serde_util::int_vec")]
        seed: Vec<BigInt>,
    },
    /// b_{n+1} = a_n * b_n with b_1 = seed.
    Multiplicative {
        rule: IndexRule,
        #[serde(with = "crate::serde_util::int_vec")]
        seed: Vec<BigInt>,
    },
    /// b_1 = 1, b_{n+1} = a_n * b_n + 1.
    ErdosTaylor { rule: IndexRule },
    /// Principal denominators q_1, q_2, ... of the continued fraction with
    /// partial quotients a_n.
    PrincipalDenominators { rule: IndexRule },
    /// b_n = a_1 * a_2 * ... * a_n.
    FactorialProducts { rule: IndexRule },
}

/// A generated prefix b_1 .. b_N together with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequencePrefix {
    #[serde(with = "crate::serde_util::int_vec")]
    pub values: Vec<BigInt>,
    pub spec: SequenceSpec,
}

impl SequencePrefix {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-indexed access to b_n.
    pub fn get(&self, n: usize) -> Result<&BigInt> {
        if n == 0 || n > self.values.len() {
            return Err(Error::IndexOutOfPrefix {
                index: n,
                len: self.values.len(),
            });
        }
        Ok(&self.values[n - 1])
    }

    /// Quotient b_n / b_{n-1} as an exact rational (b_0 := 1).
    pub fn quotient(&self, n: usize) -> Result<BigRat> {
        let bn = self.get(n)?.clone();
        let prev = if n == 1 {
            BigInt::one()
        } else {
            self.get(n - 1)?.clone()
        };
        Ok(BigRat::new(bn, prev))
    }
}

/// Generates exactly b_1 .. b_N; fails rather than silently truncating.
pub fn generate(spec: &SequenceSpec, n: usize) -> Result<SequencePrefix> {
    assert!(n >= 1, "prefix length must be >= 1");
    let values = match spec {
        SequenceSpec::Explicit { seed } => {
            if seed.len() < n {
                return Err(Error::PrefixTooShort {
                    needed: n,
                    len: seed.len(),
                });
            }
            seed[..n].to_vec()
        }
        SequenceSpec::Multiplicative { rule, seed } => {
            let b1 = seed
                .first()
                .cloned()
                .ok_or_else(|| Error::bad_input("multiplicative spec needs a seed b_1"))?;
            let mut values = vec![b1];
            for k in 1..n {
                let a = rule.eval(k)?;
                let next = &a * &values[k - 1];
                values.push(next);
            }
            values
        }
        SequenceSpec::ErdosTaylor { rule } => {
            let mut values = vec![BigInt::one()];
            for k in 1..n {
                let a = rule.eval(k)?;
                let next = &a * &values[k - 1] + BigInt::one();
                values.push(next);
            }
            values
        }
        SequenceSpec::PrincipalDenominators { rule } => {
            // q_0 = 1, q_1 = a_1, q_{n+1} = a_{n+1} q_n + q_{n-1}
            let mut q_prev = BigInt::one();
            let mut q = rule.eval(1)?;
            let mut values = vec![q.clone()];
            for k in 2..=n {
                let a = rule.eval(k)?;
                let next = &a * &q + &q_prev;
                q_prev = std::mem::replace(&mut q, next);
                values.push(q.clone());
            }
            values
        }
        SequenceSpec::FactorialProducts { rule } => {
            let mut acc = BigInt::one();
            let mut values = Vec::with_capacity(n);
            for k in 1..=n {
                acc *= rule.eval(k)?;
                values.push(acc.clone());
            }
            values
        }
    };
    for (i, w) in values.windows(2).enumerate() {
        if w[1] <= w[0] {
            return Err(Error::NonIncreasing {
                index: i + 1,
                prev: w[0].to_string(),
                next: w[1].to_string(),
            });
        }
    }
    if values[0] <= BigInt::zero() {
        return Err(Error::RuleDomain {
            index: 1,
            detail: format!("b_1 = {} is not positive", values[0]),
        });
    }
    Ok(SequencePrefix {
        values,
        spec: spec.clone(),
    })
}

/// Exact per-prefix classification record.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub multiplicative: bool,
    pub growth: bool,
    pub lacunary: bool,
    #[serde(with = "crate::serde_util::rat_string")]
    pub min_ratio: BigRat,
    #[serde(with = "crate::serde_util::rat_string")]
    pub max_ratio: BigRat,
    /// Successive ratios b_{n+1}/b_n over the prefix.
    #[serde(with = "crate::serde_util::rat_vec")]
    pub ratios: Vec<BigRat>,
    /// Partial sum of (b_n/b_{n+1})^p; exact (degenerate interval) for
    /// integer p, a certified enclosure otherwise.
    pub ratio_power_sum: CertifiedRatioSum,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifiedRatioSum {
    #[serde(with = "crate::serde_util::rat_string")]
    pub lo: BigRat,
    #[serde(with = "crate::serde_util::rat_string")]
    pub hi: BigRat,
}

impl From<CertifiedReal> for CertifiedRatioSum {
    fn from(iv: CertifiedReal) -> Self {
        CertifiedRatioSum {
            lo: iv.lo().clone(),
            hi: iv.hi().clone(),
        }
    }
}

/// Evaluates the exact predicates of the taxonomy over a prefix of length
/// >= 2: divisibility, the growth condition b_n > sum of earlier terms,
/// lacunarity at lambda, and the ratio-power series.
pub fn classify(prefix: &SequencePrefix, p: &BigRat, lambda: &BigRat) -> Result<ClassificationReport> {
    if prefix.len() < 2 {
        return Err(Error::PrefixTooShort {
            needed: 2,
            len: prefix.len(),
        });
    }
    if !p.is_positive() {
        return Err(Error::bad_input("classification exponent p must be > 0"));
    }
    if lambda <= &BigRat::one() {
        return Err(Error::bad_input("lacunarity threshold lambda must be > 1"));
    }
    let values = &prefix.values;
    let multiplicative = values.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
    let mut partial = BigInt::zero();
    let mut growth = true;
    for b in values {
        if *b <= partial {
            growth = false;
            break;
        }
        partial += b;
    }
    let ratios: Vec<BigRat> = values
        .windows(2)
        .map(|w| BigRat::new(w[1].clone(), w[0].clone()))
        .collect();
    let lacunary = ratios.iter().all(|r| r >= lambda);
    let min_ratio = ratios.iter().min().unwrap().clone();
    let max_ratio = ratios.iter().max().unwrap().clone();

    let sum = if p.is_integer() {
        let e = p.to_integer().to_u32().ok_or_else(|| {
            Error::bad_input("integer exponent p too large")
        })?;
        let mut acc = BigRat::zero();
        for r in &ratios {
            acc += crate::exact::CertifiedReal::exact(r.recip()).powi(e).lo().clone();
        }
        CertifiedReal::exact(acc)
    } else {
        let mut acc = CertifiedReal::zero();
        for r in &ratios {
            acc = acc.add(&pow_rat_certified(&r.recip(), p, 96));
        }
        acc.round_out(96)
    };

    Ok(ClassificationReport {
        multiplicative,
        growth,
        lacunary,
        min_ratio,
        max_ratio,
        ratios,
        ratio_power_sum: sum.into(),
    })
}

/// Witness-style label for super-lacunarity over a finite prefix: the last
/// `window` ratios are strictly increasing and all exceed `threshold`.
pub fn super_lacunary_evidence(report: &ClassificationReport, window: usize, threshold: &BigRat) -> bool {
    let r = &report.ratios;
    if r.len() < window || window < 2 {
        return false;
    }
    let tail = &r[r.len() - window..];
    tail.windows(2).all(|w| w[0] < w[1]) && tail.iter().all(|x| x > threshold)
}
