//! Rank-one cutting-and-stacking simulator: stage plans derived from a
//! sequence, materialised tower words, exact symmetric-difference scans
//! with certified enclosures, the proof-side closed form and rigidity
//! reports.
//!
//! Position p in the stage-N word is the p-th level of tower N counted
//! from the base; T moves one level up, so T^s sends level p to level
//! p + s whenever both are inside the stage. The top s levels have
//! undetermined images at stage N and are charged to the enclosure width.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{BigRat, CertifiedReal};
use crate::seq::SequencePrefix;
use crate::{Error, Result};

pub const DEFAULT_WORD_CAP: u64 = 10_000_000;

/// Per-stage record: cut into `cuts` columns; spacer stages additionally
/// insert one spacer after column floor(cuts/2) and `spacers - 1` at the top.
#[derive(Debug, Clone)]
pub struct StageRec {
    pub cuts: BigInt,
    pub spacers: BigInt,
    pub in_s: bool,
}

#[derive(Debug, Clone)]
pub struct CutStackPlan {
    pub prefix: SequencePrefix,
    pub stages: Vec<StageRec>,
    pub cap: u64,
}

impl CutStackPlan {
    /// Height b_n of stage n (1-based).
    pub fn height(&self, n: usize) -> Result<&BigInt> {
        self.prefix.get(n)
    }

    pub fn stage_count(&self) -> usize {
        self.prefix.len()
    }

    /// Level width w_n = prod_{j < n} 1/a_j.
    pub fn width(&self, n: usize) -> BigRat {
        let mut w = BigRat::one();
        for stage in &self.stages[..n - 1] {
            w /= BigRat::from_integer(stage.cuts.clone());
        }
        w
    }

    /// First spacer stage at or after n (1-based stage indices).
    pub fn next_spacer_stage(&self, n: usize) -> Option<usize> {
        (n..=self.stages.len()).find(|&s| self.stages[s - 1].in_s)
    }

    /// Partial sum over spacer stages of 1/a_s, the summability diagnostic.
    pub fn spacer_sum(&self) -> BigRat {
        self.stages
            .iter()
            .filter(|s| s.in_s)
            .map(|s| BigRat::from_integer(s.cuts.clone()).recip())
            .sum()
    }
}

/// Reads the stage structure off the sequence: a_n = floor(b_{n+1}/b_n),
/// r_n = b_{n+1} mod b_n, spacer stage iff r_n != 0.
pub fn plan_from_sequence(prefix: &SequencePrefix, cap: u64) -> Result<CutStackPlan> {
    if prefix.get(1)? != &BigInt::one() {
        return Err(Error::BaseNotOne(prefix.get(1)?.to_string()));
    }
    let mut stages = Vec::with_capacity(prefix.len() - 1);
    for n in 1..prefix.len() {
        let b = prefix.get(n)?;
        let b_next = prefix.get(n + 1)?;
        let cuts = b_next.div_floor(b);
        let spacers = b_next.mod_floor(b);
        if cuts < BigInt::from(2) {
            return Err(Error::CutTooSmall(n));
        }
        stages.push(StageRec {
            cuts,
            in_s: !spacers.is_zero(),
            spacers,
        });
    }
    Ok(CutStackPlan {
        prefix: prefix.clone(),
        stages,
        cap,
    })
}

/// Union of levels of one reference stage.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelSet {
    pub stage: usize,
    pub levels: Vec<u64>,
}

impl LevelSet {
    pub fn new(stage: usize, mut levels: Vec<u64>) -> Self {
        levels.sort_unstable();
        levels.dedup();
        LevelSet { stage, levels }
    }

    pub fn validate(&self, plan: &CutStackPlan) -> Result<()> {
        let height = plan.height(self.stage)?;
        if let Some(&top) = self.levels.last() {
            if &BigInt::from(top) >= height {
                return Err(Error::bad_input(format!(
                    "level {top} outside tower of height {height}"
                )));
            }
        }
        Ok(())
    }

    /// m(A) = |A| * w_K.
    pub fn mass(&self, plan: &CutStackPlan) -> BigRat {
        BigRat::from_integer(BigInt::from(self.levels.len() as u64)) * plan.width(self.stage)
    }
}

/// Materialised stage word over reference-stage levels; `u32::MAX` encodes
/// a spacer symbol.
#[derive(Debug, Clone)]
pub struct TowerWord {
    pub stage: usize,
    pub ref_stage: usize,
    symbols: Vec<u32>,
}

const SPACER: u32 = u32::MAX;

impl TowerWord {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, p: usize) -> Option<u32> {
        match self.symbols[p] {
            SPACER => None,
            lvl => Some(lvl),
        }
    }

    pub fn spacer_count(&self) -> usize {
        self.symbols.iter().filter(|&&s| s == SPACER).count()
    }

    /// Occurrences of each reference level.
    pub fn level_counts(&self, ref_height: usize) -> Vec<u64> {
        let mut counts = vec![0u64; ref_height];
        for &s in &self.symbols {
            if s != SPACER {
                counts[s as usize] += 1;
            }
        }
        counts
    }
}

/// Materialises the stage-N word with levels labelled by tower K.
pub fn build_word(plan: &CutStackPlan, k: usize, n: usize) -> Result<TowerWord> {
    if k > n || n > plan.stage_count() {
        return Err(Error::bad_input(format!(
            "need ref stage K <= N <= {}, got K = {k}, N = {n}",
            plan.stage_count()
        )));
    }
    let target = plan.height(n)?;
    if target > &BigInt::from(plan.cap) {
        return Err(Error::WordTooLarge {
            stage: n,
            height: target.to_string(),
            cap: plan.cap,
        });
    }
    let base = plan
        .height(k)?
        .to_u32()
        .ok_or_else(|| Error::bad_input("reference stage too tall for level labels"))?;
    let mut word: Vec<u32> = (0..base).collect();
    for stage in k..n {
        let rec = &plan.stages[stage - 1];
        let cuts = rec.cuts.to_usize().expect("cuts bounded by the cap");
        let mut next = Vec::with_capacity(word.len() * cuts + 2);
        if rec.in_s {
            let mid = cuts / 2;
            for c in 1..=cuts {
                next.extend_from_slice(&word);
                if c == mid {
                    next.push(SPACER);
                }
            }
            let extra = (&rec.spacers - BigInt::one())
                .to_usize()
                .expect("spacers bounded by the cap");
            next.extend(std::iter::repeat(SPACER).take(extra));
        } else {
            for _ in 0..cuts {
                next.extend_from_slice(&word);
            }
        }
        word = next;
    }
    debug_assert_eq!(BigInt::from(word.len() as u64), *plan.height(n)?);
    Ok(TowerWord {
        stage: n,
        ref_stage: k,
        symbols: word,
    })
}

/// Enclosure of m(A delta T^shift A) read from the stage-N word: the lower
/// endpoint counts label mismatches between positions p and p + shift; the
/// top `shift` levels are undetermined and widen the upper endpoint.
pub fn delta_scan_shift(
    plan: &CutStackPlan,
    a: &LevelSet,
    shift: &BigInt,
    n: usize,
) -> Result<CertifiedReal> {
    a.validate(plan)?;
    if n < a.stage {
        return Err(Error::bad_input("scan stage below the level set's stage"));
    }
    let word = build_word(plan, a.stage, n)?;
    let height = word.len();
    let s = shift
        .to_usize()
        .filter(|s| *s <= height)
        .ok_or_else(|| Error::bad_input("shift exceeds the scanned stage height"))?;
    let in_a: Vec<bool> = (0..height)
        .map(|p| match word.symbol(p) {
            Some(lvl) => a.levels.binary_search(&(lvl as u64)).is_ok(),
            None => false,
        })
        .collect();
    let mismatches = (0..height - s).filter(|&p| in_a[p] != in_a[p + s]).count();
    let w = plan.width(n);
    let lo = &w * BigRat::from_integer(BigInt::from(mismatches as u64));
    let undetermined = &w * BigRat::from_integer(BigInt::from(s as u64));
    Ok(CertifiedReal::new(lo.clone(), lo + undetermined))
}

/// m(A delta T^{b_n} A) from the stage-N word.
pub fn delta_scan(
    plan: &CutStackPlan,
    a: &LevelSet,
    n: usize,
    scan_stage: usize,
) -> Result<CertifiedReal> {
    let shift = plan.height(n)?.clone();
    delta_scan_shift(plan, a, &shift, scan_stage)
}

/// The proof-side closed form 4 * prod_{j=n}^{s_l} (1/a_j) * m(A), where
/// s_l is the first spacer stage at or after n. Exact only when the level
/// set's positions are isolated in the word and the spacer block at s_l is
/// wide enough; the scan is the authority when they disagree.
pub fn delta_closed_form(plan: &CutStackPlan, a: &LevelSet, n: usize) -> Result<BigRat> {
    a.validate(plan)?;
    if n < a.stage {
        return Err(Error::bad_input("index below the level set's stage"));
    }
    let s = plan
        .next_spacer_stage(n)
        .ok_or(Error::NoSpacerStageAhead(n))?;
    let mut prod = BigRat::from_integer(4.into());
    for j in n..=s {
        prod /= BigRat::from_integer(plan.stages[j - 1].cuts.clone());
    }
    Ok(prod * a.mass(plan))
}

/// Per-index enclosures, p-powered partial sums and IP tail bounds
/// sup_{min F >= M} m(A delta T^{b(F)} A) <= sum_{n >= M} (upper endpoints).
#[derive(Debug, Clone)]
pub struct RigidityReport {
    pub first_index: usize,
    pub per_index: Vec<CertifiedReal>,
    pub partial_power_sums: Vec<CertifiedReal>,
    pub ip_tail_bounds: Vec<BigRat>,
}

pub fn rigidity_report(
    plan: &CutStackPlan,
    a: &LevelSet,
    n_max: usize,
    p: &BigRat,
    scan_stage: usize,
) -> Result<RigidityReport> {
    if n_max > plan.stage_count() || scan_stage > plan.stage_count() {
        return Err(Error::IndexOutOfPrefix {
            index: n_max.max(scan_stage),
            len: plan.stage_count(),
        });
    }
    let mut per_index = Vec::new();
    let mut partial_power_sums = Vec::new();
    let mut acc = CertifiedReal::zero();
    for n in a.stage..=n_max {
        let d = delta_scan(plan, a, n, scan_stage)?;
        acc = acc.add(&d.pow_rat(p, 96));
        per_index.push(d);
        partial_power_sums.push(acc.clone());
    }
    let mut ip_tail_bounds = vec![BigRat::zero(); per_index.len()];
    let mut tail = BigRat::zero();
    for (i, d) in per_index.iter().enumerate().rev() {
        tail += d.hi();
        ip_tail_bounds[i] = tail.clone();
    }
    Ok(RigidityReport {
        first_index: a.stage,
        per_index,
        partial_power_sums,
        ip_tail_bounds,
    })
}
