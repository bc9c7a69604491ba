//! Finite-sum-set machinery: subset sums b(F), exact counting of
//! FS(b) below a threshold, and sup-defect diagnostics over index windows.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::exact::{signed_frac, BigRat, CertifiedReal};
use crate::seq::SequencePrefix;
use crate::{Error, Result};

pub const DEFAULT_WINDOW_CAP: usize = 24;
pub const DEFAULT_FRONTIER_CAP: usize = 1 << 22;

/// Nonempty set of 1-based indices into a prefix, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() || indices[0] == 0 {
            return Err(Error::bad_input(
                "index sets are nonempty sets of positive integers",
            ));
        }
        Ok(IndexSet(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn max(&self) -> usize {
        *self.0.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.0.iter().all(|i| !other.0.contains(i))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        IndexSet::new(v)
    }
}

/// Exact subset sum b(F) = sum_{j in F} b_j.
pub fn sum_of(prefix: &SequencePrefix, f: &IndexSet) -> Result<BigInt> {
    if f.max() > prefix.len() {
        return Err(Error::IndexOutOfPrefix {
            index: f.max(),
            len: prefix.len(),
        });
    }
    let mut acc = BigInt::zero();
    for &i in f.indices() {
        acc += prefix.get(i)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct FsCount {
    /// Number of distinct values of b(F) that are <= n.
    pub count: u64,
    /// c(n) = min{ k >= 1 : b_k >= n }.
    pub c: usize,
    /// Whether any two distinct subsets produced the same sum <= n.
    pub collision_free: bool,
}

/// Counts |FS(b) /\ [1, n]| by exact enumeration with memoised distinct
/// sums. Only indices with b_k <= n can contribute, so the frontier stays
/// within 2^{c(n)} entries for growth sequences.
pub fn count_fs(prefix: &SequencePrefix, n: &BigInt, frontier_cap: usize) -> Result<FsCount> {
    let b_last = prefix.get(prefix.len())?;
    if b_last < n {
        return Err(Error::PrefixTooShort {
            needed: prefix.len() + 1,
            len: prefix.len(),
        });
    }
    let c = (1..=prefix.len())
        .find(|&k| prefix.values[k - 1] >= *n)
        .expect("b_last >= n");

    let mut sums: BTreeSet<BigInt> = BTreeSet::new();
    let mut collision_free = true;
    for b in prefix.values.iter().filter(|b| *b <= n) {
        let mut added: Vec<BigInt> = Vec::with_capacity(sums.len() + 1);
        for s in &sums {
            let t = s + b;
            if &t <= n {
                added.push(t);
            }
        }
        added.push(b.clone());
        for t in added {
            if !sums.insert(t) {
                collision_free = false;
            }
        }
        if sums.len() > frontier_cap {
            return Err(Error::Infeasible(frontier_cap));
        }
    }
    Ok(FsCount {
        count: sums.len() as u64,
        c,
        collision_free,
    })
}

/// Enclosure of max{ ||b(F) t|| : nonempty F within [start, start+width-1] }
/// by Gray-code enumeration of the 2^width - 1 subsets.
pub fn ip_defect_scalar(
    prefix: &SequencePrefix,
    t: &CertifiedReal,
    start: usize,
    width: usize,
) -> Result<CertifiedReal> {
    if width == 0 || width > DEFAULT_WINDOW_CAP {
        return Err(Error::WindowTooWide(width, DEFAULT_WINDOW_CAP));
    }
    if start == 0 || start + width - 1 > prefix.len() {
        return Err(Error::IndexOutOfPrefix {
            index: start + width.max(1) - 1,
            len: prefix.len(),
        });
    }
    let values: Vec<&BigInt> = (0..width).map(|i| &prefix.values[start - 1 + i]).collect();
    let mut sum = BigInt::zero();
    let mut state = vec![false; width];
    let mut best: Option<CertifiedReal> = None;
    for g in 1u64..(1u64 << width) {
        let flip = g.trailing_zeros() as usize;
        if state[flip] {
            sum -= values[flip];
        } else {
            sum += values[flip];
        }
        state[flip] = !state[flip];
        let d = t.scale_int(&sum).dist_to_int_certified();
        best = Some(match best {
            None => d,
            Some(b) => b.max_pointwise(&d),
        });
    }
    Ok(best.expect("width >= 1"))
}

/// Exact check of the 1/16-threshold additivity: when F, G are disjoint and
/// all three of ||b(F)t||, ||b(G)t||, ||b(F u G)t|| are < 1/16, the signed
/// fractional parts add exactly. Returns None when the premise fails.
pub fn additivity_witness(
    prefix: &SequencePrefix,
    t: &BigRat,
    f: &IndexSet,
    g: &IndexSet,
) -> Result<Option<bool>> {
    use num_traits::Signed;
    if !f.is_disjoint(g) {
        return Err(Error::bad_input("additivity needs disjoint index sets"));
    }
    let threshold = BigRat::new(1.into(), 16.into());
    let bf = sum_of(prefix, f)?;
    let bg = sum_of(prefix, g)?;
    let bu = &bf + &bg;
    let xf = signed_frac(&(t * BigRat::from_integer(bf)));
    let xg = signed_frac(&(t * BigRat::from_integer(bg)));
    let xu = signed_frac(&(t * BigRat::from_integer(bu)));
    if xf.abs() >= threshold || xg.abs() >= threshold || xu.abs() >= threshold {
        return Ok(None);
    }
    Ok(Some(xu == &xf + &xg))
}
