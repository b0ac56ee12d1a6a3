//! Exact sumsets and restricted sumsets `Σ^l(A_1, ..., A_k)`.
//!
//! Everything runs on dense bitmaps: `B + {x}` is a word-level shift, so
//! `A + B` is one shifted OR of `B` per element of `A`. The restricted sumset
//! is the subset-sum style layered recurrence
//!
//! ```text
//! layer[0] = {0}
//! for each set A_i:
//!     for j = l down to 1:
//!         layer[j] |= layer[j-1] + A_i
//! ```
//!
//! with `j` descending so a set is never used twice in one sum. The
//! brute-force oracle enumerates index subsets and element tuples directly and
//! shares nothing with the layered path except the [`IntSet`] container.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::intset::{or_shifted, words_for, IntSet, SetSequence, DEFAULT_CAPACITY};

pub const DEFAULT_WORK_LIMIT: u64 = 10_000_000;

/// Resource limits for sumset computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Engine {
    /// Exclusive upper bound on any element a result may contain.
    pub capacity: usize,
    /// Maximum number of elementary additions the brute-force oracle may
    /// perform.
    pub work_limit: u64,
}

impl Default for Engine {
    fn default() -> Self {
        Self {
            capacity: DEFAULT_CAPACITY,
            work_limit: DEFAULT_WORK_LIMIT,
        }
    }
}

/// `Σ^j` of a processed prefix for every `j = 0..=depth`; `layers[0] = {0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaTable {
    pub layers: Vec<IntSet>,
}

impl SigmaTable {
    pub fn layer(&self, j: usize) -> &IntSet {
        &self.layers[j]
    }
}

impl Engine {
    fn universe(&self, top: usize) -> Result<usize> {
        let universe = top.saturating_add(1);
        if universe > self.capacity {
            return Err(Error::Capacity {
                value: top,
                capacity: self.capacity,
            });
        }
        Ok(universe)
    }

    pub fn pairwise_sumset(&self, a: &IntSet, b: &IntSet) -> Result<IntSet> {
        let (Some(ma), Some(mb)) = (a.max(), b.max()) else {
            return Err(Error::EmptySet);
        };
        let universe = self.universe(ma.saturating_add(mb))?;
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut words = vec![0u64; words_for(universe)];
        for x in small {
            or_shifted(&mut words, large.words(), x);
        }
        Ok(IntSet::from_words(words))
    }

    /// `Σ^l` over a slice of sets that may include empty members (an empty
    /// member contributes no sums). Used for the proof's primed tails.
    pub fn sigma_l_sets(&self, sets: &[IntSet], l: usize) -> Result<IntSet> {
        let k = sets.len();
        if l == 0 || l > k {
            return Err(domain(format!("l = {l} outside 1..={k}")));
        }
        let mut maxima: Vec<usize> = sets.iter().map(|s| s.max().unwrap_or(0)).collect();
        maxima.sort_unstable_by(|a, b| b.cmp(a));
        let top = maxima[..l]
            .iter()
            .try_fold(0usize, |acc, &m| acc.checked_add(m))
            .unwrap_or(usize::MAX);
        let nwords = words_for(self.universe(top)?);

        let mut layers: Vec<Vec<u64>> = vec![Vec::new(); l + 1];
        layers[0] = vec![1];
        // Highest word index in use per layer, plus one.
        let mut used = vec![0usize; l + 1];
        used[0] = 1;
        for (i, set) in sets.iter().enumerate() {
            let Some(set_max) = set.max() else { continue };
            let remaining = k - i - 1;
            let lo = l.saturating_sub(remaining).max(1);
            let hi = (i + 1).min(l);
            for j in (lo..=hi).rev() {
                if used[j - 1] == 0 {
                    continue;
                }
                let (below, above) = layers.split_at_mut(j);
                let src = &below[j - 1][..used[j - 1]];
                let dst = &mut above[0];
                let need = (used[j - 1] + set_max / 64 + 1).min(nwords);
                if dst.len() < need {
                    dst.resize(need, 0);
                }
                for x in set {
                    or_shifted(dst, src, x);
                }
                used[j] = dst.iter().rposition(|&w| w != 0).map_or(0, |p| p + 1);
            }
        }
        Ok(IntSet::from_words(std::mem::take(&mut layers[l])))
    }

    pub fn sigma_l(&self, seq: &SetSequence, l: usize) -> Result<IntSet> {
        self.sigma_l_sets(seq.sets(), l)
    }

    /// All layers `Σ^0, ..., Σ^k` in one pass.
    pub fn sigma_all(&self, seq: &SetSequence) -> Result<SigmaTable> {
        self.sigma_table(seq.sets(), seq.k())
    }

    /// Layers `Σ^0, ..., Σ^depth` of `sets`.
    pub(crate) fn sigma_table(&self, sets: &[IntSet], depth: usize) -> Result<SigmaTable> {
        let top = sets
            .iter()
            .map(|s| s.max().unwrap_or(0))
            .try_fold(0usize, |acc, m| acc.checked_add(m))
            .unwrap_or(usize::MAX);
        let nwords = words_for(self.universe(top)?);
        let mut layers = vec![vec![0u64; nwords]; depth + 1];
        layers[0][0] = 1;
        for (i, set) in sets.iter().enumerate() {
            for j in (1..=(i + 1).min(depth)).rev() {
                let (below, above) = layers.split_at_mut(j);
                for x in set {
                    or_shifted(&mut above[0], &below[j - 1], x);
                }
            }
        }
        Ok(SigmaTable {
            layers: layers.into_iter().map(IntSet::from_words).collect(),
        })
    }

    /// Definition-level enumeration of `Σ^l`: every increasing index
    /// `l`-tuple, every choice of elements. Refuses to start when the number of
    /// additions would exceed [`Engine::work_limit`].
    pub fn sigma_l_bruteforce(&self, seq: &SetSequence, l: usize) -> Result<IntSet> {
        seq.check_level(l)?;
        let required = bruteforce_cost(seq, l);
        if required > self.work_limit {
            return Err(Error::WorkLimit {
                required,
                limit: self.work_limit,
            });
        }
        let elements: Vec<Vec<usize>> = seq.to_vecs();
        let mut found = std::collections::BTreeSet::new();
        let mut chosen = Vec::with_capacity(l);
        enumerate_tuples(&elements, l, 0, &mut chosen, &mut found);
        IntSet::with_capacity_limit(found, self.capacity)
    }

    /// Sum of the `l` largest maxima, which is `max Σ^l` when every set
    /// contains 0.
    pub fn sigma_max(&self, seq: &SetSequence, l: usize) -> Result<usize> {
        seq.check_level(l)?;
        if !seq.all_contain_zero() {
            return Err(domain("sigma_max requires 0 in every set"));
        }
        let mut maxima = seq.maxima();
        maxima.sort_unstable_by(|a, b| b.cmp(a));
        Ok(maxima[..l].iter().sum())
    }
}

/// `l * e_l(|A_1|, ..., |A_k|)` where `e_l` is the elementary symmetric
/// polynomial: the number of tuples times the additions per tuple, saturating.
fn bruteforce_cost(seq: &SetSequence, l: usize) -> u64 {
    let mut e = vec![0u64; l + 1];
    e[0] = 1;
    for s in seq.sets() {
        let n = s.len() as u64;
        for j in (1..=l).rev() {
            e[j] = e[j].saturating_add(e[j - 1].saturating_mul(n));
        }
    }
    e[l].saturating_mul(l as u64)
}

fn enumerate_tuples(
    sets: &[Vec<usize>],
    remaining: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut std::collections::BTreeSet<usize>,
) {
    if remaining == 0 {
        out.insert(chosen.iter().sum());
        return;
    }
    for i in start..=sets.len() - remaining {
        for &a in &sets[i] {
            chosen.push(a);
            enumerate_tuples(sets, remaining - 1, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

pub fn pairwise_sumset(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    Engine::default().pairwise_sumset(a, b)
}

pub fn sigma_l(seq: &SetSequence, l: usize) -> Result<IntSet> {
    Engine::default().sigma_l(seq, l)
}

pub fn sigma_all(seq: &SetSequence) -> Result<SigmaTable> {
    Engine::default().sigma_all(seq)
}

pub fn sigma_l_bruteforce(seq: &SetSequence, l: usize) -> Result<IntSet> {
    Engine::default().sigma_l_bruteforce(seq, l)
}

pub fn sigma_max(seq: &SetSequence, l: usize) -> Result<usize> {
    Engine::default().sigma_max(seq, l)
}
