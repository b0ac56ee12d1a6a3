//! Dense sets of non-negative integers and the sequences the sumset engine
//! and the bound formulas operate on.
//!
//! An [`IntSet`] is a bitmap over `0..capacity`, stored as little-endian
//! 64-bit words with no trailing zero words, so structural equality is set
//! equality. Sequences index their members from 1 in every windowed
//! operation, matching the usual `A_1, ..., A_k` numbering.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest universe (exclusive upper bound on elements) a set may span unless
/// a caller asks for a different limit.
pub const DEFAULT_CAPACITY: usize = 1 << 28;

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn words_for(universe: usize) -> usize {
    universe.div_ceil(WORD_BITS)
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `dst |= src << shift`, dropping bits that fall past the end of `dst`.
pub(crate) fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let q = shift / WORD_BITS;
    let r = shift % WORD_BITS;
    if q >= dst.len() {
        return;
    }
    let n = src.len().min(dst.len() - q);
    if r == 0 {
        for (d, &s) in dst[q..q + n].iter_mut().zip(&src[..n]) {
            *d |= s;
        }
    } else {
        let back = WORD_BITS - r;
        for i in 0..n {
            let w = src[i];
            dst[q + i] |= w << r;
            if let Some(d) = dst.get_mut(q + i + 1) {
                *d |= w >> back;
            }
        }
    }
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

/// A finite set of non-negative integers.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct IntSet {
    words: Vec<u64>,
}

impl IntSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(value: usize) -> Result<Self> {
        Self::try_from_elements([value])
    }

    /// Builds a set with the default capacity limit.
    pub fn try_from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        Self::with_capacity_limit(elements, DEFAULT_CAPACITY)
    }

    /// Builds a set, rejecting any element `>= capacity`.
    pub fn with_capacity_limit<I: IntoIterator<Item = usize>>(
        elements: I,
        capacity: usize,
    ) -> Result<Self> {
        let mut words = Vec::new();
        for value in elements {
            if value >= capacity {
                return Err(Error::Capacity { value, capacity });
            }
            let idx = value / WORD_BITS;
            if idx >= words.len() {
                words.resize(idx + 1, 0);
            }
            words[idx] |= 1u64 << (value % WORD_BITS);
        }
        trim(&mut words);
        Ok(Self { words })
    }

    pub(crate) fn from_words(mut words: Vec<u64>) -> Self {
        trim(&mut words);
        Self { words }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn contains(&self, value: usize) -> bool {
        self.words
            .get(value / WORD_BITS)
            .is_some_and(|w| w & (1u64 << (value % WORD_BITS)) != 0)
    }

    pub fn min(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * WORD_BITS + self.words[i].trailing_zeros() as usize)
    }

    pub fn max(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + (WORD_BITS - 1 - last.leading_zeros() as usize))
    }

    /// Ascending iteration over the elements.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Greatest common divisor of the elements; `{0}` gives 0.
    pub fn gcd(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self.iter().fold(0, gcd))
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (d, s) in words.iter_mut().zip(&short.words) {
            *d |= s;
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Self::from_words(words)
    }

    pub fn difference(&self, other: &Self) -> Self {
        let words = self
            .words
            .iter()
            .enumerate()
            .map(|(i, &a)| a & !other.words.get(i).copied().unwrap_or(0))
            .collect();
        Self::from_words(words)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    /// `{a + offset : a in self}`.
    pub fn translate_up(&self, offset: usize, capacity: usize) -> Result<Self> {
        let Some(max) = self.max() else {
            return Ok(Self::empty());
        };
        let top = max.saturating_add(offset);
        if top >= capacity {
            return Err(Error::Capacity {
                value: top,
                capacity,
            });
        }
        let mut words = vec![0u64; words_for(top + 1)];
        or_shifted(&mut words, &self.words, offset);
        Ok(Self::from_words(words))
    }

    /// `{a - offset : a in self}`; every element must be at least `offset`.
    pub fn translate_down(&self, offset: usize) -> Result<Self> {
        match self.min() {
            None => return Ok(Self::empty()),
            Some(m) if m < offset => {
                return Err(domain(format!(
                    "cannot translate by -{offset}: minimum element is {m}"
                )))
            }
            _ => {}
        }
        let q = offset / WORD_BITS;
        let r = offset % WORD_BITS;
        let src = &self.words[q..];
        let mut words = vec![0u64; src.len()];
        if r == 0 {
            words.copy_from_slice(src);
        } else {
            for i in 0..src.len() {
                words[i] = src[i] >> r;
                if let Some(&next) = src.get(i + 1) {
                    words[i] |= next << (WORD_BITS - r);
                }
            }
        }
        Ok(Self::from_words(words))
    }

    /// `{a * factor : a in self}`.
    pub fn dilate(&self, factor: usize, capacity: usize) -> Result<Self> {
        if factor == 0 {
            return Err(domain("dilation factor must be positive"));
        }
        let scaled: Vec<usize> = self
            .iter()
            .map(|a| a.saturating_mul(factor))
            .collect();
        Self::with_capacity_limit(scaled, capacity)
    }

    /// `{a / divisor : a in self}`; every element must be a multiple of `divisor`.
    pub fn contract(&self, divisor: usize) -> Result<Self> {
        if divisor == 0 {
            return Err(domain("divisor must be positive"));
        }
        if let Some(a) = self.iter().find(|a| a % divisor != 0) {
            return Err(domain(format!("{a} is not divisible by {divisor}")));
        }
        Self::try_from_elements(self.iter().map(|a| a / divisor))
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Panics if an element exceeds [`DEFAULT_CAPACITY`].
impl FromIterator<usize> for IntSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::try_from_elements(iter).expect("element exceeds the default universe capacity")
    }
}

impl TryFrom<Vec<usize>> for IntSet {
    type Error = Error;

    fn try_from(elements: Vec<usize>) -> Result<Self> {
        Self::try_from_elements(elements)
    }
}

impl From<IntSet> for Vec<usize> {
    fn from(set: IntSet) -> Self {
        set.to_vec()
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD_BITS + bit)
    }
}

pub fn gcd_of_set(s: &IntSet) -> Result<usize> {
    s.gcd()
}

/// Translates `s` so its minimum becomes 0; returns the translated set and
/// the subtracted offset.
pub fn shift_to_zero(s: &IntSet) -> Result<(IntSet, usize)> {
    let offset = s.min().ok_or(Error::EmptySet)?;
    Ok((s.translate_down(offset)?, offset))
}

/// An ordered sequence `(A_1, ..., A_k)` of non-empty sets, `k >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<IntSet>", try_from = "Vec<IntSet>")]
pub struct SetSequence {
    sets: Vec<IntSet>,
}

impl SetSequence {
    pub fn new(sets: Vec<IntSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptySequence);
        }
        if sets.iter().any(IntSet::is_empty) {
            return Err(Error::EmptySet);
        }
        Ok(Self { sets })
    }

    pub fn from_vecs<V: AsRef<[usize]>>(sets: &[V]) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|s| IntSet::try_from_elements(s.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets)
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[IntSet] {
        &self.sets
    }

    pub fn into_sets(self) -> Vec<IntSet> {
        self.sets
    }

    /// `A_i`, 1-based.
    pub fn member(&self, i: usize) -> &IntSet {
        &self.sets[i - 1]
    }

    /// The prefix `(A_1, ..., A_i)`.
    pub fn prefix(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.k() {
            return Err(domain(format!(
                "prefix length {i} outside 1..={}",
                self.k()
            )));
        }
        Ok(Self {
            sets: self.sets[..i].to_vec(),
        })
    }

    pub fn maxima(&self) -> Vec<usize> {
        self.sets.iter().map(|s| s.max().unwrap_or(0)).collect()
    }

    /// `A_lo ∪ ... ∪ A_hi`, 1-based inclusive; empty when `lo > hi`.
    pub fn union_range(&self, lo: usize, hi: usize) -> IntSet {
        let lo = lo.max(1);
        let hi = hi.min(self.k());
        if lo > hi {
            return IntSet::empty();
        }
        self.sets[lo - 1..hi]
            .iter()
            .fold(IntSet::empty(), |acc, s| acc.union(s))
    }

    pub fn union_all(&self) -> IntSet {
        self.union_range(1, self.k())
    }

    pub fn all_contain_zero(&self) -> bool {
        self.sets.iter().all(|s| s.contains(0))
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(IntSet::to_vec).collect()
    }

    pub(crate) fn check_level(&self, l: usize) -> Result<()> {
        if l == 0 || l > self.k() {
            return Err(domain(format!("l = {l} outside 1..={}", self.k())));
        }
        Ok(())
    }
}

impl fmt::Debug for SetSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for SetSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl TryFrom<Vec<IntSet>> for SetSequence {
    type Error = Error;

    fn try_from(sets: Vec<IntSet>) -> Result<Self> {
        Self::new(sets)
    }
}

impl From<SetSequence> for Vec<IntSet> {
    fn from(seq: SetSequence) -> Self {
        seq.sets
    }
}

/// What [`canonicalize`] did to a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalizationLog {
    /// Subtracted minimum of each set, in original order.
    pub offsets: Vec<usize>,
    /// `permutation[p]` is the 0-based original index of the set placed at
    /// canonical position `p`.
    pub permutation: Vec<usize>,
    /// Common divisor removed after translation (1 when nothing was divided).
    pub divisor: usize,
    pub l: usize,
    /// True when `|Σ^l|` of the canonical sequence equals that of the input:
    /// all offsets equal, or `l = k`.
    pub sigma_preserving: bool,
}

impl CanonicalizationLog {
    /// Maps an element of `Σ^l` of the canonical sequence back to the input's
    /// coordinates, when the translation is uniform enough for that to be a
    /// bijection.
    pub fn to_original(&self, value: usize) -> Option<usize> {
        if !self.sigma_preserving {
            return None;
        }
        let k = self.offsets.len();
        let shift = if self.l == k {
            self.offsets.iter().sum()
        } else {
            self.l * self.offsets.first().copied().unwrap_or(0)
        };
        Some(value * self.divisor + shift)
    }
}

/// Puts a sequence into the shape the main theorem expects: every set
/// translated to contain 0, common divisor of the union removed, sets sorted
/// by maximum (descending, stable) with a gcd-1 set preferred at the front
/// among those sharing the largest maximum.
pub fn canonicalize(seq: &SetSequence, l: usize) -> Result<(SetSequence, CanonicalizationLog)> {
    seq.check_level(l)?;
    let mut offsets = Vec::with_capacity(seq.k());
    let mut shifted = Vec::with_capacity(seq.k());
    for s in seq.sets() {
        let (set, offset) = shift_to_zero(s)?;
        offsets.push(offset);
        shifted.push(set);
    }

    let union_gcd = shifted.iter().flat_map(IntSet::iter).fold(0, gcd);
    let divisor = if union_gcd > 1 { union_gcd } else { 1 };
    if divisor > 1 {
        shifted = shifted
            .iter()
            .map(|s| s.contract(divisor))
            .collect::<Result<_>>()?;
    }

    let mut permutation: Vec<usize> = (0..shifted.len()).collect();
    permutation.sort_by_key(|&i| std::cmp::Reverse(shifted[i].max()));
    let top = shifted[permutation[0]].max();
    let lead = permutation
        .iter()
        .take_while(|&&i| shifted[i].max() == top)
        .count();
    if let Some(pos) = permutation[..lead]
        .iter()
        .position(|&i| shifted[i].gcd() == Ok(1))
    {
        permutation[..=pos].rotate_right(1);
    }

    let sets = permutation.iter().map(|&i| shifted[i].clone()).collect();
    let sigma_preserving = l == seq.k() || offsets.iter().all(|&o| o == offsets[0]);
    Ok((
        SetSequence::new(sets)?,
        CanonicalizationLog {
            offsets,
            permutation,
            divisor,
            l,
            sigma_preserving,
        },
    ))
}

/// For each integer in a window of a sequence, how many sets of the window
/// contain it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub lo: usize,
    pub hi: usize,
    pub counts: BTreeMap<usize, usize>,
}

impl MultiplicityProfile {
    pub fn count(&self, a: usize) -> usize {
        self.counts.get(&a).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// `Σ_a min{cap, mult(a)}`.
    pub fn capped_sum(&self, cap: usize) -> usize {
        self.counts.values().map(|&c| c.min(cap)).sum()
    }

    /// Elements with multiplicity at least `threshold`.
    pub fn at_least(&self, threshold: usize) -> IntSet {
        self.counts
            .iter()
            .filter(|&(_, &c)| c >= threshold)
            .map(|(&a, _)| a)
            .collect()
    }
}

/// Multiplicities over the window `A_lo, ..., A_hi` (1-based, inclusive).
pub fn multiplicity_profile(
    seq: &SetSequence,
    lo: usize,
    hi: usize,
) -> Result<MultiplicityProfile> {
    if lo == 0 || lo > hi || hi > seq.k() {
        return Err(domain(format!(
            "window [{lo}, {hi}] is not within [1, {}]",
            seq.k()
        )));
    }
    let mut counts = BTreeMap::new();
    for s in &seq.sets()[lo - 1..hi] {
        for a in s {
            *counts.entry(a).or_insert(0) += 1;
        }
    }
    Ok(MultiplicityProfile { lo, hi, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IntSet {
        v.iter().copied().collect()
    }

    fn seq(v: &[&[usize]]) -> SetSequence {
        SetSequence::from_vecs(v).unwrap()
    }

    #[test]
    fn basic_queries() {
        let s = set(&[0, 3, 64, 200]);
        assert_eq!(s.len(), 4);
        assert_eq!(s.min(), Some(0));
        assert_eq!(s.max(), Some(200));
        assert!(s.contains(64));
        assert!(!s.contains(65));
        assert!(!s.contains(100_000));
        assert_eq!(s.to_vec(), vec![0, 3, 64, 200]);
        assert_eq!(IntSet::empty().max(), None);
        assert_eq!(format!("{s}"), "{0,3,64,200}");
    }

    #[test]
    fn equality_ignores_construction_path() {
        let a = set(&[1, 130]).difference(&set(&[130]));
        assert_eq!(a, set(&[1]));
        assert_eq!(set(&[5]).intersection(&set(&[6])), IntSet::empty());
    }

    #[test]
    fn capacity_is_enforced() {
        assert_eq!(
            IntSet::with_capacity_limit([3, 10], 10),
            Err(Error::Capacity {
                value: 10,
                capacity: 10
            })
        );
        assert!(set(&[0, 5]).translate_up(5, 10).is_err());
        assert_eq!(set(&[0, 5]).translate_up(4, 10).unwrap(), set(&[4, 9]));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_of_set(&set(&[0, 2, 4])), Ok(2));
        assert_eq!(gcd_of_set(&set(&[0, 1, 3])), Ok(1));
        assert_eq!(gcd_of_set(&set(&[0])), Ok(0));
        assert_eq!(gcd_of_set(&IntSet::empty()), Err(Error::EmptySet));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_to_zero(&set(&[2, 4])), Ok((set(&[0, 2]), 2)));
        assert_eq!(shift_to_zero(&set(&[0, 1])), Ok((set(&[0, 1]), 0)));
        assert_eq!(shift_to_zero(&set(&[5])), Ok((set(&[0]), 5)));
        assert_eq!(
            shift_to_zero(&set(&[70, 130, 300])),
            Ok((set(&[0, 60, 230]), 70))
        );
        assert_eq!(shift_to_zero(&IntSet::empty()), Err(Error::EmptySet));
    }

    #[test]
    fn dilate_and_contract() {
        let s = set(&[0, 1, 5]);
        let d = s.dilate(3, DEFAULT_CAPACITY).unwrap();
        assert_eq!(d, set(&[0, 3, 15]));
        assert_eq!(d.contract(3).unwrap(), s);
        assert!(d.contract(2).is_err());
    }

    #[test]
    fn sequence_rejects_empty_members() {
        assert_eq!(SetSequence::new(vec![]), Err(Error::EmptySequence));
        assert_eq!(
            SetSequence::new(vec![set(&[0]), IntSet::empty()]),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn canonicalize_sorts_by_max() {
        let (c, log) = canonicalize(&seq(&[&[0, 1], &[0, 1, 2]]), 2).unwrap();
        assert_eq!(c, seq(&[&[0, 1, 2], &[0, 1]]));
        assert_eq!(log.permutation, vec![1, 0]);
        assert_eq!(log.divisor, 1);
    }

    #[test]
    fn canonicalize_shifts_and_divides() {
        let (c, log) = canonicalize(&seq(&[&[2, 4], &[6, 8]]), 2).unwrap();
        assert_eq!(c, seq(&[&[0, 1], &[0, 1]]));
        assert_eq!(log.offsets, vec![2, 6]);
        assert_eq!(log.divisor, 2);
        assert!(log.sigma_preserving);
        // Σ^2 = {8, 10, 12} in the original coordinates.
        assert_eq!(log.to_original(0), Some(8));
        assert_eq!(log.to_original(2), Some(12));
    }

    #[test]
    fn canonicalize_reports_applicability_shape() {
        let (c, _) = canonicalize(&seq(&[&[0, 3], &[0, 2, 3]]), 2).unwrap();
        assert_eq!(c, seq(&[&[0, 2, 3], &[0, 3]]));
        assert_eq!(c.member(1).gcd(), Ok(1));
    }

    #[test]
    fn canonicalize_tie_break_prefers_gcd_one() {
        let (c, log) =
            canonicalize(&seq(&[&[0, 1], &[0, 2, 4], &[0, 1, 4], &[0, 3, 4]]), 2).unwrap();
        assert_eq!(c, seq(&[&[0, 1, 4], &[0, 2, 4], &[0, 3, 4], &[0, 1]]));
        assert_eq!(log.permutation, vec![2, 1, 3, 0]);
    }

    #[test]
    fn canonicalize_flags_non_uniform_translation() {
        let (c, log) = canonicalize(&seq(&[&[0], &[5]]), 1).unwrap();
        assert_eq!(c, seq(&[&[0], &[0]]));
        assert!(!log.sigma_preserving);
        assert_eq!(log.to_original(0), None);
        let (_, log) = canonicalize(&seq(&[&[0], &[5]]), 2).unwrap();
        assert!(log.sigma_preserving);
    }

    #[test]
    fn canonicalize_rejects_bad_level() {
        assert!(canonicalize(&seq(&[&[0]]), 0).is_err());
        assert!(canonicalize(&seq(&[&[0]]), 2).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let p = multiplicity_profile(&seq(&[&[0, 1, 2], &[0, 1], &[0, 1]]), 1, 3).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(0, 3), (1, 3), (2, 1)]));
        assert_eq!(p.total(), 7);

        let p = multiplicity_profile(&seq(&[&[0, 5], &[0]]), 1, 2).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(0, 2), (5, 1)]));

        let p = multiplicity_profile(&seq(&[&[0, 5], &[0, 3, 9]]), 2, 2).unwrap();
        assert!(p.counts.values().all(|&c| c == 1));
        assert_eq!(p.at_least(1), set(&[0, 3, 9]));
    }

    #[test]
    fn multiplicity_rejects_bad_windows() {
        let s = seq(&[&[0], &[0]]);
        assert!(multiplicity_profile(&s, 0, 1).is_err());
        assert!(multiplicity_profile(&s, 2, 1).is_err());
        assert!(multiplicity_profile(&s, 1, 3).is_err());
    }
}
