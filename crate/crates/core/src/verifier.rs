//! Instance generation and bound sweeps.
//!
//! A sweep evaluates every instance of an [`InstanceFamily`] (all sequences
//! of subsets of `{0, ..., M}` containing 0, or a seeded random sample),
//! compares `|Σ^l|` with the main bound and the reference bounds, and
//! optionally runs the proof battery. Instances are evaluated in parallel in
//! fixed-size chunks and reduced in generation order, so the summary and the
//! record stream are identical from run to run.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{dgm_integer_bound, kneser_integer_bound, main_bound, BoundReport};
use crate::error::{domain, Error, Result};
use crate::intset::{canonicalize, IntSet, SetSequence};
use crate::proof::{proof_battery, tail_is_nested, CheckResult};
use crate::sumset::Engine;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Random {
        seed: u64,
        count: u64,
    },
    /// One caller-supplied instance; only produced by [`verify_instance`].
    Single,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFamily {
    pub k: usize,
    pub l: usize,
    pub max_element: usize,
    pub mode: Mode,
    /// Keep only instances satisfying the main bound's hypotheses.
    pub applicable_only: bool,
    /// Keep only instances with `A_l ⊆ ... ⊆ A_k`.
    pub nested_only: bool,
    /// Canonicalize every instance and skip repeats of a canonical form.
    /// When off, instances are evaluated in generated order, unchanged.
    pub dedup: bool,
}

impl InstanceFamily {
    pub fn exhaustive(k: usize, l: usize, max_element: usize) -> Self {
        Self {
            k,
            l,
            max_element,
            mode: Mode::Exhaustive,
            applicable_only: true,
            nested_only: false,
            dedup: true,
        }
    }

    pub fn random(k: usize, l: usize, max_element: usize, seed: u64, count: u64) -> Self {
        Self {
            mode: Mode::Random { seed, count },
            ..Self::exhaustive(k, l, max_element)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.l == 0 || self.l > self.k {
            return Err(domain(format!(
                "need 1 <= l <= k (k = {}, l = {})",
                self.k, self.l
            )));
        }
        if self.max_element == 0 {
            return Err(domain("max element must be at least 1"));
        }
        if self.mode == Mode::Single {
            return Err(domain("single-instance families cannot be swept"));
        }
        if self.mode == Mode::Exhaustive && self.max_element >= 63 {
            return Err(domain("exhaustive families need max element below 63"));
        }
        Ok(())
    }

    /// Number of candidate instances before filtering, saturating.
    pub fn size(&self) -> u64 {
        match self.mode {
            Mode::Random { count, .. } => count,
            Mode::Single => 1,
            Mode::Exhaustive => {
                let choices = 1u64 << self.max_element;
                if self.dedup {
                    // multisets of size k from `choices` subsets
                    (0..self.k as u64)
                        .fold(1u64, |acc, i| acc.saturating_mul(choices + i) / (i + 1))
                } else {
                    choices.saturating_pow(self.k as u32)
                }
            }
        }
    }
}

/// `DGM` and `Kneser` reference bounds evaluated against the sumsets they
/// bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceBounds {
    pub dgm: i64,
    pub dgm_holds: bool,
    pub kneser: i64,
    pub full_sum_size: i64,
    pub kneser_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub instance: SetSequence,
    pub l: usize,
    pub sigma_size: i64,
    pub bound: BoundReport,
    pub slack: i64,
    /// `slack == 0`; only meaningful when `bound.applicable`.
    pub tight: bool,
    pub proof_invariants: Vec<CheckResult>,
    pub reference_bounds: ReferenceBounds,
    /// Agreement with the brute-force oracle, when it was run.
    pub oracle_agrees: Option<bool>,
}

impl VerificationRecord {
    pub fn invariant_failures(&self) -> u64 {
        let checks = self
            .proof_invariants
            .iter()
            .filter(|c| c.is_failure())
            .count() as u64;
        let refs =
            !self.reference_bounds.dgm_holds as u64 + !self.reference_bounds.kneser_holds as u64;
        checks + refs + (self.oracle_agrees == Some(false)) as u64
    }

    pub fn max_sum(&self) -> usize {
        self.instance.maxima().iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub family: InstanceFamily,
    pub instances: u64,
    pub applicable: u64,
    pub tight: u64,
    pub violations: u64,
    pub invariant_failures: u64,
    /// Over applicable instances; 0 when there are none.
    pub min_slack: i64,
    pub max_slack: i64,
}

impl Summary {
    fn new(family: &InstanceFamily) -> Self {
        Self {
            family: family.clone(),
            instances: 0,
            applicable: 0,
            tight: 0,
            violations: 0,
            invariant_failures: 0,
            min_slack: 0,
            max_slack: 0,
        }
    }

    fn absorb(&mut self, r: &VerificationRecord, violated: bool) {
        self.instances += 1;
        self.invariant_failures += r.invariant_failures();
        if r.bound.applicable {
            if self.applicable == 0 {
                self.min_slack = r.slack;
                self.max_slack = r.slack;
            } else {
                self.min_slack = self.min_slack.min(r.slack);
                self.max_slack = self.max_slack.max(r.slack);
            }
            self.applicable += 1;
            self.tight += r.tight as u64;
        }
        self.violations += violated as u64;
    }
}

/// Decides whether `(|Σ^l|, bound)` on an applicable instance is a
/// counterexample.
pub type ViolationTest = fn(i64, i64) -> bool;

fn below_bound(sigma: i64, bound: i64) -> bool {
    sigma < bound
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub engine: Engine,
    /// Maximum number of generated instances.
    pub budget: u64,
    pub proof_invariants: bool,
    /// Cross-check `|Σ^l|` against the brute-force oracle when within its
    /// work limit.
    pub oracle_check: bool,
    pub violation: ViolationTest,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            engine: Engine::default(),
            budget: DEFAULT_BUDGET,
            proof_invariants: false,
            oracle_check: false,
            violation: below_bound,
        }
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("instance budget of {budget} exceeded")]
    Budget { budget: u64, partial: Box<Summary> },

    #[error("bound violated on {}", .reproduction.instance)]
    Violation {
        record: Box<VerificationRecord>,
        /// A minimal instance (no element or set can be dropped) that still
        /// violates the bound.
        reproduction: Box<VerificationRecord>,
        partial: Box<Summary>,
    },
}

/// Evaluates one instance.
pub fn evaluate(seq: &SetSequence, l: usize, opts: &SweepOptions) -> Result<VerificationRecord> {
    let engine = &opts.engine;
    let table = engine.sigma_all(seq)?;
    let sigma_size = table.layer(l).len() as i64;
    let full_sum_size = table.layer(seq.k()).len() as i64;
    let bound = main_bound(seq, l)?;
    let slack = sigma_size - bound.bound;
    let dgm = dgm_integer_bound(seq, l)?;
    let kneser = kneser_integer_bound(seq);
    let proof_invariants = if opts.proof_invariants {
        proof_battery(engine, seq, l)?
    } else {
        Vec::new()
    };
    let oracle_agrees = if opts.oracle_check {
        match engine.sigma_l_bruteforce(seq, l) {
            Ok(brute) => Some(&brute == table.layer(l)),
            Err(Error::WorkLimit { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(VerificationRecord {
        instance: seq.clone(),
        l,
        sigma_size,
        slack,
        tight: slack == 0,
        bound,
        proof_invariants,
        reference_bounds: ReferenceBounds {
            dgm,
            dgm_holds: sigma_size >= dgm,
            kneser,
            full_sum_size,
            kneser_holds: full_sum_size >= kneser,
        },
        oracle_agrees,
    })
}

fn is_violation(seq: &SetSequence, l: usize, opts: &SweepOptions) -> Result<bool> {
    let bound = main_bound(seq, l)?;
    if !bound.applicable {
        return Ok(false);
    }
    let sigma = opts.engine.sigma_l(seq, l)?.len() as i64;
    Ok((opts.violation)(sigma, bound.bound))
}

/// Greedily drops non-zero elements and whole sets while the instance keeps
/// violating the bound.
pub fn shrink_violation(seq: &SetSequence, l: usize, opts: &SweepOptions) -> Result<SetSequence> {
    let mut current = seq.clone();
    'outer: loop {
        let sets = current.sets().to_vec();
        if sets.len() > l {
            for i in 0..sets.len() {
                let mut fewer = sets.clone();
                fewer.remove(i);
                let candidate = SetSequence::new(fewer)?;
                if is_violation(&candidate, l, opts)? {
                    current = candidate;
                    continue 'outer;
                }
            }
        }
        for (i, s) in sets.iter().enumerate() {
            for a in s.iter().filter(|&a| a != 0) {
                let smaller = s.difference(&IntSet::singleton(a)?);
                if smaller.is_empty() {
                    continue;
                }
                let mut next = sets.clone();
                next[i] = smaller;
                let candidate = SetSequence::new(next)?;
                if is_violation(&candidate, l, opts)? {
                    current = candidate;
                    continue 'outer;
                }
            }
        }
        return Ok(current);
    }
}

fn subset_from_mask(mask: u64) -> IntSet {
    std::iter::once(0)
        .chain((0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1))
        .collect()
}

/// Index tuples over `0..choices`: non-decreasing when `sorted`, all of them
/// otherwise.
struct Tuples {
    current: Option<Vec<u64>>,
    choices: u64,
    sorted: bool,
}

impl Iterator for Tuples {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.clone()?;
        let t = self.current.as_mut().expect("checked above");
        let mut i = t.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if t[i] + 1 < self.choices {
                t[i] += 1;
                let v = t[i];
                for x in &mut t[i + 1..] {
                    *x = if self.sorted { v } else { 0 };
                }
                break;
            }
        }
        Some(out)
    }
}

/// Seeded random sequences of `k` subsets of `{0, ..., max_element}`, each
/// containing 0, canonicalized for level `l`. Each set's size is uniform in
/// `1..=max_element + 1` and its non-zero elements a uniform sample of that
/// size.
pub fn random_instances(
    k: usize,
    l: usize,
    max_element: usize,
    seed: u64,
    count: usize,
) -> Result<Vec<SetSequence>> {
    if max_element == 0 {
        return Err(domain("max element must be at least 1"));
    }
    if k == 0 || l == 0 || l > k {
        return Err(domain(format!("need 1 <= l <= k (k = {k}, l = {l})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let sets = (0..k)
                .map(|_| random_set(&mut rng, max_element))
                .collect::<Result<Vec<_>>>()?;
            Ok(canonicalize(&SetSequence::new(sets)?, l)?.0)
        })
        .collect()
}

fn random_set(rng: &mut ChaCha8Rng, max_element: usize) -> Result<IntSet> {
    let size = rng.gen_range(1..=max_element + 1);
    let picked = sample(rng, max_element, size - 1);
    IntSet::try_from_elements(std::iter::once(0).chain(picked.into_iter().map(|a| a + 1)))
}

fn candidates(family: &InstanceFamily) -> Result<Box<dyn Iterator<Item = SetSequence>>> {
    Ok(match family.mode {
        Mode::Exhaustive => {
            let choices = 1u64 << family.max_element;
            let masks: Vec<IntSet> = (0..choices).map(subset_from_mask).collect();
            let tuples = Tuples {
                current: Some(vec![0; family.k]),
                choices,
                sorted: family.dedup,
            };
            Box::new(tuples.map(move |t| {
                SetSequence::new(t.iter().map(|&i| masks[i as usize].clone()).collect())
                    .expect("generated sets are non-empty")
            }))
        }
        Mode::Random { seed, count } => Box::new(
            random_instances(family.k, family.l, family.max_element, seed, count as usize)?
                .into_iter(),
        ),
        Mode::Single => unreachable!("rejected by validate"),
    })
}

/// Runs a sweep, handing every kept record to `on_record` in generation
/// order.
pub fn sweep_with<F>(
    family: &InstanceFamily,
    opts: &SweepOptions,
    mut on_record: F,
) -> Result<Summary, SweepError>
where
    F: FnMut(&VerificationRecord),
{
    family.validate()?;
    let l = family.l;
    let mut summary = Summary::new(family);
    let mut seen = HashSet::new();
    let mut generated = 0u64;
    let mut source = candidates(family)?.peekable();

    let mut over_budget = false;
    loop {
        if over_budget {
            return Err(SweepError::Budget {
                budget: opts.budget,
                partial: Box::new(summary),
            });
        }
        let mut chunk = Vec::with_capacity(CHUNK);
        while chunk.len() < CHUNK {
            if generated == opts.budget {
                over_budget = source.peek().is_some();
                break;
            }
            let Some(seq) = source.next() else { break };
            generated += 1;
            let seq = if family.dedup {
                let canonical = canonicalize(&seq, l)?.0;
                if !seen.insert(canonical.clone()) {
                    continue;
                }
                canonical
            } else {
                seq
            };
            chunk.push(seq);
        }
        if chunk.is_empty() && !over_budget {
            return Ok(summary);
        }

        let records: Vec<Option<VerificationRecord>> = chunk
            .par_iter()
            .map(|seq| {
                if family.nested_only && !tail_is_nested(seq, l) {
                    return Ok(None);
                }
                let record = evaluate(seq, l, opts)?;
                if family.applicable_only && !record.bound.applicable {
                    return Ok(None);
                }
                Ok(Some(record))
            })
            .collect::<Result<_>>()?;

        for record in records.into_iter().flatten() {
            let violated =
                record.bound.applicable && (opts.violation)(record.sigma_size, record.bound.bound);
            summary.absorb(&record, violated);
            on_record(&record);
            if violated {
                let minimal = shrink_violation(&record.instance, l, opts)?;
                let reproduction = evaluate(&minimal, l, opts)?;
                return Err(SweepError::Violation {
                    record: Box::new(record),
                    reproduction: Box::new(reproduction),
                    partial: Box::new(summary),
                });
            }
        }
    }
}

pub fn sweep(
    family: &InstanceFamily,
    opts: &SweepOptions,
) -> Result<(Vec<VerificationRecord>, Summary), SweepError> {
    let mut records = Vec::new();
    let summary = sweep_with(family, opts, |r| records.push(r.clone()))?;
    Ok((records, summary))
}

/// Evaluates one instance as given (no canonicalization). A violation is
/// reported like in a sweep, with a shrunk reproduction.
pub fn verify_instance(
    seq: &SetSequence,
    l: usize,
    opts: &SweepOptions,
) -> Result<VerificationRecord, SweepError> {
    let record = evaluate(seq, l, opts)?;
    if record.bound.applicable && (opts.violation)(record.sigma_size, record.bound.bound) {
        let mut partial = Summary::new(&InstanceFamily {
            k: seq.k(),
            l,
            max_element: seq.maxima().into_iter().max().unwrap_or(0),
            mode: Mode::Single,
            applicable_only: false,
            nested_only: false,
            dedup: false,
        });
        partial.absorb(&record, true);
        let minimal = shrink_violation(seq, l, opts)?;
        return Err(SweepError::Violation {
            reproduction: Box::new(evaluate(&minimal, l, opts)?),
            record: Box::new(record),
            partial: Box::new(partial),
        });
    }
    Ok(record)
}

/// Records with zero slack, ordered by `(k, l, Σ max A_i)`.
pub fn find_tight(
    family: &InstanceFamily,
    opts: &SweepOptions,
) -> Result<Vec<VerificationRecord>, SweepError> {
    let mut tight = Vec::new();
    sweep_with(family, opts, |r| {
        if r.tight {
            tight.push(r.clone());
        }
    })?;
    tight.sort_by_key(|r| (r.instance.k(), r.l, r.max_sum()));
    Ok(tight)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[&[usize]]) -> SetSequence {
        SetSequence::from_vecs(v).unwrap()
    }

    #[test]
    fn tuples_enumerate_multisets_and_products() {
        let sorted: Vec<_> = Tuples {
            current: Some(vec![0; 2]),
            choices: 3,
            sorted: true,
        }
        .collect();
        assert_eq!(sorted.len(), 6);
        assert!(sorted.iter().all(|t| t[0] <= t[1]));
        let all = Tuples {
            current: Some(vec![0; 3]),
            choices: 2,
            sorted: false,
        }
        .count();
        assert_eq!(all, 8);
    }

    #[test]
    fn family_size_counts() {
        let mut f = InstanceFamily::exhaustive(3, 2, 2);
        assert_eq!(f.size(), 20); // C(4 + 2, 3)
        f.dedup = false;
        assert_eq!(f.size(), 64);
    }

    #[test]
    fn subsets_contain_zero() {
        assert_eq!(subset_from_mask(0).to_vec(), vec![0]);
        assert_eq!(subset_from_mask(0b101).to_vec(), vec![0, 1, 3]);
    }

    #[test]
    fn random_instances_are_deterministic() {
        let a = random_instances(4, 2, 20, 1, 100).unwrap();
        let b = random_instances(4, 2, 20, 1, 100).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
        assert!(a.iter().all(|s| s.k() == 4 && s.all_contain_zero()));
        assert_ne!(a, random_instances(4, 2, 20, 2, 100).unwrap());
        assert!(random_instances(3, 1, 5, 9, 0).unwrap().is_empty());
        assert!(random_instances(3, 1, 0, 9, 1).is_err());
    }

    #[test]
    fn sweep_small_exhaustive() {
        let (records, summary) = sweep(
            &InstanceFamily::exhaustive(2, 2, 3),
            &SweepOptions::default(),
        )
        .unwrap();
        assert_eq!(summary.violations, 0);
        assert!(summary.min_slack >= 0);
        let ap = seq(&[&[0, 1, 2, 3], &[0, 1, 2, 3]]);
        let r = records.iter().find(|r| r.instance == ap).unwrap();
        assert_eq!((r.sigma_size, r.bound.bound, r.tight), (7, 7, true));
    }

    #[test]
    fn sweep_single_applicable_instance() {
        let (records, summary) = sweep(
            &InstanceFamily::exhaustive(3, 2, 1),
            &SweepOptions::default(),
        )
        .unwrap();
        // ({0,1},{0},{0}), ({0,1},{0,1},{0}), ({0,1},{0,1},{0,1}); all tight
        assert_eq!(summary.applicable, 3);
        assert_eq!(summary.tight, 3);
        assert!(records
            .iter()
            .any(|r| r.instance == seq(&[&[0, 1], &[0, 1], &[0, 1]]) && r.tight));
    }

    #[test]
    fn empty_after_filter() {
        let mut family = InstanceFamily::exhaustive(2, 2, 1);
        family.nested_only = true;
        family.mode = Mode::Random { seed: 3, count: 0 };
        let summary = sweep_with(&family, &SweepOptions::default(), |_| {}).unwrap();
        assert_eq!(
            (
                summary.instances,
                summary.applicable,
                summary.tight,
                summary.min_slack,
                summary.max_slack
            ),
            (0, 0, 0, 0, 0)
        );
    }

    #[test]
    fn budget_is_enforced_with_partial_summary() {
        let opts = SweepOptions {
            budget: 10,
            ..SweepOptions::default()
        };
        match sweep(&InstanceFamily::exhaustive(2, 2, 4), &opts) {
            Err(SweepError::Budget { budget, partial }) => {
                assert_eq!(budget, 10);
                assert!(partial.instances <= 10);
                assert!(partial.instances > 0);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        // exactly at budget is fine
        let opts = SweepOptions {
            budget: 3,
            ..SweepOptions::default()
        };
        assert!(sweep(&InstanceFamily::exhaustive(2, 2, 1), &opts).is_ok());
    }

    #[test]
    fn planted_violation_is_shrunk() {
        let opts = SweepOptions {
            violation: |sigma, bound| sigma >= bound,
            ..SweepOptions::default()
        };
        match sweep(&InstanceFamily::exhaustive(3, 2, 3), &opts) {
            Err(SweepError::Violation { reproduction, .. }) => {
                let r = &reproduction.instance;
                assert!(reproduction.bound.applicable);
                // every set still needs 0, A_1 still needs gcd 1
                assert_eq!(r.k(), 2);
                assert_eq!(r.to_vecs(), vec![vec![0, 1], vec![0]]);
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn find_tight_orders_records() {
        let tight = find_tight(
            &InstanceFamily::exhaustive(2, 2, 2),
            &SweepOptions::default(),
        )
        .unwrap();
        assert!(tight
            .iter()
            .any(|r| r.instance == seq(&[&[0, 1, 2], &[0, 1, 2]])));
        assert!(tight.windows(2).all(|w| w[0].max_sum() <= w[1].max_sum()));
        assert!(tight.iter().all(|r| r.slack == 0));
    }

    #[test]
    fn find_tight_without_filter_flags_inapplicable() {
        let mut family = InstanceFamily::exhaustive(2, 2, 2);
        family.applicable_only = false;
        let tight = find_tight(&family, &SweepOptions::default()).unwrap();
        assert!(tight.iter().any(|r| !r.bound.applicable));
    }
}
