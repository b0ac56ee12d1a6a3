//! Lower bounds on restricted sumsets of integer sets.
//!
//! The main bound, for `0 ∈ A_1 ∩ ... ∩ A_k`, `gcd(A_1) = 1` and
//! `max A_1 ≥ ... ≥ max A_{l-1} ≥ max(A_l ∪ ... ∪ A_k)`:
//!
//! ```text
//! |Σ^l| ≥ min{ Σ_{i<l} max A_i + |T|,  Σ_a min{l, mult(a)} + |T| − l − δ0 }
//! ```
//!
//! where `T = A_l ∪ ... ∪ A_k` and `δ0 = 1` exactly when all of
//! `max A_1, ..., max A_{l-1}, max T` coincide. The two-set (Lev–Smeliansky),
//! diagonal (Freiman), Kneser and DeVos–Goddyn–Mohar bounds are provided in
//! their integer forms, where every stabilizer is trivial.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intset::{multiplicity_profile, IntSet, SetSequence};

/// Both terms of the main bound and whether its hypotheses hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub term_max: i64,
    pub term_mult: i64,
    pub delta0: u8,
    pub bound: i64,
    pub applicable: bool,
    /// Why the hypotheses fail; `None` when applicable.
    pub reason: Option<String>,
}

/// `δ0`; for `l = 1` the equality chain is empty and the value is 1.
pub fn delta0(seq: &SetSequence, l: usize) -> Result<u8> {
    seq.check_level(l)?;
    let tail_max = seq.union_range(l, seq.k()).max();
    Ok(seq.sets()[..l - 1].iter().all(|s| s.max() == tail_max) as u8)
}

/// Checks the main bound's hypotheses; `Err(reason)` names the first that
/// fails.
pub fn applicability(seq: &SetSequence, l: usize) -> Result<Result<(), String>> {
    seq.check_level(l)?;
    if let Some(i) = seq.sets().iter().position(|s| !s.contains(0)) {
        return Ok(Err(format!("0 not in A_{}", i + 1)));
    }
    let g = seq.member(1).gcd()?;
    if g != 1 {
        return Ok(Err(format!("gcd(A_1)={g}")));
    }
    let maxima = seq.maxima();
    for i in 1..l - 1 {
        if maxima[i - 1] < maxima[i] {
            return Ok(Err(format!("max A_{} < max A_{}", i, i + 1)));
        }
    }
    if l >= 2 {
        let tail_max = seq.union_range(l, seq.k()).max().unwrap_or(0);
        if maxima[l - 2] < tail_max {
            return Ok(Err(format!(
                "max A_{} < max of A_{}..A_{}",
                l - 1,
                l,
                seq.k()
            )));
        }
    }
    Ok(Ok(()))
}

/// Evaluates the main bound. Applicability is reported, not enforced.
pub fn main_bound(seq: &SetSequence, l: usize) -> Result<BoundReport> {
    seq.check_level(l)?;
    let tail = seq.union_range(l, seq.k()).len() as i64;
    let head_max: i64 = seq.maxima()[..l - 1].iter().map(|&m| m as i64).sum();
    let capped = multiplicity_profile(seq, 1, seq.k())?.capped_sum(l) as i64;
    let delta0 = delta0(seq, l)?;

    let term_max = head_max + tail;
    let term_mult = capped + tail - l as i64 - delta0 as i64;
    let reason = applicability(seq, l)?.err();
    Ok(BoundReport {
        term_max,
        term_mult,
        delta0,
        bound: term_max.min(term_mult),
        applicable: reason.is_none(),
        reason,
    })
}

/// `|A + B| ≥ min{max A + |B|, |A| + 2|B| − 2 − δ}`, `δ = [max A = max B]`,
/// for `0 ∈ A ∩ B`, `gcd(A) = 1`, `max A ≥ max B`.
pub fn lev_smeliansky_bound(a: &IntSet, b: &IntSet) -> Result<i64> {
    if !a.contains(0) || !b.contains(0) {
        return Err(Error::NotApplicable("0 must lie in both sets".into()));
    }
    if a.gcd()? != 1 {
        return Err(Error::NotApplicable("gcd(A) must be 1".into()));
    }
    let (max_a, max_b) = (a.max().unwrap_or(0), b.max().unwrap_or(0));
    if max_a < max_b {
        return Err(Error::NotApplicable("max A must be at least max B".into()));
    }
    let delta = (max_a == max_b) as i64;
    let (na, nb) = (a.len() as i64, b.len() as i64);
    Ok((max_a as i64 + nb).min(na + 2 * nb - 2 - delta))
}

/// `|A + A| ≥ min{max A + |A|, 3|A| − 3}` for `0 ∈ A`, `gcd(A) = 1`.
///
/// The bare `3|A| − 3` fails for short progressions such as `{0, 1, 2}`;
/// this is the diagonal of [`lev_smeliansky_bound`].
pub fn freiman_bound(a: &IntSet) -> Result<i64> {
    if !a.contains(0) {
        return Err(Error::NotApplicable("0 must lie in A".into()));
    }
    if a.gcd()? != 1 {
        return Err(Error::NotApplicable("gcd(A) must be 1".into()));
    }
    let n = a.len() as i64;
    Ok((a.max().unwrap_or(0) as i64 + n).min(3 * n - 3))
}

/// `|A_1 + ... + A_k| ≥ Σ|A_i| − (k − 1)`.
pub fn kneser_integer_bound(seq: &SetSequence) -> i64 {
    seq.sets().iter().map(|s| s.len() as i64).sum::<i64>() - (seq.k() as i64 - 1)
}

/// `|Σ^l| ≥ 1 − l + Σ_a min{l, mult(a)}`.
pub fn dgm_integer_bound(seq: &SetSequence, l: usize) -> Result<i64> {
    seq.check_level(l)?;
    let capped = multiplicity_profile(seq, 1, seq.k())?.capped_sum(l) as i64;
    Ok(1 - l as i64 + capped)
}
