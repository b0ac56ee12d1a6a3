//! Explicit representations `c = a_{j_1} + ... + a_{j_l}` with distinct,
//! increasing set indices, and the bipartite matching used to produce them.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::intset::IntSet;
use crate::sumset::{Engine, SigmaTable};

/// Certificate that `value ∈ Σ^l`: `elements[s] ∈ A_{indices[s]}`, indices
/// 1-based and strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationWitness {
    pub indices: Vec<usize>,
    pub elements: Vec<usize>,
    pub value: usize,
}

impl RepresentationWitness {
    /// Checks the witness against `sets` (indexed from 1) and the expected
    /// number of summands.
    pub fn validate(&self, sets: &[IntSet], l: usize) -> Result<()> {
        if self.indices.len() != l || self.elements.len() != l {
            return Err(domain(format!(
                "witness has {} indices and {} elements, expected {l}",
                self.indices.len(),
                self.elements.len()
            )));
        }
        if self.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain("witness indices are not strictly increasing"));
        }
        for (&i, &a) in self.indices.iter().zip(&self.elements) {
            if i == 0 || i > sets.len() {
                return Err(domain(format!("index {i} outside 1..={}", sets.len())));
            }
            if !sets[i - 1].contains(a) {
                return Err(domain(format!("{a} is not in A_{i}")));
            }
        }
        if self.elements.iter().sum::<usize>() != self.value {
            return Err(domain("witness elements do not sum to its value"));
        }
        Ok(())
    }
}

/// Prefix tables for answering repeated membership-with-witness queries on
/// one sequence.
pub struct WitnessFinder<'a> {
    sets: &'a [IntSet],
    l: usize,
    // tables[i] holds Σ^0..Σ^min(l, i) of the first i sets.
    tables: Vec<SigmaTable>,
}

impl<'a> WitnessFinder<'a> {
    pub fn new(engine: &Engine, sets: &'a [IntSet], l: usize) -> Result<Self> {
        let k = sets.len();
        if l == 0 || l > k {
            return Err(domain(format!("l = {l} outside 1..={k}")));
        }
        let tables = (0..=k)
            .map(|i| engine.sigma_table(&sets[..i], l.min(i)))
            .collect::<Result<_>>()?;
        Ok(Self { sets, l, tables })
    }

    /// `Σ^l` of the whole sequence.
    pub fn sigma(&self) -> &IntSet {
        self.tables[self.sets.len()].layer(self.l)
    }

    pub fn find(&self, c: usize) -> Result<Option<RepresentationWitness>> {
        if !self.sigma().contains(c) {
            return Ok(None);
        }
        let mut picks = Vec::with_capacity(self.l);
        let (mut j, mut rest) = (self.l, c);
        for i in (1..=self.sets.len()).rev() {
            if j == 0 {
                break;
            }
            let before = &self.tables[i - 1];
            if j < before.layers.len() && before.layer(j).contains(rest) {
                continue;
            }
            let a = self.sets[i - 1]
                .iter()
                .take_while(|&a| a <= rest)
                .find(|&a| before.layer(j - 1).contains(rest - a))
                .ok_or_else(|| Error::Internal("witness backtracking lost its path".into()))?;
            picks.push((i, a));
            rest -= a;
            j -= 1;
        }
        picks.reverse();
        Ok(Some(RepresentationWitness {
            indices: picks.iter().map(|p| p.0).collect(),
            elements: picks.iter().map(|p| p.1).collect(),
            value: c,
        }))
    }
}

/// Finds some representation of `c` in `Σ^l(sets)`, or `None` if `c` is not a
/// member. Empty members are allowed and never used.
pub fn find_witness(
    engine: &Engine,
    sets: &[IntSet],
    l: usize,
    c: usize,
) -> Result<Option<RepresentationWitness>> {
    WitnessFinder::new(engine, sets, l)?.find(c)
}

/// Maximum bipartite matching by augmenting paths. `adjacency[u]` lists the
/// right vertices (`< right_count`) adjacent to left vertex `u`. Returns, for
/// each left vertex, its matched right vertex.
pub fn maximum_matching(adjacency: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right_count];
    for u in 0..adjacency.len() {
        let mut seen = vec![false; right_count];
        augment(u, adjacency, &mut seen, &mut owner);
    }
    let mut matched = vec![None; adjacency.len()];
    for (v, o) in owner.iter().enumerate() {
        if let Some(u) = *o {
            matched[u] = Some(v);
        }
    }
    matched
}

fn augment(
    u: usize,
    adjacency: &[Vec<usize>],
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for &v in &adjacency[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if owner[v].is_none_or(|w| augment(w, adjacency, seen, owner)) {
            owner[v] = Some(u);
            return true;
        }
    }
    false
}
