//! Report types printed by the subcommands. Each one serializes to JSON and
//! to a line-oriented `key: value` text form.

use std::fmt::Write as _;

use rsumset::bounds::{freiman_bound, lev_smeliansky_bound};
use rsumset::verifier::{Summary, VerificationRecord};
use rsumset::witness::{RepresentationWitness, WitnessFinder};
use rsumset::{
    canonicalize, dgm_integer_bound, kneser_integer_bound, main_bound, BoundReport,
    CanonicalizationLog, Engine, Error, SetSequence,
};
use serde::{Deserialize, Serialize};

pub trait Emit: Serialize {
    fn to_text(&self, verbose: bool) -> String;

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report types serialize")
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeOutput {
    pub l: usize,
    pub cardinality: usize,
    pub elements: Vec<usize>,
}

impl ComputeOutput {
    pub fn new(engine: &Engine, seq: &SetSequence, l: usize) -> Result<Self, Error> {
        let sigma = engine.sigma_l(seq, l)?;
        Ok(Self {
            l,
            cardinality: sigma.len(),
            elements: sigma.to_vec(),
        })
    }
}

impl Emit for ComputeOutput {
    fn to_text(&self, _verbose: bool) -> String {
        format!(
            "l: {}\ncardinality: {}\nelements: {}\n",
            self.l,
            self.cardinality,
            join(&self.elements)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOutput {
    pub l: usize,
    pub sigma_size: i64,
    pub bound: BoundReport,
    /// Only for k = 2, on the canonical pair.
    pub lev_smeliansky: Option<i64>,
    /// Only for k = 2 with A_1 = A_2 after canonicalization.
    pub freiman: Option<i64>,
    pub kneser: i64,
    pub full_sum_size: i64,
    pub dgm: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<SetSequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonicalization: Option<CanonicalizationLog>,
}

impl BoundOutput {
    pub fn new(engine: &Engine, seq: &SetSequence, l: usize, verbose: bool) -> Result<Self, Error> {
        let (canon, log) = canonicalize(seq, l)?;
        // without a uniform shift the canonical form has a different Σ^l, so
        // the theorem is judged on the input as given
        let judged = if log.sigma_preserving { &canon } else { seq };
        let bound = main_bound(judged, l)?;

        let (lev_smeliansky, freiman) = if canon.k() == 2 {
            let (a, b) = (canon.member(1), canon.member(2));
            let ls = lev_smeliansky_bound(a, b).ok();
            let fr = if a == b { freiman_bound(a).ok() } else { None };
            (ls, fr)
        } else {
            (None, None)
        };

        Ok(Self {
            l,
            sigma_size: engine.sigma_l(seq, l)?.len() as i64,
            bound,
            lev_smeliansky,
            freiman,
            kneser: kneser_integer_bound(seq),
            full_sum_size: engine.sigma_l(seq, seq.k())?.len() as i64,
            dgm: dgm_integer_bound(seq, l)?,
            canonical: verbose.then(|| canon.clone()),
            canonicalization: verbose.then_some(log),
        })
    }
}

impl Emit for BoundOutput {
    fn to_text(&self, verbose: bool) -> String {
        let b = &self.bound;
        let mut s = String::new();
        let _ = writeln!(s, "l: {}", self.l);
        let _ = writeln!(s, "sigma_size: {}", self.sigma_size);
        let _ = writeln!(s, "term_max: {}", b.term_max);
        let _ = writeln!(s, "term_mult: {}", b.term_mult);
        let _ = writeln!(s, "delta0: {}", b.delta0);
        let _ = writeln!(s, "bound: {}", b.bound);
        let _ = writeln!(s, "applicable: {}", b.applicable);
        if let Some(reason) = &b.reason {
            let _ = writeln!(s, "reason: {reason}");
        }
        let _ = writeln!(s, "lev_smeliansky: {}", opt(&self.lev_smeliansky));
        let _ = writeln!(s, "freiman: {}", opt(&self.freiman));
        let _ = writeln!(s, "kneser: {}", self.kneser);
        let _ = writeln!(s, "full_sum_size: {}", self.full_sum_size);
        let _ = writeln!(s, "dgm: {}", self.dgm);
        if verbose {
            if let Some(c) = &self.canonical {
                let _ = writeln!(s, "canonical: {c}");
            }
            if let Some(log) = &self.canonicalization {
                let _ = writeln!(s, "offsets: {}", join(&log.offsets));
                let _ = writeln!(
                    s,
                    "permutation: {}",
                    join(log.permutation.iter().map(|i| i + 1))
                );
                let _ = writeln!(s, "divisor: {}", log.divisor);
                let _ = writeln!(s, "sigma_preserving: {}", log.sigma_preserving);
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOutput {
    pub l: usize,
    pub c: usize,
    pub member: bool,
    pub witness: Option<RepresentationWitness>,
}

impl WitnessOutput {
    pub fn new(engine: &Engine, seq: &SetSequence, l: usize, c: usize) -> Result<Self, Error> {
        let witness = WitnessFinder::new(engine, seq.sets(), l)?.find(c)?;
        Ok(Self {
            l,
            c,
            member: witness.is_some(),
            witness,
        })
    }
}

impl Emit for WitnessOutput {
    fn to_text(&self, _verbose: bool) -> String {
        let mut s = format!("l: {}\nc: {}\nmember: {}\n", self.l, self.c, self.member);
        match &self.witness {
            Some(w) => {
                let _ = writeln!(s, "indices: {}", join(&w.indices));
                let _ = writeln!(s, "elements: {}", join(&w.elements));
            }
            None => s.push_str("result: not a member\n"),
        }
        s
    }
}

fn summary_text(s: &mut String, summary: &Summary) {
    let f = &summary.family;
    let _ = writeln!(s, "k: {}", f.k);
    let _ = writeln!(s, "l: {}", f.l);
    let _ = writeln!(s, "max_element: {}", f.max_element);
    let _ = writeln!(s, "instances: {}", summary.instances);
    let _ = writeln!(s, "applicable: {}", summary.applicable);
    let _ = writeln!(s, "tight: {}", summary.tight);
    let _ = writeln!(s, "violations: {}", summary.violations);
    let _ = writeln!(s, "invariant_failures: {}", summary.invariant_failures);
    let _ = writeln!(s, "min_slack: {}", summary.min_slack);
    let _ = writeln!(s, "max_slack: {}", summary.max_slack);
}

fn record_text(s: &mut String, prefix: &str, r: &VerificationRecord) {
    let _ = writeln!(s, "{prefix}instance: {}", r.instance);
    let _ = writeln!(s, "{prefix}l: {}", r.l);
    let _ = writeln!(s, "{prefix}sigma_size: {}", r.sigma_size);
    let _ = writeln!(s, "{prefix}bound: {}", r.bound.bound);
    let _ = writeln!(s, "{prefix}applicable: {}", r.bound.applicable);
    let _ = writeln!(s, "{prefix}slack: {}", r.slack);
    let _ = writeln!(s, "{prefix}tight: {}", r.tight);
    let _ = writeln!(s, "{prefix}invariant_failures: {}", r.invariant_failures());
    for c in r.proof_invariants.iter().filter(|c| c.is_failure()) {
        let _ = writeln!(s, "{prefix}failed_check: {} {:?}", c.name, c.status);
    }
}

impl Emit for VerificationRecord {
    fn to_text(&self, _verbose: bool) -> String {
        let mut s = String::new();
        record_text(&mut s, "", self);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    #[serde(flatten)]
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tight_instances: Option<Vec<VerificationRecord>>,
}

impl Emit for VerifyOutput {
    fn to_text(&self, _verbose: bool) -> String {
        let mut s = String::new();
        summary_text(&mut s, &self.summary);
        for r in self.tight_instances.iter().flatten() {
            let _ = writeln!(s, "tight_instance: {}", r.instance);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationOutput {
    pub summary: Summary,
    pub record: VerificationRecord,
    pub reproduction: VerificationRecord,
    /// The reproduction in instance-file format.
    pub reproduction_file: String,
}

impl Emit for ViolationOutput {
    fn to_text(&self, _verbose: bool) -> String {
        let mut s = String::new();
        summary_text(&mut s, &self.summary);
        record_text(&mut s, "violation_", &self.record);
        record_text(&mut s, "reproduction_", &self.reproduction);
        for line in self.reproduction_file.lines() {
            let _ = writeln!(s, "reproduction_set: {line}");
        }
        s
    }
}
