//! Classification of generating sequences and exhaustive verification
//! against the exact oracle.
//!
//! Three certificates decide the question without search: a constant run
//! of `k` symbols or a doubled sequence rule the induced walk out, and
//! pairwise distinct `(k-1)`-windows guarantee it. Everything else is
//! `Undetermined` and only the oracle can tell.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::generated_subdigraph;
use crate::limits::Limits;
use crate::seq::{Alphabet, CyclicSequence};
use crate::watchman::{enumerate_min_walks, induced_walk_in, solve_min_walk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    ProvablyNotWatchman,
    ProvablyWatchman,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Reason {
    ConstantRun,
    DoubledSequence,
    DistinctWindows,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: Reason,
}

impl Classification {
    pub fn from_reason(reason: Reason) -> Self {
        let verdict = match reason {
            Reason::ConstantRun | Reason::DoubledSequence => Verdict::ProvablyNotWatchman,
            Reason::DistinctWindows => Verdict::ProvablyWatchman,
            Reason::None => Verdict::Undetermined,
        };
        Classification { verdict, reason }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.verdict, self.reason)
    }
}

fn require_order(d: &CyclicSequence, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidOrder { got: 0, min: 1 });
    }
    if d.len() < k {
        return Err(Error::ShorterThanOrder {
            len: d.len(),
            order: k,
        });
    }
    Ok(())
}

/// Some cyclic window of `k` symbols is constant, the seam included.
pub fn has_constant_run(d: &CyclicSequence, k: usize) -> Result<bool> {
    require_order(d, k)?;
    Ok((0..d.len()).any(|i| (1..k).all(|j| d.at(i + j) == d.at(i))))
}

/// Like [`has_constant_run`] but ignoring windows that cross the seam.
pub fn has_linear_constant_run(d: &CyclicSequence, k: usize) -> Result<bool> {
    require_order(d, k)?;
    Ok(d.symbols().windows(k).any(|w| w.iter().all(|&s| s == w[0])))
}

/// `d` is `x x` for some `x` with `|x| >= k`.
pub fn is_doubled(d: &CyclicSequence, k: usize) -> bool {
    let n = d.len();
    n.is_multiple_of(2) && n / 2 >= k && d.symbols()[..n / 2] == d.symbols()[n / 2..]
}

/// All `|d|` cyclic windows of length `k-1` are pairwise distinct.
pub fn has_distinct_windows(d: &CyclicSequence, k: usize) -> Result<bool> {
    require_order(d, k)?;
    let mut seen = HashSet::with_capacity(d.len());
    Ok((0..d.len()).all(|i| seen.insert(d.window(i, k - 1))))
}

/// Negative certificates first: constant run, then doubled, then distinct
/// windows.
pub fn classify(d: &CyclicSequence, k: usize) -> Result<Classification> {
    let reason = if has_constant_run(d, k)? {
        Reason::ConstantRun
    } else if is_doubled(d, k) {
        Reason::DoubledSequence
    } else if has_distinct_windows(d, k)? {
        Reason::DistinctWindows
    } else {
        Reason::None
    };
    Ok(Classification::from_reason(reason))
}

/// Outcome of checking one generating sequence against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub sequence: String,
    pub alphabet: usize,
    pub order: usize,
    pub classification: Classification,
    pub vertex_count: usize,
    pub induced_length: usize,
    pub oracle_optimum: usize,
    /// The induced walk is a minimum closed dominating walk.
    pub is_watchman: bool,
    /// Minimum walks, counted once per rotation class.
    pub min_walk_count: usize,
    /// A constant run exists only across the seam of the sequence.
    pub seam_only_run: bool,
}

impl VerificationRecord {
    /// Invariants a record must satisfy for the certificates to be sound.
    /// An empty list is the expected outcome.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.is_watchman && self.induced_length != self.oracle_optimum {
            out.push("is_watchman but induced length differs from optimum".to_string());
        }
        match self.classification.verdict {
            Verdict::ProvablyWatchman => {
                if !self.is_watchman {
                    out.push("distinct windows but induced walk is not minimum".to_string());
                }
                if self.induced_length != self.sequence.chars().count() {
                    out.push("distinct windows but induced length differs from |D|".to_string());
                }
                if self.vertex_count != self.alphabet * self.sequence.chars().count() {
                    out.push("distinct windows but vertex count differs from a*|D|".to_string());
                }
            }
            // A one-symbol sequence induces the stationary walk, which the
            // negative certificates do not speak about.
            Verdict::ProvablyNotWatchman if self.is_watchman && self.induced_length > 0 => {
                out.push(format!(
                    "{} certificate but induced walk is minimum",
                    self.classification.reason
                ));
            }
            _ => {}
        }
        out
    }
}

/// Builds the generated subdigraph, the induced walk and the exact
/// optimum, and decides whether the induced walk is a watchman's walk.
///
/// The decision is made twice, by length comparison and by membership of
/// the induced walk's canonical rotation in the enumerated minimum set;
/// the two must agree.
pub fn verify(d: &CyclicSequence, k: usize, limits: &Limits) -> Result<VerificationRecord> {
    let classification = classify(d, k)?;
    let graph = generated_subdigraph(d, k)?;
    let walk = induced_walk_in(&graph, d, k)?;
    let solved = solve_min_walk(&graph, limits)?;
    let minimum = enumerate_min_walks(&graph, solved.optimum_length, limits)?;

    let by_length = graph.is_closed_dominating_walk(&walk) && walk.len() == solved.optimum_length;
    let by_membership = minimum.binary_search(&walk.canonical()).is_ok();
    assert_eq!(
        by_length, by_membership,
        "length and membership tests disagree for {d} (k={k})"
    );

    Ok(VerificationRecord {
        sequence: d.to_string(),
        alphabet: d.alphabet().size(),
        order: k,
        classification,
        vertex_count: graph.vertex_count(),
        induced_length: walk.len(),
        oracle_optimum: solved.optimum_length,
        is_watchman: by_length,
        min_walk_count: minimum.len(),
        seam_only_run: has_constant_run(d, k)? && !has_linear_constant_run(d, k)?,
    })
}

/// Necklaces (least rotations) of length `n` in lexicographic order.
/// `visit` returns false to stop early; the return value reports whether
/// enumeration ran to completion.
pub fn for_each_necklace(
    alphabet: Alphabet,
    n: usize,
    visit: &mut dyn FnMut(&[u8]) -> bool,
) -> bool {
    fn extend(
        t: usize,
        p: usize,
        n: usize,
        a: u8,
        word: &mut [u8],
        visit: &mut dyn FnMut(&[u8]) -> bool,
    ) -> bool {
        if t > n {
            return !n.is_multiple_of(p) || visit(&word[1..]);
        }
        word[t] = word[t - p];
        if !extend(t + 1, p, n, a, word, visit) {
            return false;
        }
        for c in word[t - p] + 1..a {
            word[t] = c;
            if !extend(t + 1, t, n, a, word, visit) {
                return false;
            }
        }
        true
    }
    if n == 0 {
        return true;
    }
    let mut word = vec![0u8; n + 1];
    extend(1, 1, n, alphabet.size() as u8, &mut word, visit)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SweepConfig {
    /// Maximum number of sequences to verify.
    pub budget: usize,
    /// Only verify the rotation class of this sequence.
    pub only: Option<CyclicSequence>,
}

pub const DEFAULT_SWEEP_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepEntry {
    Verified(VerificationRecord),
    Skipped {
        sequence: String,
        order: usize,
        skipped: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepSummary {
    pub alphabet: usize,
    pub order: usize,
    pub lengths: [usize; 2],
    pub verified: usize,
    pub skipped: usize,
    pub truncated: bool,
    /// `"<verdict>/<is_watchman>"` to count.
    pub cells: BTreeMap<String, usize>,
    pub seam_only_runs: usize,
    pub seam_only_runs_watchman: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn records(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.entries.iter().filter_map(|e| match e {
            SweepEntry::Verified(r) => Some(r),
            SweepEntry::Skipped { .. } => None,
        })
    }

    /// One JSON object per entry, then `{"summary": ...}`.
    pub fn write_json_lines(&self, out: &mut dyn Write) -> Result<()> {
        for entry in &self.entries {
            serde_json::to_writer(&mut *out, entry)?;
            out.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut *out, &serde_json::json!({ "summary": self.summary }))?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record([
            "sequence",
            "length",
            "verdict",
            "reason",
            "induced_length",
            "oracle_optimum",
            "is_watchman",
        ])
        .map_err(io)?;
        for r in self.records() {
            w.write_record([
                r.sequence.clone(),
                r.sequence.chars().count().to_string(),
                r.classification.verdict.to_string(),
                r.classification.reason.to_string(),
                r.induced_length.to_string(),
                r.oracle_optimum.to_string(),
                r.is_watchman.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Verifies one representative of every rotation class of every sequence
/// with length in `lengths`. Sequences whose subdigraph exceeds the oracle
/// cap are recorded as skipped; exceeding the budget truncates the sweep.
pub fn sweep(
    a: usize,
    k: usize,
    lengths: RangeInclusive<usize>,
    config: &SweepConfig,
    limits: &Limits,
) -> Result<SweepReport> {
    let alphabet = Alphabet::new(a)?;
    if k == 0 {
        return Err(Error::InvalidOrder { got: 0, min: 1 });
    }
    let (lo, hi) = (*lengths.start(), *lengths.end());
    if lo < k || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "lengths {lo}..{hi} must be non-empty and at least the order {k}"
        )));
    }
    let only = config.only.as_ref().map(CyclicSequence::least_rotation);

    let mut candidates = Vec::new();
    let mut truncated = false;
    for n in lengths {
        let complete = for_each_necklace(alphabet, n, &mut |word| {
            if only.as_ref().is_some_and(|o| o.symbols() != word) {
                return true;
            }
            if candidates.len() >= config.budget {
                truncated = true;
                return false;
            }
            candidates.push(CyclicSequence::new(alphabet, word.to_vec()).expect("valid symbols"));
            true
        });
        if !complete {
            break;
        }
    }

    let entries = candidates
        .par_iter()
        .map(|d| match verify(d, k, limits) {
            Ok(record) => Ok(SweepEntry::Verified(record)),
            Err(e) if e.is_resource() => Ok(SweepEntry::Skipped {
                sequence: d.to_string(),
                order: k,
                skipped: e.to_string(),
            }),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;

    let mut summary = SweepSummary {
        alphabet: a,
        order: k,
        lengths: [lo, hi],
        truncated,
        ..SweepSummary::default()
    };
    for entry in &entries {
        match entry {
            SweepEntry::Verified(r) => {
                summary.verified += 1;
                let cell = format!("{}/{}", r.classification.verdict, r.is_watchman);
                *summary.cells.entry(cell).or_default() += 1;
                if r.seam_only_run {
                    summary.seam_only_runs += 1;
                    summary.seam_only_runs_watchman += r.is_watchman as usize;
                }
                summary.violations += !r.violations().is_empty() as usize;
            }
            SweepEntry::Skipped { .. } => summary.skipped += 1,
        }
    }
    Ok(SweepReport { entries, summary })
}
