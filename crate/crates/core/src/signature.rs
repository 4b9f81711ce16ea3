use std::cmp::Ordering;

use serde::Serialize;

use crate::graph::{Rank, RankedGraph};
use crate::matching::Matching;

/// Per-rank counts of matched applicants, compared lexicographically:
/// more rank-1 matches wins, then more rank-2 matches, and so on. Shorter
/// vectors compare as if zero-padded, so equality ignores trailing zeros.
#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(counts: Vec<usize>) -> Self {
        Signature(counts)
    }

    /// Signature of `m` in `graph`, of length `len` (normally the graph's
    /// maximum rank). Panics if `m` uses a non-edge or a rank above `len`.
    pub fn of(m: &Matching, graph: &RankedGraph, len: Rank) -> Self {
        let mut counts = vec![0; len];
        for (a, p) in m.pairs() {
            let r = graph.rank_of(a, p).expect("matched pair is an edge");
            counts[r - 1] += 1;
        }
        Signature(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        let at = |s: &Signature, i: usize| s.0.get(i).copied().unwrap_or(0);
        (0..n)
            .map(|i| at(self, i).cmp(&at(other, i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Signature {}

/// `Greater` means `s1` is the better signature.
pub fn signature_cmp(s1: &Signature, s2: &Signature) -> Ordering {
    s1.cmp(s2)
}
