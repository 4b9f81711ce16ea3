//! Brute-force ground truth for small instances.
//!
//! Nothing here uses the phased algorithm: matchings are enumerated by
//! assigning each applicant to one of its posts or to nothing, and every
//! question is answered from that enumeration.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{ApplicantId, PostId, Rank, RankedGraph};
use crate::instance::{Instance, StrictFullList, TrueRank};
use crate::matching::Matching;
use crate::signature::Signature;

/// Size guards. Exceeding one is an error, never a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_applicants: usize,
    pub max_posts: usize,
    /// Bound on `|P|` for the factorial search over manipulator lists.
    pub max_permuted_posts: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_applicants: 9,
            max_posts: 9,
            max_permuted_posts: 6,
        }
    }
}

impl OracleLimits {
    fn check(&self, graph: &RankedGraph) -> Result<()> {
        if graph.n_applicants() > self.max_applicants || graph.n_posts() > self.max_posts {
            return Err(Error::GuardExceeded(format!(
                "{} applicants / {} posts, limit {} / {}",
                graph.n_applicants(),
                graph.n_posts(),
                self.max_applicants,
                self.max_posts
            )));
        }
        Ok(())
    }
}

/// All rank-maximal matchings and their common signature.
#[derive(Debug, Clone)]
pub struct RmmSet {
    pub matchings: Vec<Matching>,
    pub signature: Signature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    InEvery,
    InSomeNotAll,
    InNone,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeClass::InEvery => "every",
            EdgeClass::InSomeNotAll => "some",
            EdgeClass::InNone => "none",
        })
    }
}

impl RmmSet {
    pub fn classify(&self, a: ApplicantId, p: PostId) -> EdgeClass {
        let hits = self.matchings.iter().filter(|m| m.contains(a, p)).count();
        match hits {
            0 => EdgeClass::InNone,
            n if n == self.matchings.len() => EdgeClass::InEvery,
            _ => EdgeClass::InSomeNotAll,
        }
    }

    /// Distinct partners of `a` across all rank-maximal matchings.
    pub fn partners(&self, a: ApplicantId) -> BTreeSet<Option<PostId>> {
        self.matchings.iter().map(|m| m.post_of(a)).collect()
    }
}

struct Enumeration<'g> {
    graph: &'g RankedGraph,
    taken: Vec<bool>,
    assign: Vec<Option<PostId>>,
    counts: Vec<usize>,
    best: Option<Vec<usize>>,
    found: Vec<Vec<Option<PostId>>>,
}

impl Enumeration<'_> {
    fn visit(&mut self, a: usize) {
        if a == self.assign.len() {
            let better = match &self.best {
                None => Some(true),
                Some(b) if self.counts > *b => Some(true),
                Some(b) if self.counts == *b => Some(false),
                _ => None,
            };
            match better {
                Some(true) => {
                    self.best = Some(self.counts.clone());
                    self.found.clear();
                    self.found.push(self.assign.clone());
                }
                Some(false) => self.found.push(self.assign.clone()),
                None => {}
            }
            return;
        }
        self.assign[a] = None;
        self.visit(a + 1);
        for &(p, rank) in self.graph.neighbors(ApplicantId(a)) {
            if self.taken[p.0] {
                continue;
            }
            self.taken[p.0] = true;
            self.assign[a] = Some(p);
            self.counts[rank - 1] += 1;
            self.visit(a + 1);
            self.counts[rank - 1] -= 1;
            self.assign[a] = None;
            self.taken[p.0] = false;
        }
    }
}

/// Every matching of `graph` with the best signature.
pub fn enumerate_rmm(graph: &RankedGraph, limits: &OracleLimits) -> Result<RmmSet> {
    limits.check(graph)?;
    let (n_a, n_p) = (graph.n_applicants(), graph.n_posts());
    let mut e = Enumeration {
        graph,
        taken: vec![false; n_p],
        assign: vec![None; n_a],
        counts: vec![0; graph.max_rank()],
        best: None,
        found: Vec::new(),
    };
    e.visit(0);
    let matchings = e
        .found
        .into_iter()
        .map(|assign| {
            Matching::from_pairs(
                n_a,
                n_p,
                assign
                    .into_iter()
                    .enumerate()
                    .filter_map(|(a, p)| p.map(|p| (ApplicantId(a), p))),
            )
            .expect("enumerated assignment is a matching")
        })
        .sorted()
        .collect();
    Ok(RmmSet {
        matchings,
        signature: Signature::new(e.best.unwrap_or_default()),
    })
}

pub fn oracle_edge_class(graph: &RankedGraph, a: ApplicantId, p: PostId, limits: &OracleLimits) -> Result<EdgeClass> {
    graph.check_edge(a, p)?;
    Ok(enumerate_rmm(graph, limits)?.classify(a, p))
}

/// Class of the non-edge `(a, p)` when inserted at rank `i` into the
/// rank-`i` truncation of `base`, for `i = 1..=r`.
pub fn critical_rank_profile(
    base: &RankedGraph,
    a: ApplicantId,
    p: PostId,
    limits: &OracleLimits,
) -> Result<Vec<EdgeClass>> {
    if base.has_edge(a, p) {
        return Err(Error::EdgeAlreadyPresent {
            applicant: a.0,
            post: p.0,
        });
    }
    (1..=base.max_rank())
        .map(|i| {
            let h = base.truncated(i).with_edge(a, p, i)?;
            Ok(enumerate_rmm(&h, limits)?.classify(a, p))
        })
        .collect()
}

/// The smallest rank at which the inserted edge is no longer in every
/// rank-maximal matching (`r + 1` if it always is). Also checks that the
/// edge is in no rank-maximal matching at any higher rank.
pub fn oracle_critical_rank(base: &RankedGraph, a: ApplicantId, p: PostId, limits: &OracleLimits) -> Result<Rank> {
    let profile = critical_rank_profile(base, a, p, limits)?;
    let c = profile
        .iter()
        .position(|&cls| cls != EdgeClass::InEvery)
        .map_or(profile.len() + 1, |i| i + 1);
    if let Some(i) = (c + 1..=profile.len()).find(|&i| profile[i - 1] != EdgeClass::InNone) {
        return Err(Error::OracleInconsistent(format!(
            "({a}, {p}) has critical rank {c} but is still matched at rank {i}"
        )));
    }
    Ok(c)
}

/// Worst outcome for `a` (in `truth`'s ranks) over all rank-maximal
/// matchings of `graph`, together with every partner that occurs.
pub fn worst_outcome(
    truth: &Instance,
    a: ApplicantId,
    graph: &RankedGraph,
    limits: &OracleLimits,
) -> Result<(TrueRank, BTreeSet<Option<PostId>>)> {
    let set = enumerate_rmm(graph, limits)?;
    let partners = set.partners(a);
    let worst = partners
        .iter()
        .map(|&p| truth.true_rank(a, p))
        .max()
        .unwrap_or(TrueRank::Unmatched);
    Ok((worst, partners))
}

#[derive(Debug, Clone)]
pub struct ListOutcome {
    pub list: StrictFullList,
    pub worst: TrueRank,
    pub partners: BTreeSet<Option<PostId>>,
}

#[derive(Debug, Clone)]
pub struct MinMaxSearch {
    /// Best achievable worst-case true rank.
    pub optimum: TrueRank,
    /// Every list achieving it, in lexicographic order of post indices.
    pub optimal: Vec<ListOutcome>,
    pub lists_examined: usize,
}

/// Tries every strict full list for `a1`.
pub fn exhaustive_min_max(inst: &Instance, a1: ApplicantId, limits: &OracleLimits) -> Result<MinMaxSearch> {
    inst.graph().check_applicant(a1)?;
    if inst.n_posts() > limits.max_permuted_posts {
        return Err(Error::GuardExceeded(format!(
            "{} posts, list search limit {}",
            inst.n_posts(),
            limits.max_permuted_posts
        )));
    }
    limits.check(inst.graph())?;
    let lists: Vec<Vec<PostId>> = inst.post_ids().permutations(inst.n_posts()).collect();
    let outcomes = lists
        .into_par_iter()
        .map(|order| {
            let list = StrictFullList::new(inst, a1, order)?;
            let h = inst.replace_preferences(&list)?;
            let (worst, partners) = worst_outcome(inst, a1, h.graph(), limits)?;
            Ok(ListOutcome { list, worst, partners })
        })
        .collect::<Result<Vec<_>>>()?;
    let examined = outcomes.len();
    let optimum = outcomes
        .iter()
        .map(|o| o.worst)
        .min()
        .unwrap_or(TrueRank::Unmatched);
    Ok(MinMaxSearch {
        optimum,
        optimal: outcomes.into_iter().filter(|o| o.worst == optimum).collect(),
        lists_examined: examined,
    })
}
