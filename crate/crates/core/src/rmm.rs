//! Phased rank-maximal matching with reduced graphs.
//!
//! Phase `i` works on the reduced graph `G'_i`: it augments the previous
//! matching to a maximum one, labels every vertex Even/Odd/Unreachable,
//! freezes the Odd and Unreachable vertices (none of their edges of rank
//! above `i` will ever be added), drops Odd-Odd and Odd-Unreachable edges and
//! then admits the surviving rank `i + 1` edges. The maximum matchings of the
//! final reduced graph are exactly the rank-maximal matchings, which is what
//! the edge classification below relies on.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{ApplicantId, BipartiteGraph, PostId, Rank, RankedEdge, RankedGraph};
use crate::matching::{augment_to_maximum, label_vertices, max_matching_augment, EouLabels, Label, Matching};
use crate::signature::Signature;

/// Order in which augmenting paths are searched. The reduced graphs do not
/// depend on it; only the particular matching returned does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AugmentOrder {
    #[default]
    Canonical,
    Shuffled(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseRecord {
    pub phase: Rank,
    /// Edges of `G'_i` after the Odd-Odd / Odd-Unreachable deletion, sorted.
    pub reduced_edges: Vec<RankedEdge>,
    /// Maximum matching of `G'_i`.
    pub matching: Matching,
    /// Labels of `G'_i` with respect to `matching`.
    pub labels: EouLabels,
}

#[derive(Debug, Clone)]
pub struct RmmResult {
    pub matching: Matching,
    pub signature: Signature,
    pub phases: Vec<PhaseRecord>,
    final_reduced: BipartiteGraph,
}

pub fn rank_maximal(graph: &RankedGraph) -> RmmResult {
    rank_maximal_with(graph, AugmentOrder::Canonical)
}

pub fn rank_maximal_with(graph: &RankedGraph, order: AugmentOrder) -> RmmResult {
    let r = graph.max_rank();
    let (n_a, n_p) = (graph.n_applicants(), graph.n_posts());
    let mut rng = match order {
        AugmentOrder::Canonical => None,
        AugmentOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };

    let mut reduced: Vec<Vec<(PostId, Rank)>> = vec![Vec::new(); n_a];
    let mut frozen_a = vec![false; n_a];
    let mut frozen_p = vec![false; n_p];
    let mut matching = Matching::empty(n_a, n_p);
    let mut phases = Vec::with_capacity(r);

    for phase in 1..=r {
        for (a, list) in reduced.iter_mut().enumerate() {
            if frozen_a[a] {
                continue;
            }
            list.extend(
                graph
                    .neighbors(ApplicantId(a))
                    .iter()
                    .filter(|&&(p, rank)| rank == phase && !frozen_p[p.0]),
            );
        }

        let mut adj: Vec<Vec<PostId>> = reduced
            .iter()
            .map(|l| l.iter().map(|&(p, _)| p).collect())
            .collect();
        let mut starts: Vec<ApplicantId> = (0..n_a).map(ApplicantId).collect();
        if let Some(rng) = rng.as_mut() {
            for l in adj.iter_mut() {
                l.shuffle(rng);
            }
            starts.shuffle(rng);
        }
        let current = BipartiteGraph::from_adjacency(n_p, adj);
        augment_to_maximum(&current, &mut matching, &starts);
        let labels = label_vertices(&current, &matching);

        for (a, &l) in labels.applicant_labels().iter().enumerate() {
            frozen_a[a] |= l.is_saturated();
        }
        for (p, &l) in labels.post_labels().iter().enumerate() {
            frozen_p[p] |= l.is_saturated();
        }
        for (a, list) in reduced.iter_mut().enumerate() {
            let la = labels.applicant(ApplicantId(a));
            list.retain(|&(p, _)| {
                let lp = labels.post(p);
                !(la.is_saturated() && lp.is_saturated() && (la == Label::Odd || lp == Label::Odd))
            });
        }

        let mut reduced_edges: Vec<RankedEdge> = reduced
            .iter()
            .enumerate()
            .flat_map(|(a, l)| {
                l.iter().map(move |&(post, rank)| RankedEdge {
                    applicant: ApplicantId(a),
                    post,
                    rank,
                })
            })
            .collect();
        reduced_edges.sort();
        phases.push(PhaseRecord {
            phase,
            reduced_edges,
            matching: matching.clone(),
            labels,
        });
    }

    let final_reduced = BipartiteGraph::from_adjacency(
        n_p,
        reduced
            .iter()
            .map(|l| l.iter().map(|&(p, _)| p).collect())
            .collect(),
    );
    RmmResult {
        signature: Signature::of(&matching, graph, r),
        matching,
        phases,
        final_reduced,
    }
}

fn maximum_size(graph: &BipartiteGraph, seed: &Matching) -> usize {
    max_matching_augment(graph, seed)
        .expect("seed lies in the graph")
        .len()
}

impl RmmResult {
    pub fn max_rank(&self) -> Rank {
        self.phases.len()
    }

    /// The reduced graph after the last phase.
    pub fn final_reduced(&self) -> &BipartiteGraph {
        &self.final_reduced
    }

    /// `(a, p)` lies in at least one rank-maximal matching.
    pub fn is_rank_maximal_pair(&self, a: ApplicantId, p: PostId) -> bool {
        if !self.final_reduced.contains_edge(a, p) {
            return false;
        }
        if self.matching.contains(a, p) {
            return true;
        }
        let mut seed = self.matching.clone();
        seed.unlink_applicant(a);
        seed.unlink_post(p);
        maximum_size(&self.final_reduced.without_vertices(a, p), &seed) + 1 == self.matching.len()
    }

    /// `(a, p)` lies in every rank-maximal matching: without the edge the
    /// final reduced graph loses a unit of maximum matching size.
    pub fn is_forced_pair(&self, a: ApplicantId, p: PostId) -> bool {
        if !self.matching.contains(a, p) {
            return false;
        }
        let mut seed = self.matching.clone();
        seed.unlink_applicant(a);
        maximum_size(&self.final_reduced.without_edge(a, p), &seed) < self.matching.len()
    }

    /// First phase in which `a` is Odd or Unreachable.
    pub fn applicant_saturation_phase(&self, a: ApplicantId) -> Option<Rank> {
        self.phases
            .iter()
            .find(|ph| ph.labels.applicant(a).is_saturated())
            .map(|ph| ph.phase)
    }

    /// First phase in which `a` or `p` is Odd or Unreachable, else `r + 1`.
    pub fn critical_rank_of(&self, a: ApplicantId, p: PostId) -> Rank {
        self.phases
            .iter()
            .find(|ph| ph.labels.applicant(a).is_saturated() || ph.labels.post(p).is_saturated())
            .map_or(self.max_rank() + 1, |ph| ph.phase)
    }
}

pub fn edge_in_some_rmm(graph: &RankedGraph, a: ApplicantId, p: PostId) -> Result<bool> {
    graph.check_edge(a, p)?;
    Ok(rank_maximal(graph).is_rank_maximal_pair(a, p))
}

pub fn edge_in_every_rmm(graph: &RankedGraph, a: ApplicantId, p: PostId) -> Result<bool> {
    graph.check_edge(a, p)?;
    Ok(rank_maximal(graph).is_forced_pair(a, p))
}

/// Posts that are Odd or Unreachable in the rank-1 graph once `a1` is
/// removed.
pub fn f_posts(graph: &RankedGraph, a1: ApplicantId) -> Result<BTreeSet<PostId>> {
    graph.check_applicant(a1)?;
    let layer = graph.with_applicant_edges(a1, &[])?.rank_layer(1);
    let m = max_matching_augment(&layer, &Matching::empty(layer.n_applicants(), layer.n_posts()))?;
    let labels = label_vertices(&layer, &m);
    Ok((0..graph.n_posts())
        .map(PostId)
        .filter(|&p| labels.post(p).is_saturated())
        .collect())
}

/// Critical rank of the non-edge `(a, p)` with respect to `base`.
pub fn critical_rank(base: &RankedGraph, a: ApplicantId, p: PostId) -> Result<Rank> {
    base.check_applicant(a)?;
    base.check_post(p)?;
    if base.has_edge(a, p) {
        return Err(Error::EdgeAlreadyPresent {
            applicant: a.0,
            post: p.0,
        });
    }
    Ok(rank_maximal(base).critical_rank_of(a, p))
}

/// Critical ranks of `(a, p')` for every post `p'` that `a` is not adjacent
/// to, from a single phased run.
pub fn critical_ranks_all(base: &RankedGraph, a: ApplicantId) -> Result<BTreeMap<PostId, Rank>> {
    base.check_applicant(a)?;
    let run = rank_maximal(base);
    Ok((0..base.n_posts())
        .map(PostId)
        .filter(|&p| !base.has_edge(a, p))
        .map(|p| (p, run.critical_rank_of(a, p)))
        .collect())
}

/// First phase in which `a` stops being Even; `r` if it never does.
pub fn unreachable_phase(base: &RankedGraph, a: ApplicantId) -> Result<Rank> {
    base.check_applicant(a)?;
    let run = rank_maximal(base);
    Ok(run.applicant_saturation_phase(a).unwrap_or(run.max_rank()))
}
