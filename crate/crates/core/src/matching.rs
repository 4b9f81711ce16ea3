//! Matchings, augmenting-path search and the Even/Odd/Unreachable partition.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ApplicantId, BipartiteGraph, PostId};

/// A matching with partner maps in both directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    post_of: Vec<Option<PostId>>,
    applicant_of: Vec<Option<ApplicantId>>,
}

impl Matching {
    pub fn empty(n_applicants: usize, n_posts: usize) -> Self {
        Matching {
            post_of: vec![None; n_applicants],
            applicant_of: vec![None; n_posts],
        }
    }

    /// Builds a matching from pairs; fails if a vertex appears twice.
    pub fn from_pairs<I>(n_applicants: usize, n_posts: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ApplicantId, PostId)>,
    {
        let mut m = Matching::empty(n_applicants, n_posts);
        for (a, p) in pairs {
            if a.0 >= n_applicants {
                return Err(Error::UnknownApplicant(a.to_string()));
            }
            if p.0 >= n_posts {
                return Err(Error::UnknownPost(p.to_string()));
            }
            if m.post_of[a.0].is_some() || m.applicant_of[p.0].is_some() {
                return Err(Error::InvalidParameter(format!(
                    "vertex of ({a}, {p}) is already matched"
                )));
            }
            m.link(a, p);
        }
        Ok(m)
    }

    pub fn n_applicants(&self) -> usize {
        self.post_of.len()
    }

    pub fn n_posts(&self) -> usize {
        self.applicant_of.len()
    }

    pub fn len(&self) -> usize {
        self.post_of.iter().filter(|p| p.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn post_of(&self, a: ApplicantId) -> Option<PostId> {
        self.post_of[a.0]
    }

    pub fn applicant_of(&self, p: PostId) -> Option<ApplicantId> {
        self.applicant_of[p.0]
    }

    pub fn contains(&self, a: ApplicantId, p: PostId) -> bool {
        self.post_of.get(a.0).copied().flatten() == Some(p)
    }

    /// Matched pairs in applicant order.
    pub fn pairs(&self) -> impl Iterator<Item = (ApplicantId, PostId)> + '_ {
        self.post_of
            .iter()
            .enumerate()
            .filter_map(|(a, p)| p.map(|p| (ApplicantId(a), p)))
    }

    pub(crate) fn link(&mut self, a: ApplicantId, p: PostId) {
        self.post_of[a.0] = Some(p);
        self.applicant_of[p.0] = Some(a);
    }

    pub(crate) fn unlink_applicant(&mut self, a: ApplicantId) {
        if let Some(p) = self.post_of[a.0].take() {
            self.applicant_of[p.0] = None;
        }
    }

    pub(crate) fn unlink_post(&mut self, p: PostId) {
        if let Some(a) = self.applicant_of[p.0].take() {
            self.post_of[a.0] = None;
        }
    }

    /// Fails unless every matched pair is an edge of `graph`.
    pub fn check_within(&self, graph: &BipartiteGraph) -> Result<()> {
        if self.n_applicants() != graph.n_applicants() || self.n_posts() != graph.n_posts() {
            return Err(Error::InvalidParameter(
                "matching and edge set have different vertex counts".into(),
            ));
        }
        match self.pairs().find(|&(a, p)| !graph.contains_edge(a, p)) {
            Some((a, p)) => Err(Error::MatchingOutsideGraph {
                applicant: a.0,
                post: p.0,
            }),
            None => Ok(()),
        }
    }
}

/// Breadth-first search for an augmenting path from the free applicant
/// `start`; flips it and returns `true` when one exists.
fn augment_from(graph: &BipartiteGraph, m: &mut Matching, start: ApplicantId) -> bool {
    let mut reached_from: Vec<Option<ApplicantId>> = vec![None; graph.n_posts()];
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for &p in graph.neighbors(a) {
            if reached_from[p.0].is_some() || m.post_of(a) == Some(p) {
                continue;
            }
            reached_from[p.0] = Some(a);
            match m.applicant_of(p) {
                Some(next) => queue.push_back(next),
                None => {
                    // walk back to `start`, shifting every applicant one post along
                    let mut post = p;
                    loop {
                        let owner = reached_from[post.0].expect("reached post has a parent");
                        let previous = m.post_of(owner);
                        m.link(owner, post);
                        match previous {
                            Some(prev) if owner != start => post = prev,
                            _ => return true,
                        }
                    }
                }
            }
        }
    }
    false
}

/// Augments `m` in place until it is maximum, trying free applicants in
/// `order`.
pub(crate) fn augment_to_maximum(graph: &BipartiteGraph, m: &mut Matching, order: &[ApplicantId]) {
    loop {
        let mut grew = false;
        for &a in order {
            if m.post_of(a).is_none() && augment_from(graph, m, a) {
                grew = true;
            }
        }
        if !grew {
            return;
        }
    }
}

/// Grows `seed` into a maximum matching of `graph` by repeated
/// augmenting-path search, exploring vertices in canonical order.
pub fn max_matching_augment(graph: &BipartiteGraph, seed: &Matching) -> Result<Matching> {
    seed.check_within(graph)?;
    let mut m = seed.clone();
    let order: Vec<ApplicantId> = (0..graph.n_applicants()).map(ApplicantId).collect();
    augment_to_maximum(graph, &mut m, &order);
    Ok(m)
}

pub fn is_maximum(graph: &BipartiteGraph, m: &Matching) -> bool {
    let mut probe = m.clone();
    (0..graph.n_applicants())
        .map(ApplicantId)
        .filter(|&a| m.post_of(a).is_none())
        .all(|a| !augment_from(graph, &mut probe, a))
}

/// Label of a vertex in the Even/Odd/Unreachable partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Even,
    Odd,
    Unreachable,
}

impl Label {
    /// Odd or Unreachable: matched in every maximum matching.
    pub fn is_saturated(self) -> bool {
        self != Label::Even
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EouLabels {
    applicants: Vec<Label>,
    posts: Vec<Label>,
}

impl EouLabels {
    pub fn applicant(&self, a: ApplicantId) -> Label {
        self.applicants[a.0]
    }

    pub fn post(&self, p: PostId) -> Label {
        self.posts[p.0]
    }

    pub fn applicant_labels(&self) -> &[Label] {
        &self.applicants
    }

    pub fn post_labels(&self) -> &[Label] {
        &self.posts
    }
}

/// Alternating BFS from every free vertex of both sides. Assumes `m` is a
/// maximum matching of `graph`.
pub(crate) fn label_vertices(graph: &BipartiteGraph, m: &Matching) -> EouLabels {
    let rev = graph.reverse();
    let mut applicants: Vec<Option<Label>> = vec![None; graph.n_applicants()];
    let mut posts: Vec<Option<Label>> = vec![None; graph.n_posts()];

    // Free applicants seed paths that reach posts at odd distance.
    let mut queue: VecDeque<ApplicantId> = VecDeque::new();
    for a in (0..graph.n_applicants()).map(ApplicantId) {
        if m.post_of(a).is_none() {
            applicants[a.0] = Some(Label::Even);
            queue.push_back(a);
        }
    }
    while let Some(a) = queue.pop_front() {
        for &p in graph.neighbors(a) {
            if posts[p.0].is_some() || m.post_of(a) == Some(p) {
                continue;
            }
            posts[p.0] = Some(Label::Odd);
            if let Some(mate) = m.applicant_of(p) {
                if applicants[mate.0].is_none() {
                    applicants[mate.0] = Some(Label::Even);
                    queue.push_back(mate);
                }
            }
        }
    }

    // Free posts, symmetrically.
    let mut queue: VecDeque<PostId> = VecDeque::new();
    for p in (0..graph.n_posts()).map(PostId) {
        if m.applicant_of(p).is_none() {
            posts[p.0] = Some(Label::Even);
            queue.push_back(p);
        }
    }
    while let Some(p) = queue.pop_front() {
        for &a in &rev[p.0] {
            if applicants[a.0].is_some() || m.applicant_of(p) == Some(a) {
                continue;
            }
            applicants[a.0] = Some(Label::Odd);
            if let Some(mate) = m.post_of(a) {
                if posts[mate.0].is_none() {
                    posts[mate.0] = Some(Label::Even);
                    queue.push_back(mate);
                }
            }
        }
    }

    EouLabels {
        applicants: applicants
            .into_iter()
            .map(|l| l.unwrap_or(Label::Unreachable))
            .collect(),
        posts: posts
            .into_iter()
            .map(|l| l.unwrap_or(Label::Unreachable))
            .collect(),
    }
}

/// Even/Odd/Unreachable labels of `graph` with respect to a maximum matching.
pub fn eou_decompose(graph: &BipartiteGraph, maximum_matching: &Matching) -> Result<EouLabels> {
    maximum_matching.check_within(graph)?;
    if !is_maximum(graph, maximum_matching) {
        return Err(Error::MatchingNotMaximum);
    }
    Ok(label_vertices(graph, maximum_matching))
}
