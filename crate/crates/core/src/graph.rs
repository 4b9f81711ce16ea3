//! Bipartite graphs over applicant and post indices.
//!
//! [`RankedGraph`] carries a rank on every edge and is what the phased
//! algorithm and the oracle consume. Unlike an [`Instance`](crate::Instance)
//! it allows gaps in an applicant's ranks, which the manipulation machinery
//! needs when it probes two-post lists such as "p at rank 1, q at rank 4".
//! [`BipartiteGraph`] is the plain unranked edge set used by the matching
//! primitives.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Rank = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ApplicantId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PostId(pub usize);

impl fmt::Display for ApplicantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.0)
    }
}

impl fmt::Display for PostId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RankedEdge {
    pub applicant: ApplicantId,
    pub post: PostId,
    pub rank: Rank,
}

/// Edge set with ranks. Each applicant's neighbours are kept in preference
/// order, which is also the canonical exploration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedGraph {
    n_posts: usize,
    adj: Vec<Vec<(PostId, Rank)>>,
}

impl RankedGraph {
    pub fn new(n_applicants: usize, n_posts: usize) -> Self {
        RankedGraph {
            n_posts,
            adj: vec![Vec::new(); n_applicants],
        }
    }

    pub fn n_applicants(&self) -> usize {
        self.adj.len()
    }

    pub fn n_posts(&self) -> usize {
        self.n_posts
    }

    /// Lowest rank (largest number) of any edge; 0 for an edgeless graph.
    pub fn max_rank(&self) -> Rank {
        self.adj
            .iter()
            .flat_map(|l| l.iter().map(|&(_, r)| r))
            .max()
            .unwrap_or(0)
    }

    pub fn neighbors(&self, a: ApplicantId) -> &[(PostId, Rank)] {
        &self.adj[a.0]
    }

    pub fn rank_of(&self, a: ApplicantId, p: PostId) -> Option<Rank> {
        self.adj
            .get(a.0)?
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, r)| r)
    }

    pub fn has_edge(&self, a: ApplicantId, p: PostId) -> bool {
        self.rank_of(a, p).is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = RankedEdge> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, l)| {
            l.iter().map(move |&(post, rank)| RankedEdge {
                applicant: ApplicantId(a),
                post,
                rank,
            })
        })
    }

    pub fn check_applicant(&self, a: ApplicantId) -> Result<()> {
        if a.0 < self.adj.len() {
            Ok(())
        } else {
            Err(Error::UnknownApplicant(a.to_string()))
        }
    }

    pub fn check_post(&self, p: PostId) -> Result<()> {
        if p.0 < self.n_posts {
            Ok(())
        } else {
            Err(Error::UnknownPost(p.to_string()))
        }
    }

    pub fn check_edge(&self, a: ApplicantId, p: PostId) -> Result<Rank> {
        self.rank_of(a, p).ok_or(Error::UnknownEdge {
            applicant: a.0,
            post: p.0,
        })
    }

    /// Appends an edge at the end of `a`'s list.
    pub fn add_edge(&mut self, a: ApplicantId, p: PostId, rank: Rank) -> Result<()> {
        self.check_applicant(a)?;
        self.check_post(p)?;
        if rank == 0 {
            return Err(Error::InvalidParameter("ranks start at 1".into()));
        }
        if self.has_edge(a, p) {
            return Err(Error::EdgeAlreadyPresent {
                applicant: a.0,
                post: p.0,
            });
        }
        self.adj[a.0].push((p, rank));
        Ok(())
    }

    pub fn with_edge(&self, a: ApplicantId, p: PostId, rank: Rank) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(a, p, rank)?;
        Ok(g)
    }

    /// Replaces every edge of `a` by `list`.
    pub fn with_applicant_edges(&self, a: ApplicantId, list: &[(PostId, Rank)]) -> Result<Self> {
        let mut g = self.clone();
        g.check_applicant(a)?;
        g.adj[a.0].clear();
        for &(p, r) in list {
            g.add_edge(a, p, r)?;
        }
        Ok(g)
    }

    /// Keeps only the edges of rank at most `max_rank`.
    pub fn truncated(&self, max_rank: Rank) -> Self {
        RankedGraph {
            n_posts: self.n_posts,
            adj: self
                .adj
                .iter()
                .map(|l| l.iter().copied().filter(|&(_, r)| r <= max_rank).collect())
                .collect(),
        }
    }

    /// Unranked edges of rank exactly `rank`.
    pub fn rank_layer(&self, rank: Rank) -> BipartiteGraph {
        BipartiteGraph {
            n_posts: self.n_posts,
            adj: self
                .adj
                .iter()
                .map(|l| l.iter().filter(|&&(_, r)| r == rank).map(|&(p, _)| p).collect())
                .collect(),
        }
    }

    pub fn unranked(&self) -> BipartiteGraph {
        BipartiteGraph {
            n_posts: self.n_posts,
            adj: self
                .adj
                .iter()
                .map(|l| l.iter().map(|&(p, _)| p).collect())
                .collect(),
        }
    }
}

/// Plain bipartite edge set, applicants on the left.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BipartiteGraph {
    n_posts: usize,
    adj: Vec<Vec<PostId>>,
}

impl BipartiteGraph {
    pub fn new(n_applicants: usize, n_posts: usize) -> Self {
        BipartiteGraph {
            n_posts,
            adj: vec![Vec::new(); n_applicants],
        }
    }

    /// Builds an edge set; duplicate pairs are kept once.
    pub fn from_edges<I>(n_applicants: usize, n_posts: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ApplicantId, PostId)>,
    {
        let mut g = BipartiteGraph::new(n_applicants, n_posts);
        for (a, p) in edges {
            if a.0 >= n_applicants {
                return Err(Error::UnknownApplicant(a.to_string()));
            }
            if p.0 >= n_posts {
                return Err(Error::UnknownPost(p.to_string()));
            }
            if !g.adj[a.0].contains(&p) {
                g.adj[a.0].push(p);
            }
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(n_posts: usize, adj: Vec<Vec<PostId>>) -> Self {
        BipartiteGraph { n_posts, adj }
    }

    pub fn n_applicants(&self) -> usize {
        self.adj.len()
    }

    pub fn n_posts(&self) -> usize {
        self.n_posts
    }

    pub fn neighbors(&self, a: ApplicantId) -> &[PostId] {
        &self.adj[a.0]
    }

    pub fn contains_edge(&self, a: ApplicantId, p: PostId) -> bool {
        self.adj.get(a.0).is_some_and(|l| l.contains(&p))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (ApplicantId, PostId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().map(move |&p| (ApplicantId(a), p)))
    }

    pub fn without_edge(&self, a: ApplicantId, p: PostId) -> Self {
        let mut g = self.clone();
        if let Some(l) = g.adj.get_mut(a.0) {
            l.retain(|&q| q != p);
        }
        g
    }

    /// Removes every edge touching `a` or `p`; the vertices stay, isolated.
    pub fn without_vertices(&self, a: ApplicantId, p: PostId) -> Self {
        let mut g = self.clone();
        for (i, l) in g.adj.iter_mut().enumerate() {
            if i == a.0 {
                l.clear();
            } else {
                l.retain(|&q| q != p);
            }
        }
        g
    }

    /// Post-side adjacency.
    pub(crate) fn reverse(&self) -> Vec<Vec<ApplicantId>> {
        let mut rev = vec![Vec::new(); self.n_posts];
        for (a, p) in self.edges() {
            rev[p.0].push(a);
        }
        rev
    }
}
