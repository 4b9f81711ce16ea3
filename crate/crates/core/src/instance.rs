//! Preference instances: applicants, posts and ranked (possibly tied) lists.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{ApplicantId, PostId, Rank, RankedGraph};

/// One applicant's list: group `i` holds the posts tied at rank `i + 1`.
pub type PreferenceList = Vec<Vec<PostId>>;

/// A validated preference instance. Immutable; every mutation returns a new
/// value. Identifier order is canonical and drives every deterministic
/// tie-break downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    applicants: Vec<String>,
    posts: Vec<String>,
    prefs: Vec<PreferenceList>,
    graph: RankedGraph,
}

pub(crate) fn is_valid_identifier(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | '(' | ')' | '#'))
}

/// Name reserved for the optional post header line.
pub(crate) const HEADER_KEYWORD: &str = "posts";

impl Instance {
    pub fn new(applicants: Vec<String>, posts: Vec<String>, prefs: Vec<PreferenceList>) -> Result<Self> {
        if applicants.len() != prefs.len() {
            return Err(Error::InvalidParameter(format!(
                "{} applicants but {} preference lists",
                applicants.len(),
                prefs.len()
            )));
        }
        let mut seen = HashMap::new();
        for name in &applicants {
            if !is_valid_identifier(name) || name == HEADER_KEYWORD {
                return Err(Error::InvalidIdentifier(name.clone()));
            }
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicateApplicant(name.clone()));
            }
        }
        let mut seen = HashMap::new();
        for name in &posts {
            if !is_valid_identifier(name) {
                return Err(Error::InvalidIdentifier(name.clone()));
            }
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicatePostDeclaration(name.clone()));
            }
        }

        let mut graph = RankedGraph::new(applicants.len(), posts.len());
        for (a, groups) in prefs.iter().enumerate() {
            let mut used = vec![false; posts.len()];
            for (g, group) in groups.iter().enumerate() {
                if group.is_empty() {
                    return Err(Error::EmptyGroup(applicants[a].clone()));
                }
                for &p in group {
                    if p.0 >= posts.len() {
                        return Err(Error::UnknownPost(p.to_string()));
                    }
                    if std::mem::replace(&mut used[p.0], true) {
                        return Err(Error::DuplicatePost {
                            applicant: applicants[a].clone(),
                            post: posts[p.0].clone(),
                        });
                    }
                    graph.add_edge(ApplicantId(a), p, g + 1)?;
                }
            }
        }
        Ok(Instance {
            applicants,
            posts,
            prefs,
            graph,
        })
    }

    pub fn empty() -> Self {
        Instance {
            applicants: Vec::new(),
            posts: Vec::new(),
            prefs: Vec::new(),
            graph: RankedGraph::new(0, 0),
        }
    }

    pub fn n_applicants(&self) -> usize {
        self.applicants.len()
    }

    pub fn n_posts(&self) -> usize {
        self.posts.len()
    }

    pub fn applicant_names(&self) -> &[String] {
        &self.applicants
    }

    pub fn post_names(&self) -> &[String] {
        &self.posts
    }

    pub fn applicant_ids(&self) -> impl Iterator<Item = ApplicantId> {
        (0..self.applicants.len()).map(ApplicantId)
    }

    pub fn post_ids(&self) -> impl Iterator<Item = PostId> {
        (0..self.posts.len()).map(PostId)
    }

    pub fn applicant_name(&self, a: ApplicantId) -> &str {
        &self.applicants[a.0]
    }

    pub fn post_name(&self, p: PostId) -> &str {
        &self.posts[p.0]
    }

    pub fn applicant(&self, name: &str) -> Result<ApplicantId> {
        self.applicants
            .iter()
            .position(|n| n == name)
            .map(ApplicantId)
            .ok_or_else(|| Error::UnknownApplicant(name.to_string()))
    }

    pub fn post(&self, name: &str) -> Result<PostId> {
        self.posts
            .iter()
            .position(|n| n == name)
            .map(PostId)
            .ok_or_else(|| Error::UnknownPost(name.to_string()))
    }

    fn check_applicant(&self, a: ApplicantId) -> Result<()> {
        if a.0 < self.applicants.len() {
            Ok(())
        } else {
            Err(Error::UnknownApplicant(a.to_string()))
        }
    }

    pub fn preferences(&self, a: ApplicantId) -> &[Vec<PostId>] {
        &self.prefs[a.0]
    }

    /// Ranked edge view of the instance.
    pub fn graph(&self) -> &RankedGraph {
        &self.graph
    }

    /// Maximum rank over all edges (`r`); 0 when there are no edges.
    pub fn max_rank(&self) -> Rank {
        self.prefs.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn rank(&self, a: ApplicantId, p: PostId) -> Option<Rank> {
        self.graph.rank_of(a, p)
    }

    /// How `a` rates the outcome "matched to `post`" (or unmatched).
    pub fn true_rank(&self, a: ApplicantId, post: Option<PostId>) -> TrueRank {
        match post {
            None => TrueRank::Unmatched,
            Some(p) => self.rank(a, p).map_or(TrueRank::Unlisted, TrueRank::Listed),
        }
    }

    /// `a`'s list flattened to a strict order: groups in rank order, ties by
    /// canonical post order.
    pub fn flattened_list(&self, a: ApplicantId) -> Vec<PostId> {
        self.prefs[a.0]
            .iter()
            .flat_map(|g| {
                let mut g = g.clone();
                g.sort();
                g
            })
            .collect()
    }

    /// All posts ordered by `a`'s true rank, then canonically; posts `a`
    /// does not list come last.
    pub fn posts_by_true_rank(&self, a: ApplicantId) -> Vec<PostId> {
        let mut all: Vec<PostId> = self.post_ids().collect();
        all.sort_by_key(|&p| (self.true_rank(a, Some(p)), p));
        all
    }

    pub fn remove_applicant(&self, a: ApplicantId) -> Result<Instance> {
        self.check_applicant(a)?;
        let mut applicants = self.applicants.clone();
        let mut prefs = self.prefs.clone();
        applicants.remove(a.0);
        prefs.remove(a.0);
        Instance::new(applicants, self.posts.clone(), prefs)
    }

    /// Appends a new applicant after all existing ones.
    pub fn add_applicant(&self, name: &str, list: PreferenceList) -> Result<Instance> {
        let mut applicants = self.applicants.clone();
        let mut prefs = self.prefs.clone();
        applicants.push(name.to_string());
        prefs.push(list);
        Instance::new(applicants, self.posts.clone(), prefs)
    }

    /// Replaces `a`'s list by an arbitrary gap-free (possibly tied) list.
    pub fn with_preferences(&self, a: ApplicantId, list: PreferenceList) -> Result<Instance> {
        self.check_applicant(a)?;
        let mut prefs = self.prefs.clone();
        prefs[a.0] = list;
        Instance::new(self.applicants.clone(), self.posts.clone(), prefs)
    }

    /// The instance `H` in which the list's applicant submits `list`.
    pub fn replace_preferences(&self, list: &StrictFullList) -> Result<Instance> {
        self.check_applicant(list.applicant)?;
        StrictFullList::new(self, list.applicant, list.order.clone())?;
        self.with_preferences(
            list.applicant,
            list.order.iter().map(|&p| vec![p]).collect(),
        )
    }
}

/// How an applicant rates an outcome under their true list. Orders from
/// best to worst: any listed rank, a post they never listed, no post.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TrueRank {
    Listed(Rank),
    Unlisted,
    Unmatched,
}

impl std::fmt::Display for TrueRank {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TrueRank::Listed(r) => write!(f, "{r}"),
            TrueRank::Unlisted => f.write_str("unlisted"),
            TrueRank::Unmatched => f.write_str("unmatched"),
        }
    }
}

/// A strict list over every post of the instance: rank `i` is position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrictFullList {
    pub applicant: ApplicantId,
    pub order: Vec<PostId>,
}

impl StrictFullList {
    pub fn new(inst: &Instance, applicant: ApplicantId, order: Vec<PostId>) -> Result<Self> {
        inst.check_applicant(applicant)?;
        let mut seen = vec![false; inst.n_posts()];
        let ok = order.len() == inst.n_posts()
            && order
                .iter()
                .all(|p| p.0 < seen.len() && !std::mem::replace(&mut seen[p.0], true));
        if !ok {
            return Err(Error::NotAPermutation {
                applicant: inst.applicant_name(applicant).to_string(),
                expected: inst.n_posts(),
            });
        }
        Ok(StrictFullList { applicant, order })
    }

    pub fn from_names(inst: &Instance, applicant: &str, posts: &[&str]) -> Result<Self> {
        let a = inst.applicant(applicant)?;
        let order = posts.iter().map(|n| inst.post(n)).collect::<Result<_>>()?;
        StrictFullList::new(inst, a, order)
    }

    /// 1-based position of `p`.
    pub fn rank_of(&self, p: PostId) -> Option<Rank> {
        self.order.iter().position(|&q| q == p).map(|i| i + 1)
    }

    pub fn first(&self) -> Option<PostId> {
        self.order.first().copied()
    }
}
