//! Falsified lists for a single manipulator `a1`.
//!
//! All three strategies return a strict list over every post, together with
//! the post they promise and a certificate obtained by re-running the engine
//! on the manipulated instance.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ApplicantId, PostId, Rank};
use crate::instance::{Instance, StrictFullList, TrueRank};
use crate::rmm::{critical_ranks_all, edge_in_every_rmm, edge_in_some_rmm, f_posts, rank_maximal, unreachable_phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyKind {
    BestNonfirst,
    MinMax,
    ImproveBest,
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyKind::BestNonfirst => "best-nonfirst",
            StrategyKind::MinMax => "min-max",
            StrategyKind::ImproveBest => "improve-best",
        })
    }
}

/// Whether the guaranteed post is held in every rank-maximal matching of the
/// manipulated instance or only in at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GuaranteeMode {
    EveryRmm,
    SomeRmm,
}

impl fmt::Display for GuaranteeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GuaranteeMode::EveryRmm => "every-rmm",
            GuaranteeMode::SomeRmm => "some-rmm",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub description: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub checks: Vec<Check>,
}

impl Certificate {
    fn push(&mut self, description: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            description: description.into(),
            passed,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpStatus {
    Feasible,
    /// No post could be placed at this rank.
    Infeasible { rank: Rank },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HpConstruction {
    pub target_post: PostId,
    /// Phase in which `a1` leaves Even when its list is `p` alone.
    pub k: Rank,
    /// Ranks `1..=k` as filled by the construction.
    pub assigned: Vec<(Rank, PostId)>,
    pub status: HpStatus,
    /// `assigned` padded to a full list; present only when feasible.
    pub list: Option<StrictFullList>,
}

impl HpConstruction {
    pub fn is_feasible(&self) -> bool {
        self.status == HpStatus::Feasible
    }
}

#[derive(Debug, Clone)]
pub struct StrategyOutcome {
    pub kind: StrategyKind,
    pub applicant: ApplicantId,
    pub list: StrictFullList,
    pub guaranteed_post: PostId,
    pub mode: GuaranteeMode,
    pub certificate: Certificate,
    pub construction: Option<HpConstruction>,
}

pub fn run_strategy(inst: &Instance, a1: ApplicantId, kind: StrategyKind) -> Result<StrategyOutcome> {
    match kind {
        StrategyKind::BestNonfirst => best_nonfirst(inst, a1),
        StrategyKind::MinMax => min_max(inst, a1),
        StrategyKind::ImproveBest => improve_best(inst, a1),
    }
}

/// Does `a1` submitting `list` put `(a1, p)` in every (or some) rank-maximal
/// matching?
pub fn verify_guarantee(inst: &Instance, list: &StrictFullList, p: PostId, mode: GuaranteeMode) -> Result<bool> {
    inst.graph().check_post(p)?;
    let h = inst.replace_preferences(list)?;
    match mode {
        GuaranteeMode::EveryRmm => edge_in_every_rmm(h.graph(), list.applicant, p),
        GuaranteeMode::SomeRmm => edge_in_some_rmm(h.graph(), list.applicant, p),
    }
}

/// `prefix` followed by every other post in `a1`'s true order.
fn padded(inst: &Instance, a1: ApplicantId, prefix: Vec<PostId>) -> Result<StrictFullList> {
    let used: BTreeSet<PostId> = prefix.iter().copied().collect();
    let mut order = prefix;
    order.extend(inst.posts_by_true_rank(a1).into_iter().filter(|p| !used.contains(p)));
    StrictFullList::new(inst, a1, order)
}

fn certified(
    inst: &Instance,
    kind: StrategyKind,
    list: StrictFullList,
    p: PostId,
    mode: GuaranteeMode,
    mut certificate: Certificate,
    construction: Option<HpConstruction>,
) -> Result<StrategyOutcome> {
    let a1 = list.applicant;
    let ok = verify_guarantee(inst, &list, p, mode)?;
    let scope = match mode {
        GuaranteeMode::EveryRmm => "every",
        GuaranteeMode::SomeRmm => "some",
    };
    certificate.push(
        format!(
            "{} holds {} in {scope} rank-maximal matching of the manipulated instance",
            inst.applicant_name(a1),
            inst.post_name(p)
        ),
        ok,
    );
    Ok(StrategyOutcome {
        kind,
        applicant: a1,
        list,
        guaranteed_post: p,
        mode,
        certificate,
        construction,
    })
}

/// Best post (true order) that is not an f-post, listed posts first.
fn best_non_f_post(inst: &Instance, a1: ApplicantId, fp: &BTreeSet<PostId>) -> Option<PostId> {
    inst.posts_by_true_rank(a1).into_iter().find(|p| !fp.contains(p))
}

fn rank_one_outcome(inst: &Instance, a1: ApplicantId, q: PostId, kind: StrategyKind) -> Result<StrategyOutcome> {
    let list = padded(inst, a1, vec![q])?;
    let mut cert = Certificate::default();
    cert.push(
        format!("{} is not an f-post for {}", inst.post_name(q), inst.applicant_name(a1)),
        !f_posts(inst.graph(), a1)?.contains(&q),
    );
    certified(inst, kind, list, q, GuaranteeMode::EveryRmm, cert, None)
}

/// Put the best non-f-post of `a1`'s true list first.
pub fn best_nonfirst(inst: &Instance, a1: ApplicantId) -> Result<StrategyOutcome> {
    inst.graph().check_applicant(a1)?;
    let fp = f_posts(inst.graph(), a1)?;
    let q = inst
        .flattened_list(a1)
        .into_iter()
        .find(|p| !fp.contains(p))
        .ok_or_else(|| {
            Error::StrategyInapplicable(format!(
                "every post listed by {} is an f-post",
                inst.applicant_name(a1)
            ))
        })?;
    rank_one_outcome(inst, a1, q, StrategyKind::BestNonfirst)
}

/// Tries to build a full list under which `a1` gets the f-post `p` in every
/// rank-maximal matching.
pub fn construct_hp(inst: &Instance, a1: ApplicantId, p: PostId) -> Result<HpConstruction> {
    let graph = inst.graph();
    graph.check_applicant(a1)?;
    graph.check_post(p)?;
    if !f_posts(graph, a1)?.contains(&p) {
        return Err(Error::NotAnFPost {
            applicant: inst.applicant_name(a1).to_string(),
            post: inst.post_name(p).to_string(),
        });
    }
    let hat = graph.with_applicant_edges(a1, &[(p, 1)])?;
    let k = unreachable_phase(&hat, a1)?;
    let mut assigned = vec![(1, p)];
    let infeasible = |assigned, rank| HpConstruction {
        target_post: p,
        k,
        assigned,
        status: HpStatus::Infeasible { rank },
        list: None,
    };
    // a1 has degree one in the base, so it cannot be Odd there; if it is
    // still Even after the last phase, some rank-maximal matching leaves it
    // single and no longer list can force p.
    if rank_maximal(&hat).applicant_saturation_phase(a1).is_none() {
        return Ok(infeasible(assigned, 1));
    }

    let crit = critical_ranks_all(&hat, a1)?;
    let scan_key = |q: &PostId| (inst.true_rank(a1, Some(*q)), *q);
    let pool = |i: Rank| {
        let mut v: Vec<PostId> = crit.iter().filter(|&(_, &c)| c == i).map(|(&q, _)| q).collect();
        v.sort_by_key(scan_key);
        v
    };
    let mut used: BTreeSet<PostId> = BTreeSet::from([p]);
    let mut carry: BTreeSet<(TrueRank, PostId)> = pool(1).into_iter().map(|q| scan_key(&q)).collect();

    for i in 2..=k {
        if used.len() == inst.n_posts() {
            break;
        }
        let chosen = match carry.pop_first() {
            Some((_, q)) => Some(q),
            None => {
                let mut found = None;
                for q in pool(i) {
                    let h = graph.with_applicant_edges(a1, &[(p, 1), (q, i)])?;
                    if edge_in_every_rmm(&h, a1, p)? {
                        found = Some(q);
                        break;
                    }
                }
                found
            }
        };
        let Some(q) = chosen else {
            return Ok(infeasible(assigned, i));
        };
        used.insert(q);
        assigned.push((i, q));
        carry.extend(pool(i).into_iter().filter(|q| !used.contains(q)).map(|q| scan_key(&q)));
    }

    let list = padded(inst, a1, assigned.iter().map(|&(_, q)| q).collect())?;
    Ok(HpConstruction {
        target_post: p,
        k,
        assigned,
        status: HpStatus::Feasible,
        list: Some(list),
    })
}

/// Minimizes the worst true rank `a1` can end up with: the best feasible
/// f-post that beats every non-f-post, else the best non-f-post at rank 1.
pub fn min_max(inst: &Instance, a1: ApplicantId) -> Result<StrategyOutcome> {
    inst.graph().check_applicant(a1)?;
    let fp = f_posts(inst.graph(), a1)?;
    let q = best_non_f_post(inst, a1, &fp);
    let bound = q.map_or(TrueRank::Unmatched, |q| inst.true_rank(a1, Some(q)));
    let mut candidates: Vec<PostId> = fp
        .iter()
        .copied()
        .filter(|&p| inst.true_rank(a1, Some(p)) < bound)
        .collect();
    candidates.sort_by_key(|&p| (inst.true_rank(a1, Some(p)), p));

    // Scans are independent; the winner is the first feasible one in order.
    let constructions = candidates
        .par_iter()
        .map(|&p| construct_hp(inst, a1, p))
        .collect::<Result<Vec<_>>>()?;
    if let Some(c) = constructions.into_iter().find(HpConstruction::is_feasible) {
        let list = c.list.clone().expect("feasible construction has a list");
        let mut cert = Certificate::default();
        cert.push(
            format!(
                "{} is a feasible f-post, filled to rank {}",
                inst.post_name(c.target_post),
                c.assigned.len()
            ),
            true,
        );
        return certified(
            inst,
            StrategyKind::MinMax,
            list,
            c.target_post,
            GuaranteeMode::EveryRmm,
            cert,
            Some(c),
        );
    }
    match q {
        Some(q) => rank_one_outcome(inst, a1, q, StrategyKind::MinMax),
        None => Err(Error::NoGuarantee(inst.applicant_name(a1).to_string())),
    }
}

/// Copies the list of whoever holds `a1`'s top post once `a1` leaves.
pub fn improve_best(inst: &Instance, a1: ApplicantId) -> Result<StrategyOutcome> {
    let graph = inst.graph();
    graph.check_applicant(a1)?;
    let p1 = inst.flattened_list(a1).first().copied().ok_or_else(|| {
        Error::StrategyInapplicable(format!("{} lists no posts", inst.applicant_name(a1)))
    })?;
    let without = rank_maximal(&graph.with_applicant_edges(a1, &[])?);
    let mut cert = Certificate::default();
    let list = match without.matching.applicant_of(p1) {
        Some(holder) => {
            cert.push(
                format!(
                    "without {}, {} holds {}; copying that list",
                    inst.applicant_name(a1),
                    inst.applicant_name(holder),
                    inst.post_name(p1)
                ),
                true,
            );
            padded(inst, a1, inst.flattened_list(holder))?
        }
        None => {
            cert.push(
                format!(
                    "without {}, {} is unmatched; listing it first",
                    inst.applicant_name(a1),
                    inst.post_name(p1)
                ),
                true,
            );
            padded(inst, a1, vec![p1])?
        }
    };
    certified(inst, StrategyKind::ImproveBest, list, p1, GuaranteeMode::SomeRmm, cert, None)
}
