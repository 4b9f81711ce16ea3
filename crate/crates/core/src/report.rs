//! Human and machine renderings of results. Machine output is pretty JSON
//! whose key order follows the struct field order below, so it is
//! byte-stable for fixed inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::{ApplicantId, PostId, Rank};
use crate::instance::{Instance, TrueRank};
use crate::matching::{Label, Matching};
use crate::oracle::{EdgeClass, MinMaxSearch, RmmSet};
use crate::rmm::RmmResult;
use crate::strategy::{HpStatus, StrategyOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    Machine,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct PairOut<'a> {
    applicant: &'a str,
    post: &'a str,
    rank: Option<Rank>,
}

fn pairs<'a>(inst: &'a Instance, m: &Matching) -> Vec<PairOut<'a>> {
    m.pairs()
        .map(|(a, p)| PairOut {
            applicant: inst.applicant_name(a),
            post: inst.post_name(p),
            rank: inst.rank(a, p),
        })
        .collect()
}

#[derive(Serialize)]
struct VertexLabel<'a> {
    vertex: &'a str,
    label: Label,
}

#[derive(Serialize)]
struct PhaseOut<'a> {
    phase: Rank,
    reduced_edges: Vec<PairOut<'a>>,
    matching: Vec<PairOut<'a>>,
    applicant_labels: Vec<VertexLabel<'a>>,
    post_labels: Vec<VertexLabel<'a>>,
}

#[derive(Serialize)]
struct SolveOut<'a> {
    signature: &'a [usize],
    size: usize,
    matching: Vec<PairOut<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phases: Option<Vec<PhaseOut<'a>>>,
}

pub fn render_solve(inst: &Instance, res: &RmmResult, phases: bool, format: OutputFormat) -> String {
    let phase_out = || {
        res.phases
            .iter()
            .map(|ph| PhaseOut {
                phase: ph.phase,
                reduced_edges: ph
                    .reduced_edges
                    .iter()
                    .map(|e| PairOut {
                        applicant: inst.applicant_name(e.applicant),
                        post: inst.post_name(e.post),
                        rank: Some(e.rank),
                    })
                    .collect(),
                matching: pairs(inst, &ph.matching),
                applicant_labels: inst
                    .applicant_ids()
                    .map(|a| VertexLabel {
                        vertex: inst.applicant_name(a),
                        label: ph.labels.applicant(a),
                    })
                    .collect(),
                post_labels: inst
                    .post_ids()
                    .map(|p| VertexLabel {
                        vertex: inst.post_name(p),
                        label: ph.labels.post(p),
                    })
                    .collect(),
            })
            .collect::<Vec<_>>()
    };
    match format {
        OutputFormat::Machine => json(&SolveOut {
            signature: res.signature.counts(),
            size: res.matching.len(),
            matching: pairs(inst, &res.matching),
            phases: phases.then(phase_out),
        }),
        OutputFormat::Human => {
            let mut s = String::new();
            writeln!(s, "signature: {}", tuple(res.signature.counts())).unwrap();
            writeln!(s, "matched: {} of {}", res.matching.len(), inst.n_applicants()).unwrap();
            for p in pairs(inst, &res.matching) {
                writeln!(s, "  {} - {} (rank {})", p.applicant, p.post, p.rank.unwrap_or(0)).unwrap();
            }
            if phases {
                for ph in phase_out() {
                    writeln!(s, "phase {}:", ph.phase).unwrap();
                    let edges: Vec<String> = ph
                        .reduced_edges
                        .iter()
                        .map(|e| format!("{}-{}/{}", e.applicant, e.post, e.rank.unwrap_or(0)))
                        .collect();
                    writeln!(s, "  reduced edges: {}", edges.join(" ")).unwrap();
                    let m: Vec<String> = ph.matching.iter().map(|e| format!("{}-{}", e.applicant, e.post)).collect();
                    writeln!(s, "  matching: {}", m.join(" ")).unwrap();
                    writeln!(s, "  labels: {}", labels_line(&ph.applicant_labels, &ph.post_labels)).unwrap();
                }
            }
            s
        }
    }
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn labels_line(a: &[VertexLabel], p: &[VertexLabel]) -> String {
    let short = |l: Label| match l {
        Label::Even => "E",
        Label::Odd => "O",
        Label::Unreachable => "U",
    };
    a.iter()
        .chain(p)
        .map(|v| format!("{}={}", v.vertex, short(v.label)))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct ClassOut<'a> {
    applicant: &'a str,
    post: &'a str,
    rank: Rank,
    class: String,
}

/// One line per edge: is it in every, some or no rank-maximal matching?
pub fn render_classify(inst: &Instance, res: &RmmResult, format: OutputFormat) -> String {
    let rows: Vec<ClassOut> = inst
        .graph()
        .edges()
        .map(|e| {
            let class = if res.is_forced_pair(e.applicant, e.post) {
                EdgeClass::InEvery
            } else if res.is_rank_maximal_pair(e.applicant, e.post) {
                EdgeClass::InSomeNotAll
            } else {
                EdgeClass::InNone
            };
            ClassOut {
                applicant: inst.applicant_name(e.applicant),
                post: inst.post_name(e.post),
                rank: e.rank,
                class: class.to_string(),
            }
        })
        .collect();
    match format {
        OutputFormat::Machine => json(&rows),
        OutputFormat::Human => rows
            .iter()
            .map(|r| format!("{} {} {} {}\n", r.applicant, r.post, r.rank, r.class))
            .collect(),
    }
}

#[derive(Serialize)]
struct FPostsOut<'a> {
    applicant: &'a str,
    f_posts: Vec<&'a str>,
}

pub fn render_fposts(inst: &Instance, a: ApplicantId, set: &BTreeSet<PostId>, format: OutputFormat) -> String {
    let out = FPostsOut {
        applicant: inst.applicant_name(a),
        f_posts: set.iter().map(|&p| inst.post_name(p)).collect(),
    };
    match format {
        OutputFormat::Machine => json(&out),
        OutputFormat::Human => format!("f-posts of {}: {}\n", out.applicant, out.f_posts.join(" ")),
    }
}

#[derive(Serialize)]
struct CriticalOut<'a> {
    applicant: &'a str,
    unreachable_phase: Rank,
    critical_ranks: BTreeMap<&'a str, Rank>,
}

pub fn render_critical(
    inst: &Instance,
    a: ApplicantId,
    k: Rank,
    ranks: &BTreeMap<PostId, Rank>,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Machine => json(&CriticalOut {
            applicant: inst.applicant_name(a),
            unreachable_phase: k,
            critical_ranks: ranks.iter().map(|(&p, &c)| (inst.post_name(p), c)).collect(),
        }),
        OutputFormat::Human => {
            let mut s = format!("unreachable phase of {}: {k}\n", inst.applicant_name(a));
            for (&p, &c) in ranks {
                writeln!(s, "  {} {}", inst.post_name(p), c).unwrap();
            }
            s
        }
    }
}

#[derive(Serialize)]
struct ListEntry<'a> {
    rank: Rank,
    post: &'a str,
    true_rank: String,
}

#[derive(Serialize)]
struct ConstructionOut<'a> {
    target_post: &'a str,
    k: Rank,
    assigned: Vec<ListEntry<'a>>,
    status: String,
}

#[derive(Serialize)]
struct StrategyOut<'a> {
    kind: String,
    applicant: &'a str,
    list: Vec<ListEntry<'a>>,
    guaranteed_post: &'a str,
    guaranteed_true_rank: String,
    mode: String,
    certificate: &'a crate::strategy::Certificate,
    certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    construction: Option<ConstructionOut<'a>>,
}

fn strategy_out<'a>(inst: &'a Instance, out: &'a StrategyOutcome) -> StrategyOut<'a> {
    let a = out.applicant;
    let entry = |rank, p: PostId| ListEntry {
        rank,
        post: inst.post_name(p),
        true_rank: inst.true_rank(a, Some(p)).to_string(),
    };
    StrategyOut {
        kind: out.kind.to_string(),
        applicant: inst.applicant_name(a),
        list: out.list.order.iter().enumerate().map(|(i, &p)| entry(i + 1, p)).collect(),
        guaranteed_post: inst.post_name(out.guaranteed_post),
        guaranteed_true_rank: inst.true_rank(a, Some(out.guaranteed_post)).to_string(),
        mode: out.mode.to_string(),
        certificate: &out.certificate,
        certified: out.certificate.passed(),
        construction: out.construction.as_ref().map(|c| ConstructionOut {
            target_post: inst.post_name(c.target_post),
            k: c.k,
            assigned: c.assigned.iter().map(|&(r, p)| entry(r, p)).collect(),
            status: match c.status {
                HpStatus::Feasible => "feasible".into(),
                HpStatus::Infeasible { rank } => format!("infeasible at rank {rank}"),
            },
        }),
    }
}

pub fn render_strategy(inst: &Instance, out: &StrategyOutcome, format: OutputFormat) -> String {
    let o = strategy_out(inst, out);
    match format {
        OutputFormat::Machine => json(&o),
        OutputFormat::Human => {
            let mut s = String::new();
            writeln!(s, "strategy: {} for {}", o.kind, o.applicant).unwrap();
            writeln!(s, "falsified list (rank: post, true rank):").unwrap();
            for e in &o.list {
                writeln!(s, "  {}: {} ({})", e.rank, e.post, e.true_rank).unwrap();
            }
            writeln!(
                s,
                "guaranteed post: {} (true rank {}), mode {}",
                o.guaranteed_post, o.guaranteed_true_rank, o.mode
            )
            .unwrap();
            if let Some(c) = &o.construction {
                writeln!(s, "construction: {}, k = {}", c.status, c.k).unwrap();
            }
            writeln!(s, "certificate: {}", if o.certified { "passed" } else { "FAILED" }).unwrap();
            for c in &out.certificate.checks {
                writeln!(s, "  [{}] {}", if c.passed { "ok" } else { "fail" }, c.description).unwrap();
            }
            s
        }
    }
}

#[derive(Serialize)]
struct EnumerateOut<'a> {
    signature: &'a [usize],
    count: usize,
    matchings: Vec<Vec<PairOut<'a>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partners: Option<Vec<&'a str>>,
}

pub fn render_rmm_set(inst: &Instance, set: &RmmSet, focus: Option<ApplicantId>, format: OutputFormat) -> String {
    let partners = focus.map(|a| {
        set.partners(a)
            .iter()
            .map(|p| p.map_or("unmatched", |p| inst.post_name(p)))
            .collect::<Vec<_>>()
    });
    let out = EnumerateOut {
        signature: set.signature.counts(),
        count: set.matchings.len(),
        matchings: set.matchings.iter().map(|m| pairs(inst, m)).collect(),
        partners,
    };
    match format {
        OutputFormat::Machine => json(&out),
        OutputFormat::Human => {
            let mut s = format!("{} rank-maximal matchings, signature {}\n", out.count, tuple(out.signature));
            for m in &out.matchings {
                let m: Vec<String> = m.iter().map(|e| format!("{}-{}", e.applicant, e.post)).collect();
                writeln!(s, "  {}", m.join(" ")).unwrap();
            }
            if let (Some(a), Some(p)) = (focus, &out.partners) {
                writeln!(s, "partners of {}: {}", inst.applicant_name(a), p.join(" ")).unwrap();
            }
            s
        }
    }
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    strategy: StrategyOut<'a>,
    oracle_class: String,
    agrees: bool,
}

pub fn render_verify(
    inst: &Instance,
    out: &StrategyOutcome,
    class: EdgeClass,
    agrees: bool,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Machine => json(&VerifyOut {
            strategy: strategy_out(inst, out),
            oracle_class: class.to_string(),
            agrees,
        }),
        OutputFormat::Human => {
            let mut s = render_strategy(inst, out, format);
            writeln!(
                s,
                "oracle: ({}, {}) is in {} rank-maximal matching(s); {}",
                inst.applicant_name(out.applicant),
                inst.post_name(out.guaranteed_post),
                class,
                if agrees { "agrees" } else { "DISAGREES" }
            )
            .unwrap();
            s
        }
    }
}

#[derive(Serialize)]
struct OptimalList<'a> {
    list: Vec<&'a str>,
    partners: Vec<&'a str>,
}

#[derive(Serialize)]
struct SearchOut<'a> {
    applicant: &'a str,
    lists_examined: usize,
    optimum: String,
    min_max_strategy: String,
    agrees: bool,
    optimal_lists: Vec<OptimalList<'a>>,
}

/// `strategy` is the worst true rank under the `min_max` list, or why it
/// produced none.
pub fn render_search(
    inst: &Instance,
    a: ApplicantId,
    search: &MinMaxSearch,
    strategy: Result<TrueRank, String>,
    format: OutputFormat,
) -> String {
    let agrees = strategy.as_ref().is_ok_and(|&t| t == search.optimum);
    let out = SearchOut {
        applicant: inst.applicant_name(a),
        lists_examined: search.lists_examined,
        optimum: search.optimum.to_string(),
        min_max_strategy: match &strategy {
            Ok(t) => t.to_string(),
            Err(e) => e.clone(),
        },
        agrees,
        optimal_lists: search
            .optimal
            .iter()
            .map(|o| OptimalList {
                list: o.list.order.iter().map(|&p| inst.post_name(p)).collect(),
                partners: o
                    .partners
                    .iter()
                    .map(|p| p.map_or("unmatched", |p| inst.post_name(p)))
                    .collect(),
            })
            .collect(),
    };
    match format {
        OutputFormat::Machine => json(&out),
        OutputFormat::Human => {
            let mut s = String::new();
            writeln!(
                s,
                "{} lists examined for {}; best worst-case true rank: {}",
                out.lists_examined, out.applicant, out.optimum
            )
            .unwrap();
            writeln!(
                s,
                "min-max strategy achieves: {} ({})",
                out.min_max_strategy,
                if agrees { "optimal" } else { "NOT optimal" }
            )
            .unwrap();
            writeln!(s, "{} optimal lists:", out.optimal_lists.len()).unwrap();
            for o in &out.optimal_lists {
                writeln!(s, "  {} -> {}", o.list.join(" "), o.partners.join(" ")).unwrap();
            }
            s
        }
    }
}
