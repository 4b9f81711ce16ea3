use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::format::{parse_instance, serialize_instance};
use crate::generate::generate_random;
use crate::graph::ApplicantId;
use crate::instance::{Instance, TrueRank};
use crate::oracle::{enumerate_rmm, exhaustive_min_max, worst_outcome, EdgeClass, OracleLimits};
use crate::report::{self, OutputFormat};
use crate::rmm::{critical_ranks_all, f_posts, rank_maximal, unreachable_phase};
use crate::strategy::{min_max, run_strategy, GuaranteeMode, StrategyKind};

#[derive(Debug, Parser)]
#[command(name = "rankmax", version, about = "Rank-maximal matchings and single-applicant manipulation")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value = "human")]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a rank-maximal matching and its signature.
    Solve {
        /// Instance file, or `-` for stdin.
        file: String,
        /// Also print every phase's reduced graph, matching and labels.
        #[arg(long)]
        phases: bool,
    },
    /// Classify every edge as in every, some or no rank-maximal matching.
    Classify { file: String },
    /// Posts that are Odd or Unreachable in the rank-1 graph without the applicant.
    Fposts {
        file: String,
        #[arg(long)]
        applicant: String,
    },
    /// Critical ranks of the applicant's non-edges.
    Critical {
        file: String,
        #[arg(long)]
        applicant: String,
        /// Empty the applicant's list first.
        #[arg(long)]
        clear_list: bool,
    },
    /// Synthesize a falsified list for the applicant.
    Strategy {
        file: String,
        #[arg(long)]
        applicant: String,
        #[arg(long, value_enum)]
        kind: StrategyKind,
    },
    /// Brute-force checks on small instances.
    Oracle {
        file: String,
        #[command(flatten)]
        mode: OracleMode,
        #[arg(long)]
        applicant: Option<String>,
        #[arg(long, default_value_t = 9)]
        max_applicants: usize,
        #[arg(long, default_value_t = 9)]
        max_posts: usize,
        /// Largest post count for the list search.
        #[arg(long, default_value_t = 6)]
        max_permuted_posts: usize,
    },
    /// Print a seeded random instance.
    Gen {
        #[arg(long)]
        applicants: usize,
        #[arg(long)]
        posts: usize,
        #[arg(long)]
        max_rank: usize,
        #[arg(long, default_value_t = 0.0)]
        tie_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct OracleMode {
    /// List every rank-maximal matching.
    #[arg(long)]
    enumerate: bool,
    /// Check a strategy's guarantee against the enumeration.
    #[arg(long, value_enum)]
    verify_strategy: Option<StrategyKind>,
    /// Try every strict list for the applicant.
    #[arg(long)]
    min_max_search: bool,
}

/// Why a command failed; the exit code follows from it.
enum Failure {
    Usage(String),
    Domain(String),
    /// Printed output already explains the failure.
    Reported,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::InvalidIdentifier(_)
            | Error::DuplicateApplicant(_)
            | Error::DuplicatePostDeclaration(_)
            | Error::DuplicatePost { .. }
            | Error::UnknownPost(_)
            | Error::EmptyGroup(_)
            | Error::UnknownApplicant(_)
            | Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on a domain failure, 2 on a usage, input or parse error.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut out = String::new();
    let result = dispatch(cli, stdin, &mut out);
    if stdout.write_all(out.as_bytes()).is_err() {
        return 1;
    }
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Reported) => 1,
    }
}

fn load(file: &str, stdin: &mut dyn Read) -> Result<Instance, Failure> {
    let mut text = String::new();
    let read = if file == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    read.map_err(|e| Failure::Usage(format!("cannot read {file}: {e}")))?;
    parse_instance(&text).map_err(|e| Failure::Usage(format!("{file}: {e}")))
}

fn applicant(inst: &Instance, name: Option<&str>) -> Result<ApplicantId, Failure> {
    let name = name.ok_or_else(|| Failure::Usage("--applicant is required for this mode".into()))?;
    Ok(inst.applicant(name)?)
}

fn dispatch(cli: Cli, stdin: &mut dyn Read, out: &mut String) -> Result<(), Failure> {
    let fmt = cli.format;
    match cli.command {
        Command::Solve { file, phases } => {
            let inst = load(&file, stdin)?;
            out.push_str(&report::render_solve(&inst, &rank_maximal(inst.graph()), phases, fmt));
        }
        Command::Classify { file } => {
            let inst = load(&file, stdin)?;
            out.push_str(&report::render_classify(&inst, &rank_maximal(inst.graph()), fmt));
        }
        Command::Fposts { file, applicant: name } => {
            let inst = load(&file, stdin)?;
            let a = applicant(&inst, Some(&name))?;
            out.push_str(&report::render_fposts(&inst, a, &f_posts(inst.graph(), a)?, fmt));
        }
        Command::Critical {
            file,
            applicant: name,
            clear_list,
        } => {
            let inst = load(&file, stdin)?;
            let a = applicant(&inst, Some(&name))?;
            let base = if clear_list {
                inst.graph().with_applicant_edges(a, &[])?
            } else {
                inst.graph().clone()
            };
            let k = unreachable_phase(&base, a)?;
            out.push_str(&report::render_critical(&inst, a, k, &critical_ranks_all(&base, a)?, fmt));
        }
        Command::Strategy {
            file,
            applicant: name,
            kind,
        } => {
            let inst = load(&file, stdin)?;
            let a = applicant(&inst, Some(&name))?;
            let outcome = run_strategy(&inst, a, kind)?;
            out.push_str(&report::render_strategy(&inst, &outcome, fmt));
            if !outcome.certificate.passed() {
                return Err(Failure::Reported);
            }
        }
        Command::Oracle {
            file,
            mode,
            applicant: name,
            max_applicants,
            max_posts,
            max_permuted_posts,
        } => {
            let inst = load(&file, stdin)?;
            let limits = OracleLimits {
                max_applicants,
                max_posts,
                max_permuted_posts,
            };
            if mode.enumerate {
                let focus = name.as_deref().map(|n| inst.applicant(n)).transpose()?;
                let set = enumerate_rmm(inst.graph(), &limits)?;
                out.push_str(&report::render_rmm_set(&inst, &set, focus, fmt));
            } else if let Some(kind) = mode.verify_strategy {
                let a = applicant(&inst, name.as_deref())?;
                let outcome = run_strategy(&inst, a, kind)?;
                let h = inst.replace_preferences(&outcome.list)?;
                let class = enumerate_rmm(h.graph(), &limits)?.classify(a, outcome.guaranteed_post);
                let agrees = match outcome.mode {
                    GuaranteeMode::EveryRmm => class == EdgeClass::InEvery,
                    GuaranteeMode::SomeRmm => class != EdgeClass::InNone,
                };
                out.push_str(&report::render_verify(&inst, &outcome, class, agrees, fmt));
                if !agrees || !outcome.certificate.passed() {
                    return Err(Failure::Reported);
                }
            } else {
                let a = applicant(&inst, name.as_deref())?;
                let search = exhaustive_min_max(&inst, a, &limits)?;
                let strategy = match min_max(&inst, a) {
                    Ok(o) => {
                        let h = inst.replace_preferences(&o.list)?;
                        Ok(worst_outcome(&inst, a, h.graph(), &limits)?.0)
                    }
                    // no list can promise anything: every list risks leaving a unmatched
                    Err(Error::NoGuarantee(_)) => Ok(TrueRank::Unmatched),
                    Err(e) => Err(e.to_string()),
                };
                let agrees = strategy.as_ref().is_ok_and(|&t| t == search.optimum);
                out.push_str(&report::render_search(&inst, a, &search, strategy, fmt));
                if !agrees {
                    return Err(Failure::Reported);
                }
            }
        }
        Command::Gen {
            applicants,
            posts,
            max_rank,
            tie_prob,
            seed,
        } => {
            let inst = generate_random(applicants, posts, max_rank, tie_prob, seed)?;
            out.push_str(&serialize_instance(&inst));
        }
    }
    Ok(())
}
