use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid identifier {0:?}")]
    InvalidIdentifier(String),
    #[error("applicant {0:?} declared twice")]
    DuplicateApplicant(String),
    #[error("post {0:?} declared twice")]
    DuplicatePostDeclaration(String),
    #[error("post {post:?} appears twice in the list of {applicant:?}")]
    DuplicatePost { applicant: String, post: String },
    #[error("post {0:?} is not declared")]
    UnknownPost(String),
    #[error("empty tie group in the list of {0:?}")]
    EmptyGroup(String),
    #[error("unknown applicant {0:?}")]
    UnknownApplicant(String),
    #[error("list for {applicant:?} is not a permutation of all {expected} posts")]
    NotAPermutation { applicant: String, expected: usize },
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("({applicant}, {post}) is not an edge")]
    UnknownEdge { applicant: usize, post: usize },
    #[error("({applicant}, {post}) is already an edge")]
    EdgeAlreadyPresent { applicant: usize, post: usize },
    #[error("matching uses ({applicant}, {post}) which is not in the edge set")]
    MatchingOutsideGraph { applicant: usize, post: usize },
    #[error("matching is not maximum: an augmenting path exists")]
    MatchingNotMaximum,
    #[error("post {post:?} is not an f-post for {applicant:?}")]
    NotAnFPost { applicant: String, post: String },
    #[error("strategy inapplicable: {0}")]
    StrategyInapplicable(String),
    #[error("no preference list guarantees {0:?} any post in every rank-maximal matching")]
    NoGuarantee(String),
    #[error("oracle size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("oracle found an inconsistency: {0}")]
    OracleInconsistent(String),
}
