use thiserror::Error;

use crate::kernel::{Ca1Report, KernelReport};
use crate::sets::AttrSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{kind} index {index} out of range (size {len})")]
    InvalidIndex {
        kind: &'static str,
        index: usize,
        len: usize,
    },
    #[error("duplicate {kind} label `{label}`")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("incidence row {row} has {found} entries, expected {expected}")]
    DimensionMismatch {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("{what}: size {actual} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("kernel table has no entry for closed set {0}")]
    UncoveredClosedSet(AttrSet),
    #[error("kernel table key {0} is not a closed set")]
    NonClosedKey(AttrSet),
    #[error("kernel axioms violated: {0}")]
    KernelAxioms(Box<KernelReport>),
    #[error("selection is not consistent with the kernel: {0}")]
    Ca1(Box<Ca1Report>),
    #[error("context has no attributes")]
    EmptyAttributes,
    #[error("selection is empty")]
    EmptySelection,
    #[error("selection member {0} is the empty set")]
    EmptyMember(usize),
    #[error("selection member {index} repeats member {first}")]
    DuplicateMember { index: usize, first: usize },
    #[error("{0} is not a continuous concept of this context")]
    ForeignConcept(AttrSet),
    #[error("family is not directed: {0} and {1} have no upper bound in it")]
    NotDirected(AttrSet, AttrSet),
    #[error("empty family")]
    EmptyFamily,
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("poset is empty")]
    EmptyPoset,
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("map is not monotone: {0}")]
    NotMonotone(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("basis must be the whole domain for a finite poset; missing {0}")]
    IncompleteBasis(String),
    #[error("element {0} does not belong to the {1} family")]
    FamilyMismatch(String, &'static str),
    #[error("unknown named set `{0}`")]
    UnknownName(String),
    #[error("truncation depth must be at least 3, got {0}")]
    DepthTooSmall(u32),
    #[error("gave up after {0} attempts")]
    GaveUp(usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::KernelAxioms(_) | Error::Ca1(_) | Error::Invariant(_) => 1,
            Error::SizeLimit { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
