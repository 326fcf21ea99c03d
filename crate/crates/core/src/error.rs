use std::fmt;

use crate::structure::ValidationReport;

/// A witness that one of the three band axioms fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// The two bracketings at positions `position` and `position + 1`
    /// (1-based) disagree on `tuple`, which has length `2n - 1`.
    Associativity {
        tuple: Vec<usize>,
        position: usize,
        left: usize,
        right: usize,
    },
    /// Swapping two adjacent arguments of `tuple` changes the value.
    Symmetry {
        tuple: Vec<usize>,
        swapped: Vec<usize>,
        left: usize,
        right: usize,
    },
    /// `F(x, ..., x) != x`.
    Idempotency { element: usize, value: usize },
}

impl AxiomViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomViolation::Associativity { .. } => "associativity",
            AxiomViolation::Symmetry { .. } => "symmetry",
            AxiomViolation::Idempotency { .. } => "idempotency",
        }
    }

    /// Renders the witness with element labels.
    pub fn describe(&self, labels: &[String]) -> String {
        let show = |t: &[usize]| {
            let parts: Vec<&str> = t.iter().map(|&x| labels[x].as_str()).collect();
            format!("({})", parts.join(","))
        };
        match self {
            AxiomViolation::Associativity {
                tuple,
                position,
                left,
                right,
            } => format!(
                "associativity fails on {} at bracket position {}: {} != {}",
                show(tuple),
                position,
                labels[*left],
                labels[*right]
            ),
            AxiomViolation::Symmetry {
                tuple,
                swapped,
                left,
                right,
            } => format!(
                "symmetry fails: F{} = {} but F{} = {}",
                show(tuple),
                labels[*left],
                show(swapped),
                labels[*right]
            ),
            AxiomViolation::Idempotency { element, value } => format!(
                "idempotency fails: F({0},...,{0}) = {1}",
                labels[*element], labels[*value]
            ),
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..=self.max_element()).map(|i| i.to_string()).collect();
        f.write_str(&self.describe(&labels))
    }
}

impl AxiomViolation {
    fn max_element(&self) -> usize {
        match self {
            AxiomViolation::Associativity { tuple, left, right, .. }
            | AxiomViolation::Symmetry { tuple, left, right, .. } => {
                tuple.iter().copied().chain([*left, *right]).max().unwrap_or(0)
            }
            AxiomViolation::Idempotency { element, value } => (*element).max(*value),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{what} needs {needed} but the budget is {budget}")]
    Resource {
        what: &'static str,
        needed: String,
        budget: String,
    },
    #[error("not a symmetric n-ary band: {0}")]
    Axiom(AxiomViolation),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("invalid strong system: {0}")]
    InvalidSystem(ValidationReport),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<AxiomViolation> for Error {
    fn from(v: AxiomViolation) -> Self {
        Error::Axiom(v)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
