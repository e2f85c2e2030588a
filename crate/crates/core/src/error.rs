use thiserror::Error;

use crate::logic::MAX_ATOMS;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Formula or knowledge-base text could not be parsed. `line` is 1-based
    /// and is 0 when the text was a bare formula; `column` is 1-based.
    #[error("syntax error at {line}:{column}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("unknown atom `{name}` at {line}:{column}")]
    UnknownAtom {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),

    #[error("universe has {0} atoms; at most {MAX_ATOMS} are supported")]
    UniverseTooLarge(usize),

    #[error("universe is empty; at least one atom is required")]
    EmptyUniverse,

    #[error("the strict rules are inconsistent")]
    InconsistentStrict,

    #[error("the default rules are inconsistent: {} cannot be ranked", format_indices(.unranked))]
    InconsistentDefaults { unranked: Vec<usize> },

    #[error("revision is empty: the input is inconsistent with the strict rules")]
    EmptyRevision,

    #[error("the two punchlines are logically equivalent")]
    EquivalentPunchlines,

    #[error("level undefined: the punchline has possibility 0")]
    UndefinedLevel,

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    /// Shift a formula-level error so it points into a larger document.
    pub(crate) fn located(self, line_no: usize, column_offset: usize) -> Self {
        match self {
            Error::Syntax {
                column,
                expected,
                found,
                ..
            } => Error::Syntax {
                line: line_no,
                column: column + column_offset,
                expected,
                found,
            },
            Error::UnknownAtom { name, column, .. } => Error::UnknownAtom {
                name,
                line: line_no,
                column: column + column_offset,
            },
            other => other,
        }
    }
}

fn format_indices(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| format!("#{i}")).collect();
    parts.join(", ")
}
