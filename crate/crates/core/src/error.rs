use thiserror::Error;

use crate::values::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("positions require at least one option; terminals are constructed separately")]
    EmptyOptions,
    #[error("{family} is undefined for index 0")]
    ZeroIndex { family: Family },
    #[error("{family} is not a *L_n/*R_n family")]
    NotStarFamily { family: Family },
    #[error("at least one index is required")]
    NoIndices,
    #[error(
        "universe for day {day} exceeds the configured cap of day {cap}; \
         the number of positions born by day 3 is already 2^33 + 1"
    )]
    UniverseTooLarge { day: u32, cap: u32 },
    #[error("initial Even Nim piles must hold an even number of tokens, got {size}")]
    OddInitialPile { size: u32 },
    #[error("subtraction sets must be nonempty and contain only positive values")]
    InvalidSubtractionSet,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected a decimal number")]
    ExpectedNumber,
    #[error("number exceeds 2^31-1")]
    NumberOverflow,
    #[error("{0} is undefined for index 0")]
    ZeroIndex(Family),
    #[error("positions require at least one option; empty braces are not a position")]
    EmptyOptions,
}
