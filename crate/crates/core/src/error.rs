use std::fmt;

/// A syntax error with a 1-based position. `line` is 0 for single-line literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(column: usize, message: impl Into<String>) -> Self {
        ParseError { line: 0, column, message: message.into() }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        } else {
            write!(f, "column {}: {}", self.column, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("element {element} is not valid for monoid {monoid}")]
    MonoidMismatch { monoid: String, element: String },
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),
    #[error("letter index {0} outside the alphabet")]
    LetterOutOfRange(usize),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("letter {0:?} has no inverse letter")]
    NotInvolutive(char),
    #[error("invalid group oracle: {0}")]
    InvalidGroup(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("edge {edge} is a second edge leaving state {state} on letter {letter:?}")]
    Nondeterministic { edge: usize, state: usize, letter: char },
    #[error("edge {edge} reads {len} letters; deterministic edges read exactly one")]
    NotSingleLetter { edge: usize, len: usize },
    #[error("no edge leaves state {state} on letter {letter:?}")]
    Incomplete { state: usize, letter: char },
    #[error("more than {0} cosets")]
    CosetLimit(usize),
    #[error("embedding: {0}")]
    Embedding(String),
    #[error("enumeration infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
