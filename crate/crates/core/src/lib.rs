pub mod automaton;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod format;
pub mod gallery;
pub mod group;
pub mod monoid;
pub mod nfa;
pub mod report;

pub use error::{Error, ParseError, Result};
pub use monoid::{Element, Monoid};
