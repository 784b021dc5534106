use thiserror::Error;

use crate::diagram::ParseError;
use crate::quandle::QuandleError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("search exceeded the node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("group closure exceeded the bound of {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("target quandle is not abelian")]
    NotAbelianTarget,
    #[error("pointwise product of elements {left} and {right} left the derivation set")]
    ClosureViolation { left: usize, right: usize },
    #[error("image of element {index} under the virtual automorphism left the derivation set")]
    ImageEscape { index: usize },
    #[error("maps are not action compatible at q={q}, a={a}")]
    CompatibilityViolation { q: usize, a: usize },
    #[error("permutation is not an automorphism: fails at ({x}, {y})")]
    NotAnAutomorphism { x: usize, y: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("edge {edge} does not exist in the diagram")]
    InvalidEdge { edge: u32 },
    #[error("diagram has virtual crossings; use the virtual presentation")]
    NotClassical,
    #[error("map is not a quandle homomorphism: fails at ({x}, {y})")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("{0}")]
    Invalid(String),
}
