use thiserror::Error;

use crate::roots::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{family} needs rank >= {min}, got {got}")]
    RankTooSmall { family: Family, min: usize, got: usize },
    #[error("{family} does not support {what}")]
    UnsupportedFlavor { family: Family, what: &'static str },
    #[error("{side} cut set must be nonempty for affine flavors (both parabolics must be proper)")]
    EmptyAffineCut { side: &'static str },
    #[error("simple root index {index} in {side} cut set is out of range {lo}..={hi}")]
    CutOutOfRange {
        side: &'static str,
        index: usize,
        lo: usize,
        hi: usize,
    },
    #[error("vertex {vertex} is out of range 1..={max}")]
    VertexOutOfRange { vertex: usize, max: usize },
    #[error("root vector has {got} coefficients, flavor expects {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bracket leaves the span of the basis: {0}")]
    NotClosed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
