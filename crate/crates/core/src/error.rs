use thiserror::Error;

use crate::system::Order;

/// Errors from the combinatorial layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoxeterError {
    #[error("a Coxeter system needs at least one generator")]
    EmptySystem,
    #[error("rank {rank} exceeds the supported maximum of 64")]
    RankTooLarge { rank: usize },
    #[error("row {row} has {len} entries, expected {rank}")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("m({s},{s}) = {found}, must be 1")]
    DiagonalNotOne { s: usize, found: Order },
    #[error("m({s},{t}) differs from m({t},{s})")]
    NotSymmetric { s: usize, t: usize },
    #[error("m({s},{t}) = {found}, must be at least 2")]
    OffDiagonalBelowTwo { s: usize, t: usize, found: Order },
    #[error("letter {letter} is not a generator of a rank-{rank} system")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,
    #[error("enumeration exceeded the cap of {cap} elements")]
    ResourceCap { cap: usize },
    #[error("exact coefficient overflowed 128-bit integers")]
    CoefficientOverflow,
    #[error("floating-point word problem lost precision (value {value})")]
    NumericalBreakdown { value: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}
