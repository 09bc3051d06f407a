use thiserror::Error;

use crate::geometry::{Interval, Point};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("interval [{ll},{ur}] is not proper")]
    ImproperInterval { ll: Point, ur: Point },

    #[error("interval {0} occurs more than once")]
    DuplicateInterval(Interval),

    #[error("{0} is not an inner interval")]
    NotInner(Interval),

    #[error("{what} is {actual}, above the cap of {cap}")]
    CapExceeded { what: &'static str, actual: usize, cap: usize },

    #[error("variable {0} is not in the table")]
    MissingVariable(String),

    #[error("{0} is the unit ideal")]
    UnitIdeal(&'static str),

    #[error("vertex set is not admissible: {0} meets it without containing an edge boundary")]
    NotAdmissible(Interval),

    #[error("lattice basis has determinant {0}, expected +-1")]
    NotUnimodular(String),

    #[error("not a closed path: {0}")]
    NotClosedPath(String),

    #[error("no zig-zag walk: {0}")]
    NoZigZagWalk(&'static str),

    #[error("closed path has no step junction to place the extra toric variable")]
    NoStepJunction,

    #[error("generator {0} is not a pure-difference binomial")]
    NotBinomial(String),

    #[error("rings differ")]
    RingMismatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
