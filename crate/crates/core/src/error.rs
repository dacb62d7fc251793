use thiserror::Error;

use crate::grid::{Cell2, Cell3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TiltError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("shape is empty")]
    Empty,

    #[error("shape is not connected")]
    Disconnected,

    #[error("cell {0} is not part of the shape")]
    NotInShape(Cell2),

    #[error("cube {0} is not part of the polycube")]
    NotInPolycube(Cell3),

    #[error("cell {0} is already present")]
    AlreadyPresent(Cell2),

    #[error("shape is not tree-shaped")]
    NotTreeShaped,

    #[error("shape has holes")]
    NotSimple,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid construction sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid maze: {0}")]
    InvalidMaze(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T, E = TiltError> = std::result::Result<T, E>;
