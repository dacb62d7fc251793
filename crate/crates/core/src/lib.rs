//! Tilt assembly of polyominoes and polycubes.
//!
//! Tiles slide in from one of the four sides and stick to the first shape
//! tile they touch. The crate decides whether a shape can be built that way,
//! searches for large buildable subshapes, simulates tilt mazes that copy a
//! shape, and treats the three-dimensional variant.

pub mod blocking;
pub mod cube;
pub mod error;
pub mod exact;
pub mod grid;
pub mod maxtap;
pub mod maze;
pub mod tap;
pub mod tilt;

pub use blocking::BlockingIndex;
pub use cube::{
    blocked_3d, constructible_path_3d, decide_polycube, flat_embedding, CubeDecision, CubePath,
    CubeSequence, CubeStep, DirectionSet3,
};
pub use error::{Result, TiltError};
pub use grid::{
    enumerate_polyominoes, parse_ascii, render_ascii, Cell2, Cell3, Direction2, Direction3,
    Polycube, Polyomino,
};
pub use maxtap::{
    exact_maxtap, is_path_sequentially_constructible, longest_constructible_shortest_path,
    longest_sequential_path_tree, maxtap_sqrt_bound, MaxTapKind, MaxTapResult, SqrtBound, TilePath,
};
pub use maze::{generate_maze, run_pipeline, MazeLayout, PipelineReport};
pub use tap::{
    apply_step, decide, decide_exact, decide_simple, normalize_lanes, verify, ConstructionSequence,
    ConstructionStep, DecisionResult, VerifyFailure,
};
pub use tilt::{settle, Depot, SettleEvent, StepEvent, TiltWorld};
