//! Tilt assembly of polycubes.
//!
//! A cube sent from side `d` moves along its lane until it is face-adjacent
//! to the structure. It can reach `p` iff nothing lies beyond `p` towards
//! `d` in the lane of `p` or in any of the four lanes sharing a face with it.
//! Every decision problem here is NP-hard, so the deciders are exact
//! searches with explicit limits.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Result, TiltError};
use crate::exact::{Decomposition, Instance, SearchLimits};
use crate::grid::{Cell3, Direction3, Polycube, Polyomino};
use crate::tap::{ConstructionSequence, MAX_EXACT_CELLS};

pub const DEFAULT_POLYCUBE_LIMIT: usize = 18;
pub const DEFAULT_PATH_BUDGET: u64 = 5_000_000;

/// A nonempty set of arrival sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectionSet3 {
    bits: u8,
}

impl DirectionSet3 {
    pub const ALL6: Self = Self { bits: 0b11_1111 };
    /// Everything except arriving from below.
    pub const NO_BELOW: Self = Self { bits: 0b11_1101 };
    pub const LATERAL: Self = Self { bits: 0b11_1100 };

    fn bit(d: Direction3) -> u8 {
        1 << Direction3::ALL
            .iter()
            .position(|&x| x == d)
            .expect("listed")
    }

    pub fn new(dirs: impl IntoIterator<Item = Direction3>) -> Result<Self> {
        let bits = dirs.into_iter().fold(0, |b, d| b | Self::bit(d));
        if bits == 0 {
            return Err(TiltError::InvalidSequence("empty direction set".into()));
        }
        Ok(Self { bits })
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "all" => Some(Self::ALL6),
            "no-below" => Some(Self::NO_BELOW),
            "lateral" => Some(Self::LATERAL),
            _ => None,
        }
    }

    pub fn contains(self, d: Direction3) -> bool {
        self.bits & Self::bit(d) != 0
    }

    pub fn is_superset_of(self, other: Self) -> bool {
        self.bits & other.bits == other.bits
    }

    pub fn iter(self) -> impl Iterator<Item = Direction3> {
        Direction3::ALL
            .into_iter()
            .filter(move |&d| self.contains(d))
    }
}

fn coord(c: Cell3, axis: usize) -> i32 {
    match axis {
        0 => c.x,
        1 => c.y,
        _ => c.z,
    }
}

/// Whether `q` lies in the blocking set of `p` for arrival side `d`.
fn blocks(q: Cell3, p: Cell3, d: Direction3) -> bool {
    let axis = d.axis();
    if (coord(q, axis) - coord(p, axis)) * d.sign() <= 0 {
        return false;
    }
    let (a, b) = d.lane_of(q);
    let (pa, pb) = d.lane_of(p);
    a.abs_diff(pa) + b.abs_diff(pb) <= 1
}

pub fn blocked_3d(p: &Polycube, at: Cell3, d: Direction3) -> bool {
    p.cells().iter().any(|&q| blocks(q, at, d))
}

/// The cell a cube sent from side `d` along `lane` comes to rest in, found
/// by moving it one cell at a time from beyond the structure. `None` when
/// it passes by.
pub fn slide_landing_3d(cells: &HashSet<Cell3>, d: Direction3, lane: (i32, i32)) -> Option<Cell3> {
    let axis = d.axis();
    let far = cells.iter().map(|&c| coord(c, axis) * d.sign()).max()? + 2;
    let place = |t: i32| -> Cell3 {
        let (a, b) = lane;
        let v = t * d.sign();
        match axis {
            0 => Cell3::new(v, a, b),
            1 => Cell3::new(a, v, b),
            _ => Cell3::new(a, b, v),
        }
    };
    let near = cells.iter().map(|&c| coord(c, axis) * d.sign()).min()? - 2;
    let mut t = far;
    while t >= near {
        let c = place(t);
        if cells.contains(&c) {
            return None;
        }
        if c.neighbors().iter().any(|n| cells.contains(n)) {
            return Some(c);
        }
        t -= 1;
    }
    None
}

/// A cube sent from side `direction` along `lane` (the two coordinates
/// orthogonal to the direction, in x, y, z order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeStep {
    pub direction: Direction3,
    pub lane: (i32, i32),
}

impl CubeStep {
    pub fn inserting(c: Cell3, d: Direction3) -> Self {
        Self {
            direction: d,
            lane: d.lane_of(c),
        }
    }
}

impl fmt::Display for CubeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {} {} {}", self.direction, self.lane.0, self.lane.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubeSequence {
    pub seed: Cell3,
    pub steps: Vec<CubeStep>,
}

impl CubeSequence {
    /// Replays the sequence with the slide simulator.
    pub fn build(&self) -> Result<Polycube> {
        let mut cells = HashSet::from([self.seed]);
        for (i, s) in self.steps.iter().enumerate() {
            let c = slide_landing_3d(&cells, s.direction, s.lane)
                .ok_or_else(|| TiltError::InvalidSequence(format!("step {i} ({s}) is a no-op")))?;
            cells.insert(c);
        }
        Polycube::new(cells)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("seed {} {} {}\n", self.seed.x, self.seed.y, self.seed.z);
        for s in &self.steps {
            out.push_str(&format!("{s}\n"));
        }
        out
    }

    /// Lifts a planar sequence to the `z = 0` layer.
    pub fn lift(seq: &ConstructionSequence) -> Self {
        Self {
            seed: Cell3::new(seq.seed.x, seq.seed.y, 0),
            steps: seq
                .steps
                .iter()
                .map(|s| CubeStep {
                    direction: Direction3::lateral(s.direction),
                    lane: (s.lane, 0),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubeDecision {
    Constructible(CubeSequence),
    NotConstructible,
    ResourceLimit(String),
}

impl CubeDecision {
    pub fn answer(&self) -> Option<bool> {
        match self {
            CubeDecision::Constructible(_) => Some(true),
            CubeDecision::NotConstructible => Some(false),
            CubeDecision::ResourceLimit(_) => None,
        }
    }

    pub fn sequence(&self) -> Option<&CubeSequence> {
        match self {
            CubeDecision::Constructible(s) => Some(s),
            _ => None,
        }
    }
}

fn instance_3d(cells: &[Cell3], dirs: &[Direction3]) -> Instance {
    let n = cells.len();
    let pos = |c: Cell3| cells.binary_search(&c).ok();
    let mut neighbors = vec![0u64; n];
    let mut blockers = vec![vec![0u64; dirs.len()]; n];
    for (i, &c) in cells.iter().enumerate() {
        for nb in c.neighbors() {
            if let Some(j) = pos(nb) {
                neighbors[i] |= 1 << j;
            }
        }
        for (k, &d) in dirs.iter().enumerate() {
            for (j, &q) in cells.iter().enumerate() {
                if blocks(q, c, d) {
                    blockers[i][k] |= 1 << j;
                }
            }
        }
    }
    Instance {
        n,
        neighbors,
        blockers,
    }
}

/// Exact search over removal orders with cubes leaving only through sides
/// in `dirs`.
pub fn decide_polycube(p: &Polycube, dirs: DirectionSet3, limit: usize) -> Result<CubeDecision> {
    let limit = limit.min(MAX_EXACT_CELLS);
    if p.len() > limit {
        return Ok(CubeDecision::ResourceLimit(format!(
            "{} cubes exceed the exact search cap of {limit}",
            p.len()
        )));
    }
    let allowed: Vec<Direction3> = dirs.iter().collect();
    let inst = instance_3d(p.cells(), &allowed);
    Ok(match inst.decompose(None, SearchLimits::default()) {
        Decomposition::Found { removals, seed } => CubeDecision::Constructible(CubeSequence {
            seed: p.cells()[seed],
            steps: removals
                .iter()
                .rev()
                .map(|&(c, k)| CubeStep::inserting(p.cells()[c], allowed[k]))
                .collect(),
        }),
        Decomposition::Impossible { .. } => CubeDecision::NotConstructible,
        Decomposition::Budget { explored } => {
            CubeDecision::ResourceLimit(format!("search budget exhausted after {explored} states"))
        }
    })
}

/// Ordered, face-adjacent, repetition-free cubes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubePath {
    cells: Vec<Cell3>,
}

impl CubePath {
    pub fn new(cells: Vec<Cell3>) -> Result<Self> {
        if cells.is_empty() {
            return Err(TiltError::InvalidPath("empty path".into()));
        }
        if cells.windows(2).any(|w| !w[0].is_adjacent(w[1])) {
            return Err(TiltError::InvalidPath(
                "consecutive cubes must share a face".into(),
            ));
        }
        let distinct: HashSet<Cell3> = cells.iter().copied().collect();
        if distinct.len() != cells.len() {
            return Err(TiltError::InvalidPath("path revisits a cube".into()));
        }
        Ok(Self { cells })
    }

    pub fn cells(&self) -> &[Cell3] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Whether the cubes of `path` can be inserted in path order.
pub fn is_cube_path_constructible(path: &CubePath, dirs: DirectionSet3) -> bool {
    let cells = path.cells();
    (1..cells.len()).all(|i| {
        dirs.iter()
            .any(|d| !cells[..i].iter().any(|&q| blocks(q, cells[i], d)))
    })
}

/// Depth-first search over simple paths of `p` from `s` to `t` whose cubes
/// can be inserted in path order; extensions whose next cube is blocked
/// are pruned. Neighbors are tried in sorted order, so the result is
/// deterministic.
pub fn constructible_path_3d(
    p: &Polycube,
    s: Cell3,
    t: Cell3,
    dirs: DirectionSet3,
    budget: u64,
) -> Result<Option<CubePath>> {
    for c in [s, t] {
        if !p.contains(c) {
            return Err(TiltError::NotInPolycube(c));
        }
    }
    let mut path = vec![s];
    let mut on_path = HashSet::from([s]);
    let mut stack: Vec<Vec<Cell3>> = Vec::new();
    let candidates = |c: Cell3| -> Vec<Cell3> {
        let mut v: Vec<Cell3> = c
            .neighbors()
            .into_iter()
            .filter(|&n| p.contains(n))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    if s == t {
        return Ok(Some(CubePath::new(path)?));
    }
    stack.push(candidates(s));
    let mut explored = 0u64;
    while let Some(pending) = stack.last_mut() {
        let Some(next) = pending.pop() else {
            stack.pop();
            let c = path.pop().expect("aligned with stack");
            on_path.remove(&c);
            continue;
        };
        if on_path.contains(&next) {
            continue;
        }
        explored += 1;
        if explored > budget {
            return Err(TiltError::ResourceLimit(format!(
                "path search budget exhausted after {explored} extensions"
            )));
        }
        let free = dirs
            .iter()
            .any(|d| !path.iter().any(|&q| blocks(q, next, d)));
        if !free {
            continue;
        }
        path.push(next);
        on_path.insert(next);
        if next == t {
            return Ok(Some(CubePath::new(path)?));
        }
        stack.push(candidates(next));
    }
    Ok(None)
}

pub fn flat_embedding(p: &Polyomino) -> Polycube {
    Polycube::new(p.cells().iter().map(|c| Cell3::new(c.x, c.y, 0)))
        .expect("polyominoes are connected")
}
