//! Tilt assembly decisions: construction steps, replay and verification,
//! the greedy convex-tile decomposition for hole-free shapes and an exact
//! search for small shapes of any kind.
//!
//! A construction sequence is a reversed decomposition sequence: a tile that
//! can leave the shape towards `d` (empty blocking set, remainder connected)
//! comes back to the same cell when sent from side `d` along its lane.

use std::collections::VecDeque;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::blocking::BlockingIndex;
use crate::error::{Result, TiltError};
use crate::exact::{Decomposition, Instance, SearchLimits};
use crate::grid::{is_convex_at, local_cut_rule, Cell2, CellSet, Direction2, Polyomino};

/// Default size cap for [`decide_exact`].
pub const DEFAULT_EXACT_LIMIT: usize = 12;

/// Hard cap of the bitmask search.
pub const MAX_EXACT_CELLS: usize = 64;

/// A tile sent from side `direction` along `lane`: the column `x` for north
/// and south, the row `y` for east and west.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConstructionStep {
    pub direction: Direction2,
    pub lane: i32,
}

impl ConstructionStep {
    pub fn new(direction: Direction2, lane: i32) -> Self {
        Self { direction, lane }
    }

    /// The step that puts `t` back after it was removed towards `d`.
    pub fn inserting(t: Cell2, d: Direction2) -> Self {
        Self::new(d, d.lane_of(t))
    }
}

impl fmt::Display for ConstructionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {} {}", self.direction, self.lane)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstructionSequence {
    pub seed: Cell2,
    pub steps: Vec<ConstructionStep>,
}

impl ConstructionSequence {
    pub fn new(seed: Cell2, steps: Vec<ConstructionStep>) -> Self {
        Self { seed, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the sequence and returns the built shape.
    pub fn build(&self) -> std::result::Result<Polyomino, VerifyFailure> {
        let mut asm = Assembler::new(self.seed);
        for (index, &step) in self.steps.iter().enumerate() {
            asm.apply(step)
                .map_err(|_| VerifyFailure::NoOp { index, step })?;
        }
        Ok(asm.into_polyomino())
    }

    /// Text form: `seed x y` followed by one `step <n|e|s|w> <lane>` per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("seed {} {}\n", self.seed.x, self.seed.y);
        for s in &self.steps {
            out.push_str(&format!("{s}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut seed = None;
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| TiltError::Parse {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["seed", x, y] => {
                    if seed.is_some() {
                        return Err(err("duplicate seed line".into()));
                    }
                    let x = x
                        .parse()
                        .map_err(|_| err(format!("bad x coordinate {x:?}")))?;
                    let y = y
                        .parse()
                        .map_err(|_| err(format!("bad y coordinate {y:?}")))?;
                    seed = Some(Cell2::new(x, y));
                }
                ["step", d, lane] => {
                    if seed.is_none() {
                        return Err(err("step before seed".into()));
                    }
                    let direction = Direction2::from_letter(d)
                        .ok_or_else(|| err(format!("bad direction {d:?}")))?;
                    let lane = lane
                        .parse()
                        .map_err(|_| err(format!("bad lane {lane:?}")))?;
                    steps.push(ConstructionStep { direction, lane });
                }
                _ => return Err(err(format!("unrecognized line {line:?}"))),
            }
        }
        let seed = seed.ok_or(TiltError::Parse {
            line: 0,
            message: "missing seed line".into(),
        })?;
        Ok(Self { seed, steps })
    }
}

/// A step whose tile never touches the shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no-op step: the tile passes the shape without touching it")]
pub struct NoOpStep;

/// Incremental replay of construction steps.
#[derive(Debug, Clone)]
pub struct Assembler {
    index: BlockingIndex,
    placed: Vec<Cell2>,
}

impl Assembler {
    pub fn new(seed: Cell2) -> Self {
        Self::from_polyomino(&Polyomino::from_sorted_unchecked(vec![seed]))
    }

    pub fn from_polyomino(p: &Polyomino) -> Self {
        Self {
            index: BlockingIndex::build(p),
            placed: p.cells().to_vec(),
        }
    }

    /// Sends a tile in and returns the cell it lands on.
    pub fn apply(&mut self, step: ConstructionStep) -> std::result::Result<Cell2, NoOpStep> {
        let cell = self
            .index
            .landing(step.direction, step.lane)
            .ok_or(NoOpStep)?;
        self.index.insert(cell).expect("landing cell is empty");
        self.placed.push(cell);
        Ok(cell)
    }

    /// Cells in placement order, seed first.
    pub fn placed(&self) -> &[Cell2] {
        &self.placed
    }

    pub fn len(&self) -> usize {
        self.placed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }

    pub fn index(&self) -> &BlockingIndex {
        &self.index
    }

    pub fn into_polyomino(self) -> Polyomino {
        let mut cells = self.placed;
        cells.sort_unstable();
        Polyomino::from_sorted_unchecked(cells)
    }
}

/// Sends one tile at `p`. Returns the grown shape and the landing cell.
pub fn apply_step(
    p: &Polyomino,
    step: ConstructionStep,
) -> std::result::Result<(Polyomino, Cell2), NoOpStep> {
    let mut asm = Assembler::from_polyomino(p);
    let cell = asm.apply(step)?;
    Ok((asm.into_polyomino(), cell))
}

/// Directions towards which `t` could leave `p`: those whose blocking set,
/// taken in `p` without `t`, is empty. Connectivity is not considered.
pub fn removal_directions(p: &Polyomino, t: Cell2) -> Result<Vec<Direction2>> {
    if !p.contains(t) {
        return Err(TiltError::NotInShape(t));
    }
    let ix = BlockingIndex::build(p);
    Ok(ix.free_directions(t))
}

/// A removal of `t` towards `d` is valid iff `d` is free and the rest of the
/// shape stays connected.
pub fn is_valid_removal(p: &Polyomino, t: Cell2, d: Direction2) -> Result<bool> {
    Ok(removal_directions(p, t)?.contains(&d) && p.len() > 1 && !p.is_cut_tile_exact(t)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionResult {
    Constructible(ConstructionSequence),
    NotConstructible,
    NotSupported(String),
    ResourceLimit(String),
}

impl DecisionResult {
    pub fn is_constructible(&self) -> bool {
        matches!(self, DecisionResult::Constructible(_))
    }

    pub fn sequence(&self) -> Option<&ConstructionSequence> {
        match self {
            DecisionResult::Constructible(s) => Some(s),
            _ => None,
        }
    }

    /// `Some(answer)` for a definite yes/no.
    pub fn answer(&self) -> Option<bool> {
        match self {
            DecisionResult::Constructible(_) => Some(true),
            DecisionResult::NotConstructible => Some(false),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CandidateOrder {
    /// First in, first out, seeded in canonical cell order.
    #[default]
    Fifo,
    /// Uniformly random admissible candidate at every removal.
    Random(u64),
}

#[derive(Debug, Clone, Default)]
pub struct DecideOptions {
    pub forced_seed: Option<Cell2>,
    pub order: CandidateOrder,
    /// Cross-check every local cut-tile answer against a full connectivity
    /// check (linear per query) and use the latter.
    pub validate_cut_rule: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecideStats {
    pub removals: usize,
    /// Most candidate re-examinations caused by a single removal.
    pub max_rechecks_per_removal: usize,
    pub cut_rule_mismatches: usize,
}

/// Greedy decider for hole-free polyominoes.
pub fn decide_simple(p: &Polyomino, forced_seed: Option<Cell2>) -> Result<DecisionResult> {
    let opts = DecideOptions {
        forced_seed,
        ..DecideOptions::default()
    };
    decide_simple_with(p, &opts).map(|(r, _)| r)
}

/// Greedy decider with explicit options, also reporting work counters.
///
/// Keeps the set of removable candidates (convex, unblocked, not a cut tile),
/// removes one at a time and re-examines only the tiles around the removed
/// one. Returns [`DecisionResult::NotSupported`] for shapes with holes.
pub fn decide_simple_with(
    p: &Polyomino,
    opts: &DecideOptions,
) -> Result<(DecisionResult, DecideStats)> {
    if let Some(s) = opts.forced_seed {
        if !p.contains(s) {
            return Err(TiltError::NotInShape(s));
        }
    }
    let mut stats = DecideStats::default();
    if !p.is_simple() {
        return Ok((
            DecisionResult::NotSupported("greedy decomposition requires a hole-free shape".into()),
            stats,
        ));
    }

    let mut state = GreedyState {
        present: CellSet::from_cells(p.cells()),
        index: BlockingIndex::build(p),
        forced: opts.forced_seed,
        validate: opts.validate_cut_rule,
        mismatches: 0,
    };
    let mut pool = CandidatePool::new(opts.order);
    for &t in p.cells() {
        if state.free_candidate_direction(t).is_some() {
            pool.push(t);
        }
    }

    let mut removals: Vec<(Cell2, Direction2)> = Vec::with_capacity(p.len());
    while state.present.len() > 1 {
        let Some(t) = pool.pop() else {
            break;
        };
        let Some(d) = state.free_candidate_direction(t) else {
            continue;
        };
        state.present.remove(t);
        state.index.remove(t).expect("candidate is indexed");
        removals.push((t, d));

        let mut rechecks = 0;
        let frontier = state.index.frontier_after_removal(t);
        for q in frontier.into_iter().chain(t.neighbors()) {
            if !state.present.contains(q) || pool.contains(q) {
                continue;
            }
            rechecks += 1;
            if state.free_candidate_direction(q).is_some() {
                pool.push(q);
            }
        }
        stats.max_rechecks_per_removal = stats.max_rechecks_per_removal.max(rechecks);
    }
    stats.removals = removals.len();
    stats.cut_rule_mismatches = state.mismatches;

    if state.present.len() != 1 {
        return Ok((DecisionResult::NotConstructible, stats));
    }
    let seed = match opts.forced_seed {
        Some(s) => s,
        None => {
            let removed: std::collections::HashSet<Cell2> = removals.iter().map(|r| r.0).collect();
            *p.cells()
                .iter()
                .find(|c| !removed.contains(c))
                .expect("one tile remains")
        }
    };
    let steps = removals
        .iter()
        .rev()
        .map(|&(t, d)| ConstructionStep::inserting(t, d))
        .collect();
    Ok((
        DecisionResult::Constructible(ConstructionSequence::new(seed, steps)),
        stats,
    ))
}

struct GreedyState {
    present: CellSet,
    index: BlockingIndex,
    forced: Option<Cell2>,
    validate: bool,
    mismatches: usize,
}

impl GreedyState {
    /// A free direction if `t` is currently a removal candidate.
    fn free_candidate_direction(&mut self, t: Cell2) -> Option<Direction2> {
        if Some(t) == self.forced || !self.present.contains(t) {
            return None;
        }
        let present = &self.present;
        if !is_convex_at(|c| present.contains(c), t) {
            return None;
        }
        let mut cut = local_cut_rule(|c| present.contains(c), t).expect("tile is convex");
        if self.validate {
            let exact = self.is_cut_exact(t);
            if exact != cut {
                self.mismatches += 1;
                cut = exact;
            }
        }
        if cut {
            return None;
        }
        Direction2::ALL
            .into_iter()
            .find(|&d| !self.index.is_blocked(t, d))
    }

    fn is_cut_exact(&self, t: Cell2) -> bool {
        let Some(start) = t
            .neighbors()
            .into_iter()
            .find(|&c| self.present.contains(c))
        else {
            return false;
        };
        let mut seen = std::collections::HashSet::from([start, t]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for nb in c.neighbors() {
                if self.present.contains(nb) && seen.insert(nb) {
                    queue.push_back(nb);
                }
            }
        }
        seen.len() - 1 != self.present.len() - 1
    }
}

struct CandidatePool {
    fifo: VecDeque<Cell2>,
    random: Option<(StdRng, Vec<Cell2>)>,
    members: std::collections::HashSet<Cell2>,
}

impl CandidatePool {
    fn new(order: CandidateOrder) -> Self {
        let random = match order {
            CandidateOrder::Fifo => None,
            CandidateOrder::Random(seed) => Some((StdRng::seed_from_u64(seed), Vec::new())),
        };
        Self {
            fifo: VecDeque::new(),
            random,
            members: std::collections::HashSet::new(),
        }
    }

    fn contains(&self, c: Cell2) -> bool {
        self.members.contains(&c)
    }

    fn push(&mut self, c: Cell2) {
        if !self.members.insert(c) {
            return;
        }
        match &mut self.random {
            Some((_, v)) => v.push(c),
            None => self.fifo.push_back(c),
        }
    }

    fn pop(&mut self) -> Option<Cell2> {
        let c = match &mut self.random {
            Some((rng, v)) => {
                if v.is_empty() {
                    return None;
                }
                let i = rng.random_range(0..v.len());
                v.swap_remove(i)
            }
            None => self.fifo.pop_front()?,
        };
        self.members.remove(&c);
        Some(c)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExactOptions {
    pub limit: usize,
    pub forced_seed: Option<Cell2>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            limit: DEFAULT_EXACT_LIMIT,
            forced_seed: None,
        }
    }
}

pub(crate) fn instance_2d(cells: &[Cell2]) -> Instance {
    let n = cells.len();
    let pos = |c: Cell2| cells.binary_search(&c).ok();
    let mut neighbors = vec![0u64; n];
    let mut blockers = vec![vec![0u64; 4]; n];
    for (i, &c) in cells.iter().enumerate() {
        for nb in c.neighbors() {
            if let Some(j) = pos(nb) {
                neighbors[i] |= 1 << j;
            }
        }
        for (k, d) in Direction2::ALL.into_iter().enumerate() {
            for (j, &q) in cells.iter().enumerate() {
                if crate::blocking::is_blocked_naive(&[q], c, d) {
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

/// Exact decider: memoized search over all removal orders. Handles shapes
/// with holes; exponential, so capped at `opts.limit` tiles.
pub fn decide_exact(p: &Polyomino, opts: &ExactOptions) -> Result<DecisionResult> {
    let limit = opts.limit.min(MAX_EXACT_CELLS);
    if p.len() > limit {
        return Ok(DecisionResult::ResourceLimit(format!(
            "{} tiles exceed the exact search cap of {limit}",
            p.len()
        )));
    }
    let forced = match opts.forced_seed {
        Some(s) => Some(p.index_of(s).ok_or(TiltError::NotInShape(s))?),
        None => None,
    };
    let inst = instance_2d(p.cells());
    Ok(match inst.decompose(forced, SearchLimits::default()) {
        Decomposition::Found { removals, seed } => {
            let steps = removals
                .iter()
                .rev()
                .map(|&(c, k)| ConstructionStep::inserting(p.cells()[c], Direction2::ALL[k]))
                .collect();
            DecisionResult::Constructible(ConstructionSequence::new(p.cells()[seed], steps))
        }
        Decomposition::Impossible { .. } => DecisionResult::NotConstructible,
        Decomposition::Budget { explored } => DecisionResult::ResourceLimit(format!(
            "search budget exhausted after {explored} states"
        )),
    })
}

/// Greedy for hole-free shapes, exact search for the rest when small enough.
pub fn decide(
    p: &Polyomino,
    forced_seed: Option<Cell2>,
    exact_limit: usize,
) -> Result<DecisionResult> {
    if p.is_simple() {
        decide_simple(p, forced_seed)
    } else if p.len() <= exact_limit {
        decide_exact(
            p,
            &ExactOptions {
                limit: exact_limit,
                forced_seed,
            },
        )
    } else {
        Ok(DecisionResult::NotSupported(
            "shape has holes and exceeds the exact search cap".into(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyFailure {
    #[error("step {index} ({step}) is a no-op")]
    NoOp {
        index: usize,
        step: ConstructionStep,
    },
    #[error("size mismatch: sequence builds {built} tiles, shape has {expected}")]
    SizeMismatch { expected: usize, built: usize },
    #[error("step {index} lands on {cell}, outside the target shape")]
    LandedOutside { index: usize, cell: Cell2 },
    #[error("built shape is not a translated copy of the target")]
    ShapeMismatch,
}

/// Replays `seq` and checks the result is a translated copy of `p`.
pub fn verify(p: &Polyomino, seq: &ConstructionSequence) -> std::result::Result<(), VerifyFailure> {
    let mut asm = Assembler::new(seq.seed);
    for (index, &step) in seq.steps.iter().enumerate() {
        asm.apply(step)
            .map_err(|_| VerifyFailure::NoOp { index, step })?;
    }
    if asm.len() != p.len() {
        return Err(VerifyFailure::SizeMismatch {
            expected: p.len(),
            built: asm.len(),
        });
    }
    let placed = asm.placed().to_vec();
    let built = asm.into_polyomino();
    if built.congruent(p) {
        return Ok(());
    }
    if p.contains(seq.seed) {
        if let Some((i, &cell)) = placed
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| !p.contains(c))
        {
            return Err(VerifyFailure::LandedOutside { index: i - 1, cell });
        }
    }
    Err(VerifyFailure::ShapeMismatch)
}

/// Rewrites steps whose lane misses the bounding box of the partial shape so
/// the tile arrives from the perpendicular side facing the shape instead.
/// The landing cells are unchanged.
pub fn normalize_lanes(
    seq: &ConstructionSequence,
) -> std::result::Result<ConstructionSequence, VerifyFailure> {
    let mut asm = Assembler::new(seq.seed);
    let mut lo = seq.seed;
    let mut hi = seq.seed;
    let mut steps = Vec::with_capacity(seq.steps.len());
    for (index, &step) in seq.steps.iter().enumerate() {
        let cell = asm
            .apply(step)
            .map_err(|_| VerifyFailure::NoOp { index, step })?;
        let mut out = step;
        if step.direction.is_vertical() {
            if cell.x < lo.x {
                out = ConstructionStep::new(Direction2::West, cell.y);
            } else if cell.x > hi.x {
                out = ConstructionStep::new(Direction2::East, cell.y);
            }
        } else if cell.y < lo.y {
            out = ConstructionStep::new(Direction2::South, cell.x);
        } else if cell.y > hi.y {
            out = ConstructionStep::new(Direction2::North, cell.x);
        }
        lo = Cell2::new(lo.x.min(cell.x), lo.y.min(cell.y));
        hi = Cell2::new(hi.x.max(cell.x), hi.y.max(cell.y));
        steps.push(out);
    }
    let normalized = ConstructionSequence::new(seq.seed, steps);
    debug_assert_eq!(normalized.build(), seq.build());
    Ok(normalized)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: i32, y: i32) -> Cell2 {
        Cell2::new(x, y)
    }

    fn plus() -> Polyomino {
        Polyomino::from_ascii(".#.\n###\n.#.\n").unwrap()
    }

    #[test]
    fn apply_step_examples() {
        let single = Polyomino::new([c(0, 0)]).unwrap();
        let (p, cell) = apply_step(&single, ConstructionStep::new(Direction2::East, 0)).unwrap();
        assert_eq!(cell, c(1, 0));
        assert_eq!(p.len(), 2);
        let domino = Polyomino::rectangle(2, 1).unwrap();
        let (_, cell) = apply_step(&domino, ConstructionStep::new(Direction2::North, 2)).unwrap();
        assert_eq!(cell, c(2, 0));
        assert_eq!(
            apply_step(&domino, ConstructionStep::new(Direction2::North, 5)),
            Err(NoOpStep)
        );
    }

    /// Literal simulation: move the tile in from far away one cell at a time.
    fn slide_in(p: &Polyomino, step: ConstructionStep) -> Option<Cell2> {
        let (lo, hi) = p.bounding_box();
        let far = 4 + (hi.x - lo.x).max(hi.y - lo.y);
        let (mut pos, towards) = match step.direction {
            Direction2::North => (c(step.lane, hi.y + far), Direction2::South),
            Direction2::South => (c(step.lane, lo.y - far), Direction2::North),
            Direction2::East => (c(hi.x + far, step.lane), Direction2::West),
            Direction2::West => (c(lo.x - far, step.lane), Direction2::East),
        };
        for _ in 0..3 * far + 8 {
            if p.neighbors_of(pos).next().is_some() {
                return Some(pos);
            }
            pos = pos.step(towards);
        }
        None
    }

    #[test]
    fn landing_matches_slide_simulation() {
        for n in 1..=5 {
            for p in crate::grid::enumerate_polyominoes(n).unwrap() {
                for d in Direction2::ALL {
                    for lane in -2..=6 {
                        let step = ConstructionStep::new(d, lane);
                        assert_eq!(apply_step(&p, step).ok().map(|r| r.1), slide_in(&p, step));
                    }
                }
            }
        }
    }

    #[test]
    fn removal_direction_examples() {
        let line = Polyomino::rectangle(3, 1).unwrap();
        let mut dirs = removal_directions(&line, c(0, 0)).unwrap();
        dirs.sort();
        assert_eq!(
            dirs,
            vec![Direction2::North, Direction2::South, Direction2::West]
        );
        assert!(removal_directions(&plus(), c(1, 1)).unwrap().is_empty());
        assert!(removal_directions(&line, c(9, 9)).is_err());
    }

    #[test]
    fn line_and_plus_are_constructible() {
        let line = Polyomino::rectangle(5, 1).unwrap();
        let r = decide_simple(&line, None).unwrap();
        assert!(verify(&line, r.sequence().unwrap()).is_ok());

        let r = decide_simple(&plus(), None).unwrap();
        let seq = r.sequence().unwrap();
        assert_eq!(seq.seed, c(1, 1));
        assert!(verify(&plus(), seq).is_ok());
    }

    #[test]
    fn holes_are_not_supported_by_greedy() {
        let ring = Polyomino::from_ascii("###\n#.#\n###\n").unwrap();
        assert!(matches!(
            decide_simple(&ring, None).unwrap(),
            DecisionResult::NotSupported(_)
        ));
        let exact = decide_exact(&ring, &ExactOptions::default()).unwrap();
        assert!(exact.answer().is_some());
        if let Some(seq) = exact.sequence() {
            assert!(verify(&ring, seq).is_ok());
        }
    }

    #[test]
    fn single_tile() {
        let p = Polyomino::new([c(3, 4)]).unwrap();
        let r = decide_exact(&p, &ExactOptions::default()).unwrap();
        assert_eq!(
            r,
            DecisionResult::Constructible(ConstructionSequence::new(c(3, 4), vec![]))
        );
        assert_eq!(decide_simple(&p, None).unwrap(), r);
    }

    #[test]
    fn exact_limit_is_enforced() {
        let p = Polyomino::rectangle(13, 1).unwrap();
        assert!(matches!(
            decide_exact(&p, &ExactOptions::default()).unwrap(),
            DecisionResult::ResourceLimit(_)
        ));
    }

    #[test]
    fn forced_seed_is_honoured() {
        let line = Polyomino::rectangle(5, 1).unwrap();
        let r = decide_simple(&line, Some(c(2, 0))).unwrap();
        let seq = r.sequence().unwrap();
        assert_eq!(seq.seed, c(2, 0));
        assert!(verify(&line, seq).is_ok());
        assert!(decide_simple(&line, Some(c(9, 0))).is_err());
    }

    #[test]
    fn verify_diagnostics() {
        let line = Polyomino::rectangle(3, 1).unwrap();
        let seq = decide_simple(&line, None)
            .unwrap()
            .sequence()
            .unwrap()
            .clone();
        let mut truncated = seq.clone();
        truncated.steps.pop();
        assert!(matches!(
            verify(&line, &truncated),
            Err(VerifyFailure::SizeMismatch {
                expected: 3,
                built: 2
            })
        ));
        let mut missing = seq.clone();
        missing
            .steps
            .insert(1, ConstructionStep::new(Direction2::North, 40));
        assert!(matches!(
            verify(&line, &missing),
            Err(VerifyFailure::NoOp { index: 1, .. })
        ));
        let bent = ConstructionSequence::new(
            c(0, 0),
            vec![
                ConstructionStep::new(Direction2::East, 0),
                ConstructionStep::new(Direction2::North, 1),
            ],
        );
        assert!(matches!(
            verify(&line, &bent),
            Err(VerifyFailure::LandedOutside { index: 1, .. })
        ));
    }

    #[test]
    fn translated_copies_verify() {
        let line = Polyomino::rectangle(3, 1).unwrap();
        let seq = ConstructionSequence::new(
            c(10, 10),
            vec![
                ConstructionStep::new(Direction2::West, 10),
                ConstructionStep::new(Direction2::West, 10),
            ],
        );
        assert!(verify(&line, &seq).is_ok());
    }

    #[test]
    fn sequence_text_round_trip() {
        let seq = decide_simple(&plus(), None)
            .unwrap()
            .sequence()
            .unwrap()
            .clone();
        let text = seq.to_text();
        assert!(text.starts_with("seed 1 1\n"));
        assert_eq!(ConstructionSequence::from_text(&text).unwrap(), seq);
        let commented = format!("# plus\n{}\n# end\n", text.replace('\n', "  # c\n"));
        assert_eq!(ConstructionSequence::from_text(&commented).unwrap(), seq);
        assert!(ConstructionSequence::from_text("step n 0\n").is_err());
        assert!(ConstructionSequence::from_text("seed 0 0\nstep q 0\n").is_err());
        assert!(ConstructionSequence::from_text("").is_err());
    }

    #[test]
    fn normalization_keeps_shape_and_puts_lanes_inside_the_box() {
        // tile arriving from the north in the column right of the seed
        let seq =
            ConstructionSequence::new(c(0, 0), vec![ConstructionStep::new(Direction2::North, 1)]);
        let n = normalize_lanes(&seq).unwrap();
        assert_eq!(n.steps, vec![ConstructionStep::new(Direction2::East, 0)]);
        assert_eq!(n.build().unwrap(), seq.build().unwrap());
    }
}
