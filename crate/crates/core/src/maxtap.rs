//! Maximum constructible subshapes and constructible paths.
//!
//! A path is *sequentially constructible* when its tiles can be inserted in
//! path order, each one arriving from a side whose blocking set (with
//! respect to the tiles placed so far) is empty. Unchosen tiles of the host
//! shape never interfere.

use std::collections::VecDeque;

use crate::blocking::BlockingIndex;
use crate::error::{Result, TiltError};
use crate::exact::SearchLimits;
use crate::grid::{Cell2, Direction2, Polyomino};
use crate::tap::{instance_2d, ConstructionSequence, ConstructionStep, MAX_EXACT_CELLS};

pub const DEFAULT_MAXTAP_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TilePath {
    cells: Vec<Cell2>,
}

impl TilePath {
    pub fn new(cells: Vec<Cell2>) -> Result<Self> {
        if cells.is_empty() {
            return Err(TiltError::InvalidPath("empty path".into()));
        }
        for w in cells.windows(2) {
            if !w[0].is_adjacent(w[1]) {
                return Err(TiltError::InvalidPath(format!(
                    "{} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        let mut sorted = cells.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(TiltError::InvalidPath("path revisits a cell".into()));
        }
        Ok(Self { cells })
    }

    pub fn cells(&self) -> &[Cell2] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn first(&self) -> Cell2 {
        self.cells[0]
    }

    pub fn last(&self) -> Cell2 {
        self.cells[self.cells.len() - 1]
    }

    pub fn reversed(&self) -> Self {
        let mut cells = self.cells.clone();
        cells.reverse();
        Self { cells }
    }

    pub fn to_polyomino(&self) -> Polyomino {
        Polyomino::new(self.cells.iter().copied()).expect("a path is connected")
    }

    /// The construction sequence inserting the tiles in path order, if the
    /// path is sequentially constructible.
    pub fn sequence(&self) -> Option<ConstructionSequence> {
        let mut ix = BlockingIndex::new();
        ix.insert(self.cells[0]).ok()?;
        let mut steps = Vec::with_capacity(self.cells.len() - 1);
        for &c in &self.cells[1..] {
            let d = Direction2::ALL
                .into_iter()
                .find(|&d| !ix.is_blocked(c, d))?;
            steps.push(ConstructionStep::inserting(c, d));
            ix.insert(c).ok()?;
        }
        Some(ConstructionSequence::new(self.cells[0], steps))
    }
}

impl std::fmt::Display for TilePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxTapKind {
    Exact,
    TreePathApprox,
    ShortestPathApprox,
}

impl MaxTapKind {
    pub fn name(self) -> &'static str {
        match self {
            MaxTapKind::Exact => "exact",
            MaxTapKind::TreePathApprox => "tree_path_approx",
            MaxTapKind::ShortestPathApprox => "shortest_path_approx",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxTapResult {
    pub subshape: Polyomino,
    pub sequence: ConstructionSequence,
    pub kind: MaxTapKind,
}

impl MaxTapResult {
    fn from_path(path: &TilePath, kind: MaxTapKind) -> Self {
        Self {
            subshape: path.to_polyomino(),
            sequence: path
                .sequence()
                .expect("search only returns constructible paths"),
            kind,
        }
    }
}

/// Largest connected subset of `p` that has a construction sequence. Ties
/// go to the lexicographically smallest sorted cell list.
pub fn exact_maxtap(p: &Polyomino, limit: usize) -> Result<MaxTapResult> {
    let limit = limit.min(MAX_EXACT_CELLS);
    if p.len() > limit {
        return Err(TiltError::ResourceLimit(format!(
            "{} tiles exceed the exact MaxTAP cap of {limit}",
            p.len()
        )));
    }
    let cells = p.cells();
    let inst = instance_2d(cells);
    let reached = inst
        .assemblable_subsets(SearchLimits::default())
        .map_err(|explored| {
            TiltError::ResourceLimit(format!("search budget exhausted after {explored} states"))
        })?;
    let cells_of = |mask: u64| -> Vec<Cell2> {
        (0..cells.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| cells[i])
            .collect()
    };
    let best = reached
        .keys()
        .copied()
        .max_by(|&a, &b| {
            a.count_ones()
                .cmp(&b.count_ones())
                .then_with(|| cells_of(b).cmp(&cells_of(a)))
        })
        .expect("singletons are always reachable");

    let mut steps = Vec::new();
    let mut mask = best;
    while let Some(&Some((parent, c, k))) = reached.get(&mask) {
        steps.push(ConstructionStep::inserting(cells[c], Direction2::ALL[k]));
        mask = parent;
    }
    steps.reverse();
    Ok(MaxTapResult {
        subshape: Polyomino::new(cells_of(best))?,
        sequence: ConstructionSequence::new(cells[mask.trailing_zeros() as usize], steps),
        kind: MaxTapKind::Exact,
    })
}

pub fn is_path_sequentially_constructible(path: &TilePath) -> bool {
    let mut ix = BlockingIndex::new();
    for (i, &c) in path.cells().iter().enumerate() {
        if i > 0 && Direction2::ALL.into_iter().all(|d| ix.is_blocked(c, d)) {
            return false;
        }
        ix.insert(c).expect("path cells are distinct");
    }
    true
}

fn can_add(ix: &BlockingIndex, c: Cell2) -> bool {
    Direction2::ALL.into_iter().any(|d| !ix.is_blocked(c, d))
}

/// Depth-first search along `children` from `start`, extending the current
/// path only while the next tile can be added; longer (then smaller) paths
/// replace `best`.
fn dfs_longest(
    start: Cell2,
    children: impl Fn(Cell2, Option<Cell2>) -> Vec<Cell2>,
    best: &mut Vec<Cell2>,
) {
    let mut ix = BlockingIndex::new();
    let mut path = vec![start];
    ix.insert(start).expect("fresh index");
    // unexplored children of each tile on the current path
    let mut stack: Vec<Vec<Cell2>> = vec![children(start, None)];
    consider(&path, best);
    while let Some(pending) = stack.last_mut() {
        match pending.pop() {
            Some(next) => {
                if !can_add(&ix, next) {
                    continue;
                }
                let parent = *path.last().expect("nonempty path");
                ix.insert(next).expect("paths never revisit a tile");
                path.push(next);
                consider(&path, best);
                let mut kids = children(next, Some(parent));
                kids.reverse();
                stack.push(kids);
            }
            None => {
                stack.pop();
                let t = path.pop().expect("stack and path stay aligned");
                ix.remove(t).expect("tile was inserted");
            }
        }
    }
}

fn consider(path: &[Cell2], best: &mut Vec<Cell2>) {
    if path.len() > best.len() || (path.len() == best.len() && path < best.as_slice()) {
        *best = path.to_vec();
    }
}

/// Longest sequentially constructible path of a tree-shaped polyomino,
/// found by a pruned depth-first search from every tile.
pub fn longest_sequential_path_tree(p: &Polyomino) -> Result<TilePath> {
    if !p.is_tree_shaped() {
        return Err(TiltError::NotTreeShaped);
    }
    let mut best = Vec::new();
    for &s in p.cells() {
        dfs_longest(
            s,
            |t, parent| p.neighbors_of(t).filter(|&n| Some(n) != parent).collect(),
            &mut best,
        );
    }
    TilePath::new(best)
}

/// Longest sequentially constructible shortest path of a hole-free
/// polyomino: one breadth-first tree per source tile, searched depth-first.
pub fn longest_constructible_shortest_path(p: &Polyomino) -> Result<TilePath> {
    if !p.is_simple() {
        return Err(TiltError::NotSimple);
    }
    let n = p.len();
    let mut best = Vec::new();
    let mut children: Vec<Vec<Cell2>> = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for (si, &s) in p.cells().iter().enumerate() {
        for v in children.iter_mut() {
            v.clear();
        }
        seen.fill(false);
        seen[si] = true;
        queue.push_back(si);
        while let Some(u) = queue.pop_front() {
            for nb in p.neighbors_of(p.cells()[u]) {
                let j = p.index_of(nb).expect("neighbor is in the shape");
                if !seen[j] {
                    seen[j] = true;
                    children[u].push(nb);
                    queue.push_back(j);
                }
            }
        }
        dfs_longest(
            s,
            |t, _| children[p.index_of(t).expect("tile is in the shape")].clone(),
            &mut best,
        );
    }
    TilePath::new(best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SqrtBound {
    pub path: TilePath,
    /// Exact MaxTAP size, when the shape is small enough to compute it.
    pub opt: Option<usize>,
    /// `4 * len^2 / opt`; at least 1 whenever the bound holds.
    pub ratio: Option<f64>,
}

impl SqrtBound {
    /// `(2 * len)^2 >= opt`, or `None` without an exact optimum.
    pub fn holds(&self) -> Option<bool> {
        let l = self.path.len();
        self.opt.map(|opt| 4 * l * l >= opt)
    }
}

/// The longest sequential path of a tree-shaped polyomino together with its
/// approximation certificate against the exact optimum (computed up to
/// `exact_limit` tiles).
pub fn maxtap_sqrt_bound(p: &Polyomino, exact_limit: usize) -> Result<SqrtBound> {
    let path = longest_sequential_path_tree(p)?;
    let opt = if p.len() <= exact_limit.min(MAX_EXACT_CELLS) {
        Some(exact_maxtap(p, exact_limit)?.subshape.len())
    } else {
        None
    };
    let l = path.len() as f64;
    Ok(SqrtBound {
        ratio: opt.map(|o| 4.0 * l * l / o as f64),
        path,
        opt,
    })
}

/// Exact MaxTAP when small enough, otherwise the best polynomial path
/// approximation the shape admits.
pub fn maxtap(p: &Polyomino, exact_limit: usize) -> Result<MaxTapResult> {
    if p.len() <= exact_limit.min(MAX_EXACT_CELLS) {
        exact_maxtap(p, exact_limit)
    } else if p.is_tree_shaped() {
        Ok(MaxTapResult::from_path(
            &longest_sequential_path_tree(p)?,
            MaxTapKind::TreePathApprox,
        ))
    } else if p.is_simple() {
        Ok(MaxTapResult::from_path(
            &longest_constructible_shortest_path(p)?,
            MaxTapKind::ShortestPathApprox,
        ))
    } else {
        Err(TiltError::NotSimple)
    }
}
