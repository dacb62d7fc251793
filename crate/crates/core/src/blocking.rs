//! Per-lane ordered indexes for blocking-set queries.
//!
//! Every tile sits in exactly two ordered sets: its column (keyed by `x`,
//! holding `y` values) and its row (keyed by `y`, holding `x` values). A
//! position `p` is blocked from the north iff one of the columns
//! `p.x - 1 ..= p.x + 1` holds a tile strictly above `p`; the other three
//! directions are symmetric. Each query is three ordered-set probes.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Result, TiltError};
use crate::grid::{Cell2, Direction2, Polyomino};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockingIndex {
    columns: HashMap<i32, BTreeSet<i32>>,
    rows: HashMap<i32, BTreeSet<i32>>,
    size: usize,
}

impl BlockingIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn build(p: &Polyomino) -> Self {
        Self::from_cells(p.cells().iter().copied())
    }

    /// Builds an index from arbitrary cells; duplicates are ignored.
    pub fn from_cells(cells: impl IntoIterator<Item = Cell2>) -> Self {
        let mut ix = Self::new();
        for c in cells {
            let _ = ix.insert(c);
        }
        ix
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, c: Cell2) -> bool {
        self.columns.get(&c.x).is_some_and(|s| s.contains(&c.y))
    }

    /// Number of (lane, tile) entries; always twice the tile count.
    pub fn entry_count(&self) -> usize {
        self.columns.values().map(BTreeSet::len).sum::<usize>()
            + self.rows.values().map(BTreeSet::len).sum::<usize>()
    }

    pub fn lane_count(&self) -> (usize, usize) {
        (self.columns.len(), self.rows.len())
    }

    /// Ordered coordinates on one lane: `y` values of column `x` when
    /// `vertical`, `x` values of row `y` otherwise.
    pub fn lane(&self, vertical: bool, lane: i32) -> Option<&BTreeSet<i32>> {
        if vertical {
            self.columns.get(&lane)
        } else {
            self.rows.get(&lane)
        }
    }

    pub fn insert(&mut self, c: Cell2) -> Result<()> {
        if !self.columns.entry(c.x).or_default().insert(c.y) {
            return Err(TiltError::AlreadyPresent(c));
        }
        self.rows.entry(c.y).or_default().insert(c.x);
        self.size += 1;
        Ok(())
    }

    pub fn remove(&mut self, c: Cell2) -> Result<()> {
        let Some(col) = self.columns.get_mut(&c.x) else {
            return Err(TiltError::NotInShape(c));
        };
        if !col.remove(&c.y) {
            return Err(TiltError::NotInShape(c));
        }
        if col.is_empty() {
            self.columns.remove(&c.x);
        }
        let row = self.rows.get_mut(&c.y).expect("row index out of sync");
        row.remove(&c.x);
        if row.is_empty() {
            self.rows.remove(&c.y);
        }
        self.size -= 1;
        Ok(())
    }

    /// Nearest tile on `lane` strictly beyond `pos` towards `d`, where `pos`
    /// is the coordinate along the direction's axis.
    fn nearest_on_lane(&self, d: Direction2, lane: i32, pos: i32) -> Option<i32> {
        let set = self.lane(d.is_vertical(), lane)?;
        match d {
            Direction2::North | Direction2::East => set.range(pos + 1..).next().copied(),
            Direction2::South | Direction2::West => set.range(..pos).next_back().copied(),
        }
    }

    fn along(d: Direction2, p: Cell2) -> i32 {
        if d.is_vertical() {
            p.y
        } else {
            p.x
        }
    }

    fn at(d: Direction2, lane: i32, along: i32) -> Cell2 {
        if d.is_vertical() {
            Cell2::new(lane, along)
        } else {
            Cell2::new(along, lane)
        }
    }

    /// Nearest tile on `lane` strictly beyond `from` towards `d`.
    pub fn nearest_beyond(&self, lane: i32, from: Cell2, d: Direction2) -> Option<Cell2> {
        self.nearest_on_lane(d, lane, Self::along(d, from))
            .map(|a| Self::at(d, lane, a))
    }

    /// True iff the blocking set of `p` for direction `d` is nonempty, i.e.
    /// some tile lies beyond `p` towards `d` within one lane of `p`. `p`
    /// itself never counts, so tiles can query their own removal.
    pub fn is_blocked(&self, p: Cell2, d: Direction2) -> bool {
        let lane = d.lane_of(p);
        let pos = Self::along(d, p);
        (lane - 1..=lane + 1).any(|l| self.nearest_on_lane(d, l, pos).is_some())
    }

    /// Directions from which `p` is not blocked.
    pub fn free_directions(&self, p: Cell2) -> Vec<Direction2> {
        Direction2::ALL
            .into_iter()
            .filter(|&d| !self.is_blocked(p, d))
            .collect()
    }

    /// Tiles whose blocked, convex or cut status may change after `t` has
    /// been removed: the nearest tile beyond `t` in each direction on each of
    /// the three lanes around `t`. At most twelve, deduplicated and sorted.
    pub fn frontier_after_removal(&self, t: Cell2) -> Vec<Cell2> {
        let mut out = Vec::with_capacity(12);
        for d in Direction2::ALL {
            let lane = d.lane_of(t);
            for l in lane - 1..=lane + 1 {
                if let Some(c) = self.nearest_beyond(l, t, d) {
                    out.push(c);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Where a tile sent from side `d` along `lane` comes to rest: the first
    /// position adjacent to an indexed tile. `None` if it passes by.
    pub fn landing(&self, d: Direction2, lane: i32) -> Option<Cell2> {
        let vertical = d.is_vertical();
        let positive = matches!(d, Direction2::North | Direction2::East);
        let own = self.lane(vertical, lane).and_then(|s| {
            if positive {
                s.last().map(|v| v + 1)
            } else {
                s.first().map(|v| v - 1)
            }
        });
        let side = [lane - 1, lane + 1].into_iter().filter_map(|l| {
            self.lane(vertical, l).and_then(|s| {
                if positive {
                    s.last().copied()
                } else {
                    s.first().copied()
                }
            })
        });
        let best =
            own.into_iter().chain(side).reduce(
                |a, b| {
                    if positive {
                        a.max(b)
                    } else {
                        a.min(b)
                    }
                },
            )?;
        Some(Self::at(d, lane, best))
    }
}

/// Definitional blocking test by a linear scan; used as a test oracle.
pub fn is_blocked_naive(cells: &[Cell2], p: Cell2, d: Direction2) -> bool {
    cells.iter().any(|&q| match d {
        Direction2::North => q.y > p.y && q.x.abs_diff(p.x) <= 1,
        Direction2::South => q.y < p.y && q.x.abs_diff(p.x) <= 1,
        Direction2::East => q.x > p.x && q.y.abs_diff(p.y) <= 1,
        Direction2::West => q.x < p.x && q.y.abs_diff(p.y) <= 1,
    })
}
