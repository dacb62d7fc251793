//! Exponential reference searches over subsets of a small shape.
//!
//! Cells are numbered `0..n` (n <= 64) and subsets are `u64` masks, so the
//! same machinery serves polyominoes and polycubes. For every cell and every
//! allowed direction the instance stores the mask of cells in the matching
//! blocking set; a cell can leave (or enter) a subset through that direction
//! iff the subset has no cell in the mask.

use std::collections::{HashMap, HashSet, VecDeque};

/// Memo entries kept before the search stops memoizing new states.
pub const DEFAULT_MEMO_CAP: usize = 1 << 22;

/// Environment variable overriding [`DEFAULT_MEMO_CAP`].
pub const MEMO_CAP_ENV: &str = "TILT_MEMO_CAP";

pub fn memo_cap_from_env() -> usize {
    std::env::var(MEMO_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MEMO_CAP)
}

/// Subset mask to the `(parent mask, cell, direction index)` of the
/// insertion that first reached it; `None` for single cells.
pub(crate) type ParentLinks = HashMap<u64, Option<(u64, usize, usize)>>;

#[derive(Debug, Clone)]
pub(crate) struct Instance {
    pub n: usize,
    pub neighbors: Vec<u64>,
    /// `blockers[cell][k]` for the k-th allowed direction.
    pub blockers: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SearchLimits {
    pub memo_cap: usize,
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            memo_cap: memo_cap_from_env(),
            node_budget: 200_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Decomposition {
    /// Removal order as `(cell, direction index)`, plus the final seed cell.
    Found {
        removals: Vec<(usize, usize)>,
        seed: usize,
    },
    Impossible {
        explored: u64,
    },
    Budget {
        explored: u64,
    },
}

impl Instance {
    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn is_connected(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        let mut seen = mask & mask.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let i = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.neighbors[i];
            }
            next &= mask & !seen;
            seen |= next;
            frontier = next;
        }
        seen == mask
    }

    /// First allowed direction in which `cell` is unblocked w.r.t. `mask`.
    pub fn free_direction(&self, mask: u64, cell: usize) -> Option<usize> {
        self.blockers[cell].iter().position(|&b| mask & b == 0)
    }

    /// Memoized depth-first search for a full decomposition of the whole
    /// shape. `forced_seed` is never removed and must be the last cell.
    pub fn decompose(&self, forced_seed: Option<usize>, limits: SearchLimits) -> Decomposition {
        let mut search = DecomposeSearch {
            inst: self,
            forced: forced_seed.map(|s| 1u64 << s).unwrap_or(0),
            failed: HashSet::new(),
            limits,
            explored: 0,
            removals: Vec::new(),
            out_of_budget: false,
        };
        let full = self.full();
        if search.run(full) {
            let rest = full & !search.removals.iter().fold(0, |m, &(c, _)| m | (1u64 << c));
            Decomposition::Found {
                seed: rest.trailing_zeros() as usize,
                removals: search.removals,
            }
        } else if search.out_of_budget {
            Decomposition::Budget {
                explored: search.explored,
            }
        } else {
            Decomposition::Impossible {
                explored: search.explored,
            }
        }
    }

    /// Every subset that can be assembled by insertions, starting from any
    /// single cell, with the parent link of the first insertion that reached
    /// it: `(parent mask, cell, direction index)`.
    pub fn assemblable_subsets(&self, limits: SearchLimits) -> Result<ParentLinks, u64> {
        let mut reached: ParentLinks = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..self.n {
            reached.insert(1u64 << i, None);
            queue.push_back(1u64 << i);
        }
        let mut explored = 0u64;
        while let Some(mask) = queue.pop_front() {
            explored += 1;
            if explored > limits.node_budget {
                return Err(explored);
            }
            let mut frontier = 0u64;
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                frontier |= self.neighbors[i];
            }
            frontier &= !mask;
            while frontier != 0 {
                let c = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                if let Some(k) = self.free_direction(mask, c) {
                    let next = mask | (1u64 << c);
                    if let std::collections::hash_map::Entry::Vacant(e) = reached.entry(next) {
                        e.insert(Some((mask, c, k)));
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(reached)
    }
}

struct DecomposeSearch<'a> {
    inst: &'a Instance,
    forced: u64,
    failed: HashSet<u64>,
    limits: SearchLimits,
    explored: u64,
    removals: Vec<(usize, usize)>,
    out_of_budget: bool,
}

impl DecomposeSearch<'_> {
    fn run(&mut self, mask: u64) -> bool {
        if mask.count_ones() == 1 {
            return self.forced == 0 || mask == self.forced;
        }
        if self.failed.contains(&mask) {
            return false;
        }
        self.explored += 1;
        if self.explored > self.limits.node_budget {
            self.out_of_budget = true;
            return false;
        }
        let mut m = mask & !self.forced;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = mask & !(1u64 << c);
            let Some(k) = self.inst.free_direction(rest, c) else {
                continue;
            };
            if !self.inst.is_connected(rest) {
                continue;
            }
            self.removals.push((c, k));
            if self.run(rest) {
                return true;
            }
            self.removals.pop();
            if self.out_of_budget {
                return false;
            }
        }
        if self.failed.len() < self.limits.memo_cap {
            self.failed.insert(mask);
        }
        false
    }
}
