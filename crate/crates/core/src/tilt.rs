//! Global-control tilt simulation.
//!
//! Every unit step tilts the whole board in one direction. All free
//! assemblies advance together one cell per tick; an assembly stops when
//! it would enter a wall or an assembly that is not itself advancing. A
//! sliding assembly bonds to any assembly it touches, so a tile that slides
//! along a lane comes to rest at the first cell adjacent to a resting
//! assembly. Cells outside the bounding box of the obstacles are walls.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Result, TiltError};
use crate::grid::{bounding_box, is_connected, Cell2, Direction2, Polyomino};

const WALL: u32 = u32::MAX;
const EMPTY: u32 = u32::MAX - 1;

/// A cell that emits one tile before each scheduled global step: steps
/// `first, first + period, ...`, at most `count` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Depot {
    pub cell: Cell2,
    pub first: u64,
    pub period: u64,
    pub count: u64,
}

impl Depot {
    pub fn emits_at(&self, step: u64) -> bool {
        step >= self.first
            && (step - self.first).is_multiple_of(self.period.max(1))
            && (step - self.first) / self.period.max(1) < self.count
    }
}

/// What happened during one settle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SettleEvent {
    pub direction: Direction2,
    /// Assemblies (as they were before the step) that moved at all.
    pub moved: usize,
    /// Bonding operations between previously separate assemblies.
    pub merges: usize,
    pub ticks: usize,
}

/// One scheduled step of a running world: emissions, settle, removals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepEvent {
    pub index: u64,
    pub settle: SettleEvent,
    pub emitted: usize,
    /// Depots that were due but found their cell occupied.
    pub jammed: usize,
    pub products: Vec<Polyomino>,
}

impl fmt::Display for StepEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {} {} moved {} merges {}",
            self.index, self.settle.direction, self.settle.moved, self.settle.merges
        )?;
        if self.emitted > 0 {
            write!(f, " emitted {}", self.emitted)?;
        }
        if self.jammed > 0 {
            write!(f, " jammed {}", self.jammed)?;
        }
        if !self.products.is_empty() {
            write!(f, " products {}", self.products.len())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiltWorld {
    lo: Cell2,
    width: i32,
    height: i32,
    walls: Vec<bool>,
    sink: Vec<bool>,
    assemblies: Vec<Vec<Cell2>>,
    depots: Vec<Depot>,
    step: u64,
}

impl TiltWorld {
    /// A world bounded by the bounding box of `obstacles`. Assemblies must
    /// be connected, disjoint and placed on free cells; touching assemblies
    /// are bonded right away.
    pub fn new(
        obstacles: impl IntoIterator<Item = Cell2>,
        assemblies: impl IntoIterator<Item = Vec<Cell2>>,
    ) -> Result<Self> {
        let obstacles: Vec<Cell2> = obstacles.into_iter().collect();
        let (lo, hi) = bounding_box(&obstacles)
            .ok_or_else(|| TiltError::InvalidMaze("a world needs obstacles to bound it".into()))?;
        let width = hi.x - lo.x + 1;
        let height = hi.y - lo.y + 1;
        let mut world = Self {
            lo,
            width,
            height,
            walls: vec![false; (width as usize) * (height as usize)],
            sink: Vec::new(),
            assemblies: Vec::new(),
            depots: Vec::new(),
            step: 0,
        };
        for o in obstacles {
            let i = world
                .index(o)
                .expect("obstacle inside its own bounding box");
            world.walls[i] = true;
        }
        let mut seen = HashSet::new();
        for a in assemblies {
            if a.is_empty() {
                continue;
            }
            if !is_connected(&a) {
                return Err(TiltError::Disconnected);
            }
            for &c in &a {
                if !world.is_free(c) {
                    return Err(TiltError::InvalidMaze(format!(
                        "tile {c} is not on a free cell"
                    )));
                }
                if !seen.insert(c) {
                    return Err(TiltError::AlreadyPresent(c));
                }
            }
            world.assemblies.push(a);
        }
        world.bond();
        Ok(world)
    }

    fn index(&self, c: Cell2) -> Option<usize> {
        let x = c.x - self.lo.x;
        let y = c.y - self.lo.y;
        (x >= 0 && y >= 0 && x < self.width && y < self.height)
            .then(|| (y as usize) * (self.width as usize) + x as usize)
    }

    /// Inside the bounds and not a wall.
    pub fn is_free(&self, c: Cell2) -> bool {
        self.index(c).is_some_and(|i| !self.walls[i])
    }

    pub fn is_wall(&self, c: Cell2) -> bool {
        !self.is_free(c)
    }

    pub fn bounds(&self) -> (Cell2, Cell2) {
        (self.lo, self.lo.offset(self.width - 1, self.height - 1))
    }

    pub fn obstacles(&self) -> Vec<Cell2> {
        (0..self.height)
            .flat_map(|y| (0..self.width).map(move |x| Cell2::new(x, y)))
            .map(|c| c.offset(self.lo.x, self.lo.y))
            .filter(|&c| self.is_wall(c))
            .collect()
    }

    /// Assemblies with sorted cells, in order of their smallest cell.
    pub fn assemblies(&self) -> Vec<Vec<Cell2>> {
        let mut out: Vec<Vec<Cell2>> = self
            .assemblies
            .iter()
            .map(|a| {
                let mut a = a.clone();
                a.sort_unstable();
                a
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn tile_count(&self) -> usize {
        self.assemblies.iter().map(Vec::len).sum()
    }

    pub fn depots(&self) -> &[Depot] {
        &self.depots
    }

    pub fn add_depot(&mut self, depot: Depot) -> Result<()> {
        if !self.is_free(depot.cell) {
            return Err(TiltError::InvalidMaze(format!(
                "depot {} is not on a free cell",
                depot.cell
            )));
        }
        self.depots.push(depot);
        Ok(())
    }

    /// Assemblies lying entirely on sink cells are removed after each step.
    pub fn set_sink(&mut self, cells: impl IntoIterator<Item = Cell2>) -> Result<()> {
        let mut sink = vec![false; self.walls.len()];
        for c in cells {
            match self.index(c) {
                Some(i) if !self.walls[i] => sink[i] = true,
                _ => return Err(TiltError::InvalidMaze(format!("sink cell {c} is not free"))),
            }
        }
        self.sink = sink;
        Ok(())
    }

    pub fn is_sink(&self, c: Cell2) -> bool {
        self.index(c)
            .is_some_and(|i| self.sink.get(i).copied().unwrap_or(false))
    }

    pub fn step_index(&self) -> u64 {
        self.step
    }

    /// Adds a single tile as its own assembly, bonding it to neighbors.
    pub fn add_tile(&mut self, c: Cell2) -> Result<()> {
        if !self.is_free(c) {
            return Err(TiltError::InvalidMaze(format!(
                "tile {c} is not on a free cell"
            )));
        }
        if self.assemblies.iter().any(|a| a.contains(&c)) {
            return Err(TiltError::AlreadyPresent(c));
        }
        self.assemblies.push(vec![c]);
        self.bond();
        Ok(())
    }

    fn occupancy(&self) -> Vec<u32> {
        let mut occ: Vec<u32> = self
            .walls
            .iter()
            .map(|&w| if w { WALL } else { EMPTY })
            .collect();
        for (id, a) in self.assemblies.iter().enumerate() {
            for &c in a {
                occ[self.index(c).expect("tiles stay inside")] = id as u32;
            }
        }
        occ
    }

    /// Merges all 4-adjacent assemblies; returns the number of unions.
    fn bond(&mut self) -> usize {
        let occ = self.occupancy();
        let mut uf = UnionFind::new(self.assemblies.len());
        let mut merges = 0;
        for (id, a) in self.assemblies.iter().enumerate() {
            for &c in a {
                for nb in c.neighbors() {
                    if let Some(i) = self.index(nb) {
                        let other = occ[i];
                        if other < EMPTY && other as usize != id && uf.union(id, other as usize) {
                            merges += 1;
                        }
                    }
                }
            }
        }
        if merges > 0 {
            self.assemblies = uf.regroup(std::mem::take(&mut self.assemblies));
        }
        merges
    }

    /// Tilts in direction `d` until nothing moves, then bonds.
    pub fn settle_in_place(&mut self, d: Direction2) -> SettleEvent {
        let mut merges = self.bond();
        let (dx, dy) = d.unit();
        let n0 = self.assemblies.len();
        // origin label of every tile, to count moved assemblies across merges
        let mut labels: Vec<Vec<usize>> =
            (0..n0).map(|i| vec![i; self.assemblies[i].len()]).collect();
        let mut moved = vec![false; n0];
        let mut occ = self.occupancy();
        let mut ticks = 0;
        loop {
            let n = self.assemblies.len();
            let mut stuck = vec![false; n];
            let mut dependents: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut queue = Vec::new();
            for (id, a) in self.assemblies.iter().enumerate() {
                for &c in a {
                    let target = self.index(c.offset(dx, dy)).map_or(WALL, |i| occ[i]);
                    if target == WALL {
                        stuck[id] = true;
                    } else if target < EMPTY && target as usize != id {
                        dependents[target as usize].push(id);
                    }
                }
                if stuck[id] {
                    queue.push(id);
                }
            }
            while let Some(b) = queue.pop() {
                for &a in &dependents[b] {
                    if !stuck[a] {
                        stuck[a] = true;
                        queue.push(a);
                    }
                }
            }
            if stuck.iter().all(|&s| s) {
                break;
            }
            ticks += 1;
            for (id, a) in self.assemblies.iter().enumerate() {
                if !stuck[id] {
                    for &c in a {
                        occ[self.index(c).expect("inside")] = EMPTY;
                    }
                }
            }
            for (id, a) in self.assemblies.iter_mut().enumerate() {
                if !stuck[id] {
                    for c in a.iter_mut() {
                        *c = c.offset(dx, dy);
                    }
                    for &l in &labels[id] {
                        moved[l] = true;
                    }
                }
            }
            for (id, a) in self.assemblies.iter().enumerate() {
                if !stuck[id] {
                    for &c in a {
                        let i = self.index(c).expect("inside");
                        occ[i] = id as u32;
                    }
                }
            }
            // a moving assembly only touches others that rest
            let mut uf = UnionFind::new(n);
            let mut tick_merges = 0;
            for (id, a) in self.assemblies.iter().enumerate() {
                if stuck[id] {
                    continue;
                }
                for &c in a {
                    for nb in c.neighbors() {
                        if let Some(i) = self.index(nb) {
                            let other = occ[i];
                            if other < EMPTY && other as usize != id && uf.union(id, other as usize)
                            {
                                tick_merges += 1;
                            }
                        }
                    }
                }
            }
            if tick_merges > 0 {
                merges += tick_merges;
                let groups = uf.groups();
                let mut assemblies = Vec::with_capacity(groups.len());
                let mut new_labels = Vec::with_capacity(groups.len());
                for g in groups {
                    let mut cells = Vec::new();
                    let mut ls = Vec::new();
                    for id in g {
                        cells.extend_from_slice(&self.assemblies[id]);
                        ls.extend_from_slice(&labels[id]);
                    }
                    assemblies.push(cells);
                    new_labels.push(ls);
                }
                self.assemblies = assemblies;
                labels = new_labels;
                occ = self.occupancy();
            }
        }
        merges += self.bond();
        SettleEvent {
            direction: d,
            moved: moved.iter().filter(|&&m| m).count(),
            merges,
            ticks,
        }
    }

    /// One scheduled step: due depots emit, the board settles in `d`, and
    /// finished assemblies are taken out of the sink.
    pub fn step(&mut self, d: Direction2) -> StepEvent {
        let index = self.step;
        let mut emitted = 0;
        let mut jammed = 0;
        let due: Vec<Cell2> = self
            .depots
            .iter()
            .filter(|dp| dp.emits_at(index))
            .map(|dp| dp.cell)
            .collect();
        for c in due {
            if self.assemblies.iter().any(|a| a.contains(&c)) {
                jammed += 1;
            } else {
                self.assemblies.push(vec![c]);
                emitted += 1;
            }
        }
        let settle = self.settle_in_place(d);
        let mut products = Vec::new();
        if !self.sink.is_empty() {
            let mut kept = Vec::with_capacity(self.assemblies.len());
            for a in std::mem::take(&mut self.assemblies) {
                if a.iter().all(|&c| self.is_sink(c)) {
                    products.push(Polyomino::new(a).expect("assemblies are connected"));
                } else {
                    kept.push(a);
                }
            }
            self.assemblies = kept;
            products.sort_by(|a, b| a.cells().cmp(b.cells()));
        }
        self.step += 1;
        StepEvent {
            index,
            settle,
            emitted,
            jammed,
            products,
        }
    }

    /// ASCII frame, north row first: `#` wall, `.` free, `O` sink, `D`
    /// idle depot, and tiles lettered `a`..`z` by assembly.
    pub fn render(&self) -> String {
        let mut rows = vec![vec![b'.'; self.width as usize]; self.height as usize];
        for y in 0..self.height {
            for x in 0..self.width {
                let c = Cell2::new(x + self.lo.x, y + self.lo.y);
                let i = self.index(c).expect("inside");
                rows[y as usize][x as usize] = if self.walls[i] {
                    b'#'
                } else if self.sink.get(i).copied().unwrap_or(false) {
                    b'O'
                } else {
                    b'.'
                };
            }
        }
        for dp in &self.depots {
            let (x, y) = (dp.cell.x - self.lo.x, dp.cell.y - self.lo.y);
            rows[y as usize][x as usize] = b'D';
        }
        for (id, a) in self.assemblies().iter().enumerate() {
            for c in a {
                let (x, y) = (c.x - self.lo.x, c.y - self.lo.y);
                rows[y as usize][x as usize] = b'a' + (id % 26) as u8;
            }
        }
        let mut out = String::new();
        for row in rows.iter().rev() {
            out.push_str(std::str::from_utf8(row).expect("ascii"));
            out.push('\n');
        }
        out
    }
}

/// `w` after tilting in direction `d` until nothing moves.
pub fn settle(w: &TiltWorld, d: Direction2) -> TiltWorld {
    let mut out = w.clone();
    out.settle_in_place(d);
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    /// Members of each class, classes ordered by their smallest member.
    fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let r = self.find(i);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(i);
        }
        out
    }

    fn regroup(&mut self, items: Vec<Vec<Cell2>>) -> Vec<Vec<Cell2>> {
        let groups = self.groups();
        groups
            .into_iter()
            .map(|g| {
                g.into_iter()
                    .flat_map(|i| items[i].iter().copied())
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: i32, y: i32) -> Cell2 {
        Cell2::new(x, y)
    }

    /// Walls around the open box `0..w` x `0..h`.
    fn frame(w: i32, h: i32) -> Vec<Cell2> {
        let mut out = Vec::new();
        for x in -1..=w {
            out.push(c(x, -1));
            out.push(c(x, h));
        }
        for y in 0..h {
            out.push(c(-1, y));
            out.push(c(w, y));
        }
        out
    }

    #[test]
    fn single_tile_falls_to_the_floor() {
        let w = TiltWorld::new(frame(3, 4), [vec![c(1, 3)]]).unwrap();
        let s = settle(&w, Direction2::South);
        assert_eq!(s.assemblies(), vec![vec![c(1, 0)]]);
    }

    #[test]
    fn column_of_two_stacks_and_bonds() {
        let mut w = TiltWorld::new(frame(3, 5), [vec![c(1, 4)], vec![c(1, 1)]]).unwrap();
        let ev = w.settle_in_place(Direction2::South);
        assert_eq!(w.assemblies(), vec![vec![c(1, 0), c(1, 1)]]);
        assert_eq!(ev.merges, 1);
        assert_eq!(ev.moved, 2);
    }

    #[test]
    fn sliding_tile_sticks_at_first_contact() {
        // a tile held by a post catches a tile sliding past it
        let mut walls = frame(5, 3);
        walls.push(c(3, 0));
        let mut w = TiltWorld::new(walls.clone(), [vec![c(2, 0)], vec![c(0, 1)]]).unwrap();
        w.settle_in_place(Direction2::East);
        assert_eq!(w.assemblies(), vec![vec![c(2, 0), c(2, 1)]]);
        // without the resting tile it slides through to the far wall
        let mut w = TiltWorld::new(walls, [vec![c(0, 1)]]).unwrap();
        w.settle_in_place(Direction2::East);
        assert_eq!(w.assemblies(), vec![vec![c(4, 1)]]);
    }

    #[test]
    fn trains_move_together() {
        let mut w = TiltWorld::new(frame(6, 1), [vec![c(0, 0)], vec![c(2, 0)]]).unwrap();
        let ev = w.settle_in_place(Direction2::East);
        assert_eq!(w.assemblies(), vec![vec![c(4, 0), c(5, 0)]]);
        assert_eq!(ev.merges, 1);
    }

    #[test]
    fn settle_is_idempotent() {
        let w = TiltWorld::new(frame(4, 4), [vec![c(0, 3), c(1, 3)], vec![c(3, 1)]]).unwrap();
        let once = settle(&w, Direction2::West);
        let mut twice = once.clone();
        let ev = twice.settle_in_place(Direction2::West);
        assert_eq!(once, twice);
        assert_eq!(ev.moved, 0);
    }

    #[test]
    fn world_validation() {
        assert!(TiltWorld::new(Vec::<Cell2>::new(), [vec![c(0, 0)]]).is_err());
        assert!(TiltWorld::new(frame(2, 2), [vec![c(-1, 0)]]).is_err());
        assert!(TiltWorld::new(frame(3, 3), [vec![c(0, 0), c(2, 2)]]).is_err());
        assert!(TiltWorld::new(frame(3, 3), [vec![c(0, 0)], vec![c(0, 0)]]).is_err());
    }

    #[test]
    fn depot_schedule() {
        let d = Depot {
            cell: c(0, 0),
            first: 2,
            period: 4,
            count: 2,
        };
        let due: Vec<u64> = (0..20).filter(|&s| d.emits_at(s)).collect();
        assert_eq!(due, vec![2, 6]);
    }

    #[test]
    fn sink_collects_products() {
        let mut w = TiltWorld::new(frame(3, 3), Vec::<Vec<Cell2>>::new()).unwrap();
        w.add_depot(Depot {
            cell: c(1, 2),
            first: 0,
            period: 2,
            count: 2,
        })
        .unwrap();
        w.set_sink([c(0, 0), c(1, 0), c(2, 0)]).unwrap();
        let mut made = 0;
        for i in 0..4 {
            let d = if i % 2 == 0 {
                Direction2::South
            } else {
                Direction2::North
            };
            made += w.step(d).products.len();
        }
        assert_eq!(made, 2);
        assert_eq!(w.tile_count(), 0);
    }

    #[test]
    fn render_frame() {
        let w = TiltWorld::new(frame(2, 1), [vec![c(0, 0)]]).unwrap();
        assert_eq!(w.render(), "####\n#a.#\n####\n");
    }
}
