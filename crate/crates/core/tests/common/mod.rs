//! Brute-force oracles shared by the integration tests. Everything here is
//! written against plain cell sets, not the library's own indexes.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use tilt_core::{Cell2, Direction2, Polyomino};

pub fn c(x: i32, y: i32) -> Cell2 {
    Cell2::new(x, y)
}

pub fn shape(ascii: &str) -> Polyomino {
    Polyomino::from_ascii(ascii).unwrap()
}

pub fn connected(cells: &BTreeSet<Cell2>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return true;
    };
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let v = c(u.x + dx, u.y + dy);
            if cells.contains(&v) && seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen.len() == cells.len()
}

/// Complement flood fill from outside the bounding box.
pub fn simple(cells: &BTreeSet<Cell2>) -> bool {
    let x0 = cells.iter().map(|c| c.x).min().unwrap() - 1;
    let x1 = cells.iter().map(|c| c.x).max().unwrap() + 1;
    let y0 = cells.iter().map(|c| c.y).min().unwrap() - 1;
    let y1 = cells.iter().map(|c| c.y).max().unwrap() + 1;
    let mut seen = HashSet::from([c(x0, y0)]);
    let mut stack = vec![c(x0, y0)];
    while let Some(u) = stack.pop() {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let v = c(u.x + dx, u.y + dy);
            if v.x < x0 || v.x > x1 || v.y < y0 || v.y > y1 || cells.contains(&v) {
                continue;
            }
            if seen.insert(v) {
                stack.push(v);
            }
        }
    }
    let area = ((x1 - x0 + 1) * (y1 - y0 + 1)) as usize;
    seen.len() + cells.len() == area
}

/// Some tile of `others` lies beyond `p` towards `d` within the three lanes
/// around `p`.
pub fn blocked<'a>(others: impl IntoIterator<Item = &'a Cell2>, p: Cell2, d: Direction2) -> bool {
    others.into_iter().any(|q| {
        if *q == p {
            return false;
        }
        let (along, across) = match d {
            Direction2::North => (q.y - p.y, q.x - p.x),
            Direction2::South => (p.y - q.y, q.x - p.x),
            Direction2::East => (q.x - p.x, q.y - p.y),
            Direction2::West => (p.x - q.x, q.y - p.y),
        };
        along > 0 && across.abs() <= 1
    })
}

/// Directions in which `t` can leave `cells` without touching anything.
pub fn free_directions(cells: &BTreeSet<Cell2>, t: Cell2) -> Vec<Direction2> {
    Direction2::ALL
        .into_iter()
        .filter(|&d| !blocked(cells.iter(), t, d))
        .collect()
}

/// Valid single removals: the rest stays connected and some side is free.
pub fn valid_removals(cells: &BTreeSet<Cell2>) -> Vec<(Cell2, Direction2)> {
    let mut out = Vec::new();
    for &t in cells {
        let mut rest = cells.clone();
        rest.remove(&t);
        if rest.is_empty() || !connected(&rest) {
            continue;
        }
        for d in free_directions(cells, t) {
            out.push((t, d));
        }
    }
    out
}

/// Exhaustive memoized decomposability.
pub struct Decomposer {
    memo: HashMap<Vec<Cell2>, bool>,
}

impl Decomposer {
    pub fn new() -> Self {
        Self {
            memo: HashMap::new(),
        }
    }

    pub fn decomposable(&mut self, cells: &BTreeSet<Cell2>) -> bool {
        if cells.len() <= 1 {
            return true;
        }
        let key: Vec<Cell2> = cells.iter().copied().collect();
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut ans = false;
        for &t in cells {
            if free_directions(cells, t).is_empty() {
                continue;
            }
            let mut rest = cells.clone();
            rest.remove(&t);
            if connected(&rest) && self.decomposable(&rest) {
                ans = true;
                break;
            }
        }
        self.memo.insert(key, ans);
        ans
    }
}

pub fn set_of(p: &Polyomino) -> BTreeSet<Cell2> {
    p.cells().iter().copied().collect()
}

/// Each tile after the first can reach its position from some side.
pub fn sequential(path: &[Cell2]) -> bool {
    (1..path.len()).all(|i| {
        Direction2::ALL
            .into_iter()
            .any(|d| !blocked(&path[..i], path[i], d))
    })
}

/// All simple paths inside `cells`, as ordered tile lists.
pub fn all_paths(cells: &BTreeSet<Cell2>) -> Vec<Vec<Cell2>> {
    fn walk(cells: &BTreeSet<Cell2>, path: &mut Vec<Cell2>, out: &mut Vec<Vec<Cell2>>) {
        out.push(path.clone());
        let u = *path.last().unwrap();
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let v = c(u.x + dx, u.y + dy);
            if cells.contains(&v) && !path.contains(&v) {
                path.push(v);
                walk(cells, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for &s in cells {
        walk(cells, &mut vec![s], &mut out);
    }
    out
}

/// Graph distances inside `cells` from `s`.
pub fn distances(cells: &BTreeSet<Cell2>, s: Cell2) -> HashMap<Cell2, usize> {
    let mut dist = HashMap::from([(s, 0)]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let v = c(u.x + dx, u.y + dy);
            if cells.contains(&v) && !dist.contains_key(&v) {
                dist.insert(v, dist[&u] + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Every shortest path from `s` to `t` inside `cells`.
pub fn shortest_paths(cells: &BTreeSet<Cell2>, s: Cell2, t: Cell2) -> Vec<Vec<Cell2>> {
    let to_t = distances(cells, t);
    let mut out = Vec::new();
    let mut path = vec![s];
    fn go(
        cells: &BTreeSet<Cell2>,
        to_t: &HashMap<Cell2, usize>,
        path: &mut Vec<Cell2>,
        out: &mut Vec<Vec<Cell2>>,
    ) {
        let u = *path.last().unwrap();
        if to_t[&u] == 0 {
            out.push(path.clone());
            return;
        }
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let v = c(u.x + dx, u.y + dy);
            if cells.contains(&v) && to_t[&v] + 1 == to_t[&u] {
                path.push(v);
                go(cells, to_t, path, out);
                path.pop();
            }
        }
    }
    go(cells, &to_t, &mut path, &mut out);
    out
}

/// Fixed polyomino counts for n = 1..=10.
pub const FIXED_COUNTS: [usize; 10] = [1, 2, 6, 19, 63, 216, 760, 2725, 9910, 36446];

/// A simple 30-tile shape that admits no construction sequence: two
/// interlocked spirals, each closing the exits of the other.
pub fn double_spiral() -> Polyomino {
    let s1 = [
        (2, 2),
        (2, 3),
        (3, 3),
        (4, 3),
        (4, 2),
        (4, 1),
        (4, 0),
        (3, 0),
        (2, 0),
        (1, 0),
        (0, 0),
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
    ];
    Polyomino::new(
        s1.iter()
            .map(|&(x, y)| c(x, y))
            .chain(s1.iter().map(|&(x, y)| c(-x, 9 - y))),
    )
    .unwrap()
}
