//! Lattice geometry: cells, directions, polyominoes and polycubes.
//!
//! Coordinates are `x` east-positive, `y` north-positive and `z` up-positive.
//! Two shapes are congruent when they differ by a translation only; rotations
//! and reflections are never applied anywhere in the crate.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Result, TiltError};

/// Default cap for [`enumerate_polyominoes`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 11;

/// Above this many cells in the inflated bounding box, [`Polyomino::is_simple`]
/// switches from the complement flood fill to an Euler characteristic count.
const FLOOD_FILL_AREA_LIMIT: u64 = 1 << 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cell2 {
    pub x: i32,
    pub y: i32,
}

impl Cell2 {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }

    /// The neighbouring cell one unit towards `d`.
    pub fn step(self, d: Direction2) -> Self {
        let (dx, dy) = d.unit();
        self.offset(dx, dy)
    }

    pub fn neighbors(self) -> [Cell2; 4] {
        Direction2::ALL.map(|d| self.step(d))
    }

    pub fn manhattan(self, other: Cell2) -> u32 {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    pub fn is_adjacent(self, other: Cell2) -> bool {
        self.manhattan(other) == 1
    }
}

impl fmt::Display for Cell2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i32, i32)> for Cell2 {
    fn from((x, y): (i32, i32)) -> Self {
        Self::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cell3 {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Cell3 {
    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        Self { x, y, z }
    }

    pub fn offset(self, dx: i32, dy: i32, dz: i32) -> Self {
        Self::new(self.x + dx, self.y + dy, self.z + dz)
    }

    pub fn step(self, d: Direction3) -> Self {
        let (dx, dy, dz) = d.unit();
        self.offset(dx, dy, dz)
    }

    pub fn neighbors(self) -> [Cell3; 6] {
        Direction3::ALL.map(|d| self.step(d))
    }

    pub fn is_adjacent(self, other: Cell3) -> bool {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y) + self.z.abs_diff(other.z) == 1
    }
}

impl fmt::Display for Cell3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl From<(i32, i32, i32)> for Cell3 {
    fn from((x, y, z): (i32, i32, i32)) -> Self {
        Self::new(x, y, z)
    }
}

/// One of the four axis-parallel directions in the plane.
///
/// In a construction step the direction names the side a tile arrives
/// *from*; in a removal it names the side the tile leaves *towards*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction2 {
    North,
    East,
    South,
    West,
}

impl Direction2 {
    pub const ALL: [Direction2; 4] = [
        Direction2::North,
        Direction2::East,
        Direction2::South,
        Direction2::West,
    ];

    pub fn opposite(self) -> Self {
        match self {
            Direction2::North => Direction2::South,
            Direction2::East => Direction2::West,
            Direction2::South => Direction2::North,
            Direction2::West => Direction2::East,
        }
    }

    pub fn unit(self) -> (i32, i32) {
        match self {
            Direction2::North => (0, 1),
            Direction2::East => (1, 0),
            Direction2::South => (0, -1),
            Direction2::West => (-1, 0),
        }
    }

    /// Next direction in clockwise order (north, east, south, west).
    pub fn clockwise(self) -> Self {
        match self {
            Direction2::North => Direction2::East,
            Direction2::East => Direction2::South,
            Direction2::South => Direction2::West,
            Direction2::West => Direction2::North,
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Direction2::North | Direction2::South)
    }

    /// The lane (column for north/south, row for east/west) a cell lies on.
    pub fn lane_of(self, c: Cell2) -> i32 {
        if self.is_vertical() {
            c.x
        } else {
            c.y
        }
    }

    /// Signed advancement of `c` towards this direction.
    pub fn advancement(self, c: Cell2) -> i64 {
        let (dx, dy) = self.unit();
        dx as i64 * c.x as i64 + dy as i64 * c.y as i64
    }

    pub fn letter(self) -> char {
        match self {
            Direction2::North => 'n',
            Direction2::East => 'e',
            Direction2::South => 's',
            Direction2::West => 'w',
        }
    }

    pub fn from_letter(s: &str) -> Option<Self> {
        match s {
            "n" | "N" | "north" => Some(Direction2::North),
            "e" | "E" | "east" => Some(Direction2::East),
            "s" | "S" | "south" => Some(Direction2::South),
            "w" | "W" | "west" => Some(Direction2::West),
            _ => None,
        }
    }
}

impl fmt::Display for Direction2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// One of the six axis-parallel directions in space. `Up` is the side above
/// (larger `z`), so a cube arriving from `Up` falls downwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction3 {
    Up,
    Down,
    North,
    East,
    South,
    West,
}

impl Direction3 {
    pub const ALL: [Direction3; 6] = [
        Direction3::Up,
        Direction3::Down,
        Direction3::North,
        Direction3::East,
        Direction3::South,
        Direction3::West,
    ];

    pub fn opposite(self) -> Self {
        match self {
            Direction3::Up => Direction3::Down,
            Direction3::Down => Direction3::Up,
            Direction3::North => Direction3::South,
            Direction3::East => Direction3::West,
            Direction3::South => Direction3::North,
            Direction3::West => Direction3::East,
        }
    }

    pub fn unit(self) -> (i32, i32, i32) {
        match self {
            Direction3::Up => (0, 0, 1),
            Direction3::Down => (0, 0, -1),
            Direction3::North => (0, 1, 0),
            Direction3::East => (1, 0, 0),
            Direction3::South => (0, -1, 0),
            Direction3::West => (-1, 0, 0),
        }
    }

    /// Axis index (0 = x, 1 = y, 2 = z) the direction moves along.
    pub fn axis(self) -> usize {
        match self {
            Direction3::East | Direction3::West => 0,
            Direction3::North | Direction3::South => 1,
            Direction3::Up | Direction3::Down => 2,
        }
    }

    /// +1 when the direction points along the positive axis.
    pub fn sign(self) -> i32 {
        match self {
            Direction3::Up | Direction3::North | Direction3::East => 1,
            _ => -1,
        }
    }

    /// The two coordinates orthogonal to the direction's axis, i.e. the lane.
    pub fn lane_of(self, c: Cell3) -> (i32, i32) {
        match self.axis() {
            0 => (c.y, c.z),
            1 => (c.x, c.z),
            _ => (c.x, c.y),
        }
    }

    pub fn lateral(d: Direction2) -> Self {
        match d {
            Direction2::North => Direction3::North,
            Direction2::East => Direction3::East,
            Direction2::South => Direction3::South,
            Direction2::West => Direction3::West,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction3::Up => "u",
            Direction3::Down => "d",
            Direction3::North => "n",
            Direction3::East => "e",
            Direction3::South => "s",
            Direction3::West => "w",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "u" | "up" => Some(Direction3::Up),
            "d" | "down" => Some(Direction3::Down),
            _ => Direction2::from_letter(s).map(Direction3::lateral),
        }
    }
}

impl fmt::Display for Direction3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// True iff the unit-distance graph on `cells` is connected.
/// The empty set is reported as disconnected.
pub fn is_connected(cells: &[Cell2]) -> bool {
    let Some(&start) = cells.first() else {
        return false;
    };
    let set: HashSet<Cell2> = cells.iter().copied().collect();
    let mut seen = HashSet::with_capacity(set.len());
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    while let Some(c) = queue.pop_front() {
        for nb in c.neighbors() {
            if set.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    seen.len() == set.len()
}

pub fn is_connected_3d(cells: &[Cell3]) -> bool {
    let Some(&start) = cells.first() else {
        return false;
    };
    let set: HashSet<Cell3> = cells.iter().copied().collect();
    let mut seen = HashSet::with_capacity(set.len());
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    while let Some(c) = queue.pop_front() {
        for nb in c.neighbors() {
            if set.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    seen.len() == set.len()
}

/// Cut-tile test from the 3x3 neighbourhood, valid for convex tiles of
/// hole-free shapes. Returns `None` when the tile is not convex.
///
/// A convex tile has at most two orthogonal neighbours and they are
/// perpendicular; it disconnects the shape iff it has two neighbours and
/// the diagonal cell between them is empty.
pub fn local_cut_rule(contains: impl Fn(Cell2) -> bool, t: Cell2) -> Option<bool> {
    if !is_convex_at(&contains, t) {
        return None;
    }
    let present: Vec<Direction2> = Direction2::ALL
        .into_iter()
        .filter(|&d| contains(t.step(d)))
        .collect();
    match present.as_slice() {
        [] | [_] => Some(false),
        [a, b] => {
            let (ax, ay) = a.unit();
            let (bx, by) = b.unit();
            Some(!contains(t.offset(ax + bx, ay + by)))
        }
        _ => None,
    }
}

/// A tile is convex iff some 2x2 window contains it and no other occupied cell.
pub fn is_convex_at(contains: impl Fn(Cell2) -> bool, t: Cell2) -> bool {
    [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .any(|&(dx, dy)| {
            !contains(t.offset(dx, 0)) && !contains(t.offset(0, dy)) && !contains(t.offset(dx, dy))
        })
}

/// Mutable membership set over cells. Dense bitmap when the bounding box is
/// compact relative to the cell count, hash set otherwise.
#[derive(Debug, Clone)]
pub(crate) enum CellSet {
    Dense {
        lo: Cell2,
        width: i64,
        height: i64,
        bits: Vec<bool>,
        len: usize,
    },
    Sparse(HashSet<Cell2>),
}

impl CellSet {
    pub fn from_cells(cells: &[Cell2]) -> Self {
        let Some((lo, hi)) = bounding_box(cells) else {
            return CellSet::Sparse(HashSet::new());
        };
        let width = (hi.x - lo.x + 1) as i64;
        let height = (hi.y - lo.y + 1) as i64;
        if width * height <= 8 * cells.len() as i64 + 64 {
            let mut bits = vec![false; (width * height) as usize];
            for c in cells {
                bits[((c.y - lo.y) as i64 * width + (c.x - lo.x) as i64) as usize] = true;
            }
            CellSet::Dense {
                lo,
                width,
                height,
                bits,
                len: cells.len(),
            }
        } else {
            CellSet::Sparse(cells.iter().copied().collect())
        }
    }

    #[inline]
    pub fn contains(&self, c: Cell2) -> bool {
        match self {
            CellSet::Dense {
                lo,
                width,
                height,
                bits,
                ..
            } => {
                let x = (c.x - lo.x) as i64;
                let y = (c.y - lo.y) as i64;
                x >= 0 && y >= 0 && x < *width && y < *height && bits[(y * width + x) as usize]
            }
            CellSet::Sparse(set) => set.contains(&c),
        }
    }

    /// Removes a cell; returns whether it was present.
    pub fn remove(&mut self, c: Cell2) -> bool {
        match self {
            CellSet::Dense {
                lo,
                width,
                height,
                bits,
                len,
            } => {
                let x = (c.x - lo.x) as i64;
                let y = (c.y - lo.y) as i64;
                if x < 0 || y < 0 || x >= *width || y >= *height {
                    return false;
                }
                let i = (y * *width + x) as usize;
                let was = std::mem::replace(&mut bits[i], false);
                if was {
                    *len -= 1;
                }
                was
            }
            CellSet::Sparse(set) => set.remove(&c),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            CellSet::Dense { len, .. } => *len,
            CellSet::Sparse(set) => set.len(),
        }
    }
}

/// A polyomino: a nonempty, 4-connected, finite set of lattice cells.
///
/// Cells are stored sorted, which is the canonical cell order used for
/// deterministic iteration throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyomino {
    cells: Vec<Cell2>,
}

impl Polyomino {
    pub fn new(cells: impl IntoIterator<Item = Cell2>) -> Result<Self> {
        let mut cells: Vec<Cell2> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        if cells.is_empty() {
            return Err(TiltError::Empty);
        }
        if !is_connected(&cells) {
            return Err(TiltError::Disconnected);
        }
        Ok(Self { cells })
    }

    /// Builds a polyomino from cells already known to be sorted, unique and
    /// connected.
    pub(crate) fn from_sorted_unchecked(cells: Vec<Cell2>) -> Self {
        debug_assert!(cells.windows(2).all(|w| w[0] < w[1]));
        Self { cells }
    }

    pub fn from_ascii(text: &str) -> Result<Self> {
        Self::new(parse_ascii(text)?)
    }

    /// Axis-aligned rectangle with its lower-left corner at the origin.
    pub fn rectangle(width: i32, height: i32) -> Result<Self> {
        if width <= 0 || height <= 0 {
            return Err(TiltError::Empty);
        }
        let mut cells = Vec::with_capacity(width as usize * height as usize);
        for x in 0..width {
            for y in 0..height {
                cells.push(Cell2::new(x, y));
            }
        }
        Ok(Self::from_sorted_unchecked(cells))
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

    pub fn contains(&self, c: Cell2) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    pub fn index_of(&self, c: Cell2) -> Option<usize> {
        self.cells.binary_search(&c).ok()
    }

    /// Inclusive bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Cell2, Cell2) {
        bounding_box(&self.cells).expect("polyomino is nonempty")
    }

    pub fn width(&self) -> i32 {
        let (lo, hi) = self.bounding_box();
        hi.x - lo.x + 1
    }

    pub fn height(&self) -> i32 {
        let (lo, hi) = self.bounding_box();
        hi.y - lo.y + 1
    }

    pub fn translate(&self, dx: i32, dy: i32) -> Self {
        Self::from_sorted_unchecked(self.cells.iter().map(|c| c.offset(dx, dy)).collect())
    }

    /// Translate so that the bounding-box minimum is the origin.
    pub fn canonicalize(&self) -> Self {
        let (lo, _) = self.bounding_box();
        self.translate(-lo.x, -lo.y)
    }

    pub fn is_canonical(&self) -> bool {
        self.bounding_box().0 == Cell2::new(0, 0)
    }

    /// Congruence up to translation.
    pub fn congruent(&self, other: &Polyomino) -> bool {
        self.len() == other.len() && self.canonicalize() == other.canonicalize()
    }

    pub fn neighbors_of(&self, t: Cell2) -> impl Iterator<Item = Cell2> + '_ {
        t.neighbors().into_iter().filter(move |&c| self.contains(c))
    }

    pub fn edge_count(&self) -> usize {
        self.cells
            .iter()
            .map(|&c| {
                [Direction2::North, Direction2::East]
                    .into_iter()
                    .filter(|&d| self.contains(c.step(d)))
                    .count()
            })
            .sum()
    }

    pub fn is_tree_shaped(&self) -> bool {
        self.edge_count() + 1 == self.len()
    }

    /// True iff the complement of the shape is connected.
    pub fn is_simple(&self) -> bool {
        let (lo, hi) = self.bounding_box();
        let w = (hi.x - lo.x + 3) as u64;
        let h = (hi.y - lo.y + 3) as u64;
        if w * h <= FLOOD_FILL_AREA_LIMIT {
            self.is_simple_flood_fill()
        } else {
            self.hole_count_euler() == 0
        }
    }

    /// Flood fill of the complement inside the bounding box inflated by one
    /// cell. The inflated border ring is connected and seeds the fill.
    pub fn is_simple_flood_fill(&self) -> bool {
        let (lo, hi) = self.bounding_box();
        let w = (hi.x - lo.x + 3) as usize;
        let h = (hi.y - lo.y + 3) as usize;
        let mut grid = vec![false; w * h];
        for c in &self.cells {
            grid[(c.y - lo.y + 1) as usize * w + (c.x - lo.x + 1) as usize] = true;
        }
        let empty_total = w * h - self.cells.len();
        let mut stack = vec![0usize];
        grid[0] = true;
        let mut reached = 1usize;
        while let Some(i) = stack.pop() {
            let (x, y) = (i % w, i / w);
            let mut visit = |j: usize, stack: &mut Vec<usize>| {
                if !grid[j] {
                    grid[j] = true;
                    reached += 1;
                    stack.push(j);
                }
            };
            if x > 0 {
                visit(i - 1, &mut stack);
            }
            if x + 1 < w {
                visit(i + 1, &mut stack);
            }
            if y > 0 {
                visit(i - w, &mut stack);
            }
            if y + 1 < h {
                visit(i + w, &mut stack);
            }
        }
        reached == empty_total
    }

    /// Number of holes from the Euler characteristic of the closed union of
    /// unit squares: holes = 1 - (V - E + F).
    pub fn hole_count_euler(&self) -> usize {
        let mut corners = HashSet::with_capacity(self.cells.len() * 2);
        let mut h_edges = HashSet::with_capacity(self.cells.len() * 2);
        let mut v_edges = HashSet::with_capacity(self.cells.len() * 2);
        for c in &self.cells {
            for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                corners.insert((c.x + dx, c.y + dy));
            }
            h_edges.insert((c.x, c.y));
            h_edges.insert((c.x, c.y + 1));
            v_edges.insert((c.x, c.y));
            v_edges.insert((c.x + 1, c.y));
        }
        let chi =
            corners.len() as i64 - (h_edges.len() + v_edges.len()) as i64 + self.cells.len() as i64;
        (1 - chi).max(0) as usize
    }

    pub fn is_convex(&self, t: Cell2) -> bool {
        self.contains(t) && is_convex_at(|c| self.contains(c), t)
    }

    /// Tiles alone in some 2x2 window, in canonical cell order.
    pub fn convex_tiles(&self) -> Vec<Cell2> {
        self.cells
            .iter()
            .copied()
            .filter(|&t| is_convex_at(|c| self.contains(c), t))
            .collect()
    }

    /// True iff removing `t` disconnects the shape. Convex tiles of simple
    /// shapes use the local 3x3 rule; everything else uses a full
    /// connectivity check.
    pub fn is_cut_tile(&self, t: Cell2) -> Result<bool> {
        if !self.contains(t) {
            return Err(TiltError::NotInShape(t));
        }
        if self.is_convex(t) && self.is_simple() {
            if let Some(cut) = local_cut_rule(|c| self.contains(c), t) {
                return Ok(cut);
            }
        }
        self.is_cut_tile_exact(t)
    }

    pub fn is_cut_tile_exact(&self, t: Cell2) -> Result<bool> {
        if !self.contains(t) {
            return Err(TiltError::NotInShape(t));
        }
        if self.len() == 1 {
            return Ok(false);
        }
        Ok(!is_connected(&self.without_cells(t)))
    }

    pub(crate) fn without_cells(&self, t: Cell2) -> Vec<Cell2> {
        self.cells.iter().copied().filter(|&c| c != t).collect()
    }

    /// The shape with `t` removed, if the remainder is still a polyomino.
    pub fn without(&self, t: Cell2) -> Result<Self> {
        if !self.contains(t) {
            return Err(TiltError::NotInShape(t));
        }
        let rest = self.without_cells(t);
        if rest.is_empty() {
            return Err(TiltError::Empty);
        }
        if !is_connected(&rest) {
            return Err(TiltError::Disconnected);
        }
        Ok(Self::from_sorted_unchecked(rest))
    }

    pub fn with(&self, t: Cell2) -> Result<Self> {
        if self.contains(t) {
            return Err(TiltError::AlreadyPresent(t));
        }
        Self::new(self.cells.iter().copied().chain(std::iter::once(t)))
    }

    pub fn to_ascii(&self) -> String {
        render_ascii(&self.cells)
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

pub fn bounding_box(cells: &[Cell2]) -> Option<(Cell2, Cell2)> {
    let first = *cells.first()?;
    Some(cells.iter().fold((first, first), |(lo, hi), c| {
        (
            Cell2::new(lo.x.min(c.x), lo.y.min(c.y)),
            Cell2::new(hi.x.max(c.x), hi.y.max(c.y)),
        )
    }))
}

/// Parses the ASCII grid format: northmost row first, `#` for a tile, `.` for
/// empty. Trailing dots may be omitted. Leading and trailing blank lines are
/// ignored; blank lines inside the shape are an error. The southmost row is
/// `y = 0` and the first column is `x = 0`.
pub fn parse_ascii(text: &str) -> Result<Vec<Cell2>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .collect();
    let first = lines.iter().position(|(_, l)| !l.is_empty());
    let Some(first) = first else {
        return Err(TiltError::Empty);
    };
    let last = lines
        .iter()
        .rposition(|(_, l)| !l.is_empty())
        .unwrap_or(first);
    let rows = &lines[first..=last];
    let height = rows.len() as i32;
    let mut cells = Vec::new();
    for (r, &(line_no, line)) in rows.iter().enumerate() {
        if line.is_empty() {
            return Err(TiltError::Parse {
                line: line_no,
                message: "blank line inside shape".into(),
            });
        }
        let y = height - 1 - r as i32;
        for (x, ch) in line.chars().enumerate() {
            match ch {
                '#' => cells.push(Cell2::new(x as i32, y)),
                '.' => {}
                other => {
                    return Err(TiltError::Parse {
                        line: line_no,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
    }
    if cells.is_empty() {
        return Err(TiltError::Empty);
    }
    Ok(cells)
}

/// Renders cells over their bounding box, northmost row first.
pub fn render_ascii(cells: &[Cell2]) -> String {
    let Some((lo, hi)) = bounding_box(cells) else {
        return String::new();
    };
    let set: HashSet<Cell2> = cells.iter().copied().collect();
    let mut out = String::new();
    for y in (lo.y..=hi.y).rev() {
        for x in lo.x..=hi.x {
            out.push(if set.contains(&Cell2::new(x, y)) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

/// A polycube: a nonempty, face-connected, finite set of cubes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polycube {
    cells: Vec<Cell3>,
}

impl Polycube {
    pub fn new(cells: impl IntoIterator<Item = Cell3>) -> Result<Self> {
        let mut cells: Vec<Cell3> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        if cells.is_empty() {
            return Err(TiltError::Empty);
        }
        if !is_connected_3d(&cells) {
            return Err(TiltError::Disconnected);
        }
        Ok(Self { cells })
    }

    pub fn from_layers(text: &str) -> Result<Self> {
        Self::new(parse_layers(text)?)
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

    pub fn contains(&self, c: Cell3) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    pub fn index_of(&self, c: Cell3) -> Option<usize> {
        self.cells.binary_search(&c).ok()
    }

    pub fn bounding_box(&self) -> (Cell3, Cell3) {
        let first = self.cells[0];
        self.cells.iter().fold((first, first), |(lo, hi), c| {
            (
                Cell3::new(lo.x.min(c.x), lo.y.min(c.y), lo.z.min(c.z)),
                Cell3::new(hi.x.max(c.x), hi.y.max(c.y), hi.z.max(c.z)),
            )
        })
    }

    pub fn canonicalize(&self) -> Self {
        let (lo, _) = self.bounding_box();
        let mut cells: Vec<Cell3> = self
            .cells
            .iter()
            .map(|c| c.offset(-lo.x, -lo.y, -lo.z))
            .collect();
        cells.sort_unstable();
        Self { cells }
    }

    pub fn to_layers(&self) -> String {
        render_layers(&self.cells)
    }
}

/// Parses the 3D layer format: ASCII grids from the top layer down, separated
/// by lines containing exactly `---`. Rows are aligned from the top of each
/// layer; the bottom layer is `z = 0`.
pub fn parse_layers(text: &str) -> Result<Vec<Cell3>> {
    let mut layers: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line == "---" {
            layers.push(Vec::new());
        } else {
            layers.last_mut().expect("nonempty").push((i + 1, line));
        }
    }
    let mut trimmed = Vec::with_capacity(layers.len());
    for layer in &layers {
        let first = layer.iter().position(|(_, l)| !l.is_empty());
        let Some(first) = first else {
            let line = layer.first().map(|(n, _)| *n).unwrap_or(0);
            return Err(TiltError::Parse {
                line,
                message: "empty layer".into(),
            });
        };
        let last = layer
            .iter()
            .rposition(|(_, l)| !l.is_empty())
            .unwrap_or(first);
        trimmed.push(&layer[first..=last]);
    }
    let height = trimmed.iter().map(|l| l.len()).max().unwrap_or(0) as i32;
    let depth = trimmed.len() as i32;
    let mut cells = Vec::new();
    for (k, rows) in trimmed.iter().enumerate() {
        let z = depth - 1 - k as i32;
        for (r, &(line_no, line)) in rows.iter().enumerate() {
            if line.is_empty() {
                return Err(TiltError::Parse {
                    line: line_no,
                    message: "blank line inside layer".into(),
                });
            }
            let y = height - 1 - r as i32;
            for (x, ch) in line.chars().enumerate() {
                match ch {
                    '#' => cells.push(Cell3::new(x as i32, y, z)),
                    '.' => {}
                    other => {
                        return Err(TiltError::Parse {
                            line: line_no,
                            message: format!("unexpected character {other:?}"),
                        })
                    }
                }
            }
        }
    }
    if cells.is_empty() {
        return Err(TiltError::Empty);
    }
    Ok(cells)
}

pub fn render_layers(cells: &[Cell3]) -> String {
    let Some(&first) = cells.first() else {
        return String::new();
    };
    let (lo, hi) = cells.iter().fold((first, first), |(lo, hi), c| {
        (
            Cell3::new(lo.x.min(c.x), lo.y.min(c.y), lo.z.min(c.z)),
            Cell3::new(hi.x.max(c.x), hi.y.max(c.y), hi.z.max(c.z)),
        )
    });
    let set: HashSet<Cell3> = cells.iter().copied().collect();
    let mut out = String::new();
    for z in (lo.z..=hi.z).rev() {
        if z != hi.z {
            out.push_str("---\n");
        }
        for y in (lo.y..=hi.y).rev() {
            for x in lo.x..=hi.x {
                out.push(if set.contains(&Cell3::new(x, y, z)) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
    }
    out
}

/// Calls `f` once for every fixed polyomino with `n` cells, in canonical
/// form. Uses Redelmeier's growth scheme over the half-plane
/// `y > 0 || (y == 0 && x >= 0)`, which visits each fixed shape exactly once.
pub fn for_each_polyomino(n: usize, limit: usize, mut f: impl FnMut(Polyomino)) -> Result<()> {
    if n > limit {
        return Err(TiltError::ResourceLimit(format!(
            "enumeration of size {n} exceeds the configured cap of {limit}"
        )));
    }
    if n == 0 {
        return Ok(());
    }
    let n_i = n as i32;
    let width = 2 * n + 1;
    let idx = |c: Cell2| c.y as usize * width + (c.x + n_i) as usize;
    let mut marks = vec![false; width * (n + 1)];
    marks[idx(Cell2::new(0, 0))] = true;
    let mut poly = Vec::with_capacity(n);
    let mut emit = |cells: &[Cell2]| {
        let mut sorted = cells.to_vec();
        sorted.sort_unstable();
        let (lo, _) = bounding_box(&sorted).expect("nonempty");
        let shape = Polyomino::from_sorted_unchecked(
            sorted.iter().map(|c| c.offset(-lo.x, -lo.y)).collect(),
        );
        f(shape);
    };
    grow(
        vec![Cell2::new(0, 0)],
        &mut poly,
        &mut marks,
        n,
        &idx,
        &mut emit,
    );
    Ok(())
}

fn grow(
    mut untried: Vec<Cell2>,
    poly: &mut Vec<Cell2>,
    marks: &mut [bool],
    n: usize,
    idx: &impl Fn(Cell2) -> usize,
    emit: &mut impl FnMut(&[Cell2]),
) {
    let n_i = n as i32;
    while let Some(c) = untried.pop() {
        poly.push(c);
        if poly.len() == n {
            emit(poly);
        } else {
            let mut added = Vec::new();
            for nb in c.neighbors() {
                let allowed =
                    (nb.y > 0 || (nb.y == 0 && nb.x >= 0)) && nb.y <= n_i && nb.x.abs() <= n_i;
                if allowed && !marks[idx(nb)] {
                    marks[idx(nb)] = true;
                    added.push(nb);
                }
            }
            let mut next = untried.clone();
            next.extend_from_slice(&added);
            grow(next, poly, marks, n, idx, emit);
            for a in added {
                marks[idx(a)] = false;
            }
        }
        poly.pop();
    }
}

/// Every fixed polyomino of size `n`, sorted, using the default size cap.
pub fn enumerate_polyominoes(n: usize) -> Result<Vec<Polyomino>> {
    enumerate_polyominoes_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_polyominoes_with_limit(n: usize, limit: usize) -> Result<Vec<Polyomino>> {
    let mut out = Vec::new();
    for_each_polyomino(n, limit, |p| out.push(p))?;
    out.sort_unstable();
    Ok(out)
}
