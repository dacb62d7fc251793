//! Spiral mazes that assemble copies of a polyomino under a fixed tilt cycle.
//!
//! The board is tilted west, north, east, south, west, ... forever; global
//! step 0 is a south tilt. The maze is a square spiral of `W x W` corner
//! squares `K_1, K_2, ...` joined by `W`-wide corridors. During global step
//! `j` an assembly travels from `K_j` to `K_{j+1}`, one copy entering the
//! spiral every cycle. A tile that must arrive from side `d` is mapped to a
//! later step whose tilt points away from `d`; its depot is a short notch in
//! the `d` wall of the corner square, so the tile follows the assembly down
//! the corridor and sticks to it once the assembly rests. The last square
//! is a sink that removes finished copies.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Result, TiltError};
use crate::grid::{Cell2, Direction2, Polyomino};
use crate::tap::{normalize_lanes, Assembler, ConstructionSequence};
use crate::tilt::{Depot, StepEvent, TiltWorld};

/// The tilt cycle, in order.
pub const CYCLE: [Direction2; 4] = [
    Direction2::West,
    Direction2::North,
    Direction2::East,
    Direction2::South,
];

/// Position in [`CYCLE`] of global step 0.
pub const START_PHASE: usize = 3;

/// Walls between neighbouring corridors.
pub const WALL_THICKNESS: i32 = 3;

/// Tilt direction of global step `step` under the default schedule.
pub fn tilt_direction(step: u64) -> Direction2 {
    CYCLE[(START_PHASE + (step % 4) as usize) % 4]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MazeLayout {
    pub width: i32,
    pub height: i32,
    /// Wall cells, sorted; the south-west corner of the maze is `(0,0)`.
    pub walls: Vec<Cell2>,
    pub depots: Vec<Depot>,
    /// Inclusive corners of the sink rectangle.
    pub sink: (Cell2, Cell2),
    pub cycle: [Direction2; 4],
    pub start_phase: usize,
    pub product: Polyomino,
}

impl MazeLayout {
    pub fn direction_at(&self, step: u64) -> Direction2 {
        self.cycle[(self.start_phase + (step % 4) as usize) % 4]
    }

    pub fn sink_cells(&self) -> impl Iterator<Item = Cell2> + '_ {
        let (lo, hi) = self.sink;
        (lo.y..=hi.y).flat_map(move |y| (lo.x..=hi.x).map(move |x| Cell2::new(x, y)))
    }

    /// A fresh, empty world with the layout's depots and sink.
    pub fn world(&self) -> Result<TiltWorld> {
        let mut w = TiltWorld::new(self.walls.iter().copied(), Vec::<Vec<Cell2>>::new())?;
        for &d in &self.depots {
            w.add_depot(d)?;
        }
        w.set_sink(self.sink_cells())?;
        Ok(w)
    }

    /// ASCII grid, north row first: `#` wall, `.` free, `D` depot, `O` sink.
    pub fn to_maze_text(&self) -> String {
        let mut rows = vec![vec![b'.'; self.width as usize]; self.height as usize];
        for c in &self.walls {
            rows[c.y as usize][c.x as usize] = b'#';
        }
        for c in self.sink_cells() {
            rows[c.y as usize][c.x as usize] = b'O';
        }
        for d in &self.depots {
            rows[d.cell.y as usize][d.cell.x as usize] = b'D';
        }
        let mut out = String::new();
        for row in rows.iter().rev() {
            out.push_str(std::str::from_utf8(row).expect("ascii"));
            out.push('\n');
        }
        out
    }

    /// The sidecar listing the schedule, sink, depot releases and product.
    pub fn to_schedule_text(&self) -> String {
        let mut out = String::new();
        let cycle: Vec<String> = self.cycle.iter().map(|d| d.letter().to_string()).collect();
        writeln!(out, "cycle {}", cycle.join(" ")).unwrap();
        writeln!(out, "start-phase {}", self.cycle[self.start_phase]).unwrap();
        let (lo, hi) = self.sink;
        writeln!(out, "sink {} {} {} {}", lo.x, lo.y, hi.x, hi.y).unwrap();
        for (k, d) in self.depots.iter().enumerate() {
            writeln!(
                out,
                "D{k} {} {} {} {} {}",
                d.cell.x, d.cell.y, d.first, d.period, d.count
            )
            .unwrap();
        }
        writeln!(out, "product").unwrap();
        out.push_str(&self.product.to_ascii());
        out
    }

    pub fn from_texts(maze: &str, schedule: &str) -> Result<Self> {
        let lines: Vec<&str> = maze.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.is_empty() {
            return Err(TiltError::InvalidMaze("empty maze grid".into()));
        }
        let height = lines.len() as i32;
        let width = lines[0].trim_end().len() as i32;
        let mut walls = Vec::new();
        let mut marked_depots = HashSet::new();
        for (r, line) in lines.iter().enumerate() {
            let line = line.trim_end();
            if line.len() as i32 != width {
                return Err(TiltError::Parse {
                    line: r + 1,
                    message: format!("expected {width} columns, found {}", line.len()),
                });
            }
            let y = height - 1 - r as i32;
            for (x, ch) in line.chars().enumerate() {
                let c = Cell2::new(x as i32, y);
                match ch {
                    '#' => walls.push(c),
                    '.' | 'O' => {}
                    'D' => {
                        marked_depots.insert(c);
                    }
                    other => {
                        return Err(TiltError::Parse {
                            line: r + 1,
                            message: format!("unexpected character {other:?}"),
                        })
                    }
                }
            }
        }
        walls.sort_unstable();

        let mut cycle = None;
        let mut start = None;
        let mut sink = None;
        let mut depots = Vec::new();
        let mut product_lines = None;
        for (i, raw) in schedule.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| TiltError::Parse {
                line: i + 1,
                message,
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let ints = |xs: &[&str]| -> Result<Vec<i64>> {
                xs.iter()
                    .map(|s| {
                        s.parse::<i64>()
                            .map_err(|_| err(format!("bad number {s:?}")))
                    })
                    .collect()
            };
            match parts[0] {
                "cycle" => {
                    let ds: Vec<Direction2> = parts[1..]
                        .iter()
                        .map(|s| {
                            Direction2::from_letter(s)
                                .ok_or_else(|| err(format!("bad direction {s:?}")))
                        })
                        .collect::<Result<_>>()?;
                    let ds: [Direction2; 4] = ds
                        .try_into()
                        .map_err(|_| err("cycle needs four directions".into()))?;
                    cycle = Some(ds);
                }
                "start-phase" => {
                    let d = parts
                        .get(1)
                        .and_then(|s| Direction2::from_letter(s))
                        .ok_or_else(|| err("bad start phase".into()))?;
                    start = Some(d);
                }
                "sink" => {
                    let v = ints(&parts[1..])?;
                    if v.len() != 4 {
                        return Err(err("sink needs four coordinates".into()));
                    }
                    sink = Some((
                        Cell2::new(v[0] as i32, v[1] as i32),
                        Cell2::new(v[2] as i32, v[3] as i32),
                    ));
                }
                "product" => {
                    product_lines = Some(i + 1);
                    break;
                }
                tag if tag.starts_with('D') && tag[1..].parse::<usize>().is_ok() => {
                    let v = ints(&parts[1..])?;
                    if v.len() != 5 || v[2] < 0 || v[3] < 1 || v[4] < 0 {
                        return Err(err("depot needs x y first period count".into()));
                    }
                    depots.push(Depot {
                        cell: Cell2::new(v[0] as i32, v[1] as i32),
                        first: v[2] as u64,
                        period: v[3] as u64,
                        count: v[4] as u64,
                    });
                }
                other => return Err(err(format!("unknown entry {other:?}"))),
            }
        }
        let cycle = cycle.ok_or_else(|| TiltError::InvalidMaze("schedule lacks a cycle".into()))?;
        let start =
            start.ok_or_else(|| TiltError::InvalidMaze("schedule lacks a start phase".into()))?;
        let start_phase = cycle
            .iter()
            .position(|&d| d == start)
            .ok_or_else(|| TiltError::InvalidMaze("start phase is not in the cycle".into()))?;
        let sink = sink.ok_or_else(|| TiltError::InvalidMaze("schedule lacks a sink".into()))?;
        let product_at = product_lines
            .ok_or_else(|| TiltError::InvalidMaze("schedule lacks a product".into()))?;
        let product_text: String = schedule
            .lines()
            .skip(product_at)
            .map(|l| format!("{l}\n"))
            .collect();
        let product = Polyomino::from_ascii(&product_text).map_err(|e| match e {
            TiltError::Parse { line, message } => TiltError::Parse {
                line: line + product_at,
                message,
            },
            other => other,
        })?;
        let listed: HashSet<Cell2> = depots.iter().map(|d| d.cell).collect();
        if listed != marked_depots {
            return Err(TiltError::InvalidMaze(
                "depot markers in the grid do not match the schedule".into(),
            ));
        }
        let layout = Self {
            width,
            height,
            walls,
            depots,
            sink,
            cycle,
            start_phase,
            product,
        };
        layout.world()?;
        Ok(layout)
    }
}

/// Maps each construction step to the global step that delivers its tile:
/// the next step, after the previous tile's, whose tilt points away from the
/// tile's arrival side.
pub fn delivery_steps(seq: &ConstructionSequence) -> Vec<u64> {
    let mut out = Vec::with_capacity(seq.steps.len());
    let mut j = 0;
    for step in &seq.steps {
        j += 1;
        while tilt_direction(j) != step.direction.opposite() {
            j += 1;
        }
        out.push(j);
    }
    out
}

fn rect_cells(lo: Cell2, hi: Cell2) -> impl Iterator<Item = Cell2> {
    (lo.y..=hi.y).flat_map(move |y| (lo.x..=hi.x).map(move |x| Cell2::new(x, y)))
}

/// Builds a spiral maze producing `copies` copies of the shape built by
/// `seq`. Steps whose lane misses the partial shape are normalized first.
pub fn generate_maze(seq: &ConstructionSequence, copies: u64) -> Result<MazeLayout> {
    let product = seq
        .build()
        .map_err(|e| TiltError::InvalidSequence(e.to_string()))?;
    let seq = normalize_lanes(seq).map_err(|e| TiltError::InvalidSequence(e.to_string()))?;
    let side = product.width() + product.height() + 2;
    let pitch = side + WALL_THICKNESS;
    let delivery = delivery_steps(&seq);
    let last = delivery.last().copied().unwrap_or(0);

    // squares[k] is K_{k+1}
    let mut corners = vec![(0i32, 0i32)];
    for j in 1..=last {
        let (dx, dy) = tilt_direction(j).unit();
        let len = j.div_ceil(2) as i32;
        let &(x, y) = corners.last().expect("nonempty");
        corners.push((x + dx * len, y + dy * len));
    }
    let squares: Vec<(Cell2, Cell2)> = corners
        .iter()
        .map(|&(x, y)| {
            let lo = Cell2::new(x * pitch, y * pitch);
            (lo, lo.offset(side - 1, side - 1))
        })
        .collect();

    let mut free: HashSet<Cell2> = HashSet::new();
    for &(lo, hi) in &squares {
        free.extend(rect_cells(lo, hi));
    }
    for w in squares.windows(2) {
        let lo = Cell2::new(w[0].0.x.min(w[1].0.x), w[0].0.y.min(w[1].0.y));
        let hi = Cell2::new(w[0].1.x.max(w[1].1.x), w[0].1.y.max(w[1].1.y));
        free.extend(rect_cells(lo, hi));
    }

    let mut depots = Vec::with_capacity(seq.steps.len() + 1);
    let (_, k1_hi) = squares[0];
    depots.push(Depot {
        cell: k1_hi,
        first: 0,
        period: 4,
        count: copies,
    });
    let mut asm = Assembler::new(seq.seed);
    let (mut plo, mut phi) = (seq.seed, seq.seed);
    for (step, &j) in seq.steps.iter().zip(&delivery) {
        let (sq_lo, sq_hi) = squares[(j - 1) as usize];
        let mut off = (0, 0);
        for pressed in [tilt_direction(j - 1), step.direction] {
            match pressed {
                Direction2::East => off.0 = sq_hi.x - phi.x,
                Direction2::West => off.0 = sq_lo.x - plo.x,
                Direction2::North => off.1 = sq_hi.y - phi.y,
                Direction2::South => off.1 = sq_lo.y - plo.y,
            }
        }
        let notch_base = match step.direction {
            Direction2::East => Cell2::new(sq_hi.x, step.lane + off.1),
            Direction2::West => Cell2::new(sq_lo.x, step.lane + off.1),
            Direction2::North => Cell2::new(step.lane + off.0, sq_hi.y),
            Direction2::South => Cell2::new(step.lane + off.0, sq_lo.y),
        };
        let inner = notch_base.step(step.direction);
        let outer = inner.step(step.direction);
        free.insert(inner);
        free.insert(outer);
        depots.push(Depot {
            cell: outer,
            first: j,
            period: 4,
            count: copies,
        });
        let cell = asm
            .apply(*step)
            .map_err(|_| TiltError::InvalidSequence("no-op step".into()))?;
        plo = Cell2::new(plo.x.min(cell.x), plo.y.min(cell.y));
        phi = Cell2::new(phi.x.max(cell.x), phi.y.max(cell.y));
    }

    let xs = free.iter().map(|c| c.x);
    let min_x = xs.clone().min().expect("nonempty") - WALL_THICKNESS;
    let max_x = xs.max().expect("nonempty") + WALL_THICKNESS;
    let min_y = free.iter().map(|c| c.y).min().expect("nonempty") - WALL_THICKNESS;
    let max_y = free.iter().map(|c| c.y).max().expect("nonempty") + WALL_THICKNESS;
    let shift = |c: Cell2| c.offset(-min_x, -min_y);
    let mut walls: Vec<Cell2> = rect_cells(Cell2::new(min_x, min_y), Cell2::new(max_x, max_y))
        .filter(|c| !free.contains(c))
        .map(shift)
        .collect();
    walls.sort_unstable();
    for d in &mut depots {
        d.cell = shift(d.cell);
    }
    let (sink_lo, sink_hi) = squares[last as usize];
    Ok(MazeLayout {
        width: max_x - min_x + 1,
        height: max_y - min_y + 1,
        walls,
        depots,
        sink: (shift(sink_lo), shift(sink_hi)),
        cycle: CYCLE,
        start_phase: START_PHASE,
        product,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    /// Finished assemblies in order of completion.
    pub copies: Vec<Polyomino>,
    /// Unit steps executed when each copy was finished.
    pub completion_steps: Vec<u64>,
    pub steps: u64,
    /// Whether every copy is a translated copy of the product.
    pub congruent: Vec<bool>,
    pub trace: Vec<StepEvent>,
    /// Whether the requested number of copies came out within the budget.
    pub completed: bool,
}

impl PipelineReport {
    pub fn all_congruent(&self) -> bool {
        self.congruent.iter().all(|&c| c)
    }

    pub fn first_copy_latency(&self) -> Option<u64> {
        self.completion_steps.first().copied()
    }

    /// Unit steps per copy after the first one.
    pub fn steady_state_rate(&self) -> Option<f64> {
        let n = self.completion_steps.len();
        (n >= 2).then(|| {
            (self.completion_steps[n - 1] - self.completion_steps[0]) as f64 / (n - 1) as f64
        })
    }

    /// Copies finished within the first `steps` unit steps.
    pub fn copies_within(&self, steps: u64) -> usize {
        self.completion_steps
            .iter()
            .filter(|&&s| s <= steps)
            .count()
    }

    pub fn trace_text(&self) -> String {
        self.trace.iter().map(|e| format!("{e}\n")).collect()
    }
}

/// Default step budget: twice the cycle bound for `copies` copies.
pub fn default_budget(layout: &MazeLayout, copies: u64) -> u64 {
    8 * (layout.product.len() as u64 + copies) + 16
}

pub fn run_pipeline(layout: &MazeLayout, copies: u64) -> Result<PipelineReport> {
    run_pipeline_with_budget(layout, copies, default_budget(layout, copies), |_, _| {})
}

/// Runs the schedule until `copies` products have left through the sink
/// or `budget` unit steps have passed. `observe` sees the world after every
/// step.
pub fn run_pipeline_with_budget(
    layout: &MazeLayout,
    copies: u64,
    budget: u64,
    mut observe: impl FnMut(&StepEvent, &TiltWorld),
) -> Result<PipelineReport> {
    let mut world = layout.world()?;
    let mut report = PipelineReport {
        copies: Vec::new(),
        completion_steps: Vec::new(),
        steps: 0,
        congruent: Vec::new(),
        trace: Vec::new(),
        completed: copies == 0,
    };
    while (report.copies.len() as u64) < copies && report.steps < budget {
        let ev = world.step(layout.direction_at(report.steps));
        report.steps += 1;
        for p in &ev.products {
            report.congruent.push(p.congruent(&layout.product));
            report.copies.push(p.clone());
            report.completion_steps.push(report.steps);
        }
        observe(&ev, &world);
        report.trace.push(ev);
    }
    report.completed = report.copies.len() as u64 >= copies;
    Ok(report)
}
