//! `tilt`: command-line front end for tilt assembly.
//!
//! Exit codes: 0 yes/success, 1 a definite "no" answer, 2 unsupported
//! input or resource limit, 64 malformed input or usage.

mod census;
mod svg;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tilt_core::cube::{DEFAULT_PATH_BUDGET, DEFAULT_POLYCUBE_LIMIT};
use tilt_core::maxtap::{maxtap, DEFAULT_MAXTAP_LIMIT};
use tilt_core::maze::run_pipeline_with_budget;
use tilt_core::tap::{decide_exact, ExactOptions, DEFAULT_EXACT_LIMIT};
use tilt_core::{
    constructible_path_3d, decide_polycube, decide_simple, exact_maxtap, generate_maze,
    longest_constructible_shortest_path, longest_sequential_path_tree, verify, Cell2, Cell3,
    ConstructionSequence, CubeDecision, DecisionResult, DirectionSet3, MazeLayout, Polycube,
    Polyomino, TiltError,
};

pub const EXIT_NO: u8 = 1;
pub const EXIT_UNSUPPORTED: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, message)
    }
}

impl From<TiltError> for Failure {
    fn from(e: TiltError) -> Self {
        let code = match e {
            TiltError::ResourceLimit(_) | TiltError::NotTreeShaped | TiltError::NotSimple => {
                EXIT_UNSUPPORTED
            }
            _ => EXIT_USAGE,
        };
        Self::new(code, e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type Outcome = Result<u8, Failure>;

#[derive(Parser, Debug)]
#[command(
    name = "tilt",
    version,
    about = "Tilt assembly of polyominoes and polycubes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a shape can be built; prints a construction sequence.
    Decide(DecideArgs),
    /// Replay a sequence file against a shape.
    Verify { shape: PathBuf, sequence: PathBuf },
    /// Largest buildable subshape (exact when small, path approximation otherwise).
    Maxtap(MaxtapArgs),
    /// Longest constructible path; in 3D, a constructible path between two cubes.
    Path(PathArgs),
    /// Generate a pipelined maze for a sequence file.
    Maze {
        sequence: PathBuf,
        /// Number of copies the maze is laid out for.
        #[arg(short = 'D', long, default_value_t = 5)]
        copies: u64,
        /// Directory receiving maze.txt and schedule.txt.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a maze and report the produced copies.
    Simulate(SimulateArgs),
    /// Enumerate all polyominoes up to a size and tabulate constructibility.
    Census {
        #[arg(long)]
        max_n: usize,
        /// Write the smallest non-constructible shapes here.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Render a shape, or the frames of a maze run.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct DecideArgs {
    shape: PathBuf,
    /// Tile that must be the seed, as x,y.
    #[arg(long)]
    seed: Option<String>,
    /// Exhaustive search instead of the greedy decider; handles holes.
    #[arg(long)]
    exact: bool,
    /// Size cap for exhaustive searches.
    #[arg(long)]
    limit: Option<usize>,
    /// Treat the input as a layered polycube file.
    #[arg(long = "3d")]
    three_d: bool,
    #[arg(long, value_enum, default_value_t = DirsArg::All)]
    dirs: DirsArg,
    /// Write the sequence here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MaxtapArgs {
    shape: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long, default_value_t = DEFAULT_MAXTAP_LIMIT)]
    limit: usize,
    /// Write the subshape's construction sequence here.
    #[arg(long)]
    sequence_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PathArgs {
    shape: PathBuf,
    #[arg(long = "3d")]
    three_d: bool,
    #[arg(long, value_enum, default_value_t = DirsArg::All)]
    dirs: DirsArg,
    /// Start cube x,y,z (3D only).
    #[arg(long)]
    from: Option<String>,
    /// End cube x,y,z (3D only).
    #[arg(long)]
    to: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PATH_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    maze: PathBuf,
    schedule: PathBuf,
    #[arg(short = 'D', long, default_value_t = 5)]
    copies: u64,
    /// Unit-step budget; defaults to twice the cycle bound.
    #[arg(long)]
    steps: Option<u64>,
    /// Print the world after every step.
    #[arg(long)]
    frames: bool,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Shape file, or a maze file when --schedule is given.
    input: PathBuf,
    #[arg(long)]
    schedule: Option<PathBuf>,
    /// Frames to render for a maze run (0 renders the empty maze).
    #[arg(long, default_value_t = 0)]
    steps: u64,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    #[arg(long = "3d")]
    three_d: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DirsArg {
    All,
    NoBelow,
    Lateral,
}

impl DirsArg {
    fn set(self) -> DirectionSet3 {
        match self {
            DirsArg::All => DirectionSet3::ALL6,
            DirsArg::NoBelow => DirectionSet3::NO_BELOW,
            DirsArg::Lateral => DirectionSet3::LATERAL,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Auto,
    Exact,
    Tree,
    Shortest,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Ascii,
    Svg,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_shape(path: &Path) -> Result<Polyomino, Failure> {
    Polyomino::from_ascii(&read(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_polycube(path: &Path) -> Result<Polycube, Failure> {
    Polycube::from_layers(&read(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_ints(s: &str, n: usize) -> Result<Vec<i32>, Failure> {
    let v: Vec<i32> = s
        .split(',')
        .map(|t| t.trim().parse::<i32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("bad coordinate list {s:?}")))?;
    if v.len() != n {
        return Err(Failure::usage(format!(
            "expected {n} comma-separated integers, got {s:?}"
        )));
    }
    Ok(v)
}

fn parse_cell2(s: &str) -> Result<Cell2, Failure> {
    let v = parse_ints(s, 2)?;
    Ok(Cell2::new(v[0], v[1]))
}

fn parse_cell3(s: &str) -> Result<Cell3, Failure> {
    let v = parse_ints(s, 3)?;
    Ok(Cell3::new(v[0], v[1], v[2]))
}

fn cmd_decide(a: &DecideArgs) -> Outcome {
    if a.three_d {
        let p = read_polycube(&a.shape)?;
        if a.seed.is_some() {
            return Err(Failure::usage("--seed is not supported with --3d"));
        }
        return match decide_polycube(&p, a.dirs.set(), a.limit.unwrap_or(DEFAULT_POLYCUBE_LIMIT))? {
            CubeDecision::Constructible(seq) => {
                write_or_print(a.output.as_deref(), &seq.to_text())?;
                Ok(0)
            }
            CubeDecision::NotConstructible => {
                eprintln!("not constructible");
                Ok(EXIT_NO)
            }
            CubeDecision::ResourceLimit(m) => Err(Failure::new(
                EXIT_UNSUPPORTED,
                format!("resource limit: {m}"),
            )),
        };
    }
    let p = read_shape(&a.shape)?;
    let seed = a.seed.as_deref().map(parse_cell2).transpose()?;
    let r = if a.exact {
        decide_exact(
            &p,
            &ExactOptions {
                limit: a.limit.unwrap_or(DEFAULT_EXACT_LIMIT),
                forced_seed: seed,
            },
        )?
    } else {
        decide_simple(&p, seed)?
    };
    match r {
        DecisionResult::Constructible(seq) => {
            write_or_print(a.output.as_deref(), &seq.to_text())?;
            Ok(0)
        }
        DecisionResult::NotConstructible => {
            eprintln!("not constructible");
            Ok(EXIT_NO)
        }
        DecisionResult::NotSupported(m) => Err(Failure::new(
            EXIT_UNSUPPORTED,
            format!("not supported: {m}"),
        )),
        DecisionResult::ResourceLimit(m) => Err(Failure::new(
            EXIT_UNSUPPORTED,
            format!("resource limit: {m}"),
        )),
    }
}

fn cmd_verify(shape: &Path, sequence: &Path) -> Outcome {
    let p = read_shape(shape)?;
    let seq = ConstructionSequence::from_text(&read(sequence)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", sequence.display())))?;
    match verify(&p, &seq) {
        Ok(()) => {
            println!("ok");
            Ok(0)
        }
        Err(e) => {
            eprintln!("invalid: {e}");
            Ok(EXIT_NO)
        }
    }
}

fn cmd_maxtap(a: &MaxtapArgs) -> Outcome {
    let p = read_shape(&a.shape)?;
    let r = match a.method {
        Method::Auto => maxtap(&p, a.limit)?,
        Method::Exact => exact_maxtap(&p, a.limit)?,
        Method::Tree => path_result(
            longest_sequential_path_tree(&p)?,
            tilt_core::MaxTapKind::TreePathApprox,
        ),
        Method::Shortest => path_result(
            longest_constructible_shortest_path(&p)?,
            tilt_core::MaxTapKind::ShortestPathApprox,
        ),
    };
    eprintln!(
        "{} tiles of {} ({})",
        r.subshape.len(),
        p.len(),
        r.kind.name()
    );
    print!("{}", r.subshape.to_ascii());
    if let Some(out) = &a.sequence_out {
        write_or_print(Some(out), &r.sequence.to_text())?;
    }
    Ok(0)
}

fn path_result(path: tilt_core::TilePath, kind: tilt_core::MaxTapKind) -> tilt_core::MaxTapResult {
    tilt_core::MaxTapResult {
        subshape: path.to_polyomino(),
        sequence: path.sequence().expect("search returns constructible paths"),
        kind,
    }
}

fn cmd_path(a: &PathArgs) -> Outcome {
    if !a.three_d {
        if a.from.is_some() || a.to.is_some() {
            return Err(Failure::usage("--from/--to need --3d"));
        }
        let p = read_shape(&a.shape)?;
        let path = if p.is_tree_shaped() {
            longest_sequential_path_tree(&p)?
        } else {
            longest_constructible_shortest_path(&p)?
        };
        println!("{path}");
        return Ok(0);
    }
    let p = read_polycube(&a.shape)?;
    let (Some(from), Some(to)) = (&a.from, &a.to) else {
        return Err(Failure::usage("--3d paths need --from and --to"));
    };
    let (s, t) = (parse_cell3(from)?, parse_cell3(to)?);
    match constructible_path_3d(&p, s, t, a.dirs.set(), a.budget)? {
        Some(path) => {
            let cells: Vec<String> = path.cells().iter().map(|c| c.to_string()).collect();
            println!("{}", cells.join(" "));
            Ok(0)
        }
        None => {
            eprintln!("no constructible path");
            Ok(EXIT_NO)
        }
    }
}

fn cmd_maze(sequence: &Path, copies: u64, out: &Path) -> Outcome {
    let seq = ConstructionSequence::from_text(&read(sequence)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", sequence.display())))?;
    let layout = generate_maze(&seq, copies)?;
    fs::create_dir_all(out).map_err(|e| Failure::usage(format!("{}: {e}", out.display())))?;
    write_or_print(Some(&out.join("maze.txt")), &layout.to_maze_text())?;
    write_or_print(Some(&out.join("schedule.txt")), &layout.to_schedule_text())?;
    eprintln!(
        "{}x{} maze, {} depots, {} tiles per copy",
        layout.width,
        layout.height,
        layout.depots.len(),
        layout.product.len()
    );
    Ok(0)
}

fn read_layout(maze: &Path, schedule: &Path) -> Result<MazeLayout, Failure> {
    Ok(MazeLayout::from_texts(&read(maze)?, &read(schedule)?)?)
}

fn cmd_simulate(a: &SimulateArgs) -> Outcome {
    let layout = read_layout(&a.maze, &a.schedule)?;
    let budget = a
        .steps
        .unwrap_or_else(|| tilt_core::maze::default_budget(&layout, a.copies));
    let frames = a.frames;
    let mut out = std::io::stdout().lock();
    let report = run_pipeline_with_budget(&layout, a.copies, budget, |ev, world| {
        let _ = writeln!(out, "{ev}");
        if frames {
            let _ = write!(out, "{}", world.render());
        }
    })?;
    eprintln!(
        "copies {} of {} in {} steps; completions {:?}; congruent {}",
        report.copies.len(),
        a.copies,
        report.steps,
        report.completion_steps,
        report.all_congruent()
    );
    Ok(if report.completed && report.all_congruent() {
        0
    } else {
        EXIT_NO
    })
}

fn cmd_render(a: &RenderArgs) -> Outcome {
    if let Some(schedule) = &a.schedule {
        let layout = read_layout(&a.input, schedule)?;
        let mut frames = vec![layout.world()?];
        if a.steps > 0 {
            run_pipeline_with_budget(&layout, u64::MAX, a.steps, |_, w| frames.push(w.clone()))?;
        }
        match a.format {
            Format::Ascii => {
                for (i, w) in frames.iter().enumerate() {
                    if a.steps > 0 {
                        println!("frame {i}");
                    }
                    print!("{}", w.render());
                }
            }
            Format::Svg => print!("{}", svg::worlds(&frames)),
        }
        return Ok(0);
    }
    if a.three_d {
        let p = read_polycube(&a.input)?;
        return match a.format {
            Format::Ascii => {
                print!("{}", p.to_layers());
                Ok(0)
            }
            Format::Svg => Err(Failure::new(EXIT_UNSUPPORTED, "svg output is planar only")),
        };
    }
    let p = read_shape(&a.input)?;
    match a.format {
        Format::Ascii => print!("{}", p.to_ascii()),
        Format::Svg => print!("{}", svg::shape(&p)),
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Decide(a) => cmd_decide(&a),
        Command::Verify { shape, sequence } => cmd_verify(&shape, &sequence),
        Command::Maxtap(a) => cmd_maxtap(&a),
        Command::Path(a) => cmd_path(&a),
        Command::Maze {
            sequence,
            copies,
            out,
        } => cmd_maze(&sequence, copies, &out),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Census { max_n, witness_dir } => census::run(max_n, witness_dir.as_deref()),
        Command::Render(a) => cmd_render(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("tilt: {f}");
            ExitCode::from(f.code)
        }
    }
}
