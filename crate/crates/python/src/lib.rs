//! Python bindings: shapes, deciders, MaxTAP searches, mazes and polycubes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use tilt_core::maxtap::maxtap;
use tilt_core::tap::{decide_exact, ExactOptions, DEFAULT_EXACT_LIMIT};
use tilt_core::{
    decide_polycube, decide_simple, longest_constructible_shortest_path,
    longest_sequential_path_tree, Cell2, ConstructionSequence, CubeDecision, DecisionResult,
    DirectionSet3, MazeLayout, TiltError,
};

fn err(e: TiltError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A connected set of grid cells.
#[pyclass(frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polyomino {
    inner: tilt_core::Polyomino,
}

#[pymethods]
impl Polyomino {
    /// Parse an ASCII grid (`#` tile, `.` empty, northmost row first).
    #[new]
    fn new(ascii: &str) -> PyResult<Self> {
        tilt_core::Polyomino::from_ascii(ascii)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn from_cells(cells: Vec<(i32, i32)>) -> PyResult<Self> {
        tilt_core::Polyomino::new(cells.into_iter().map(|(x, y)| Cell2::new(x, y)))
            .map(|inner| Self { inner })
            .map_err(err)
    }

    fn cells(&self) -> Vec<(i32, i32)> {
        self.inner.cells().iter().map(|c| (c.x, c.y)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Polyomino({:?})", self.inner.to_ascii())
    }

    fn to_ascii(&self) -> String {
        self.inner.to_ascii()
    }

    fn canonicalize(&self) -> Self {
        Self {
            inner: self.inner.canonicalize(),
        }
    }

    fn is_simple(&self) -> bool {
        self.inner.is_simple()
    }

    fn is_tree_shaped(&self) -> bool {
        self.inner.is_tree_shaped()
    }

    fn convex_tiles(&self) -> Vec<(i32, i32)> {
        self.inner
            .convex_tiles()
            .iter()
            .map(|c| (c.x, c.y))
            .collect()
    }

    fn is_cut_tile(&self, x: i32, y: i32) -> PyResult<bool> {
        self.inner.is_cut_tile_exact(Cell2::new(x, y)).map_err(err)
    }
}

/// Seed tile plus `(direction, lane)` steps.
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
pub struct Sequence {
    inner: ConstructionSequence,
}

#[pymethods]
impl Sequence {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        ConstructionSequence::from_text(text)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn seed(&self) -> (i32, i32) {
        (self.inner.seed.x, self.inner.seed.y)
    }

    #[getter]
    fn steps(&self) -> Vec<(String, i32)> {
        self.inner
            .steps
            .iter()
            .map(|s| (s.direction.letter().to_string(), s.lane))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Replay the steps; raises if one of them is a no-op.
    fn build(&self) -> PyResult<Polyomino> {
        self.inner
            .build()
            .map(|inner| Polyomino { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

fn status(r: &DecisionResult) -> &'static str {
    match r {
        DecisionResult::Constructible(_) => "constructible",
        DecisionResult::NotConstructible => "not_constructible",
        DecisionResult::NotSupported(_) => "not_supported",
        DecisionResult::ResourceLimit(_) => "resource_limit",
    }
}

/// Returns `(status, sequence or None)`.
#[pyfunction]
#[pyo3(signature = (shape, seed=None, exact=false, limit=DEFAULT_EXACT_LIMIT))]
fn decide(
    shape: &Polyomino,
    seed: Option<(i32, i32)>,
    exact: bool,
    limit: usize,
) -> PyResult<(&'static str, Option<Sequence>)> {
    let seed = seed.map(|(x, y)| Cell2::new(x, y));
    let r = if exact {
        decide_exact(
            &shape.inner,
            &ExactOptions {
                limit,
                forced_seed: seed,
            },
        )
    } else {
        decide_simple(&shape.inner, seed)
    }
    .map_err(err)?;
    Ok((
        status(&r),
        r.sequence().map(|s| Sequence { inner: s.clone() }),
    ))
}

/// Returns `None` on success, otherwise the reason the sequence fails.
#[pyfunction]
fn verify(shape: &Polyomino, sequence: &Sequence) -> Option<String> {
    tilt_core::verify(&shape.inner, &sequence.inner)
        .err()
        .map(|e| e.to_string())
}

/// Largest buildable subshape and its sequence, plus the method used.
#[pyfunction]
#[pyo3(signature = (shape, limit=12))]
fn max_subshape(shape: &Polyomino, limit: usize) -> PyResult<(Polyomino, Sequence, &'static str)> {
    let r = maxtap(&shape.inner, limit).map_err(err)?;
    Ok((
        Polyomino { inner: r.subshape },
        Sequence { inner: r.sequence },
        r.kind.name(),
    ))
}

/// Longest sequentially constructible path (tree search for trees,
/// shortest paths otherwise).
#[pyfunction]
fn longest_path(shape: &Polyomino) -> PyResult<Vec<(i32, i32)>> {
    let p = &shape.inner;
    let path = if p.is_tree_shaped() {
        longest_sequential_path_tree(p)
    } else {
        longest_constructible_shortest_path(p)
    }
    .map_err(err)?;
    Ok(path.cells().iter().map(|c| (c.x, c.y)).collect())
}

#[pyfunction]
fn enumerate_polyominoes(n: usize) -> PyResult<Vec<Polyomino>> {
    Ok(tilt_core::enumerate_polyominoes(n)
        .map_err(err)?
        .into_iter()
        .map(|inner| Polyomino { inner })
        .collect())
}

/// A generated maze with its release schedule.
#[pyclass(frozen)]
pub struct Maze {
    inner: MazeLayout,
}

#[pymethods]
impl Maze {
    #[staticmethod]
    fn from_texts(maze: &str, schedule: &str) -> PyResult<Self> {
        MazeLayout::from_texts(maze, schedule)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    fn maze_text(&self) -> String {
        self.inner.to_maze_text()
    }

    fn schedule_text(&self) -> String {
        self.inner.to_schedule_text()
    }

    #[getter]
    fn size(&self) -> (i32, i32) {
        (self.inner.width, self.inner.height)
    }

    /// Returns `(completion steps, all copies congruent, trace text)`.
    fn run(&self, copies: u64) -> PyResult<(Vec<u64>, bool, String)> {
        let r = tilt_core::run_pipeline(&self.inner, copies).map_err(err)?;
        Ok((
            r.completion_steps.clone(),
            r.all_congruent(),
            r.trace_text(),
        ))
    }
}

#[pyfunction]
fn generate_maze(sequence: &Sequence, copies: u64) -> PyResult<Maze> {
    tilt_core::generate_maze(&sequence.inner, copies)
        .map(|inner| Maze { inner })
        .map_err(err)
}

/// Decide a layered polycube file; `dirs` is `all`, `no-below` or
/// `lateral`. Returns `(status, sequence text or None)`.
#[pyfunction]
#[pyo3(signature = (layers, dirs="all", limit=18))]
fn decide_cubes(
    layers: &str,
    dirs: &str,
    limit: usize,
) -> PyResult<(&'static str, Option<String>)> {
    let p = tilt_core::Polycube::from_layers(layers).map_err(err)?;
    let set = DirectionSet3::from_name(dirs)
        .ok_or_else(|| PyValueError::new_err(format!("unknown direction set {dirs:?}")))?;
    Ok(match decide_polycube(&p, set, limit).map_err(err)? {
        CubeDecision::Constructible(s) => ("constructible", Some(s.to_text())),
        CubeDecision::NotConstructible => ("not_constructible", None),
        CubeDecision::ResourceLimit(_) => ("resource_limit", None),
    })
}

#[pymodule]
fn tiltasm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polyomino>()?;
    m.add_class::<Sequence>()?;
    m.add_class::<Maze>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(max_subshape, m)?)?;
    m.add_function(wrap_pyfunction!(longest_path, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_polyominoes, m)?)?;
    m.add_function(wrap_pyfunction!(generate_maze, m)?)?;
    m.add_function(wrap_pyfunction!(decide_cubes, m)?)?;
    Ok(())
}
