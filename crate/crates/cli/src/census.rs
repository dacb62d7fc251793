use std::fs;
use std::path::Path;

use rayon::prelude::*;
use tilt_core::grid::DEFAULT_ENUMERATION_LIMIT;
use tilt_core::tap::DEFAULT_EXACT_LIMIT;
use tilt_core::{decide, enumerate_polyominoes, Polyomino};

use crate::{Failure, Outcome, EXIT_UNSUPPORTED};

struct Row {
    n: usize,
    shapes: usize,
    simple: usize,
    constructible: usize,
    rejected: Vec<Polyomino>,
}

fn tabulate(n: usize) -> Result<Row, Failure> {
    let shapes = enumerate_polyominoes(n)?;
    let verdicts: Vec<(bool, Option<bool>)> = shapes
        .par_iter()
        .map(|p| {
            let answer = decide(p, None, DEFAULT_EXACT_LIMIT)
                .ok()
                .and_then(|r| r.answer());
            (p.is_simple(), answer)
        })
        .collect();
    if let Some(i) = verdicts.iter().position(|v| v.1.is_none()) {
        return Err(Failure::new(
            EXIT_UNSUPPORTED,
            format!("no definite answer for\n{}", shapes[i].to_ascii()),
        ));
    }
    Ok(Row {
        n,
        shapes: shapes.len(),
        simple: verdicts.iter().filter(|v| v.0).count(),
        constructible: verdicts.iter().filter(|v| v.1 == Some(true)).count(),
        rejected: shapes
            .iter()
            .zip(&verdicts)
            .filter(|(_, v)| v.1 == Some(false))
            .map(|(p, _)| p.clone())
            .collect(),
    })
}

pub fn run(max_n: usize, witness_dir: Option<&Path>) -> Outcome {
    if max_n == 0 {
        return Err(Failure::usage("--max-n must be at least 1"));
    }
    if max_n > DEFAULT_ENUMERATION_LIMIT {
        return Err(Failure::new(
            EXIT_UNSUPPORTED,
            format!("resource limit: census is capped at n = {DEFAULT_ENUMERATION_LIMIT}"),
        ));
    }
    println!("n\tshapes\tsimple\tconstructible\tnot_constructible");
    let mut smallest: Option<(usize, Vec<Polyomino>)> = None;
    for n in 1..=max_n {
        let row = tabulate(n)?;
        println!(
            "{}\t{}\t{}\t{}\t{}",
            row.n,
            row.shapes,
            row.simple,
            row.constructible,
            row.rejected.len()
        );
        if smallest.is_none() && !row.rejected.is_empty() {
            smallest = Some((n, row.rejected));
        }
    }
    match &smallest {
        Some((n, shapes)) => println!(
            "smallest non-constructible: n = {n}, {} shapes",
            shapes.len()
        ),
        None => println!("smallest non-constructible: none up to n = {max_n}"),
    }
    if let (Some(dir), Some((n, shapes))) = (witness_dir, &smallest) {
        write_witnesses(dir, *n, shapes)?;
    }
    Ok(0)
}

/// One shape file per witness, named `n<size>_<index>.txt`.
fn write_witnesses(dir: &Path, n: usize, shapes: &[Polyomino]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    for (i, p) in shapes.iter().enumerate() {
        let path = dir.join(format!("n{n}_{i:04}.txt"));
        fs::write(&path, p.to_ascii())
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_are_shape_files() {
        let dir = tempfile::tempdir().unwrap();
        let shapes = [
            Polyomino::from_ascii("##\n").unwrap(),
            Polyomino::from_ascii("#\n#\n").unwrap(),
        ];
        write_witnesses(dir.path(), 2, &shapes).unwrap();
        let back = fs::read_to_string(dir.path().join("n2_0001.txt")).unwrap();
        assert_eq!(Polyomino::from_ascii(&back).unwrap(), shapes[1]);
    }

    #[test]
    fn rows_are_filled_in() {
        let row = tabulate(4).unwrap();
        assert_eq!(
            (row.n, row.shapes, row.simple, row.constructible),
            (4, 19, 19, 19)
        );
        assert!(row.rejected.is_empty());
    }
}
