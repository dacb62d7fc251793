mod common;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tilt_core::cube::{is_cube_path_constructible, slide_landing_3d, DEFAULT_PATH_BUDGET};
use tilt_core::{
    blocked_3d, constructible_path_3d, decide_polycube, decide_simple, enumerate_polyominoes,
    flat_embedding, Cell3, CubeDecision, CubePath, CubeSequence, Direction3, DirectionSet3,
    Polycube,
};

fn cube(x: i32, y: i32, z: i32) -> Cell3 {
    Cell3::new(x, y, z)
}

fn random_polycube(rng: &mut StdRng, n: usize) -> Polycube {
    let mut cells = vec![cube(0, 0, 0)];
    while cells.len() < n {
        let b = cells[rng.random_range(0..cells.len())];
        let nb = b.neighbors()[rng.random_range(0..6)];
        if !cells.contains(&nb) {
            cells.push(nb);
        }
    }
    Polycube::new(cells).unwrap()
}

fn connected3(cells: &BTreeSet<Cell3>) -> bool {
    let Some(&s) = cells.iter().next() else {
        return true;
    };
    let mut seen = HashSet::from([s]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for v in u.neighbors() {
            if cells.contains(&v) && seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen.len() == cells.len()
}

/// Removal is allowed when a cube sent back along the same lane would come
/// to rest exactly in the vacated cell.
fn decomposable3(
    cells: &BTreeSet<Cell3>,
    dirs: &[Direction3],
    memo: &mut HashMap<Vec<Cell3>, bool>,
) -> bool {
    if cells.len() <= 1 {
        return true;
    }
    let key: Vec<Cell3> = cells.iter().copied().collect();
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut ans = false;
    for &t in cells {
        let mut rest = cells.clone();
        rest.remove(&t);
        if !connected3(&rest) {
            continue;
        }
        let set: HashSet<Cell3> = rest.iter().copied().collect();
        let free = dirs
            .iter()
            .any(|&d| slide_landing_3d(&set, d, d.lane_of(t)) == Some(t));
        if free && decomposable3(&rest, dirs, memo) {
            ans = true;
            break;
        }
    }
    memo.insert(key, ans);
    ans
}

#[test]
fn blocking_matches_slides() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..400 {
        let n = rng.random_range(2..14);
        let p = random_polycube(&mut rng, n);
        for &at in p.cells() {
            let rest: HashSet<Cell3> = p.cells().iter().copied().filter(|&q| q != at).collect();
            if !at.neighbors().iter().any(|q| rest.contains(q)) {
                continue;
            }
            for d in Direction3::ALL {
                let lands = slide_landing_3d(&rest, d, d.lane_of(at)) == Some(at);
                assert_eq!(blocked_3d(&p, at, d), !lands, "{at} from {}", d.name());
            }
        }
    }
}

#[test]
fn decisions_match_slide_oracle() {
    let mut rng = StdRng::seed_from_u64(9);
    let sets = [
        DirectionSet3::ALL6,
        DirectionSet3::NO_BELOW,
        DirectionSet3::LATERAL,
    ];
    for _ in 0..300 {
        let n = rng.random_range(1..8);
        let p = random_polycube(&mut rng, n);
        let cells: BTreeSet<Cell3> = p.cells().iter().copied().collect();
        for dirs in sets {
            let list: Vec<Direction3> = dirs.iter().collect();
            let want = decomposable3(&cells, &list, &mut HashMap::new());
            let got = decide_polycube(&p, dirs, 18).unwrap();
            assert_eq!(got.answer(), Some(want), "{}", p.to_layers());
            if let Some(seq) = got.sequence() {
                assert_eq!(seq.build().unwrap(), p);
                assert!(seq.steps.iter().all(|s| dirs.contains(s.direction)));
            }
        }
    }
}

#[test]
fn more_directions_never_hurt() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..400 {
        let n = rng.random_range(2..10);
        let p = random_polycube(&mut rng, n);
        let lateral = decide_polycube(&p, DirectionSet3::LATERAL, 18)
            .unwrap()
            .answer()
            .unwrap();
        let no_below = decide_polycube(&p, DirectionSet3::NO_BELOW, 18)
            .unwrap()
            .answer()
            .unwrap();
        let all = decide_polycube(&p, DirectionSet3::ALL6, 18)
            .unwrap()
            .answer()
            .unwrap();
        assert!(!lateral || no_below);
        assert!(!no_below || all);
    }
    assert!(DirectionSet3::ALL6.is_superset_of(DirectionSet3::NO_BELOW));
    assert!(DirectionSet3::NO_BELOW.is_superset_of(DirectionSet3::LATERAL));
    assert!(!DirectionSet3::LATERAL.is_superset_of(DirectionSet3::NO_BELOW));
}

#[test]
fn flat_shapes_behave_like_planar_ones() {
    for n in 1..=7 {
        for p in enumerate_polyominoes(n).unwrap() {
            let flat = flat_embedding(&p);
            let lateral = decide_polycube(&flat, DirectionSet3::LATERAL, 18).unwrap();
            let planar = tilt_core::decide_exact(&p, &Default::default()).unwrap();
            assert_eq!(lateral.answer(), planar.answer(), "{}", p.to_ascii());
            if p.is_simple() {
                assert_eq!(
                    decide_polycube(&flat, DirectionSet3::ALL6, 18)
                        .unwrap()
                        .answer(),
                    Some(true)
                );
            }
            if let Some(seq) = decide_simple(&p, None).unwrap().sequence() {
                assert_eq!(CubeSequence::lift(seq).build().unwrap(), flat);
            }
        }
    }
}

#[test]
fn large_cubes_hit_the_limit() {
    let p = Polycube::new(
        (0..3).flat_map(|x| (0..3).flat_map(move |y| (0..3).map(move |z| cube(x, y, z)))),
    )
    .unwrap();
    assert!(matches!(
        decide_polycube(&p, DirectionSet3::ALL6, 18).unwrap(),
        CubeDecision::ResourceLimit(_)
    ));
}

#[test]
fn path_search_skips_the_blocked_route() {
    let p = Polycube::new([
        cube(0, 0, 0),
        cube(1, 0, 0),
        cube(2, 0, 0),
        cube(2, 0, 1),
        cube(1, 0, 1),
        cube(0, 0, 1),
    ])
    .unwrap();
    let up = DirectionSet3::new([Direction3::Up]).unwrap();
    let (s, t) = (cube(0, 0, 0), cube(2, 0, 0));
    let over = CubePath::new(vec![s, cube(0, 0, 1), cube(1, 0, 1), cube(2, 0, 1), t]).unwrap();
    assert!(!is_cube_path_constructible(&over, up));
    let found = constructible_path_3d(&p, s, t, up, DEFAULT_PATH_BUDGET)
        .unwrap()
        .unwrap();
    assert_eq!(found.cells(), [s, cube(1, 0, 0), t]);
}

#[test]
fn path_search_agrees_with_exhaustive_paths() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..200 {
        let n = rng.random_range(2..9);
        let p = random_polycube(&mut rng, n);
        let cells: BTreeSet<Cell3> = p.cells().iter().copied().collect();
        let s = p.cells()[0];
        let t = *p.cells().last().unwrap();
        for dirs in [DirectionSet3::ALL6, DirectionSet3::LATERAL] {
            let mut any = false;
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                if last == t {
                    any |= is_cube_path_constructible(&CubePath::new(path.clone()).unwrap(), dirs);
                    continue;
                }
                for nb in last.neighbors() {
                    if cells.contains(&nb) && !path.contains(&nb) {
                        let mut next = path.clone();
                        next.push(nb);
                        stack.push(next);
                    }
                }
            }
            let got = constructible_path_3d(&p, s, t, dirs, DEFAULT_PATH_BUDGET).unwrap();
            assert_eq!(got.is_some(), any);
            if let Some(path) = got {
                assert!(is_cube_path_constructible(&path, dirs));
                assert_eq!((path.cells()[0], *path.cells().last().unwrap()), (s, t));
            }
        }
    }
}
