mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use tilt_core::tap::{
    decide_simple_with, removal_directions, CandidateOrder, DecideOptions, ExactOptions,
};
use tilt_core::{
    apply_step, decide, decide_exact, decide_simple, enumerate_polyominoes, normalize_lanes,
    verify, Cell2, ConstructionSequence, ConstructionStep, DecisionResult, Direction2, Polyomino,
    VerifyFailure,
};

#[test]
fn greedy_matches_brute_force() {
    let mut oracle = Decomposer::new();
    for n in 1..=9 {
        for p in enumerate_polyominoes(n).unwrap() {
            let cells = set_of(&p);
            if !simple(&cells) {
                continue;
            }
            let got = decide_simple(&p, None).unwrap();
            assert_eq!(
                got.answer(),
                Some(oracle.decomposable(&cells)),
                "{}",
                p.to_ascii()
            );
        }
    }
}

#[test]
fn exact_matches_brute_force_with_holes() {
    let mut oracle = Decomposer::new();
    for n in 1..=8 {
        for p in enumerate_polyominoes(n).unwrap() {
            let got = decide_exact(&p, &ExactOptions::default()).unwrap();
            assert_eq!(
                got.answer(),
                Some(oracle.decomposable(&set_of(&p))),
                "{}",
                p.to_ascii()
            );
            if let Some(seq) = got.sequence() {
                verify(&p, seq).unwrap();
            }
        }
    }
}

#[test]
fn every_valid_removal_reinserts() {
    for n in 2..=8 {
        for p in enumerate_polyominoes(n).unwrap() {
            let cells = set_of(&p);
            for (t, d) in valid_removals(&cells) {
                let rest = p.without(t).unwrap();
                let (back, landed) = apply_step(&rest, ConstructionStep::inserting(t, d)).unwrap();
                assert_eq!(landed, t);
                assert_eq!(back, p);
            }
        }
    }
}

#[test]
fn removal_directions_match_oracle() {
    for p in enumerate_polyominoes(7).unwrap() {
        let cells = set_of(&p);
        for &t in p.cells() {
            assert_eq!(
                removal_directions(&p, t).unwrap(),
                free_directions(&cells, t)
            );
        }
    }
}

#[test]
fn greedy_witnesses_replay() {
    for n in 1..=9 {
        for p in enumerate_polyominoes(n).unwrap() {
            if let DecisionResult::Constructible(seq) = decide_simple(&p, None).unwrap() {
                assert_eq!(seq.len() + 1, n);
                verify(&p, &seq).unwrap();
                assert_eq!(seq.build().unwrap(), p);
            }
        }
    }
}

#[test]
fn candidate_order_does_not_change_the_answer() {
    for p in enumerate_polyominoes(8).unwrap() {
        if !p.is_simple() {
            continue;
        }
        let fifo = decide_simple(&p, None).unwrap().answer();
        for seed in 0..3 {
            let opts = DecideOptions {
                order: CandidateOrder::Random(seed),
                validate_cut_rule: true,
                ..DecideOptions::default()
            };
            let (r, stats) = decide_simple_with(&p, &opts).unwrap();
            assert_eq!(r.answer(), fifo);
            assert_eq!(stats.cut_rule_mismatches, 0);
            if let Some(seq) = r.sequence() {
                verify(&p, seq).unwrap();
            }
        }
    }
}

#[test]
fn forced_seed_matches_exact() {
    for n in 1..=7 {
        for p in enumerate_polyominoes(n).unwrap() {
            if !p.is_simple() {
                continue;
            }
            for &s in p.cells() {
                let greedy = decide_simple(&p, Some(s)).unwrap();
                let exact = decide_exact(
                    &p,
                    &ExactOptions {
                        limit: 12,
                        forced_seed: Some(s),
                    },
                )
                .unwrap();
                assert_eq!(greedy.answer(), exact.answer(), "{} seed {s}", p.to_ascii());
                if let Some(seq) = greedy.sequence() {
                    assert_eq!(seq.seed, s);
                    verify(&p, seq).unwrap();
                }
            }
        }
    }
}

#[test]
fn holed_shapes_need_the_exact_decider() {
    let ring = shape("###\n#.#\n###\n");
    assert!(matches!(
        decide_simple(&ring, None).unwrap(),
        DecisionResult::NotSupported(_)
    ));
    assert_eq!(decide(&ring, None, 12).unwrap().answer(), Some(true));
    let big = Polyomino::new(
        (0..20)
            .flat_map(|x| (0..20).map(move |y| c(x, y)))
            .filter(|c| *c != Cell2::new(10, 10)),
    )
    .unwrap();
    assert!(matches!(
        decide(&big, None, 12).unwrap(),
        DecisionResult::NotSupported(_)
    ));
    assert!(matches!(
        decide_exact(&big, &ExactOptions::default()).unwrap(),
        DecisionResult::ResourceLimit(_)
    ));
}

#[test]
fn double_spiral_is_not_constructible() {
    let p = double_spiral();
    assert_eq!(p.len(), 30);
    assert!(p.is_simple());
    assert_eq!(
        decide_simple(&p, None).unwrap(),
        DecisionResult::NotConstructible
    );
    let exact = decide_exact(
        &p,
        &ExactOptions {
            limit: 30,
            forced_seed: None,
        },
    )
    .unwrap();
    assert_eq!(exact, DecisionResult::NotConstructible);
}

#[test]
fn removing_any_tile_of_the_double_spiral_breaks_the_obstruction() {
    let p = double_spiral();
    let cells = set_of(&p);
    for &t in p.cells() {
        let mut rest = cells.clone();
        rest.remove(&t);
        if !connected(&rest) || !simple(&rest) {
            continue;
        }
        let q = p.without(t).unwrap();
        assert!(
            decide_simple(&q, None).unwrap().is_constructible(),
            "without {t}"
        );
    }
}

#[test]
fn large_rectangle_is_constructible() {
    let p = Polyomino::rectangle(300, 200).unwrap();
    let seq = decide_simple(&p, None).unwrap().sequence().unwrap().clone();
    verify(&p, &seq).unwrap();
}

#[test]
fn verify_reports_bad_sequences() {
    let domino = shape("##\n");
    let noop =
        ConstructionSequence::new(c(0, 0), vec![ConstructionStep::new(Direction2::North, 7)]);
    assert!(matches!(
        verify(&domino, &noop),
        Err(VerifyFailure::NoOp { index: 0, .. })
    ));
    let short = ConstructionSequence::new(c(0, 0), vec![]);
    assert!(matches!(
        verify(&domino, &short),
        Err(VerifyFailure::SizeMismatch { .. })
    ));
    let bent =
        ConstructionSequence::new(c(0, 0), vec![ConstructionStep::new(Direction2::North, 0)]);
    assert!(verify(&domino, &bent).is_err());
}

#[test]
fn sequence_text_format() {
    let text = "# domino\nseed 0 0\nstep e 0\n";
    let seq = ConstructionSequence::from_text(text).unwrap();
    assert_eq!(seq.to_text(), "seed 0 0\nstep e 0\n");
    assert!(ConstructionSequence::from_text("step e 0\n").is_err());
    assert!(ConstructionSequence::from_text("seed 0 0\nstep q 0\n").is_err());
}

fn random_shape() -> impl Strategy<Value = Polyomino> {
    prop::collection::vec(0usize..4, 0..30).prop_map(|moves| {
        let mut cells = BTreeSet::from([c(0, 0)]);
        let mut at = c(0, 0);
        for m in moves {
            let (dx, dy) = [(1, 0), (-1, 0), (0, 1), (0, -1)][m];
            at = c(at.x + dx, at.y + dy);
            cells.insert(at);
        }
        Polyomino::new(cells).unwrap()
    })
}

proptest! {
    #[test]
    fn sequences_survive_text_and_lane_normalization(p in random_shape()) {
        if let Some(seq) = decide(&p, None, 12).unwrap().sequence() {
            let back = ConstructionSequence::from_text(&seq.to_text()).unwrap();
            prop_assert_eq!(&back, seq);
            let norm = normalize_lanes(seq).unwrap();
            prop_assert!(verify(&p, &norm).is_ok());
            prop_assert_eq!(norm.build().unwrap(), seq.build().unwrap());
        }
    }

    #[test]
    fn greedy_agrees_with_oracle_on_walks(p in random_shape()) {
        let cells = set_of(&p);
        prop_assume!(simple(&cells) && p.len() <= 14);
        let got = decide_simple(&p, None).unwrap().answer();
        prop_assert_eq!(got, Some(Decomposer::new().decomposable(&cells)));
    }
}
