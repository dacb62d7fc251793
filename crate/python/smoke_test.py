"""Smoke test for the tiltasm extension module."""

import tiltasm


def main():
    plus = tiltasm.Polyomino(".#.\n###\n.#.\n")
    assert len(plus) == 5
    assert plus.is_simple() and plus.is_tree_shaped()

    status, seq = tiltasm.decide(plus)
    assert status == "constructible", status
    assert tiltasm.verify(plus, seq) is None
    assert seq.build().canonicalize() == plus.canonicalize()
    assert tiltasm.Sequence.from_text(seq.to_text()) == seq

    ring = tiltasm.Polyomino("###\n#.#\n###\n")
    assert tiltasm.decide(ring)[0] == "not_supported"
    assert tiltasm.decide(ring, exact=True)[0] == "constructible"

    sub, sub_seq, method = tiltasm.max_subshape(plus)
    assert len(sub) == 5 and method == "exact"
    assert tiltasm.verify(sub, sub_seq) is None
    assert len(tiltasm.longest_path(plus)) == 3

    assert len(tiltasm.enumerate_polyominoes(5)) == 63

    maze = tiltasm.generate_maze(seq, 3)
    done, congruent, trace = maze.run(3)
    assert len(done) == 3 and congruent, (done, congruent)
    assert trace.startswith("step 0 s")
    again = tiltasm.Maze.from_texts(maze.maze_text(), maze.schedule_text())
    assert again.run(3)[0] == done

    assert tiltasm.decide_cubes("##\n", "lateral")[0] == "constructible"

    try:
        tiltasm.Polyomino("#.#\n")
    except ValueError:
        pass
    else:
        raise AssertionError("disconnected shape accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
