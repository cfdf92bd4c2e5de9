import random

import pytest

from khtangle import algebra, bimod, dstruct, tangles
from khtangle.algebra import FILLED, HOLLOW, FLAVOR_BT


def test_parse_examples():
    w = tangles.parse_tangle("x1 x1 u1 x2 n3")
    assert w.slices == (("x", 1), ("x", 1), ("u", 1), ("x", 2), ("n", 3))
    assert w.crossings == 3
    assert str(w) == "x1 x1 u1 x2 n3"
    assert tangles.parse_tangle("").slices == ()


def test_parse_errors_report_positions():
    with pytest.raises(tangles.TangleError, match="slice 0.*bad token"):
        tangles.parse_tangle("z1")
    with pytest.raises(tangles.TangleError, match="slice 1.*out of range"):
        tangles.parse_tangle("x1 x2")
    with pytest.raises(tangles.TangleError, match="final strand count"):
        tangles.parse_tangle("u1")
    with pytest.raises(tangles.TangleError, match="final strand count 0"):
        tangles.parse_tangle("n1")


def test_build_cube_examples():
    cube = tangles.build_cube(tangles.parse_tangle("x1"))
    assert set(cube.resolutions) == {0, 1}
    pairings = {bits: r.matching for bits, r in cube.resolutions.items()}
    assert set(pairings.values()) == {FILLED, HOLLOW}
    assert all(r.loops == () for r in cube.resolutions.values())

    trivial = tangles.build_cube(tangles.parse_tangle(""))
    (only,) = trivial.resolutions.values()
    assert only.matching == FILLED and only.loops == ()

    circled = tangles.build_cube(tangles.parse_tangle("u1 n1"))
    (only,) = circled.resolutions.values()
    assert only.matching == FILLED and len(only.loops) == 1


def test_build_cube_crossing_guard():
    word = tangles.parse_tangle("x1 x1 x1")
    with pytest.raises(tangles.TangleError, match="exceeds the guard"):
        tangles.build_cube(word, max_crossings=2)


def test_deloop_examples():
    m = tangles.deloop_translate(
        tangles.build_cube(tangles.parse_tangle("u1 n1")))
    assert len(m.gens) == 2  # one loop expands to dotted and undotted
    m = tangles.deloop_translate(
        tangles.build_cube(tangles.parse_tangle("x1")))
    assert len(m.gens) == 2 and len(m.arrows) == 1
    (label,) = m.arrows.values()
    assert label in (algebra.spow(1, FILLED), algebra.spow(1, HOLLOW))


def test_reduced_complex_sizes():
    sizes = {"": 1, "x1": 2, "x1 x1": 3, "u1 n1": 2}
    for text, n in sizes.items():
        m = tangles.tangle_complex(tangles.parse_tangle(text))
        assert len(m.gens) == n, text
        assert dstruct.check_d_squared(m) == []


def test_second_reidemeister_move_is_trivial():
    lhs = tangles.tangle_complex(tangles.parse_tangle("x1 y1"))
    rhs = tangles.tangle_complex(tangles.parse_tangle(""))
    assert dstruct.iso_check(lhs, rhs) != dstruct.NOT_FOUND


def test_star_choice_changes_nothing_essential():
    word = tangles.parse_tangle("x1 x1")
    for star in tangles.STAR_CHOICES:
        m = tangles.tangle_complex(word, star=star)
        assert len(m.gens) == 3


def test_compare_small_corpus_entries():
    for text in ("", "x1", "x1 x1", "u1 n1", "x1 y1"):
        verdict, witness = tangles.compare(tangles.parse_tangle(text))
        assert verdict == tangles.EQUIVALENT, text
        assert witness is not None


def test_cone_matches_boxing_with_the_cone_bimodule():
    for text in ("", "x1", "x1 x1"):
        m = tangles.tangle_complex(tangles.parse_tangle(text))
        lhs = dstruct.reduce(dstruct.cone_h(m))
        rhs = dstruct.reduce(dstruct.box_ad(m, bimod.bimodule_I()))
        assert dstruct.iso_check(lhs, rhs) != dstruct.NOT_FOUND, text


def test_boxing_with_quotient_bimodule_is_the_quotient_map():
    suffix = {FILLED: "*z", HOLLOW: "*w"}
    for text in ("x1", "x1 x1", "u1 n1"):
        m = tangles.tangle_complex(tangles.parse_tangle(text))
        boxed = dstruct.box_ad(m, bimod.bimodule_Q())
        direct = m.map_labels(algebra.q_map, FLAVOR_BT)
        renamed = {(s + suffix[m.gens[s].idem], d + suffix[m.gens[d].idem]): v
                   for (s, d), v in direct.arrows.items()}
        assert boxed.arrows == renamed, text
        assert len(boxed.gens) == len(m.gens)


def test_random_words_are_consistent():
    rng = random.Random(20240824)
    for _ in range(20):
        word = tangles.random_word(rng, max_crossings=5)
        # deloop_translate asserts d^2 = 0 internally
        m = tangles.deloop_translate(tangles.build_cube(word))
        r = dstruct.reduce(m)
        assert dstruct.check_d_squared(r) == []
        assert r.euler_counts() == m.euler_counts(), str(word)


def test_random_word_generator_is_valid():
    rng = random.Random(7)
    for _ in range(50):
        word = tangles.random_word(rng, max_crossings=6)
        assert word.crossings <= 6
        assert tangles.parse_tangle(str(word)) == word
