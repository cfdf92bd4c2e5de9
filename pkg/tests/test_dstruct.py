import pytest

from khtangle import algebra, dstruct
from khtangle.algebra import FILLED, HOLLOW, FLAVOR_B


def two_step_bad():
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("x", FILLED, 0)
    m.add_gen("y", HOLLOW, 1)
    m.add_gen("z", FILLED, 2)
    m.add_arrow("x", "y", algebra.spow(1, FILLED))
    m.add_arrow("y", "z", algebra.spow(1, HOLLOW))
    return m


def test_check_d_squared():
    m = dstruct.TypeDStructure(FLAVOR_B)
    assert dstruct.check_d_squared(m) == []
    m.add_gen("a", FILLED, 0)
    m.add_gen("b", FILLED, 1)
    m.add_arrow("a", "b", algebra.h_elem(FILLED))
    assert dstruct.check_d_squared(m) == []
    assert dstruct.check_d_squared(two_step_bad()) == [("x", "z")]


def test_arrow_accumulation_cancels():
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("a", FILLED, 0)
    m.add_gen("b", FILLED, 1)
    m.add_arrow("a", "b", algebra.dpow(1, FILLED))
    m.add_arrow("a", "b", algebra.dpow(1, FILLED))
    assert m.arrows == {}


def test_arrow_validation():
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("a", FILLED, 0)
    m.add_gen("b", FILLED, 0)
    with pytest.raises(AssertionError):
        m.add_arrow("a", "b", algebra.dpow(1, FILLED))  # hdeg not +1
    m.add_gen("c", HOLLOW, 1)
    with pytest.raises(AssertionError):
        m.add_arrow("a", "c", algebra.dpow(1, FILLED))  # endpoint mismatch


def test_cone_h_point():
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("p", FILLED, 0)
    c = dstruct.cone_h(m)
    assert len(c.gens) == 2
    (label,) = c.arrows.values()
    assert label == algebra.h_elem(FILLED)
    assert dstruct.check_d_squared(c) == []


def test_cone_h_two_generators():
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("a", FILLED, 0)
    m.add_gen("b", HOLLOW, 1)
    m.add_arrow("a", "b", algebra.spow(1, FILLED))
    c = dstruct.cone_h(m)
    assert len(c.gens) == 4 and len(c.arrows) == 4
    assert dstruct.check_d_squared(c) == []


def test_cone_h_empty():
    assert dstruct.cone_h(dstruct.TypeDStructure(FLAVOR_B)).gens == {}


def test_reduce_acyclic_pair():
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("x", FILLED, 0)
    m.add_gen("y", FILLED, 1)
    m.add_arrow("x", "y", algebra.idem(FILLED))
    assert dstruct.reduce(m).gens == {}


def test_reduce_is_a_fixed_point_without_idem_arrows():
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("a", FILLED, 0)
    m.add_gen("b", FILLED, 1)
    m.add_arrow("a", "b", algebra.h_elem(FILLED))
    r = dstruct.reduce(m)
    assert r.gens.keys() == m.gens.keys() and r.arrows == m.arrows


def test_reduce_zigzag():
    # p -> y (beta), x -> y (iota), x -> q (gamma): cancel x,y,
    # leaving p -> q with beta*gamma
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("p", FILLED, 0)
    m.add_gen("x", HOLLOW, 0)
    m.add_gen("y", HOLLOW, 1)
    m.add_gen("q", FILLED, 1)
    m.add_arrow("p", "y", algebra.spow(1, FILLED))
    m.add_arrow("x", "y", algebra.idem(HOLLOW))
    m.add_arrow("x", "q", algebra.spow(1, HOLLOW))
    r = dstruct.reduce(m)
    assert set(r.gens) == {"p", "q"}
    assert r.arrows == {("p", "q"): algebra.spow(2, FILLED)}


def test_iso_check_identity_and_permutation():
    m = two_step_bad()  # any structure works for matching purposes
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("a", FILLED, 0)
    m.add_gen("b", HOLLOW, 1)
    m.add_arrow("a", "b", algebra.spow(1, FILLED))
    assert dstruct.iso_check(m, m) == {"a": "a", "b": "b"}
    n = dstruct.TypeDStructure(FLAVOR_B)
    n.add_gen("bb", HOLLOW, 4)
    n.add_gen("aa", FILLED, 3)
    n.add_arrow("aa", "bb", algebra.spow(1, FILLED))
    w = dstruct.iso_check(m, n)
    assert w == {"a": "aa", "b": "bb"}  # global shift by 3


def test_iso_check_count_mismatch():
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("a", FILLED, 0)
    n = dstruct.TypeDStructure(FLAVOR_B)
    n.add_gen("a", HOLLOW, 0)
    assert dstruct.iso_check(m, n) == dstruct.NOT_FOUND


def test_iso_check_finds_base_change():
    """Same homotopy type, different label bases: D vs S^2 chains."""
    m = dstruct.TypeDStructure(FLAVOR_B)
    n = dstruct.TypeDStructure(FLAVOR_B)
    for s in (m, n):
        s.add_gen("a", FILLED, 0)
        s.add_gen("b", FILLED, 1)
        s.add_gen("c", FILLED, 1)
        s.add_gen("d", FILLED, 2)
    # m: a->b D, a->c S^2, both -> d with the complementary label
    m.add_arrow("a", "b", algebra.dpow(1, FILLED))
    m.add_arrow("a", "c", algebra.spow(2, FILLED))
    m.add_arrow("b", "d", algebra.spow(2, FILLED))
    m.add_arrow("c", "d", algebra.dpow(1, FILLED))
    # n: the same after the base change b -> b + c
    n.add_arrow("a", "b", algebra.dpow(1, FILLED))
    n.add_arrow("a", "c", algebra.dpow(1, FILLED) + algebra.spow(2, FILLED))
    n.add_arrow("b", "d", algebra.dpow(1, FILLED) + algebra.spow(2, FILLED))
    n.add_arrow("c", "d", algebra.dpow(1, FILLED))
    assert not dstruct.check_d_squared(m)
    assert not dstruct.check_d_squared(n)
    w = dstruct.iso_check(m, n)
    assert w != dstruct.NOT_FOUND
    assert isinstance(w, dict) and "entries" in w


def test_serialization_roundtrip():
    m = dstruct.TypeDStructure(FLAVOR_B)
    m.add_gen("a", FILLED, 0)
    m.add_gen("b", HOLLOW, 1)
    m.add_gen("c", FILLED, 1)
    m.add_arrow("a", "b", algebra.spow(1, FILLED))
    m.add_arrow("a", "c", algebra.h_elem(FILLED))
    text = dstruct.serialize(m)
    again = dstruct.deserialize(text)
    assert again.gens == m.gens and again.arrows == m.arrows
    assert dstruct.serialize(again) == text
