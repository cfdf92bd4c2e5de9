import pytest

from khtangle import acat, cones, functor
from khtangle.cones import BasisName


@pytest.fixture(scope="module")
def tables():
    return functor.default_tables()


@pytest.fixture(scope="module")
def mu_tables():
    return acat.load_tables()


def F(tables, *seq):
    return functor.apply_F(tables, tuple(seq))


def test_length_one_images(tables):
    assert cones.from_positional(F(tables, "a0")) == {BasisName("A", False, 0, "0")}
    assert cones.from_positional(F(tables, "q10")) == {BasisName("Q", False, 1, "10")}
    assert cones.from_positional(F(tables, "d1")) == {BasisName("D", False, 1, "1")}


def test_length_two_images(tables):
    assert cones.from_positional(F(tables, "p01", "p10")) == {
        BasisName("A", True, 0, "0")}
    assert cones.from_positional(F(tables, "p10", "q01")) == {
        BasisName("A", False, 0, "1"), BasisName("B", True, 0, "1")}
    # untabulated pairs map to zero
    assert F(tables, "b0", "b0").is_zero()


def test_length_three_and_beyond(tables):
    assert cones.from_positional(F(tables, "c0", "d0", "c0")) == {
        BasisName("C", True, 1, "0")}
    assert F(tables, "c0", "d0", "c0", "d0").is_zero()


def test_non_composable_is_zero(tables):
    assert F(tables, "a0", "a1").is_zero()


def test_length_one_images_are_cycles(tables):
    for g in acat.GENERATORS:
        assert cones.diff_C(F(tables, g)).is_zero(), g


def test_functor_relations_hold_to_length_six():
    violations, checked = functor.verify_functor(max_len=6)
    assert violations == []
    assert checked == 111972


def test_mutation_suite_kills_at_least_ninety_percent(mu_tables):
    killed, total, survivors = 0, 0, []
    for name, mutated in functor.table_mutations():
        total += 1
        bad, _ = functor.verify_functor(mutated, max_len=4,
                                        mu_tables=mu_tables,
                                        stop_at_first=True)
        if bad:
            killed += 1
        else:
            survivors.append(name)
    assert killed >= 0.9 * total, f"survivors: {survivors}"


def test_quasi_iso_report():
    rep = functor.verify_quasi_iso(max_weight=10)
    assert rep["pass"], rep["failures"]
    assert rep["dims"][0, 0][0] == 2 and rep["dims"][0, 1][1] == 2


def test_broken_tables_fail_quasi_iso():
    # redirecting a plain length-1 image to its hatted partner breaks
    # the cycle condition
    f1 = dict(functor.F1_TABLE)
    f1["c0"] = [BasisName("C", True, 1, "0")]
    bad = functor.FunctorTables(f1=f1)
    rep = functor.verify_quasi_iso(max_weight=10, tables=bad)
    assert not rep["pass"]
