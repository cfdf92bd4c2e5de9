import itertools

import pytest

from khtangle import acat, algebra
from khtangle.algebra import FILLED, HOLLOW, FLAVOR_BT


@pytest.fixture(scope="module")
def tables():
    return acat.load_tables()


def mu2(tables, x, y):
    return tables.mu((x, y))


def test_mu2_examples(tables):
    assert mu2(tables, "p01", "p10") == {"c0"}
    assert mu2(tables, "p01", "q10") == {"d0"}
    assert mu2(tables, "a0", "b0") == {"b0"}
    assert mu2(tables, "b0", "a0") == {"b0"}
    assert mu2(tables, "b0", "b0") == frozenset()


def test_mu3_examples(tables):
    assert tables.mu(("p01", "p10", "b0")) == {"a0"}
    assert tables.mu(("c0", "b0", "c0")) == {"c0"}
    assert tables.mu(("c0", "q01", "p10")) == {"c0"}
    assert tables.mu(("b0", "b0", "b0")) == frozenset()


def test_non_composable_is_zero(tables):
    assert tables.mu(("p01", "p01")) == frozenset()
    assert tables.mu(("a0", "a1")) == frozenset()


def test_strict_unitality(tables):
    for x in acat.GENERATORS:
        assert mu2(tables, acat.UNITS[acat.dst(x)], x) == {x}
        assert mu2(tables, x, acat.UNITS[acat.src(x)]) == {x}


def test_ainfty_relations_hold(tables):
    assert acat.verify_ainfty(tables, 5) == []


def test_subalgebra_is_associative_without_mu3(tables):
    assert acat.verify_subalgebra(tables) == []
    sub = set(acat.SUB_GENERATORS)
    for seq in acat.composable_sequences(3, acat.SUB_GENERATORS):
        assert tables.mu(seq) == frozenset()
    for seq in acat.composable_sequences(2, acat.SUB_GENERATORS):
        assert tables.mu(seq) <= sub


def test_mu2_mutation_suite(tables):
    """Every single mu2 table mutation breaks some relation."""
    killed, total, survivors = 0, 0, []
    for key in tables.mu2:
        total += 1
        if acat.verify_ainfty(tables.with_entry_removed(key), 5):
            killed += 1
        else:
            survivors.append(key)
    assert killed >= 0.9 * total, f"survivors: {survivors}"


def test_mu3_mutations_detected(tables):
    for key in tables.mu3:
        assert acat.verify_ainfty(tables.with_entry_removed(key), 5), key


def test_table_roundtrip(tables, tmp_path):
    path = tmp_path / "tables.txt"
    path.write_text("\n".join(acat.default_table_lines()) + "\n")
    again = acat.load_tables(path)
    assert again == tables


def test_parse_rejects_unknown_generators():
    with pytest.raises(ValueError):
        acat.parse_tables(["mu2 a0 zz -> a0"])
    with pytest.raises(ValueError):
        acat.parse_tables(["mu9 a0 a0 -> a0"])


def test_dictionary_to_subalgebra(tables):
    """The quotient algebra transports onto the a/c/p subalgebra."""
    pairs = {
        acat.bt_to_sub(algebra.idem(FILLED, FLAVOR_BT)): "a0",
        acat.bt_to_sub(algebra.spow(2, FILLED, FLAVOR_BT)): "c0",
        acat.bt_to_sub(algebra.spow(1, FILLED, FLAVOR_BT)): "p10",
        acat.bt_to_sub(algebra.spow(1, HOLLOW, FLAVOR_BT)): "p01",
        acat.bt_to_sub(algebra.idem(HOLLOW, FLAVOR_BT)): "a1",
    }
    for got, want in pairs.items():
        assert got == frozenset([want])


def test_dictionary_is_algebra_isomorphism(tables):
    """On all basis pairs: dict(x then y) = mu2(dict(y), dict(x))."""
    basis = algebra.basis_up_to_weight(2, FLAVOR_BT)
    assert len(basis) == 6
    checked = 0
    for s, t in itertools.product(basis, repeat=2):
        x = algebra.mono_elem(s, FLAVOR_BT)
        y = algebra.mono_elem(t, FLAVOR_BT)
        lhs = acat.bt_to_sub(x * y)
        gx = next(iter(acat.bt_to_sub(x)))
        gy = next(iter(acat.bt_to_sub(y)))
        rhs = tables.mu((gy, gx))
        assert lhs == rhs, (str(s), str(t))
        checked += 1
    assert checked == 36
