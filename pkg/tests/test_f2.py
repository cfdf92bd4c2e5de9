import itertools

from hypothesis import given, strategies as st

from khtangle import f2

keys = st.integers(min_value=0, max_value=30)
vecs = st.frozensets(keys, max_size=12)


@given(vecs, vecs, vecs)
def test_add_is_f2_vector_space(x, y, z):
    assert f2.add(x, x) == f2.ZERO
    assert f2.add(x, f2.ZERO) == x
    assert f2.add(f2.add(x, y), z) == f2.add(x, f2.add(y, z))
    assert f2.add(x, y) == f2.add(y, x)


def test_add_examples():
    a, b, c = frozenset("a"), frozenset("b"), frozenset("c")
    assert f2.add(a, a) == frozenset()
    assert f2.add(a, b) == frozenset("ab")
    assert f2.add(frozenset("ab"), frozenset("bc")) == frozenset("ac")


def test_rank_examples():
    ident = [frozenset([i]) for i in range(3)]
    assert f2.rank(ident) == 3
    assert f2.rank([frozenset(), frozenset()]) == 0
    assert f2.rank([frozenset("ab"), frozenset("ab")]) == 1


def _brute_kernel_dim(rows, ncols):
    dim = 0
    for combo in itertools.product([0, 1], repeat=ncols):
        acc = frozenset()
        for i, c in enumerate(combo):
            if c:
                acc = acc ^ rows[i]
        if not acc:
            dim += 1
    # kernel size is 2^dim_ker
    import math
    return int(math.log2(dim))


@given(st.lists(st.frozensets(st.integers(0, 7), max_size=5),
                min_size=1, max_size=8))
def test_rank_nullity(rows):
    ncols = len(rows)
    assert f2.rank(rows) + _brute_kernel_dim(rows, ncols) == ncols


@given(st.lists(vecs, min_size=1, max_size=10), vecs)
def test_solve_is_a_preimage(rows, target):
    combo = f2.solve(rows, target)
    if combo is None:
        # target genuinely outside the span: adding it raises the rank
        assert f2.rank(rows + [target]) == f2.rank(rows) + 1
    else:
        acc = frozenset()
        for i in combo:
            acc = acc ^ rows[i]
        assert acc == target


@given(st.lists(vecs, min_size=1, max_size=8))
def test_nullspace_members_vanish(rows):
    for combo in f2.nullspace(rows):
        acc = frozenset()
        for i in combo:
            acc = acc ^ rows[i]
        assert acc == frozenset()
        assert combo
