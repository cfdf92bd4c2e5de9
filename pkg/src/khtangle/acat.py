"""The twelve-generator A-infinity category of the two figure-eight objects.

Two objects L0, L1; morphism spaces spanned by a_i, b_i, c_i, d_i
(endomorphisms of L_i) and p01, q01 (from L1 to L0), p10, q10 (from L0
to L1).  The only non-vanishing operations are mu2 and mu3, given by
finite lookup tables.  mu2(x, y) composes as "y then x".

The tables ship as a plain-text data file (one line per non-zero
product) so the relation checker can be pointed at mutated tables.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field

from . import f2

GENERATORS = (
    "a0", "b0", "c0", "d0",
    "a1", "b1", "c1", "d1",
    "p01", "q01", "p10", "q10",
)

# src/dst object indices: mu2(x, y) requires src(x) == dst(y) and lands
# in morphisms with src(y), dst(x).
_HOM = {
    "a0": (0, 0), "b0": (0, 0), "c0": (0, 0), "d0": (0, 0),
    "a1": (1, 1), "b1": (1, 1), "c1": (1, 1), "d1": (1, 1),
    "p01": (1, 0), "q01": (1, 0),
    "p10": (0, 1), "q10": (0, 1),
}

UNITS = {0: "a0", 1: "a1"}


def src(x):
    return _HOM[x][0]


def dst(x):
    return _HOM[x][1]


def composable(seq):
    """Composability of (x_n, ..., x_1): x_1 is applied first."""
    return all(src(seq[i]) == dst(seq[i + 1]) for i in range(len(seq) - 1))


_MU2_NONUNITAL = [
    ("b0", "c0", "d0"), ("c0", "b0", "d0"),
    ("p01", "q10", "d0"), ("q01", "p10", "d0"), ("p01", "p10", "c0"),
    ("b1", "c1", "d1"), ("c1", "b1", "d1"),
    ("p10", "q01", "d1"), ("q10", "p01", "d1"), ("p10", "p01", "c1"),
    ("b0", "p01", "q01"), ("p01", "b1", "q01"),
    ("p10", "b0", "q10"), ("b1", "p10", "q10"),
]

_MU3 = [
    ("p01", "p10", "b0", "a0"), ("p10", "b0", "p01", "a1"),
    ("q01", "p10", "b0", "b0"), ("p01", "q10", "b0", "b0"),
    ("q10", "p01", "b1", "b1"), ("b1", "p10", "q01", "b1"),
    ("c0", "b0", "c0", "c0"), ("c0", "q01", "p10", "c0"),
    ("c0", "p01", "q10", "c0"),
    ("c1", "b1", "c1", "c1"), ("c1", "q10", "p01", "c1"),
    ("p10", "q01", "c1", "c1"),
    ("d0", "c0", "b0", "d0"), ("b0", "c0", "d0", "d0"),
    ("q01", "p10", "d0", "d0"), ("p01", "q10", "d0", "d0"),
    ("b1", "c1", "d1", "d1"), ("d1", "c1", "b1", "d1"),
    ("d1", "p10", "q01", "d1"), ("q10", "p01", "d1", "d1"),
    ("p01", "q10", "q01", "q01"), ("q10", "p01", "q10", "q10"),
    ("p10", "q01", "p10", "p10"), ("p10", "p01", "q10", "p10"),
]


def default_table_lines():
    lines = []
    seen = set()
    for x in GENERATORS:
        for pair in [(UNITS[dst(x)], x), (x, UNITS[src(x)])]:
            if pair not in seen:
                seen.add(pair)
                lines.append(f"mu2 {pair[0]} {pair[1]} -> {x}")
    for x, y, z in _MU2_NONUNITAL:
        lines.append(f"mu2 {x} {y} -> {z}")
    for x, y, z, w in _MU3:
        lines.append(f"mu3 {x} {y} {z} -> {w}")
    return lines


@dataclass(frozen=True)
class MuTables:
    """mu2/mu3 lookup tables; values are frozensets of generator names."""

    mu2: dict = field(default_factory=dict)
    mu3: dict = field(default_factory=dict)

    def mu(self, seq):
        """Evaluate mu on a composable tuple; zero for other arities."""
        table = {2: self.mu2, 3: self.mu3}.get(len(seq))
        if table is None or not composable(seq):
            return f2.ZERO
        return table.get(tuple(seq), f2.ZERO)

    def with_entry_removed(self, key):
        if key in self.mu2:
            mu2 = dict(self.mu2)
            del mu2[key]
            return MuTables(mu2, self.mu3)
        mu3 = dict(self.mu3)
        del mu3[key]
        return MuTables(self.mu2, mu3)

    def with_entry(self, key, value):
        assert len(key) in (2, 3)
        if len(key) == 2:
            return MuTables({**self.mu2, key: frozenset(value)}, self.mu3)
        return MuTables(self.mu2, {**self.mu3, key: frozenset(value)})


def parse_tables(lines) -> MuTables:
    mu2, mu3 = {}, {}
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, out = line.partition("->")
        parts = head.split()
        outs = frozenset(out.split())
        if parts[0] == "mu2" and len(parts) == 3:
            mu2[tuple(parts[1:])] = outs
        elif parts[0] == "mu3" and len(parts) == 4:
            mu3[tuple(parts[1:])] = outs
        else:
            raise ValueError(f"bad table line: {raw!r}")
        for g in list(parts[1:]) + list(outs):
            if g not in _HOM:
                raise ValueError(f"unknown generator {g!r} in {raw!r}")
    return MuTables(mu2, mu3)


def load_tables(path=None) -> MuTables:
    if path is not None:
        with open(path) as fh:
            return parse_tables(fh)
    text = importlib.resources.files("khtangle.data").joinpath(
        "mu_tables.txt").read_text()
    return parse_tables(text.splitlines())


def composable_sequences(length, generators=GENERATORS):
    """All composable tuples (x_n, ..., x_1) of the given length."""
    by_dst = {}
    for g in generators:
        by_dst.setdefault(dst(g), []).append(g)
    seqs = [(g,) for g in generators]
    for _ in range(length - 1):
        seqs = [s + (g,) for s in seqs for g in by_dst[src(s[-1])]]
    return seqs


def ainfty_defect(tables: MuTables, seq):
    """The A-infinity relation evaluated on one composable sequence.

    Sum over all ways of applying an inner mu to a consecutive block and
    the outer mu to the contracted sequence; zero iff the relation holds.
    """
    n = len(seq)
    acc = f2.ZERO
    for ln in (2, 3):
        for i in range(n - ln + 1):
            inner = tables.mu(seq[i:i + ln])
            for g in inner:
                outer_seq = seq[:i] + (g,) + seq[i + ln:]
                acc = acc ^ tables.mu(outer_seq)
    return acc


def verify_ainfty(tables: MuTables, max_len=5, generators=GENERATORS):
    """Violating sequences of the A-infinity relations, lengths 3..max_len."""
    violations = []
    for n in range(3, max_len + 1):
        for seq in composable_sequences(n, generators):
            if ainfty_defect(tables, seq):
                violations.append(seq)
    return violations


# --- the associative subalgebra on a, c, p generators -------------------

SUB_GENERATORS = ("a0", "c0", "a1", "c1", "p01", "p10")


def verify_subalgebra(tables: MuTables):
    """The a/c/p subalgebra is closed under mu2 and has no mu3.

    Returns the list of violations (closure failures or non-zero mu3 on
    triples from the subalgebra), expected empty.
    """
    sub = set(SUB_GENERATORS)
    bad = []
    for seq in composable_sequences(2, SUB_GENERATORS):
        if not tables.mu(seq) <= sub:
            bad.append(("mu2-closure",) + seq)
    for seq in composable_sequences(3, SUB_GENERATORS):
        if tables.mu(seq):
            bad.append(("mu3-nonzero",) + seq)
    bad.extend(("ainfty",) + s for s in verify_ainfty(tables, 5, SUB_GENERATORS))
    return bad


# --- dictionary with the quotient quiver algebra ------------------------

def bt_to_sub(x):
    """Translate a quotient-algebra element to the a/c/p subalgebra.

    Input is a BElem of the H=0 flavor; output an f2 vector of generator
    names.  FILLED corresponds to L0, HOLLOW to L1.
    """
    from . import algebra

    out = set()
    table = {
        ("i", 0, algebra.FILLED): "a0",
        ("i", 0, algebra.HOLLOW): "a1",
        ("s", 2, algebra.FILLED): "c0",
        ("s", 2, algebra.HOLLOW): "c1",
        ("s", 1, algebra.HOLLOW): "p01",
        ("s", 1, algebra.FILLED): "p10",
    }
    for t in x.terms:
        out ^= {table[(t.kind, t.n, t.vertex)]}
    return frozenset(out)
