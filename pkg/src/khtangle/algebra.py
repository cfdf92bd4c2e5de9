"""The two-vertex quiver algebra with loops and its H=0 quotient.

Basis monomials are paths in the quiver with vertices FILLED and HOLLOW:
idempotents, powers of the connecting arrow S (which alternates between
the vertices), and powers of the loop D.  Mixed S.D words vanish by the
quiver relations.  The full algebra carries the central element
H = D + S^2; the quotient sets H = 0, equivalently identifies D with S^2
and kills S^3.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import total_ordering


class Vertex(enum.Enum):
    FILLED = "f"
    HOLLOW = "h"

    def other(self):
        return Vertex.HOLLOW if self is Vertex.FILLED else Vertex.FILLED

    def __repr__(self):
        return "FILLED" if self is Vertex.FILLED else "HOLLOW"


FILLED = Vertex.FILLED
HOLLOW = Vertex.HOLLOW

# algebra flavors
FLAVOR_B = "B"    # full algebra, with H
FLAVOR_BT = "Bt"  # quotient by H = 0


@total_ordering
@dataclass(frozen=True)
class BBasis:
    """A path-basis monomial: kind 'i' (idempotent), 's' or 'd'."""

    kind: str
    n: int          # 0 for idempotents, else the exponent
    vertex: Vertex  # source vertex of the path

    @property
    def src(self):
        return self.vertex

    @property
    def dst(self):
        if self.kind == "s" and self.n % 2 == 1:
            return self.vertex.other()
        return self.vertex

    @property
    def weight(self):
        if self.kind == "s":
            return self.n
        if self.kind == "d":
            return 2 * self.n
        return 0

    def _key(self):
        return (self.kind, self.n, self.vertex.value)

    def __lt__(self, other):
        return self._key() < other._key()

    def __str__(self):
        if self.kind == "i":
            return "i"
        letter = "S" if self.kind == "s" else "D"
        return letter if self.n == 1 else f"{letter}^{self.n}"


def _mono_mul(x: BBasis, y: BBasis, flavor: str):
    """Concatenate paths x then y; None means the product is zero."""
    if x.dst != y.src:
        return None
    if x.kind == "i":
        return y
    if y.kind == "i":
        return x
    if x.kind != y.kind:
        return None  # DS = SD = 0
    n = x.n + y.n
    if x.kind == "s":
        if flavor == FLAVOR_BT and n >= 3:
            return None  # S^3 = 0 in the quotient
        return BBasis("s", n, x.vertex)
    return BBasis("d", n, x.vertex)


@dataclass(frozen=True)
class BElem:
    """An F2 linear combination of path monomials in one flavor."""

    terms: frozenset
    flavor: str = FLAVOR_B

    def __post_init__(self):
        if self.flavor == FLAVOR_BT:
            for t in self.terms:
                if t.kind == "d" or (t.kind == "s" and t.n >= 3):
                    raise ValueError(f"monomial {t} is not in the quotient algebra")

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        assert self.flavor == other.flavor
        return BElem(self.terms ^ other.terms, self.flavor)

    def __mul__(self, other):
        assert self.flavor == other.flavor, "flavor mismatch in product"
        acc = set()
        for x in self.terms:
            for y in other.terms:
                m = _mono_mul(x, y, self.flavor)
                if m is not None:
                    acc ^= {m}
        return BElem(frozenset(acc), self.flavor)

    def has_idem(self):
        return any(t.kind == "i" for t in self.terms)

    def max_weight(self):
        return max((t.weight for t in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        return "+".join(str(t) for t in sorted(self.terms))


def zero(flavor=FLAVOR_B):
    return BElem(frozenset(), flavor)


def idem(v: Vertex, flavor=FLAVOR_B):
    return BElem(frozenset([BBasis("i", 0, v)]), flavor)


def spow(n: int, v: Vertex, flavor=FLAVOR_B):
    assert n >= 1
    return BElem(frozenset([BBasis("s", n, v)]), flavor)


def dpow(n: int, v: Vertex):
    assert n >= 1
    return BElem(frozenset([BBasis("d", n, v)]), FLAVOR_B)


def h_elem(v: Vertex):
    """The central element H = D + S^2 based at v."""
    return dpow(1, v) + spow(2, v)


def _h_mono(t: BBasis):
    if t.kind == "i":
        return {BBasis("d", 1, t.vertex), BBasis("s", 2, t.vertex)}
    if t.kind == "s":
        return {BBasis("s", t.n + 2, t.vertex)}
    return {BBasis("d", t.n + 1, t.vertex)}


def h_mul(x: BElem) -> BElem:
    """Multiply by the central element H (full algebra only)."""
    assert x.flavor == FLAVOR_B
    acc = set()
    for t in x.terms:
        acc ^= _h_mono(t)
    return BElem(frozenset(acc), FLAVOR_B)


def q_map(x: BElem) -> BElem:
    """The quotient homomorphism onto the H = 0 algebra."""
    acc = set()
    for t in x.terms:
        if t.kind == "i":
            acc ^= {t}
        elif t.kind == "s":
            if t.n <= 2:
                acc ^= {t}
        else:  # D^l maps to S^{2l}, zero unless l = 1
            if t.n == 1:
                acc ^= {BBasis("s", 2, t.vertex)}
    return BElem(frozenset(acc), FLAVOR_BT)


def basis_up_to_weight(w: int, flavor=FLAVOR_B):
    """All basis monomials of weight at most w, both vertices."""
    out = []
    for v in (FILLED, HOLLOW):
        out.append(BBasis("i", 0, v))
        smax = min(w, 2) if flavor == FLAVOR_BT else w
        for n in range(1, smax + 1):
            out.append(BBasis("s", n, v))
        if flavor == FLAVOR_B:
            for n in range(1, w // 2 + 1):
                out.append(BBasis("d", n, v))
    return out


def mono_elem(t: BBasis, flavor=FLAVOR_B):
    return BElem(frozenset([t]), flavor)


# --- label serialization (tokens i, S^n, D^l, joined by '+') ------------

_TOKEN_RE = re.compile(r"^(i|S(\^\d+)?|D(\^\d+)?)$")


def format_label(x: BElem) -> str:
    return str(x)


def parse_label(text: str, src_vertex: Vertex, flavor=FLAVOR_B) -> BElem:
    """Parse a '+'-joined label; vertices are inferred from src_vertex.

    Every monomial in a well-formed arrow label starts at the same
    vertex, so the source vertex determines the rest.
    """
    terms = set()
    for tok in text.split("+"):
        tok = tok.strip()
        if not _TOKEN_RE.match(tok):
            raise ValueError(f"bad label token {tok!r}")
        if tok == "i":
            terms ^= {BBasis("i", 0, src_vertex)}
        else:
            letter, _, exp = tok.partition("^")
            n = int(exp) if exp else 1
            kind = "s" if letter == "S" else "d"
            terms ^= {BBasis(kind, n, src_vertex)}
    return BElem(frozenset(terms), flavor)
