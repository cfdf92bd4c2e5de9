"""Tangle words, the cube of resolutions, and the comparison pipeline.

A 4-ended tangle is presented as a word of slices read top to bottom:
`x i` / `y i` are the two crossing types between strands i and i+1,
`u i` inserts a cup (two new adjacent strands), `n i` caps off strands
i and i+1.  The strand count starts and ends at 2; the four boundary
ends are NW, NE (top) and SW, SE (bottom), with the distinguished end
at NW by default.

Each of the 2^c resolutions is simulated on a port graph; a vertex of
the cube records its end-pairing (FILLED = vertical, HOLLOW =
horizontal) and its closed loops.  Delooping turns the cube into a type
D structure over the full quiver algebra with dotted-cobordism labels,
and the two comparison pipelines build the H-cone and the two-layer
bimodule image from it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import algebra, bimod, dstruct
from .algebra import BElem, Vertex, FILLED, HOLLOW, FLAVOR_B

STAR_CHOICES = ("nw", "ne", "sw", "se")


@dataclass(frozen=True)
class TangleWord:
    slices: tuple  # tuple of (kind, index), kind in "xyun"

    @property
    def crossings(self):
        return sum(1 for k, _ in self.slices if k in "xy")

    def __str__(self):
        return " ".join(f"{k}{i}" for k, i in self.slices)


class TangleError(ValueError):
    pass


def parse_tangle(text: str) -> TangleWord:
    """Parse and validate a slice word."""
    tokens = text.split()
    slices = []
    count = 2
    for pos, tok in enumerate(tokens):
        kind, num = tok[:1], tok[1:]
        if kind not in "xyun" or not num.isdigit():
            raise TangleError(f"slice {pos}: bad token {tok!r}")
        i = int(num)
        if kind in "xy":
            if not 1 <= i <= count - 1:
                raise TangleError(
                    f"slice {pos}: crossing index {i} out of range "
                    f"(strand count {count})")
        elif kind == "u":
            if not 1 <= i <= count + 1:
                raise TangleError(
                    f"slice {pos}: cup index {i} out of range")
            count += 2
        else:
            if not 1 <= i <= count - 1:
                raise TangleError(
                    f"slice {pos}: cap index {i} out of range "
                    f"(strand count {count})")
            count -= 2
        slices.append((kind, i))
    if count != 2:
        raise TangleError(f"final strand count {count} != 2")
    return TangleWord(tuple(slices))


# --- port-graph simulation of one resolution ----------------------------

class _UnionFind(dict):
    def find(self, x):
        while self[x] != x:
            self[x] = self[self[x]]
            x = self[x]
        return x

    def union(self, x, y):
        self[self.find(x)] = self.find(y)


@dataclass
class Resolution:
    matching: Vertex
    loops: tuple            # sorted tuple of loop ids (min port)
    component_of: dict      # port -> component id (min port of component)
    site_ports: tuple       # per crossing: (a, b, c1, c2)
    boundary_ports: dict    # "nw"/"ne"/"sw"/"se" -> port


def _simulate(word: TangleWord, bits: int) -> Resolution:
    """Resolve every crossing per its bit and compute the pairing."""
    uf = _UnionFind()
    fresh = iter(range(10 ** 6))

    def new_port():
        p = next(fresh)
        uf[p] = p
        return p

    t1, t2 = new_port(), new_port()
    ports = [t1, t2]
    site_ports = []
    cidx = 0
    for kind, i in word.slices:
        if kind == "u":
            p, q = new_port(), new_port()
            uf.union(p, q)
            ports[i - 1:i - 1] = [p, q]
        elif kind == "n":
            p, q = ports[i - 1], ports[i]
            uf.union(p, q)
            del ports[i - 1:i + 1]
        else:
            a, b = ports[i - 1], ports[i]
            c1, c2 = new_port(), new_port()
            bit = (bits >> cidx) & 1
            smoothing = ("id", "e")[bit] if kind == "x" else ("e", "id")[bit]
            if smoothing == "id":
                uf.union(a, c1)
                uf.union(b, c2)
            else:
                uf.union(a, b)
                uf.union(c1, c2)
            ports[i - 1:i + 1] = [c1, c2]
            site_ports.append((a, b, c1, c2))
            cidx += 1
    b1, b2 = ports
    boundary = {"nw": t1, "ne": t2, "sw": b1, "se": b2}

    comps = {}
    for p in uf:
        comps.setdefault(uf.find(p), set()).add(p)
    component_of = {}
    canon = {}
    for root, members in comps.items():
        cid = min(members)
        canon[root] = cid
        for p in members:
            component_of[p] = cid

    if component_of[t1] == component_of[b1]:
        matching = FILLED
        assert component_of[t2] == component_of[b2]
    elif component_of[t1] == component_of[t2]:
        matching = HOLLOW
        assert component_of[b1] == component_of[b2]
    else:
        raise AssertionError("crossing end-pairing; not planar?")

    boundary_comps = {component_of[p] for p in (t1, t2, b1, b2)}
    loops = tuple(sorted(cid for cid in set(component_of.values())
                         if cid not in boundary_comps))
    return Resolution(matching, loops, component_of, tuple(site_ports),
                      boundary)


@dataclass
class ResolutionCube:
    word: TangleWord
    resolutions: dict   # bits -> Resolution
    star: str = "nw"


MAX_CROSSINGS = 20


def build_cube(word: TangleWord, star="nw",
               max_crossings=MAX_CROSSINGS) -> ResolutionCube:
    assert star in STAR_CHOICES
    c = word.crossings
    if c > max_crossings:
        raise TangleError(f"{c} crossings exceeds the guard "
                          f"({max_crossings}); raise --max-crossings")
    resolutions = {bits: _simulate(word, bits) for bits in range(1 << c)}
    return ResolutionCube(word, resolutions, star)


# --- delooping and translation ------------------------------------------

def _gen_name(bits, decor):
    return f"v{bits}d{decor}"


def _starred_component(res: Resolution, star):
    return res.component_of[res.boundary_ports[star]]


def deloop_translate(cube: ResolutionCube) -> dstruct.TypeDStructure:
    """Expand loops into dot decorations and saddles into algebra labels."""
    out = dstruct.TypeDStructure(FLAVOR_B)
    word, star = cube.word, cube.star
    c = word.crossings

    for bits, res in cube.resolutions.items():
        for decor in range(1 << len(res.loops)):
            out.add_gen(_gen_name(bits, decor), res.matching,
                        bin(bits).count("1"))

    for bits, src in cube.resolutions.items():
        for j in range(c):
            if (bits >> j) & 1:
                continue
            tbits = bits | (1 << j)
            tgt = cube.resolutions[tbits]
            _add_saddle_arrows(out, src, tgt, bits, tbits, j, star)

    bad = dstruct.check_d_squared(out)
    if bad:
        raise AssertionError(f"d^2 != 0 after delooping: {bad[:3]}")
    return out


def _add_saddle_arrows(out, src, tgt, bits, tbits, j, star):
    """Arrows for the cube edge flipping crossing j, for every source
    dot decoration."""
    a, b, c1, c2 = src.site_ports[j]
    src_touch = {src.component_of[p] for p in (a, b, c1, c2)}
    tgt_touch = {tgt.component_of[p] for p in (a, b, c1, c2)}
    src_loops = src.loops
    star_src = _starred_component(src, star)
    star_tgt = _starred_component(tgt, star)
    v = src.matching

    def carry(decor, skip):
        """Transfer decorations on loops not involved in the saddle."""
        dots = {}
        for idx, lid in enumerate(src_loops):
            if lid in skip:
                continue
            if (decor >> idx) & 1:
                dots[tgt.component_of[lid]] = True
        return dots

    def emit(decor, dots, label):
        """dots: map target component -> dotted; convert to a decoration
        index over tgt.loops, turning dots on arcs into algebra."""
        if label.is_zero():
            return
        tdecor = 0
        for comp, _ in dots.items():
            if comp in tgt.loops:
                tdecor |= 1 << tgt.loops.index(comp)
            elif comp == star_tgt:
                return  # dot on the starred arc kills the term
            else:
                label = label * algebra.dpow(1, tgt.matching)
                if label.is_zero():
                    return
        out.add_arrow(_gen_name(bits, decor), _gen_name(tbits, tdecor), label)

    for decor in range(1 << len(src_loops)):
        if len(src_touch) == 2 and len(tgt_touch) == 2:
            # arc-arc reconnection: the saddle cobordism
            label = algebra.spow(1, v)
            emit(decor, carry(decor, skip=src_touch), label)
        elif len(src_touch) == 2:
            # merge of two components into one
            x = _merge_inputs(src, src_loops, decor, src_touch, star_src)
            if x is None:
                continue
            dotted, extra = x
            dots = carry(decor, skip=src_touch)
            label = algebra.idem(v)
            target_comp = next(iter(tgt_touch))
            if extra == "H":
                label = algebra.h_mul(label)
            if dotted:
                dots[target_comp] = True
            emit(decor, dots, label)
        else:
            # split of one component into two
            src_comp = next(iter(src_touch))
            src_dotted = (src_comp in src_loops
                          and (decor >> src_loops.index(src_comp)) & 1)
            base = carry(decor, skip=src_touch)
            t_a, t_b = sorted(tgt_touch)
            if src_dotted:
                # a dot comes in: both offspring dotted
                dots = dict(base)
                dots[t_a] = True
                dots[t_b] = True
                emit(decor, dots, algebra.idem(v))
            else:
                for dotted_side in (t_a, t_b):
                    dots = dict(base)
                    dots[dotted_side] = True
                    # dot on the starred arc vanishes inside emit
                    emit(decor, dots, algebra.idem(v))
                emit(decor, dict(base), algebra.h_mul(algebra.idem(v)))


def _merge_inputs(src, src_loops, decor, touch, star_src):
    """Frobenius multiplication inputs for a merge saddle.

    Returns (output dotted?, extra) where extra is "H" when two dots
    meet, or None when a dotted starred arc kills the term.
    """
    dots = 0
    for comp in touch:
        if comp in src_loops:
            if (decor >> src_loops.index(comp)) & 1:
                dots += 1
        # arcs carry no decoration
    if dots == 0:
        return (False, None)
    if dots == 1:
        return (True, None)
    return (True, "H")


# --- pipelines ----------------------------------------------------------

def tangle_complex(word: TangleWord, star="nw", max_crossings=MAX_CROSSINGS):
    """Reduced type D structure of the delooped resolution cube."""
    return dstruct.reduce(deloop_translate(build_cube(word, star,
                                                      max_crossings)))


def compute_dd1(word: TangleWord, star="nw", max_crossings=MAX_CROSSINGS):
    """The H-cone invariant of the tangle."""
    return dstruct.cone_h(tangle_complex(word, star, max_crossings))


def compute_lt_image(word: TangleWord, star="nw",
                     max_crossings=MAX_CROSSINGS):
    """The quotient-then-two-layer image of the tangle invariant."""
    m = tangle_complex(word, star, max_crossings)
    mq = m.map_labels(algebra.q_map, algebra.FLAVOR_BT)
    return dstruct.reduce(dstruct.box_ad(mq, bimod.bimodule_Y()))


EQUIVALENT = "EQUIVALENT"
INDETERMINATE = "INDETERMINATE"
MISMATCH = "MISMATCH"


def compare(word: TangleWord, star="nw", max_crossings=MAX_CROSSINGS):
    """Verdict on whether the two invariants agree for this tangle."""
    lhs = dstruct.reduce(compute_dd1(word, star, max_crossings))
    rhs = compute_lt_image(word, star, max_crossings)
    witness = dstruct.iso_check(lhs, rhs)
    if witness != dstruct.NOT_FOUND:
        return EQUIVALENT, witness
    lc, rc = lhs.gen_counts(), rhs.gen_counts()
    if sorted(lc.values()) != sorted(rc.values()) or \
            lhs.euler_counts() != rhs.euler_counts():
        return MISMATCH, {"lhs_counts": _fmt_counts(lc),
                          "rhs_counts": _fmt_counts(rc)}
    return INDETERMINATE, None


def _fmt_counts(counts):
    return {f"{idem.value}:{h}": c for (idem, h), c in sorted(
        counts.items(), key=lambda kv: (kv[0][0].value, kv[0][1]))}


# --- corpus and random words --------------------------------------------

CORPUS = (
    "",
    "x1",
    "y1",
    "x1 x1",
    "x1 x1 x1",
    "x1 y1",
    "x1 x1 u1 x2 n3",
    "x1 x1 u1 x2 x2 n3",
    "x1 x1 x1 u1 x2 x2 x2 n3",
    "u1 n1",
    "x1 u1 n1",
)


def random_word(rng: random.Random, max_crossings=8) -> TangleWord:
    """A random valid word with at most the given number of crossings."""
    while True:
        slices = []
        count = 2
        crossings = 0
        for _ in range(rng.randint(0, 14)):
            options = []
            if count >= 2 and crossings < max_crossings:
                options += [("x", rng.randint(1, count - 1)),
                            ("y", rng.randint(1, count - 1))]
            if count <= 4:
                options.append(("u", rng.randint(1, count + 1)))
            if count >= 4:
                options.append(("n", rng.randint(1, count - 1)))
            kind, i = rng.choice(options)
            slices.append((kind, i))
            if kind == "u":
                count += 2
            elif kind == "n":
                count -= 2
            else:
                crossings += 1
        # close any extra strands
        while count > 2:
            i = rng.randint(1, count - 1)
            slices.append(("n", i))
            count -= 2
        word = TangleWord(tuple(slices))
        try:
            parse_tangle(str(word))
        except TangleError:
            continue
        return word
