"""Type D structures over the quiver algebra and its quotient.

A type D structure is a finite set of generators, each carrying an
idempotent vertex and a homological degree, together with arrows labeled
by algebra elements.  The differential axiom says that summing the
two-step path products between any generator pair gives zero.

Provides the well-definedness check, the mapping cone of H times the
identity, the box tensor with an AD bimodule, reduction by cancellation
of invertible components, isomorphism testing, and a line-oriented text
serialization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import algebra, f2
from .algebra import BElem, Vertex, FLAVOR_B, FLAVOR_BT


@dataclass(frozen=True)
class DGen:
    name: str
    idem: Vertex
    hdeg: int


@dataclass
class TypeDStructure:
    flavor: str = FLAVOR_B
    gens: dict = field(default_factory=dict)     # name -> DGen
    arrows: dict = field(default_factory=dict)   # (src, dst) -> BElem

    def add_gen(self, name, idem, hdeg):
        assert name not in self.gens
        self.gens[name] = DGen(name, idem, hdeg)

    def add_arrow(self, src, dst, label: BElem):
        """F2-accumulate label onto the arrow src -> dst."""
        if label.is_zero():
            return
        assert label.flavor == self.flavor
        gs, gd = self.gens[src], self.gens[dst]
        for t in label.terms:
            assert t.src == gs.idem and t.dst == gd.idem, \
                f"label {t} does not run {gs.idem!r} -> {gd.idem!r}"
        assert gd.hdeg == gs.hdeg + 1, \
            f"arrow {src} -> {dst} does not raise hdeg by 1"
        cur = self.arrows.get((src, dst))
        new = label if cur is None else cur + label
        if new.is_zero():
            self.arrows.pop((src, dst), None)
        else:
            self.arrows[(src, dst)] = new

    def arrows_from(self, src):
        return [(d, l) for (s, d), l in self.arrows.items() if s == src]

    def arrows_to(self, dst):
        return [(s, l) for (s, d), l in self.arrows.items() if d == dst]

    def copy(self):
        out = TypeDStructure(self.flavor)
        out.gens = dict(self.gens)
        out.arrows = dict(self.arrows)
        return out

    def gen_counts(self):
        """Generator count per (idempotent, hdeg)."""
        counts = {}
        for g in self.gens.values():
            key = (g.idem, g.hdeg)
            counts[key] = counts.get(key, 0) + 1
        return counts

    def euler_counts(self):
        """Signed generator count per idempotent (homotopy invariant)."""
        out = {}
        for g in self.gens.values():
            out[g.idem] = out.get(g.idem, 0) + (-1) ** (g.hdeg & 1)
        return out

    def map_labels(self, func, flavor):
        """Apply func to every arrow label; drop zeros."""
        out = TypeDStructure(flavor)
        out.gens = dict(self.gens)
        for (s, d), label in self.arrows.items():
            new = func(label)
            if not new.is_zero():
                out.arrows[(s, d)] = new
        return out


def check_d_squared(m: TypeDStructure):
    """Generator pairs (x, z) where the two-step path sum is non-zero."""
    bad = []
    outgoing = {}
    for (s, d), label in m.arrows.items():
        outgoing.setdefault(s, []).append((d, label))
    for x in m.gens:
        acc = {}
        for y, a in outgoing.get(x, ()):
            for z, b in outgoing.get(y, ()):
                prod = a * b
                if z in acc:
                    acc[z] = acc[z] + prod
                else:
                    acc[z] = prod
        for z, total in acc.items():
            if not total.is_zero():
                bad.append((x, z))
    return bad


def cone_h(m: TypeDStructure) -> TypeDStructure:
    """Mapping cone of multiplication by the central element H."""
    assert m.flavor == FLAVOR_B
    out = TypeDStructure(FLAVOR_B)
    for g in m.gens.values():
        out.add_gen(f"{g.name}.0", g.idem, g.hdeg)
        out.add_gen(f"{g.name}.1", g.idem, g.hdeg + 1)
    for (s, d), label in m.arrows.items():
        out.add_arrow(f"{s}.0", f"{d}.0", label)
        out.add_arrow(f"{s}.1", f"{d}.1", label)
    for g in m.gens.values():
        out.add_arrow(f"{g.name}.0", f"{g.name}.1", algebra.h_elem(g.idem))
    return out


MAX_BOX_ARROWS = 10 ** 6


def box_ad(m: TypeDStructure, bim) -> TypeDStructure:
    """Box tensor of a type D structure with an AD bimodule.

    Generators are pairs (m-generator, bimodule generator) with matching
    idempotents.  A bimodule action with j inputs fires on every arrow
    path of length j whose label monomials match the action's input
    patterns (with a shared parameter value); j = 0 actions fire on
    every generator alone.
    """
    assert m.flavor == bim.a_flavor
    out = TypeDStructure(bim.d_flavor)
    for g in m.gens.values():
        for b in bim.gens.values():
            if g.idem == b.left_idem:
                out.add_gen(f"{g.name}*{b.name}", b.right_idem,
                            g.hdeg + b.hdeg)

    outgoing = {}
    for (s, d), label in m.arrows.items():
        outgoing.setdefault(s, []).append((d, label))

    max_j = max((len(a.inputs) for a in bim.actions), default=0)
    n_arrows = 0
    for g in m.gens.values():
        # monomial paths from g: list of (endpoint, tuple of monomials)
        paths = {0: [(g.name, ())]}
        for j in range(1, max_j + 1):
            nxt = []
            for end, monos in paths[j - 1]:
                for d, label in outgoing.get(end, ()):
                    for t in sorted(label.terms):
                        nxt.append((d, monos + (t,)))
            paths[j] = nxt
        for act in bim.actions:
            b = bim.gens[act.src]
            if b.left_idem != g.idem:
                continue
            bdst = bim.gens[act.dst]
            for end, monos in paths[len(act.inputs)]:
                outm = act.instantiate_on(monos, bim.gens)
                if outm is None:
                    continue
                out.add_arrow(f"{g.name}*{b.name}", f"{end}*{bdst.name}",
                              algebra.mono_elem(outm, bim.d_flavor))
                n_arrows += 1
                if n_arrows > MAX_BOX_ARROWS:
                    raise RuntimeError("box tensor diverged: arrow cap hit")
    return out


class ReduceError(RuntimeError):
    pass


def reduce(m: TypeDStructure) -> TypeDStructure:
    """Cancel invertible arrow components until none remain.

    Prefers arrows whose label is exactly the idempotent, where the
    cancellation is plain Gaussian elimination.  Arrows whose label
    merely contains an idempotent summand are cancelled with the same
    zig-zag formula and the result is re-validated; a failure there
    means the naive formula was insufficient and is reported.
    """
    import heapq

    gens = dict(m.gens)
    out_adj = {name: {} for name in gens}
    in_adj = {name: {} for name in gens}
    pure, mixed = set(), set()
    heap = []  # lazy-keyed fill-in costs for pure cancellations

    def cost(s, d):
        return (len(in_adj[d]) - 1) * (len(out_adj[s]) - 1)

    def classify(s, d, label):
        if label.has_idem():
            if len(label.terms) == 1:
                pure.add((s, d))
                heapq.heappush(heap, (cost(s, d), s, d))
            else:
                mixed.add((s, d))

    def set_arrow(s, d, label):
        pure.discard((s, d))
        mixed.discard((s, d))
        if label.is_zero():
            out_adj[s].pop(d, None)
            in_adj[d].pop(s, None)
        else:
            out_adj[s][d] = label
            in_adj[d][s] = label
            classify(s, d, label)

    for (s, d), label in m.arrows.items():
        out_adj[s][d] = label
        in_adj[d][s] = label
        classify(s, d, label)

    def drop_gen(g):
        for d in list(out_adj[g]):
            set_arrow(g, d, algebra.zero(m.flavor))
        for s in list(in_adj[g]):
            set_arrow(s, g, algebra.zero(m.flavor))
        del gens[g], out_adj[g], in_adj[g]

    def pick():
        # cheapest pure cancellation by current fill-in cost; heap keys
        # are refreshed lazily, so stale entries get re-pushed
        while heap:
            c, s, d = heapq.heappop(heap)
            if (s, d) not in pure:
                continue
            actual = cost(s, d)
            if actual != c:
                heapq.heappush(heap, (actual, s, d))
                continue
            return s, d
        return min(mixed)

    used_fallback = False
    while pure or mixed:
        x, y = pick()
        if (x, y) not in pure:
            used_fallback = True
        into_y = [(p, l) for p, l in in_adj[y].items() if p != x]
        from_x = [(q, l) for q, l in out_adj[x].items() if q != y]
        drop_gen(x)
        drop_gen(y)
        for p, beta in into_y:
            for q, gamma in from_x:
                prod = beta * gamma
                if prod.is_zero():
                    continue
                cur = out_adj[p].get(q)
                set_arrow(p, q, prod if cur is None else cur + prod)

    res = TypeDStructure(m.flavor)
    res.gens = gens
    res.arrows = {(s, d): l for s, adj in out_adj.items()
                  for d, l in adj.items()}
    if used_fallback and check_d_squared(res):
        raise ReduceError(
            "cancellation of a non-pure invertible arrow broke d^2 = 0")
    return res


# --- isomorphism testing ------------------------------------------------

NOT_FOUND = "NOT_FOUND"


def _signatures(m: TypeDStructure, shift, n: TypeDStructure, rounds=3):
    """Joint iterated neighborhood signatures over both structures.

    Seeded from (idem, shifted hdeg) and refined by arrow labels and
    neighbor signatures; canonicalization is shared so signatures are
    comparable between the two structures.
    """
    sig = {}
    for tag, st, sh in (("m", m, shift), ("n", n, 0)):
        for g in st.gens.values():
            sig[tag, g.name] = (g.idem.value, g.hdeg + sh)
    for _ in range(rounds):
        nxt = {}
        for tag, st in (("m", m), ("n", n)):
            for name in st.gens:
                outs = sorted((str(l), sig[tag, d])
                              for d, l in st.arrows_from(name))
                ins = sorted((str(l), sig[tag, s])
                             for s, l in st.arrows_to(name))
                nxt[tag, name] = (sig[tag, name], tuple(outs), tuple(ins))
        canon = {v: i for i, v in enumerate(sorted(set(nxt.values())))}
        sig = {k: canon[v] for k, v in nxt.items()}
    return ({name: s for (t, name), s in sig.items() if t == "m"},
            {name: s for (t, name), s in sig.items() if t == "n"})


def iso_check(m: TypeDStructure, n: TypeDStructure):
    """Isomorphism search, allowing one global hdeg shift.

    Tries a generator bijection preserving idempotents, degrees, and
    arrow labels first; failing that, searches for a general invertible
    chain map (a triangular base change) by linear algebra.  Returns a
    witness (a generator bijection, or a dict describing the chain
    map's matrix entries) or NOT_FOUND.
    """
    if m.flavor != n.flavor or len(m.gens) != len(n.gens):
        return NOT_FOUND
    if not m.gens:
        return {}
    shifts = set()
    mdeg = [g.hdeg for g in m.gens.values()]
    ndeg = [g.hdeg for g in n.gens.values()]
    shifts.add(min(ndeg) - min(mdeg))
    shifts.add(max(ndeg) - max(mdeg))
    candidates = []
    for shift in sorted(shifts):
        counts_m = {(i, h + shift): c
                    for (i, h), c in m.gen_counts().items()}
        if counts_m != n.gen_counts():
            continue
        candidates.append(shift)
        witness = _iso_search(m, n, shift)
        if witness is not None:
            return witness
    for shift in candidates:
        witness = _chain_iso_search(m, n, shift)
        if witness is not None:
            return witness
    return NOT_FOUND


def _label_monomials(src: Vertex, dst: Vertex, max_weight: int, flavor):
    """All basis monomials src -> dst up to the weight cap."""
    return [t for t in algebra.basis_up_to_weight(max_weight, flavor)
            if t.src == src and t.dst == dst]


def _chain_iso_search(m, n, shift, tries=512, seed=7):
    """Invertible chain map search by F2 linear algebra.

    Unknowns are monomial matrix entries of a degree-preserving map;
    the chain-map condition is linear, so its solution space is
    computed exactly and searched for a member whose weight-zero part
    is blockwise invertible (which forces invertibility, since all
    positive-weight terms are filtration-raising).
    """
    import random as _random

    max_label = max((t.weight for l in list(m.arrows.values())
                     + list(n.arrows.values()) for t in l.terms), default=0)
    max_w = max_label + 2
    unknowns = []
    for x in m.gens.values():
        for y in n.gens.values():
            if y.hdeg != x.hdeg + shift:
                continue
            for t in _label_monomials(x.idem, y.idem, max_w, m.flavor):
                unknowns.append((x.name, y.name, t))
    rows = []
    for (x, y, a) in unknowns:
        vec = set()
        amono = algebra.mono_elem(a, m.flavor)
        for z, label in n.arrows_from(y):
            for t in (amono * label).terms:
                vec ^= {(x, z, t)}
        for x0, label in m.arrows_to(x):
            prod = label * amono
            for t in prod.terms:
                vec ^= {(x0, y, t)}
        rows.append(frozenset(vec))
    basis = f2.nullspace(rows)
    if not basis:
        return None

    blocks = {}
    for i, (x, y, t) in enumerate(unknowns):
        if t.kind == "i":
            key = (m.gens[x].idem, m.gens[x].hdeg)
            blocks.setdefault(key, []).append(i)

    def invertible(combo):
        support = set()
        for b in combo:
            support ^= basis[b]
        for key, idxs in blocks.items():
            xs = sorted({unknowns[i][0] for i in idxs})
            ys = sorted({unknowns[i][1] for i in idxs})
            mat = []
            for xname in xs:
                row = frozenset(
                    unknowns[i][1] for i in idxs
                    if i in support and unknowns[i][0] == xname)
                mat.append(row)
            if f2.rank(mat) != len(xs):
                return False
        return True

    rng = _random.Random(seed)
    nb = len(basis)
    candidates = [frozenset([i]) for i in range(nb)]
    candidates.append(frozenset(range(nb)))
    for _ in range(tries):
        candidates.append(frozenset(
            i for i in range(nb) if rng.random() < 0.5))
    for combo in candidates:
        if invertible(combo):
            support = set()
            for b in combo:
                support ^= basis[b]
            return {"shift": shift, "entries": sorted(
                (x, y, str(t)) for i, (x, y, t) in enumerate(unknowns)
                if i in support)}
    return None


def _iso_search(m, n, shift):
    sig_m, sig_n = _signatures(m, shift, n)
    by_sig = {}
    for name, s in sig_n.items():
        by_sig.setdefault(s, []).append(name)
    names_m = sorted(m.gens, key=lambda x: (len(by_sig.get(sig_m[x], ())), x))
    for name in names_m:
        if sig_m[name] not in by_sig:
            return None

    assign = {}
    used = set()

    def consistent(a, b):
        for d, l in m.arrows_from(a):
            if d in assign and n.arrows.get((b, assign[d])) != l:
                return False
        for s, l in m.arrows_to(a):
            if s in assign and n.arrows.get((assign[s], b)) != l:
                return False
        # arrow counts must match exactly
        return (len(m.arrows_from(a)) == len(n.arrows_from(b))
                and len(m.arrows_to(a)) == len(n.arrows_to(b)))

    def backtrack(i):
        if i == len(names_m):
            return True
        a = names_m[i]
        for b in by_sig[sig_m[a]]:
            if b in used or not consistent(a, b):
                continue
            assign[a] = b
            used.add(b)
            if backtrack(i + 1):
                return True
            del assign[a]
            used.discard(b)
        return False

    return dict(assign) if backtrack(0) else None


# --- serialization ------------------------------------------------------

_IDEM_TO_TOKEN = {Vertex.FILLED: "filled", Vertex.HOLLOW: "hollow"}
_TOKEN_TO_IDEM = {v: k for k, v in _IDEM_TO_TOKEN.items()}


def serialize(m: TypeDStructure) -> str:
    lines = [f"flavor {m.flavor}"]
    for g in sorted(m.gens.values(), key=lambda g: g.name):
        lines.append(f"gen {g.name} {_IDEM_TO_TOKEN[g.idem]} {g.hdeg}")
    for (s, d) in sorted(m.arrows):
        lines.append(f"arrow {s} {d} {algebra.format_label(m.arrows[s, d])}")
    return "\n".join(lines) + "\n"


def deserialize(text: str) -> TypeDStructure:
    out = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "flavor":
            out = TypeDStructure(parts[1])
        elif parts[0] == "gen":
            out.add_gen(parts[1], _TOKEN_TO_IDEM[parts[2]], int(parts[3]))
        elif parts[0] == "arrow":
            src = out.gens[parts[1]]
            label = algebra.parse_label(parts[3], src.idem, out.flavor)
            out.add_arrow(parts[1], parts[2], label)
        else:
            raise ValueError(f"bad line: {raw!r}")
    if out is None:
        raise ValueError("empty serialization")
    return out
