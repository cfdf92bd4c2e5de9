"""Type AD bimodules, their box tensor, and AD morphism calculus.

An AD bimodule consumes algebra inputs on one side (the A-side) and
emits one algebra output on the other (the D-side).  Actions come in
k-parameterized families: every exponent is an affine expression
offset + stride*k in one shared non-negative parameter.  Verification
instantiates families up to a weight bound and computes exactly below
it.

Ships the cone-of-identity bimodule I, the quotient bimodule Q, the
two-layer bimodule Y, structural/enumerated identity bimodules, the
mutually inverse morphisms f : I -> Q box Y and g backwards, and the
truncated verification that they are chain isomorphisms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from . import algebra
from .algebra import (BBasis, Vertex, FILLED, HOLLOW, FLAVOR_B, FLAVOR_BT,
                      _mono_mul)


@dataclass(frozen=True)
class Pattern:
    """An exponent family: letter S/D/i with exponent offset + stride*k."""

    letter: str  # 'S', 'D', or 'i'
    offset: int = 0
    stride: int = 0

    def __post_init__(self):
        assert self.letter in "SDi"
        assert self.offset >= 0 and self.stride in (0, 1, 2)
        if self.letter == "i":
            assert self.offset == 0 and self.stride == 0

    def exponent(self, k):
        return self.offset + self.stride * k

    def instantiate(self, k, vertex: Vertex) -> BBasis:
        e = self.exponent(k)
        if self.letter == "i" or e == 0:
            return BBasis("i", 0, vertex)
        kind = "s" if self.letter == "S" else "d"
        return BBasis(kind, e, vertex)

    def match(self, mono: BBasis):
        """Parameter constraint matching a monomial: None (no match),
        "any" (stride 0 hit), or the unique k value."""
        if mono.kind == "i":
            if self.letter == "i" or (self.stride == 0 and self.offset == 0):
                return "any"
            return None
        if self.letter != {"s": "S", "d": "D"}[mono.kind]:
            return None
        if self.stride == 0:
            return "any" if mono.n == self.offset else None
        k, r = divmod(mono.n - self.offset, self.stride)
        return k if r == 0 and k >= 0 else None

    def weight(self, k):
        e = self.exponent(k)
        return 0 if self.letter == "i" else e * (1 if self.letter == "S" else 2)

    def __str__(self):
        if self.letter == "i":
            return "1"
        if self.stride == 0:
            return self.letter if self.offset == 1 else f"{self.letter}^{self.offset}"
        coef = "" if self.stride == 1 else str(self.stride)
        tail = f"+{self.offset}" if self.offset else ""
        return f"{self.letter}^{{{coef}k{tail}}}"


_PAT_RE = re.compile(
    r"^(?:1|([SD])(?:\^(?:(\d+)|\{([12]?)k(?:\+(\d+))?\}))?)$")


def parse_pattern(text: str) -> Pattern:
    m = _PAT_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad pattern {text!r}")
    letter, const, coef, off = m.groups()
    if letter is None:
        return Pattern("i")
    if const is not None:
        return Pattern(letter, int(const), 0)
    if coef is None and off is None and "k" not in text:
        return Pattern(letter, 1, 0)
    if "k" in text:
        return Pattern(letter, int(off or 0), int(coef) if coef else 1)
    return Pattern(letter, 1, 0)


@dataclass(frozen=True)
class BimGen:
    name: str
    left_idem: Vertex   # A-side idempotent
    right_idem: Vertex  # D-side idempotent
    hdeg: int = 0


@dataclass(frozen=True)
class Action:
    """A family of delta components: inputs consumed along the A-side
    path from the source generator, one D-side output emitted."""

    src: str
    dst: str
    inputs: tuple       # tuple of Pattern, in path order (first applied first)
    output: Pattern

    def shared_k(self, monos):
        """Combine per-slot constraints; None if inconsistent."""
        k = "any"
        for pat, mono in zip(self.inputs, monos):
            c = pat.match(mono)
            if c is None:
                return None
            if c != "any":
                if k != "any" and k != c:
                    return None
                k = c
        return k

    def instantiate_on(self, monos, gens):
        """Output monomial for concrete input monomials, or None.

        Checks the vertex path on the A-side and instantiates the
        output on the D-side.
        """
        if len(monos) != len(self.inputs):
            return None
        sgen, dgen = gens[self.src], gens[self.dst]
        v = sgen.left_idem
        for mono in monos:
            if mono.src != v:
                return None
            v = mono.dst
        if v != dgen.left_idem:
            return None
        k = self.shared_k(monos)
        if k is None:
            return None
        if k == "any":
            if self.output.stride != 0:
                return None  # unconstrained parameter with growing output
            k = 0
        out = self.output.instantiate(k, sgen.right_idem)
        if out.dst != dgen.right_idem:
            return None
        return out

    def __str__(self):
        ins = ",".join(str(p) for p in self.inputs) or "-"
        return f"({ins} | {self.output})"


@dataclass(frozen=True)
class ADBimodule:
    name: str
    a_flavor: str
    d_flavor: str
    gens: dict            # name -> BimGen
    actions: tuple        # tuple of Action

    def __post_init__(self):
        for a in self.actions:
            s, d = self.gens[a.src], self.gens[a.dst]
            assert d.hdeg - s.hdeg == 1 - len(a.inputs), \
                f"action {a.src}->{a.dst} breaks the degree rule"


def _mk_bim(name, a_flavor, d_flavor, gens, actions):
    return ADBimodule(name, a_flavor, d_flavor,
                      {g.name: g for g in gens}, tuple(actions))


def _S(offset, stride=0):
    return Pattern("S", offset, stride)


def _D(offset, stride=0):
    return Pattern("D", offset, stride)


_IOTA = Pattern("i")


def bimodule_Y() -> ADBimodule:
    """Two layers joined by H: quotient-algebra inputs, full outputs."""
    gens = [BimGen("t", FILLED, FILLED, 0), BimGen("u", HOLLOW, HOLLOW, 0),
            BimGen("k", FILLED, FILLED, 1), BimGen("v", HOLLOW, HOLLOW, 1)]
    acts = []
    for a, b in [("t", "u"), ("u", "t"), ("k", "v"), ("v", "k")]:
        acts.append(Action(a, b, (_S(1),), _S(1)))
    for g in "tukv":
        acts.append(Action(g, g, (_S(2),), _D(1)))
    for a, b in [("t", "k"), ("u", "v")]:
        acts.append(Action(a, b, (), _D(1)))
        acts.append(Action(a, b, (), _S(2)))
    for a, b in [("k", "t"), ("v", "u")]:
        acts.append(Action(a, b, (_S(2), _S(2)), _D(1)))
        acts.append(Action(a, b, (_S(1), _S(1)), _IOTA))
    return _mk_bim("Y", FLAVOR_BT, FLAVOR_B, gens, acts)


def bimodule_Q() -> ADBimodule:
    """The quotient bimodule: full-algebra inputs, quotient outputs."""
    gens = [BimGen("z", FILLED, FILLED, 0), BimGen("w", HOLLOW, HOLLOW, 0)]
    acts = [Action("z", "w", (_S(1),), _S(1)),
            Action("w", "z", (_S(1),), _S(1))]
    for g in "zw":
        acts.append(Action(g, g, (_D(1),), _S(2)))
        acts.append(Action(g, g, (_S(2),), _S(2)))
    return _mk_bim("Q", FLAVOR_B, FLAVOR_BT, gens, acts)


def bimodule_I() -> ADBimodule:
    """The cone-of-identity bimodule, enumerated as pattern families."""
    gens = [BimGen("l", FILLED, FILLED, 0), BimGen("b", HOLLOW, HOLLOW, 0),
            BimGen("m", FILLED, FILLED, 1), BimGen("y", HOLLOW, HOLLOW, 1)]
    acts = []
    for a, b in [("l", "b"), ("b", "l"), ("m", "y"), ("y", "m")]:
        acts.append(Action(a, b, (_S(1, 2),), _S(1, 2)))
    for g in "lbmy":
        acts.append(Action(g, g, (_D(1, 1),), _D(1, 1)))
        acts.append(Action(g, g, (_S(2, 2),), _S(2, 2)))
    for a, b in [("l", "m"), ("b", "y")]:
        acts.append(Action(a, b, (), _D(1)))
        acts.append(Action(a, b, (), _S(2)))
    return _mk_bim("I", FLAVOR_B, FLAVOR_B, gens, acts)


def identity_bimodule(flavor, structural=True) -> ADBimodule:
    """Pass-through bimodule; structural uses one family per letter,
    enumerated splits the connecting arrows by parity."""
    gens = [BimGen("e.f", FILLED, FILLED, 0), BimGen("e.h", HOLLOW, HOLLOW, 0)]
    acts = [Action(g.name, g.name, (_IOTA,), _IOTA) for g in gens]
    pairs = [("e.f", "e.f"), ("e.h", "e.h"), ("e.f", "e.h"), ("e.h", "e.f")]
    if flavor == FLAVOR_B:
        spats = [_S(1, 1)] if structural else [_S(1, 2), _S(2, 2)]
        dpats = [_D(1, 1)]
    else:
        spats = [_S(1), _S(2)]
        dpats = []
    for a, b in pairs:
        for p in spats:
            acts.append(Action(a, b, (p,), p))
        if a == b:
            for p in dpats:
                acts.append(Action(a, a, (p,), p))
    return _mk_bim(f"id[{flavor}]", flavor, flavor, gens, acts)


def bimodule_QY_expected() -> ADBimodule:
    """The box tensor of Q and Y, transcribed as a standalone table."""
    gens = [BimGen("z*t", FILLED, FILLED, 0), BimGen("w*u", HOLLOW, HOLLOW, 0),
            BimGen("z*k", FILLED, FILLED, 1), BimGen("w*v", HOLLOW, HOLLOW, 1)]
    acts = []
    for a, b in [("z*t", "w*u"), ("w*u", "z*t"), ("z*k", "w*v"),
                 ("w*v", "z*k")]:
        acts.append(Action(a, b, (_S(1),), _S(1)))
    for g in ("z*t", "w*u", "z*k", "w*v"):
        acts.append(Action(g, g, (_S(2),), _D(1)))
        acts.append(Action(g, g, (_D(1),), _D(1)))
    for a, b in [("z*t", "z*k"), ("w*u", "w*v")]:
        acts.append(Action(a, b, (), _D(1)))
        acts.append(Action(a, b, (), _S(2)))
    for a, b in [("z*k", "z*t"), ("w*v", "w*u")]:
        acts.append(Action(a, b, (_S(1), _S(1)), _IOTA))
        acts.append(Action(a, b, (_D(1), _D(1)), _D(1)))
        acts.append(Action(a, b, (_S(2), _D(1)), _D(1)))
        acts.append(Action(a, b, (_D(1), _S(2)), _D(1)))
        acts.append(Action(a, b, (_S(2), _S(2)), _D(1)))
    return _mk_bim("QY", FLAVOR_B, FLAVOR_B, gens, acts)


def shipped_bimodules():
    return {"I": bimodule_I(), "Q": bimodule_Q(), "Y": bimodule_Y(),
            "id_B": identity_bimodule(FLAVOR_B),
            "id_Bt": identity_bimodule(FLAVOR_BT)}


# --- morphisms ----------------------------------------------------------

@dataclass(frozen=True)
class ADMorphism:
    name: str
    source: ADBimodule
    target: ADBimodule
    components: tuple    # tuple of Action (src in source, dst in target)

    def __post_init__(self):
        for c in self.components:
            s = self.source.gens[c.src]
            d = self.target.gens[c.dst]
            assert d.hdeg - s.hdeg + len(c.inputs) == 0, \
                f"component {c.src}->{c.dst} breaks the degree rule"

    def arity_part(self, j):
        return replace(self, name=f"{self.name}[{j}]", components=tuple(
            c for c in self.components if len(c.inputs) == j))


def morphism_f(source=None, target=None) -> ADMorphism:
    source = source or bimodule_I()
    target = target or bimodule_QY_expected()
    comps = [Action("l", "z*t", (), _IOTA), Action("b", "w*u", (), _IOTA),
             Action("m", "z*k", (), _IOTA), Action("y", "w*v", (), _IOTA)]
    for a, b in [("m", "z*t"), ("y", "w*u")]:
        comps.append(Action(a, b, (_S(2, 2),), _S(0, 2)))
        comps.append(Action(a, b, (_D(2, 1),), _D(1, 1)))
    comps.append(Action("m", "w*u", (_S(3, 2),), _S(1, 2)))
    comps.append(Action("y", "z*t", (_S(3, 2),), _S(1, 2)))
    return ADMorphism("f", source, target, tuple(comps))


def morphism_g(source=None, target=None) -> ADMorphism:
    source = source or bimodule_QY_expected()
    target = target or bimodule_I()
    comps = [Action("z*t", "l", (), _IOTA), Action("w*u", "b", (), _IOTA),
             Action("z*k", "m", (), _IOTA), Action("w*v", "y", (), _IOTA)]
    for a, b in [("z*k", "l"), ("w*v", "b")]:
        comps.append(Action(a, b, (_S(2, 2),), _S(0, 2)))
        comps.append(Action(a, b, (_D(2, 1),), _D(1, 1)))
    comps.append(Action("z*k", "b", (_S(3, 2),), _S(1, 2)))
    comps.append(Action("w*v", "l", (_S(3, 2),), _S(1, 2)))
    return ADMorphism("g", source, target, tuple(comps))


def shipped_morphisms():
    qy = bimodule_QY_expected()
    return {"f": morphism_f(target=qy), "g": morphism_g(source=qy)}


# --- instantiation ------------------------------------------------------

def _instantiate_component(comp: Action, gens, tgt_gens, bound):
    """Concrete tuples (src, dst, input monomials, output monomial)."""
    sgen = gens[comp.src]
    out = []
    strides = [p.stride for p in comp.inputs] + [comp.output.stride]
    kmax = 0 if all(s == 0 for s in strides) else bound
    for k in range(kmax + 1):
        w = sum(p.weight(k) for p in comp.inputs)
        if w > bound:
            break
        monos, v, ok = [], sgen.left_idem, True
        for p in comp.inputs:
            mono = p.instantiate(k, v)
            if mono.kind == "i" and p.letter != "i":
                ok = False  # exponent collapsed to zero: not a valid input
                break
            monos.append(mono)
            v = mono.dst
        if not ok:
            continue
        outm = comp.output.instantiate(k, sgen.right_idem)
        out.append((comp.src, comp.dst, tuple(monos), outm))
    return out


def instantiate_actions(bim: ADBimodule, bound):
    """All concrete actions with total input weight <= bound, F2-reduced."""
    acc = set()
    for a in bim.actions:
        for item in _instantiate_component(a, bim.gens, bim.gens, bound):
            acc ^= {item}
    return frozenset(acc)


def instantiate_morphism(mor: ADMorphism, bound):
    acc = set()
    for c in mor.components:
        for item in _instantiate_component(c, mor.source.gens,
                                           mor.target.gens, bound):
            acc ^= {item}
    return frozenset(acc)


def _mono_factorizations(mono: BBasis):
    """Two-factor splittings into non-idempotent monomials, path order."""
    out = []
    if mono.kind == "i":
        return out
    for a in range(1, mono.n):
        first = BBasis(mono.kind, a, mono.src)
        second = BBasis(mono.kind, mono.n - a, first.dst)
        out.append((first, second))
    return out


def _filter_weight(items, bound):
    return frozenset(i for i in items
                     if sum(m.weight for m in i[2]) <= bound)


def diff_ad_morphism(mor: ADMorphism, bound):
    """Truncated differential of an AD morphism, as concrete components.

    Exact for every component of total input weight <= bound.  Terms:
    the morphism followed by a target action, a source action followed
    by the morphism, and the morphism with one input split into two
    non-idempotent factors (the A-side multiplication terms).
    """
    flavor = mor.source.a_flavor
    h = instantiate_morphism(mor, bound)
    src_acts = instantiate_actions(mor.source, bound)
    tgt_acts = instantiate_actions(mor.target, bound)
    acc = set()

    def emit(src, dst, inputs, out1, out2):
        prod = _mono_mul(out1, out2, mor.target.d_flavor)
        if prod is not None:
            acc.symmetric_difference_update({(src, dst, inputs, prod)})

    for (cs, cd, cin, cout) in h:
        for (as_, ad, ain, aout) in tgt_acts:
            if cd == as_:
                emit(cs, ad, cin + ain, cout, aout)
    for (as_, ad, ain, aout) in src_acts:
        for (cs, cd, cin, cout) in h:
            if ad == cs:
                emit(as_, cd, ain + cin, aout, cout)
    for (cs, cd, cin, cout) in h:
        for i, mono in enumerate(cin):
            for first, second in _mono_factorizations(mono):
                item = (cs, cd, cin[:i] + (first, second) + cin[i + 1:], cout)
                acc.symmetric_difference_update({item})
    return _filter_weight(acc, bound)


def compose_concrete(h2_items, h1_items, d_flavor, bound):
    """Concrete composition: h1 first, then h2."""
    acc = set()
    for (s1, d1, in1, out1) in h1_items:
        for (s2, d2, in2, out2) in h2_items:
            if d1 != s2:
                continue
            prod = _mono_mul(out1, out2, d_flavor)
            if prod is not None:
                acc.symmetric_difference_update({(s1, d2, in1 + in2, prod)})
    return _filter_weight(acc, bound)


def compose_ad_morphisms(h2: ADMorphism, h1: ADMorphism, bound):
    assert h1.target.name == h2.source.name
    return compose_concrete(instantiate_morphism(h2, bound),
                            instantiate_morphism(h1, bound),
                            h2.target.d_flavor, bound)


def identity_components(bim: ADBimodule):
    return frozenset(
        (g.name, g.name, (), BBasis("i", 0, g.right_idem))
        for g in bim.gens.values())


# --- box tensor of bimodules --------------------------------------------

def box_bimods(left: ADBimodule, right: ADBimodule, bound) -> frozenset:
    """Concrete action set of the box tensor, truncated by input weight.

    A right action with r input slots fires on every path of r left
    actions whose outputs fill the slots in order; right actions with
    no inputs fire alone on every compatible left generator.
    """
    assert left.d_flavor == right.a_flavor
    left_inst = instantiate_actions(left, bound)
    by_src = {}
    for item in left_inst:
        by_src.setdefault(item[0], []).append(item)
    acc = set()
    for (rs, rd, rin, rout) in instantiate_actions(right, bound):
        rgen = right.gens[rs]
        # sequences of left actions matching rin along a generator path
        def extend(i, lsrc, lcur, inputs):
            if i == len(rin):
                yield (lsrc, lcur, inputs)
                return
            starts = ([lcur] if lcur else list(left.gens))
            for start in starts:
                for (as_, ad, ain, aout) in by_src.get(start, ()):
                    if aout != rin[i]:
                        continue
                    src0 = lsrc if lsrc else as_
                    yield from extend(i + 1, src0, ad, inputs + ain)
        if not rin:
            for lg in left.gens.values():
                if lg.right_idem == rgen.left_idem:
                    acc.symmetric_difference_update(
                        {(f"{lg.name}*{rs}", f"{lg.name}*{rd}", (), rout)})
            continue
        for (lsrc, ldst, inputs) in extend(0, None, None, ()):
            lg, lg2 = left.gens[lsrc], left.gens[ldst]
            if lg.right_idem != rgen.left_idem:
                continue
            if sum(m.weight for m in inputs) > bound:
                continue
            acc.symmetric_difference_update(
                {(f"{lsrc}*{rs}", f"{ldst}*{rd}", inputs, rout)})
    return frozenset(acc)


def box_gen_pairs(left: ADBimodule, right: ADBimodule):
    out = {}
    for lg in left.gens.values():
        for rg in right.gens.values():
            if lg.right_idem == rg.left_idem:
                name = f"{lg.name}*{rg.name}"
                out[name] = BimGen(name, lg.left_idem, rg.right_idem,
                                   lg.hdeg + rg.hdeg)
    return out


# --- lemma verification -------------------------------------------------

def max_weight_shift(bim_or_mor, bound=12):
    """Largest |output weight - input weight| over instantiated actions."""
    if isinstance(bim_or_mor, ADBimodule):
        items = instantiate_actions(bim_or_mor, bound)
    else:
        items = instantiate_morphism(bim_or_mor, bound)
    return max((abs(out.weight - sum(m.weight for m in ins))
                for (_, _, ins, out) in items), default=0)


def verify_lemma_main(bound=16, margin=8):
    """The truncated chain-isomorphism verification for f and g.

    Checks, on every component of total input weight <= bound - margin:
    the computed box tensor of Q and Y matches the transcribed table,
    both morphisms are cycles, both composites are identities, and the
    arity-graded sub-identities of the composites hold.
    """
    assert bound > margin >= 8
    report = {"checks": {}, "pass": True}
    qy = bimodule_QY_expected()
    f, g = morphism_f(target=qy), morphism_g(source=qy)
    eff = bound - margin

    computed = _filter_weight(box_bimods(bimodule_Q(), bimodule_Y(), bound),
                              eff)
    expected = _filter_weight(instantiate_actions(qy, bound), eff)
    report["checks"]["box QY = transcribed table"] = computed == expected

    for name, mor in (("df = 0", f), ("dg = 0", g)):
        leftover = _filter_weight(diff_ad_morphism(mor, bound), eff)
        report["checks"][name] = not leftover

    id_i = _filter_weight(identity_components(f.source), eff)
    id_qy = _filter_weight(identity_components(qy), eff)
    gof = _filter_weight(compose_ad_morphisms(g, f, bound), eff)
    fog = _filter_weight(compose_ad_morphisms(f, g, bound), eff)
    report["checks"]["g after f = id"] = gof == id_i
    report["checks"]["f after g = id"] = fog == id_qy

    # arity-graded sub-identities of g after f
    f0, f1 = f.arity_part(0), f.arity_part(1)
    g0, g1 = g.arity_part(0), g.arity_part(1)
    sub = {
        "arity 0: g0 after f0 = id": compose_ad_morphisms(g0, f0, bound) == id_i,
        "arity 1: g0 f1 + g1 f0 = 0": not (
            compose_ad_morphisms(g0, f1, bound)
            ^ compose_ad_morphisms(g1, f0, bound)),
        "arity 2: g1 after f1 = 0": not _filter_weight(
            compose_ad_morphisms(g1, f1, bound), eff),
    }
    report["checks"].update(sub)

    shifts = {n: max_weight_shift(x) for n, x in
              [("Y", bimodule_Y()), ("Q", bimodule_Q()),
               ("I", bimodule_I()), ("QY", qy), ("f", f), ("g", g)]}
    report["max_weight_shifts"] = shifts
    report["checks"]["single-step weight shift <= 4"] = \
        max(shifts.values()) <= 4
    report["pass"] = all(report["checks"].values())
    return report


# --- serialization ------------------------------------------------------

_IDEM_TOKEN = {FILLED: "filled", HOLLOW: "hollow"}
_TOKEN_IDEM = {v: k for k, v in _IDEM_TOKEN.items()}


def serialize_bimodule(bim: ADBimodule) -> str:
    lines = [f"bimodule {bim.name} {bim.a_flavor} {bim.d_flavor}"]
    for g in sorted(bim.gens.values(), key=lambda g: g.name):
        lines.append(f"gen {g.name} {_IDEM_TOKEN[g.left_idem]} "
                     f"{_IDEM_TOKEN[g.right_idem]} {g.hdeg}")
    for a in bim.actions:
        lines.append(f"act {a.src} {a.dst} {a}")
    return "\n".join(lines) + "\n"


def deserialize_bimodule(text: str) -> ADBimodule:
    name = a_flavor = d_flavor = None
    gens, actions = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 3)
        if parts[0] == "bimodule":
            name, a_flavor, d_flavor = parts[1:4]
        elif parts[0] == "gen":
            fields = line.split()
            gens.append(BimGen(fields[1], _TOKEN_IDEM[fields[2]],
                               _TOKEN_IDEM[fields[3]], int(fields[4])))
        elif parts[0] == "act":
            actions.append(_parse_action_line(parts[1], parts[2], parts[3]))
        else:
            raise ValueError(f"bad line: {raw!r}")
    return _mk_bim(name, a_flavor, d_flavor, gens, actions)


def _parse_action_line(src, dst, body) -> Action:
    m = re.match(r"^\(\s*(.*?)\s*\|\s*(\S+)\s*\)$", body)
    if not m:
        raise ValueError(f"bad action body {body!r}")
    ins_text, out_text = m.groups()
    if ins_text in ("", "-"):
        inputs = ()
    else:
        inputs = tuple(parse_pattern(t) for t in ins_text.split(","))
    return Action(src, dst, inputs, parse_pattern(out_text))
