"""Command-line front door for the verification and computation suite.

Exit codes: 0 = pass/equivalent, 1 = violations or mismatch,
2 = indeterminate, 64 = usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import acat, bimod, cones, dstruct, functor, tangles
from .algebra import Vertex

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INDET = 2
EXIT_USAGE = 64

BOUND_ENV = "KHTANGLE_BOUND"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_USAGE)


def _default_bound():
    raw = os.environ.get(BOUND_ENV)
    return int(raw) if raw else 16


def build_parser():
    p = _Parser(prog="khtangle",
                description="Exact verification engine for two "
                            "cube-of-resolutions tangle invariants.")
    p.add_argument("--json", action="store_true",
                   help="emit the run report as JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name):
        lp = parent.add_parser(name)
        # accepted after the subcommand too; SUPPRESS keeps a value
        # given before the subcommand from being overwritten
        lp.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS)
        return lp

    ver = sub.add_parser("verify")
    vsub = ver.add_subparsers(dest="check", required=True, parser_class=_Parser)
    va = leaf(vsub, "algebra-a")
    va.add_argument("--max-len", type=int, default=5)
    va.add_argument("--table", default=None,
                    help="path to an alternative mu-table file")
    vf = leaf(vsub, "functor")
    vf.add_argument("--max-len", type=int, default=6)
    vb = leaf(vsub, "bimodules")
    vb.add_argument("--bound", type=int, default=_default_bound())
    vb.add_argument("--margin", type=int, default=8)
    vh = leaf(vsub, "homology-c")
    vh.add_argument("--max-weight", type=int, default=10)

    comp = sub.add_parser("compute")
    csub = comp.add_subparsers(dest="what", required=True, parser_class=_Parser)
    for what in ("dd1", "lt"):
        cc = leaf(csub, what)
        _tangle_args(cc)

    cmp_ = leaf(sub, "compare")
    _tangle_args(cmp_)

    leaf(sub, "corpus")
    return p


def _tangle_args(p):
    p.add_argument("--tangle", required=True)
    p.add_argument("--star", choices=tangles.STAR_CHOICES, default="nw")
    p.add_argument("--max-crossings", type=int,
                   default=tangles.MAX_CROSSINGS)


def _report(args, config, verdict, violations, extra=None, payload=None,
            t0=None):
    rep = {
        "command": " ".join(sys.argv[1:]) or args.command,
        "config": config,
        "verdict": verdict,
        "violations": violations,
        "wall_time_s": round(time.time() - t0, 3) if t0 else None,
    }
    if extra:
        rep.update(extra)
    if args.json:
        print(json.dumps(rep, indent=2, default=str))
    else:
        print(f"== {rep['command']}")
        for k, v in config.items():
            print(f"   {k} = {v}")
        if extra:
            for k, v in extra.items():
                print(f"   {k}: {v}")
        if payload is not None:
            print(payload, end="")
        for v in violations[:20]:
            print(f"   violation: {v}")
        if len(violations) > 20:
            print(f"   ... and {len(violations) - 20} more")
        print(f"{verdict}  ({rep['wall_time_s']}s)")
    return rep


def main(argv=None):
    args = build_parser().parse_args(argv)
    t0 = time.time()

    if args.command == "verify" and args.check == "algebra-a":
        tables = acat.load_tables(args.table)
        bad = acat.verify_ainfty(tables, args.max_len)
        bad += acat.verify_subalgebra(tables)
        verdict = "PASS" if not bad else "FAIL"
        _report(args, {"max_len": args.max_len}, verdict,
                [" ".join(s if isinstance(s, str) else str(s) for s in b)
                 for b in bad],
                extra={"sequences": sum(
                    len(acat.composable_sequences(n))
                    for n in range(3, args.max_len + 1))}, t0=t0)
        return EXIT_PASS if not bad else EXIT_FAIL

    if args.command == "verify" and args.check == "functor":
        bad, checked = functor.verify_functor(max_len=args.max_len)
        verdict = "PASS" if not bad else "FAIL"
        _report(args, {"max_len": args.max_len}, verdict,
                [_functor_violation(seq) for seq in bad],
                extra={"sequences": checked}, t0=t0)
        return EXIT_PASS if not bad else EXIT_FAIL

    if args.command == "verify" and args.check == "bimodules":
        if args.bound <= args.margin:
            sys.stderr.write("error: --bound must exceed --margin\n")
            return EXIT_USAGE
        rep = bimod.verify_lemma_main(args.bound, args.margin)
        verdict = "PASS" if rep["pass"] else "FAIL"
        _report(args, {"bound": args.bound, "margin": args.margin}, verdict,
                [k for k, ok in rep["checks"].items() if not ok],
                extra={"checks": rep["checks"],
                       "max_weight_shifts": rep["max_weight_shifts"]}, t0=t0)
        return EXIT_PASS if rep["pass"] else EXIT_FAIL

    if args.command == "verify" and args.check == "homology-c":
        rep = functor.verify_quasi_iso(args.max_weight)
        verdict = "PASS" if rep["pass"] else "FAIL"
        dims = {f"Hom(L{s},L{d})": {w: n for w, n in v.items() if n}
                for (s, d), v in rep["dims"].items()}
        _report(args, {"max_weight": args.max_weight}, verdict,
                rep["failures"], extra={"homology_dims": dims}, t0=t0)
        return EXIT_PASS if rep["pass"] else EXIT_FAIL

    if args.command == "compute":
        word = _parse_word_or_exit(args)
        fn = (tangles.compute_dd1 if args.what == "dd1"
              else tangles.compute_lt_image)
        try:
            m = fn(word, args.star, args.max_crossings)
        except tangles.TangleError as e:
            sys.stderr.write(f"error: {e}\n")
            return EXIT_USAGE
        text = dstruct.serialize(m)
        if args.json:
            print(json.dumps({"tangle": str(word), "what": args.what,
                              "structure": text}))
        else:
            print(text, end="")
        return EXIT_PASS

    if args.command == "compare":
        word = _parse_word_or_exit(args)
        try:
            verdict, info = tangles.compare(word, args.star,
                                            args.max_crossings)
        except tangles.TangleError as e:
            sys.stderr.write(f"error: {e}\n")
            return EXIT_USAGE
        _report(args, {"tangle": args.tangle, "star": args.star}, verdict,
                [], extra={"witness" if verdict == tangles.EQUIVALENT
                           else "diagnostic": info}, t0=t0)
        return {tangles.EQUIVALENT: EXIT_PASS,
                tangles.MISMATCH: EXIT_FAIL,
                tangles.INDETERMINATE: EXIT_INDET}[verdict]

    if args.command == "corpus":
        verdicts = {}
        worst = EXIT_PASS
        for w in tangles.CORPUS:
            verdict, _ = tangles.compare(tangles.parse_tangle(w))
            verdicts[w or "(empty)"] = verdict
            code = {tangles.EQUIVALENT: EXIT_PASS,
                    tangles.MISMATCH: EXIT_FAIL,
                    tangles.INDETERMINATE: EXIT_INDET}[verdict]
            worst = max(worst, code)
        overall = ("EQUIVALENT" if worst == EXIT_PASS else
                   "MISMATCH" if worst == EXIT_FAIL else "INDETERMINATE")
        _report(args, {"entries": len(tangles.CORPUS)}, overall,
                [w for w, v in verdicts.items() if v != tangles.EQUIVALENT],
                extra={"verdicts": verdicts}, t0=t0)
        return worst

    return EXIT_USAGE


def _parse_word_or_exit(args):
    try:
        return tangles.parse_tangle(args.tangle)
    except tangles.TangleError as e:
        sys.stderr.write(f"error: {e}\n")
        sys.exit(EXIT_USAGE)


def _functor_violation(seq):
    from . import functor as _f
    tables = _f.default_tables()
    mu = acat.load_tables()
    defect = _f._checker(tables, mu)(seq)
    return f"{' '.join(seq)}: defect {sorted(map(str, defect))}"


if __name__ == "__main__":
    sys.exit(main())
