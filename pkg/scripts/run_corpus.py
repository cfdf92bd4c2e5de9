#!/usr/bin/env python3
"""Run the comparison pipeline over the built-in corpus (or given words).

Usage:
    python3 scripts/run_corpus.py              # built-in corpus
    python3 scripts/run_corpus.py "x1 x1" ...  # explicit tangle words
"""

import sys
import time

from khtangle import tangles


def main(argv):
    words = argv or list(tangles.CORPUS)
    worst = 0
    for text in words:
        t0 = time.time()
        try:
            word = tangles.parse_tangle(text)
        except tangles.TangleError as e:
            print(f"{text!r}: parse error: {e}")
            worst = max(worst, 64)
            continue
        verdict, info = tangles.compare(word)
        dt = time.time() - t0
        print(f"{text or '(empty)':30s} {verdict:13s} {dt:6.2f}s")
        worst = max(worst, {tangles.EQUIVALENT: 0,
                            tangles.INDETERMINATE: 2,
                            tangles.MISMATCH: 1}[verdict])
    return worst


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
