#!/usr/bin/env python3
"""Exhaustive symbolic verification over all classes up to a given depth.

For every projection order up to --depth this checks, with exact
arithmetic, that (a) the zeroth-order average equals the composed
projection maps, (b) the composition lemma holds with each axis as the
outer projection, and (c) the structural properties (uniform odd sites,
half repetition) hold. Prints one line per order.
"""

import argparse
import itertools
import sys

from cpdd.pauli import PauliAxis
from cpdd.sequence import (
    check_half_repeat,
    check_odd_sites,
    cpdd_from_order,
    projection,
)
from cpdd.symbolic import (
    avg_h0,
    h0_generic,
    project0,
    toggling_frames,
    verify_lemma1,
)

AXES = [PauliAxis.X, PauliAxis.Y, PauliAxis.Z]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=3, help="max projection count")
    ap.add_argument("--quiet", action="store_true", help="print failures only")
    args = ap.parse_args(argv)

    failures = 0
    total = 0
    for depth in range(1, args.depth + 1):
        for order in itertools.product(AXES, repeat=depth):
            total += 1
            seq = cpdd_from_order(order)
            predicted = h0_generic()
            for axis in order:
                predicted = project0(axis, predicted)
            ok_zeroth = avg_h0(toggling_frames(seq, h0_generic())) == predicted
            ok_lemma = all(
                verify_lemma1(projection(axis), seq) for axis in AXES
            )
            ok_structure = check_odd_sites(seq) and check_half_repeat(seq)
            ok = ok_zeroth and ok_lemma and ok_structure
            failures += not ok
            if not ok or not args.quiet:
                text = "".join(a.name.lower() for a in order)
                cls = seq.cpdd_class
                status = "ok" if ok else "FAIL"
                print(
                    f"{status}  order={text:<8} class={cls} K={cls.K:<4} "
                    f"N={cls.N}  zeroth={ok_zeroth} lemma={ok_lemma} "
                    f"structure={ok_structure}"
                )
    print(f"{total - failures}/{total} orders verified")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
