#!/usr/bin/env python3
"""Sweep seeded spaces through the whole pipeline and tabulate the outcome.

For every generated space: build the section algebra, validate it, run both
round-trip isomorphisms, the pullback decomposition check, and (when the
algebra is right-handed) the lattice-section equivalence.
"""

import argparse
import sys
import time

from skewstone import (
    algebra_roundtrip_iso,
    dual_algebra,
    handedness,
    random_space,
    second_decomposition_check,
    section_equivalence_check,
    space_roundtrip_iso,
    validate_algebra,
)

KINDS = ("none", "right", "left", ("product", 2, 1), ("product", 2, 2))


def survey(count, base_seed, size_b, max_fiber):
    rows = []
    for i in range(count):
        kind = KINDS[i % len(KINDS)]
        sp = random_space(1 + i % size_b, max_fiber, seed=base_seed + i, band=kind)
        A, _ = dual_algebra(sp)
        t0 = time.perf_counter()
        ok_valid = validate_algebra(A, max_n=256).ok
        algebra_roundtrip_iso(A)
        space_roundtrip_iso(sp)
        ok_decomp = second_decomposition_check(A)
        hand = handedness(A)
        ok_section = (section_equivalence_check(A)
                      if hand in ("right", "commutative") else None)
        rows.append((base_seed + i, str(kind), sp.size_e, A.n, hand,
                     ok_valid, ok_decomp, ok_section, time.perf_counter() - t0))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--size-b", type=int, default=3)
    parser.add_argument("--max-fiber", type=int, default=3)
    args = parser.parse_args(argv)
    rows = survey(args.count, args.seed, args.size_b, args.max_fiber)
    header = f"{'seed':>6} {'band':<18} {'|E|':>4} {'|A|':>4} {'hand':<12} valid decomp section    t"
    print(header)
    print("-" * len(header))
    bad = 0
    for seed, kind, size_e, n, hand, ok_valid, ok_decomp, ok_section, dt in rows:
        sec = "-" if ok_section is None else ("yes" if ok_section else "NO")
        line_ok = ok_valid and ok_decomp and ok_section in (None, True)
        bad += not line_ok
        print(f"{seed:>6} {kind:<18} {size_e:>4} {n:>4} {hand:<12} "
              f"{'yes' if ok_valid else 'NO':>5} {'yes' if ok_decomp else 'NO':>6} "
              f"{sec:>7} {dt * 1000:>5.0f}ms")
    print(f"\n{len(rows)} instances, {bad} failures")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
