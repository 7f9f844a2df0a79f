"""Exhaustive-search oracle for a large set of KTS(9) on GF(7) + {inf1, inf2}.

Standalone: uses nothing from the package except the final normalization and
serialization. Points are 0..6 (GF(7)), 7 = inf1, 8 = inf2.

    python -m tests.oracles.lkts9_search > src/lkts/data/lkts9.txt
"""
from __future__ import annotations

import sys
from itertools import combinations

POINTS = range(9)
TRIPLES = list(combinations(POINTS, 3))
TRIPLE_BIT = {t: 1 << k for k, t in enumerate(TRIPLES)}


def all_sts9() -> list[tuple[tuple[int, int, int], ...]]:
    """Every STS(9) on 9 labelled points (there are 840)."""
    out = []
    pairs_all = list(combinations(POINTS, 2))

    def rec(covered: set, blocks: list):
        free = next((p for p in pairs_all if p not in covered), None)
        if free is None:
            out.append(tuple(sorted(blocks)))
            return
        a, b = free
        for c in POINTS:
            if c in (a, b):
                continue
            t = tuple(sorted((a, b, c)))
            new = {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])}
            if new & covered:
                continue
            blocks.append(t)
            rec(covered | new, blocks)
            blocks.pop()

    rec(set(), [])
    return sorted(set(out))


def resolve(blocks) -> list[list[tuple[int, int, int]]]:
    """Split 12 blocks into 4 parallel classes (the first found, deterministic)."""
    blocks = sorted(blocks)

    def rec(remaining, classes):
        if not remaining:
            return classes
        first = remaining[0]
        rest = [b for b in remaining[1:] if not set(b) & set(first)]
        for x, y in combinations(rest, 2):
            if set(x) & set(y):
                continue
            cls = [first, x, y]
            left = [b for b in remaining if b not in cls]
            found = rec(left, classes + [cls])
            if found:
                return found
        return None

    found = rec(blocks, [])
    if found is None:
        raise RuntimeError("STS(9) without a resolution")
    return found


def large_set(systems) -> list[int]:
    """Indices of 7 pairwise disjoint systems covering all 84 triples."""
    masks = [sum(TRIPLE_BIT[t] for t in s) for s in systems]
    containing = {t: [k for k, s in enumerate(systems) if t in s] for t in TRIPLES}
    full = (1 << len(TRIPLES)) - 1

    def rec(used: int, chosen: list[int]):
        if used == full:
            return list(chosen)
        best = None
        for t in TRIPLES:
            if used & TRIPLE_BIT[t]:
                continue
            cands = [k for k in containing[t] if not masks[k] & used]
            if best is None or len(cands) < len(best[1]):
                best = (t, cands)
                if not cands:
                    return None
        for k in best[1]:
            chosen.append(k)
            res = rec(used | masks[k], chosen)
            if res:
                return res
            chosen.pop()
        return None

    found = rec(0, [])
    if found is None:
        raise RuntimeError("no large set found")
    return found


def search():
    systems = all_sts9()
    picked = large_set(systems)
    return [resolve(systems[k]) for k in picked], len(systems)


def main() -> int:
    from lkts.base_designs import dumps_base, normalize_base, validate_base
    from lkts.galois import field_create

    designs, count = search()
    base = normalize_base(designs, field_create(7))
    cert = validate_base(base)
    if not cert.passed:
        sys.stderr.write(cert.render())
        return 1
    sys.stdout.write(f"# LKTS(9) on GF(7) + {{inf1, inf2}} from exhaustive search over all {count} STS(9)\n")
    sys.stdout.write(dumps_base(base, "full"))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
