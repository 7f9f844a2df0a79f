"""Brute-force oracles written directly from the definitions.

They use plain coordinate tuples and modular integer arithmetic, so they only
cover prime fields, which is all the tests need.
"""
from __future__ import annotations

import itertools
from pathlib import Path


def read_blocks(path: Path, space) -> set[tuple[int, int, int]]:
    """Blocks written one per line as space separated labels."""
    out = set()
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].split()
        if line:
            out.add(tuple(sorted(space.parse_label(tok) for tok in line)))
    return out


def vectors(q: int, n: int):
    return list(itertools.product(range(q), repeat=n))


def independent(x, y, q: int) -> bool:
    n = len(x)
    return any((x[i] * y[j] - x[j] * y[i]) % q for i in range(n) for j in range(i + 1, n))


def zero_sum_noncollinear(q: int, n: int) -> set[frozenset]:
    """All {x, y, -x-y} with x, y independent, as frozensets of coordinate tuples."""
    out = set()
    vs = vectors(q, n)
    for x, y in itertools.combinations(vs, 2):
        if independent(x, y, q):
            z = tuple((-a - b) % q for a, b in zip(x, y))
            out.add(frozenset((x, y, z)))
    return out


def T(u, v, q: int, omega: int):
    w2 = omega * omega % q
    return frozenset(
        (
            tuple((a + b) % q for a, b in zip(u, v)),
            tuple((omega * a + w2 * b) % q for a, b in zip(u, v)),
            tuple((w2 * a + omega * b) % q for a, b in zip(u, v)),
        )
    )
