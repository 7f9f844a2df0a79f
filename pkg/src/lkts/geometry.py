"""The vector space W = GF(q)^n and the small amount of subspace geometry the
construction needs: lines through the origin, planes through a line, one
alternating form per plane, and a coset decomposition per line.

Points of W are ints in ``[0, q**n)``; the coordinates ``(c_0, ..., c_{n-1})``
are read as base-q digits with ``c_0`` most significant, so integer order is
lexicographic coordinate order. The extended point set adds ``inf1 = q**n``
and ``inf2 = q**n + 1``.

Lines are numbered from 1 (``u_1`` is the first generator), matching the
usual ``u_i`` notation for line generators.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .galois import FieldTable


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class LineIndex:
    """Normalized generators, one per 1-dimensional subspace.

    Each generator has last nonzero coordinate 1. Order: by the position of
    that coordinate, then lexicographically.
    """

    generators: tuple[int, ...]
    pivots: tuple[int, ...]
    # for every point x != 0: the 1-based line number and the scale s with x = s * u
    line_of: np.ndarray
    scale_of: np.ndarray

    def __len__(self) -> int:
        return len(self.generators)

    def u(self, i: int) -> int:
        return self.generators[i - 1]

    def pivot(self, i: int) -> int:
        return self.pivots[i - 1]


@dataclass(frozen=True)
class PlaneBasis:
    """A 2-dimensional subspace given by its reduced row echelon basis."""

    b1: int
    b2: int
    pivots: tuple[int, int]
    points: np.ndarray  # all q^2 members, index alpha*q + beta -> alpha*b1 + beta*b2


class Space:
    def __init__(self, field: FieldTable, n: int):
        if n < 1:
            raise GeometryError("dimension must be at least 1")
        self.field = field
        self.n = n
        self.q = field.q
        self.size = self.q**n
        self.inf1 = self.size
        self.inf2 = self.size + 1
        self.weights = self.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
        idx = np.arange(self.size, dtype=np.int64)
        self.coords = (idx[:, None] // self.weights[None, :]) % self.q
        self.coords.setflags(write=False)
        self._planes: dict[int, tuple[PlaneBasis, ...]] = {}

    def __repr__(self) -> str:
        return f"Space(q={self.q}, n={self.n})"

    # -- points -------------------------------------------------------------

    def encode(self, coords) -> int | np.ndarray:
        c = np.asarray(coords, dtype=np.int64)
        out = c @ self.weights
        return int(out) if out.ndim == 0 else out

    def point(self, coords) -> int:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.n or any(not 0 <= c < self.q for c in coords):
            raise GeometryError(f"bad coordinates {coords!r} for {self!r}")
        return int(self.encode(coords))

    def vec(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords[x])

    def is_finite(self, x: int) -> bool:
        return 0 <= x < self.size

    @cached_property
    def labels(self) -> tuple[str, ...]:
        """Text label of every extended point: coordinates joined by ':', then inf1, inf2."""
        out = [":".join(str(int(c)) for c in row) for row in self.coords]
        return tuple(out + ["inf1", "inf2"])

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: k for k, lab in enumerate(self.labels)}

    def label(self, x: int) -> str:
        return self.labels[x]

    def parse_label(self, token: str) -> int:
        token = token.strip()
        try:
            return self._label_index[token]
        except KeyError:
            pass
        try:
            return self.point(int(c) for c in token.split(":"))
        except ValueError as exc:
            raise GeometryError(f"bad point label {token!r}") from exc

    # -- linear algebra on point indices (scalars or arrays) ----------------

    def add(self, x, y):
        F = self.field
        return self.encode(F.add_table[self.coords[x], self.coords[y]])

    def neg(self, x):
        return self.encode(self.field.neg_table[self.coords[x]])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scale(self, c, x):
        """c * x; c may be a scalar or an array broadcasting against x."""
        c = np.asarray(c)
        if c.ndim:
            c = c[..., None]
        return self.encode(self.field.mul_table[c, self.coords[x]])

    def combine(self, a, x, b, y):
        """a*x + b*y."""
        return self.add(self.scale(a, x), self.scale(b, y))

    def translation(self, w: int) -> np.ndarray:
        """Map on extended points: x -> x + w for finite x, infinities fixed."""
        out = np.empty(self.size + 2, dtype=np.int64)
        out[: self.size] = self.add(np.arange(self.size), np.full(self.size, w))
        out[self.size :] = (self.inf1, self.inf2)
        return out

    def independent(self, x: int, y: int) -> bool:
        if x == 0 or y == 0:
            return False
        return int(self.lines.line_of[x]) != int(self.lines.line_of[y])

    # -- lines --------------------------------------------------------------

    def normalize_direction(self, v: int) -> tuple[int, int]:
        """Return (generator, scale) with v == scale * generator.

        The generator is v rescaled to have last nonzero coordinate 1.
        """
        if not 0 < v < self.size:
            raise GeometryError("cannot normalize the zero vector")
        c = self.coords[v]
        s = int(c[np.nonzero(c)[0][-1]])
        return int(self.scale(self.field.inv(s), v)), s

    @cached_property
    def lines(self) -> LineIndex:
        gens, pivots = [], []
        for j in range(self.n):
            # free coordinates before j, 1 at j, zeros after
            for head in np.ndindex(*([self.q] * j)):
                gens.append(self.point(tuple(head) + (1,) + (0,) * (self.n - j - 1)))
                pivots.append(j)
        line_of = np.zeros(self.size, dtype=np.int64)
        scale_of = np.zeros(self.size, dtype=np.int64)
        nonzero = np.arange(1, self.q)
        for i, u in enumerate(gens, start=1):
            pts = self.scale(nonzero, np.full(self.q - 1, u))
            if np.any(line_of[pts]):
                raise GeometryError("generators are not pairwise independent")
            line_of[pts] = i
            scale_of[pts] = nonzero
        for arr in (line_of, scale_of):
            arr.setflags(write=False)
        return LineIndex(tuple(gens), tuple(pivots), line_of, scale_of)

    def line_points(self, i: int) -> np.ndarray:
        """All q multiples of u_i (the subspace K_i)."""
        return self.scale(np.arange(self.q), np.full(self.q, self.lines.u(i)))

    def pivot_decompose(self, i: int, x):
        """Split x = r + c*u_i with r zero in the pivot coordinate of u_i.

        Returns (r, c); works elementwise on arrays.
        """
        j = self.lines.pivot(i)
        c = self.coords[x, j]
        r = self.sub(x, self.scale(c, np.broadcast_to(self.lines.u(i), np.shape(x))))
        if np.ndim(x) == 0:
            return int(r), int(c)
        return r, c

    # -- planes -------------------------------------------------------------

    def _rref2(self, x: int, y: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, int]]:
        F = self.field
        rows = [list(self.vec(x)), list(self.vec(y))]
        pivots = []
        r = 0
        for col in range(self.n):
            if r == 2:
                break
            sel = next((k for k in range(r, 2) if rows[k][col]), None)
            if sel is None:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            inv = F.inv(rows[r][col])
            rows[r] = [F.mul(inv, a) for a in rows[r]]
            other = 1 - r
            f = rows[other][col]
            if f:
                rows[other] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[other], rows[r])]
            pivots.append(col)
            r += 1
        if r < 2:
            raise GeometryError("vectors do not span a plane")
        return tuple(rows[0]), tuple(rows[1]), (pivots[0], pivots[1])

    def plane(self, x: int, y: int) -> PlaneBasis:
        """Canonical basis of span(x, y)."""
        r1, r2, piv = self._rref2(x, y)
        b1, b2 = self.point(r1), self.point(r2)
        a = np.repeat(np.arange(self.q), self.q)
        b = np.tile(np.arange(self.q), self.q)
        pts = self.combine(a, np.full(a.shape, b1), b, np.full(b.shape, b2))
        pts.setflags(write=False)
        return PlaneBasis(b1, b2, piv, pts)

    def planes_through(self, i: int) -> tuple[PlaneBasis, ...]:
        """All planes containing the line K_i, ordered by canonical basis."""
        if i not in self._planes:
            u = self.lines.u(i)
            seen: dict[tuple[int, int], PlaneBasis] = {}
            covered = np.zeros(self.size, dtype=bool)
            covered[self.line_points(i)] = True
            for v in self.lines.generators:
                if covered[v]:
                    continue
                L = self.plane(u, v)
                seen[(L.b1, L.b2)] = L
                covered[L.points] = True
            self._planes[i] = tuple(seen[key] for key in sorted(seen))
        return self._planes[i]

    def plane_coords(self, L: PlaneBasis, x):
        """Coordinates of x in the canonical basis of L."""
        p1, p2 = L.pivots
        x1, x2 = self.coords[x, p1], self.coords[x, p2]
        back = self.combine(x1, np.broadcast_to(L.b1, np.shape(x)), x2, np.broadcast_to(L.b2, np.shape(x)))
        if np.any(back != x):
            raise GeometryError("point is not in the plane")
        return x1, x2

    def plane_form(self, L: PlaneBasis, x, y):
        """The alternating form x1*y2 - x2*y1 in L's canonical coordinates."""
        F = self.field
        x1, x2 = self.plane_coords(L, x)
        y1, y2 = self.plane_coords(L, y)
        out = F.add_table[F.mul_table[x1, y2], F.neg_table[F.mul_table[x2, y1]]]
        return int(out) if np.ndim(out) == 0 else out

    # -- scaling base triples into lines -----------------------------------

    def ext_scale(self, block, u: int) -> tuple[int, ...]:
        """Map a block on GF(q) + {inf1, inf2} into X via a -> a*u.

        Base points use q and q+1 for the infinities; the result uses this
        space's inf1/inf2.
        """
        if u == 0:
            raise GeometryError("cannot scale by the zero vector")
        q = self.q
        out = []
        for a in block:
            if a == q:
                out.append(self.inf1)
            elif a == q + 1:
                out.append(self.inf2)
            else:
                out.append(int(self.scale(a, u)))
        return tuple(sorted(out))
