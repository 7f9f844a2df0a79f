"""Large set of KTS(q^n + 2) on W + {inf1, inf2} from a large set of KTS(q + 2).

For every w in W the design B_w consists of

* the star class: for each line generator u_i, the blocks of class 0 of base
  design D_{p_i(w)}, scaled by u_i and shifted onto the coset w + K_i;
* one class per (i, a, b) with 0 <= a < t, b in {0, 1, 2}: the frame class
  P(g^a u_i, omega^b) shifted by w, with the hole w + K_i (plus the two
  infinities) filled from class a + b*t + 1 of D_{p_i(w)}.

The frame class P(u, c) is built plane by plane: inside a plane L through u
it holds the triples +-T(u, v) with f_L(u, v) in {c, g c, ..., g^(t-1) c},
where T(u, v) = {u + v, omega u + omega^2 v, omega^2 u + omega v}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .base_designs import BUILTINS, BaseLargeSet, load_base
from .galois import field_create, prime_power
from .geometry import PlaneBasis, Space


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ClassId:
    """Star class (line == 0) or frame-derived class (line i >= 1, a, b)."""

    line: int = 0
    a: int = 0
    b: int = 0

    @property
    def is_star(self) -> bool:
        return self.line == 0

    def base_index(self, t: int) -> int:
        return 0 if self.is_star else self.a + self.b * t + 1

    @classmethod
    def from_base_index(cls, line: int, j: int, t: int) -> ClassId:
        if j == 0:
            return STAR
        return cls(line, (j - 1) % t, (j - 1) // t)

    @property
    def token(self) -> str:
        return "*" if self.is_star else f"{self.line}.{self.a}.{self.b}"

    @classmethod
    def parse(cls, token: str) -> ClassId:
        if token == "*":
            return STAR
        try:
            i, a, b = (int(x) for x in token.split("."))
        except ValueError:
            raise ValueError(f"bad class id {token!r}") from None
        if i < 1:
            raise ValueError(f"bad class id {token!r}")
        return cls(i, a, b)

    def __str__(self) -> str:
        return self.token


STAR = ClassId()


def canonical(triples) -> np.ndarray:
    """Sort each triple, then sort the rows lexicographically."""
    t = np.sort(np.asarray(triples, dtype=np.int64).reshape(-1, 3), axis=1)
    return t[np.lexsort((t[:, 2], t[:, 1], t[:, 0]))]


@dataclass(frozen=True, eq=False)
class ParallelClass:
    id: ClassId
    triples: np.ndarray

    def as_set(self) -> set[tuple[int, int, int]]:
        return {tuple(int(x) for x in row) for row in self.triples}

    def __len__(self) -> int:
        return len(self.triples)


@dataclass(frozen=True, eq=False)
class Design:
    w: int
    classes: tuple[ParallelClass, ...]

    def blocks(self) -> np.ndarray:
        return np.concatenate([c.triples for c in self.classes])

    def by_id(self) -> dict[ClassId, ParallelClass]:
        return {c.id: c for c in self.classes}

    def same_as(self, other: Design) -> bool:
        """Same label, same class ids, same triples in every class."""
        if self.w != other.w or len(self.classes) != len(other.classes):
            return False
        mine = self.by_id()
        for c in other.classes:
            if c.id not in mine or not np.array_equal(mine[c.id].triples, c.triples):
                return False
        return True


class Construction:
    """Everything needed to build B_w for one base large set and dimension n."""

    def __init__(self, base: BaseLargeSet, n: int, coset_shift=None):
        """``coset_shift(i, r)`` optionally moves the coset representative r of
        K_i (zero in the pivot coordinate) to r + shift * u_i; the default
        transversal uses shift 0 everywhere.
        """
        if n < 1:
            raise ConstructionError("n must be at least 1")
        self.base = base
        self.field = base.field
        self.n = n
        self.space = Space(self.field, n)
        self.q = self.field.q
        self.t = self.field.t
        self._partial: dict[tuple[int, int, int], np.ndarray] = {}
        self.coset_shift = coset_shift

    @classmethod
    def from_spec(cls, q: int, n: int, base: str = "builtin:denniston15", g: int | None = None) -> Construction:
        """``base`` is ``builtin:<name>`` or a path to a base file."""
        p, k = prime_power(q)
        field = field_create(p, k, g)
        if base.startswith("builtin:"):
            name = base.split(":", 1)[1]
            if name not in BUILTINS:
                raise ConstructionError(f"unknown builtin base {name!r}")
            b = BUILTINS[name](field)
        else:
            with open(base, encoding="utf-8") as fh:
                b = load_base(fh, field)
        if b.q != q:
            raise ConstructionError(f"base is over GF({b.q}), not GF({q})")
        return cls(b, n)

    @property
    def order(self) -> int:
        return self.space.size + 2

    # -- the triple map -----------------------------------------------------

    def triples_T(self, u, v) -> np.ndarray:
        """Rows u+v, omega u + omega^2 v, omega^2 u + omega v (unsorted)."""
        S, w = self.space, self.field.omega
        w2 = self.field.mul(w, w)
        return np.stack([S.add(u, v), S.combine(w, u, w2, v), S.combine(w2, u, w, v)], axis=-1)

    def triple_T(self, u: int, v: int) -> tuple[int, int, int]:
        if not self.space.independent(u, v):
            raise ConstructionError("T(u, v) needs linearly independent u, v")
        return tuple(sorted(int(x) for x in self.triples_T(u, v)))

    # -- frame --------------------------------------------------------------

    def _power_coset(self, c: int) -> np.ndarray:
        F = self.field
        return np.array([F.mul(F.gexp(m), c) for m in range(self.t)], dtype=np.int64)

    def partial_class_plane(self, u: int, L: PlaneBasis, c: int) -> np.ndarray:
        """The q(q-1)/3 triples +-T(u, v), v in L, f_L(u, v) in {g^m c : 0 <= m < t}."""
        S = self.space
        if u == 0 or c == 0:
            raise ConstructionError("u and c must be nonzero")
        S.plane_coords(L, u)  # raises if u is not in L
        vs = L.points
        f = S.plane_form(L, np.full(vs.shape, u), vs)
        vs = vs[np.isin(f, self._power_coset(c))]
        tri = self.triples_T(np.full(vs.shape, u), vs)
        return canonical(np.concatenate([tri, S.neg(tri)]))

    def partial_class(self, i: int, a: int, b: int) -> np.ndarray:
        """P(g^a u_i, omega^b): (q^n - q)/3 triples partitioning W minus K_i."""
        key = (i, a, b)
        if key not in self._partial:
            if not (1 <= i <= len(self.space.lines) and 0 <= a < self.t and b in (0, 1, 2)):
                raise ConstructionError(f"class index {key} out of range")
            S, F = self.space, self.field
            u = int(S.scale(F.gexp(a), S.lines.u(i)))
            c = F.pow(F.omega, b)
            parts = [self.partial_class_plane(u, L, c) for L in S.planes_through(i)]
            arr = canonical(np.concatenate(parts)) if parts else np.zeros((0, 3), dtype=np.int64)
            arr.setflags(write=False)
            self._partial[key] = arr
        return self._partial[key]

    @cached_property
    def class_ids(self) -> tuple[ClassId, ...]:
        """Star first, then per line the classes in base-class order 1..(q-1)/2."""
        ids = [STAR]
        for i in range(1, len(self.space.lines) + 1):
            for j in range(1, (self.q - 1) // 2 + 1):
                ids.append(ClassId.from_base_index(i, j, self.t))
        return tuple(ids)

    def frame(self) -> dict[ClassId, np.ndarray]:
        return {cid: self.partial_class(cid.line, cid.a, cid.b) for cid in self.class_ids[1:]}

    # -- holes and full classes --------------------------------------------

    def coset_decompose(self, i: int, x: int) -> tuple[int, int]:
        """(r, p_i(x)) with x = r + p_i(x) u_i and r the chosen representative of x + K_i."""
        S = self.space
        r, c = S.pivot_decompose(i, x)
        if self.coset_shift is None:
            return r, c
        s = int(self.coset_shift(i, r)) % self.q
        F = self.field
        return int(S.add(r, S.scale(s, S.lines.u(i)))), F.sub(c, s)

    def _hole_map(self, i: int, w: int) -> tuple[int, np.ndarray]:
        """(p_i(w), array mapping base points to X via a -> w - p_i(w) u_i + a u_i)."""
        S = self.space
        r, d = self.coset_decompose(i, w)
        pts = S.add(np.full(self.q, r), S.line_points(i))
        return d, np.concatenate([pts, [S.inf1, S.inf2]])

    def _holes(self, i: int, w: int, j: int) -> np.ndarray:
        d, hmap = self._hole_map(i, w)
        return hmap[np.array(self.base.cls(d, j), dtype=np.int64)]

    def build_class(self, w: int, i: int, a: int, b: int) -> ParallelClass:
        frame = self.partial_class(i, a, b)
        moved = self.space.add(frame, np.int64(w)) if len(frame) else frame
        holes = self._holes(i, w, a + b * self.t + 1)
        return ParallelClass(ClassId(i, a, b), canonical(np.concatenate([moved, holes])))

    def build_star_class(self, w: int) -> ParallelClass:
        S = self.space
        parts = [self._holes(i, w, 0) for i in range(1, len(S.lines) + 1)]
        tri = np.unique(canonical(np.concatenate(parts)), axis=0)
        return ParallelClass(STAR, canonical(tri))

    def build_design(self, w: int, fast: bool = False) -> Design:
        """B_w. With ``fast``, translate B_0 instead (needs a translation-invariant base)."""
        if fast:
            if not self.base.translation_invariant:
                raise ConstructionError("translation fast path needs a translation-invariant base")
            return self.translate(self.design0, w)
        classes = [self.build_star_class(w)]
        classes += [self.build_class(w, c.line, c.a, c.b) for c in self.class_ids[1:]]
        return Design(int(w), tuple(classes))

    @cached_property
    def design0(self) -> Design:
        return self.build_design(0)

    def translate(self, design: Design, w: int) -> Design:
        """design + w (infinities fixed); class ids are kept."""
        tmap = self.space.translation(w)
        w_new = int(self.space.add(design.w, w))
        return Design(w_new, tuple(ParallelClass(c.id, canonical(tmap[c.triples])) for c in design.classes))

    def build_large_set(self, fast: bool | None = None) -> Iterator[Design]:
        """All q^n designs in lexicographic order of w."""
        if fast is None:
            fast = self.base.translation_invariant
        for w in range(self.space.size):
            yield self.build_design(w, fast=fast)

    # -- locating a triple ----------------------------------------------------

    def locate_triple(self, T) -> tuple[int, ClassId]:
        """The unique (w, class id) with T in that class of B_w."""
        S, F = self.space, self.field
        pts = sorted(int(x) for x in T)
        if len(pts) != 3 or len(set(pts)) != 3 or pts[0] < 0 or pts[2] > S.inf2:
            raise ConstructionError(f"not a triple of distinct points: {T!r}")
        fin = [x for x in pts if x < S.size]
        infs = [x for x in pts if x >= S.size]
        if len(infs) == 2:
            return fin[0], STAR
        lines = S.lines
        x, y = fin[0], fin[1]
        i = int(lines.line_of[S.sub(y, x)])
        collinear = len(infs) == 1 or int(lines.line_of[S.sub(fin[2], x)]) == i
        if collinear:
            r, _ = self.coset_decompose(i, x)
            proj = [self.coset_decompose(i, z)[1] for z in fin]
            proj += [self.q if z == S.inf1 else self.q + 1 for z in infs]
            d, j = self.base.block_index[tuple(sorted(proj))]
            w = int(S.add(r, S.scale(d, lines.u(i))))
            return w, ClassId.from_base_index(i, j, self.t)

        z = fin[2]
        three_inv = F.inv(F.three)
        w = int(S.scale(three_inv, S.add(S.add(x, y), z)))
        x1, y1 = int(S.sub(x, w)), int(S.sub(y, w))
        om = F.omega
        k = F.mul(F.sub(1, F.mul(om, om)), three_inv)  # (1 - omega^2)/3
        u0 = int(S.scale(k, S.sub(S.scale(om, x1), y1)))
        v0 = int(S.scale(k, S.sub(S.scale(om, y1), x1)))
        L = S.plane(x1, y1)
        e = F.discrete_log(S.plane_form(L, u0, v0))
        if (e // self.t) % 2:
            # T(u, v) = T(v, u) and f(v, u) = -f(u, v) = g^(3t) f(u, v)
            u0, v0 = v0, u0
            e = (e + 3 * self.t) % (self.q - 1)
        b = e // (2 * self.t)
        i = int(lines.line_of[u0])
        a = F.discrete_log(int(lines.scale_of[u0])) % self.t
        return w, ClassId(i, a, b)
