"""Input large sets of KTS(q+2) on Y = GF(q) + {inf1, inf2}.

Base points are ints: field elements ``0..q-1`` by their galois index, then
``q`` for inf1 and ``q + 1`` for inf2. Blocks are sorted 3-tuples, so the
infinities always sort last.

File format (UTF-8, line oriented, ``#`` starts a comment)::

    BASE-LKTS q=13 p=13 k=1 form=compact
    inf1,inf2,0; 1,4,5; 2,6,11; 3,7,10; 8,9,12
    ...

``form=compact`` lists the (q+1)/2 classes of design 0 only; design i is
design 0 shifted by the field element i. ``form=full`` has q sections, each
starting with a ``design <i>`` line followed by that design's class lines.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from itertools import combinations
from typing import Iterable, TextIO

import numpy as np

from .certificate import Certificate
from .galois import FieldTable, field_create, field_for_order
from .verifier import verify_resolution, verify_sts

Block = tuple[int, int, int]


class BaseFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True, eq=False)
class BaseLargeSet:
    """Large set {D_i} of KTS(q+2), each design split into ordered classes Q[i][j].

    With ``compact`` set only ``classes[0]`` is stored and
    ``Q[i][j] = Q[0][j] + i``.
    """

    field: FieldTable
    classes: tuple[tuple[tuple[Block, ...], ...], ...]
    compact: bool = False

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def inf1(self) -> int:
        return self.field.q

    @property
    def inf2(self) -> int:
        return self.field.q + 1

    @property
    def n_classes(self) -> int:
        return len(self.classes[0])

    def shift(self, block, i: int) -> Block:
        q, add = self.q, self.field.add_table
        return tuple(sorted(int(add[a, i]) if a < q else a for a in block))

    def cls(self, i: int, j: int) -> tuple[Block, ...]:
        if self.compact:
            return self._expanded[i][j]
        return self.classes[i][j]

    def design(self, i: int) -> tuple[tuple[Block, ...], ...]:
        return self._expanded[i]

    @cached_property
    def _expanded(self) -> tuple[tuple[tuple[Block, ...], ...], ...]:
        if not self.compact:
            return self.classes
        return tuple(
            tuple(tuple(sorted(self.shift(b, i) for b in c)) for c in self.classes[0]) for i in range(self.q)
        )

    def designs(self) -> tuple[tuple[tuple[Block, ...], ...], ...]:
        return self._expanded

    @cached_property
    def block_index(self) -> dict[Block, tuple[int, int]]:
        """Block -> (design i, class j). Assumes a valid large set."""
        out: dict[Block, tuple[int, int]] = {}
        for i, design in enumerate(self._expanded):
            for j, c in enumerate(design):
                for b in c:
                    out[b] = (i, j)
        return out

    @cached_property
    def translation_invariant(self) -> bool:
        if self.compact:
            return True
        d0 = self._expanded[0]
        return all(
            tuple(tuple(sorted(self.shift(b, i) for b in c)) for c in d0) == self._expanded[i]
            for i in range(self.q)
        )

    def to_compact(self) -> BaseLargeSet:
        if self.compact:
            return self
        if not self.translation_invariant:
            raise ValueError("base large set is not translation invariant")
        return BaseLargeSet(self.field, (self._expanded[0],), compact=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BaseLargeSet):
            return NotImplemented
        return self.q == other.q and self._expanded == other._expanded

    def __hash__(self):
        return hash((self.q, self._expanded))


def _canon(block) -> Block:
    b = tuple(sorted(int(x) for x in block))
    if len(b) != 3 or len(set(b)) != 3:
        raise BaseFormatError(f"block {block!r} does not have three distinct points")
    return b


DENNISTON15_Q0 = (
    ((13, 14, 0), (1, 4, 5), (2, 6, 11), (3, 7, 10), (8, 9, 12)),
    ((13, 1, 6), (14, 2, 8), (0, 10, 12), (3, 5, 9), (4, 7, 11)),
    ((13, 2, 5), (14, 4, 9), (0, 3, 11), (1, 7, 12), (6, 8, 10)),
    ((13, 3, 12), (14, 5, 7), (0, 4, 6), (1, 8, 11), (2, 9, 10)),
    ((13, 4, 10), (14, 11, 12), (0, 5, 8), (1, 2, 3), (6, 7, 9)),
    ((13, 7, 8), (14, 3, 6), (0, 1, 9), (2, 4, 12), (5, 10, 11)),
    ((13, 9, 11), (14, 1, 10), (0, 2, 7), (3, 4, 8), (5, 6, 12)),
)


def builtin_denniston15(field: FieldTable | None = None) -> BaseLargeSet:
    """Denniston's cyclic LKTS(15) over GF(13)."""
    field = field or field_create(13)
    if field.q != 13:
        raise ValueError("Denniston's LKTS(15) lives on GF(13)")
    classes = tuple(tuple(sorted(_canon(b) for b in c)) for c in DENNISTON15_Q0)
    return BaseLargeSet(field, (classes,), compact=True)


def builtin_lkts9(field: FieldTable | None = None) -> BaseLargeSet:
    """The shipped LKTS(9) over GF(7) (found by exhaustive search)."""
    text = resources.files("lkts.data").joinpath("lkts9.txt").read_text(encoding="utf-8")
    return loads_base(text, field)


BUILTINS = {"denniston15": builtin_denniston15, "lkts9": builtin_lkts9}


# -- text format ---------------------------------------------------------------


def _parse_point(tok: str, q: int, lineno: int) -> int:
    if tok == "inf1":
        return q
    if tok == "inf2":
        return q + 1
    try:
        v = int(tok)
    except ValueError:
        raise BaseFormatError(f"bad point token {tok!r}", lineno) from None
    if not 0 <= v < q:
        raise BaseFormatError(f"point {v} outside GF({q})", lineno)
    return v


def _parse_class(line: str, q: int, lineno: int) -> tuple[Block, ...]:
    blocks = []
    for chunk in line.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        pts = [_parse_point(t.strip(), q, lineno) for t in chunk.split(",")]
        if len(pts) != 3 or len(set(pts)) != 3:
            raise BaseFormatError(f"block {chunk!r} does not have three distinct points", lineno)
        blocks.append(tuple(sorted(pts)))
    return tuple(sorted(blocks))


def load_base(source: TextIO, field: FieldTable | None = None) -> BaseLargeSet:
    return loads_base(source.read(), field)


def loads_base(text: str, field: FieldTable | None = None) -> BaseLargeSet:
    header = None
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = (lineno, line)
        else:
            body.append((lineno, line))
    if header is None:
        raise BaseFormatError("empty base file")
    hline, htext = header
    parts = htext.split()
    if parts[0] != "BASE-LKTS":
        raise BaseFormatError("missing BASE-LKTS header", hline)
    try:
        meta = dict(p.split("=", 1) for p in parts[1:])
        q, p, k = int(meta["q"]), int(meta["p"]), int(meta["k"])
        form = meta.get("form", "full")
    except (KeyError, ValueError) as exc:
        raise BaseFormatError(f"malformed header: {exc}", hline) from None
    if p**k != q:
        raise BaseFormatError(f"q={q} is not p^k = {p}^{k}", hline)
    if q % 6 != 1:
        raise BaseFormatError(f"q={q} is not 1 mod 6", hline)
    if form not in ("compact", "full"):
        raise BaseFormatError(f"unknown form {form!r}", hline)
    if field is None:
        field = field_create(p, k)
    elif field.q != q:
        raise BaseFormatError(f"file is over GF({q}) but field is GF({field.q})", hline)
    n_classes = (q + 1) // 2

    def check_class(c, lineno):
        pts = [x for b in c for x in b]
        if len(pts) != q + 2:
            raise BaseFormatError(f"class covers {len(pts)} points, expected {q + 2}", lineno)

    if form == "compact":
        classes = []
        for lineno, line in body:
            c = _parse_class(line, q, lineno)
            check_class(c, lineno)
            classes.append(c)
        if len(body) != n_classes:
            raise BaseFormatError(f"expected {n_classes} class lines, found {len(body)}", hline)
        if (0, q, q + 1) not in classes[0]:
            raise BaseFormatError("block {inf1,inf2,0} must be on the first class line", body[0][0])
        return BaseLargeSet(field, (tuple(classes),), compact=True)

    designs: dict[int, list] = {}
    current = None
    for lineno, line in body:
        if line.startswith("design"):
            try:
                current = int(line.split()[1])
            except (IndexError, ValueError):
                raise BaseFormatError(f"bad design line {line!r}", lineno) from None
            if current in designs or not 0 <= current < q:
                raise BaseFormatError(f"bad or repeated design index {current}", lineno)
            designs[current] = []
            continue
        if current is None:
            raise BaseFormatError("class line before any 'design' line", lineno)
        c = _parse_class(line, q, lineno)
        check_class(c, lineno)
        designs[current].append(c)
    if sorted(designs) != list(range(q)):
        raise BaseFormatError(f"expected designs 0..{q - 1}, found {sorted(designs)}")
    for i, d in designs.items():
        if len(d) != n_classes:
            raise BaseFormatError(f"design {i} has {len(d)} classes, expected {n_classes}")
    return BaseLargeSet(field, tuple(tuple(designs[i]) for i in range(q)), compact=False)


def _fmt_point(x: int, q: int) -> str:
    return "inf1" if x == q else "inf2" if x == q + 1 else str(x)


def _fmt_class(c, q: int) -> str:
    return "; ".join(",".join(_fmt_point(x, q) for x in b) for b in c)


def dumps_base(base: BaseLargeSet, form: str | None = None) -> str:
    form = form or ("compact" if base.compact else "full")
    F = base.field
    lines = [f"BASE-LKTS q={F.q} p={F.p} k={F.k} form={form}"]
    if form == "compact":
        src = base.to_compact()
        lines += [_fmt_class(c, F.q) for c in src.classes[0]]
    else:
        for i, d in enumerate(base.designs()):
            lines.append(f"design {i}")
            lines += [_fmt_class(c, F.q) for c in d]
    return "\n".join(lines) + "\n"


# -- normalization and validation ----------------------------------------------


def normalize_base(raw, field: FieldTable | None = None) -> BaseLargeSet:
    """Reindex designs so design i holds {inf1, inf2, i} in its class 0.

    ``raw`` is a BaseLargeSet or a sequence of designs, each a sequence of
    classes of blocks. Remaining class order is kept. An already normalized
    BaseLargeSet is returned unchanged.
    """
    if isinstance(raw, BaseLargeSet):
        field = raw.field
        if all((i, raw.inf1, raw.inf2) in raw.cls(i, 0) for i in range(raw.q)):
            return raw
        raw = raw.designs()
    designs = [[tuple(sorted(_canon(b) for b in c)) for c in d] for d in raw]
    if field is None:
        field = field_for_order(len(designs))
    q = field.q
    slot: dict[int, list] = {}
    for pos, d in enumerate(designs):
        hits = [(j, b) for j, c in enumerate(d) for b in c if b[1:] == (q, q + 1)]
        if len(hits) != 1:
            raise ValueError(f"design at position {pos} holds {len(hits)} triples {{inf1, inf2, x}}")
        j, b = hits[0]
        x = b[0]
        if x in slot:
            raise ValueError(f"two designs contain {{inf1, inf2, {x}}}; not a large set")
        slot[x] = d[j:] + d[:j]
    missing = [x for x in range(q) if x not in slot]
    if missing:
        raise ValueError(f"no design contains {{inf1, inf2, {missing[0]}}}")
    return BaseLargeSet(field, tuple(tuple(slot[i]) for i in range(q)), compact=False)


class _Cls:
    def __init__(self, id, triples):
        self.id = id
        self.triples = triples


def validate_base(b: BaseLargeSet) -> Certificate:
    """Check every large-set invariant; failures carry a witness."""
    q = b.q
    N = q + 2
    cert = Certificate(f"base LKTS({N}) over GF({q})")
    designs = b.designs()
    cert.check("design_count", len(designs) == q, {"expected": q, "found": len(designs)})
    owner: dict[Block, int] = {}
    dup = None
    bad_res = bad_sts = bad_inf = None
    n_triples = 0
    for i, d in enumerate(designs):
        res = verify_resolution([_Cls((i, j), np.array(c)) for j, c in enumerate(d)], N)
        if not res.passed and bad_res is None:
            f = res.failed()[0]
            bad_res = {"design": i, "check": f.name, "witness": f.witness}
        blocks = [blk for c in d for blk in c]
        sts = verify_sts(np.array(blocks), N)
        if not sts.passed and bad_sts is None:
            f = sts.failed()[0]
            bad_sts = {"design": i, "check": f.name, "witness": f.witness}
        if (not d or (i, q, q + 1) not in d[0]) and bad_inf is None:
            where = [j for j, c in enumerate(d) if (i, q, q + 1) in c]
            bad_inf = {"design": i, "triple": (i, "inf1", "inf2"), "found_in_class": where[0] if where else None}
        for blk in blocks:
            n_triples += 1
            if blk in owner and owner[blk] != i and dup is None:
                dup = {"triple": blk, "designs": (owner[blk], i)}
            owner.setdefault(blk, i)
    cert.check("classes_are_parallel", bad_res is None, bad_res)
    cert.check("designs_are_sts", bad_sts is None, bad_sts)
    cert.check("inf_triple_in_class_0", bad_inf is None, bad_inf)
    cert.check("designs_disjoint", dup is None, dup)
    total = len(owner)
    missing = None
    if total != N * (N - 1) * (N - 2) // 6:
        for t in combinations(range(N), 3):
            if t not in owner:
                missing = t
                break
    cert.check("covers_all_triples", missing is None and total == N * (N - 1) * (N - 2) // 6, {"missing": missing})
    cert.counts = {
        "designs": len(designs),
        "classes_per_design": len(designs[0]) if designs else 0,
        "triples_per_class": len(designs[0][0]) if designs and designs[0] else 0,
        "triples_per_design": (q + 2) * (q + 1) // 6,
        "total_triples": n_triples,
        "distinct_triples": total,
    }
    return cert


def iter_base_blocks(b: BaseLargeSet) -> Iterable[tuple[int, int, Block]]:
    for i, d in enumerate(b.designs()):
        for j, c in enumerate(d):
            for blk in c:
                yield i, j, blk
