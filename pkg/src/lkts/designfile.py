"""Text files holding one design B_w.

Canonical format::

    DESIGN order=171 q=13 n=2 w=0:0 format=canonical
    * 0:0,inf1,inf2; 0:1,0:4,0:5; ...
    1.0.0 0:0,10:0,12:0; ...

One line per parallel class: the class id (``*`` for the star class, else
``line.a.b``), then the blocks separated by ``;``. Vector points are their
coordinates joined by ``:``.

``format=appendix`` (only for q = 13, n = 2) writes the point (a, b) as the
two characters ``ab`` with A, B, C for 10, 11, 12, and the infinities as
``XX`` and ``YY``.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .construction import ClassId, Design, ParallelClass, canonical
from .galois import field_for_order
from .geometry import Space

APPENDIX_DIGITS = "0123456789ABC"


class DesignFormatError(ValueError):
    pass


def appendix_token(space: Space, x: int) -> str:
    if x == space.inf1:
        return "XX"
    if x == space.inf2:
        return "YY"
    a, b = space.vec(x)
    return APPENDIX_DIGITS[a] + APPENDIX_DIGITS[b]


def parse_appendix_token(space: Space, tok: str) -> int:
    if tok == "XX":
        return space.inf1
    if tok == "YY":
        return space.inf2
    if len(tok) != 2 or any(ch not in APPENDIX_DIGITS for ch in tok):
        raise DesignFormatError(f"bad appendix point {tok!r}")
    return space.point((APPENDIX_DIGITS.index(tok[0]), APPENDIX_DIGITS.index(tok[1])))


def _check_appendix(space: Space) -> None:
    if space.q != 13 or space.n != 2:
        raise DesignFormatError("appendix format exists only for q=13, n=2")


def render_design(design: Design, space: Space, fmt: str = "canonical") -> str:
    if fmt == "appendix":
        _check_appendix(space)
        names = [appendix_token(space, x) for x in range(space.size + 2)]
    elif fmt == "canonical":
        names = space.labels
    else:
        raise DesignFormatError(f"unknown format {fmt!r}")
    t = space.field.t
    order = space.size + 2
    lines = [f"DESIGN order={order} q={space.q} n={space.n} w={space.label(design.w)} format={fmt}"]
    for cls in sorted(design.classes, key=lambda c: (c.id.line, c.id.base_index(t))):
        blocks = "; ".join(",".join(names[x] for x in row) for row in canonical(cls.triples).tolist())
        lines.append(f"{cls.id.token} {blocks}")
    return "\n".join(lines) + "\n"


def parse_design(text: str, space: Space | None = None) -> tuple[Design, Space, str]:
    """Inverse of :func:`render_design`; returns (design, space, format)."""
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or not rows[0].startswith("DESIGN"):
        raise DesignFormatError("missing DESIGN header")
    try:
        meta = dict(p.split("=", 1) for p in rows[0].split()[1:])
        q, n, order = int(meta["q"]), int(meta["n"]), int(meta["order"])
        fmt = meta.get("format", "canonical")
        wlabel = meta["w"]
    except (KeyError, ValueError) as exc:
        raise DesignFormatError(f"malformed header: {exc}") from None
    if q**n + 2 != order:
        raise DesignFormatError(f"order {order} does not match q^n + 2 = {q**n + 2}")
    if space is None or space.q != q or space.n != n:
        space = Space(field_for_order(q), n)
    if fmt == "appendix":
        _check_appendix(space)
        table = {appendix_token(space, x): x for x in range(space.size + 2)}

        def tok(s: str) -> int:
            if s not in table:
                raise DesignFormatError(f"bad appendix point {s!r}")
            return table[s]

    elif fmt == "canonical":
        tok = space.parse_label
    else:
        raise DesignFormatError(f"unknown format {fmt!r}")
    classes = []
    for lineno, row in enumerate(rows[1:], start=2):
        head, _, body = row.partition(" ")
        try:
            cid = ClassId.parse(head)
        except ValueError as exc:
            raise DesignFormatError(f"line {lineno}: {exc}") from None
        blocks = []
        for chunk in body.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            pts = [tok(s.strip()) for s in chunk.split(",")]
            if len(pts) != 3:
                raise DesignFormatError(f"line {lineno}: block {chunk!r} is not a triple")
            blocks.append(pts)
        arr = canonical(blocks) if blocks else np.zeros((0, 3), dtype=np.int64)
        classes.append(ParallelClass(cid, arr))
    return Design(space.parse_label(wlabel), tuple(classes)), space, fmt


def design_filename(space: Space, w: int) -> str:
    return "B_" + space.label(w).replace(":", "_") + ".txt"


def write_design(path: Path, design: Design, space: Space, fmt: str = "canonical") -> None:
    Path(path).write_text(render_design(design, space, fmt), encoding="utf-8")


def read_design(path: Path, space: Space | None = None) -> tuple[Design, Space, str]:
    return parse_design(Path(path).read_text(encoding="utf-8"), space)
