"""Command line entry point: ``lkts <command> ...``."""
from __future__ import annotations

import argparse
import glob
import sys
from pathlib import Path

from .base_designs import BUILTINS, load_base, validate_base
from .certificate import Certificate
from .construction import Construction, ConstructionError
from .designfile import DesignFormatError, design_filename, read_design, write_design
from .galois import FieldError, field_create, prime_power
from .verifier import cross_check_locate, verify_counts, verify_kts, verify_large_set, verify_sts


def _field_from_args(q: int, k: int | None):
    p, kk = prime_power(q)
    if k is not None and k != kk:
        raise FieldError(f"q={q} is {p}^{kk}, not a {k}-th power")
    return field_create(p, kk)


def cmd_info(args) -> int:
    F = _field_from_args(args.q, args.k)
    print(f"q: {F.q}")
    print(f"p: {F.p}")
    print(f"k: {F.k}")
    print(f"modulus: {' '.join(str(c) for c in F.modulus)}  (coefficients, constant term first)")
    print(f"g: {F.g}")
    print(f"omega: {F.omega}")
    print(f"t: {F.t}")
    return 0


def _construction(args) -> Construction:
    return Construction.from_spec(args.q, args.n, args.base)


def cmd_construct(args) -> int:
    ctx = _construction(args)
    S = ctx.space
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.all:
        designs = ctx.build_large_set()
    else:
        designs = [ctx.build_design(S.parse_label(args.w), fast=ctx.base.translation_invariant)]
    count = 0
    for d in designs:
        write_design(out / design_filename(S, d.w), d, S, args.format)
        count += 1
    print(f"wrote {count} design file(s) to {out}")
    return 0


def cmd_verify(args) -> int:
    paths = sorted(glob.glob(args.files))
    if not paths:
        print(f"no files match {args.files!r}", file=sys.stderr)
        return 2
    space = None
    designs = []
    for p in paths:
        d, space, _ = read_design(Path(p), space)
        designs.append(d)
    N = space.size + 2
    if args.level == "lkts":
        cert = verify_large_set(designs, N, subject=f"LKTS({N}) from {len(paths)} file(s)")
    else:
        cert = Certificate(f"{args.level.upper()} check of {len(paths)} file(s)")
        for p, d in zip(paths, designs):
            if args.level == "kts":
                sub = verify_kts(d, N)
            else:
                sub = verify_sts(d.blocks(), N)
            cert.merge(sub, f"{Path(p).name}.")
        cert.counts = {"files": len(paths), "points": N}
    sys.stdout.write(cert.render())
    return 0 if cert.passed else 1


def _load_base_arg(source: str):
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in BUILTINS:
            raise ConstructionError(f"unknown builtin base {name!r}")
        return BUILTINS[name]()
    with open(source, encoding="utf-8") as fh:
        return load_base(fh)


def cmd_verify_base(args) -> int:
    source = args.file or args.source
    if not source:
        print("verify-base needs a file or builtin:<name>", file=sys.stderr)
        return 2
    cert = validate_base(_load_base_arg(source))
    sys.stdout.write(cert.render())
    return 0 if cert.passed else 1


def cmd_locate(args) -> int:
    ctx = _construction(args)
    S = ctx.space
    pts = [S.parse_label(tok) for tok in args.triple.replace(",", " ").split()]
    w, cid = ctx.locate_triple(pts)
    line = f"w={S.label(w)} class={cid.token}"
    if cid.is_star:
        line += " (star)"
    else:
        line += f" (u_{cid.line}={S.label(S.lines.u(cid.line))}, a={cid.a}, b={cid.b}, base class {cid.base_index(ctx.t)})"
    print(line)
    return 0


def cmd_selftest(args) -> int:
    ctx = _construction(args)
    cert = Certificate(f"self-test q={args.q} n={args.n}")
    cert.merge(verify_counts(ctx), "counts.")
    cert.merge(cross_check_locate(ctx, sample=args.sample, seed=args.seed), "locate.")
    sys.stdout.write(cert.render())
    return 0 if cert.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lkts", description="Large sets of Kirkman triple systems of order q^n + 2.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="report the field GF(q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="expected exponent (q = p^k)")
    p.set_defaults(func=cmd_info)

    def ctx_args(p):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--base", default="builtin:denniston15", help="base file or builtin:<name>")

    p = sub.add_parser("construct", help="build designs B_w and write them to files")
    ctx_args(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--w", help="design label, coordinates joined by ':' (e.g. 0:0)")
    which.add_argument("--all", action="store_true")
    p.add_argument("--out", default=".")
    p.add_argument("--format", choices=("canonical", "appendix"), default="canonical")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify design files")
    p.add_argument("--files", required=True, help="glob pattern")
    p.add_argument("--level", choices=("sts", "kts", "lkts"), default="kts")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-base", help="certify a base large set")
    p.add_argument("source", nargs="?", help="file or builtin:<name>")
    p.add_argument("--file")
    p.set_defaults(func=cmd_verify_base)

    p = sub.add_parser("locate", help="find the design and class holding a triple")
    ctx_args(p)
    p.add_argument("--triple", required=True, help='three points, e.g. "1:1 3:9 9:3" or "inf1 inf2 5:7"')
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("selftest", help="counting identities and locate cross-check")
    ctx_args(p)
    p.add_argument("--sample", type=int, default=None, help="sample size (default: exhaustive)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FieldError, ConstructionError, DesignFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
