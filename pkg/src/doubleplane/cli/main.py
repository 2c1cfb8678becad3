"""``doubleplane`` command line.

Exit status: 0 when every applicable verdict passes, 1 on a verification
failure, 2 on bad input (unreadable file, parse error, invalid instance).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..instances import ProfileError
from ..normalform import InvariantError, PreconditionError
from ..raomodule import ConstructionError
from . import pipeline
from .instance import InstanceError, emit_instance, parse_instance, parse_module

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, help="prime field characteristic (overrides the file)")
    common.add_argument("--report", type=Path, help="write the machine-readable JSON report here")
    common.add_argument("--oracle", action="store_true",
                        help="cross-check Hilbert functions by brute-force linear algebra")

    ap = argparse.ArgumentParser(prog="doubleplane", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in (("verify", "full pipeline: residual, curve, resolution, Rao module"),
                        ("resolve", "resolution and exactness certificate only"),
                        ("rao", "Rao function only")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", type=Path)
    p = sub.add_parser("random", parents=[common], help="generate and verify a random instance")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--deg", default="a=1,h=0",
                   help="degree profile, e.g. 'a=1,h=0' or 'cols=1:1:2,rows=0:0,p=1,f=3'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, help="write the instance file here instead of stdout")
    p = sub.add_parser("from-module", parents=[common], help="build a curve from a module presentation M")
    p.add_argument("file", type=Path)
    p.add_argument("--out", type=Path, help="write the instance file here instead of stdout")
    return ap


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from None


def _finish(report: dict, args) -> int:
    print(pipeline.summarize(report))
    if args.report:
        args.report.write_text(pipeline.emit_report(report))
    return EXIT_OK if pipeline.all_pass(report) else EXIT_FAIL


def _write_instance(inst, args, comment: str) -> None:
    text = emit_instance(inst, comment)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("verify", "resolve", "rao"):
            inst = parse_instance(_read(args.file))
            if args.prime:
                inst.p = args.prime
            driver = {"verify": pipeline.run_verify, "resolve": pipeline.run_resolve,
                      "rao": pipeline.run_rao}[args.command]
            return _finish(driver(inst, oracle=args.oracle), args)
        if args.command == "random":
            if args.s < 1:
                raise ProfileError("s must be at least 1")
            inst, report = pipeline.run_random(args.s, args.deg, args.seed, args.prime, args.oracle)
            _write_instance(inst, args, f"random instance: s={args.s} deg={args.deg} seed={args.seed}")
            return _finish(report, args)
        mf = parse_module(_read(args.file))
        if args.prime:
            mf.p = args.prime
        reasons = pipeline.shape_reasons(mf)
        if reasons:
            raise ConstructionError("shape check failed: " + "; ".join(reasons))
        inst, report = pipeline.run_from_module(mf, args.oracle)
        _write_instance(inst, args, f"constructed from {args.file.name}")
        return _finish(report, args)
    except (InstanceError, ProfileError, InvariantError, PreconditionError, ConstructionError,
            ValueError) as exc:   # ValueError: bad prime, malformed module shape
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
