"""Command line entry points.

Every subcommand prints one JSON document (stdout or --out) and exits 0
on success, 1 on a domain error (structured JSON on stderr), 2 on bad
usage.  Outputs are byte-identical for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import serialize
from .augvar import BraidMatrixSystem, residual, residual_is_zero
from .errors import InputError, PreconditionError, QPSeedError
from .fence import build_qp, fence_from_braid, parse_braid
from .mutation import empty_cycles, mutate, two_acyclic
from .rigidity import rigidity_certificate, trace_space_dims
from .walker import explore

NUMERIC_TOL = 1e-9


def _emit(doc: dict, out: str | None) -> None:
    text = serialize.dumps(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _fence(args):
    return fence_from_braid(parse_braid(args.braid, strands=args.strands))


def _add_braid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--braid", required=True, help="letters, e.g. '1 2 1' or '1,2,1'")
    p.add_argument("--strands", type=int, default=None)


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")


def _cmd_qp_build(args) -> int:
    qp = build_qp(_fence(args))
    _emit(serialize.qp_to_json(qp), args.out)
    return 0


def _parse_seq(text: str) -> tuple[str, ...]:
    seq = tuple(tok for tok in re.split(r"[\s,]+", text.strip()) if tok)
    if not seq:
        raise PreconditionError("mutation sequence must be nonempty")
    return seq


def _cmd_qp_mutate(args) -> int:
    if args.braid is not None:
        qp = build_qp(fence_from_braid(parse_braid(args.braid, strands=args.strands)))
    else:
        qp = serialize.qp_from_json(_read_json(args.infile))
    logs = []
    for v in _parse_seq(args.seq):
        qp, log = mutate(qp, v)
        logs.append(serialize.log_to_json(log))
    _emit(
        {"schema": serialize.SCHEMA, "qp": serialize.qp_to_json(qp), "log": logs},
        args.out,
    )
    return 0


def _cmd_explore(args) -> int:
    if args.exhaustive and args.max_depth is not None:
        raise InputError("choose either --exhaustive or --max-depth")
    if not args.exhaustive and args.max_depth is None:
        raise InputError("one of --exhaustive or --max-depth is required")
    qp = build_qp(_fence(args))
    graph = explore(qp, max_depth=args.max_depth, max_nodes=args.max_nodes)
    _emit(serialize.graph_to_json(graph), args.out)
    return 0


def _cmd_rigidity(args) -> int:
    qp = build_qp(_fence(args))
    report = trace_space_dims(qp, args.truncate)
    _emit(serialize.trace_report_to_json(report), args.out)
    return 0


def _cmd_certify(args) -> int:
    cert = rigidity_certificate(_fence(args))
    _emit(serialize.rigidity_certificate_to_json(cert), args.out)
    if cert.status != "PASS":
        sys.stderr.write(
            serialize.dumps(
                {
                    "schema": serialize.SCHEMA,
                    "error": {"type": "certificate-fail", "message": cert.detail},
                }
            )
        )
        return 1
    return 0


def _point_value(raw):
    """Exact Fraction for ints/strings, complex for floats and re/im pairs."""
    if isinstance(raw, bool):
        raise InputError(f"bad point value: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        return serialize.parse_fraction(raw)
    if isinstance(raw, float):
        return complex(raw)
    if isinstance(raw, list) and len(raw) == 2:
        try:
            return complex(float(raw[0]), float(raw[1]))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad point value: {raw!r}") from exc
    raise InputError(f"bad point value: {raw!r}")


def _cmd_aug_residual(args) -> int:
    doc = _read_json(args.point)
    if not isinstance(doc, dict) or "z" not in doc or "t" not in doc:
        raise InputError('point file must be {"z": [...], "t": [...]}')
    z = [_point_value(x) for x in doc["z"]]
    t = [_point_value(x) for x in doc["t"]]
    exact = all(isinstance(x, Fraction) for x in z + t)
    if not exact:
        z = [complex(x) for x in z]
        t = [complex(x) for x in t]
    word = parse_braid(args.braid, strands=args.strands)
    system = BraidMatrixSystem.from_braid(word)
    res = residual(system, z, t)
    zero = residual_is_zero(res, tol=None if exact else NUMERIC_TOL)
    mode = "exact" if exact else "numeric"
    _emit(serialize.residual_report_to_json(res, mode, zero), args.out)
    return 0 if zero else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpseed",
        description="quivers with potential from positive braid words",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    qp = sub.add_parser("qp", help="build and mutate quivers with potential")
    qp_sub = qp.add_subparsers(dest="qp_command", required=True)

    p = qp_sub.add_parser("build", help="QP of a braid's fence")
    _add_braid_args(p)
    _add_out(p)
    p.set_defaults(func=_cmd_qp_build)

    p = qp_sub.add_parser("mutate", help="apply a mutation sequence")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--in", dest="infile", default=None, help="QP JSON file")
    group.add_argument("--braid", default=None)
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--seq", required=True, help="vertices, e.g. 'L1#2,L1#2'")
    _add_out(p)
    p.set_defaults(func=_cmd_qp_mutate)

    p = sub.add_parser("explore", help="enumerate the exchange graph")
    _add_braid_args(p)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--max-nodes", type=int, default=50000)
    _add_out(p)
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("rigidity", help="truncated trace-space dimensions")
    _add_braid_args(p)
    p.add_argument("--truncate", type=int, default=8)
    _add_out(p)
    p.set_defaults(func=_cmd_rigidity)

    p = sub.add_parser("certify", help="left-to-right source certificate")
    _add_braid_args(p)
    _add_out(p)
    p.set_defaults(func=_cmd_certify)

    aug = sub.add_parser("aug", help="augmentation variety checks")
    aug_sub = aug.add_subparsers(dest="aug_command", required=True)
    p = aug_sub.add_parser("residual", help="membership residual at a point")
    _add_braid_args(p)
    p.add_argument("--point", required=True, help='JSON file {"z": [...], "t": [...]}')
    _add_out(p)
    p.set_defaults(func=_cmd_aug_residual)

    p = sub.add_parser("serve", help="HTTP API for the explorer UI")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8777)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QPSeedError as exc:
        sys.stderr.write(
            serialize.dumps({"schema": serialize.SCHEMA, "error": exc.payload()})
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
