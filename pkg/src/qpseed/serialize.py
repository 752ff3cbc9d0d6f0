"""JSON wire formats. Every document carries schema "qpseed/1".

Rational coefficients travel as exact strings ("-1", "2/3"); term lists
and arrow lists are emitted in fixed deterministic order, so equal
values always serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import Arrow, PathSum, Potential
from .errors import InputError
from .fence import BraidWord, PlabicFence
from .mutation import QP, MutationLog, Quiver
from .rigidity import RigidityCertificate, TraceReport
from .walker import ExchangeGraph, StepCert

SCHEMA = "qpseed/1"


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def parse_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def fence_to_json(f: PlabicFence) -> dict:
    return {"schema": SCHEMA, "strands": f.strands, "letters": list(f.levels)}


def fence_from_json(doc) -> PlabicFence:
    if not isinstance(doc, dict):
        raise InputError("fence document must be an object")
    try:
        strands = int(doc["strands"])
        letters = tuple(int(x) for x in doc["letters"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad fence document: {exc}") from exc
    word = BraidWord(strands, letters)
    return PlabicFence(word.strands, word.letters)


def potential_to_json(p: Potential) -> list:
    return [
        {"coef": str(coef), "cycle": [a.id for a in word]}
        for word, coef in p.terms()
    ]


def pathsum_to_json(ps: PathSum) -> list:
    return [
        {"coef": str(coef), "word": [a.id for a in word]}
        for word, coef in ps.terms()
    ]


def qp_to_json(qp: QP) -> dict:
    return {
        "schema": SCHEMA,
        "vertices": list(qp.quiver.vertices),
        "arrows": [
            {"id": a.id, "tail": a.tail, "head": a.head} for a in qp.quiver.arrows
        ],
        "potential": potential_to_json(qp.potential),
    }


def qp_from_json(doc) -> QP:
    if not isinstance(doc, dict):
        raise InputError("qp document must be an object")
    try:
        vertices = tuple(str(v) for v in doc["vertices"])
        arrow_docs = doc["arrows"]
        term_docs = doc.get("potential", [])
        arrows = tuple(
            Arrow(str(a["id"]), str(a["tail"]), str(a["head"])) for a in arrow_docs
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad qp document: {exc}") from exc
    except ValueError as exc:
        raise InputError(f"bad qp document: {exc}") from exc
    try:
        quiver = Quiver(vertices, arrows)
    except (ValueError, InputError) as exc:
        raise InputError(f"bad qp document: {exc}") from exc
    by_id = {a.id: a for a in arrows}
    acc: dict = {}
    for term in term_docs:
        try:
            ids = [str(x) for x in term["cycle"]]
            coef = parse_fraction(term["coef"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad potential term: {exc}") from exc
        missing = [x for x in ids if x not in by_id]
        if missing:
            raise InputError(f"potential uses unknown arrows {missing}")
        word = tuple(by_id[x] for x in ids)
        acc[word] = acc.get(word, Fraction(0)) + coef
    try:
        potential = Potential(acc)
        return QP(quiver, potential)
    except (ValueError, InputError) as exc:
        raise InputError(f"bad qp document: {exc}") from exc


def log_to_json(log: MutationLog) -> dict:
    return {
        "vertex": log.vertex,
        "composites": [
            {"id": a.id, "tail": a.tail, "head": a.head} for a in log.composites
        ],
        "reversed_arrows": [list(pair) for pair in log.reversed_arrows],
        "reductions": [
            {
                "pair": list(r.pair),
                "rescale": str(r.rescale),
                "u": pathsum_to_json(r.u),
                "v": pathsum_to_json(r.v),
            }
            for r in log.reductions
        ],
        "result_hash": log.result_hash,
    }


def step_cert_to_json(c: StepCert) -> dict:
    return {
        "vertex": c.vertex,
        "two_acyclic_before": c.two_acyclic_before,
        "reductions": [list(pair) for pair in c.reductions],
    }


def graph_to_json(g: ExchangeGraph) -> dict:
    return {
        "schema": SCHEMA,
        "status": g.status,
        "depth": g.depth,
        "nodes": [
            {
                "key": n.key,
                "word": list(n.word),
                "qp": qp_to_json(n.qp),
                "certificate": [step_cert_to_json(c) for c in n.certificate],
            }
            for n in g.nodes
        ],
        "edges": [list(e) for e in g.edges],
        "frontier": list(g.frontier),
    }


def trace_report_to_json(r: TraceReport) -> dict:
    return {
        "schema": SCHEMA,
        "truncation": r.truncation,
        "dims": [list(pair) for pair in r.dims],
        "witnesses": [
            {"degree": d, "words": [list(w) for w in words]}
            for d, words in r.witnesses
        ],
        "all_zero": r.all_zero(),
        "interpretation": (
            "all-zero dimensions are evidence up to the truncation degree, "
            "not a proof"
        ),
    }


def rigidity_certificate_to_json(c: RigidityCertificate) -> dict:
    return {
        "schema": SCHEMA,
        "status": c.status,
        "entries": [
            {
                "edge": e.edge,
                "face": e.face,
                "verdict": e.verdict,
                "sequence": list(e.sequence),
            }
            for e in c.entries
        ],
        "detail": c.detail,
    }


def residual_report_to_json(matrix, mode: str, zero: bool) -> dict:
    def entry(x):
        if isinstance(x, Fraction):
            return str(x)
        if isinstance(x, complex):
            return {"re": x.real, "im": x.imag}
        return x

    return {
        "schema": SCHEMA,
        "mode": mode,
        "zero": zero,
        "residual": [[entry(x) for x in row] for row in matrix],
    }
