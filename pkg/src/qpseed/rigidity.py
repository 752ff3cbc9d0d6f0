"""Rigidity evidence for quivers with potential.

Two instruments: truncated trace-space dimensions (exact linear algebra
over the rationals), and a left-to-right scan certificate that each
face of a fence enters as a source, as a sink, or can be turned into a
source by mutating at earlier faces only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import Arrow, cyc_normalize, cyclic_derivative
from .errors import PreconditionError
from .fence import PlabicFence, build_qp, faces, source_sequence
from .mutation import QP, mutate


@dataclass(frozen=True)
class TraceReport:
    """Dimensions of the truncated trace space, degree by degree.

    An all-zero report is evidence of rigidity up to the truncation
    degree, never a proof; a nonzero degree comes with surviving cyclic
    words as witnesses.
    """

    truncation: int
    dims: tuple[tuple[int, int], ...]
    witnesses: tuple[tuple[int, tuple[tuple[str, ...], ...]], ...]

    def all_zero(self) -> bool:
        return all(dim == 0 for _, dim in self.dims)

    def dim(self, degree: int) -> int:
        return dict(self.dims).get(degree, 0)


def _closed_words(quiver, bound: int) -> list[tuple[Arrow, ...]]:
    """Canonical cyclic words of length <= bound, sorted by (len, ids)."""
    out_by_tail: dict = {v: quiver.arrows_out(v) for v in quiver.vertices}
    found: set = set()

    def grow(word: tuple[Arrow, ...]) -> None:
        last = word[-1]
        if last.head == word[0].tail:
            found.add(cyc_normalize(word))
        if len(word) == bound:
            return
        for nxt in out_by_tail[last.head]:
            # every cycle has a rotation starting at its minimal arrow
            if nxt.id >= word[0].id:
                grow(word + (nxt,))

    for a in quiver.arrows:
        grow((a,))
    return sorted(found, key=lambda w: (len(w), tuple(x.id for x in w)))


def _paths_between(quiver, start: str, end: str, bound: int):
    """All composable arrow sequences start -> end of length 1..bound."""
    out_by_tail: dict = {v: quiver.arrows_out(v) for v in quiver.vertices}
    acc: list = []

    def grow(word):
        if word[-1].head == end:
            acc.append(word)
        if len(word) == bound:
            return
        for nxt in out_by_tail[word[-1].head]:
            grow(word + (nxt,))

    for a in out_by_tail[start]:
        grow((a,))
    return acc


def _word_key(word: tuple[Arrow, ...]) -> tuple:
    return (len(word), tuple(a.id for a in word))


def trace_space_dims(qp: QP, truncate: int) -> TraceReport:
    """Quotient cyclic words of length <= truncate by closure relations.

    Relations are the cyclic closures p . dW/da over all arrows a and all
    paths p parallel to a, kept when the longest closed term fits inside
    the truncation; each relation is led by its longest word, shorter
    tails carried along, and elimination is exact over the rationals.
    """
    if truncate < 1:
        raise PreconditionError("truncation degree must be >= 1")
    words = _closed_words(qp.quiver, truncate)
    per_degree: dict[int, int] = {d: 0 for d in range(1, truncate + 1)}
    for w in words:
        per_degree[len(w)] += 1

    arrows_in_w = qp.potential.arrows()
    rows: list[dict] = []
    for a in qp.quiver.arrows:
        if a not in arrows_in_w:
            continue
        longest = max(
            len(word) for word, _ in qp.potential.terms() if a in word
        )
        bound = truncate + 1 - longest
        if bound < 1:
            continue
        deriv = cyclic_derivative(qp.potential, a)
        for p in _paths_between(qp.quiver, a.tail, a.head, bound):
            row: dict = {}
            for q_word, coef in deriv.terms():
                key = cyc_normalize(p + q_word)
                row[key] = row.get(key, Fraction(0)) + coef
                if row[key] == 0:
                    del row[key]
            if row:
                rows.append(row)

    pivots: dict = {}
    for row in rows:
        while row:
            lead = max(row, key=_word_key)
            hit = pivots.get(lead)
            if hit is None:
                scale = row[lead]
                pivots[lead] = {k: v / scale for k, v in row.items()}
                break
            factor = row[lead]
            for k, v in hit.items():
                row[k] = row.get(k, Fraction(0)) - factor * v
                if row[k] == 0:
                    del row[k]

    killed: dict[int, int] = {d: 0 for d in range(1, truncate + 1)}
    for lead in pivots:
        killed[len(lead)] += 1
    dims = tuple(
        (d, per_degree[d] - killed[d]) for d in range(1, truncate + 1)
    )
    witnesses = []
    for d, dim in dims:
        if dim > 0:
            alive = tuple(
                tuple(a.id for a in w)
                for w in words
                if len(w) == d and w not in pivots
            )
            witnesses.append((d, alive))
    return TraceReport(truncate, dims, tuple(witnesses))


@dataclass(frozen=True)
class EdgeVerdict:
    edge: int  # 1-based position in the braid word
    face: str
    verdict: str  # SOURCE_ADDED | SINK_ADDED | SOURCED_VIA
    sequence: tuple[str, ...] = ()


@dataclass(frozen=True)
class RigidityCertificate:
    status: str  # PASS | FAIL
    entries: tuple[EdgeVerdict, ...]
    detail: Optional[str] = None


def rigidity_certificate(f: PlabicFence) -> RigidityCertificate:
    """Scan a fence left to right, certifying each face at creation.

    A face entering with no in-arrows is a source extension, with no
    out-arrows a sink extension; otherwise the earlier same-level faces
    are mutated in order on the partial quiver and the scan checks that
    this really leaves the new face with no in-arrows.  Any failed check
    yields a FAIL certificate carrying the offending edge and state.
    """
    entries: list[EdgeVerdict] = []
    for i in range(len(f.levels)):
        prefix = PlabicFence(f.strands, f.levels[: i + 1])
        added = next((fc for fc in faces(prefix) if fc.right == i), None)
        if added is None:
            continue
        qp = build_qp(prefix)
        ins = qp.quiver.arrows_in(added.id)
        outs = qp.quiver.arrows_out(added.id)
        if not ins:
            entries.append(EdgeVerdict(i + 1, added.id, "SOURCE_ADDED"))
            continue
        if not outs:
            entries.append(EdgeVerdict(i + 1, added.id, "SINK_ADDED"))
            continue
        seq = source_sequence(prefix, i)
        if added.id in seq:
            return RigidityCertificate(
                "FAIL",
                tuple(entries),
                f"edge {i + 1}: sequence revisits the new face {added.id}",
            )
        cur = qp
        for v in seq:
            cur, _ = mutate(cur, v)
        still_in = cur.quiver.arrows_in(added.id)
        if still_in:
            state = ", ".join(repr(a) for a in cur.quiver.arrows)
            return RigidityCertificate(
                "FAIL",
                tuple(entries),
                f"edge {i + 1}: face {added.id} keeps in-arrows "
                f"{[a.id for a in still_in]} after {seq}; quiver: {state}",
            )
        entries.append(EdgeVerdict(i + 1, added.id, "SOURCED_VIA", seq))
    return RigidityCertificate("PASS", tuple(entries))
