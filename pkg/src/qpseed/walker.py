"""Framed seed tracking and exchange-graph exploration.

A seed is the pair (B, C): the skew-symmetric exchange matrix of a
quiver together with an integer framing matrix that starts as the
identity and records how the seed sits relative to the root.  Walking
the exchange graph mutates quivers with potential and framed matrices
side by side and cross-checks them at every step.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import CertificateError, ConsistencyError, InputError, PreconditionError
from .mutation import QP, MutationLog, Quiver, find_two_cycle, mutate, two_acyclic

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def b_matrix(q: Quiver) -> list[list[int]]:
    """Signed arrow-count matrix, rows and columns in vertex order."""
    idx = {v: i for i, v in enumerate(q.vertices)}
    n = len(q.vertices)
    out = [[0] * n for _ in range(n)]
    for a in q.arrows:
        out[idx[a.tail]][idx[a.head]] += 1
        out[idx[a.head]][idx[a.tail]] -= 1
    return out


@dataclass(frozen=True)
class FramedSeed:
    """Exchange matrix plus framing, both indexed by `vertices`."""

    vertices: tuple[str, ...]
    b: Matrix
    c: Matrix

    def __post_init__(self):
        n = len(self.vertices)
        object.__setattr__(self, "b", _as_matrix(self.b))
        object.__setattr__(self, "c", _as_matrix(self.c))
        if len(self.b) != n or any(len(r) != n for r in self.b):
            raise InputError(f"B must be {n}x{n}")
        if len(self.c) != n or any(len(r) != n for r in self.c):
            raise InputError(f"C must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                if self.b[i][j] != -self.b[j][i]:
                    raise InputError("B must be skew-symmetric")
        for j in range(n):
            col = [self.c[i][j] for i in range(n)]
            if any(x > 0 for x in col) and any(x < 0 for x in col):
                raise ConsistencyError(
                    f"framing column {j} mixes signs: {col}"
                )

    @classmethod
    def root(cls, q: Quiver) -> "FramedSeed":
        n = len(q.vertices)
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(q.vertices, _as_matrix(b_matrix(q)), _as_matrix(ident))


def fz_mutate(s: FramedSeed, k: str) -> FramedSeed:
    """Matrix mutation of the stacked (B, C) pair at vertex k."""
    if k not in s.vertices:
        raise PreconditionError(f"unknown vertex {k!r}")
    n = len(s.vertices)
    ki = s.vertices.index(k)
    b, c = s.b, s.c

    def step(m, row_is_mutable):
        out = []
        for i in range(len(m)):
            row = []
            for j in range(n):
                if (row_is_mutable and i == ki) or j == ki:
                    row.append(-m[i][j])
                else:
                    row.append(
                        m[i][j]
                        + (abs(m[i][ki]) * b[ki][j] + m[i][ki] * abs(b[ki][j])) // 2
                    )
            out.append(tuple(row))
        return tuple(out)

    return FramedSeed(s.vertices, step(b, True), step(c, False))


def canonical_key(s: FramedSeed) -> str:
    """Opaque token constant on relabeling orbits of (B, C).

    Relabeling the current vertices permutes B's rows and columns and
    C's columns simultaneously; the framing rows keep the root basis.
    The framing of any mutation-reachable seed is invertible, so its
    columns are distinct and sorting them fixes the permutation
    outright; equal columns (hand-built seeds) fall back to minimizing
    over the tied positions.
    """
    n = len(s.vertices)
    cols = [tuple(s.c[i][j] for i in range(n)) for j in range(n)]
    order = sorted(range(n), key=lambda j: cols[j])

    def apply(perm):
        bp = tuple(tuple(s.b[perm[i]][perm[j]] for j in range(n)) for i in range(n))
        cp = tuple(cols[j] for j in perm)
        return bp, cp

    groups = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and cols[order[j + 1]] == cols[order[i]]:
            j += 1
        groups.append(order[i : j + 1])
        i = j + 1
    if all(len(g) == 1 for g in groups):
        best = apply(order)
    else:
        best = None
        for arrangement in itertools.product(
            *(itertools.permutations(g) for g in groups)
        ):
            perm = [p for grp in arrangement for p in grp]
            cand = apply(perm)
            if best is None or cand < best:
                best = cand
    digest = hashlib.sha256(repr(best).encode()).hexdigest()[:16]
    return "s" + digest


@dataclass(frozen=True)
class StepCert:
    """Replay record for one mutation along a witness word."""

    vertex: str
    two_acyclic_before: bool
    reductions: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ExplorationNode:
    key: str
    word: tuple[str, ...]
    qp: QP
    seed: FramedSeed
    certificate: tuple[StepCert, ...]


@dataclass(frozen=True)
class ExchangeGraph:
    status: str  # COMPLETE | DEPTH_BOUNDED | BUDGET
    depth: int
    nodes: tuple[ExplorationNode, ...]
    edges: tuple[tuple[str, str, str], ...]
    frontier: tuple[str, ...]

    @property
    def root_key(self) -> str:
        return self.nodes[0].key


def _require_walkable(qp: QP) -> None:
    if qp.potential.words_of_length(2):
        raise PreconditionError("input potential has quadratic terms; reduce first")
    if not two_acyclic(qp.quiver):
        raise PreconditionError("input quiver has a 2-cycle")


def _step(node: ExplorationNode, v: str) -> tuple[QP, MutationLog, FramedSeed, StepCert]:
    """Mutate QP and framed seed together, cross-checking the B-matrix."""
    before_ok = two_acyclic(node.qp.quiver)
    new_qp, log = mutate(node.qp, v)
    new_seed = fz_mutate(node.seed, v)
    cyc = find_two_cycle(new_qp.quiver)
    if cyc is not None:
        raise CertificateError(
            f"2-cycle ({cyc[0].id},{cyc[1].id}) in reduced part after "
            f"word {node.word + (v,)}",
            step=len(node.word),
            cycle=(cyc[0].id, cyc[1].id),
        )
    if _as_matrix(b_matrix(new_qp.quiver)) != new_seed.b:
        raise ConsistencyError(
            f"matrix mutation disagrees with reduced mutation at {v!r} "
            f"after word {node.word}"
        )
    cert = StepCert(v, before_ok, tuple(r.pair for r in log.reductions))
    return new_qp, log, new_seed, cert


def explore(
    qp: QP,
    max_depth: Optional[int] = None,
    max_nodes: int = 50000,
) -> ExchangeGraph:
    """Breadth-first enumeration of the exchange graph from a root QP.

    Nodes are relabeling classes of framed seeds; each carries the first
    witness word, its reduced QP, and the replay certificate.  Each
    expansion records the traversed edge in both directions (mutation at
    the same vertex leads back).  Runs until exhaustion (COMPLETE),
    until max_depth (DEPTH_BOUNDED, unexpanded keys in `frontier`), or
    until max_nodes (BUDGET).
    """
    if max_nodes < 1:
        raise PreconditionError("max_nodes must be positive")
    if max_depth is not None and max_depth < 0:
        raise PreconditionError("max_depth must be nonnegative")
    _require_walkable(qp)
    root_seed = FramedSeed.root(qp.quiver)
    root = ExplorationNode(canonical_key(root_seed), (), qp, root_seed, ())
    nodes: dict[str, ExplorationNode] = {root.key: root}
    order: list[ExplorationNode] = [root]
    edges: set[tuple[str, str, str]] = set()
    queue: deque[ExplorationNode] = deque([root])
    depth_reached = 0
    status = "COMPLETE"
    while queue:
        node = queue.popleft()
        if max_depth is not None and len(node.word) >= max_depth:
            status = "DEPTH_BOUNDED"
            continue
        depth_reached = max(depth_reached, len(node.word))
        for v in node.qp.quiver.vertices:
            new_qp, _, new_seed, cert = _step(node, v)
            key = canonical_key(new_seed)
            edges.add((node.key, v, key))
            edges.add((key, v, node.key))
            if key in nodes:
                continue
            child = ExplorationNode(
                key, node.word + (v,), new_qp, new_seed, node.certificate + (cert,)
            )
            nodes[key] = child
            order.append(child)
            if len(nodes) >= max_nodes:
                frontier = sorted({n.key for n in queue} | {node.key, child.key})
                return ExchangeGraph(
                    "BUDGET",
                    max(depth_reached, len(child.word)),
                    tuple(order),
                    tuple(sorted(edges)),
                    tuple(frontier),
                )
            queue.append(child)
    frontier = tuple(
        sorted(n.key for n in order if max_depth is not None and len(n.word) >= max_depth)
    ) if status == "DEPTH_BOUNDED" else ()
    final_depth = (
        max(len(n.word) for n in order) if order else 0
    )
    return ExchangeGraph(status, final_depth, tuple(order), tuple(sorted(edges)), frontier)


def filling_certificate(qp: QP, word) -> tuple[StepCert, ...]:
    """Replay a mutation word, certifying each surgery step.

    Before every mutation the quiver must be 2-cycle-free, and the
    reduced part afterwards must be as well; the certificate records per
    step which local cancellations were performed.
    """
    word = tuple(word)
    if not word:
        raise PreconditionError("mutation word must be nonempty")
    steps: list[StepCert] = []
    cur = qp
    for i, v in enumerate(word):
        cyc = find_two_cycle(cur.quiver)
        if cyc is not None:
            raise CertificateError(
                f"2-cycle ({cyc[0].id},{cyc[1].id}) before step {i}",
                step=i,
                cycle=(cyc[0].id, cyc[1].id),
            )
        new_qp, log = mutate(cur, v)
        cyc = find_two_cycle(new_qp.quiver)
        if cyc is not None:
            raise CertificateError(
                f"2-cycle ({cyc[0].id},{cyc[1].id}) in reduced part at step {i}",
                step=i,
                cycle=(cyc[0].id, cyc[1].id),
            )
        steps.append(StepCert(v, True, tuple(r.pair for r in log.reductions)))
        cur = new_qp
    return tuple(steps)
