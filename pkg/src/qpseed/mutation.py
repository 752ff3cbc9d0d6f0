"""Quivers with potential and their mutation.

Mutation at a vertex runs in three steps: premutation (composite
arrows plus the new cubic terms), iterated local reduction of quadratic
terms, and keeping the reduced part.  Performed twice at the same
vertex it returns the input up to a canonical relabeling of arrows,
which is the main correctness anchor for the sign conventions used
here.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import (
    Arrow,
    PathSum,
    Potential,
    cyc_normalize,
    cyclic_derivative,
    substitute,
)
from .errors import PreconditionError, ReductionError

__all__ = [
    "Quiver",
    "QP",
    "MutationLog",
    "ReductionRecord",
    "ProbeVerdict",
    "premutate",
    "local_reduce",
    "split_reduced",
    "mutate",
    "two_acyclic",
    "find_two_cycle",
    "empty_cycles",
    "probe_nondegeneracy",
    "qp_isomorphism",
    "default_degree_cap",
]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate arrow ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.tail not in vs or a.head not in vs:
                raise ValueError(f"arrow {a!r} leaves the vertex set")

    def arrows_in(self, v) -> list:
        return sorted((a for a in self.arrows if a.head == v), key=lambda a: a.id)

    def arrows_out(self, v) -> list:
        return sorted((a for a in self.arrows if a.tail == v), key=lambda a: a.id)

    def arrow_ids(self) -> set:
        return {a.id for a in self.arrows}

    def by_id(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)


@dataclass(frozen=True)
class QP:
    """A loop-free multidigraph plus a potential supported on it."""

    quiver: Quiver
    potential: Potential

    def __post_init__(self):
        have = set(self.quiver.arrows)
        for word, _ in self.potential.terms():
            for a in word:
                if a not in have:
                    raise ValueError(
                        f"potential uses arrow {a!r} absent from the quiver"
                    )

    @property
    def vertices(self):
        return self.quiver.vertices


@dataclass(frozen=True)
class ReductionRecord:
    """One 2-cycle elimination: the pair removed and the data used."""

    pair: tuple  # (a_id, b_id)
    rescale: Fraction  # factor applied to b before reducing
    u: PathSum
    v: PathSum


@dataclass(frozen=True)
class MutationLog:
    vertex: str | None
    composites: tuple = ()
    reversed_arrows: tuple = ()  # pairs (old_id, new_id)
    reductions: tuple = ()
    result_hash: str = ""


@dataclass(frozen=True)
class ProbeVerdict:
    status: str  # PASS | COUNTEREXAMPLE | BUDGET_EXCEEDED
    depth: int
    nodes: int
    word: tuple = ()

    def passed(self):
        return self.status == "PASS"


def fingerprint(qp: QP) -> str:
    """Deterministic hash of a QP value, used in logs."""
    bits = [",".join(qp.quiver.vertices)]
    for a in sorted(qp.quiver.arrows, key=lambda a: a.id):
        bits.append(f"{a.id}:{a.tail}>{a.head}")
    for word, coef in qp.potential.terms():
        bits.append(f"{coef}*" + ".".join(a.id for a in word))
    return hashlib.sha256("|".join(bits).encode()).hexdigest()[:16]


def two_acyclic(quiver: Quiver) -> bool:
    """True iff the quiver has no pair of antiparallel arrows."""
    return find_two_cycle(quiver) is None


def find_two_cycle(quiver: Quiver):
    pairs = {}
    for a in sorted(quiver.arrows, key=lambda a: a.id):
        back = pairs.get((a.head, a.tail))
        if back is not None:
            return (back, a)
        pairs.setdefault((a.tail, a.head), a)
    return None


def default_degree_cap(p: Potential) -> int:
    return 2 * p.max_cycle_len() + 4


def _fresh_id(candidate: str, taken: set) -> str:
    while candidate in taken:
        candidate += "'"
    return candidate


def premutate(qp: QP, v, degree_cap=None) -> tuple:
    """Non-reduced mutation at a vertex.

    For every in-arrow ``a`` and out-arrow ``b`` at ``v`` a composite
    arrow ``[ba]`` from tail(a) to head(b) is created, all arrows at
    ``v`` are replaced by reversed copies, every passage of a potential
    cycle through ``v`` is rewired through the matching composite, and
    for each (a, b) pair the closed 3-cycle ([ba], b*, a*) is added to
    the potential.
    """
    if v not in qp.quiver.vertices:
        raise PreconditionError(f"unknown vertex {v!r}")
    ins = qp.quiver.arrows_in(v)
    outs = qp.quiver.arrows_out(v)
    for a in ins:
        for b in outs:
            if a.tail == b.head:
                raise PreconditionError(
                    f"mutation undefined: 2-cycle ({a.id},{b.id}) at {v!r}"
                )

    taken = qp.quiver.arrow_ids()
    composite: dict[tuple, Arrow] = {}
    for a in ins:
        for b in outs:
            cid = _fresh_id(f"[{b.id}{a.id}]", taken)
            taken.add(cid)
            composite[(a, b)] = Arrow(cid, a.tail, b.head)
    star: dict[Arrow, Arrow] = {}
    for a in ins:
        sid = _fresh_id(a.id + "*", taken)
        taken.add(sid)
        star[a] = Arrow(sid, v, a.tail)
    for b in outs:
        sid = _fresh_id(b.id + "*", taken)
        taken.add(sid)
        star[b] = Arrow(sid, b.head, v)

    kept = tuple(a for a in qp.quiver.arrows if a.head != v and a.tail != v)
    new_arrows = (
        kept
        + tuple(composite[(a, b)] for a in ins for b in outs)
        + tuple(star[a] for a in ins)
        + tuple(star[b] for b in outs)
    )
    quiver = Quiver(qp.quiver.vertices, new_arrows)

    def rewire(word):
        # Replace every consecutive pair (a, b) passing through v.  The
        # pairs are disjoint (arrows are loop-free), so one sweep works.
        n = len(word)
        out = []
        i = 0
        consumed_wrap = word[-1].head == v  # pair (word[-1], word[0]) wraps
        while i < n:
            x = word[i]
            if x.head == v and i + 1 < n:
                out.append(composite[(x, word[i + 1])])
                i += 2
            elif x.head == v and i + 1 == n and not out:
                # single-arrow word cannot occur (loop-free); guard anyway
                raise PreconditionError("cycle stops at the mutated vertex")
            else:
                out.append(x)
                i += 1
        if consumed_wrap:
            # word[-1] was not consumed by the sweep: pair it with word[0]
            out = [composite[(word[-1], word[0])]] + out[1:-1]
        return tuple(out)

    bracket = Potential()
    for word, coef in qp.potential.terms():
        bracket = bracket + Potential({rewire(word): coef})
    delta = Potential()
    for a in ins:
        for b in outs:
            delta = delta + Potential.of(composite[(a, b)], star[b], star[a])

    out_qp = QP(quiver, bracket + delta)
    log = MutationLog(
        vertex=v,
        composites=tuple(composite[(a, b)] for a in ins for b in outs),
        reversed_arrows=tuple((x.id, star[x].id) for x in ins + outs),
        result_hash=fingerprint(out_qp),
    )
    return out_qp, log


_MAX_REDUCTION_ROUNDS = 32


def local_reduce(qp: QP, a: Arrow, b: Arrow, degree_cap=None) -> tuple:
    """Remove the 2-cycle (a, b) from the potential by substitution.

    Requires (a, b) to be a 2-cycle carried by the potential with a
    nonzero coefficient; the coefficient is normalized to 1 by rescaling
    ``b``.  Substitutions a -> a + U, b -> b + V with U, V free of both
    arrows are applied until no other word of the potential touches
    ``a`` or ``b``.  One round suffices whenever the potential has the
    shape ab - Ub - Va + W with U, V, W free of a and b; pathological
    inputs that keep mixing beyond the degree cap raise ReductionError.
    """
    if a.head != b.tail or b.head != a.tail:
        raise PreconditionError(f"({a.id},{b.id}) is not a 2-cycle")
    key = cyc_normalize((a, b))
    lam = qp.potential.coeff(key)
    if lam == 0:
        raise PreconditionError(
            f"2-cycle ({a.id},{b.id}) does not appear in the potential"
        )
    cap = degree_cap if degree_cap is not None else default_degree_cap(qp.potential)

    w = qp.potential
    if lam != 1:
        w = substitute(w, {b: PathSum.of(b).scale(Fraction(1, 1) / lam)})
    u_used = PathSum.zero()
    v_used = PathSum.zero()
    for _ in range(_MAX_REDUCTION_ROUNDS):
        mixed = [wd for wd in w.words_containing({a, b}) if wd != key]
        if not mixed:
            break
        u = PathSum.of(a) - cyclic_derivative(w, b)
        v = PathSum.of(b) - cyclic_derivative(w, a)
        u0 = u.drop_words_containing({a, b})
        v0 = v.drop_words_containing({a, b})
        if u0.is_zero() and v0.is_zero():
            raise ReductionError(
                f"reduction at ({a.id},{b.id}) does not stabilize"
            )
        if max(u0.max_len(), v0.max_len()) + 1 > cap:
            raise ReductionError(
                f"reduction at ({a.id},{b.id}) exceeds degree cap {cap}"
            )
        w = substitute(w, {a: PathSum.of(a) + u0, b: PathSum.of(b) + v0})
        if w.max_cycle_len() > cap:
            raise ReductionError(
                f"reduction at ({a.id},{b.id}) exceeds degree cap {cap}"
            )
        u_used = u_used + u0
        v_used = v_used + v0
    else:
        raise ReductionError(f"reduction at ({a.id},{b.id}) does not stabilize")

    assert w.coeff(key) == 1
    w_prime = w + Potential({key: -1})
    assert not w_prime.words_containing({a, b})
    quiver = Quiver(
        qp.quiver.vertices,
        tuple(x for x in qp.quiver.arrows if x not in (a, b)),
    )
    record = ReductionRecord(pair=(a.id, b.id), rescale=lam, u=u_used, v=v_used)
    out = QP(quiver, w_prime)
    log = MutationLog(vertex=None, reductions=(record,), result_hash=fingerprint(out))
    return out, log


def split_reduced(qp: QP, degree_cap=None) -> tuple:
    """Split a QP into its trivial part and its reduced part.

    Quadratic terms are eliminated one at a time, in canonical-word
    order, until none remain.  Returns (trivial, reduced, records); the
    trivial part keeps the removed arrow pairs with unit 2-cycles.
    """
    cap = degree_cap if degree_cap is not None else default_degree_cap(qp.potential)
    current = qp
    removed: list[Arrow] = []
    trivial_terms: dict = {}
    records = []
    while True:
        quads = current.potential.words_of_length(2)
        if not quads:
            break
        a, b = quads[0]
        current, log = local_reduce(current, a, b, degree_cap=cap)
        removed.extend([a, b])
        trivial_terms[(a, b)] = 1
        records.append(log.reductions[0])
    trivial = QP(Quiver(qp.quiver.vertices, tuple(removed)), Potential(trivial_terms))
    return trivial, current, tuple(records)


def mutate(qp: QP, v, degree_cap=None) -> tuple:
    """QP-mutation: reduced part of the premutation.  Involutive."""
    pre, log = premutate(qp, v)
    _, reduced, records = split_reduced(pre, degree_cap=degree_cap)
    full_log = MutationLog(
        vertex=v,
        composites=log.composites,
        reversed_arrows=log.reversed_arrows,
        reductions=records,
        result_hash=fingerprint(reduced),
    )
    return reduced, full_log


def _simple_vertex_cycles(quiver: Quiver, maxlen: int):
    """Vertex-simple directed cycles as vertex sequences, each listed
    once, starting at its minimal vertex in quiver order."""
    order = {v: i for i, v in enumerate(quiver.vertices)}
    succ: dict = {v: set() for v in quiver.vertices}
    for a in quiver.arrows:
        succ[a.tail].add(a.head)
    found = []

    def walk(start, path, seen):
        last = path[-1]
        for nxt in sorted(succ[last], key=lambda v: order[v]):
            if nxt == start and len(path) >= 2:
                found.append(tuple(path))
            elif nxt not in seen and order[nxt] > order[start] and len(path) < maxlen:
                walk(start, path + [nxt], seen | {nxt})

    for start in quiver.vertices:
        walk(start, [start], {start})
    return found


def empty_cycles(qp: QP, maxlen: int) -> list:
    """Simple quiver cycles of length <= maxlen missing from the potential.

    Any such cycle certifies degeneracy, so callers treat a non-empty
    result as a hard flag.
    """
    if maxlen < 2:
        raise PreconditionError("maxlen must be at least 2")
    arrows_between: dict = {}
    for a in qp.quiver.arrows:
        arrows_between.setdefault((a.tail, a.head), []).append(a)
    out = []
    for cyc in _simple_vertex_cycles(qp.quiver, maxlen):
        hops = [
            arrows_between[(cyc[i], cyc[(i + 1) % len(cyc)])]
            for i in range(len(cyc))
        ]
        for choice in itertools.product(*hops):
            word = cyc_normalize(choice)
            if qp.potential.coeff(word) == 0:
                out.append(word)
    return sorted(set(out), key=lambda w: (len(w), tuple(a.id for a in w)))


def _parallel_classes(quiver: Quiver):
    classes: dict = {}
    for a in quiver.arrows:
        classes.setdefault((a.tail, a.head), []).append(a)
    return {k: sorted(v, key=lambda a: a.id) for k, v in classes.items()}


def qp_isomorphism(left: QP, right: QP):
    """Arrow bijection fixing vertices that carries one QP to the other.

    Arrows may only be matched within the same parallel class; the map
    must send the potential of ``left`` exactly onto the potential of
    ``right``.  Returns the mapping, or None when no such bijection
    exists.
    """
    if set(left.quiver.vertices) != set(right.quiver.vertices):
        return None
    lc = _parallel_classes(left.quiver)
    rc = _parallel_classes(right.quiver)
    if set(lc) != set(rc):
        return None
    if any(len(lc[k]) != len(rc[k]) for k in lc):
        return None
    keys = sorted(lc)
    pools = [itertools.permutations(rc[k]) for k in keys]
    for assignment in itertools.product(*pools):
        mapping = {}
        for k, perm in zip(keys, assignment):
            mapping.update(dict(zip(lc[k], perm)))
        if left.potential.relabel(mapping) == right.potential:
            return mapping
    return None


def _factor(n: int) -> dict:
    n = abs(n)
    out: dict = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _solve_mod2(mat, rhs):
    """One solution of mat @ x == rhs over GF(2), free variables 0."""
    m = [row[:] + [r] for row, r in zip(mat, rhs)]
    cols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [x ^ y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][-1] for i in range(r, len(m))):
        return None
    sol = [0] * cols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


def _solve_integer(mat, rhs):
    """Particular integer solution of mat @ v == rhs, or None.

    Diagonalizes with unimodular row and column operations (column ops
    accumulated in u so the answer maps back to original variables).
    """
    m = [row[:] for row in mat]
    e = list(rhs)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if cols == 0:
        return None if any(e) else []
    u = [[int(i == j) for j in range(cols)] for i in range(cols)]
    rank = 0
    while rank < min(rows, cols):
        pos = None
        for i in range(rank, rows):
            for j in range(rank, cols):
                if m[i][j] and (pos is None or abs(m[i][j]) < abs(m[pos[0]][pos[1]])):
                    pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        m[rank], m[i0] = m[i0], m[rank]
        e[rank], e[i0] = e[i0], e[rank]
        if j0 != rank:
            for r in range(rows):
                m[r][rank], m[r][j0] = m[r][j0], m[r][rank]
            for r in range(cols):
                u[r][rank], u[r][j0] = u[r][j0], u[r][rank]
        dirty = True
        while dirty:
            dirty = False
            p = m[rank][rank]
            for i in range(rows):
                if i != rank and m[i][rank]:
                    q = m[i][rank] // p
                    for j in range(cols):
                        m[i][j] -= q * m[rank][j]
                    e[i] -= q * e[rank]
                    if m[i][rank]:
                        # Euclid step left a smaller remainder: promote it.
                        m[rank], m[i] = m[i], m[rank]
                        e[rank], e[i] = e[i], e[rank]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(cols):
                if j != rank and m[rank][j]:
                    q = m[rank][j] // p
                    for r in range(rows):
                        m[r][j] -= q * m[r][rank]
                    for r in range(cols):
                        u[r][j] -= q * u[r][rank]
                    if m[rank][j]:
                        for r in range(rows):
                            m[r][rank], m[r][j] = m[r][j], m[r][rank]
                        for r in range(cols):
                            u[r][rank], u[r][j] = u[r][j], u[r][rank]
                        dirty = True
                        break
        rank += 1
    vprime = [0] * cols
    for i in range(rank):
        if e[i] % m[i][i]:
            return None
        vprime[i] = e[i] // m[i][i]
    if any(e[i] for i in range(rank, rows)):
        return None
    return [sum(u[r][j] * vprime[j] for j in range(rank)) for r in range(cols)]


def _scales_for(rows):
    """Nonzero rational arrow scales s with prod(s_a^mult) == ratio per row.

    rows: list of (multiplicity dict Arrow -> int, ratio Fraction != 0).
    Solved in the group Q* coordinate-wise: sign over GF(2), each prime
    exponent over the integers.  Returns {Arrow: Fraction} or None.
    """
    arrows = sorted({a for cnt, _ in rows for a in cnt}, key=lambda a: a.id)
    if not rows:
        return {}
    index = {a: i for i, a in enumerate(arrows)}
    m2 = [[cnt.get(a, 0) % 2 for a in arrows] for cnt, _ in rows]
    b2 = [0 if r > 0 else 1 for _, r in rows]
    eps = _solve_mod2(m2, b2)
    if eps is None:
        return None
    primes: set = set()
    for _, r in rows:
        primes |= set(_factor(r.numerator)) | set(_factor(r.denominator))
    mat = [[cnt.get(a, 0) for a in arrows] for cnt, _ in rows]
    exps: dict = {a: {} for a in arrows}
    for p in sorted(primes):
        e = [
            _factor(r.numerator).get(p, 0) - _factor(r.denominator).get(p, 0)
            for _, r in rows
        ]
        v = _solve_integer(mat, e)
        if v is None:
            return None
        for a in arrows:
            exps[a][p] = v[index[a]]
    out = {}
    for a in arrows:
        s = Fraction(-1 if eps[index[a]] else 1)
        for p, k in exps[a].items():
            s *= Fraction(p) ** k
        out[a] = s
    return out


def qp_equivalent(left: QP, right: QP):
    """Equivalence up to arrow renaming plus rational arrow rescaling.

    Searches for a bijection within parallel classes and a nonzero scale
    per arrow that together carry the potential of ``left`` exactly onto
    ``right``.  Returns {arrow: (image, scale)} or None.  Equivalences
    needing substitutions that mix parallel arrows or add higher-order
    terms are not detected; callers treat None as "not known equal".
    """
    if set(left.quiver.vertices) != set(right.quiver.vertices):
        return None
    lc = _parallel_classes(left.quiver)
    rc = _parallel_classes(right.quiver)
    if set(lc) != set(rc) or any(len(lc[k]) != len(rc[k]) for k in lc):
        return None
    keys = sorted(lc)
    total = 1
    for k in keys:
        for s in range(2, len(lc[k]) + 1):
            total *= s
    if total > 20000:
        pools = [[tuple(rc[k])] for k in keys]
    else:
        pools = [list(itertools.permutations(rc[k])) for k in keys]
    lterms = left.potential.terms()
    rsupport = {w for w, _ in right.potential.terms()}
    for assignment in itertools.product(*pools):
        mapping = {}
        for k, perm in zip(keys, assignment):
            mapping.update(dict(zip(lc[k], perm)))
        images = {
            cyc_normalize(tuple(mapping[a] for a in word)) for word, _ in lterms
        }
        if images != rsupport:
            continue
        rows = []
        for word, coef in lterms:
            image = cyc_normalize(tuple(mapping[a] for a in word))
            cnt: dict = {}
            for a in word:
                cnt[a] = cnt.get(a, 0) + 1
            rows.append((cnt, right.potential.coeff(image) / coef))
        scales = _scales_for(rows)
        if scales is not None:
            return {
                a: (mapping[a], scales.get(a, Fraction(1)))
                for a in left.quiver.arrows
            }
    return None


def canonical_arrow_form(qp: QP) -> str:
    """Canonical string for a QP under arrow renaming, vertices fixed.

    Minimizes the serialized potential over all relabelings that stay
    inside parallel classes; used to memoize mutation searches.
    """
    classes = _parallel_classes(qp.quiver)
    keys = sorted(classes)
    shape = ";".join(f"{t}>{h}:{len(classes[(t, h)])}" for t, h in keys)
    fresh: dict = {}
    idx = 0
    for k in keys:
        for slot in range(len(classes[k])):
            fresh[(k, slot)] = f"z{idx}"
            idx += 1
    total = 1
    for k in keys:
        for s in range(2, len(classes[k]) + 1):
            total *= s
    if total > 20000:
        # Too many relabelings to minimize over: fall back to the
        # id-sorted assignment.  Still sound for memoization (equal
        # keys imply isomorphic QPs), merely less aggressive.
        pools = [[tuple(classes[k])] for k in keys]
    else:
        pools = [list(itertools.permutations(classes[k])) for k in keys]
    best = None
    for assignment in itertools.product(*pools):
        mapping = {}
        for k, perm in zip(keys, assignment):
            for slot, arrow in enumerate(perm):
                mapping[arrow] = fresh[(k, slot)]
        terms = sorted(
            (
                min(
                    tuple(mapping[a] for a in word[i:] + word[:i])
                    for i in range(len(word))
                ),
                coef,
            )
            for word, coef in qp.potential.terms()
        )
        serial = "|".join(f"{c}*{'.'.join(w)}" for w, c in terms)
        if best is None or serial < best:
            best = serial
    return shape + "//" + (best or "")


def probe_nondegeneracy(qp: QP, depth: int, budget: int = 10000) -> ProbeVerdict:
    """Search mutation sequences for a 2-cycle in any reduced part.

    Breadth-first over sequences without immediate repeats, memoized on
    the canonical arrow form.  PASS means no 2-cycle showed up within
    the given depth; it is evidence, not a proof of non-degeneracy.
    """
    if not two_acyclic(qp.quiver):
        return ProbeVerdict("COUNTEREXAMPLE", 0, 1, ())
    seen = {canonical_arrow_form(qp)}
    frontier = [(qp, ())]
    nodes = 1
    for d in range(1, depth + 1):
        nxt = []
        for cur, word in frontier:
            for v in cur.quiver.vertices:
                if word and word[-1] == v:
                    continue
                mutated, _ = mutate(cur, v)
                if not two_acyclic(mutated.quiver):
                    return ProbeVerdict("COUNTEREXAMPLE", d, nodes, word + (v,))
                form = canonical_arrow_form(mutated)
                if form in seen:
                    continue
                if nodes >= budget:
                    return ProbeVerdict("BUDGET_EXCEEDED", d, nodes, word + (v,))
                seen.add(form)
                nodes += 1
                nxt.append((mutated, word + (v,)))
        frontier = nxt
        if not frontier:
            break
    return ProbeVerdict("PASS", depth, nodes, ())
