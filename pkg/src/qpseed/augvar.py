"""Braid matrices and the membership residual for augmentation varieties.

A braid on n strands, completed by a full twist, turns into a product
of elementary matrices with one slot per letter plus one scale per link
component; a point lies on the variety exactly when the residual
matrix 1 + product vanishes.  Entries are whatever number type the
caller supplies (exact rationals, complex floats, symbols), so the same
code does exact membership checks and numeric or symbolic probes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import InputError, PreconditionError
from .fence import BraidWord


def p_matrix(k: int, a, n: int) -> list[list]:
    """Identity except rows/cols k, k+1 (1-based) carry [[0,1],[1,a]]."""
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"letter {k} out of range for {n} strands")
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    m[k - 1][k - 1] = 0
    m[k - 1][k] = 1
    m[k][k - 1] = 1
    m[k][k] = a
    return m


def mat_mul(x: list[list], y: list[list]) -> list[list]:
    rows, inner, cols = len(x), len(y), len(y[0]) if y else 0
    return [
        [sum(x[i][p] * y[p][j] for p in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def determinant(m: list[list]):
    """Laplace expansion memoized on column masks; fine at braid sizes."""
    n = len(m)
    if n == 0:
        return 1
    cache: dict = {}

    def go(row: int, mask: int):
        if row == n:
            return 1
        hit = cache.get((row, mask))
        if hit is not None:
            return hit
        total = 0
        sign = 1
        for j in range(n):
            bit = 1 << j
            if mask & bit:
                continue
            if m[row][j] != 0:
                total += sign * m[row][j] * go(row + 1, mask | bit)
            sign = -sign
        cache[(row, mask)] = total
        return total

    return go(0, 0)


def full_twist(n: int) -> BraidWord:
    """Canonical positive word for the full twist on n strands."""
    if n < 2:
        raise PreconditionError("full twist needs at least 2 strands")
    half = [k for m in range(1, n) for k in range(m, 0, -1)]
    return BraidWord(n, tuple(half + half))


def braid_permutation(word: BraidWord) -> list[int]:
    """0-based ending position of the strand entering at each position."""
    out = []
    for start in range(word.strands):
        pos = start
        for k in word.letters:
            if pos == k - 1:
                pos = k
            elif pos == k:
                pos = k - 1
        out.append(pos)
    return out


def link_components(word: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Cycles of the braid permutation as 1-based strand tuples.

    Ordered by their lowest strand, which is also the marked strand
    carrying the component's scale slot.
    """
    perm = braid_permutation(word)
    seen = [False] * word.strands
    comps = []
    for s in range(word.strands):
        if seen[s]:
            continue
        orbit = []
        cur = s
        while not seen[cur]:
            seen[cur] = True
            orbit.append(cur + 1)
            cur = perm[cur]
        comps.append(tuple(sorted(orbit)))
    return tuple(sorted(comps, key=lambda c: c[0]))


@dataclass(frozen=True)
class BraidMatrixSystem:
    """Matrix data of a braid closed up by a full twist."""

    strands: int
    word: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @classmethod
    def from_braid(cls, beta: BraidWord) -> "BraidMatrixSystem":
        twisted = BraidWord(
            beta.strands, beta.letters + full_twist(beta.strands).letters
        )
        return cls(twisted.strands, twisted.letters, link_components(twisted))

    @property
    def z_slots(self) -> int:
        return len(self.word)

    @property
    def t_slots(self) -> int:
        return len(self.components)

    @property
    def marked_strands(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.components)


def residual(sys: BraidMatrixSystem, z, t, fold: str = "left") -> list[list]:
    """1 + product of letter matrices times the component scaling.

    The point (z, t) lies on the variety iff the result is the zero
    matrix.  `fold` picks the association order of the product; both
    orders agree and the redundancy is kept as a cross-check hook.
    """
    z = list(z)
    t = list(t)
    if len(z) != sys.z_slots:
        raise InputError(f"expected {sys.z_slots} z values, got {len(z)}")
    if len(t) != sys.t_slots:
        raise InputError(f"expected {sys.t_slots} t values, got {len(t)}")
    if any(val == 0 for val in t):
        raise InputError("t values must be nonzero")
    if fold not in ("left", "right"):
        raise InputError(f"unknown fold {fold!r}")
    n = sys.strands
    diag = [1] * n
    for comp, tv in zip(sys.components, t):
        diag[comp[0] - 1] = tv
    scale = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    mats = [p_matrix(k, zi, n) for k, zi in zip(sys.word, z)] + [scale]
    if fold == "left":
        prod = reduce(mat_mul, mats)
    else:
        prod = reduce(lambda acc, m: mat_mul(m, acc), reversed(mats))
    return [
        [prod[i][j] + (1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]


def residual_is_zero(m: list[list], tol: float | None = None) -> bool:
    """Exact zero test, or max-abs below tol when tol is given."""
    if tol is None:
        return all(x == 0 for row in m for x in row)
    return all(abs(x) < tol for row in m for x in row)
