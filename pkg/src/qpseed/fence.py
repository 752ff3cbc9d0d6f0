"""Positive braid words, plabic fences and their quiver with potential.

A fence for a braid on ``n`` strands consists of ``n`` horizontal lines
with one vertical edge per braid letter: letter ``k`` becomes an edge
between lines ``k`` and ``k+1`` (white vertex on top, black on bottom),
placed left to right in word order.  Faces are pairs of x-consecutive
edges at the same level; the face whose right edge is ``e`` is written
``F_e`` below.  The quiver has one vertex per face and the potential is
a signed sum of cycles read off runs of same-color vertices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .algebra import Arrow, Potential
from .errors import BraidSyntaxError, PreconditionError
from .mutation import QP, Quiver

__all__ = [
    "BraidWord",
    "PlabicFence",
    "Face",
    "PenteRow",
    "parse_braid",
    "fence_from_braid",
    "braid_from_fence",
    "faces",
    "pente_rows_at",
    "build_qp",
    "source_sequence",
]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple

    def __post_init__(self):
        if self.strands < 1:
            raise BraidSyntaxError("strand count must be positive")
        if self.letters and self.strands < 2:
            raise BraidSyntaxError("a nonempty word needs at least 2 strands")
        for k in self.letters:
            if not 1 <= k <= self.strands - 1:
                raise BraidSyntaxError(
                    f"letter {k} out of range for {self.strands} strands"
                )


@dataclass(frozen=True)
class PlabicFence:
    """Vertical edges in x-order; edge i sits at level ``levels[i]``."""

    strands: int
    levels: tuple


@dataclass(frozen=True)
class Face:
    id: str
    level: int
    left: int  # edge index
    right: int  # edge index


@dataclass(frozen=True)
class PenteRow:
    color: str  # "black" | "white"
    line: int  # horizontal line carrying the same-color run
    run: tuple  # edge indices of the run, left to right
    bounds: tuple  # (left, right) edge indices of the opposite level
    right_face: str
    cycle_faces: tuple
    cycle_arrows: tuple  # matching Arrow objects, traversal order

    def __post_init__(self):
        assert len(self.cycle_faces) == len(self.run) + 2


_TOKEN = re.compile(r"^(?:s|sigma)?(\d+)$")


def parse_braid(text: str, strands: Optional[int] = None) -> BraidWord:
    """Parse a positive braid word from text.

    Tokens are separated by whitespace and/or commas and may carry an
    optional ``s`` prefix ("1 2 1", "s1,s2").  When ``strands`` is not
    given it is inferred as max letter + 1 (2 for the empty word).
    """
    letters = []
    for token in re.split(r"[\s,]+", text.strip()):
        if not token:
            continue
        m = _TOKEN.match(token)
        if not m:
            raise BraidSyntaxError(f"bad braid token {token!r}")
        k = int(m.group(1))
        if k < 1:
            raise BraidSyntaxError(f"letters are positive, got {k}")
        letters.append(k)
    if strands is None:
        strands = max(letters) + 1 if letters else 2
    return BraidWord(strands, tuple(letters))


def fence_from_braid(w: BraidWord) -> PlabicFence:
    return PlabicFence(w.strands, tuple(w.letters))


def braid_from_fence(f: PlabicFence) -> BraidWord:
    return BraidWord(f.strands, tuple(f.levels))


class _Scan:
    """Result of one left-to-right sweep over a fence."""

    def __init__(self, fence: PlabicFence):
        self.fence = fence
        self.face_by_right: dict[int, Face] = {}
        self.faces: list[Face] = []
        self.arrows: list[Arrow] = []
        # arrows keyed by the edge whose scan step created them
        self.same: dict[int, Arrow] = {}
        self.up: dict[int, Arrow] = {}
        self.down: dict[int, Arrow] = {}
        self.rows: dict[int, tuple] = {}
        self.potential = Potential.zero()
        self._sweep()

    def _new_arrow(self, tail_face, head_face):
        arrow = Arrow(f"a{len(self.arrows) + 1}", tail_face.id, head_face.id)
        self.arrows.append(arrow)
        return arrow

    def _sweep(self):
        levels = self.fence.levels
        prev_at = {}  # level -> index of last edge seen there
        ordinal = {}  # level -> number of faces created there
        for e, k in enumerate(levels):
            d = prev_at.get(k)
            prev_at[k] = e
            if d is None:
                continue
            ordinal[k] = ordinal.get(k, 0) + 1
            face = Face(f"L{k}#{ordinal[k]}", k, d, e)
            self.faces.append(face)
            self.face_by_right[e] = face

            if d in self.face_by_right:
                self.same[e] = self._new_arrow(self.face_by_right[d], face)
            up_edge = self._first_between(d, e, k + 1)
            if up_edge is not None and up_edge in self.face_by_right:
                self.up[e] = self._new_arrow(face, self.face_by_right[up_edge])
            down_edge = self._first_between(d, e, k - 1)
            if down_edge is not None and down_edge in self.face_by_right:
                self.down[e] = self._new_arrow(face, self.face_by_right[down_edge])

            black = self._row(e, k, k - 1)
            white = self._row(e, k, k + 1)
            self.rows[e] = (black, white)
            if black:
                self.potential = self.potential + Potential(
                    {black.cycle_arrows: 1}
                )
            if white:
                self.potential = self.potential + Potential(
                    {white.cycle_arrows: -1}
                )

        # vertex order: by level, then left to right, matching face ids
        vertices = tuple(
            f.id for f in sorted(self.faces, key=lambda f: (f.level, f.left))
        )
        self.qp = QP(Quiver(vertices, tuple(self.arrows)), self.potential)

    def _first_between(self, lo, hi, level):
        if level < 1 or level > self.fence.strands - 1:
            return None
        for i in range(lo + 1, hi):
            if self.fence.levels[i] == level:
                return i
        return None

    def _row(self, e, k, other):
        """The same-level run ending just before ``e`` whose opposite
        color sits on level ``other`` (k-1: black row, k+1: white)."""
        if other < 1 or other > self.fence.strands - 1:
            return None
        levels = self.fence.levels
        d = None  # previous level-k edge; run ends there
        for i in range(e - 1, -1, -1):
            if levels[i] == k:
                d = i
                break
        if d is None:
            return None
        # bounding edge on the right: strictly between d and e
        right_bound = self._first_between(d, e, other)
        if right_bound is None:
            return None
        # grow the run leftwards while no level-`other` edge intervenes
        run = [d]
        i = d - 1
        blocked = None
        while i >= 0:
            if levels[i] == other:
                blocked = i
                break
            if levels[i] == k:
                run.append(i)
            i -= 1
        if blocked is None:
            # run reaches the left end of the fence: no bounding vertex
            return None
        run.reverse()
        first = run[0]
        if first not in self.face_by_right:
            return None
        left_bound = blocked
        # both lookups are forced once the bounding conditions hold; a
        # miss here would mean the scan produced an inconsistent state
        below = self.face_by_right[right_bound]
        side = self.up if other == k - 1 else self.down
        closing = side[right_bound]

        face = self.face_by_right[e]
        chain = [self.same[x] for x in run[1:]] + [self.same[e]]
        step_off = self.down[e] if other == k - 1 else self.up[e]
        cycle_arrows = tuple(chain + [step_off, closing])
        cycle_faces = tuple(
            [self.face_by_right[x].id for x in run] + [face.id, below.id]
        )
        return PenteRow(
            color="black" if other == k - 1 else "white",
            line=k if other == k - 1 else k + 1,
            run=tuple(run),
            bounds=(left_bound, right_bound),
            right_face=face.id,
            cycle_faces=cycle_faces,
            cycle_arrows=cycle_arrows,
        )


@lru_cache(maxsize=512)
def _scan(fence: PlabicFence) -> _Scan:
    return _Scan(fence)


def faces(f: PlabicFence) -> list:
    """All faces, ordered by level and then left to right."""
    return sorted(_scan(f).faces, key=lambda x: (x.level, x.left))


def pente_rows_at(f: PlabicFence, e: int):
    """The black and white rows whose right face is the face at edge ``e``.

    Returns a ``(black, white)`` pair of optional rows.  ``e`` is a
    0-based edge index and must carry a face.
    """
    scan = _scan(f)
    if e not in scan.face_by_right:
        raise PreconditionError(f"edge {e} has no face on its left")
    return scan.rows[e]


def build_qp(f: PlabicFence) -> QP:
    """Quiver with potential of a fence via the left-to-right scan.

    At each edge ``e`` carrying a face, with ``d`` the previous edge of
    the same level: an arrow F_d -> F_e when F_d exists, an arrow from
    F_e to the face at the first higher-level edge strictly between d
    and e (and likewise one level down), plus one potential cycle per
    same-color run bounded on both sides, signed + for black rows and
    - for white rows.
    """
    return _scan(f).qp


def source_sequence(f: PlabicFence, e: int) -> tuple:
    """Mutation sequence turning the face at the rightmost edge into a source.

    ``e`` must index the rightmost edge and carry a face.  Returns the
    ids of the other faces at the same level, left to right; mutating
    the fence quiver at them, in order, makes F_e a source (verified
    downstream by actual mutation, not assumed).
    """
    if not f.levels:
        raise PreconditionError("empty fence has no edges")
    if e != len(f.levels) - 1:
        raise PreconditionError(f"edge {e} is not the rightmost edge")
    scan = _scan(f)
    face = scan.face_by_right.get(e)
    if face is None:
        raise PreconditionError(f"edge {e} has no face on its left")
    level_faces = [x for x in faces(f) if x.level == face.level]
    return tuple(x.id for x in level_faces if x.id != face.id)
