"""Exact arithmetic on paths, cyclic words and potentials of a quiver.

Composition convention
----------------------
Paths list their arrows in traversal order: in a composable word
``(a, b)`` the head of ``a`` equals the tail of ``b``.  Every formula in
this package is stated in that one convention; classical sources often
write the same monomials in function-composition (right-to-left) order,
so a product written ``xy`` there is the tuple ``(y, x)`` here.

Coefficients are exact rationals throughout.  Floating point is never
used for potentials: reductions rescale coefficients and any rounding
would silently corrupt downstream certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "Arrow",
    "PathSum",
    "Potential",
    "cyc_normalize",
    "rotations",
    "is_composable",
    "is_closed",
    "cyclic_derivative",
    "substitute",
    "substitute_path_sum",
]


@dataclass(frozen=True)
class Arrow:
    """A quiver arrow with a globally unique id and vertex endpoints."""

    id: str
    tail: str
    head: str

    def __post_init__(self):
        if self.tail == self.head:
            raise ValueError(f"arrow {self.id!r} would be a loop at {self.tail!r}")

    def __repr__(self):
        return f"{self.id}:{self.tail}->{self.head}"


# A path is a plain tuple of arrows, composable in traversal order.
Path = tuple


def is_composable(word: Iterable[Arrow]) -> bool:
    word = tuple(word)
    return all(word[i].head == word[i + 1].tail for i in range(len(word) - 1))


def is_closed(word: Iterable[Arrow]) -> bool:
    word = tuple(word)
    if not word or not is_composable(word):
        return False
    return word[-1].head == word[0].tail


def rotations(word):
    """All rotations of a tuple, starting with the tuple itself."""
    word = tuple(word)
    return [word[i:] + word[:i] for i in range(len(word))]


def cyc_normalize(word) -> tuple:
    """Canonical rotation of a closed word: minimal arrow-id sequence.

    The total order used is plain string comparison of arrow ids, which
    makes the choice reproducible.  Raises ``ValueError`` on open words;
    length-1 closed words cannot occur because arrows are loop-free.
    """
    word = tuple(word)
    if not is_closed(word):
        raise ValueError(f"not a closed composable word: {word!r}")
    return min(rotations(word), key=lambda w: tuple(a.id for a in w))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"coefficients must be exact rationals, got {type(x).__name__}")


class PathSum:
    """A formal rational linear combination of composable open paths.

    Supports addition, subtraction, scalar multiplication and the path
    algebra product (concatenation, with non-composable products equal
    to zero).  Instances are immutable value objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Path, object] | None = None):
        acc: dict[Path, Fraction] = {}
        for word, coef in (terms or {}).items():
            word = tuple(word)
            if not word:
                raise ValueError("empty paths are not representable")
            if not is_composable(word):
                raise ValueError(f"non-composable path: {word!r}")
            c = acc.get(word, Fraction(0)) + _as_fraction(coef)
            if c:
                acc[word] = c
            else:
                acc.pop(word, None)
        self._terms = acc

    @classmethod
    def of(cls, *arrows: Arrow, coef=1) -> "PathSum":
        return cls({tuple(arrows): coef})

    @classmethod
    def zero(cls) -> "PathSum":
        return cls()

    def terms(self):
        return sorted(
            self._terms.items(), key=lambda kv: (len(kv[0]), tuple(a.id for a in kv[0]))
        )

    def coeff(self, word) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, PathSum) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "PathSum") -> "PathSum":
        acc = dict(self._terms)
        for word, coef in other._terms.items():
            c = acc.get(word, Fraction(0)) + coef
            if c:
                acc[word] = c
            else:
                acc.pop(word, None)
        out = PathSum()
        out._terms = acc
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, r) -> "PathSum":
        r = _as_fraction(r)
        out = PathSum()
        if r:
            out._terms = {w: c * r for w, c in self._terms.items()}
        return out

    def __mul__(self, other: "PathSum") -> "PathSum":
        """Concatenation product; non-composable pairs contribute zero."""
        acc: dict[Path, Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                if w1[-1].head != w2[0].tail:
                    continue
                w = w1 + w2
                c = acc.get(w, Fraction(0)) + c1 * c2
                if c:
                    acc[w] = c
                else:
                    acc.pop(w, None)
        out = PathSum()
        out._terms = acc
        return out

    def arrows(self) -> set:
        return {a for w in self._terms for a in w}

    def max_len(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def drop_words_containing(self, arrows) -> "PathSum":
        arrows = set(arrows)
        out = PathSum()
        out._terms = {
            w: c for w, c in self._terms.items() if not (set(w) & arrows)
        }
        return out

    def is_parallel_to(self, arrow: Arrow) -> bool:
        return all(
            w[0].tail == arrow.tail and w[-1].head == arrow.head
            for w in self._terms
        )

    def __repr__(self):
        if not self._terms:
            return "PathSum(0)"
        bits = []
        for word, coef in self.terms():
            mono = "".join(a.id for a in word)
            bits.append(f"{coef}*{mono}")
        return "PathSum(" + " + ".join(bits) + ")"


class Potential:
    """A formal rational sum of cyclic arrow words, up to rotation.

    Keys are stored in canonical rotation, so two potentials are equal
    exactly when they assign the same coefficient to every cyclic word.
    Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Path, object] | None = None):
        acc: dict[Path, Fraction] = {}
        for word, coef in (terms or {}).items():
            key = cyc_normalize(word)
            c = acc.get(key, Fraction(0)) + _as_fraction(coef)
            if c:
                acc[key] = c
            else:
                acc.pop(key, None)
        self._terms = acc

    @classmethod
    def zero(cls) -> "Potential":
        return cls()

    @classmethod
    def of(cls, *arrows: Arrow, coef=1) -> "Potential":
        return cls({tuple(arrows): coef})

    def terms(self):
        return sorted(
            self._terms.items(), key=lambda kv: (len(kv[0]), tuple(a.id for a in kv[0]))
        )

    def coeff(self, word) -> Fraction:
        return self._terms.get(cyc_normalize(word), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, Potential) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def add(self, other: "Potential") -> "Potential":
        acc = dict(self._terms)
        for word, coef in other._terms.items():
            c = acc.get(word, Fraction(0)) + coef
            if c:
                acc[word] = c
            else:
                acc.pop(word, None)
        out = Potential()
        out._terms = acc
        return out

    __add__ = add

    def scale(self, r) -> "Potential":
        r = _as_fraction(r)
        out = Potential()
        if r:
            out._terms = {w: c * r for w, c in self._terms.items()}
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self.add(other.scale(-1))

    def arrows(self) -> set:
        return {a for w in self._terms for a in w}

    def max_cycle_len(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def words_of_length(self, n: int):
        return sorted(
            (w for w in self._terms if len(w) == n),
            key=lambda w: tuple(a.id for a in w),
        )

    def words_containing(self, arrows):
        arrows = set(arrows)
        return [w for w, _ in self.terms() if set(w) & arrows]

    def relabel(self, mapping: Mapping[Arrow, Arrow]) -> "Potential":
        """Rename arrows via an id-preserving-shape bijection."""
        return Potential(
            {tuple(mapping.get(a, a) for a in w): c for w, c in self._terms.items()}
        )

    def __repr__(self):
        if not self._terms:
            return "Potential(0)"
        bits = []
        for word, coef in self.terms():
            mono = "".join(a.id for a in word)
            bits.append(f"{coef}*({mono})")
        return "Potential(" + " + ".join(bits) + ")"


def cyclic_derivative(p: Potential, a: Arrow) -> PathSum:
    """Cyclic derivative of a potential with respect to one arrow.

    For each occurrence of ``a`` in each cyclic word the word is rotated
    to start right after that occurrence and the occurrence is deleted;
    the resulting open paths are summed with the word's coefficient.

    Examples
    --------
    For the 3-cycle word ``(a, b, c)`` the derivative with respect to
    ``a`` is the path ``(b, c)``; for ``(a, b, a, b)`` it is ``2*(b, a, b)``.
    """
    acc = PathSum.zero()
    for word, coef in p.terms():
        n = len(word)
        for i, x in enumerate(word):
            if x != a:
                continue
            rest = word[i + 1 :] + word[:i]
            if rest:
                acc = acc + PathSum({rest: coef})
    return acc


def _check_rules(rules: Mapping[Arrow, PathSum]):
    for arrow, rep in rules.items():
        if not isinstance(rep, PathSum):
            raise TypeError("replacement must be a PathSum")
        if not rep.is_parallel_to(arrow):
            raise ValueError(
                f"replacement for {arrow.id!r} is not parallel to it"
            )


def substitute_path_sum(ps: PathSum, rules: Mapping[Arrow, PathSum]) -> PathSum:
    """Simultaneously replace arrows in every path of an open path sum.

    Each rule maps an arrow to a parallel path-polynomial (same tail and
    head).  The substitution is applied to all occurrences at once and
    the result is expanded and collected.
    """
    _check_rules(rules)
    acc = PathSum.zero()
    for word, coef in ps.terms():
        prod = None
        for arrow in word:
            factor = rules[arrow] if arrow in rules else PathSum.of(arrow)
            prod = factor if prod is None else prod * factor
        acc = acc + prod.scale(coef)
    return acc


def substitute(p: Potential, rules: Mapping[Arrow, PathSum]) -> Potential:
    """Apply a simultaneous arrow substitution to a cyclic potential.

    Rules must be parallel replacements, so every expanded word is again
    closed; results are re-normalized to canonical rotation and merged.
    Models the substitution automorphisms of the path algebra used to
    compare potentials up to right-equivalence.
    """
    _check_rules(rules)
    acc = Potential.zero()
    for word, coef in p.terms():
        expanded = substitute_path_sum(PathSum({word: 1}), rules)
        acc = acc + Potential({w: c * coef for w, c in expanded.terms()})
    return acc
