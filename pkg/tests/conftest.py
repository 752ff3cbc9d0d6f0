from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qpseed import (
    QP,
    Arrow,
    BraidWord,
    PathSum,
    PlabicFence,
    Potential,
    Quiver,
    build_qp,
    faces,
    fence_from_braid,
)


def braid_qp(strands, letters):
    return build_qp(fence_from_braid(BraidWord(strands, tuple(letters))))


def tri_qp(coef=1):
    """Oriented 3-cycle with W = coef * (the cycle traversed once)."""
    a = Arrow("a", "1", "2")
    b = Arrow("b", "2", "3")
    c = Arrow("c", "3", "1")
    quiver = Quiver(("1", "2", "3"), (a, b, c))
    w = Potential.of(a, b, c, coef=coef) if coef else Potential.zero()
    return QP(quiver, w)


def empty_two_cycle_qp():
    a = Arrow("a", "1", "2")
    b = Arrow("b", "2", "1")
    return QP(Quiver(("1", "2"), (a, b)), Potential.zero())


def random_braid(rng: random.Random, max_strands=4, max_len=10, min_len=1) -> BraidWord:
    n = rng.randint(2, max_strands)
    length = rng.randint(min_len, max_len)
    return BraidWord(n, tuple(rng.randint(1, n - 1) for _ in range(length)))


def random_faced_fence(rng: random.Random, max_strands=4, max_len=10) -> PlabicFence:
    """A random fence that has at least one face."""
    while True:
        f = fence_from_braid(random_braid(rng, max_strands, max_len, min_len=2))
        if faces(f):
            return f


def random_face_adding_fence(rng: random.Random, max_strands=4, max_len=10) -> PlabicFence:
    """A random fence whose rightmost edge closes off a face.

    Achieved by appending one letter that already occurs in the word.
    """
    word = random_braid(rng, max_strands, max_len - 1)
    letters = word.letters + (rng.choice(word.letters),)
    return fence_from_braid(BraidWord(word.strands, letters))


def planted_reduction(rng: random.Random):
    """Random potential of the shape (a - U)(b - V) + W' on a fixed quiver.

    U, V and W' avoid the 2-cycle arrows a, b; reduction at (a, b) must
    recover W' exactly. Returns (qp, a, b, U, V, W').
    """
    a = Arrow("a", "1", "2")
    b = Arrow("b", "2", "1")
    c = Arrow("c", "1", "3")
    d = Arrow("d", "3", "2")
    e = Arrow("e", "2", "4")
    f = Arrow("f", "4", "1")
    quiver = Quiver(("1", "2", "3", "4"), (a, b, c, d, e, f))
    coefs = (
        Fraction(-2), Fraction(-1), Fraction(1), Fraction(2),
        Fraction(1, 2), Fraction(-3, 2), Fraction(5, 3),
    )

    u = PathSum.zero()
    if rng.random() < 0.8:
        u = u + PathSum.of(c, d, coef=rng.choice(coefs))
    if rng.random() < 0.3:
        u = u + PathSum.of(c, d, e, f, c, d, coef=rng.choice(coefs))
    v = PathSum.zero()
    if rng.random() < 0.8:
        v = v + PathSum.of(e, f, coef=rng.choice(coefs))
    w_prime = Potential.zero()
    if rng.random() < 0.7:
        w_prime = w_prime + Potential.of(c, d, e, f, coef=rng.choice(coefs))
    if rng.random() < 0.4:
        w_prime = w_prime + Potential.of(
            c, d, e, f, c, d, e, f, coef=rng.choice(coefs)
        )

    product = (PathSum.of(a) - u) * (PathSum.of(b) - v)
    total = Potential({word: coef for word, coef in product.terms()}).add(w_prime)
    return QP(quiver, total), a, b, u, v, w_prime


@pytest.fixture
def fix_a2():
    return braid_qp(2, (1, 1, 1))


@pytest.fixture
def fix_t33():
    return braid_qp(3, (1, 2, 1, 2, 1, 2))


@pytest.fixture
def fix_tri():
    return tri_qp()


@pytest.fixture
def fix_empty():
    return empty_two_cycle_qp()
