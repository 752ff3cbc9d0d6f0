from __future__ import annotations

import random

import pytest

from conftest import braid_qp, random_braid
from qpseed import (
    BraidSyntaxError,
    BraidWord,
    Potential,
    PreconditionError,
    braid_from_fence,
    build_qp,
    faces,
    fence_from_braid,
    mutate,
    parse_braid,
    pente_rows_at,
    source_sequence,
)


def test_parse_braid_plain_and_prefixed():
    assert parse_braid("1 2 1").letters == (1, 2, 1)
    assert parse_braid("s1 s2, s1").letters == (1, 2, 1)
    assert parse_braid("sigma1, sigma2").letters == (1, 2)


def test_parse_braid_infers_strands():
    assert parse_braid("1 3 2").strands == 4
    assert parse_braid("1 1 1").strands == 2
    assert parse_braid("1 1", strands=3).strands == 3


def test_parse_braid_rejects_garbage():
    with pytest.raises(BraidSyntaxError):
        parse_braid("1 x 2")
    with pytest.raises(BraidSyntaxError):
        parse_braid("0 1")
    with pytest.raises(BraidSyntaxError):
        parse_braid("3 1", strands=3)


def test_braid_word_validates_levels():
    with pytest.raises(BraidSyntaxError):
        BraidWord(2, (2,))
    with pytest.raises(BraidSyntaxError):
        BraidWord(1, (1,))


def test_fence_round_trips_to_braid():
    rng = random.Random(3)
    for _ in range(25):
        word = random_braid(rng)
        assert braid_from_fence(fence_from_braid(word)) == word


def test_a2_faces():
    f = fence_from_braid(BraidWord(2, (1, 1, 1)))
    got = [(x.id, x.left, x.right) for x in faces(f)]
    assert got == [("L1#1", 0, 1), ("L1#2", 1, 2)]


def test_t33_faces():
    f = fence_from_braid(BraidWord(3, (1, 2, 1, 2, 1, 2)))
    got = [(x.id, x.level, x.left, x.right) for x in faces(f)]
    assert got == [
        ("L1#1", 1, 0, 2),
        ("L1#2", 1, 2, 4),
        ("L2#1", 2, 1, 3),
        ("L2#2", 2, 3, 5),
    ]


def test_t33_pente_rows():
    f = fence_from_braid(BraidWord(3, (1, 2, 1, 2, 1, 2)))
    black, white = pente_rows_at(f, 5)
    assert white is None
    assert black.line == 2 and black.run == (3,)
    assert black.cycle_faces == ("L2#1", "L2#2", "L1#2")
    black, white = pente_rows_at(f, 4)
    assert black is None
    assert white.line == 2 and white.run == (2,)
    assert white.cycle_faces == ("L1#1", "L1#2", "L2#1")


def test_a2_has_no_pente_rows():
    # edges 1 and 2 close faces but 2 strands leave no adjacent level
    f = fence_from_braid(BraidWord(2, (1, 1, 1)))
    assert pente_rows_at(f, 1) == (None, None)
    assert pente_rows_at(f, 2) == (None, None)
    with pytest.raises(PreconditionError):
        pente_rows_at(f, 0)


def test_a2_quiver():
    qp = braid_qp(2, (1, 1, 1))
    assert qp.quiver.vertices == ("L1#1", "L1#2")
    assert [(a.tail, a.head) for a in qp.quiver.arrows] == [("L1#1", "L1#2")]
    assert qp.potential.is_zero()


def test_t33_quiver_and_potential():
    qp = braid_qp(3, (1, 2, 1, 2, 1, 2))
    arrows = {a.id: (a.tail, a.head) for a in qp.quiver.arrows}
    assert arrows == {
        "a1": ("L2#1", "L1#1"),
        "a2": ("L1#1", "L1#2"),
        "a3": ("L1#2", "L2#1"),
        "a4": ("L2#1", "L2#2"),
        "a5": ("L2#2", "L1#2"),
    }
    by_id = {a.id: a for a in qp.quiver.arrows}
    want = Potential.of(by_id["a4"], by_id["a5"], by_id["a3"]) - Potential.of(
        by_id["a2"], by_id["a3"], by_id["a1"]
    )
    assert qp.potential == want


def test_face_count_matches_letter_multiplicities():
    rng = random.Random(11)
    for _ in range(60):
        word = random_braid(rng)
        f = fence_from_braid(word)
        expected = sum(
            max(word.letters.count(k) - 1, 0) for k in set(word.letters)
        )
        assert len(faces(f)) == expected


def test_source_sequence_a2():
    f = fence_from_braid(BraidWord(2, (1, 1, 1)))
    assert source_sequence(f, 2) == ("L1#1",)


def test_source_sequence_t33_and_mutation_effect():
    f = fence_from_braid(BraidWord(3, (1, 2, 1, 2, 1, 2)))
    seq = source_sequence(f, 5)
    assert seq == ("L2#1",)
    qp = build_qp(f)
    for v in seq:
        qp, _ = mutate(qp, v)
    incoming = [a for a in qp.quiver.arrows if a.head == "L2#2"]
    assert incoming == []


def test_source_sequence_requires_rightmost_edge():
    f = fence_from_braid(BraidWord(3, (1, 2, 1, 2, 1, 2)))
    with pytest.raises(PreconditionError):
        source_sequence(f, 3)


def test_empty_word_fence_has_no_faces():
    f = fence_from_braid(BraidWord(2, ()))
    assert faces(f) == []
    qp = build_qp(f)
    assert qp.quiver.vertices == ()
