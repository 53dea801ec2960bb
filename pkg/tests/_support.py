"""Shared helpers: random triangular vertices of a prescribed class."""

from __future__ import annotations

import random
from fractions import Fraction

from orthograph import FieldCtx, Mat
from orthograph.classify import VertexTag

CLASSES = (VertexTag.BAD1, VertexTag.BAD2, VertexTag.SGOOD, VertexTag.NSGOOD)
Q = FieldCtx.rationals()


def random_rational(rng: random.Random, zero_prob: float = 0.3) -> Fraction:
    if rng.random() < zero_prob:
        return Fraction(0)
    return Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 7))


def _nonzero(rng):
    return random_rational(rng, 0.0)


def diagonal_for(tag: VertexTag, n: int, rng: random.Random) -> list:
    if tag is VertexTag.BAD1:
        return [Fraction(0)] + [_nonzero(rng) for _ in range(n - 1)]
    if tag is VertexTag.BAD2:
        return [_nonzero(rng) for _ in range(n - 1)] + [Fraction(0)]
    if tag is VertexTag.SGOOD:
        return [Fraction(0)] + [random_rational(rng, 0.4) for _ in range(n - 2)] + [Fraction(0)]
    # ns-good: a zero strictly inside, ends not both zero
    while True:
        d = [random_rational(rng, 0.4) for _ in range(n)]
        d[rng.randint(1, n - 2)] = Fraction(0)
        if d[0] != 0 or d[-1] != 0:
            return d


def random_vertex(tag: VertexTag, n: int, rng: random.Random) -> Mat:
    while True:
        diag = diagonal_for(tag, n, rng)
        zero_prob = rng.choice((0.2, 0.5, 0.8))
        rows = [
            [diag[i] if i == j else (random_rational(rng, zero_prob) if j > i else 0) for j in range(n)]
            for i in range(n)
        ]
        A = Mat(rows, Q)
        if not A.is_zero():
            return A
