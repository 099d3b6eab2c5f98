"""Seeded rational points on quadrics, for exact randomized checks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .blades import Signature
from .errors import InputError

_NUMERATORS = range(-4, 5)
_DENOMINATORS = range(1, 5)


def _small_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.choice(_NUMERATORS), rng.choice(_DENOMINATORS))


def _positive_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 4), rng.randint(1, 4))


def sphere_point(rng: random.Random, k: int) -> list[Fraction]:
    """A rational point of the unit sphere in R^k (k >= 1)."""
    if k < 1:
        raise InputError("sphere dimension must be positive")
    if k == 1:
        return [Fraction(rng.choice((1, -1)))]
    # inverse stereographic projection from the pole (1, 0, ..., 0)
    t = [_small_rational(rng) for _ in range(k - 1)]
    n2 = sum(x * x for x in t)
    den = n2 + 1
    pt = [(n2 - 1) / den] + [2 * x / den for x in t]
    if rng.random() < 0.5:
        pt[0] = -pt[0]
    return pt


def hyperbola_pair(rng: random.Random) -> tuple[Fraction, Fraction]:
    """Rationals (a, b) with a^2 - b^2 = 1 and a >= 1."""
    s = _positive_rational(rng)
    return (1 + s * s) / (2 * s), (1 - s * s) / (2 * s)


def unit_vector(rng: random.Random, sig: Signature, norm: int) -> list[Fraction]:
    """A rational vector v with h(v, v) = norm (norm = +1 or -1)."""
    p, q = sig.p, sig.q
    if norm == 1 and p == 0 or norm == -1 and q == 0:
        raise InputError(f"{sig} has no vectors of square {norm}")
    if norm == 1:
        if q == 0:
            return sphere_point(rng, p)
        a, b = hyperbola_pair(rng)
        if p and rng.random() < 0.25:
            a, b = Fraction(1), Fraction(0)
        return [a * x for x in sphere_point(rng, p)] + [b * y for y in sphere_point(rng, q)]
    if p == 0:
        return sphere_point(rng, q)
    a, b = hyperbola_pair(rng)
    if rng.random() < 0.25:
        a, b = Fraction(1), Fraction(0)
    return [b * x for x in sphere_point(rng, p)] + [a * y for y in sphere_point(rng, q)]


def random_unit_vector(rng: random.Random, sig: Signature) -> tuple[list[Fraction], int]:
    choices = ([1] if sig.p else []) + ([-1] if sig.q else [])
    norm = rng.choice(choices)
    return unit_vector(rng, sig, norm), norm


def nondegenerate_vector(rng: random.Random, sig: Signature) -> list[Fraction]:
    """A random rational vector with h(v, v) != 0."""
    while True:
        v = [_small_rational(rng) for _ in range(sig.d)]
        if quadratic(sig, v):
            return v


def quadratic(sig: Signature, v: Sequence) -> Fraction:
    return sum((sig.metric(i) * Fraction(x) ** 2 for i, x in enumerate(v)), Fraction(0))


def circle_point(rng: random.Random) -> tuple[Fraction, Fraction]:
    """Rationals (x, y) with x^2 + y^2 = 1."""
    return tuple(sphere_point(rng, 2))


def nonzero_schur_coords(rng: random.Random, k: int) -> list[Fraction]:
    while True:
        c = [_small_rational(rng) for _ in range(k)]
        if any(c):
            return c
