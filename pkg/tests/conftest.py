"""Shared fixtures and independent brute-force oracles."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd

import pytest

from cqsdef.lattice import Cone2, Vec2, cf_eval
from cqsdef.cqs import cqs_new


def iter_models(n_max: int, n_min: int = 3):
    for n in range(n_min, n_max + 1):
        for q in range(1, n - 1):
            if gcd(n, q) == 1:
                yield cqs_new(n, q)


def brute_hilbert_basis_2d(cone: Cone2) -> set[tuple[int, int]]:
    """Irreducible lattice points of the cone, found by enumerating the
    fundamental parallelogram of the two primitive rays."""
    r1, r2 = cone.ray1, cone.ray2
    det = r1.det(r2)

    def coeffs(v: Vec2):
        return Fraction(v.det(r2), det), Fraction(r1.det(v), det)

    corners = [Vec2(0, 0), r1, r2, r1 + r2]
    xs = [int(c.x) for c in corners]
    ys = [int(c.y) for c in corners]
    candidates = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            v = Vec2(x, y)
            if v.is_zero():
                continue
            a, b = coeffs(v)
            if 0 <= a <= 1 and 0 <= b <= 1:
                candidates.append(v)

    def in_cone(v: Vec2) -> bool:
        a, b = coeffs(v)
        return a >= 0 and b >= 0

    basis = set()
    for v in candidates:
        reducible = any(
            w != v and in_cone(v - w) and not (v - w).is_zero() for w in candidates
        )
        if not reducible:
            basis.add(v.as_int_pair())
    return basis


def brute_zero_chains(bounds) -> list[tuple[int, ...]]:
    """Filter the full product space by the defining conditions."""
    out = []
    for k in product(*[range(1, b + 1) for b in bounds]):
        val = cf_eval(k)
        if val != 0:
            continue
        alpha = [0, 1]
        for entry in k:
            alpha.append(entry * alpha[-1] - alpha[-2])
        if all(a >= 0 for a in alpha):
            out.append(k)
    return out


@pytest.fixture(scope="session")
def y83():
    return cqs_new(8, 3)
