"""Exact 3D lattice geometry: pointed cones, dual rays, lattice points of
bounded polyhedra, Hilbert bases, Gorenstein hyperplanes, canonicity, and
the bounded-face hull over a cone's lattice points.

Vectors are plain integer 3-tuples; rational data stays in Fraction until
it is cleared to integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

IVec3 = tuple[int, int, int]


def dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def sub3(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def add3(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def neg3(a):
    return (-a[0], -a[1], -a[2])


def cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def prim3(v: Sequence[int]) -> IVec3:
    g = math.gcd(math.gcd(abs(v[0]), abs(v[1])), abs(v[2]))
    if g == 0:
        raise ValueError("zero vector")
    return (v[0] // g, v[1] // g, v[2] // g)


def prim3_rational(v) -> IVec3:
    """Primitive integer vector on the ray through a rational point."""
    fs = [Fraction(c) for c in v]
    m = 1
    for f in fs:
        m = m * f.denominator // math.gcd(m, f.denominator)
    return prim3([int(f * m) for f in fs])


def dual_rays3(gens: Sequence[IVec3]) -> list[IVec3]:
    """Extremal rays of the dual of a full-dimensional pointed cone,
    i.e. its inward primitive facet normals."""
    rays: set[IVec3] = set()
    n = len(gens)
    for i, j in combinations(range(n), 2):
        nrm = cross3(gens[i], gens[j])
        if nrm == (0, 0, 0):
            continue
        pos = neg = False
        for k in range(n):
            s = dot3(nrm, gens[k])
            pos = pos or s > 0
            neg = neg or s < 0
        if pos and neg:
            continue
        if not pos and not neg:
            raise ValueError("cone is not full-dimensional")
        rays.add(prim3(nrm if pos else neg3(nrm)))
    if len(rays) < 3:
        raise ValueError("cone is not full-dimensional or not pointed")
    return sorted(rays)


def _solve3_int(rows, rhs):
    """Cramer numerators and denominator for rows * x = rhs; None if
    singular.  The solution is (nx/den, ny/den, nz/den) with den != 0."""
    a, b, c = rows
    det = dot3(a, cross3(b, c))
    if det == 0:
        return None

    def rep(col):
        m = [list(a), list(b), list(c)]
        for r in range(3):
            m[r][col] = rhs[r]
        return dot3(m[0], cross3(m[1], m[2]))

    return rep(0), rep(1), rep(2), det


def _solve3(rows, rhs):
    """Exact rational solution of a 3x3 system, or None if singular."""
    sol = _solve3_int(rows, rhs)
    if sol is None:
        return None
    nx, ny, nz, den = sol
    return (Fraction(nx, den), Fraction(ny, den), Fraction(nz, den))


def lattice_points_ineq(ineqs: Sequence[tuple[IVec3, int]]) -> list[IVec3]:
    """All integer points of the bounded polyhedron {u : <a,u> >= b}.

    Vertex enumeration fixes the (x, y) bounding ranges; the z-interval at
    each (x, y) comes from integer ceiling/floor divisions, so the scan
    itself runs on plain integers.
    """
    verts = []
    for trip in combinations(range(len(ineqs)), 3):
        rows = [ineqs[t][0] for t in trip]
        rhs = [ineqs[t][1] for t in trip]
        sol = _solve3_int(rows, rhs)
        if sol is None:
            continue
        nx, ny, nz, den = sol
        if den < 0:
            nx, ny, nz, den = -nx, -ny, -nz, -den
        if all(nx * a[0] + ny * a[1] + nz * a[2] >= b * den for a, b in ineqs):
            verts.append((nx, ny, den))
    if not verts:
        return []

    def ceil_div(p, q):
        return -((-p) // q)

    x_lo = min(ceil_div(v[0], v[2]) for v in verts)
    x_hi = max(v[0] // v[2] for v in verts)
    y_lo = min(ceil_div(v[1], v[2]) for v in verts)
    y_hi = max(v[1] // v[2] for v in verts)
    if any(a[2] > 0 for a, _ in ineqs) != any(a[2] < 0 for a, _ in ineqs):
        raise ValueError("polyhedron is unbounded in z")
    out: list[IVec3] = []
    rows_int = [(a[0], a[1], a[2], b) for a, b in ineqs]
    for x in range(x_lo, x_hi + 1):
        for y in range(y_lo, y_hi + 1):
            z_lo, z_hi = None, None
            feasible = True
            for a0, a1, a3, b in rows_int:
                c = b - a0 * x - a1 * y
                if a3 == 0:
                    if c > 0:
                        feasible = False
                        break
                elif a3 > 0:
                    lo = -((-c) // a3)
                    if z_lo is None or lo > z_lo:
                        z_lo = lo
                else:
                    hi = c // a3
                    if z_hi is None or hi < z_hi:
                        z_hi = hi
            if not feasible:
                continue
            if z_lo is None or z_hi is None:
                raise ValueError("polyhedron is unbounded")
            for z in range(z_lo, z_hi + 1):
                out.append((x, y, z))
    return out


def cone_contains3(dual: Sequence[IVec3], p: IVec3) -> bool:
    return all(dot3(r, p) >= 0 for r in dual)


def hilbert_basis_3d(
    gens: Sequence[IVec3], psi: Optional[IVec3] = None
) -> list[IVec3]:
    """Minimal generators of cone(gens) ∩ Z^3 for a pointed full-dim cone.

    Brute force: enumerate the lattice points of the cone below the
    zonotope height bound, then discard every point that splits as a sum
    of two nonzero cone points.  psi may supply a functional that is
    strictly positive on the cone; by default the sum of the dual rays is
    used.
    """
    gens = [prim3(g) for g in gens]
    dual = dual_rays3(gens)
    if psi is None:
        psi = tuple(sum(r[i] for r in dual) for i in range(3))
    assert all(dot3(psi, g) > 0 for g in gens), "psi not positive on the cone"
    bound = sum(dot3(psi, g) for g in gens)
    ineqs = [(r, 0) for r in dual] + [(neg3(psi), -(bound - 1))]
    pts = [p for p in lattice_points_ineq(ineqs) if p != (0, 0, 0)]
    pts.sort(key=lambda p: (dot3(psi, p), p))
    # A reducible point splits off some already-found basis element, so it
    # suffices to reduce against the basis built so far.
    basis: list[IVec3] = []
    heights: list[int] = []
    for p in pts:
        hp = dot3(psi, p)
        reducible = False
        for q, hq in zip(basis, heights):
            if hq >= hp:
                break
            if cone_contains3(dual, sub3(p, q)):
                reducible = True
                break
        if not reducible:
            basis.append(p)
            heights.append(hp)
    return sorted(basis)


def gorenstein_functional(gens: Sequence[IVec3]):
    """Rational u with <u, g> = 1 for every primitive generator, or None.

    Existence of u is the Q-Gorenstein condition for the affine toric
    variety of the cone.
    """
    gens = [prim3(g) for g in gens]
    base = None
    for trip in combinations(gens, 3):
        sol = _solve3(list(trip), [1, 1, 1])
        if sol is not None:
            base = sol
            break
    if base is None:
        # All generators coplanar through 0: not a full-dim cone.
        raise ValueError("generators do not span 3-space")
    if all(dot3_frac(base, g) == 1 for g in gens):
        return base
    return None


def dot3_frac(a, b) -> Fraction:
    return Fraction(a[0]) * b[0] + Fraction(a[1]) * b[1] + Fraction(a[2]) * b[2]


def polytope_facets(points: Sequence[IVec3]) -> list[tuple[IVec3, int]]:
    """Inward facet inequalities (a, b): <a, x> >= b of conv(points)."""
    facets: set[tuple[IVec3, int]] = set()
    pts = list(dict.fromkeys(points))
    for trip in combinations(range(len(pts)), 3):
        p0, p1, p2 = (pts[t] for t in trip)
        nrm = cross3(sub3(p1, p0), sub3(p2, p0))
        if nrm == (0, 0, 0):
            continue
        b = dot3(nrm, p0)
        pos = neg = False
        for p in pts:
            s = dot3(nrm, p) - b
            pos = pos or s > 0
            neg = neg or s < 0
        if pos and neg:
            continue
        if neg:
            nrm, b = neg3(nrm), -b
        g = math.gcd(math.gcd(math.gcd(abs(nrm[0]), abs(nrm[1])), abs(nrm[2])), abs(b))
        if g > 1:
            nrm, b = (nrm[0] // g, nrm[1] // g, nrm[2] // g), b // g
        facets.add((nrm, b))
    return sorted(facets)


def is_canonical_cone3(gens: Sequence[IVec3]) -> bool:
    """No nonzero lattice point of the cone lies strictly below the affine
    hyperplane through the primitive generators."""
    gens = [prim3(g) for g in gens]
    u = gorenstein_functional(gens)
    if u is None:
        raise ValueError("generators are not on a single affine hyperplane")
    region = polytope_facets([(0, 0, 0)] + gens)
    for p in lattice_points_ineq(region):
        if p == (0, 0, 0):
            continue
        if dot3_frac(u, p) < 1:
            return False
    return True


def _facet_polygon_vertices(pts: Sequence[IVec3], normal: IVec3) -> list[IVec3]:
    """Vertices of the 2D convex hull of coplanar 3D points."""
    ax = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != ax]
    flat = [(p[keep[0]], p[keep[1]], p) for p in dict.fromkeys(pts)]
    if len(flat) <= 2:
        return [f[2] for f in flat]
    flat.sort(key=lambda t: (t[0], t[1]))

    def half(seq):
        hull = []
        for t in seq:
            while (
                len(hull) >= 2
                and (hull[-1][0] - hull[-2][0]) * (t[1] - hull[-2][1])
                - (hull[-1][1] - hull[-2][1]) * (t[0] - hull[-2][0])
                <= 0
            ):
                hull.pop()
            hull.append(t)
        return hull

    lower = half(flat)
    upper = half(list(reversed(flat)))
    verts = lower[:-1] + upper[:-1]
    return [t[2] for t in verts]


def roof_facets(gens: Sequence[IVec3]) -> list[tuple[IVec3, int, list[IVec3]]]:
    """Bounded facets of conv((cone ∩ Z^3) \\ {0}): triples (normal, offset,
    facet vertices), with <normal, x> >= offset on the hull and the normal
    strictly positive on the cone."""
    gens = [prim3(g) for g in gens]
    psi = (0, 1, 1) if all(g[1] + g[2] > 0 for g in gens) else None
    hb = hilbert_basis_3d(gens, psi=psi)
    found: dict[tuple[IVec3, int], list[IVec3]] = {}
    for trip in combinations(range(len(hb)), 3):
        p0, p1, p2 = (hb[t] for t in trip)
        raw = cross3(sub3(p1, p0), sub3(p2, p0))
        if raw == (0, 0, 0):
            continue
        raw_b = dot3(raw, p0)
        for nrm, b in ((raw, raw_b), (neg3(raw), -raw_b)):
            if b <= 0:
                continue
            if any(dot3(nrm, g) <= 0 for g in gens):
                continue
            if any(dot3(nrm, p) < b for p in hb):
                continue
            g = math.gcd(math.gcd(math.gcd(abs(nrm[0]), abs(nrm[1])), abs(nrm[2])), b)
            nrm, b = (nrm[0] // g, nrm[1] // g, nrm[2] // g), b // g
            if (nrm, b) not in found:
                on_plane = [p for p in hb if dot3(nrm, p) == b]
                found[(nrm, b)] = _facet_polygon_vertices(on_plane, nrm)
            break
    return [(n, b, v) for (n, b), v in sorted(found.items())]
