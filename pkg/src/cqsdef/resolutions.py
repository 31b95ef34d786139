"""Partial resolutions: the two-dimensional fans attached to chains
representing zero, fan decompositions giving simultaneous resolutions of
the one-parameter deformations, and canonical models via the bounded-face
hull.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .lattice import Cone2, Vec2, cone_normal_form
from .cqs import CqsModel
from .chains import ZeroChain
from .minkowski import (
    Decomposition,
    decomposition_D,
    decomposition_Dbar,
    segment,
)
from .totalspace import Cone3, Deformation, build_deformation
from .geometry3 import (
    IVec3,
    cross3,
    dot3,
    gorenstein_functional,
    is_canonical_cone3 as _is_canonical_gens,
    roof_facets,
)


# ---------------------------------------------------------------------------
# the two-dimensional fan of a zero chain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TauCone:
    """Cone number i of the fan, bounded by the rays at heights alpha_i
    with respect to w^i; right is the boundary toward the (1,0)-ray."""

    i: int
    ray_right: Vec2
    ray_left: Vec2
    alpha: int
    roof_len: int

    @property
    def degenerate(self) -> bool:
        return self.ray_left == self.ray_right

    def cone2(self) -> Cone2:
        if self.degenerate:
            raise ValueError(f"tau_{self.i} is degenerate")
        return Cone2(self.ray_right, self.ray_left)

    def at_most_rdp(self) -> bool:
        """Smooth or a rational double point (normal form q = n - 1)."""
        n, q = cone_normal_form(self.cone2())
        return n == 1 or q == n - 1


@dataclass(frozen=True)
class PResolutionFan:
    """Fan refining the singularity cone, one (possibly degenerate) cone
    per chain index, with roofs of lattice length (a_i - k_i)*alpha_i at
    height alpha_i."""

    model: CqsModel
    k: ZeroChain
    rays: tuple[Vec2, ...]
    cones: tuple[TauCone, ...]

    def cone_at(self, i: int) -> TauCone:
        return self.cones[i - 2]

    def to_json(self) -> dict:
        from .cqs import display_n_point

        return {
            "k": list(self.k.k),
            "rays": [list(v.as_int_pair()) for v in self.rays],
            "rays_display": [
                [str(c) for c in display_n_point(v, self.model)] for v in self.rays
            ],
            "cones": [
                {
                    "i": t.i,
                    "alpha": t.alpha,
                    "roof_length": t.roof_len,
                    "degenerate": t.degenerate,
                }
                for t in self.cones
            ],
        }


@lru_cache(maxsize=None)
def _p_resolution_cached(n: int, q: int, k: tuple[int, ...]) -> PResolutionFan:
    from .cqs import cqs_new
    from .chains import make_zero_chain

    return _build_p_resolution(cqs_new(n, q), make_zero_chain(k))


def p_resolution_fan(model: CqsModel, k: ZeroChain) -> PResolutionFan:
    return _p_resolution_cached(model.n, model.q, k.k)


def _build_p_resolution(model: CqsModel, k: ZeroChain) -> PResolutionFan:
    e = model.e
    boundary: list[Vec2] = [Vec2(1, 0)]
    for j in range(2, e - 1):
        w_j, w_n = model.wgen(j), model.wgen(j + 1)
        det = w_j.x * w_n.y - w_j.y * w_n.x
        assert det in (1, -1)
        aj, an = k.alpha_at(j), k.alpha_at(j + 1)
        rx = Fraction(w_n.y * aj - w_j.y * an, det)
        ry = Fraction(-w_n.x * aj + w_j.x * an, det)
        assert rx.denominator == 1 and ry.denominator == 1
        ray = Vec2(int(rx), int(ry))
        g = math.gcd(abs(int(rx)), abs(int(ry)))
        assert g == 1, "interior ray is not primitive"
        assert model.sigma.contains(ray)
        boundary.append(ray)
    boundary.append(Vec2(-model.q, model.n))

    cones = []
    for i in range(2, e):
        right, left = boundary[i - 2], boundary[i - 1]
        alpha = k.alpha_at(i)
        w_i = model.wgen(i)
        assert right.dot(w_i) == alpha and left.dot(w_i) == alpha
        diff = left - right
        direction = Vec2(-w_i.y, w_i.x)  # leftward primitive tangent
        if direction.x != 0:
            c = Fraction(diff.x) / Fraction(direction.x)
        else:
            c = Fraction(diff.y) / Fraction(direction.y)
        assert c.denominator == 1 and c >= 0 and c * direction == diff
        roof_len = int(c)
        assert roof_len == (model.a(i) - k.k_at(i)) * alpha, "roof length mismatch"
        cones.append(
            TauCone(i=i, ray_right=right, ray_left=left, alpha=alpha, roof_len=roof_len)
        )

    rays = tuple(dict.fromkeys(boundary))
    return PResolutionFan(model=model, k=k, rays=rays, cones=tuple(cones))


# ---------------------------------------------------------------------------
# fan decompositions and the three-dimensional fans they assemble
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PieceDecomposition:
    """Decomposition of the slice of one fan cone, in the global canonical
    coordinates of the full slice."""

    i: int
    s0: tuple[Fraction, Fraction]
    s1: tuple[Fraction, Fraction]
    degenerate: bool


@dataclass(frozen=True)
class FanDecomposition:
    """Per-cone Minkowski decompositions S^d_{h,p}[k] / Sbar^d_h[k] whose
    offsets make consecutive summand pieces share endpoints."""

    model: CqsModel
    k: ZeroChain
    kind: str  # "S" | "Sbar"
    h: int
    p: int
    d: int
    fan: PResolutionFan
    pieces: tuple[PieceDecomposition, ...]
    induced: Decomposition

    @property
    def label(self) -> str:
        k_str = ",".join(str(c) for c in self.k.k)
        if self.kind == "S":
            return f"S_{{{self.h},{self.p}}}^{self.d}[{k_str}]"
        return f"Sbar_{{{self.h}}}^{self.d}[{k_str}]"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "k": list(self.k.k),
            "h": self.h,
            "p": self.p,
            "d": self.d,
            "pieces": [
                {
                    "i": pc.i,
                    "s0": [str(pc.s0[0]), str(pc.s0[1])],
                    "s1": [str(pc.s1[0]), str(pc.s1[1])],
                }
                for pc in self.pieces
            ],
        }


def fan_decomposition(
    model: CqsModel, k: ZeroChain, kind: str, h: int, p: int, d: int
) -> FanDecomposition:
    """Decompose every cone slice so the pieces assemble to the deformation
    decomposition: away from index h one summand is a point, at h the slice
    splits by depth p*d (kind S) or d - alpha_{h-1} (kind Sbar)."""
    if kind not in ("S", "Sbar"):
        raise ValueError(f"unknown kind {kind!r}")
    gap = model.a(h) - k.k_at(h)
    if kind == "S":
        if not 1 <= d:
            raise ValueError(f"d = {d} < 1")
        if not 1 <= p:
            raise ValueError(f"p = {p} < 1")
        if p * d > gap:
            raise ValueError(f"p*d = {p * d} exceeds a_h - k_h = {gap}")
        depth = p * d
    else:
        if not 3 <= h <= model.e - 2:
            raise ValueError(f"h = {h} not interior (3..{model.e - 2})")
        if p != 1:
            raise ValueError(f"p = {p} != 1")
        if k.alpha_at(h) != 1:
            raise ValueError(f"alpha_{h} = {k.alpha_at(h)} != 1")
        a_prev = k.alpha_at(h - 1)
        if not a_prev <= d <= gap + a_prev:
            raise ValueError(f"d = {d} outside [{a_prev}, {gap + a_prev}]")
        depth = d - a_prev

    fan = p_resolution_fan(model, k)
    seg = segment(model, h)

    # Slice interval of each fan cone, in the global canonical coordinates.
    def slice_coord(ray: Vec2) -> Fraction:
        t = ray.dot(model.wgen(h))
        assert t > 0
        return seg.coord_of(Vec2(Fraction(ray.x, t), Fraction(ray.y, t)))

    intervals: dict[int, tuple[Fraction, Fraction]] = {}
    for tau in fan.cones:
        left = slice_coord(tau.ray_left)
        right = slice_coord(tau.ray_right)
        assert left <= right
        intervals[tau.i] = (left, right)
    ordered = sorted(fan.cones, key=lambda t: -t.i)  # left to right
    for prev, nxt in zip(ordered, ordered[1:]):
        assert intervals[prev.i][1] == intervals[nxt.i][0], "slices are not adjacent"
    assert intervals[ordered[0].i][0] == seg.beta
    assert intervals[ordered[-1].i][1] == seg.gamma
    local_len_h = intervals[h][1] - intervals[h][0]
    assert local_len_h == gap, f"slice at h has length {local_len_h}, expected {gap}"

    cum0, cum1 = seg.beta, Fraction(0)
    pieces = []
    for tau in ordered:
        total = intervals[tau.i][1] - intervals[tau.i][0]
        if tau.i == h:
            len0, len1 = total - depth, Fraction(depth)
        elif kind == "Sbar" and tau.i < h:
            len0, len1 = Fraction(0), total
        else:
            len0, len1 = total, Fraction(0)
        s0 = (cum0, cum0 + len0)
        s1 = (cum1, cum1 + len1)
        assert s0[0] + s1[0] == intervals[tau.i][0] and s0[1] + s1[1] == intervals[tau.i][1]
        pieces.append(
            PieceDecomposition(i=tau.i, s0=s0, s1=s1, degenerate=(total == 0))
        )
        cum0, cum1 = s0[1], s1[1]
    pieces.sort(key=lambda pc: pc.i)

    if kind == "S":
        induced = decomposition_D(seg, p, d)
    else:
        induced = decomposition_Dbar(seg, d)
    assert (cum0 == induced.s0[1]) and (cum1 == induced.s1[1]), (
        "induced decomposition does not match"
    )
    assert pieces and seg.beta == induced.s0[0] + induced.s1[0]

    fd = FanDecomposition(
        model=model,
        k=k,
        kind=kind,
        h=h,
        p=p,
        d=d,
        fan=fan,
        pieces=tuple(pieces),
        induced=induced,
    )
    _validate_piece_admissibility(fd)
    return fd


def _validate_piece_admissibility(fd: FanDecomposition) -> None:
    for pc in fd.pieces:
        b0, g0 = pc.s0
        b1, g1 = pc.s1
        if fd.p == 1:
            assert any(v.denominator == 1 for v in (Fraction(b0), Fraction(b1)))
            assert any(v.denominator == 1 for v in (Fraction(g0), Fraction(g1)))
        else:
            assert Fraction(b1).denominator == 1 and Fraction(g1).denominator == 1
            assert (g1 - b1) % fd.p == 0


@dataclass(frozen=True)
class MaxCone3:
    tau_index: Optional[int]
    cone: Cone3
    qgorenstein: bool
    canonical: bool
    rdp_or_smooth: Optional[bool]

    def to_json(self) -> dict:
        return {
            "tau_index": self.tau_index,
            "rays": self.cone.to_json(),
            "qgorenstein": self.qgorenstein,
            "canonical": self.canonical,
            "rdp_or_smooth": self.rdp_or_smooth,
        }


@dataclass(frozen=True)
class Fan3:
    """A three-dimensional fan with support the total-space cone."""

    support: Cone3
    cones: tuple[MaxCone3, ...]

    @property
    def all_canonical(self) -> bool:
        return all(c.canonical for c in self.cones)

    @property
    def all_qgorenstein(self) -> bool:
        return all(c.qgorenstein for c in self.cones)

    def cone_ray_sets(self) -> set[frozenset[IVec3]]:
        return {frozenset(c.cone.generators) for c in self.cones}

    def to_json(self) -> dict:
        return {
            "support": self.support.to_json(),
            "cones": [c.to_json() for c in self.cones],
        }


def assemble_fan3(fd: FanDecomposition) -> Fan3:
    """Cone over each per-cone decomposition; the full-dimensional cones
    tile the total-space cone of the induced decomposition."""
    defo = build_deformation(fd.model, fd.induced)
    m0, p = defo.m0, fd.p
    cones = []
    for pc in fd.pieces:
        if pc.degenerate:
            continue
        rays = [
            (pc.s0[0] + m0, Fraction(1), Fraction(0)),
            (pc.s0[1] + m0, Fraction(1), Fraction(0)),
            (pc.s1[0] / p, Fraction(0), Fraction(1)),
            (pc.s1[1] / p, Fraction(0), Fraction(1)),
        ]
        cone = Cone3.from_rays(rays)
        tau = fd.fan.cone_at(pc.i)
        rdp = None
        if not tau.degenerate:
            rdp = tau.at_most_rdp()
        cones.append(
            MaxCone3(
                tau_index=pc.i,
                cone=cone,
                qgorenstein=gorenstein_functional(cone.generators) is not None,
                canonical=_is_canonical_gens(cone.generators),
                rdp_or_smooth=rdp,
            )
        )

    support = defo.sigma_prime
    dual = support.dual_rays()
    for mc in cones:
        for g in mc.cone.generators:
            assert all(dot3(r, g) >= 0 for r in dual), "cone escapes the support"
    _assert_fan_interfaces(cones)
    fan = Fan3(support=support, cones=tuple(cones))
    assert fan.all_qgorenstein, "a fan cone lost its generator hyperplane"
    return fan


def _assert_fan_interfaces(cones: list[MaxCone3]) -> None:
    """Consecutive cones must lie on opposite sides of their common face."""
    ordered = sorted(cones, key=lambda c: -(c.tau_index or 0))
    for left, right in zip(ordered, ordered[1:]):
        shared = [g for g in left.cone.generators if g in right.cone.generators]
        if len(shared) < 2:
            raise AssertionError("adjacent cones share no 2D face")
        nrm = cross3(shared[0], shared[1])
        assert nrm != (0, 0, 0)
        sides_l = {s for g in left.cone.generators if (s := _sign(dot3(nrm, g))) != 0}
        sides_r = {s for g in right.cone.generators if (s := _sign(dot3(nrm, g))) != 0}
        assert len(sides_l) <= 1 and len(sides_r) <= 1
        if sides_l and sides_r:
            assert sides_l != sides_r, "adjacent cones overlap"


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def is_canonical_cone3(cone: Cone3) -> bool:
    """No nonzero lattice point strictly below the hyperplane through the
    primitive generators; requires the generators to be on one hyperplane."""
    return _is_canonical_gens(cone.generators)


# ---------------------------------------------------------------------------
# canonical models
# ---------------------------------------------------------------------------


def _canonical_predicate(defo: Deformation, k: ZeroChain) -> bool:
    """Combinatorial criterion for the fan decomposition over k to give
    the canonical model of the deformation's total space."""
    model, h = defo.model, defo.h
    fan = p_resolution_fan(model, k)
    for tau in fan.cones:
        if tau.i == h or tau.degenerate:
            continue
        if not tau.at_most_rdp():
            return False
    gap = model.a(h) - k.k_at(h)
    depth = defo.p * defo.d if defo.kind == "D" else defo.d - k.alpha_at(h - 1)
    if depth == gap:
        return True
    tau_h = fan.cone_at(h)
    return (not tau_h.degenerate) and tau_h.at_most_rdp()


def fan_decomposition_for(defo: Deformation, k: ZeroChain) -> FanDecomposition:
    kind = "S" if defo.kind == "D" else "Sbar"
    return fan_decomposition(defo.model, k, kind, defo.h, defo.p, defo.d)


def canonical_model(defo: Deformation) -> tuple[ZeroChain, Fan3]:
    """The component whose simultaneous resolution is the canonical model
    of the total space, with the resolved fan; the combinatorial choice is
    cross-checked against the bounded-face hull of the cone."""
    from .totalspace import components_of

    winners = [k for k in components_of(defo) if _canonical_predicate(defo, k)]
    if len(winners) != 1:
        raise RuntimeError(
            f"{defo.label}: expected exactly one canonical component, got "
            f"{[k.k for k in winners]}"
        )
    k = winners[0]
    fan = assemble_fan3(fan_decomposition_for(defo, k))
    if not fan.all_canonical:
        raise RuntimeError(f"{defo.label}: chosen fan for {k.k} is not canonical")
    if fan.cone_ray_sets() != hull_cone_ray_sets(defo.sigma_prime):
        raise RuntimeError(
            f"{defo.label}: predicate and hull canonical models disagree"
        )
    return k, fan


def hull_cone_ray_sets(cone: Cone3) -> set[frozenset[IVec3]]:
    """Maximal cones of the bounded-face hull fan, as primitive ray sets."""
    return {
        frozenset(Cone3.from_rays(verts).generators)
        for _, _, verts in roof_facets(cone.generators)
    }


def canonical_model_via_hull(cone: Cone3) -> Fan3:
    """Fan over the bounded faces of the hull of the nonzero lattice points
    of the cone."""
    facets = roof_facets(cone.generators)
    cones = []
    for nrm, off, verts in facets:
        sub = Cone3.from_rays(verts)
        cones.append(
            MaxCone3(
                tau_index=None,
                cone=sub,
                qgorenstein=gorenstein_functional(sub.generators) is not None,
                canonical=_is_canonical_gens(sub.generators),
                rdp_or_smooth=None,
            )
        )
    return Fan3(support=cone, cones=tuple(cones))


def lattice_points_right(model: CqsModel, k: ZeroChain, h: int) -> int:
    """Number of slice lattice points strictly to the right of the cone at
    index h, counted geometrically."""
    if not 3 <= h <= model.e - 2:
        raise ValueError(f"h = {h} not interior (3..{model.e - 2})")
    if k.alpha_at(h) != 1:
        raise ValueError(f"alpha_{h} = {k.alpha_at(h)} != 1")
    fan = p_resolution_fan(model, k)
    seg = segment(model, h)
    tau = fan.cone_at(h)
    t = tau.ray_right.dot(model.wgen(h))
    right_end = seg.coord_of(Vec2(Fraction(tau.ray_right.x, t), Fraction(tau.ray_right.y, t)))
    assert right_end.denominator == 1
    return math.floor(seg.gamma) - int(right_end)
