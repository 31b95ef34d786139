"""Three-dimensional total spaces of the one-parameter deformations: the
cone over the two Minkowski summands, its dual-semigroup generators and
relations, the explicit equations, the maps into the versal family, and
the versal-component membership logic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .lattice import Vec2
from .cqs import CqsModel, to_display_coords
from .chains import ZeroChain, enumerate_K
from .minkowski import Decomposition, segment, enum_decompositions
from .geometry3 import IVec3, add3, cone_contains3, dot3, dual_rays3, prim3_rational


# ---------------------------------------------------------------------------
# sparse integer polynomials in the deformation parameter
# ---------------------------------------------------------------------------


class Poly:
    """Polynomial in the base-curve parameter with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict[int, int]] = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({0: c})

    @classmethod
    def lam(cls, coeff: int = 1, power: int = 1) -> "Poly":
        return cls({power: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs == ({} if other == 0 else {0: other})
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) - c
        return Poly(out)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def pow(self, n: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self.coeffs.items())]

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                parts.append(str(c))
            else:
                mono = "lam" if e == 1 else f"lam^{e}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# the total-space cone
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _dual_rays_cached(gens: tuple[IVec3, ...]) -> tuple[IVec3, ...]:
    return tuple(dual_rays3(gens))


@dataclass(frozen=True)
class Cone3:
    """A strictly convex 3D cone given by primitive integral generators."""

    generators: tuple[IVec3, ...]

    @classmethod
    def from_rays(cls, rays: Sequence[Sequence]) -> "Cone3":
        prims = []
        for r in rays:
            p = prim3_rational(tuple(r))
            if p not in prims:
                prims.append(p)
        return cls(generators=tuple(prims))

    def dual_rays(self) -> list[IVec3]:
        return list(_dual_rays_cached(self.generators))

    def contains(self, p: IVec3) -> bool:
        return cone_contains3(self.dual_rays(), p)

    def to_json(self) -> list[list[int]]:
        return [list(g) for g in self.generators]


@dataclass(frozen=True)
class Deformation:
    """A one-parameter toric deformation built from a slice decomposition.

    The cone is presented so that the lattice origin of the slice sits
    where the next dual generator w^{h+1} vanishes; summand coordinates of
    the stored decomposition are shifted by m0 into that presentation.
    The parameter realizes the difference of the monomials lam_monomials.
    """

    model: CqsModel
    decomp: Decomposition
    sigma_prime: Cone3
    m0: int
    s0: tuple[Fraction, Fraction]
    s1: tuple[Fraction, Fraction]

    @property
    def kind(self) -> str:
        return self.decomp.kind

    @property
    def h(self) -> int:
        return self.decomp.h

    @property
    def p(self) -> int:
        return self.decomp.p

    @property
    def d(self) -> int:
        return self.decomp.d

    @property
    def label(self) -> str:
        return self.decomp.label

    @property
    def lam_monomials(self) -> tuple[IVec3, IVec3]:
        return ((0, 0, 1), (0, self.p, 0))

    def degree_display(self) -> tuple[int, int]:
        u = to_display_coords(self.model.wgen(self.h), self.model)
        return (self.p * u[0], self.p * u[1])

    def phi(self, v: Vec2) -> IVec3:
        """The lattice embedding of the base surface into the total space."""
        w_h = self.model.wgen(self.h)
        w_next = self.model.wgen(self.h + 1)
        t = v.dot(w_h)
        c = v.dot(w_next)
        return (int(c), int(t), self.p * int(t))

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "h": self.h,
            "p": self.p,
            "d": self.d,
            "degree_display": list(self.degree_display()),
            "sigma_prime_rays": self.sigma_prime.to_json(),
        }


def build_deformation(model: CqsModel, decomp: Decomposition) -> Deformation:
    """Assemble the 3D cone over the two summands of a decomposition."""
    seg = segment(model, decomp.h)
    w_next = model.wgen(decomp.h + 1)
    m0 = int(seg.origin.dot(w_next))
    b0, g0 = decomp.s0[0] + m0, decomp.s0[1] + m0
    b1, g1 = decomp.s1
    p = decomp.p
    rays = [
        (b0, Fraction(1), Fraction(0)),
        (g0, Fraction(1), Fraction(0)),
        (Fraction(b1) / p, Fraction(0), Fraction(1)),
        (Fraction(g1) / p, Fraction(0), Fraction(1)),
    ]
    cone = Cone3.from_rays(rays)
    defo = Deformation(
        model=model, decomp=decomp, sigma_prime=cone, m0=m0, s0=(b0, g0), s1=(b1, g1)
    )
    dual = cone.dual_rays()
    for ray in (model.sigma.ray1, model.sigma.ray2):
        assert cone_contains3(dual, defo.phi(ray)), "slice embedding left the cone"
    return defo


def all_deformations(model: CqsModel) -> list[Deformation]:
    return [build_deformation(model, dec) for dec in enum_decompositions(model)]


# ---------------------------------------------------------------------------
# dual-semigroup generators and their relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorRelations:
    """Dual vectors v^1..v^e and the extra vtilde, with the relations among
    them verified by exact arithmetic."""

    v: tuple[IVec3, ...]
    v_tilde: IVec3
    relations: tuple[tuple, ...]  # (description, lhs, rhs) with lhs == rhs

    def to_json(self) -> dict:
        return {
            "v": [list(x) for x in self.v],
            "v_tilde": list(self.v_tilde),
            "relations": [
                {"relation": desc, "value": list(lhs)} for desc, lhs, rhs in self.relations
            ],
        }


def generator_relations(defo: Deformation) -> GeneratorRelations:
    """Lift each dual generator of the surface into the dual of the total
    space cone: v^h = [0,1,0], vtilde^h = [0,0,1], v^{h+1} = [1,0,0] and
    v^{h-1} = [-1, a_h - p*d, d], the rest following the three-term
    recurrences appropriate to the decomposition kind."""
    model, h, p, d = defo.model, defo.h, defo.p, defo.d
    e = model.e
    seg = segment(model, h)
    direction = seg.unit - seg.origin
    base = seg.origin - defo.m0 * direction  # lattice point where w^{h+1} vanishes

    x = [0] * (e + 1)
    y = [0] * (e + 1)
    for i in range(1, e + 1):
        x[i] = int(direction.dot(model.wgen(i)))
        y[i] = int(base.dot(model.wgen(i)))
    assert x[h] == 0 and y[h] == 1 and x[h + 1] == 1 and y[h + 1] == 0

    u3 = [0] * (e + 1)
    if h >= 2:
        u3[h - 1] = d
    if defo.kind == "D":
        for i in range(h - 1, 1, -1):
            u3[i - 1] = model.a(i) * u3[i] - u3[i + 1]
    else:
        if h >= 3:
            u3[h - 2] = model.a(h - 1) * d - 1
        for i in range(h - 2, 1, -1):
            u3[i - 1] = model.a(i) * u3[i] - u3[i + 1]

    v = [None] * (e + 1)
    for i in range(1, e + 1):
        v[i] = (x[i], y[i] - p * u3[i], u3[i])
    v_tilde: IVec3 = (0, 0, 1)
    assert v[h] == (0, 1, 0) and v[h + 1] == (1, 0, 0)
    assert v[h - 1] == (-1, model.a(h) - p * d, d)

    dual = defo.sigma_prime.dual_rays()
    gens = defo.sigma_prime.generators
    for i in range(1, e + 1):
        assert all(dot3(g, v[i]) >= 0 for g in gens), f"v^{i} not in the dual cone"
    assert all(dot3(g, v_tilde) >= 0 for g in gens)

    relations = []

    def rel(desc, lhs, rhs):
        assert lhs == rhs, f"relation {desc} fails: {lhs} != {rhs}"
        relations.append((desc, lhs, rhs))

    skip = {h} if defo.kind == "D" else {h - 1, h}
    for i in range(2, e):
        if i in skip:
            continue
        rel(
            f"v{i - 1} + v{i + 1} = {model.a(i)} v{i}",
            add3(v[i - 1], v[i + 1]),
            tuple(model.a(i) * c for c in v[i]),
        )
    if defo.kind == "Dbar":
        rel(
            f"v{h - 2} + vtilde = {model.a(h - 1)} v{h - 1}",
            add3(v[h - 2], v_tilde),
            tuple(model.a(h - 1) * c for c in v[h - 1]),
        )
    m = model.a(h) - p * d
    rel(
        f"v{h - 1} + v{h + 1} = {m} v{h} + {d} vtilde",
        add3(v[h - 1], v[h + 1]),
        tuple(m * a + d * b for a, b in zip(v[h], v_tilde)),
    )
    return GeneratorRelations(v=tuple(v[1:]), v_tilde=v_tilde, relations=tuple(relations))


# ---------------------------------------------------------------------------
# explicit equations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Equation:
    """One defining equation of the total space in the chart coordinates.

    form "binomial":  x_{i-1} x_{i+1} = x_i^a
    form "main":      x_{h-1} x_{h+1} = x_h^m (x_h^p + lam)^d
    form "bar_side":  x_{h-2} (x_h + lam) = x_{h-1}^a
    """

    form: str
    i: int
    a: int = 0
    m: int = 0
    p: int = 1
    d: int = 0

    def __str__(self) -> str:
        if self.form == "binomial":
            return f"x{self.i - 1}*x{self.i + 1} = x{self.i}^{self.a}"
        if self.form == "bar_side":
            return f"x{self.i - 1}*(x{self.i + 1} + lam) = x{self.i}^{self.a}"
        inner = f"x{self.i}^{self.p} + lam" if self.p > 1 else f"x{self.i} + lam"
        return f"x{self.i - 1}*x{self.i + 1} = x{self.i}^{self.m}*({inner})^{self.d}"

    def specialize_lambda_zero(self) -> "Equation":
        if self.form == "binomial":
            return self
        if self.form == "main":
            return Equation(form="binomial", i=self.i, a=self.m + self.p * self.d)
        return Equation(form="binomial", i=self.i, a=self.a)

    def to_json(self) -> dict:
        out = {"form": self.form, "i": self.i, "text": str(self)}
        if self.form == "binomial":
            out["a"] = self.a
        elif self.form == "bar_side":
            out["a"] = self.a
        else:
            out.update({"m": self.m, "p": self.p, "d": self.d})
        return out


@dataclass(frozen=True)
class EquationSet:
    equations: tuple[Equation, ...]

    def specialize_lambda_zero(self) -> tuple[Equation, ...]:
        return tuple(eq.specialize_lambda_zero() for eq in self.equations)

    def to_json(self) -> list[dict]:
        return [eq.to_json() for eq in self.equations]


def deformation_equations(defo: Deformation) -> EquationSet:
    """The e-2 equations cutting out the deformed surface."""
    model, h, p, d = defo.model, defo.h, defo.p, defo.d
    eqs = []
    for i in range(2, model.e):
        if i == h:
            m = model.a(h) - p * d
            eqs.append(Equation(form="main", i=h, m=m, p=p, d=d))
        elif defo.kind == "Dbar" and i == h - 1:
            # x_{h-2} (x_h + lam) = x_{h-1}^{a_{h-1}}; stored with i = h-1
            # so that str() renders the neighbours of x_{h-1}.
            eqs.append(Equation(form="bar_side", i=h - 1, a=model.a(h - 1)))
        else:
            eqs.append(Equation(form="binomial", i=i, a=model.a(i)))
    assert len(eqs) == model.e - 2
    return EquationSet(equations=tuple(eqs))


# ---------------------------------------------------------------------------
# maps to the versal family and component membership
# ---------------------------------------------------------------------------


@dataclass
class VersalMap:
    """Assignment of base-curve polynomials to the versal deformation
    parameters s_i^(l) (1 < i < e, 1 <= l < a_i) and t_j (2 < j < e-1);
    parameters not present are zero."""

    s: dict[tuple[int, int], Poly] = field(default_factory=dict)
    t: dict[int, Poly] = field(default_factory=dict)

    def s_at(self, i: int, l: int) -> Poly:
        if l == 0:
            return Poly.const(1)
        if l < 0:
            return Poly()
        return self.s.get((i, l), Poly())

    def t_at(self, j: int) -> Poly:
        return self.t.get(j, Poly())

    def to_json(self) -> dict:
        return {
            "s": {f"s_{i}^({l})": poly.to_json() for (i, l), poly in sorted(self.s.items())},
            "t": {f"t_{j}": poly.to_json() for j, poly in sorted(self.t.items())},
        }


def versal_map(defo: Deformation) -> VersalMap:
    """The map of the parameter line into the versal base inducing the
    deformation: s_h^(p*l) = C(d,l) lam^l for the plain kind; t_h = lam
    and s_h^(l) = C(d-1,l) lam^l for the barred kind."""
    h, p, d = defo.h, defo.p, defo.d
    vm = VersalMap()
    if defo.kind == "D":
        for l in range(1, d + 1):
            vm.s[(h, p * l)] = Poly.lam(math.comb(d, l), l)
    else:
        vm.t[h] = Poly.lam()
        for l in range(1, d):
            vm.s[(h, l)] = Poly.lam(math.comb(d - 1, l), l)
    return vm


def theta_rewrite(k: ZeroChain, vm: VersalMap, model: CqsModel) -> VersalMap:
    """Express a parameter curve in the coordinates adapted to the
    component of k, by inverting the triangular substitution

        s_i^(l) -> sum_j C(alpha_{i-1}-1, j) t_i^j s_i^(l-j).
    """
    out = VersalMap(t=dict(vm.t))
    for i in range(2, model.e):
        alpha_prev = k.alpha_at(i - 1)
        t_i = vm.t_at(i)
        solved: dict[int, Poly] = {0: Poly.const(1)}
        for l in range(1, model.a(i)):
            val = vm.s_at(i, l)
            for j in range(1, min(l, alpha_prev - 1) + 1):
                val = val - math.comb(alpha_prev - 1, j) * (t_i.pow(j) * solved[l - j])
            solved[l] = val
            if not val.is_zero():
                out.s[(i, l)] = val
    return out


def lies_in_component(k: ZeroChain, rewritten: VersalMap, model: CqsModel) -> bool:
    """Component equations in the adapted coordinates: s_i^(l) = 0 for
    l > a_i - k_i, and t_i = 0 wherever alpha_i != 1."""
    for i in range(2, model.e):
        for l in range(model.a(i) - k.k_at(i) + 1, model.a(i)):
            if not rewritten.s_at(i, l).is_zero():
                return False
    for j in range(3, model.e - 1):
        if k.alpha_at(j) != 1 and not rewritten.t_at(j).is_zero():
            return False
    return True


def components_of(defo: Deformation) -> list[ZeroChain]:
    """Closed-form list of the reduced versal base components the
    deformation maps to."""
    model, h, p, d = defo.model, defo.h, defo.p, defo.d
    out = []
    for k in enumerate_K(model):
        gap = model.a(h) - k.k_at(h)
        if defo.kind == "D":
            if 1 <= p * d <= gap:
                out.append(k)
        else:
            a_prev = k.alpha_at(h - 1)
            if k.alpha_at(h) == 1 and a_prev <= d <= gap + a_prev:
                out.append(k)
    return out


def components_of_symbolic(defo: Deformation) -> list[ZeroChain]:
    """Membership decided through the versal map and the coordinate
    change; must agree with components_of."""
    vm = versal_map(defo)
    out = []
    for k in enumerate_K(defo.model):
        if lies_in_component(k, theta_rewrite(k, vm, defo.model), defo.model):
            out.append(k)
    return out


def nu_count(model: CqsModel, k: ZeroChain, h: int, p: int) -> int:
    """Number of one-parameter toric deformations in degree p*w^h mapping
    to the component of k."""
    gap = model.a(h) - k.k_at(h)
    if p == 1 and k.alpha_at(h) == 1 and 3 <= h <= model.e - 2:
        return 2 * gap + 1
    return gap // p
