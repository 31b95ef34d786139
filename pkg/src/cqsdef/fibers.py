"""Singularities in the general fiber of a one-parameter toric deformation."""

from __future__ import annotations

from dataclasses import dataclass

from .chains import NormalForm, blow_down
from .totalspace import Deformation

ORIGIN = "origin"
OFF_ORIGIN = "off-origin"


@dataclass(frozen=True)
class SingularityList:
    """Singular points of the general fiber, after blowing the raw chains
    down; entries that blow down to a smooth chain are dropped but the raw
    chains are kept for auditing."""

    entries: tuple[tuple[NormalForm, int, str], ...]
    raw: tuple[tuple[tuple[int, ...], int, str], ...]

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def at_origin(self):
        for nf, _, loc in self.entries:
            if loc == ORIGIN:
                return nf
        return None

    def off_origin(self) -> list[tuple[NormalForm, int]]:
        return [(nf, mult) for nf, mult, loc in self.entries if loc == OFF_ORIGIN]

    def to_json(self, verbose: bool = False) -> dict:
        origin = self.at_origin()
        out = {
            "origin": origin.to_json() if origin else "smooth",
            "off_origin": [[nf.to_json(), mult] for nf, mult in self.off_origin()],
        }
        if verbose:
            out["raw_chains"] = [
                {"chain": list(ch), "multiplicity": m, "location": loc}
                for ch, m, loc in self.raw
            ]
        return out


def general_fiber(defo: Deformation) -> SingularityList:
    """Fiber singularities over a general parameter value.

    Plain kind: the chain with a_h lowered by p*d sits at the origin and p
    points of type A_{d-1} sit elsewhere.  Barred kind: the tail chain
    (a_h - d, a_{h+1}, ...) sits at the origin and (a_2, ..., a_{h-1}, d)
    at one other point.
    """
    model, h, p, d = defo.model, defo.h, defo.p, defo.d
    a = model.a_chain
    pos = h - 2
    raw: list[tuple[tuple[int, ...], int, str]] = []
    if defo.kind == "D":
        origin_chain = a[:pos] + (a[pos] - p * d,) + a[pos + 1 :]
        raw.append((origin_chain, 1, ORIGIN))
        raw.append(((d,), p, OFF_ORIGIN))
    else:
        raw.append(((a[pos] - d,) + a[pos + 1 :], 1, ORIGIN))
        raw.append((a[:pos] + (d,), 1, OFF_ORIGIN))

    entries = []
    for chain, mult, loc in raw:
        nf = blow_down(chain)
        if nf.kind == NormalForm.INVALID:
            raise RuntimeError(f"fiber chain {chain} of {defo.label} blew down below 1")
        if not nf.is_smooth:
            entries.append((nf, mult, loc))
    return SingularityList(entries=tuple(entries), raw=tuple(raw))


def is_smoothing(defo: Deformation) -> bool:
    """Whether the general fiber is smooth; when it is, the parameter
    pattern (d = 1 with p = a_h - 1, or the barred kind with a_h = 2 and
    d = 1) is asserted as a consistency check."""
    smooth = general_fiber(defo).is_empty
    if smooth:
        if defo.kind == "D":
            ok = defo.d == 1 and defo.p == defo.model.a(defo.h) - 1
        else:
            ok = defo.model.a(defo.h) == 2 and defo.d == 1
        if not ok:
            raise RuntimeError(f"{defo.label} is a smoothing outside the expected pattern")
    return smooth
