"""Integer chains: chains representing zero, their height sequences, the
blow-down calculus, and the chains attached to a singularity model.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .lattice import cf_eval
from .cqs import CqsModel


def alpha_seq(k: Sequence[int]) -> tuple[int, ...]:
    """Heights alpha_1..alpha_e for a chain (k_2,...,k_{e-1}).

    alpha_1 = 0, alpha_2 = 1, alpha_{i-1} + alpha_{i+1} = k_i * alpha_i.
    """
    alpha = [0, 1]
    for entry in k:
        alpha.append(entry * alpha[-1] - alpha[-2])
    return tuple(alpha)


@dataclass(frozen=True)
class ZeroChain:
    """A chain whose continued fraction is defined and evaluates to zero,
    with nonnegative heights; indexes a reduced versal base component.
    """

    k: tuple[int, ...]
    alpha: tuple[int, ...]

    @property
    def alpha_interior(self) -> tuple[int, ...]:
        return self.alpha[1:-1]

    def alpha_at(self, i: int) -> int:
        """alpha_i with the 1-based indexing alpha_1..alpha_e."""
        return self.alpha[i - 1]

    def k_at(self, i: int) -> int:
        """k_i with 2 <= i <= e-1."""
        return self.k[i - 2]

    def to_json(self) -> dict:
        return {"k": list(self.k), "alpha": list(self.alpha)}


def make_zero_chain(k: Sequence[int]) -> ZeroChain:
    """Validate and wrap a chain representing zero."""
    k = tuple(k)
    alpha = alpha_seq(k)
    if alpha[-1] != 0 or any(a < 1 for a in alpha[1:-1]):
        raise ValueError(f"{k} does not represent zero with positive interior heights")
    val = cf_eval(k)
    assert val == 0, f"continued fraction of {k} is {val}, not 0"
    return ZeroChain(k=k, alpha=alpha)


def zero_chains_bounded(bounds: Sequence[int]) -> list[ZeroChain]:
    """All chains k with 1 <= k_i <= bounds[i] representing zero, in
    lexicographic order.

    Depth-first search carrying (alpha_{i-1}, alpha_i); a branch dies as
    soon as an interior height drops below 1, and the final entry must
    bring the last height to exactly 0.
    """
    m = len(bounds)
    out: list[ZeroChain] = []
    if m == 0:
        return out

    def rec(pos: int, prefix: list[int], a_prev: int, a_cur: int) -> None:
        if pos == m - 1:
            # alpha_e = k*a_cur - a_prev must equal 0.
            if a_prev % a_cur == 0:
                k_last = a_prev // a_cur
                if 1 <= k_last <= bounds[pos]:
                    chain = tuple(prefix) + (k_last,)
                    out.append(ZeroChain(k=chain, alpha=alpha_seq(chain)))
            return
        for k in range(1, bounds[pos] + 1):
            a_next = k * a_cur - a_prev
            if a_next < 1:
                continue
            prefix.append(k)
            rec(pos + 1, prefix, a_cur, a_next)
            prefix.pop()

    if m == 1:
        # Single entry: alpha_3 = k*1 - 0 = 0 forces k = 0, never in range.
        return out
    rec(0, [], 0, 1)
    return out


@lru_cache(maxsize=None)
def _enumerate_K_cached(n: int, q: int, a_chain: tuple[int, ...]) -> tuple[ZeroChain, ...]:
    return tuple(zero_chains_bounded(a_chain))


def enumerate_K(model: CqsModel) -> list[ZeroChain]:
    """All zero chains below the model's chain, lexicographically ordered."""
    return list(_enumerate_K_cached(model.n, model.q, model.a_chain))


def rdp_chain(e: int) -> tuple[int, ...]:
    """The chain of the RDP-resolution: (1,2,...,2,1), degenerating to
    (1,1) for e = 4 and (0) for e = 3."""
    if e < 3:
        raise ValueError(f"embedding dimension {e} < 3")
    if e == 3:
        return (0,)
    if e == 4:
        return (1, 1)
    return (1,) + (2,) * (e - 4) + (1,)


class NormalForm:
    """Result of blowing a chain down: Smooth, Singular(chain), or Invalid."""

    SMOOTH = "smooth"
    SINGULAR = "singular"
    INVALID = "invalid"

    __slots__ = ("kind", "chain")

    def __init__(self, kind: str, chain: Optional[tuple[int, ...]] = None):
        self.kind = kind
        self.chain = chain

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NormalForm)
            and self.kind == other.kind
            and self.chain == other.chain
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.chain))

    def __repr__(self) -> str:
        if self.kind == self.SINGULAR:
            return f"Singular{self.chain}"
        return self.kind.capitalize()

    @property
    def is_smooth(self) -> bool:
        return self.kind == self.SMOOTH

    def to_json(self):
        return "smooth" if self.is_smooth else list(self.chain or [])


Smooth = NormalForm(NormalForm.SMOOTH)
Invalid = NormalForm(NormalForm.INVALID)


def _blow_down_step(chain: tuple[int, ...], pos: int) -> tuple[int, ...]:
    """Remove the entry 1 at pos, decrementing its neighbours (interior)
    or the new boundary entry (boundary)."""
    if pos == 0:
        return (chain[1] - 1,) + chain[2:]
    if pos == len(chain) - 1:
        return chain[:-2] + (chain[-2] - 1,)
    return chain[: pos - 1] + (chain[pos - 1] - 1, chain[pos + 1] - 1) + chain[pos + 2 :]


def blow_down_trace(
    chain: Sequence[int],
) -> tuple[NormalForm, list[tuple[tuple[int, ...], int]], tuple[int, ...]]:
    """Blow a chain down (leftmost 1 first), recording each (chain, position)
    step so the process can be replayed as blow-ups.

    Returns (normal form, trace, terminal chain).
    """
    cur = tuple(chain)
    trace: list[tuple[tuple[int, ...], int]] = []
    while True:
        if any(c < 1 for c in cur):
            return Invalid, trace, cur
        if cur in ((1,), (1, 1)) or len(cur) == 0:
            return Smooth, trace, cur
        if 1 not in cur:
            return NormalForm(NormalForm.SINGULAR, cur), trace, cur
        pos = cur.index(1)
        trace.append((cur, pos))
        cur = _blow_down_step(cur, pos)


def blow_down(chain: Sequence[int]) -> NormalForm:
    """Normal form of a chain under the blow-down process."""
    nf, _, _ = blow_down_trace(chain)
    return nf


def blow_up_step(chain: tuple[int, ...], pos: int, length_before: int) -> tuple[int, ...]:
    """Inverse of _blow_down_step: reinsert a 1 at pos into a chain that had
    length length_before before the corresponding blow-down."""
    if pos == 0:
        return (1, chain[0] + 1) + chain[1:]
    if pos == length_before - 1:
        return chain[:-1] + (chain[-1] + 1, 1)
    return chain[: pos - 1] + (chain[pos - 1] + 1, 1, chain[pos] + 1) + chain[pos + 1 :]


def chain_to_nq(chain: Sequence[int]) -> tuple[int, int]:
    """(n, q) of the singularity whose dual chain is the given normal-form
    chain: cf_eval(chain) = n/(n-q)."""
    chain = tuple(chain)
    if not chain or any(c < 2 for c in chain):
        raise ValueError(f"{chain} is not a normal-form singular chain")
    val = cf_eval(chain)
    assert val is not None and val > 1
    n, nq = val.numerator, val.denominator
    return n, n - nq


def special_k(model: CqsModel, h: int) -> ZeroChain:
    """The zero chain singled out by replacing a_h with 1 and blowing down.

    Replay: blow (a_2,...,1,...,a_{e-1}) down fully, take the RDP chain of
    the result, then blow both chains back up simultaneously.  The returned
    chain k has k_h = 1 and a_h - k_h maximal over all of K.
    """
    if not 3 <= h <= model.e - 2:
        raise ValueError(f"h = {h} must be interior (3..{model.e - 2})")
    if not any(zc.k_at(h) == 1 for zc in enumerate_K(model)):
        raise ValueError(f"no zero chain for Y_({model.n},{model.q}) has k_{h} = 1")

    a = list(model.a_chain)
    a[h - 2] = 1
    nf, trace, final = blow_down_trace(tuple(a))
    assert nf.kind != NormalForm.INVALID

    k = rdp_chain(len(final) + 2)
    for chain_before, pos in reversed(trace):
        k = blow_up_step(k, pos, len(chain_before))
    assert len(k) == model.e - 2 and k[h - 2] == 1
    zc = make_zero_chain(k)
    assert zc in enumerate_K(model)
    return zc
