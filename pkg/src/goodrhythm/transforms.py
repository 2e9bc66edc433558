"""Vector-level maps: differences, the A/P/D average transformations and the
auxiliary bijections (rotations, reversal, unit shifts) used in the parity
reduction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from . import averages, core
from .core import AscendingCycle, OnsetRhythm, PolygonView
from .errors import UsageError


@dataclass(frozen=True, slots=True)
class DifferenceVector:
    """Integer n-vector, optionally tagged as an element of CD_N^(n).

    With ``modulus=N`` every entry lies in ``[0, N-1]`` and the plain integer
    sum is ``N``. Untagged vectors are arbitrary elements of Z^n. The tag is
    context only and does not take part in equality.
    """

    entries: tuple[int, ...]
    modulus: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if not self.entries:
            raise UsageError("empty difference vector")
        if self.modulus is not None:
            N = self.modulus
            if any(not 0 <= x < N for x in self.entries) or sum(self.entries) != N:
                raise UsageError(f"{self.entries} is not in CD_{N}^({len(self.entries)})")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def sum(self) -> int:
        return sum(self.entries)

    @property
    def min(self) -> int:
        return min(self.entries)

    @property
    def max(self) -> int:
        return max(self.entries)

    @property
    def width(self) -> int:
        return max(self.entries) - min(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __repr__(self) -> str:
        tag = "" if self.modulus is None else f", N={self.modulus}"
        return f"DifferenceVector({self.entries}{tag})"


VectorLike = Union[DifferenceVector, Sequence[int]]


def as_vector(d: VectorLike, modulus: int | None = None) -> DifferenceVector:
    if isinstance(d, DifferenceVector):
        return d
    return DifferenceVector(tuple(d), modulus)


def _like(d: DifferenceVector, entries: Iterable[int], keep_modulus: bool) -> DifferenceVector:
    return DifferenceVector(tuple(entries), d.modulus if keep_modulus else None)


def diff(a: AscendingCycle) -> DifferenceVector:
    """Cyclic gaps ``a_{k+1} -_N a_k``; always an element of CD_N^(n)."""
    e, N, n = a.entries, a.modulus, a.n
    return DifferenceVector(tuple(core.sub_mod(e[(k + 1) % n], e[k], N) for k in range(n)), N)


def dav_A(a: AscendingCycle) -> AscendingCycle:
    e, N, n = a.entries, a.modulus, a.n
    # AscendingCycle re-validates property (A) on construction
    return AscendingCycle(tuple(averages.av_z_int(e[k], e[(k + 1) % n], N) for k in range(n)), N)


def dav_P(p: PolygonView) -> PolygonView:
    vs = p.vertices()
    n = len(vs)
    return PolygonView.from_vertices(averages.av_mu(vs[k], vs[(k + 1) % n]) for k in range(n))


def dav_fc(d: VectorLike) -> DifferenceVector:
    d = as_vector(d)
    e, n = d.entries, d.n
    return _like(d, (averages.av_fc(e[k], e[(k + 1) % n]) for k in range(n)), True)


def dav_cf(d: VectorLike) -> DifferenceVector:
    d = as_vector(d)
    e, n = d.entries, d.n
    return _like(d, (averages.av_cf(e[k], e[(k + 1) % n]) for k in range(n)), False)


def rotate_right(d: VectorLike) -> DifferenceVector:
    """Last entry moves to the front."""
    d = as_vector(d)
    return _like(d, d.entries[-1:] + d.entries[:-1], True)


def rotate_left(d: VectorLike) -> DifferenceVector:
    """First entry moves to the back."""
    d = as_vector(d)
    return _like(d, d.entries[1:] + d.entries[:1], True)


def reverse(d: VectorLike) -> DifferenceVector:
    d = as_vector(d)
    return _like(d, d.entries[::-1], True)


def shift_up(d: VectorLike) -> DifferenceVector:
    d = as_vector(d)
    return _like(d, (x + 1 for x in d.entries), False)


def shift_down(d: VectorLike) -> DifferenceVector:
    d = as_vector(d)
    return _like(d, (x - 1 for x in d.entries), False)


def f_plus(d: VectorLike) -> DifferenceVector:
    """Reverse, then add one to every entry."""
    return shift_up(reverse(d))


def g_plus(d: VectorLike) -> DifferenceVector:
    """Rotate right, reverse, then add one to every entry."""
    return shift_up(reverse(rotate_right(d)))


def rhythm_step(r: OnsetRhythm) -> OnsetRhythm:
    """One step of the rhythm self-map: average consecutive onsets cyclically."""
    return core.cycle_to_rhythm(dav_A(core.rhythm_to_cycle(r)))
