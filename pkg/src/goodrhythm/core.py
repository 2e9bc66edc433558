"""Residues mod N and the three equivalent views of a rhythm.

A rhythm of ``N`` pulses with ``n`` onsets can be held as

* an :class:`OnsetRhythm` (the set of sounded pulses, or a binary word),
* an :class:`AscendingCycle` (onset positions listed cyclically in
  ascending order, with exactly one wrap past ``N - 1``),
* a :class:`PolygonView` (vertices on the N-th roots of unity, stored by
  their exponents; no complex numbers are ever materialised).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvariantViolation, ParseError, UsageError


def reduce_mod(x: int, modulus: int) -> int:
    """Representative of ``x`` in ``[0, modulus - 1]``."""
    return x % modulus


def add_mod(a: int, b: int, modulus: int) -> int:
    return (a + b) % modulus


def neg_mod(a: int, modulus: int) -> int:
    return -a % modulus


def sub_mod(a: int, b: int, modulus: int) -> int:
    """``a -_N b``, written as ``a +_N (-b)``."""
    return add_mod(a, neg_mod(b, modulus), modulus)


@dataclass(frozen=True, slots=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise UsageError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise UsageError(f"{self.value} is not in [0, {self.modulus - 1}]")

    @classmethod
    def of(cls, x: int, modulus: int) -> "Residue":
        return cls(reduce_mod(x, modulus), modulus)

    def __add__(self, other: "Residue") -> "Residue":
        return residue_add(self, other)

    def __neg__(self) -> "Residue":
        return Residue(neg_mod(self.value, self.modulus), self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        return residue_add(self, -other)

    def __int__(self) -> int:
        return self.value


def _same_modulus(a: Residue, b: Residue) -> int:
    if a.modulus != b.modulus:
        raise UsageError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    return a.modulus


def residue_add(a: Residue, b: Residue) -> Residue:
    n = _same_modulus(a, b)
    return Residue(add_mod(a.value, b.value, n), n)


# --- property (A) -----------------------------------------------------------

def descents(entries: Sequence[int]) -> list[int]:
    """Indices ``k`` with ``a_k > a_{k+1}``, reading the sequence cyclically."""
    n = len(entries)
    return [k for k in range(n) if entries[k] > entries[(k + 1) % n]]


def is_ascending_cycle(entries: Sequence[int], modulus: int) -> bool:
    """True when ``entries`` are residues mod ``modulus`` with exactly one cyclic descent."""
    if len(entries) < 2:
        return False
    if any(not 0 <= x < modulus for x in entries):
        return False
    n = len(entries)
    # strict ascent everywhere except one strict descent
    if any(entries[k] == entries[(k + 1) % n] for k in range(n)):
        return False
    return len(descents(entries)) == 1


@dataclass(frozen=True, slots=True)
class AscendingCycle:
    """``n`` residues mod ``N`` with exactly one cyclic descent (property (A))."""

    entries: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if self.modulus < 2:
            raise UsageError(f"modulus must be >= 2, got {self.modulus}")
        if not is_ascending_cycle(self.entries, self.modulus):
            raise InvariantViolation(
                f"{self.entries} mod {self.modulus} does not satisfy property (A)"
            )

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def jumping_number(self) -> int:
        return jumping_number(self)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]


def jumping_number(a: AscendingCycle | Sequence[int]) -> int:
    """The unique index ``k0`` with ``a_{k0} > a_{k0+1}`` (indices mod n)."""
    entries = a.entries if isinstance(a, AscendingCycle) else tuple(a)
    found = descents(entries)
    if len(found) != 1:
        raise InvariantViolation(f"{entries} has {len(found)} cyclic descents, expected 1")
    return found[0]


@dataclass(frozen=True, slots=True)
class PolygonView:
    """Cyclic n-gon mod N; vertex ``i`` is the root of unity with exponent ``exponents[i]``."""

    exponents: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(x) for x in self.exponents))
        n = len(self.exponents)
        if n < 2:
            raise UsageError("a polygon needs at least 2 vertices")
        if any(not 0 <= x < self.modulus for x in self.exponents):
            raise UsageError(f"exponents {self.exponents} out of range mod {self.modulus}")
        if any(self.exponents[i] == self.exponents[(i + 1) % n] for i in range(n)):
            raise InvariantViolation(f"consecutive vertices coincide in {self.exponents}")

    def vertices(self) -> tuple[Residue, ...]:
        return tuple(Residue(x, self.modulus) for x in self.exponents)

    @classmethod
    def from_vertices(cls, vertices: Iterable[Residue]) -> "PolygonView":
        vs = list(vertices)
        if not vs:
            raise UsageError("empty vertex list")
        mod = vs[0].modulus
        for v in vs:
            _same_modulus(vs[0], v)
        return cls(tuple(v.value for v in vs), mod)


def to_polygon(a: AscendingCycle) -> PolygonView:
    return PolygonView(a.entries, a.modulus)


def from_polygon(p: PolygonView) -> AscendingCycle:
    return AscendingCycle(p.exponents, p.modulus)


# --- onset rhythms and text notations --------------------------------------

@dataclass(frozen=True, slots=True)
class OnsetRhythm:
    """``pulses`` time slots of which the positions in ``onsets`` are sounded."""

    pulses: int
    onsets: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "onsets", frozenset(int(x) for x in self.onsets))
        if self.pulses < 3:
            raise UsageError(f"need at least 3 pulses, got {self.pulses}")
        bad = sorted(x for x in self.onsets if not 0 <= x < self.pulses)
        if bad:
            raise UsageError(f"onsets {bad} outside [0, {self.pulses - 1}]")
        if not 1 <= len(self.onsets) < self.pulses:
            raise UsageError(
                f"onset count must be in [1, {self.pulses - 1}], got {len(self.onsets)}"
            )

    @property
    def n(self) -> int:
        return len(self.onsets)

    @property
    def sorted_onsets(self) -> tuple[int, ...]:
        return tuple(sorted(self.onsets))

    def bits(self) -> tuple[int, ...]:
        return tuple(1 if k in self.onsets else 0 for k in range(self.pulses))

    def to_binary(self) -> str:
        """Binary word with pulse 0 leftmost."""
        return "".join(map(str, self.bits()))

    def intervals(self) -> tuple[int, ...]:
        """Inter-onset intervals starting from the earliest onset; they sum to ``pulses``."""
        s = self.sorted_onsets
        n = len(s)
        return tuple((s[(k + 1) % n] - s[k]) % self.pulses or self.pulses for k in range(n))

    def to_onset_list(self) -> str:
        return ",".join(map(str, self.sorted_onsets))

    def to_interval_notation(self) -> str:
        """``i:`` interval list; an ``@offset`` suffix is added when the first onset is not 0."""
        body = "i:" + ",".join(map(str, self.intervals()))
        first = self.sorted_onsets[0]
        return body if first == 0 else f"{body}@{first}"

    @classmethod
    def from_binary(cls, text: str) -> "OnsetRhythm":
        text = text.strip()
        bad = set(text) - {"0", "1"}
        if bad:
            raise ParseError(f"binary rhythm may only contain 0 and 1, found {sorted(bad)}")
        if not text:
            raise ParseError("empty binary rhythm")
        onsets = {k for k, c in enumerate(text) if c == "1"}
        if not onsets:
            raise ParseError("rhythm has no onsets")
        return cls(len(text), frozenset(onsets))

    @classmethod
    def from_onsets(cls, onsets: Iterable[int], pulses: int) -> "OnsetRhythm":
        items = [int(x) for x in onsets]
        if not items:
            raise ParseError("rhythm has no onsets")
        if len(set(items)) != len(items):
            dup = sorted({x for x in items if items.count(x) > 1})
            raise ParseError(f"duplicate onsets {dup}")
        for x in items:
            if not 0 <= x < pulses:
                raise ParseError(f"onset {x} is not in [0, {pulses - 1}]")
        return cls(pulses, frozenset(items))

    @classmethod
    def from_intervals(cls, intervals: Sequence[int], offset: int = 0,
                       pulses: int | None = None) -> "OnsetRhythm":
        """First onset sits at ``offset`` (0 by default); the total is the pulse count."""
        ivs = [int(x) for x in intervals]
        if not ivs:
            raise ParseError("empty interval list")
        if any(x < 1 for x in ivs):
            raise ParseError(f"intervals must be positive, got {ivs}")
        total = sum(ivs)
        if pulses is not None and total != pulses:
            raise ParseError(f"intervals sum to {total}, but {pulses} pulses were declared")
        if not 0 <= offset < total:
            raise ParseError(f"offset {offset} is not in [0, {total - 1}]")
        pos, onsets = offset, []
        for x in ivs:
            onsets.append(pos % total)
            pos += x
        return cls(total, frozenset(onsets))


def rhythm_to_cycle(r: OnsetRhythm) -> AscendingCycle:
    if r.n < 2:
        raise UsageError("cycles need at least 2 onsets")
    return AscendingCycle(r.sorted_onsets, r.pulses)


def cycle_to_rhythm(a: AscendingCycle) -> OnsetRhythm:
    return OnsetRhythm(a.modulus, frozenset(a.entries))
