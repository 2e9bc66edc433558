"""Orbits of the D-average map and their terminal behaviour.

Every orbit reaches width <= 1 in finitely many steps. From there it is either
fixed (width 0, or width 1 with even minimum) or rotates one place to the left
per step (width 1 with odd minimum).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import transforms as tf
from .core import AscendingCycle
from .errors import CapExceeded, InvariantViolation, UsageError
from .transforms import DifferenceVector, VectorLike, as_vector


class TerminalClass(str, Enum):
    FIXED_WIDTH0 = "FixedWidth0"
    FIXED_WIDTH1_EVEN_MIN = "FixedWidth1EvenMin"
    PERIODIC_WIDTH1_ODD_MIN = "PeriodicWidth1OddMin"
    TRANSIENT = "Transient"

    def __str__(self) -> str:
        return self.value


class WitnessKind(str, Enum):
    WIDTH_DROP = "WidthDrop"
    SMIN_DROP = "SminDrop"

    def __str__(self) -> str:
        return self.value


def width(d: VectorLike) -> int:
    e = tuple(d)
    if not e:
        raise UsageError("width of an empty vector")
    return max(e) - min(e)


def s_min(d: VectorLike) -> int:
    """Total length of the blocks of minimum values (= number of minimal entries)."""
    e = tuple(d)
    m = min(e)
    return sum(1 for x in e if x == m)


def default_cap(d: VectorLike) -> int:
    """``max(N*n, 64)``; for untagged vectors N falls back to a width-based bound."""
    d = as_vector(d)
    N = d.modulus if d.modulus is not None else max(abs(d.sum), d.n * (d.width + 1))
    return max(N * d.n, 64)


# --- blocks -----------------------------------------------------------------

def _cyclic_runs(mask: list[bool]) -> list[tuple[int, int]]:
    """Maximal cyclic runs of True as inclusive ``(start, end)`` index pairs."""
    n = len(mask)
    if all(mask):
        return [(0, n - 1)]
    runs = []
    for i in range(n):
        if mask[i] and not mask[i - 1]:
            j = i
            while mask[(j + 1) % n]:
                j = (j + 1) % n
            runs.append((i, j))
    return runs


def _block_len(block: tuple[int, int], n: int) -> int:
    i, j = block
    return (j - i) % n + 1


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks of minimum and maximum values of a vector, read on the n-cycle.

    ``gaps[p]`` is the number of indices strictly between ``blocks_min[p]`` and
    the next min block. ``deep_gaps`` lists the ``p`` whose gap holds an entry
    ``>= min + 2``, and ``lead_lengths[p]`` counts the ``min + 1`` entries that
    directly follow block ``p`` before the first such entry.
    """

    vector: tuple[int, ...]
    min_value: int
    blocks_min: tuple[tuple[int, int], ...]
    blocks_max: tuple[tuple[int, int], ...]
    gaps: tuple[int, ...]
    s_min: int
    s_max: int
    deep_gaps: tuple[int, ...]
    lead_lengths: dict[int, int] = field(default_factory=dict)
    constant: bool = False

    def block_length(self, p: int) -> int:
        return _block_len(self.blocks_min[p], len(self.vector))


def decompose_blocks(d: VectorLike) -> BlockDecomposition:
    e = tuple(d)
    n = len(e)
    if n == 0:
        raise UsageError("empty vector")
    m, M = min(e), max(e)
    mins = _cyclic_runs([x == m for x in e])
    maxs = _cyclic_runs([x == M for x in e])
    if m == M:
        return BlockDecomposition(e, m, tuple(mins), tuple(maxs), (0,), n, n, (), {}, True)

    gaps, deep, leads = [], [], {}
    for p, (_, j) in enumerate(mins):
        i_next = mins[(p + 1) % len(mins)][0]
        g = (i_next - j - 1) % n
        gaps.append(g)
        gap_vals = [e[(j + 1 + t) % n] for t in range(g)]
        if any(x >= m + 2 for x in gap_vals):
            deep.append(p)
            lead = 0
            while gap_vals[lead] == m + 1:
                lead += 1
            leads[p] = lead
    return BlockDecomposition(
        vector=e,
        min_value=m,
        blocks_min=tuple(mins),
        blocks_max=tuple(maxs),
        gaps=tuple(gaps),
        s_min=sum(_block_len(b, n) for b in mins),
        s_max=sum(_block_len(b, n) for b in maxs),
        deep_gaps=tuple(deep),
        lead_lengths=leads,
    )


# --- iteration ----------------------------------------------------------------

def iterate(d: VectorLike, k: int) -> DifferenceVector:
    if k < 0:
        raise UsageError(f"k must be >= 0, got {k}")
    d = as_vector(d)
    for _ in range(k):
        d = tf.dav_fc(d)
    return d


def classify(d: VectorLike) -> TerminalClass:
    e = tuple(d)
    w = width(e)
    if w == 0:
        return TerminalClass.FIXED_WIDTH0
    if w == 1:
        if min(e) % 2 == 0:
            return TerminalClass.FIXED_WIDTH1_EVEN_MIN
        return TerminalClass.PERIODIC_WIDTH1_ODD_MIN
    return TerminalClass.TRANSIENT


def rotation_period(d: VectorLike) -> int:
    """Least ``p >= 1`` such that rotating left ``p`` places gives ``d`` back."""
    e = tuple(d)
    n = len(e)
    for p in range(1, n):
        if e[p:] + e[:p] == e:
            return p
    return n


def _terminal(d: DifferenceVector) -> tuple[TerminalClass, int]:
    cls = classify(d)
    nxt = tf.dav_fc(d)
    if cls is TerminalClass.PERIODIC_WIDTH1_ODD_MIN:
        if nxt != tf.rotate_left(d):
            raise InvariantViolation(f"width-1 odd-min vector {d.entries} did not rotate left")
        return cls, rotation_period(d)
    if nxt != d:
        raise InvariantViolation(f"{d.entries} classified {cls} but is not fixed")
    return cls, 1


@dataclass(frozen=True)
class TraceStep:
    k: int
    a: tuple[int, ...] | None
    d: tuple[int, ...]
    width: int


@dataclass(frozen=True)
class OrbitReport:
    """Orbit summary. ``trace`` covers steps ``0..K`` plus ``tail`` extra steps.

    When ``cap_hit`` is set the orbit never reached width <= 1:
    ``distance_to_cycle`` is then the cap, the class is ``Transient`` and
    ``period`` is 0.
    """

    trace: tuple[TraceStep, ...]
    distance_to_cycle: int
    terminal_class: TerminalClass
    period: int
    cap_hit: bool

    @property
    def terminal(self) -> TraceStep:
        return self.trace[self.distance_to_cycle] if not self.cap_hit else self.trace[-1]


def _run(d0: DifferenceVector, a0: AscendingCycle | None, cap: int, tail: int) -> OrbitReport:
    if cap < 1:
        raise UsageError(f"cap must be >= 1, got {cap}")
    d, a = d0, a0
    steps = []

    def record(k):
        steps.append(TraceStep(k, None if a is None else a.entries, d.entries, d.width))

    def advance():
        nonlocal a, d
        nd = tf.dav_fc(d)
        if a is not None:
            a = tf.dav_A(a)
            if tf.diff(a) != nd:
                raise InvariantViolation(f"diff(dav_A(a)) != dav_fc(diff(a)) at a={a.entries}")
        d = nd

    k = 0
    record(0)
    while d.width > 1:
        if k >= cap:
            return OrbitReport(tuple(steps), k, TerminalClass.TRANSIENT, 0, True)
        advance()
        k += 1
        record(k)
    cls, period = _terminal(d)
    for _ in range(tail):
        advance()
        k += 1
        record(k)
    return OrbitReport(tuple(steps), len(steps) - 1 - tail, cls, period, False)


def orbit(d: VectorLike, cap: int | None = None, tail: int = 0) -> OrbitReport:
    """Iterate the D-average until width <= 1, then classify the terminal vector."""
    d = as_vector(d)
    return _run(d, None, default_cap(d) if cap is None else cap, tail)


def orbit_labeled(a: AscendingCycle, cap: int | None = None, tail: int = 0) -> OrbitReport:
    """Like :func:`orbit` but iterates the onset cycle itself, recording both columns."""
    d = tf.diff(a)
    return _run(d, a, default_cap(d) if cap is None else cap, tail)


def distance_to_cycle(d: VectorLike, cap: int | None = None) -> int:
    d = as_vector(d)
    cap = default_cap(d) if cap is None else cap
    k = 0
    while d.width > 1:
        if k >= cap:
            raise CapExceeded(f"width still > 1 after {cap} steps")
        d = tf.dav_fc(d)
        k += 1
    return k


def condition_c_witness(d: VectorLike, cap: int | None = None) -> tuple[int, WitnessKind]:
    """Least ``k >= 1`` at which the width or the min-block length has dropped.

    A width drop wins when both happen at the same step.
    """
    d = as_vector(d)
    w0, s0 = d.width, s_min(d)
    if w0 < 2:
        raise UsageError(f"condition C needs width >= 2, got {w0}")
    cap = default_cap(d) if cap is None else cap
    cur = d
    for k in range(1, cap + 1):
        cur = tf.dav_fc(cur)
        if cur.width < w0:
            return k, WitnessKind.WIDTH_DROP
        if s_min(cur) < s0:
            return k, WitnessKind.SMIN_DROP
    raise CapExceeded(f"no width or s_min drop within {cap} steps from {d.entries}")


# --- block erosion ------------------------------------------------------------

@dataclass(frozen=True)
class BlockOutcome:
    block: tuple[int, int]
    lead: int
    expected: str  # "shrunk" or "vanished"
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ErosionReport:
    passed: bool
    checked: tuple[int, ...]
    via_f_plus: bool
    outcomes: tuple[BlockOutcome, ...]

    @property
    def failures(self) -> tuple[BlockOutcome, ...]:
        return tuple(o for o in self.outcomes if not o.ok)


def block_erosion_check(d: VectorLike) -> ErosionReport:
    """Check that every min block followed by a deep gap erodes on schedule.

    For a block ``[i, j]`` whose gap starts with ``lead`` entries equal to
    ``m + 1``, after ``lead + 1`` steps the block must be ``[i, j - 1]`` when it
    had length > 1, or gone when it had length 1. Odd-minimum input is first
    mapped through ``f_plus``, which raises the minimum by one and commutes
    with iteration up to a relabelling.
    """
    d = as_vector(d)
    if d.width < 2:
        raise UsageError(f"block erosion needs width >= 2, got {d.width}")
    via = d.min % 2 == 1
    if via:
        d = tf.f_plus(d)
    bd = decompose_blocks(d)
    n, m = d.n, bd.min_value
    outcomes = []
    for p in bd.deep_gaps:
        i, j = bd.blocks_min[p]
        lead = bd.lead_lengths[p]
        after = iterate(d, lead + 1).entries
        size = bd.block_length(p)
        if size > 1:
            inside = [(i + t) % n for t in range(size - 1)]
            ok = (
                all(after[x] == m for x in inside)
                and after[j] > m
                and after[(i - 1) % n] > m
            )
            expected = "shrunk"
        else:
            ok = after[i] > m
            expected = "vanished"
        detail = "" if ok else f"after {lead + 1} steps: {after}"
        outcomes.append(BlockOutcome((i, j), lead, expected, ok, detail))
    return ErosionReport(all(o.ok for o in outcomes), d.entries, via, tuple(outcomes))
