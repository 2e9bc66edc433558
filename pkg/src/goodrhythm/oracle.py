"""Brute-force ground truth.

Everything here is deliberately naive: spaces are enumerated in full, the
width / minimum-block / cycle computations are re-done with simple loops, and
each identity relating the averaging maps is checked case by case. Failures
are returned as data, with the first counterexample in enumeration order.
"""

from __future__ import annotations

import itertools
import random
import unittest.mock
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, floor
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import averages, core, dynamics, kernels
from . import transforms as tf
from .core import AscendingCycle, OnsetRhythm, Residue
from .errors import UsageError

DEFAULT_BUDGET = 5_000_000


# --- enumeration --------------------------------------------------------------

def cd_count(N: int, n: int) -> int:
    """|CD_N^(n)|: compositions of N into n parts in [0, N-1].

    Stars and bars counts all C(N+n-1, n-1) compositions; the only ones with a
    part >= N put all of N in a single slot, and there are n of those.
    """
    if n < 1:
        return 0
    return comb(N + n - 1, n - 1) - n


def _check_budget(count: int, budget: int) -> None:
    if count > budget:
        raise UsageError(f"space has {count} elements, over the budget of {budget}")


def enumerate_cd(N: int, n: int, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """All of CD_N^(n) in lexicographic order, zero entries included."""
    if N < 3 or n < 1:
        raise UsageError(f"need N >= 3 and n >= 1, got N={N}, n={n}")
    _check_budget(cd_count(N, n), budget)

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        for v in range(0, min(N - 1, remaining) + 1):
            if remaining - v > (N - 1) * (slots - 1):
                continue
            prefix.append(v)
            yield from rec(prefix, remaining - v, slots - 1)
            prefix.pop()

    yield from rec([], N, n)


def enumerate_diff_image(N: int, n: int, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """The part of CD_N^(n) reachable as a difference vector: all entries >= 1."""
    return (d for d in enumerate_cd(N, n, budget) if min(d) >= 1)


def enumerate_ca(N: int, n: int, budget: int = DEFAULT_BUDGET) -> Iterator[AscendingCycle]:
    """Every ascending cycle: each n-subset of Z_N in all n cyclic rotations."""
    if N < 3 or not 2 <= n <= N:
        raise UsageError(f"need N >= 3 and 2 <= n <= N, got N={N}, n={n}")
    _check_budget(n * comb(N, n), budget)
    for subset in itertools.combinations(range(N), n):
        for r in range(n):
            yield AscendingCycle(subset[r:] + subset[:r], N)


def brute_force_ca(N: int, n: int) -> list[tuple[int, ...]]:
    """Filter every n-tuple of distinct residues through the property (A) predicate."""
    return [t for t in itertools.permutations(range(N), n) if core.is_ascending_cycle(t, N)]


def hamming_check(r1: OnsetRhythm | str | Sequence[int], r2: OnsetRhythm | str | Sequence[int]) -> int:
    """Number of pulses at which two binary rhythm words differ."""

    def bits(r):
        if isinstance(r, OnsetRhythm):
            return r.bits()
        if isinstance(r, str):
            return tuple(int(c) for c in r)
        return tuple(int(x) for x in r)

    b1, b2 = bits(r1), bits(r2)
    if len(b1) != len(b2):
        raise UsageError(f"length mismatch: {len(b1)} vs {len(b2)}")
    return sum(x != y for x, y in zip(b1, b2))


# --- naive re-implementations ---------------------------------------------------

def _arc(a: int, b: int, N: int) -> set[int]:
    """Half-open cyclic arc [a, b): walk counterclockwise from a, stop before b."""
    out, x = set(), a
    while x != b:
        out.add(x)
        x = (x + 1) % N
    return out


def _naive_width(v: Sequence[int]) -> int:
    lo = hi = v[0]
    for x in v:
        lo, hi = min(lo, x), max(hi, x)
    return hi - lo


def _naive_min_block_total(v: Sequence[int]) -> int:
    lo = min(v)
    return len([x for x in v if x == lo])


def _naive_fc(a: int, b: int) -> int:
    # exact midpoint, then round toward the side picked by the parity of a
    mid = Fraction(a + b, 2)
    return floor(mid) if a % 2 == 0 else ceil(mid)


# --- identity suite ----------------------------------------------------------------

@dataclass
class IdentityResult:
    name: str
    description: str
    checked: int = 0
    failures: int = 0
    witness: object = None
    known_defect: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checked > 0


@dataclass
class VerificationReport:
    N_max: int
    results: list[IdentityResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when every identity holds, apart from those flagged as known defects."""
        return not self.failed()

    @property
    def strict_passed(self) -> bool:
        """True only if every identity, including the known-defect ones, holds."""
        return all(r.passed for r in self.results)

    def failed(self) -> list[IdentityResult]:
        return [r for r in self.results if not r.passed and not r.known_defect]

    def deviations(self) -> list[IdentityResult]:
        return [r for r in self.results if not r.passed and r.known_defect]

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            status = "PASS" if r.passed else ("DEVIATION" if r.known_defect else "FAIL")
            line = f"{status}  {r.name:<28} {r.checked:>9} cases  {r.description}"
            if not r.passed:
                line += f"\n      first witness: {r.witness!r} ({r.failures} failures)"
                if r.known_defect:
                    line += f"\n      {r.known_defect}"
            out.append(line)
        return out


def _check(name: str, description: str, cases: Iterable, pred: Callable[..., bool]) -> IdentityResult:
    res = IdentityResult(name, description)
    for case in cases:
        res.checked += 1
        try:
            ok = bool(pred(case))
            err = None
        except Exception as exc:  # failures are data here
            ok, err = False, exc
        if not ok:
            res.failures += 1
            if res.witness is None:
                res.witness = case if err is None else (case, f"{type(err).__name__}: {err}")
    return res


def _random_vectors(trials: int, seed: int, lo: int = -8, hi: int = 8, n_max: int = 8):
    rng = random.Random(seed)
    return [
        tuple(rng.randint(lo, hi) for _ in range(rng.randint(2, n_max)))
        for _ in range(trials)
    ]


def verify_identities(N_max: int = 10, random_trials: int = 2000, seed: int = 0) -> VerificationReport:
    """Exhaustively check the averaging identities for every N <= N_max and 2 <= n < N."""
    if N_max < 3:
        raise UsageError(f"N_max must be >= 3, got {N_max}")
    Ns = range(3, N_max + 1)
    pairs = [(N, a, b) for N in Ns for a in range(N) for b in range(N)]
    cycles = [a for N in Ns for n in range(2, N) for a in enumerate_ca(N, n)]
    cds = [tf.DifferenceVector(d) for N in Ns for n in range(2, N) for d in enumerate_cd(N, n)]
    rand = [tf.DifferenceVector(v) for v in _random_vectors(random_trials, seed)]
    vectors = cds + rand
    ints = range(-16, 17)
    report = VerificationReport(N_max)
    add = report.results.append

    # [a, a) is empty, so equal endpoints are checked against av(a, a) = a instead
    def z_in_arc(c):
        N, a, b = c
        got = averages.av_z_int(a, b, N)
        return got == a if a == b else got in _arc(a, b, N)

    def mu_in_arc(c):
        N, a, b = c
        got = averages.av_mu(Residue(a, N), Residue(b, N)).value
        return got == a if a == b else got in _arc(a, b, N)

    def chi_commutes(c):
        N, a, b = c
        return averages.av_z(Residue(a, N), Residue(b, N)) == averages.av_mu(Residue(a, N), Residue(b, N))

    def lemma_split(c):
        N, a, b = c
        expect = averages.av_floor(a, b) if a <= b else averages.av_floor(a, b + N) % N
        return averages.av_z_int(a, b, N) == expect

    add(_check("av_z in arc", "Z-average lands in the half-open arc", pairs, z_in_arc))
    add(_check("av_mu in arc", "mu-average lands in the half-open arc", pairs, mu_in_arc))
    add(_check("chi commutes", "the two residue averages agree", pairs, chi_commutes))
    add(_check("av_z case split", "av_z = av_f(a,b) or R_N(av_f(a,b+N))", pairs, lemma_split))

    small = [(N, n) for N in range(3, min(N_max, 8) + 1) for n in range(2, N)]

    def property_a(c):
        N, n = c
        brute = sorted(brute_force_ca(N, n))
        built = sorted(a.entries for a in enumerate_ca(N, n))
        return brute == built and len(brute) == n * comb(N, n)

    add(_check("property (A) enumeration", "brute filter = rotations of subsets = n*C(N,n)",
               small, property_a))

    def diff_in_cd(a):
        d = tf.diff(a)
        return sum(d) == a.modulus and all(1 <= x <= a.modulus - 1 for x in d)

    def dav_a_keeps_a(a):
        b = tf.dav_A(a)
        return core.is_ascending_cycle(b.entries, b.modulus) and len(set(b.entries)) == b.n

    def x_commutes(a):
        return tf.dav_P(core.to_polygon(a)) == core.to_polygon(tf.dav_A(a))

    def intertwines(a):
        return tf.diff(tf.dav_A(a)) == tf.dav_fc(tf.diff(a))

    add(_check("diff lands in CD", "A-differences sum to N with entries >= 1", cycles, diff_in_cd))
    add(_check("dav_A keeps (A)", "A-average stays an ascending cycle", cycles, dav_a_keeps_a))
    add(_check("X_N o dav_A = dav_P o X_N", "A- and P-averages commute with X_N", cycles, x_commutes))
    add(_check("diff intertwines", "diff o dav_A = dav_fc o diff", cycles, intertwines))

    int_pairs = [(a, b) for a in ints for b in ints]
    add(_check("fc/cf between", "min <= av_fc, av_cf <= max",
               int_pairs,
               lambda c: min(c) <= averages.av_fc(*c) <= max(c)
               and min(c) <= averages.av_cf(*c) <= max(c)))
    add(_check("av_fc exact midpoint", "av_fc agrees with a rational-midpoint oracle",
               int_pairs, lambda c: averages.av_fc(*c) == _naive_fc(*c)))

    def cd_enum(c):
        N, n = c
        got = list(enumerate_cd(N, n))
        return (len(got) == cd_count(N, n) == len(set(got))
                and all(sum(d) == N and all(0 <= x < N for x in d) for d in got))

    add(_check("CD enumeration count", "|CD_N^(n)| = C(N+n-1,n-1) - n",
               [(N, n) for N in Ns for n in range(2, N)], cd_enum))

    add(_check("sum conserved", "s(dav_fc(d)) = s(d)", vectors,
               lambda d: sum(tf.dav_fc(d)) == sum(d)))

    def monotone(d):
        e = tf.dav_fc(d)
        return min(e) >= min(d) and max(e) <= max(d) and _naive_width(e) <= _naive_width(d)

    add(_check("width monotone", "min up, max down, width down", vectors, monotone))

    def terminal_step(d):
        w = _naive_width(d)
        if w > 1:
            return True
        nxt = tf.dav_fc(d)
        if w == 0 or min(d) % 2 == 0:
            return nxt == d
        return nxt.entries == d.entries[1:] + d.entries[:1]

    add(_check("width<=1 terminal", "fixed, or left rotation when min is odd", vectors, terminal_step))

    add(_check("reversal swaps fc/cf", "iota o cyc+ o dav_fc = dav_cf o iota", vectors,
               lambda d: tf.reverse(tf.rotate_right(tf.dav_fc(d))) == tf.dav_cf(tf.reverse(d))))
    add(_check("fc/cf unit shift", "av_fc(p+1,q+1) = av_cf(p,q)+1 on [-8,8]^2",
               [(p, q) for p in range(-8, 9) for q in range(-8, 9)],
               lambda c: averages.av_fc(c[0] + 1, c[1] + 1) == averages.av_cf(*c) + 1))
    add(_check("add+ swaps cf/fc", "add+ o dav_cf = dav_fc o add+", vectors,
               lambda d: tf.shift_up(tf.dav_cf(d)) == tf.dav_fc(tf.shift_up(d))))

    def invariants_fg(d):
        w, s, m = _naive_width(d), _naive_min_block_total(d), min(d)
        return all(
            _naive_width(x) == w and _naive_min_block_total(x) == s and min(x) == m + 1
            for x in (tf.f_plus(d), tf.g_plus(d))
        )

    add(_check("f+/g+ invariants", "width and s_min kept, min raised by 1",
               vectors, invariants_fg))
    add(_check("f+ one step", "dav_fc o f+ = g+ o dav_fc", vectors,
               lambda d: tf.dav_fc(tf.f_plus(d)) == tf.g_plus(tf.dav_fc(d))))

    def iterated_stated(d):
        return all(
            dynamics.iterate(tf.f_plus(d), k) == tf.g_plus(dynamics.iterate(d, k))
            for k in range(1, 6)
        )

    # Iterating the k = 1 identity accumulates one cyc+ per step, so the
    # stated form only survives k = 1. The rotated form holds for every k.
    def iterated_rotated(d):
        cur = d
        for k in range(1, 6):
            cur = tf.rotate_right(tf.dav_fc(cur))
            if dynamics.iterate(tf.f_plus(d), k) != tf.f_plus(cur):
                return False
        return True

    lit = _check("f+ iterated as stated", "dav_fc^k o f+ = g+ o dav_fc^k", vectors, iterated_stated)
    lit.known_defect = (
        "known defect: holds for k = 1 only; see 'f+ iterated rotated' "
        "(width, min and s_min are rotation invariant, so the parity reduction survives)"
    )
    add(lit)
    add(_check("f+ iterated rotated", "dav_fc^k o f+ = f+ o cyc+^k o dav_fc^k",
               vectors, iterated_rotated))
    return report


# --- theorem sweep (batch kernels) ------------------------------------------------

@dataclass
class TheoremRow:
    N: int
    n: int
    size: int
    max_distance: int
    cap_hits: int
    fixed_mismatches: int
    rotation_failures: int
    period_not_dividing: int
    periodic_points: int
    period_equals_n: int
    symmetric_points: int
    period_symmetry_mismatches: int
    symmetric_example: tuple[int, ...] | None = None
    symmetric_example_period: int | None = None


@dataclass
class TheoremReport:
    rows: list[TheoremRow]
    backend: str

    def total(self, attr: str) -> int:
        return sum(getattr(r, attr) for r in self.rows)

    @property
    def passed(self) -> bool:
        return all(
            self.total(a) == 0
            for a in ("cap_hits", "fixed_mismatches", "rotation_failures",
                      "period_not_dividing", "period_symmetry_mismatches")
        )

    def symmetric_example(self) -> TheoremRow | None:
        return next((r for r in self.rows if r.symmetric_example is not None), None)


def check_theorem(N_max: int = 12) -> TheoremReport:
    """Sweep every CD_N^(n), N <= N_max, through the batch kernels.

    Checks termination within N*n steps, the exact fixed-point set, the left
    rotation on width-1 odd-min vectors, and that the measured return time of
    each periodic point equals n divided by its rotational symmetry order.
    """
    rows = []
    for N in range(3, N_max + 1):
        for n in range(2, N):
            X = kernels.cd_rows(N, n)
            dist, _, cap_hit = kernels.orbit_rows(X, N * n)
            succ = kernels.dav_fc_rows(X)
            lo, hi = X.min(axis=1), X.max(axis=1)
            w = hi - lo
            fixed_expected = (w == 0) | ((w == 1) & (lo % 2 == 0))
            fixed_actual = (succ == X).all(axis=1)
            per = (w == 1) & (lo % 2 == 1)
            P = X[per]
            rotated_ok = (succ[per] == np.roll(P, -1, axis=1)).all(axis=1)

            # return time by iterating the map itself
            ret = np.zeros(len(P), dtype=np.int64)
            Y = P.copy()
            for p in range(1, n + 1):
                Y = kernels.dav_fc_rows(Y)
                hit = (ret == 0) & (Y == P).all(axis=1)
                ret[hit] = p
            sym_period = kernels.rotation_period_rows(P)
            symmetric = sym_period < n
            row = TheoremRow(
                N=N, n=n, size=len(X),
                max_distance=int(dist.max()) if len(dist) else 0,
                cap_hits=int(cap_hit.sum()),
                fixed_mismatches=int((fixed_expected != fixed_actual).sum()),
                rotation_failures=int((~rotated_ok).sum()),
                period_not_dividing=int(((ret == 0) | (n % np.maximum(ret, 1) != 0)).sum()),
                periodic_points=int(per.sum()),
                period_equals_n=int((ret == n).sum()),
                symmetric_points=int(symmetric.sum()),
                period_symmetry_mismatches=int((ret != sym_period).sum()),
            )
            if symmetric.any():
                i = int(np.flatnonzero(symmetric)[0])
                row.symmetric_example = tuple(int(x) for x in P[i])
                row.symmetric_example_period = int(ret[i])
            rows.append(row)
    return TheoremReport(rows, kernels.BACKEND)


# --- transition graph ---------------------------------------------------------------

@dataclass
class TransitionGraph:
    """Functional graph of the D-average on CD_N^(n).

    ``cycle_length[i]`` is 0 for nodes off every cycle. ``distance[i]`` is the
    number of steps until the walk from node ``i`` first enters a cycle.
    """

    N: int
    n: int
    nodes: list[tuple[int, ...]]
    succ: list[int]
    width: list[int]
    klass: list[dynamics.TerminalClass]
    distance: list[int]
    cycle_length: list[int]

    def on_cycle(self, i: int) -> bool:
        return self.cycle_length[i] > 0

    def index(self, node: Sequence[int]) -> int:
        return self.nodes.index(tuple(node))

    def path(self, node: Sequence[int]) -> list[tuple[int, ...]]:
        """Nodes from ``node`` up to and including the first cycle node."""
        i = self.index(node)
        out = [self.nodes[i]]
        while not self.on_cycle(i):
            i = self.succ[i]
            out.append(self.nodes[i])
        return out

    def to_dot(self) -> str:
        lines = [f'digraph "CD_{self.N}^({self.n})" {{', "  node [shape=circle];"]
        for i, v in enumerate(self.nodes):
            shape = ', shape=doublecircle' if self.on_cycle(i) else ""
            label = ",".join(map(str, v))
            lines.append(f'  n{i} [label="{label}", class="{self.klass[i]}"{shape}];')
        for i, j in enumerate(self.succ):
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _cycles_by_hashing(succ: list[int]) -> tuple[list[int], list[int]]:
    """Generic functional-graph walk: remember visited states in a dict per walk."""
    M = len(succ)
    dist = [-1] * M
    cyc = [0] * M
    for start in range(M):
        if dist[start] >= 0:
            continue
        seen: dict[int, int] = {}
        path = []
        x = start
        while dist[x] < 0 and x not in seen:
            seen[x] = len(path)
            path.append(x)
            x = succ[x]
        if dist[x] < 0:
            # closed a new cycle at x
            loop = path[seen[x]:]
            for y in loop:
                dist[y], cyc[y] = 0, len(loop)
            path = path[: seen[x]]
        for y in reversed(path):
            nxt = succ[y]
            dist[y] = dist[nxt] + 1
    return dist, cyc


def build_graph(N: int, n: int, budget: int = DEFAULT_BUDGET) -> TransitionGraph:
    nodes = list(enumerate_cd(N, n, budget))
    index = {v: i for i, v in enumerate(nodes)}
    images = kernels.dav_fc_rows(np.array(nodes, dtype=np.int64))
    succ = [index[tuple(int(x) for x in row)] for row in images]
    dist, cyc = _cycles_by_hashing(succ)
    return TransitionGraph(
        N=N, n=n, nodes=nodes, succ=succ,
        width=[_naive_width(v) for v in nodes],
        klass=[dynamics.classify(v) for v in nodes],
        distance=dist,
        cycle_length=cyc,
    )


def graph_crosscheck(g: TransitionGraph) -> list[str]:
    """Disagreements between the generic cycle walk and the closed-form dynamics."""
    problems = []
    T = dynamics.TerminalClass
    for i, v in enumerate(g.nodes):
        k, cl = g.klass[i], g.cycle_length[i]
        if cl == 0:
            ok = k is T.TRANSIENT
        elif cl == 1:
            ok = k in (T.FIXED_WIDTH0, T.FIXED_WIDTH1_EVEN_MIN)
        else:
            ok = k is T.PERIODIC_WIDTH1_ODD_MIN and cl == dynamics.rotation_period(v)
        if not ok:
            problems.append(f"{v}: cycle length {cl} but class {k}")
        if cl and g.width[i] > 1:
            problems.append(f"{v}: cycle node with width {g.width[i]}")
        K = dynamics.distance_to_cycle(v, cap=g.N * g.n)
        if K != g.distance[i]:
            problems.append(f"{v}: graph distance {g.distance[i]} vs dist_c {K}")
    return problems


# --- mutation harness -----------------------------------------------------------------

def _av_fc_parity_flipped(a: int, b: int) -> int:
    s = a + b
    return -((-s) // 2) if a % 2 == 0 else s // 2


def _add_mod_no_wrap(a: int, b: int, modulus: int) -> int:
    return a + b


def _ascending_skip_uniqueness(entries, modulus) -> bool:
    n = len(entries)
    return (
        n >= 2
        and all(0 <= x < modulus for x in entries)
        and len(set(entries)) == n
        and len(core.descents(entries)) >= 1
    )


MUTATIONS: dict[str, tuple[str, Callable]] = {
    "fc-parity": ("goodrhythm.averages.av_fc", _av_fc_parity_flipped),
    "no-wrap": ("goodrhythm.core.add_mod", _add_mod_no_wrap),
    "jump-skip": ("goodrhythm.core.is_ascending_cycle", _ascending_skip_uniqueness),
}


@contextmanager
def injected(name: str):
    """Temporarily replace one arithmetic primitive by a broken version."""
    if name not in MUTATIONS:
        raise UsageError(f"unknown mutation {name!r}; choose from {sorted(MUTATIONS)}")
    target, replacement = MUTATIONS[name]
    with unittest.mock.patch(target, replacement):
        yield


def mutation_report(N_max: int = 6, random_trials: int = 200) -> dict[str, list[str]]:
    """Identity names that newly fail under each mutation; an empty list means the suite is blind to it.

    Identities already flagged as known defects are left out, so they cannot
    count as detections.
    """
    out = {}
    for name in MUTATIONS:
        with injected(name):
            rep = verify_identities(N_max, random_trials=random_trials)
        out[name] = [r.name for r in rep.failed()]
    return out
