"""One test per acceptance criterion, each printing a PASS/FAIL line."""

import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_LINES
from golden_traces import CORPUS_DISTANCES, CORPUS_ROWS, PENTAGON_16_5, SQUARE_16_4
from goodrhythm import dynamics as dy
from goodrhythm import oracle
from goodrhythm import transforms as tf
from goodrhythm.core import AscendingCycle, rhythm_to_cycle
from goodrhythm.corpus import CORPUS
from goodrhythm.dynamics import TerminalClass as T


@contextmanager
def criterion(label):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        line = f"FAIL  {label}  ({time.perf_counter() - t0:.1f}s)  {msg}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"PASS  {label}  ({time.perf_counter() - t0:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _rows(report):
    return [(s.a, s.d) for s in report.trace]


def test_criterion_1_square_golden_trace():
    with criterion("1 square orbit N=16 n=4: rows 0..7, dist 4, fixed (4,4,4,4)"):
        g = SQUARE_16_4
        a = AscendingCycle(g["rows"][0][0], g["pulses"])
        rep = dy.orbit_labeled(a, tail=3)
        assert _rows(rep) == g["rows"]
        assert rep.distance_to_cycle == g["distance"] == 4
        assert rep.trace[4].d == (4, 4, 4, 4)
        assert rep.terminal_class is T.FIXED_WIDTH0 and rep.period == 1


def test_criterion_2_pentagon_golden_trace():
    with criterion("2 pentagon orbit N=16 n=5: rows 0..10, dist 5, period 5 by left rotation"):
        g = PENTAGON_16_5
        a = AscendingCycle(g["rows"][0][0], g["pulses"])
        rep = dy.orbit_labeled(a, tail=5)
        assert _rows(rep) == g["rows"]
        assert rep.distance_to_cycle == 5
        assert rep.terminal_class is T.PERIODIC_WIDTH1_ODD_MIN and rep.period == 5
        ds = [s.d for s in rep.trace]
        for k in range(5, 10):
            assert ds[k + 1] == tf.rotate_left(ds[k]).entries
        assert ds[10] == ds[5]


def test_criterion_3_corpus_distances():
    with criterion("3 corpus: Bossa 0, Shiko 1, Son 1, Rumba 1, Soukous 3, Gahu 3; rows and terminals"):
        bossa = (3, 3, 4, 3, 3)
        rotations = {bossa[k:] + bossa[:k] for k in range(5)}
        assert [e.name for e in CORPUS] == list(CORPUS_DISTANCES)
        for e in CORPUS:
            rep = dy.orbit_labeled(rhythm_to_cycle(e.rhythm))
            K = rep.distance_to_cycle
            assert K == CORPUS_DISTANCES[e.name] == e.expected_distance, e.name
            assert _rows(rep)[: K + 1] == CORPUS_ROWS[e.name], e.name
            assert rep.trace[K].d in rotations, e.name
            assert rep.terminal_class is T.PERIODIC_WIDTH1_ODD_MIN


@pytest.fixture(scope="module")
def identity_run():
    t0 = time.perf_counter()
    rep = oracle.verify_identities(10)
    return rep, time.perf_counter() - t0


def test_criterion_4_identity_suite(identity_run):
    """Every identity exactly as stated, the iterated f+ relation included."""
    rep, elapsed = identity_run
    with criterion(f"4 identity suite N<=10, zero failures, <60s (ran {elapsed:.1f}s)"):
        assert elapsed < 60
        bad = [f"{r.name}: {r.failures} failures, first {r.witness!r}" for r in rep.results if not r.passed]
        assert not bad, "; ".join(bad)


def test_criterion_4_identity_suite_without_the_iterated_relation(identity_run):
    rep, elapsed = identity_run
    with criterion("4' identity suite minus the stated iterated f+ relation, rotated form included"):
        assert elapsed < 60
        assert rep.failed() == []
        rotated = next(r for r in rep.results if r.name == "f+ iterated rotated")
        assert rotated.passed and rotated.checked > 100_000


def test_criterion_5_classification_sweep():
    t0 = time.perf_counter()
    rep = oracle.check_theorem(12)
    elapsed = time.perf_counter() - t0
    with criterion(f"5 classification over CD N<=12 ({rep.total('size')} vectors, {elapsed:.1f}s, {rep.backend})"):
        assert elapsed < 120
        assert rep.total("cap_hits") == 0
        assert max(r.max_distance for r in rep.rows) <= max(r.N * r.n for r in rep.rows)
        assert rep.total("fixed_mismatches") == 0
        assert rep.total("rotation_failures") == 0
        assert rep.total("period_not_dividing") == 0
        assert rep.total("period_symmetry_mismatches") == 0
        assert rep.total("period_equals_n") == rep.total("periodic_points") - rep.total("symmetric_points")
        ex = next(r for r in rep.rows if (r.N, r.n) == (6, 4))
        assert ex.symmetric_example == (1, 2, 1, 2) and ex.symmetric_example_period == 2
        deviating = rep.symmetric_example()
        print(f"      period deviation: {deviating.symmetric_example} (N={deviating.N}, n={deviating.n}) "
              f"has period {deviating.symmetric_example_period}; "
              f"{rep.total('symmetric_points')} symmetric periodic points in total")


def test_criterion_6_hash_cycles_agree():
    with criterion("6 hash-based cycle detection agrees with closed form, N<=10"):
        problems, nodes = [], 0
        for N in range(3, 11):
            for n in range(2, N):
                g = oracle.build_graph(N, n)
                nodes += len(g.nodes)
                problems += oracle.graph_crosscheck(g)
        assert nodes == sum(oracle.cd_count(N, n) for N in range(3, 11) for n in range(2, N))
        assert problems == [], problems[:3]


def test_criterion_7_block_erosion():
    with criterion("7 block erosion for every even-min, width>=2 vector, N<=10"):
        checked = 0
        failures = []
        for N in range(3, 11):
            for n in range(2, N):
                for d in oracle.enumerate_cd(N, n):
                    if min(d) % 2 or max(d) - min(d) < 2:
                        continue
                    r = dy.block_erosion_check(d)
                    checked += 1
                    if not r.passed or not r.outcomes:
                        failures.append((d, r.failures))
        assert checked > 10_000
        assert failures == [], failures[:3]


def test_criterion_8_mutations_detected():
    with criterion("8 each mutation (fc parity, no wrap, jump skip) breaks the suite"):
        rep = oracle.mutation_report()
        assert set(rep) == {"fc-parity", "no-wrap", "jump-skip"}
        for name, failed in rep.items():
            assert failed, f"mutation {name} went unnoticed"
