"""Twelve-point acceptance battery.

Each test covers one numbered criterion, prints a single pass/fail line
(visible under pytest -s), and enforces the criterion's runtime limit.
Sweep criteria use seeded randomness so every run checks the same cases.
"""

from __future__ import annotations

import filecmp
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from randlab.bitstr import (
    DYADIC_ONE,
    DYADIC_ZERO,
    Dyadic,
    all_strings,
    bits_of,
    index_to_string,
    string_to_index,
)
from randlab.cli import main
from randlab.complexity import (
    census_incompressible,
    plain_c,
    registry_constants,
    subadditivity_probe,
)
from randlab.machine import prefix_universal_run
from randlab.mltest import (
    builtin_tests,
    compression_test,
    level_sense1,
    ml_to_kc_decoder,
    registered_tests,
    sense1_to_sense2,
    universal_test,
    validate_sense1,
)
from randlab.omega import halted_below, omega_lower_bound, psi_reconstruct
from randlab.prefixfree import (
    KraftOverflowError,
    cover_measure,
    is_prefix_free,
    kraft_code,
    kraft_sum,
    prefix_freeize,
)

BUDGET = 100_000


@contextmanager
def criterion(num: int, label: str, limit: float | None):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"criterion {num:02d} {label}: FAIL ({time.monotonic() - start:.2f}s)")
        raise
    elapsed = time.monotonic() - start
    if limit is None:
        print(f"criterion {num:02d} {label}: PASS ({elapsed:.2f}s)")
    else:
        verdict = "PASS" if elapsed < limit else "FAIL"
        print(f"criterion {num:02d} {label}: {verdict} ({elapsed:.2f}s, limit {limit:.0f}s)")
        assert elapsed < limit, f"runtime {elapsed:.2f}s exceeds {limit}s"


def leaves(members, depth: int) -> set[int]:
    covered: set[int] = set()
    for b in members:
        start = (int(b, 2) if b else 0) << (depth - len(b))
        covered.update(range(start, start + (1 << (depth - len(b)))))
    return covered


def random_antichain(rng: random.Random, depth: int) -> list[str]:
    if depth == 0 or rng.random() < 0.3:
        return [""]
    grown = [
        bit + s
        for bit in "01"
        if rng.random() < 0.85
        for s in random_antichain(rng, depth - 1)
    ]
    return grown or [""]


def test_criterion_01_enumeration_law() -> None:
    with criterion(1, "enumeration-law", 1.0):
        for m in range(65536):
            b = index_to_string(m)
            assert (1 << len(b)) <= m + 1  # |B_m| <= log2(m+1), exactly
            assert string_to_index(b) == m


def test_criterion_02_kraft_suite() -> None:
    rng = random.Random(20260814)
    with criterion(2, "kraft-suite", 5.0):
        for _ in range(1000):
            antichain = random_antichain(rng, rng.randint(3, 12))
            assert is_prefix_free(antichain)
            mass = kraft_sum(antichain)
            assert mass <= DYADIC_ONE
            rebuilt = kraft_code(sorted(len(b) for b in antichain))
            assert is_prefix_free(rebuilt)
            assert kraft_sum(rebuilt) == mass
        with pytest.raises(KraftOverflowError) as exc:
            kraft_code([1, 1, 1])
        assert (exc.value.index, exc.value.length) == (2, 1)


def test_criterion_03_prefix_freeize() -> None:
    rng = random.Random(14082026)
    with criterion(3, "prefix-freeize", 10.0):
        for _ in range(1000):
            strings = [
                "".join(rng.choice("01") for _ in range(rng.randint(0, 12)))
                for _ in range(rng.randint(1, 10))
            ]
            out = prefix_freeize(strings)
            assert is_prefix_free(out)
            measure = cover_measure(strings)
            assert cover_measure(out) == measure
            oracle = Fraction(len(leaves(set(strings), 12)), 1 << 12)
            assert Fraction(measure.num, 1 << measure.scale) == oracle


def test_criterion_04_v_antichain() -> None:
    with criterion(4, "v-antichain", 60.0):
        halted = {p for p in all_strings(10) if prefix_universal_run(p, BUDGET).halted}
        assert halted
        for p in halted:
            assert all(p[:i] not in halted for i in range(len(p)))


def test_criterion_05_census() -> None:
    with criterion(5, "census", 120.0):
        for budget in (10**2, 10**4):
            for n in range(9):
                assert census_incompressible(n, budget=budget) >= 1


def test_criterion_06_registry_constants() -> None:
    constants = registry_constants()
    with criterion(6, "registry-constants", 300.0):
        for b in all_strings(6):
            bound = plain_c(b)
            assert bound is not None
            assert bound.value <= len(b) + constants["m_id"]
        report = subadditivity_probe(4, len_limit=13)
        assert report.prefix_pairs == 31 * 31  # every |a|,|b| <= 4 pair checked
        assert report.prefix_violations == ()
        assert report.pair_overhead == constants["k_pair"]
    print(f"  constants: {constants}")


def test_criterion_07_omega_estimator() -> None:
    with criterion(7, "omega-estimator", 120.0):
        bounds = [omega_lower_bound(1 << k).lower_bound for k in range(17)]
        for low, high in zip(bounds, bounds[1:]):
            assert low <= high
        assert all(DYADIC_ZERO <= r <= DYADIC_ONE for r in bounds)
        assert bounds[-1] > DYADIC_ZERO
        for stage in (0, 1, 4, 5, 64, 512, 4096, 2**14):
            mass = omega_lower_bound(stage).lower_bound
            for n in range(7):
                if mass == DYADIC_ZERO:
                    assert psi_reconstruct("0" * n, stage) is None
                else:
                    reconstructed = psi_reconstruct(bits_of(mass, n), stage)
                    assert reconstructed == halted_below(n, stage)


def test_criterion_08_ml_validity() -> None:
    tests = registered_tests()
    with criterion(8, "ml-validity", 10.0):
        for verdict in validate_sense1(tests["leading-zeros"], 10):
            assert verdict.verdict == "pass"
            assert verdict.measure == Dyadic(1, verdict.m)
        for verdict in validate_sense1(tests["even-ones"], 8):
            assert verdict.verdict == "pass"
            assert verdict.measure == Dyadic(1, verdict.m)
        for verdict in validate_sense1(tests["zeros-after-111"], 12):
            assert verdict.verdict == "pass"
            assert verdict.measure == Dyadic(1, verdict.m + 3)
        rejected = validate_sense1(tests["count101"], 3)[-1]
        assert (rejected.m, rejected.verdict) == (3, "fail")


def test_criterion_09_sense_equivalence() -> None:
    depth = 10
    with criterion(9, "sense-equivalence", 60.0):
        for t in registered_tests().values():
            f = sense1_to_sense2(t, depth)
            events = {
                m: f.enumerate(m - 1, depth)
                if m > 1
                else frozenset(
                    b
                    for b in all_strings(depth)
                    if (v := t.evaluate(b)) is not None and v > 0
                )
                for m in range(1, 7)
            }
            for b in all_strings(depth):
                level = level_sense1(t, b)
                for m, event in events.items():
                    hit = any(b[:i] in event for i in range(len(b) + 1))
                    assert hit == (level >= m)
            covers = [leaves(f.enumerate(n, depth), depth) for n in range(7)]
            for wide, narrow in zip(covers, covers[1:]):
                assert narrow <= wide


def test_criterion_10_universal_battery() -> None:
    depth = 12
    battery = [sense1_to_sense2(t, depth) for t in builtin_tests()]
    with criterion(10, "universal-battery", 30.0):
        for n in range(6):
            cover = universal_test(battery, n, depth)
            assert cover_measure(cover) <= Dyadic(1, n)
            union = leaves(cover, depth)
            for i, member in enumerate(battery, start=1):
                assert leaves(member.enumerate(n + i, depth), depth) <= union


def test_criterion_11_bridges() -> None:
    with criterion(11, "bridges", 120.0):
        for k in range(5):
            assert cover_measure(compression_test(k, depth=10)) <= Dyadic(1, k)
        source = sense1_to_sense2(registered_tests()["leading-zeros"])
        bridge = ml_to_kc_decoder(source, 4, install=False)
        assert bridge.triples == tuple(
            (n + 1, n, "0" * (2 * n + 1)) for n in range(1, 5)
        )
        codewords = [cw for cw, _ in bridge.decoder]
        assert is_prefix_free(codewords)
        for (length, n, b), (cw, target) in zip(bridge.triples, bridge.decoder):
            assert target == b
            assert len(cw) == length == len(b) - n
        assert bridge.coded_mass == kraft_sum(codewords)
        assert bridge.coded_mass <= DYADIC_ONE
        assert bridge.excluded == ()


def test_criterion_12_reproducibility(tmp_path) -> None:
    commands = [
        ["enum", "--count", "64"],
        ["pfz", "0", "00", "01", "1"],
        ["kraft", "--lengths", "1,2,2"],
        ["measure", "0", "10", "11"],
        ["complexity", "scan", "--max-len", "1", "--len-limit", "8", "--budget", "1000"],
        ["complexity", "census", "--max-n", "3", "--budget", "100"],
        ["complexity", "subadd", "--max-n", "1"],
        ["omega"],
        ["omega", "--until-mass", "0", "--stage", "5"],
        ["mltest", "validate", "--test", "count101", "--levels", "3"],
        ["mltest", "convert", "--test", "leading-zeros", "--levels", "2", "--depth", "3"],
        ["mltest", "universal", "--level", "2", "--depth", "6"],
        ["mltest", "score", "--subject", "0" * 12],
        ["mltest", "bridge", "--test", "leading-zeros", "--n-max", "2", "--depth", "8"],
        ["enum", "--count", "64", "--format", "json"],
    ]
    with criterion(12, "reproducibility", None):
        for k, argv in enumerate(commands):
            first = tmp_path / f"{k}a.txt"
            second = tmp_path / f"{k}b.txt"
            code_a = main(argv + ["--out", str(first)])
            code_b = main(argv + ["--out", str(second)])
            assert code_a == code_b
            assert filecmp.cmp(first, second, shallow=False), argv
