"""Halting-probability lower bounds and the prefix-to-halted-set inverse.

The oracle recomputes each stage's halted set directly from the runner API
and the dovetail ordinal formula, without going through the dovetailer.
"""

from __future__ import annotations

from fractions import Fraction

from randlab.bitstr import DYADIC_ZERO, Dyadic, bits_of, index_to_string
from randlab.machine import prefix_universal_run, registry_fingerprint
from randlab.omega import halted_below, omega_lower_bound, psi_reconstruct
from randlab.prefixfree import is_prefix_free, kraft_sum

STAGES = [0, 1, 4, 5, 64, 512, 4096, 2**14]


def ordinal(j: int, s: int) -> int:
    d = j + s
    return d * (d - 1) // 2 + j


def brute_halted(stage: int) -> set[str]:
    d_max = 1
    while d_max * (d_max - 1) // 2 < stage:
        d_max += 1
    halted = set()
    for j in range(d_max):
        p = index_to_string(j)
        out = prefix_universal_run(p, d_max)
        if out.halted and ordinal(j, out.steps_used) < stage:
            halted.add(p)
    return halted


def as_fraction(r: Dyadic) -> Fraction:
    return Fraction(r.num, 2**r.scale)


# ---------------------------------------------------------------------------
# omega_lower_bound
# ---------------------------------------------------------------------------


def test_estimates_match_brute_force_recomputation() -> None:
    for stage in STAGES:
        estimate = omega_lower_bound(stage)
        assert set(estimate.halted) == brute_halted(stage)
        assert estimate.lower_bound == kraft_sum(estimate.halted)
        assert estimate.stage == stage
        assert estimate.fingerprint == registry_fingerprint()


def test_estimates_monotone_and_bounded() -> None:
    previous = DYADIC_ZERO
    for stage in STAGES:
        bound = omega_lower_bound(stage).lower_bound
        assert DYADIC_ZERO <= bound <= 1
        assert bound >= previous
        previous = bound
    assert previous > 0


def test_first_contribution_appears_at_stage_five() -> None:
    assert omega_lower_bound(4).halted == frozenset()
    assert omega_lower_bound(5).halted == frozenset({"0"})
    assert omega_lower_bound(5).lower_bound == Dyadic(1, 1)


def test_halted_sets_are_antichains() -> None:
    for stage in STAGES:
        assert is_prefix_free(omega_lower_bound(stage).halted)


def test_mass_at_desk_stage() -> None:
    # the five cheap registry dispatches are the only halts with dovetail
    # ordinals below 4096: 1/2 + 1/8 + 3/32
    estimate = omega_lower_bound(4096)
    assert estimate.halted == frozenset({"0", "100", "11100", "11000", "10100"})
    assert as_fraction(estimate.lower_bound) == Fraction(23, 32)


# ---------------------------------------------------------------------------
# halted_below
# ---------------------------------------------------------------------------


def test_halted_below_filters_by_length() -> None:
    for stage in STAGES:
        full = set(omega_lower_bound(stage).halted)
        for n in range(7):
            observed = halted_below(n, stage)
            assert observed == {p for p in full if len(p) <= n}
            for p in observed:
                assert prefix_universal_run(p, stage).halted


def test_halted_below_empty_cases() -> None:
    assert halted_below(0, 2**12) == frozenset()  # V(eps) certifiably diverges
    assert halted_below(6, 0) == frozenset()


def test_halted_below_monotone_in_stage() -> None:
    for n in range(7):
        seen: frozenset[str] = frozenset()
        for stage in STAGES:
            now = halted_below(n, stage)
            assert seen <= now
            seen = now


# ---------------------------------------------------------------------------
# psi_reconstruct
# ---------------------------------------------------------------------------


def test_psi_empty_prefix_crosses_at_first_event() -> None:
    assert psi_reconstruct("", 5) == frozenset()
    assert psi_reconstruct("", 4) is None


def test_psi_single_bit_fixtures() -> None:
    # value 1/4 is crossed by the first event; value 1/2 is only matched,
    # never exceeded, at stage five
    assert psi_reconstruct("0", 5) == frozenset({"0"})
    assert psi_reconstruct("1", 5) is None


def test_psi_value_beyond_reachable_mass() -> None:
    assert psi_reconstruct("111111", 8) is None


def test_psi_exact_stage_mass_consistency() -> None:
    # reconstruction from the tail-of-ones rendering of a stage's exact mass
    # recovers exactly that stage's bounded halted sets
    for stage in STAGES:
        mass = omega_lower_bound(stage).lower_bound
        if mass == DYADIC_ZERO:
            for n in range(7):
                assert psi_reconstruct("0" * n, stage) is None
            continue
        for n in range(7):
            a = bits_of(mass, n)
            assert psi_reconstruct(a, stage) == halted_below(n, stage)


def test_psi_results_are_antichains() -> None:
    for stage in [5, 64, 4096]:
        mass = omega_lower_bound(stage).lower_bound
        for n in range(7):
            reconstructed = psi_reconstruct(bits_of(mass, n), stage)
            assert reconstructed is not None
            assert is_prefix_free(reconstructed)


def test_psi_rejects_non_bits() -> None:
    import pytest

    with pytest.raises(ValueError):
        psi_reconstruct("2", 10)
