"""Antichain algebra: freeization, exact measures, leftmost Kraft coding."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from randlab.bitstr import Dyadic
from randlab.prefixfree import (
    KraftOverflowError,
    cover_measure,
    is_prefix_free,
    kraft_code,
    kraft_sum,
    prefix_freeize,
)

ORACLE_DEPTH = 12


def leaf_count_measure(strings: set[str] | frozenset[str]) -> Fraction:
    """Oracle: measure by counting covered depth-12 leaves, via Fraction."""
    leaves: set[int] = set()
    for s in strings:
        assert len(s) <= ORACLE_DEPTH
        start = (int(s, 2) if s else 0) << (ORACLE_DEPTH - len(s))
        leaves.update(range(start, start + 2 ** (ORACLE_DEPTH - len(s))))
    return Fraction(len(leaves), 2**ORACLE_DEPTH)


def random_antichain(rng: random.Random, max_depth: int = ORACLE_DEPTH) -> set[str]:
    """Carve an antichain out of the binary tree by stopping at random nodes."""
    members: set[str] = set()

    def walk(prefix: str) -> None:
        if len(prefix) == max_depth or rng.random() < 0.3:
            if rng.random() < 0.8:
                members.add(prefix)
            return
        for bit in "01":
            if rng.random() < 0.75:
                walk(prefix + bit)

    walk("")
    return members


def random_string_set(rng: random.Random, max_depth: int = ORACLE_DEPTH) -> list[str]:
    size = rng.randrange(0, 24)
    return [
        "".join(rng.choice("01") for _ in range(rng.randrange(0, max_depth + 1)))
        for _ in range(size)
    ]


def as_fraction(d: Dyadic) -> Fraction:
    return Fraction(d.num, 2**d.scale)


# ---------------------------------------------------------------------------
# membership tests and sums
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "strings,expected",
    [
        ({"0", "1"}, True),
        ({"0", "01"}, False),
        ({"0", "100", "101"}, True),
        (set(), True),
        ({""}, True),
        ({"", "1"}, False),
    ],
)
def test_is_prefix_free_examples(strings: set[str], expected: bool) -> None:
    assert is_prefix_free(strings) is expected


@pytest.mark.parametrize(
    "strings,num,scale",
    [
        ({""}, 1, 0),
        ({"0", "10", "11"}, 1, 0),
        ({"0", "01"}, 3, 2),
        (set(), 0, 0),
    ],
)
def test_kraft_sum_examples(strings: set[str], num: int, scale: int) -> None:
    assert kraft_sum(strings) == Dyadic(num, scale)


def test_kraft_sum_ignores_duplicates() -> None:
    assert kraft_sum(["0", "0", "11", "11"]) == kraft_sum({"0", "11"})


# ---------------------------------------------------------------------------
# prefix_freeize
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "stream,expected",
    [
        (["01", "0"], {"01", "00"}),
        (["0", "01"], {"0"}),
        ([], set()),
        (["1", "1", "1"], {"1"}),
        (["0", "1", ""], {"0", "1"}),
    ],
)
def test_prefix_freeize_examples(stream: list[str], expected: set[str]) -> None:
    assert prefix_freeize(stream) == frozenset(expected)


def test_prefix_freeize_properties() -> None:
    rng = random.Random(40961)
    for _ in range(400):
        stream = random_string_set(rng, max_depth=8)
        result = prefix_freeize(stream)
        assert is_prefix_free(result)
        # covers exactly the same ground as the raw stream
        assert leaf_count_measure(result) == leaf_count_measure(set(stream))
        # antichains pass through untouched
        assert prefix_freeize(sorted(result, key=lambda b: (len(b), b))) == result
        # duplication of the input never matters
        assert prefix_freeize(stream + stream) == result


def test_prefix_freeize_cover_is_pointwise() -> None:
    # each covered leaf stays covered, each uncovered leaf stays uncovered
    rng = random.Random(77)
    for _ in range(100):
        stream = random_string_set(rng, max_depth=6)
        result = prefix_freeize(stream)
        for leaf in range(2**6):
            x = bin(leaf)[2:].rjust(6, "0")
            in_stream = any(x.startswith(s) for s in stream)
            in_result = any(x.startswith(s) for s in result)
            assert in_stream == in_result


# ---------------------------------------------------------------------------
# cover_measure
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "strings,num,scale",
    [
        ({"0", "00"}, 1, 1),
        ({"0", "1"}, 1, 0),
        ({"00", "01"}, 1, 1),
        (set(), 0, 0),
        ({""}, 1, 0),
    ],
)
def test_cover_measure_examples(strings: set[str], num: int, scale: int) -> None:
    assert cover_measure(strings) == Dyadic(num, scale)


def test_cover_measure_matches_leaf_oracle() -> None:
    rng = random.Random(2025)
    for _ in range(400):
        strings = set(random_string_set(rng))
        assert as_fraction(cover_measure(strings)) == leaf_count_measure(strings)


def test_cover_measure_of_antichain_is_kraft_sum() -> None:
    rng = random.Random(31337)
    for _ in range(200):
        antichain = random_antichain(rng)
        assert cover_measure(antichain) == kraft_sum(antichain)
        assert kraft_sum(antichain) <= Dyadic(1)


# ---------------------------------------------------------------------------
# kraft_code
# ---------------------------------------------------------------------------


def test_kraft_code_examples() -> None:
    assert kraft_code([1, 2, 2]) == ["0", "10", "11"]
    assert kraft_code([]) == []
    assert kraft_code([0]) == [""]
    with pytest.raises(KraftOverflowError) as err:
        kraft_code([1, 1, 1])
    assert err.value.index == 2


def test_kraft_code_rejects_after_full_cover() -> None:
    with pytest.raises(KraftOverflowError) as err:
        kraft_code([0, 5])
    assert err.value.index == 1


def test_kraft_code_on_sorted_antichain_lengths() -> None:
    # lengths harvested from an antichain, sorted, must be accepted and
    # reproduce an antichain of identical Kraft mass
    rng = random.Random(555)
    for _ in range(300):
        antichain = random_antichain(rng)
        lengths = sorted(len(b) for b in antichain)
        code = kraft_code(lengths)
        assert [len(c) for c in code] == lengths
        assert is_prefix_free(code)
        assert len(set(code)) == len(code)
        assert kraft_sum(code) == kraft_sum(antichain)


def test_kraft_code_overflow_on_infeasible_sorted_lengths() -> None:
    rng = random.Random(808)
    for _ in range(200):
        lengths = sorted(rng.randrange(0, 8) for _ in range(rng.randrange(1, 40)))
        feasible = sum(Fraction(1, 2**n) for n in lengths) <= 1
        try:
            code = kraft_code(lengths)
        except KraftOverflowError:
            assert not feasible
        else:
            assert feasible
            assert is_prefix_free(code)
