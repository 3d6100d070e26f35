"""Martin-Löf tests with exact finite-depth measure checking.

Tests come in two classical shapes.  A sense-1 test is a partial level
function on strings whose level-m event has cover measure at most 2^-m; a
sense-2 test is a family of open covers, level n weighing at most 2^-n.
Both are handled through finite materializations: a sense-1 test carries a
declared horizon d(m), the depth at which its level-m event is fully
settled, and a sense-2 test materializes each level to a requested depth.
All measures are exact dyadics over the materialized sets, and verdicts are
three-valued: a measure over the bound is a definite failure even when the
materialization is partial (deeper materializations only grow covers), a
pass is only issued when the horizon was reached, and everything else stays
indeterminate.

The bridges to program-length complexity run in both directions: the
compression test materializes the strings whose budgeted prefix complexity
undercuts their length, and the decoder construction Kraft-codes the slices
of a valid test into a code table that can be installed as the registry's
table machine, making the resulting complexity drop executable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bitstr import DYADIC_ONE, DYADIC_ZERO, Dyadic, _check_bits, all_strings
from .complexity import prefix_k
from .machine import DEFAULT_BUDGET, REG_CODE_TABLE, install_code_table
from .prefixfree import cover_measure, kraft_code, prefix_freeize

DEFAULT_DEPTH = 15
# prefix searches need to see the echo witnesses of the strings they score
DEFAULT_K_LEN_LIMIT = 13


@dataclass(frozen=True)
class Sense1Test:
    """A partial level function with a declared settling depth per level.

    evaluate returns the level of a string or None where undefined.
    horizon(m) is the depth at which the level-m event is a union of
    cylinders over strings of length <= horizon(m), or None when no finite
    settling depth is declared.
    """

    name: str
    evaluate: Callable[[str], int | None]
    horizon: Callable[[int], int | None]


@dataclass(frozen=True)
class Sense2Test:
    """A family of depth-materialized covers: enumerate(n, depth) is the
    level-n cover restricted to strings of length <= depth, monotone in
    depth."""

    name: str
    enumerate: Callable[[int, int], frozenset[str]]


@dataclass(frozen=True)
class LevelVerdict:
    m: int
    verdict: str  # "pass" | "fail" | "indeterminate"
    measure: Dyadic
    bound: Dyadic
    depth: int  # depth actually materialized


@dataclass(frozen=True)
class DeficiencyReport:
    """Per-test maximal triggered levels for a finite subject, plus the best
    budgeted compression deficiency max_n (n - K_t(subject[:n]))."""

    levels: tuple[tuple[str, int], ...]
    verdicts: tuple[tuple[str, str], ...]
    compression_deficiency: int
    depth: int
    len_limit: int
    budget: int


# ---------------------------------------------------------------------------
# built-in tests
# ---------------------------------------------------------------------------


def _leading_zeros(b: str) -> int | None:
    run = 0
    while run < len(b) and b[run] == "0":
        run += 1
    return run


def _even_position_ones(b: str) -> int | None:
    run = 0
    while 2 * run < len(b) and b[2 * run] == "1":
        run += 1
    return run


def _zeros_after_111(b: str) -> int | None:
    if not b.startswith("111"):
        return None
    run = 0
    while 3 + run < len(b) and b[3 + run] == "0":
        run += 1
    return run


def _count_101(b: str) -> int | None:
    return sum(1 for i in range(len(b) - 2) if b[i : i + 3] == "101")


def builtin_tests() -> list[Sense1Test]:
    """The valid built-in sense-1 tests with their exact horizons."""
    return [
        Sense1Test("leading-zeros", _leading_zeros, lambda m: m),
        Sense1Test("even-ones", _even_position_ones, lambda m: max(0, 2 * m - 1)),
        Sense1Test("zeros-after-111", _zeros_after_111, lambda m: m + 3),
    ]


def registered_tests() -> dict[str, Sense1Test]:
    """All named tests, including the 101-counter, which is deliberately NOT
    a Martin-Löf test (its level-m events outweigh 2^-m) and serves as the
    negative fixture."""
    tests = {t.name: t for t in builtin_tests()}
    tests["count101"] = Sense1Test("count101", _count_101, lambda m: 5 * m)
    return tests


# ---------------------------------------------------------------------------
# validation and scoring of sense-1 tests
# ---------------------------------------------------------------------------


def validate_sense1(
    t: Sense1Test, m_max: int, depth: int = DEFAULT_DEPTH
) -> list[LevelVerdict]:
    """Check cover_measure{b : evaluate(b) >= m} <= 2^-m for each m <= m_max.

    Levels whose horizon exceeds `depth` are materialized at `depth`; since
    covers only grow with depth, a measure above the bound there is still a
    definite failure, while a measure within it stays indeterminate.
    """
    verdicts = []
    for m in range(m_max + 1):
        h = t.horizon(m)
        settled = h is not None and h <= depth
        eval_depth = h if settled else depth
        event = [
            b
            for b in all_strings(eval_depth)
            if (v := t.evaluate(b)) is not None and v >= m
        ]
        measure = cover_measure(event)
        bound = Dyadic(1, m)
        if measure > bound:
            verdict = "fail"
        elif settled:
            verdict = "pass"
        else:
            verdict = "indeterminate"
        verdicts.append(LevelVerdict(m, verdict, measure, bound, eval_depth))
    return verdicts


def level_sense1(t: Sense1Test, prefix: str) -> int:
    """Max level of t over all initial segments of `prefix`; 0 if t is
    undefined on every one of them."""
    best = 0
    for i in range(len(_check_bits(prefix)) + 1):
        v = t.evaluate(prefix[:i])
        if v is not None and v > best:
            best = v
    return best


# ---------------------------------------------------------------------------
# conversions between the senses
# ---------------------------------------------------------------------------


def sense1_to_sense2(t: Sense1Test, depth: int = DEFAULT_DEPTH) -> Sense2Test:
    """Level n > 0 covers the strict event {evaluate > n}; level 0 is the
    full space.  Materializations are capped at the construction depth."""

    def materialize(n: int, d: int) -> frozenset[str]:
        d = min(d, depth)
        if n == 0:
            return frozenset(all_strings(d))
        return frozenset(
            b for b in all_strings(d) if (v := t.evaluate(b)) is not None and v > n
        )

    return Sense2Test(f"{t.name}.sense2", materialize)


def sense2_to_sense1(f: Sense2Test) -> Sense1Test:
    """The diagonal rule with the one-level shift: a string scores its own
    length exactly when it appears in the next level's cover at its own
    depth.  No finite horizon is declared, so validation of the result can
    fail or stay indeterminate but never pass outright."""

    def evaluate(b: str) -> int | None:
        return len(b) if b in f.enumerate(len(b) + 1, len(b)) else None

    return Sense1Test(f"{f.name}.sense1", evaluate, lambda m: None)


# ---------------------------------------------------------------------------
# leaf-mask arithmetic over depth-d cylinders
# ---------------------------------------------------------------------------


def _leaf_depth(members, d: int) -> int:
    return max([d] + [len(b) for b in members])


def _segment(b: str, depth: int) -> int:
    size = 1 << (depth - len(b))
    return ((1 << size) - 1) << ((int(b, 2) if b else 0) * size)


def _mask(members, depth: int) -> int:
    mask = 0
    for b in members:
        mask |= _segment(b, depth)
    return mask


def _mask_to_antichain(mask: int, depth: int) -> list[str]:
    out: list[str] = []

    def emit(prefix: str, lo: int, size: int) -> None:
        seg = ((1 << size) - 1) << lo
        part = mask & seg
        if part == seg:
            out.append(prefix)
        elif part and size > 1:
            emit(prefix + "0", lo, size // 2)
            emit(prefix + "1", lo + size // 2, size // 2)

    emit("", 0, 1 << depth)
    return out


# ---------------------------------------------------------------------------
# normalization, chains, the finite-battery universal test
# ---------------------------------------------------------------------------


def normalize(f: Sense2Test) -> Sense2Test:
    """Admit each level's members in canonical order while the exact running
    cover mass stays within 2^-n; the result is always valid, and equals f
    wherever f already was."""

    def materialize(n: int, d: int) -> frozenset[str]:
        members = sorted(f.enumerate(n, d), key=lambda b: (len(b), b))
        depth = _leaf_depth(members, d)
        allowance = 1 << (depth - n) if depth >= n else 0
        mask = 0
        admitted = []
        for b in members:
            merged = mask | _segment(b, depth)
            if merged.bit_count() <= allowance:
                mask = merged
                admitted.append(b)
        return frozenset(admitted)

    return Sense2Test(f"{f.name}.normalized", materialize)


def chain(f: Sense2Test) -> Sense2Test:
    """Level n covers the intersection of f's levels 0..n, reported as the
    minimal antichain over depth-d leaves; covers descend as n grows."""

    def materialize(n: int, d: int) -> frozenset[str]:
        levels = [f.enumerate(i, d) for i in range(n + 1)]
        depth = max(_leaf_depth(members, d) for members in levels)
        combined = (1 << (1 << depth)) - 1
        for members in levels:
            combined &= _mask(members, depth)
        return frozenset(_mask_to_antichain(combined, depth))

    return Sense2Test(f"{f.name}.chained", materialize)


def universal_test(
    battery: list[Sense2Test], n: int, depth: int = DEFAULT_DEPTH
) -> frozenset[str]:
    """Union of battery member i's normalized level n+i (1-based positions),
    so the total mass budget telescopes to at most 2^-n."""
    cover: set[str] = set()
    for i, member in enumerate(battery, start=1):
        cover |= normalize(member).enumerate(n + i, depth)
    return frozenset(cover)


# ---------------------------------------------------------------------------
# bridges to program-length complexity
# ---------------------------------------------------------------------------


def compression_test(
    k: int,
    len_limit: int = DEFAULT_K_LEN_LIMIT,
    budget: int = DEFAULT_BUDGET,
    depth: int = DEFAULT_DEPTH,
) -> frozenset[str]:
    """The level-k cover of the compressibility test: strings whose budgeted
    prefix complexity is at least k below their length.  The budgeted
    relation is a subset of the true one, so the exact cover mass obeys the
    2^-k bound a fortiori."""
    return frozenset(
        b
        for b in all_strings(depth)
        if (bound := prefix_k(b, len_limit, budget)) is not None
        and bound.value <= len(b) - k
    )


class BridgeMassError(ValueError):
    """Raised when the triple enumeration's coded mass exceeds 1."""

    def __init__(self, mass: Dyadic):
        super().__init__(f"coded mass {mass} exceeds 1")
        self.mass = mass


@dataclass(frozen=True)
class BridgeResult:
    """A Kraft-coded decoder for the even slices of a sense-2 test.

    triples holds (codeword length, n, b) with length = |b| - n; decoder
    pairs codewords with their targets in the same order.  When installed
    as the registry code table, each target b costs |b| - n plus
    dispatch_constant program characters under V.
    """

    triples: tuple[tuple[int, int, str], ...]
    decoder: tuple[tuple[str, str], ...]
    coded_mass: Dyadic
    excluded: tuple[tuple[int, str], ...]
    dispatch_constant: int


def ml_to_kc_decoder(
    g: Sense2Test,
    n_max: int,
    depth: int = DEFAULT_DEPTH,
    install: bool = True,
) -> BridgeResult:
    """Kraft-code the prefix-free-ized slices W_{g(2n)} for n = 1..n_max.

    Each member b of slice n gets a codeword of length |b| - n; members
    shorter than their n are excluded with a diagnostic.  The total coded
    mass must stay within 1 (it does whenever g is valid, since slice n
    weighs at most 2^-2n and contributes at most 2^-n); violations raise
    BridgeMassError with the exact sum.  By default the decoder is
    installed as the registry code table, making the realized bounds
    executable machine facts.
    """
    triples: list[tuple[int, int, str]] = []
    excluded: list[tuple[int, str]] = []
    for n in range(1, n_max + 1):
        # canonical admission order keeps the antichain at minimal members
        slice_ = sorted(g.enumerate(2 * n, depth), key=lambda b: (len(b), b))
        for b in sorted(prefix_freeize(slice_)):
            if len(b) < n:
                excluded.append((n, b))
            else:
                triples.append((len(b) - n, n, b))
    triples.sort()
    mass = DYADIC_ZERO
    for ell, _, _ in triples:
        mass = mass + Dyadic(1, ell)
    if mass > DYADIC_ONE:
        raise BridgeMassError(mass)
    codewords = kraft_code([ell for ell, _, _ in triples])
    decoder = tuple(zip(codewords, [b for _, _, b in triples]))
    if install:
        install_code_table(dict(decoder))
    return BridgeResult(tuple(triples), decoder, mass, tuple(excluded), REG_CODE_TABLE + 1)


# ---------------------------------------------------------------------------
# scoring finite subjects
# ---------------------------------------------------------------------------


def _verdict(t: Sense1Test, subject: str, level: int) -> str:
    observable = 0
    for m in range(1, len(subject) + 1):
        h = t.horizon(m)
        if h is None or h > len(subject):
            break
        observable = m
    if observable == 0:
        return "indeterminate"
    return "fail-at-depth" if level >= observable else "pass-at-depth"


def score(
    subject: str,
    battery: list[Sense1Test] | None = None,
    len_limit: int = DEFAULT_K_LEN_LIMIT,
    budget: int = DEFAULT_BUDGET,
    depth: int = DEFAULT_DEPTH,
) -> DeficiencyReport:
    """Max triggered level per test for the subject's prefixes, a pass/fail
    annotation at the observable depth, and the best budgeted compression
    deficiency over the subject's prefixes.  All values are depth/budget
    relative."""
    _check_bits(subject)
    tests = builtin_tests() if battery is None else battery
    levels = []
    verdicts = []
    for t in tests:
        level = level_sense1(t, subject)
        levels.append((t.name, level))
        verdicts.append((t.name, _verdict(t, subject, level)))
    deficiency = None
    for n in range(min(len(subject), depth) + 1):
        bound = prefix_k(subject[:n], len_limit, budget)
        if bound is not None:
            gap = n - bound.value
            if deficiency is None or gap > deficiency:
                deficiency = gap
    return DeficiencyReport(
        levels=tuple(levels),
        verdicts=tuple(verdicts),
        compression_deficiency=deficiency if deficiency is not None else -1,
        depth=depth,
        len_limit=len_limit,
        budget=budget,
    )
