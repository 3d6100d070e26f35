"""Budget-bounded Kolmogorov complexity bounds over the machine substrate.

Everything here is an upper bound obtained by running programs under a step
budget and a program-length cap.  A returned bound is witnessed by a concrete
program that halts with the target output; absence means the search space was
exhausted, never that no program exists.  The only lower-bound style claim in
the module is the incompressibility census, which counts strings that no
budgeted short program reached; since the budgeted relation is a subset of
the true one, that count can only overstate incompressibility, which is the
safe direction for the counting argument it implements.

Registry constants appearing in the classic inequalities (dispatch overhead
of the identity, the echo self-delimiter, the pad and pair decoders) are
derived from the registry indices so tests can pin them as numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from .bitstr import all_strings, string_to_index
from .machine import (
    DEFAULT_BUDGET,
    DEFAULT_LEN_LIMIT,
    REG_ECHO,
    REG_IDENTITY,
    REG_PAD,
    REG_PAIR,
    prefix_universal_run,
    prefix_universal_status,
    registry_fingerprint,
    universal_run,
    universal_status,
)

PAD_SCAN_LIMIT = 256  # default program-length cap for pad_witness scans


@dataclass(frozen=True)
class ComplexityBound:
    """An executed upper bound: `witness` halts with the target output.

    `exhaustive` is True when every shorter program either halted (with some
    other output) or was certified diverging, so no larger budget can ever
    produce a shorter witness and `value` is the true complexity.
    """

    value: int
    witness: str
    budget: int
    len_limit: int
    exhaustive: bool


@dataclass(frozen=True)
class PadWitness:
    """A prefix length n plus a bound certifying C_t(x[:n]) < n - k.

    `overhead` is the constant number of program characters the pad route
    spends beyond the payload (dispatch to pad plus the inner identity
    header).
    """

    n: int
    bound: ComplexityBound
    overhead: int


@dataclass(frozen=True)
class SubadditivityReport:
    """Concatenation complexity versus the parts, over all |a|,|b| <= n_max.

    The plain side is observational: `plain_gap_max` is the largest value of
    C_t(a+b) - C_t(a) - C_t(b) seen among `plain_pairs` fully-measured pairs,
    with no sign asserted.  The prefix side is a verified inequality:
    `prefix_violations` lists pairs whose explicit pair-decoder witness
    failed to certify K_t(a+b) <= K_t(a) + K_t(b) + pair_overhead.
    """

    n_max: int
    len_limit: int
    budget: int
    pair_overhead: int
    plain_gap_max: int | None
    plain_pairs: int
    prefix_violations: tuple[tuple[str, str], ...]
    prefix_pairs: int


def registry_constants() -> dict[str, int]:
    """The concrete constants of the classic inequalities, from the registry.

    m_id: C_t(b) <= |b| + m_id (dispatch to identity).
    c_echo: K_t(b) <= 2|b| + c_echo (dispatch to echo plus the separator).
    k_pad: C_t(pad image of b) <= C_t(b) + k_pad (dispatch to pad).
    k_pair: K_t(a+b) <= K_t(a) + K_t(b) + k_pair (dispatch to pair).
    """
    return {
        "m_id": REG_IDENTITY + 1,
        "c_echo": REG_ECHO + 2,
        "k_pad": REG_PAD + 1,
        "k_pair": REG_PAIR + 1,
    }


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------


def _check_target(b: str) -> str:
    if any(c not in "01" for c in b):
        raise ValueError(f"not a bit string: {b!r}")
    return b


def _programs(len_limit: int):
    return all_strings(len_limit) if len_limit >= 0 else iter(())


# first-witness tables are memoized per machine configuration
_TABLES: dict[tuple, dict[str, str]] = {}


def _witness_table(prefix: bool, len_limit: int, budget: int) -> dict[str, str]:
    key = (prefix, len_limit, budget, registry_fingerprint())
    table = _TABLES.get(key)
    if table is None:
        runner = prefix_universal_run if prefix else universal_run
        table = {}
        for p in _programs(len_limit):
            out = runner(p, budget, len_limit)
            if out.halted and out.output not in table:
                table[out.output] = p
        _TABLES[key] = table
    return table


def _bound(b: str, prefix: bool, len_limit: int, budget: int) -> ComplexityBound | None:
    witness = _witness_table(prefix, len_limit, budget).get(_check_target(b))
    if witness is None:
        return None
    classify = prefix_universal_status if prefix else universal_status
    exhaustive = all(
        classify(p, budget, len_limit) != "unresolved"
        for p in _programs(len(witness) - 1)
    )
    return ComplexityBound(len(witness), witness, budget, len_limit, exhaustive)


def plain_c(
    b: str, len_limit: int = DEFAULT_LEN_LIMIT, budget: int = DEFAULT_BUDGET
) -> ComplexityBound | None:
    """Shortest program for U found to output b within the limits."""
    return _bound(b, False, len_limit, budget)


def prefix_k(
    b: str, len_limit: int = DEFAULT_LEN_LIMIT, budget: int = DEFAULT_BUDGET
) -> ComplexityBound | None:
    """Shortest program for V found to output b within the limits."""
    return _bound(b, True, len_limit, budget)


# ---------------------------------------------------------------------------
# the incompressibility census
# ---------------------------------------------------------------------------


def census_incompressible(
    n: int, len_limit: int = DEFAULT_LEN_LIMIT, budget: int = DEFAULT_BUDGET
) -> int:
    """How many length-n strings no program shorter than n reached.

    Counts b with C_t(b) >= n; at least 1 by the counting argument, since
    there are fewer short programs than length-n strings.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    produced: set[str] = set()
    for p in _programs(min(n - 1, len_limit)):
        out = universal_run(p, budget, len_limit)
        if out.halted and len(out.output) == n:
            produced.add(out.output)
    return 2**n - len(produced)


# ---------------------------------------------------------------------------
# pad compression of streams
# ---------------------------------------------------------------------------


def pad_witness(
    prefix_of: Callable[[int], str],
    k: int,
    len_limit: int = PAD_SCAN_LIMIT,
    budget: int = DEFAULT_BUDGET,
) -> PadWitness | None:
    """Find n with C_t(x[:n]) < n - k, where x is the stream `prefix_of`.

    Every length-L prefix of x is the enumeration string B_p for exactly one
    rank p, so x[:L+p] = B_p + b with |b| = p and the pad decoder rebuilds it
    from the p+3 character program 10 0 b.  That witness beats n - k exactly
    when L >= k + 4; we scan L upward and return the first decomposition
    whose witness actually halts within the limits.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    overhead = (REG_PAD + 1) + (REG_IDENTITY + 1)
    for length in range(k + 4, len_limit + 1):
        head = _check_target(prefix_of(length))
        if len(head) != length:
            raise ValueError("prefix_of must return prefixes of the asked length")
        p = string_to_index(head)
        if p + overhead > len_limit:
            return None  # ranks only grow with the prefix length
        target = _check_target(prefix_of(length + p))
        if len(target) != length + p or not target.startswith(head):
            raise ValueError("prefix_of must be consistent across lengths")
        witness = "1" * REG_PAD + "0" + "1" * REG_IDENTITY + "0" + target[length:]
        n = length + p
        out = universal_run(witness, budget, len_limit)
        if out.halted and out.output == target and len(witness) < n - k:
            bound = ComplexityBound(len(witness), witness, budget, len_limit, False)
            return PadWitness(n, bound, overhead)
    return None


# ---------------------------------------------------------------------------
# compressible-prefix horizons
# ---------------------------------------------------------------------------


def horizon_search(
    k: int,
    m_max: int,
    len_limit: int = DEFAULT_LEN_LIMIT,
    budget: int = DEFAULT_BUDGET,
) -> int | None:
    """Least m <= m_max such that every length-m string has a proper prefix
    d with C_t(d) <= |d| - k, or None.

    A returned m is valid for the budgeted relation only: larger budgets can
    reveal more compressible prefixes and hence shrink the horizon, never
    grow it.
    """
    table = _witness_table(False, len_limit, budget)
    compressible = {s for s, w in table.items() if len(w) <= len(s) - k}
    for m in range(m_max + 1):
        if all(
            any("".join(bits)[:i] in compressible for i in range(m))
            for bits in product("01", repeat=m)
        ):
            return m
    return None


# ---------------------------------------------------------------------------
# subadditivity
# ---------------------------------------------------------------------------


def subadditivity_probe(
    n_max: int, len_limit: int = DEFAULT_LEN_LIMIT, budget: int = DEFAULT_BUDGET
) -> SubadditivityReport:
    """Measure C_t over concatenations and verify the K_t pair inequality.

    The prefix side builds, for each pair, the explicit program
    1^pair 0 + witness(a) + witness(b) and runs it under limits wide enough
    to contain it (the witness parts already halt within `budget`, and the
    guard resolves the combined program within 8*budget + 2^(|program|+1)
    steps), so a failure to certify is recorded as a violation rather than
    masked by the caller's budget.
    """
    strings = list(_programs(n_max))
    plain = _witness_table(False, len_limit, budget)
    pair_overhead = REG_PAIR + 1

    gaps = []
    for a, b in product(strings, strings):
        witnesses = (plain.get(a), plain.get(b), plain.get(a + b))
        if all(w is not None for w in witnesses):
            gaps.append(len(witnesses[2]) - len(witnesses[0]) - len(witnesses[1]))

    violations = []
    checked = 0
    for a, b in product(strings, strings):
        ka = prefix_k(a, len_limit, budget)
        kb = prefix_k(b, len_limit, budget)
        if ka is None or kb is None:
            continue
        checked += 1
        prog = "1" * REG_PAIR + "0" + ka.witness + kb.witness
        wide_budget = 8 * budget + (1 << (len(prog) + 1))
        out = prefix_universal_run(prog, wide_budget, max(len_limit, len(prog)))
        certified = (
            out.halted
            and out.output == a + b
            and len(prog) <= ka.value + kb.value + pair_overhead
        )
        if not certified:
            violations.append((a, b))

    return SubadditivityReport(
        n_max=n_max,
        len_limit=len_limit,
        budget=budget,
        pair_overhead=pair_overhead,
        plain_gap_max=max(gaps) if gaps else None,
        plain_pairs=len(gaps),
        prefix_violations=tuple(violations),
        prefix_pairs=checked,
    )


# ---------------------------------------------------------------------------
# minimal programs
# ---------------------------------------------------------------------------


def budget_short_programs(
    len_limit: int = DEFAULT_LEN_LIMIT, budget: int = DEFAULT_BUDGET
) -> list[str]:
    """Programs minimal-length for their V output among halting programs
    within the limits, in length-lex order.

    Membership is budget-relative: a larger budget can reveal a shorter
    program for the same output and evict an entry.
    """
    best: dict[str, int] = {}
    for p in _programs(len_limit):
        out = prefix_universal_run(p, budget, len_limit)
        if out.halted:
            best.setdefault(out.output, len(p))
    return [
        p
        for p in _programs(len_limit)
        if (out := prefix_universal_run(p, budget, len_limit)).halted
        and best[out.output] == len(p)
    ]
