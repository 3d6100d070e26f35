"""Machine substrate: registry behaviors, decoded transition tables, the
plain universal machine U, the prefix guard, the prefix-free universal
machine V, and the shared dovetailer.

Machine enumeration is two-tier.  Indices 0..4 name hand-written registry
behaviors, so that "there is a constant k" arguments turn into small
concrete numbers; every larger index m decodes index_to_string(m - 5) as a
fixed-width transition table (malformed encodings decode to the
everywhere-diverging behavior, keeping the enumeration total).

    0  identity    halts at once, output = input
    1  pad         a -> B * U(a) where B is the |U(a)|-th string in
                   enumeration order (the length-prefixing map)
    2  pair        dovetails all splits s = p * q and outputs V(p) * V(q)
                   for the first split whose halves both halt
    3  echo        self-delimiting copy: 1^n 0 a -> a when |a| = n
    4  code table  finite installable codeword -> output map

Decoded tables are single-tape machines over {0, 1, blank}: 2 bits of
state count (1..4), then per (state, symbol) a 6-bit field of 3 bits next
state (the state count itself means halt), 2 bits write symbol (3 is
malformed) and 1 bit move (0 left, 1 right).  The halt output is the
leftmost maximal blank-free run on the tape.

Every run is costed in abstract steps so budgeted outcomes are monotone
and reproducible:

    identity / echo    |input| + 1
    code table         |input| + |output| + 1
    pad                inner U cost + |output| + 1
    decoded table      simulated transitions until halt
    U on 1^n 0 d       machine-n cost on d, plus n + 1 dispatch
    pair on s          2t + i + |s| + 1 where rounds t = 1, 2, 4, ... probe
                       both halves of every split and (t, i) is the first
                       round and split index at which both halt within t
    guarded M on b     j + t for the winning comparable, see below
    V on 1^l 0 a       guarded machine-l cost on a, plus l + 1 dispatch

The guard dovetails M over every string c comparable with its input b
(prefixes of b, and extensions of b up to the configured len_limit) in the
canonical diagonal order over (global length-lex rank j of c, steps).  A
comparable halting with cost t finishes at diagonal d = j + t; the winner
is the lexicographically least (d, j).  The guard halts, with M(b)'s
output and cost d, only when the winner is b itself; a winner elsewhere is
a permanent divergence.  Ranks are global, not scan-relative, so the
winner of a comparability chain is scan-independent and the guarded
domain restricted to strings of length <= len_limit is always an
antichain.  V diverges outright on programs longer than len_limit, which
keeps its observed domain inside that guarantee; raising len_limit can
move guard winners, which is the documented budget-relativity of V.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache

from .bitstr import _check_bits, index_to_string, string_to_index
from .prefixfree import is_prefix_free

REG_IDENTITY = 0
REG_PAD = 1
REG_PAIR = 2
REG_ECHO = 3
REG_CODE_TABLE = 4
REGISTRY_SIZE = 5
REGISTRY_NAMES = ("identity", "pad", "pair", "echo", "code-table")

TM_SYMBOLS = 3
TM_FIELD_BITS = 6

DEFAULT_LEN_LIMIT = 12
DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class MachineBehavior:
    """A total description of one machine.

    kind "registry-native" carries a registry_id, "decoded-table" carries
    a transition table (None = everywhere diverging), "mapping" carries an
    explicit finite graph, and "guarded" wraps another behavior in the
    prefix guard.
    """

    kind: str
    registry_id: int | None = None
    table: tuple[tuple[int, int, int], ...] | None = None
    mapping: tuple[tuple[str, str], ...] | None = None
    inner: "MachineBehavior | None" = None


@dataclass(frozen=True)
class BudgetedOutcome:
    status: str
    output: str | None
    steps_used: int
    budget: int

    @property
    def halted(self) -> bool:
        return self.status == "halted"


@dataclass(frozen=True)
class DovetailEvent:
    program: str
    stage: int
    outcome: BudgetedOutcome


def _decode_table(bits: str) -> tuple[tuple[int, int, int], ...] | None:
    if len(bits) < 2:
        return None
    states = int(bits[:2], 2) + 1
    if len(bits) != 2 + states * TM_SYMBOLS * TM_FIELD_BITS:
        return None
    rows = []
    for pos in range(2, len(bits), TM_FIELD_BITS):
        field = bits[pos : pos + TM_FIELD_BITS]
        nxt = int(field[:3], 2)
        write = int(field[3:5], 2)
        if nxt > states or write > 2:
            return None
        rows.append((nxt, write, 1 if field[5] == "1" else -1))
    return tuple(rows)


@lru_cache(maxsize=None)
def decode_machine(m: int) -> MachineBehavior:
    if m < 0:
        raise ValueError("machine index must be nonnegative")
    if m < REGISTRY_SIZE:
        return MachineBehavior(kind="registry-native", registry_id=m)
    return MachineBehavior(
        kind="decoded-table", table=_decode_table(index_to_string(m - REGISTRY_SIZE))
    )


DIVERGING = MachineBehavior(kind="decoded-table", table=None)


def mapping_behavior(table: dict[str, str]) -> MachineBehavior:
    items = tuple(sorted((_check_bits(k), _check_bits(v)) for k, v in table.items()))
    return MachineBehavior(kind="mapping", mapping=items)


def prefix_guard(machine: MachineBehavior) -> MachineBehavior:
    return MachineBehavior(kind="guarded", inner=machine)


def _tm_status(table, inp: str, cap: int):
    states = len(table) // TM_SYMBOLS
    tape = {i: int(c) for i, c in enumerate(inp)}
    head = 0
    state = 0
    steps = 0
    while steps < cap:
        sym = tape.get(head, 2)
        nxt, write, move = table[state * TM_SYMBOLS + sym]
        steps += 1
        if write == 2:
            tape.pop(head, None)
        else:
            tape[head] = write
        head += move
        if nxt == states:
            if not tape:
                return ("h", steps, "")
            cell = min(tape)
            out = []
            while cell in tape:
                out.append(str(tape[cell]))
                cell += 1
            return ("h", steps, "".join(out))
        state = nxt
    return ("u", cap)


# ---------------------------------------------------------------------------
# the budgeted status engine
# ---------------------------------------------------------------------------
# A status is ("h", cost, output) with cost <= the queried cap, ("d",) for a
# proven permanent divergence, or ("u", cap) when neither is settled yet.
# Statuses refine monotonically in cap and are memoized per context; every
# recursive probe runs at a strictly smaller cap (dispatch, pair rounds) or
# on structurally smaller input (pad), so evaluation terminates.


def _cached(memo: dict, key, cap: int):
    entry = memo.get(key)
    if entry is None:
        return None
    if entry[0] == "h":
        return entry if entry[1] <= cap else ("u", cap)
    if entry[0] == "d":
        return entry
    if entry[1] >= cap:
        return ("u", cap)
    return None


def _remember(memo: dict, key, status) -> None:
    prev = memo.get(key)
    if prev is not None and prev[0] != "u":
        return
    if status[0] == "u" and prev is not None and prev[1] >= status[1]:
        return
    memo[key] = status


class _Context:
    """Memoized statuses for one (len_limit, installed code table) pair."""

    __slots__ = ("len_limit", "code_table", "_machine", "_guard", "_u", "_v")

    def __init__(self, len_limit: int, code_table: tuple[tuple[str, str], ...]):
        self.len_limit = len_limit
        self.code_table = dict(code_table)
        self._machine: dict = {}
        self._guard: dict = {}
        self._u: dict = {}
        self._v: dict = {}

    # -- machine dispatch ---------------------------------------------------

    def m_status(self, machine: MachineBehavior, inp: str, cap: int):
        kind = machine.kind
        if kind == "registry-native":
            rid = machine.registry_id
            if rid == REG_IDENTITY:
                cost = len(inp) + 1
                return ("h", cost, inp) if cost <= cap else ("u", cap)
            if rid == REG_ECHO:
                n = inp.find("0")
                if n < 0 or len(inp) != 2 * n + 1:
                    return ("d",)
                cost = len(inp) + 1
                return ("h", cost, inp[n + 1 :]) if cost <= cap else ("u", cap)
            if rid == REG_CODE_TABLE:
                return self._finite_status(self.code_table, inp, cap)
            if rid == REG_PAD:
                return self._pad_status(inp, cap)
            if rid == REG_PAIR:
                return self._pair_status(inp, cap)
            raise ValueError(f"unknown registry id {rid}")
        if kind == "decoded-table":
            if machine.table is None:
                return ("d",)
            key = (machine.table, inp)
            hit = _cached(self._machine, key, cap)
            if hit is not None:
                return hit
            status = _tm_status(machine.table, inp, cap)
            _remember(self._machine, key, status)
            return status
        if kind == "mapping":
            return self._finite_status(dict(machine.mapping), inp, cap)
        if kind == "guarded":
            return self.guard_status(machine.inner, inp, cap)
        raise ValueError(f"unknown behavior kind {kind!r}")

    @staticmethod
    def _finite_status(table: dict[str, str], inp: str, cap: int):
        out = table.get(inp)
        if out is None:
            return ("d",)
        cost = len(inp) + len(out) + 1
        return ("h", cost, out) if cost <= cap else ("u", cap)

    def _pad_status(self, inp: str, cap: int):
        key = ("pad", inp)
        hit = _cached(self._machine, key, cap)
        if hit is not None:
            return hit
        inner = self.u_status(inp, max(cap - 1, 0))
        if inner[0] == "h":
            out = index_to_string(len(inner[2])) + inner[2]
            status = ("h", inner[1] + len(out) + 1, out)
        elif inner[0] == "d":
            status = ("d",)
        else:
            status = ("u", cap)
        _remember(self._machine, key, status)
        if status[0] == "h" and status[1] > cap:
            return ("u", cap)
        return status

    def _pair_status(self, s: str, cap: int):
        key = ("pair", s)
        hit = _cached(self._machine, key, cap)
        if hit is not None:
            return hit
        base = len(s) + 1
        status = None
        t = 1
        while 2 * t + base <= cap and status is None:
            for i in range(len(s) + 1):
                left = self.v_status(s[:i], t)
                if left[0] != "h":
                    continue
                right = self.v_status(s[i:], t)
                if right[0] != "h":
                    continue
                status = ("h", 2 * t + i + base, left[2] + right[2])
                break
            t *= 2
        if status is None:
            if cap >= 2 and all(
                self.v_status(s[:i], cap - 1)[0] == "d"
                or self.v_status(s[i:], cap - 1)[0] == "d"
                for i in range(len(s) + 1)
            ):
                status = ("d",)
            else:
                status = ("u", cap)
        _remember(self._machine, key, status)
        if status[0] == "h" and status[1] > cap:
            return ("u", cap)
        return status

    # -- the prefix guard ---------------------------------------------------

    def _comparables(self, b: str):
        for k in range(len(b) + 1):
            yield string_to_index(b[:k]), b[:k]
        top = string_to_index(b) + 1
        for length in range(len(b) + 1, self.len_limit + 1):
            width = length - len(b)
            start = (top << width) - 1
            for off in range(1 << width):
                yield start + off, b + format(off, f"0{width}b")

    def guard_status(self, machine: MachineBehavior, b: str, cap: int):
        if machine.kind == "decoded-table" and machine.table is None:
            return ("d",)
        key = (machine, b)
        hit = _cached(self._guard, key, cap)
        if hit is not None:
            return hit
        finite = None
        if machine.kind == "mapping":
            finite = dict(machine.mapping)
        elif machine.kind == "registry-native" and machine.registry_id == REG_CODE_TABLE:
            finite = self.code_table
        if finite is not None:
            status = self._guard_finite(finite, b)
        else:
            status = self._guard_walk(machine, b, cap)
        _remember(self._guard, key, status)
        if status[0] == "h" and status[1] > cap:
            return ("u", cap)
        return status

    def _guard_finite(self, table: dict[str, str], b: str):
        # the domain is known outright, so the dovetail winner is exact
        best = None
        for c, out in table.items():
            if not (b.startswith(c) or (c.startswith(b) and len(c) <= self.len_limit)):
                continue
            j = string_to_index(c)
            cand = (j + len(c) + len(out) + 1, j, c, out)
            if best is None or cand < best:
                best = cand
        if best is None or best[2] != b:
            return ("d",)
        return ("h", best[0], best[3])

    def _guard_walk(self, machine: MachineBehavior, b: str, cap: int):
        best = None  # (d, j, comparable, output)
        unresolved = False
        for j, c in self._comparables(b):
            if best is not None and j >= best[0] - 1:
                break
            probe = best[0] - 1 - j if best is not None else cap - j
            if probe <= 0:
                unresolved = True
                break
            st = self.m_status(machine, c, probe)
            if st[0] == "h":
                d = j + st[1]
                if best is None or d < best[0]:
                    best = (d, j, c, st[2])
            elif st[0] == "u" and best is None:
                # halting cost exceeds cap - j, so it cannot finish at a
                # diagonal <= cap; decidable only at a larger cap
                unresolved = True
        if best is None:
            return ("u", cap) if unresolved else ("d",)
        if best[2] != b:
            return ("d",)
        return ("h", best[0], best[3])

    # -- the two universal machines -----------------------------------------

    def u_status(self, inp: str, cap: int):
        hit = _cached(self._u, inp, cap)
        if hit is not None:
            return hit
        n = inp.find("0")
        if n < 0:
            status = ("d",)
        else:
            dispatch = n + 1
            inner = self.m_status(decode_machine(n), inp[n + 1 :], max(cap - dispatch, 0))
            if inner[0] == "h":
                status = ("h", inner[1] + dispatch, inner[2])
            elif inner[0] == "d":
                status = ("d",)
            else:
                status = ("u", cap)
        _remember(self._u, inp, status)
        if status[0] == "h" and status[1] > cap:
            return ("u", cap)
        return status

    def v_status(self, prog: str, cap: int):
        hit = _cached(self._v, prog, cap)
        if hit is not None:
            return hit
        if len(prog) > self.len_limit:
            status = ("d",)
        else:
            l = prog.find("0")
            if l < 0:
                status = ("d",)
            else:
                dispatch = l + 1
                inner = self.guard_status(
                    decode_machine(l), prog[l + 1 :], max(cap - dispatch, 0)
                )
                if inner[0] == "h":
                    status = ("h", inner[1] + dispatch, inner[2])
                elif inner[0] == "d":
                    status = ("d",)
                else:
                    status = ("u", cap)
        _remember(self._v, prog, status)
        if status[0] == "h" and status[1] > cap:
            return ("u", cap)
        return status


# ---------------------------------------------------------------------------
# context registry and the installable code table
# ---------------------------------------------------------------------------

_CODE_TABLE: tuple[tuple[str, str], ...] = ()
_CONTEXTS: dict[tuple[int, tuple], _Context] = {}


def _context(len_limit: int) -> _Context:
    if len_limit < 0:
        raise ValueError("len_limit must be nonnegative")
    key = (len_limit, _CODE_TABLE)
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        ctx = _Context(len_limit, _CODE_TABLE)
        _CONTEXTS[key] = ctx
    return ctx


def install_code_table(table: dict[str, str]) -> None:
    """Install the finite decoder behind registry index 4.

    Keys must form an antichain so the code-table behavior is prefix-free
    by construction.
    """
    global _CODE_TABLE
    items = tuple(sorted((_check_bits(k), _check_bits(v)) for k, v in table.items()))
    if not is_prefix_free([k for k, _ in items]):
        raise ValueError("code table keys must form an antichain")
    _CODE_TABLE = items


def clear_code_table() -> None:
    global _CODE_TABLE
    _CODE_TABLE = ()


def current_code_table() -> dict[str, str]:
    return dict(_CODE_TABLE)


def registry_fingerprint() -> str:
    payload = {
        "registry": list(REGISTRY_NAMES),
        "table_offset": REGISTRY_SIZE,
        "tm_field_bits": [3, 2, 1],
        "code_table": [[k, v] for k, v in _CODE_TABLE],
    }
    digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode("ascii"))
    return digest.hexdigest()


# ---------------------------------------------------------------------------
# public runners
# ---------------------------------------------------------------------------


def _outcome(status, budget: int) -> BudgetedOutcome:
    if status[0] == "h":
        return BudgetedOutcome("halted", status[2], status[1], budget)
    return BudgetedOutcome("exhausted", None, budget, budget)


def _check_budget(budget: int) -> int:
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    return budget


def run(
    machine: MachineBehavior,
    inp: str,
    budget: int,
    len_limit: int = DEFAULT_LEN_LIMIT,
) -> BudgetedOutcome:
    ctx = _context(len_limit)
    return _outcome(ctx.m_status(machine, _check_bits(inp), _check_budget(budget)), budget)


def universal_run(
    inp: str, budget: int, len_limit: int = DEFAULT_LEN_LIMIT
) -> BudgetedOutcome:
    ctx = _context(len_limit)
    return _outcome(ctx.u_status(_check_bits(inp), _check_budget(budget)), budget)


def prefix_universal_run(
    prog: str, budget: int, len_limit: int = DEFAULT_LEN_LIMIT
) -> BudgetedOutcome:
    ctx = _context(len_limit)
    return _outcome(ctx.v_status(_check_bits(prog), _check_budget(budget)), budget)


_STATUS_NAMES = {"h": "halted", "d": "diverges", "u": "unresolved"}


def universal_status(inp: str, budget: int, len_limit: int = DEFAULT_LEN_LIMIT) -> str:
    """Classify U on `inp`: "halted" within budget, certified "diverges"
    (no budget will ever help), or "unresolved" at this budget."""
    ctx = _context(len_limit)
    return _STATUS_NAMES[ctx.u_status(_check_bits(inp), _check_budget(budget))[0]]


def prefix_universal_status(
    prog: str, budget: int, len_limit: int = DEFAULT_LEN_LIMIT
) -> str:
    """Classify V on `prog` the way universal_status classifies U."""
    ctx = _context(len_limit)
    return _STATUS_NAMES[ctx.v_status(_check_bits(prog), _check_budget(budget))[0]]


def dovetail_events(stage: int, len_limit: int = DEFAULT_LEN_LIMIT):
    """Yield the first-halt events among the first `stage` dovetail pairs.

    Pairs (program rank j, step budget s >= 1) are visited along diagonals
    d = j + s ascending, by j within a diagonal; the pair at ordinal
    d(d-1)/2 + j reports a DovetailEvent exactly when V first halts there,
    i.e. when its halting cost equals s.
    """
    ctx = _context(len_limit)
    ordinal = 0
    diagonal = 1
    while ordinal < stage:
        for j in range(diagonal):
            if ordinal >= stage:
                break
            s = diagonal - j
            prog = index_to_string(j)
            st = ctx.v_status(prog, s)
            if st[0] == "h" and st[1] == s:
                yield DovetailEvent(
                    prog, ordinal, BudgetedOutcome("halted", st[2], s, s)
                )
            ordinal += 1
        diagonal += 1


def dovetail_domain(stage: int, len_limit: int = DEFAULT_LEN_LIMIT) -> list[DovetailEvent]:
    return list(dovetail_events(stage, len_limit))
