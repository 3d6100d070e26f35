"""Lower bounds on the halting probability of the prefix-free machine V.

The halting probability is the Kraft mass of V's domain.  Because that
domain is only enumerable, everything here is a stage-indexed lower bound:
run the dovetailer for a prescribed number of (program, step) pairs, collect
the programs seen halting, and take their exact Kraft sum.  No upper bounds,
gap estimates, or digit claims are ever produced; the bound is exact dyadic
arithmetic over an explicit finite set of witnesses, and it is relative to
this machine, so estimates carry the registry fingerprint.

psi_reconstruct inverts the process: given a string read as the dyadic value
of a candidate lower-bound prefix, replay the dovetail enumeration until the
accumulated mass first exceeds that value, and report the halted programs no
longer than the prefix.  When the value really is a lower-bound prefix of
the halting probability, every program of that length class must have
appeared by the crossing point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitstr import DYADIC_ZERO, Dyadic, _check_bits, value_of
from .machine import DEFAULT_LEN_LIMIT, dovetail_events, registry_fingerprint
from .prefixfree import kraft_sum


@dataclass(frozen=True)
class OmegaEstimate:
    """A stage's exact contribution record: lower_bound = kraft_sum(halted)."""

    lower_bound: Dyadic
    stage: int
    halted: frozenset[str]
    fingerprint: str


def omega_lower_bound(stage: int, len_limit: int = DEFAULT_LEN_LIMIT) -> OmegaEstimate:
    """Exact Kraft mass of the programs seen halting within `stage` pairs."""
    halted = frozenset(event.program for event in dovetail_events(stage, len_limit))
    return OmegaEstimate(kraft_sum(halted), stage, halted, registry_fingerprint())


def halted_below(
    n: int, stage: int, len_limit: int = DEFAULT_LEN_LIMIT
) -> frozenset[str]:
    """The stage-observed part of {p : |p| <= n and V(p) halts}."""
    return frozenset(
        event.program
        for event in dovetail_events(stage, len_limit)
        if len(event.program) <= n
    )


def psi_reconstruct(
    a: str, stage_limit: int, len_limit: int = DEFAULT_LEN_LIMIT
) -> frozenset[str] | None:
    """Replay the dovetailer until the halted mass exceeds value_of(a); then
    return the halted programs of length <= |a|.  None if stage_limit pairs
    were not enough to cross."""
    target = value_of(_check_bits(a))
    halted: list[str] = []
    mass = DYADIC_ZERO
    for event in dovetail_events(stage_limit, len_limit):
        halted.append(event.program)
        mass = mass + Dyadic(1, len(event.program))
        if mass > target:
            return frozenset(p for p in halted if len(p) <= len(a))
    return None
