"""Antichains of binary strings and their exact cover measure.

A set of strings is prefix-free when no member is a proper initial segment
of another; the cylinders above its members are then disjoint, and the
measure of their union is the Kraft sum of the lengths.  Arbitrary finite
sets are reduced to an equivalent antichain by ``prefix_freeize``, which
replaces each string that arrives above existing members by the deepest
slice of its cylinder not already covered.  ``kraft_code`` runs the other
direction: it assigns leftmost disjoint codewords to a stream of lengths
while the running mass fits below one.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator

from .bitstr import Dyadic, DYADIC_ZERO, _check_bits


class KraftOverflowError(ValueError):
    """Raised when a requested codeword no longer fits inside [0, 1)."""

    def __init__(self, index: int, length: int):
        super().__init__(f"codeword of length {length} at index {index} does not fit")
        self.index = index
        self.length = length


def is_prefix_free(strings: Iterable[str]) -> bool:
    """True iff no member is a proper prefix of another member."""
    ordered = sorted(set(map(_check_bits, strings)))
    # sorted order puts a prefix immediately before its lexicographically
    # least extension, so adjacent checks suffice
    return all(
        not ordered[i + 1].startswith(ordered[i]) for i in range(len(ordered) - 1)
    )


def kraft_sum(strings: Iterable[str]) -> Dyadic:
    """Sum of 2^-|b| over the (deduplicated) members, exactly."""
    members = set(strings)
    if not members:
        return DYADIC_ZERO
    depth = max(len(_check_bits(b)) for b in members)
    return Dyadic(sum(1 << (depth - len(b)) for b in members), depth)


def prefix_freeize(strings: Iterable[str]) -> frozenset[str]:
    """Antichain covering exactly the same cylinders as the input stream.

    Strings are folded in one at a time.  A newcomer already covered by the
    set is dropped; a newcomer strictly below existing members is replaced
    by its extensions at the current maximum depth that are not yet covered.
    The result never depends on anything but the input order, and equals
    the input when the input was already prefix-free.
    """
    antichain: set[str] = set()
    above = Counter()  # proper prefix -> number of members extending it
    max_len = 0

    def expand(p: str) -> int:
        # admit the uncovered depth-max_len slice under p, counting as we go
        if p in antichain:
            return 0
        if len(p) == max_len:
            antichain.add(p)
            return 1
        added = expand(p + "0") + expand(p + "1")
        if added:
            above[p] += added
        return added

    for s in strings:
        _check_bits(s)
        if any(s[:i] in antichain for i in range(len(s) + 1)):
            continue  # already covered (duplicates land here too)
        if not above[s]:
            antichain.add(s)
            max_len = max(max_len, len(s))
            for i in range(len(s)):
                above[s[:i]] += 1
            continue
        added = expand(s)  # members above s force max_len > |s|
        for i in range(len(s)):
            above[s[:i]] += added
    return frozenset(antichain)


def cover_measure(strings: Iterable[str]) -> Dyadic:
    """Exact measure of the union of cylinders above the given strings."""
    canonical = sorted(set(strings), key=lambda b: (len(b), b))
    return kraft_sum(prefix_freeize(canonical))


def kraft_code_stream(lengths: Iterable[int]) -> Iterator[str]:
    """Online leftmost-interval code assignment for a stream of lengths.

    Maintains a pointer through [0, 1); each length claims the leftmost
    aligned interval of width 2^-length at or after the pointer.  When the
    aligned interval would cross 1 the stream is rejected with the offending
    index — this refuses some unsorted but Kraft-feasible streams, while
    accepting every nondecreasing stream whose Kraft sum fits.
    """
    num = 0  # pointer numerator; pointer = num / 2^scale
    scale = 0
    for index, length in enumerate(lengths):
        if length < 0:
            raise ValueError(f"negative codeword length at index {index}")
        # align the pointer up to a multiple of 2^-length
        if scale <= length:
            num <<= length - scale
        else:
            num = -(-num >> (scale - length))
        scale = length
        if num + 1 > 2**length:
            raise KraftOverflowError(index, length)
        yield bin(num)[2:].rjust(length, "0") if length else ""
        num += 1


def kraft_code(lengths: Iterable[int]) -> list[str]:
    """Materialized ``kraft_code_stream``: codewords in input order."""
    return list(kraft_code_stream(lengths))
