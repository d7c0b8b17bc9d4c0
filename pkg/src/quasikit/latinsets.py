"""Partial Latin squares, unique completability, critical sets, and
critical-set secret sharing.

Completion counting is exact backtracking (most-constrained cell first,
symbols ascending) with early exit, so unique-completability checks cost
at most two solutions. Thresholds in the sharing demo are combinatorial:
a share subset reconstructs exactly when its union uniquely completes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .core import Quasigroup
from .errors import Inconsistent, Insufficient, NotSubset, TooLarge

_COUNT_ORDER_LIMIT = 9
_GREEDY_ORDER_LIMIT = 7
_EXHAUSTIVE_ORDER_LIMIT = 4


class PartialLatinSquare:
    """Consistent set of (row, col, symbol) triples inside an n x n frame."""

    __slots__ = ("order", "entries")

    def __init__(self, order: int, entries):
        if order < 1:
            raise ValueError("order must be positive")
        triples = frozenset((int(r), int(c), int(s)) for r, c, s in entries)
        cells = {}
        row_syms = set()
        col_syms = set()
        for r, c, s in sorted(triples):
            if not (0 <= r < order and 0 <= c < order and 0 <= s < order):
                raise Inconsistent(f"entry {(r, c, s)} outside [0, {order})^3")
            if (r, c) in cells:
                raise Inconsistent(f"cell ({r}, {c}) assigned twice")
            if (r, s) in row_syms:
                raise Inconsistent(f"symbol {s} repeated in row {r}")
            if (c, s) in col_syms:
                raise Inconsistent(f"symbol {s} repeated in column {c}")
            cells[(r, c)] = s
            row_syms.add((r, s))
            col_syms.add((c, s))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "entries", triples)

    def __setattr__(self, name, value):
        raise AttributeError("PartialLatinSquare is immutable")

    @classmethod
    def empty(cls, order: int) -> "PartialLatinSquare":
        return cls(order, ())

    @classmethod
    def of_square(cls, square: Quasigroup) -> "PartialLatinSquare":
        n = square.order
        return cls(n, ((r, c, square(r, c)) for r in range(n) for c in range(n)))

    def with_entries(self, extra) -> "PartialLatinSquare":
        return PartialLatinSquare(self.order, self.entries | set(extra))

    def without(self, entry) -> "PartialLatinSquare":
        return PartialLatinSquare(self.order, self.entries - {tuple(entry)})

    def as_flat_grid(self) -> np.ndarray:
        grid = -np.ones(self.order * self.order, dtype=np.int64)
        for r, c, s in self.entries:
            grid[r * self.order + c] = s
        return grid

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PartialLatinSquare)
            and self.order == other.order
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.order, self.entries))

    def __repr__(self) -> str:
        return f"PartialLatinSquare(order={self.order}, entries={len(self.entries)})"


def completion_count(p: PartialLatinSquare, limit: int) -> int:
    """Number of Latin squares extending p, saturating at limit."""
    if limit < 1:
        raise ValueError("limit must be positive")
    if p.order > _COUNT_ORDER_LIMIT:
        raise TooLarge(f"order {p.order} exceeds the counting limit")
    count, _ = _kernels.count_completions(p.as_flat_grid(), p.order, limit)
    return count


def is_uniquely_completable(
    p: PartialLatinSquare,
) -> tuple[bool, Quasigroup | None]:
    """(True, the completion) when exactly one Latin square extends p."""
    if p.order > _COUNT_ORDER_LIMIT:
        raise TooLarge(f"order {p.order} exceeds the counting limit")
    count, first = _kernels.count_completions(p.as_flat_grid(), p.order, 2)
    if count != 1:
        return False, None
    return True, Quasigroup(first.reshape(p.order, p.order))


def is_critical(p: PartialLatinSquare, square: Quasigroup) -> bool:
    """True iff p completes uniquely to square and no single removal still does."""
    if p.order != square.order:
        raise NotSubset("orders differ")
    full = {(r, c, square(r, c)) for r in range(square.order) for c in range(square.order)}
    if not p.entries <= full:
        raise NotSubset("partial square is not contained in the Latin square")
    unique, completion = is_uniquely_completable(p)
    if not unique or completion != square:
        return False
    for entry in p.entries:
        if is_uniquely_completable(p.without(entry))[0]:
            return False
    return True


def greedy_critical_search(square: Quasigroup, seed: int) -> PartialLatinSquare:
    """Shrink the full entry set in seeded random order, keeping unique completability.

    One pass suffices: unique completability is monotone under adding
    entries, so every kept entry stays necessary as later entries leave.
    """
    n = square.order
    if n > _GREEDY_ORDER_LIMIT:
        raise TooLarge(f"order {n} exceeds the greedy search limit")
    rng = np.random.default_rng(seed)
    entries = sorted({(r, c, square(r, c)) for r in range(n) for c in range(n)})
    order_of_removal = rng.permutation(len(entries))
    current = PartialLatinSquare(n, entries)
    for idx in order_of_removal:
        candidate = current.without(entries[idx])
        if is_uniquely_completable(candidate)[0]:
            current = candidate
    return current


def smallest_critical_exhaustive(
    square: Quasigroup,
) -> tuple[int, PartialLatinSquare]:
    """Minimum-size uniquely completable subset of the square's entries.

    Minimum cardinality makes the witness critical automatically. Subset
    enumeration is only feasible at tiny orders.
    """
    n = square.order
    if n > _EXHAUSTIVE_ORDER_LIMIT:
        raise TooLarge(f"order {n} exceeds the exhaustive search limit")
    entries = sorted((r, c, square(r, c)) for r in range(n) for c in range(n))
    for size in range(len(entries) + 1):
        for subset in combinations(entries, size):
            p = PartialLatinSquare(n, subset)
            unique, completion = is_uniquely_completable(p)
            if unique and completion == square:
                return size, p
    raise AssertionError("the full entry set always completes uniquely")


# ---------------------------------------------------------------------------
# secret sharing over critical sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShareDeal:
    secret: Quasigroup
    shares: tuple[PartialLatinSquare, ...]


def deal_shares(
    square: Quasigroup,
    critical: PartialLatinSquare,
    participants: int,
    seed: int,
) -> ShareDeal:
    """Split a critical set round-robin among participants after a seeded shuffle."""
    if participants < 1 or participants > len(critical):
        raise ValueError("participants must be between 1 and the critical-set size")
    if not is_critical(critical, square):
        raise Inconsistent("the provided set is not critical for the square")
    rng = np.random.default_rng(seed)
    entries = sorted(critical.entries)
    shuffled = [entries[i] for i in rng.permutation(len(entries))]
    buckets: list[list] = [[] for _ in range(participants)]
    for i, entry in enumerate(shuffled):
        buckets[i % participants].append(entry)
    shares = tuple(PartialLatinSquare(square.order, b) for b in buckets)
    return ShareDeal(secret=square, shares=shares)


def reconstruct(shares) -> Quasigroup:
    """Recover the secret square iff the union of shares completes uniquely."""
    shares = list(shares)
    if not shares:
        raise Insufficient("no shares provided")
    order = shares[0].order
    if any(s.order != order for s in shares):
        raise Inconsistent("shares disagree on the order")
    merged = set()
    for s in shares:
        merged |= s.entries
    union = PartialLatinSquare(order, merged)  # raises Inconsistent on conflicts
    unique, completion = is_uniquely_completable(union)
    if not unique:
        raise Insufficient("share union does not complete uniquely")
    return completion
