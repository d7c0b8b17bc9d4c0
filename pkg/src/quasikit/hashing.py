"""Leader-folded quasigroup hashing and a multi-lane fixed-length extension."""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .cipher import check_symbols
from .core import Quasigroup


@dataclass(frozen=True)
class HashSpec:
    """Quasigroup, fold leader, and optional per-lane leaders for wide digests."""

    quasigroup: Quasigroup
    leader: int
    digest_leaders: tuple[int, ...] | None = None

    def __post_init__(self):
        check_symbols([self.leader], self.quasigroup.order)
        if self.digest_leaders is not None:
            if len(self.digest_leaders) == 0:
                raise ValueError("digest_leaders must be non-empty when given")
            check_symbols(list(self.digest_leaders), self.quasigroup.order)


def hash_fold(spec: HashSpec, msg) -> int:
    """((a * q1) * q2) * ... * qn; the empty message hashes to the leader.

    Equals the final symbol of the leader-chained stream pass, which makes
    the fold prefix-composable: fold(m1 + m2) = fold from fold(m1) over m2.
    """
    u = check_symbols(msg, spec.quasigroup.order)
    return _kernels.fold_last(spec.quasigroup.table, spec.leader, u)


def hash_multi(spec: HashSpec, msg) -> list[int]:
    """One fold per digest leader; the digest is the lane concatenation."""
    if not spec.digest_leaders:
        raise ValueError("spec has no digest leaders")
    u = check_symbols(msg, spec.quasigroup.order)
    table = spec.quasigroup.table
    return [_kernels.fold_last(table, leader, u) for leader in spec.digest_leaders]
