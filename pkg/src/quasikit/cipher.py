"""Stream and block encryption over quasigroups.

A leader-chained stream pass, its ternary variant, the tuple-mixing
transform built from chained passes, and block encryption through
orthogonal systems of n-ary operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import NAryQuasigroup, Quasigroup, as_sigma, nary_parastrophe
from .errors import (
    BlockLengthMismatch,
    NotPrime,
    SingularMatrix,
    SymbolOutOfRange,
    TooLarge,
)

_ORTHO_SCAN_LIMIT = 10**7


def check_symbols(seq, order: int) -> np.ndarray:
    """Return seq as an int64 array, or raise SymbolOutOfRange at the first bad index."""
    if isinstance(seq, (bytes, bytearray)):
        arr = np.frombuffer(seq, dtype=np.uint8).astype(np.int64)
    else:
        arr = np.asarray(seq, dtype=np.int64).reshape(-1)
    bad = np.flatnonzero((arr < 0) | (arr >= order))
    if bad.size:
        pos = int(bad[0])
        raise SymbolOutOfRange(pos, int(arr[pos]), order)
    return arr


@dataclass(frozen=True)
class StreamKey:
    """Quasigroup plus the fixed leader symbol that seeds the chain."""

    quasigroup: Quasigroup
    leader: int

    def __post_init__(self):
        check_symbols([self.leader], self.quasigroup.order)


def encrypt_stream(key: StreamKey, msg) -> np.ndarray:
    """v1 = l * u1, vi = v(i-1) * ui."""
    u = check_symbols(msg, key.quasigroup.order)
    return _kernels.stream_encrypt(key.quasigroup.table, key.leader, u)


def decrypt_stream(key: StreamKey, ct) -> np.ndarray:
    """u1 = l \\ v1, ui = v(i-1) \\ vi; exact inverse of encrypt_stream."""
    v = check_symbols(ct, key.quasigroup.order)
    return _kernels.stream_decrypt(
        key.quasigroup.left_division_table(), key.leader, v
    )


@dataclass(frozen=True)
class TernaryKey:
    """Ternary quasigroup, four leaders, and which argument slot carries plaintext.

    variant (1,4)/(2,4)/(3,4) names the parastrophe used to decrypt; the
    plaintext symbol sits in slot 1, 2, or 3 accordingly, the remaining two
    slots are fed (l1,l2), (l3,l4), then the two previous ciphertext
    symbols, in order.
    """

    quasigroup3: NAryQuasigroup
    leaders: tuple[int, int, int, int]
    variant: tuple[int, int] = (1, 4)

    def __post_init__(self):
        if self.quasigroup3.arity != 3:
            raise ValueError("ternary cipher needs an arity-3 quasigroup")
        if len(self.leaders) != 4:
            raise ValueError("exactly four leaders required")
        check_symbols(list(self.leaders), self.quasigroup3.order)
        line = as_sigma(self.variant, 4)
        moved = [i + 1 for i in range(4) if line[i] != i + 1]
        if len(moved) != 2 or moved[1] != 4:
            raise ValueError("variant must be one of (1,4), (2,4), (3,4)")
        object.__setattr__(self, "variant", (moved[0], 4))

    @property
    def plaintext_slot(self) -> int:
        return self.variant[0]


def _ternary_args(slot: int, u: int, pair: tuple[int, int]) -> tuple[int, int, int]:
    args = list(pair)
    args.insert(slot - 1, u)
    return tuple(args)


def _chain_pairs(key: TernaryKey, v_so_far, i: int) -> tuple[int, int]:
    l1, l2, l3, l4 = key.leaders
    if i == 0:
        return (l1, l2)
    if i == 1:
        return (l3, l4)
    return (v_so_far[i - 2], v_so_far[i - 1])


def encrypt_ternary(key: TernaryKey, msg) -> np.ndarray:
    """v1 = b(u1,l1,l2), v2 = b(u2,l3,l4), vi = b(ui, v(i-2), v(i-1))."""
    u = check_symbols(msg, key.quasigroup3.order)
    table = key.quasigroup3.table
    slot = key.plaintext_slot
    v = np.empty(u.size, dtype=np.int64)
    for i in range(u.size):
        args = _ternary_args(slot, int(u[i]), _chain_pairs(key, v, i))
        v[i] = table[args]
    return v


def decrypt_ternary(key: TernaryKey, ct) -> np.ndarray:
    """ui = parastrophe(b)(vi, v(i-2), v(i-1)) with the variant's parastrophe."""
    v = check_symbols(ct, key.quasigroup3.order)
    inv = nary_parastrophe(key.quasigroup3, key.variant).table
    slot = key.plaintext_slot
    u = np.empty(v.size, dtype=np.int64)
    for i in range(v.size):
        args = _ternary_args(slot, int(v[i]), _chain_pairs(key, v, i))
        u[i] = inv[args]
    return u


def mix_transform(q: Quasigroup, symbols) -> np.ndarray:
    """Stack of leader-chained passes, leaders read off the original tuple.

    Applies the pass with leader a[r-1] first, down to leader a[0] last.
    Forward-only: inner leaders are overwritten before any inverse could
    reuse them, so no inverse is defined.
    """
    a = check_symbols(symbols, q.order)
    if a.size == 0:
        raise ValueError("input tuple must be non-empty")
    cur = a
    for m in a[::-1]:
        cur = _kernels.stream_encrypt(q.table, int(m), cur)
    return cur


# ---------------------------------------------------------------------------
# orthogonal systems of n-ary operations
# ---------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _det_mod(matrix: np.ndarray, p: int) -> int:
    m = matrix.copy() % p
    n = m.shape[0]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r, col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[[col, pivot]] = m[[pivot, col]]
            det = -det % p
        det = det * m[col, col] % p
        inv = pow(int(m[col, col]), -1, p)
        for r in range(col + 1, n):
            m[r] = (m[r] - m[r, col] * inv * m[col]) % p
    return int(det % p)


def _inv_mod(matrix: np.ndarray, p: int) -> np.ndarray:
    n = matrix.shape[0]
    aug = np.concatenate([matrix.copy() % p, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r, col] % p), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular modulo p")
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, p) % p
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, n:]


class OrthogonalSystem:
    """n operations of arity n over [0, q) whose joint map on tuples is a bijection."""

    __slots__ = ("ops", "_linear", "_inverse_codes")

    def __init__(self, tables, _linear=None, _check=True):
        ops = tuple(np.asarray(t, dtype=np.int64) for t in tables)
        n = len(ops)
        if n == 0:
            raise ValueError("need at least one operation")
        q = ops[0].shape[0]
        for t in ops:
            if t.ndim != n or any(s != q for s in t.shape):
                raise ValueError("each table must have shape (q,)*n")
            if t.min() < 0 or t.max() >= q:
                raise ValueError("table values must lie in [0, q)")
        frozen = []
        for t in ops:
            t = t.copy()
            t.setflags(write=False)
            frozen.append(t)
        object.__setattr__(self, "ops", tuple(frozen))
        object.__setattr__(self, "_linear", _linear)
        object.__setattr__(self, "_inverse_codes", None)
        if _check and not verify_orthogonality(self):
            raise ValueError("tables do not form an orthogonal system")

    def __setattr__(self, name, value):
        raise AttributeError("OrthogonalSystem is immutable")

    @property
    def arity(self) -> int:
        return len(self.ops)

    @property
    def order(self) -> int:
        return self.ops[0].shape[0]


def build_linear_orthosystem(arity: int, prime: int, matrix) -> OrthogonalSystem:
    """f_i(x) = sum_j A[i][j] x_j mod p; orthogonal whenever det(A) != 0 mod p."""
    if not _is_prime(prime):
        raise NotPrime(f"{prime} is not prime")
    a = np.asarray(matrix, dtype=np.int64) % prime
    if a.shape != (arity, arity):
        raise ValueError(f"matrix must be {arity}x{arity}")
    if _det_mod(a, prime) == 0:
        raise SingularMatrix("matrix is singular modulo p")
    grids = np.indices((prime,) * arity, dtype=np.int64)
    tables = [
        sum(int(a[i, j]) * grids[j] for j in range(arity)) % prime
        for i in range(arity)
    ]
    return OrthogonalSystem(tables, _linear=(prime, a, _inv_mod(a, prime)), _check=False)


def verify_orthogonality(sys: OrthogonalSystem) -> bool:
    """Exhaustively check that the joint evaluation map is a bijection on tuples."""
    total = sys.order**sys.arity
    if total > _ORTHO_SCAN_LIMIT:
        raise TooLarge(f"{sys.order}^{sys.arity} tuples exceed the scan limit")
    flat = np.stack([t.reshape(-1) for t in sys.ops])
    return _kernels.codes_bijective(flat, sys.order)


def orthosys_encrypt(sys: OrthogonalSystem, block) -> np.ndarray:
    """v_i = f_i(u_1 .. u_n)."""
    u = check_symbols(block, sys.order)
    if u.size != sys.arity:
        raise BlockLengthMismatch(f"block length {u.size} != arity {sys.arity}")
    idx = tuple(int(x) for x in u)
    return np.array([int(t[idx]) for t in sys.ops], dtype=np.int64)


def _inverse_code_table(sys: OrthogonalSystem) -> np.ndarray:
    if sys._inverse_codes is None:
        total = sys.order**sys.arity
        flat = np.stack([t.reshape(-1) for t in sys.ops])
        powers = sys.order ** np.arange(sys.arity, dtype=np.int64)
        codes = powers @ flat
        inv = np.empty(total, dtype=np.int64)
        inv[codes] = np.arange(total, dtype=np.int64)
        object.__setattr__(sys, "_inverse_codes", inv)
    return sys._inverse_codes


def orthosys_decrypt(sys: OrthogonalSystem, block) -> np.ndarray:
    """Solve f_i(u) = v_i; matrix inverse for linear systems, lookup otherwise."""
    v = check_symbols(block, sys.order)
    if v.size != sys.arity:
        raise BlockLengthMismatch(f"block length {v.size} != arity {sys.arity}")
    if sys._linear is not None:
        p, _, a_inv = sys._linear
        return (a_inv @ v) % p
    inv = _inverse_code_table(sys)
    code = int((sys.order ** np.arange(sys.arity, dtype=np.int64)) @ v)
    flat_index = int(inv[code])
    out = np.empty(sys.arity, dtype=np.int64)
    for i in range(sys.arity - 1, -1, -1):  # row-major flat index: u_n varies fastest
        out[i] = flat_index % sys.order
        flat_index //= sys.order
    return out
