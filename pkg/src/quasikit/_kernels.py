"""Hot numeric kernels: numba-jitted loops with pure NumPy fallbacks.

Backend selection is controlled by the ``QUASIKIT_NUMBA`` environment
variable, read once at import time:

* unset or ``auto`` -- use numba when importable, else fall back silently;
* ``0``/``off``/``false``/``no`` -- force the pure NumPy/Python path;
* ``1``/``on``/``true``/``yes``/``require`` -- numba is mandatory.

Both paths produce bit-identical results; ``benchmarks/bench_kernels.py``
compares their speed. Chained-recurrence kernels (stream encryption,
backtracking) have no vectorized form, so their fallback is the same loop
undecorated; the rest fall back to vectorized NumPy.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("QUASIKIT_NUMBA", "auto").strip().lower()

if _FLAG in ("0", "off", "false", "no"):
    NUMBA_ENABLED = False
elif _FLAG in ("1", "on", "true", "yes", "require"):
    from numba import njit  # noqa: F401  (ImportError is the intended failure)

    NUMBA_ENABLED = True
else:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False

if not NUMBA_ENABLED:

    def njit(*args, **kwargs):
        """No-op stand-in so kernels below stay plain Python functions."""
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


# ---------------------------------------------------------------------------
# stream cipher chain: v[0] = T[l, u[0]], v[i] = T[v[i-1], u[i]]
# ---------------------------------------------------------------------------


@njit(cache=True)
def _encrypt_chain(table, leader, msg):
    out = np.empty(msg.size, np.int64)
    prev = leader
    for i in range(msg.size):
        prev = table[prev, msg[i]]
        out[i] = prev
    return out


def stream_encrypt(table: np.ndarray, leader: int, msg: np.ndarray) -> np.ndarray:
    """Leader-chained substitution pass over ``msg``; the encryption recurrence."""
    return _encrypt_chain(table, leader, msg)


def fold_last(table: np.ndarray, leader: int, msg: np.ndarray) -> int:
    """Final symbol of the chain (the hash fold); equals stream_encrypt(...)[-1]."""
    out = _encrypt_chain(table, leader, msg)
    return int(out[-1]) if out.size else int(leader)


@njit(cache=True)
def _decrypt_chain(ldiv, leader, ct):
    out = np.empty(ct.size, np.int64)
    prev = leader
    for i in range(ct.size):
        out[i] = ldiv[prev, ct[i]]
        prev = ct[i]
    return out


def _decrypt_numpy(ldiv, leader, ct):
    if ct.size == 0:
        return np.empty(0, np.int64)
    prev = np.empty(ct.size, np.int64)
    prev[0] = leader
    prev[1:] = ct[:-1]
    return ldiv[prev, ct]


def stream_decrypt(ldiv: np.ndarray, leader: int, ct: np.ndarray) -> np.ndarray:
    """Inverse chain via the left-division table ldiv[x, x*y] == y."""
    if NUMBA_ENABLED:
        return _decrypt_chain(ldiv, leader, ct)
    return _decrypt_numpy(ldiv, leader, ct)


# ---------------------------------------------------------------------------
# GF(2) Moebius (zeta) transform: truth table <-> ANF coefficients
# ---------------------------------------------------------------------------


@njit(cache=True)
def _moebius_loop(bits):
    a = bits.copy()
    m = a.size
    step = 1
    while step < m:
        block = 2 * step
        for start in range(0, m, block):
            for j in range(start, start + step):
                a[j + step] ^= a[j]
        step = block
    return a


def _moebius_numpy(bits):
    a = bits.copy()
    m = a.size
    step = 1
    while step < m:
        a = a.reshape(-1, 2 * step)
        a[:, step:] ^= a[:, :step]
        step *= 2
    return a.reshape(m)


def moebius(bits: np.ndarray) -> np.ndarray:
    """XOR-fold each index over its subsets; self-inverse on GF(2) vectors."""
    if NUMBA_ENABLED:
        return _moebius_loop(bits)
    return _moebius_numpy(bits)


# ---------------------------------------------------------------------------
# Latin-square completion counting (bitmask backtracking)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _pick_cell(grid, row_mask, col_mask, n, full):
    # most-constrained empty cell; ties break to the first in row-major order
    best = -1
    best_cnt = n + 1
    for idx in range(n * n):
        if grid[idx] < 0:
            avail = full & ~(row_mask[idx // n] | col_mask[idx % n])
            cnt = _popcount(avail)
            if cnt < best_cnt:
                best_cnt = cnt
                best = idx
                if cnt == 0:
                    break
    return best


@njit(cache=True)
def _count_completions(grid, n, limit):
    full = (1 << n) - 1
    row_mask = np.zeros(n, np.int64)
    col_mask = np.zeros(n, np.int64)
    n_empty = 0
    for idx in range(n * n):
        s = grid[idx]
        if s >= 0:
            row_mask[idx // n] |= 1 << s
            col_mask[idx % n] |= 1 << s
        else:
            n_empty += 1
    first = -np.ones(n * n, np.int64)
    if n_empty == 0:
        first[:] = grid
        return 1, first
    count = 0
    cells = np.zeros(n_empty, np.int64)
    last_sym = np.zeros(n_empty, np.int64)
    depth = 0
    cells[0] = _pick_cell(grid, row_mask, col_mask, n, full)
    last_sym[0] = -1
    while depth >= 0:
        idx = cells[depth]
        r = idx // n
        c = idx % n
        avail = full & ~(row_mask[r] | col_mask[c])
        found = -1
        for s in range(last_sym[depth] + 1, n):
            if (avail >> s) & 1:
                found = s
                break
        if found < 0:
            depth -= 1
            if depth >= 0:
                pidx = cells[depth]
                ps = grid[pidx]
                grid[pidx] = -1
                row_mask[pidx // n] &= ~(1 << ps)
                col_mask[pidx % n] &= ~(1 << ps)
            continue
        last_sym[depth] = found
        grid[idx] = found
        row_mask[r] |= 1 << found
        col_mask[c] |= 1 << found
        if depth + 1 == n_empty:
            count += 1
            if count == 1:
                first[:] = grid
            grid[idx] = -1
            row_mask[r] &= ~(1 << found)
            col_mask[c] &= ~(1 << found)
            if count >= limit:
                return count, first
        else:
            depth += 1
            cells[depth] = _pick_cell(grid, row_mask, col_mask, n, full)
            last_sym[depth] = -1
    return count, first


def count_completions(grid: np.ndarray, n: int, limit: int) -> tuple[int, np.ndarray | None]:
    """Count Latin squares extending ``grid`` (flat, -1 = empty), early-exit at limit.

    Returns (count saturated at limit, first completion found or None).
    The search order is deterministic, so the first completion does not
    depend on the backend.
    """
    count, first = _count_completions(grid.copy(), n, limit)
    return int(count), (first if count > 0 else None)


# ---------------------------------------------------------------------------
# joint-map bijectivity for orthogonal systems
# ---------------------------------------------------------------------------


@njit(cache=True)
def _codes_bijective_loop(ops_flat, q):
    n, total = ops_flat.shape
    seen = np.zeros(total, np.uint8)
    for j in range(total):
        code = 0
        mult = 1
        for i in range(n):
            code += ops_flat[i, j] * mult
            mult *= q
        if seen[code]:
            return False
        seen[code] = 1
    return True


def _codes_bijective_numpy(ops_flat, q):
    n = ops_flat.shape[0]
    powers = q ** np.arange(n, dtype=np.int64)
    codes = powers @ ops_flat
    return int(np.bincount(codes, minlength=ops_flat.shape[1]).max()) == 1


def codes_bijective(ops_flat: np.ndarray, q: int) -> bool:
    """True iff the columns of ops_flat, read as base-q digit tuples, are all distinct."""
    if NUMBA_ENABLED:
        return bool(_codes_bijective_loop(ops_flat, q))
    return _codes_bijective_numpy(ops_flat, q)


def warmup() -> None:
    """Trigger JIT compilation of every kernel (no-op on the pure path)."""
    t = np.array([[0, 1], [1, 0]], np.int64)
    stream_encrypt(t, 0, np.array([0, 1], np.int64))
    stream_decrypt(t, 0, np.array([0, 1], np.int64))
    moebius(np.zeros(4, np.uint8))
    count_completions(-np.ones(4, np.int64), 2, 2)
    codes_bijective(np.array([[0, 1], [1, 0]], np.int64), 2)
