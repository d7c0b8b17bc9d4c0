"""PN (maximal-period LFSR) sequences over prime fields, their quasigroup
folds, and linear-complexity measurement via LFSR synthesis.

Extension fields are not modeled; a degree-m LFSR over GF(p) already
produces the length p^m - 1 sequences needed here. Linear complexity is
the randomness proxy used for the folded sequences.
"""

from __future__ import annotations

import numpy as np

from .core import Quasigroup
from .errors import NotPrime, NotPrimitive, OrderMismatch, ZeroState


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class SymbolSequence:
    """Immutable finite sequence over [0, p)."""

    __slots__ = ("modulus", "symbols")

    def __init__(self, modulus: int, symbols):
        arr = np.asarray(symbols, dtype=np.int64).reshape(-1)
        if arr.size and (arr.min() < 0 or arr.max() >= modulus):
            raise ValueError(f"symbols must lie in [0, {modulus})")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "symbols", arr)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolSequence is immutable")

    def __len__(self) -> int:
        return self.symbols.size

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymbolSequence)
            and self.modulus == other.modulus
            and np.array_equal(self.symbols, other.symbols)
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.symbols.tobytes()))

    def __repr__(self) -> str:
        return f"SymbolSequence(mod {self.modulus}, len {len(self)})"


class Lfsr:
    """Fibonacci LFSR over GF(p): a_t = c_1 a_(t-1) + ... + c_m a_(t-m).

    The register holds (a_t, a_(t-1), ..., a_(t-m+1)), newest first; the
    default seed (1, 0, ..., 0) makes the first emitted symbol 1. Stepping
    mutates the register, so an instance must not be shared across
    concurrent activities.
    """

    def __init__(self, prime: int, coeffs, state=None):
        if not _is_prime(prime):
            raise NotPrime(f"{prime} is not prime")
        self.prime = prime
        self.coeffs = tuple(int(c) % prime for c in coeffs)
        if not self.coeffs:
            raise ValueError("at least one feedback coefficient required")
        if state is None:
            state = (1,) + (0,) * (self.degree - 1)
        self.state = tuple(int(s) for s in state)
        if len(self.state) != self.degree:
            raise ValueError("state length must equal the degree")
        if any(s < 0 or s >= prime for s in self.state):
            raise ValueError(f"state symbols must lie in [0, {prime})")
        if not any(self.state):
            raise ZeroState("all-zero state never leaves zero")

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def clone(self) -> "Lfsr":
        return Lfsr(self.prime, self.coeffs, self.state)

    def step(self) -> int:
        """Emit the newest symbol, then advance the register."""
        out = self.state[0]
        feedback = sum(c * s for c, s in zip(self.coeffs, self.state)) % self.prime
        self.state = (feedback,) + self.state[:-1]
        return out


def pn_sequence(lfsr: Lfsr) -> SymbolSequence:
    """One full period of length p^m - 1; the caller's register is not consumed.

    Raises NotPrimitive when the register state fails to recur after
    exactly p^m - 1 steps, which is the operational test that the feedback
    polynomial is primitive.
    """
    p, m = lfsr.prime, lfsr.degree
    target = p**m - 1
    initial = lfsr.state
    work = lfsr.clone()
    out = np.empty(target, dtype=np.int64)
    for t in range(target):
        out[t] = work.step()
        if work.state == initial and t + 1 < target:
            raise NotPrimitive(
                f"measured period {t + 1} < {target}", period=t + 1
            )
    if work.state != initial:
        raise NotPrimitive(f"state does not recur within {target} steps")
    return SymbolSequence(p, out)


# (p, m) -> feedback coefficients c_1..c_m; every entry is re-validated by
# the period check in validated_polynomial rather than trusted.
PRIMITIVE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1,),
    (2, 2): (1, 1),
    (2, 3): (0, 1, 1),
    (2, 4): (0, 0, 1, 1),
    (3, 1): (2,),
    (3, 2): (1, 1),
    (3, 3): (0, 1, 2),
    (3, 4): (0, 0, 1, 1),
    (5, 1): (2,),
    (5, 2): (1, 3),
    (5, 3): (0, 1, 2),
    (5, 4): (0, 1, 1, 2),
}

_validated: set[tuple[int, int]] = set()


def validated_polynomial(p: int, m: int) -> tuple[int, ...]:
    """Built-in primitive feedback coefficients, period-checked on first use."""
    key = (p, m)
    if key not in PRIMITIVE_POLYS:
        raise KeyError(f"no built-in primitive polynomial for p={p}, m={m}")
    coeffs = PRIMITIVE_POLYS[key]
    if key not in _validated:
        pn_sequence(Lfsr(p, coeffs))  # raises NotPrimitive on a bad entry
        _validated.add(key)
    return coeffs


def cyclic_shift(seq: SymbolSequence, i: int) -> SymbolSequence:
    """Shift so that element i becomes first: (a0,a1,a2) by 1 -> (a1,a2,a0)."""
    if len(seq) == 0:
        return seq
    return SymbolSequence(seq.modulus, np.roll(seq.symbols, -i))


def nlpn_pair(
    a: SymbolSequence, i: int, q: Quasigroup
) -> tuple[SymbolSequence, SymbolSequence]:
    """Fold a PN sequence with its shift: b_j = a_j * a^i_j and c_j = a^i_j * a_j."""
    if q.order != a.modulus:
        raise OrderMismatch(f"quasigroup order {q.order} != modulus {a.modulus}")
    shifted = cyclic_shift(a, i)
    b = q.table[a.symbols, shifted.symbols]
    c = q.table[shifted.symbols, a.symbols]
    return SymbolSequence(a.modulus, b), SymbolSequence(a.modulus, c)


def berlekamp_massey(seq: SymbolSequence) -> tuple[int, tuple[int, ...]]:
    """Shortest linear recurrence over GF(p): returns (L, connection coefficients).

    The connection polynomial (c_0=1, c_1, ..., c_L) satisfies
    sum_j c_j s_(i-j) = 0 mod p for every i >= L.
    """
    p = seq.modulus
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    s = [int(x) for x in seq.symbols]
    n = len(s)
    c = [1] + [0] * n
    b = [1] + [0] * n
    length, m, last_d = 0, 1, 1
    for i in range(n):
        d = s[i]
        for j in range(1, length + 1):
            d = (d + c[j] * s[i - j]) % p
        if d == 0:
            m += 1
            continue
        coef = d * pow(last_d, -1, p) % p
        if 2 * length <= i:
            t = c.copy()
            for j in range(0, n - m + 1):
                c[j + m] = (c[j + m] - coef * b[j]) % p
            length, b, last_d, m = i + 1 - length, t, d, 1
        else:
            for j in range(0, n - m + 1):
                c[j + m] = (c[j + m] - coef * b[j]) % p
            m += 1
    connection = tuple(c[: length + 1])
    for i in range(length, n):  # synthesized register must reproduce the input
        acc = sum(connection[j] * s[i - j] for j in range(length + 1)) % p
        assert acc == 0, "synthesis failed to annihilate the sequence"
    return length, connection


def linear_complexity(seq: SymbolSequence) -> int:
    """Length of the shortest LFSR over GF(p) generating the sequence."""
    return berlekamp_massey(seq)[0]
