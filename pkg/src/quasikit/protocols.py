"""Key transport over inverse quasigroups, row-Latin key agreement, and the
isotopy-based zero-knowledge identification protocol."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cipher import check_symbols
from .core import (
    Isotopy,
    Permutation,
    Quasigroup,
    apply_isotopy,
    compose_isotopy,
    invert_isotopy,
)
from .errors import (
    InvalidCI,
    InvalidRst,
    NotCoprime,
    NotIsotopic,
    NotLatin,
    SizeMismatch,
)

_CONSTRUCTION_CHECK_LIMIT = 64


# ---------------------------------------------------------------------------
# (r,s,t)-inverse quasigroups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RstQuasigroup:
    """Quasigroup with a permutation J satisfying J^r(x*y) * J^s(x) = J^t(y).

    The identity is verified exhaustively at construction for orders up to
    64; pass check=False to hold a candidate triple for inspection with
    verify_rst. The CI case is r = t = 0, s = 1.
    """

    quasigroup: Quasigroup
    j: Permutation
    r: int
    s: int
    t: int
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.j.size != self.quasigroup.order:
            raise SizeMismatch("J size must equal the quasigroup order")
        if (
            self.check
            and self.quasigroup.order <= _CONSTRUCTION_CHECK_LIMIT
            and not verify_rst(self)
        ):
            raise InvalidRst(
                f"J^{self.r}(x*y) * J^{self.s}(x) = J^{self.t}(y) fails"
            )

    @property
    def order(self) -> int:
        return self.quasigroup.order

    @property
    def is_ci(self) -> bool:
        return (self.r, self.s, self.t) == (0, 1, 0)


def verify_rst(q: RstQuasigroup) -> bool:
    """Exhaustive check of the defining identity over all pairs."""
    table = q.quasigroup.table
    jr = q.j.power(q.r).as_array()
    js = q.j.power(q.s).as_array()
    jt = q.j.power(q.t).as_array()
    lhs = table[jr[table], js[np.arange(q.order)][:, None]]
    return bool(np.array_equal(lhs, np.broadcast_to(jt, lhs.shape)))


def make_linear_ci(modulus: int, multiplier: int) -> RstQuasigroup:
    """CI-quasigroup x*y = (a x + a^-1 y) mod n with J(x) = (-a^3 x) mod n."""
    n, a = modulus, multiplier % modulus
    if math.gcd(a, n) != 1:
        raise NotCoprime(f"gcd({a}, {n}) != 1")
    a_inv = pow(a, -1, n)
    i = np.arange(n)
    table = (a * i[:, None] + a_inv * i[None, :]) % n
    j = Permutation(tuple(int(v) for v in (-pow(a, 3, n) * i) % n))
    return RstQuasigroup(Quasigroup(table), j, 0, 1, 0)


def _unverified(q: RstQuasigroup) -> bool:
    return not q.check or q.order > _CONSTRUCTION_CHECK_LIMIT


def _require_ci(q: RstQuasigroup) -> None:
    if not q.is_ci:
        raise InvalidCI(f"(r,s,t) = {(q.r, q.s, q.t)}, expected (0, 1, 0)")
    if _unverified(q) and not verify_rst(q):
        raise InvalidCI("CI identity fails")


@dataclass(frozen=True)
class CiTransport:
    sent: tuple[int, int]  # (chosen element c, ciphertext c*m)
    recovered: int


def ci_key_transport(q: RstQuasigroup, c: int, m: int) -> CiTransport:
    """One-time-pad style exchange: send (c, c*m); receiver applies J to unlock."""
    _require_ci(q)
    check_symbols([c, m], q.order)
    ct = q.quasigroup(c, m)
    recovered = q.quasigroup(ct, q.j(c))
    return CiTransport(sent=(c, ct), recovered=recovered)


@dataclass(frozen=True)
class RstTransport:
    sent: tuple[int, int]  # (J^k u, J^r(J^k u * m))
    recovered: int


def rst_key_transport(q: RstQuasigroup, k: int, u: int, m: int) -> RstTransport:
    """General exchange from J^r(J^k u * m) * J^(s+k) u = J^t m."""
    check_symbols([u, m], q.order)
    if _unverified(q) and not verify_rst(q):
        raise InvalidRst("rst identity fails")
    jk_u = q.j.power(k)(u)
    ct = q.j.power(q.r)(q.quasigroup(jk_u, m))
    receiver_side = q.j.power(q.s + k)(u)
    jt_m = q.quasigroup(ct, receiver_side)
    recovered = q.j.power(-q.t)(jt_m)
    return RstTransport(sent=(jk_u, ct), recovered=recovered)


@dataclass(frozen=True)
class PublicKeyTransport:
    recovered: int
    inverse_cycle: tuple[int, ...]
    cycle_length: int
    short_cycle_warning: bool


def public_key_transport(q: RstQuasigroup, public_key: int, m: int) -> PublicKeyTransport:
    """Key-centre variant: u_t is public, J u_t private; reports the J-cycle of u_t.

    A cycle shorter than order-1 undercuts the long-inverse-cycle
    requirement, so it raises the warning flag. Anyone who knows J can
    decrypt; the scheme's published weakness is inherited, not repaired.
    """
    _require_ci(q)
    check_symbols([public_key, m], q.order)
    ct = q.quasigroup(public_key, m)
    recovered = q.quasigroup(ct, q.j(public_key))
    cycle = next(c for c in q.j.cycles() if public_key in c)
    return PublicKeyTransport(
        recovered=recovered,
        inverse_cycle=cycle,
        cycle_length=len(cycle),
        short_cycle_warning=len(cycle) < q.order - 1,
    )


# ---------------------------------------------------------------------------
# row-Latin squares
# ---------------------------------------------------------------------------


class RowLatinSquare:
    """Square whose rows are permutations; columns are unconstrained."""

    __slots__ = ("rows",)

    def __init__(self, grid):
        arr = np.asarray(grid, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"grid must be square, got shape {arr.shape}")
        rows = []
        for i in range(arr.shape[0]):
            try:
                rows.append(Permutation(tuple(int(v) for v in arr[i])))
            except ValueError:
                raise NotLatin("row", i) from None
        object.__setattr__(self, "rows", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("RowLatinSquare is immutable")

    @classmethod
    def from_rows(cls, rows) -> "RowLatinSquare":
        sq = object.__new__(cls)
        object.__setattr__(sq, "rows", tuple(rows))
        return sq

    @classmethod
    def identity(cls, n: int) -> "RowLatinSquare":
        return cls.from_rows([Permutation.identity(n)] * n)

    @property
    def order(self) -> int:
        return len(self.rows)

    def as_array(self) -> np.ndarray:
        return np.array([r.images for r in self.rows], dtype=np.int64)

    def __eq__(self, other) -> bool:
        return isinstance(other, RowLatinSquare) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RowLatinSquare(order={self.order})"


def rls_multiply(a: RowLatinSquare, b: RowLatinSquare) -> RowLatinSquare:
    """Row-wise permutation composition: row_ab(x) = row_a(row_b(x))."""
    if a.order != b.order:
        raise SizeMismatch(f"orders {a.order} != {b.order}")
    return RowLatinSquare.from_rows(
        ra.compose(rb) for ra, rb in zip(a.rows, b.rows)
    )


def rls_power(square: RowLatinSquare, e: int) -> RowLatinSquare:
    """e-th power by repeated squaring; the 0th power has identity rows."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = RowLatinSquare.identity(square.order)
    base = square
    while e:
        if e & 1:
            result = rls_multiply(result, base)
        base = rls_multiply(base, base)
        e >>= 1
    return result


def rls_period(square: RowLatinSquare) -> int:
    """Least e >= 1 with all rows of the e-th power equal to the identity."""
    return math.lcm(*(r.order() for r in square.rows))


@dataclass(frozen=True)
class KeyAgreement:
    common: RowLatinSquare
    share_a: RowLatinSquare  # L^x, published by the x-holder
    share_b: RowLatinSquare  # L^y, published by the y-holder


def rls_key_agreement(square: RowLatinSquare, x: int, y: int) -> KeyAgreement:
    """Both parties arrive at L^(x y) from the other's published power."""
    if x < 1 or y < 1:
        raise ValueError("secret exponents must be >= 1")
    share_a = rls_power(square, x)
    share_b = rls_power(square, y)
    common_a = rls_power(share_b, x)
    common_b = rls_power(share_a, y)
    assert common_a == common_b
    return KeyAgreement(common=common_a, share_a=share_a, share_b=share_b)


# ---------------------------------------------------------------------------
# zero-knowledge isotopy protocol
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZkpRound:
    commitment: Quasigroup
    challenge: str  # "a": show H ~ L', "b": show H ~ L
    response: Isotopy
    verified: bool


@dataclass(frozen=True)
class ZkpTranscript:
    rounds: tuple[ZkpRound, ...]
    accepted: bool


def zkp_simulate(
    public_l: Quasigroup,
    public_l2: Quasigroup,
    secret: Isotopy | None,
    rounds: int,
    seed: int,
    cheat: bool = False,
) -> ZkpTranscript:
    """Run prover and verifier in-process for a number of rounds.

    Honest prover: commits H = apply(L, P) for random P and can answer both
    challenges (P for "b", P o secret^-1 for "a"). Cheating prover: guesses
    the challenge, commits to a square isotopic to L or to L' accordingly,
    and can only answer the guessed side, so each round fails with
    probability about 1/2. Fully deterministic for a fixed seed.
    """
    n = public_l.order
    if public_l2.order != n:
        raise SizeMismatch("public squares must have equal order")
    if not cheat:
        if secret is None or apply_isotopy(public_l, secret) != public_l2:
            raise NotIsotopic("secret isotopy does not map L to L'")
    rng = np.random.default_rng(seed)
    record = []
    for _ in range(rounds):
        if cheat:
            guess = "a" if rng.integers(2) else "b"
            p = Isotopy.random(n, rng)
            base = public_l2 if guess == "a" else public_l
            commitment = apply_isotopy(base, p)
            response_for = {guess: p}
        else:
            p = Isotopy.random(n, rng)
            commitment = apply_isotopy(public_l, p)
            response_for = {
                "b": p,
                "a": compose_isotopy(p, invert_isotopy(secret)),
            }
        challenge = "a" if rng.integers(2) else "b"
        response = response_for.get(challenge)
        if response is None:
            # cheater guessed wrong; it has nothing better than its random isotopy
            response = p
        target = public_l2 if challenge == "a" else public_l
        verified = apply_isotopy(target, response) == commitment
        record.append(ZkpRound(commitment, challenge, response, verified))
    return ZkpTranscript(tuple(record), all(r.verified for r in record))
