"""Latin squares, quasigroups, parastrophes, isotopies, and structure reports.

Symbols are always integers in [0, n); any external alphabet is mapped at
the CLI boundary. All types are immutable after construction and every
operation is a pure function, so concurrent use needs no locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import NotAGroup, NotLatin, ShapeMismatch, SizeMismatch


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """Bijection on [0, size), stored in image form."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Permutation":
        return cls(tuple(int(x) for x in rng.permutation(n)))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def as_array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(x) == self(other(x))."""
        if self.size != other.size:
            raise SizeMismatch(f"permutation sizes {self.size} != {other.size}")
        return Permutation(tuple(self.images[o] for o in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.size
        out = []
        for start in range(self.size):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        # lcm of cycle lengths: O(n), no repeated multiplication
        return math.lcm(*(len(c) for c in self.cycles())) if self.size else 1

    def power(self, e: int) -> "Permutation":
        """self composed with itself e times; negative e uses the inverse."""
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Permutation.identity(self.size)
        while e:
            if e & 1:
                result = result.compose(base)
            base = base.compose(base)
            e >>= 1
        return result


# ---------------------------------------------------------------------------
# quasigroups
# ---------------------------------------------------------------------------


class Quasigroup:
    """Order-n Cayley table whose rows and columns are all permutations."""

    __slots__ = ("table", "_ldiv", "_rdiv")

    def __init__(self, grid):
        table = np.asarray(grid, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError(f"grid must be square, got shape {table.shape}")
        n = table.shape[0]
        if n == 0:
            raise ValueError("order must be positive")
        ref = np.arange(n)
        for i in range(n):
            if not np.array_equal(np.sort(table[i]), ref):
                raise NotLatin("row", i)
        for j in range(n):
            if not np.array_equal(np.sort(table[:, j]), ref):
                raise NotLatin("column", j)
        table = table.copy()
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_ldiv", None)
        object.__setattr__(self, "_rdiv", None)

    def __setattr__(self, name, value):
        raise AttributeError("Quasigroup is immutable")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def __eq__(self, other) -> bool:
        return isinstance(other, Quasigroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"Quasigroup(order={self.order})"

    def left_translation(self, x: int) -> Permutation:
        """L_x: y -> x * y (row x)."""
        return Permutation(tuple(int(v) for v in self.table[x]))

    def right_translation(self, x: int) -> Permutation:
        """R_x: y -> y * x (column x)."""
        return Permutation(tuple(int(v) for v in self.table[:, x]))

    def left_division_table(self) -> np.ndarray:
        """ldiv[x, x*y] == y; the (23)-parastrophe as a raw array."""
        if self._ldiv is None:
            object.__setattr__(self, "_ldiv", _frozen(np.argsort(self.table, axis=1)))
        return self._ldiv

    def right_division_table(self) -> np.ndarray:
        """rdiv[x*y, y] == x."""
        if self._rdiv is None:
            object.__setattr__(self, "_rdiv", _frozen(np.argsort(self.table, axis=0)))
        return self._rdiv


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def validate_quasigroup(grid) -> Quasigroup:
    """Wrap a grid as a Quasigroup, or raise NotLatin naming the first bad line.

    Rows are checked before columns, each in index order.
    """
    return Quasigroup(grid)


def cyclic_table(n: int) -> np.ndarray:
    """Addition table of Z_n."""
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def cyclic_quasigroup(n: int) -> Quasigroup:
    return Quasigroup(cyclic_table(n))


class NAryQuasigroup:
    """Arity-k operation on [0, n) that is bijective in every argument slot."""

    __slots__ = ("table",)

    def __init__(self, table):
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim < 2:
            raise ValueError("arity must be at least 2")
        n = arr.shape[0]
        if any(s != n for s in arr.shape):
            raise ValueError(f"table must be hypercubic, got shape {arr.shape}")
        ref = np.arange(n)
        for axis in range(arr.ndim):
            lines = np.moveaxis(arr, axis, -1).reshape(-1, n)
            if not np.array_equal(np.sort(lines, axis=1), np.broadcast_to(ref, lines.shape)):
                raise NotLatin("axis", axis)
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "table", arr)

    def __setattr__(self, name, value):
        raise AttributeError("NAryQuasigroup is immutable")

    @property
    def arity(self) -> int:
        return self.table.ndim

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __call__(self, *args: int) -> int:
        return int(self.table[args])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NAryQuasigroup)
            and self.table.shape == other.table.shape
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.table.shape, self.table.tobytes()))


def nary_from_callable(f, arity: int, order: int) -> NAryQuasigroup:
    """Tabulate f over all arity-tuples; f must define a k-ary quasigroup."""
    table = np.empty((order,) * arity, dtype=np.int64)
    for args in product(range(order), repeat=arity):
        table[args] = f(*args)
    return NAryQuasigroup(table)


# ---------------------------------------------------------------------------
# parastrophes
# ---------------------------------------------------------------------------


def as_sigma(sigma, m: int) -> tuple[int, ...]:
    """Normalize a conjugation label to one-line notation over 1..m.

    Accepts one-line tuples like (1, 3, 2), two-element transpositions like
    (2, 3), strings "23"/"(23)", comma strings "1,3,2", or None/"id" for the
    identity.
    """
    if sigma is None:
        return tuple(range(1, m + 1))
    if isinstance(sigma, str):
        s = sigma.strip().strip("()").replace(" ", "")
        if s in ("id", "identity", ""):
            return tuple(range(1, m + 1))
        if "," in s:
            sigma = tuple(int(t) for t in s.split(","))
        else:
            sigma = tuple(int(ch) for ch in s)
    sigma = tuple(int(v) for v in sigma)
    if len(sigma) == 2 and sigma[0] != sigma[1]:
        i, j = sigma
        if not (1 <= i <= m and 1 <= j <= m):
            raise ValueError(f"transposition {sigma} out of range for S_{m}")
        line = list(range(1, m + 1))
        line[i - 1], line[j - 1] = j, i
        return tuple(line)
    if sorted(sigma) != list(range(1, m + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{m}")
    return sigma


def _conjugate_table(table: np.ndarray, sigma: tuple[int, ...]) -> np.ndarray:
    """Relabel the defining relation op(x1..xk)=v by the role permutation sigma."""
    k = table.ndim
    n = table.shape[0]
    coords = np.indices(table.shape).reshape(k, -1)
    full = np.vstack([coords, table.reshape(1, -1)])  # rows: x1..xk, v
    out = np.empty_like(table)
    new_index = tuple(full[s - 1] for s in sigma[:k])
    out[new_index] = full[sigma[k] - 1]
    return out


def parastrophe(q: Quasigroup, sigma) -> Quasigroup:
    """The sigma-conjugate of a binary quasigroup; (2,3) gives left division."""
    line = as_sigma(sigma, 3)
    if line == (1, 2, 3):
        return Quasigroup(q.table)
    return Quasigroup(_conjugate_table(q.table, line))


def nary_parastrophe(q: NAryQuasigroup, sigma) -> NAryQuasigroup:
    """The sigma-conjugate of a k-ary quasigroup, sigma in S_{k+1}."""
    line = as_sigma(sigma, q.arity + 1)
    if line == tuple(range(1, q.arity + 2)):
        return NAryQuasigroup(q.table)
    return NAryQuasigroup(_conjugate_table(q.table, line))


# ---------------------------------------------------------------------------
# isotopy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Isotopy:
    """Row, column, and symbol relabelings of equal size."""

    row_map: Permutation
    col_map: Permutation
    sym_map: Permutation

    def __post_init__(self):
        if not (self.row_map.size == self.col_map.size == self.sym_map.size):
            raise SizeMismatch("isotopy components must have equal sizes")

    @classmethod
    def identity(cls, n: int) -> "Isotopy":
        e = Permutation.identity(n)
        return cls(e, e, e)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Isotopy":
        return cls(
            Permutation.random(n, rng),
            Permutation.random(n, rng),
            Permutation.random(n, rng),
        )

    @property
    def size(self) -> int:
        return self.row_map.size


def apply_isotopy(q: Quasigroup, iso: Isotopy) -> Quasigroup:
    """result(x, y) = sym(q(row^-1(x), col^-1(y)))."""
    if iso.size != q.order:
        raise SizeMismatch(f"isotopy size {iso.size} != order {q.order}")
    row_inv = iso.row_map.inverse().as_array()
    col_inv = iso.col_map.inverse().as_array()
    sym = iso.sym_map.as_array()
    return Quasigroup(sym[q.table[np.ix_(row_inv, col_inv)]])


def compose_isotopy(a: Isotopy, b: Isotopy) -> Isotopy:
    """a after b: apply_isotopy(q, compose_isotopy(a, b)) applies b first."""
    return Isotopy(
        a.row_map.compose(b.row_map),
        a.col_map.compose(b.col_map),
        a.sym_map.compose(b.sym_map),
    )


def invert_isotopy(a: Isotopy) -> Isotopy:
    return Isotopy(a.row_map.inverse(), a.col_map.inverse(), a.sym_map.inverse())


def direct_product(q1: Quasigroup, q2: Quasigroup) -> Quasigroup:
    """Componentwise product on pairs encoded as i1 * n2 + i2."""
    n2 = q2.order
    t = q1.table[:, None, :, None] * n2 + q2.table[None, :, None, :]
    n = q1.order * n2
    return Quasigroup(t.reshape(n, n))


# ---------------------------------------------------------------------------
# structure reports
# ---------------------------------------------------------------------------


def translation_orders(q: Quasigroup) -> tuple[list[int], list[int]]:
    """Orders of all left translations L_x and right translations R_x."""
    left = [q.left_translation(x).order() for x in range(q.order)]
    right = [q.right_translation(x).order() for x in range(q.order)]
    return left, right


@dataclass(frozen=True)
class ShapelessReport:
    commutative: bool
    associative: bool
    has_left_unit: bool
    has_right_unit: bool
    has_proper_subquasigroup: bool
    smallest_identity_exponent: int | None
    min_translation_order: int
    is_shapeless: bool


def _singleton_closures_cover(q: Quasigroup) -> bool:
    """True iff some singleton closure under *, \\, / is a proper subset."""
    n = q.order
    mul = q.table
    ldiv = q.left_division_table()
    rdiv = q.right_division_table()
    for a in range(n):
        members = np.zeros(n, dtype=bool)
        members[a] = True
        size = 1
        while True:
            idx = np.flatnonzero(members)
            closure = members.copy()
            for t in (mul, ldiv, rdiv):
                closure[t[np.ix_(idx, idx)].ravel()] = True
            new_size = int(closure.sum())
            if new_size == size:
                break
            members = closure
            size = new_size
            if size == n:
                break
        if size < n:
            return True
    return False


def shapeless_report(q: Quasigroup) -> ShapelessReport:
    """Check every condition of the shapeless definition.

    The exponent check uses the least k with L_x^k = id for all x
    simultaneously (and likewise for R_x); that is the lcm of translation
    orders, reported as None when it is >= 2n. The per-translation minimum
    order is reported alongside, since the literature bound (>= 2n+1 for
    each translation) is unattainable at small orders.
    """
    n = q.order
    t = q.table
    commutative = bool(np.array_equal(t, t.T))
    associative = bool(np.array_equal(t[t], t[:, t]))
    aranges = np.arange(n)
    has_left_unit = bool((t == aranges[None, :]).all(axis=1).any())
    has_right_unit = bool((t == aranges[:, None]).all(axis=0).any())
    has_sub = _singleton_closures_cover(q)
    left, right = translation_orders(q)
    k_left = math.lcm(*left)
    k_right = math.lcm(*right)
    candidates = [k for k in (k_left, k_right) if k < 2 * n]
    exponent = min(candidates) if candidates else None
    flags_clear = not (
        commutative or associative or has_left_unit or has_right_unit or has_sub
    )
    return ShapelessReport(
        commutative=commutative,
        associative=associative,
        has_left_unit=has_left_unit,
        has_right_unit=has_right_unit,
        has_proper_subquasigroup=has_sub,
        smallest_identity_exponent=exponent,
        min_translation_order=min(left + right),
        is_shapeless=flags_clear and exponent is None,
    )


@dataclass(frozen=True)
class OrthomorphismReport:
    is_orthomorphism: bool
    canonical: bool
    theta: Permutation | None


def orthomorphism_report(group: Quasigroup, phi: Permutation) -> OrthomorphismReport:
    """Check whether g -> g^-1 * phi(g) is a bijection of the group.

    Raises NotAGroup unless the table is associative (with the two-sided
    unit every associative quasigroup has). ``canonical`` is set when phi
    fixes the unit.
    """
    t = group.table
    n = group.order
    if phi.size != n:
        raise SizeMismatch(f"permutation size {phi.size} != order {n}")
    if not np.array_equal(t[t], t[:, t]):
        raise NotAGroup("table is not associative")
    units = np.flatnonzero((t == np.arange(n)[None, :]).all(axis=1))
    if units.size != 1 or not np.array_equal(t[:, units[0]], np.arange(n)):
        raise NotAGroup("no two-sided unit")
    e = int(units[0])
    inv = group.left_division_table()[:, e]  # g * inv[g] == e
    theta_images = t[inv, phi.as_array()]
    ok = len(set(int(v) for v in theta_images)) == n
    theta = Permutation(tuple(int(v) for v in theta_images)) if ok else None
    return OrthomorphismReport(ok, phi(e) == e, theta)


def is_orthomorphism(group: Quasigroup, phi: Permutation) -> bool:
    return orthomorphism_report(group, phi).is_orthomorphism


def hamming_distance(a, b) -> int:
    """Number of argument tuples where two same-shape operation tables differ."""
    ta = a.table if isinstance(a, (Quasigroup, NAryQuasigroup)) else np.asarray(a)
    tb = b.table if isinstance(b, (Quasigroup, NAryQuasigroup)) else np.asarray(b)
    if ta.shape != tb.shape:
        raise ShapeMismatch(f"table shapes {ta.shape} != {tb.shape}")
    return int(np.count_nonzero(ta != tb))


def generate_quasigroup(order: int, seed: int) -> Quasigroup:
    """Seeded random isotope of the Z_order table; reproducible per (order, seed).

    Isotopes of cyclic groups do not sample uniformly over all Latin
    squares; they are merely plentiful and cheap.
    """
    if order < 1:
        raise ValueError("order must be positive")
    rng = np.random.default_rng(seed)
    return apply_isotopy(cyclic_quasigroup(order), Isotopy.random(order, rng))
