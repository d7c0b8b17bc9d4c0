from itertools import permutations, product

import numpy as np
import pytest

from quasikit.cipher import (
    OrthogonalSystem,
    StreamKey,
    TernaryKey,
    build_linear_orthosystem,
    decrypt_stream,
    decrypt_ternary,
    encrypt_stream,
    encrypt_ternary,
    orthosys_decrypt,
    orthosys_encrypt,
    mix_transform,
    verify_orthogonality,
)
from quasikit.core import (
    Quasigroup,
    cyclic_quasigroup,
    generate_quasigroup,
    nary_from_callable,
)
from quasikit.errors import (
    BlockLengthMismatch,
    NotPrime,
    SingularMatrix,
    SymbolOutOfRange,
    TooLarge,
)


def all_latin_squares(n):
    rows = list(permutations(range(n)))
    out = []

    def rec(sq):
        if len(sq) == n:
            out.append(tuple(sq))
            return
        for r in rows:
            if all(r[c] != prev[c] for prev in sq for c in range(n)):
                rec(sq + [r])

    rec([])
    return out


# ---------------------------------------------------------------------------
# stream cipher
# ---------------------------------------------------------------------------


def test_stream_worked_example(worked_example_table):
    key = StreamKey(worked_example_table, 0)  # leader a
    msg = [1, 1, 2, 0, 0, 2, 1, 0]  # b b c a a c b a
    ct = encrypt_stream(key, msg)
    assert ct.tolist() == [2, 1, 1, 2, 0, 0, 2, 0]  # c b b c a a c a
    assert decrypt_stream(key, ct).tolist() == msg


def test_stream_single_symbol_z2():
    key = StreamKey(cyclic_quasigroup(2), 0)
    assert encrypt_stream(key, [0]).tolist() == [0]


def test_stream_empty_message():
    key = StreamKey(cyclic_quasigroup(2), 1)
    assert encrypt_stream(key, []).size == 0
    assert decrypt_stream(key, []).size == 0


def test_stream_round_trip_exhaustive_order3():
    messages = [
        list(m) for k in range(5) for m in product(range(3), repeat=k)
    ]
    for square in all_latin_squares(3):
        q = Quasigroup(square)
        for leader in range(3):
            key = StreamKey(q, leader)
            for msg in messages:
                assert decrypt_stream(key, encrypt_stream(key, msg)).tolist() == msg


def test_stream_round_trip_randomized():
    rng = np.random.default_rng(10)
    for _ in range(60):
        n = int(rng.integers(3, 17))
        key = StreamKey(generate_quasigroup(n, int(rng.integers(2**32))), int(rng.integers(n)))
        msg = rng.integers(0, n, size=int(rng.integers(0, 200)))
        assert np.array_equal(decrypt_stream(key, encrypt_stream(key, msg)), msg)
    # one long message
    key = StreamKey(generate_quasigroup(16, 77), 3)
    msg = rng.integers(0, 16, size=10_000)
    assert np.array_equal(decrypt_stream(key, encrypt_stream(key, msg)), msg)


def test_stream_symbol_out_of_range_position():
    key = StreamKey(cyclic_quasigroup(3), 0)
    with pytest.raises(SymbolOutOfRange) as exc:
        encrypt_stream(key, [0, 1, 3, 1])
    assert exc.value.position == 2
    assert exc.value.symbol == 3


def test_stream_leader_out_of_range():
    with pytest.raises(SymbolOutOfRange):
        StreamKey(cyclic_quasigroup(3), 3)


# ---------------------------------------------------------------------------
# ternary cipher
# ---------------------------------------------------------------------------


def _random_linear_ternary(order, rng):
    units = [u for u in range(1, order) if np.gcd(u, order) == 1]
    a, b, c = (int(rng.choice(units)) for _ in range(3))
    d = int(rng.integers(order))
    return nary_from_callable(
        lambda x, y, z: (a * x + b * y + c * z + d) % order, 3, order
    )


def test_ternary_xor_example():
    beta = nary_from_callable(lambda x, y, z: (x + y + z) % 2, 3, 2)
    key = TernaryKey(beta, (0, 0, 0, 0))
    assert encrypt_ternary(key, [1, 0]).tolist() == [1, 0]
    assert decrypt_ternary(key, [1, 0]).tolist() == [1, 0]


def test_ternary_single_symbol_uses_first_leader_pair():
    rng = np.random.default_rng(3)
    beta = _random_linear_ternary(5, rng)
    key = TernaryKey(beta, (4, 2, 1, 3))
    assert encrypt_ternary(key, [2]).tolist() == [beta(2, 4, 2)]


def test_ternary_round_trip_all_variants():
    rng = np.random.default_rng(4)
    cases = 0
    while cases < 500:
        order = int(rng.integers(3, 6))
        beta = _random_linear_ternary(order, rng)
        leaders = tuple(int(v) for v in rng.integers(0, order, 4))
        variant = ("14", "24", "34")[cases % 3]
        key = TernaryKey(beta, leaders, variant)
        msg = rng.integers(0, order, size=int(rng.integers(0, 40)))
        ct = encrypt_ternary(key, msg)
        assert np.array_equal(decrypt_ternary(key, ct), msg)
        cases += 1


def test_ternary_variant_slots():
    rng = np.random.default_rng(5)
    beta = _random_linear_ternary(3, rng)
    l = (0, 1, 2, 0)
    m = [2, 1, 0]
    v14 = encrypt_ternary(TernaryKey(beta, l, "14"), m)
    v24 = encrypt_ternary(TernaryKey(beta, l, "24"), m)
    v34 = encrypt_ternary(TernaryKey(beta, l, "34"), m)
    assert v14[0] == beta(m[0], 0, 1)
    assert v24[0] == beta(0, m[0], 1)
    assert v34[0] == beta(0, 1, m[0])
    # third symbol chains on the two previous ciphertext symbols
    assert v14[2] == beta(m[2], v14[0], v14[1])
    assert v24[2] == beta(v24[0], m[2], v24[1])
    assert v34[2] == beta(v34[0], v34[1], m[2])


def test_ternary_rejects_bad_variant():
    beta = nary_from_callable(lambda x, y, z: (x + y + z) % 2, 3, 2)
    with pytest.raises(ValueError):
        TernaryKey(beta, (0, 0, 0, 0), "23")


# ---------------------------------------------------------------------------
# tuple-mixing transform
# ---------------------------------------------------------------------------


def test_r1_single_element_z2():
    assert mix_transform(cyclic_quasigroup(2), [1]).tolist() == [0]  # 1*1 = 0


def test_r1_single_pass_equals_stream(worked_example_table):
    # on a 1-tuple the transform is exactly one chained pass with leader a0
    q = worked_example_table
    for a in range(3):
        expected = encrypt_stream(StreamKey(q, a), [a])
        assert np.array_equal(mix_transform(q, [a]), expected)


def test_r1_composition_oracle(worked_example_table):
    q = worked_example_table
    tup = [2, 0, 1]
    # compose three chained passes by hand, leaders from the original tuple
    def one_pass(leader, seq):
        out, prev = [], leader
        for s in seq:
            prev = q(prev, s)
            out.append(prev)
        return out

    expected = one_pass(tup[0], one_pass(tup[1], one_pass(tup[2], tup)))
    assert mix_transform(q, tup).tolist() == expected


def test_r1_empty_rejected(worked_example_table):
    with pytest.raises(ValueError):
        mix_transform(worked_example_table, [])


# ---------------------------------------------------------------------------
# orthogonal systems
# ---------------------------------------------------------------------------


def brute_force_orthogonal(sys: OrthogonalSystem) -> bool:
    n, q = sys.arity, sys.order
    for target in product(range(q), repeat=n):
        solutions = [
            x
            for x in product(range(q), repeat=n)
            if all(sys.ops[i][x] == target[i] for i in range(n))
        ]
        if len(solutions) != 1:
            return False
    return True


def test_linear_orthosystem_brute_force():
    sys = build_linear_orthosystem(2, 3, [[1, 1], [1, 2]])
    assert verify_orthogonality(sys)
    assert brute_force_orthogonal(sys)


def test_identity_matrix_system():
    sys = build_linear_orthosystem(3, 5, np.eye(3, dtype=int))
    block = [4, 0, 2]
    assert orthosys_encrypt(sys, block).tolist() == block


def test_singular_matrix_rejected():
    with pytest.raises(SingularMatrix):
        build_linear_orthosystem(2, 3, [[1, 1], [2, 2]])


def test_composite_modulus_rejected():
    with pytest.raises(NotPrime):
        build_linear_orthosystem(2, 4, [[1, 1], [1, 2]])


def test_orthosys_worked_block():
    sys = build_linear_orthosystem(2, 3, [[1, 1], [1, 2]])
    ct = orthosys_encrypt(sys, [1, 2])
    assert ct.tolist() == [0, 2]
    assert orthosys_decrypt(sys, ct).tolist() == [1, 2]
    # matrix-inverse oracle: A^-1 = [[2,2],[2,1]] mod 3
    a_inv = np.array([[2, 2], [2, 1]])
    assert np.array_equal((a_inv @ ct) % 3, np.array([1, 2]))


def test_orthosys_round_trip_exhaustive():
    sys = build_linear_orthosystem(2, 3, [[1, 1], [1, 2]])
    seen = set()
    for block in product(range(3), repeat=2):
        ct = orthosys_encrypt(sys, block)
        seen.add(tuple(ct.tolist()))
        assert orthosys_decrypt(sys, ct).tolist() == list(block)
    assert len(seen) == 9  # encryption is a bijection on blocks


def test_non_orthogonal_pair_detected():
    t = np.array([[(x + y) % 3 for y in range(3)] for x in range(3)])
    with pytest.raises(ValueError):
        OrthogonalSystem([t, t])


def test_orthogonal_pair_accepted():
    f1 = np.array([[(x + y) % 3 for y in range(3)] for x in range(3)])
    f2 = np.array([[(x + 2 * y) % 3 for y in range(3)] for x in range(3)])
    sys = OrthogonalSystem([f1, f2])
    assert verify_orthogonality(sys)


def test_general_table_decrypt_matches_linear():
    # scramble a linear system's outputs by per-coordinate symbol permutations:
    # still orthogonal, but forces the inverse-map decryption path
    rng = np.random.default_rng(8)
    lin = build_linear_orthosystem(3, 5, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    perms = [rng.permutation(5) for _ in range(3)]
    scrambled = OrthogonalSystem([p[t] for p, t in zip(perms, lin.ops)])
    for _ in range(30):
        block = rng.integers(0, 5, size=3)
        ct = orthosys_encrypt(scrambled, block)
        assert np.array_equal(orthosys_decrypt(scrambled, ct), block)
        # cross-route: unscramble then use the linear inverse
        unscrambled = [int(np.argsort(perms[i])[ct[i]]) for i in range(3)]
        assert np.array_equal(orthosys_decrypt(lin, unscrambled), block)


def test_orthosys_block_length_mismatch():
    sys = build_linear_orthosystem(2, 3, [[1, 1], [1, 2]])
    with pytest.raises(BlockLengthMismatch):
        orthosys_encrypt(sys, [1, 2, 0])


def test_orthosys_too_large_scan():
    big = OrthogonalSystem.__new__(OrthogonalSystem)
    fake = np.broadcast_to(np.zeros(1, np.int64), (101,) * 4)  # no allocation
    object.__setattr__(big, "ops", (fake, fake, fake, fake))
    object.__setattr__(big, "_linear", None)
    object.__setattr__(big, "_inverse_codes", None)
    with pytest.raises(TooLarge):
        verify_orthogonality(big)
