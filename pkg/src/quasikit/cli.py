"""Command-line front end. Every subcommand is a thin adapter over the
library; results are byte-identical to direct calls.

Exit status: 0 on success, 1 on domain errors (the error name goes to
stderr), 2 on usage errors. Randomized subcommands accept --seed; when it
is absent a fresh seed is generated and printed to stderr so runs can be
reproduced.
"""

from __future__ import annotations

import argparse
import secrets
import sys

import numpy as np

from . import cipher, core, hashing, io, latinsets, mqq, nlpn, protocols
from .errors import NotPowerOfTwo, QuasikitError

_WORD_GROUPS = ("mqq", "cs", "osys", "ci", "rst", "rls")


def _merge_aliases(argv: list[str]) -> list[str]:
    """Allow two-word spellings: `qg mqq classify ...` == `qg mqq-classify ...`."""
    if len(argv) >= 2 and argv[0] in _WORD_GROUPS and not argv[1].startswith("-"):
        return [f"{argv[0]}-{argv[1]}"] + argv[2:]
    return argv


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = secrets.randbits(32)
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _load_quasigroup(path: str) -> core.Quasigroup:
    return io.parse_quasigroup(io.load_text(path))


def _read_text_input(args) -> str:
    if getattr(args, "inline", None) is not None:
        return args.inline
    if getattr(args, "infile", None):
        return io.load_text(args.infile)
    return sys.stdin.read()


def _read_byte_input(args) -> bytes:
    if getattr(args, "inline", None) is not None:
        return args.inline.encode("latin-1")
    if getattr(args, "infile", None):
        with open(args.infile, "rb") as fh:
            return fh.read()
    return sys.stdin.buffer.read()


def _read_message(args, order: int) -> np.ndarray:
    if getattr(args, "bytes", False):
        if order != 256:
            raise ValueError("--bytes requires a quasigroup of order 256")
        return np.frombuffer(_read_byte_input(args), dtype=np.uint8).astype(np.int64)
    return np.array(io.parse_symbols(_read_text_input(args)), dtype=np.int64)


def _emit_message(args, symbols) -> None:
    if getattr(args, "bytes", False):
        sys.stdout.buffer.write(bytes(int(v) for v in symbols))
        sys.stdout.buffer.flush()
    else:
        sys.stdout.write(io.format_symbols(symbols))


def _emit_grid(args, text: str) -> None:
    if getattr(args, "out", None):
        io.save_text(args.out, text)
    else:
        sys.stdout.write(text)


def _parse_matrix(spec: str) -> list[list[int]]:
    return [[int(v) for v in row.split(",")] for row in spec.split(";")]


def _csv_ints(spec: str) -> list[int]:
    return [int(v) for v in spec.split(",")]


# ---------------------------------------------------------------------------
# qcore subcommands
# ---------------------------------------------------------------------------


def _cmd_validate(args) -> int:
    q = _load_quasigroup(args.qg)
    print(f"valid: order {q.order}")
    return 0


def _cmd_gen(args) -> int:
    q = core.generate_quasigroup(args.order, _resolve_seed(args))
    _emit_grid(args, io.format_quasigroup(q))
    return 0


def _cmd_parastrophe(args) -> int:
    q = _load_quasigroup(args.qg)
    _emit_grid(args, io.format_quasigroup(core.parastrophe(q, args.sigma)))
    return 0


def _cmd_product(args) -> int:
    q1 = _load_quasigroup(args.qg)
    q2 = _load_quasigroup(args.qg2)
    _emit_grid(args, io.format_quasigroup(core.direct_product(q1, q2)))
    return 0


def _cmd_dist(args) -> int:
    a = io.parse_grid(io.load_text(args.qg))
    b = io.parse_grid(io.load_text(args.qg2))
    print(core.hamming_distance(a, b))
    return 0


def _cmd_shapeless(args) -> int:
    report = core.shapeless_report(_load_quasigroup(args.qg))
    for name in (
        "commutative",
        "associative",
        "has_left_unit",
        "has_right_unit",
        "has_proper_subquasigroup",
        "smallest_identity_exponent",
        "min_translation_order",
        "is_shapeless",
    ):
        print(f"{name}: {getattr(report, name)}")
    return 0


def _cmd_orthomorphism(args) -> int:
    q = _load_quasigroup(args.qg)
    if bool(args.perm) == bool(args.images):
        raise ValueError("provide exactly one of --perm or --images")
    if args.perm:
        phi = io.parse_permutation(io.load_text(args.perm))
    else:
        phi = io.parse_permutation(args.images)
    report = core.orthomorphism_report(q, phi)
    print(f"orthomorphism: {report.is_orthomorphism}")
    print(f"canonical: {report.canonical}")
    if report.theta is not None:
        print("theta:", " ".join(str(v) for v in report.theta.images))
    return 0


# ---------------------------------------------------------------------------
# cipher subcommands
# ---------------------------------------------------------------------------


def _stream_key(args) -> cipher.StreamKey:
    if getattr(args, "key", None):
        if args.qg or args.leader is not None:
            raise ValueError("--key replaces --qg and --leader")
        q, leader = io.parse_stream_key(io.load_text(args.key))
        return cipher.StreamKey(q, leader)
    if not args.qg or args.leader is None:
        raise ValueError("provide --qg and --leader, or a combined --key file")
    return cipher.StreamKey(_load_quasigroup(args.qg), args.leader)


def _cmd_encrypt(args) -> int:
    key = _stream_key(args)
    _emit_message(args, cipher.encrypt_stream(key, _read_message(args, key.quasigroup.order)))
    return 0


def _cmd_decrypt(args) -> int:
    key = _stream_key(args)
    _emit_message(args, cipher.decrypt_stream(key, _read_message(args, key.quasigroup.order)))
    return 0


def _load_ternary(path: str) -> core.NAryQuasigroup:
    """Arity-3 table file: first line 'n', then n*n rows of n entries
    (row-major over the first two arguments)."""
    grid_text = io.load_text(path)
    lines = [ln for ln in grid_text.splitlines() if ln.strip()]
    n = int(lines[0])
    rows = [[int(v) for v in ln.split()] for ln in lines[1:]]
    if len(rows) != n * n or any(len(r) != n for r in rows):
        raise ValueError(f"expected {n * n} rows of {n} entries")
    return core.NAryQuasigroup(np.array(rows, dtype=np.int64).reshape(n, n, n))


def _ternary_key(args) -> cipher.TernaryKey:
    q3 = _load_ternary(args.qg3)
    leaders = _csv_ints(args.leaders)
    return cipher.TernaryKey(q3, tuple(leaders), args.variant)


def _cmd_encrypt3(args) -> int:
    key = _ternary_key(args)
    msg = _read_message(args, key.quasigroup3.order)
    _emit_message(args, cipher.encrypt_ternary(key, msg))
    return 0


def _cmd_decrypt3(args) -> int:
    key = _ternary_key(args)
    ct = _read_message(args, key.quasigroup3.order)
    _emit_message(args, cipher.decrypt_ternary(key, ct))
    return 0


def _cmd_mix(args) -> int:
    q = _load_quasigroup(args.qg)
    _emit_message(args, cipher.mix_transform(q, _read_message(args, q.order)))
    return 0


def _linear_system(args) -> cipher.OrthogonalSystem:
    matrix = _parse_matrix(args.matrix)
    return cipher.build_linear_orthosystem(len(matrix), args.p, matrix)


def _cmd_osys_encrypt(args) -> int:
    sys_ = _linear_system(args)
    block = _read_message(args, sys_.order)
    _emit_message(args, cipher.orthosys_encrypt(sys_, block))
    return 0


def _cmd_osys_decrypt(args) -> int:
    sys_ = _linear_system(args)
    block = _read_message(args, sys_.order)
    _emit_message(args, cipher.orthosys_decrypt(sys_, block))
    return 0


def _cmd_osys_verify(args) -> int:
    print(cipher.verify_orthogonality(_linear_system(args)))
    return 0


# ---------------------------------------------------------------------------
# hash subcommand
# ---------------------------------------------------------------------------


def _cmd_hash(args) -> int:
    base = _stream_key(args)
    leaders = tuple(_csv_ints(args.multi_leaders)) if args.multi_leaders else None
    spec = hashing.HashSpec(base.quasigroup, base.leader, leaders)
    q = base.quasigroup
    msg = _read_message(args, q.order)
    digest = hashing.hash_multi(spec, msg) if leaders else [hashing.hash_fold(spec, msg)]
    if getattr(args, "bytes", False):
        print("".join(f"{v:02x}" for v in digest))
    else:
        print(" ".join(str(v) for v in digest))
    return 0


# ---------------------------------------------------------------------------
# protocol subcommands
# ---------------------------------------------------------------------------


def _cmd_ci_make(args) -> int:
    q = protocols.make_linear_ci(args.modulus, args.multiplier)
    sys.stdout.write(io.format_quasigroup(q.quasigroup))
    print("J:", " ".join(str(v) for v in q.j.images))
    print(f"rst: {q.r} {q.s} {q.t}")
    return 0


def _cmd_ci_transport(args) -> int:
    q = protocols.make_linear_ci(args.modulus, args.multiplier)
    result = protocols.ci_key_transport(q, args.c, args.m)
    print(f"sent: {result.sent[0]} {result.sent[1]}")
    print(f"recovered: {result.recovered}")
    return 0


def _cmd_rst_transport(args) -> int:
    q = protocols.make_linear_ci(args.modulus, args.multiplier)
    result = protocols.rst_key_transport(q, args.k, args.u, args.m)
    print(f"sent: {result.sent[0]} {result.sent[1]}")
    print(f"recovered: {result.recovered}")
    return 0


def _cmd_public_key_transport(args) -> int:
    q = protocols.make_linear_ci(args.modulus, args.multiplier)
    result = protocols.public_key_transport(q, args.public, args.m)
    print(f"recovered: {result.recovered}")
    print(f"inverse cycle: {' '.join(str(v) for v in result.inverse_cycle)}")
    print(f"cycle length: {result.cycle_length}")
    print(f"short cycle warning: {result.short_cycle_warning}")
    return 0


def _load_rls(path: str) -> protocols.RowLatinSquare:
    return io.parse_row_latin(io.load_text(path))


def _cmd_rls_multiply(args) -> int:
    product = protocols.rls_multiply(_load_rls(args.rls), _load_rls(args.rls2))
    _emit_grid(args, io.format_row_latin(product))
    return 0


def _cmd_rls_power(args) -> int:
    _emit_grid(args, io.format_row_latin(protocols.rls_power(_load_rls(args.rls), args.exp)))
    return 0


def _cmd_rls_period(args) -> int:
    print(protocols.rls_period(_load_rls(args.rls)))
    return 0


def _cmd_rls_agree(args) -> int:
    result = protocols.rls_key_agreement(_load_rls(args.rls), args.x, args.y)
    sys.stdout.write(io.format_row_latin(result.common))
    return 0


def _cmd_zkp(args) -> int:
    seed = _resolve_seed(args)
    rng = np.random.default_rng(seed)
    if args.qg:
        public_l = _load_quasigroup(args.qg)
    else:
        public_l = core.generate_quasigroup(args.order, int(rng.integers(2**32)))
    secret = core.Isotopy.random(public_l.order, rng)
    public_l2 = core.apply_isotopy(public_l, secret)
    transcript = protocols.zkp_simulate(
        public_l, public_l2, secret, args.rounds, int(rng.integers(2**32)),
        cheat=args.cheat,
    )
    for i, rnd in enumerate(transcript.rounds, start=1):
        print(f"round {i}: challenge={rnd.challenge} verified={rnd.verified}")
    print(f"accepted: {transcript.accepted}")
    return 0


# ---------------------------------------------------------------------------
# nlpn subcommand
# ---------------------------------------------------------------------------


def _cmd_nlpn(args) -> int:
    coeffs = _csv_ints(args.poly)
    if len(coeffs) != args.m:
        raise ValueError(f"--poly lists {len(coeffs)} coefficients but --m is {args.m}")
    lfsr = nlpn.Lfsr(args.p, coeffs)
    a = nlpn.pn_sequence(lfsr)
    q = _load_quasigroup(args.qg)
    b, c = nlpn.nlpn_pair(a, args.shift, q)
    for name, seq in (("a", a), ("b", b), ("c", c)):
        print(f"{name}: {' '.join(str(v) for v in seq.symbols)}")
        print(f"linear_complexity({name}): {nlpn.linear_complexity(seq)}")
    return 0


# ---------------------------------------------------------------------------
# mqq subcommands
# ---------------------------------------------------------------------------


def _cmd_mqq_classify(args) -> int:
    q = _load_quasigroup(args.qg)
    try:
        cls = mqq.classify_mqq(q)
    except NotPowerOfTwo:
        print("NotOrder2d")
        return 0
    print("degrees:", " ".join(str(v) for v in cls.degrees))
    print(cls.verdict)
    return 0


def _cmd_mqq_gen(args) -> int:
    result = mqq.generate_mqq(args.d, _resolve_seed(args), args.max_attempts)
    sys.stdout.write(io.format_quasigroup(result.quasigroup))
    print(result.classification.verdict)
    return 0


# ---------------------------------------------------------------------------
# critical-set subcommands
# ---------------------------------------------------------------------------


def _load_partial(path: str) -> latinsets.PartialLatinSquare:
    return io.parse_partial(io.load_text(path))


def _cmd_cs_count(args) -> int:
    print(latinsets.completion_count(_load_partial(args.pls), args.limit))
    return 0


def _cmd_cs_unique(args) -> int:
    unique, completion = latinsets.is_uniquely_completable(_load_partial(args.pls))
    print(f"unique: {unique}")
    if completion is not None:
        sys.stdout.write(io.format_quasigroup(completion))
    return 0


def _cmd_cs_critical(args) -> int:
    result = latinsets.is_critical(_load_partial(args.pls), _load_quasigroup(args.qg))
    print(f"critical: {result}")
    return 0


def _cmd_cs_greedy(args) -> int:
    found = latinsets.greedy_critical_search(_load_quasigroup(args.qg), _resolve_seed(args))
    sys.stdout.write(io.format_partial(found))
    return 0


def _cmd_cs_smallest(args) -> int:
    size, witness = latinsets.smallest_critical_exhaustive(_load_quasigroup(args.qg))
    print(f"size: {size}")
    sys.stdout.write(io.format_partial(witness))
    return 0


def _cmd_cs_deal(args) -> int:
    square = _load_quasigroup(args.qg)
    seed = _resolve_seed(args)
    if args.pls:
        critical = _load_partial(args.pls)
    else:
        critical = latinsets.greedy_critical_search(square, seed)
    deal = latinsets.deal_shares(square, critical, args.participants, seed)
    for i, share in enumerate(deal.shares):
        if args.out_prefix:
            io.save_text(f"{args.out_prefix}{i}.pls", io.format_partial(share))
        else:
            print(f"share {i}:")
            sys.stdout.write(io.format_partial(share))
    return 0


def _cmd_cs_reconstruct(args) -> int:
    shares = [_load_partial(path) for path in args.share]
    sys.stdout.write(io.format_quasigroup(latinsets.reconstruct(shares)))
    return 0


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _add_message_flags(p: argparse.ArgumentParser, with_bytes: bool = True) -> None:
    p.add_argument("--in", dest="inline", help="inline whitespace-separated symbols")
    p.add_argument("--infile", help="read the message from this file")
    if with_bytes:
        p.add_argument(
            "--bytes",
            action="store_true",
            help="raw byte mode (order must be 256); reads/writes binary streams",
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qg", description="quasigroup cryptography toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    p = add("validate", _cmd_validate, "check that a grid file is a Latin square")
    p.add_argument("--qg", required=True)

    p = add("gen", _cmd_gen, "generate a seeded random quasigroup")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = add("parastrophe", _cmd_parastrophe, "conjugate of a quasigroup")
    p.add_argument("--qg", required=True)
    p.add_argument("--sigma", required=True, help="e.g. 23, or one-line 1,3,2")
    p.add_argument("--out")

    p = add("product", _cmd_product, "direct product of two quasigroups")
    p.add_argument("--qg", required=True)
    p.add_argument("--qg2", required=True)
    p.add_argument("--out")

    p = add("dist", _cmd_dist, "Hamming distance between two operation tables")
    p.add_argument("--qg", required=True)
    p.add_argument("--qg2", required=True)

    p = add("shapeless", _cmd_shapeless, "structural report for a quasigroup")
    p.add_argument("--qg", required=True)

    p = add("orthomorphism", _cmd_orthomorphism, "check a permutation against a group table")
    p.add_argument("--qg", required=True)
    p.add_argument("--perm", help="permutation file (one line of images)")
    p.add_argument("--images", help="inline permutation images")

    for name, func, help_ in (
        ("encrypt", _cmd_encrypt, "leader-chained stream encryption"),
        ("decrypt", _cmd_decrypt, "inverse of encrypt"),
    ):
        p = add(name, func, help_)
        p.add_argument("--qg")
        p.add_argument("--leader", type=int)
        p.add_argument("--key", help="combined key file: grid plus a trailing leader line")
        _add_message_flags(p)

    p = add("encrypt3", _cmd_encrypt3, "ternary chained encryption")
    p.add_argument("--qg3", required=True, help="arity-3 table file")
    p.add_argument("--leaders", required=True, help="l1,l2,l3,l4")
    p.add_argument("--variant", default="14", help="14, 24, or 34")
    _add_message_flags(p, with_bytes=False)

    p = add("decrypt3", _cmd_decrypt3, "inverse of encrypt3")
    p.add_argument("--qg3", required=True)
    p.add_argument("--leaders", required=True)
    p.add_argument("--variant", default="14")
    _add_message_flags(p, with_bytes=False)

    p = add("mix", _cmd_mix, "stacked chained passes keyed by the input tuple")
    p.add_argument("--qg", required=True)
    _add_message_flags(p, with_bytes=False)

    for name, func, help_ in (
        ("osys-encrypt", _cmd_osys_encrypt, "block encryption via a linear orthogonal system"),
        ("osys-decrypt", _cmd_osys_decrypt, "block decryption via a linear orthogonal system"),
        ("osys-verify", _cmd_osys_verify, "verify joint-map bijectivity"),
    ):
        p = add(name, func, help_)
        p.add_argument("--p", type=int, required=True, help="prime modulus")
        p.add_argument("--matrix", required=True, help='rows as "a,b;c,d"')
        if name != "osys-verify":
            _add_message_flags(p, with_bytes=False)

    p = add("hash", _cmd_hash, "leader-folded hash")
    p.add_argument("--qg")
    p.add_argument("--leader", type=int)
    p.add_argument("--key", help="combined key file: grid plus a trailing leader line")
    p.add_argument("--multi-leaders", help="CSV leaders for a multi-lane digest")
    _add_message_flags(p)

    for name, func, extra in (
        ("ci-make", _cmd_ci_make, ()),
        ("ci-transport", _cmd_ci_transport, ("--c", "--m")),
        ("rst-transport", _cmd_rst_transport, ("--k", "--u", "--m")),
        ("ci-public-transport", _cmd_public_key_transport, ("--public", "--m")),
    ):
        p = add(name, func, "linear inverse-quasigroup key transport")
        p.add_argument("--modulus", type=int, required=True)
        p.add_argument("--multiplier", type=int, required=True)
        for flag in extra:
            p.add_argument(flag, type=int, required=True)

    p = add("rls-multiply", _cmd_rls_multiply, "row-wise product of row-Latin squares")
    p.add_argument("--rls", required=True)
    p.add_argument("--rls2", required=True)
    p.add_argument("--out")

    p = add("rls-power", _cmd_rls_power, "power of a row-Latin square")
    p.add_argument("--rls", required=True)
    p.add_argument("--exp", type=int, required=True)
    p.add_argument("--out")

    p = add("rls-period", _cmd_rls_period, "least power with identity rows")
    p.add_argument("--rls", required=True)

    p = add("rls-agree", _cmd_rls_agree, "common key from two secret exponents")
    p.add_argument("--rls", required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)

    p = add("zkp", _cmd_zkp, "simulate the isotopy identification protocol")
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--qg", help="use this square instead of a generated one")
    p.add_argument("--rounds", type=int, default=10)
    p.add_argument("--seed", type=int)
    p.add_argument("--cheat", action="store_true", help="simulate a prover without the secret")

    p = add("nlpn", _cmd_nlpn, "PN sequence, its quasigroup folds, and complexities")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--poly", required=True, help="feedback coefficients c1,...,cm")
    p.add_argument("--shift", type=int, required=True)
    p.add_argument("--qg", required=True)

    p = add("mqq-classify", _cmd_mqq_classify, "degree profile of an order-2^d table")
    p.add_argument("--qg", required=True)

    p = add("mqq-gen", _cmd_mqq_gen, "generate a quadratic quasigroup")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-attempts", type=int, default=10_000)

    p = add("cs-count", _cmd_cs_count, "count completions of a partial square")
    p.add_argument("--pls", required=True)
    p.add_argument("--limit", type=int, default=1_000_000)

    p = add("cs-unique", _cmd_cs_unique, "unique completability check")
    p.add_argument("--pls", required=True)

    p = add("cs-critical", _cmd_cs_critical, "criticality of a partial square for a square")
    p.add_argument("--pls", required=True)
    p.add_argument("--qg", required=True)

    p = add("cs-greedy", _cmd_cs_greedy, "greedy critical-set search")
    p.add_argument("--qg", required=True)
    p.add_argument("--seed", type=int)

    p = add("cs-smallest", _cmd_cs_smallest, "smallest uniquely completable subset")
    p.add_argument("--qg", required=True)

    p = add("cs-deal", _cmd_cs_deal, "split a critical set into shares")
    p.add_argument("--qg", required=True)
    p.add_argument("--pls", help="critical set file; derived greedily when absent")
    p.add_argument("--participants", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out-prefix", help="write shares to PREFIX<i>.pls")

    p = add("cs-reconstruct", _cmd_cs_reconstruct, "rebuild the square from shares")
    p.add_argument("--share", action="append", required=True, help="repeatable share file")

    return parser


def main(argv=None) -> int:
    raw = list(sys.argv[1:] if argv is None else argv)
    args = _build_parser().parse_args(_merge_aliases(raw))
    try:
        return args.func(args)
    except (QuasikitError, ValueError, KeyError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
