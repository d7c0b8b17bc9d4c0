"""Shared text formats.

Grid (quasigroups and row-Latin squares): first line "n", then n lines of
n space-separated integers. Permutation: one line of n integers. Partial
square: first line "n", then one "row col symbol" triple per line.
"""

from __future__ import annotations

import numpy as np

from .core import Permutation, Quasigroup
from .latinsets import PartialLatinSquare
from .protocols import RowLatinSquare


def _int_tokens(line: str) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise ValueError(f"expected integers, got {line!r}") from None


def parse_grid(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty grid")
    head = _int_tokens(lines[0])
    if len(head) != 1 or head[0] < 1:
        raise ValueError(f"first line must be the order, got {lines[0]!r}")
    n = head[0]
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} grid rows, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = _int_tokens(ln)
        if len(row) != n:
            raise ValueError(f"expected {n} entries per row, got {len(row)}")
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def format_grid(arr) -> str:
    arr = np.asarray(arr)
    lines = [str(arr.shape[0])]
    lines += [" ".join(str(int(v)) for v in row) for row in arr]
    return "\n".join(lines) + "\n"


def parse_quasigroup(text: str) -> Quasigroup:
    return Quasigroup(parse_grid(text))


def format_quasigroup(q: Quasigroup) -> str:
    return format_grid(q.table)


def parse_row_latin(text: str) -> RowLatinSquare:
    return RowLatinSquare(parse_grid(text))


def format_row_latin(square: RowLatinSquare) -> str:
    return format_grid(square.as_array())


def parse_stream_key(text: str) -> tuple[Quasigroup, int]:
    """Key file: the grid format followed by one extra line with the leader."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise ValueError("key file needs a grid and a leader line")
    leader_tokens = _int_tokens(lines[-1])
    if len(leader_tokens) != 1:
        raise ValueError(f"leader line must hold one integer, got {lines[-1]!r}")
    return parse_quasigroup("\n".join(lines[:-1])), leader_tokens[0]


def format_stream_key(q: Quasigroup, leader: int) -> str:
    return format_grid(q.table) + f"{leader}\n"


def parse_permutation(text: str) -> Permutation:
    tokens = _int_tokens(text)
    if not tokens:
        raise ValueError("empty permutation")
    return Permutation(tuple(tokens))


def format_permutation(p: Permutation) -> str:
    return " ".join(str(v) for v in p.images) + "\n"


def parse_partial(text: str) -> PartialLatinSquare:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty partial square")
    head = _int_tokens(lines[0])
    if len(head) != 1 or head[0] < 1:
        raise ValueError(f"first line must be the order, got {lines[0]!r}")
    entries = []
    for ln in lines[1:]:
        triple = _int_tokens(ln)
        if len(triple) != 3:
            raise ValueError(f"expected 'row col symbol', got {ln!r}")
        entries.append(tuple(triple))
    return PartialLatinSquare(head[0], entries)


def format_partial(p: PartialLatinSquare) -> str:
    lines = [str(p.order)]
    lines += [f"{r} {c} {s}" for r, c, s in sorted(p.entries)]
    return "\n".join(lines) + "\n"


def parse_symbols(text: str) -> list[int]:
    return _int_tokens(text)


def format_symbols(symbols) -> str:
    return " ".join(str(int(v)) for v in symbols) + "\n"


def load_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def save_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
