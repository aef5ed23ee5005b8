"""Plain-text file formats.

Blank lines and lines starting with ``#`` are ignored everywhere.

* group / rack: ``n`` then ``n`` rows of ``n`` indices
* action: ``set_size |X|`` then ``set_size`` rows of ``|X|`` indices
* cocycle: ``|X| |Q|`` then ``|X|^2`` blocks of ``|Q|`` rows, block ``(x, y)``
  in lexicographic order, row ``p``, column ``q``
* bundle: ``|X| carrier`` then ``|X|^2`` blocks of ``carrier`` rows
* representation: ``|X| d k`` then ``|X|`` blocks of ``d`` rows; a scalar is
  its comma-joined ``p/q`` coefficients in powers of ``zeta_k``
* character: path of the rack file, then one ``p/q`` per orbit
"""

from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path

import numpy as np

from .cyclotomic import parse_scalar
from .errors import ValidationError
from .fingroup import FiniteGroup, group_from_table
from .rack import FiniteRack, rack_validate


class FormatError(ValidationError):
    """Malformed input file."""


def _lines(text: str) -> list[list[str]]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line.split())
    return out


def _ints(tokens: list[str], what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"{what}: expected integers, got {' '.join(tokens)!r}") from None


def _square(rows: list[list[str]], n: int, what: str) -> np.ndarray:
    if len(rows) != n:
        raise FormatError(f"{what}: expected {n} rows, got {len(rows)}")
    table = [_ints(r, what) for r in rows]
    if any(len(r) != n for r in table):
        raise FormatError(f"{what}: every row needs {n} entries")
    return np.array(table, dtype=np.int64).reshape(n, n)


def _header(lines, count: int, what: str) -> list[int]:
    if not lines:
        raise FormatError(f"{what}: empty file")
    head = _ints(lines[0], what)
    if len(head) != count or any(h < 1 for h in head):
        raise FormatError(f"{what}: header needs {count} positive integers")
    return head


def format_table(table) -> str:
    arr = np.asarray(table)
    lines = [str(arr.shape[0])]
    lines += [" ".join(str(int(v)) for v in row) for row in arr]
    return "\n".join(lines) + "\n"


def parse_group(text: str, name: str = "G") -> FiniteGroup:
    lines = _lines(text)
    (n,) = _header(lines, 1, "group file")
    return group_from_table(_square(lines[1:], n, "group file"), name=name)


def parse_rack(text: str, name: str = "X") -> FiniteRack:
    lines = _lines(text)
    (n,) = _header(lines, 1, "rack file")
    return rack_validate(_square(lines[1:], n, "rack file"), name=name)


def read_rack(path) -> FiniteRack:
    return parse_rack(Path(path).read_text(), name=Path(path).name)


def read_group(path) -> FiniteGroup:
    return parse_group(Path(path).read_text(), name=Path(path).name)


def parse_action(text: str) -> tuple[int, int, np.ndarray]:
    lines = _lines(text)
    size, n = _header(lines, 2, "action file")
    rows = lines[1:]
    if len(rows) != size:
        raise FormatError(f"action file: expected {size} rows, got {len(rows)}")
    table = [_ints(r, "action file") for r in rows]
    if any(len(r) != n for r in table):
        raise FormatError(f"action file: every row needs {n} entries")
    return size, n, np.array(table, dtype=np.int64).reshape(size, n)


def format_action(table) -> str:
    arr = np.asarray(table)
    lines = [f"{arr.shape[0]} {arr.shape[1]}"]
    lines += [" ".join(str(int(v)) for v in row) for row in arr]
    return "\n".join(lines) + "\n"


def _parse_blocks(text: str, what: str) -> tuple[int, int, np.ndarray]:
    lines = _lines(text)
    n, k = _header(lines, 2, what)
    rows = lines[1:]
    if len(rows) != n * n * k:
        raise FormatError(f"{what}: expected {n * n * k} rows, got {len(rows)}")
    table = [_ints(r, what) for r in rows]
    if any(len(r) != k for r in table):
        raise FormatError(f"{what}: every row needs {k} entries")
    return n, k, np.array(table, dtype=np.int64).reshape(n, n, k, k)


def _format_blocks(arr) -> str:
    arr = np.asarray(arr)
    n, k = arr.shape[0], arr.shape[2]
    lines = [f"{n} {k}"]
    for x in range(n):
        for y in range(n):
            lines.append(f"# block ({x}, {y})")
            lines += [" ".join(str(int(v)) for v in row) for row in arr[x, y]]
    return "\n".join(lines) + "\n"


def parse_cocycle(text: str):
    return _parse_blocks(text, "cocycle file")


def parse_bundle(text: str):
    return _parse_blocks(text, "bundle file")


format_cocycle = _format_blocks
format_bundle = _format_blocks


def parse_rep(text: str):
    """Returns ``(n, d, k, matrices)`` with CycloScalar entries."""
    lines = _lines(text)
    n, d, k = _header(lines, 3, "representation file")
    rows = lines[1:]
    if len(rows) != n * d:
        raise FormatError(f"representation file: expected {n * d} rows, got {len(rows)}")
    mats = []
    try:
        for x in range(n):
            block = rows[x * d:(x + 1) * d]
            if any(len(r) != d for r in block):
                raise FormatError(f"representation file: matrix {x} rows need {d} scalars")
            mats.append([[parse_scalar(k, t) for t in r] for r in block])
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"representation file: bad scalar ({exc})") from None
    return n, d, k, mats


def format_rep(R) -> str:
    lines = [f"{R.X.size} {R.dim} {R.conductor}"]
    for x, M in enumerate(R.matrices):
        lines.append(f"# element {x}")
        lines += [" ".join(v.format() for v in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_character(text: str, base: str | os.PathLike = "."):
    """Returns ``(rack_path, values)``; the path is resolved against ``base``."""
    lines = _lines(text)
    if not lines:
        raise FormatError("character file: empty file")
    rack_path = Path(base) / " ".join(lines[0])
    try:
        values = [Fraction(t) for row in lines[1:] for t in row]
    except (ValueError, ZeroDivisionError):
        raise FormatError("character file: values must be p/q rationals") from None
    return rack_path, values


def format_character(rack_path: str, chi) -> str:
    return rack_path + "\n" + "\n".join(f"{v.numerator}/{v.denominator}" for v in chi.values) + "\n"
