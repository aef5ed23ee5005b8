"""Permutations as tuples of images, ``p[i]`` is the image of ``i``."""

from __future__ import annotations

from math import lcm
from typing import Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """``a o b``: apply ``b`` first, then ``a``."""
    return tuple(a[i] for i in b)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_bijection(p: Sequence[int], n: int | None = None) -> bool:
    n = len(p) if n is None else n
    return len(p) == n and sorted(p) == list(range(n))


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def order(p: Sequence[int]) -> int:
    return lcm(*cycle_type(p)) if len(p) else 1


def power(p: Sequence[int], k: int) -> Perm:
    result = identity(len(p))
    base = tuple(p)
    if k < 0:
        base = inverse(base)
        k = -k
    while k:
        if k & 1:
            result = compose(base, result)
        base = compose(base, base)
        k >>= 1
    return result


def fold(perms: Sequence[Sequence[int]], word: Sequence[int], n: int) -> Perm:
    """Composite ``perms[w_k] o ... o perms[w_1]`` for ``word = (w_1..w_k)``."""
    out = identity(n)
    for w in word:
        out = compose(perms[w], out)
    return out


def format_cycles(p: Sequence[int]) -> str:
    parts = ["(" + " ".join(map(str, c)) + ")" for c in cycles(p)]
    return "".join(parts)
