"""Finite racks stored as operation tables.

``table[x, y] = x |> y``.  Right translations ``R_y: x -> x |> y`` are the
columns of the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import perms
from .errors import ClosureCapExceeded, NotBijectiveColumn, NotSelfDistributive, ValidationError

CLOSURE_CAP = 10**6
# elements * points held during a closure; bounds memory to a few hundred MB
CLOSURE_MEMORY = 4 * 10**7


def _first_sd_violation(table: np.ndarray):
    """Lexicographically least (x, y, z) with (x|>y)|>z != (x|>z)|>(y|>z)."""
    n = table.shape[0]
    for x in range(n):
        row = table[x]
        lhs = table[row][:, :]            # [y, z] -> (x|>y)|>z
        rhs = table[row[None, :], table]  # [y, z] -> (x|>z)|>(y|>z)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return (x, int(bad[0][0]), int(bad[0][1]))
    return None


def _first_bad_column(table: np.ndarray):
    n = table.shape[0]
    for y in range(n):
        if len(np.unique(table[:, y])) != n:
            return y
    return None


class FiniteRack:
    """A validated finite rack on ``0..size-1``.

    Use :func:`rack_validate` to build one from an arbitrary table.
    """

    def __init__(self, table, *, labels: Sequence | None = None, name: str = "X",
                 _validated: bool = False):
        arr = np.array(table, dtype=np.int64)
        arr.setflags(write=False)
        self.table = arr
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        if not _validated:
            _check_rack_table(arr)

    @property
    def size(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"FiniteRack(name={self.name!r}, size={self.size})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteRack) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def op(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def act(self, x: int, family: Sequence[int]) -> int:
        """``x |> (u_i)``: fold the family left to right."""
        for u in family:
            x = int(self.table[x, u])
        return x

    def label(self, x: int) -> str:
        if self.labels is None:
            return str(x)
        return str(self.labels[x])

    @cached_property
    def translations(self) -> tuple[perms.Perm, ...]:
        return tuple(tuple(int(v) for v in self.table[:, y]) for y in range(self.size))

    @cached_property
    def inverse_translations(self) -> tuple[perms.Perm, ...]:
        return tuple(perms.inverse(p) for p in self.translations)

    @cached_property
    def is_quandle(self) -> bool:
        return bool(np.all(np.diagonal(self.table) == np.arange(self.size)))

    @cached_property
    def is_involutive(self) -> bool:
        t = self.table
        return bool(np.all(t[t, np.arange(self.size)[None, :]] == np.arange(self.size)[:, None]))

    @cached_property
    def is_trivial(self) -> bool:
        return bool(np.all(self.table == np.arange(self.size)[:, None]))

    @cached_property
    def orbit_partition(self) -> tuple[tuple[int, ...], ...]:
        return orbits(self)

    @property
    def is_connected(self) -> bool:
        return len(self.orbit_partition) == 1

    @cached_property
    def orbit_index(self) -> tuple[int, ...]:
        idx = [0] * self.size
        for k, block in enumerate(self.orbit_partition):
            for x in block:
                idx[x] = k
        return tuple(idx)


def _check_rack_table(arr: np.ndarray) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValidationError("rack table must be a non-empty square array")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise ValidationError("rack table entry out of range")
    y = _first_bad_column(arr)
    if y is not None:
        raise NotBijectiveColumn(f"right translation R_{y} is not a bijection", (y,))
    w = _first_sd_violation(arr)
    if w is not None:
        x, y, z = w
        raise NotSelfDistributive(
            f"self-distributivity fails at (x, y, z) = ({x}, {y}, {z})", w)


def rack_validate(table, size: int | None = None, *, labels=None, name: str = "X") -> FiniteRack:
    arr = np.asarray(table, dtype=np.int64)
    if size is not None and arr.shape != (size, size):
        raise ValidationError(f"expected a {size}x{size} table, got shape {arr.shape}")
    return FiniteRack(arr, labels=labels, name=name)


def right_translation(X: FiniteRack, y: int) -> perms.Perm:
    return X.translations[y]


@dataclass(frozen=True)
class InnerGroup:
    """Permutation group generated by all right translations.

    ``elements[0]`` is the identity; elements appear in breadth-first discovery
    order, expanding generators in lexicographic order of their permutation.
    ``words[i]`` is a family ``(u_1..u_k)`` of rack elements whose composite
    ``R_{u_k} o ... o R_{u_1}`` equals ``elements[i]``.
    """

    elements: np.ndarray  # order x size, row i is a permutation
    words: tuple[tuple[int, ...], ...]
    step: np.ndarray  # step[g, x] = index of R_x o elements[g]

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def perm(self, i: int) -> perms.Perm:
        return tuple(int(v) for v in self.elements[i])

    @property
    def generator_index(self) -> tuple[int, ...]:
        """Index of R_x for each rack element x."""
        return tuple(int(v) for v in self.step[0])

    def index(self, p) -> int:
        return self._lookup[np.asarray(p, dtype=self.elements.dtype).tobytes()]

    @cached_property
    def _lookup(self) -> dict:
        return {row.tobytes(): i for i, row in enumerate(self.elements)}


def generator_order(translations: Sequence[perms.Perm]) -> list[int]:
    """Rack elements sorted by their translation (lexicographic), ties by index."""
    return sorted(range(len(translations)), key=lambda x: (translations[x], x))


def closure(gens: Sequence[perms.Perm], n: int, cap: int = CLOSURE_CAP):
    """BFS closure of ``gens`` under left multiplication.

    Returns ``(elements, words, step)``: ``elements`` is an ``order x n``
    array, ``step[g, x]`` is the index of ``gens[x] o elements[g]``.
    """
    letters = len(gens)
    order = generator_order(gens)
    cap = min(cap, max(1, CLOSURE_MEMORY // max(1, n, letters)))
    dtype = np.int16 if n < 2**15 else np.int32
    # equal translations share one generator; letters are remapped afterwards
    distinct: list[int] = []
    rep_of: dict[tuple, int] = {}
    letter_rep = [0] * letters
    for x in order:
        key = tuple(gens[x])
        if key not in rep_of:
            rep_of[key] = len(distinct)
            distinct.append(x)
        letter_rep[x] = rep_of[key]
    Gs = np.array([gens[x] for x in distinct], dtype=dtype).reshape(len(distinct), n)
    ident = np.arange(n, dtype=dtype)
    elements = [ident]
    words: list[tuple[int, ...]] = [()]
    lookup = {ident.tobytes(): 0}
    dstep = np.zeros((min(cap, 1024), len(distinct)), dtype=np.int64)
    i = 0
    while i < len(elements):
        if i >= dstep.shape[0]:
            dstep = np.concatenate([dstep, np.zeros_like(dstep)])
        images = Gs[:, elements[i]]  # row k: gens[distinct[k]] o elements[i]
        for k, x in enumerate(distinct):
            key = images[k].tobytes()
            j = lookup.get(key)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise ClosureCapExceeded(f"group generated by translations exceeds cap {cap}")
                lookup[key] = j
                elements.append(images[k].copy())
                words.append(words[i] + (x,))
            dstep[i, k] = j
        i += 1
    step = dstep[:len(elements)][:, letter_rep]
    return np.array(elements, dtype=np.int32).reshape(len(elements), n), tuple(words), step


def inner_group(X: FiniteRack, cap: int = CLOSURE_CAP) -> InnerGroup:
    key = ("inner", cap)
    cache = X.__dict__.setdefault("_inner_cache", {})
    if key in cache:
        return cache[key]
    elements, words, step = closure(X.translations, X.size, cap)
    elements.setflags(write=False)
    step.setflags(write=False)
    result = InnerGroup(elements, words, step)
    cache[key] = result
    return result


def orbits(X: FiniteRack) -> tuple[tuple[int, ...], ...]:
    """Orbits of the inner group, each sorted, blocks ordered by least element."""
    n = X.size
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    t = X.table
    for x in range(n):
        for y in range(n):
            a, b = find(x), find(int(t[x, y]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for x in range(n):
        blocks.setdefault(find(x), []).append(x)
    return tuple(tuple(b) for _, b in sorted(blocks.items()))


def rack_hom_check(X: FiniteRack, Y: FiniteRack, f: Sequence[int]):
    """Return ``(True, None)`` or ``(False, (x, y))`` for the least failing pair."""
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (X.size,) or f.min() < 0 or f.max() >= Y.size:
        raise ValidationError("map has wrong length or values outside the target")
    lhs = f[X.table]
    rhs = Y.table[f[:, None], f[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return False, (int(bad[0][0]), int(bad[0][1]))
    return True, None


def subrack_closure(X: FiniteRack, S) -> frozenset[int]:
    """Smallest subset containing ``S`` closed under |> and inverse translations."""
    current = set(int(s) for s in S)
    if not current:
        raise ValueError("S must be non-empty")
    inv = X.inverse_translations
    changed = True
    while changed:
        changed = False
        members = sorted(current)
        for a in members:
            for b in members:
                for c in (int(X.table[a, b]), inv[b][a]):
                    if c not in current:
                        current.add(c)
                        changed = True
    return frozenset(current)


def relabel(X: FiniteRack, sigma: Sequence[int]) -> FiniteRack:
    """Isomorphic copy where element ``x`` is renamed ``sigma[x]``."""
    sigma = np.asarray(sigma, dtype=np.int64)
    inv = np.argsort(sigma)
    # new[a, b] = sigma[old[inv a, inv b]]
    table = sigma[X.table[inv[:, None], inv[None, :]]]
    return FiniteRack(table, name=f"{X.name}'", _validated=True)


def trivial_table(n: int) -> np.ndarray:
    return np.repeat(np.arange(n)[:, None], n, axis=1)


def extension_conflict(X: FiniteRack, images, mul, one, cap: int = CLOSURE_CAP):
    """Check that ``R_x -> images[x]`` extends to a map on the inner group.

    Values are propagated along the closure graph: the value at ``R_x o g`` is
    ``mul(images[x], value(g))``.  Returns ``None`` when every edge agrees,
    otherwise two positive words with equal composite in the inner group
    whose images differ.
    """
    inner = inner_group(X, cap)
    vals = [None] * inner.order
    paths: list = [None] * inner.order
    vals[0], paths[0] = one, ()
    step = inner.step
    for g in range(inner.order):
        for x in range(X.size):
            h = int(step[g, x])
            v = mul(images[x], vals[g])
            if vals[h] is None:
                vals[h], paths[h] = v, paths[g] + (x,)
            elif v != vals[h]:
                return paths[g] + (x,), paths[h]
    return None


def inner_relations(X: FiniteRack, cap: int = CLOSURE_CAP) -> np.ndarray:
    """Letter-count differences of word pairs with equal composite.

    Every closure edge ``g --x--> h`` yields the relation
    ``count(path(g) + x) - count(path(h))``; a map from X into an abelian
    group extends over the inner group iff it kills every row.
    """
    inner = inner_group(X, cap)
    n = X.size
    counts = np.zeros((inner.order, n), dtype=np.int64)
    seen = np.zeros(inner.order, dtype=bool)
    seen[0] = True
    rows = set()
    for g in range(inner.order):
        for x in range(n):
            h = int(inner.step[g, x])
            v = counts[g].copy()
            v[x] += 1
            if not seen[h]:
                seen[h] = True
                counts[h] = v
            else:
                d = v - counts[h]
                if d.any():
                    rows.add(tuple(int(a) for a in d))
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(sorted(rows), dtype=np.int64)
