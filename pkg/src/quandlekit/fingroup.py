"""Finite groups given by explicit Cayley tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import perms
from .errors import (
    DoNotGenerate,
    GroupAxiomError,
    NotAbelian,
    NotBijective,
    NotHomomorphism,
    SizeCapExceeded,
)

MAX_GROUP_ORDER = 5040


def _frozen(table) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group on ``0..order-1`` with ``table[a, b] = a*b``.

    Build instances through :func:`group_from_table` or the named
    constructors; the raw constructor does not validate.
    """

    table: np.ndarray
    identity: int
    inverse: tuple[int, ...]
    labels: tuple | None = None
    name: str = "G"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def product(self, elements) -> int:
        out = self.identity
        for g in elements:
            out = int(self.table[out, g])
        return out

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out = self.identity
        for _ in range(k):
            out = int(self.table[out, a])
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*(self.element_order(a) for a in range(self.order)))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def label(self, a: int) -> str:
        if self.labels is None:
            return str(a)
        return str(self.labels[a])


def group_from_table(table, *, labels=None, name: str = "G") -> FiniteGroup:
    """Validate a Cayley table; identity and inverses are derived."""
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise GroupAxiomError("Cayley table must be a non-empty square array")
    n = arr.shape[0]
    if n > MAX_GROUP_ORDER:
        raise SizeCapExceeded(f"group order {n} exceeds cap {MAX_GROUP_ORDER}")
    if arr.min() < 0 or arr.max() >= n:
        raise GroupAxiomError("Cayley table entry out of range")
    ident = None
    rng = np.arange(n)
    for e in range(n):
        if np.array_equal(arr[e], rng) and np.array_equal(arr[:, e], rng):
            ident = e
            break
    if ident is None:
        raise GroupAxiomError("no two-sided identity")
    inverse = []
    for a in range(n):
        hits = np.nonzero(arr[a] == ident)[0]
        if len(hits) == 0 or arr[hits[0], a] != ident:
            raise GroupAxiomError(f"element {a} has no two-sided inverse", (a,))
        inverse.append(int(hits[0]))
    for a in range(n):
        # (a*b)*c == a*(b*c) for all b, c
        lhs = arr[arr[a]]
        rhs = arr[a][arr]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = map(int, bad[0])
            raise GroupAxiomError(f"associativity fails at ({a}, {b}, {c})", (a, b, c))
    return FiniteGroup(_frozen(arr), ident, tuple(inverse), labels, name)


def group_cyclic(m: int) -> FiniteGroup:
    if m < 1:
        raise ValueError("m must be positive")
    if m > MAX_GROUP_ORDER:
        raise SizeCapExceeded(f"group order {m} exceeds cap {MAX_GROUP_ORDER}")
    i = np.arange(m)
    return group_from_table((i[:, None] + i[None, :]) % m, name=f"Z{m}")


def group_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Direct product; element ``(g, h)`` has index ``g * |H| + h``."""
    n, k = G.order, H.order
    if n * k > MAX_GROUP_ORDER:
        raise SizeCapExceeded(f"group order {n * k} exceeds cap {MAX_GROUP_ORDER}")
    table = (G.table[:, None, :, None] * k + H.table[None, :, None, :]).reshape(n * k, n * k)
    labels = tuple((G.labels[g] if G.labels else g, H.labels[h] if H.labels else h)
                   for g in range(n) for h in range(k))
    return group_from_table(table, labels=labels, name=f"{G.name}x{H.name}")


def group_symmetric(m: int) -> FiniteGroup:
    """S_m on the permutation words of ``range(m)`` in lexicographic order.

    The product is composition with the right factor applied first.
    """
    if not 1 <= m <= 5:
        raise SizeCapExceeded("group_symmetric supports 1 <= m <= 5")
    words = list(itertools.permutations(range(m)))
    index = {w: i for i, w in enumerate(words)}
    table = [[index[perms.compose(a, b)] for b in words] for a in words]
    return group_from_table(table, labels=tuple(words), name=f"S{m}")


def elementary_abelian_2(rank: int) -> FiniteGroup:
    G = group_cyclic(2)
    out = G
    for _ in range(rank - 1):
        out = group_product(out, G)
    if rank == 0:
        out = group_cyclic(1)
    out = FiniteGroup(out.table, out.identity, out.inverse, out.labels, f"Z2^{rank}")
    return out


def group_center(G: FiniteGroup) -> frozenset[int]:
    t = G.table
    return frozenset(int(a) for a in range(G.order) if np.array_equal(t[a], t[:, a]))


def generated_subgroup(G: FiniteGroup, gens) -> frozenset[int]:
    seen = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = int(G.table[a, g])
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def check_generates(G: FiniteGroup, gens) -> None:
    sub = generated_subgroup(G, gens)
    if len(sub) != G.order:
        missing = min(set(range(G.order)) - sub)
        raise DoNotGenerate(f"generators miss element {missing}", (missing,))


def require_abelian(G: FiniteGroup) -> None:
    if not G.is_abelian:
        bad = np.argwhere(G.table != G.table.T)[0]
        raise NotAbelian(f"{G.name} is not abelian: {bad[0]}*{bad[1]} != {bad[1]}*{bad[0]}",
                         tuple(map(int, bad)))


@dataclass(frozen=True)
class GroupAutomorphism:
    group: FiniteGroup = field(repr=False)
    perm: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.perm[a]

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """``self o other``."""
        return GroupAutomorphism(self.group, perms.compose(self.perm, other.perm))

    def power(self, k: int) -> "GroupAutomorphism":
        return GroupAutomorphism(self.group, perms.power(self.perm, k))

    @property
    def order(self) -> int:
        return perms.order(self.perm)

    def is_identity(self) -> bool:
        return self.perm == perms.identity(len(self.perm))


def automorphism_validate(G: FiniteGroup, perm) -> GroupAutomorphism:
    perm = tuple(int(p) for p in perm)
    if not perms.is_bijection(perm, G.order):
        raise NotBijective("map is not a bijection of the group")
    p = np.array(perm)
    # f(a*b) vs f(a)*f(b)
    lhs = p[G.table]
    rhs = G.table[p[:, None], p[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b = map(int, bad[0])
        raise NotHomomorphism(f"f({a}*{b}) != f({a})*f({b})", (a, b))
    return GroupAutomorphism(G, perm)


def identity_automorphism(G: FiniteGroup) -> GroupAutomorphism:
    return GroupAutomorphism(G, perms.identity(G.order))


def inner_automorphism(G: FiniteGroup, u: int) -> GroupAutomorphism:
    """``g -> u g u^{-1}``."""
    ui = G.inverse[u]
    return GroupAutomorphism(G, tuple(int(G.table[G.table[u, g], ui]) for g in range(G.order)))


def negation_automorphism(G: FiniteGroup) -> GroupAutomorphism:
    require_abelian(G)
    return GroupAutomorphism(G, G.inverse)


def power_automorphism(G: FiniteGroup, k: int) -> GroupAutomorphism:
    """``g -> g^k`` on an abelian group; validated."""
    require_abelian(G)
    return automorphism_validate(G, [G.power(g, k) for g in range(G.order)])
