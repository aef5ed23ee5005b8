"""Rack actions on finite sets, twisted dynamical systems and bundles of racks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import perms
from .constructors import SIZE_CAP, conj_quandle
from .errors import (
    BundleCompatFail,
    CocycleFail,
    CompatibilityFail,
    CyclicAxiomFail,
    EquivarianceFail,
    FiberNotRack,
    GFamilyAxiomFail,
    NotAutomorphism,
    NotBijective,
    NotHomomorphism,
    SizeCapExceeded,
    ValidationError,
)
from .fingroup import FiniteGroup
from .rack import CLOSURE_CAP, FiniteRack, _check_rack_table, extension_conflict, rack_hom_check, rack_validate
from .stability import DEFAULT_BUDGET, WordSearch, search_center

CYCLIC_BOUND = 4
COCYCLE_CAP = 2 * 10**7


def _least(mask: np.ndarray):
    bad = np.argwhere(mask)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


# Actions ----------------------------------------------------------------------------

class RackAction:
    """``table[m, x] = m . x`` for a rack ``X`` acting on ``0..set_size-1``."""

    def __init__(self, X: FiniteRack, table, bound: int = CYCLIC_BOUND):
        arr = np.array(table, dtype=np.int64)
        arr.setflags(write=False)
        self.X = X
        self.table = arr
        self.bound = bound

    @property
    def set_size(self) -> int:
        return int(self.table.shape[0])

    def __repr__(self) -> str:
        return f"RackAction({self.X.name}, set_size={self.set_size})"

    @property
    def columns(self) -> tuple[perms.Perm, ...]:
        return tuple(tuple(int(v) for v in self.table[:, x]) for x in range(self.X.size))

    def act(self, m: int, family: Sequence[int]) -> int:
        for x in family:
            m = int(self.table[m, x])
        return m

    def composite(self, family: Sequence[int]) -> perms.Perm:
        return perms.fold(self.columns, family, self.set_size)


def action_validate(X: FiniteRack, set_size: int, table, bound: int = CYCLIC_BOUND,
                    budget: int = DEFAULT_BUDGET) -> RackAction:
    """Validate bijectivity, compatibility and the cyclic axiom up to ``bound``."""
    T = np.asarray(table, dtype=np.int64)
    n = X.size
    if T.shape != (set_size, n):
        raise ValidationError(f"expected a {set_size}x{n} action table, got shape {T.shape}")
    if set_size < 1 or T.min() < 0 or T.max() >= set_size:
        raise ValidationError("action table entry out of range")
    for x in range(n):
        if len(np.unique(T[:, x])) != set_size:
            raise NotBijective(f"m -> m.{x} is not a bijection", (x,))
    # lhs[m, x, y] = (m.x).y, rhs[m, x, y] = (m.y).(x|>y)
    lhs = T[T[:, :, None], np.arange(n)[None, None, :]]
    rhs = T[T[:, None, :], X.table[None, :, :]]
    w = _least(lhs != rhs)
    if w is not None:
        m, x, y = w
        raise CompatibilityFail(f"(m.x).y != (m.y).(x|>y) at (m, x, y) = {w}", w)
    A = RackAction(X, T, bound)
    w = cyclic_axiom_witness(A, bound, budget)
    if w is not None:
        family, r, m = w
        raise CyclicAxiomFail(f"rotation by {r} of stabilizing family {family} moves m = {m}", w)
    return A


def cyclic_axiom_witness(A: RackAction, bound: int = CYCLIC_BOUND, budget: int = DEFAULT_BUDGET):
    """Least ``(family, rotation, m)`` breaking rotation invariance, or ``None``."""
    for order in range(2, bound + 1):
        res = search_center(A.X, order, max_witnesses=None, budget=budget)
        for family in res.witnesses:
            base = A.composite(family)
            for r in range(1, order):
                moved = A.composite(family[r:] + family[:r])
                if moved != base:
                    m = next(i for i in range(A.set_size) if moved[i] != base[i])
                    return family, r, m
    return None


def self_action(X: FiniteRack) -> RackAction:
    """``m . x = m |> x``."""
    return RackAction(X, X.table)


def right_multiplication_action(G: FiniteGroup) -> RackAction:
    """Conj(G) acting on G by ``m . g = m g^-1``."""
    inv = np.array(G.inverse)
    return RackAction(conj_quandle(G), G.table[:, inv])


def action_orbit(A: RackAction, family) -> frozenset[int]:
    return frozenset(A.composite(family))


def action_fibre(A: RackAction, family) -> frozenset[int]:
    c = A.composite(family)
    return frozenset(m for m in range(A.set_size) if c[m] == m)


def action_stabilizer(A: RackAction, m: int) -> frozenset[int]:
    return frozenset(int(x) for x in np.nonzero(A.table[m] == m)[0])


def is_faithful(A: RackAction) -> bool:
    return all(len(np.unique(row)) == A.X.size for row in A.table)


@dataclass(frozen=True)
class ApproximateUnits:
    order: int
    units: tuple[tuple[int, ...], ...]
    r_units: tuple[int, ...]  # t with (t, ..., t) an approximate unit
    periodic: bool  # every element is an r-unit


def approximate_units(A: RackAction, order: int, budget: int = DEFAULT_BUDGET,
                      cap: int = CLOSURE_CAP) -> ApproximateUnits:
    res = WordSearch(A.columns, A.set_size, cap).search(order, None, budget)
    ident = perms.identity(A.set_size)
    r_units = tuple(t for t in range(A.X.size) if A.composite((t,) * order) == ident)
    return ApproximateUnits(order, res.witnesses, r_units, len(r_units) == A.X.size)


def is_strong_action(A: RackAction, cap: int = CLOSURE_CAP):
    """``(True, None)`` or ``(False, (word1, word2))``.

    The two words have the same composite in the inner group of the rack but
    act differently on the set.
    """
    cols = [np.array(c) for c in A.columns]
    conflict = extension_conflict(A.X, [tuple(c) for c in cols],
                                  lambda a, b: perms.compose(a, b),
                                  perms.identity(A.set_size), cap)
    return (conflict is None), conflict


# Twisted systems --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TwistedSystem:
    """``(Q, X, d)`` with ``table[x, y, p, q] = d_{x,y}(p, q)``."""

    Q: FiniteRack
    X: FiniteRack
    action: RackAction
    table: np.ndarray


def _automorphism_failure(Q: FiniteRack, F: np.ndarray):
    """Least index of a row of maps ``F[..., p]`` that is not an automorphism of Q."""
    k = Q.size
    lead = F.shape[:-1]
    flat = F.reshape(-1, k)
    for i, f in enumerate(flat):
        if len(np.unique(f)) != k or np.any(f[Q.table] != Q.table[f[:, None], f[None, :]]):
            return tuple(int(v) for v in np.unravel_index(i, lead))
    return None


def cocycle_validate(X: FiniteRack, Q: FiniteRack, action: RackAction, table,
                     cap: int = COCYCLE_CAP) -> TwistedSystem:
    n, k = X.size, Q.size
    if n * n * k * k > cap:
        raise SizeCapExceeded(f"cocycle table {n}^2 x {k}^2 exceeds cap {cap}")
    D = np.asarray(table, dtype=np.int64)
    if D.shape != (n, n, k, k):
        raise ValidationError(f"expected cocycle shape {(n, n, k, k)}, got {D.shape}")
    if D.min() < 0 or D.max() >= k:
        raise ValidationError("cocycle entry out of range")
    if action.X != X or action.set_size != k:
        raise ValidationError("action does not match the base and fibre racks")
    w = _automorphism_failure(Q, action.table.T)
    if w is not None:
        raise NotAutomorphism(f"action of x = {w[0]} is not an automorphism of Q", w)
    # (i) p -> d_{x,y}(p, q) is an automorphism; maps indexed [x, y, q, p]
    w = _automorphism_failure(Q, np.transpose(D, (0, 1, 3, 2)))
    if w is not None:
        raise NotAutomorphism(f"p -> d_{{{w[0]},{w[1]}}}(p, {w[2]}) is not an automorphism", w)
    T = action.table
    # (ii) d_{x,y}(p.t, q) = d_{x,y}(p, q).(t |> y); axes [x, y, p, q, t]
    xs = np.arange(n)
    lhs = D[:, :, T[:, :, None], np.arange(k)[None, None, :]]  # [x, y, p, t, q]
    lhs = np.transpose(lhs, (0, 1, 2, 4, 3))
    rhs = T[D[:, :, :, :, None], X.table[xs[None, None, None, None, :], xs[None, :, None, None, None]]]
    w = _least(lhs != rhs)
    if w is not None:
        raise EquivarianceFail(f"equivariance fails at (x, y, p, q, t) = {w}", w)
    # (iii) cocycle condition, one x at a time; axes [y, z, p, q, r]
    P = np.arange(k)
    for x in range(n):
        y = xs[:, None, None, None, None]
        z = xs[None, :, None, None, None]
        p = P[None, None, :, None, None]
        q = P[None, None, None, :, None]
        r = P[None, None, None, None, :]
        xy = X.table[x, y]
        lhs = D[xy, z, D[x, y, p, q], r]
        rhs = D[X.table[x, z], X.table[y, z], D[x, z, p, r], D[y, z, q, r]]
        w = _least(lhs != rhs)
        if w is not None:
            w = (x,) + w
            raise CocycleFail(f"cocycle condition fails at (x, y, z, p, q, r) = {w}", w)
    D = D.copy()
    D.setflags(write=False)
    return TwistedSystem(Q, X, action, D)


def canonical_cocycle(action: RackAction) -> np.ndarray:
    """``d_{x,y}(p, q) = p . y``."""
    n, k = action.X.size, action.set_size
    T = action.table
    return np.broadcast_to(T.T[None, :, :, None], (n, n, k, k)).copy()


def trivial_cocycle_system(X: FiniteRack) -> TwistedSystem:
    """One-point fibre; the cross-product is a copy of X."""
    Q = rack_validate([[0]], name="point")
    A = RackAction(X, np.zeros((1, X.size), dtype=np.int64))
    return cocycle_validate(X, Q, A, np.zeros((X.size, X.size, 1, 1), dtype=np.int64))


def cross_product(T: TwistedSystem, cap: int = SIZE_CAP) -> FiniteRack:
    """``Q x X`` with ``(p, x) |> (q, y) = (d_{x,y}(p, q), x |> y)``; index ``p*|X| + x``."""
    n, k = T.X.size, T.Q.size
    if n * k > cap:
        raise SizeCapExceeded(f"cross-product size {n * k} exceeds cap {cap}")
    p = np.repeat(np.arange(k), n)
    x = np.tile(np.arange(n), k)
    first = T.table[x[:, None], x[None, :], p[:, None], p[None, :]]
    second = T.X.table[x[:, None], x[None, :]]
    labels = [(int(a), int(b)) for a, b in zip(p, x)]
    return rack_validate(first * n + second, labels=labels,
                         name=f"{T.Q.name} x| {T.X.name}")


@dataclass(frozen=True)
class CrossStability:
    order: int
    count: int  # families found through the fibrewise criterion
    witnesses: tuple[tuple[int, ...], ...]  # as cross-product indices
    direct_count: int

    @property
    def stable(self) -> bool:
        return self.count > 0

    @property
    def agree(self) -> bool:
        return self.count == self.direct_count


def _fold_fibrewise(T: TwistedSystem, t: Sequence[int]) -> np.ndarray:
    """Boolean array over xi in Q^n: is the nested composite the identity for every x?

    The composite is folded literally: starting from ``p``, step ``i`` applies
    ``d_{x |> (t_1..t_{i-1}), t_i}(-, xi_i)``.
    """
    n, k = T.X.size, T.Q.size
    D = T.table
    # state[c, x, p] for every choice c of (xi_1..xi_i), lexicographic in c
    state = np.broadcast_to(np.arange(k)[None, None, :], (1, n, k))
    xcur = np.arange(n)
    for ti in t:
        # new[c, xi, x, p] = D[xcur[x], ti, state[c, x, p], xi]
        new = D[xcur[None, None, :, None], ti, state[:, None, :, :],
                np.arange(k)[None, :, None, None]]
        state = new.reshape(-1, n, k)
        xcur = T.X.table[xcur, ti]
    return np.all(state == np.arange(k)[None, None, :], axis=(1, 2))


def crossproduct_stability_check(T: TwistedSystem, order: int, max_witnesses: int | None = 10,
                                 budget: int = DEFAULT_BUDGET) -> CrossStability:
    """Families ``((xi_i, t_i))`` with ``t`` stabilizing X and identity fibre composite.

    The count is cross-checked against a direct search on the cross-product.
    """
    n, k = T.X.size, T.Q.size
    base = search_center(T.X, order, max_witnesses=None, budget=budget)
    found: list[tuple[int, ...]] = []
    count = 0
    for t in base.witnesses:
        ok = _fold_fibrewise(T, t)
        count += int(ok.sum())
        for c in np.nonzero(ok)[0]:
            xi = np.unravel_index(int(c), (k,) * order)
            found.append(tuple(int(a) * n + b for a, b in zip(xi, t)))
    found.sort()
    if max_witnesses is not None:
        found = found[:max_witnesses]
    direct = search_center(cross_product(T), order, max_witnesses=0, budget=budget)
    return CrossStability(order, count, tuple(found), direct.count)


def approximate_unit_among_center(A: RackAction, order: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Is some stabilizing family of the acting rack an approximate unit?"""
    ident = perms.identity(A.set_size)
    res = search_center(A.X, order, max_witnesses=None, budget=budget)
    return any(A.composite(t) == ident for t in res.witnesses)


def fibre_distributivity_witness(T: TwistedSystem):
    """Least ``(x, y, p, q, r)`` where ``d_{x,y}`` is not self-distributive, or ``None``."""
    D = T.table
    k = T.Q.size
    P = np.arange(k)
    p, q, r = P[:, None, None], P[None, :, None], P[None, None, :]
    for x in range(T.X.size):
        for y in range(T.X.size):
            d = D[x, y]
            w = _least(d[d[p, q], r] != d[d[p, r], d[q, r]])
            if w is not None:
                return (x, y) + w
    return None


# Bundles of racks -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BundleOfRacks:
    """``tables[x, y, a, b] = a *_x^y b`` on the carrier ``0..carrier-1``."""

    X: FiniteRack
    carrier: int
    tables: np.ndarray


def bundle_validate(X: FiniteRack, carrier: int, tables) -> BundleOfRacks:
    n = X.size
    S = np.asarray(tables, dtype=np.int64)
    if S.shape != (n, n, carrier, carrier):
        raise ValidationError(f"expected bundle shape {(n, n, carrier, carrier)}, got {S.shape}")
    if S.min() < 0 or S.max() >= carrier:
        raise ValidationError("bundle entry out of range")
    for x in range(n):
        for y in range(n):
            try:
                _check_rack_table(S[x, y])
            except ValidationError as exc:
                raise FiberNotRack(f"*_{x}^{y} is not a rack: {exc}", (x, y) + tuple(exc.witness)) from None
    A = np.arange(carrier)
    a, b, c = A[:, None, None], A[None, :, None], A[None, None, :]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                xy, xz, yz = X.table[x, y], X.table[x, z], X.table[y, z]
                lhs = S[xy, z][S[x, y][a, b], c]
                rhs = S[xz, yz][S[x, z][a, c], S[y, z][b, c]]
                w = _least(lhs != rhs)
                if w is not None:
                    w = (x, y, z) + w
                    raise BundleCompatFail(f"bundle compatibility fails at (x, y, z, a, b, c) = {w}", w)
    S = S.copy()
    S.setflags(write=False)
    return BundleOfRacks(X, carrier, S)


def bundle_from_cocycle(T: TwistedSystem) -> np.ndarray:
    """Candidate tables ``*_x^y = d_{x,y}``."""
    return np.array(T.table)


def bundle_pullback(B: BundleOfRacks, Y: FiniteRack, f: Sequence[int]) -> BundleOfRacks:
    ok, w = rack_hom_check(Y, B.X, f)
    if not ok:
        raise NotHomomorphism(f"f is not a rack morphism at {w}", w)
    f = np.asarray(f, dtype=np.int64)
    return bundle_validate(Y, B.carrier, B.tables[f[:, None], f[None, :]])


def gfamily_witness(G: FiniteGroup, ops):
    """First failing G-family axiom as ``(name, witness)``, or ``None``.

    Axioms: ``x |>^g x = x``; ``x |>^e y = x``; ``x |>^{gh} y = (x |>^g y) |>^h y``;
    ``(x |>^g y) |>^h z = (x |>^h z) |>^{h^-1 g h} (y |>^h z)``.
    """
    O = np.asarray(ops, dtype=np.int64)
    order = G.order
    if O.ndim != 3 or O.shape[0] != order or O.shape[1] != O.shape[2]:
        raise ValidationError("ops must have shape (|G|, k, k)")
    k = O.shape[1]
    if O.min() < 0 or O.max() >= k:
        raise ValidationError("G-family entry out of range")
    P = np.arange(k)
    for g in range(order):
        bad = np.nonzero(O[g][P, P] != P)[0]
        if len(bad):
            return "idempotence", (g, int(bad[0]))
    w = _least(O[G.identity] != P[:, None])
    if w is not None:
        return "identity", w
    x, y = P[:, None], P[None, :]
    for g in range(order):
        for h in range(order):
            w = _least(O[G.mul(g, h)] != O[h][O[g], y])
            if w is not None:
                return "multiplicativity", (g, h) + w
    x, y, z = P[:, None, None], P[None, :, None], P[None, None, :]
    for g in range(order):
        for h in range(order):
            c = G.product((G.inverse[h], g, h))
            w = _least(O[h][O[g][x, y], z] != O[c][O[h][x, z], O[h][y, z]])
            if w is not None:
                return "distributivity", (g, h) + w
    return None


def gfamily_to_bundle(G: FiniteGroup, ops) -> BundleOfRacks:
    """Conj(G)-bundle with ``*_g^h = |>^{h^-1}``.

    With ``g |> h = h g h^-1`` on Conj(G) the inverse index is what makes the
    bundle compatibility match the G-family distributivity axiom.
    """
    w = gfamily_witness(G, ops)
    if w is not None:
        name, wit = w
        raise GFamilyAxiomFail(f"G-family axiom '{name}' fails at {wit}", (name,) + tuple(wit))
    O = np.asarray(ops, dtype=np.int64)
    inv = np.array(G.inverse)
    tables = np.broadcast_to(O[inv][None, :, :, :], (G.order,) + O.shape)
    return bundle_validate(conj_quandle(G), O.shape[1], tables)
