"""Stabilizing families, n-centers and the stability theorem checks.

A family ``(u_1..u_n)`` stabilizes a rack when ``R_{u_n} o ... o R_{u_1}`` is
the identity.  Counting is done by dynamic programming over the inner group:
``count[r][g]`` is the number of words of length ``r`` that carry the group
element ``g`` back to the identity.  Witnesses come from a depth-first walk
that only enters branches with a positive count, so every visited prefix
extends to a solution.  If the inner group is too large to enumerate the
search falls back to plain backtracking under a node budget.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import perms
from .constructors import (
    AlexanderModule,
    alexander_quandle,
    conj_phi_quandle,
    conj_quandle,
    core_quandle,
    gphi_quandle,
    pivot_elements,
    _det,
)
from .errors import BudgetExceeded, ClosureCapExceeded
from .fingroup import FiniteGroup, GroupAutomorphism, group_center, require_abelian
from .rack import CLOSURE_CAP, FiniteRack, closure

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class CenterResult:
    """Stabilizing families of one order."""

    order: int
    count: int
    exact: bool
    witnesses: tuple[tuple[int, ...], ...]

    @property
    def nonempty(self) -> bool:
        return self.count > 0


@dataclass(frozen=True)
class StabilityReport:
    entries: tuple[CenterResult, ...]

    @property
    def least_stable_order(self) -> int | None:
        for e in self.entries:
            if e.count > 0:
                return e.order
        return None

    def format(self) -> str:
        lines = ["order  count  status  witnesses"]
        for e in self.entries:
            status = "exact" if e.exact else "partial"
            wit = " ".join("(" + ",".join(map(str, w)) + ")" for w in e.witnesses)
            lines.append(f"{e.order}  {e.count}  {status}  {wit}".rstrip())
        least = self.least_stable_order
        lines.append(f"least_stable_order: {least if least is not None else 'none-in-range'}")
        return "\n".join(lines)


class WordSearch:
    """Identity words over a list of generator permutations of ``n_points``.

    ``gens[x]`` is the permutation attached to letter ``x``; a word
    ``(w_1..w_k)`` is an identity word when ``gens[w_k] o ... o gens[w_1]``
    is the identity.
    """

    def __init__(self, gens, n_points: int, cap: int = CLOSURE_CAP):
        self.gens = tuple(tuple(int(v) for v in g) for g in gens)
        self.n_points = n_points
        self.letters = len(self.gens)
        try:
            self.elements, _, self.step = closure(self.gens, n_points, cap)
        except ClosureCapExceeded:
            self.elements = None
            self.step = None
        self._counts: list[np.ndarray] = []

    @property
    def closed(self) -> bool:
        return self.step is not None

    def _count_table(self, r: int) -> np.ndarray:
        if not self._counts:
            c0 = np.zeros(len(self.elements), dtype=object)
            c0[0] = 1
            self._counts.append(c0)
        while len(self._counts) <= r:
            prev = self._counts[-1]
            self._counts.append(prev[self.step].sum(axis=1))
        return self._counts[r]

    def count(self, length: int) -> int:
        return int(self._count_table(length)[0])

    def witnesses(self, length: int, limit: int | None):
        """Identity words of ``length`` in lexicographic order."""
        tables = [self._count_table(r) for r in range(length + 1)]
        out: list[tuple[int, ...]] = []
        word: list[int] = []

        def walk(g: int, rem: int) -> bool:
            if rem == 0:
                out.append(tuple(word))
                return limit is not None and len(out) >= limit
            nxt = tables[rem - 1]
            row = self.step[g]
            for x in range(self.letters):
                h = row[x]
                if nxt[h]:
                    word.append(x)
                    stop = walk(h, rem - 1)
                    word.pop()
                    if stop:
                        return True
            return False

        if limit != 0 and tables[length][0]:
            walk(0, length)
        return tuple(out)

    def search(self, length: int, max_witnesses: int | None = 10,
               budget: int = DEFAULT_BUDGET, jobs: int = 1) -> CenterResult:
        if length < 1:
            raise ValueError("order must be at least 1")
        if self.closed:
            return CenterResult(length, self.count(length), True,
                                self.witnesses(length, max_witnesses))
        return _backtrack(self.gens, self.n_points, length, max_witnesses, budget, jobs)


def _backtrack_branch(args):
    gens, n_points, length, first, limit, budget = args
    ident = perms.identity(n_points)
    count = 0
    nodes = 0
    found: list[tuple[int, ...]] = []
    stack = [(perms.compose(gens[first], ident), (first,))]
    letters = len(gens)
    while stack:
        g, word = stack.pop()
        nodes += 1
        if nodes > budget:
            return count, found, False
        if len(word) == length:
            if g == ident:
                count += 1
                if limit is None or len(found) < limit:
                    found.append(word)
            continue
        # push in reverse so the smallest letter is expanded first
        for x in range(letters - 1, -1, -1):
            stack.append((perms.compose(gens[x], g), word + (x,)))
    return count, found, True


def _backtrack(gens, n_points, length, limit, budget, jobs) -> CenterResult:
    letters = len(gens)
    per_branch = max(1, budget // max(1, letters))
    tasks = [(gens, n_points, length, x, limit, per_branch) for x in range(letters)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_backtrack_branch, tasks))
    else:
        results = [_backtrack_branch(t) for t in tasks]
    count = sum(r[0] for r in results)
    exact = all(r[2] for r in results)
    found = [w for r in results for w in r[1]]
    found.sort()
    if limit is not None:
        found = found[:limit]
    result = CenterResult(length, count, exact, tuple(found))
    if not exact:
        raise BudgetExceeded(f"search budget {budget} exhausted at order {length}", result)
    return result


def _engine(X: FiniteRack, cap: int = CLOSURE_CAP) -> WordSearch:
    cache = X.__dict__.setdefault("_word_search", {})
    if cap not in cache:
        cache[cap] = WordSearch(X.translations, X.size, cap)
    return cache[cap]


def is_stabilizing(X: FiniteRack, family) -> bool:
    return all(X.act(x, family) == x for x in range(X.size))


def search_center(X: FiniteRack, n: int, max_witnesses: int | None = 10,
                  budget: int = DEFAULT_BUDGET, jobs: int = 1,
                  closure_cap: int = CLOSURE_CAP) -> CenterResult:
    """Exact size of S^n(X) with the lexicographically first witnesses."""
    return _engine(X, closure_cap).search(n, max_witnesses, budget, jobs)


def stability_report(X: FiniteRack, orders, max_witnesses: int = 5, **kw) -> StabilityReport:
    return StabilityReport(tuple(search_center(X, n, max_witnesses, **kw) for n in orders))


def rotations(family):
    family = tuple(family)
    return [family[i:] + family[:i] for i in range(len(family))]


def cyclic_invariance_check(X: FiniteRack, family) -> bool:
    return all(is_stabilizing(X, r) for r in rotations(family))


def rotation_classes(families) -> list[tuple[int, ...]]:
    """Canonical (least) representative of each cyclic-rotation class."""
    reps = sorted({min(rotations(f)) for f in families})
    return reps


# Alexander quandles --------------------------------------------------------------

@dataclass(frozen=True)
class AlexanderCenter:
    order: int
    stable: bool
    exact_order_stable: bool
    gamma_order: int
    f_solution_count: int
    true_center_count: int

    @property
    def divergent(self) -> bool:
        return self.stable and self.f_solution_count != self.true_center_count


def matrix_order_mod(M: AlexanderModule, limit: int = 10**6) -> int:
    P = M.gamma
    k = 1
    while not M.is_identity(P):
        P = tuple(tuple(v % M.modulus for v in row) for row in
                  _mul(P, M.gamma, M.modulus))
        k += 1
        if k > limit:
            raise ValueError("gamma order exceeds limit")
    return k


def _mul(A, B, m):
    d = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(d)) % m for j in range(d)] for i in range(d)]


def kernel_size(M: AlexanderModule, A) -> int:
    """Number of row vectors ``v`` with ``v A = 0`` mod m."""
    return sum(1 for v in M.vectors() if not any(M.act(v, A)))


def f_gamma(M: AlexanderModule, family) -> tuple[int, ...]:
    """``sum_i x_i gamma^{n-i}``."""
    n = len(family)
    total = (0,) * M.rank
    for i, x in enumerate(family, start=1):
        term = M.act(x, M.power(n - i))
        total = tuple((a + b) % M.modulus for a, b in zip(total, term))
    return total


def alexander_center_solver(M: AlexanderModule, n: int) -> AlexanderCenter:
    """Compare the F_gamma solution count with the true n-center size.

    The translation composite of a family ``u`` is
    ``x -> x gamma^n + F_gamma(u)(1 - gamma)``, so ``u`` stabilizes iff
    ``gamma^n = 1`` and ``F_gamma(u)`` lies in the kernel of ``1 - gamma``.
    Because ``gamma`` is invertible, ``F_gamma`` hits every vector exactly
    ``m^{d(n-1)}`` times.
    """
    if n < 1:
        raise ValueError("n must be positive")
    m, d = M.modulus, M.rank
    stable = M.is_identity(M.power(n))
    order = matrix_order_mod(M)
    fibre = m ** (d * (n - 1))
    true_count = fibre * kernel_size(M, M.one_minus_gamma()) if stable else 0
    return AlexanderCenter(n, stable, order == n, order, fibre, true_count)


def det_one_minus_gamma_coprime(M: AlexanderModule) -> bool:
    return gcd(_det(M.one_minus_gamma()) % M.modulus, M.modulus) == 1


# Core quandles ----------------------------------------------------------------------

@dataclass(frozen=True)
class TheoremCheck:
    predicted: bool
    oracle: bool

    @property
    def agree(self) -> bool:
        return self.predicted == self.oracle


def core_odd_stability_check(G: FiniteGroup, k: int, **kw) -> TheoremCheck:
    predicted = all(G.mul(g, g) == G.identity for g in range(G.order))
    oracle = search_center(core_quandle(G), 2 * k + 1, max_witnesses=0, **kw).count > 0
    return TheoremCheck(predicted, oracle)


def duplicated(family) -> tuple[int, ...]:
    return tuple(v for u in family for v in (u, u))


# phi-conjugation --------------------------------------------------------------------

@dataclass(frozen=True)
class ConjPhiCheck:
    """Three verdicts for one family in Conj_phi(G).

    ``literal`` compares ``phi^n`` with ``Ad_L`` (``Ad_u(g) = u g u^-1``) for
    ``L = u_n phi(u_{n-1}) ... phi^{n-1}(u_1)``; ``corrected`` requires
    ``phi(L) = L`` and ``phi^n = Ad_{L^-1}``; ``oracle`` is direct evaluation.
    """

    literal: bool
    corrected: bool
    oracle: bool


def twisted_product(G: FiniteGroup, phi: GroupAutomorphism, family) -> int:
    n = len(family)
    L = G.identity
    for i in range(n):  # u_n phi(u_{n-1}) ... phi^{n-1}(u_1)
        L = G.mul(L, phi.power(i)(family[n - 1 - i]))
    return L


def conj_phi_criterion_check(G: FiniteGroup, phi: GroupAutomorphism, family) -> ConjPhiCheck:
    n = len(family)
    L = twisted_product(G, phi, family)
    phin = phi.power(n).perm
    Li = G.inverse[L]
    ad_L = tuple(G.product((L, g, Li)) for g in range(G.order))
    ad_Li = tuple(G.product((Li, g, L)) for g in range(G.order))
    literal = phin == ad_L
    corrected = phi(L) == L and phin == ad_Li
    oracle = is_stabilizing(conj_phi_quandle(G, phi), family)
    return ConjPhiCheck(literal, corrected, oracle)


# G_phi --------------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionCheck:
    torsion_order: int | None
    stable_orders: tuple[int, ...]
    searched_stable_orders: tuple[int, ...]


def gphi_torsion_check(G: FiniteGroup, phi: GroupAutomorphism, maxorder: int) -> TorsionCheck:
    require_abelian(G)
    torsion = next((t for t in range(1, maxorder + 1) if phi.power(t).is_identity()), None)
    by_criterion = tuple(n for n in range(1, maxorder + 1) if phi.power(n).is_identity())
    X = gphi_quandle(G, phi)
    by_search = tuple(n for n in range(1, maxorder + 1)
                      if search_center(X, n, max_witnesses=0).count > 0)
    return TorsionCheck(torsion, by_criterion, by_search)


# n-pivot ----------------------------------------------------------------------------

@dataclass(frozen=True)
class PivotCheck:
    center_count: int
    pivot_count: int
    match: bool
    identity_map_match: bool


def pivot_bijection_check(G: FiniteGroup, n: int) -> PivotCheck:
    """Compare S^n(Conj(G)) with P^n(G).

    A family stabilizes Conj(G) iff ``u_n ... u_1`` is central, so tuple
    reversal maps S^n(Conj(G)) onto P^n(G).  Whether the identity map on tuples
    also works is reported separately.
    """
    X = conj_quandle(G)
    res = search_center(X, n, max_witnesses=None)
    center = set(res.witnesses)
    pivot = set(pivot_elements(G, n, cap=10**7))
    Z = group_center(G)
    reversed_set = {tuple(reversed(u)) for u in center}
    elementwise = all(G.product(v) in Z for v in reversed_set)
    match = elementwise and reversed_set == pivot and len(center) == len(pivot)
    return PivotCheck(res.count, len(pivot), match, center == pivot)

