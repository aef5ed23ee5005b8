"""Rack representations over exact cyclotomic scalars.

A representation assigns to each rack element ``x`` an invertible matrix
``pi_x`` with ``pi_{x |> y} = pi_y pi_x pi_y^-1``.  Vectors are column
vectors and ``v . x = pi_x v``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from . import linalg, perms
from .cyclotomic import CycloScalar, totient
from .errors import (
    ConductorTooSmall,
    ConjugationFail,
    Inconclusive,
    NotInvertible,
    RackMismatch,
    SizeCapExceeded,
    ValidationError,
)
from .rack import CLOSURE_CAP, FiniteRack, extension_conflict, inner_relations

DEFAULT_CONDUCTOR = 24
ONEDIM_CAP = 10**6


def scalar(k: int, v) -> CycloScalar:
    if isinstance(v, CycloScalar):
        if v.k != k:
            raise ValueError(f"scalar has conductor {v.k}, expected {k}")
        return v
    if isinstance(v, str):
        from .cyclotomic import parse_scalar

        return parse_scalar(k, v)
    return CycloScalar.rational(k, Fraction(v))


def _as_perm(M) -> tuple[int, ...] | None:
    """The permutation p with ``M e_j = e_{p(j)}``, if M is a permutation matrix."""
    d = len(M)
    p = []
    for j in range(d):
        col = [M[i][j] for i in range(d)]
        nz = [i for i, v in enumerate(col) if v]
        if len(nz) != 1 or col[nz[0]] != 1:
            return None
        p.append(nz[0])
    return tuple(p) if perms.is_bijection(p, d) else None


def perm_matrix(p: Sequence[int], k: int) -> list[list[CycloScalar]]:
    d = len(p)
    zero, one = CycloScalar.rational(k, 0), CycloScalar.rational(k, 1)
    M = [[zero] * d for _ in range(d)]
    for j, i in enumerate(p):
        M[i][j] = one
    return M


class RackRep:
    """A representation; build it with :func:`rep_validate` or a constructor."""

    def __init__(self, X: FiniteRack, dim: int, conductor: int, matrices):
        self.X = X
        self.dim = dim
        self.conductor = conductor
        self.matrices = tuple(tuple(tuple(row) for row in M) for M in matrices)
        self.perms = tuple(_as_perm(M) for M in self.matrices)

    def __repr__(self) -> str:
        return f"RackRep({self.X.name}, dim={self.dim}, conductor={self.conductor})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, RackRep) and self.X == other.X
                and self.conductor == other.conductor and self.matrices == other.matrices)

    def __hash__(self) -> int:
        return hash((self.X, self.matrices))

    @property
    def is_permutation(self) -> bool:
        return all(p is not None for p in self.perms)

    def matrix(self, x: int) -> list[list[CycloScalar]]:
        return [list(r) for r in self.matrices[x]]

    @property
    def zero(self) -> CycloScalar:
        return CycloScalar.rational(self.conductor, 0)

    @property
    def one(self) -> CycloScalar:
        return CycloScalar.rational(self.conductor, 1)

    def act(self, v, family) -> list:
        for x in family:
            v = linalg.mat_vec(self.matrices[x], v)
        return v

    def word_matrix(self, family) -> list[list]:
        """``pi_{u_n} ... pi_{u_1}``."""
        M = linalg.identity(self.dim, self.one, self.zero)
        for x in family:
            M = linalg.mat_mul(self.matrices[x], M)
        return M

    def scalars(self) -> tuple[CycloScalar, ...]:
        """Values of a one-dimensional representation."""
        if self.dim != 1:
            raise ValueError("not one-dimensional")
        return tuple(M[0][0] for M in self.matrices)


def rep_validate(X: FiniteRack, d: int, matrices, conductor: int = DEFAULT_CONDUCTOR) -> RackRep:
    if len(matrices) != X.size:
        raise ValidationError(f"expected {X.size} matrices, got {len(matrices)}")
    mats = []
    for x, M in enumerate(matrices):
        if len(M) != d or any(len(r) != d for r in M):
            raise ValidationError(f"matrix of element {x} is not {d}x{d}")
        mats.append([[scalar(conductor, v) for v in r] for r in M])
    R = RackRep(X, d, conductor, mats)
    if R.is_permutation:
        P = R.perms
        for x in range(X.size):
            for y in range(X.size):
                # pi_{x|>y} pi_y == pi_y pi_x
                if perms.compose(P[X.op(x, y)], P[y]) != perms.compose(P[y], P[x]):
                    raise ConjugationFail(f"pi_(x|>y) != pi_y pi_x pi_y^-1 at (x, y) = ({x}, {y})", (x, y))
        return R
    for x in range(X.size):
        if not linalg.det(R.matrices[x]):
            raise NotInvertible(f"matrix of element {x} is singular", (x,))
    prods = {}
    for x in range(X.size):
        for y in range(X.size):
            lhs = linalg.mat_mul(R.matrices[X.op(x, y)], R.matrices[y])
            key = (x, y)
            rhs = linalg.mat_mul(R.matrices[y], R.matrices[x])
            if lhs != rhs:
                raise ConjugationFail(f"pi_(x|>y) != pi_y pi_x pi_y^-1 at (x, y) = {key}", key)
    return R


def regular_rep(X: FiniteRack, conductor: int = DEFAULT_CONDUCTOR) -> RackRep:
    """``lambda_t f = f o R_t^-1``, i.e. ``lambda_t e_y = e_{y |> t}``."""
    return RackRep(X, X.size, conductor, [perm_matrix(X.translations[t], conductor)
                                          for t in range(X.size)])


def constant_rep(X: FiniteRack, tau, conductor: int = DEFAULT_CONDUCTOR) -> RackRep:
    """``x -> tau`` for every x."""
    d = len(tau)
    return rep_validate(X, d, [tau] * X.size, conductor)


def trivial_rep(X: FiniteRack, d: int = 1, conductor: int = DEFAULT_CONDUCTOR) -> RackRep:
    one, zero = CycloScalar.rational(conductor, 1), CycloScalar.rational(conductor, 0)
    return RackRep(X, d, conductor, [linalg.identity(d, one, zero)] * X.size)


def direct_sum(R1: RackRep, R2: RackRep) -> RackRep:
    _same_rack(R1, R2)
    z = R1.zero
    mats = []
    for A, B in zip(R1.matrices, R2.matrices):
        top = [list(r) + [z] * R2.dim for r in A]
        bottom = [[z] * R1.dim + list(r) for r in B]
        mats.append(top + bottom)
    return RackRep(R1.X, R1.dim + R2.dim, R1.conductor, mats)


def conjugate_rep(R: RackRep, M) -> RackRep:
    """``x -> M pi_x M^-1``."""
    M = [[scalar(R.conductor, v) for v in r] for r in M]
    Mi = linalg.inverse(M)
    if Mi is None:
        raise NotInvertible("conjugating matrix is singular")
    return RackRep(R.X, R.dim, R.conductor,
                   [linalg.mat_mul(linalg.mat_mul(M, A), Mi) for A in R.matrices])


def _same_rack(R1: RackRep, R2: RackRep) -> None:
    if R1.X != R2.X or R1.conductor != R2.conductor:
        raise RackMismatch("representations live on different racks or conductors")


def is_strong_rep(R: RackRep, cap: int = CLOSURE_CAP):
    """``(True, None)`` or ``(False, (word1, word2))``.

    The words have the same composite in the inner group but different
    matrices; every identity word then maps to the identity iff there is no
    such pair.
    """
    if R.is_permutation:
        conflict = extension_conflict(R.X, R.perms, perms.compose, perms.identity(R.dim), cap)
    else:
        ident = tuple(tuple(r) for r in linalg.identity(R.dim, R.one, R.zero))
        conflict = extension_conflict(
            R.X, R.matrices,
            lambda A, B: tuple(tuple(r) for r in linalg.mat_mul(A, B)), ident, cap)
    return conflict is None, conflict


# Intertwiners ----------------------------------------------------------------------

def _distinct_pairs(mats1, mats2):
    seen = []
    for A, B in zip(mats1, mats2):
        if (A, B) not in seen:
            seen.append((A, B))
    return seen


def intertwiners(R1: RackRep, R2: RackRep) -> list[list[list]]:
    """Basis of ``{phi : phi pi1_x = pi2_x phi}`` (phi is dim2 x dim1)."""
    _same_rack(R1, R2)
    d1, d2 = R1.dim, R2.dim
    if R1.is_permutation and R2.is_permutation:
        return _perm_intertwiners(R1, R2)
    rows = []
    zero = R1.zero
    for A, B in _distinct_pairs(R1.matrices, R2.matrices):
        for i in range(d2):
            for j in range(d1):
                row = [zero] * (d1 * d2)
                for k in range(d1):  # (phi A)[i][j] = sum_k phi[i][k] A[k][j]
                    if A[k][j]:
                        row[i * d1 + k] = row[i * d1 + k] + A[k][j]
                for k in range(d2):  # (B phi)[i][j] = sum_k B[i][k] phi[k][j]
                    if B[i][k]:
                        row[k * d1 + j] = row[k * d1 + j] - B[i][k]
                if any(row):
                    rows.append(row)
    basis = linalg.nullspace(rows, d1 * d2, zero, R1.one)
    return [[v[i * d1:(i + 1) * d1] for i in range(d2)] for v in basis]


def _perm_intertwiners(R1: RackRep, R2: RackRep):
    # phi[p2(i)][p1(j)] = phi[i][j]: constant on orbits of index pairs
    d1, d2 = R1.dim, R2.dim
    parent = list(range(d1 * d2))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p1, p2 in set(zip(R1.perms, R2.perms)):
        for i in range(d2):
            for j in range(d1):
                a, b = find(i * d1 + j), find(p2[i] * d1 + p1[j])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for c in range(d1 * d2):
        blocks.setdefault(find(c), []).append(c)
    out = []
    for _, cells in sorted(blocks.items()):
        M = [[R1.zero] * d1 for _ in range(d2)]
        for c in cells:
            M[c // d1][c % d1] = R1.one
        out.append(M)
    return out


def commutant(R: RackRep) -> list[list[list]]:
    return intertwiners(R, R)


@dataclass(frozen=True)
class XLinearResult:
    ok: bool
    witness: int | None
    kernel: tuple = ()
    image: tuple = ()


def xlinear_check(R1: RackRep, R2: RackRep, phi) -> XLinearResult:
    """Is ``phi`` (dim2 x dim1) X-linear?  Kernel and image bases on success."""
    _same_rack(R1, R2)
    k = R1.conductor
    phi = [[scalar(k, v) for v in r] for r in phi]
    if len(phi) != R2.dim or any(len(r) != R1.dim for r in phi):
        raise ValidationError(f"phi must be {R2.dim}x{R1.dim}")
    for x in range(R1.X.size):
        if linalg.mat_mul(phi, R1.matrices[x]) != linalg.mat_mul(R2.matrices[x], phi):
            return XLinearResult(False, x)
    kernel = linalg.nullspace(phi, R1.dim, R1.zero, R1.one)
    image = linalg.column_basis(linalg.transpose(phi))
    return XLinearResult(True, None, tuple(map(tuple, kernel)), tuple(map(tuple, image)))


def is_invariant(R: RackRep, basis) -> bool:
    if not basis:
        return True
    for M in set(R.matrices):
        for v in basis:
            if linalg.coordinates(basis, linalg.mat_vec(M, v)) is None:
                return False
    return True


def restrict(R: RackRep, basis) -> RackRep:
    """The subrepresentation on the span of ``basis`` (in those coordinates)."""
    basis = [[scalar(R.conductor, v) for v in b] for b in basis]
    if linalg.rank(basis) != len(basis):
        raise ValidationError("basis vectors are linearly dependent")
    mats = []
    for M in R.matrices:
        cols = []
        for v in basis:
            c = linalg.coordinates(basis, linalg.mat_vec(M, v))
            if c is None:
                raise ValidationError("subspace is not invariant")
            cols.append(c)
        mats.append(linalg.transpose(cols))
    return RackRep(R.X, len(basis), R.conductor, mats)


# Invariant subspaces --------------------------------------------------------------

class _Span:
    """Incrementally maintained reduced echelon basis."""

    def __init__(self):
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        p = next((i for i, a in enumerate(v) if a), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [a * inv for a in v]
        for i, row in enumerate(self.rows):
            f = row[p]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def basis(self):
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        return [self.rows[i] for i in order]


def spin(mats, v, limit: int | None = None):
    """Smallest subspace containing ``v`` and invariant under ``mats``."""
    span = _Span()
    if not span.add(v):
        return []
    queue = [span.rows[-1]]
    d = len(v)
    while queue:
        w = queue.pop()
        for M in mats:
            u = linalg.mat_vec(M, w)
            if span.add(u):
                queue.append(u)
                if len(span.rows) == d:
                    return span.basis()
    return span.basis()


def _search_vectors(d: int, k: int):
    one, zero = CycloScalar.rational(k, 1), CycloScalar.rational(k, 0)
    for i in range(d):
        yield [one if j == i else zero for j in range(d)]
    yield [one] * d
    for i in range(d):
        for j in range(i + 1, d):
            v = [zero] * d
            v[i], v[j] = one, -one
            yield v
    if k % d == 0:
        z = CycloScalar.zeta(k, k // d)
        for a in range(1, d):
            yield [z ** (a * j) for j in range(d)]


def _generators(R: RackRep):
    mats = []
    for M in R.matrices:
        if M not in mats:
            mats.append(M)
    invs = []
    for M in mats:
        Mi = linalg.inverse(M)
        t = tuple(tuple(r) for r in Mi)
        if t not in mats and t not in invs:
            invs.append(t)
    return mats + invs


@dataclass(frozen=True)
class SubspaceSearch:
    """``proper`` is a basis of a proper invariant subspace, or ``None``."""

    proper: tuple | None
    method: str
    commutant_dim: int | None = None

    @property
    def irreducible(self) -> bool:
        return self.proper is None


def _proper(basis, d) -> bool:
    return 0 < len(basis) < d


def invariant_subspace_search(R: RackRep) -> SubspaceSearch:
    """Find a proper invariant subspace or certify irreducibility over Q(zeta_k).

    Raises :class:`ConductorTooSmall` when neither is reached at the current
    conductor.
    """
    d, k = R.dim, R.conductor
    if d == 1:
        return SubspaceSearch(None, "dimension", 1)
    gens = _generators(R)
    for v in _search_vectors(d, k):
        S = spin(gens, v)
        if _proper(S, d):
            return SubspaceSearch(tuple(map(tuple, S)), "spin")
    dual = [linalg.transpose(M) for M in gens]
    for v in _search_vectors(d, k):
        S = spin(dual, v)
        if _proper(S, d):
            W = linalg.nullspace(S, d, R.zero, R.one)
            return SubspaceSearch(tuple(map(tuple, linalg.rref(W)[0])), "dual-spin")
    C = commutant(R)
    if len(C) == 1:
        return SubspaceSearch(None, "commutant", 1)
    W = _split_by_commutant(R, C)
    if W is not None:
        return SubspaceSearch(tuple(map(tuple, W)), "commutant-eigenspace", len(C))
    raise ConductorTooSmall(
        f"commutant has dimension {len(C)} but no eigenspace splits over Q(zeta_{k}); "
        "try a larger conductor")


def _split_by_commutant(R: RackRep, C):
    d, k = R.dim, R.conductor
    candidates = [CycloScalar.rational(k, v) for v in (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2))]
    candidates += [CycloScalar.zeta(k, j) for j in range(1, k)]
    ident = linalg.identity(d, R.one, R.zero)
    elements = list(C) + [linalg.mat_add(a, b) for a, b in itertools.combinations(C, 2)]
    for c in elements:
        if all(c[i][j] == (c[0][0] if i == j else 0) for i in range(d) for j in range(d)):
            continue
        poly = linalg.char_poly(c)
        if all(a.is_rational for a in poly):
            for f in _rational_factors([a.to_fraction() for a in poly]):
                fc = [CycloScalar.rational(k, a) for a in f]
                W = linalg.nullspace(linalg.poly_eval_matrix(fc, c), d, R.zero, R.one)
                if _proper(W, d):
                    return linalg.rref(W)[0]
        for lam in candidates:
            W = linalg.nullspace(linalg.mat_sub(c, linalg.mat_scale(ident, lam)), d, R.zero, R.one)
            if _proper(W, d):
                return linalg.rref(W)[0]
    return None


def _rational_factors(coeffs: list[Fraction]) -> list[list[Fraction]]:
    """Distinct monic irreducible factors over Q, lowest degree first."""
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t)
    out = []
    for f, _ in poly.factor_list()[1]:
        f = sympy.Poly(f, t).monic()
        out.append([Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
                    for c in reversed(f.all_coeffs())])
    out.sort(key=lambda f: (len(f), f))
    return out


# Equivalence ------------------------------------------------------------------------

def rep_equivalence_check(R1: RackRep, R2: RackRep, seed: int = 0, tries: int = 8,
                          grid: Sequence[int] = (-1, 0, 1, 2), grid_cap: int = 4096) -> bool:
    """Is there an invertible X-linear map from R1 to R2?

    Random integer combinations of an intertwiner basis are tried first.  For
    strong representations (which are semisimple) the dimension test
    ``dim Hom(R1, R2) = dim End(R1) = dim End(R2)`` decides exactly; otherwise a
    small coefficient grid is exhausted before giving up with
    :class:`Inconclusive`.
    """
    _same_rack(R1, R2)
    if R1.dim != R2.dim:
        return False
    H = intertwiners(R1, R2)
    if not H:
        return False
    rng = random.Random(seed)

    def combo(coeffs):
        M = linalg.mat_scale(H[0], coeffs[0])
        for c, B in zip(coeffs[1:], H[1:]):
            if c:
                M = linalg.mat_add(M, linalg.mat_scale(B, c))
        return M

    for _ in range(tries):
        if linalg.det(combo([rng.randint(-50, 50) for _ in H])):
            return True
    if is_strong_rep(R1)[0] and is_strong_rep(R2)[0]:
        return len(H) == len(commutant(R1)) == len(commutant(R2))
    for n, coeffs in enumerate(itertools.product(grid, repeat=len(H))):
        if n >= grid_cap:
            break
        if any(coeffs) and linalg.det(combo(list(coeffs))):
            return True
    raise Inconclusive("no invertible intertwiner found on the search grid")


# One-dimensional strong representations ---------------------------------------------

def onedim_from_exponents(X: FiniteRack, exps: Sequence[int], k: int) -> RackRep:
    """``x -> zeta_k^{exps[x]}``."""
    return RackRep(X, 1, k, [[[CycloScalar.zeta(k, e)]] for e in exps])


def enumerate_strong_onedim(X: FiniteRack, k: int, cap: int = ONEDIM_CAP) -> list[RackRep]:
    """All strong representations ``x -> mu_k``, constant on orbits.

    Ordered lexicographically by the exponent assigned to each orbit.
    """
    orbits = X.orbit_partition
    if k ** len(orbits) > cap:
        raise SizeCapExceeded(f"{k}^{len(orbits)} candidate assignments exceed cap {cap}")
    rel = inner_relations(X)
    idx = np.array(X.orbit_index)
    out = []
    for exps in itertools.product(range(k), repeat=len(orbits)):
        per_elem = np.array(exps, dtype=np.int64)[idx]
        if len(rel) == 0 or not np.any((rel @ per_elem) % k):
            out.append(onedim_from_exponents(X, [int(e) for e in per_elem], k))
    return out


def tensor_onedim(a: RackRep, b: RackRep) -> RackRep:
    _same_rack(a, b)
    if a.dim != 1 or b.dim != 1:
        raise ValueError("tensor_onedim needs one-dimensional representations")
    return RackRep(a.X, 1, a.conductor, [[[u * v]] for u, v in zip(a.scalars(), b.scalars())])


def dual_onedim(a: RackRep) -> RackRep:
    return RackRep(a.X, 1, a.conductor, [[[u.inverse()]] for u in a.scalars()])


def translation_order(X: FiniteRack, x: int) -> int:
    return perms.order(X.translations[x])


# Irreducible constituents of the regular representation --------------------------

@dataclass(frozen=True)
class Constituent:
    """One rational isotypic block of the regular representation.

    Over the complex numbers it splits into ``conjugates`` pairwise distinct
    irreducibles of dimension ``absolute_dim``, each with multiplicity
    ``multiplicity``.
    """

    rational_dim: int
    commutant_dim: int
    center_dim: int
    absolute_dim: int
    multiplicity: int
    basis: tuple


@dataclass(frozen=True)
class ConstituentReport:
    rack: str
    involutive: bool
    connected: bool
    inner_abelian: bool
    constituents: tuple[Constituent, ...]
    certificate: Constituent | None  # absolutely irreducible block of dim >= 2
    certificate_strong: bool | None
    certificate_commutant_dim: int | None

    @property
    def candidate(self) -> bool:
        return self.involutive and self.connected and any(c.absolute_dim >= 2 for c in self.constituents)

    def line(self) -> str:
        dims = ",".join(str(c.absolute_dim) for c in self.constituents)
        head = (f"{self.rack}: involutive={_yn(self.involutive)} connected={_yn(self.connected)} "
                f"absolute-constituent-dims={dims}")
        if not (self.involutive and self.connected):
            return head + " hypotheses-not-met"
        if not self.candidate:
            return head + " consistent"
        if self.certificate is not None:
            return (head + f" counterexample-candidate: strong irreducible of dimension "
                    f"{self.certificate.absolute_dim} (commutant dimension {self.certificate_commutant_dim})")
        big = max(c.absolute_dim for c in self.constituents)
        return head + f" counterexample-candidate: strong irreducible of dimension {big} over a larger field"


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _orbitals(X: FiniteRack) -> list[list[list[Fraction]]]:
    n = X.size
    parent = list(range(n * n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in set(X.translations):
        for i in range(n):
            for j in range(n):
                a, b = find(i * n + j), find(p[i] * n + p[j])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for c in range(n * n):
        blocks.setdefault(find(c), []).append(c)
    out = []
    for _, cells in sorted(blocks.items()):
        M = [[Fraction(0)] * n for _ in range(n)]
        for c in cells:
            M[c // n][c % n] = Fraction(1)
        out.append(M)
    return out


def _flat(M):
    return [v for row in M for v in row]


def regular_constituents(X: FiniteRack, seed: int = 0, tries: int = 6) -> ConstituentReport:
    """Decompose the regular representation over Q and read off absolute dimensions.

    The commutant is spanned by the orbital matrices of the inner group.  A
    random central element separates the rational isotypic blocks; for a
    block with commutant dimension ``a`` and centre dimension ``z`` the
    complex constituents have dimension ``dim / sqrt(a z)``.
    """
    n = X.size
    B = _orbitals(X)
    r = len(B)
    # centre of the commutant: sum_j alpha_j [B_j, B_i] = 0 for all i
    brackets = [[linalg.mat_sub(linalg.mat_mul(Bj, Bi), linalg.mat_mul(Bi, Bj)) for Bj in B] for Bi in B]
    rows = []
    for i in range(r):
        for e in range(n * n):
            row = [_flat(brackets[i][j])[e] for j in range(r)]
            if any(row):
                rows.append(row)
    center = linalg.nullspace(rows, r, Fraction(0), Fraction(1))
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [Fraction(rng.randint(1, 97)) for _ in center]
        c = [[Fraction(0)] * n for _ in range(n)]
        for w, alpha in zip(coeffs, center):
            for j in range(r):
                if alpha[j]:
                    c = linalg.mat_add(c, linalg.mat_scale(B[j], w * alpha[j]))
        blocks = []
        for f in _rational_factors(linalg.char_poly(c)):
            W = linalg.nullspace(linalg.poly_eval_matrix(f, c), n, Fraction(0), Fraction(1))
            blocks.append(W)
        if sum(len(W) for W in blocks) != n:
            continue
        parts = [_block_invariants(B, W) for W in blocks]
        if sum(z for _, z in parts) != len(center):
            continue
        cons = []
        for W, (a, z) in zip(blocks, parts):
            s = isqrt(a * z)
            if s * s != a * z or len(W) % s:
                break
            cons.append(Constituent(len(W), a, z, len(W) // s, isqrt(a // z) if z else 0,
                                    tuple(map(tuple, linalg.rref(W)[0]))))
        else:
            cons.sort(key=lambda c: (c.absolute_dim, c.rational_dim, c.basis))
            return _report(X, tuple(cons))
    raise Inconclusive("could not separate the isotypic blocks of the regular representation")


def _block_invariants(B, W):
    """Commutant and centre dimensions of the commutant algebra restricted to span(W)."""
    Wt = linalg.transpose(W)  # n x dim
    images = [_flat(linalg.mat_mul(Bi, Wt)) for Bi in B]
    a = linalg.rank(images)
    r = len(B)
    rows = []
    for i in range(r):
        cols = [_flat(linalg.mat_mul(linalg.mat_sub(linalg.mat_mul(Bj, B[i]), linalg.mat_mul(B[i], Bj)), Wt))
                for Bj in B]
        for e in range(len(cols[0])):
            row = [cols[j][e] for j in range(r)]
            if any(row):
                rows.append(row)
    sol = len(linalg.nullspace(rows, r, Fraction(0), Fraction(1)))
    kernel = r - a
    return a, sol - kernel


def _report(X: FiniteRack, cons: tuple[Constituent, ...]) -> ConstituentReport:
    abelian = all(perms.compose(X.translations[x], X.translations[y])
                  == perms.compose(X.translations[y], X.translations[x])
                  for x in range(X.size) for y in range(X.size))
    cert = next((c for c in cons if c.absolute_dim >= 2 and c.commutant_dim == 1), None)
    strong = comm = None
    if cert is not None:
        R = regular_rep(X, 1)
        sub = restrict(R, [list(v) for v in cert.basis])
        strong = is_strong_rep(sub)[0]
        comm = len(commutant(sub))
    return ConstituentReport(X.name, X.is_involutive, X.is_connected, abelian, cons, cert, strong, comm)


def strong_irreducible_check(X: FiniteRack) -> ConstituentReport:
    """Does an involutive connected rack have a strong irreducible of dimension >= 2?

    Every subrepresentation of the regular representation is strong, so a
    constituent of dimension at least two is a candidate counterexample to
    the claim that such representations are one-dimensional.
    """
    return regular_constituents(X)
