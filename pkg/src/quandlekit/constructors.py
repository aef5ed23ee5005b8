"""Builders for the standard rack and quandle families.

Every builder returns a validated :class:`FiniteRack`.  Elements keep the
indexing of the underlying group, module or tuple enumeration; readable
labels are attached where the index alone is ambiguous.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import SizeCapExceeded, ValidationError
from .fingroup import FiniteGroup, GroupAutomorphism, group_center, group_cyclic, require_abelian
from .rack import FiniteRack, rack_validate, trivial_table

SIZE_CAP = 4096


def _cap(size: int, cap: int) -> None:
    if size > cap:
        raise SizeCapExceeded(f"rack size {size} exceeds cap {cap}")


def trivial_rack(n: int) -> FiniteRack:
    if n < 1:
        raise ValueError("n must be positive")
    return rack_validate(trivial_table(n), name=f"trivial({n})")


def conj_quandle(G: FiniteGroup) -> FiniteRack:
    """``g |> h = h g h^{-1}``."""
    t = G.table
    inv = np.array(G.inverse)
    g = np.arange(G.order)[:, None]
    h = np.arange(G.order)[None, :]
    table = t[t[h, g], inv[h]]
    return rack_validate(table, labels=G.labels, name=f"Conj({G.name})")


def conj_phi_quandle(G: FiniteGroup, phi: GroupAutomorphism) -> FiniteRack:
    """``g |> h = h phi(g) phi(h^{-1})``."""
    t = G.table
    p = np.array(phi.perm)
    inv = np.array(G.inverse)
    n = G.order
    g = np.arange(n)[:, None]
    h = np.arange(n)[None, :]
    table = t[t[h, p[g]], p[inv[h]]]
    return rack_validate(table, labels=G.labels, name=f"Conj_phi({G.name})")


def core_quandle(G: FiniteGroup) -> FiniteRack:
    """``g |> h = h g^{-1} h``."""
    t = G.table
    inv = np.array(G.inverse)
    n = G.order
    g = np.arange(n)[:, None]
    h = np.arange(n)[None, :]
    table = t[t[h, inv[g]], h]
    return rack_validate(table, labels=G.labels, name=f"Core({G.name})")


def dihedral_quandle(m: int) -> FiniteRack:
    """``x |> y = 2y - x mod m``."""
    if m < 1:
        raise ValueError("m must be positive")
    i = np.arange(m)
    X = rack_validate((2 * i[None, :] - i[:, None]) % m, name=f"dihedral({m})")
    return X


def gphi_quandle(G: FiniteGroup, phi: GroupAutomorphism) -> FiniteRack:
    """``g |> h = phi(g) + (id - phi)(h)`` on an abelian group."""
    require_abelian(G)
    t = G.table
    p = np.array(phi.perm)
    inv = np.array(G.inverse)
    n = G.order
    g = np.arange(n)[:, None]
    h = np.arange(n)[None, :]
    table = t[p[g], t[h, inv[p[h]]]]
    return rack_validate(table, labels=G.labels, name=f"G_phi({G.name})")


# Alexander quandles on (Z_m)^d ------------------------------------------------

def _det(M: list[list[int]]) -> int:
    M = [list(r) for r in M]
    d = len(M)
    if d == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(d))


def mat_mod(M, m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) % m for v in row) for row in M)


def mat_mul_mod(A, B, m: int):
    d = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(d)) % m for j in range(d))
                 for i in range(d))


def mat_pow_mod(A, k: int, m: int):
    d = len(A)
    out = tuple(tuple(int(i == j) % m for j in range(d)) for i in range(d))
    for _ in range(k):
        out = mat_mul_mod(out, A, m)
    return out


def mat_inverse_mod(A, m: int):
    """Inverse of ``A`` mod ``m`` by adjugate; ``None`` when det is not a unit."""
    d = len(A)
    det = _det(A) % m
    try:
        det_inv = pow(det, -1, m)
    except ValueError:
        return None
    if d == 1:
        return ((det_inv % m,),)
    adj = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate([list(r) for r in A]) if k != i]
            adj[j][i] = (-1) ** (i + j) * _det(minor)
    return tuple(tuple((det_inv * adj[i][j]) % m for j in range(d)) for i in range(d))


@dataclass(frozen=True)
class AlexanderModule:
    """``(Z_m)^d`` with an invertible matrix ``gamma`` acting on row vectors."""

    modulus: int
    gamma: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        g = mat_mod(self.gamma, self.modulus)
        object.__setattr__(self, "gamma", g)
        if any(len(r) != len(g) for r in g) or not g:
            raise ValueError("gamma must be a non-empty square matrix")
        if mat_inverse_mod(g, self.modulus) is None:
            raise ValidationError(f"gamma is not invertible mod {self.modulus}")

    @property
    def rank(self) -> int:
        return len(self.gamma)

    @property
    def size(self) -> int:
        return self.modulus ** self.rank

    def vectors(self) -> list[tuple[int, ...]]:
        """Mixed-radix order: the last coordinate varies fastest."""
        return list(itertools.product(range(self.modulus), repeat=self.rank))

    def index(self, v) -> int:
        i = 0
        for c in v:
            i = i * self.modulus + (c % self.modulus)
        return i

    def act(self, v, M=None):
        """Row vector times matrix, mod m."""
        M = self.gamma if M is None else M
        d = self.rank
        return tuple(sum(v[k] * M[k][j] for k in range(d)) % self.modulus for j in range(d))

    def power(self, k: int):
        return mat_pow_mod(self.gamma, k, self.modulus)

    def is_identity(self, M) -> bool:
        d = self.rank
        return all(M[i][j] % self.modulus == int(i == j) % self.modulus
                   for i in range(d) for j in range(d))

    def one_minus_gamma(self):
        d, m = self.rank, self.modulus
        return tuple(tuple((int(i == j) - self.gamma[i][j]) % m for j in range(d)) for i in range(d))


def alexander_module(m: int, gamma) -> AlexanderModule:
    if isinstance(gamma, int):
        gamma = ((gamma,),)
    return AlexanderModule(m, tuple(tuple(r) for r in gamma))


def alexander_quandle(M: AlexanderModule, cap: int = SIZE_CAP) -> FiniteRack:
    """``x |> y = (x - y) gamma + y``."""
    _cap(M.size, cap)
    vecs = M.vectors()
    m, d = M.modulus, M.rank
    V = np.array(vecs, dtype=np.int64).reshape(len(vecs), d)
    G = np.array(M.gamma, dtype=np.int64)
    diff = (V[:, None, :] - V[None, :, :]) % m
    out = (diff @ G + V[None, :, :]) % m
    radix = m ** np.arange(d - 1, -1, -1)
    table = (out * radix).sum(axis=-1)
    return rack_validate(table, labels=vecs if d > 1 else None,
                         name=f"Alexander(m={m}, gamma={list(map(list, M.gamma))})")


def pivot_elements(G: FiniteGroup, n: int, cap: int = SIZE_CAP) -> list[tuple[int, ...]]:
    """Tuples in G^n with central product, in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    Z = group_center(G)
    if G.order ** (n - 1) * len(Z) > cap:
        raise SizeCapExceeded(f"pivot size exceeds cap {cap}")
    out = []
    for head in itertools.product(range(G.order), repeat=n - 1):
        prefix = G.product(head)
        for last in range(G.order):
            if int(G.table[prefix, last]) in Z:
                out.append(head + (last,))
    return out


def pivot_op(G: FiniteGroup, x, y) -> tuple[int, ...]:
    """``(y_n^-1 x_n y_1, y_1^-1 x_1 y_2, ..., y_{n-1}^-1 x_{n-1} y_n)``."""
    n = len(x)
    out = []
    for i in range(n):
        prev = (i - 1) % n
        out.append(G.product((G.inverse[y[prev]], x[prev], y[i])))
    return tuple(out)


def pivot_quandle(G: FiniteGroup, n: int, cap: int = SIZE_CAP) -> FiniteRack:
    """The n-pivot of G with labels = the underlying n-tuples."""
    elems = pivot_elements(G, n, cap)
    index = {e: i for i, e in enumerate(elems)}
    size = len(elems)
    table = np.empty((size, size), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            z = pivot_op(G, x, y)
            k = index.get(z)
            if k is None:
                raise ValidationError(f"pivot operation leaves the universe at {x}, {y}", (i, j))
            table[i, j] = k
    return rack_validate(table, labels=elems, name=f"P^{n}({G.name})")


def core_of_cyclic(m: int) -> FiniteRack:
    return core_quandle(group_cyclic(m))
