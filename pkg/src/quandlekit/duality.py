"""Rack characters and the dual group D_qX.

A character is constant on orbits, so it is stored as one value per orbit.
Values live in the torsion part of U(1), written additively as Q/Z:
``p/q`` stands for ``exp(2 pi i p/q)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .constructors import core_quandle
from .cyclotomic import CycloScalar
from .errors import HypothesesFail, RackMismatch, ValidationError
from .fingroup import FiniteGroup, check_generates, require_abelian
from .rack import FiniteRack
from .representations import RackRep, enumerate_strong_onedim, is_strong_rep, tensor_onedim


def _mod1(v) -> Fraction:
    v = Fraction(v)
    return v - (v.numerator // v.denominator)


@dataclass(frozen=True)
class RackCharacter:
    X: FiniteRack
    values: tuple[Fraction, ...]  # one per orbit, orbits in sorted order

    def __post_init__(self):
        if len(self.values) != len(self.X.orbit_partition):
            raise ValidationError(f"expected {len(self.X.orbit_partition)} orbit values")
        object.__setattr__(self, "values", tuple(_mod1(v) for v in self.values))

    def __call__(self, x: int) -> Fraction:
        return self.values[self.X.orbit_index[x]]

    def _check(self, other: "RackCharacter") -> None:
        if self.X != other.X:
            raise RackMismatch("characters of different racks")

    def __mul__(self, other: "RackCharacter") -> "RackCharacter":
        self._check(other)
        return RackCharacter(self.X, tuple(a + b for a, b in zip(self.values, other.values)))

    def inverse(self) -> "RackCharacter":
        return RackCharacter(self.X, tuple(-a for a in self.values))

    @property
    def order(self) -> int:
        from math import lcm

        return lcm(*(v.denominator for v in self.values)) if self.values else 1

    def format(self) -> str:
        return " ".join(str(v) if v.denominator != 1 else f"{v.numerator}/1" for v in self.values)


def identity_character(X: FiniteRack) -> RackCharacter:
    return RackCharacter(X, (Fraction(0),) * len(X.orbit_partition))


def character_from_elements(X: FiniteRack, values: Sequence) -> RackCharacter:
    """Build from per-element values; they must be constant on orbits."""
    vals = [_mod1(v) for v in values]
    for block in X.orbit_partition:
        if any(vals[x] != vals[block[0]] for x in block):
            raise ValidationError(f"values are not constant on the orbit of {block[0]}", (block[0],))
    return RackCharacter(X, tuple(vals[b[0]] for b in X.orbit_partition))


def dual_rank(X: FiniteRack) -> int:
    return len(X.orbit_partition)


def root_of_unity_angle(z: CycloScalar) -> Fraction | None:
    """``j/k`` when ``z = zeta_k^j``, else ``None``."""
    for j in range(z.k):
        if CycloScalar.zeta(z.k, j) == z:
            return Fraction(j, z.k)
    return None


@dataclass(frozen=True)
class TraceCharacter:
    traces: tuple[CycloScalar, ...]
    orbit_constant: bool
    on_unit_circle: bool  # only claimed for one-dimensional representations
    character: RackCharacter | None


def trace_character(R: RackRep) -> TraceCharacter:
    X = R.X
    traces = []
    for M in R.matrices:
        t = R.zero
        for i in range(R.dim):
            t = t + M[i][i]
        traces.append(t)
    constant = all(traces[X.op(x, y)] == traces[x] for x in range(X.size) for y in range(X.size))
    char = None
    if R.dim == 1:
        angles = [root_of_unity_angle(t) for t in traces]
        if all(a is not None for a in angles):
            char = character_from_elements(X, angles)
    return TraceCharacter(tuple(traces), constant, char is not None, char)


@dataclass(frozen=True)
class DualComparison:
    conductor: int
    strong_onedim_count: int
    dual_torsion_count: int
    injective: bool
    homomorphism: bool

    @property
    def onto(self) -> bool:
        return self.injective and self.strong_onedim_count == self.dual_torsion_count


def repstrong_vs_dual(X: FiniteRack, k: int) -> DualComparison:
    """Strong one-dimensional representations with values in mu_k versus the
    k-torsion of D_qX, compared through the trace map."""
    if not X.is_involutive:
        raise HypothesesFail("rack is not involutive", ("involutive",))
    if not X.is_connected:
        raise HypothesesFail("rack is not connected", ("connected",))
    reps = enumerate_strong_onedim(X, k)
    chars = [trace_character(r).character for r in reps]
    injective = all(c is not None for c in chars) and len(set(chars)) == len(chars)
    hom = True
    for a, ca in zip(reps, chars):
        for b, cb in zip(reps, chars):
            if trace_character(tensor_onedim(a, b)).character != ca * cb:
                hom = False
    return DualComparison(k, len(reps), k ** dual_rank(X), injective, hom)


@dataclass(frozen=True)
class CoreDualCheck:
    group: str
    orbit_count: int
    bound: int
    match: bool

    def line(self) -> str:
        verdict = "match" if self.match else "discrepancy"
        return f"{self.group}: orbit_count={self.orbit_count} bound=2^n={self.bound} {verdict}"


def core_dual_count_check(G: FiniteGroup, generators: Sequence[int]) -> CoreDualCheck:
    require_abelian(G)
    check_generates(G, generators)
    count = dual_rank(core_quandle(G))
    bound = 2 ** len(generators)
    return CoreDualCheck(G.name, count, bound, count == bound)


def strong_onedim_is_strong(reps) -> bool:
    return all(is_strong_rep(r)[0] for r in reps)
