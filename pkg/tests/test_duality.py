import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quandlekit.constructors import conj_quandle, core_quandle, dihedral_quandle, trivial_rack
from quandlekit.cyclotomic import CycloScalar
from quandlekit.duality import (
    RackCharacter,
    character_from_elements,
    core_dual_count_check,
    dual_rank,
    identity_character,
    repstrong_vs_dual,
    root_of_unity_angle,
    strong_onedim_is_strong,
    trace_character,
)
from quandlekit.errors import DoNotGenerate, HypothesesFail, RackMismatch, ValidationError
from quandlekit.fingroup import elementary_abelian_2, group_cyclic, group_symmetric
from quandlekit.rack import relabel
from quandlekit.representations import (
    direct_sum,
    enumerate_strong_onedim,
    regular_rep,
    tensor_onedim,
    trivial_rep,
)

D4 = dihedral_quandle(4)


def test_dual_rank_examples():
    assert dual_rank(D4) == 2
    assert dual_rank(dihedral_quandle(3)) == 1
    assert dual_rank(trivial_rack(5)) == 5


def test_character_operations():
    a = RackCharacter(D4, (Fraction(1, 2), Fraction(0)))
    b = RackCharacter(D4, (Fraction(0), Fraction(1, 3)))
    assert (a * b).values == (Fraction(1, 2), Fraction(1, 3))
    assert a * identity_character(D4) == a
    assert a * a.inverse() == identity_character(D4)
    assert RackCharacter(D4, (Fraction(5, 2), Fraction(-1, 3))).values == (Fraction(1, 2), Fraction(2, 3))
    assert (a * b).order == 6
    with pytest.raises(RackMismatch):
        a * identity_character(trivial_rack(2))


def test_character_from_elements_requires_orbit_constancy():
    chi = character_from_elements(D4, [Fraction(1, 4), 0, Fraction(5, 4), 0])
    assert chi(2) == Fraction(1, 4) and chi(1) == 0
    with pytest.raises(ValidationError):
        character_from_elements(D4, [Fraction(1, 4), 0, 0, 0])


def test_group_axioms_on_seeded_random_characters():
    rnd = random.Random(20240601)
    racks = [D4, trivial_rack(3), conj_quandle(group_symmetric(3)), dihedral_quandle(6)]

    def draw(X):
        return RackCharacter(X, tuple(Fraction(rnd.randint(-30, 30), rnd.randint(1, 12))
                                      for _ in X.orbit_partition))

    for _ in range(1000):
        X = rnd.choice(racks)
        a, b, c = draw(X), draw(X), draw(X)
        e = identity_character(X)
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * e == a == e * a
        assert a * a.inverse() == e
        assert all(0 <= v < 1 for v in (a * b).values)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([D4, dihedral_quandle(6), conj_quandle(group_symmetric(3))]),
       st.randoms(use_true_random=False))
def test_dual_rank_is_isomorphism_invariant(X, rnd):
    sigma = list(range(X.size))
    rnd.shuffle(sigma)
    assert dual_rank(relabel(X, sigma)) == dual_rank(X)


def test_trace_characters():
    X = dihedral_quandle(3)
    tc = trace_character(trivial_rep(X, 3))
    assert all(t == 3 for t in tc.traces) and tc.orbit_constant
    tc = trace_character(regular_rep(X))
    assert all(t == 1 for t in tc.traces) and tc.character is None
    for r in enumerate_strong_onedim(D4, 4):
        tc = trace_character(r)
        assert tc.character is not None
        assert [tc.character(x) for x in range(4)] == [root_of_unity_angle(s) for s in r.scalars()]


def test_trace_of_direct_sum_is_sum_of_traces():
    for X in (dihedral_quandle(3), D4, conj_quandle(group_symmetric(3))):
        R1, R2 = regular_rep(X), trivial_rep(X, 2)
        t = trace_character(direct_sum(R1, R2)).traces
        assert t == tuple(a + b for a, b in zip(trace_character(R1).traces, trace_character(R2).traces))


def test_trace_map_is_a_homomorphism():
    for X, k in ((D4, 2), (D4, 4), (trivial_rack(2), 3), (dihedral_quandle(5), 4)):
        reps = enumerate_strong_onedim(X, k)
        assert strong_onedim_is_strong(reps)
        for a in reps:
            for b in reps:
                ca, cb = trace_character(a).character, trace_character(b).character
                assert trace_character(tensor_onedim(a, b)).character == ca * cb


def test_root_of_unity_angle():
    assert root_of_unity_angle(CycloScalar.zeta(12, 5)) == Fraction(5, 12)
    assert root_of_unity_angle(CycloScalar.rational(12, 2)) is None


def test_repstrong_vs_dual():
    c = repstrong_vs_dual(dihedral_quandle(3), 2)
    assert (c.strong_onedim_count, c.dual_torsion_count, c.injective, c.homomorphism) == (2, 2, True, True)
    assert c.onto
    c = repstrong_vs_dual(dihedral_quandle(5), 4)
    assert (c.strong_onedim_count, c.dual_torsion_count) == (2, 4) and not c.onto
    with pytest.raises(HypothesesFail):
        repstrong_vs_dual(trivial_rack(3), 2)
    with pytest.raises(HypothesesFail):
        repstrong_vs_dual(conj_quandle(group_symmetric(3)), 2)


def test_core_dual_counts():
    c = core_dual_count_check(group_cyclic(4), [1])
    assert (c.orbit_count, c.bound, c.match) == (2, 2, True)
    for r in (1, 2, 3):
        G = elementary_abelian_2(r)
        c = core_dual_count_check(G, [2 ** i for i in range(r)])
        assert c.orbit_count == 2 ** r == c.bound
    c = core_dual_count_check(group_cyclic(3), [1])
    assert (c.orbit_count, c.bound, c.match) == (1, 2, False)
    assert c.line() == "Z3: orbit_count=1 bound=2^n=2 discrepancy"
    assert dual_rank(core_quandle(group_cyclic(3))) == 1
    with pytest.raises(DoNotGenerate):
        core_dual_count_check(group_cyclic(4), [2])
