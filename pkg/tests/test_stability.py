import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import brute
from quandlekit import perms
from quandlekit.constructors import (
    alexander_module,
    alexander_quandle,
    conj_phi_quandle,
    conj_quandle,
    core_quandle,
    dihedral_quandle,
    gphi_quandle,
    trivial_rack,
)
from quandlekit.errors import BudgetExceeded
from quandlekit.fingroup import (
    automorphism_validate,
    elementary_abelian_2,
    group_center,
    group_cyclic,
    group_symmetric,
    identity_automorphism,
    inner_automorphism,
    negation_automorphism,
    power_automorphism,
)
from quandlekit.rack import inner_group, rack_hom_check, relabel
from quandlekit.stability import (
    alexander_center_solver,
    conj_phi_criterion_check,
    core_odd_stability_check,
    cyclic_invariance_check,
    duplicated,
    f_gamma,
    gphi_torsion_check,
    is_stabilizing,
    pivot_bijection_check,
    rotation_classes,
    search_center,
    stability_report,
)

RACKS = [trivial_rack(2), dihedral_quandle(3), dihedral_quandle(4), dihedral_quandle(5),
         conj_quandle(group_symmetric(3)), core_quandle(group_cyclic(6)),
         alexander_quandle(alexander_module(5, 2))]


def test_is_stabilizing_examples():
    assert is_stabilizing(trivial_rack(3), (0, 2, 1))
    D5 = dihedral_quandle(5)
    assert all(is_stabilizing(D5, (u, u)) for u in range(5))
    assert not is_stabilizing(D5, (0, 1))
    assert [D5.act(x, (0, 1)) for x in range(5)] == [(x + 2) % 5 for x in range(5)]


def test_search_center_examples():
    D3 = dihedral_quandle(3)
    assert search_center(D3, 1).count == 0
    r = search_center(D3, 2)
    assert (r.count, r.exact, r.witnesses) == (3, True, ((0, 0), (1, 1), (2, 2)))
    assert search_center(trivial_rack(2), 1).count == 2


@pytest.mark.parametrize("X", RACKS, ids=lambda X: X.name)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_search_center_matches_brute_force(X, n):
    if X.size ** n > 50000:
        pytest.skip("too large for the naive oracle")
    want = brute.center(brute.tab(X), n)
    r = search_center(X, n, max_witnesses=None)
    assert r.count == len(want)
    assert list(r.witnesses) == want


@pytest.mark.parametrize("X", RACKS[:5], ids=lambda X: X.name)
def test_backtracking_fallback_agrees_and_is_job_independent(X):
    for n in (1, 2, 3):
        fast = search_center(X, n, max_witnesses=7)
        slow1 = search_center(X, n, max_witnesses=7, closure_cap=1)
        slow2 = search_center(X, n, max_witnesses=7, closure_cap=1, jobs=2)
        assert fast == slow1 == slow2


def test_budget_exceeded_carries_partial_count():
    with pytest.raises(BudgetExceeded) as exc:
        search_center(dihedral_quandle(5), 4, closure_cap=1, budget=50)
    part = exc.value.partial
    assert part is not None and not part.exact
    assert part.count <= search_center(dihedral_quandle(5), 4).count


def test_report_format():
    text = stability_report(dihedral_quandle(3), range(1, 4), max_witnesses=2).format()
    assert text.splitlines() == [
        "order  count  status  witnesses",
        "1  0  exact",
        "2  3  exact  (0,0) (1,1)",
        "3  0  exact",
        "least_stable_order: 2",
    ]


@pytest.mark.parametrize("X", RACKS, ids=lambda X: X.name)
def test_stabilizing_iff_inner_composite_is_identity(X):
    G = inner_group(X)
    ident = G.index(perms.identity(X.size))
    for fam in itertools.product(range(X.size), repeat=2):
        composite = perms.fold(X.translations, fam, X.size)
        assert is_stabilizing(X, fam) == (G.index(composite) == ident)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(RACKS), st.integers(1, 4), st.data())
def test_rotations_of_stabilizing_families_stabilize(X, n, data):
    fams = search_center(X, n, max_witnesses=None).witnesses
    if not fams:
        return
    fam = data.draw(st.sampled_from(fams))
    assert cyclic_invariance_check(X, fam)


def test_cyclic_invariance_examples():
    D5 = dihedral_quandle(5)
    assert cyclic_invariance_check(D5, (3, 3))
    D6 = dihedral_quandle(6)
    assert is_stabilizing(D6, (0, 0, 1, 1)) and is_stabilizing(D6, (1, 1, 0, 0))
    assert rotation_classes([(0, 1), (1, 0), (2, 2)]) == [(0, 1), (2, 2)]


def test_duplicated_families_in_core_quandles():
    for G in (group_cyclic(3), group_cyclic(4), group_symmetric(3), elementary_abelian_2(2)):
        t = brute.tab(core_quandle(G))
        for k in (1, 2):
            for fam in itertools.product(range(G.order), repeat=k):
                assert brute.stabilizing(t, duplicated(fam))


def test_surjective_image_of_stabilizing_family():
    D4, D2 = dihedral_quandle(4), dihedral_quandle(2)
    f = [x % 2 for x in range(4)]
    assert rack_hom_check(D4, D2, f)[0]
    for fam in search_center(D4, 2, max_witnesses=None).witnesses:
        assert is_stabilizing(D2, tuple(f[u] for u in fam))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(RACKS), st.randoms(use_true_random=False))
def test_counts_invariant_under_relabelling(X, rnd):
    sigma = list(range(X.size))
    rnd.shuffle(sigma)
    Y = relabel(X, sigma)
    for n in (1, 2, 3):
        assert search_center(X, n, 0).count == search_center(Y, n, 0).count


# Alexander quandles -----------------------------------------------------------------

def _brute_alexander(m, g, n):
    X = alexander_quandle(alexander_module(m, g))
    true = len(brute.center(brute.tab(X), n))
    f = sum(1 for u in itertools.product(range(m), repeat=n)
            if sum(u[i] * pow(g, n - 1 - i, m) for i in range(n)) % m == 0)
    return true, f


def test_alexander_solver_examples():
    r = alexander_center_solver(alexander_module(5, 2), 4)
    assert (r.stable, r.f_solution_count, r.true_center_count) == (True, 125, 125)
    assert not alexander_center_solver(alexander_module(5, 2), 3).stable
    r = alexander_center_solver(alexander_module(4, 3), 2)
    assert (r.stable, r.f_solution_count, r.true_center_count, r.divergent) == (True, 4, 8, True)


@pytest.mark.parametrize("m,g", [(3, 2), (4, 3), (5, 2), (5, 4), (6, 5), (7, 3), (7, 6)])
def test_alexander_solver_against_brute_force(m, g):
    M = alexander_module(m, g)
    for n in range(1, 5):
        r = alexander_center_solver(M, n)
        true, f = _brute_alexander(m, g, n)
        assert r.true_center_count == true
        assert r.stable == (true > 0)
        if r.stable:
            assert r.f_solution_count == f
            assert r.true_center_count >= r.f_solution_count


def test_f_gamma_rank_two():
    M = alexander_module(3, [[1, 1], [0, 1]])
    u = ((1, 0), (0, 2), (2, 2))
    # x_1 g^2 + x_2 g + x_3 with g = [[1,1],[0,1]] acting on row vectors
    assert f_gamma(M, u) == ((1 + 0 + 2) % 3, (2 + 2 + 2) % 3)


# Core, phi-conjugation, G_phi, pivots ----------------------------------------------

def test_core_odd_examples():
    c = core_odd_stability_check(elementary_abelian_2(2), 0)
    assert c.predicted and c.oracle
    c = core_odd_stability_check(group_cyclic(3), 1)
    assert not c.predicted and not c.oracle
    c = core_odd_stability_check(group_cyclic(2), 0)
    assert c.predicted and c.oracle


def test_conj_phi_examples():
    S3 = group_symmetric(3)
    idS3 = identity_automorphism(S3)
    assert conj_phi_criterion_check(S3, idS3, (S3.identity,)).literal
    g = S3.labels.index((1, 0, 2))
    c = conj_phi_criterion_check(S3, idS3, (g,))
    assert not c.literal and not c.oracle
    Z5 = group_cyclic(5)
    c = conj_phi_criterion_check(Z5, negation_automorphism(Z5), (0, 0))
    assert c.literal and c.oracle


def test_conj_phi_literal_form_can_disagree():
    # Z5 with negation, family (0, 1): L = 1 and phi^2 = id = Ad_1, yet
    # x |> 0 |> 1 = x + 2 is not the identity
    Z5 = group_cyclic(5)
    c = conj_phi_criterion_check(Z5, negation_automorphism(Z5), (0, 1))
    assert c.literal and not c.oracle and not c.corrected


def _conj_phi_cases():
    S3 = group_symmetric(3)
    V = elementary_abelian_2(2)
    Z5, Z6 = group_cyclic(5), group_cyclic(6)
    return ([(S3, inner_automorphism(S3, u)) for u in range(6)]
            + [(Z5, power_automorphism(Z5, k)) for k in (1, 2, 4)]
            + [(Z6, negation_automorphism(Z6)), (V, automorphism_validate(V, [0, 2, 1, 3]))])


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(_conj_phi_cases()), st.data())
def test_corrected_criterion_matches_direct_evaluation(case, data):
    G, phi = case
    fam = tuple(data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=4)))
    c = conj_phi_criterion_check(G, phi, fam)
    assert c.corrected == c.oracle == brute.stabilizing(brute.tab(conj_phi_quandle(G, phi)), fam)


def test_gphi_torsion_examples():
    Z5 = group_cyclic(5)
    t = gphi_torsion_check(Z5, power_automorphism(Z5, 2), 8)
    assert t.torsion_order == 4 and t.stable_orders == (4, 8) == t.searched_stable_orders
    t = gphi_torsion_check(group_cyclic(4), identity_automorphism(group_cyclic(4)), 5)
    assert t.torsion_order == 1 and t.searched_stable_orders == (1, 2, 3, 4, 5)
    V = elementary_abelian_2(2)
    t = gphi_torsion_check(V, automorphism_validate(V, [0, 2, 1, 3]), 4)
    assert t.torsion_order == 2 and 2 in t.searched_stable_orders
    assert t.stable_orders == t.searched_stable_orders


def test_gphi_stable_iff_phi_power_identity():
    for m in (5, 7, 8, 9):
        G = group_cyclic(m)
        for k in range(1, m):
            if np.gcd(k, m) != 1:
                continue
            t = gphi_torsion_check(G, power_automorphism(G, k), 6)
            assert t.stable_orders == t.searched_stable_orders


def test_pivot_examples():
    c = pivot_bijection_check(group_symmetric(3), 2)
    assert (c.center_count, c.pivot_count, c.match) == (6, 6, True)
    c = pivot_bijection_check(group_cyclic(4), 1)
    assert (c.center_count, c.pivot_count, c.match) == (4, 4, True)
    c = pivot_bijection_check(group_symmetric(3), 1)
    assert (c.center_count, c.pivot_count) == (1, 1)


def test_pivot_counts_by_brute_force():
    G = group_symmetric(3)
    Z = group_center(G)
    for n in (1, 2, 3):
        pivots = sum(1 for u in itertools.product(range(6), repeat=n) if G.product(u) in Z)
        assert pivot_bijection_check(G, n).pivot_count == pivots
