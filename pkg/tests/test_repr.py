import itertools
from fractions import Fraction

import pytest

import brute
from quandlekit import linalg, perms
from quandlekit.constructors import (
    conj_quandle,
    core_quandle,
    dihedral_quandle,
    trivial_rack,
)
from quandlekit.cyclotomic import CycloScalar
from quandlekit.errors import ConjugationFail, NotInvertible, RackMismatch
from quandlekit.fingroup import group_cyclic, group_symmetric
from quandlekit.oracles import constituent_racks
from quandlekit.rack import inner_group
from quandlekit.representations import (
    RackRep,
    commutant,
    conjugate_rep,
    constant_rep,
    direct_sum,
    dual_onedim,
    enumerate_strong_onedim,
    invariant_subspace_search,
    is_invariant,
    is_strong_rep,
    onedim_from_exponents,
    perm_matrix,
    regular_rep,
    rep_equivalence_check,
    rep_validate,
    restrict,
    tensor_onedim,
    strong_irreducible_check,
    translation_order,
    trivial_rep,
    xlinear_check,
)

D3 = dihedral_quandle(3)
# transposition matrices fixing index t: rho_0 = (2 3), rho_1 = (1 3), rho_2 = (1 2) in 1-based terms
REFLECTIONS = [
    [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
]
COMPLEMENT = [[1, -1, 0], [0, 1, -1]]


def reflection_rep(k=24):
    return rep_validate(D3, 3, REFLECTIONS, k)


def test_validate_examples():
    rep_validate(D3, 2, [[[1, 0], [0, 1]]] * 3)
    R = reflection_rep()
    assert R == regular_rep(D3)
    # the defining permutation representation of S3 restricted to Conj(S3)
    G = group_symmetric(3)
    rep_validate(conj_quandle(G), 3, [brute.perm_mat(G.labels[g]) for g in range(6)])
    with pytest.raises(ConjugationFail) as exc:
        rep_validate(D3, 3, [REFLECTIONS[0], REFLECTIONS[0], REFLECTIONS[2]])
    assert exc.value.witness == (0, 1)
    with pytest.raises(NotInvertible):
        rep_validate(trivial_rack(2), 1, [[[1]], [[0]]])


def test_non_permutation_conjugation_check():
    k = 4
    i = CycloScalar.zeta(k)
    with pytest.raises(ConjugationFail):
        rep_validate(D3, 1, [[[1]], [[i]], [[1]]], k)
    rep_validate(D3, 1, [[[-1]], [[-1]], [[-1]]], k)


def test_regular_examples():
    R = regular_rep(trivial_rack(3))
    assert all(M == tuple(map(tuple, linalg.identity(3, R.one, R.zero))) for M in R.matrices)
    R = regular_rep(D3)
    for t in range(3):
        p = R.perms[t]
        assert p[t] == t and perms.order(p) == 2
    R4 = regular_rep(dihedral_quandle(4))
    for p in R4.perms:
        for block in ((0, 2), (1, 3)):
            assert {p[b] for b in block} == set(block)


def test_regular_matches_function_convention():
    # lambda_t f = f o R_t^-1 on indicator functions
    for X in (D3, conj_quandle(group_symmetric(3))):
        R = regular_rep(X)
        for t in range(X.size):
            Rinv = X.inverse_translations[t]
            for y in range(X.size):
                f = [Fraction(int(v == y)) for v in range(X.size)]
                g = [f[Rinv[x]] for x in range(X.size)]
                assert [v.to_fraction() for v in R.act([R.one if v else R.zero for v in f], (t,))] == g


def test_strongness_examples():
    for X in (trivial_rack(3), D3, dihedral_quandle(4), conj_quandle(group_symmetric(3))):
        assert is_strong_rep(regular_rep(X)) == (True, None)
    assert is_strong_rep(reflection_rep())[0]
    R = rep_validate(trivial_rack(2), 1, [[[-1]], [[1]]])
    strong, words = is_strong_rep(R)
    assert not strong
    assert R.word_matrix(words[0]) != R.word_matrix(words[1])


def _brute_strong_onedim(X, k):
    """Closure of (R_x, exponent) pairs; strong iff it projects injectively."""
    count = 0
    n = X.size
    gens = X.translations
    for exps in itertools.product(range(k), repeat=len(X.orbit_partition)):
        e = [exps[X.orbit_index[x]] for x in range(n)]
        seen = {(tuple(range(n)), 0)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for p, s in frontier:
                for x in range(n):
                    q = (perms.compose(gens[x], p), (s + e[x]) % k)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        if len(seen) == brute.inner_order(brute.tab(X)):
            count += 1
    return count


@pytest.mark.parametrize("X,k,want", [
    (trivial_rack(3), 2, 1), (D3, 2, 2), (dihedral_quandle(4), 2, 4), (dihedral_quandle(5), 4, 2),
    (conj_quandle(group_symmetric(3)), 2, 2), (core_quandle(group_cyclic(6)), 3, 1),
])
def test_enumerate_strong_onedim(X, k, want):
    reps = enumerate_strong_onedim(X, k)
    assert len(reps) == want == _brute_strong_onedim(X, k)
    for r in reps:
        assert is_strong_rep(r)[0]


def test_tensor_products():
    X = dihedral_quandle(4)
    reps = enumerate_strong_onedim(X, 2)
    triv = trivial_rep(X, conductor=2)
    for a in reps:
        assert tensor_onedim(a, triv) == a
        assert tensor_onedim(a, dual_onedim(a)) == triv
    a = onedim_from_exponents(X, [1, 0, 1, 0], 2)
    b = onedim_from_exponents(X, [0, 1, 0, 1], 2)
    assert tensor_onedim(a, b) == onedim_from_exponents(X, [1, 1, 1, 1], 2)
    with pytest.raises(RackMismatch):
        tensor_onedim(a, trivial_rep(D3, conductor=2))


def test_xlinear_examples():
    R = reflection_rep()
    assert xlinear_check(R, R, linalg.identity(3, 1, 0)).ok
    res = xlinear_check(R, trivial_rep(D3), [[1, 1, 1]])
    assert res.ok and len(res.kernel) == 2 and len(res.image) == 1
    bad = xlinear_check(R, R, [[1, 2, 0], [0, 1, 0], [0, 0, 1]])
    assert not bad.ok and bad.witness == 0


def test_kernels_and_images_are_invariant():
    R = direct_sum(reflection_rep(), trivial_rep(D3))
    for phi in commutant(R):
        res = xlinear_check(R, R, phi)
        assert res.ok
        assert is_invariant(R, [list(v) for v in res.kernel])
        assert is_invariant(R, [list(v) for v in res.image])


def test_invariant_subspaces():
    assert invariant_subspace_search(trivial_rep(D3)).irreducible
    s = invariant_subspace_search(reflection_rep())
    assert not s.irreducible
    assert [[v.to_fraction() for v in b] for b in s.proper] == [[1, 1, 1]]
    C = restrict(reflection_rep(12), COMPLEMENT)
    assert is_strong_rep(C)[0]
    s = invariant_subspace_search(C)
    assert s.irreducible and s.commutant_dim == 1


def test_equivalence():
    R = reflection_rep()
    assert rep_equivalence_check(R, R)
    M = [[1, 2, 0], [0, 1, 1], [1, 0, 1]]
    assert rep_equivalence_check(R, conjugate_rep(R, M))
    sign = rep_validate(D3, 1, [[[-1]]] * 3)
    assert not rep_equivalence_check(trivial_rep(D3), sign)
    assert not rep_equivalence_check(R, direct_sum(trivial_rep(D3, 2), sign))


STRONG = [regular_rep(D3), regular_rep(dihedral_quandle(5)), regular_rep(conj_quandle(group_symmetric(3))),
          restrict(regular_rep(D3), COMPLEMENT)] + enumerate_strong_onedim(dihedral_quandle(4), 2)


@pytest.mark.parametrize("R", STRONG, ids=repr)
def test_strong_matrices_have_translation_torsion(R):
    for x in range(R.X.size):
        N = translation_order(R.X, x)
        assert R.word_matrix((x,) * N) == linalg.identity(R.dim, R.one, R.zero)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_constant_involution_reps_are_strong_and_reducible(d):
    for X in (D3, dihedral_quandle(5), core_quandle(group_symmetric(3))):
        tau = [[int(i == d - 1 - j) for j in range(d)] for i in range(d)]
        R = constant_rep(X, tau)
        assert is_strong_rep(R)[0]
        assert not invariant_subspace_search(R).irreducible


def _point_rep(R, x):
    return RackRep(trivial_rack(1), R.dim, R.conductor, [R.matrices[x]])


@pytest.mark.parametrize("R", [regular_rep(D3), restrict(regular_rep(D3), COMPLEMENT),
                               regular_rep(dihedral_quandle(5)),
                               constant_rep(D3, [[-1, 0], [0, -1]])], ids=repr)
def test_connected_involutive_reps_have_conjugate_matrices(R):
    first = _point_rep(R, 0)
    for x in range(1, R.X.size):
        assert rep_equivalence_check(first, _point_rep(R, x))
    minus = [[-R.one if i == j else R.zero for j in range(R.dim)] for i in range(R.dim)]
    if any(list(map(list, M)) == minus for M in R.matrices):
        assert all(list(map(list, M)) == minus for M in R.matrices)


@pytest.mark.parametrize("X", [D3, dihedral_quandle(5), dihedral_quandle(4), dihedral_quandle(6),
                               core_quandle(group_symmetric(3)), trivial_rack(3)], ids=lambda X: X.name)
def test_regular_cycle_types(X):
    R = regular_rep(X)
    types = {perms.cycle_type(p) for p in R.perms}
    assert all(perms.order(p) <= 2 for p in R.perms)
    if X.is_connected:
        assert len(types) == 1
    assert len(types) <= len(X.orbit_partition)


def test_conjecture_checker_lines():
    lines = [strong_irreducible_check(X).line() for X in constituent_racks()]
    assert lines[0] == ("dihedral(3): involutive=yes connected=yes absolute-constituent-dims=1,2 "
                        "counterexample-candidate: strong irreducible of dimension 2 (commutant dimension 1)")
    assert "hypotheses-not-met" in lines[4] and "hypotheses-not-met" in lines[5]


def test_perm_matrix_convention():
    k = 6
    M = perm_matrix((1, 2, 0), k)
    e0 = [CycloScalar.rational(k, v) for v in (1, 0, 0)]
    assert [v.to_fraction() for v in linalg.mat_vec(M, e0)] == [0, 1, 0]
    assert inner_group(D3).order == 6
