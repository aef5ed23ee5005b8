import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import brute
from quandlekit.errors import GroupAxiomError, NotBijective, NotHomomorphism, SizeCapExceeded
from quandlekit.fingroup import (
    automorphism_validate,
    elementary_abelian_2,
    group_center,
    group_cyclic,
    group_from_table,
    group_product,
    group_symmetric,
    identity_automorphism,
    inner_automorphism,
    negation_automorphism,
)

SMALL = [group_cyclic(1), group_cyclic(4), group_cyclic(6), group_symmetric(3),
         elementary_abelian_2(3), group_product(group_cyclic(2), group_cyclic(4))]


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_axioms_against_brute_force(G):
    assert brute.group_ok(G.table.tolist())
    t = G.table
    for a in range(G.order):
        assert t[a, G.inverse[a]] == G.identity == t[G.inverse[a], a]


def test_cyclic_examples():
    assert group_cyclic(1).order == 1
    Z4 = group_cyclic(4)
    assert Z4.table[1, 3] == 0 and Z4.inverse[1] == 3
    assert len(group_center(group_cyclic(5))) == 5


def test_products():
    V = group_product(group_cyclic(2), group_cyclic(2))
    assert V.order == 4
    assert all(V.element_order(a) == 2 for a in range(4) if a != V.identity)
    G = group_product(group_cyclic(2), group_cyclic(4))
    t = G.table.tolist()
    assert G.order == 8
    assert max(brute.element_order(t, G.identity, a) for a in range(8)) == 4 == G.exponent


def test_product_with_trivial_is_same_table():
    S3 = group_symmetric(3)
    P = group_product(S3, group_cyclic(1))
    assert np.array_equal(P.table, S3.table)


def test_symmetric():
    assert group_symmetric(1).order == 1
    for m, order in ((3, 6), (4, 24)):
        G = group_symmetric(m)
        assert G.order == order
        assert group_center(G) == {G.identity}
    assert group_symmetric(3).labels[0] == (0, 1, 2)
    with pytest.raises(SizeCapExceeded):
        group_symmetric(6)


def test_center_is_everything_iff_symmetric_table():
    for G in SMALL:
        assert (len(group_center(G)) == G.order) == bool(np.array_equal(G.table, G.table.T))
    assert group_center(group_symmetric(3)) == {0}
    assert len(group_center(elementary_abelian_2(2))) == 4


def test_group_from_table_rejects_non_groups():
    with pytest.raises(GroupAxiomError):
        group_from_table([[0, 1], [1, 1]])
    with pytest.raises(GroupAxiomError):
        # has identity and inverses but is not associative
        group_from_table([[0, 1, 2], [1, 0, 0], [2, 0, 0]])


def test_automorphisms():
    Z5 = group_cyclic(5)
    assert automorphism_validate(Z5, range(5)).is_identity()
    neg = automorphism_validate(Z5, [(-a) % 5 for a in range(5)])
    assert neg.order == 2 and neg == negation_automorphism(Z5)
    with pytest.raises(NotHomomorphism) as exc:
        automorphism_validate(Z5, [(a + 1) % 5 for a in range(5)])
    assert exc.value.witness == (0, 0)
    with pytest.raises(NotBijective):
        automorphism_validate(Z5, [0, 0, 1, 2, 3])


def test_inner_automorphisms():
    Z6 = group_cyclic(6)
    assert all(inner_automorphism(Z6, u).is_identity() for u in range(6))
    S3 = group_symmetric(3)
    assert inner_automorphism(S3, S3.identity).is_identity()
    transposition = S3.labels.index((1, 0, 2))
    phi = inner_automorphism(S3, transposition)
    assert phi.order == 2
    # brute-force conjugation table
    t = S3.table.tolist()
    u, ui = transposition, S3.inverse[transposition]
    assert phi.perm == tuple(t[t[u][g]][ui] for g in range(6))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_inner_of_inverse_undoes(G, data):
    u = data.draw(st.integers(0, G.order - 1))
    a = inner_automorphism(G, u)
    b = inner_automorphism(G, G.inverse[u])
    assert a.compose(b) == identity_automorphism(G)


def test_symmetric_elements_lexicographic():
    G = group_symmetric(4)
    assert list(G.labels) == sorted(itertools.permutations(range(4)))
