from fractions import Fraction

import numpy as np
import pytest

from quandlekit import io
from quandlekit.constructors import dihedral_quandle
from quandlekit.duality import RackCharacter
from quandlekit.dynamics import canonical_cocycle, self_action
from quandlekit.errors import NotBijectiveColumn
from quandlekit.fingroup import group_symmetric
from quandlekit.representations import rep_validate, regular_rep, restrict


def test_rack_round_trip():
    X = dihedral_quandle(5)
    text = io.format_table(X.table)
    assert text.splitlines()[0] == "5"
    assert io.parse_rack(text) == X


def test_group_round_trip():
    G = group_symmetric(3)
    assert np.array_equal(io.parse_group(io.format_table(G.table)).table, G.table)


def test_comments_and_blank_lines_are_ignored():
    assert io.parse_rack("# d2\n2\n\n0 0\n1 1\n").size == 2


def test_malformed_files():
    with pytest.raises(io.FormatError):
        io.parse_rack("3\n0 1 2\n")
    with pytest.raises(io.FormatError):
        io.parse_rack("2\n0 x\n1 1\n")
    with pytest.raises(io.FormatError):
        io.parse_rack("")
    with pytest.raises(NotBijectiveColumn):
        io.parse_rack("2\n0 0\n0 1\n")


def test_action_and_cocycle_round_trip():
    X = dihedral_quandle(3)
    A = self_action(X)
    size, n, T = io.parse_action(io.format_action(A.table))
    assert (size, n) == (3, 3) and np.array_equal(T, A.table)
    D = canonical_cocycle(A)
    n, k, E = io.parse_cocycle(io.format_cocycle(D))
    assert (n, k) == (3, 3) and np.array_equal(E, D)
    assert io.parse_bundle(io.format_bundle(D))[2].shape == (3, 3, 3, 3)


def test_rep_round_trip():
    X = dihedral_quandle(3)
    R = restrict(regular_rep(X, 12), [[1, -1, 0], [0, 1, -1]])
    n, d, k, mats = io.parse_rep(io.format_rep(R))
    assert rep_validate(X, d, mats, k) == R
    n, d, k, mats = io.parse_rep("3 1 4\n0,1\n0,1\n0,1\n")
    assert mats[0][0][0] ** 4 == 1
    with pytest.raises(io.FormatError):
        io.parse_rep("3 1 4\n0,1\n0,1\n")


def test_character_round_trip(tmp_path):
    X = dihedral_quandle(4)
    chi = RackCharacter(X, (Fraction(1, 2), Fraction(2, 3)))
    text = io.format_character("d4.rack", chi)
    path, values = io.parse_character(text, tmp_path)
    assert path == tmp_path / "d4.rack"
    assert RackCharacter(X, tuple(values)) == chi
