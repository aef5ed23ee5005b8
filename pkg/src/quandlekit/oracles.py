"""Theorem-versus-search suites.

Each suite returns report lines; disagreements are printed, never dropped.
"""

from __future__ import annotations

import itertools

import numpy as np

from .constructors import (
    alexander_module,
    alexander_quandle,
    conj_quandle,
    core_quandle,
    dihedral_quandle,
    trivial_rack,
)
from .duality import core_dual_count_check
from .dynamics import (
    RackAction,
    bundle_validate,
    canonical_cocycle,
    cocycle_validate,
    crossproduct_stability_check,
    fibre_distributivity_witness,
    self_action,
)
from .errors import ValidationError
from .fingroup import (
    elementary_abelian_2,
    group_cyclic,
    group_product,
    group_symmetric,
    inner_automorphism,
    negation_automorphism,
)
from .representations import strong_irreducible_check
from .stability import (
    alexander_center_solver,
    conj_phi_criterion_check,
    core_odd_stability_check,
    det_one_minus_gamma_coprime,
    duplicated,
    is_stabilizing,
    pivot_bijection_check,
    search_center,
)


def core_groups():
    return [group_cyclic(2), group_cyclic(3), group_cyclic(4), group_cyclic(5), group_cyclic(6),
            elementary_abelian_2(2), elementary_abelian_2(3)]


def suite_core_odd(jobs: int = 1) -> list[str]:
    lines = ["group k order predicted oracle verdict"]
    agree = total = 0
    for G in core_groups():
        for k in range(3):
            c = core_odd_stability_check(G, k, jobs=jobs)
            total += 1
            agree += c.agree
            lines.append(f"{G.name} {k} {2 * k + 1} {_yn(c.predicted)} {_yn(c.oracle)} "
                         f"{'agree' if c.agree else 'DISAGREE'}")
    lines.append(f"core-odd: {agree}/{total} agree")
    return lines


def suite_core_dup(jobs: int = 1) -> list[str]:
    lines = ["group families passed"]
    ok_all = True
    for G in core_groups():
        X = core_quandle(G)
        fams = [f for k in range(1, 4) for f in itertools.product(range(G.order), repeat=k)]
        ok = sum(is_stabilizing(X, duplicated(f)) for f in fams)
        ok_all &= ok == len(fams)
        lines.append(f"{G.name} {len(fams)} {ok}")
    lines.append(f"core-dup: {'all pass' if ok_all else 'FAILURES'}")
    return lines


def _gamma_str(M) -> str:
    if M.rank == 1:
        return str(M.gamma[0][0])
    return ";".join(",".join(map(str, r)) for r in M.gamma)


def rank2_gammas(m: int):
    """A fixed family of 2x2 matrices, kept when invertible mod m."""
    cands = [((0, 1), (1, 0)), ((1, 1), (0, 1)), ((0, m - 1), (1, 0)), ((m - 1, 0), (0, m - 1)),
             ((2, 0), (0, 1)), ((0, 1), (m - 1, m - 1)), ((1, 0), (0, m - 1))]
    seen = []
    for g in cands:
        g = tuple(tuple(v % m for v in r) for r in g)
        if g in seen:
            continue
        try:
            alexander_module(m, g)
        except ValidationError:
            continue
        seen.append(g)
    return seen


def alexander_grid():
    for m in range(2, 8):
        gammas = [g for g in range(1, m) if np.gcd(g, m) == 1] if m > 2 else [1]
        for g in gammas:
            yield alexander_module(m, g)
        for g in rank2_gammas(m):
            yield alexander_module(m, g)


def suite_alexander(jobs: int = 1) -> list[str]:
    lines = ["m d gamma n stable f_count true_count search_count note"]
    flag_ok = eq_ok = True
    rows = divergent = 0
    for M in alexander_grid():
        X = alexander_quandle(M)
        for n in range(1, 7):
            r = alexander_center_solver(M, n)
            s = search_center(X, n, max_witnesses=0, jobs=jobs).count
            rows += 1
            note = ""
            if (s > 0) != r.stable or r.true_center_count != s:
                flag_ok = False
                note = "SEARCH-MISMATCH"
            if det_one_minus_gamma_coprime(M) and r.stable and r.f_solution_count != s:
                eq_ok = False
                note = "COUNT-MISMATCH"
            if r.divergent:
                divergent += 1
                note = note or "discrepancy"
            lines.append(f"{M.modulus} {M.rank} {_gamma_str(M)} {n} {_yn(r.stable)} "
                         f"{r.f_solution_count} {r.true_center_count} {s} {note}".rstrip())
    lines.append(f"alexander: {rows} rows, stable flag {'ok' if flag_ok else 'MISMATCH'}, "
                 f"coprime counts {'ok' if eq_ok else 'MISMATCH'}, {divergent} discrepancy rows")
    return lines


def suite_conjphi(jobs: int = 1) -> list[str]:
    lines = ["group phi n families oracle literal_mismatch corrected_mismatch"]
    cases = [(group_cyclic(5), negation_automorphism(group_cyclic(5)), "neg")]
    S3 = group_symmetric(3)
    cases += [(S3, inner_automorphism(S3, u), f"inner({u})") for u in range(S3.order)]
    for G, phi, name in cases:
        for n in (1, 2):
            res = [conj_phi_criterion_check(G, phi, f)
                   for f in itertools.product(range(G.order), repeat=n)]
            lines.append(f"{G.name} {name} {n} {len(res)} {sum(r.oracle for r in res)} "
                         f"{sum(r.literal != r.oracle for r in res)} "
                         f"{sum(r.corrected != r.oracle for r in res)}")
    return lines


def suite_pivot(jobs: int = 1) -> list[str]:
    lines = ["group n center pivot bijection identity_map"]
    for G in (group_symmetric(3), group_cyclic(4), elementary_abelian_2(2)):
        for n in (1, 2, 3):
            c = pivot_bijection_check(G, n)
            lines.append(f"{G.name} {n} {c.center_count} {c.pivot_count} "
                         f"{'verified' if c.match else 'FAILED'} {_yn(c.identity_map_match)}")
    return lines


def _small_cocycles():
    """Every cocycle over trivial(2) with trivial fibre trivial(2) and trivial action."""
    X = trivial_rack(2)
    Q = trivial_rack(2)
    A = RackAction(X, np.tile(np.arange(2)[:, None], (1, 2)))
    maps = [(0, 1), (1, 0)]
    for choice in itertools.product(itertools.product(range(2), repeat=2), repeat=4):
        D = np.zeros((2, 2, 2, 2), dtype=np.int64)
        for i, (x, y) in enumerate(itertools.product(range(2), repeat=2)):
            for q in range(2):
                D[x, y, :, q] = maps[choice[i][q]]
        try:
            yield cocycle_validate(X, Q, A, D)
        except ValidationError:
            continue


def cocycle_bundle_instances():
    for T in _small_cocycles():
        yield "trivial(2) exhaustive", T
    for X in (dihedral_quandle(3), dihedral_quandle(4), trivial_rack(3), conj_quandle(group_symmetric(3))):
        A = self_action(X)
        yield f"{X.name} canonical", cocycle_validate(X, X, A, canonical_cocycle(A))


def suite_cocycle_bundle(jobs: int = 1) -> list[str]:
    stats: dict[str, list[int]] = {}
    for label, T in cocycle_bundle_instances():
        distributive = fibre_distributivity_witness(T) is None
        try:
            bundle_validate(T.X, T.Q.size, T.table)
            bundle = True
        except ValidationError:
            bundle = False
        s = stats.setdefault(label, [0, 0, 0])
        s[0] += 1
        s[1] += distributive
        s[2] += distributive == bundle
    lines = ["instances cocycles fibres_distributive biconditional"]
    for label, (n, e, b) in stats.items():
        lines.append(f"{label}: {n} {e} {b}/{n}")
    return lines


def suite_cross(jobs: int = 1) -> list[str]:
    lines = ["rack n fibrewise direct stable_family_is_unit verdict"]
    from .dynamics import approximate_unit_among_center

    for X in (dihedral_quandle(3), dihedral_quandle(4), trivial_rack(2), core_quandle(group_cyclic(4))):
        A = self_action(X)
        T = cocycle_validate(X, X, A, canonical_cocycle(A))
        for n in (1, 2, 3):
            r = crossproduct_stability_check(T, n, max_witnesses=0)
            unit = approximate_unit_among_center(A, n)
            ok = r.agree and (r.count > 0) == unit
            lines.append(f"{X.name} {n} {r.count} {r.direct_count} {_yn(unit)} {'agree' if ok else 'DISAGREE'}")
    return lines


def constituent_racks():
    Z3 = group_cyclic(3)
    return [dihedral_quandle(3), dihedral_quandle(5), dihedral_quandle(7),
            core_quandle(group_product(Z3, Z3)), dihedral_quandle(4), trivial_rack(2)]


def suite_constituents(jobs: int = 1) -> list[str]:
    return [strong_irreducible_check(X).line() for X in constituent_racks()]


def suite_core_dual(jobs: int = 1) -> list[str]:
    cases = [(group_cyclic(4), [1]), (group_cyclic(2), [1]), (elementary_abelian_2(2), [2, 1]),
             (elementary_abelian_2(3), [4, 2, 1]), (group_cyclic(3), [1])]
    return [core_dual_count_check(G, gens).line() for G, gens in cases]


SUITES = {
    "core-odd": suite_core_odd,
    "core-dup": suite_core_dup,
    "alexander": suite_alexander,
    "conjphi": suite_conjphi,
    "pivot": suite_pivot,
    "cocycle-bundle": suite_cocycle_bundle,
    "cross": suite_cross,
    "constituents": suite_constituents,
    "core-dual": suite_core_dual,
}


def _yn(b: bool) -> str:
    return "yes" if b else "no"
