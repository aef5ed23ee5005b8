"""Command-line front end.

Exit codes: 0 success, 1 validation failure (witness printed), 2 usage or
unreadable input, 3 cap or budget exceeded.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import io
from .constructors import (
    SIZE_CAP,
    alexander_module,
    alexander_quandle,
    conj_phi_quandle,
    conj_quandle,
    core_quandle,
    dihedral_quandle,
    gphi_quandle,
    pivot_quandle,
    trivial_rack,
)
from .duality import (
    RackCharacter,
    dual_rank,
    repstrong_vs_dual,
    trace_character,
)
from .dynamics import (
    action_validate,
    approximate_units,
    bundle_from_cocycle,
    bundle_validate,
    canonical_cocycle,
    cocycle_validate,
    cross_product,
    crossproduct_stability_check,
    fibre_distributivity_witness,
    is_faithful,
    is_strong_action,
    self_action,
)
from .errors import (
    BudgetExceeded,
    ConductorTooSmall,
    Inconclusive,
    QuandleKitError,
    ResourceError,
    ValidationError,
)
from .fingroup import (
    FiniteGroup,
    automorphism_validate,
    elementary_abelian_2,
    group_cyclic,
    group_product,
    group_symmetric,
    identity_automorphism,
    inner_automorphism,
    negation_automorphism,
    power_automorphism,
)
from .oracles import SUITES
from .rack import CLOSURE_CAP, FiniteRack, inner_group
from .representations import (
    DEFAULT_CONDUCTOR,
    commutant,
    invariant_subspace_search,
    is_strong_rep,
    regular_rep,
    rep_equivalence_check,
    rep_validate,
    strong_irreducible_check,
)
from .stability import DEFAULT_BUDGET, pivot_bijection_check, search_center

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

KINDS = ("trivial", "dihedral", "conj", "conjphi", "core", "alexander", "pivot", "gphi", "group")


class UsageError(Exception):
    pass


# Argument helpers ------------------------------------------------------------------

def fmt(obj) -> str:
    """Compact rendering of witnesses: ``(0,1,(2,3))``."""
    if isinstance(obj, (tuple, list)):
        return "(" + ",".join(fmt(o) for o in obj) + ")"
    return str(obj)


def parse_group_spec(spec: str) -> FiniteGroup:
    """``Z4``, ``S3``, ``Z2^3``, ``Z2xS3`` or a group file."""
    path = Path(spec)
    if path.is_file():
        return io.read_group(path)
    factors = spec.split("x")
    groups = []
    for f in factors:
        m = re.fullmatch(r"([ZS])(\d+)(?:\^(\d+))?", f)
        if not m:
            raise UsageError(f"bad group spec {spec!r} (try Z4, S3, Z2^3, Z2xZ3 or a file)")
        kind, n, e = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        if n < 1 or e < 1:
            raise UsageError(f"bad group spec {spec!r}")
        if kind == "Z" and n == 2 and e > 1:
            groups.append(elementary_abelian_2(e))
            continue
        base = group_cyclic(n) if kind == "Z" else group_symmetric(n)
        G = base
        for _ in range(e - 1):
            G = group_product(G, base)
        groups.append(G)
    G = groups[0]
    for H in groups[1:]:
        G = group_product(G, H)
    return G


def parse_phi(G: FiniteGroup, spec: str):
    """``id``, ``neg``, ``inner:u``, ``pow:k`` or ``perm:i0,i1,...``."""
    name, _, arg = spec.partition(":")
    try:
        if name == "id":
            return identity_automorphism(G)
        if name == "neg":
            return negation_automorphism(G)
        if name == "inner":
            return inner_automorphism(G, int(arg))
        if name == "pow":
            return power_automorphism(G, int(arg))
        if name == "perm":
            return automorphism_validate(G, [int(v) for v in arg.split(",")])
    except ValueError:
        pass
    raise UsageError(f"bad automorphism spec {spec!r} (id, neg, inner:u, pow:k, perm:...)")


def parse_gamma(spec: str):
    """``3`` or ``a,b;c,d``."""
    try:
        rows = [[int(v) for v in r.split(",")] for r in spec.split(";")]
    except ValueError:
        raise UsageError(f"bad gamma {spec!r} (an integer or rows like 1,1;0,1)") from None
    return rows[0][0] if len(rows) == 1 and len(rows[0]) == 1 else rows


def parse_family(spec: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in spec.split(",") if v != "")
    except ValueError:
        raise UsageError(f"bad family {spec!r} (comma-separated indices)") from None


def read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_rack(path: str) -> FiniteRack:
    return io.parse_rack(read_text(path), name=Path(path).name)


# Verbs -----------------------------------------------------------------------------

def build(kind: str, params: list[str], cap: int):
    """Returns ``(text, summary)``; ``text`` is a rack or group file."""
    need = {"trivial": 1, "dihedral": 1, "conj": 1, "conjphi": 2, "core": 1,
            "alexander": 2, "pivot": 2, "gphi": 2, "group": 1}[kind]
    if len(params) != need:
        raise UsageError(f"new {kind} takes {need} argument(s)")
    try:
        if kind == "trivial":
            X = trivial_rack(int(params[0]))
        elif kind == "dihedral":
            X = dihedral_quandle(int(params[0]))
        elif kind == "alexander":
            X = alexander_quandle(alexander_module(int(params[0]), parse_gamma(params[1])), cap=cap)
        else:
            G = parse_group_spec(params[0])
            if kind == "group":
                return io.format_table(G.table), f"group {G.name} order {G.order}"
            if kind == "conj":
                X = conj_quandle(G)
            elif kind == "core":
                X = core_quandle(G)
            elif kind == "conjphi":
                X = conj_phi_quandle(G, parse_phi(G, params[1]))
            elif kind == "gphi":
                X = gphi_quandle(G, parse_phi(G, params[1]))
            else:
                X = pivot_quandle(G, int(params[1]), cap=cap)
    except ValueError as exc:
        if isinstance(exc, QuandleKitError):
            raise
        raise UsageError(str(exc)) from None
    return io.format_table(X.table), f"rack {X.name} size {X.size}"


def cmd_new(a, out):
    text, summary = build(a.kind, a.params, a.cap)
    if a.output:
        Path(a.output).write_text(text)
        out.write(f"wrote {summary} to {a.output}\n")
    else:
        out.write(text)


def _yn(b) -> str:
    return "yes" if b else "no"


def _orbits(X: FiniteRack) -> str:
    return " ".join("{" + ",".join(map(str, o)) + "}" for o in X.orbit_partition)


def cmd_check(a, out):
    X = load_rack(a.rack)
    out.write("valid: yes\n")
    out.write(f"size: {X.size}\n")
    out.write(f"quandle: {_yn(X.is_quandle)}\n")
    out.write(f"involutive: {_yn(X.is_involutive)}\n")
    out.write(f"trivial: {_yn(X.is_trivial)}\n")
    out.write(f"connected: {_yn(X.is_connected)}\n")
    out.write(f"orbits: {_orbits(X)}\n")
    out.write(f"inner_group_order: {inner_group(X, a.closure_cap).order}\n")


def cmd_orbits(a, out):
    X = load_rack(a.rack)
    out.write(f"orbit_count: {len(X.orbit_partition)}\n")
    for i, o in enumerate(X.orbit_partition):
        out.write(f"orbit {i}: {{{','.join(map(str, o))}}}\n")
    out.write(f"dual_rank: {dual_rank(X)}\n")


def _center_lines(res) -> str:
    wit = " ".join(fmt(w) for w in res.witnesses)
    status = "exact" if res.exact else "partial"
    return f"order={res.order} count={res.count} {status}\nwitnesses: {wit}\n".replace(": \n", ":\n")


def cmd_stab(a, out):
    X = load_rack(a.rack)
    if a.family is not None:
        fam = parse_family(a.family)
        if any(not 0 <= u < X.size for u in fam):
            raise UsageError("family entries must be rack elements")
        ok = all(X.act(x, fam) == x for x in range(X.size))
        out.write(f"family {fmt(fam)} stabilizing: {_yn(ok)}\n")
        return
    orders = [a.order] if a.order else list(range(1, a.upto + 1))
    least = None
    for n in orders:
        try:
            res = search_center(X, n, a.witnesses, budget=a.budget, jobs=a.jobs,
                                closure_cap=a.closure_cap)
        except BudgetExceeded as exc:
            if exc.partial is not None:
                out.write(_center_lines(exc.partial))
            raise
        out.write(_center_lines(res))
        if least is None and res.count:
            least = n
    if len(orders) > 1:
        out.write(f"least_stable_order: {least if least is not None else 'none-in-range'}\n")


def cmd_pivot(a, out):
    G = parse_group_spec(a.group)
    for n in range(1, a.upto + 1):
        c = pivot_bijection_check(G, n)
        out.write(f"{G.name} n={n} center={c.center_count} pivot={c.pivot_count} "
                  f"bijection={'verified' if c.match else 'FAILED'} "
                  f"identity_map={_yn(c.identity_map_match)}\n")


def _load_action(X: FiniteRack, path: str | None):
    if path is None:
        return self_action(X)
    size, n, table = io.parse_action(read_text(path))
    if n != X.size:
        raise io.FormatError(f"action file is for a rack of size {n}, rack has size {X.size}")
    return action_validate(X, size, table)


def cmd_action(a, out):
    X = load_rack(a.rack)
    A = _load_action(X, a.action)
    out.write(f"valid: yes\nset_size: {A.set_size}\n")
    out.write(f"faithful: {_yn(is_faithful(A))}\n")
    strong, conflict = is_strong_action(A, a.closure_cap)
    out.write(f"strong: {_yn(strong)}\n")
    if conflict:
        out.write(f"conflict: {fmt(conflict[0])} {fmt(conflict[1])}\n")
    if a.order:
        u = approximate_units(A, a.order, a.budget, a.closure_cap)
        out.write(f"approximate_units order={a.order} count={len(u.units)}\n")
        out.write(f"witnesses: {' '.join(fmt(w) for w in u.units[:a.witnesses])}\n".replace(": \n", ":\n"))
        out.write(f"r_units: {' '.join(map(str, u.r_units))}\n".replace(": \n", ":\n"))
        out.write(f"periodic: {_yn(u.periodic)}\n")


def _load_system(a):
    X = load_rack(a.rack)
    Q = load_rack(a.fibre) if a.fibre else X
    A = _load_action(X, a.action)
    if A.set_size != Q.size:
        raise io.FormatError(f"action set has size {A.set_size}, fibre has size {Q.size}")
    if a.cocycle is None:
        if a.fibre or a.action:
            raise UsageError("the canonical cocycle uses the self-action; give a cocycle file")
        D = canonical_cocycle(A)
    else:
        n, k, D = io.parse_cocycle(read_text(a.cocycle))
        if (n, k) != (X.size, Q.size):
            raise io.FormatError(f"cocycle header {n} {k} does not match sizes {X.size} {Q.size}")
    return cocycle_validate(X, Q, A, D)


def cmd_cocycle(a, out):
    T = _load_system(a)
    if a.output:
        Path(a.output).write_text(io.format_cocycle(T.table))
        out.write(f"wrote cocycle to {a.output}\n")
    out.write("valid: yes\n")
    w = fibre_distributivity_witness(T)
    out.write(f"bundle_condition: {'holds' if w is None else 'fails'}\n")
    if w is not None:
        out.write(f"witness: {fmt(w)}\n")


def cmd_cross(a, out):
    T = _load_system(a)
    C = cross_product(T, cap=a.cap)
    out.write(f"cross_product_size: {C.size}\nquandle: {_yn(C.is_quandle)}\n")
    if a.output:
        Path(a.output).write_text(io.format_table(C.table))
        out.write(f"wrote cross product to {a.output}\n")
    for n in ([a.order] if a.order else range(1, a.upto + 1)):
        r = crossproduct_stability_check(T, n, max_witnesses=a.witnesses)
        out.write(f"order={n} fibrewise={r.count} direct={r.direct_count} "
                  f"{'agree' if r.agree else 'DISAGREE'}\n")
        out.write(f"witnesses: {' '.join(fmt(w) for w in r.witnesses)}\n".replace(": \n", ":\n"))


def cmd_bundle(a, out):
    X = load_rack(a.rack)
    if a.bundle:
        n, k, S = io.parse_bundle(read_text(a.bundle))
        if n != X.size:
            raise io.FormatError(f"bundle header is for a rack of size {n}, rack has size {X.size}")
    else:
        T = _load_system(argparse.Namespace(rack=a.rack, fibre=None, action=None,
                                            cocycle=a.from_cocycle))
        S, k = bundle_from_cocycle(T), T.Q.size
    B = bundle_validate(X, k, S)
    if a.output:
        Path(a.output).write_text(io.format_bundle(B.tables))
        out.write(f"wrote bundle to {a.output}\n")
    out.write(f"valid: yes\ncarrier: {B.carrier}\n")
    quandles = sum(all(B.tables[x, y, p, p] == p for p in range(k))
                   for x in range(X.size) for y in range(X.size))
    out.write(f"quandle_fibres: {quandles}/{X.size * X.size}\n")


def cmd_rep(a, out):
    X = load_rack(a.rack)
    if a.repfile is None:
        R = regular_rep(X, a.conductor)
    else:
        n, d, k, mats = io.parse_rep(read_text(a.repfile))
        if n != X.size:
            raise io.FormatError(f"representation is for a rack of size {n}, rack has size {X.size}")
        R = rep_validate(X, d, mats, k)
    if a.output:
        Path(a.output).write_text(io.format_rep(R))
        out.write(f"wrote representation to {a.output}\n")
    out.write(f"valid: yes\ndimension: {R.dim}\nconductor: {R.conductor}\n")
    strong, words = is_strong_rep(R, a.closure_cap)
    out.write(f"strong: {_yn(strong)}\n")
    if words:
        out.write(f"conflict: {fmt(words[0])} {fmt(words[1])}\n")
    out.write(f"commutant_dim: {len(commutant(R))}\n")
    s = invariant_subspace_search(R)
    if s.irreducible:
        out.write(f"irreducible: yes ({s.method})\n")
    else:
        basis = " ".join("[" + ",".join(v.format() for v in b) + "]" for b in s.proper)
        out.write(f"irreducible: no ({s.method})\ninvariant_subspace: {basis}\n")
    if a.equiv:
        n, d, k, mats = io.parse_rep(read_text(a.equiv))
        R2 = rep_validate(X, d, mats, k)
        out.write(f"equivalent: {_yn(rep_equivalence_check(R, R2, seed=a.seed))}\n")
    if a.constituents:
        out.write(strong_irreducible_check(X).line() + "\n")


def cmd_dual(a, out):
    X = load_rack(a.rack)
    out.write(f"dual_rank: {dual_rank(X)}\n")
    chars = []
    for path in a.characters:
        rack_path, values = io.parse_character(read_text(path), Path(path).parent)
        Y = load_rack(str(rack_path))
        if Y != X:
            raise io.FormatError(f"character {path} refers to a different rack")
        chi = RackCharacter(X, tuple(values))
        chars.append(chi)
        out.write(f"character {path}: {chi.format()} order={chi.order}\n")
    if len(chars) >= 2:
        prod = chars[0]
        for c in chars[1:]:
            prod = prod * c
        out.write(f"product: {prod.format()}\n")
    if a.roots:
        c = repstrong_vs_dual(X, a.roots)
        out.write(f"strong_onedim(k={a.roots}): {c.strong_onedim_count} "
                  f"dual_torsion: {c.dual_torsion_count} injective={_yn(c.injective)} "
                  f"homomorphism={_yn(c.homomorphism)} onto={_yn(c.onto)}\n")
    if a.rep:
        n, d, k, mats = io.parse_rep(read_text(a.rep))
        tc = trace_character(rep_validate(X, d, mats, k))
        out.write(f"trace_orbit_constant: {_yn(tc.orbit_constant)}\n")
        if tc.character is not None:
            out.write(f"trace_character: {tc.character.format()}\n")


def cmd_oracle(a, out):
    for line in SUITES[a.suite](jobs=a.jobs):
        out.write(line + "\n")


# Parser ----------------------------------------------------------------------------

def _positive(v: str) -> int:
    try:
        n = int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v!r}")
    return n


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_positive, default=SIZE_CAP, help="size cap for constructed racks")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--conductor", type=_positive, default=DEFAULT_CONDUCTOR,
                        help="cyclotomic conductor for built representations")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for searches")
    common.add_argument("--closure-cap", type=_positive, default=CLOSURE_CAP,
                        help="largest inner group enumerated before falling back to backtracking")

    p = argparse.ArgumentParser(prog="quandlekit", description="Finite racks and quandles.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    s = sub.add_parser("new", parents=[common], help="construct a rack or group table")
    s.add_argument("kind", choices=KINDS)
    s.add_argument("params", nargs="*")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_new)

    s = sub.add_parser("check", parents=[common], help="validate a rack file")
    s.add_argument("rack")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("orbits", parents=[common], help="orbit decomposition")
    s.add_argument("rack")
    s.set_defaults(func=cmd_orbits)

    s = sub.add_parser("stab", parents=[common], help="stabilizing families")
    s.add_argument("rack")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--order", type=_positive)
    g.add_argument("--upto", type=_positive, default=4)
    g.add_argument("--family", help="test one family, e.g. 0,1,1")
    s.add_argument("--witnesses", type=int, default=5)
    s.set_defaults(func=cmd_stab)

    s = sub.add_parser("pivot", parents=[common], help="compare S^n(Conj(G)) with P^n(G)")
    s.add_argument("group")
    s.add_argument("--upto", type=_positive, default=3)
    s.set_defaults(func=cmd_pivot)

    s = sub.add_parser("action", parents=[common], help="validate a rack action")
    s.add_argument("rack")
    s.add_argument("action", nargs="?", help="action file (default: self-action)")
    s.add_argument("--order", type=_positive, help="list approximate units of this order")
    s.add_argument("--witnesses", type=int, default=5)
    s.set_defaults(func=cmd_action)

    for verb, helptext, func in (("cocycle", "validate a cocycle", cmd_cocycle),
                                 ("cross", "cross product and its stability", cmd_cross)):
        s = sub.add_parser(verb, parents=[common], help=helptext)
        s.add_argument("rack")
        s.add_argument("cocycle", nargs="?", help="cocycle file (default: canonical cocycle)")
        s.add_argument("--fibre", help="fibre rack file (default: the rack itself)")
        s.add_argument("--action", help="action file (default: self-action)")
        s.add_argument("-o", "--output")
        if verb == "cross":
            g = s.add_mutually_exclusive_group()
            g.add_argument("--order", type=_positive)
            g.add_argument("--upto", type=_positive, default=3)
            s.add_argument("--witnesses", type=int, default=3)
        s.set_defaults(func=func)

    s = sub.add_parser("bundle", parents=[common], help="validate a bundle of racks")
    s.add_argument("rack")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("bundle", nargs="?")
    g.add_argument("--from-cocycle", metavar="COCYCLE",
                   help="bundle of a cocycle over the self-action ('canonical' for the canonical one)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_bundle)

    s = sub.add_parser("rep", parents=[common], help="analyse a representation")
    s.add_argument("rack")
    s.add_argument("repfile", nargs="?", help="representation file (default: regular)")
    s.add_argument("--equiv", help="second representation to compare with")
    s.add_argument("--constituents", action="store_true",
                   help="decompose the regular representation of the rack")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_rep)

    s = sub.add_parser("dual", parents=[common], help="characters and the dual group")
    s.add_argument("rack")
    s.add_argument("characters", nargs="*")
    s.add_argument("--roots", type=_positive, help="compare strong 1-dim reps in mu_k with k-torsion")
    s.add_argument("--rep", help="trace character of a representation file")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("oracle", parents=[common], help="run a theorem-versus-search suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if a.verb == "bundle" and a.from_cocycle == "canonical":
        a.from_cocycle = None
    try:
        a.func(a, out)
    except UsageError as exc:
        sys.stderr.write(f"quandlekit {a.verb}: error: {exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        out.write(f"invalid: {exc}\n")
        if exc.witness:
            out.write(f"witness: {fmt(exc.witness)}\n")
        return EXIT_INVALID
    except (ResourceError, ConductorTooSmall, Inconclusive) as exc:
        out.write(f"incomplete: {exc}\n")
        return EXIT_RESOURCE
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
