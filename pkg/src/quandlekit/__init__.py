"""Finite racks and quandles: constructors, stability searches, rack dynamics,
representations and character duals."""

from .constructors import (
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
from .errors import QuandleKitError, ResourceError, ValidationError
from .fingroup import FiniteGroup, group_cyclic, group_from_table, group_product, group_symmetric
from .rack import FiniteRack, inner_group, orbits, rack_validate
from .stability import search_center

__all__ = [
    "FiniteGroup",
    "FiniteRack",
    "QuandleKitError",
    "ResourceError",
    "ValidationError",
    "alexander_module",
    "alexander_quandle",
    "conj_phi_quandle",
    "conj_quandle",
    "core_quandle",
    "dihedral_quandle",
    "gphi_quandle",
    "group_cyclic",
    "group_from_table",
    "group_product",
    "group_symmetric",
    "inner_group",
    "orbits",
    "pivot_quandle",
    "rack_validate",
    "search_center",
    "trivial_rack",
]
