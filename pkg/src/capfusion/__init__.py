"""Finite-group engine for cover-avoid (CAP) subgroups and group-realized fusion systems."""

from .builders import GroupSpec, build_group, parse_builtin, resolve
from .cap import (
    avoids, covers, is_cap, is_p_cap, is_partial_cap, is_strong_cap, is_strong_p_cap,
)
from .chief import all_chief_factors, all_chief_series, classify, u_hypercentre
from .fusion import fusion_system, is_supersolvable_fusion
from .groups import FiniteGroup, Subgroup
from .structure import enumerate_subgroups, sylow_subgroup

__version__ = "0.1.0"

__all__ = [
    "GroupSpec", "build_group", "parse_builtin", "resolve",
    "avoids", "covers", "is_cap", "is_p_cap", "is_partial_cap", "is_strong_cap", "is_strong_p_cap",
    "all_chief_factors", "all_chief_series", "classify", "u_hypercentre",
    "fusion_system", "is_supersolvable_fusion", "FiniteGroup", "Subgroup",
    "enumerate_subgroups", "sylow_subgroup",
]
