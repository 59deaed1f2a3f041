"""Generation dimensions of finite permutation groups."""

__version__ = "0.1.0"

from .budget import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .perm import Permutation, PermGroup, compose, contains, enumerate_elements, group_order, inverse
from .lattice import (SubgroupLattice, SubgroupNode, SubgroupSpec, enumerate_subgroups, frattini_subgroup,
                      is_maximal_by_cosets, lattice_of, maximal_subgroups)
from .dimensions import (DimensionReport, dim_i, dim_i_direct, dim_m, is_general_position, is_irredundant,
                         maxdim, maxdim_lower_bound, rank_r)
from .classify import ClassificationReport, abelian_invariants, classify

__all__ = [
    "Budgets", "BudgetExceeded", "DEFAULT_BUDGETS",
    "Permutation", "PermGroup", "compose", "contains", "enumerate_elements", "group_order", "inverse",
    "SubgroupLattice", "SubgroupNode", "SubgroupSpec", "enumerate_subgroups", "frattini_subgroup",
    "is_maximal_by_cosets", "lattice_of", "maximal_subgroups",
    "DimensionReport", "dim_i", "dim_i_direct", "dim_m", "is_general_position", "is_irredundant",
    "maxdim", "maxdim_lower_bound", "rank_r",
    "ClassificationReport", "abelian_invariants", "classify",
]
