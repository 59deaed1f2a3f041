"""Explicit work limits.  Exceeding one is an error, never a silent truncation."""

from __future__ import annotations

from dataclasses import dataclass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Budgets:
    max_order_enumerate: int = 50_000
    max_lattice_nodes: int = 20_000
    search_nodes: int = 10_000_000
    # Cayley tables are quadratic in the order; lattices need one.
    max_table_order: int = 6_000
    max_cosets: int = 100_000


DEFAULT_BUDGETS = Budgets()
