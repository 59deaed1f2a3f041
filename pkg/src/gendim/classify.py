"""Structural predicates: abelian, nilpotent, solvable, supersolvable and friends.

Flags that need the subgroup lattice are ``None`` when the lattice is out of
budget.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .budget import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .lattice import SubgroupLattice, SubgroupNode, lattice_of
from .perm import (PermGroup, commutator, derived_subgroup, is_solvable, normal_closure, prime_factors,
                   quotient_action)


@dataclass
class ClassificationReport:
    abelian: bool
    nilpotent: bool
    solvable: bool
    supersolvable: bool | None
    frattini_free: bool | None
    phi_meets_derived_trivial: bool | None
    flat: bool | None = None
    supersolvable_series: list[int] | None = None  # node ids from 1 up to G
    counterwitness: int | None = None  # a maximal subgroup of non-prime index

    def as_dict(self) -> dict:
        return {
            "abelian": self.abelian,
            "nilpotent": self.nilpotent,
            "solvable": self.solvable,
            "supersolvable": self.supersolvable,
            "frattini_free": self.frattini_free,
            "phi_meets_derived_trivial": self.phi_meets_derived_trivial,
            "flat": self.flat,
        }


def lower_central_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while True:
        C = series[-1]
        comms = [commutator(a, b) for a in C.gens for b in G.gens]
        D = normal_closure(G, [c for c in comms if not c.is_identity()])
        if D.order == C.order:
            return series
        series.append(D)
        if D.order == 1:
            return series


def is_nilpotent(G: PermGroup) -> bool:
    return lower_central_series(G)[-1].order == 1


def _is_prime(n: int) -> bool:
    return n > 1 and prime_factors(n) == [n]


def is_supersolvable_by_maximals(lat: SubgroupLattice) -> tuple[bool, int | None]:
    """Every maximal subgroup has prime index; returns a bad maximal subgroup otherwise."""
    top = lat.top
    for M in lat.maximal_in(top):
        if not _is_prime(top.order // M.order):
            return False, M.id
    return True, None


def supersolvable_series(G) -> list[SubgroupNode] | None:
    """1 = G_0 < ... < G_n = G with every G_i normal, prime quotients, primes non-increasing."""
    lat = G if isinstance(G, SubgroupLattice) else lattice_of(G)
    normals = lat.normal_subgroups()
    top = lat.top
    memo: dict[tuple[int, int], list[SubgroupNode] | None] = {}

    def up(N: SubgroupNode, last: int):
        if N is top:
            return [N]
        key = (N.id, last)
        if key in memo:
            return memo[key]
        out = None
        for K in normals:
            if K.order <= N.order or K.order % N.order:
                continue
            q = K.order // N.order
            if q > last or not _is_prime(q) or N.bits & ~K.bits:
                continue
            rest = up(K, q)
            if rest is not None:
                out = [N] + rest
                break
        memo[key] = out
        return out

    return up(lat.bottom, top.order)


def phi_meets_derived(G, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """Whether the Frattini subgroup meets the derived subgroup trivially."""
    lat = G if isinstance(G, SubgroupLattice) else lattice_of(G, budgets)
    phi = lat.frattini_of(lat.top)
    D = lat.node_of(derived_subgroup(lat.group))
    return (phi.bits & D.bits) == 1


def abelian_invariants(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> list[int]:
    """Invariant factors n_1 | n_2 | ... of G/G'."""
    D = derived_subgroup(G)
    Q = G if D.order == 1 else quotient_action(G, D, cap=budgets.max_order_enumerate)
    return abelian_group_invariants(Q, budgets)


def abelian_group_invariants(A: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> list[int]:
    """Invariant factors of an abelian group from counts of elements of p-power order."""
    if not A.is_abelian():
        raise ValueError("group is not abelian")
    n = A.order
    if n == 1:
        return []
    orders = A.elements(budgets).orders if budgets is not DEFAULT_BUDGETS else A.table.orders
    primary: list[list[int]] = []
    for p in sorted(set(prime_factors(n))):
        full = prime_factors(n).count(p)
        # log_p |{x : x^(p^k) = 1}| = sum_i min(e_i, k)
        logs = [0]
        while logs[-1] < full:
            k = len(logs)
            c = int(np.sum(p ** k % orders == 0))
            logs.append(round(np.log(c) / np.log(p)))
        at_least = [logs[k + 1] - logs[k] for k in range(len(logs) - 1)] + [0]
        exps = [k + 1 for k in range(len(at_least) - 1) for _ in range(at_least[k] - at_least[k + 1])]
        primary.append(sorted(p ** e for e in exps))
    width = max(len(x) for x in primary)
    factors = [1] * width
    for pp in primary:
        pad = [1] * (width - len(pp)) + pp
        factors = [a * b for a, b in zip(factors, pad)]
    return factors


def classify(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS, m: int | None = None,
             i: int | None = None, check_series: bool = False) -> ClassificationReport:
    abelian = G.is_abelian()
    nilpotent = abelian or is_nilpotent(G)
    solvable = nilpotent or is_solvable(G)
    try:
        lat = lattice_of(G, budgets)
    except BudgetExceeded:
        lat = None
    rep = ClassificationReport(abelian, nilpotent, solvable, None, None, None)
    if lat is not None:
        ss, bad = is_supersolvable_by_maximals(lat)
        rep.supersolvable = ss
        rep.counterwitness = bad
        phi = lat.frattini_of(lat.top)
        rep.frattini_free = phi.order == 1
        rep.phi_meets_derived_trivial = phi_meets_derived(lat)
        if check_series or ss:
            series = supersolvable_series(lat)
            if (series is not None) != ss:  # pragma: no cover - equivalent definitions
                raise AssertionError("supersolvability criteria disagree")
            rep.supersolvable_series = [N.id for N in series] if series else None
    elif nilpotent or not solvable:
        rep.supersolvable = nilpotent
    if m is not None and i is not None:
        rep.flat = m == i
    return rep
