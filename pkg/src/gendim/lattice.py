"""Subgroup lattices of enumerated groups, plus coset-based maximality for large ones."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .budget import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .perm import (ElementTable, Permutation, PermGroup, StabilizerChain, enumerate_elements,
                   inverse, right_cosets)


def bits_from_mask(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def mask_from_bits(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def indices_from_bits(bits: int, n: int) -> np.ndarray:
    return np.flatnonzero(mask_from_bits(bits, n))


def bits_from_indices(idx) -> int:
    out = 0
    for i in idx:
        out |= 1 << int(i)
    return out


@dataclass(eq=False)
class SubgroupNode:
    id: int
    bits: int
    order: int
    gens: tuple[int, ...]
    lattice: "SubgroupLattice" = field(repr=False)
    normal: bool = False
    maximal: bool = False
    abelian: bool = False

    def __repr__(self) -> str:
        return f"<SubgroupNode {self.id} order={self.order}>"

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def issubset(self, other: "SubgroupNode") -> bool:
        return self.bits & ~other.bits == 0

    @cached_property
    def members(self) -> np.ndarray:
        return indices_from_bits(self.bits, self.lattice.table.n)

    @cached_property
    def mask(self) -> np.ndarray:
        return mask_from_bits(self.bits, self.lattice.table.n)

    def perms(self) -> list[Permutation]:
        return [self.lattice.table.perm(int(i)) for i in self.members]

    def generators(self) -> list[Permutation]:
        return [self.lattice.table.perm(g) for g in self.gens]

    def as_group(self, name: str | None = None) -> PermGroup:
        return PermGroup(self.lattice.group.degree, self.generators(), name=name)


class SubgroupLattice:
    """Every subgroup of an enumerated group, as bitsets over its element table.

    Built by closing cyclic subgroups of prime-power order under joins, one
    conjugacy-class representative at a time.  Node ids follow (order, bits).
    """

    def __init__(self, group: PermGroup, budgets: Budgets = DEFAULT_BUDGETS):
        self.group = group
        self.budgets = budgets
        self.table: ElementTable = group.table if budgets is DEFAULT_BUDGETS else enumerate_elements(group, budgets)
        self.n = self.table.n
        self._build()

    # -- construction -------------------------------------------------------
    def _build(self) -> None:
        t = self.table
        n = t.n
        orders = t.orders
        self._conj = [t.conj_map(s) for s in t.gen_idx]
        mul = t.mul

        cyclic: dict[int, int] = {}
        powers: dict[int, np.ndarray] = {}
        for x in range(1, n):
            o = int(orders[x])
            if len(_distinct_primes(o)) != 1:
                continue
            pw = [0]
            y = x
            while y != 0:
                pw.append(y)
                y = int(mul[y, x])
            b = bits_from_indices(pw)
            if b not in cyclic:
                cyclic[b] = x
                powers[x] = np.array(pw, dtype=np.int64)
        self.cyclic_pp = sorted(cyclic.items(), key=lambda kv: kv[1])
        cconj = {c: t.conj_map(c) for c in cyclic.values()}

        found: dict[int, tuple[int, ...]] = {1: ()}
        queue: list[int] = [1]
        budget = self.budgets.max_lattice_nodes
        qi = 0
        while qi < len(queue):
            hb = queue[qi]
            qi += 1
            hgens = found[hb]
            hmask = mask_from_bits(hb, n)
            hidx = np.flatnonzero(hmask)
            for cb, c in self.cyclic_pp:
                if cb & ~hb == 0:
                    continue
                if hmask[cconj[c][list(hgens)]].all():
                    # c normalises H, so the join is H<c>
                    jmask = np.zeros(n, dtype=bool)
                    jmask[mul[np.ix_(hidx, powers[c])].ravel()] = True
                else:
                    jmask = t.closure(list(hgens) + [c], start=hmask)
                jb = bits_from_mask(jmask)
                if jb in found:
                    continue
                jgens = tuple(hgens) + (c,)
                for b, g in self._conjugates(jb, jgens):
                    found[b] = g
                if len(found) > budget:
                    raise BudgetExceeded(f"more than {budget} subgroups")
                queue.append(jb)

        keys = sorted(found, key=lambda b: (b.bit_count(), b))
        self.nodes: list[SubgroupNode] = []
        self.by_bits: dict[int, SubgroupNode] = {}
        for i, b in enumerate(keys):
            node = SubgroupNode(i, b, b.bit_count(), tuple(sorted(found[b])), self)
            self.nodes.append(node)
            self.by_bits[b] = node

        seen: set[int] = set()
        self.classes: list[list[int]] = []
        self.class_of: list[int] = [0] * len(self.nodes)
        for node in self.nodes:
            if node.bits in seen:
                continue
            orbit = [self.by_bits[b].id for b, _ in self._conjugates(node.bits, node.gens)]
            orbit.sort()
            for i in orbit:
                seen.add(self.nodes[i].bits)
                self.class_of[i] = len(self.classes)
            self.classes.append(orbit)
        for cls in self.classes:
            if len(cls) == 1:
                self.nodes[cls[0]].normal = True
        for node in self.nodes:
            g = node.gens
            node.abelian = all(mul[a, b] == mul[b, a] for i, a in enumerate(g) for b in g[i + 1:])
        for m in self.maximal_in(self.top):
            m.maximal = True

    def _conjugates(self, bits: int, gens: Sequence[int]):
        """Orbit of a subgroup under conjugation; yields (bits, gens) pairs."""
        n = self.n
        start = (bits, tuple(gens))
        out = {bits: start[1]}
        stack = [start]
        while stack:
            b, g = stack.pop()
            idx = indices_from_bits(b, n)
            for cm in self._conj:
                nb = bits_from_indices(cm[idx])
                if nb not in out:
                    ng = tuple(int(cm[x]) for x in g)
                    out[nb] = ng
                    stack.append((nb, ng))
        return list(out.items())

    # -- queries ------------------------------------------------------------
    @property
    def top(self) -> SubgroupNode:
        return self.nodes[-1]

    @property
    def bottom(self) -> SubgroupNode:
        return self.nodes[0]

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def node(self, bits: int) -> SubgroupNode:
        try:
            return self.by_bits[bits]
        except KeyError:
            raise KeyError("bitset is not a subgroup of this lattice") from None

    def node_of(self, H: PermGroup | Sequence[Permutation]) -> SubgroupNode:
        gens = H.gens if isinstance(H, PermGroup) else list(H)
        idx = [self.table.index(g) for g in gens]
        return self.node(bits_from_mask(self.table.closure(idx)))

    def subgroup_generated(self, idx: Sequence[int]) -> SubgroupNode:
        return self.node(bits_from_mask(self.table.closure(idx)))

    def class_reps(self) -> list[SubgroupNode]:
        return [self.nodes[c[0]] for c in self.classes]

    def conjugacy_class(self, node: SubgroupNode) -> list[SubgroupNode]:
        return [self.nodes[i] for i in self.classes[self.class_of[node.id]]]

    def subgroups_of(self, H: SubgroupNode) -> list[SubgroupNode]:
        hb, ho = H.bits, H.order
        return [K for K in self.nodes[:H.id + 1] if ho % K.order == 0 and K.bits & ~hb == 0]

    def supergroups_of(self, H: SubgroupNode) -> list[SubgroupNode]:
        hb, ho = H.bits, H.order
        return [K for K in self.nodes[H.id:] if K.order % ho == 0 and hb & ~K.bits == 0]

    def maximal_in(self, H: SubgroupNode) -> list[SubgroupNode]:
        memo = self.__dict__.setdefault("_max_memo", {})
        if H.id in memo:
            return memo[H.id]
        subs = [K for K in self.subgroups_of(H) if K is not H]
        subs.sort(key=lambda K: (-K.order, K.id))
        maxes: list[SubgroupNode] = []
        for K in subs:
            kb = K.bits
            if not any(kb & ~M.bits == 0 for M in maxes):
                maxes.append(K)
        maxes.sort(key=lambda K: K.id)
        memo[H.id] = maxes
        return maxes

    def frattini_of(self, H: SubgroupNode) -> SubgroupNode:
        bits = H.bits
        for M in self.maximal_in(H):
            bits &= M.bits
        return self.node(bits)

    def intersect(self, A: SubgroupNode, B: SubgroupNode) -> SubgroupNode:
        if A.lattice is not self or B.lattice is not self:
            raise ValueError("subgroups belong to different lattices")
        return self.node(A.bits & B.bits)

    def join(self, A: SubgroupNode, B: SubgroupNode) -> SubgroupNode:
        if A.lattice is not self or B.lattice is not self:
            raise ValueError("subgroups belong to different lattices")
        if A.issubset(B):
            return B
        if B.issubset(A):
            return A
        return self.node(bits_from_mask(self.table.closure(A.gens + B.gens, start=A.mask)))

    def is_normal_in(self, N: SubgroupNode, H: SubgroupNode) -> bool:
        """Whether N is normalised by H (N need not lie in H)."""
        t = self.table
        mul, inv = t.mul, t.inv
        mask = N.mask
        for h in H.gens:
            conj = mul[mul[inv[h], N.members], h]
            if not mask[conj].all():
                return False
        return True

    def normal_subgroups(self) -> list[SubgroupNode]:
        return [N for N in self.nodes if N.normal]

    def minimal_normal_subgroups(self) -> list[SubgroupNode]:
        normals = [N for N in self.normal_subgroups() if N.order > 1]
        return [N for N in normals
                if not any(K is not N and K.bits & ~N.bits == 0 for K in normals)]

    def height_between(self, low: SubgroupNode, high: SubgroupNode) -> int:
        """Length of the longest chain of subgroups from ``low`` up to ``high``."""
        memo: dict[int, int] = {}
        inside = [K for K in self.supergroups_of(low) if K.bits & ~high.bits == 0]
        for K in sorted(inside, key=lambda K: -K.order):
            if K is high:
                memo[K.id] = 0
                continue
            memo[K.id] = 1 + max(memo[L.id] for L in inside
                                 if L.order > K.order and L.order % K.order == 0
                                 and K.bits & ~L.bits == 0)
        return memo[low.id]


def _distinct_primes(n: int) -> set[int]:
    out, q = set(), 2
    while q * q <= n:
        while n % q == 0:
            out.add(q)
            n //= q
        q += 1
    if n > 1:
        out.add(n)
    return out


def enumerate_subgroups(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> SubgroupLattice:
    return lattice_of(G, budgets)


def lattice_of(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> SubgroupLattice:
    """Cached lattice of G; a cached lattice is reused whatever the budgets."""
    lat = G.__dict__.get("_lattice")
    if lat is None:
        lat = SubgroupLattice(G, budgets)
        G.__dict__["_lattice"] = lat
    return lat


def maximal_subgroups(G: PermGroup | SubgroupLattice) -> list[SubgroupNode]:
    lat = G if isinstance(G, SubgroupLattice) else lattice_of(G)
    return lat.maximal_in(lat.top)


def frattini_subgroup(G: PermGroup | SubgroupLattice) -> SubgroupNode:
    lat = G if isinstance(G, SubgroupLattice) else lattice_of(G)
    node = lat.frattini_of(lat.top)
    node.normal = True
    return node


def intersect_subgroups(A: SubgroupNode, B: SubgroupNode) -> SubgroupNode:
    if A.lattice is not B.lattice:
        raise ValueError("subgroups belong to different lattices")
    return A.lattice.intersect(A, B)


def minimal_normal_subgroups(G: PermGroup | SubgroupLattice) -> list[SubgroupNode]:
    lat = G if isinstance(G, SubgroupLattice) else lattice_of(G)
    return lat.minimal_normal_subgroups()


# ---------------------------------------------------------------------------
# generator regime


@dataclass
class SubgroupSpec:
    """A subgroup known by generators, optionally with a fast membership test.

    ``coset_key`` must be a complete right-coset invariant when given: two
    elements get the same key iff they lie in the same coset ``M g``.
    """

    gens: list[Permutation]
    contains: Callable[[Permutation], bool] | None = None
    coset_key: Callable[[Permutation], object] | None = None
    name: str = ""

    def __post_init__(self):
        if self.contains is None and self.gens:
            deg = self.gens[0].degree
            chain = StabilizerChain(deg, (g.images for g in self.gens))
            self.contains = lambda p: chain.contains(p.images)

    @classmethod
    def from_node(cls, node: SubgroupNode) -> "SubgroupSpec":
        t = node.lattice.table
        return cls(node.generators(), contains=lambda p: t.index(p) in node if p in t else False,
                   name=f"node{node.id}")


def set_stabilizer(G: PermGroup, points: Sequence[int], cap: int = 100_000) -> SubgroupSpec:
    """Setwise stabilizer of ``points`` via Schreier generators on the orbit of the set."""
    target = frozenset(points)

    def image(g: Permutation) -> frozenset:
        return frozenset(g.images[x] for x in target)

    reps = {target: G.identity()}
    order = [target]
    i = 0
    while i < len(order):
        s_set = order[i]
        u = reps[s_set]
        i += 1
        for s in G.gens:
            img = frozenset(s.images[x] for x in s_set)
            if img not in reps:
                reps[img] = u * s
                order.append(img)
                if len(order) > cap:
                    raise BudgetExceeded(f"set orbit larger than {cap}")
    chain = StabilizerChain(G.degree)
    gens: list[Permutation] = []
    for s_set in order:
        u = reps[s_set]
        for s in G.gens:
            us = u * s
            sch = us * inverse(reps[frozenset(s.images[x] for x in s_set)])
            if chain.add(sch.images):
                gens.append(sch)
    spec = SubgroupSpec(gens, contains=lambda p: image(p) == target, coset_key=image,
                        name=f"Stab{sorted(target)}")
    spec.index = len(order)
    spec.order = chain.order()
    return spec


def is_maximal_by_cosets(G: PermGroup, M: SubgroupSpec, cap: int = 100_000) -> bool:
    """Whether ``M`` is maximal in ``G``: every coset representative outside M
    generates ``G`` together with M."""
    if not all(M.contains(g) for g in M.gens):
        raise ValueError(f"{M.name or 'M'}: a generator fails the membership test")
    if not all(M.contains(g * h) for g in M.gens for h in M.gens[:3]):
        raise ValueError(f"{M.name or 'M'} is not closed under multiplication")
    reps = right_cosets(G, M.contains, cap, key=M.coset_key)
    base = StabilizerChain(G.degree, (g.images for g in M.gens))
    if base.order() * len(reps) != G.order:
        raise ValueError(f"{M.name or 'M'}: generators do not generate the subgroup given by membership")
    if len(reps) == 1:
        return False
    target = G.order
    for r in reps[1:]:
        chain = base.copy()
        chain.add(r.images)
        if chain.order() != target:
            return False
    return True
