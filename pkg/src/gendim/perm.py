"""Permutations, stabilizer chains and enumerated permutation groups.

Points are 0-based.  Composition is left to right: ``p * q`` applies ``p``
first and then ``q``, so ``(p * q)(x) == q(p(x))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Callable, Iterable, Sequence

import numpy as np

from .budget import Budgets, BudgetExceeded, DEFAULT_BUDGETS


class PermutationError(ValueError):
    pass


class Permutation:
    """Immutable permutation stored as its image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if not images:
            raise PermutationError("degree must be at least 1")
        if sorted(images) != list(range(len(images))):
            raise PermutationError(f"not a bijection: {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise PermutationError("degree must be at least 1")
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree or a in seen:
                    raise PermutationError(f"bad cycle {cyc} for degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        from math import lcm
        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    if len(p.images) != len(q.images):
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation._raw(tuple([qi[x] for x in p.images]))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p.images)
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation._raw(tuple(inv))


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``a^-1 b^-1 a b``."""
    return inverse(a) * inverse(b) * a * b


# ---------------------------------------------------------------------------
# stabilizer chain


@dataclass
class _Level:
    base: int
    gens: list[tuple[int, ...]] = field(default_factory=list)
    # orbit point -> (u, u^-1) with u[base] == point
    trans: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=dict)


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple([b[x] for x in a])


def _inv(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


class StabilizerChain:
    """Deterministic incremental Schreier-Sims."""

    def __init__(self, degree: int, gens: Iterable[tuple[int, ...]] = ()):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.levels: list[_Level] = []
        for g in gens:
            self.add(g)

    def copy(self) -> "StabilizerChain":
        c = StabilizerChain(self.degree)
        c.levels = [_Level(l.base, list(l.gens), dict(l.trans)) for l in self.levels]
        return c

    @property
    def base(self) -> list[int]:
        return [l.base for l in self.levels]

    def order(self) -> int:
        return prod(len(l.trans) for l in self.levels)

    def strip(self, g: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        for j in range(start, len(self.levels)):
            lvl = self.levels[j]
            t = lvl.trans.get(g[lvl.base])
            if t is None:
                return g, j
            g = _mul(g, t[1])
        return g, len(self.levels)

    def contains(self, g: tuple[int, ...]) -> bool:
        h, _ = self.strip(g)
        return h == self.identity

    def add(self, g: tuple[int, ...], start: int = 0) -> bool:
        """Add ``g`` (which must fix the first ``start`` base points). Returns True if the group grew."""
        h, j = self.strip(g, start)
        if h == self.identity:
            return False
        if j == len(self.levels):
            moved = next(i for i, x in enumerate(h) if x != i)
            lvl = _Level(moved)
            lvl.trans[moved] = (self.identity, self.identity)
            self.levels.append(lvl)
        # h fixes the base points before level j, so it generates at every level up to j
        for k in range(j, start - 1, -1):
            self._add_to_level(k, h)
        return True

    def _add_to_level(self, j: int, h: tuple[int, ...]) -> None:
        lvl = self.levels[j]
        lvl.gens.append(h)
        pending = [(pt, h) for pt in list(lvl.trans)]
        while pending:
            pt, s = pending.pop()
            u = lvl.trans[pt][0]
            img = s[pt]
            us = _mul(u, s)
            t = lvl.trans.get(img)
            if t is None:
                lvl.trans[img] = (us, _inv(us))
                pending.extend((img, gen) for gen in lvl.gens)
            else:
                sch = _mul(us, t[1])
                if sch != self.identity:
                    self.add(sch, j + 1)


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """Permutation group given by generators, with a lazily built stabilizer chain."""

    def __init__(self, degree: int, gens: Iterable[Permutation] = (), name: str | None = None):
        if degree < 1:
            raise PermutationError("degree must be at least 1")
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in gens]
        for g in gens:
            if g.degree != degree:
                raise PermutationError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.gens: list[Permutation] = [g for g in gens if not g.is_identity()]
        self.name = name

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.gens)}>"

    @cached_property
    def chain(self) -> StabilizerChain:
        return StabilizerChain(self.degree, (g.images for g in self.gens))

    @property
    def order(self) -> int:
        return self.chain.order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, p: Permutation) -> bool:
        return contains(self, p)

    def __contains__(self, p: Permutation) -> bool:
        return contains(self, p)

    def is_trivial(self) -> bool:
        return not self.gens

    def is_abelian(self) -> bool:
        return all(a * b == b * a for i, a in enumerate(self.gens) for b in self.gens[i + 1:])

    def subgroup(self, gens: Iterable[Permutation], name: str | None = None) -> "PermGroup":
        return PermGroup(self.degree, gens, name=name)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.gens)

    def same_group(self, other: "PermGroup") -> bool:
        return self.order == other.order and self.is_subgroup_of(other)

    def is_normal_in(self, G: "PermGroup") -> bool:
        return self.is_subgroup_of(G) and all(
            self.contains(inverse(s) * h * s) for s in G.gens for h in self.gens)

    def random_element(self, rng) -> Permutation:
        """Uniform element via the transversal product."""
        g = self.chain.identity
        for lvl in reversed(self.chain.levels):
            keys = sorted(lvl.trans)
            g = _mul(g, lvl.trans[keys[rng.randrange(len(keys))]][0])
        return Permutation._raw(g)

    def elements(self, budgets: Budgets = DEFAULT_BUDGETS) -> "ElementTable":
        return enumerate_elements(self, budgets)

    @cached_property
    def table(self) -> "ElementTable":
        return enumerate_elements(self)

    def content_key(self) -> tuple:
        return (self.degree, tuple(sorted(g.images for g in self.gens)))


def group_order(gens: Sequence[Permutation], degree: int | None = None) -> int:
    if degree is None:
        if not gens:
            return 1
        degree = gens[0].degree
    return PermGroup(degree, gens).order


def contains(G: PermGroup, p: Permutation) -> bool:
    if p.degree != G.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {G.degree}")
    return G.chain.contains(p.images)


# ---------------------------------------------------------------------------
# enumerated regime


class ElementTable:
    """All elements of a group in breadth-first order from its sorted generators.

    Position 0 is the identity.  The Cayley table ``mul[a, b]`` (index of
    ``elements[a] * elements[b]``) is built on demand.
    """

    def __init__(self, group: PermGroup, arr: np.ndarray, gen_idx: list[int]):
        self.group = group
        self.arr = arr
        self.n = arr.shape[0]
        self.gen_idx = gen_idx
        self._base = group.chain.base
        self._setup_keys()

    def _setup_keys(self) -> None:
        d = self.group.degree
        base = self._base or [0]
        self._radix = d ** len(base) < 2 ** 62
        if self._radix:
            w = np.array([d ** k for k in range(len(base))], dtype=np.int64)
            self._w = w
            keys = self.arr[:, base].astype(np.int64) @ w
            self._order_keys = np.argsort(keys, kind="stable")
            self._sorted_keys = keys[self._order_keys]
        else:
            self._dict = {self.arr[i, base].tobytes(): i for i in range(self.n)}

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Indices of the given permutation rows (which must be group elements)."""
        base = self._base or [0]
        if self._radix:
            keys = rows[..., base].astype(np.int64) @ self._w
            pos = np.searchsorted(self._sorted_keys, keys)
            return self._order_keys[pos]
        flat = rows.reshape(-1, rows.shape[-1])
        out = np.array([self._dict[r[base].tobytes()] for r in flat], dtype=np.int64)
        return out.reshape(rows.shape[:-1])

    def __len__(self) -> int:
        return self.n

    def perm(self, i: int) -> Permutation:
        return Permutation._raw(tuple(int(x) for x in self.arr[i]))

    @cached_property
    def elements(self) -> list[Permutation]:
        return [self.perm(i) for i in range(self.n)]

    def index(self, p: Permutation) -> int:
        if p.degree != self.group.degree:
            raise PermutationError("degree mismatch")
        i = int(self.lookup(np.array(p.images, dtype=self.arr.dtype)))
        if tuple(int(x) for x in self.arr[i]) != p.images:
            raise KeyError(f"{p} is not an element of the group")
        return i

    def __contains__(self, p: Permutation) -> bool:
        try:
            self.index(p)
            return True
        except KeyError:
            return False

    @cached_property
    def mul(self) -> np.ndarray:
        n, arr = self.n, self.arr
        if n > self.table_cap:
            raise BudgetExceeded(f"Cayley table for order {n} exceeds cap {self.table_cap}")
        dtype = np.int16 if n < 2 ** 15 else np.int32
        table = np.empty((n, n), dtype=dtype)
        for b in range(n):
            table[:, b] = self.lookup(arr[b][arr])
        return table

    table_cap = DEFAULT_BUDGETS.max_table_order

    @cached_property
    def inv(self) -> np.ndarray:
        return np.argmin(self.mul, axis=1)

    @cached_property
    def orders(self) -> np.ndarray:
        mul = self.mul
        idx = np.arange(self.n)
        out = np.zeros(self.n, dtype=np.int64)
        out[0] = 1
        cur = idx.copy()
        k = 1
        while (out == 0).any():
            cur = mul[cur, idx]
            k += 1
            hit = (cur == 0) & (out == 0)
            out[hit] = k
        return out

    def conj_map(self, s: int) -> np.ndarray:
        """Index permutation x -> s^-1 x s."""
        mul = self.mul
        return mul[mul[self.inv[s], :], s].astype(np.int64)

    def closure(self, gens: Sequence[int], start: np.ndarray | None = None) -> np.ndarray:
        """Boolean membership of the subgroup generated by ``gens`` (and ``start`` members)."""
        mul = self.mul
        member = np.zeros(self.n, dtype=bool)
        member[0] = True
        if start is not None:
            member |= start
        gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
        frontier = np.flatnonzero(member)
        if len(gens) == 0:
            return member
        while len(frontier):
            cand = mul[np.ix_(frontier, gens)].ravel()
            cand = cand[~member[cand]]
            if not len(cand):
                break
            cand = np.unique(cand)
            member[cand] = True
            frontier = cand
        return member


def enumerate_elements(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> ElementTable:
    order = G.order
    if order > budgets.max_order_enumerate:
        raise BudgetExceeded(f"order {order} exceeds enumeration cap {budgets.max_order_enumerate}")
    d = G.degree
    dtype = np.int16 if d < 2 ** 15 else np.int32
    gens = sorted(set(G.gens), key=lambda g: g.images)
    garr = [np.array(g.images, dtype=dtype) for g in gens]
    base = G.chain.base or [0]
    radix = d ** len(base) < 2 ** 62
    w = np.array([d ** k for k in range(len(base))], dtype=np.int64) if radix else None

    def keys_of(rows):
        if radix:
            return rows[:, base].astype(np.int64) @ w
        return [r[base].tobytes() for r in rows]

    ident = np.arange(d, dtype=dtype)[None, :]
    blocks = [ident]
    seen = set(keys_of(ident).tolist() if radix else keys_of(ident))
    frontier = ident
    while len(frontier):
        # candidates in (parent, generator) order
        cand = np.stack([g[frontier] for g in garr], axis=1).reshape(-1, d) if garr else frontier[:0]
        ks = keys_of(cand)
        ks = ks.tolist() if radix else ks
        new_rows = []
        for i, k in enumerate(ks):
            if k not in seen:
                seen.add(k)
                new_rows.append(i)
        frontier = cand[new_rows]
        if len(frontier):
            blocks.append(frontier)
    arr = np.concatenate(blocks, axis=0)
    if arr.shape[0] != order:
        raise AssertionError(f"closure size {arr.shape[0]} disagrees with chain order {order}")
    table = ElementTable(G, arr, [])
    table.table_cap = budgets.max_table_order
    table.gen_idx = [table.index(g) for g in G.gens]
    return table


# ---------------------------------------------------------------------------
# derived subgroups, normal closure, quotients, Sylow


def normal_closure(G: PermGroup, gens: Iterable[Permutation]) -> PermGroup:
    chain = StabilizerChain(G.degree)
    found: list[Permutation] = []
    queue = list(gens)
    while queue:
        h = queue.pop()
        if chain.add(h.images):
            found.append(h)
            queue.extend(inverse(s) * h * s for s in G.gens)
    N = PermGroup(G.degree, found)
    N.__dict__["chain"] = chain
    return N


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = [commutator(a, b) for i, a in enumerate(G.gens) for b in G.gens[i + 1:]]
    return normal_closure(G, [c for c in comms if not c.is_identity()])


def derived_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)
        if D.order == 1:
            return series


def is_solvable(G: PermGroup) -> bool:
    return derived_series(G)[-1].order == 1


def right_cosets(G: PermGroup, H_contains: Callable[[Permutation], bool], cap: int,
                 key: Callable[[Permutation], object] | None = None) -> list[Permutation]:
    """One representative per right coset ``H g`` of a subgroup given by membership.

    ``key``, when given, must be a complete coset invariant (``key(a) == key(b)``
    iff ``H a == H b``); otherwise cosets are told apart by membership of ``a b^-1``.
    """
    reps = [G.identity()]
    keys = {key(reps[0]): 0} if key else None
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for s in G.gens:
            c = r * s
            if key is not None:
                k = key(c)
                if k in keys:
                    continue
                keys[k] = len(reps)
            elif any(H_contains(c * inverse(x)) for x in reps):
                continue
            reps.append(c)
            if len(reps) > cap:
                raise BudgetExceeded(f"more than {cap} cosets")
    return reps


def quotient_action(G: PermGroup, N: PermGroup, cap: int | None = None) -> PermGroup:
    """Action of ``G`` on the right cosets of a normal subgroup ``N``; faithful for ``G/N``."""
    if not N.is_normal_in(G):
        raise ValueError("N is not a normal subgroup of G")
    cap = cap if cap is not None else DEFAULT_BUDGETS.max_order_enumerate
    index = G.order // N.order
    if index > cap:
        raise BudgetExceeded(f"index {index} exceeds cap {cap}")
    if index == 1:
        return PermGroup(1, [], name=f"{G.name}/{N.name}" if G.name else None)
    key = _coset_key(G, N)
    reps = right_cosets(G, N.contains, index, key=key)
    if key is None:
        def key(g, _reps=reps):
            return next(i for i, r in enumerate(_reps) if N.contains(g * inverse(r)))
    pos = {key(r): i for i, r in enumerate(reps)}
    gens = []
    for s in G.gens:
        gens.append(Permutation([pos[key(r * s)] for r in reps]))
    Q = PermGroup(index, gens, name=f"{G.name}/N" if G.name else None)
    return Q


def _coset_key(G: PermGroup, N: PermGroup):
    try:
        table = G.table
        ids = coset_ids(table, table.closure([table.index(h) for h in N.gens]))
    except BudgetExceeded:
        return None
    return lambda g: int(ids[table.index(g)])


def coset_ids(table: ElementTable, member: np.ndarray) -> np.ndarray:
    """Label of the right coset N g containing each element (N given by membership)."""
    mul = table.mul
    ids = np.full(table.n, -1, dtype=np.int64)
    nidx = np.flatnonzero(member)
    label = 0
    for g in range(table.n):
        if ids[g] < 0:
            ids[mul[nidx, g]] = label
            label += 1
    return ids


def sylow_subgroup(G: PermGroup, p: int, budgets: Budgets = DEFAULT_BUDGETS) -> PermGroup:
    """A Sylow ``p``-subgroup, grown inside normalizers of p-subgroups (enumerated regime)."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    n = G.order
    target = 1
    while n % p == 0:
        n //= p
        target *= p
    table = G.elements(budgets) if budgets is not DEFAULT_BUDGETS else G.table
    mul, orders = table.mul, table.orders
    member = np.zeros(table.n, dtype=bool)
    member[0] = True
    gens: list[int] = []
    pel = [x for x in range(table.n) if _is_power_of(int(orders[x]), p)]
    while member.sum() < target:
        for x in pel:
            if member[x]:
                continue
            # x normalizes P iff the conjugate of every generator lies in P
            xi = table.inv[x]
            if all(member[mul[mul[xi, g], x]] for g in gens):
                gens.append(x)
                member = table.closure(gens)
                break
        else:  # pragma: no cover - Sylow theory guarantees progress
            raise AssertionError("no p-element normalizes the current p-subgroup")
    return PermGroup(G.degree, [table.perm(g) for g in gens])


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        while n % q == 0:
            out.append(q)
            n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out
