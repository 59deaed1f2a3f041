"""Generation dimensions r, m, i and MaxDim, general position and certificates.

Exact searches work in the enumerated regime.  The m and r searches use the
fact that whether a set of elements generates a subgroup H irredundantly
depends only on which maximal subgroups of H contain each element: a set
generates H iff no maximal subgroup contains all of it.  Elements are
therefore grouped by their membership signature (a bitmask over the maximal
subgroups of H) and the search runs over signatures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .budget import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .lattice import (SubgroupLattice, SubgroupNode, SubgroupSpec, bits_from_mask, indices_from_bits,
                      is_maximal_by_cosets, lattice_of)
from .perm import Permutation, PermGroup, StabilizerChain, inverse


class CertificateError(ValueError):
    pass


class NotMaximalError(ValueError):
    pass


@lru_cache(maxsize=None)
def big_omega(n: int) -> int:
    """Number of prime factors of n counted with multiplicity."""
    k, q = 0, 2
    while q * q <= n:
        while n % q == 0:
            n //= q
            k += 1
        q += 1
    return k + (n > 1)


@dataclass
class SearchResult:
    """Outcome of an exhaustive search; ``exact`` is False when a budget ran out
    and ``value`` is then only a lower bound (an upper bound for r)."""

    value: int
    witness: list = field(default_factory=list)
    exact: bool = True
    nodes: int = 0

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.exact and self.value == other
        return NotImplemented

    def __repr__(self) -> str:
        return f"{self.value}" if self.exact else f">={self.value} (bound, budget exhausted)"


class _Stop(Exception):
    pass


# ---------------------------------------------------------------------------
# sequences and families


@dataclass
class IrredundantSequence:
    elems: list[Permutation]
    dropone: list[PermGroup]
    span: PermGroup

    @classmethod
    def of(cls, elems: Sequence[Permutation]) -> "IrredundantSequence":
        elems = list(elems)
        deg = elems[0].degree if elems else 1
        drop = [PermGroup(deg, elems[:i] + elems[i + 1:]) for i in range(len(elems))]
        seq = cls(elems, drop, PermGroup(deg, elems))
        if not all(not D.contains(g) for D, g in zip(drop, elems)):
            raise ValueError("sequence is not irredundant")
        return seq

    def __len__(self) -> int:
        return len(self.elems)


@dataclass
class Certificate:
    elems: list[Permutation]

    def __len__(self) -> int:
        return len(self.elems)


@dataclass
class GeneralPositionFamily:
    members: list[SubgroupNode]
    total: SubgroupNode
    dropone_meets: list[SubgroupNode]
    certificate: Certificate | None = None

    def __len__(self) -> int:
        return len(self.members)


def generates(G: PermGroup, seq: Sequence[Permutation]) -> bool:
    return PermGroup(G.degree, seq).order == G.order


def is_irredundant(G: PermGroup, seq: Sequence[Permutation]) -> bool:
    seq = list(seq)
    for i, g in enumerate(seq):
        chain = StabilizerChain(G.degree, (h.images for h in seq[:i] + seq[i + 1:]))
        if chain.contains(g.images):
            return False
    return True


def is_irredundant_generating(G: PermGroup, seq: Sequence[Permutation]) -> bool:
    return generates(G, seq) and is_irredundant(G, seq)


# ---------------------------------------------------------------------------
# signature context for one subgroup


class _Context:
    """Membership signatures of the elements of H over H's maximal subgroups."""

    def __init__(self, lat: SubgroupLattice, H: SubgroupNode):
        self.lat, self.H = lat, H
        t = lat.table
        self.maxes = lat.maximal_in(H)
        self.full = (1 << len(self.maxes)) - 1
        members = H.members
        sig = dict.fromkeys((int(x) for x in members), 0)
        for k, M in enumerate(self.maxes):
            bit = 1 << k
            for x in M.members:
                sig[int(x)] |= bit
        self.sig = sig
        first: dict[int, int] = {}
        for x in members:
            first.setdefault(sig[int(x)], int(x))
        # distinct signatures other than "in every maximal subgroup", in element order
        self.sigs = [s for s, x in sorted(first.items(), key=lambda kv: kv[1]) if s != self.full]
        self.sig_elem = [first[s] for s in self.sigs]
        self.sig_pos = {s: i for i, s in enumerate(self.sigs)}
        self.phi_order = H.order if not self.maxes else _and_bits(M.bits for M in self.maxes).bit_count()
        self._rem: dict[int, int] = {}

    def element_classes(self) -> list[list[int]]:
        """H-conjugacy classes of elements of H, each sorted, in order of least member."""
        t = self.lat.table
        maps = [t.conj_map(h) for h in self.H.gens]
        seen: set[int] = set()
        out = []
        for x in self.H.members:
            x = int(x)
            if x in seen:
                continue
            orbit = [x]
            seen.add(x)
            i = 0
            while i < len(orbit):
                y = orbit[i]
                i += 1
                for m in maps:
                    z = int(m[y])
                    if z not in seen:
                        seen.add(z)
                        orbit.append(z)
            out.append(sorted(orbit))
        return out

    def rem_bound(self, total: int) -> int:
        """Upper bound on how many more elements an admissible set can take."""
        r = self._rem.get(total)
        if r is None:
            bits = self.H.bits
            k = 0
            t = total
            while t:
                if t & 1:
                    bits &= self.maxes[k].bits
                t >>= 1
                k += 1
            r = big_omega(self.H.order // bits.bit_count())
            self._rem[total] = r
        return r

    def first_choices(self) -> list[tuple[int, set[int]]]:
        """(signature index, signatures to skip) pairs, one per element class."""
        out = []
        done: set[int] = set()
        for cls in self.element_classes():
            pos = {self.sig_pos[self.sig[x]] for x in cls if self.sig[x] != self.full}
            if not pos:
                continue
            out.append((min(pos), set(done)))
            done |= pos
        return out


def _and_bits(it) -> int:
    acc = -1
    for b in it:
        acc &= b
    return acc


def _context(lat: SubgroupLattice, H: SubgroupNode) -> _Context:
    memo = lat.__dict__.setdefault("_ctx_memo", {})
    ctx = memo.get(H.id)
    if ctx is None:
        ctx = memo[H.id] = _Context(lat, H)
    return ctx


def _resolve(G, H: SubgroupNode | None = None,
             budgets: Budgets = DEFAULT_BUDGETS) -> tuple[SubgroupLattice, SubgroupNode]:
    if isinstance(G, SubgroupLattice):
        lat = G
    elif isinstance(G, SubgroupNode):
        return G.lattice, G
    else:
        lat = lattice_of(G, budgets)
    return lat, (H if H is not None else lat.top)


# ---------------------------------------------------------------------------
# m and r


def _m_search(ctx: _Context, budget: int, floor: int = 0) -> SearchResult:
    """Longest irredundant generating set of ctx.H; only lengths above ``floor`` are sought."""
    sigs = ctx.sigs
    L = len(sigs)
    upper = ctx.rem_bound(ctx.full)
    best_len = floor
    best: list[int] = []
    nodes = 0

    def rec(start, chosen, total, drops, skip):
        nonlocal best_len, best, nodes
        nodes += 1
        if nodes > budget:
            raise _Stop
        if total == 0:
            if len(chosen) > best_len:
                best_len, best = len(chosen), list(chosen)
            return
        k = len(chosen)
        if k + ctx.rem_bound(total) <= best_len:
            return
        for idx in range(start, L):
            if idx in skip or idx == chosen[0]:
                continue
            s = sigs[idx]
            nt = total & s
            if nt == total:
                continue
            nd = []
            for d in drops:
                dd = d & s
                if dd == nt:
                    break
                nd.append(dd)
            else:
                nd.append(total)
                chosen.append(idx)
                rec(idx + 1, chosen, nt, nd, skip)
                chosen.pop()
                if best_len >= upper:
                    return

    exact = True
    if ctx.H.order == 1:
        return SearchResult(0, [], True, 1)
    try:
        for f, skip in ctx.first_choices():
            if best_len >= upper:
                break
            rec(0, [f], sigs[f], [ctx.full], skip)
    except _Stop:
        exact = False
    witness = [ctx.sig_elem[i] for i in best]
    witness.sort()
    return SearchResult(best_len, witness, exact, nodes)


def _as_perms(lat: SubgroupLattice, idx: Sequence[int]) -> list[Permutation]:
    return [lat.table.perm(int(i)) for i in idx]


def dim_m(G, H: SubgroupNode | None = None, budgets: Budgets = DEFAULT_BUDGETS) -> SearchResult:
    """m(H): maximum size of an irredundant generating sequence (H defaults to the whole group)."""
    lat, H = _resolve(G, H, budgets)
    res = _m_search(_context(lat, H), budgets.search_nodes)
    res.witness = _as_perms(lat, res.witness)
    return res


def rank_r(G, H: SubgroupNode | None = None, budgets: Budgets = DEFAULT_BUDGETS,
           lower: int = 1) -> SearchResult:
    """r(H): minimum size of a generating sequence, by iterative deepening."""
    lat, H = _resolve(G, H, budgets)
    if H.order == 1:
        return SearchResult(0, [], True, 1)
    ctx = _context(lat, H)
    sigs = ctx.sigs
    L = len(sigs)
    nodes = 0
    budget = budgets.search_nodes

    def rec(start, chosen, total, drops, depth, skip):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Stop
        if total == 0:
            return list(chosen)
        if len(chosen) == depth:
            return None
        for idx in range(start, L):
            if idx in skip or idx == chosen[0]:
                continue
            s = sigs[idx]
            nt = total & s
            if nt == total:
                continue
            nd = []
            for d in drops:
                dd = d & s
                if dd == nt:
                    break
                nd.append(dd)
            else:
                nd.append(total)
                chosen.append(idx)
                got = rec(idx + 1, chosen, nt, nd, depth, skip)
                chosen.pop()
                if got:
                    return got
        return None

    firsts = ctx.first_choices()
    if lower <= 1:
        from .classify import abelian_invariants
        lower = len(abelian_invariants(H.as_group()))
    depth = max(1, lower)
    try:
        while True:
            for f, skip in firsts:
                got = rec(0, [f], sigs[f], [ctx.full], depth, skip)
                if got:
                    return SearchResult(depth, _as_perms(lat, sorted(ctx.sig_elem[i] for i in got)), True, nodes)
            depth += 1
            if depth > ctx.rem_bound(ctx.full):  # pragma: no cover - a generating set always exists
                raise AssertionError("no generating set found")
    except _Stop:
        return SearchResult(depth, [], False, nodes)


# ---------------------------------------------------------------------------
# i


def dim_i(G, budgets: Budgets = DEFAULT_BUDGETS) -> SearchResult:
    """i(G) = max over subgroup classes of m(H), bounded and memoised per class."""
    lat, top = _resolve(G, None, budgets)
    memo = lat.__dict__.setdefault("_m_memo", {})
    reps = lat.class_reps()

    def bound(H):
        return big_omega(H.order // lat.frattini_of(H).order)

    reps.sort(key=lambda H: (-bound(H), H.id))
    best, witness, exact, nodes = 0, [], True, 0
    for H in reps:
        b = bound(H)
        if b <= best:
            break
        cid = lat.class_of[H.id]
        if cid in memo:
            res = memo[cid]
        else:
            res = _m_search(_context(lat, H), budgets.search_nodes, floor=best)
            if res.value > best or not res.exact:
                memo[cid] = res
        nodes += res.nodes
        exact &= res.exact
        if res.value > best and res.witness:
            best, witness = res.value, res.witness
    return SearchResult(best, _as_perms(lat, witness), exact, nodes)


def dim_m_per_class(G, budgets: Budgets = DEFAULT_BUDGETS) -> dict[int, int]:
    """Exact m(H) for every conjugacy-class representative H (keyed by class index)."""
    lat, _ = _resolve(G, None, budgets)
    out = {}
    for cid, cls in enumerate(lat.classes):
        res = _m_search(_context(lat, lat.nodes[cls[0]]), budgets.search_nodes)
        if not res.exact:
            raise BudgetExceeded(f"m search for class {cid} ran out of budget")
        out[cid] = res.value
    return out


def dim_i_direct(G, budgets: Budgets = DEFAULT_BUDGETS) -> SearchResult:
    """i(G) by depth-first search over irredundant sets of cyclic subgroups.

    Independent of maximal subgroups: irredundance is tested with explicit
    subgroup closures.  Intended as a cross-check for small groups.
    """
    if isinstance(G, SubgroupLattice):
        t = G.table
    else:
        t = G.table
    n = t.n
    if n == 1:
        return SearchResult(0, [], True, 1)
    mul = t.mul
    cyc: dict[int, int] = {}
    for x in range(1, n):
        pw, y = [0], x
        while y != 0:
            pw.append(y)
            y = int(mul[y, x])
        b = 0
        for z in pw:
            b |= 1 << z
        cyc.setdefault(b, x)
    cyclics = sorted(((x, b) for b, x in cyc.items()))
    join_memo: dict[tuple[int, int], int] = {}

    def join(span_bits: int, span_gens: tuple, c: int) -> int:
        key = (span_bits, c)
        r = join_memo.get(key)
        if r is None:
            from .lattice import mask_from_bits
            r = bits_from_mask(t.closure(list(span_gens) + [c], start=mask_from_bits(span_bits, n)))
            join_memo[key] = r
        return r

    upper = big_omega(n)
    best_len, best = 0, []
    nodes = 0
    budget = budgets.search_nodes

    def rec(start, chosen, total, drops):
        # chosen: list of (elem, cbits); total/drops: (bits, gens)
        nonlocal best_len, best, nodes
        nodes += 1
        if nodes > budget:
            raise _Stop
        k = len(chosen)
        if k > best_len:
            best_len, best = k, [e for e, _ in chosen]
        if k + big_omega(n // total[0].bit_count()) <= best_len:
            return
        for idx in range(start, len(cyclics)):
            c, cb = cyclics[idx]
            if cb & ~total[0] == 0:
                continue
            nd = []
            ok = True
            for (db, dg), (e, eb) in zip(drops, chosen):
                jb = join(db, dg, c)
                if eb & ~jb == 0:
                    ok = False
                    break
                nd.append((jb, dg + (c,)))
            if not ok:
                continue
            nd.append(total)
            nt = (join(total[0], total[1], c), total[1] + (c,))
            chosen.append((c, cb))
            rec(idx + 1, chosen, nt, nd)
            chosen.pop()
            if best_len >= upper:
                return

    exact = True
    try:
        rec(0, [], (1, ()), [])
    except _Stop:
        exact = False
    return SearchResult(best_len, [t.perm(e) for e in best], exact, nodes)


# ---------------------------------------------------------------------------
# general position and MaxDim


def is_general_position(family: Sequence, certificate: Sequence[Permutation] | Certificate | None = None,
                        ambient: SubgroupNode | None = None) -> bool:
    """Each drop-one intersection strictly contains the total intersection.

    For lattice nodes this is decided from bitsets.  For generator-regime
    subgroups (``SubgroupSpec``) it is decided only through a certificate.
    """
    family = list(family)
    if not family:
        return True
    if all(isinstance(M, SubgroupNode) for M in family):
        lat = family[0].lattice
        if any(M.lattice is not lat for M in family):
            raise ValueError("subgroups from different groups")
        amb = ambient.bits if ambient is not None else lat.top.bits
        total = amb
        for M in family:
            total &= M.bits
        for i in range(len(family)):
            d = amb
            for j, M in enumerate(family):
                if j != i:
                    d &= M.bits
            if d == total:
                return False
        return True
    if certificate is None:
        raise ValueError("generator-regime families need a certificate")
    return certificate_valid(family, certificate)


def certificate_valid(family: Sequence, certificate) -> bool:
    """g_j lies in M_i exactly when j != i."""
    elems = certificate.elems if isinstance(certificate, Certificate) else list(certificate)
    if len(elems) != len(family):
        return False
    for i, M in enumerate(family):
        for j, g in enumerate(elems):
            if _member(M, g) != (i != j):
                return False
    return True


def _member(M, g: Permutation) -> bool:
    if isinstance(M, SubgroupNode):
        t = M.lattice.table
        return g in t and t.index(g) in M
    if isinstance(M, SubgroupSpec):
        return M.contains(g)
    return M.contains(g)


def subfamily_intersections_distinct(family: Sequence[SubgroupNode], ambient: SubgroupNode | None = None) -> bool:
    """The other characterisation: all 2^n subfamily intersections differ."""
    family = list(family)
    if len(family) > 15:
        raise ValueError("too many members for the 2^n check")
    amb = ambient.bits if ambient is not None else family[0].lattice.top.bits if family else 0
    seen = set()
    for mask in range(1 << len(family)):
        b = amb
        for j, M in enumerate(family):
            if mask >> j & 1:
                b &= M.bits
        if b in seen:
            return False
        seen.add(b)
    return True


def maxdim(G, budgets: Budgets = DEFAULT_BUDGETS, upper: int | None = None) -> SearchResult:
    """Largest family of maximal subgroups in general position (exact DFS)."""
    lat, top = _resolve(G, None, budgets)
    maxes = lat.maximal_in(top)
    witness_nodes: list[SubgroupNode] = []
    if not maxes:
        return SearchResult(0, [], True, 1)
    phi = _and_bits(M.bits for M in maxes).bit_count()
    hard_upper = big_omega(top.order // phi)
    if upper is not None:
        hard_upper = min(hard_upper, upper)
    bits = [M.bits for M in maxes]
    n = len(maxes)
    class_first: list[int] = []
    seen_cls = set()
    for k, M in enumerate(maxes):
        c = lat.class_of[M.id]
        if c not in seen_cls:
            seen_cls.add(c)
            class_first.append(k)
    best_len, best = 0, []
    nodes = 0
    budget = budgets.search_nodes

    def rec(start, chosen, total, drops, first):
        nonlocal best_len, best, nodes
        nodes += 1
        if nodes > budget:
            raise _Stop
        k = len(chosen)
        if k > best_len:
            best_len, best = k, list(chosen)
        if k + big_omega(total.bit_count() // phi) <= best_len:
            return
        for idx in range(start, n):
            if idx == first:
                continue
            mb = bits[idx]
            nt = total & mb
            if nt == total:
                continue
            nd = []
            for d in drops:
                dd = d & mb
                if dd == nt:
                    break
                nd.append(dd)
            else:
                nd.append(total)
                chosen.append(idx)
                rec(idx + 1, chosen, nt, nd, first)
                chosen.pop()
                if best_len >= hard_upper:
                    return

    exact = True
    try:
        for f in class_first:
            if best_len >= hard_upper:
                break
            rec(0, [f], bits[f], [top.bits], f)
    except _Stop:
        exact = False
    family = [maxes[i] for i in sorted(best)]
    return SearchResult(best_len, family, exact, nodes)


def maxdim_lower_bound(G: PermGroup, family: Sequence[SubgroupSpec], certificate, cap: int = 100_000,
                       check_maximal: bool = True) -> int:
    """Certified lower bound on MaxDim(G): declared maximal subgroups plus a certificate."""
    family = list(family)
    if not family:
        return 0
    elems = certificate.elems if isinstance(certificate, Certificate) else list(certificate)
    for g in elems:
        if not G.contains(g):
            raise CertificateError(f"certificate element {g} is not in the group")
    if not certificate_valid(family, elems):
        raise CertificateError("certificate does not satisfy g_j in M_i iff j != i")
    if check_maximal:
        for M in family:
            if not is_maximal_by_cosets(G, M, cap=cap):
                raise NotMaximalError(f"{M.name or M} is not maximal")
    return len(family)


# ---------------------------------------------------------------------------
# sequence <-> family


def family_from_sequence(G, seq: Sequence[Permutation]) -> GeneralPositionFamily:
    """Enlarge each drop-one subgroup of an irredundant generating sequence to a maximal subgroup."""
    lat, top = _resolve(G)
    t = lat.table
    seq = list(seq)
    idx = [t.index(g) for g in seq]
    if lat.subgroup_generated(idx) is not top:
        raise ValueError("sequence does not generate the group")
    maxes = lat.maximal_in(top)
    members = []
    for i in range(len(idx)):
        Hi = lat.subgroup_generated(idx[:i] + idx[i + 1:])
        if Hi is top:
            raise ValueError("sequence is not irredundant")
        members.append(next(M for M in maxes if Hi.issubset(M)))
    fam = _family(lat, members)
    fam.certificate = Certificate(seq)
    return fam


def _family(lat: SubgroupLattice, members: list[SubgroupNode]) -> GeneralPositionFamily:
    top = lat.top.bits
    total = top
    for M in members:
        total &= M.bits
    drops = []
    for i in range(len(members)):
        d = top
        for j, M in enumerate(members):
            if j != i:
                d &= M.bits
        drops.append(lat.node(d))
    return GeneralPositionFamily(list(members), lat.node(total), drops)


def make_family(members: Sequence[SubgroupNode]) -> GeneralPositionFamily:
    members = list(members)
    return _family(members[0].lattice, members)


def certify_family(family) -> tuple[Certificate, IrredundantSequence]:
    """Lexicographically least certificate g_i in (meet of the others) minus M_i."""
    members = family.members if isinstance(family, GeneralPositionFamily) else list(family)
    if not members:
        return Certificate([]), IrredundantSequence([], [], PermGroup(1))
    lat = members[0].lattice
    if not is_general_position(members):
        raise CertificateError("family is not in general position")
    top = lat.top.bits
    n = lat.table.n
    elems = []
    for i, Mi in enumerate(members):
        d = top
        for j, M in enumerate(members):
            if j != i:
                d &= M.bits
        cand = d & ~Mi.bits
        low = (cand & -cand).bit_length() - 1
        elems.append(lat.table.perm(low))
    cert = Certificate(elems)
    return cert, IrredundantSequence.of(elems)


# ---------------------------------------------------------------------------
# Whiston


def whiston_refit(G: PermGroup, seq: Sequence[Permutation], N: PermGroup) -> tuple[int, list[Permutation]]:
    """Reorder an irredundant generating sequence so a prefix generates G/N irredundantly,
    and replace the rest by elements of N."""
    seq = list(seq)
    if not is_irredundant_generating(G, seq):
        raise ValueError("sequence is not an irredundant generating sequence")
    if not N.is_normal_in(G):
        raise ValueError("N is not normal in G")
    order = G.order

    def gen_mod_n(elems):
        return PermGroup(G.degree, list(elems) + N.gens).order == order

    keep = list(range(len(seq)))
    for i in range(len(seq)):
        trial = [j for j in keep if j != i]
        if gen_mod_n(seq[j] for j in trial):
            keep = trial
    rest = [j for j in range(len(seq)) if j not in keep]
    prefix = [seq[j] for j in keep]
    span = PermGroup(G.degree, prefix)
    span_elems = _elements_of(span)
    new = list(prefix)
    for j in rest:
        g = seq[j]
        x = next(x for x in span_elems if N.contains(g * x))
        new.append(g * x)
    k = len(prefix)
    if not is_irredundant_generating(G, new):  # pragma: no cover - guaranteed by the lemma
        raise AssertionError("refitted sequence failed verification")
    for i in range(k):
        if gen_mod_n(prefix[:i] + prefix[i + 1:]):  # pragma: no cover
            raise AssertionError("prefix is not irredundant modulo N")
    return k, new


def _elements_of(H: PermGroup) -> list[Permutation]:
    from .perm import enumerate_elements
    return enumerate_elements(H).elements


# ---------------------------------------------------------------------------
# report


UNKNOWN = "unknown(budget)"


@dataclass
class DimensionReport:
    r: int | str
    m: int | str
    i: int | str
    maxdim: int | str
    bounds: dict[str, int] = field(default_factory=dict)  # best bounds for unknown values
    witnesses: dict[str, list] = field(default_factory=dict)

    def values(self) -> dict[str, int | str]:
        return {"r": self.r, "m": self.m, "i": self.i, "maxdim": self.maxdim}

    def known(self, key: str) -> bool:
        return isinstance(getattr(self, key), int)

    def check(self) -> None:
        if all(self.known(k) for k in ("m", "maxdim", "i")):
            if not self.m <= self.maxdim <= self.i:
                raise AssertionError(f"m={self.m}, MaxDim={self.maxdim}, i={self.i} out of order")


def _images(perms) -> list[list[int]]:
    return [list(g.images) for g in perms]


def dimension_report(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> DimensionReport:
    """r, m, i and MaxDim with witnesses; values a budget cut short are reported as unknown."""
    lat = lattice_of(G, budgets)
    rep = DimensionReport(UNKNOWN, UNKNOWN, UNKNOWN, UNKNOWN)
    results = {
        "r": rank_r(lat, budgets=budgets),
        "m": dim_m(lat, budgets=budgets),
        "i": dim_i(lat, budgets=budgets),
    }
    for key, res in results.items():
        if res.exact:
            setattr(rep, key, res.value)
        else:
            rep.bounds[key] = res.value
        rep.witnesses[key] = _images(res.witness)
    md = maxdim(lat, budgets=budgets, upper=rep.i if rep.known("i") else None)
    if md.exact:
        rep.maxdim = md.value
    else:
        rep.bounds["maxdim"] = md.value
    family = md.witness
    cert = certify_family(family)[0].elems if family else []
    rep.witnesses["maxdim"] = [{"generators": _images(M.generators()), "order": M.order} for M in family]
    rep.witnesses["certificate"] = _images(cert)
    rep.check()
    return rep
