"""Theorem suites T1-T10 run over catalog groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .budget import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .catalog import CatalogEntry, catalog
from .classify import abelian_invariants, classify, supersolvable_series
from .constructions import abelian, cyclic, gtok_decompose, ktog_construct, mij_family, symmetric
from .dimensions import DimensionReport, dim_m, dimension_report, maxdim_lower_bound
from .lattice import lattice_of
from .perm import PermGroup, commutator, derived_subgroup, prime_factors, quotient_action

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class Check:
    suite: str
    group: str
    assertion: str
    status: str
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def skipped(self) -> list[Check]:
        return [c for c in self.checks if c.status == SKIP]

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 1
        if self.skipped:
            return 2
        return 0

    def summary(self) -> str:
        n = len(self.checks)
        return f"{self.name}: {n - len(self.failed) - len(self.skipped)}/{n} passed, " \
               f"{len(self.failed)} failed, {len(self.skipped)} skipped"


class _Run:
    """Shared state for one suite run: memoised reports and the check list."""

    def __init__(self, name: str, budgets: Budgets):
        self.report = SuiteReport(name)
        self.budgets = budgets
        self._dims: dict[tuple, DimensionReport] = {}

    def dims(self, G: PermGroup) -> DimensionReport:
        key = G.content_key()
        if key not in self._dims:
            self._dims[key] = dimension_report(G, self.budgets)
        return self._dims[key]

    def skip(self, group: str, assertion: str, reason: str) -> None:
        self.report.checks.append(Check(self.report.name, group, assertion, SKIP, f"budget: {reason}"))

    def check(self, group: str, assertion: str, fn: Callable[[], tuple[bool, str]]) -> None:
        try:
            ok, detail = fn()
            status = PASS if ok else FAIL
        except BudgetExceeded as exc:
            status, detail = SKIP, f"budget: {exc}"
        self.report.checks.append(Check(self.report.name, group, assertion, status, detail))


def _known(rep: DimensionReport, *keys: str) -> None:
    for k in keys:
        if not rep.known(k):
            raise BudgetExceeded(f"{k} unknown")


def _small(entries: Iterable[CatalogEntry], max_order: int) -> list[CatalogEntry]:
    return [e for e in entries if e.group().order <= max_order]


# ---------------------------------------------------------------------------


def t1_sandwich(run: _Run, entries):
    for e in entries:
        def f(G=e.group()):
            rep = run.dims(G)
            _known(rep, "m", "maxdim", "i")
            return rep.m <= rep.maxdim <= rep.i, f"m={rep.m} MaxDim={rep.maxdim} i={rep.i}"
        run.check(e.name, "m <= MaxDim <= i", f)


def t2_frattini(run: _Run, entries):
    for e in entries:
        G = e.group()
        try:
            lat = lattice_of(G, run.budgets)
        except BudgetExceeded as exc:
            run.skip(e.name, "Frattini quotients", str(exc))
            continue
        phi = lat.frattini_of(lat.top)
        for N in lat.normal_subgroups():
            if N.order == 1 or N.bits & ~phi.bits:
                continue

            def f(G=G, N=N):
                Q = quotient_action(G, N.as_group(), cap=run.budgets.max_order_enumerate)
                a, b = run.dims(G), run.dims(Q)
                _known(a, "m", "maxdim")
                _known(b, "m", "maxdim")
                return (a.m == b.m and a.maxdim == b.maxdim,
                        f"|N|={N.order}: m {a.m} vs {b.m}, MaxDim {a.maxdim} vs {b.maxdim}")
            run.check(e.name, f"m and MaxDim unchanged mod N (|N|={N.order})", f)


def t3_nilpotent(run: _Run, entries, max_order: int = 200):
    for e in _small(entries, max_order):
        G = e.group()
        if not classify(G, run.budgets).nilpotent:
            continue

        def f(G=G):
            rep = run.dims(G)
            _known(rep, "m", "maxdim")
            return rep.maxdim == rep.m, f"m={rep.m} MaxDim={rep.maxdim}"
        run.check(e.name, "nilpotent: MaxDim = m", f)


def t4_supersolvable(run: _Run, entries, max_order: int = 200):
    for e in _small(entries, max_order):
        G = e.group()
        c = classify(G, run.budgets)
        if c.supersolvable is None:
            run.skip(e.name, "supersolvable", "lattice out of budget")
            continue
        if not c.supersolvable:
            continue

        def f(G=G):
            rep = run.dims(G)
            _known(rep, "m", "maxdim")
            return rep.maxdim == rep.m, f"m={rep.m} MaxDim={rep.maxdim}"
        run.check(e.name, "supersolvable: MaxDim = m", f)
        if c.phi_meets_derived_trivial:
            def g(G=G):
                rep = run.dims(G)
                _known(rep, "m", "i")
                return rep.i == rep.m, f"m={rep.m} i={rep.i}"
            run.check(e.name, "supersolvable, Phi meets G' trivially: i = m", g)


def t5_counterexamples(run: _Run, entries):
    for e in entries:
        exp = e.record.expected if e.record else {}
        keys = [k for k in ("m", "maxdim", "i") if k in exp]
        if not keys:
            continue

        def f(G=e.group(), exp=exp, keys=keys):
            rep = run.dims(G)
            _known(rep, *keys)
            got = {k: getattr(rep, k) for k in keys}
            want = {k: exp[k]["value"] if isinstance(exp[k], dict) else exp[k] for k in keys}
            return got == want, f"got {got}, expected {want}"
        run.check(e.name, "expected m, MaxDim, i", f)
    for kind, n, p, want in [("A", 5, 2, 4), ("A", 5, 3, 6), ("S", 4, 3, 6)]:
        def g(kind=kind, n=n, p=p, want=want):
            F = mij_family(kind, n, p, cap=run.budgets.max_cosets)
            got = maxdim_lower_bound(F.group, F.members, F.certificate, cap=run.budgets.max_cosets)
            return got == want, f"certified MaxDim >= {got}"
        run.check(f"{'A5' if kind == 'A' else 'S4'} wr C{p}", f"certified MaxDim >= {want}", g)


def prime_power_factor_count(G: PermGroup) -> int:
    return sum(len(set(prime_factors(n))) for n in abelian_invariants(G))


def t6_abelian(run: _Run, entries):
    for e in entries:
        G = e.group()
        if not G.is_abelian():
            continue

        def f(G=G):
            rep = run.dims(G)
            _known(rep, "m", "i")
            k = prime_power_factor_count(G)
            return rep.m == rep.i == k, f"m={rep.m} i={rep.i} factors={k}"
        run.check(e.name, "abelian: m = i = number of prime-power factors", f)


def t7_collins(run: _Run, entries, max_order: int = 2000):
    for e in _small(entries, max_order):
        G = e.group()
        lat = lattice_of(G, run.budgets)
        phi = lat.frattini_of(lat.top)
        for N in lat.minimal_normal_subgroups():
            if not N.abelian:
                continue

            def f(G=G, N=N):
                Q = quotient_action(G, N.as_group(), cap=run.budgets.max_order_enumerate)
                a, b = run.dims(G), run.dims(Q)
                _known(a, "m")
                _known(b, "m")
                jump = 0 if N.bits & ~phi.bits == 0 else 1
                return a.m == b.m + jump, f"|N|={N.order}: m(G)={a.m}, m(G/N)={b.m}, jump {jump}"
            run.check(e.name, f"m(G) = m(G/N) + [N not in Phi] (|N|={N.order})", f)


def t8_sylow_hall(run: _Run, entries, max_order: int = 200):
    for e in _small(entries, max_order):
        G = e.group()
        if G.order == 1 or not classify(G, run.budgets).supersolvable:
            continue

        def f(G=G):
            d = gtok_decompose(G, run.budgets)
            mp, mk, mg = dim_m(d.P).value, dim_m(d.K).value, run.dims(G).m
            return mg == mp + mk, f"p={d.p}: m(G)={mg}, m(P)={mp}, m(K)={mk}"
        run.check(e.name, "m(G) = m(P) + m(K)", f)


KTOG_TEST_SET = {"C2": lambda: cyclic(2), "C6": lambda: cyclic(6), "S3": lambda: symmetric(3),
                 "C2xC2": lambda: abelian(2, 2)}


def t9_ktog(run: _Run, entries=None):
    for name, build in KTOG_TEST_SET.items():
        def f(build=build):
            K = build()
            G, data = ktog_construct(K)
            c = classify(G, run.budgets)
            rg, rk = run.dims(G), run.dims(K)
            k = data.k
            ok = (c.frattini_free and supersolvable_series(G) is not None
                  and rg.m == rk.m + k and rg.i == rk.i + k)
            return ok, (f"p={data.p} k={k}: Phi=1 {c.frattini_free}, m {rg.m}={rk.m}+{k}, "
                        f"i {rg.i}={rk.i}+{k}")
        run.check(f"KtoG({name})", "Frattini-free, supersolvable, m and i shift by k", f)


def t10_centralizer(run: _Run, entries, max_order: int = 200):
    for e in _small(entries, max_order):
        G = e.group()
        if G.order == 1:
            continue
        c = classify(G, run.budgets)
        if not (c.supersolvable and c.phi_meets_derived_trivial):
            continue

        def f(G=G):
            d = gtok_decompose(G, run.budgets)
            P, K = d.P.as_group(), d.K.as_group()
            Kd = derived_subgroup(K)
            ok = all(commutator(a, b).is_identity() for a in Kd.gens for b in P.gens)
            lat = lattice_of(G)
            phiP = lat.frattini_of(d.P)
            t = lat.table
            mul, inv = t.mul, t.inv
            bad = 0
            for g in d.K.members:
                for v in d.P.members:
                    cm = int(mul[mul[inv[g], inv[v]], mul[g, v]])
                    if cm in phiP and cm != 0:
                        bad += 1
            return ok and bad == 0, f"K' centralizes P: {ok}; non-commuting pairs with [g,v] in Phi(P): {bad}"
        run.check(e.name, "K' centralizes P and [g,v] in Phi(P) forces [g,v] = 1", f)


SUITES = {
    "T1": t1_sandwich, "T2": t2_frattini, "T3": t3_nilpotent, "T4": t4_supersolvable,
    "T5": t5_counterexamples, "T6": t6_abelian, "T7": t7_collins, "T8": t8_sylow_hall,
    "T9": t9_ktog, "T10": t10_centralizer,
}


def run_suite(name: str, entries: list[CatalogEntry] | None = None,
              budgets: Budgets = DEFAULT_BUDGETS) -> SuiteReport:
    try:
        fn = SUITES[name.upper()]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    run = _Run(name.upper(), budgets)
    fn(run, catalog() if entries is None else entries)
    return run.report
