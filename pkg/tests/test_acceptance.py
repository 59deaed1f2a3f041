"""Acceptance criteria 1-10.  Each test prints a single PASS/FAIL line."""

import random
import time

import pytest

from gendim.catalog import catalog, find
from gendim.classify import classify
from gendim.constructions import abelian, alternating, cyclic, elementary_abelian, mij_family, symmetric, wreath_cyclic
from gendim.dimensions import (dim_i, dim_i_direct, dim_m, dimension_report, is_general_position, maxdim,
                               maxdim_lower_bound, rank_r, subfamily_intersections_distinct)
from gendim.lattice import is_maximal_by_cosets, lattice_of
from gendim.perm import prime_factors, quotient_action
from gendim.suites import run_suite

from oracles import brute_order


@pytest.fixture
def verdict(capsys):
    def emit(n, title, ok, detail, started, limit=None):
        elapsed = time.perf_counter() - started
        in_time = limit is None or elapsed <= limit
        status = "PASS" if ok and in_time else "FAIL"
        extra = "" if in_time else f", over the {limit:.0f}s limit"
        with capsys.disabled():
            print(f"\n[{status}] criterion {n}: {title} ({detail}; {elapsed:.1f}s{extra})")
        assert ok, detail
        assert in_time, f"took {elapsed:.1f}s"
    return emit


def test_criterion_01_whiston(verdict):
    t = time.perf_counter()
    got, want = {}, {}
    for n in (3, 4, 5):
        got[f"S{n}"] = (dim_m(symmetric(n)).value, dim_i(symmetric(n)).value)
        want[f"S{n}"] = (n - 1, n - 1)
    for n in (4, 5):
        got[f"A{n}"] = (dim_m(alternating(n)).value, dim_i(alternating(n)).value)
        want[f"A{n}"] = (n - 2, n - 2)
    verdict(1, "m = i = n-1 for S_n, n-2 for A_n", got == want, f"(m, i) = {got}", t, 300)


def test_criterion_02_elementary_abelian(verdict):
    t = time.perf_counter()
    bad = []
    for p, ns in [(2, range(1, 5)), (3, range(1, 4)), (5, range(1, 3))]:
        for n in ns:
            rep = dimension_report(elementary_abelian(p, n))
            if (rep.r, rep.m, rep.i, rep.maxdim) != (n, n, n, n):
                bad.append((p, n, rep.values()))
    verdict(2, "r = m = i = MaxDim = n for (Z/p)^n", not bad, f"mismatches {bad}", t)


ABELIAN_CASES = [(2,), (8,), (6,), (12,), (30,), (2, 2), (2, 4), (4, 4), (2, 6), (3, 6), (6, 10), (2, 2, 2),
                 (2, 2, 3), (2, 3, 5), (4, 9), (2, 2, 4), (3, 3, 3), (5, 5), (6, 6), (10, 15)]


def _prime_power_factors(ns):
    return sum(len(set(prime_factors(n))) for n in ns if n > 1)


def test_criterion_03_abelian_flat(verdict):
    t = time.perf_counter()
    bad = []
    for ns in ABELIAN_CASES:
        G = abelian(*ns)
        k = _prime_power_factors(ns)
        m, i = dim_m(G).value, dim_i(G).value
        if not m == i == k:
            bad.append((ns, m, i, k))
    verdict(3, f"m = i = #prime-power factors on {len(ABELIAN_CASES)} abelian groups", not bad,
            f"mismatches {bad}", t)


def test_criterion_04_wreath(verdict):
    t = time.perf_counter()
    G = wreath_cyclic(cyclic(3), 3)
    lat = lattice_of(G)
    phi = lat.frattini_of(lat.top)
    Q = quotient_action(G, phi.as_group())
    i, m, iq = dim_i(G).value, dim_m(G).value, dim_i(Q).value
    verdict(4, "i(C3 wr C3) = 3, m = 2, i(G/Phi) = 2", (i, m, iq) == (3, 2, 2),
            f"i={i} m={m} i(G/Phi)={iq} |Phi|={phi.order}", t, 300)


def test_criterion_05_separation(verdict):
    t = time.perf_counter()
    G = find("SmallGroup(720,774)").group()
    rep = dimension_report(G)
    got = (G.order, rep.m, rep.maxdim, rep.i)
    verdict(5, "SmallGroup(720,774): m = 4, MaxDim = 5, i = 6", got == (720, 4, 5, 6),
            f"order={got[0]} m={got[1]} MaxDim={got[2]} i={got[3]}", t, 1800)


def test_criterion_06_certificates(verdict):
    t = time.perf_counter()
    got = {}
    for kind, n, p in [("S", 4, 3), ("A", 5, 3), ("A", 5, 2)]:
        F = mij_family(kind, n, p)
        lb = maxdim_lower_bound(F.group, F.members, F.certificate, check_maximal=True)
        maximal = all(is_maximal_by_cosets(F.group, M) for M in F.members)
        got[f"{kind}{n} wr C{p}"] = (lb, maximal)
    want = {"S4 wr C3": (6, True), "A5 wr C3": (6, True), "A5 wr C2": (4, True)}
    verdict(6, "certified MaxDim lower bounds 6, 6, 4 with maximal members", got == want,
            f"(bound, all maximal) = {got}", t, 600)


def _small_catalog(limit=200):
    return [e for e in catalog() if e.group().order <= limit]


def test_criterion_07_nilpotent(verdict):
    t = time.perf_counter()
    checked, bad = 0, []
    for e in _small_catalog():
        G = e.group()
        if not classify(G).nilpotent:
            continue
        checked += 1
        m, md = dim_m(G), maxdim(G)
        if not (m.exact and md.exact and m.value == md.value):
            bad.append((e.name, m, md))
    verdict(7, "MaxDim = m for nilpotent catalog groups of order <= 200", not bad and checked > 0,
            f"{checked} groups, mismatches {bad}", t)


def test_criterion_08_supersolvable(verdict):
    t = time.perf_counter()
    checked, flat_checked, bad = 0, 0, []
    for e in _small_catalog():
        G = e.group()
        c = classify(G)
        if not c.supersolvable:
            continue
        checked += 1
        rep = dimension_report(G)
        if rep.maxdim != rep.m:
            bad.append((e.name, "MaxDim", rep.values()))
        if c.phi_meets_derived_trivial:
            flat_checked += 1
            if rep.i != rep.m:
                bad.append((e.name, "i", rep.values()))
    verdict(8, "supersolvable: MaxDim = m, and i = m when Phi meets G' trivially", not bad and checked > 0,
            f"{checked} groups, {flat_checked} with Phi and G' meeting trivially, mismatches {bad}", t)


def _random_families(count, rng):
    lats = [lattice_of(e.group()) for e in _small_catalog() if e.group().order > 1]
    agree = 0
    positives = 0
    for _ in range(count):
        lat = rng.choice(lats)
        pool = lat.maximal_in(lat.top) if rng.random() < 0.5 else lat.nodes
        fam = rng.sample(pool, min(len(pool), rng.randint(1, 6)))
        a, b = is_general_position(fam), subfamily_intersections_distinct(fam)
        agree += a == b
        positives += a
    return agree, positives


def test_criterion_09_property_suites(verdict):
    t = time.perf_counter()
    entries = catalog()
    results = {}
    for name in ("T1", "T2", "T7", "T8", "T10", "T9"):
        rep = run_suite(name, entries)
        results[name] = (len(rep.checks), len(rep.failed), len(rep.skipped))
    agree, positives = _random_families(1000, random.Random(2024))
    results["general position (1)<=>(2)"] = (1000, 1000 - agree, 0)
    ok = all(n > 0 and f == 0 and s == 0 for n, f, s in results.values())
    detail = ", ".join(f"{k}: {n - f - s}/{n}" for k, (n, f, s) in results.items())
    verdict(9, "property suites", ok, f"{detail}; {positives} families in general position", t, 1200)


def test_criterion_10_oracles(verdict):
    t = time.perf_counter()
    bad, n_i, n_order = [], 0, 0
    for e in catalog():
        G = e.group()
        if G.order <= 200:
            n_i += 1
            a, b = dim_i(G), dim_i_direct(G)
            if not (a.exact and b.exact and a.value == b.value):
                bad.append((e.name, "i", a, b))
        if G.order <= 5000:
            n_order += 1
            if G.order != brute_order([g.images for g in G.gens], G.degree):
                bad.append((e.name, "order"))
    verdict(10, "lattice i = direct i (order <= 200); chain order = closure count (order <= 5000)", not bad,
            f"{n_i} i-checks, {n_order} order checks, mismatches {bad}", t)
