import random

import pytest

from gendim.budget import Budgets
from gendim.constructions import abelian, alternating, cyclic, elementary_abelian, symmetric, trivial
from gendim.dimensions import (SearchResult, certify_family, dim_i, dim_i_direct, dim_m, dimension_report,
                               family_from_sequence, generates, is_general_position, is_irredundant,
                               is_irredundant_generating, make_family, maxdim, maxdim_lower_bound, rank_r,
                               subfamily_intersections_distinct, whiston_refit)
from gendim.lattice import lattice_of
from gendim.perm import Permutation, PermGroup, quotient_action


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


V = abelian(2, 2)
E1, E2 = V.gens
S3 = symmetric(3)
T, R = cyc(3, (0, 1)), cyc(3, (0, 1, 2))


def test_irredundant_examples():
    assert is_irredundant(V, [E1, E2])
    assert not is_irredundant(V, [E1, E1])
    S4 = symmetric(4)
    assert is_irredundant(S4, [cyc(4, (0, 1)), cyc(4, (1, 2)), cyc(4, (2, 3))])
    assert is_irredundant_generating(S4, [cyc(4, (0, 1)), cyc(4, (1, 2)), cyc(4, (2, 3))])


def test_rank_examples():
    assert rank_r(trivial()) == 0
    assert rank_r(elementary_abelian(2, 3)) == 3
    assert rank_r(symmetric(4)) == 2


@pytest.mark.parametrize("G,m", [(symmetric(4), 3), (cyclic(6), 2), (alternating(5), 3), (trivial(), 0)])
def test_m_examples(G, m):
    res = dim_m(G)
    assert res == m
    if m:
        assert is_irredundant_generating(G, res.witness)


def test_i_examples():
    res = dim_i(symmetric(4))
    assert res == 3 and is_irredundant(symmetric(4), res.witness)
    assert dim_i(trivial()) == 0


def test_general_position_examples():
    lat = lattice_of(V)
    lines = [H for H in lat.nodes if H.order == 2]
    assert is_general_position(lines[:2])
    assert not is_general_position(lines)


def test_maxdim_examples():
    assert maxdim(cyclic(7)) == 1
    assert maxdim(elementary_abelian(2, 3)) == 3
    assert maxdim_lower_bound(symmetric(3), [], []) == 0


def test_family_from_sequence_examples():
    fam = family_from_sequence(V, [E1, E2])
    lat = lattice_of(V)
    assert [M.id for M in fam.members] == [lat.node_of([E2]).id, lat.node_of([E1]).id]
    fam = family_from_sequence(S3, [T, R])
    assert sorted(M.order for M in fam.members) == [2, 3]
    lat = lattice_of(S3)
    assert fam.members == [lat.node_of([R]), lat.node_of([T])]


def test_certify_examples():
    lat = lattice_of(V)
    l1, l2 = lat.node_of([E1]), lat.node_of([E2])
    cert, seq = certify_family([l1, l2])
    assert cert.elems == [E2, E1]
    M = lat.maximal_in(lat.top)[0]
    cert, _ = certify_family([M])
    assert len(cert) == 1 and lat.table.index(cert.elems[0]) not in M


def test_whiston_examples():
    k, new = whiston_refit(V, [E1, E2], PermGroup(4, [E1]))
    assert k == 1 and new == [E2, E1]
    k, new = whiston_refit(S3, [T, R], PermGroup(3, [R]))
    assert k == 1 and new[0] == T and PermGroup(3, [R]).contains(new[1])
    k, new = whiston_refit(S3, [T, R], PermGroup(3))
    assert k == 2 and sorted(new) == sorted([T, R])


def test_budget_gives_bound():
    res = dim_i(symmetric(5), Budgets(search_nodes=5))
    assert isinstance(res, SearchResult) and not res.exact
    assert res != 4
    rep = dimension_report(symmetric(5), Budgets(search_nodes=5))
    assert not rep.known("i") and "i" in rep.bounds


def test_against_brute_force(entries, brute_values):
    for e in entries:
        row = brute_values[e.name]
        if "m" not in row:
            continue
        G = e.group()
        rep = dimension_report(G)
        assert (rep.r, rep.m, rep.i, rep.maxdim) == (row["r"], row["m"], row["i"], row["maxdim"]), e.name


def test_direct_i_matches(entries):
    for e in entries:
        G = e.group()
        if G.order <= 100:
            assert dim_i_direct(G).value == dim_i(G).value, e.name


def _random_family(lat, rng):
    k = rng.randint(1, 6)
    return rng.sample(lat.nodes, min(k, len(lat.nodes)))


def test_condition_equivalence_sample(entries):
    rng = random.Random(11)
    lats = [lattice_of(e.group()) for e in entries if 1 < e.group().order <= 200]
    for _ in range(300):
        lat = rng.choice(lats)
        fam = _random_family(lat, rng)
        assert is_general_position(fam) == subfamily_intersections_distinct(fam)


def test_witness_families(entries):
    for e in entries:
        G = e.group()
        if G.order > 200 or G.order == 1:
            continue
        res = dim_m(G)
        fam = family_from_sequence(G, res.witness)
        assert len(fam) == res.value
        assert is_general_position(fam.members, fam.certificate)
        assert is_general_position(fam.members)
        cert, seq = certify_family(fam)
        assert len(cert) == len(fam) and is_irredundant(G, seq.elems)
        md = maxdim(G)
        if md.witness:
            assert is_general_position(md.witness)
            assert all(M in lattice_of(G).maximal_in(lattice_of(G).top) for M in md.witness)


def test_downward_closure(entries):
    rng = random.Random(5)
    for e in entries:
        G = e.group()
        if G.order > 720 or G.order == 1:
            continue
        w = dim_i(G).witness
        for _ in range(5):
            sub = [g for g in w if rng.random() < 0.6]
            assert is_irredundant(G, sub)
        for k in range(len(w) + 1):
            assert is_irredundant(G, w[:k])


def test_generation_mod_frattini(entries):
    rng = random.Random(9)
    for e in entries:
        G = e.group()
        if G.order > 200 or G.order == 1:
            continue
        lat = lattice_of(G)
        phi = lat.frattini_of(lat.top).as_group()
        el = lat.table.elements
        # S projects onto a generating set of G/Phi iff S together with Phi generates G
        for _ in range(100 if G.order <= 64 else 20):
            S = rng.sample(el, min(len(el), rng.randint(1, 3)))
            assert generates(G, S) == generates(G, S + phi.gens), e.name
        Q = quotient_action(G, phi)
        assert Q.order == G.order // phi.order


def test_sandwich_and_flat_abelian():
    for ns in [(2, 3), (4, 4), (2, 2, 3), (9,), (5, 5)]:
        rep = dimension_report(abelian(*ns))
        assert rep.m <= rep.maxdim <= rep.i and rep.m == rep.i
