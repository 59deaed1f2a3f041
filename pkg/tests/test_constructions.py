import pytest

from gendim.classify import classify, supersolvable_series
from gendim.constructions import (abelian, alternating, cyclic, diagonal_linkedness, diagonalize_action, dihedral,
                                  direct, elementary_abelian, goursat_decompose, gtok_decompose, ktog_construct,
                                  make_named, mij_family, parse_expression, psl32, quaternion, symmetric, trivial,
                                  wreath_cyclic)
from gendim.dimensions import certificate_valid, dim_i, dim_m
from gendim.lattice import lattice_of
from gendim.perm import Permutation, PermGroup, enumerate_elements, sylow_subgroup


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def test_named_examples():
    assert cyclic(1).order == 1
    E = elementary_abelian(2, 3)
    assert (E.order, E.degree) == (8, 6)
    assert symmetric(4).order == 24
    assert make_named("S", 4).order == 24
    assert dihedral(4).order == 8 and not dihedral(4).is_abelian()
    assert quaternion(16).order == 16
    assert psl32().order == 168


def test_wreath_examples():
    W = wreath_cyclic(trivial(), 5)
    assert W.order == 5
    assert wreath_cyclic(alternating(5), 2).order == 7200
    assert wreath_cyclic(symmetric(4), 3).order == 41472
    for S, p in [(cyclic(2), 2), (cyclic(3), 3), (symmetric(3), 2), (dihedral(4), 3)]:
        assert wreath_cyclic(S, p).order == S.order ** p * p
    with pytest.raises(ValueError):
        wreath_cyclic(cyclic(2), 4)


@pytest.mark.parametrize("kind,n,p,size", [("A", 5, 3, 6), ("A", 5, 2, 4), ("S", 4, 3, 6)])
def test_mij_family(kind, n, p, size):
    F = mij_family(kind, n, p)
    assert len(F.members) == size == len(F.certificate)
    assert certificate_valid(F.members, F.certificate)
    assert all(F.group.contains(g) for g in F.certificate)
    if kind == "A":
        assert all(g.order() == 3 for g in F.certificate)


def test_mij_intersection_trivial():
    F = mij_family("A", 5, 2)
    inside = [g for g in enumerate_elements(F.group).elements if all(M.contains(g) for M in F.members)]
    assert inside == [F.group.identity()]


def test_ktog_examples():
    G, data = ktog_construct(cyclic(2))
    assert data.p == 3 and G.order == 6 and not G.is_abelian()
    assert dim_m(G) == 2
    G, data = ktog_construct(symmetric(3))
    assert data.p == 5 and G.order == 30
    c = classify(G)
    assert c.frattini_free and c.supersolvable
    assert dim_m(G) == 3 and dim_i(G) == 3
    G, data = ktog_construct(trivial())
    assert G.order == 1 and data.k == 0


def test_ktog_explicit_prime():
    G, data = ktog_construct(cyclic(4), p=13)
    assert data.p == 13 and G.order == 13 * 4
    with pytest.raises(ValueError):
        ktog_construct(cyclic(4), p=7)


def test_gtok_examples():
    d = gtok_decompose(symmetric(3))
    assert (d.p, d.P.order, d.K.order) == (3, 3, 2)
    d = gtok_decompose(cyclic(6))
    assert (d.p, d.P.order, d.K.order) == (3, 3, 2)
    with pytest.raises(ValueError):
        gtok_decompose(alternating(5))


def test_gtok_postconditions(entries):
    for e in entries:
        G = e.group()
        if G.order == 1 or G.order > 200:
            continue
        c = classify(G)
        if not c.supersolvable:
            continue
        d = gtok_decompose(G)
        assert d.P.order * d.K.order == G.order
        if c.frattini_free:
            lat = lattice_of(G)
            assert all(int(lat.table.orders[x]) in (1, d.p) for x in d.P.members), e.name
        assert dim_m(G).value == dim_m(d.P).value + dim_m(d.K).value, e.name


S3 = symmetric(3)
T, R = cyc(3, (0, 1)), cyc(3, (0, 1, 2))


def pair(a, b):
    return Permutation(list(a.images) + [3 + y for y in b.images])


def test_goursat_examples():
    diag = PermGroup(6, [pair(T, T), pair(R, R)])
    g = goursat_decompose(S3, S3, diag)
    assert g.N.order == g.N2.order == 1 and g.phi_order() == 6
    assert all(a == b for a, b in g.graph.items())
    full = direct(S3, S3)
    g = goursat_decompose(S3, S3, full)
    assert g.N.order == 6 and g.N2.order == 6
    sign = PermGroup(6, [pair(T, T), pair(R, Permutation.identity(3)), pair(Permutation.identity(3), R)])
    g = goursat_decompose(S3, S3, sign)
    assert g.N.order == g.N2.order == 3 and g.phi_order() == 2


def test_goursat_rejects_non_subdirect():
    with pytest.raises(ValueError):
        goursat_decompose(S3, S3, PermGroup(6, [pair(T, T)]))


def test_linkedness_examples():
    ident = Permutation.identity(3)
    assert diagonal_linkedness(direct(S3, S3), S3, 2) == [[0], [1]]
    assert diagonal_linkedness(PermGroup(6, [pair(T, T), pair(R, R)]), S3, 2) == [[0, 1]]
    A5 = alternating(5)
    gens = []
    for s in A5.gens:
        gens.append(Permutation(list(s.images) + [5 + y for y in s.images] + list(range(10, 15))))
        gens.append(Permutation(list(range(10)) + [10 + y for y in s.images]))
    K = PermGroup(15, gens)
    assert K.order == 3600
    assert diagonal_linkedness(K, A5, 3) == [[0, 1], [2]]
    # sign-matched pairs in S3 x S3 have order 18: subdirect but not diagonal
    sign = PermGroup(6, [pair(T, T), pair(R, ident), pair(ident, R)])
    assert diagonal_linkedness(sign, S3, 2) == [[0], [1]]


def test_diagonalize_examples():
    V = abelian(2, 2)
    D = diagonalize_action(V, V, PermGroup(4))
    assert D.p == 2 and len(D.basis) == 2 and all(c == () for c in D.chars)
    D = diagonalize_action(S3, PermGroup(3, [R]), PermGroup(3, [T]))
    assert D.p == 3 and len(D.basis) == 1 and D.chars == [(2,)]


def test_diagonalize_ktog_round_trip():
    K = symmetric(3)
    G, data = ktog_construct(K)
    P = sylow_subgroup(G, data.p)
    Kg = PermGroup(G.degree, G.gens[:len(K.gens)])
    assert Kg.order == K.order
    D = diagonalize_action(G, P, Kg)
    assert D.p == data.p and sorted(D.chars) == sorted(data.chars)


def test_ktog_diagonalizes_twisted_pair():
    K = abelian(2, 2)
    G, data = ktog_construct(K)
    P = sylow_subgroup(G, data.p)
    D = diagonalize_action(G, P, PermGroup(G.degree, G.gens[:len(K.gens)]))
    assert sorted(D.chars) == sorted(data.chars)


@pytest.mark.parametrize("expr,order", [
    ("C6", 6), ("S(4)", 24), ("C2*C2", 4), ("wr(S(4),3)", 41472), ("A(5) wr 2", None),
    ("ktog(S3)", 30), ("D8", 8), ("Q8 * C3", 24),
])
def test_parse_expression(expr, order):
    if order is None:
        with pytest.raises(ValueError):
            parse_expression(expr)
    else:
        assert parse_expression(expr).order == order


def test_parse_errors():
    for bad in ["", "X9", "C(", "D7", "foo(3)", "C2 + C3", "3"]:
        with pytest.raises(ValueError):
            parse_expression(bad)


def test_ktog_test_set(entries):
    from gendim.suites import KTOG_TEST_SET
    for name, build in KTOG_TEST_SET.items():
        K = build()
        G, data = ktog_construct(K)
        assert classify(G).frattini_free and supersolvable_series(G) is not None
        assert dim_m(G).value == dim_m(K).value + data.k
        assert dim_i(G).value == dim_i(K).value + data.k
