import itertools
from math import comb

import pytest

from relbrace import posets as P, rs
from relbrace.rbr import G, Gamma, M, Partial, all_signatures, blow_up_components, enumerate_basis, generator
from relbrace.trees import SignatureError, parse


def catalan(m):
    return comb(2 * m, m) // (m + 1)


def schroeder_faces(leaves):
    """Plane trees with the given number of leaves and every internal vertex of arity >= 2."""
    t = [0, 1]
    for n in range(2, leaves + 1):
        # f[j][m]: sequences of j trees with m leaves in total
        f = {0: {0: 1}}
        for j in range(1, n + 1):
            f[j] = {}
            for m0, c in f[j - 1].items():
                for k in range(1, n - m0 + 1):
                    if k < len(t):
                        f[j][m0 + k] = f[j].get(m0 + k, 0) + c * t[k]
        t.append(sum(f[j].get(n, 0) for j in range(2, n + 1)))
    return t[leaves]


def test_independent_oracles_agree_with_helpers():
    for n in range(1, 8):
        assert P.catalan(n) == catalan(n)
        assert P.little_schroeder(n) == schroeder_faces(n + 1)


def test_order_examples():
    d3 = generator(Partial(3))
    assert P.leq_T(d3, d3)
    assert P.leq_T(parse("(n c1 (n c2 c3))", "ccc;c"), d3)
    assert not P.leq_T(d3, parse("(n c1 (n c2 c3))", "ccc;c"))
    with pytest.raises(SignatureError):
        P.leq_T(generator(Partial(2)), d3)


def test_quotient_order():
    m2 = generator(M(2))
    assert P.leq_Tas(m2, m2)
    for f in rs.faces(m2):
        assert P.leq_Tas(f, m2)
    assert len(P.down_set_rs(m2)) == 7


def test_contraction_examples():
    assert P.contraction(parse("(s c1 c2) (s c3 c4)", "cccc;o")).encode() == "(s c1 c2 c3 c4)"
    e = parse("(o1 (c2 c3))", "occ;o")
    assert P.contraction(e) == e
    for k in range(3, 6):
        dk = generator(Partial(k))
        for r, _ in blow_up_components(dk, 0):
            assert P.contraction(r) == dk


def test_contraction_is_idempotent():
    for sig in all_signatures(4):
        for e in enumerate_basis(sig):
            c = P.contraction(e)
            assert P.contraction(c) == c
            assert c.sig == e.sig


def test_natural_map_examples():
    assert P.natural_map(parse("(s c1)", "c;o")).encode() == "(n c1 c2)"
    assert P.natural_map(parse("(s c1)", "c;o"), "right").encode() == "(n c1 c2)"
    w = parse("(s c1) (s c2)", "cc;o")
    assert P.natural_map(w).encode() == "(n (n c1 c2) c3)"
    assert P.natural_map(w, "right").encode() == "(n c1 (n c2 c3))"
    with pytest.raises(P.DomainError):
        P.natural_map(parse("(o1 c2)", "oc;o"))


@pytest.mark.parametrize("variant", ["left", "right"])
def test_natural_map_inverts_and_commutes(variant):
    for n in range(1, 4):
        for w in P.square_words(n):
            img = P.natural_map(w, variant)
            assert P.natural_inverse(img, variant) == w
            assert P.contraction(img) == P.natural_map(P.contraction(w), variant)


def test_flat_map():
    for n in range(0, 4):
        assert P.flat_map(generator(Gamma(n))) == generator(Partial(n + 2))
    dom = sorted(P.down_set(generator(Gamma(2))))
    ok, why = P.is_order_isomorphism(dom, P.down_set(generator(Partial(4))), P.flat_map, P.leq_T, P.leq_T, P.flat_inverse)
    assert ok, why
    with pytest.raises(P.DomainError):
        P.flat_map(parse("(s c1)", "c;o"))


def test_upsilon_examples():
    g = P.Ground.of("S", 2)
    assert P.upsilon(P.NestedFamily(g)) == generator(M(2))
    assert P.upsilon(P.NestedFamily.of(g, [(1, 2)])).encode() == "(c1 (n c2 c3))"
    fams = P.enumerate_nested(g)
    assert len(fams) == 13 == len(P.down_set(generator(M(2))))
    assert P.face_poset(generator(M(2))).fvector() == [6, 6, 1]


def test_non_nested_family_rejected():
    g = P.Ground.of("plain", 3)
    with pytest.raises(P.NotNestedError):
        P.NestedFamily.of(g, [(0, 2), (1, 2)])
    with pytest.raises(P.PosetError):
        P.NestedFamily.of(g, [(0, 3)])


def test_arcs_with_same_points_are_distinct():
    g = P.Ground.of("S", 1)
    whole = [a for a in g.intervals() if a.length == 2]
    assert len(whole) == 2
    assert len(P.enumerate_nested(g)) == 3
    with pytest.raises(P.NotNestedError):
        P.NestedFamily(g, frozenset(whole))


@pytest.mark.parametrize("n", range(2, 8))
def test_maximal_linear_families(n):
    assert len(P.maximal_families(("plain", n))) == catalan(n - 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_maximal_cyclic_families(n):
    assert len(P.maximal_families(("S", n))) == comb(2 * n, n)


def test_restrictive_families_and_maximal_elements():
    for n in range(1, 4):
        fams = P.enumerate_nested(("S", n))
        for f in fams:
            assert P.F(P.F(f)) == P.F(f)
            c = P.completion(f)
            assert P.is_restrictive(c)
            assert P.F(c) == P.F(f)
        assert len(P.restrictive_classes(("S", n))) == 2 ** (n + 1) - 1
    g = P.Ground.of("I", 3)
    assert not P.is_restrictive(P.NestedFamily.of(g, [(0, 4)]))


def test_cells_examples():
    c = P.cell_complex(P.DownSet(generator(Partial(4))))
    assert c.total_rank() == 11 and P.is_contractible(c)
    c = P.cell_complex(P.Theta(generator(M(2))))
    assert c.total_rank() == 7 and P.is_contractible(c)
    assert P.is_contractible(P.cell_complex(P.ThetaInf(generator(M(2)))))
    with pytest.raises(P.BoundExceeded):
        P.cell_complex(P.DownSet(generator(Partial(8))))


def test_square_and_open_corollas_via_linear_grounds():
    n = 3
    ok, why = P.is_order_isomorphism(
        P.enumerate_nested(("I_left", n)), P.down_set(generator(G(n))), P.nested_to_tree, lambda a, b: a <= b, P.leq_T
    )
    assert ok, why
    ok, why = P.is_order_isomorphism(
        P.enumerate_nested(("I", n)), P.down_set(generator(Gamma(n))), P.nested_to_tree, lambda a, b: a <= b, P.leq_T
    )
    assert ok, why


def test_face_poset_json():
    fp = P.face_poset(generator(Partial(3)))
    data = fp.to_json()
    assert set(data) == {"elements", "leq", "fvector"}
    assert data["fvector"] == [2, 1]
    assert data["elements"][0] == "(n c1 c2 c3)"
    assert all(fp.leq[i][i] for i in range(len(fp.elements)))
    q = P.face_poset(generator(M(2)), quotient=True)
    assert q.fvector() == [3, 3, 1]


def test_poset_relation_checked():
    with pytest.raises(P.PosetError):
        P.FacePoset(["a", "b"], [[True, True], [True, True]], [0, 0])
