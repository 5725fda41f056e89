import pytest
from hypothesis import given, settings, strategies as st

from relbrace.homology import (
    ChainComplexError,
    ChainComplexZ,
    boundary_matrices,
    compare_homology,
    homology_of,
    mapping_cone,
    rank_mod_p,
    rank_rational,
    reduced_homology_vanishes,
    smith_normal_form,
)
from relbrace.rbr import enumerate_basis

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))
)


def _mul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def test_snf_examples():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).factors == [1, 1, 1]
    assert smith_normal_form([[2, 4], [6, 8]]).factors == [2, 4]
    z = smith_normal_form([[0, 0], [0, 0]])
    assert z.factors == [] and z.rank == 0


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_snf_transforms(m):
    r = smith_normal_form(m, transforms=True)
    assert _mul(_mul(r.U, m), r.V) == r.D
    assert all(b % a == 0 for a, b in zip(r.factors, r.factors[1:]))
    assert r.rank == rank_rational(m) == len(r.factors)
    for i, f in enumerate(r.factors):
        assert r.D[i][i] == f > 0


def test_mod_p_rank_detects_torsion():
    assert rank_rational([[2, 0], [0, 3]]) == 2
    assert rank_mod_p([[2, 0], [0, 3]], 2) == 1


def test_torsion_reported():
    c = ChainComplexZ({0: ["a"], 1: ["b"]}, {1: {(0, 0): 2}})
    h = homology_of(c)
    assert h.betti() == {} and h.torsion() == {0: [2]}
    assert not h.is_torsion_free()


def test_d_squared_violation_is_fatal():
    with pytest.raises(ChainComplexError):
        ChainComplexZ({0: ["a"], 1: ["b"], 2: ["c"]}, {1: {(0, 0): 1}, 2: {(0, 0): 1}})


def test_small_complexes():
    c = boundary_matrices("rbr", "c;c")
    assert c.degrees() == [0] and not c.boundaries
    c = boundary_matrices("rbr", "cc;c")
    assert c.rank(1) == len(enumerate_basis("cc;c", 0))
    assert c.rank(0) == len(enumerate_basis("cc;c", -1))
    c = boundary_matrices("rs", "oo;o")
    assert c.degrees() == [0] and c.rank(0) == 2 and not c.boundaries


def test_homology_values():
    h = homology_of(boundary_matrices("rbr", "cc;c"))
    assert h.to_json() == [{"degree": 0, "betti": 1, "torsion": []}, {"degree": 1, "betti": 1, "torsion": []}]
    h = homology_of(boundary_matrices("rbr", "c;o"))
    assert h.to_json() == [{"degree": 0, "betti": 1, "torsion": []}]


def test_lambda_convention_shifts_degrees():
    h = homology_of(boundary_matrices("rbr", "cc;c", "lambda"))
    assert h.betti() == {-1: 1, 0: 1}


@pytest.mark.parametrize("sig", ["cc;c", "co;o", "ccc;c"])
def test_compare(sig):
    c = compare_homology(sig)
    assert c.equal and c.phi_iso and c.torsion_free
    assert c.to_json()["equal_summaries"] is True


def test_cone_of_identity_is_acyclic():
    c = boundary_matrices("rbr", "cc;c")
    cone = mapping_cone(c, c, lambda e: [(e, 1)])
    assert not homology_of(cone).nonzero()
    zero = mapping_cone(c, c, lambda e: [])
    assert homology_of(zero).nonzero()


def test_reduced_homology_of_point():
    assert reduced_homology_vanishes(ChainComplexZ({0: ["p"]}))
    assert not reduced_homology_vanishes(ChainComplexZ({0: ["p", "q"]}))
