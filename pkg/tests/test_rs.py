import random

import pytest

from relbrace import rs
from relbrace.rbr import FormalSum, G, M, Partial, all_signatures, compose_at, differential, enumerate_basis, generator
from relbrace.trees import parse


def fs(*pairs, sig):
    return FormalSum((parse(t, sig), c) for c, t in pairs)


def test_square_over_round_splits():
    s, nf = rs.normal_form_signed(parse("(s (n c1 c2))", "cc;o"))
    assert nf.encode() == "(s c1) (s c2)" and s == -1


def test_left_comb_becomes_right_comb():
    s, nf = rs.normal_form_signed(parse("(n (n c1 c2) c3)", "ccc;c"))
    assert nf.encode() == "(n c1 (n c2 c3))" and s == -1
    s, nf = rs.normal_form_signed(parse("(n (n (c1 c4) c2) c3)", "cccc;c"))
    assert nf.encode() == "(n (c1 c4) (n c2 c3))" and s == -1


def test_normal_forms_are_fixed():
    for sig in all_signatures(3):
        for e in rs.enumerate_basis_rs(sig):
            assert rs.normal_form_signed(e) == (1, e)


def test_outside_binary_part_is_rejected():
    with pytest.raises(rs.NotBinaryError):
        rs.normal_form(generator(Partial(3)))
    with pytest.raises(rs.NotBinaryError):
        rs.normal_form(generator(G(2)))


def test_enumeration_examples():
    assert sorted(e.encode() for e in rs.enumerate_basis_rs("cc;c", -1)) == ["(n c1 c2)", "(n c2 c1)"]
    assert sorted(e.encode() for e in rs.enumerate_basis_rs("oo;o")) == ["o1 o2", "o2 o1"]
    assert [e.encode() for e in rs.enumerate_basis_rs("c;o")] == ["(s c1)"]


def test_differential_examples():
    assert rs.differential_rs(generator(M(1))) == fs((-1, "(n c1 c2)"), (-1, "(n c2 c1)"), sig="cc;c")
    assert not rs.differential_rs(generator(G(1)))


def test_relations_are_homogeneous():
    for sig in all_signatures(4):
        for nf, reps in rs.classes(sig).items():
            assert all(e.degree() == nf.degree() for _, e in reps)


def test_random_rewrite_orders_agree():
    rng = random.Random(11)
    for sig in all_signatures(3):
        for e in rs.t21_elements(sig):
            ref = rs.normal_form_signed(e)
            assert rs.normal_form_signed(e, rng) == ref
            # idempotent
            assert rs.normal_form_signed(ref[1]) == (1, ref[1])


def test_composition_with_two_open_units():
    got = rs.compose_rs(parse("(o1 c2)", "oc;o"), 1, generator("mu_op"))
    assert got == fs((1, "(o1 c3) o2"), (1, "o1 (o2 c3)"), sig="ooc;o")


def test_composition_with_unit():
    for sig in all_signatures(3):
        for e in rs.enumerate_basis_rs(sig):
            for slot, c in enumerate(sig.inputs, 1):
                unit = generator("id_c" if c.value == "c" else "id_o")
                assert rs.compose_rs(e, slot, unit) == FormalSum.basis(e)


def test_projection_examples():
    d2 = generator(Partial(2))
    assert rs.phi(d2) == FormalSum.basis(d2)
    assert not rs.phi(generator(Partial(3)))
    assert not rs.phi(generator(G(2)))


def test_projection_is_chain_map_small():
    for sig in all_signatures(3):
        for e in enumerate_basis(sig):
            assert rs.phi(differential(e)) == rs.differential_rs(rs.phi(e))


def test_projection_respects_composition_samples():
    a, b = parse("(o1 c2)", "oc;o"), generator(Partial(2))
    assert rs.phi(compose_at(a, 2, b))
    assert rs.phi(compose_at(a, 2, b)) == rs.compose_rs(rs.phi(a), 2, rs.phi(b))


def test_differential_is_well_defined_on_classes():
    for sig in all_signatures(3):
        for nf, reps in rs.classes(sig).items():
            for s, e in reps:
                assert rs.project(differential(e)) * s == rs.differential_rs(nf)


def test_rs_checks():
    assert rs.check_d_squared_rs(3).passed
    assert rs.check_confluence(3).passed
    assert all(c.passed for c in rs.verify_projection(3))
