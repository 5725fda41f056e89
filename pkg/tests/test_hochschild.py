import json
from fractions import Fraction

import numpy as np
import pytest

from relbrace.hochschild import (
    GF101,
    QQ,
    ActionError,
    EndPlusElement,
    action_from_json,
    bundled,
    bundled_actions,
    cohomology_dims,
    cone_check,
    end_plus_product,
    identity_samples,
    load_algebra,
    oracle_agreement,
    regular_bimodule,
    validate_affine_action,
    whistle_check,
)
from relbrace.hochschild.braces import ArgumentError, action_defect, brace_eval, verify_appendix_relations
from relbrace.hochschild.classical import BoundExceeded, end_plus_bimodule, hochschild_cohomology
from relbrace.hochschild.cochains import (
    CL,
    END,
    Cochain,
    NotMaurerCartan,
    Space,
    bracket,
    circle,
    convolution,
    convolution_oracle,
    def_differential,
    graft,
    mc_check,
    mc_element,
)
from relbrace.hochschild.field import GF
from relbrace.hochschild.koszul import CRITICAL, koszul_confluence_check, monomials, mu, normal_forms
from relbrace.rbr import G, M, Partial, differential, generator
from relbrace.trees import parse

DUAL = {
    "field": "Q",
    "dim": 2,
    "mult": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
    "module": {"dim": 2, "rho": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]], "f": [[1, 0], [0, 1]]},
}


def variant(**changes):
    data = json.loads(json.dumps(DUAL))
    for key, val in changes.items():
        if key in ("rho", "f"):
            data["module"][key] = val
        else:
            data[key] = val
    return data


def write(tmp_path, data, name="alg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return p


# ---------------------------------------------------------------- fields


def test_prime_field_arithmetic():
    F = GF(7)
    assert F.scalar(10) == 3
    assert F.scalar(3) * F.inv(3) % 7 == 1
    R, piv = F.rref([[2, 4], [1, 2]])
    assert piv == [0] and F.rank([[2, 4], [1, 2]]) == 1
    ns = F.nullspace([[1, 1, 0]], 3)
    assert ns.shape == (2, 3)
    assert F.is_zero(F.matmul(F.matrix([[1, 1, 0]]), ns.T))


def test_rational_field_is_exact():
    assert QQ.scalar(Fraction(1, 3)) + QQ.scalar(Fraction(2, 3)) == 1
    assert QQ.rank([[1, 2], [2, 4]]) == 1
    assert QQ.inv(QQ.scalar(3)) == Fraction(1, 3)


# ---------------------------------------------------------------- End+(V)


def test_end_plus_product_laws():
    rng = np.random.default_rng(5)
    F = GF101
    draw = lambda: EndPlusElement(F.random((3,), rng), F.random((3, 3), rng), F)
    for _ in range(50):
        x, y, z = draw(), draw(), draw()
        assert (x * y) * z == x * (y * z)
        unit = EndPlusElement.unit(3, F)
        assert unit * y == y
        zero_phi = EndPlusElement(x.v, F.zeros((3, 3)), F)
        assert zero_phi * y == EndPlusElement(F.zeros(3), F.zeros((3, 3)), F)


def test_end_plus_unit_is_only_a_left_unit():
    F = GF101
    x = EndPlusElement(F.array([1, 2]), F.array([[1, 0], [0, 1]]), F)
    unit = EndPlusElement.unit(2, F)
    assert unit * x == x
    assert x * unit == EndPlusElement(F.zeros(2), x.phi, F)
    assert not x * unit == x


def test_end_plus_dimension_mismatch():
    a = EndPlusElement.unit(2, GF101)
    b = EndPlusElement.unit(3, GF101)
    with pytest.raises(ActionError):
        end_plus_product(a, b)


# ---------------------------------------------------------------- actions


def test_bundled_actions_valid():
    names = [a.name for a in bundled_actions()]
    assert names == ["dual_numbers", "truncated_poly3", "upper_triangular", "nilpotent_whistle"]
    for p in (0, 101):
        for a in bundled_actions(p):
            rep = validate_affine_action(a)
            assert rep.ok, (a.name, rep.checks)


def test_hand_written_dual_numbers():
    act = action_from_json(DUAL, "dual")
    rep = validate_affine_action(act)
    assert rep.ok and set(rep.checks) == {"associative", "module", "f_compatible", "alpha_morphism"}
    assert list(act.algebra.unit()) == [1, 0]


def test_f_variant_rejected_with_witness():
    # f(1) = 0, f(x) = x breaks f(x * 1) = rho(x) f(1)
    rep = validate_affine_action(action_from_json(variant(f=[[0, 0], [0, 1]])))
    assert not rep.checks["f_compatible"]
    assert rep.witness["f_compatible"] == [1, 0]
    # the zero map is allowed
    assert validate_affine_action(action_from_json(variant(f=[[0, 0], [0, 0]]))).ok


def test_rho_not_multiplicative_rejected():
    bad = [[[1, 0], [0, 1]], [[0, 0], [1, 1]]]
    rep = validate_affine_action(action_from_json(variant(rho=bad)))
    assert not rep.checks["module"] and "module" in rep.witness


def test_load_non_associative_file(tmp_path):
    # 1 * x = 1 + x
    mult = [[[1, 0], [1, 1]], [[0, 1], [0, 0]]]
    path = write(tmp_path, variant(mult=mult))
    with pytest.raises(ActionError) as err:
        load_algebra(path)
    assert err.value.law == "associative"
    assert "triple" in str(err.value) and str(err.value.witness) in str(err.value)


def test_load_f_violation(tmp_path):
    path = write(tmp_path, variant(f=[[0, 0], [0, 1]]))
    with pytest.raises(ActionError) as err:
        load_algebra(path)
    assert err.value.law == "f_compatible"
    assert "f(ab) != rho(a) f(b)" in str(err.value)


@pytest.mark.parametrize(
    "text",
    ["{", "[]", json.dumps({"dim": 2}), json.dumps(variant(mult=[[1]]))],
)
def test_load_schema_errors(tmp_path, text):
    p = tmp_path / "bad.json"
    p.write_text(text)
    with pytest.raises(ActionError) as err:
        load_algebra(p)
    assert err.value.law == "schema"


def test_field_override(tmp_path):
    act = load_algebra(write(tmp_path, DUAL), p=101)
    assert act.field == GF101


# ---------------------------------------------------------------- Maurer-Cartan


@pytest.mark.parametrize("p", [0, 101])
def test_mc_for_bundled(p):
    for a in bundled_actions(p):
        rep = mc_check(mc_element(a, 5))
        assert rep.ok, (a.name, rep.checks)


def test_zero_algebra_gives_zero_mc():
    z = action_from_json({"field": "Q", "dim": 0, "mult": [], "module": {"dim": 1, "rho": [], "f": []}})
    phi = mc_element(z)
    assert not phi and mc_check(phi).ok


def test_perturbed_mc_fails_with_location():
    act = bundled("dual_numbers", 101)
    phi = mc_element(act, 4)
    comps = dict(phi.comps)
    m = comps[(CL, 2)].copy()
    m[1, 1, 0] = m[1, 1, 0] + 1
    bad = Cochain(phi.space, comps | {(CL, 2): m})
    rep = mc_check(bad)
    assert not rep.checks["equation"] and rep.checks["degree"]
    where = rep.witness["equation"]
    assert where["component"] == ["end", 2] and len(where["index"]) == 4
    with pytest.raises(NotMaurerCartan):
        def_differential(bad, phi)


def test_inconsistent_scaling_breaks_mc():
    act = bundled("dual_numbers", 101)
    phi = mc_element(act, 4)
    half = Cochain(phi.space, {k: (v if k[0] == CL else 2 * v) for k, v in phi.comps.items()})
    assert not mc_check(half).ok


# ---------------------------------------------------------------- products


@pytest.fixture(scope="module")
def dual101():
    act = bundled("dual_numbers", 101)
    return act, mc_element(act, 4)


def test_pre_lie_zero(dual101):
    _, phi = dual101
    assert not circle(phi, phi.space.zero())
    assert not circle(phi.space.zero(), phi)


def test_convolution_unit_and_associativity(dual101):
    _, phi = dual101
    sp = phi.space
    rng = np.random.default_rng(2)
    u = sp.unit_cochain()
    for _ in range(20):
        a, b, c = (sp.random(rng, int(d), "open") for d in rng.integers(-2, 1, size=3))
        assert convolution(u, a) == a
        # the right side only keeps the endomorphism part
        assert convolution(a, u) == Cochain(sp, {k: v for k, v in a.comps.items() if k[0] == END})
        assert convolution(convolution(a, b), c) == convolution(a, convolution(b, c))
        assert convolution(a, b) == convolution_oracle(a, b)


def test_d_squared_on_full_basis():
    act = bundled("dual_numbers", 101)
    phi = mc_element(act, 3)
    sp = phi.space
    for key, idx in sp.basis(sp.keys()):
        psi = Cochain.from_coordinate(sp, key, idx)
        assert not def_differential(phi, def_differential(phi, psi))


@pytest.mark.parametrize("p", [101, 0])
def test_identity_samples(p):
    act = bundled("dual_numbers", p)
    rep = identity_samples(act, samples=30, seed=1)
    assert rep.ok, rep.witness


def test_identity_samples_detect_bad_mc():
    act = bundled("dual_numbers", 101)
    act.rho = 2 * act.rho % 101
    rep = identity_samples(act, samples=10, seed=0)
    assert not rep.checks["d_squared"]


@pytest.mark.parametrize("name", ["dual_numbers", "upper_triangular", "nilpotent_whistle"])
def test_oracle_agreement(name):
    assert oracle_agreement(bundled(name, 101), N=3).ok


def test_cone_check_dual():
    rep = cone_check(bundled("dual_numbers", 101), N=3)
    assert rep.ok, rep.checks
    for key in ("lower_triangular", "block_form", "anti_chain_map", "long_exact_sequence", "euler"):
        assert rep.checks[key] is True


# ---------------------------------------------------------------- classical Hochschild


@pytest.mark.parametrize("normalized", [False, True])
def test_dual_numbers_hochschild(normalized):
    dims = cohomology_dims(regular_bimodule(bundled("dual_numbers")), 4, normalized=normalized)
    assert dims == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}


def test_ground_field_hochschild():
    k = action_from_json({"field": "Q", "dim": 1, "mult": [[[1]]], "module": {"dim": 1, "rho": [[[1]]], "f": [[1]]}})
    assert cohomology_dims(regular_bimodule(k), 4) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}


def test_other_examples_hochschild():
    assert cohomology_dims(regular_bimodule(bundled("truncated_poly3", 101)), 2) == {0: 3, 1: 2, 2: 2}
    assert cohomology_dims(regular_bimodule(bundled("upper_triangular", 101)), 2) == {0: 1, 1: 0, 2: 0}
    assert cohomology_dims(end_plus_bimodule(bundled("dual_numbers")), 3) == {0: 2, 1: 0, 2: 0, 3: 0}
    with pytest.raises(BoundExceeded):
        cohomology_dims(regular_bimodule(bundled("dual_numbers")), 7)


def test_hochschild_summary():
    h = hochschild_cohomology(bundled("dual_numbers"), "A", 3)
    assert h.betti() == {0: 2, 1: 1, 2: 1, 3: 1}


def test_whistle_on_center():
    rep = whistle_check(bundled("dual_numbers"))
    assert rep.ok, rep.checks
    assert rep.checks["nonzero_images"][0] == 2


# ---------------------------------------------------------------- brace action


def test_brace_examples(dual101):
    _, eta = dual101
    sp = eta.space
    rng = np.random.default_rng(4)
    x, y = sp.random(rng, -1, "closed"), sp.random(rng, -2, "closed")
    assert brace_eval(generator(M(1)), [x, y], eta=eta) == circle(x, y)
    assert brace_eval(generator(G(1)), [y], eta=eta) == circle(eta.open, y)
    mu_op = generator("mu_op")
    a, b, c = (sp.random(rng, d, "open", max_arity=2) for d in (0, -1, -1))
    assert brace_eval(mu_op, [a, b], eta=eta) == graft(a, b)
    ab = brace_eval(mu_op, [a, b], eta=eta)
    bc = brace_eval(mu_op, [b, c], eta=eta)
    assert brace_eval(mu_op, [ab, c], eta=eta) == brace_eval(mu_op, [a, bc], eta=eta)


def test_brace_argument_errors(dual101):
    _, eta = dual101
    sp = eta.space
    rng = np.random.default_rng(0)
    x = sp.random(rng, -1, "closed")
    with pytest.raises(ArgumentError):
        brace_eval(generator(M(1)), [x], eta=eta)
    with pytest.raises(ArgumentError):
        brace_eval(generator(M(1)), [x, sp.random(rng, -1, "open")], eta=eta)


def test_chain_law_dual(dual101):
    rep = verify_appendix_relations(bundled("dual_numbers", 101), samples=25, seed=3, N=5)
    assert rep.ok, rep.witness
    # a strict algebra has no closed products above arity two, so these act by zero
    vacuous = {"partial_4", "G_3", "G_4"}
    for name, v in rep.per_generator.items():
        assert (v["nontrivial_samples"] == 0) == (name in vacuous), name


@pytest.mark.parametrize("tree, sig", [("(s c1 c2)", "cc;o"), ("(n c1 c2 c3)", "ccc;c"), ("(o1 c2)", "oc;o"), ("(c1 c2)", "cc;c")])
def test_flipping_a_term_is_detected(tree, sig):
    act = bundled("dual_numbers", 101)
    eta = mc_element(act, 5)
    g = parse(tree, sig)
    dg = differential(g)
    rng = np.random.default_rng(9)
    from relbrace.hochschild.braces import random_args

    for e, c in dg:
        detected = False
        for _ in range(10):
            args = random_args(g, eta.space, rng)
            assert not action_defect(g, args, eta)
            term = brace_eval(e, args, eta=eta).scale(c)
            if term:
                detected = True
                break
        assert detected, e.encode()


def test_action_law_fails_without_mc():
    act = bundled("dual_numbers", 101)
    eta = mc_element(act, 5)
    twisted = Cochain(eta.space, {k: (v if k[0] == CL else 2 * v) for k, v in eta.comps.items()})
    rng = np.random.default_rng(1)
    g = generator(G(2))
    from relbrace.hochschild.braces import random_args

    assert any(action_defect(g, random_args(g, eta.space, rng), twisted) for _ in range(10))


# ---------------------------------------------------------------- Koszul


def test_koszul_critical_pairs():
    rep = koszul_confluence_check()
    assert rep.ok
    assert set(rep.pairs) == set(CRITICAL)
    assert rep.pairs["mu.mu.mu"]["normal_forms"] == ["mu(x1, mu(x2, mu(x3, x4)))"]
    assert all(len(p["branches"]) == 2 for p in rep.pairs.values())


def test_koszul_monomial_counts():
    # planar binary monomials are counted by Catalan numbers
    for sig in ("closed", "open_v", "open_f"):
        assert [len(monomials(sig, w)) for w in range(1, 5)] == [1, 2, 5, 14]
    assert normal_forms(mu(mu("x1", "x2"), "x3")) == frozenset([mu("x1", mu("x2", "x3"))])
