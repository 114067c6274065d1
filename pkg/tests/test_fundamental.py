import json

import pytest

from tphopf.errors import HypothesisError, WellDefinednessError
from tphopf.exactlin import Matrix, Subspace
from tphopf.fundamental import (
    adjunction_psi,
    alpha,
    beta_and_certify,
    build_alpha,
    check_conditions,
    tensor_over_B,
)
from tphopf.gallery import all_fixtures, fixture
from tphopf.invariants import colinear_map, compute_B, restrict_to_B
from tphopf.repcat import ModuleData, check_morphism, regular_module
from tphopf.tpalg import induced_subalgebra

CERTIFIABLE = [f for f in all_fixtures() if f.phi is not None]


def _b_regular(b):
    zero = tuple(Matrix.zeros(b.dim, b.dim) for _ in range(b.dim))
    return ModuleData(b.dim, b.algebra.left, zero, basis=b.algebra.basis, over="B", name="B")


def test_tensor_over_B_dims():
    f = fixture("a3-derivation")
    b = compute_B(f.algebra)
    t = tensor_over_B(f.algebra, _b_regular(b), b)
    assert (t.ambient_dim, t.dim) == (3, 3)
    f = fixture("a3-classical")
    b = compute_B(f.algebra)
    t = tensor_over_B(f.algebra, _b_regular(b), b)
    # A (x)_A A = A
    assert (t.ambient_dim, t.dim) == (9, 3)
    assert t.relations.dim == 6


def test_tensor_relations_unstable_for_non_central_B():
    f = fixture("a3-derivation")
    a = f.algebra
    whole = induced_subalgebra(a.algebra, Subspace.full(3), None, "A")
    n = ModuleData(3, a.algebra.left, None, basis=a.basis, over="B")
    with pytest.raises(WellDefinednessError) as info:
        tensor_over_B(a, n, whole)
    assert info.value.structure_map == "1 <> -"


def test_alpha_on_c2():
    f = fixture("c2-regular")
    b = compute_B(f.algebra)
    ad = build_alpha(f.algebra, f.module, b)
    assert ad.bijective
    assert ad.morphism_report.passed
    assert alpha(f.algebra, f.module).tolist() == [[1, 0], [0, 1]]


def test_c31_witness_on_a3():
    f = fixture("a3-derivation")
    res = check_conditions(f.algebra, f.module, f.phi)
    assert not res.c31.passed and not res.c32.passed
    w = res.c31.witnesses[0]
    assert w.at == ("1", "1", "x")
    assert w.lhs == (0, 0, 0) and w.rhs == (0, 1, 0)
    assert not res.coincidence
    assert (res.coinvariants.dim, res.joint.dim) == (3, 1)


def test_check_conditions_requires_flags():
    f = fixture("c2-regular")
    bad = colinear_map(f.algebra, Matrix([[1, 1], [0, 0]]))
    with pytest.raises(HypothesisError) as info:
        check_conditions(f.algebra, f.module, bad)
    assert "colinear" in info.value.failed


@pytest.mark.parametrize("fx", CERTIFIABLE, ids=lambda f: f.name)
def test_theorem_as_test(fx):
    cert = beta_and_certify(fx.algebra, fx.module, fx.phi)
    assert cert.status == fx.expected
    assert cert.morphism_report.passed
    hyps = all(fx.phi.flags.values()) and cert.condition_31 is not None and cert.condition_31.passed \
        and cert.condition_32.passed
    if hyps:
        assert cert.status == "VALID"
        n = fx.module.dim
        assert (cert.alpha @ cert.beta).is_identity() and (cert.beta @ cert.alpha).is_identity()
        assert cert.alpha.rows == n
        if cert.rank_data["dim_B"] == 1:
            assert cert.rank_data["rank_equality"]
            assert n == cert.rank_data["dim_joint"] * cert.rank_data["dim_A"]
    else:
        assert cert.status == "DIAGNOSTIC" and cert.failed_hypotheses


@pytest.mark.parametrize("name", ["a3-classical", "c2xa2-classical", "c2-free2", "c3-free2"])
def test_classical_and_free_are_valid(name):
    f = fixture(name)
    cert = beta_and_certify(f.algebra, f.module, f.phi)
    assert cert.valid


def test_free_basis_exhibited():
    f = fixture("c2-free2")
    cert = beta_and_certify(f.algebra, f.module, f.phi)
    assert cert.rank_data["free_basis"] == ["1⊗v0", "1⊗v1"]
    assert cert.rank_data["dim_M"] == 4


def test_non_necessity_regression():
    f = fixture("a3-derivation")
    cert = beta_and_certify(f.algebra, f.module, f.phi)
    assert cert.status == "DIAGNOSTIC"
    assert cert.alpha_bijective
    assert cert.beta is None
    assert cert.condition_31.witnesses[0].at == ("1", "1", "x")
    assert cert.rank_data["dim_coinvariants"] == 3 and cert.rank_data["dim_joint"] == 1
    assert "condition on M" in cert.failed_hypotheses


def test_certificate_json_is_deterministic():
    f = fixture("c2-regular")
    one = json.dumps(beta_and_certify(f.algebra, f.module, f.phi).to_json(), sort_keys=True)
    two = json.dumps(beta_and_certify(f.algebra, f.module, f.phi).to_json(), sort_keys=True)
    assert one == two
    assert json.loads(one)["status"] == "VALID"


def test_morphism_laws_of_alpha_hold_without_conditions():
    f = fixture("a3-c2-derivation")
    b = compute_B(f.algebra)
    ad = build_alpha(f.algebra, f.module, b)
    flags = ("a_linear", "lie_linear", "h_colinear")
    assert check_morphism(ad.matrix, ad.tensor.module, f.module, flags).passed


def test_adjunction_zero_module():
    f = fixture("a3-derivation")
    b = compute_B(f.algebra)
    z = Matrix.zeros(0, 0)
    zero = ModuleData(0, (z,), (z,), basis=(), over="B")
    ad = adjunction_psi(zero, f.module, f.algebra, b)
    assert ad.dims == (0, 0) and ad.verified


@pytest.mark.parametrize("name", ["c2-regular", "a3-derivation", "c2-free2", "a3-classical", "a3-c2-derivation"])
def test_adjunction_two_instances(name):
    f = fixture(name)
    b = compute_B(f.algebra)
    for n in (_b_regular(b), restrict_to_B(f.module, f.algebra, b)):
        ad = adjunction_psi(n, f.module, f.algebra, b)
        assert ad.verified and ad.triangle_F and ad.triangle_G
        assert ad.dims[0] == ad.dims[1]
        assert (ad.psi @ ad.psi_prime).is_identity() and (ad.psi_prime @ ad.psi).is_identity()


def test_adjunction_dims_c2_trivial_N():
    f = fixture("c2-regular")
    b = compute_B(f.algebra)
    ad = adjunction_psi(_b_regular(b), f.module, f.algebra, b)
    # Hom_B(Q, M^{AcoH}) = M^{AcoH}
    assert ad.dims == (1, 1)


def test_restrict_to_B_on_regular():
    f = fixture("c3-free2")
    b = compute_B(f.algebra)
    g = restrict_to_B(f.module, f.algebra, b)
    assert g.dim == 2 and g.over == "B"
    assert regular_module(f.algebra).dim == 3
