from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tphopf.errors import HypothesisError
from tphopf.exactlin import Matrix, Subspace
from tphopf.gallery import all_fixtures, fixture
from tphopf.hopfcore import cyclic_group_algebra, polynomial_quotient, trivial_hopf, truncated_polynomial
from tphopf.invariants import (
    coinvariant_subalgebra,
    coinvariants,
    colinear_map,
    compute_B,
    ideal_closure,
    invariant_report,
    is_field,
    lambda_map,
    lie_invariants,
    minimal_polynomial,
    projection_p,
    simplicity_evidence,
)
from tphopf.repcat import ComoduleData

WITH_PHI = [f for f in all_fixtures() if f.phi is not None and f.phi.flags["colinear"]]


def test_projection_on_c2():
    f = fixture("c2-regular")
    P = projection_p(f.module, f.phi)
    # p(1) = p(g) = 1
    assert P.tolist() == [[1, 1], [0, 0]]


def test_projection_on_c3():
    f = fixture("c3-regular")
    assert projection_p(f.module, f.phi).tolist() == [[1, 1, 1], [0, 0, 0], [0, 0, 0]]


@pytest.mark.parametrize("fx", WITH_PHI, ids=lambda f: f.name)
def test_projection_laws(fx):
    P = projection_p(fx.module, fx.phi)
    assert P @ P == P
    assert P.image() == coinvariants(fx.module.coaction, fx.hopf)


def test_lambda_on_c2():
    f = fixture("c2-regular")
    res = lambda_map(f.module, f.phi)
    assert res.lam.tolist() == [[1, 0, 1, 0], [0, 1, 0, 1]]
    assert res.report.passed
    assert (res.lam @ f.module.coaction.matrix).is_identity()


def test_lambda_requires_colinear_phi():
    f = fixture("sweedler-h4")
    assert not f.phi.flags["colinear"]
    with pytest.raises(HypothesisError) as info:
        lambda_map(f.module, f.phi)
    assert "colinear" in info.value.failed


def test_non_colinear_phi_flags():
    a = fixture("c2-regular").algebra
    # g -> 1 is a unital algebra map but not colinear
    trivial = colinear_map(a, Matrix([[1, 1], [0, 0]]))
    assert trivial.flags["algebra_map"] and trivial.flags["unit_preserving"]
    assert not trivial.flags["colinear"]
    with pytest.raises(HypothesisError):
        trivial.require("colinear")
    swap = colinear_map(a, Matrix([[0, 1], [1, 0]]))
    assert not swap.flags["unit_preserving"]


def test_lie_invariants_of_a3():
    f = fixture("a3-derivation")
    assert lie_invariants(f.module, f.algebra) == Subspace.span(3, [(1, 0, 0)])
    rep = invariant_report(f.algebra, f.module)
    assert rep.dims() == {"coinvariants": 3, "lie_invariants": 1, "joint": 1}


def test_coinvariants_of_regular_comodule():
    h = cyclic_group_algebra(4)
    assert coinvariants(ComoduleData.regular(h), h) == Subspace.span(4, [h.unit])
    assert coinvariants(ComoduleData.trivial(3, h), h).dim == 3


def test_coinvariant_subalgebra_and_B():
    a = fixture("c2-regular").algebra
    assert coinvariant_subalgebra(a).carrier.dim == 1
    b = compute_B(fixture("a3-derivation").algebra)
    assert b.carrier == Subspace.span(3, [(1, 0, 0)])
    assert compute_B(fixture("a3-classical").algebra).carrier.dim == 3


def test_ideal_closure_of_x():
    a = fixture("a3-derivation").algebra
    assert ideal_closure(a, [[0, 1, 0]]) == Subspace.span(3, [(0, 1, 0), (0, 0, 1)])
    assert ideal_closure(a, [[1, 0, 0]]).dim == 3
    assert ideal_closure(a, []).dim == 0


_vec6 = st.lists(st.integers(-3, 3), min_size=6, max_size=6)


@settings(max_examples=30, deadline=None)
@given(st.lists(_vec6, max_size=2), st.lists(_vec6, max_size=2))
def test_ideal_closure_is_a_closure_operator(s, t):
    a = fixture("a3-c2-derivation").algebra
    cs = ideal_closure(a, s)
    assert cs.contains(Subspace.span(6, s))
    assert ideal_closure(a, cs) == cs
    both = ideal_closure(a, s + t)
    assert both.contains(cs)


def test_simplicity():
    assert simplicity_evidence(fixture("c2-regular").algebra).verdict == "Simple"
    ev = simplicity_evidence(fixture("a3-derivation").algebra)
    assert ev.verdict == "NotSimple"
    assert ev.ideal == Subspace.span(3, [(0, 1, 0), (0, 0, 1)])


def test_is_field_verdicts():
    assert is_field(trivial_hopf().algebra).kind == "Field"
    sqrt2 = is_field(polynomial_quotient([-2, 0, 1], "g"))
    assert sqrt2.kind == "Field"
    assert is_field(polynomial_quotient([-2, 0, 0, 1], "g")).kind == "Field"
    c2 = cyclic_group_algebra(2).algebra
    v = is_field(c2)
    assert v.kind == "NotField"
    x, y = v.witness
    assert any(x) and any(y) and not any(c2.mul(x, y))
    dual = truncated_polynomial(2)
    v = is_field(dual)
    assert v.kind == "NotField"
    x, y = v.witness
    assert any(x) and any(y) and not any(dual.mul(x, y))


def test_is_field_on_B():
    b = compute_B(fixture("a3-derivation").algebra)
    assert is_field(b).kind == "Field"
    assert is_field(compute_B(fixture("a3-classical").algebra)).kind == "NotField"


def test_is_field_deterministic():
    alg = polynomial_quotient([2, -3, 1], "g")
    runs = {is_field(alg, seed=7) for _ in range(3)}
    assert len(runs) == 1
    assert is_field(alg, seed=1) == is_field(alg, seed=1)


def test_minimal_polynomial():
    a = truncated_polynomial(4)
    assert minimal_polynomial(a, a.e(1)) == [0, 0, 0, 0, 1]
    q = polynomial_quotient([-2, 0, 1], "g")
    assert minimal_polynomial(q, q.e(1)) == [Fraction(-2), 0, 1]
