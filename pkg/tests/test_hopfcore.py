import copy
from fractions import Fraction

import pytest

from oracles import cyclic_group_tables
from tphopf.errors import BijectivityError, ShapeError
from tphopf.exactlin import Matrix, unit_vector
from tphopf.hopfcore import (
    AlgebraData,
    CoalgebraData,
    HopfAlgebraData,
    antipode_order,
    cyclic_group_algebra,
    group_algebra,
    is_cocommutative,
    is_commutative,
    polynomial_quotient,
    sweedler_h4,
    tensor_algebra,
    truncated_polynomial,
    verify_algebra,
    verify_coalgebra,
    verify_hopf,
)


@pytest.mark.parametrize("n", range(1, 7))
def test_cyclic_group_algebras_pass(n):
    h = cyclic_group_algebra(n)
    rep = verify_hopf(h)
    assert rep.passed, rep.summary()
    assert is_commutative(h) and is_cocommutative(h)


@pytest.mark.parametrize("n", range(2, 7))
def test_cyclic_tables_match_group_law(n):
    h = cyclic_group_algebra(n)
    ref = cyclic_group_tables(n)
    assert [[list(v) for v in row] for row in h.algebra.mult] == ref["mult"]
    assert [list(v) for v in h.coalgebra.comult] == ref["comult"]
    assert list(h.counit) == ref["counit"]
    assert h.antipode.tolist() == ref["antipode"]


def test_product_of_cyclic_groups():
    h = group_algebra((2, 3))
    assert h.dim == 6
    assert verify_hopf(h).passed


def test_sweedler_h4():
    h = sweedler_h4()
    assert verify_hopf(h).passed
    assert not is_commutative(h) and not is_cocommutative(h)
    S = h.antipode
    x = unit_vector(4, 2)
    assert S @ (S @ x) != x
    assert S @ (S @ x) == tuple(-c for c in x)
    Sinv = h.antipode_inverse
    assert (Sinv @ S).is_identity() and (S @ Sinv).is_identity()
    assert Sinv @ x == unit_vector(4, 3)
    assert antipode_order(h) == 4


def _mutations(h: HopfAlgebraData):
    """Every table obtained by adding 1 to a single structure constant."""
    base = dict(
        mult=[[list(v) for v in row] for row in h.algebra.mult],
        unit=list(h.unit),
        comult=[list(v) for v in h.coalgebra.comult],
        counit=list(h.counit),
        antipode=h.antipode.tolist(),
    )

    def positions(x, path=()):
        if isinstance(x, list):
            for k, y in enumerate(x):
                yield from positions(y, path + (k,))
        else:
            yield path

    for key in base:
        for path in positions(base[key]):
            t = copy.deepcopy(base)
            target = t[key]
            for k in path[:-1]:
                target = target[k]
            target[path[-1]] += 1
            alg = AlgebraData(h.basis, t["mult"], t["unit"], name="mutant")
            co = CoalgebraData(h.basis, t["comult"], t["counit"])
            yield (key,) + path, HopfAlgebraData(alg, co, Matrix(t["antipode"]), name="mutant")


def test_every_single_constant_mutation_of_c2_is_caught():
    h = cyclic_group_algebra(2)
    count = 0
    for where, mutant in _mutations(h):
        count += 1
        try:
            rep = verify_hopf(mutant)
        except BijectivityError as exc:
            rep = exc.report
        assert not rep.passed, where
        assert rep.witnesses, where
    assert count == 8 + 8 + 4 + 4


def test_singular_antipode_raises_with_report():
    h = cyclic_group_algebra(2)
    bad = HopfAlgebraData(h.algebra, h.coalgebra, Matrix([[1, 1], [0, 0]]), name="bad")
    with pytest.raises(BijectivityError) as info:
        verify_hopf(bad)
    assert info.value.report is not None and not info.value.report.passed


def test_algebra_witnesses():
    a = truncated_polynomial(3)
    assert verify_algebra(a).passed
    mult = [[list(v) for v in row] for row in a.mult]
    mult[1][1] = [1, 0, 0]  # x*x = 1 breaks associativity with x^2
    bad = AlgebraData(a.basis, mult, a.unit, commutative=True)
    rep = verify_algebra(bad)
    assert "associativity" in rep.failed_laws()


def test_false_commutativity_claim():
    h = sweedler_h4()
    claim = AlgebraData(h.basis, h.algebra.mult, h.unit, commutative=True)
    rep = verify_algebra(claim)
    assert "commutativity" in rep.failed_laws()


def test_coalgebra_counit_witness():
    h = cyclic_group_algebra(2)
    co = CoalgebraData(h.basis, h.coalgebra.comult, [2, 1])
    rep = verify_coalgebra(co)
    assert not rep.passed


def test_shape_errors():
    with pytest.raises(ShapeError):
        AlgebraData(("1", "x"), [[[1, 0]]], [1, 0])
    with pytest.raises(ShapeError):
        CoalgebraData(("1",), [[1, 0]], [1])


def test_polynomial_quotients():
    q = polynomial_quotient([-2, 0, 1], "g")
    g = q.e(1)
    assert q.mul(g, g) == (2, 0)
    a = truncated_polynomial(4)
    assert a.power(a.e(1), 4) == (0, 0, 0, 0)
    t = tensor_algebra(a, cyclic_group_algebra(2).algebra)
    assert t.dim == 8 and verify_algebra(t).passed
    assert Fraction(1) in t.unit
