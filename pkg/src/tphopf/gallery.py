"""Named fixtures: Hopf algebras, comodule transposed Poisson algebras, Hopf
modules and colinear maps, each verified when built."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .errors import AxiomError
from .exactlin import Matrix, kron, tensor, unit_vector
from .hopfcore import (
    HopfAlgebraData,
    antipode_order,
    cyclic_group_algebra,
    sweedler_h4,
    tensor_algebra,
    trivial_hopf,
    truncated_polynomial,
    verify_hopf,
)
from .invariants import ColinearAlgebraMap, colinear_map, identity_phi, unit_phi
from .repcat import (
    ComoduleData,
    ComoduleTPAlgebra,
    ModuleData,
    free_module,
    regular_module,
    verify_comodule_tp_algebra,
    verify_tp_hopf_module,
)
from .tpalg import TPAlgebraData, derivation_bracket, euler_derivation, zero_bracket


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    hopf: HopfAlgebraData
    algebra: ComoduleTPAlgebra
    module: ModuleData
    phi: ColinearAlgebraMap | None
    expected: str  # certificate status
    description: str = ""
    facts: dict = field(default_factory=dict)


def _finish(name, hopf, ctpa, module, phi, expected, description, **facts) -> Fixture:
    for rep in (verify_hopf(hopf), verify_comodule_tp_algebra(ctpa), verify_tp_hopf_module(module, ctpa)):
        if not rep.passed:
            raise AxiomError(f"fixture {name} failed verification", rep)
    return Fixture(name, hopf, ctpa, module, phi, expected, description, facts)


def group_regular(n: int) -> Fixture:
    h = cyclic_group_algebra(n)
    a = ComoduleTPAlgebra(zero_bracket(h.algebra), h, ComoduleData.regular(h), name=h.name)
    return _finish(f"c{n}-regular", h, a, regular_module(a), identity_phi(a), "VALID",
                   f"A = M = H = {h.name}, coaction by the coproduct, zero bracket, phi = id")


def polynomial_derivation(n: int) -> Fixture:
    alg = truncated_polynomial(n)
    tp = derivation_bracket(alg, euler_derivation(alg))
    h = trivial_hopf()
    a = ComoduleTPAlgebra(tp, h, ComoduleData.trivial(n, h), name=alg.name)
    return _finish(f"a{n}-derivation", h, a, regular_module(a), unit_phi(a), "DIAGNOSTIC",
                   f"{alg.name} with bracket x^i D(x^j) - D(x^i) x^j for D = x d/dx, trivial H",
                   c31_witness=("1", "1", "x"))


def sweedler() -> Fixture:
    """``A = Q`` with ``M = H4`` coacting on itself; no colinear ``phi`` exists here."""
    h = sweedler_h4()
    q = trivial_hopf().algebra
    a = ComoduleTPAlgebra(zero_bracket(q), h, ComoduleData.trivial(1, h), name="Q")
    zero = tuple(Matrix.zeros(4, 4) for _ in range(1))
    m = ModuleData(4, (Matrix.identity(4),), zero, ComoduleData.regular(h), h.basis, name="H4")
    phi = colinear_map(a, Matrix([h.counit], 4))
    return _finish("sweedler-h4", h, a, m, phi, "DIAGNOSTIC",
                   "Sweedler's H4; antipode of order 4, coacting on itself over A = Q",
                   antipode_order=antipode_order(h))


def polynomial_group_derivation() -> Fixture:
    """``A = Q[x]/(x^3) (x) Q[C2]``, derivation ``x d/dx (x) id``, ``H = Q[C2]`` on the second factor."""
    a3 = truncated_polynomial(3)
    h = cyclic_group_algebra(2)
    alg = tensor_algebra(a3, h.algebra, name="Q[x]/(x^3) (x) Q[C2]")
    D = kron(euler_derivation(a3), Matrix.identity(2))
    tp = derivation_bracket(alg, D)
    co = ComoduleData(tuple(kron(Matrix.identity(3), c) for c in h.regular_components))
    a = ComoduleTPAlgebra(tp, h, co, name=alg.name)
    phi = colinear_map(a, Matrix.from_columns([tensor(a3.unit, h.algebra.e(i)) for i in range(2)]))
    return _finish("a3-c2-derivation", h, a, regular_module(a), phi, "DIAGNOSTIC",
                   "truncated polynomials tensor Q[C2] with a colinear derivation bracket, phi(g) = 1 (x) g")


def group_free(n: int, rank: int) -> Fixture:
    base = group_regular(n)
    m = free_module(base.algebra, rank)
    return _finish(f"c{n}-free{rank}", base.hopf, base.algebra, m, base.phi, "VALID",
                   f"free module of rank {rank} over {base.hopf.name}")


def polynomial_classical(n: int) -> Fixture:
    alg = truncated_polynomial(n)
    h = trivial_hopf()
    a = ComoduleTPAlgebra(zero_bracket(alg), h, ComoduleData.trivial(n, h), name=alg.name)
    return _finish(f"a{n}-classical", h, a, regular_module(a), unit_phi(a), "VALID",
                   f"{alg.name} with zero bracket over trivial H; B = A")


def group_polynomial_classical() -> Fixture:
    """``A = Q[C2] (x) Q[x]/(x^2)`` coacted on by ``Q[C2]`` through the first factor; ``B = Q[x]/(x^2)``."""
    h = cyclic_group_algebra(2)
    a2 = truncated_polynomial(2)
    alg = tensor_algebra(h.algebra, a2, name="Q[C2] (x) Q[x]/(x^2)")
    co = ComoduleData(tuple(kron(c, Matrix.identity(2)) for c in h.regular_components))
    a = ComoduleTPAlgebra(zero_bracket(alg), h, co, name=alg.name)
    phi = colinear_map(a, Matrix.from_columns([tensor(h.algebra.e(i), a2.unit) for i in range(2)]))
    return _finish("c2xa2-classical", h, a, regular_module(a), phi, "VALID",
                   "zero bracket, H = Q[C2] acting on the first factor; B is two-dimensional")


_BUILDERS: dict[str, Callable[[], Fixture]] = {}
for _n in range(2, 7):
    _BUILDERS[f"c{_n}-regular"] = (lambda n=_n: group_regular(n))
    _BUILDERS[f"a{_n}-derivation"] = (lambda n=_n: polynomial_derivation(n))
_BUILDERS["sweedler-h4"] = sweedler
_BUILDERS["a3-c2-derivation"] = polynomial_group_derivation
_BUILDERS["c2-free2"] = lambda: group_free(2, 2)
_BUILDERS["c3-free2"] = lambda: group_free(3, 2)
_BUILDERS["a3-classical"] = lambda: polynomial_classical(3)
_BUILDERS["c2xa2-classical"] = group_polynomial_classical

NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def fixture(name: str) -> Fixture:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; available: {', '.join(NAMES)}") from None
    return builder()


def all_fixtures() -> list[Fixture]:
    return [fixture(n) for n in NAMES]
