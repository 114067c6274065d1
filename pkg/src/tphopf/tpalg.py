"""Transposed Poisson algebras: verification, the transposed Poisson center,
induced subalgebras and the derivation-bracket constructor."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import AxiomError, DerivationError, TheoremViolation
from .exactlin import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    kernel_of_rows,
    lincomb,
    scale,
    sub,
    unit_vector,
    vec,
    zeros,
)
from .hopfcore import AlgebraData, _tensor3, verify_algebra
from .report import Report, format_vector


@dataclass(frozen=True, eq=False)
class TPAlgebraData:
    """A commutative algebra with a bracket table ``bracket[i][j] = {e_i, e_j}``."""

    algebra: AlgebraData
    bracket: tuple
    name: str = ""

    def __post_init__(self):
        d = self.algebra.dim
        object.__setattr__(self, "bracket", _tensor3(self.bracket, d, d, d, "bracket"))
        if not self.name:
            object.__setattr__(self, "name", self.algebra.name)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis(self) -> tuple[str, ...]:
        return self.algebra.basis

    @cached_property
    def ad(self) -> tuple[Matrix, ...]:
        """``ad[i]`` is the matrix of ``y -> {e_i, y}``."""
        return tuple(Matrix.from_columns(self.bracket[i]) for i in range(self.dim))

    @cached_property
    def right_ad(self) -> tuple[Matrix, ...]:
        """``right_ad[j]`` is the matrix of ``y -> {y, e_j}``."""
        d = self.dim
        return tuple(Matrix.from_columns([self.bracket[i][j] for i in range(d)]) for j in range(d))

    def ad_of(self, a: Sequence) -> Matrix:
        d = self.dim
        out = Matrix.zeros(d, d)
        for c, m in zip(a, self.ad):
            if c:
                out = out + m * c
        return out

    def br(self, a: Sequence, b: Sequence) -> Vector:
        terms = []
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    terms.append((ai * bj, self.bracket[i][j]))
        return lincomb(terms, self.dim)

    def mul(self, a: Sequence, b: Sequence) -> Vector:
        return self.algebra.mul(a, b)

    def is_zero_bracket(self) -> bool:
        return all(not any(v) for row in self.bracket for v in row)


def zero_bracket(a: AlgebraData) -> TPAlgebraData:
    d = a.dim
    return TPAlgebraData(a, [[zeros(d)] * d for _ in range(d)])


def verify_tp_algebra(tp: TPAlgebraData) -> Report:
    """Antisymmetry, Jacobi and ``2a{b,c} = {ab,c} + {b,ac}`` on all basis triples.

    Raises :class:`AxiomError` when the underlying algebra is not a commutative
    associative unital algebra.
    """
    a = tp.algebra
    base = verify_algebra(AlgebraData(a.basis, a.mult, a.unit, commutative=True, name=a.name))
    if not base.passed:
        raise AxiomError(f"underlying algebra of {tp.name} is not commutative associative unital", base)
    rep = Report(f"transposed Poisson algebra {tp.name}".strip())
    d, names = tp.dim, tp.basis
    e = [unit_vector(d, i) for i in range(d)]
    for i in range(d):
        for j in range(i, d):
            rep.compare("antisymmetry", (names[i], names[j]), tp.bracket[i][j], scale(-1, tp.bracket[j][i]))
    for i, j, k in itertools.product(range(d), repeat=3):
        at = (names[i], names[j], names[k])
        jac = lincomb(
            [
                (1, tp.ad[i] @ tp.bracket[j][k]),
                (1, tp.ad[j] @ tp.bracket[k][i]),
                (1, tp.ad[k] @ tp.bracket[i][j]),
            ],
            d,
        )
        rep.compare("Jacobi identity", at, jac, zeros(d))
        lhs = scale(2, a.mul(e[i], tp.bracket[j][k]))
        rhs = lincomb([(1, tp.br(a.mult[i][j], e[k])), (1, tp.br(e[j], a.mult[i][k]))], d)
        rep.compare("transposed Leibniz identity", at, lhs, rhs)
    return rep


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """A subalgebra of ``parent`` with its induced structure in carrier coordinates.

    ``algebra`` is the induced algebra whose basis is the canonical basis of
    ``carrier``; ``tp`` additionally carries the induced bracket when the parent
    bracket restricts.
    """

    parent: AlgebraData
    carrier: Subspace
    algebra: AlgebraData
    tp: TPAlgebraData | None = None
    label: str = ""

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def basis_vectors(self) -> tuple[Vector, ...]:
        return self.carrier.basis

    def embed(self, coords: Sequence) -> Vector:
        return self.carrier.from_coords(coords)

    def coords(self, v: Sequence) -> Vector:
        return self.carrier.coords(v)


CenterSubspace = Subalgebra


def induced_subalgebra(parent: AlgebraData, carrier: Subspace, tp: TPAlgebraData | None = None,
                       label: str = "") -> Subalgebra:
    """Restrict the product (and bracket, if given) to ``carrier``.

    Raises :class:`AxiomError` if the carrier is not closed or misses the unit.
    """
    if parent.unit not in carrier:
        raise AxiomError(f"{label or 'subspace'} does not contain the unit")
    W = carrier.basis
    names = tuple(format_vector(w, parent.basis) for w in W)
    mult = []
    for x in W:
        row = []
        for y in W:
            p = parent.mul(x, y)
            if p not in carrier:
                raise AxiomError(f"{label or 'subspace'} is not closed under the product: "
                                 f"({format_vector(x, parent.basis)})({format_vector(y, parent.basis)})")
            row.append(carrier.coords(p))
        mult.append(row)
    alg = AlgebraData(names, mult, carrier.coords(parent.unit), commutative=parent.commutative,
                      name=label or f"subalgebra of {parent.name}")
    sub_tp = None
    if tp is not None:
        br = []
        for x in W:
            row = []
            for y in W:
                b = tp.br(x, y)
                if b not in carrier:
                    raise AxiomError(f"{label or 'subspace'} is not closed under the bracket")
                row.append(carrier.coords(b))
            br.append(row)
        sub_tp = TPAlgebraData(alg, br, name=alg.name)
    return Subalgebra(parent, carrier, alg, sub_tp, label)


def center_conditions(tp: TPAlgebraData) -> list[Matrix]:
    """Matrices ``b -> b{e_i,e_j} - {b e_i, e_j}`` for all basis pairs."""
    a = tp.algebra
    d = tp.dim
    # b -> b * e_i
    right = [Matrix.from_columns([a.mult[k][i] for k in range(d)]) for i in range(d)]
    blocks = []
    for i in range(d):
        for j in range(d):
            blocks.append(a.left_mult(tp.bracket[i][j]) - tp.right_ad[j] @ right[i])
    return blocks


def tp_center(tp: TPAlgebraData) -> Subalgebra:
    """The transposed Poisson center ``{b : b{a,a'} = {ba,a'} for all a, a'}``."""
    d = tp.dim
    rows = (r for blk in center_conditions(tp) for r in blk._data)
    carrier = kernel_of_rows(rows, d)
    return induced_subalgebra(tp.algebra, carrier, tp, label=f"center of {tp.name}")


def derivation_witness(a: AlgebraData, D: Matrix) -> tuple[str, str] | None:
    """First basis pair (lexicographic) violating ``D(xy) = D(x)y + xD(y)``."""
    d = a.dim
    for i in range(d):
        for j in range(d):
            lhs = D @ a.mult[i][j]
            rhs = lincomb([(1, a.mul(D.column(i), a.e(j))), (1, a.mul(a.e(i), D.column(j)))], d)
            if lhs != rhs:
                return (a.basis[i], a.basis[j])
    return None


def derivation_bracket(a: AlgebraData, D: Matrix) -> TPAlgebraData:
    """The bracket ``{x, y} = x D(y) - D(x) y`` for a derivation ``D`` of ``a``.

    The result is run through :func:`verify_tp_algebra`; it is never assumed.
    """
    if D.shape != (a.dim, a.dim):
        raise ValueError(f"derivation must be a {a.dim}x{a.dim} matrix")
    w = derivation_witness(a, D)
    if w is not None:
        raise DerivationError(f"not a derivation: Leibniz law fails at {w}", w)
    d = a.dim
    bracket = [
        [sub(a.mul(a.e(i), D.column(j)), a.mul(D.column(i), a.e(j))) for j in range(d)]
        for i in range(d)
    ]
    tp = TPAlgebraData(a, bracket, name=f"{a.name} with derivation bracket")
    rep = verify_tp_algebra(tp)
    if not rep.passed:
        raise TheoremViolation(f"derivation bracket failed verification:\n{rep.summary()}")
    return tp


def generator_derivation(a: AlgebraData, image: Sequence) -> Matrix:
    """Linear map on ``Q[x]/(p)`` (basis ``x^k``) with ``D(x) = image`` and ``D(x^k) = k x^(k-1) D(x)``.

    The map is a derivation exactly when ``D(p(x)) = 0``; use
    :func:`derivation_witness` or :func:`derivation_bracket` to find out.
    """
    d = a.dim
    image = vec(image)
    cols = [zeros(d)]
    x = a.e(1) if d > 1 else None
    for k in range(1, d):
        cols.append(scale(k, a.mul(a.power(x, k - 1), image)))
    return Matrix.from_columns(cols)


def euler_derivation(a: AlgebraData) -> Matrix:
    """``x d/dx`` on ``Q[x]/(p)``; a derivation for monomial moduli such as ``x^n``."""
    return generator_derivation(a, a.e(1))
