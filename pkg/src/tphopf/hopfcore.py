"""Finite-dimensional algebras, coalgebras and Hopf algebras by structure constants.

An algebra stores ``mult[i][j]``, the coordinate vector of ``e_i * e_j``.  A
coalgebra stores ``comult[i]``, the flattened coordinates of ``Delta(e_i)`` in
``H (x) H``.  Linear maps (antipode, etc.) are :class:`Matrix` objects whose
``j``-th column is the image of ``e_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import BijectivityError, ShapeError
from .exactlin import (
    ONE,
    ZERO,
    Matrix,
    Vector,
    add,
    kron,
    lincomb,
    tensor,
    unit_vector,
    vec,
    zeros,
)
from .report import Report, format_vector


def _tensor3(data, d1: int, d2: int, d3: int, what: str) -> tuple:
    if len(data) != d1:
        raise ShapeError(f"{what}: expected {d1} rows, got {len(data)}")
    out = []
    for i, row in enumerate(data):
        if len(row) != d2:
            raise ShapeError(f"{what}[{i}]: expected {d2} entries, got {len(row)}")
        r = []
        for j, v in enumerate(row):
            if len(v) != d3:
                raise ShapeError(f"{what}[{i}][{j}]: expected vector of length {d3}, got {len(v)}")
            r.append(vec(v))
        out.append(tuple(r))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class AlgebraData:
    basis: tuple[str, ...]
    mult: tuple
    unit: Vector
    commutative: bool | None = None
    name: str = ""

    def __post_init__(self):
        d = len(self.basis)
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "mult", _tensor3(self.mult, d, d, d, "mult"))
        if len(self.unit) != d:
            raise ShapeError(f"unit: expected vector of length {d}, got {len(self.unit)}")
        object.__setattr__(self, "unit", vec(self.unit))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def e(self, i: int | str) -> Vector:
        if isinstance(i, str):
            i = self.basis.index(i)
        return unit_vector(self.dim, i)

    @cached_property
    def left(self) -> tuple[Matrix, ...]:
        """``left[i]`` is the matrix of ``y -> e_i * y``."""
        return tuple(Matrix.from_columns(self.mult[i]) for i in range(self.dim))

    @cached_property
    def mult_matrix(self) -> Matrix:
        """The multiplication ``A (x) A -> A`` as a ``dim x dim^2`` matrix."""
        return Matrix.from_columns([self.mult[i][j] for i in range(self.dim) for j in range(self.dim)])

    def left_mult(self, a: Sequence) -> Matrix:
        d = self.dim
        out = Matrix.zeros(d, d)
        for c, m in zip(a, self.left):
            if c:
                out = out + m * c
        return out

    def mul(self, a: Sequence, b: Sequence) -> Vector:
        d = self.dim
        terms = []
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    terms.append((ai * bj, self.mult[i][j]))
        return lincomb(terms, d)

    def power(self, a: Sequence, k: int) -> Vector:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, a)
        return out


@dataclass(frozen=True, eq=False)
class CoalgebraData:
    basis: tuple[str, ...]
    comult: tuple
    counit: Vector

    def __post_init__(self):
        d = len(self.basis)
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(self.comult) != d:
            raise ShapeError(f"comult: expected {d} entries, got {len(self.comult)}")
        rows = []
        for i, v in enumerate(self.comult):
            if len(v) != d * d:
                raise ShapeError(f"comult[{i}]: expected vector of length {d * d}, got {len(v)}")
            rows.append(vec(v))
        object.__setattr__(self, "comult", tuple(rows))
        if len(self.counit) != d:
            raise ShapeError(f"counit: expected vector of length {d}, got {len(self.counit)}")
        object.__setattr__(self, "counit", vec(self.counit))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def comult_matrix(self) -> Matrix:
        return Matrix.from_columns(list(self.comult))

    @cached_property
    def counit_matrix(self) -> Matrix:
        return Matrix([self.counit])


@dataclass(frozen=True, eq=False)
class HopfAlgebraData:
    algebra: AlgebraData
    coalgebra: CoalgebraData
    antipode: Matrix
    name: str = ""

    def __post_init__(self):
        d = self.algebra.dim
        if self.coalgebra.dim != d:
            raise ShapeError("algebra and coalgebra dimensions differ")
        if self.antipode.shape != (d, d):
            raise ShapeError(f"antipode: expected {d}x{d} matrix, got {self.antipode.shape}")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis(self) -> tuple[str, ...]:
        return self.algebra.basis

    @property
    def unit(self) -> Vector:
        return self.algebra.unit

    @property
    def counit(self) -> Vector:
        return self.coalgebra.counit

    @cached_property
    def antipode_inverse(self) -> Matrix | None:
        return self.antipode.inverse()

    def mul(self, a, b) -> Vector:
        return self.algebra.mul(a, b)

    def comul(self, a) -> Vector:
        return self.coalgebra.comult_matrix @ a

    def eps(self, a) -> Fraction:
        return sum((c * e for c, e in zip(a, self.counit)), ZERO)

    @cached_property
    def regular_components(self) -> tuple[Matrix, ...]:
        """Components ``D_k`` of ``Delta`` seen as a right coaction: ``Delta(h) = sum_k D_k h (x) e_k``."""
        d = self.dim
        comps = []
        for k in range(d):
            cols = [tuple(self.coalgebra.comult[h][p * d + k] for p in range(d)) for h in range(d)]
            comps.append(Matrix.from_columns(cols))
        return tuple(comps)

    @cached_property
    def product_coeffs(self) -> tuple:
        """``product_coeffs[k]`` lists ``(p, q, c)`` with ``c`` the ``e_k``-coefficient of ``e_p e_q``."""
        d = self.dim
        table = [[] for _ in range(d)]
        for p in range(d):
            for q in range(d):
                for k, c in enumerate(self.algebra.mult[p][q]):
                    if c:
                        table[k].append((p, q, c))
        return tuple(tuple(t) for t in table)

    @property
    def unit_index(self) -> int | None:
        """Index of the basis vector equal to ``1_H``, if there is one."""
        for i in range(self.dim):
            if self.unit == unit_vector(self.dim, i):
                return i
        return None


def _names(basis: Sequence[str], idx: Sequence[int]) -> tuple:
    return tuple(basis[i] for i in idx)


def verify_algebra(a: AlgebraData) -> Report:
    """Unit, associativity and (when claimed) commutativity on all basis tuples."""
    rep = Report(f"algebra {a.name}".strip())
    d, names = a.dim, a.basis
    for i in range(d):
        ei = a.e(i)
        rep.compare("left unit", (names[i],), a.mul(a.unit, ei), ei)
        rep.compare("right unit", (names[i],), a.mul(ei, a.unit), ei)
    for i, j, k in itertools.product(range(d), repeat=3):
        lhs = a.mul(a.mult[i][j], a.e(k))
        rhs = a.mul(a.e(i), a.mult[j][k])
        rep.compare("associativity", _names(names, (i, j, k)), lhs, rhs)
    if a.commutative:
        for i in range(d):
            for j in range(i + 1, d):
                rep.compare("commutativity", _names(names, (i, j)), a.mult[i][j], a.mult[j][i])
    return rep


def commutativity_witnesses(a: AlgebraData) -> list[tuple[str, str]]:
    return [
        (a.basis[i], a.basis[j])
        for i in range(a.dim)
        for j in range(i + 1, a.dim)
        if a.mult[i][j] != a.mult[j][i]
    ]


def verify_coalgebra(c: CoalgebraData) -> Report:
    rep = Report("coalgebra")
    d = c.dim
    D = c.comult_matrix
    I = Matrix.identity(d)
    left = kron(D, I) @ D
    right = kron(I, D) @ D
    eps = c.counit_matrix
    lcounit = kron(eps, I) @ D
    rcounit = kron(I, eps) @ D
    for i in range(d):
        at = (c.basis[i],)
        rep.compare("coassociativity", at, left.column(i), right.column(i))
        rep.compare("left counit", at, lcounit.column(i), unit_vector(d, i))
        rep.compare("right counit", at, rcounit.column(i), unit_vector(d, i))
    return rep


def _tensor_mul(h: HopfAlgebraData, x: Vector, y: Vector) -> Vector:
    """Product in ``H (x) H`` of two flattened tensors."""
    d = h.dim
    terms = []
    for p, xp in enumerate(x):
        if not xp:
            continue
        for q, yq in enumerate(y):
            if not yq:
                continue
            i1, i2 = divmod(p, d)
            j1, j2 = divmod(q, d)
            terms.append((xp * yq, tensor(h.algebra.mult[i1][j1], h.algebra.mult[i2][j2])))
    return lincomb(terms, d * d)


def swap_matrix(d: int) -> Matrix:
    """Flip ``V (x) V -> V (x) V``."""
    rows = []
    for i in range(d):
        for j in range(d):
            rows.append(unit_vector(d * d, j * d + i))
    return Matrix(rows)


def verify_hopf(h: HopfAlgebraData) -> Report:
    """Check every Hopf axiom on basis elements.

    Raises :class:`BijectivityError` when the antipode matrix is singular; the
    axiom report is attached to the exception.
    """
    rep = Report(f"hopf algebra {h.name}".strip())
    rep.merge(verify_algebra(h.algebra))
    rep.merge(verify_coalgebra(h.coalgebra))
    d, names = h.dim, h.basis
    D = h.coalgebra.comult_matrix
    for i in range(d):
        for j in range(d):
            at = (names[i], names[j])
            prod = h.algebra.mult[i][j]
            rep.compare("comultiplication is multiplicative", at, h.comul(prod),
                        _tensor_mul(h, D.column(i), D.column(j)))
            rep.compare("counit is multiplicative", at, h.eps(prod), h.counit[i] * h.counit[j])
    rep.compare("comultiplication is unital", ("1",), h.comul(h.unit), tensor(h.unit, h.unit))
    rep.compare("counit is unital", ("1",), h.eps(h.unit), ONE)

    m = h.algebra.mult_matrix
    S = h.antipode
    I = Matrix.identity(d)
    left = m @ kron(S, I) @ D
    right = m @ kron(I, S) @ D
    for i in range(d):
        expected = tuple(h.counit[i] * u for u in h.unit)
        rep.compare("antipode S(h1)h2 = eps(h)1", (names[i],), left.column(i), expected)
        rep.compare("antipode h1S(h2) = eps(h)1", (names[i],), right.column(i), expected)

    Sinv = h.antipode_inverse
    if Sinv is None:
        rep.fail("antipode is bijective", (), "det(S)", 0)
        raise BijectivityError("antipode is singular", rep)
    Dop = swap_matrix(d) @ D
    left = m @ kron(Sinv, I) @ Dop
    right = m @ kron(I, Sinv) @ Dop
    for i in range(d):
        expected = tuple(h.counit[i] * u for u in h.unit)
        rep.compare("inverse antipode S^-1(h2)h1 = eps(h)1", (names[i],), left.column(i), expected)
        rep.compare("inverse antipode h2S^-1(h1) = eps(h)1", (names[i],), right.column(i), expected)
    rep.compare("S S^-1 = id", (), (S @ Sinv).tolist(), I.tolist())
    rep.compare("S^-1 S = id", (), (Sinv @ S).tolist(), I.tolist())
    return rep


def is_commutative(h: HopfAlgebraData | AlgebraData) -> bool:
    a = h.algebra if isinstance(h, HopfAlgebraData) else h
    return not commutativity_witnesses(a)


def is_cocommutative(h: HopfAlgebraData) -> bool:
    P = swap_matrix(h.dim)
    D = h.coalgebra.comult_matrix
    return P @ D == D


def antipode_order(h: HopfAlgebraData, limit: int = 64) -> int | None:
    """Smallest ``k >= 1`` with ``S^k = id`` (``None`` if above ``limit``)."""
    I = Matrix.identity(h.dim)
    P = h.antipode
    for k in range(1, limit + 1):
        if P == I:
            return k
        P = P @ h.antipode
    return None


# --- constructors -----------------------------------------------------------

_GENERATORS = "ghklmnpqrs"


def _group_element_name(exps: Sequence[int], letters: str) -> str:
    parts = []
    for e, letter in zip(exps, letters):
        if e == 1:
            parts.append(letter)
        elif e > 1:
            parts.append(f"{letter}^{e}")
    return "".join(parts) or "1"


def group_algebra(orders: Sequence[int], name: str | None = None) -> HopfAlgebraData:
    """``Q[G]`` for ``G = C_{n1} x ... x C_{nk}`` with grouplike basis."""
    orders = tuple(int(n) for n in orders if int(n) != 1)
    if any(n < 1 for n in orders):
        raise ValueError("cyclic orders must be positive")
    if len(orders) > len(_GENERATORS):
        raise ValueError("too many cyclic factors")
    elements = list(itertools.product(*[range(n) for n in orders]))
    index = {g: i for i, g in enumerate(elements)}
    d = len(elements)
    basis = tuple(_group_element_name(g, _GENERATORS) for g in elements)
    mult = []
    for g in elements:
        row = []
        for k in elements:
            prod = tuple((a + b) % n for a, b, n in zip(g, k, orders))
            row.append(unit_vector(d, index[prod]))
        mult.append(row)
    unit = unit_vector(d, 0)
    comult = [tensor(unit_vector(d, i), unit_vector(d, i)) for i in range(d)]
    counit = (ONE,) * d
    inv_cols = [unit_vector(d, index[tuple((-a) % n for a, n in zip(g, orders))]) for g in elements]
    if name is None:
        name = "Q[" + "x".join(f"C{n}" for n in orders) + "]" if orders else "Q"
    alg = AlgebraData(basis, mult, unit, commutative=True, name=name)
    return HopfAlgebraData(alg, CoalgebraData(basis, comult, counit), Matrix.from_columns(inv_cols), name=name)


def cyclic_group_algebra(n: int) -> HopfAlgebraData:
    return group_algebra((n,), name=f"Q[C{n}]" if n > 1 else "Q")


def trivial_hopf() -> HopfAlgebraData:
    """The one-dimensional Hopf algebra ``Q``."""
    return group_algebra((), name="Q")


def sweedler_h4() -> HopfAlgebraData:
    """Sweedler's four-dimensional Hopf algebra, basis ``1, g, x, gx``.

    ``g^2 = 1``, ``x^2 = 0``, ``xg = -gx``, ``Delta(x) = x (x) 1 + g (x) x``,
    ``S(g) = g``, ``S(x) = -gx``.
    """
    words = [(0, 0), (1, 0), (0, 1), (1, 1)]  # g^a x^b
    index = {w: i for i, w in enumerate(words)}
    basis = ("1", "g", "x", "gx")
    d = 4
    mult = []
    for a, b in words:
        row = []
        for c, e in words:
            if b + e >= 2:
                row.append(zeros(d))
                continue
            sign = -1 if (b * c) % 2 else 1
            row.append(tuple(Fraction(sign) * t for t in unit_vector(d, index[((a + c) % 2, b + e)])))
        mult.append(row)
    e = lambda i: unit_vector(d, i)  # noqa: E731
    comult = [
        tensor(e(0), e(0)),
        tensor(e(1), e(1)),
        add(tensor(e(2), e(0)), tensor(e(1), e(2))),
        add(tensor(e(3), e(1)), tensor(e(0), e(3))),
    ]
    counit = vec([1, 1, 0, 0])
    S = Matrix.from_columns([e(0), e(1), vec([0, 0, 0, -1]), e(2)])
    alg = AlgebraData(basis, mult, e(0), commutative=False, name="H4")
    return HopfAlgebraData(alg, CoalgebraData(basis, comult, counit), S, name="H4")


def polynomial_quotient(modulus: Sequence, var: str = "x", name: str | None = None) -> AlgebraData:
    """``Q[var]/(p)`` for a monic ``p`` given by coefficients lowest degree first."""
    p = vec(modulus)
    n = len(p) - 1
    if n < 1 or p[-1] != 1:
        raise ValueError("modulus must be monic of positive degree")
    basis = tuple("1" if k == 0 else (var if k == 1 else f"{var}^{k}") for k in range(n))

    def reduce(coeffs: list) -> Vector:
        coeffs = list(coeffs)
        for deg in range(len(coeffs) - 1, n - 1, -1):
            c = coeffs[deg]
            if c:
                for k in range(n + 1):
                    coeffs[deg - n + k] -= c * p[k]
        return tuple(coeffs[:n]) + (ZERO,) * max(0, n - len(coeffs))

    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = [ZERO] * (2 * n - 1)
            coeffs[i + j] = ONE
            row.append(reduce(coeffs))
        mult.append(row)
    if name is None:
        name = f"Q[{var}]/({_poly_str(p, var)})"
    return AlgebraData(basis, mult, unit_vector(n, 0), commutative=True, name=name)


def _poly_str(p: Sequence[Fraction], var: str) -> str:
    names = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, len(p))]
    return format_vector(tuple(reversed(p)), list(reversed(names)))


def truncated_polynomial(n: int, var: str = "x") -> AlgebraData:
    """``Q[x]/(x^n)``."""
    return polynomial_quotient([0] * n + [1], var, name=f"Q[{var}]/({var}^{n})")


def tensor_algebra(a: AlgebraData, b: AlgebraData, name: str | None = None) -> AlgebraData:
    """``A (x) B`` with componentwise product; basis named ``a*b`` (factors equal to 1 dropped)."""

    def nm(x: str, y: str) -> str:
        if x == "1":
            return y
        if y == "1":
            return x
        return f"{x}*{y}"

    basis = tuple(nm(x, y) for x in a.basis for y in b.basis)
    mult = []
    for i1 in range(a.dim):
        for i2 in range(b.dim):
            row = []
            for j1 in range(a.dim):
                for j2 in range(b.dim):
                    row.append(tensor(a.mult[i1][j1], b.mult[i2][j2]))
            mult.append(row)
    comm = bool(a.commutative and b.commutative) if a.commutative is not None and b.commutative is not None else None
    return AlgebraData(basis, mult, tensor(a.unit, b.unit), commutative=comm,
                       name=name or f"{a.name} (x) {b.name}")
