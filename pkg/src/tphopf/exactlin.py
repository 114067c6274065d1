"""Exact rational linear algebra.

Everything here works over ``fractions.Fraction``.  Vectors are plain tuples of
Fractions, matrices are immutable :class:`Matrix` objects and subspaces are kept
in reduced row echelon form so that equal subspaces compare equal.

Tensor products are flattened lexicographically with the leftmost factor
varying slowest: the basis vector ``e_i (x) f_j`` of ``V (x) W`` sits at index
``i * dim(W) + j``.  :func:`kron` follows the same convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

Scalar = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: Scalar) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a canonical Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        num, sep, den = text.partition("/")
        if sep and (not den.strip() or "/" in den):
            raise ValueError(f"malformed rational literal {value!r}")
        try:
            return Fraction(int(num), int(den)) if sep else Fraction(int(num))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational literal {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable[Scalar]) -> Vector:
    return tuple(to_rational(v) for v in values)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def lincomb(terms: Iterable[tuple[Fraction, Vector]], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in terms:
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def is_zero(v: Vector) -> bool:
    return not any(v)


def tensor(u: Vector, v: Vector) -> Vector:
    """Flattened ``u (x) v`` (leftmost factor slowest)."""
    return tuple(a * b for a in u for b in v)


@dataclass(frozen=True)
class TensorIndex:
    """Index bookkeeping for iterated tensor products of based spaces."""

    dims: tuple[int, ...]

    def __init__(self, *dims: int):
        if len(dims) == 1 and not isinstance(dims[0], int):
            dims = tuple(dims[0])
        object.__setattr__(self, "dims", tuple(int(d) for d in dims))

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    def flatten(self, *idx: int) -> int:
        if len(idx) != len(self.dims):
            raise ValueError(f"expected {len(self.dims)} indices, got {len(idx)}")
        flat = 0
        for i, d in zip(idx, self.dims):
            if not 0 <= i < d:
                raise IndexError(f"index {i} out of range for factor of dim {d}")
            flat = flat * d + i
        return flat

    def unflatten(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise IndexError(f"flat index {flat} out of range {self.size}")
        out = []
        for d in reversed(self.dims):
            flat, r = divmod(flat, d)
            out.append(r)
        return tuple(reversed(out))


class Matrix:
    """Immutable dense matrix of Fractions (row-major)."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Sequence[Sequence[Scalar]], cols: int | None = None):
        rows = tuple(tuple(to_rational(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {r} has {len(row)} entries, expected {cols}")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m._data = rows
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls._raw(tuple(tuple(to_rational(c[i]) for c in columns) for i in range(n)), len(columns))

    @classmethod
    def from_rows(cls, rows: Sequence[Vector], cols: int) -> "Matrix":
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key):
        r, c = key
        return self._data[r][c]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._data)) if self.rows else tuple(() for _ in range(self.cols)), self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def _check_same(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(add(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(sub(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(scale(-ONE, r) for r in self._data), self.cols)

    def __mul__(self, c: Scalar) -> "Matrix":
        c = to_rational(c)
        return Matrix._raw(tuple(scale(c, r) for r in self._data), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            out = []
            ocols = other.cols
            odata = other._data
            for row in self._data:
                acc = [ZERO] * ocols
                for k, a in enumerate(row):
                    if a:
                        orow = odata[k]
                        for j in range(ocols):
                            b = orow[j]
                            if b:
                                acc[j] += a * b
                out.append(tuple(acc))
            return Matrix._raw(tuple(out), ocols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"cannot apply {self.shape} matrix to vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in self._data)

    def is_zero(self) -> bool:
        return all(not any(r) for r in self._data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        ech = RowEchelon(self.cols)
        for r in self._data:
            ech.add(r)
        rows, pivots = ech.dense()
        return Matrix._raw(tuple(rows), self.cols), pivots

    def rank(self) -> int:
        ech = RowEchelon(self.cols)
        for r in self._data:
            ech.add(r)
        return ech.rank

    def inverse(self) -> "Matrix | None":
        """Exact inverse, or ``None`` when the matrix is singular."""
        if self.rows != self.cols:
            raise ValueError("only square matrices have inverses")
        n = self.rows
        aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(self._data)]
        for c in range(n):
            piv = next((r for r in range(c, n) if aug[r][c]), None)
            if piv is None:
                return None
            aug[c], aug[piv] = aug[piv], aug[c]
            p = aug[c][c]
            aug[c] = [x / p for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return Matrix._raw(tuple(tuple(r[n:]) for r in aug), n)

    def kernel(self) -> "Subspace":
        return kernel(self)

    def image(self) -> "Subspace":
        return Subspace.span(self.rows, self.columns())


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; matches the flattening of :class:`TensorIndex`."""
    rows = []
    for ra in a._data:
        for rb in b._data:
            rows.append(tuple(x * y for x in ra for y in rb))
    return Matrix._raw(tuple(rows), a.cols * b.cols)


def block_rows(blocks: Sequence[Matrix], cols: int) -> Matrix:
    data: list = []
    for blk in blocks:
        if blk.cols != cols:
            raise ValueError("all constraint blocks must share the column count")
        data.extend(blk._data)
    return Matrix._raw(tuple(data), cols)


class RowEchelon:
    """Incrementally maintained reduced row echelon form.

    Rows are stored sparsely as ``{column: value}`` dicts with a unit pivot and
    zeros in every other pivot column, so reducing a new row is one pass.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))

    def reduce(self, row: Mapping[int, Fraction] | Sequence) -> dict[int, Fraction]:
        if isinstance(row, Mapping):
            v = {k: to_rational(x) for k, x in row.items() if x}
        else:
            if len(row) != self.ncols:
                raise ValueError(f"row of length {len(row)} in a system with {self.ncols} columns")
            v = {k: to_rational(x) for k, x in enumerate(row) if x}
        for p in [k for k in v if k in self._rows]:
            c = v.get(p)
            if not c:
                continue
            for k, x in self._rows[p].items():
                nv = v.get(k, ZERO) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, row) -> bool:
        """Insert a row; returns True when it increased the rank."""
        v = self.reduce(row)
        if not v:
            return False
        q = min(v)
        inv = ONE / v[q]
        v = {k: x * inv for k, x in v.items()}
        for r in self._rows.values():
            c = r.get(q)
            if c:
                for k, x in v.items():
                    nv = r.get(k, ZERO) - c * x
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        self._rows[q] = v
        return True

    def dense(self) -> tuple[list[Vector], tuple[int, ...]]:
        pivots = self.pivots
        rows = []
        for p in pivots:
            r = self._rows[p]
            rows.append(tuple(r.get(k, ZERO) for k in range(self.ncols)))
        return rows, pivots

    def kernel_vectors(self) -> list[Vector]:
        pivots = set(self._rows)
        out = []
        for f in range(self.ncols):
            if f in pivots:
                continue
            v = [ZERO] * self.ncols
            v[f] = ONE
            for p, r in self._rows.items():
                c = r.get(f)
                if c:
                    v[p] = -c
            out.append(tuple(v))
        return out


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Q^ambient_dim`` held in canonical RREF form."""

    ambient_dim: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        ech = RowEchelon(ambient_dim)
        for v in vectors:
            ech.add(v)
        rows, pivots = ech.dense()
        return cls(ambient_dim, tuple(rows), pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def matrix(self) -> Matrix:
        """Basis vectors as the rows of a matrix."""
        return Matrix._raw(self.basis, self.ambient_dim)

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def reduce(self, v: Sequence) -> Vector:
        """Normal form of ``v`` modulo this subspace (pivot entries cleared)."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for k, x in enumerate(row):
                    if x:
                        v[k] -= c * x
        return tuple(v)

    def __contains__(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return is_zero(self.reduce(vec(v)))

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(v in self for v in other.basis)

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the canonical basis; raises if ``v`` is not a member."""
        v = vec(v)
        if v not in self:
            raise ValueError("vector does not lie in the subspace")
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, c: Sequence) -> Vector:
        return lincomb(zip(c, self.basis), self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def annihilator(self) -> "Subspace":
        ech = RowEchelon(self.ambient_dim)
        for v in self.basis:
            ech.add(v)
        return Subspace.span(self.ambient_dim, ech.kernel_vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    __and__ = intersect

    def quotient_basis(self) -> list[Vector]:
        """Unit vectors at the non-pivot positions: coset representatives of ambient/self."""
        piv = set(self.pivots)
        return [unit_vector(self.ambient_dim, k) for k in range(self.ambient_dim) if k not in piv]

    def quotient_positions(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(k for k in range(self.ambient_dim) if k not in piv)

    def quotient_coords(self, v: Sequence) -> Vector:
        """Coordinates of the coset ``v + self`` in the basis of :meth:`quotient_basis`."""
        r = self.reduce(vec(v))
        return tuple(r[k] for k in self.quotient_positions())

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span(m.rows, [m @ v for v in self.basis])

    def is_invariant(self, m: Matrix) -> bool:
        return all((m @ v) in self for v in self.basis)


def subspace_ops(a: Subspace, b: Subspace) -> dict:
    """Intersection, sum, inclusion and quotient representatives in one call."""
    a._check(b)
    return {
        "intersect": a.intersect(b),
        "sum": a + b,
        "contains": a.contains(b),
        "quotient_basis": a.quotient_basis(),
    }


def kernel(m: Matrix) -> Subspace:
    ech = RowEchelon(m.cols)
    for r in m._data:
        ech.add(r)
    return Subspace.span(m.cols, ech.kernel_vectors())


def kernel_of_rows(rows: Iterable, ncols: int) -> Subspace:
    """Solution space of a homogeneous system given row by row (dense or sparse dict rows)."""
    ech = RowEchelon(ncols)
    for r in rows:
        ech.add(r)
    return Subspace.span(ncols, ech.kernel_vectors())


@dataclass(frozen=True)
class SolutionSet:
    """Affine solution set ``particular + homogeneous``; ``particular`` is None when empty."""

    particular: Vector | None
    homogeneous: Subspace

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    def __contains__(self, v) -> bool:
        if self.particular is None:
            return False
        return sub(vec(v), self.particular) in self.homogeneous


def solve_linear_system(constraints: Sequence[tuple[Matrix, Sequence | None]], ncols: int | None = None) -> SolutionSet:
    """Solve the vertically stacked system ``M_1 x = t_1, ..., M_k x = t_k``.

    A target of ``None`` means the homogeneous equation.  With no constraints the
    whole of ``Q^ncols`` is returned.
    """
    if ncols is None:
        if not constraints:
            raise ValueError("ncols is required when there are no constraints")
        ncols = constraints[0][0].cols
    aug = RowEchelon(ncols + 1)
    for m, t in constraints:
        if m.cols != ncols:
            raise ValueError("all constraint matrices must share the column count")
        target = zeros(m.rows) if t is None else vec(t)
        if len(target) != m.rows:
            raise ValueError("target length does not match constraint rows")
        for row, b in zip(m._data, target):
            aug.add(tuple(row) + (b,))
    rows, pivots = aug.dense()
    homog = RowEchelon(ncols)
    for r in rows:
        homog.add(r[:ncols])
    hom = Subspace.span(ncols, homog.kernel_vectors())
    if ncols in pivots:
        return SolutionSet(None, hom)
    x = [ZERO] * ncols
    for r, p in zip(rows, pivots):
        x[p] = r[ncols]
    return SolutionSet(tuple(x), hom)
