"""Comodules, transposed Poisson modules and Hopf modules; hom-spaces and the
gamma isomorphism for induced modules ``N (x) H``.

A right ``H``-coaction on ``M`` is stored by its components: ``C_k`` is the
matrix with ``rho(m) = sum_k C_k m (x) h_k``.  In these terms coassociativity
reads ``sum_k Delta_k^{pq} C_k = C_p C_q`` and colinearity of ``f`` reads
``C'_k f = f C_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import AxiomError, HypothesisError, ShapeError, TheoremViolation
from .exactlin import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    Vector,
    kernel_of_rows,
    kron,
    lincomb,
    unit_vector,
    vec,
    zeros,
)
from .hopfcore import AlgebraData, HopfAlgebraData, is_commutative
from .report import Report
from .tpalg import Subalgebra, TPAlgebraData, verify_tp_algebra


def tensor_names(left: Sequence[str], right: Sequence[str]) -> tuple[str, ...]:
    return tuple(f"{a}⊗{b}" for a in left for b in right)


@dataclass(frozen=True, eq=False)
class ComoduleData:
    """A right coaction given by component matrices ``C_k`` (one per basis vector of ``H``)."""

    components: tuple[Matrix, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ShapeError("a coaction needs one component per basis vector of H")
        d = comps[0].rows
        for k, c in enumerate(comps):
            if c.shape != (d, d):
                raise ShapeError(f"coaction component {k}: expected {d}x{d}, got {c.shape}")
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return self.components[0].rows

    @property
    def hopf_dim(self) -> int:
        return len(self.components)

    @classmethod
    def from_flat(cls, rho: Sequence[Sequence], hopf_dim: int) -> "ComoduleData":
        """Build from ``rho[i]``, the flattened coordinates of ``rho(m_i)`` in ``M (x) H``."""
        d = len(rho)
        rows = []
        for i, r in enumerate(rho):
            if len(r) != d * hopf_dim:
                raise ShapeError(f"coaction[{i}]: expected vector of length {d * hopf_dim}, got {len(r)}")
            rows.append(vec(r))
        comps = []
        for k in range(hopf_dim):
            comps.append(Matrix.from_columns([tuple(rows[i][j * hopf_dim + k] for j in range(d)) for i in range(d)],
                                             rows=d))
        return cls(tuple(comps))

    def to_flat(self) -> list[Vector]:
        return [self.coact(unit_vector(self.dim, i)) for i in range(self.dim)]

    @classmethod
    def trivial(cls, dim: int, hopf: HopfAlgebraData) -> "ComoduleData":
        """``m -> m (x) 1_H``."""
        I = Matrix.identity(dim)
        return cls(tuple(I * u for u in hopf.unit))

    @classmethod
    def regular(cls, hopf: HopfAlgebraData) -> "ComoduleData":
        """``H`` coacting on itself by ``Delta``."""
        return cls(hopf.regular_components)

    def coact(self, v: Sequence) -> Vector:
        parts = [c @ v for c in self.components]
        return tuple(parts[k][i] for i in range(self.dim) for k in range(self.hopf_dim))

    @cached_property
    def matrix(self) -> Matrix:
        """``rho`` as a ``(dim * dim H) x dim`` matrix."""
        return Matrix.from_columns(self.to_flat())


def verify_comodule(m: ComoduleData, h: HopfAlgebraData, names: Sequence[str] | None = None) -> Report:
    """Coassociativity and counit law on all basis vectors."""
    if m.hopf_dim != h.dim:
        raise ShapeError(f"coaction has {m.hopf_dim} components but H has dimension {h.dim}")
    rep = Report("comodule")
    d, dh = m.dim, h.dim
    names = names or [f"m{i}" for i in range(d)]
    C = m.components
    Dflat = h.coalgebra.comult
    # (id (x) Delta) rho  vs  (rho (x) id) rho, component (p, q)
    lhs = {}
    rhs = {}
    for p in range(dh):
        for q in range(dh):
            terms = Matrix.zeros(d, d)
            for k in range(dh):
                c = Dflat[k][p * dh + q]
                if c:
                    terms = terms + C[k] * c
            lhs[p, q] = terms
            rhs[p, q] = C[p] @ C[q]
    counit = Matrix.zeros(d, d)
    for k, e in enumerate(h.counit):
        if e:
            counit = counit + C[k] * e
    for i in range(d):
        left = tuple(lhs[p, q][r, i] for r in range(d) for p in range(dh) for q in range(dh))
        right = tuple(rhs[p, q][r, i] for r in range(d) for p in range(dh) for q in range(dh))
        rep.compare("coassociativity", (names[i],), left, right)
        rep.compare("counit law", (names[i],), counit.column(i), unit_vector(d, i))
    return rep


@dataclass(frozen=True, eq=False)
class ComoduleTPAlgebra:
    """A transposed Poisson algebra with a right ``H``-coaction."""

    tp: TPAlgebraData
    hopf: HopfAlgebraData
    comodule: ComoduleData
    name: str = ""

    def __post_init__(self):
        if self.comodule.dim != self.tp.dim or self.comodule.hopf_dim != self.hopf.dim:
            raise ShapeError("coaction dimensions do not match the algebra and Hopf algebra")
        if not self.name:
            object.__setattr__(self, "name", self.tp.name)

    @property
    def algebra(self) -> AlgebraData:
        return self.tp.algebra

    @property
    def dim(self) -> int:
        return self.tp.dim

    @property
    def basis(self) -> tuple[str, ...]:
        return self.tp.basis


def _twisted(h: HopfAlgebraData, left_comps, right_comps, op, x, y, dim: int) -> list[Vector]:
    """Components of ``sum op(x_(0), y_(0)) (x) x_(1) y_(1)``, one vector per basis vector of ``H``."""
    lx = [c @ x for c in left_comps]
    ry = [c @ y for c in right_comps]
    out = []
    for k in range(h.dim):
        terms = [(c, op(lx[p], ry[q])) for p, q, c in h.product_coeffs[k]]
        out.append(lincomb(terms, dim))
    return out


def _flatten_components(parts: Sequence[Vector]) -> Vector:
    dh = len(parts)
    d = len(parts[0])
    return tuple(parts[k][i] for i in range(d) for k in range(dh))


def verify_comodule_tp_algebra(a: ComoduleTPAlgebra) -> Report:
    """Coaction is an algebra map and ``{a,a'}_(0) (x) {a,a'}_(1) = {a_(0),a'_(0)} (x) a_(1)a'_(1)``.

    Raises :class:`AxiomError` when the bracket or the comodule fails first.
    """
    up = verify_tp_algebra(a.tp)
    if not up.passed:
        raise AxiomError(f"{a.tp.name} is not a transposed Poisson algebra", up)
    co = verify_comodule(a.comodule, a.hopf, a.basis)
    if not co.passed:
        raise AxiomError("coaction is not a comodule structure", co)
    rep = Report(f"comodule transposed Poisson algebra {a.name}".strip())
    h, d, names = a.hopf, a.dim, a.basis
    C = a.comodule.components
    alg = a.algebra
    for i in range(d):
        for j in range(d):
            at = (names[i], names[j])
            lhs = a.comodule.coact(alg.mult[i][j])
            rhs = _flatten_components(_twisted(h, C, C, alg.mul, alg.e(i), alg.e(j), d))
            rep.compare("coaction is multiplicative", at, lhs, rhs)
            lhs = a.comodule.coact(a.tp.bracket[i][j])
            rhs = _flatten_components(_twisted(h, C, C, a.tp.br, alg.e(i), alg.e(j), d))
            rep.compare("coaction respects the bracket", at, lhs, rhs)
    one = tuple(x * y for x in alg.unit for y in h.unit)
    rep.compare("coaction is unital", ("1",), a.comodule.coact(alg.unit), one)
    return rep


@dataclass(frozen=True, eq=False)
class ModuleData:
    """A based space with optional algebra action, Lie action and coaction.

    ``act[i]`` and ``lie[i]`` are the matrices of ``e_i . -`` and ``e_i <> -``
    for the basis of the acting algebra (``A``, or ``B`` when ``over == "B"``).
    Missing structure is ``None``.
    """

    dim: int
    act: tuple[Matrix, ...] | None = None
    lie: tuple[Matrix, ...] | None = None
    coaction: ComoduleData | None = None
    basis: tuple[str, ...] = ()
    over: str = "A"
    name: str = ""

    def __post_init__(self):
        d = self.dim
        for label in ("act", "lie"):
            mats = getattr(self, label)
            if mats is None:
                continue
            mats = tuple(mats)
            for i, m in enumerate(mats):
                if m.shape != (d, d):
                    raise ShapeError(f"{label}[{i}]: expected {d}x{d} matrix, got {m.shape}")
            object.__setattr__(self, label, mats)
        if self.coaction is not None and self.coaction.dim != d:
            raise ShapeError("coaction dimension does not match the module")
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"m{i}" for i in range(d)))
        elif len(self.basis) != d:
            raise ShapeError(f"basis has {len(self.basis)} names for dimension {d}")
        else:
            object.__setattr__(self, "basis", tuple(self.basis))

    @staticmethod
    def _combine(mats, coeffs, d) -> Matrix:
        out = Matrix.zeros(d, d)
        for c, m in zip(coeffs, mats):
            if c:
                out = out + m * c
        return out

    def act_by(self, a: Sequence) -> Matrix:
        return self._combine(self.act, a, self.dim)

    def lie_by(self, a: Sequence) -> Matrix:
        return self._combine(self.lie, a, self.dim)

    def replace(self, **changes) -> "ModuleData":
        fields = dict(dim=self.dim, act=self.act, lie=self.lie, coaction=self.coaction,
                      basis=self.basis, over=self.over, name=self.name)
        fields.update(changes)
        return ModuleData(**fields)


TPHopfModuleData = ModuleData


def regular_module(a: ComoduleTPAlgebra | TPAlgebraData) -> ModuleData:
    """``A`` acting on itself by multiplication and bracket (with its own coaction)."""
    tp = a.tp if isinstance(a, ComoduleTPAlgebra) else a
    co = a.comodule if isinstance(a, ComoduleTPAlgebra) else None
    return ModuleData(tp.dim, tp.algebra.left, tp.ad, co, tp.basis, name=f"regular module of {tp.name}")


def free_module(a: ComoduleTPAlgebra, rank: int) -> ModuleData:
    """``A (x) Q^rank`` with everything acting on the ``A`` factor."""
    I = Matrix.identity(rank)
    d = a.dim * rank
    basis = tensor_names(a.basis, [f"v{j}" for j in range(rank)])
    co = ComoduleData(tuple(kron(c, I) for c in a.comodule.components))
    return ModuleData(d, tuple(kron(m, I) for m in a.algebra.left), tuple(kron(m, I) for m in a.tp.ad), co,
                      basis, name=f"free module of rank {rank}")


def _per_column(rep: Report, law: str, prefix: tuple, lhs: Matrix, rhs: Matrix, names: Sequence[str]) -> None:
    for m in range(lhs.cols):
        rep.compare(law, prefix + (names[m],), lhs.column(m), rhs.column(m))


def verify_module(m: ModuleData, alg: AlgebraData) -> Report:
    """Unital associative action ``act``."""
    rep = Report("module")
    if m.act is None or len(m.act) != alg.dim:
        raise ShapeError(f"module action must have {alg.dim} matrices")
    I = Matrix.identity(m.dim)
    _per_column(rep, "unital action", ("1",), m.act_by(alg.unit), I, m.basis)
    for i in range(alg.dim):
        for j in range(alg.dim):
            _per_column(rep, "associative action", (alg.basis[i], alg.basis[j]),
                        m.act_by(alg.mult[i][j]), m.act[i] @ m.act[j], m.basis)
    return rep


def verify_lie_module(m: ModuleData, tp: TPAlgebraData) -> Report:
    """``{a,b} <> m = a <> (b <> m) - b <> (a <> m)``."""
    rep = Report("Lie module")
    if m.lie is None or len(m.lie) != tp.dim:
        raise ShapeError(f"Lie action must have {tp.dim} matrices")
    for i in range(tp.dim):
        for j in range(tp.dim):
            _per_column(rep, "Lie module law", (tp.basis[i], tp.basis[j]),
                        m.lie_by(tp.bracket[i][j]), m.lie[i] @ m.lie[j] - m.lie[j] @ m.lie[i], m.basis)
    return rep


def verify_tp_module(m: ModuleData, tp: TPAlgebraData) -> Report:
    """Module laws, Lie-module law and the two mixed compatibilities

    ``2{a,b}.m = a<>(b.m) - b<>(a.m)`` and ``2a.(b<>m) = ab<>m + b<>(a.m)``.
    """
    rep = Report(f"transposed Poisson module {m.name}".strip())
    rep.merge(verify_module(m, tp.algebra))
    rep.merge(verify_lie_module(m, tp))
    d, names = tp.dim, tp.basis
    for i in range(d):
        for j in range(d):
            at = (names[i], names[j])
            lhs = m.act_by(tp.bracket[i][j]) * 2
            rhs = m.lie[i] @ m.act[j] - m.lie[j] @ m.act[i]
            _per_column(rep, "2{a,b}.m = a<>(b.m) - b<>(a.m)", at, lhs, rhs, m.basis)
            lhs = m.act[i] @ m.lie[j] * 2
            rhs = m.lie_by(tp.algebra.mult[i][j]) + m.lie[j] @ m.act[i]
            _per_column(rep, "2a.(b<>m) = ab<>m + b<>(a.m)", at, lhs, rhs, m.basis)
    return rep


def check_associative_actions(m: ModuleData, tp: TPAlgebraData, center: Subalgebra) -> Report:
    """``(ab) <> m = b . (a <> m)`` for ``a`` in ``A``, ``b`` in the center."""
    rep = Report("associative actions")
    rep.law("(ab)<>m = b.(a<>m)")
    for i in range(tp.dim):
        for t, b in enumerate(center.basis_vectors):
            lhs = m.lie_by(tp.mul(tp.algebra.e(i), b))
            rhs = m.act_by(b) @ m.lie[i]
            _per_column(rep, "(ab)<>m = b.(a<>m)", (tp.basis[i], center.algebra.basis[t]), lhs, rhs, m.basis)
    return rep


def _hopf_compat(rep: Report, law: str, mats: Sequence[Matrix], m: ModuleData, a: ComoduleTPAlgebra,
                 combine) -> None:
    """``(a * m)_(0) (x) (a * m)_(1) = a_(0) * m_(0) (x) a_(1) m_(1)`` for the action ``mats``."""
    h = a.hopf
    CA = a.comodule.components
    CM = m.coaction.components
    d = m.dim
    for i in range(a.dim):
        ca = [c @ a.algebra.e(i) for c in CA]
        lhs = [CM[k] @ mats[i] for k in range(h.dim)]
        rhs = []
        for k in range(h.dim):
            acc = Matrix.zeros(d, d)
            for p, q, c in h.product_coeffs[k]:
                if any(ca[p]):
                    acc = acc + (combine(ca[p]) @ CM[q]) * c
            rhs.append(acc)
        for col in range(d):
            left = tuple(lhs[k][r, col] for r in range(d) for k in range(h.dim))
            right = tuple(rhs[k][r, col] for r in range(d) for k in range(h.dim))
            rep.compare(law, (a.basis[i], m.basis[col]), left, right)


def verify_tp_hopf_module(m: ModuleData, a: ComoduleTPAlgebra) -> Report:
    """All laws of a transposed Poisson (A,H)-Hopf module that apply to the structure present.

    With ``act`` and ``lie`` both set this is the full check; with only ``lie``
    it checks a Lie module with a compatible coaction.
    """
    if m.coaction is None:
        raise ShapeError("a Hopf module needs a coaction")
    rep = Report(f"transposed Poisson Hopf module {m.name}".strip())
    if m.act is not None and m.lie is not None:
        rep.merge(verify_tp_module(m, a.tp))
    elif m.act is not None:
        rep.merge(verify_module(m, a.algebra))
    elif m.lie is not None:
        rep.merge(verify_lie_module(m, a.tp))
    rep.merge(verify_comodule(m.coaction, a.hopf, m.basis))
    if m.act is not None:
        _hopf_compat(rep, "Hopf module law for .", m.act, m, a, m.act_by)
    if m.lie is not None:
        _hopf_compat(rep, "Hopf module law for <>", m.lie, m, a, m.lie_by)
    return rep


def induce_tensor_H(n: ModuleData, a: ComoduleTPAlgebra, level: str = "tp", check: bool = True) -> ModuleData:
    """The module ``N (x) H`` with ``a<>(n (x) h) = a_(0)<>n (x) a_(1)h`` and coaction ``n (x) h_1 (x) h_2``.

    ``level="lie"`` builds only the Lie action and coaction (``N`` a Lie module).
    ``level="tp"`` adds ``a.(n (x) h) = a_(0).n (x) a_(1)h`` and requires ``H``
    commutative.
    """
    if level not in ("lie", "tp"):
        raise ValueError("level must be 'lie' or 'tp'")
    h = a.hopf
    if n.lie is None:
        raise HypothesisError("N must carry a Lie action", ["N is a Lie A-module"])
    if level == "tp":
        if not is_commutative(h):
            raise HypothesisError(f"the algebra action on N (x) H needs H commutative; {h.name} is not",
                                  ["H commutative"])
        if n.act is None:
            raise HypothesisError("N must carry an algebra action", ["N is a transposed Poisson A-module"])
    CA = a.comodule.components
    HL = h.algebra.left

    def twisted(mats):
        out = []
        for i in range(a.dim):
            ei = a.algebra.e(i)
            acc = None
            for k in range(h.dim):
                part = CA[k] @ ei
                if not any(part):
                    continue
                term = kron(n._combine(mats, part, n.dim), HL[k])
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else Matrix.zeros(n.dim * h.dim, n.dim * h.dim))
        return tuple(out)

    I = Matrix.identity(n.dim)
    co = ComoduleData(tuple(kron(I, D) for D in h.regular_components))
    out = ModuleData(
        n.dim * h.dim,
        act=twisted(n.act) if level == "tp" else None,
        lie=twisted(n.lie),
        coaction=co,
        basis=tensor_names(n.basis, h.basis),
        name=f"{n.name or 'N'} (x) {h.name}",
    )
    if check:
        rep = verify_tp_hopf_module(out, a)
        if not rep.passed:
            raise TheoremViolation(f"induced module N (x) H failed verification:\n{rep.summary()}")
    return out


FLAGS = ("a_linear", "lie_linear", "h_colinear", "b_linear")


def _intertwine_rows(X: Matrix, Y: Matrix, ds: int, dt: int):
    """Rows of ``F X - Y F = 0`` in the unknowns ``F[r, c]`` at index ``r * ds + c``."""
    Xd, Yd = X._data, Y._data
    for r in range(dt):
        Yr = Yd[r]
        for c in range(ds):
            row: dict[int, object] = {}
            for k in range(ds):
                x = Xd[k][c]
                if x:
                    row[r * ds + k] = row.get(r * ds + k, ZERO) + x
            for k in range(dt):
                y = Yr[k]
                if y:
                    idx = k * ds + c
                    row[idx] = row.get(idx, ZERO) - y
            row = {k: v for k, v in row.items() if v}
            if row:
                yield row


def _normalize_flags(flags) -> tuple[str, ...]:
    if isinstance(flags, Mapping):
        flags = [k for k, v in flags.items() if v]
    flags = tuple(flags or ())
    for f in flags:
        if f not in FLAGS:
            raise ValueError(f"unknown flag {f!r}; expected one of {FLAGS}")
    return tuple(f for f in FLAGS if f in flags)


def b_actions(m: ModuleData, b: Subalgebra) -> tuple[Matrix, ...]:
    """Matrices of the basis of ``B`` acting on ``m``."""
    if m.over == "B":
        if m.act is None or len(m.act) != b.dim:
            raise ShapeError(f"B-module action must have {b.dim} matrices")
        return m.act
    return tuple(m.act_by(v) for v in b.basis_vectors)


@dataclass(frozen=True, eq=False)
class MapSpace:
    """Linear maps ``source -> target`` satisfying the flagged intertwining laws.

    Maps are ``dim(target) x dim(source)`` matrices, vectorised row-major.
    """

    source: ModuleData
    target: ModuleData
    flags: tuple[str, ...]
    solution: Subspace

    @property
    def dim(self) -> int:
        return self.solution.dim

    def to_matrix(self, v: Sequence) -> Matrix:
        ds = self.source.dim
        return Matrix([v[r * ds:(r + 1) * ds] for r in range(self.target.dim)], ds)

    @staticmethod
    def to_vector(f: Matrix) -> Vector:
        return tuple(x for row in f._data for x in row)

    def maps(self) -> list[Matrix]:
        return [self.to_matrix(v) for v in self.solution.basis]

    def __contains__(self, f: Matrix) -> bool:
        return f.shape == (self.target.dim, self.source.dim) and self.to_vector(f) in self.solution

    def coords(self, f: Matrix) -> Vector:
        return self.solution.coords(self.to_vector(f))


def intertwining_pairs(src: ModuleData, tgt: ModuleData, flags, b: Subalgebra | None = None):
    """``(law, X, Y)`` triples; a map ``f`` satisfies the flagged laws iff ``f X = Y f`` for each."""
    flags = _normalize_flags(flags)
    pairs = []
    if "a_linear" in flags:
        if src.act is None or tgt.act is None or len(src.act) != len(tgt.act):
            raise ShapeError("a_linear needs algebra actions on both modules")
        pairs += [("a_linear", X, Y) for X, Y in zip(src.act, tgt.act)]
    if "lie_linear" in flags:
        if src.lie is None or tgt.lie is None or len(src.lie) != len(tgt.lie):
            raise ShapeError("lie_linear needs Lie actions on both modules")
        pairs += [("lie_linear", X, Y) for X, Y in zip(src.lie, tgt.lie)]
    if "h_colinear" in flags:
        if src.coaction is None or tgt.coaction is None:
            raise ShapeError("h_colinear needs coactions on both modules")
        pairs += [("h_colinear", X, Y) for X, Y in zip(src.coaction.components, tgt.coaction.components)]
    if "b_linear" in flags:
        if b is None:
            raise ValueError("b_linear needs the subalgebra B")
        pairs += [("b_linear", X, Y) for X, Y in zip(b_actions(src, b), b_actions(tgt, b))]
    return pairs


def hom_space(src: ModuleData, tgt: ModuleData, flags=(), b: Subalgebra | None = None) -> MapSpace:
    """Solve the stacked intertwining constraints for all maps ``src -> tgt``."""
    flags = _normalize_flags(flags)
    ds, dt = src.dim, tgt.dim
    rows = (row for _, X, Y in intertwining_pairs(src, tgt, flags, b) for row in _intertwine_rows(X, Y, ds, dt))
    return MapSpace(src, tgt, flags, kernel_of_rows(rows, ds * dt))


def check_morphism(f: Matrix, src: ModuleData, tgt: ModuleData, flags, b: Subalgebra | None = None,
                   subject: str = "morphism") -> Report:
    """Evaluate each flagged law for ``f`` on every basis vector, with witnesses."""
    rep = Report(subject)
    for law, X, Y in intertwining_pairs(src, tgt, flags, b):
        rep.law(law)
        lhs, rhs = f @ X, Y @ f
        if lhs != rhs:
            for c in range(src.dim):
                rep.compare(law, (src.basis[c],), lhs.column(c), rhs.column(c))
    return rep


@dataclass(frozen=True, eq=False)
class GammaIso:
    """``gamma: f -> (id (x) eps) f`` and ``gamma': g -> (g (x) id) rho`` in hom-space coordinates."""

    gamma: Matrix
    gamma_prime: Matrix
    induced: ModuleData
    source_space: MapSpace
    target_space: MapSpace
    verified: bool
    level: str

    @property
    def dims(self) -> tuple[int, int]:
        return (self.source_space.dim, self.target_space.dim)


def gamma_iso(m: ModuleData, n: ModuleData, a: ComoduleTPAlgebra, level: str = "tp") -> GammaIso:
    """Realise ``Hom^H(M, N (x) H) -> Hom(M, N)`` and its inverse on the computed hom-spaces."""
    h = a.hopf
    nh = induce_tensor_H(n, a, level)
    if level == "tp":
        flags1, flags2 = ("a_linear", "lie_linear", "h_colinear"), ("a_linear", "lie_linear")
    else:
        flags1, flags2 = ("lie_linear", "h_colinear"), ("lie_linear",)
    if level == "lie":
        m = m.replace(act=None)
        n = n.replace(act=None)
    space1 = hom_space(m, nh, flags1)
    space2 = hom_space(m, n, flags2)
    E = kron(Matrix.identity(n.dim), Matrix([h.counit]))
    rho = m.coaction.matrix
    I_H = Matrix.identity(h.dim)
    verified = space1.dim == space2.dim
    g_cols, gp_cols = [], []
    for f in space1.maps():
        g = E @ f
        if g not in space2:
            verified = False
            g_cols.append(zeros(space2.dim))
        else:
            g_cols.append(space2.coords(g))
    for g in space2.maps():
        f = kron(g, I_H) @ rho
        if f not in space1:
            verified = False
            gp_cols.append(zeros(space1.dim))
        else:
            gp_cols.append(space1.coords(f))
    gamma = Matrix.from_columns(g_cols, rows=space2.dim) if g_cols else Matrix.zeros(space2.dim, 0)
    gamma_p = Matrix.from_columns(gp_cols, rows=space1.dim) if gp_cols else Matrix.zeros(space1.dim, 0)
    if verified:
        verified = (gamma @ gamma_p).is_identity() and (gamma_p @ gamma).is_identity()
    return GammaIso(gamma, gamma_p, nh, space1, space2, verified, level)
